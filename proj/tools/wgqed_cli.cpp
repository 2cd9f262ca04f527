// wgqed command line front end. Links only the C API.
//
// Exit status: 0 ok, 1 computation error, 2 usage, 3 config, 4 I/O.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wgqed/wgqed.h"

namespace {

constexpr const char* kOutEnv = "WGQED_OUT_DIR";

struct Invocation {
    std::string config;
    std::string preset;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::optional<double> omega;
};

int exit_code(wgqed_status s) {
    switch (s) {
    case WGQED_OK: return 0;
    case WGQED_ERR_CONFIG: return 3;
    case WGQED_ERR_IO: return 4;
    default: return 1;
    }
}

std::string take(char* s) {
    std::string out = s ? s : "";
    wgqed_string_free(s);
    return out;
}

int report(const char* operation, wgqed_status s) {
    std::fprintf(stderr, "wgqed: %s failed (%s): %s\n", operation, wgqed_status_name(s), wgqed_last_error());
    return exit_code(s);
}

int run(const std::string& command, unsigned analyses, Invocation inv) {
    if (inv.omega) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", *inv.omega);
        inv.overrides.push_back(std::string("model.omega=") + buf);
    }
    std::vector<const char*> overrides;
    for (const auto& o : inv.overrides) overrides.push_back(o.c_str());

    wgqed_scenario* scenario = nullptr;
    wgqed_status s = inv.config.empty()
                         ? wgqed_scenario_preset(inv.preset.c_str(), overrides.data(), overrides.size(), &scenario)
                         : wgqed_scenario_load_file(inv.config.c_str(), overrides.data(), overrides.size(), &scenario);
    if (s != WGQED_OK) return report("load", s);

    char* summary = nullptr;
    s = wgqed_scenario_run(scenario, inv.out_dir.c_str(), analyses, 1, &summary);
    wgqed_scenario_free(scenario);
    if (s != WGQED_OK) return report(command.c_str(), s);

    nlohmann::json line = nlohmann::json::parse(take(summary));
    line["command"] = command;
    line["status"] = "ok";
    line["out_dir"] = inv.out_dir;
    std::printf("%s\n", line.dump().c_str());
    return 0;
}

int list_presets() {
    char* list = nullptr;
    const wgqed_status s = wgqed_preset_list(&list);
    if (s != WGQED_OK) return report("presets", s);
    nlohmann::json line = {{"command", "presets"}, {"status", "ok"}, {"presets", nlohmann::json::parse(take(list))}};
    std::printf("%s\n", line.dump().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wgqed: collective emitters coupled to quasi-1D photonic reservoirs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wgqed_version());

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0: all cores)");

    const char* env_out = std::getenv(kOutEnv);
    const std::string default_out = env_out && *env_out ? env_out : ".";

    struct Command {
        const char* name;
        const char* help;
        unsigned analyses;
    };
    const Command commands[] = {
        {"spectrum", "transmission/reflection spectra (plus Fano, Beer-Lambert, non-Markov when configured)",
         WGQED_ANALYSIS_SPECTRUM | WGQED_ANALYSIS_FANO | WGQED_ANALYSIS_BEER_LAMBERT | WGQED_ANALYSIS_NONMARKOV},
        {"modes", "collective shifts and decay rates", WGQED_ANALYSIS_MODES},
        {"dynamics", "single-excitation population dynamics", WGQED_ANALYSIS_DYNAMICS},
        {"eit", "EIT transmission and polariton wavevector", WGQED_ANALYSIS_EIT},
        {"greens", "G(x, x') map over a position grid", WGQED_ANALYSIS_GREENS},
    };

    std::vector<Invocation> invocations(std::size(commands));
    std::vector<CLI::App*> subs;
    for (std::size_t k = 0; k < std::size(commands); ++k) {
        CLI::App* sub = app.add_subcommand(commands[k].name, commands[k].help);
        Invocation& inv = invocations[k];
        inv.out_dir = default_out;
        auto* config = sub->add_option("--config,-c", inv.config, "scenario JSON file")->check(CLI::ExistingFile);
        auto* preset = sub->add_option("--preset,-p", inv.preset, "preset name (see `wgqed presets`)");
        config->excludes(preset);
        preset->excludes(config);
        sub->add_option("--out,-o", inv.out_dir, std::string("output directory (default: $") + kOutEnv + " or .)");
        sub->add_option("--set,-s", inv.overrides, "override, dotted.path=value (repeatable)");
        if (std::string(commands[k].name) == "greens")
            sub->add_option("--omega", inv.omega, "probe frequency for layered stacks");
        subs.push_back(sub);
    }
    CLI::App* presets = app.add_subcommand("presets", "list the preset catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    wgqed_set_threads(threads);
    if (presets->parsed()) return list_presets();
    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (!subs[k]->parsed()) continue;
        const Invocation& inv = invocations[k];
        if (inv.config.empty() == inv.preset.empty()) {
            std::fprintf(stderr, "wgqed %s: exactly one of --config or --preset is required\n", commands[k].name);
            return 2;
        }
        return run(commands[k].name, commands[k].analyses, inv);
    }
    return 2;
}
