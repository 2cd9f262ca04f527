// Preset catalog. Each entry is a plain scenario document; load_config merges
// user fields and overrides on top.

#include <algorithm>

#include "wgqed/error.hpp"
#include "wgqed/scenario.hpp"

namespace wgqed::scenario {

using nlohmann::json;

namespace {

struct Preset {
    const char* name;
    const char* description;
    json (*document)();
};

json waveguide(double gamma_1d) { return {{"type", "waveguide"}, {"gamma_1d", gamma_1d}}; }

json regular(std::size_t n, double spacing, double offset = 0.0) {
    return {{"type", "regular"}, {"count", n}, {"spacing", spacing}, {"offset", offset}};
}

json grid(double lo, double hi, std::size_t n) { return {{"min", lo}, {"max", hi}, {"points", n}}; }

json bandgap_pair(double j_max, double residual, double gamma_prime, const char* name, const char* units) {
    return {{"name", name},
            {"units", {{"reference", units}}},
            {"model",
             {{"type", "bandgap"},
              {"j_max", j_max},
              {"kappa_x", 1.0 / 80.0},
              {"lattice_constant", 1.0},
              {"residual_gamma", residual}}},
            {"chain", {{"gamma_prime", gamma_prime}, {"geometry", {{"type", "explicit"}, {"positions", {0.0, 2.0}}}}}},
            {"analyses",
             {{"modes", json::object()},
              {"dynamics",
               {{"initial", {1.0, 0.0}}, {"times", grid(0.0, 10.0, 4001)}, {"noninteracting", true}}}}}};
}

// Ten atoms at even antinodes of mode 100 (u = 0.01 k), Gamma_1D = Gamma'.
json fig5_family(const char* name, double kappa, double cavity_detuning) {
    return {{"name", name},
            {"units", {{"reference", "Gamma_prime"}}},
            {"model",
             {{"type", "tabulated_cavity"},
              {"linewidth", kappa},
              {"gamma_1d", 1.0},
              {"cavity_detuning", cavity_detuning},
              {"mode_index", 100},
              {"min_detuning", -3.0},
              {"max_detuning", 3.0}}},
            {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(10, 0.01, 0.01)}}},
            {"analyses", {{"nonmarkov", {{"grid", grid(-3.0, 3.0, 2001)}}}, {"modes", json::object()}}}};
}

const Preset kPresets[] = {
    {"fig1b", "single atom, Fano family J_1D/Gamma_1D in {0,1,2,5}, Gamma_1D = Gamma'",
     [] {
         return json{{"name", "fig1b"},
                     {"units", {{"reference", "Gamma_prime"}}},
                     {"model", waveguide(1.0)},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(1, 0.0)}}},
                     {"analyses", {{"fano", {{"ratios", {0.0, 1.0, 2.0, 5.0}}, {"gamma_1d", 1.0}}}}}};
     }},
    {"fig2", "N = 5 waveguide chain, collective shifts and rates versus d/lambda_p",
     [] {
         return json{{"name", "fig2"},
                     {"units", {{"reference", "Gamma_1D"}}},
                     {"model", waveguide(1.0)},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(5, 0.25)}}},
                     {"analyses",
                      {{"modes", {{"sweep", {{"parameter", "spacing"}, {"values", grid(0.0, 1.0, 201)}}}}}}}};
     }},
    {"fig3", "N = 20 waveguide chain at d = lambda_p/2 plus 10 random placements, Gamma_1D = Gamma'",
     [] {
         return json{{"name", "fig3"},
                     {"units", {{"reference", "Gamma_prime"}}},
                     {"model", waveguide(1.0)},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(20, 0.5)}}},
                     {"analyses",
                      {{"spectrum",
                        {{"reflection", true},
                         {"noninteracting", true},
                         {"grid", grid(-30.0, 30.0, 2001)},
                         {"ensemble", {{"realizations", 10}, {"seed", 2017}, {"min", 0.0}, {"max", 1.0}}}}}}}};
     }},
    {"fig4", "N = 10 bandgap chain at even antinodes (d = 2a), shifts versus kappa_x",
     [] {
         return json{{"name", "fig4"},
                     {"units", {{"reference", "Gamma_0"}}},
                     {"model",
                      {{"type", "bandgap"}, {"j_max", -1.0}, {"kappa_x", 1.0}, {"lattice_constant", 1.0},
                       {"residual_gamma", 0.0}}},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(10, 2.0)}}},
                     {"analyses",
                      {{"modes", {{"sweep", {{"parameter", "kappa_x"}, {"values", grid(0.0005, 2.5, 500)}}}}}}}};
     }},
    {"fig4b", "two atoms in the bandgap (slot PCW): J = -3, Gamma_1D = 0.15, Gamma' = 0.5 (Gamma_0 units)",
     [] { return bandgap_pair(-3.0, 0.15, 0.5, "fig4b", "Gamma_0"); }},
    {"figEIT", "EIT with N = 5, d = lambda_p/4, Omega_c = Gamma', Gamma_1D = 0.5 Gamma'",
     [] {
         return json{{"name", "figEIT"},
                     {"units", {{"reference", "Gamma_prime"}}},
                     {"model", waveguide(0.5)},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(5, 0.25)}}},
                     {"analyses", {{"eit", {{"control", 1.0}, {"grid", grid(-5.0, 5.0, 2001)}}}}}};
     }},
    {"fig5", "non-Markov cavity, 10 atoms at even antinodes, kappa_c = 0.2 Gamma', on resonance",
     [] { return fig5_family("fig5", 0.2, 0.0); }},
    {"fig5_broad", "Markovian companion of fig5 (kappa_c = 1000 Gamma')",
     [] { return fig5_family("fig5_broad", 1000.0, 0.0); }},
    {"fig5b", "non-Markov cavity, kappa_c = 0.2 Gamma', cavity detuned by kappa_c",
     [] { return fig5_family("fig5b", 0.2, 0.2); }},
    {"fig5b_broad", "Markovian companion of fig5b (kappa_c = 1000 Gamma', detuned by kappa_c)",
     [] { return fig5_family("fig5b_broad", 1000.0, 1000.0); }},
    {"beer_lambert", "non-interacting N = 20, Gamma_1D = 0.05 Gamma' resonant attenuation",
     [] {
         return json{{"name", "beer_lambert"},
                     {"units", {{"reference", "Gamma_prime"}}},
                     {"model", waveguide(0.05)},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(20, 0.5)}}},
                     {"analyses",
                      {{"beer_lambert", {{"count", 20}, {"gamma_1d", 0.05}, {"grid", grid(-5.0, 5.0, 2001)}}}}}};
     }},
    {"pcw_alligator", "alligator PCW in the bandgap: J = -0.2, Gamma_1D = 0.01, Gamma' = 1.1 (Gamma_0 units)",
     [] { return bandgap_pair(-0.2, 0.01, 1.1, "pcw_alligator", "Gamma_0"); }},
    {"pcw_alligator_nu1", "alligator PCW at the first cavity resonance: Gamma_1D = 1.5, Gamma' = 1.1 (Gamma_0 units)",
     [] {
         return json{{"name", "pcw_alligator_nu1"},
                     {"units", {{"reference", "Gamma_0"}}},
                     {"model", waveguide(1.5)},
                     {"chain", {{"gamma_prime", 1.1}, {"geometry", regular(1, 0.0)}}},
                     {"analyses", {{"spectrum", {{"reflection", true}}}}}};
     }},
    {"pcw_slot", "projected slot PCW in the bandgap: J = -6, Gamma_1D = 0.3 (Gamma' units)",
     [] { return bandgap_pair(-6.0, 0.3, 1.0, "pcw_slot", "Gamma_prime"); }},
    {"thin_mirror_cavity", "layered stack of two thin dielectric mirrors around a unit gap",
     [] {
         const json mirror = {{"thickness", 0.01}, {"permittivity", {400.0, 0.0}}};
         const json gap = {{"thickness", 1.0}, {"permittivity", {1.0, 0.0}}};
         return json{{"name", "thin_mirror_cavity"},
                     {"units", {{"reference", "Gamma_1D"}}},
                     {"model",
                      {{"type", "layered"},
                       {"omega", 6.0},
                       {"gamma_1d", 1.0},
                       {"outer_permittivity", {1.0, 0.0}},
                       {"mode_area", 1.0},
                       {"slabs", {mirror, gap, mirror}}}},
                     {"chain", {{"gamma_prime", 1.0}, {"geometry", regular(2, 0.3, 0.2)}}},
                     {"analyses", {{"greens", {{"reference", "cavity"}}}, {"modes", json::object()}}}};
     }},
};

const Preset& find(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return p;
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
}

std::string preset_description(const std::string& name) { return find(name).description; }

json preset_document(const std::string& name) { return find(name).document(); }

}  // namespace wgqed::scenario
