// scenario.hpp - JSON scenarios, the preset catalog and result files
//
// A scenario names one reservoir model, one emitter chain and a set of
// analyses. Documents are validated strictly (unknown keys are errors that
// carry the JSON path). The canonical form written back by serialize() has
// every default filled in; its SHA-256 is the config hash stamped on every
// output file.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "wgqed/collective.hpp"
#include "wgqed/greens.hpp"
#include "wgqed/types.hpp"

namespace wgqed::scenario {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
};

struct WaveguideSpec {
    double gamma_1d = 1.0;
    double probe_wavevector = 2.0 * pi;
};

// Exactly one of linewidth / reflectivity and one of peak_coupling / gamma_1d
// (gamma_1d is the single-atom antinode rate on resonance, 4 g0^2 / kappa).
struct CavitySpec {
    std::string variant = "high_q";  // "high_q" | "exact"
    std::optional<double> linewidth;
    std::optional<double> reflectivity;
    double transit_rate = 1.0e6;
    int mode_index = 1;
    std::optional<double> peak_coupling;
    std::optional<double> gamma_1d;
    double cavity_detuning = 0.0;
};

struct BandgapSpec {
    double j_max = -1.0;
    double kappa_x = 1.0;
    double lattice_constant = 1.0;
    double residual_gamma = 0.0;
};

struct SlabSpec {
    double thickness = 0.0;
    Complex permittivity{1.0, 0.0};
};

struct LayeredSpec {
    double omega = 2.0 * pi;
    double gamma_1d = 1.0;
    Complex outer_permittivity{1.0, 0.0};
    double mode_area = 1.0;
    std::vector<SlabSpec> slabs;
};

// Frequency-dependent cavity rule; mode amplitudes follow from the chain
// positions (fractions of L) as cos(2 pi m u).
struct TabulatedCavitySpec {
    double linewidth = 1.0;
    std::optional<double> peak_coupling;
    std::optional<double> gamma_1d;
    double cavity_detuning = 0.0;  // omega_A - omega_c
    int mode_index = 1;
    double min_detuning = -10.0;
    double max_detuning = 10.0;
    std::size_t interpolate_points = 0;  // 0: evaluate the rule directly
};

using ModelSpec = std::variant<WaveguideSpec, CavitySpec, BandgapSpec, LayeredSpec, TabulatedCavitySpec>;

struct RegularGeometry {
    std::size_t count = 1;
    double spacing = 0.0;
    double offset = 0.0;
};
struct ExplicitGeometry {
    std::vector<double> positions;
};
struct RandomGeometry {
    std::size_t count = 1;
    double min = 0.0;
    double max = 1.0;
    std::uint64_t seed = 0;
};
using Geometry = std::variant<RegularGeometry, ExplicitGeometry, RandomGeometry>;

struct ChainSpec {
    double gamma_prime = 1.0;
    Geometry geometry = RegularGeometry{};
};

struct EnsembleSpec {
    std::size_t realizations = 10;
    std::uint64_t seed = 0;
    double min = 0.0;
    double max = 1.0;
};

struct SpectrumSpec {
    std::optional<GridSpec> grid;
    bool reflection = true;
    bool noninteracting = false;
    std::string route = "direct";  // "direct" | "product"
    std::optional<EnsembleSpec> ensemble;
};

struct FanoSpec {
    std::vector<double> ratios{0.0, 1.0, 2.0, 5.0};  // J_1D / Gamma_1D
    double gamma_1d = 1.0;
    std::optional<GridSpec> grid;
};

struct SweepSpec {
    std::string parameter = "spacing";  // "spacing" | "kappa_x"
    GridSpec values;
};

struct ModesSpec {
    double dark_threshold = 1e-6;
    std::optional<SweepSpec> sweep;
};

struct DynamicsSpec {
    std::vector<Complex> initial;  // input atom order; empty: atom 1 inverted
    std::optional<GridSpec> times;
    double detuning = 0.0;
    bool noninteracting = true;
};

struct EitSpec {
    double control = 1.0;
    std::optional<double> spacing;  // defaults to the regular chain spacing
    std::optional<GridSpec> grid;
};

struct NonMarkovSpec {
    std::optional<GridSpec> grid;
};

struct BeerLambertSpec {
    std::size_t count = 20;
    double gamma_1d = 0.05;
    std::optional<GridSpec> grid;
};

struct GreensSpec {
    std::optional<GridSpec> positions;
    std::string reference = "none";  // "none" | "cavity"
};

struct Analyses {
    std::optional<SpectrumSpec> spectrum;
    std::optional<FanoSpec> fano;
    std::optional<BeerLambertSpec> beer_lambert;
    std::optional<NonMarkovSpec> nonmarkov;
    std::optional<ModesSpec> modes;
    std::optional<DynamicsSpec> dynamics;
    std::optional<EitSpec> eit;
    std::optional<GreensSpec> greens;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::string reference_rate = "Gamma_prime";
    ModelSpec model = WaveguideSpec{};
    ChainSpec chain;
    Analyses analyses;
};

/// Parse, expand "preset", apply dotted-path overrides ("a.b.c=value", the
/// value parsed as JSON when possible, else taken as a string), then validate.
ScenarioConfig load_config(const std::string& document, const std::vector<std::string>& overrides = {});
ScenarioConfig load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
ScenarioConfig load_preset(const std::string& name, const std::vector<std::string>& overrides = {});

nlohmann::json to_json(const ScenarioConfig& config);
std::string serialize(const ScenarioConfig& config);  // canonical, sorted keys
std::string config_hash(const ScenarioConfig& config);  // hex SHA-256 of serialize()

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
nlohmann::json preset_document(const std::string& name);

/// Materialized model and chain.
ReservoirModel build_model(const ScenarioConfig& config, const EmitterChain& chain);
EmitterChain build_chain(const ScenarioConfig& config);
std::vector<double> random_positions(std::size_t count, double min, double max, std::uint64_t seed);

enum AnalysisBits : unsigned {
    kSpectrum = 1u << 0,
    kFano = 1u << 1,
    kBeerLambert = 1u << 2,
    kNonMarkov = 1u << 3,
    kModes = 1u << 4,
    kDynamics = 1u << 5,
    kEit = 1u << 6,
    kGreens = 1u << 7,
    kSpectralGroup = kSpectrum | kFano | kBeerLambert | kNonMarkov,
    kAll = 0xffu,
};

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned analyses = kAll;     // subset to run
    bool fill_defaults = false;   // run requested analyses missing from the config with defaults
};

struct RunResult {
    std::string config_hash;
    std::vector<std::string> files;  // relative to out_dir
    nlohmann::json summary;
};

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options);

}  // namespace wgqed::scenario
