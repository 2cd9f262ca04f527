// Scenario execution: model and chain materialization, analyses, result files.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>

#include "eigen_solve.hpp"
#include "parallel.hpp"
#include "scenario/output.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/eit.hpp"
#include "wgqed/error.hpp"
#include "wgqed/scenario.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed::scenario {

using nlohmann::json;

std::vector<double> random_positions(std::size_t count, double min, double max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(count);
    for (auto& x : out) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x = min + (max - min) * u;
    }
    return out;
}

EmitterChain build_chain(const ScenarioConfig& config) {
    const double gp = config.chain.gamma_prime;
    if (const auto* r = std::get_if<RegularGeometry>(&config.chain.geometry))
        return EmitterChain::regular(r->count, r->spacing, gp, r->offset);
    if (const auto* e = std::get_if<ExplicitGeometry>(&config.chain.geometry))
        return EmitterChain::from_positions(e->positions, gp);
    const auto& r = std::get<RandomGeometry>(config.chain.geometry);
    return EmitterChain::from_positions(random_positions(r.count, r.min, r.max, r.seed), gp);
}

namespace {

double cavity_peak_coupling(const std::optional<double>& peak, const std::optional<double>& gamma_1d,
                            double linewidth) {
    if (peak) return *peak;
    return std::sqrt(*gamma_1d * linewidth) / 2.0;
}

}  // namespace

ReservoirModel build_model(const ScenarioConfig& config, const EmitterChain& chain) {
    if (const auto* w = std::get_if<WaveguideSpec>(&config.model))
        return WaveguideModel{w->gamma_1d, w->probe_wavevector};
    if (const auto* c = std::get_if<CavitySpec>(&config.model)) {
        CavityModel m;
        if (c->linewidth) {
            m = CavityModel::from_linewidth(*c->linewidth, c->transit_rate, c->mode_index, 0.0);
        } else {
            m.reflectivity = *c->reflectivity;
            m.transit_rate = c->transit_rate;
            m.mode_index = c->mode_index;
        }
        m.peak_coupling = cavity_peak_coupling(c->peak_coupling, c->gamma_1d, m.linewidth());
        return CavityReservoir{m, c->cavity_detuning, c->variant == "exact" ? CavityVariant::Exact : CavityVariant::HighQ};
    }
    if (const auto* b = std::get_if<BandgapSpec>(&config.model))
        return BandgapModel{b->j_max, b->kappa_x, b->lattice_constant, b->residual_gamma};
    if (const auto* l = std::get_if<LayeredSpec>(&config.model)) {
        LayeredStack stack;
        for (const auto& s : l->slabs) stack.slabs.push_back({s.thickness, s.permittivity});
        stack.outer_permittivity = l->outer_permittivity;
        stack.mode_area = l->mode_area;
        return LayeredReservoir::with_outer_gamma(std::move(stack), l->omega, l->gamma_1d);
    }
    const auto& t = std::get<TabulatedCavitySpec>(config.model);
    std::vector<double> amplitudes;
    for (double u : chain.positions) amplitudes.push_back(std::cos(2.0 * pi * t.mode_index * u));
    auto rule = TabulatedCoupling::cavity_rule(std::move(amplitudes),
                                               cavity_peak_coupling(t.peak_coupling, t.gamma_1d, t.linewidth),
                                               t.linewidth, t.cavity_detuning, t.min_detuning, t.max_detuning);
    if (t.interpolate_points == 0) return rule;
    const auto grid = linspace(t.min_detuning, t.max_detuning, t.interpolate_points);
    return rule.sampled(grid);
}

namespace {

std::vector<double> grid_values(const GridSpec& g) { return linspace(g.min, g.max, g.points); }

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Eigenvalues in the decomposition's order; near exceptional points the
// eigenvectors are unusable but the spectrum is still well defined.
CVector sorted_eigenvalues(const CMatrix& g) {
    try {
        return decompose(g).eigenvalues;
    } catch (const QuasiDefectiveError&) {
        const CVector values = eigen_solve(g, false).values;
        std::vector<Complex> ev(values.data(), values.data() + values.size());
        std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
            return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() > b.real();
        });
        return Eigen::Map<CVector>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    }
}

std::vector<bool> bright_flags(const CVector& eigenvalues, double threshold) {
    double max_rate = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) max_rate = std::max(max_rate, 2.0 * eigenvalues[k].imag());
    std::vector<bool> out;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
        out.push_back(max_rate > 0.0 && 2.0 * eigenvalues[k].imag() >= threshold * max_rate);
    return out;
}

std::vector<double> local_minima(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t k = 1; k + 1 < y.size(); ++k)
        if (y[k] < y[k - 1] && y[k] <= y[k + 1]) out.push_back(x[k]);
    return out;
}

class Runner {
public:
    Runner(const ScenarioConfig& config, const RunOptions& options)
        : config_(config), options_(options), hash_(config_hash(config)), chain_(build_chain(config)),
          model_(build_model(config, chain_)) {}

    RunResult run() {
        std::error_code ec;
        std::filesystem::create_directories(options_.out_dir, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + options_.out_dir.string());

        const Analyses& a = config_.analyses;
        if (a.modes) guarded("modes", [&] { modes(*a.modes); });
        if (a.spectrum) guarded("spectrum", [&] { spectrum(*a.spectrum); });
        if (a.fano) guarded("fano", [&] { fano_family(*a.fano); });
        if (a.beer_lambert) guarded("beer_lambert", [&] { beer(*a.beer_lambert); });
        if (a.nonmarkov) guarded("nonmarkov", [&] { nonmarkov(*a.nonmarkov); });
        if (a.dynamics) guarded("dynamics", [&] { dynamics(*a.dynamics); });
        if (a.eit) guarded("eit", [&] { eit(*a.eit); });
        if (a.greens) guarded("greens", [&] { greens(*a.greens); });

        result_.config_hash = hash_;
        result_.summary["scenario"] = config_.name;
        result_.summary["config_hash"] = hash_;
        result_.files.push_back("metadata.json");
        result_.summary["files"] = result_.files;
        json meta = {{"config", to_json(config_)},
                     {"config_hash", hash_},
                     {"files", result_.files},
                     {"analyses", result_.summary["analyses"]}};
        write_json(options_.out_dir / "metadata.json", meta);
        return result_;
    }

private:
    template <class F>
    void guarded(const char* analysis, F&& body) {
        try {
            body();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw Error(e.kind(), "scenario '" + config_.name + "', " + analysis + ": " + e.what());
        }
    }

    const CouplingMatrix& matrix() {
        if (!g_) g_ = build_coupling_matrix(chain_, model_);
        return *g_;
    }

    const CVector& eigenvalues() {
        if (!eigenvalues_) eigenvalues_ = sorted_eigenvalues(matrix().values);
        return *eigenvalues_;
    }

    double max_rate() {
        double r = 0.0;
        for (Eigen::Index k = 0; k < eigenvalues().size(); ++k) r = std::max(r, 2.0 * eigenvalues()[k].imag());
        return r;
    }

    std::vector<double> default_grid() {
        double half = 10.0 * (chain_.gamma_prime + max_rate()) / 2.0;
        if (!(half > 0.0)) half = 10.0;
        return linspace(-half, half, 2001);
    }

    std::vector<std::string> comments(const std::string& extra = {}) const {
        std::string c = "scenario=" + config_.name + " model=" + model_name(model_) +
                        " n=" + std::to_string(chain_.size()) + " gamma_prime=" + shortest(chain_.gamma_prime) +
                        " units=" + config_.reference_rate;
        if (const auto* r = std::get_if<RandomGeometry>(&config_.chain.geometry))
            c += " seed=" + std::to_string(r->seed);
        if (!extra.empty()) c += " " + extra;
        return {c};
    }

    CsvWriter open(const std::string& name, const std::vector<std::string>& header, const std::string& extra = {}) {
        result_.files.push_back(name);
        return CsvWriter(options_.out_dir / name, hash_, comments(extra), header);
    }

    json& summary(const char* analysis) { return result_.summary["analyses"][analysis]; }

    // ------------------------------------------------------------------

    SpectrumTable spectrum_for(const SpectrumSpec& s, const std::vector<double>& grid, const EmitterChain& chain,
                               const ReservoirModel& model, const CouplingMatrix& g, const CVector* eigenvalues) {
        if (s.route == "product") {
            SpectrumTable t = eigenvalues ? transmission_product(grid, *eigenvalues, chain.gamma_prime)
                                          : transmission_product(grid, sorted_eigenvalues(g.values), chain.gamma_prime);
            return t;
        }
        const auto geometry = TransmissionGeometry::for_model(model, chain.positions);
        return transmission(grid, g, chain.gamma_prime, geometry);
    }

    void write_spectrum(const std::string& name, const SpectrumTable& t, bool reflection,
                        const SpectrumTable* noninteracting, const std::string& extra) {
        std::vector<std::string> header{"detuning", "re_t", "im_t", "T"};
        reflection = reflection && t.has_reflection();
        if (reflection) header.insert(header.end(), {"re_r", "im_r", "R"});
        if (noninteracting) header.push_back("T_noninteracting");
        CsvWriter w = open(name, header, extra);
        for (std::size_t k = 0; k < t.detuning.size(); ++k) {
            std::vector<double> row{t.detuning[k], t.t_ratio[k].real(), t.t_ratio[k].imag(), t.transmittance(k)};
            if (reflection) row.insert(row.end(), {t.r[k].real(), t.r[k].imag(), t.reflectance(k)});
            if (noninteracting) row.push_back(noninteracting->transmittance(k));
            w.row(row);
        }
        w.close();
    }

    static json spectrum_summary(const SpectrumTable& t) {
        std::size_t at = 0;
        for (std::size_t k = 1; k < t.detuning.size(); ++k)
            if (t.transmittance(k) < t.transmittance(at)) at = k;
        return {{"points", t.detuning.size()},
                {"min_T", t.detuning.empty() ? 0.0 : t.transmittance(at)},
                {"detuning_at_min_T", t.detuning.empty() ? 0.0 : t.detuning[at]}};
    }

    void spectrum(const SpectrumSpec& s) {
        const auto grid = s.grid ? grid_values(*s.grid) : default_grid();
        const SpectrumTable main = spectrum_for(s, grid, chain_, model_, matrix(), &eigenvalues());
        std::optional<SpectrumTable> ni;
        if (s.noninteracting) {
            const CVector diag = matrix().values.diagonal();
            ni = transmission_product(grid, diag, chain_.gamma_prime);
        }
        write_spectrum("spectrum.csv", main, s.reflection, ni ? &*ni : nullptr, "route=" + s.route);
        json& out = summary("spectrum");
        out = spectrum_summary(main);
        out["route"] = s.route;
        if (!s.ensemble) return;

        const auto& e = *s.ensemble;
        out["realizations"] = json::array();
        for (std::size_t k = 0; k < e.realizations; ++k) {
            const std::uint64_t seed = e.seed + k;
            const EmitterChain chain = EmitterChain::from_positions(
                random_positions(chain_.size(), e.min, e.max, seed), chain_.gamma_prime);
            const ReservoirModel model = build_model(config_, chain);
            const CouplingMatrix g = build_coupling_matrix(chain, model);
            const SpectrumTable t = spectrum_for(s, grid, chain, model, g, nullptr);
            char name[64];
            std::snprintf(name, sizeof name, "spectrum_random_%02zu.csv", k + 1);
            write_spectrum(name, t, s.reflection, nullptr, "route=" + s.route + " seed=" + std::to_string(seed));
            json r = spectrum_summary(t);
            r["seed"] = seed;
            r["file"] = name;
            out["realizations"].push_back(r);
        }
    }

    void fano_family(const FanoSpec& f) {
        const double gp = chain_.gamma_prime;
        double max_j = 0.0;
        for (double r : f.ratios) max_j = std::max(max_j, std::abs(r) * f.gamma_1d);
        const auto grid = f.grid ? grid_values(*f.grid)
                                 : linspace(-(10.0 * (gp + f.gamma_1d) / 2.0 + max_j),
                                            10.0 * (gp + f.gamma_1d) / 2.0 + max_j, 2001);
        json& out = summary("fano");
        out = json::array();
        for (double ratio : f.ratios) {
            const double j = ratio * f.gamma_1d;
            const FanoParameters p = fano(j, f.gamma_1d, gp);
            CVector lambda(1);
            lambda[0] = Complex(j, f.gamma_1d / 2.0);
            const SpectrumTable t = transmission_product(grid, lambda, gp);
            const std::string name = "fano_ratio_" + shortest(ratio) + ".csv";
            CsvWriter w = open(name, {"detuning", "re_t", "im_t", "T", "T_fano"},
                               "ratio=" + shortest(ratio) + " q=" + shortest(p.q));
            for (std::size_t k = 0; k < grid.size(); ++k)
                w.row({grid[k], t.t_ratio[k].real(), t.t_ratio[k].imag(), t.transmittance(k),
                       p.transmittance(grid[k])});
            w.close();
            json s = spectrum_summary(t);
            s["ratio"] = ratio;
            s["q"] = p.q;
            s["file"] = name;
            out.push_back(s);
        }
    }

    void beer(const BeerLambertSpec& b) {
        const double gp = chain_.gamma_prime;
        const double half = 10.0 * (gp + b.gamma_1d) / 2.0;
        const auto grid = b.grid ? grid_values(*b.grid) : linspace(-half, half, 2001);
        const BeerLambertTable t = beer_lambert(grid, b.count, b.gamma_1d, gp);
        CsvWriter w = open("beer_lambert.csv", {"detuning", "T_exact", "T_od"},
                           "count=" + std::to_string(b.count) + " gamma_1d=" + shortest(b.gamma_1d));
        for (std::size_t k = 0; k < grid.size(); ++k) w.row({t.detuning[k], t.exact[k], t.approximate[k]});
        w.close();
        summary("beer_lambert") = {
            {"optical_depth", t.optical_depth},
            {"resonant_exact", std::pow(gp / (gp + b.gamma_1d), 2.0 * static_cast<double>(b.count))},
            {"resonant_od", std::exp(-t.optical_depth)}};
    }

    void nonmarkov(const NonMarkovSpec& n) {
        const auto& tab = std::get<TabulatedCoupling>(model_);
        const auto grid = n.grid ? grid_values(*n.grid) : linspace(tab.min_detuning(), tab.max_detuning(), 2001);
        const NonMarkovSpectrum s = nonmarkov_spectrum(grid, tab, chain_.gamma_prime);
        CsvWriter w = open("nonmarkov.csv",
                           {"detuning", "re_t", "im_t", "T", "re_t_markov", "im_t_markov", "T_markov"});
        std::vector<double> tf, tm;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex a = s.frequency_resolved.t_ratio[k];
            const Complex b = s.markov.t_ratio[k];
            tf.push_back(std::norm(a));
            tm.push_back(std::norm(b));
            w.row({grid[k], a.real(), a.imag(), tf.back(), b.real(), b.imag(), tm.back()});
        }
        w.close();
        summary("nonmarkov") = {{"points", grid.size()},
                                {"local_minima", local_minima(grid, tf)},
                                {"local_minima_markov", local_minima(grid, tm)}};
    }

    void modes(const ModesSpec& m) {
        const CVector& ev = eigenvalues();
        const auto bright = bright_flags(ev, m.dark_threshold);
        CsvWriter w = open("modes.csv", {"xi", "re_lambda", "im_lambda", "shift", "rate", "bright"});
        std::size_t n_bright = 0;
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            const auto uk = static_cast<std::size_t>(k);
            n_bright += bright[uk];
            w.row({static_cast<double>(k + 1), ev[k].real(), ev[k].imag(), ev[k].real(), 2.0 * ev[k].imag(),
                   bright[uk] ? 1.0 : 0.0});
        }
        w.close();
        json& out = summary("modes");
        out = {{"count", ev.size()}, {"bright", n_bright}};
        out["trace"] = {matrix().trace().real(), matrix().trace().imag()};
        if (!m.sweep) return;

        const auto values = grid_values(m.sweep->values);
        std::vector<CVector> results(values.size());
        parallel_for(values.size(), [&](std::size_t i) {
            ScenarioConfig c = config_;
            if (m.sweep->parameter == "spacing")
                std::get<RegularGeometry>(c.chain.geometry).spacing = values[i];
            else
                std::get<BandgapSpec>(c.model).kappa_x = values[i];
            const EmitterChain chain = build_chain(c);
            const ReservoirModel model = build_model(c, chain);
            results[i] = sorted_eigenvalues(build_coupling_matrix(chain, model).values);
        });
        CsvWriter s = open("modes_sweep.csv",
                           {m.sweep->parameter, "xi", "re_lambda", "im_lambda", "shift", "rate", "bright"});
        for (std::size_t i = 0; i < values.size(); ++i) {
            const auto flags = bright_flags(results[i], m.dark_threshold);
            for (Eigen::Index k = 0; k < results[i].size(); ++k) {
                const Complex l = results[i][k];
                s.row({values[i], static_cast<double>(k + 1), l.real(), l.imag(), l.real(), 2.0 * l.imag(),
                       flags[static_cast<std::size_t>(k)] ? 1.0 : 0.0});
            }
        }
        s.close();
        out["sweep"] = {{"parameter", m.sweep->parameter}, {"points", values.size()}};
    }

    void write_trace(const std::string& name, const TimeTrace& t) {
        const std::size_t n = chain_.size();
        std::vector<std::string> header{"t"};
        for (std::size_t k = 0; k < n; ++k) header.push_back("p_" + std::to_string(k + 1));
        header.push_back("total");
        CsvWriter w = open(name, header, t.used_matrix_exponential ? "route=expm" : "route=modes");
        std::vector<double> row(n + 2);
        for (std::size_t s = 0; s < t.times.size(); ++s) {
            row[0] = t.times[s];
            for (std::size_t k = 0; k < n; ++k) row[1 + chain_.original_index[k]] = t.populations[s][k];
            row[n + 1] = t.total[s];
            w.row(row);
        }
        w.close();
    }

    void dynamics(const DynamicsSpec& d) {
        const std::size_t n = chain_.size();
        CVector c0 = CVector::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t orig = chain_.original_index[k];
            if (d.initial.empty())
                c0[static_cast<Eigen::Index>(k)] = orig == 0 ? 1.0 : 0.0;
            else
                c0[static_cast<Eigen::Index>(k)] = d.initial[orig];
        }
        std::vector<double> times;
        if (d.times) {
            times = grid_values(*d.times);
        } else {
            double rate = chain_.gamma_prime;
            if (!(rate > 0.0)) rate = max_rate();
            if (!(rate > 0.0)) rate = 1.0;
            times = linspace(0.0, 8.0 / rate, 2000);
        }
        const TimeTrace t = evolve(matrix(), chain_.gamma_prime, d.detuning, c0, times);
        write_trace("dynamics.csv", t);
        json& out = summary("dynamics");
        out = {{"points", times.size()},
               {"final_total", t.total.empty() ? 0.0 : t.total.back()},
               {"matrix_exponential", t.used_matrix_exponential}};
        if (d.noninteracting) {
            const TimeTrace u = evolve(zero_offdiagonal(matrix()), chain_.gamma_prime, d.detuning, c0, times);
            write_trace("dynamics_noninteracting.csv", u);
            out["noninteracting_final_total"] = u.total.empty() ? 0.0 : u.total.back();
        }
    }

    void eit(const EitSpec& e) {
        const double spacing =
            e.spacing ? *e.spacing : std::get<RegularGeometry>(config_.chain.geometry).spacing;
        const double gp = chain_.gamma_prime;
        const auto grid = e.grid ? grid_values(*e.grid) : default_grid();
        const SpectrumTable t = eit_transmission(grid, eigenvalues(), gp, e.control);
        const auto keff = keff_exact(grid, eigenvalues(), gp, e.control, spacing);
        CsvWriter w = open("eit.csv", {"detuning", "T", "re_keff_d", "im_keff_d"},
                           "control=" + shortest(e.control) + " spacing=" + shortest(spacing));
        for (std::size_t k = 0; k < grid.size(); ++k)
            w.row({grid[k], t.transmittance(k), keff[k].real() * spacing, keff[k].imag() * spacing});
        w.close();
        const KeffCoefficients c = keff_coefficients(matrix(), gp, e.control, spacing);
        json& out = summary("eit");
        out = {{"T_at_zero", std::norm(eit_transmission_at(eigenvalues(), gp, e.control, 0.0))},
               {"keff_linear", {c.linear.real(), c.linear.imag()}},
               {"keff_quadratic", {c.quadratic.real(), c.quadratic.imag()}},
               {"keff_cubic", {c.cubic.real(), c.cubic.imag()}}};
        if (c.linear.real() != 0.0) out["group_velocity_series"] = 1.0 / c.linear.real();
        if (const auto* w = std::get_if<WaveguideModel>(&model_))
            out["group_velocity_closed_form"] = group_velocity(e.control, spacing, w->gamma_1d);
    }

    // Cavity reference for [mirror, gap, mirror] stacks: the closed form with
    // r taken from a single-mirror solve.
    struct CavityReference {
        double start, length;
        double wavevector;
        Complex r;
    };

    CavityReference cavity_reference(const LayeredReservoir& lay) const {
        const auto& s = lay.stack.slabs;
        const bool ok = s.size() == 3 && s[0].thickness == s[2].thickness &&
                        s[0].permittivity == s[2].permittivity && s[1].permittivity == lay.stack.outer_permittivity &&
                        lay.stack.outer_permittivity.imag() == 0.0 && lay.stack.outer_permittivity.real() > 0.0;
        if (!ok)
            throw ConfigError("analyses.greens.reference",
                              "the cavity reference needs [mirror, gap, mirror] with identical mirrors and a "
                              "lossless gap matching the outer medium");
        const HelmholtzSolver mirror(LayeredStack{{s[0]}, lay.stack.outer_permittivity, lay.stack.mode_area},
                                     lay.omega);
        return {s[0].thickness, s[1].thickness, lay.omega * std::sqrt(lay.stack.outer_permittivity.real()),
                mirror.reflection_left()};
    }

    std::vector<double> default_greens_positions(const GreensSpec& g, const std::optional<CavityReference>& ref) {
        if (ref) return linspace(ref->start + 0.005 * ref->length, ref->start + 0.995 * ref->length, 81);
        const auto lo = chain_.positions.front();
        const auto hi = chain_.positions.back();
        if (const auto* lay = std::get_if<LayeredReservoir>(&model_)) {
            double length = lay->stack.total_thickness();
            if (!(length > 0.0)) return linspace(-1.0, 1.0, 101);
            return linspace(-0.1 * length, 1.1 * length, 101);
        }
        if (std::holds_alternative<CavityReservoir>(model_)) return linspace(0.0, 1.0, 101);
        if (const auto* b = std::get_if<BandgapModel>(&model_))
            return linspace(lo - 2.0 * b->lattice_constant, hi + 2.0 * b->lattice_constant, 101);
        (void)g;
        return linspace(lo - 1.0, hi + 1.0, 101);
    }

    void greens(const GreensSpec& g) {
        const auto* lay = std::get_if<LayeredReservoir>(&model_);
        std::optional<CavityReference> ref;
        if (g.reference == "cavity") ref = cavity_reference(*lay);
        const auto xs = g.positions ? grid_values(*g.positions) : default_greens_positions(g, ref);
        std::optional<HelmholtzSolver> solver;
        if (lay) solver.emplace(lay->stack, lay->omega);

        const std::size_t n = xs.size();
        std::vector<Complex> values(n * n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j)
                values[i * n + j] = solver ? solver->green(xs[i], xs[j]) : coupling(model_, xs[i], xs[j]);
        });

        std::vector<std::string> header{"x", "x_prime", "re_g", "im_g"};
        if (ref) header.insert(header.end(), {"re_ref", "im_ref", "rel_err"});
        CsvWriter w = open("greens.csv", header, lay ? "quantity=A*G omega=" + shortest(lay->omega) : "quantity=g");
        double max_err = 0.0;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Complex v = values[i * n + j];
                std::vector<double> row{xs[i], xs[j], v.real(), v.imag()};
                if (ref) {
                    const double end = ref->start + ref->length;
                    const bool inside = xs[i] > ref->start && xs[i] < end && xs[j] > ref->start && xs[j] < end;
                    if (inside) {
                        const double centre = ref->start + ref->length / 2.0;
                        const Complex r = cavity_exact_green_centered<double>(
                            xs[i] - centre, xs[j] - centre, ref->wavevector, ref->length, ref->r);
                        const double err = std::abs(v - r) / std::abs(r);
                        max_err = std::max(max_err, err);
                        row.insert(row.end(), {r.real(), r.imag(), err});
                    } else {
                        row.insert(row.end(), {nan, nan, nan});
                    }
                }
                w.row(row);
            }
        }
        w.close();
        json& out = summary("greens");
        out = {{"points", n}};
        if (lay) {
            out["omega"] = lay->omega;
            out["wronskian_spread"] = wronskian_spread(*solver, xs);
        }
        if (ref) out["max_rel_err"] = max_err;
    }

    const ScenarioConfig& config_;
    const RunOptions& options_;
    std::string hash_;
    EmitterChain chain_;
    ReservoirModel model_;
    std::optional<CouplingMatrix> g_;
    std::optional<CVector> eigenvalues_;
    RunResult result_;
};

// Restrict to the requested subset and, for the CLI, fill in defaults for
// requested analyses that apply to the model but are absent from the config.
ScenarioConfig effective_config(const ScenarioConfig& config, const RunOptions& options) {
    ScenarioConfig c = config;
    Analyses& a = c.analyses;
    const unsigned mask = options.analyses;
    if (!(mask & kSpectrum)) a.spectrum.reset();
    if (!(mask & kFano)) a.fano.reset();
    if (!(mask & kBeerLambert)) a.beer_lambert.reset();
    if (!(mask & kNonMarkov)) a.nonmarkov.reset();
    if (!(mask & kModes)) a.modes.reset();
    if (!(mask & kDynamics)) a.dynamics.reset();
    if (!(mask & kEit)) a.eit.reset();
    if (!(mask & kGreens)) a.greens.reset();
    if (!options.fill_defaults) return c;

    const bool tabulated = std::holds_alternative<TabulatedCavitySpec>(c.model);
    const bool bandgap = std::holds_alternative<BandgapSpec>(c.model);
    const bool regular = std::holds_alternative<RegularGeometry>(c.chain.geometry);
    const bool spectral_configured = a.spectrum || a.fano || a.beer_lambert || a.nonmarkov;
    if ((mask & kSpectrum) && !spectral_configured) {
        if (tabulated && (mask & kNonMarkov))
            a.nonmarkov = NonMarkovSpec{};
        else if (!tabulated && !bandgap)
            a.spectrum = SpectrumSpec{};
    }
    if ((mask & kModes) && !a.modes) a.modes = ModesSpec{};
    if ((mask & kDynamics) && !a.dynamics) a.dynamics = DynamicsSpec{};
    if ((mask & kEit) && !a.eit && !bandgap && regular) a.eit = EitSpec{};
    if ((mask & kGreens) && !a.greens && !tabulated) a.greens = GreensSpec{};
    return c;
}

bool any_analysis(const Analyses& a) {
    return a.spectrum || a.fano || a.beer_lambert || a.nonmarkov || a.modes || a.dynamics || a.eit || a.greens;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    const ScenarioConfig effective = effective_config(config, options);
    if (!any_analysis(effective.analyses) && options.analyses != kAll)
        throw Error(ErrorKind::Validation,
                    "scenario '" + config.name + "': none of the requested analyses applies to this model");
    return Runner(effective, options).run();
}

}  // namespace wgqed::scenario
