// Scenario document parsing, canonical serialization and hashing.

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wgqed/error.hpp"
#include "wgqed/scenario.hpp"

namespace wgqed::scenario {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Walks one JSON object, remembering which keys were read so leftovers can be
// rejected with their path.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    }

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    const json& raw(const std::string& key) {
        used_.insert(key);
        if (!has(key)) throw ConfigError(join(path_, key), "required field is missing");
        return j_.at(key);
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(join(path_, key), "expected a finite number");
        return d;
    }
    double number(const std::string& key, double fallback) { return has(key) ? number(key) : mark(key, fallback); }
    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) {
            used_.insert(key);
            return std::nullopt;
        }
        return number(key);
    }

    double positive(const std::string& key, double fallback) {
        const double v = number(key, fallback);
        if (!(v > 0.0)) throw ConfigError(join(path_, key), "must be positive");
        return v;
    }
    double non_negative(const std::string& key, double fallback) {
        const double v = number(key, fallback);
        if (!(v >= 0.0)) throw ConfigError(join(path_, key), "must be >= 0");
        return v;
    }

    std::uint64_t unsigned_integer(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError(join(path_, key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        return has(key) ? unsigned_integer(key) : mark(key, fallback);
    }
    std::size_t count(const std::string& key, std::size_t minimum) {
        const auto v = unsigned_integer(key);
        if (v < minimum) throw ConfigError(join(path_, key), "must be >= " + std::to_string(minimum));
        return static_cast<std::size_t>(v);
    }
    std::size_t count(const std::string& key, std::size_t fallback, std::size_t minimum) {
        return has(key) ? count(key, minimum) : mark(key, fallback);
    }

    bool flag(const std::string& key, bool fallback) {
        if (!has(key)) return mark(key, fallback);
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed) {
        std::string s = fallback;
        if (has(key)) {
            const json& v = raw(key);
            if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
            s = v.get<std::string>();
        } else {
            used_.insert(key);
        }
        if (!allowed.empty() && !allowed.count(s)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw ConfigError(join(path_, key), "'" + s + "' is not one of: " + list);
        }
        return s;
    }

    Complex complex(const std::string& key, Complex fallback) {
        if (!has(key)) return mark(key, fallback);
        return as_complex(raw(key), join(path_, key));
    }

    static Complex as_complex(const json& v, const std::string& where) {
        if (v.is_number()) return {v.get<double>(), 0.0};
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
            return {v[0].get<double>(), v[1].get<double>()};
        throw ConfigError(where, "expected a number or [re, im]");
    }

    Node child(const std::string& key) { return Node(raw(key), join(path_, key)); }
    std::optional<Node> optional_child(const std::string& key) {
        used_.insert(key);
        if (!has(key)) return std::nullopt;
        return Node(j_.at(key), join(path_, key));
    }

    const json& array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(join(path_, key), "expected an array");
        return v;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key");
        }
    }

private:
    template <class T>
    T mark(const std::string& key, T value) {
        used_.insert(key);
        return value;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

GridSpec parse_grid(Node n) {
    GridSpec g;
    g.min = n.number("min");
    g.max = n.number("max");
    g.points = n.count("points", 1);
    if (g.points > 1 && !(g.max > g.min)) throw ConfigError(join(n.path(), "max"), "must exceed min");
    n.finish();
    return g;
}

std::optional<GridSpec> optional_grid(Node& parent, const std::string& key) {
    auto c = parent.optional_child(key);
    if (!c) return std::nullopt;
    return parse_grid(*c);
}

// ---------------------------------------------------------------------------
// model

ModelSpec parse_model(Node n) {
    const std::string type =
        n.text("type", "", {"waveguide", "cavity", "bandgap", "layered", "tabulated_cavity"});
    ModelSpec out;
    if (type == "waveguide") {
        WaveguideSpec w;
        w.gamma_1d = n.positive("gamma_1d", w.gamma_1d);
        w.probe_wavevector = n.positive("probe_wavevector", w.probe_wavevector);
        out = w;
    } else if (type == "cavity") {
        CavitySpec c;
        c.variant = n.text("variant", c.variant, {"high_q", "exact"});
        c.linewidth = n.optional_number("linewidth");
        c.reflectivity = n.optional_number("reflectivity");
        if (c.linewidth.has_value() == c.reflectivity.has_value())
            throw ConfigError(join(n.path(), "linewidth"), "give exactly one of linewidth or reflectivity");
        if (c.linewidth && !(*c.linewidth > 0.0)) throw ConfigError(join(n.path(), "linewidth"), "must be positive");
        if (c.reflectivity && !(*c.reflectivity > 0.0 && *c.reflectivity < 1.0))
            throw ConfigError(join(n.path(), "reflectivity"), "must lie in (0, 1)");
        c.transit_rate = n.positive("transit_rate", c.transit_rate);
        c.mode_index = static_cast<int>(n.count("mode_index", 1, 1));
        c.peak_coupling = n.optional_number("peak_coupling");
        c.gamma_1d = n.optional_number("gamma_1d");
        if (c.peak_coupling.has_value() == c.gamma_1d.has_value())
            throw ConfigError(join(n.path(), "peak_coupling"), "give exactly one of peak_coupling or gamma_1d");
        if (c.gamma_1d && !(*c.gamma_1d >= 0.0)) throw ConfigError(join(n.path(), "gamma_1d"), "must be >= 0");
        c.cavity_detuning = n.number("cavity_detuning", 0.0);
        out = c;
    } else if (type == "bandgap") {
        BandgapSpec b;
        b.j_max = n.number("j_max", b.j_max);
        b.kappa_x = n.positive("kappa_x", b.kappa_x);
        b.lattice_constant = n.positive("lattice_constant", b.lattice_constant);
        b.residual_gamma = n.non_negative("residual_gamma", b.residual_gamma);
        out = b;
    } else if (type == "layered") {
        LayeredSpec l;
        l.omega = n.positive("omega", l.omega);
        l.gamma_1d = n.positive("gamma_1d", l.gamma_1d);
        l.outer_permittivity = n.complex("outer_permittivity", l.outer_permittivity);
        l.mode_area = n.positive("mode_area", l.mode_area);
        const json& slabs = n.array("slabs");
        for (std::size_t k = 0; k < slabs.size(); ++k) {
            Node s(slabs[k], join(n.path(), "slabs[" + std::to_string(k) + "]"));
            SlabSpec slab;
            slab.thickness = s.positive("thickness", 0.0);
            slab.permittivity = s.complex("permittivity", slab.permittivity);
            s.finish();
            l.slabs.push_back(slab);
        }
        out = l;
    } else {
        TabulatedCavitySpec t;
        t.linewidth = n.positive("linewidth", t.linewidth);
        t.peak_coupling = n.optional_number("peak_coupling");
        t.gamma_1d = n.optional_number("gamma_1d");
        if (t.peak_coupling.has_value() == t.gamma_1d.has_value())
            throw ConfigError(join(n.path(), "peak_coupling"), "give exactly one of peak_coupling or gamma_1d");
        if (t.gamma_1d && !(*t.gamma_1d >= 0.0)) throw ConfigError(join(n.path(), "gamma_1d"), "must be >= 0");
        t.cavity_detuning = n.number("cavity_detuning", 0.0);
        t.mode_index = static_cast<int>(n.count("mode_index", 1, 1));
        t.min_detuning = n.number("min_detuning", t.min_detuning);
        t.max_detuning = n.number("max_detuning", t.max_detuning);
        if (!(t.max_detuning > t.min_detuning))
            throw ConfigError(join(n.path(), "max_detuning"), "must exceed min_detuning");
        t.interpolate_points = n.count("interpolate_points", 0, 0);
        if (t.interpolate_points != 0 && t.interpolate_points < 4)
            throw ConfigError(join(n.path(), "interpolate_points"), "must be 0 or >= 4");
        out = t;
    }
    n.finish();
    return out;
}

json model_to_json(const ModelSpec& m) {
    json j;
    if (const auto* w = std::get_if<WaveguideSpec>(&m)) {
        j = {{"type", "waveguide"}, {"gamma_1d", w->gamma_1d}, {"probe_wavevector", w->probe_wavevector}};
    } else if (const auto* c = std::get_if<CavitySpec>(&m)) {
        j = {{"type", "cavity"},
             {"variant", c->variant},
             {"transit_rate", c->transit_rate},
             {"mode_index", c->mode_index},
             {"cavity_detuning", c->cavity_detuning}};
        if (c->linewidth) j["linewidth"] = *c->linewidth;
        if (c->reflectivity) j["reflectivity"] = *c->reflectivity;
        if (c->peak_coupling) j["peak_coupling"] = *c->peak_coupling;
        if (c->gamma_1d) j["gamma_1d"] = *c->gamma_1d;
    } else if (const auto* b = std::get_if<BandgapSpec>(&m)) {
        j = {{"type", "bandgap"},
             {"j_max", b->j_max},
             {"kappa_x", b->kappa_x},
             {"lattice_constant", b->lattice_constant},
             {"residual_gamma", b->residual_gamma}};
    } else if (const auto* l = std::get_if<LayeredSpec>(&m)) {
        json slabs = json::array();
        for (const auto& s : l->slabs)
            slabs.push_back({{"thickness", s.thickness},
                             {"permittivity", {s.permittivity.real(), s.permittivity.imag()}}});
        j = {{"type", "layered"},
             {"omega", l->omega},
             {"gamma_1d", l->gamma_1d},
             {"outer_permittivity", {l->outer_permittivity.real(), l->outer_permittivity.imag()}},
             {"mode_area", l->mode_area},
             {"slabs", slabs}};
    } else if (const auto* t = std::get_if<TabulatedCavitySpec>(&m)) {
        j = {{"type", "tabulated_cavity"},
             {"linewidth", t->linewidth},
             {"cavity_detuning", t->cavity_detuning},
             {"mode_index", t->mode_index},
             {"min_detuning", t->min_detuning},
             {"max_detuning", t->max_detuning},
             {"interpolate_points", t->interpolate_points}};
        if (t->peak_coupling) j["peak_coupling"] = *t->peak_coupling;
        if (t->gamma_1d) j["gamma_1d"] = *t->gamma_1d;
    }
    return j;
}

// ---------------------------------------------------------------------------
// chain

ChainSpec parse_chain(Node n) {
    ChainSpec c;
    c.gamma_prime = n.non_negative("gamma_prime", c.gamma_prime);
    Node g = n.child("geometry");
    const std::string type = g.text("type", "", {"regular", "explicit", "random"});
    if (type == "regular") {
        RegularGeometry r;
        r.count = g.count("count", 1);
        r.spacing = g.number("spacing");
        r.offset = g.number("offset", 0.0);
        c.geometry = r;
    } else if (type == "explicit") {
        ExplicitGeometry e;
        const json& xs = g.array("positions");
        if (xs.empty()) throw ConfigError(join(g.path(), "positions"), "needs at least one position");
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (!xs[k].is_number())
                throw ConfigError(join(g.path(), "positions[" + std::to_string(k) + "]"), "expected a number");
            e.positions.push_back(xs[k].get<double>());
        }
        c.geometry = e;
    } else {
        RandomGeometry r;
        r.count = g.count("count", 1);
        r.min = g.number("min", r.min);
        r.max = g.number("max", r.max);
        if (!(r.max > r.min)) throw ConfigError(join(g.path(), "max"), "must exceed min");
        if (!g.has("seed")) throw ConfigError(join(g.path(), "seed"), "random geometry requires a seed");
        r.seed = g.unsigned_integer("seed");
        c.geometry = r;
    }
    g.finish();
    n.finish();
    return c;
}

json grid_to_json(const GridSpec& g) { return {{"min", g.min}, {"max", g.max}, {"points", g.points}}; }

json chain_to_json(const ChainSpec& c) {
    json g;
    if (const auto* r = std::get_if<RegularGeometry>(&c.geometry)) {
        g = {{"type", "regular"}, {"count", r->count}, {"spacing", r->spacing}, {"offset", r->offset}};
    } else if (const auto* e = std::get_if<ExplicitGeometry>(&c.geometry)) {
        g = {{"type", "explicit"}, {"positions", e->positions}};
    } else if (const auto* r = std::get_if<RandomGeometry>(&c.geometry)) {
        g = {{"type", "random"}, {"count", r->count}, {"min", r->min}, {"max", r->max}, {"seed", r->seed}};
    }
    return {{"gamma_prime", c.gamma_prime}, {"geometry", g}};
}

// ---------------------------------------------------------------------------
// analyses

Analyses parse_analyses(Node n) {
    Analyses a;
    if (auto s = n.optional_child("spectrum")) {
        SpectrumSpec sp;
        sp.grid = optional_grid(*s, "grid");
        sp.reflection = s->flag("reflection", sp.reflection);
        sp.noninteracting = s->flag("noninteracting", sp.noninteracting);
        sp.route = s->text("route", sp.route, {"direct", "product"});
        if (auto e = s->optional_child("ensemble")) {
            EnsembleSpec en;
            en.realizations = e->count("realizations", 1);
            if (!e->has("seed")) throw ConfigError(join(e->path(), "seed"), "random ensemble requires a seed");
            en.seed = e->unsigned_integer("seed");
            en.min = e->number("min", en.min);
            en.max = e->number("max", en.max);
            if (!(en.max > en.min)) throw ConfigError(join(e->path(), "max"), "must exceed min");
            e->finish();
            sp.ensemble = en;
        }
        s->finish();
        a.spectrum = sp;
    }
    if (auto f = n.optional_child("fano")) {
        FanoSpec fs;
        if (f->has("ratios")) {
            fs.ratios.clear();
            const json& r = f->array("ratios");
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (!r[k].is_number())
                    throw ConfigError(join(f->path(), "ratios[" + std::to_string(k) + "]"), "expected a number");
                fs.ratios.push_back(r[k].get<double>());
            }
        } else {
            f->optional_child("ratios");
        }
        fs.gamma_1d = f->positive("gamma_1d", fs.gamma_1d);
        fs.grid = optional_grid(*f, "grid");
        f->finish();
        a.fano = fs;
    }
    if (auto b = n.optional_child("beer_lambert")) {
        BeerLambertSpec bl;
        bl.count = b->count("count", bl.count, 1);
        bl.gamma_1d = b->non_negative("gamma_1d", bl.gamma_1d);
        bl.grid = optional_grid(*b, "grid");
        b->finish();
        a.beer_lambert = bl;
    }
    if (auto m = n.optional_child("nonmarkov")) {
        NonMarkovSpec nm;
        nm.grid = optional_grid(*m, "grid");
        m->finish();
        a.nonmarkov = nm;
    }
    if (auto m = n.optional_child("modes")) {
        ModesSpec ms;
        ms.dark_threshold = m->positive("dark_threshold", ms.dark_threshold);
        if (auto s = m->optional_child("sweep")) {
            SweepSpec sw;
            sw.parameter = s->text("parameter", sw.parameter, {"spacing", "kappa_x"});
            sw.values = parse_grid(s->child("values"));
            s->finish();
            ms.sweep = sw;
        }
        m->finish();
        a.modes = ms;
    }
    if (auto d = n.optional_child("dynamics")) {
        DynamicsSpec ds;
        if (d->has("initial")) {
            const json& c0 = d->array("initial");
            for (std::size_t k = 0; k < c0.size(); ++k)
                ds.initial.push_back(
                    Node::as_complex(c0[k], join(d->path(), "initial[" + std::to_string(k) + "]")));
        } else {
            d->optional_child("initial");
        }
        ds.times = optional_grid(*d, "times");
        if (ds.times && ds.times->min < 0.0) throw ConfigError(join(d->path(), "times.min"), "must be >= 0");
        ds.detuning = d->number("detuning", ds.detuning);
        ds.noninteracting = d->flag("noninteracting", ds.noninteracting);
        d->finish();
        a.dynamics = ds;
    }
    if (auto e = n.optional_child("eit")) {
        EitSpec es;
        es.control = e->positive("control", es.control);
        es.spacing = e->optional_number("spacing");
        if (es.spacing && !(*es.spacing > 0.0)) throw ConfigError(join(e->path(), "spacing"), "must be positive");
        es.grid = optional_grid(*e, "grid");
        e->finish();
        a.eit = es;
    }
    if (auto g = n.optional_child("greens")) {
        GreensSpec gs;
        gs.positions = optional_grid(*g, "positions");
        gs.reference = g->text("reference", gs.reference, {"none", "cavity"});
        g->finish();
        a.greens = gs;
    }
    n.finish();
    return a;
}

json analyses_to_json(const Analyses& a) {
    json j = json::object();
    auto put_grid = [](json& o, const char* key, const std::optional<GridSpec>& g) {
        if (g) o[key] = grid_to_json(*g);
    };
    if (a.spectrum) {
        json s = {{"reflection", a.spectrum->reflection},
                  {"noninteracting", a.spectrum->noninteracting},
                  {"route", a.spectrum->route}};
        put_grid(s, "grid", a.spectrum->grid);
        if (a.spectrum->ensemble) {
            const auto& e = *a.spectrum->ensemble;
            s["ensemble"] = {{"realizations", e.realizations}, {"seed", e.seed}, {"min", e.min}, {"max", e.max}};
        }
        j["spectrum"] = s;
    }
    if (a.fano) {
        json f = {{"ratios", a.fano->ratios}, {"gamma_1d", a.fano->gamma_1d}};
        put_grid(f, "grid", a.fano->grid);
        j["fano"] = f;
    }
    if (a.beer_lambert) {
        json b = {{"count", a.beer_lambert->count}, {"gamma_1d", a.beer_lambert->gamma_1d}};
        put_grid(b, "grid", a.beer_lambert->grid);
        j["beer_lambert"] = b;
    }
    if (a.nonmarkov) {
        json m = json::object();
        put_grid(m, "grid", a.nonmarkov->grid);
        j["nonmarkov"] = m;
    }
    if (a.modes) {
        json m = {{"dark_threshold", a.modes->dark_threshold}};
        if (a.modes->sweep)
            m["sweep"] = {{"parameter", a.modes->sweep->parameter}, {"values", grid_to_json(a.modes->sweep->values)}};
        j["modes"] = m;
    }
    if (a.dynamics) {
        json c0 = json::array();
        for (const auto& c : a.dynamics->initial) c0.push_back({c.real(), c.imag()});
        json d = {{"initial", c0}, {"detuning", a.dynamics->detuning}, {"noninteracting", a.dynamics->noninteracting}};
        put_grid(d, "times", a.dynamics->times);
        j["dynamics"] = d;
    }
    if (a.eit) {
        json e = {{"control", a.eit->control}};
        if (a.eit->spacing) e["spacing"] = *a.eit->spacing;
        put_grid(e, "grid", a.eit->grid);
        j["eit"] = e;
    }
    if (a.greens) {
        json g = {{"reference", a.greens->reference}};
        put_grid(g, "positions", a.greens->positions);
        j["greens"] = g;
    }
    return j;
}

// ---------------------------------------------------------------------------
// overrides

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("", "override '" + assignment + "' is not of the form key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    std::vector<std::string> parts;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, '.');) {
        if (part.empty()) throw ConfigError(key, "empty path segment in override");
        parts.push_back(part);
    }
    json* node = &doc;
    std::string where;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const std::string& p = parts[k];
        const bool last = k + 1 == parts.size();
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                idx = std::stoul(p, &used);
                if (used != p.size()) throw std::invalid_argument(p);
            } catch (const std::exception&) {
                throw ConfigError(join(where, p), "array index expected in override");
            }
            if (idx >= node->size()) throw ConfigError(join(where, p), "array index out of range in override");
            node = &(*node)[idx];
        } else {
            if (node->is_null()) *node = json::object();
            if (!node->is_object()) throw ConfigError(where, "cannot descend into a scalar in override");
            node = &(*node)[p];
        }
        where = join(where, p);
        if (last) *node = value;
    }
}

json expand(json doc) {
    if (!doc.is_object()) throw ConfigError("", "scenario document must be a JSON object");
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) throw ConfigError("preset", "expected a preset name");
        const std::string name = doc["preset"].get<std::string>();
        json base = preset_document(name);
        doc.erase("preset");
        base.merge_patch(doc);
        return base;
    }
    return doc;
}

ScenarioConfig parse_document(const json& doc) {
    Node root(doc, "");
    ScenarioConfig c;
    c.name = root.text("name", c.name, {});
    if (auto u = root.optional_child("units")) {
        c.reference_rate = u->text("reference", c.reference_rate, {"Gamma_prime", "Gamma_0", "Gamma_1D"});
        u->finish();
    }
    c.model = parse_model(root.child("model"));
    c.chain = parse_chain(root.child("chain"));
    if (auto a = root.optional_child("analyses")) c.analyses = parse_analyses(*a);
    root.finish();
    return c;
}

// Semantic checks that need the materialized model.
void check_semantics(const ScenarioConfig& c) {
    EmitterChain chain;
    try {
        chain = build_chain(c);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("chain", e.what());
    }
    try {
        ReservoirModel model = build_model(c, chain);
        validate(model);
        if (const auto* cav = std::get_if<CavityReservoir>(&model)) {
            for (double u : chain.positions) {
                if (!(u >= 0.0 && u <= 1.0))
                    throw ConfigError("chain.geometry", "cavity positions are fractions of L and must lie in [0, 1]");
            }
            (void)cav;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("model", e.what());
    }
    if (c.analyses.dynamics && !c.analyses.dynamics->initial.empty() &&
        c.analyses.dynamics->initial.size() != chain.size())
        throw ConfigError("analyses.dynamics.initial", "length must equal the number of atoms (" +
                                                           std::to_string(chain.size()) + ")");
    if (c.analyses.modes && c.analyses.modes->sweep) {
        const auto& sw = *c.analyses.modes->sweep;
        if (sw.parameter == "spacing" && !std::holds_alternative<RegularGeometry>(c.chain.geometry))
            throw ConfigError("analyses.modes.sweep.parameter", "a spacing sweep needs a regular geometry");
        if (sw.parameter == "kappa_x") {
            if (!std::holds_alternative<BandgapSpec>(c.model))
                throw ConfigError("analyses.modes.sweep.parameter", "a kappa_x sweep needs the bandgap model");
            if (!(sw.values.min > 0.0)) throw ConfigError("analyses.modes.sweep.values.min", "kappa_x must be positive");
        }
    }
    if (c.analyses.eit && !c.analyses.eit->spacing && !std::holds_alternative<RegularGeometry>(c.chain.geometry))
        throw ConfigError("analyses.eit.spacing", "required unless the chain geometry is regular");
    const bool bandgap = std::holds_alternative<BandgapSpec>(c.model);
    const bool tabulated = std::holds_alternative<TabulatedCavitySpec>(c.model);
    if (c.analyses.spectrum && bandgap)
        throw ConfigError("analyses.spectrum", "the bandgap model has no propagating channel");
    if (c.analyses.spectrum && tabulated && c.analyses.spectrum->route == "direct")
        throw ConfigError("analyses.spectrum.route", "tabulated couplings need the product route");
    if (c.analyses.eit && bandgap) throw ConfigError("analyses.eit", "the bandgap model has no propagating channel");
    if (c.analyses.greens && tabulated)
        throw ConfigError("analyses.greens", "tabulated couplings cannot be evaluated at positions");
    if (c.analyses.nonmarkov && !std::holds_alternative<TabulatedCavitySpec>(c.model))
        throw ConfigError("analyses.nonmarkov", "needs the tabulated_cavity model");
    if (c.analyses.greens && c.analyses.greens->reference == "cavity" &&
        !std::holds_alternative<LayeredSpec>(c.model))
        throw ConfigError("analyses.greens.reference", "the cavity reference needs a layered model");
}

}  // namespace

ScenarioConfig load_config(const std::string& document, const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("JSON parse error: ") + e.what());
    }
    doc = expand(std::move(doc));
    for (const auto& o : overrides) apply_override(doc, o);
    ScenarioConfig c = parse_document(doc);
    check_semantics(c);
    return c;
}

ScenarioConfig load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str(), overrides);
}

ScenarioConfig load_preset(const std::string& name, const std::vector<std::string>& overrides) {
    return load_config(json{{"preset", name}}.dump(), overrides);
}

json to_json(const ScenarioConfig& c) {
    return {{"name", c.name},
            {"units", {{"reference", c.reference_rate}}},
            {"model", model_to_json(c.model)},
            {"chain", chain_to_json(c.chain)},
            {"analyses", analyses_to_json(c.analyses)}};
}

std::string serialize(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

std::string config_hash(const ScenarioConfig& c) {
    const std::string text = to_json(c).dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::Io, "SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[digest[k] >> 4]);
        out.push_back(hex[digest[k] & 0xf]);
    }
    return out;
}

}  // namespace wgqed::scenario
