#include "layeremit/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace layeremit {

namespace {

struct Entry {
    std::string key, value;
    int line = 0;
};

struct ListLine {
    std::vector<std::string> tokens;
    int line = 0;
};

struct RawSection {
    std::string kind;  // material, bragg, layers, dipole, sweep, quadrature, switch
    std::string arg;   // material name
    std::vector<Entry> entries;
    std::vector<ListLine> lists;
    int line = 0;
};

struct RawConfig {
    std::vector<RawSection> sections;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

const std::vector<std::string> kSectionKinds = {"material", "bragg",      "layers", "dipole",
                                                "sweep",    "quadrature", "switch"};

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    RawSection* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string::size_type hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, "unterminated section header");
            const std::vector<std::string> parts = split_ws(line.substr(1, line.size() - 2));
            if (parts.empty()) throw ConfigError(lineno, "empty section header");
            const std::string& kind = parts[0];
            if (std::find(kSectionKinds.begin(), kSectionKinds.end(), kind) == kSectionKinds.end())
                throw ConfigError(lineno, "unknown section [" + kind + "]");
            if (kind == "material") {
                if (parts.size() != 2)
                    throw ConfigError(lineno, "[material] requires exactly one name");
            } else if (parts.size() != 1) {
                throw ConfigError(lineno, "section [" + kind + "] takes no argument");
            }
            raw.sections.push_back(RawSection{kind, parts.size() > 1 ? parts[1] : "", {}, {}, lineno});
            current = &raw.sections.back();
            continue;
        }

        if (!current) throw ConfigError(lineno, "content before any section header");
        const std::string::size_type eq = line.find('=');
        if (eq != std::string::npos) {
            Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
            if (e.key.empty()) throw ConfigError(lineno, "empty key");
            current->entries.push_back(std::move(e));
        } else {
            current->lists.push_back(ListLine{split_ws(line), lineno});
        }
    }
    return raw;
}

void apply_override(RawConfig& raw, const std::string& spec) {
    const std::string::size_type eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError(0, "override '" + spec + "' is not of the form KEY=VALUE");
    const std::string path = trim(spec.substr(0, eq));
    const std::string value = trim(spec.substr(eq + 1));

    std::vector<std::string> parts;
    std::istringstream in(path);
    std::string tok;
    while (std::getline(in, tok, '.')) parts.push_back(tok);

    std::string kind, arg, key;
    if (parts.size() == 2) {
        kind = parts[0];
        key = parts[1];
    } else if (parts.size() == 3 && parts[0] == "material") {
        kind = parts[0];
        arg = parts[1];
        key = parts[2];
    } else {
        throw ConfigError(0, "override path '" + path + "' must be section.key or material.NAME.key");
    }
    if (std::find(kSectionKinds.begin(), kSectionKinds.end(), kind) == kSectionKinds.end())
        throw ConfigError(0, "override refers to unknown section '" + kind + "'");
    if (kind == "switch" || kind == "layers")
        throw ConfigError(0, "overrides into [" + kind + "] list entries are not supported");

    for (RawSection& s : raw.sections) {
        if (s.kind != kind || s.arg != arg) continue;
        for (Entry& e : s.entries) {
            if (e.key == key) {
                e.value = value;
                return;
            }
        }
        s.entries.push_back(Entry{key, value, 0});
        return;
    }
    // Section absent: create it so overrides can introduce e.g. [quadrature].
    raw.sections.push_back(RawSection{kind, arg, {Entry{key, value, 0}}, {}, 0});
}

class SectionReader {
  public:
    explicit SectionReader(const RawSection& s) : s_(s) {
        for (const Entry& e : s.entries)
            if (!seen_.insert(e.key).second)
                throw ConfigError(e.line, "duplicate key '" + e.key + "'");
    }

    const Entry* find(const std::string& key) {
        used_.insert(key);
        for (const Entry& e : s_.entries)
            if (e.key == key) return &e;
        return nullptr;
    }

    std::string require(const std::string& key) {
        const Entry* e = find(key);
        if (!e)
            throw ConfigError(s_.line, "section [" + s_.kind + "] is missing key '" + key + "'");
        return e->value;
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const Entry* e = find(key);
        if (!e) {
            if (fallback) return *fallback;
            throw ConfigError(s_.line, "section [" + s_.kind + "] is missing key '" + key + "'");
        }
        return parse_number(*e);
    }

    bool flag(const std::string& key, bool fallback) {
        const Entry* e = find(key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        throw ConfigError(e->line, "key '" + key + "' must be true or false");
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const Entry* e = find(key);
        return e ? e->value : fallback;
    }

    void finish() {
        for (const Entry& e : s_.entries)
            if (!used_.count(e.key))
                throw ConfigError(e.line, "unknown key '" + e.key + "' in section [" + s_.kind + "]");
    }

    static double parse_number(const Entry& e) {
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (end == e.value.c_str() || *end != '\0')
            throw ConfigError(e.line, "key '" + e.key + "': '" + e.value + "' is not a number");
        return v;
    }

    const RawSection& raw() const { return s_; }

  private:
    const RawSection& s_;
    std::set<std::string> seen_;
    std::set<std::string> used_;
};

PermittivityModel parse_material(const RawSection& s) {
    SectionReader r(s);
    const std::string model = r.require("model");
    if (model == "drude_lorentz") {
        const double omega_t = r.number("omega_t");
        const double omega_p_rel = r.number("omega_p_rel");
        const double gamma = r.number("gamma");
        r.finish();
        if (!s.lists.empty()) throw ConfigError(s.lists[0].line, "unexpected content in [material]");
        try {
            return PermittivityModel::drude_lorentz(omega_p_rel * omega_t, omega_t, gamma);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(s.line, e.what());
        }
    }
    if (model == "constant") {
        const double re = r.number("eps_re");
        const double im = r.number("eps_im", 0.0);
        r.finish();
        if (!s.lists.empty()) throw ConfigError(s.lists[0].line, "unexpected content in [material]");
        try {
            return PermittivityModel::constant(Complex(re, im));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(s.line, e.what());
        }
    }
    throw ConfigError(s.line, "model must be drude_lorentz or constant, got '" + model + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    RawConfig raw = tokenize(text);
    for (const std::string& o : overrides) apply_override(raw, o);

    RunConfig cfg;
    bool saw_dipole = false, saw_sweep = false, saw_quad = false;

    for (const RawSection& s : raw.sections) {
        if (s.kind == "material") {
            if (cfg.materials.count(s.arg))
                throw ConfigError(s.line, "material '" + s.arg + "' defined twice");
            cfg.materials.emplace(s.arg, parse_material(s));
        } else if (s.kind == "bragg") {
            if (cfg.bragg) throw ConfigError(s.line, "duplicate [bragg] section");
            SectionReader r(s);
            BraggCfg b;
            b.periods = static_cast<int>(r.number("periods"));
            b.low = r.require("low");
            b.high = r.require("high");
            b.defect = r.flag("defect", false);
            b.omega_mid = r.number("omega_mid", 1.0);
            r.finish();
            if (b.periods < 1) throw ConfigError(s.line, "periods must be >= 1");
            if (!(b.omega_mid > 0.0)) throw ConfigError(s.line, "omega_mid must be > 0");
            cfg.bragg = b;
        } else if (s.kind == "layers") {
            if (cfg.layers) throw ConfigError(s.line, "duplicate [layers] section");
            SectionReader r(s);
            LayersCfg l;
            l.lower = r.require("lower");
            l.upper = r.require("upper");
            r.finish();
            for (const ListLine& ll : s.lists) {
                if (ll.tokens.size() != 2)
                    throw ConfigError(ll.line, "layer line must be '<thickness> <material>'");
                char* end = nullptr;
                const double d = std::strtod(ll.tokens[0].c_str(), &end);
                if (end == ll.tokens[0].c_str() || *end != '\0' || !(d > 0.0))
                    throw ConfigError(ll.line, "layer thickness must be a positive number");
                l.layers.push_back(LayerLine{d, ll.tokens[1]});
            }
            if (l.layers.empty()) throw ConfigError(s.line, "[layers] lists no layers");
            cfg.layers = l;
        } else if (s.kind == "dipole") {
            if (saw_dipole) throw ConfigError(s.line, "duplicate [dipole] section");
            saw_dipole = true;
            SectionReader r(s);
            const std::string layer = r.text("layer", "center");
            if (layer == "center") {
                cfg.dipole.center = true;
            } else {
                cfg.dipole.center = false;
                char* end = nullptr;
                const long idx = std::strtol(layer.c_str(), &end, 10);
                if (end == layer.c_str() || *end != '\0' || idx < 1)
                    throw ConfigError(s.line, "layer must be 'center' or a positive index");
                cfg.dipole.layer_index = static_cast<std::size_t>(idx);
            }
            cfg.dipole.z_frac = r.number("z", 0.5);
            const std::string ori = r.text("orientation", "x");
            if (ori == "x") cfg.dipole.orientation = OrientationSel::X;
            else if (ori == "z") cfg.dipole.orientation = OrientationSel::Z;
            else if (ori == "avg") cfg.dipole.orientation = OrientationSel::Avg;
            else if (ori == "all") cfg.dipole.orientation = OrientationSel::All;
            else throw ConfigError(s.line, "orientation must be x, z, avg, or all");
            cfg.dipole.omega_a = r.number("omega_a", 0.0);
            cfg.dipole.cavity_radius = r.number("cavity_radius", 0.0);
            r.finish();
            if (!(cfg.dipole.z_frac > 0.0) || !(cfg.dipole.z_frac < 1.0))
                throw ConfigError(s.line, "dipole z must be a fraction in (0, 1)");
        } else if (s.kind == "sweep") {
            if (saw_sweep) throw ConfigError(s.line, "duplicate [sweep] section");
            saw_sweep = true;
            SectionReader r(s);
            SweepCfg sw;
            const std::string axis = r.require("axis");
            if (axis == "frequency") sw.axis = SweepAxis::Frequency;
            else if (axis == "position") sw.axis = SweepAxis::Position;
            else if (axis == "linewidth") sw.axis = SweepAxis::Linewidth;
            else throw ConfigError(s.line, "axis must be frequency, position, or linewidth");
            sw.min = r.number("min");
            sw.max = r.number("max");
            sw.points = static_cast<int>(r.number("points"));
            sw.split = r.flag("split", false);
            sw.material = r.text("material", "");
            r.finish();
            if (!(sw.min < sw.max)) throw ConfigError(s.line, "sweep requires min < max");
            if (sw.points < 2) throw ConfigError(s.line, "sweep requires points >= 2");
            if (sw.axis == SweepAxis::Position && (!(sw.min > 0.0) || !(sw.max < 1.0)))
                throw ConfigError(s.line, "position sweep range must lie in (0, 1)");
            if (sw.axis == SweepAxis::Frequency && !(sw.min > 0.0))
                throw ConfigError(s.line, "frequency sweep range must be positive");
            if (sw.axis == SweepAxis::Linewidth && sw.min < 0.0)
                throw ConfigError(s.line, "linewidth sweep range must be >= 0");
            cfg.sweep = sw;
        } else if (s.kind == "quadrature") {
            if (saw_quad) throw ConfigError(s.line, "duplicate [quadrature] section");
            saw_quad = true;
            SectionReader r(s);
            cfg.quad.rel_tol = r.number("rel_tol", cfg.quad.rel_tol);
            cfg.quad.abs_tol = r.number("abs_tol", cfg.quad.abs_tol);
            cfg.quad.ellipse_height = r.number("ellipse_height", 0.0);
            cfg.quad.k_cross = r.number("k_cross", 0.0);
            cfg.quad.k_max = r.number("k_max", 0.0);
            cfg.quad.max_panels = static_cast<int>(r.number("max_panels", cfg.quad.max_panels));
            r.finish();
            if (!(cfg.quad.rel_tol > 0.0) || !(cfg.quad.rel_tol < 1.0))
                throw ConfigError(s.line, "rel_tol must be in (0, 1)");
            if (cfg.quad.max_panels < 32) throw ConfigError(s.line, "max_panels must be >= 32");
        } else if (s.kind == "switch") {
            for (const ListLine& ll : s.lists) {
                if (ll.tokens.size() != 3 || ll.tokens[0] != "replace")
                    throw ConfigError(ll.line, "[switch] lines must read 'replace FROM TO'");
                cfg.replacements.emplace_back(ll.tokens[1], ll.tokens[2]);
            }
            if (!s.entries.empty())
                throw ConfigError(s.entries[0].line, "unknown key in [switch]");
        }
    }

    if (cfg.bragg && cfg.layers)
        throw ConfigError(0, "define either [bragg] or [layers], not both");
    if (!cfg.bragg && !cfg.layers) throw ConfigError(0, "missing structure: add [bragg] or [layers]");

    auto check_material = [&](const std::string& name, const char* where) {
        if (!cfg.materials.count(name))
            throw ConfigError(0, std::string(where) + " references undefined material '" + name + "'");
    };
    if (cfg.bragg) {
        check_material(cfg.bragg->low, "[bragg]");
        check_material(cfg.bragg->high, "[bragg]");
    }
    if (cfg.layers) {
        check_material(cfg.layers->lower, "[layers]");
        check_material(cfg.layers->upper, "[layers]");
        for (const LayerLine& l : cfg.layers->layers) check_material(l.material, "[layers]");
    }
    for (const auto& [from, to] : cfg.replacements) {
        check_material(from, "[switch]");
        check_material(to, "[switch]");
    }
    if (cfg.sweep && cfg.sweep->axis == SweepAxis::Linewidth) {
        if (cfg.sweep->material.empty()) {
            std::string found;
            for (const auto& [name, model] : cfg.materials)
                if (model.is_drude_lorentz()) {
                    if (!found.empty())
                        throw ConfigError(0,
                                          "linewidth sweep: several drude_lorentz materials; "
                                          "set sweep material=NAME");
                    found = name;
                }
            if (found.empty())
                throw ConfigError(0, "linewidth sweep requires a drude_lorentz material");
            cfg.sweep->material = found;
        } else {
            check_material(cfg.sweep->material, "[sweep]");
            if (!cfg.materials.at(cfg.sweep->material).is_drude_lorentz())
                throw ConfigError(0, "linewidth sweep material must be drude_lorentz");
        }
    }

    if (cfg.dipole.omega_a <= 0.0)
        cfg.dipole.omega_a = cfg.bragg ? cfg.bragg->omega_mid : 1.0;

    return cfg;
}

Structure build_structure(const RunConfig& cfg) {
    if (cfg.bragg) {
        const BraggCfg& b = *cfg.bragg;
        BraggStack built = build_bragg_stack(
            b.periods, cfg.materials.at(b.low), cfg.materials.at(b.high), b.omega_mid, b.defect,
            cfg.dipole.center ? std::nullopt : std::optional<std::size_t>(cfg.dipole.layer_index));
        return Structure{std::move(built.stack), built.host_layer};
    }
    const LayersCfg& l = *cfg.layers;
    std::vector<Layer> layers;
    layers.reserve(l.layers.size());
    for (const LayerLine& ll : l.layers)
        layers.push_back(Layer{ll.thickness, cfg.materials.at(ll.material)});
    Stack stack(cfg.materials.at(l.lower), std::move(layers), cfg.materials.at(l.upper));

    std::size_t host;
    if (cfg.dipole.center) {
        if (stack.layer_count() % 2 == 0)
            throw ConfigError(0, "dipole layer=center is ambiguous for an even layer count");
        host = stack.layer_count() / 2 + 1;
    } else {
        host = cfg.dipole.layer_index;
        if (host < 1 || host > stack.layer_count())
            throw ConfigError(0, "dipole layer index out of range");
    }
    return Structure{std::move(stack), host};
}

Stack build_switched_structure(const RunConfig& cfg, const Stack& base) {
    Stack on = base;
    for (const auto& [from, to] : cfg.replacements)
        on = on.with_material_replaced(cfg.materials.at(from), cfg.materials.at(to));
    return on;
}

DipoleSpec make_dipole(const RunConfig& cfg, const Structure& s) {
    DipoleSpec d;
    d.layer_index = s.dipole_layer;
    d.z_a = cfg.dipole.z_frac * s.stack.thickness(s.dipole_layer);
    d.orientation = cfg.dipole.orientation == OrientationSel::Z ? Orientation::Z
                    : cfg.dipole.orientation == OrientationSel::Avg ? Orientation::IsotropicAverage
                                                                    : Orientation::X;
    d.omega_a = cfg.dipole.omega_a;
    d.cavity_radius = cfg.dipole.cavity_radius;
    return d;
}

}  // namespace layeremit
