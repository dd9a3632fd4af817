// layeremit -- command-line driver: single-point rates, sweeps to CSV,
// Kerr switching contrast, and defect-resonance location for planar
// multilayer structures described by a config file.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "layeremit/config.hpp"
#include "layeremit/sweep.hpp"

namespace {

using namespace layeremit;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitPartialFailure = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Data goes to the output stream only; diagnostics to stderr.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError(0, "cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void emit_warnings(const RunConfig& cfg, const Structure& s, const DipoleSpec& dipole) {
    if (auto warning = validate_dipole(s.stack, dipole))
        std::cerr << "warning: " << *warning << "\n";
    for (const auto& [name, model] : cfg.materials)
        if (near_resonance(model, dipole.omega_a))
            std::cerr << "warning: omega_a = " << dipole.omega_a
                      << " lies within gamma/2 of the resonance of material '" << name << "'\n";
}

void print_kv(std::ostream& out, const char* key, double value) {
    out << key << "=" << format_number(value) << "\n";
}

Structure build_selected(const RunConfig& cfg, bool switched) {
    Structure s = build_structure(cfg);
    if (switched) {
        if (cfg.replacements.empty())
            throw ConfigError(0, "--switched requires a [switch] section");
        s.stack = build_switched_structure(cfg, s.stack);
    }
    return s;
}

int cmd_rate(const RunConfig& cfg, Output& output, bool switched) {
    const Structure s = build_selected(cfg, switched);
    DipoleSpec dipole = make_dipole(cfg, s);
    emit_warnings(cfg, s, dipole);
    const bool split = cfg.sweep && cfg.sweep->split;

    std::ostream& out = output.stream();
    print_kv(out, "omega_a", dipole.omega_a);
    if (cfg.dipole.orientation == OrientationSel::All) {
        const OrientationRates r = orientation_rates(s.stack, dipole, cfg.quad);
        print_kv(out, "gamma_x", r.gamma_x);
        print_kv(out, "gamma_z", r.gamma_z);
        print_kv(out, "gamma_avg", r.gamma_avg);
        return kExitOk;
    }
    const RateResult r = decay_rate(s.stack, dipole, cfg.quad, split);
    print_kv(out, "gamma_total", r.gamma_total);
    print_kv(out, "gamma_bulk", r.gamma_bulk);
    print_kv(out, "gamma_refl", r.gamma_refl);
    if (r.gamma_prop) {
        print_kv(out, "gamma_prop", *r.gamma_prop);
        print_kv(out, "gamma_evan", *r.gamma_evan);
    }
    print_kv(out, "err_est", r.err_est);
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, Output& output, int threads, bool switched) {
    const SweepOutcome outcome = run_sweep(cfg, threads, switched);
    write_csv(outcome, output.stream());
    output.stream().flush();
    if (outcome.failures > 0) {
        std::cerr << outcome.failures << " of " << outcome.rows.size()
                  << " sweep points failed; see the status column\n";
        return kExitPartialFailure;
    }
    return kExitOk;
}

int cmd_contrast(const RunConfig& cfg, Output& output, bool maximize) {
    if (cfg.replacements.empty())
        throw ConfigError(0, "contrast requires a [switch] section with 'replace FROM TO' lines");
    const Structure s = build_structure(cfg);
    const Stack on = build_switched_structure(cfg, s.stack);
    DipoleSpec dipole = make_dipole(cfg, s);
    emit_warnings(cfg, s, dipole);

    SwitchReport rep;
    if (maximize) {
        if (!cfg.sweep || cfg.sweep->axis != SweepAxis::Frequency)
            throw ConfigError(0, "--maximize needs a frequency [sweep] section as the window");
        rep = maximize_contrast(s.stack, on, dipole, cfg.quad, cfg.sweep->min, cfg.sweep->max);
    } else {
        rep = switch_contrast(s.stack, on, dipole, cfg.quad);
    }

    std::ostream& out = output.stream();
    print_kv(out, "omega_a", rep.omega_a);
    print_kv(out, "gamma_off", rep.gamma_off);
    print_kv(out, "gamma_on", rep.gamma_on);
    print_kv(out, "contrast", rep.contrast);
    print_kv(out, "eps_off_re", rep.eps_off.real());
    print_kv(out, "eps_off_im", rep.eps_off.imag());
    print_kv(out, "eps_on_re", rep.eps_on.real());
    print_kv(out, "eps_on_im", rep.eps_on.imag());
    return kExitOk;
}

int cmd_resonance(const RunConfig& cfg, Output& output, bool switched) {
    if (!cfg.sweep || cfg.sweep->axis != SweepAxis::Frequency)
        throw ConfigError(0, "resonance needs a frequency [sweep] section as the search window");
    const Structure s = build_selected(cfg, switched);
    DipoleSpec dipole = make_dipole(cfg, s);
    emit_warnings(cfg, s, dipole);

    const ResonanceResult res =
        find_defect_resonance(s.stack, dipole, cfg.quad, cfg.sweep->min, cfg.sweep->max);
    std::ostream& out = output.stream();
    print_kv(out, "omega_res", res.omega_res);
    print_kv(out, "gamma_peak", res.gamma_peak);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spontaneous decay rates of a dipole in a planar multilayer"};
    app.require_subcommand(1);

    std::string config_path, output_path;
    std::vector<std::string> overrides;
    int threads = 0;
    bool maximize = false;
    bool switched = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file path")->required();
        sub->add_option("--output", output_path, "output file (default: stdout)");
        sub->add_option("--override", overrides,
                        "KEY=VALUE dot-path override, e.g. sweep.points=100");
    };

    CLI::App* rate = app.add_subcommand("rate", "decay rate at a single point");
    add_common(rate);
    rate->add_flag("--switched", switched, "use the [switch] on-state materials");
    CLI::App* sweep = app.add_subcommand("sweep", "sweep an axis, emit CSV");
    add_common(sweep);
    sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
    sweep->add_flag("--switched", switched, "use the [switch] on-state materials");
    CLI::App* contrast = app.add_subcommand("contrast", "Kerr off/on switching report");
    add_common(contrast);
    contrast->add_flag("--maximize", maximize, "maximize contrast over the [sweep] window");
    CLI::App* resonance = app.add_subcommand("resonance", "locate the defect resonance");
    add_common(resonance);
    resonance->add_flag("--switched", switched, "use the [switch] on-state materials");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = parse_config(read_file(config_path), overrides);
        Output output(output_path);
        if (rate->parsed()) return cmd_rate(cfg, output, switched);
        if (sweep->parsed()) return cmd_sweep(cfg, output, threads, switched);
        if (contrast->parsed()) return cmd_contrast(cfg, output, maximize);
        if (resonance->parsed()) return cmd_resonance(cfg, output, switched);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
