// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fails. Expected values and tolerances are pinned in code; shared
// artifacts (stacks, resonance locations) are computed once.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "layeremit/emission.hpp"
#include "layeremit/sweep.hpp"
#include "oracle_transfer_matrix.hpp"

using namespace layeremit;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("%s %2d %-28s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) { return format_number(v); }

const PermittivityModel kVacuum = PermittivityModel::vacuum();
const PermittivityModel kEpsHOff = PermittivityModel::drude_lorentz(1.7299 * 20.0, 20.0, 1e-7);
const PermittivityModel kEpsHOn = PermittivityModel::drude_lorentz(1.7529 * 20.0, 20.0, 1e-7);

DipoleSpec centered(const BraggStack& b, double omega_a, Orientation ori = Orientation::X) {
    DipoleSpec d;
    d.layer_index = b.host_layer;
    d.z_a = 0.5 * b.stack.thickness(b.host_layer);
    d.orientation = ori;
    d.omega_a = omega_a;
    return d;
}

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

// ---- criteria ------------------------------------------------------------

void criterion_1_permittivity() {
    const Complex off = eval_permittivity(kEpsHOff, 1.0);
    const Complex on = eval_permittivity(kEpsHOn, 1.0);
    const bool pass = within(off.real(), 4.0, 1e-3) && within(off.imag(), 7.5e-10, 0.10) &&
                      within(on.real(), 4.0804, 1e-3) && within(on.imag(), 7.7e-10, 0.10);
    report(1, "permittivity-reproduction",
           pass,
           "eps_off(1)=" + fmt(off.real()) + "+" + fmt(off.imag()) + "i eps_on(1)=" +
               fmt(on.real()) + "+" + fmt(on.imag()) + "i");
}

void criterion_2_free_space() {
    const Stack vacuum(kVacuum, {Layer{1.7, kVacuum}, Layer{2.4, kVacuum}}, kVacuum);
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        DipoleSpec d;
        d.layer_index = 1;
        d.z_a = 0.85;
        d.omega_a = freq(rng);
        d.orientation = i % 2 == 0 ? Orientation::X : Orientation::Z;
        const double gamma = decay_rate(vacuum, d, {}).gamma_total;
        worst = std::max(worst, std::abs(gamma - 1.0));
    }
    report(2, "free-space-identity", worst <= 1e-6, "max |gamma-1| = " + fmt(worst));
}

void criterion_3_mirror_limits() {
    const auto mirror = PermittivityModel::constant(Complex(1e8, 0.0));
    const Stack stack(mirror, {Layer{2.0 * std::numbers::pi, kVacuum}}, kVacuum);
    DipoleSpec d;
    d.layer_index = 1;
    d.omega_a = 1.0;
    d.z_a = 0.01 * 2.0 * std::numbers::pi / d.omega_a;
    d.orientation = Orientation::X;
    const double gx = decay_rate(stack, d, {}).gamma_total;
    d.orientation = Orientation::Z;
    const double gz = decay_rate(stack, d, {}).gamma_total;
    const bool pass = gx < 0.05 && gz > 1.8 && gz < 2.2;
    report(3, "mirror-image-limits", pass, "gamma_x=" + fmt(gx) + " gamma_z=" + fmt(gz));
}

void criterion_4_band_edge() {
    const BraggStack off = build_bragg_stack(15, kVacuum, kEpsHOff, 1.0, false);
    const Stack on = off.stack.with_material_replaced(kEpsHOff, kEpsHOn);
    const DipoleSpec d = centered(off, 1.217);
    const double g_off = decay_rate(off.stack, d, {}).gamma_total;
    const double g_on = decay_rate(on, d, {}).gamma_total;
    const bool pass = within(g_off, 0.35, 0.15) && within(g_on, 0.6, 0.15);
    report(4, "band-edge-switch", pass,
           "gamma(eps'=4)=" + fmt(g_off) + " (want 0.35+-15%)  gamma(eps'=4.0804)=" + fmt(g_on) +
               " (want 0.6+-15%)");
}

struct DefectArtifacts {
    BraggStack off = build_bragg_stack(15, kVacuum, kEpsHOff, 1.0, true);
    Stack on = off.stack.with_material_replaced(kEpsHOff, kEpsHOn);
    ResonanceResult res_off, res_on;
    SwitchReport best;

    DefectArtifacts() {
        const DipoleSpec d = centered(off, 1.0);
        const QuadratureConfig cfg;
        res_off = find_defect_resonance(off.stack, d, cfg, 0.95, 1.05);
        res_on = find_defect_resonance(on, d, cfg, 0.95, 1.05);
        const double lo = std::min(res_on.omega_res, res_off.omega_res) - 2e-3;
        const double hi = std::max(res_on.omega_res, res_off.omega_res) + 2e-3;
        best = maximize_contrast(off.stack, on, d, cfg, lo, hi);
    }
};

void criterion_5_defect_switch(const DefectArtifacts& a) {
    const bool pass = within(a.best.gamma_off, 0.25, 0.15) &&
                      within(a.best.gamma_on, 2.26, 0.15) && a.best.contrast >= 7.0;
    report(5, "defect-resonance-switch", pass,
           "omega_a=" + fmt(a.best.omega_a) + " gamma_off=" + fmt(a.best.gamma_off) +
               " (want 0.25+-15%) gamma_on=" + fmt(a.best.gamma_on) +
               " (want 2.26+-15%) contrast=" + fmt(a.best.contrast) + " (want >= 7)");
}

void criterion_6_band_gap_shift(const DefectArtifacts& a) {
    const double shift = std::abs(a.res_off.omega_res - a.res_on.omega_res);
    const bool pass = shift >= 0.5e-3 && shift <= 2e-3;
    report(6, "band-gap-shift", pass,
           "omega_res_off=" + fmt(a.res_off.omega_res) + " omega_res_on=" +
               fmt(a.res_on.omega_res) + " shift=" + fmt(shift) + " (want 1e-3 within 2x)");
}

// max Gamma_x over a dense grid spanning the resonance window; at shallow
// dipole offsets the resonance bump is no longer the global maximum of the
// whole gap, so this is not a peak search.
double window_peak(const Stack& stack, DipoleSpec d, const QuadratureConfig& cfg, double lo,
                   double hi) {
    double best = 0.0;
    for (int i = 0; i <= 100; ++i) {
        d.omega_a = lo + (hi - lo) * i / 100.0;
        best = std::max(best, decay_rate(stack, d, cfg).gamma_total);
    }
    return best;
}

void criterion_7_position_dependence(const DefectArtifacts& a) {
    const QuadratureConfig cfg;
    const double d_j = a.off.stack.thickness(a.off.host_layer);
    const double lo = a.res_off.omega_res - 0.003;
    const double hi = a.res_off.omega_res + 0.007;
    std::vector<double> peaks;
    for (double frac : {0.5, 0.2, 0.05}) {
        DipoleSpec d = centered(a.off, 1.0);
        d.z_a = frac * d_j;
        peaks.push_back(window_peak(a.off.stack, d, cfg, lo, hi));
    }
    const bool pass = peaks[0] > peaks[1] && peaks[1] > peaks[2];
    report(7, "position-dependence", pass,
           "peak(z=0.5d)=" + fmt(peaks[0]) + " peak(0.2d)=" + fmt(peaks[1]) + " peak(0.05d)=" +
               fmt(peaks[2]) + " (want strictly decreasing)");
}

void criterion_8_orientation(const BraggStack& band_edge_off) {
    const DipoleSpec d = centered(band_edge_off, 1.0);
    const OrientationRates r = orientation_rates(band_edge_off.stack, d, {});
    const bool identity = 3.0 * r.gamma_avg == 2.0 * r.gamma_x + r.gamma_z ||
                          r.gamma_avg == (2.0 * r.gamma_x + r.gamma_z) / 3.0;
    const bool pass = r.gamma_z > r.gamma_x && identity;
    report(8, "orientation-behavior", pass,
           "in-gap gamma_x=" + fmt(r.gamma_x) + " gamma_z=" + fmt(r.gamma_z) +
               " (want gamma_z > gamma_x; 3*avg identity exact)");
}

void criterion_9_absorption(const DefectArtifacts& a) {
    const QuadratureConfig cfg;
    const double lo = a.res_off.omega_res - 0.003;
    const double hi = a.res_off.omega_res + 0.007;
    std::vector<double> peaks;
    for (double gamma : {1e-7, 1e-3, 1e-2}) {
        const Stack stack =
            a.off.stack.with_material_replaced(kEpsHOff, kEpsHOff.with_gamma(gamma));
        peaks.push_back(window_peak(stack, centered(a.off, 1.0), cfg, lo, hi));
    }
    const bool pass = peaks[0] > peaks[1] && peaks[1] > peaks[2];
    report(9, "absorption-smoothing", pass,
           "peak(1e-7)=" + fmt(peaks[0]) + " peak(1e-3)=" + fmt(peaks[1]) + " peak(1e-2)=" +
               fmt(peaks[2]) + " (want strictly decreasing)");
}

void criterion_10_oracle_equivalence() {
    std::mt19937 rng(555000111);
    std::uniform_real_distribution<double> re(0.5, 6.0), im(0.0, 0.5), th(0.1, 3.0);
    std::uniform_int_distribution<int> n_layers(1, 4);
    std::uniform_real_distribution<double> k_re(0.0, 2.5), k_im(-0.5, 0.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = n_layers(rng);
        std::vector<Layer> layers;
        for (int i = 0; i < n; ++i)
            layers.push_back(Layer{th(rng), PermittivityModel::constant({re(rng), im(rng)})});
        const Stack stack(PermittivityModel::constant({re(rng), im(rng)}), layers,
                          PermittivityModel::constant({re(rng), im(rng)}));
        const std::size_t j =
            1 + static_cast<std::size_t>(rng() % stack.layer_count());
        const Complex k_par(k_re(rng), k_im(rng));
        const auto state = TransverseState::make(stack, 0.8, k_par);
        for (auto side : {Side::Below, Side::Above}) {
            for (auto pol : {Polarization::TE, Polarization::TM}) {
                const Complex got = total_reflection(stack, j, side, state, pol);
                const Complex want =
                    oracle::transfer_matrix_reflection(stack, j, side, 0.8, k_par, pol);
                worst = std::max(worst,
                                 std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
        }
    }
    report(10, "oracle-equivalence", worst <= 1e-12,
           "worst relative deviation vs transfer matrix = " + fmt(worst));
}

void criterion_11_contour_invariance(const DefectArtifacts& a) {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    const double d_j = a.off.stack.thickness(a.off.host_layer);
    const double center = a.res_off.omega_res;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double omega = center - 0.02 + 0.04 * i / 9.0;
        const ReflectionGreen g1 =
            integrate_green(a.off.stack, a.off.host_layer, 0.5 * d_j, omega, cfg);
        QuadratureConfig half = cfg;
        half.ellipse_height = 0.05 * omega;  // half of the 0.05 * (2 omega) default
        const ReflectionGreen g2 =
            integrate_green(a.off.stack, a.off.host_layer, 0.5 * d_j, omega, half);
        const double scale =
            std::sqrt(std::norm(g1.g_xx) + std::norm(g1.g_zz));
        worst = std::max(worst, std::max(std::abs(g1.g_xx - g2.g_xx),
                                         std::abs(g1.g_zz - g2.g_zz)) /
                                    scale);
    }
    report(11, "contour-invariance", worst <= 1e-8,
           "worst relative h vs h/2 deviation over 10 frequencies = " + fmt(worst));
}

void criterion_12_split_consistency(const DefectArtifacts& a, const BraggStack& band_edge_off) {
    const QuadratureConfig cfg;
    bool consistent = true;
    double worst = 0.0;

    // x-dipole at the defect peak: propagating waves dominate
    DipoleSpec dx = centered(a.off, a.res_off.omega_res + 2e-4);
    const RateResult rx = decay_rate(a.off.stack, dx, cfg, true);
    // z-dipole at an in-gap frequency of the defect-free structure:
    // evanescent coupling dominates
    DipoleSpec dz = centered(band_edge_off, 1.0, Orientation::Z);
    const RateResult rz = decay_rate(band_edge_off.stack, dz, cfg, true);

    for (const RateResult* r : {&rx, &rz}) {
        if (!r->gamma_prop) {
            consistent = false;
            continue;
        }
        const double miss = std::abs(*r->gamma_prop + *r->gamma_evan - r->gamma_refl);
        worst = std::max(worst, miss / std::max(1.0, std::abs(r->gamma_refl)));
        if (miss > 10 * cfg.rel_tol * std::max(1.0, std::abs(r->gamma_refl)))
            consistent = false;
    }
    const bool dominance = rx.gamma_prop && *rx.gamma_prop > *rx.gamma_evan &&
                           rz.gamma_evan && *rz.gamma_evan > *rz.gamma_prop;
    report(12, "split-consistency", consistent && dominance,
           "worst |prop+evan-refl| (rel) = " + fmt(worst) + "; defect-peak x: prop=" +
               fmt(rx.gamma_prop.value_or(0)) + " evan=" + fmt(rx.gamma_evan.value_or(0)) +
               "; in-gap z: prop=" + fmt(rz.gamma_prop.value_or(0)) + " evan=" +
               fmt(rz.gamma_evan.value_or(0)));
}

void criterion_13_determinism(const DefectArtifacts& a) {
    std::ostringstream config;
    config << "[material epsL]\nmodel = constant\neps_re = 1\n"
           << "[material epsH]\nmodel = drude_lorentz\nomega_t = 20\n"
           << "omega_p_rel = 1.7299\ngamma = 1e-7\n"
           << "[bragg]\nperiods = 15\nlow = epsL\nhigh = epsH\ndefect = true\n"
           << "[dipole]\nlayer = center\nz = 0.5\norientation = x\nomega_a = 1\n"
           << "[sweep]\naxis = frequency\nmin = " << fmt(a.res_off.omega_res - 0.01)
           << "\nmax = " << fmt(a.res_off.omega_res + 0.01) << "\npoints = 24\n";
    const RunConfig cfg = parse_config(config.str());

    auto render = [&](int threads) {
        std::ostringstream out;
        write_csv(run_sweep(cfg, threads), out);
        return out.str();
    };
    const std::string serial = render(1);
    const std::string repeat = render(1);
    const std::string parallel = render(4);

    // positivity across the sweep while we have the rows
    bool positive = true;
    const SweepOutcome rows = run_sweep(cfg, 4);
    for (const SweepRow& row : rows.rows)
        if (!row.gamma_x || *row.gamma_x < 0.0) positive = false;

    const bool pass = serial == repeat && serial == parallel && positive && !serial.empty();
    report(13, "determinism", pass,
           std::string("repeat ") + (serial == repeat ? "identical" : "DIFFERS") +
               ", 4-thread " + (serial == parallel ? "identical" : "DIFFERS") +
               ", rates nonnegative: " + (positive ? "yes" : "NO"));
}

}  // namespace

void guarded(int index, const char* name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(index, name, false, std::string("exception: ") + e.what());
    }
}

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    guarded(1, "permittivity-reproduction", criterion_1_permittivity);
    guarded(2, "free-space-identity", criterion_2_free_space);
    guarded(3, "mirror-image-limits", criterion_3_mirror_limits);
    guarded(4, "band-edge-switch", criterion_4_band_edge);

    const BraggStack band_edge_off = build_bragg_stack(15, kVacuum, kEpsHOff, 1.0, false);
    std::optional<DefectArtifacts> defect;
    try {
        defect.emplace();
    } catch (const std::exception& e) {
        std::printf("setup of the defect-cavity artifacts failed: %s\n", e.what());
        for (int i : {5, 6, 7, 9, 11, 12, 13}) report(i, "(defect setup)", false, e.what());
    }

    if (defect) {
        guarded(5, "defect-resonance-switch", [&] { criterion_5_defect_switch(*defect); });
        guarded(6, "band-gap-shift", [&] { criterion_6_band_gap_shift(*defect); });
        guarded(7, "position-dependence", [&] { criterion_7_position_dependence(*defect); });
    }
    guarded(8, "orientation-behavior", [&] { criterion_8_orientation(band_edge_off); });
    if (defect) guarded(9, "absorption-smoothing", [&] { criterion_9_absorption(*defect); });
    guarded(10, "oracle-equivalence", criterion_10_oracle_equivalence);
    if (defect) {
        guarded(11, "contour-invariance", [&] { criterion_11_contour_invariance(*defect); });
        guarded(12, "split-consistency",
                [&] { criterion_12_split_consistency(*defect, band_edge_off); });
        guarded(13, "determinism", [&] { criterion_13_determinism(*defect); });
    }

    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::steady_clock::now() - t0);
    std::printf("%s: %d of 13 criteria failed (%lds)\n", g_failures == 0 ? "OK" : "FAILURES",
                g_failures, static_cast<long>(dt.count()));
    return g_failures == 0 ? 0 : 1;
}
