#include "layeremit/emission.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace layeremit {

namespace {

constexpr double kPi = std::numbers::pi;

double orientation_weight(Orientation o, double x_part, double z_part) {
    switch (o) {
        case Orientation::X: return x_part;
        case Orientation::Z: return z_part;
        case Orientation::IsotropicAverage: return (2.0 * x_part + z_part) / 3.0;
    }
    throw std::logic_error("unknown orientation");
}

// Staged maximization: grid scans narrowing around the best point, then
// golden-section refinement. The objective may have a nearly step-like
// rising edge (defect resonances), so the scans refine geometrically
// before golden section takes over.
struct GridMaximum {
    double x = 0.0;
    double value = 0.0;
};

GridMaximum maximize_on_window(const std::function<double(double)>& f, double lo, double hi,
                               const char* what) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("maximize: window must satisfy 0 < lo < hi");

    double a = lo, b = hi;
    std::size_t best = 0;
    double best_x = lo, best_f = 0.0;
    for (int stage = 0; stage < 4; ++stage) {
        const std::size_t n = stage == 0 ? 129 : 33;
        std::vector<double> xs(n), fs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            fs[i] = f(xs[i]);
        }
        best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (fs[i] > fs[best]) best = i;
        if (stage == 0 && (best == 0 || best == n - 1))
            throw std::runtime_error(std::string(what) + ": no interior maximum in window");
        best_x = xs[best];
        best_f = fs[best];
        a = xs[best == 0 ? 0 : best - 1];
        b = xs[best == n - 1 ? n - 1 : best + 1];
    }

    // Golden-section to 1e-6 relative in the abscissa.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-6 * best_x) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    GridMaximum m;
    m.x = f1 > f2 ? x1 : x2;
    m.value = std::max(f1, f2);
    if (best_f > m.value) {
        m.x = best_x;
        m.value = best_f;
    }
    return m;
}

Complex host_eps(const Stack& stack, const DipoleSpec& dipole) {
    return eval_permittivity(stack.material(dipole.layer_index), dipole.omega_a);
}

}  // namespace

double local_field_factor(Complex eps) {
    return std::norm(3.0 * eps / (2.0 * eps + 1.0));
}

double bulk_rate(Complex eps_j, double omega_a, double cavity_radius) {
    if (!(omega_a > 0.0)) throw std::invalid_argument("bulk_rate: omega_a must be > 0");
    if (!(cavity_radius > 0.0)) throw std::invalid_argument("bulk_rate: cavity radius must be > 0");
    if (eps_j.imag() < 0.0) throw std::invalid_argument("bulk_rate: passive medium required");
    const double denom2 = std::norm(2.0 * eps_j + 1.0);
    if (denom2 == 0.0) throw std::invalid_argument("bulk_rate: |2 eps + 1| vanishes");

    const Complex n = refractive_index(eps_j);
    const double ep = eps_j.real(), epp = eps_j.imag();
    const double np = n.real(), npp = n.imag();
    const double abs2 = std::norm(eps_j);
    const double x = 1.0 / (omega_a * cavity_radius);  // c/(omega_a R), normalized units

    const double absorbing = (epp / abs2) *
                             (x * x * x + (28.0 * abs2 + 16.0 * ep + 1.0) / (5.0 * denom2) * x -
                              2.0 / denom2 * (2.0 * npp * abs2 + npp * ep + np * epp));
    return local_field_factor(eps_j) * (np + absorbing);
}

RateResult decay_rate(const Stack& stack, const DipoleSpec& dipole, const QuadratureConfig& cfg,
                      bool want_split) {
    validate_dipole(stack, dipole);
    const Complex eps_j = host_eps(stack, dipole);
    const double gamma_bulk =
        bulk_rate(eps_j, dipole.omega_a, dipole.effective_cavity_radius());

    const ReflectionGreen g = integrate_green(stack, dipole.layer_index, dipole.z_a,
                                              dipole.omega_a, cfg, want_split);

    // The real-cavity factor is applied to the reflection part as well; it
    // equals 1 exactly for a vacuum host layer.
    const double pref = local_field_factor(eps_j) * 6.0 * kPi / dipole.omega_a;

    RateResult r;
    r.orientation = dipole.orientation;
    r.omega_a = dipole.omega_a;
    r.gamma_bulk = gamma_bulk;
    r.gamma_refl =
        pref * orientation_weight(dipole.orientation, g.g_xx.imag(), g.g_zz.imag());
    r.gamma_total = gamma_bulk + r.gamma_refl;
    r.err_est = pref * orientation_weight(dipole.orientation, g.err_xx, g.err_zz);
    if (g.has_split()) {
        r.gamma_prop =
            pref * orientation_weight(dipole.orientation, g.g_xx_prop->imag(), g.g_zz_prop->imag());
        r.gamma_evan =
            pref * orientation_weight(dipole.orientation, g.g_xx_evan->imag(), g.g_zz_evan->imag());
    }
    return r;
}

OrientationRates orientation_rates(const Stack& stack, const DipoleSpec& dipole,
                                   const QuadratureConfig& cfg) {
    validate_dipole(stack, dipole);
    const Complex eps_j = host_eps(stack, dipole);
    const double gamma_bulk =
        bulk_rate(eps_j, dipole.omega_a, dipole.effective_cavity_radius());
    const ReflectionGreen g =
        integrate_green(stack, dipole.layer_index, dipole.z_a, dipole.omega_a, cfg, false);
    const double pref = local_field_factor(eps_j) * 6.0 * kPi / dipole.omega_a;

    OrientationRates out;
    out.gamma_x = gamma_bulk + pref * g.g_xx.imag();
    out.gamma_z = gamma_bulk + pref * g.g_zz.imag();
    out.gamma_avg = (2.0 * out.gamma_x + out.gamma_z) / 3.0;
    return out;
}

SwitchReport switch_contrast(const Stack& stack_off, const Stack& stack_on,
                             const DipoleSpec& dipole, const QuadratureConfig& cfg) {
    if (!stack_off.same_geometry(stack_on))
        throw std::invalid_argument("switch_contrast: stacks must share the same geometry");

    SwitchReport rep;
    rep.omega_a = dipole.omega_a;
    rep.gamma_off = decay_rate(stack_off, dipole, cfg).gamma_total;
    rep.gamma_on = decay_rate(stack_on, dipole, cfg).gamma_total;
    rep.contrast = rep.gamma_on / rep.gamma_off;

    // Report the switched material at the operating frequency.
    rep.eps_off = host_eps(stack_off, dipole);
    rep.eps_on = host_eps(stack_on, dipole);
    for (std::size_t i = 0; i < stack_off.layer_count() + 2; ++i) {
        if (!(stack_off.material(i) == stack_on.material(i))) {
            rep.eps_off = eval_permittivity(stack_off.material(i), dipole.omega_a);
            rep.eps_on = eval_permittivity(stack_on.material(i), dipole.omega_a);
            break;
        }
    }
    return rep;
}

ResonanceResult find_defect_resonance(const Stack& stack, const DipoleSpec& dipole,
                                      const QuadratureConfig& cfg, double omega_lo,
                                      double omega_hi) {
    auto rate_at = [&](double w) {
        DipoleSpec d = dipole;
        d.omega_a = w;
        return decay_rate(stack, d, cfg).gamma_total;
    };
    const GridMaximum m = maximize_on_window(rate_at, omega_lo, omega_hi, "find_defect_resonance");
    return ResonanceResult{m.x, m.value};
}

SwitchReport maximize_contrast(const Stack& stack_off, const Stack& stack_on,
                               const DipoleSpec& dipole, const QuadratureConfig& cfg,
                               double omega_lo, double omega_hi) {
    if (!stack_off.same_geometry(stack_on))
        throw std::invalid_argument("maximize_contrast: stacks must share the same geometry");
    auto contrast_at = [&](double w) {
        DipoleSpec d = dipole;
        d.omega_a = w;
        return decay_rate(stack_on, d, cfg).gamma_total /
               decay_rate(stack_off, d, cfg).gamma_total;
    };
    const GridMaximum m = maximize_on_window(contrast_at, omega_lo, omega_hi, "maximize_contrast");
    DipoleSpec d = dipole;
    d.omega_a = m.x;
    return switch_contrast(stack_off, stack_on, d, cfg);
}

}  // namespace layeremit
