#include "layeremit/sommerfeld.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "layeremit/quadrature.hpp"

namespace layeremit {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<Complex, Complex> integrand_impl(const Stack& stack, std::size_t j, double z_a,
                                           const TransverseState& state) {
    const Complex I(0.0, 1.0);
    const Complex beta_j = state.beta[j];
    const Complex kj2 = state.eps[j] * state.omega * state.omega;
    const double d_j = stack.thickness(j);

    const PolarizedReflection r_up = total_reflection_both(stack, j, Side::Above, state);
    const PolarizedReflection r_dn = total_reflection_both(stack, j, Side::Below, state);

    // All exponents carry Im beta_j >= 0 times a positive length, so every
    // factor is bounded by 1 (the e^{i beta_j d_j} prefactor of the
    // integral is folded in here).
    const Complex exp_z = std::exp(2.0 * I * beta_j * z_a);
    const Complex exp_dz = std::exp(2.0 * I * beta_j * (d_j - z_a));
    const Complex exp_d = exp_z * exp_dz;

    // C^q_{+-} e^{i beta_j d_j}; only C^s_+ enters the xx component, so
    // the s-polarized minus combination is never formed.
    const Complex round_s = r_up.te * r_dn.te * exp_d;
    const Complex sum_s = r_dn.te * exp_z + r_up.te * exp_dz;
    const Complex cs_plus = (sum_s + 2.0 * round_s) / (1.0 - round_s);

    const Complex round_p = r_up.tm * r_dn.tm * exp_d;
    const Complex sum_p = r_dn.tm * exp_z + r_up.tm * exp_dz;
    const Complex d_p = 1.0 - round_p;
    const Complex cp_plus = (sum_p + 2.0 * round_p) / d_p;
    const Complex cp_minus = (sum_p - 2.0 * round_p) / d_p;

    const Complex pref = I / (4.0 * kPi) * state.k_par / (2.0 * beta_j);
    const Complex gxx = pref * (-(beta_j * beta_j / kj2) * cp_minus + cs_plus);
    const Complex gzz = pref * (2.0 * state.k_par * state.k_par / kj2 * cp_plus);
    return {gxx, gzz};
}

// One Sommerfeld evaluation point: permittivities are fixed by omega, only
// the per-node normal wavenumbers change. Scratch state is reused across
// nodes, so one evaluator must not be shared between threads; independent
// integrate_green calls each own one.
class GreenEvaluator {
  public:
    GreenEvaluator(const Stack& stack, std::size_t j, double z_a, double omega)
        : stack_(stack), j_(j), z_a_(z_a) {
        const std::size_t regions = stack.layer_count() + 2;
        state_.omega = omega;
        state_.eps.resize(regions);
        state_.beta.resize(regions);
        k2_.resize(regions);
        for (std::size_t i = 0; i < regions; ++i) {
            state_.eps[i] = eval_permittivity(stack.material(i), omega);
            k2_[i] = state_.eps[i] * omega * omega;
        }
    }

    quad::Value2 operator()(const quad::PathPoint& p) const {
        state_.k_par = p.k;
        const Complex eps_host = state_.eps[j_];
        for (std::size_t i = 0; i < k2_.size(); ++i) {
            // near the endpoints of the split paths, sqrt(k_j^2 - k^2)
            // cancels catastrophically; the path supplies it exactly for
            // every region that shares the host permittivity
            state_.beta[i] = (p.has_ref_beta && state_.eps[i] == eps_host)
                                 ? p.ref_beta
                                 : beta_branch(k2_[i], p.k);
        }
        const auto [gxx, gzz] = integrand_impl(stack_, j_, z_a_, state_);
        return quad::Value2{gxx, gzz};
    }

    quad::Value2 operator()(Complex k_par) const {
        return (*this)(quad::PathPoint{k_par, Complex(1.0, 0.0)});
    }

    // max_n Re k_n; bounds every branch point of the integrand.
    double max_re_k() const {
        double m = 0.0;
        for (const Complex& k2 : k2_) m = std::max(m, refractive_index(k2).real());
        return m;
    }

    Complex eps_j() const { return state_.eps[j_]; }

  private:
    const Stack& stack_;
    std::size_t j_;
    double z_a_;
    std::vector<Complex> k2_;
    mutable TransverseState state_;
};

struct Accumulated {
    quad::Value2 value{};
    std::array<double, 2> error{};

    void add(const quad::Result& r) {
        for (int c = 0; c < 2; ++c) {
            value[c] += r.value[c];
            error[c] += r.error[c];
        }
    }
};

// Absolute floors for a segment that is one piece of a decomposition
// whose overall scale is `scale`: a piece may cancel to nearly zero, and
// chasing rel_tol of the piece's own value would grind forever.
std::array<double, 2> piece_floors(const QuadratureConfig& cfg, const quad::Value2& scale) {
    return {std::max(cfg.abs_tol, 0.25 * cfg.rel_tol * std::abs(scale[0])),
            std::max(cfg.abs_tol, 0.25 * cfg.rel_tol * std::abs(scale[1]))};
}

// Integrates the exponentially decaying real-axis tail in doubling chunks,
// stopping once the analytic remainder bound
//   |f(k_end)| / (2 min(z_a, d_j - z_a))
// certifies the rest below the target.
void integrate_tail(const GreenEvaluator& eval, double k_start, double k_max, double z_min,
                    const QuadratureConfig& cfg, const quad::Value2& scale, int* panels,
                    Accumulated& acc) {
    double a = k_start;
    double width = std::max(k_start, 1.0);
    while (a < k_max) {
        const double b = std::min(a + width, k_max);
        acc.add(quad::integrate_segment([&](const quad::PathPoint& p) { return eval(p); },
                                        quad::line_path(Complex(a, 0.0), Complex(b, 0.0)),
                                        cfg.rel_tol, piece_floors(cfg, scale), 2, cfg.max_panels,
                                        panels));
        if (b >= k_max) break;
        const quad::Value2 fb = eval(Complex(b, 0.0));
        bool done = true;
        for (int c = 0; c < 2; ++c) {
            const double bound = std::abs(fb[c]) / (2.0 * z_min);
            const double target =
                0.05 * std::max(cfg.abs_tol,
                                cfg.rel_tol * std::max(std::abs(acc.value[c]),
                                                       std::abs(scale[c])));
            if (bound > target) done = false;
        }
        if (done) break;
        a = b;
        width *= 2.0;
    }
}

// Path for the propagating split [0, k_j]: k = k_j sin(theta) with theta
// running along a half-ellipse below the real axis from 0 to pi/2. The
// substitution absorbs the 1/beta_j branch-point singularity at k_j;
// beta_j = k_j cos(theta) rides along in closed form.
quad::Path prop_trig_path(double k_j, double depth) {
    const double delta = std::min(0.35, depth / k_j);
    return [k_j, delta](double t) {
        const Complex theta(0.25 * kPi * (1.0 - std::cos(kPi * t)), -delta * std::sin(kPi * t));
        const Complex dtheta =
            kPi * Complex(0.25 * kPi * std::sin(kPi * t), -delta * std::cos(kPi * t));
        const Complex beta = k_j * std::cos(theta);
        return quad::PathPoint{k_j * std::sin(theta), beta * dtheta, beta, true};
    };
}

// Path for the evanescent split [k_j, k_cross]: k = k_j cosh(u), u on a
// half-ellipse below the real axis from 0 to acosh(k_cross/k_j);
// beta_j = i k_j sinh(u) exactly.
quad::Path evan_trig_path(double k_j, double k_cross, double depth) {
    const double u_max = std::acosh(k_cross / k_j);
    const double delta = std::min(0.35, depth / std::sqrt(k_cross * k_cross - k_j * k_j));
    return [k_j, u_max, delta](double t) {
        const Complex u(0.5 * u_max * (1.0 - std::cos(kPi * t)), -delta * std::sin(kPi * t));
        const Complex du = kPi * Complex(0.5 * u_max * std::sin(kPi * t), -delta * std::cos(kPi * t));
        const Complex sinh_u = std::sinh(u);
        return quad::PathPoint{k_j * std::cosh(u), k_j * sinh_u * du,
                               Complex(0.0, 1.0) * k_j * sinh_u, true};
    };
}

}  // namespace

std::pair<Complex, Complex> green_integrand(const Stack& stack, std::size_t j, double z_a,
                                            const TransverseState& state) {
    if (j < 1 || j > stack.layer_count())
        throw std::invalid_argument("green_integrand: bad layer index");
    return integrand_impl(stack, j, z_a, state);
}

ReflectionGreen integrate_green(const Stack& stack, std::size_t j, double z_a, double omega,
                                const QuadratureConfig& cfg, bool want_split) {
    if (j < 1 || j > stack.layer_count())
        throw std::invalid_argument("integrate_green: bad layer index");
    const double d_j = stack.thickness(j);
    if (!(z_a > 0.0) || !(z_a < d_j))
        throw std::invalid_argument("integrate_green: z_a must lie inside layer j");
    const double z_min = std::min(z_a, d_j - z_a);
    if (z_min < 1e-6)
        throw std::invalid_argument(
            "integrate_green: dipole closer than 1e-6 to a layer boundary; "
            "the wavenumber tail does not decay");
    if (!(omega > 0.0)) throw std::invalid_argument("integrate_green: omega must be > 0");
    if (!(cfg.rel_tol > 0.0) || !(cfg.rel_tol < 1.0))
        throw std::invalid_argument("integrate_green: rel_tol out of range");

    const GreenEvaluator eval(stack, j, z_a, omega);
    const double k_top = eval.max_re_k();

    const double height = cfg.ellipse_height > 0.0 ? cfg.ellipse_height : 0.05 * k_top;
    const double k_cross = cfg.k_cross > 0.0 ? cfg.k_cross : 1.1 * k_top;
    if (k_cross <= k_top)
        throw std::invalid_argument("integrate_green: k_cross must exceed every Re k_n");
    // exp(-2 k z_min) < 1e-16 at the cap.
    const double k_cap = std::log(1e16) / (2.0 * z_min);
    const double k_max = cfg.k_max > 0.0 ? cfg.k_max : std::max(2.0 * k_cross, k_cap);
    if (k_max <= k_cross) throw std::invalid_argument("integrate_green: k_max must exceed k_cross");

    int panels = 0;
    auto f = [&eval](const quad::PathPoint& p) { return eval(p); };

    Accumulated total;
    total.add(quad::integrate_segment(f, quad::ellipse_path(0.0, k_cross, height), cfg.rel_tol,
                                      {cfg.abs_tol, cfg.abs_tol}, 8, cfg.max_panels, &panels));
    integrate_tail(eval, k_cross, k_max, z_min, cfg, total.value, &panels, total);

    ReflectionGreen green;
    green.g_xx = total.value[0];
    green.g_zz = total.value[1];
    green.err_xx = total.error[0];
    green.err_zz = total.error[1];

    const Complex eps_j = eval.eps_j();
    const bool host_real = std::abs(eps_j.imag()) <= 1e-14 * std::max(1.0, std::abs(eps_j));
    if (want_split && host_real && eps_j.real() > 0.0) {
        const double k_j = refractive_index(eps_j).real() * omega;

        // both split pieces are certified against the total's scale; each
        // piece alone can cancel to a much smaller value
        const std::array<double, 2> floors = piece_floors(cfg, total.value);
        Accumulated prop;
        prop.add(quad::integrate_segment(f, prop_trig_path(k_j, height), cfg.rel_tol, floors, 8,
                                         cfg.max_panels, &panels));
        Accumulated evan;
        evan.add(quad::integrate_segment(f, evan_trig_path(k_j, k_cross, height), cfg.rel_tol,
                                         floors, 8, cfg.max_panels, &panels));
        integrate_tail(eval, k_cross, k_max, z_min, cfg, total.value, &panels, evan);

        green.g_xx_prop = prop.value[0];
        green.g_zz_prop = prop.value[1];
        green.g_xx_evan = evan.value[0];
        green.g_zz_evan = evan.value[1];
    }
    return green;
}

}  // namespace layeremit
