// sommerfeld.hpp -- equal-position reflection Green tensor of a planar
// multilayer, evaluated as a wavenumber integral along a contour deformed
// below the real axis (guided-mode and cavity quasi-mode poles of passive
// media sit on or above it).

#pragma once

#include <optional>
#include <utility>

#include "layeremit/fresnel.hpp"
#include "layeremit/stack.hpp"

namespace layeremit {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    // 0 selects the default. ellipse_height: 0.05 * max_n Re k_n;
    // k_cross: 1.1 * max_n Re k_n (must clear every branch point);
    // k_max: tail cap from exp(-2 k min(z_a, d_j - z_a)) < 1e-16.
    double ellipse_height = 0.0;
    double k_cross = 0.0;
    double k_max = 0.0;
    int max_panels = 20000;
};

// The three nonvanishing tensor components at the dipole position; g_yy
// equals g_xx by symmetry. Units w0/c. The propagating/evanescent split
// (at k_par = k_j) is computed on request and only defined for a real
// dipole-layer permittivity.
struct ReflectionGreen {
    Complex g_xx{};
    Complex g_zz{};
    Complex g_yy() const { return g_xx; }
    double err_xx = 0.0;
    double err_zz = 0.0;
    std::optional<Complex> g_xx_prop, g_zz_prop;
    std::optional<Complex> g_xx_evan, g_zz_evan;
    bool has_split() const { return g_xx_prop.has_value(); }
};

// Integrand of the reflection Green tensor per unit k_par at one
// transverse state: the pair (d g_xx / d k_par, d g_zz / d k_par),
//   (i/4pi) k e^{i beta_j d_j} / (2 beta_j) * Gtilde_{xx,zz}
// with Gtilde_xx = -(beta_j^2/k_j^2) C^p_- + C^s_+ ,
// Gtilde_zz = 2 (k^2/k_j^2) C^p_+ ,
// C^q_+- = [r^q_- e^{i beta_j (2 z_a - d_j)} + r^q_+ e^{-i beta_j (2 z_a - d_j)}
//           +- 2 r^q_+ r^q_- e^{i beta_j d_j}] / D_q ,
// D_q = 1 - r^q_+ r^q_- e^{2 i beta_j d_j}.
// Exponentials are grouped so every factor has |.| <= 1 for Im beta >= 0.
std::pair<Complex, Complex> green_integrand(const Stack& stack, std::size_t j, double z_a,
                                            const TransverseState& state);

ReflectionGreen integrate_green(const Stack& stack, std::size_t j, double z_a, double omega,
                                const QuadratureConfig& cfg = {}, bool want_split = false);

}  // namespace layeremit
