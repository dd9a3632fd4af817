// emission.hpp -- normalized spontaneous decay rates of a dipole in a
// planar multilayer: local-field-corrected bulk contribution plus the
// reflection part from the Sommerfeld integral, with orientation handling
// and Kerr-switching analysis.
//
// All rates are in units of the free-space rate Gamma_0; the reflection
// part enters as L_j (6 pi / omega_a) Im g_dd with L_j the real-cavity
// local-field factor |3 eps/(2 eps + 1)|^2.

#pragma once

#include <utility>

#include "layeremit/sommerfeld.hpp"
#include "layeremit/stack.hpp"

namespace layeremit {

struct RateResult {
    double gamma_total = 0.0;
    double gamma_bulk = 0.0;
    double gamma_refl = 0.0;  // may be negative (interference)
    std::optional<double> gamma_prop, gamma_evan;  // reflection-part split
    Orientation orientation = Orientation::X;
    double omega_a = 0.0;
    double err_est = 0.0;
};

struct OrientationRates {
    double gamma_x = 0.0;
    double gamma_z = 0.0;
    double gamma_avg = 0.0;  // (2 gamma_x + gamma_z) / 3, same Green evaluation
};

struct SwitchReport {
    double gamma_off = 0.0;
    double gamma_on = 0.0;
    double contrast = 0.0;  // gamma_on / gamma_off
    double omega_a = 0.0;
    Complex eps_off{};  // switched material, evaluated at omega_a
    Complex eps_on{};
};

struct ResonanceResult {
    double omega_res = 0.0;
    double gamma_peak = 0.0;
};

double local_field_factor(Complex eps);

// Real-cavity local-field-corrected bulk decay rate (units Gamma_0):
//   |3e/(2e+1)|^2 { n' + (e''/|e|^2) [ (1/(w R))^3
//     + (28|e|^2 + 16 e' + 1)/(5 |2e+1|^2) (1/(w R))
//     - 2/|2e+1|^2 (2 n''|e|^2 + n'' e' + n' e'') ] },
// with the O(w R) remainder dropped.
double bulk_rate(Complex eps_j, double omega_a, double cavity_radius);

RateResult decay_rate(const Stack& stack, const DipoleSpec& dipole,
                      const QuadratureConfig& cfg = {}, bool want_split = false);

// One Green evaluation feeds all three rates.
OrientationRates orientation_rates(const Stack& stack, const DipoleSpec& dipole,
                                   const QuadratureConfig& cfg = {});

// Rates of the same dipole in two structures of identical geometry that
// differ only in their materials (Kerr off/on states).
SwitchReport switch_contrast(const Stack& stack_off, const Stack& stack_on,
                             const DipoleSpec& dipole, const QuadratureConfig& cfg = {});

// Frequency maximizing the decay rate (dipole orientation as specified)
// over (omega_lo, omega_hi): staged grid scan plus golden-section
// refinement to 1e-6 relative. Throws when the window shows no interior
// maximum.
ResonanceResult find_defect_resonance(const Stack& stack, const DipoleSpec& dipole,
                                      const QuadratureConfig& cfg, double omega_lo,
                                      double omega_hi);

// Frequency maximizing the on/off contrast over the window; returns the
// report at the optimum. Same search scheme as find_defect_resonance.
SwitchReport maximize_contrast(const Stack& stack_off, const Stack& stack_on,
                               const DipoleSpec& dipole, const QuadratureConfig& cfg,
                               double omega_lo, double omega_hi);

}  // namespace layeremit
