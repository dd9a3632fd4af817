// fresnel.hpp -- single-interface Fresnel coefficients and the recurrence
// for the total reflection coefficients of the layer stacks above and
// below a given layer.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "layeremit/stack.hpp"

namespace layeremit {

enum class Polarization { TE, TM };  // s, p
enum class Side { Below, Above };    // r_- , r_+

// Per-(omega, k_par) derived quantities for every region of a stack,
// indexed like Stack::material: 0 = lower half-space, 1..N layers,
// N+1 = upper half-space. beta = sqrt(eps w^2 - k_par^2) on the branch
// Im beta >= 0 (Re beta >= 0 when Im beta = 0).
struct TransverseState {
    double omega = 0.0;
    Complex k_par{0.0, 0.0};
    std::vector<Complex> eps;
    std::vector<Complex> beta;

    static TransverseState make(const Stack& stack, double omega, Complex k_par);
};

// Normal-wavenumber branch used throughout: for evaluation points on or
// below the real k_par axis and passive media, k2 - k_par^2 stays in the
// closed upper half-plane and the principal square root is the physical
// branch; the sign flip only guards points above the axis.
Complex beta_branch(Complex k2, Complex k_par);

// Reflection coefficient of the single interface seen from region `from`
// into region `to`: r_s = (bf - bt)/(bf + bt),
// r_p = (et bf - ef bt)/(et bf + ef bt). With this sign convention a
// perfect mirror gives r_s -> -1, r_p -> +1.
Complex fresnel_interface(const TransverseState& state, std::size_t from, std::size_t to,
                          Polarization pol);

struct PolarizedReflection {
    Complex te;
    Complex tm;
};

// Total reflection coefficients seen from inside layer j looking toward
// `side`, by the downward recurrence
//   R(n) = [r_{n,n+1} + R(n+1) e^{2 i beta_{n+1} d_{n+1}}]
//        / [1 + r_{n,n+1} R(n+1) e^{2 i beta_{n+1} d_{n+1}}]
// seeded with the Fresnel coefficient at the terminal half-space (and the
// mirrored recurrence for the lower side). Unconditionally stable for
// Im beta >= 0 since |e^{2 i beta d}| <= 1. Both polarizations share one
// walk; the per-layer phase factors dominate the cost.
PolarizedReflection total_reflection_both(const Stack& stack, std::size_t j, Side side,
                                          const TransverseState& state);

Complex total_reflection(const Stack& stack, std::size_t j, Side side,
                         const TransverseState& state, Polarization pol);

}  // namespace layeremit
