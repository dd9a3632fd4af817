// materials.hpp -- frequency-dependent complex permittivity models.
//
// Two model kinds are supported: a single-oscillator Drude-Lorentz medium
//   eps(w) = 1 + omega_p^2 / (omega_t^2 - w^2 - i w gamma)
// and a constant (non-dispersive) permittivity. All frequencies are in
// units of the reference frequency w0, lengths in c/w0.

#pragma once

#include <complex>
#include <variant>

namespace layeremit {

using Complex = std::complex<double>;

struct DrudeLorentz {
    double omega_p = 0.0;  // coupling constant, absolute units of w0
    double omega_t = 1.0;  // oscillator frequency
    double gamma = 0.0;    // linewidth
};

struct ConstantEps {
    Complex eps{1.0, 0.0};
};

// Immutable, validated on construction. Passivity (Im eps >= 0 for w > 0)
// holds for every instance.
class PermittivityModel {
  public:
    static PermittivityModel drude_lorentz(double omega_p, double omega_t, double gamma);
    static PermittivityModel constant(Complex eps);
    static PermittivityModel vacuum() { return constant(Complex{1.0, 0.0}); }

    bool is_drude_lorentz() const { return std::holds_alternative<DrudeLorentz>(v_); }
    bool is_constant() const { return std::holds_alternative<ConstantEps>(v_); }
    const DrudeLorentz& drude() const { return std::get<DrudeLorentz>(v_); }
    const ConstantEps& constant_eps() const { return std::get<ConstantEps>(v_); }

    // Same model with a different linewidth (Drude-Lorentz only).
    PermittivityModel with_gamma(double gamma) const;

    friend bool operator==(const PermittivityModel&, const PermittivityModel&);

  private:
    explicit PermittivityModel(DrudeLorentz m) : v_(m) {}
    explicit PermittivityModel(ConstantEps m) : v_(m) {}
    std::variant<DrudeLorentz, ConstantEps> v_;
};

// eps(omega); throws std::invalid_argument for omega <= 0.
Complex eval_permittivity(const PermittivityModel& model, double omega);

// True when omega falls within gamma/2 of the oscillator resonance. The
// permittivity stays finite there for gamma > 0, but results are dominated
// by the resonance and usually not what the caller intended.
bool near_resonance(const PermittivityModel& model, double omega);

// n = sqrt(eps) on the branch with Re n >= 0 and, for Re n = 0, Im n >= 0.
Complex refractive_index(Complex eps);

}  // namespace layeremit
