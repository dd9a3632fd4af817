#include "layeremit/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace layeremit {

PermittivityModel PermittivityModel::drude_lorentz(double omega_p, double omega_t, double gamma) {
    if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("drude_lorentz: omega_p must be >= 0 and finite");
    if (!(omega_t > 0.0) || !std::isfinite(omega_t))
        throw std::invalid_argument("drude_lorentz: omega_t must be > 0 and finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("drude_lorentz: gamma must be >= 0 and finite");
    return PermittivityModel(DrudeLorentz{omega_p, omega_t, gamma});
}

PermittivityModel PermittivityModel::constant(Complex eps) {
    if (!(eps.imag() >= 0.0))
        throw std::invalid_argument("constant permittivity must be passive (Im eps >= 0)");
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
        throw std::invalid_argument("constant permittivity must be finite");
    return PermittivityModel(ConstantEps{eps});
}

PermittivityModel PermittivityModel::with_gamma(double gamma) const {
    const auto& m = drude();
    return drude_lorentz(m.omega_p, m.omega_t, gamma);
}

bool operator==(const PermittivityModel& a, const PermittivityModel& b) {
    if (a.is_constant() != b.is_constant()) return false;
    if (a.is_constant()) return a.constant_eps().eps == b.constant_eps().eps;
    const auto& da = a.drude();
    const auto& db = b.drude();
    return da.omega_p == db.omega_p && da.omega_t == db.omega_t && da.gamma == db.gamma;
}

Complex eval_permittivity(const PermittivityModel& model, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("eval_permittivity: omega must be > 0");
    if (model.is_constant()) return model.constant_eps().eps;
    const auto& m = model.drude();
    const Complex denom(m.omega_t * m.omega_t - omega * omega, -omega * m.gamma);
    return 1.0 + m.omega_p * m.omega_p / denom;
}

bool near_resonance(const PermittivityModel& model, double omega) {
    if (!model.is_drude_lorentz()) return false;
    const auto& m = model.drude();
    return std::abs(omega - m.omega_t) < 0.5 * m.gamma;
}

Complex refractive_index(Complex eps) {
    Complex n = std::sqrt(eps);
    // Principal sqrt already gives Re n >= 0; resolve the Re n = 0 edge
    // (negative real eps) toward Im n >= 0.
    if (n.real() < 0.0) n = -n;
    if (n.real() == 0.0 && n.imag() < 0.0) n = -n;
    return n;
}

}  // namespace layeremit
