#include "layeremit/stack.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace layeremit {

Stack::Stack(PermittivityModel lower, std::vector<Layer> layers, PermittivityModel upper)
    : lower_(std::move(lower)), layers_(std::move(layers)), upper_(std::move(upper)) {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const double d = layers_[i].thickness;
        if (!(d > 0.0) || !std::isfinite(d)) {
            std::ostringstream msg;
            msg << "Stack: layer " << (i + 1) << " thickness must be > 0 and finite, got " << d;
            throw std::invalid_argument(msg.str());
        }
    }
}

const PermittivityModel& Stack::material(std::size_t index) const {
    if (index == 0) return lower_;
    if (index == layers_.size() + 1) return upper_;
    if (index > layers_.size()) throw std::out_of_range("Stack::material: index out of range");
    return layers_[index - 1].material;
}

double Stack::thickness(std::size_t layer_index) const {
    if (layer_index < 1 || layer_index > layers_.size())
        throw std::out_of_range("Stack::thickness: layer index out of range");
    return layers_[layer_index - 1].thickness;
}

Stack Stack::with_material_replaced(const PermittivityModel& from,
                                    const PermittivityModel& to) const {
    std::vector<Layer> layers = layers_;
    for (auto& layer : layers)
        if (layer.material == from) layer.material = to;
    PermittivityModel lower = (lower_ == from) ? to : lower_;
    PermittivityModel upper = (upper_ == from) ? to : upper_;
    return Stack(lower, std::move(layers), upper);
}

bool Stack::same_geometry(const Stack& other) const {
    if (layers_.size() != other.layers_.size()) return false;
    for (std::size_t i = 0; i < layers_.size(); ++i)
        if (layers_[i].thickness != other.layers_[i].thickness) return false;
    return true;
}

double DipoleSpec::effective_cavity_radius() const {
    return cavity_radius > 0.0 ? cavity_radius : 1e-2 / omega_a;
}

std::optional<std::string> validate_dipole(const Stack& stack, const DipoleSpec& dipole) {
    if (dipole.layer_index < 1 || dipole.layer_index > stack.layer_count())
        throw std::invalid_argument("dipole layer index out of range");
    const double d = stack.thickness(dipole.layer_index);
    if (!(dipole.z_a > 0.0) || !(dipole.z_a < d))
        throw std::invalid_argument("dipole height z_a must lie strictly inside the host layer");
    if (!(dipole.omega_a > 0.0) || !std::isfinite(dipole.omega_a))
        throw std::invalid_argument("dipole transition frequency must be > 0");
    const double r = dipole.effective_cavity_radius();
    if (!(r > 0.0)) throw std::invalid_argument("cavity radius must be > 0");

    const double wavelength = 2.0 * std::numbers::pi / dipole.omega_a;
    const double scale = std::min({dipole.z_a, d - dipole.z_a, wavelength});
    if (r >= 0.1 * scale) {
        std::ostringstream msg;
        msg << "cavity radius R = " << r << " is not small against the shortest "
            << "characteristic length " << scale << "; bulk-rate local-field terms are suspect";
        return msg.str();
    }
    return std::nullopt;
}

BraggStack build_bragg_stack(int n_periods, const PermittivityModel& eps_low,
                             const PermittivityModel& eps_high, double omega_mid, bool defect,
                             std::optional<std::size_t> host_override) {
    if (n_periods < 1) throw std::invalid_argument("build_bragg_stack: n_periods must be >= 1");
    if (!(omega_mid > 0.0)) throw std::invalid_argument("build_bragg_stack: omega_mid must be > 0");

    const Complex el = eval_permittivity(eps_low, omega_mid);
    const Complex eh = eval_permittivity(eps_high, omega_mid);
    if (!(el.real() > 0.0) || !(eh.real() > 0.0))
        throw std::invalid_argument("build_bragg_stack: Re eps must be > 0 at omega_mid");

    // Quarter wavelength in the medium; the ~1e-10 imaginary index part of
    // the operating materials is irrelevant for thickness design.
    const double n_low = refractive_index(el).real();
    const double n_high = refractive_index(eh).real();
    const double d_low = 0.5 * std::numbers::pi / (omega_mid * n_low);
    const double d_high = 0.5 * std::numbers::pi / (omega_mid * n_high);

    // Bottom to top: H (L H)^(m-1), host L, (H L)^(m-1) H. The dipole host
    // is the unique central layer; each side presents n_periods high-index
    // quarter-wave layers to it.
    const int m = n_periods;
    std::vector<Layer> layers;
    layers.reserve(static_cast<std::size_t>(4 * m - 1));
    layers.push_back({d_high, eps_high});
    for (int i = 0; i < m - 1; ++i) {
        layers.push_back({d_low, eps_low});
        layers.push_back({d_high, eps_high});
    }
    layers.push_back({defect ? 2.0 * d_low : d_low, eps_low});
    const std::size_t central = layers.size();
    for (int i = 0; i < m - 1; ++i) {
        layers.push_back({d_high, eps_high});
        layers.push_back({d_low, eps_low});
    }
    layers.push_back({d_high, eps_high});

    Stack stack(PermittivityModel::vacuum(), std::move(layers), PermittivityModel::vacuum());
    std::size_t host = host_override.value_or(central);
    if (host < 1 || host > stack.layer_count())
        throw std::invalid_argument("build_bragg_stack: host layer override out of range");
    return BraggStack{std::move(stack), host};
}

bool mirror_symmetric(const Stack& stack) {
    if (!(stack.lower_halfspace() == stack.upper_halfspace())) return false;
    const auto& layers = stack.layers();
    const std::size_t n = layers.size();
    for (std::size_t i = 0; i < n / 2 + n % 2; ++i) {
        const Layer& a = layers[i];
        const Layer& b = layers[n - 1 - i];
        if (a.thickness != b.thickness || !(a.material == b.material)) return false;
    }
    return true;
}

}  // namespace layeremit
