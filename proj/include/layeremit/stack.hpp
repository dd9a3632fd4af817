// stack.hpp -- planar multilayer geometry and the Bragg/defect builder.
//
// A Stack is an ordered list of finite layers (index 1..N, bottom to top)
// between two semi-infinite half-spaces (index 0 below, N+1 above).

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layeremit/materials.hpp"

namespace layeremit {

struct Layer {
    double thickness = 0.0;  // units c/w0, > 0 and finite
    PermittivityModel material = PermittivityModel::vacuum();
};

class Stack {
  public:
    Stack(PermittivityModel lower, std::vector<Layer> layers, PermittivityModel upper);

    std::size_t layer_count() const { return layers_.size(); }
    // Material by global index: 0 = lower half-space, 1..N = layers, N+1 = upper.
    const PermittivityModel& material(std::size_t index) const;
    double thickness(std::size_t layer_index) const;  // 1..N only
    const std::vector<Layer>& layers() const { return layers_; }
    const PermittivityModel& lower_halfspace() const { return lower_; }
    const PermittivityModel& upper_halfspace() const { return upper_; }

    // Copy with every occurrence of material `from` replaced by `to`;
    // geometry untouched. Used for Kerr on/off material states.
    Stack with_material_replaced(const PermittivityModel& from, const PermittivityModel& to) const;

    bool same_geometry(const Stack& other) const;

  private:
    PermittivityModel lower_;
    std::vector<Layer> layers_;
    PermittivityModel upper_;
};

enum class Orientation { X, Z, IsotropicAverage };

// Dipole location and transition parameters. z_a is the height above the
// lower boundary of layer `layer_index`, in units c/w0. cavity_radius feeds
// the real-cavity local-field terms of the bulk rate and is only material
// for an absorbing host layer.
struct DipoleSpec {
    std::size_t layer_index = 1;
    double z_a = 0.0;
    Orientation orientation = Orientation::X;
    double omega_a = 1.0;
    double cavity_radius = 0.0;  // 0 = auto (1e-2 / omega_a)

    double effective_cavity_radius() const;
};

// Throws std::invalid_argument on hard violations (layer index, z_a range,
// omega_a, R); returns a human-readable warning when the cavity radius is
// not small against the dipole-boundary distances and the wavelength.
std::optional<std::string> validate_dipole(const Stack& stack, const DipoleSpec& dipole);

struct BraggStack {
    Stack stack;
    std::size_t host_layer;  // central (dipole-hosting) layer index
};

// Quarter-wave stack of n_periods (high, low) pairs per side, arranged
// symmetrically about a central low-index host layer, vacuum half-spaces.
// Layer thickness is quarter-wave at omega_mid, d = (pi/2)/(omega_mid Re n);
// with defect = true the central layer is doubled to a half-wave layer.
BraggStack build_bragg_stack(int n_periods, const PermittivityModel& eps_low,
                             const PermittivityModel& eps_high, double omega_mid, bool defect,
                             std::optional<std::size_t> host_override = std::nullopt);

// True iff the layer list plus half-spaces read identically bottom-up and
// top-down (same thicknesses, same materials).
bool mirror_symmetric(const Stack& stack);

}  // namespace layeremit
