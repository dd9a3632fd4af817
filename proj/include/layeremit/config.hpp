// config.hpp -- line-oriented run configuration: materials, structure
// (bragg recipe or explicit layer list), dipole, sweep axis, quadrature
// overrides, and the Kerr on-state material substitutions.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "layeremit/emission.hpp"
#include "layeremit/stack.hpp"

namespace layeremit {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

enum class SweepAxis { Frequency, Position, Linewidth };
enum class OrientationSel { X, Z, Avg, All };

struct BraggCfg {
    int periods = 0;
    std::string low, high;
    bool defect = false;
    double omega_mid = 1.0;
};

struct LayerLine {
    double thickness = 0.0;
    std::string material;
};

struct LayersCfg {
    std::string lower, upper;
    std::vector<LayerLine> layers;
};

struct DipoleCfg {
    bool center = true;  // layer = center | explicit index
    std::size_t layer_index = 0;
    double z_frac = 0.5;  // fraction of the host layer thickness
    OrientationSel orientation = OrientationSel::X;
    double omega_a = 0.0;  // 0: defaults to bragg omega_mid (or 1)
    double cavity_radius = 0.0;  // 0: auto
};

struct SweepCfg {
    SweepAxis axis = SweepAxis::Frequency;
    double min = 0.0, max = 0.0;
    int points = 0;
    bool split = false;
    std::string material;  // linewidth axis: which Drude-Lorentz material
};

struct RunConfig {
    std::map<std::string, PermittivityModel> materials;
    std::optional<BraggCfg> bragg;
    std::optional<LayersCfg> layers;
    DipoleCfg dipole;
    std::optional<SweepCfg> sweep;
    QuadratureConfig quad;
    // (from, to) material-name substitutions defining the on state
    std::vector<std::pair<std::string, std::string>> replacements;
};

// Parses and validates; overrides are dot-path assignments applied before
// validation: "sweep.points=400", "material.epsH.omega_p_rel=1.7529",
// "dipole.z=0.2". Errors carry the offending line number.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

struct Structure {
    Stack stack;
    std::size_t dipole_layer;
};

Structure build_structure(const RunConfig& cfg);
// Applies the [switch] substitutions to `base` (geometry unchanged).
Stack build_switched_structure(const RunConfig& cfg, const Stack& base);
DipoleSpec make_dipole(const RunConfig& cfg, const Structure& s);

}  // namespace layeremit
