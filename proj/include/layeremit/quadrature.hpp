// quadrature.hpp -- adaptive Gauss-Kronrod (7,15) integration of
// two-component complex integrands along parameterized paths in the
// complex plane. Both components share the evaluation nodes, which is
// what makes one pass over the layer recurrence serve g_xx and g_zz.

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace layeremit::quad {

using Complex = std::complex<double>;
using Value2 = std::array<Complex, 2>;

// A path segment k(t), t in [0, 1], with derivative dk/dt. A path that is
// generated from a reference wavenumber k_ref (k = k_ref sin(theta) and
// alike) can supply sqrt(k_ref^2 - k^2) in closed form; recomputing it
// from k near the k = k_ref endpoint would cancel catastrophically.
struct PathPoint {
    Complex k;
    Complex dk_dt;
    Complex ref_beta{};
    bool has_ref_beta = false;
};
using Path = std::function<PathPoint(double)>;
using Integrand = std::function<Value2(const PathPoint&)>;

struct Result {
    Value2 value{};
    std::array<double, 2> error{};  // absolute estimates per component
    int evaluations = 0;
    int panels = 0;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, Result achieved)
        : std::runtime_error(msg), achieved_(achieved) {}
    const Result& achieved() const { return achieved_; }

  private:
    Result achieved_;
};

// Integrates f(k) dk along `path`. Bisects the worst panel until, for each
// component c, the summed error estimate drops below
// max(abs_tol[c], rel_tol * |integral_c|). The per-component absolute
// floors matter when a segment is one cancelling piece of a larger
// decomposition: its own value can be far smaller than the scale the
// caller needs certified. Throws ConvergenceError (carrying the achieved
// estimate) when the panel budget runs out first. `initial_panels` seeds
// the subdivision; the budget is shared across calls through the counter
// the caller passes in.
Result integrate_segment(const Integrand& f, const Path& path, double rel_tol,
                         std::array<double, 2> abs_tol, int initial_panels, int max_panels,
                         int* panel_counter = nullptr);

// Straight segment from a to b.
Path line_path(Complex a, Complex b);

// Half-ellipse from x0 to x1 (real endpoints) dipping to -i*height at the
// midpoint: k(t) = x0 + (x1-x0)(1-cos(pi t))/2 - i height sin(pi t).
Path ellipse_path(double x0, double x1, double height);

}  // namespace layeremit::quad
