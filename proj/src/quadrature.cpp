#include "layeremit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace layeremit::quad {

namespace {

// Gauss-Kronrod (7,15) abscissae and weights on [-1, 1].
constexpr int kNodes = 15;
constexpr double kX[kNodes] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWK[kNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
// Embedded 7-point Gauss weights (zero at Kronrod-only nodes).
constexpr double kWG[kNodes] = {
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119, 0.0,
    0.417959183673469,
    0.0, 0.381830050505119, 0.0, 0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct Panel {
    double a, b;
    Value2 value;
    double err_max;                 // heap priority
    std::array<double, 2> err;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.err_max < y.err_max; }
};

Panel evaluate_panel(const Integrand& f, const Path& path, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Value2 kronrod{};
    Value2 gauss{};
    std::array<Complex, kNodes> terms[2];
    for (int i = 0; i < kNodes; ++i) {
        const double t = mid + half * kX[i];
        const PathPoint p = path(t);
        const Value2 fv = f(p);
        for (int c = 0; c < 2; ++c) {
            const Complex term = fv[c] * p.dk_dt;
            terms[c][i] = term;
            kronrod[c] += kWK[i] * term;
            if (kWG[i] != 0.0) gauss[c] += kWG[i] * term;
        }
    }
    Panel panel;
    panel.a = a;
    panel.b = b;
    for (int c = 0; c < 2; ++c) {
        panel.value[c] = half * kronrod[c];
        // QUADPACK-style estimate: scale |K - G| by the variation of the
        // integrand so that smooth panels do not report a roundoff-noise
        // floor that grows with the panel count.
        const Complex mean = kronrod[c] * 0.5;
        double resasc = 0.0;
        double resabs = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            resasc += kWK[i] * std::abs(terms[c][i] - mean);
            resabs += kWK[i] * std::abs(terms[c][i]);
        }
        resasc *= half;
        resabs *= half;
        double err = std::abs(half * (kronrod[c] - gauss[c]));
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        const double noise = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
        panel.err[c] = std::max(err, noise);
        panel.err_max = 0.0;
    }
    panel.err_max = std::max(panel.err[0], panel.err[1]);
    return panel;
}

}  // namespace

Result integrate_segment(const Integrand& f, const Path& path, double rel_tol,
                         std::array<double, 2> abs_tol, int initial_panels, int max_panels,
                         int* panel_counter) {
    initial_panels = std::max(initial_panels, 1);
    int local_count = 0;
    int& count = panel_counter ? *panel_counter : local_count;

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    Value2 total{};
    std::array<double, 2> total_err{};
    int evals = 0;

    auto push = [&](double a, double b) {
        Panel p = evaluate_panel(f, path, a, b);
        evals += kNodes;
        ++count;
        for (int c = 0; c < 2; ++c) {
            total[c] += p.value[c];
            total_err[c] += p.err[c];
        }
        heap.push(std::move(p));
    };

    for (int i = 0; i < initial_panels; ++i)
        push(static_cast<double>(i) / initial_panels, static_cast<double>(i + 1) / initial_panels);

    auto converged = [&]() {
        for (int c = 0; c < 2; ++c) {
            const double tol = std::max(abs_tol[c], rel_tol * std::abs(total[c]));
            if (total_err[c] > tol) return false;
        }
        return true;
    };

    while (!converged()) {
        if (count >= max_panels || heap.empty()) {
            Result achieved{total, total_err, evals, count};
            std::ostringstream msg;
            msg << "quadrature did not converge within " << max_panels
                << " panels; achieved error (" << total_err[0] << ", " << total_err[1] << ")";
            throw ConvergenceError(msg.str(), achieved);
        }
        Panel worst = heap.top();
        heap.pop();
        for (int c = 0; c < 2; ++c) {
            total[c] -= worst.value[c];
            total_err[c] -= worst.err[c];
        }
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
    }

    return Result{total, total_err, evals, count};
}

Path line_path(Complex a, Complex b) {
    return [a, b](double t) { return PathPoint{a + (b - a) * t, b - a}; };
}

Path ellipse_path(double x0, double x1, double height) {
    const double pi = std::numbers::pi;
    return [x0, x1, height, pi](double t) {
        const double c = std::cos(pi * t);
        const double s = std::sin(pi * t);
        const Complex k(x0 + 0.5 * (x1 - x0) * (1.0 - c), -height * s);
        const Complex dk(0.5 * (x1 - x0) * pi * s, -height * pi * c);
        return PathPoint{k, dk};
    };
}

}  // namespace layeremit::quad
