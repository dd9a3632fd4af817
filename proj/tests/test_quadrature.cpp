#include <cmath>
#include <numbers>

#include "doctest.h"
#include "layeremit/quadrature.hpp"

using namespace layeremit;
using quad::Value2;
using Complex = quad::Complex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("polynomial and oscillatory integrals on a real segment") {
    // f0 = k^2 over [0,1] -> 1/3 ; f1 = e^{ik} over [0,1] -> sin(1) + i(1-cos(1))
    auto f = [](const quad::PathPoint& p) {
        return Value2{p.k * p.k, std::exp(Complex(0.0, 1.0) * p.k)};
    };
    const auto res = quad::integrate_segment(f, quad::line_path({0.0, 0.0}, {1.0, 0.0}), 1e-12,
                                             {1e-15, 1e-15}, 2, 1000);
    CHECK(std::abs(res.value[0] - Complex(1.0 / 3, 0.0)) < 1e-12);
    CHECK(std::abs(res.value[1] - Complex(std::sin(1.0), 1.0 - std::cos(1.0))) < 1e-12);
    CHECK(res.error[0] < 1e-10);
}

TEST_CASE("narrow spike is found by adaptive refinement") {
    // Lorentzian of width 1e-5 centered at 0.37: integral over [0,1] ~ pi/width
    const double w = 1e-5, c = 0.37;
    auto f = [&](const quad::PathPoint& p) {
        const Complex d = p.k - c;
        return Value2{1.0 / (d * d + w * w), 0.0};
    };
    const double exact = (std::atan((1.0 - c) / w) + std::atan(c / w)) / w;
    const auto res =
        quad::integrate_segment(f, quad::line_path({0.0, 0.0}, {1.0, 0.0}), 1e-9, {1e-15, 1e-15}, 8, 4000);
    CHECK(std::abs(res.value[0].real() - exact) < 1e-8 * exact);
}

TEST_CASE("path independence for an entire integrand") {
    // e^{ik} is entire; the ellipse detour must agree with the real segment.
    auto f = [](const quad::PathPoint& p) {
        return Value2{std::exp(Complex(0.0, 1.0) * p.k), 0.0};
    };
    const auto straight =
        quad::integrate_segment(f, quad::line_path({0.0, 0.0}, {2.0, 0.0}), 1e-12, {1e-15, 1e-15}, 2, 2000);
    for (double h : {0.05, 0.2, 0.8}) {
        const auto arc =
            quad::integrate_segment(f, quad::ellipse_path(0.0, 2.0, h), 1e-12, {1e-15, 1e-15}, 8, 2000);
        CHECK(std::abs(arc.value[0] - straight.value[0]) < 1e-11);
    }
}

TEST_CASE("panel budget exhaustion reports the achieved estimate") {
    auto f = [](const quad::PathPoint& p) {
        const Complex d = p.k - 0.5;
        return Value2{1.0 / (d * d + 1e-12), 0.0};
    };
    CHECK_THROWS_AS(
        quad::integrate_segment(f, quad::line_path({0.0, 0.0}, {1.0, 0.0}), 1e-12, {1e-16, 1e-16}, 2, 8),
        quad::ConvergenceError);
    try {
        quad::integrate_segment(f, quad::line_path({0.0, 0.0}, {1.0, 0.0}), 1e-12, {1e-16, 1e-16}, 2, 8);
    } catch (const quad::ConvergenceError& e) {
        CHECK(e.achieved().error[0] > 0.0);
        CHECK(e.achieved().panels >= 8);
    }
}

TEST_CASE("ellipse path endpoints and direction") {
    const auto path = quad::ellipse_path(0.0, 2.0, 0.3);
    CHECK(std::abs(path(0.0).k - Complex(0.0, 0.0)) < 1e-15);
    CHECK(std::abs(path(1.0).k - Complex(2.0, 0.0)) < 1e-15);
    CHECK(path(0.5).k.imag() == doctest::Approx(-0.3));
    CHECK(path(0.5).k.real() == doctest::Approx(1.0));
    // stays in the lower half-plane
    for (double t : {0.1, 0.3, 0.7, 0.9}) CHECK(path(t).k.imag() < 0.0);
}
