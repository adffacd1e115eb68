// SPDX-License-Identifier: Apache-2.0
//
// Optimizer tests: convergence on standard objectives, gradient accuracy,
// evaluation accounting, trace monotonicity, and tolerance to a noisy
// objective.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lvqe/optim.hpp"

using namespace lvqe;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<OptMethod> kAllMethods = {
    OptMethod::cobyla_style, OptMethod::powell, OptMethod::bfgs,
    OptMethod::slsqp_style};

// Shifted anisotropic quadratic with minimum at x* and f* = 0.
Objective quadratic4(const std::vector<double>& target) {
  return Objective(4, [target](const std::vector<double>& x) {
    double f = 0.0;
    for (size_t i = 0; i < 4; ++i) {
      const double d = x[i] - target[i];
      f += double(i + 1) * d * d;
    }
    return f;
  });
}

}  // namespace

TEST_CASE("all methods solve a 4-dimensional quadratic") {
  const std::vector<double> target{0.3, -1.1, 0.7, 2.0};
  for (const auto method : kAllMethods) {
    const Objective obj = quadratic4(target);
    const auto res =
        minimize(method, obj, {0.0, 0.0, 0.0, 0.0}, {100000, 1e-12, 1e-12});
    CAPTURE(to_string(method));
    CHECK(res.f < 1e-8);
    for (size_t i = 0; i < 4; ++i)
      CHECK(std::abs(res.theta[i] - target[i]) < 1e-5);
    CHECK(res.n_evals == obj.evaluations());
    CHECK(res.n_evals <= 100000);
    CHECK(!res.termination.empty());
  }
}

TEST_CASE("bfgs solves Rosenbrock from the classic start") {
  const Objective obj(2, [](const std::vector<double>& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  });
  const auto res = minimize(OptMethod::bfgs, obj, {-1.2, 1.0},
                            {200000, 1e-14, 1e-12, 1e-7});
  CHECK(std::abs(res.theta[0] - 1.0) < 1e-4);
  CHECK(std::abs(res.theta[1] - 1.0) < 1e-4);
  CHECK(res.f < 1e-8);
}

TEST_CASE("powell matches a grid-scan oracle on 1 - cos") {
  // f(x) = 1 − cos(x − 0.4), period 2π; scan locates the basin minimum.
  auto f = [](double x) { return 1.0 - std::cos(x - 0.4); };
  double best_x = 0.0, best_f = 1e300;
  for (int k = 0; k <= 100000; ++k) {
    const double x = -kPi + 2.0 * kPi * k / 100000.0;
    if (f(x) < best_f) {
      best_f = f(x);
      best_x = x;
    }
  }
  const Objective obj(
      1, [&](const std::vector<double>& x) { return f(x[0]); });
  const auto res = minimize(OptMethod::powell, obj, {1.0}, {50000});
  CHECK(std::abs(res.theta[0] - best_x) < 1e-4);
  CHECK(res.f <= best_f + 1e-10);
}

TEST_CASE("finite_diff_gradient matches the analytic gradient") {
  const Objective obj(3, [](const std::vector<double>& x) {
    return std::sin(x[0]) * std::cos(x[1]) + std::exp(0.3 * x[2]) +
           x[0] * x[2];
  });
  const std::vector<double> x{0.4, -0.9, 0.2};
  const auto g = finite_diff_gradient(obj, x, 1e-4);
  REQUIRE(g.size() == 3);
  CHECK(std::abs(g[0] - (std::cos(x[0]) * std::cos(x[1]) + x[2])) < 1e-6);
  CHECK(std::abs(g[1] - (-std::sin(x[0]) * std::sin(x[1]))) < 1e-6);
  CHECK(std::abs(g[2] - (0.3 * std::exp(0.3 * x[2]) + x[0])) < 1e-6);
  CHECK(obj.evaluations() == 6);  // central differences: 2 per dimension
}

TEST_CASE("trace is monotone and consistent with evaluation counts") {
  for (const auto method : kAllMethods) {
    const Objective obj = quadratic4({1.0, 1.0, -1.0, 0.5});
    const auto res = minimize(method, obj, {3.0, -2.0, 1.0, 0.0}, {20000});
    CAPTURE(to_string(method));
    REQUIRE(!res.trace.empty());
    for (size_t k = 1; k < res.trace.size(); ++k) {
      CHECK(res.trace[k].second <= res.trace[k - 1].second + 1e-15);
      CHECK(res.trace[k].first > res.trace[k - 1].first);
    }
    CHECK(res.trace.back().first <= res.n_evals);
    CHECK(res.trace.back().second == doctest::Approx(res.f));
  }
}

TEST_CASE("max_evals budget is respected") {
  for (const auto method : kAllMethods) {
    const Objective obj = quadratic4({5.0, 5.0, 5.0, 5.0});
    const long cap = 60;
    const auto res = minimize(method, obj, {0, 0, 0, 0}, {cap});
    CAPTURE(to_string(method));
    // A small overshoot is allowed to finish the step in flight.
    CHECK(res.n_evals <= cap + 2 * obj.dim() + 8);
  }
}

TEST_CASE("noisy objective: methods still reach the basin") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1e-3);
  for (const auto method : kAllMethods) {
    const Objective obj(2, [&](const std::vector<double>& x) {
      const double f =
          (x[0] - 0.5) * (x[0] - 0.5) + 2.0 * (x[1] + 0.25) * (x[1] + 0.25);
      return f + noise(rng);
    });
    // Wide finite-difference step so gradient methods average over noise.
    const auto res =
        minimize(method, obj, {2.0, -2.0}, {200000, 1e-9, 1e-9, 1e-2});
    CAPTURE(to_string(method));
    const double clean =
        (res.theta[0] - 0.5) * (res.theta[0] - 0.5) +
        2.0 * (res.theta[1] + 0.25) * (res.theta[1] + 0.25);
    CHECK(clean < 1e-2);
  }
}

TEST_CASE("method names round-trip") {
  for (const auto m : kAllMethods)
    CHECK(opt_method_from_string(to_string(m)) == m);
  CHECK_THROWS(opt_method_from_string("newton"));
}

TEST_CASE("dimension mismatch throws") {
  const Objective obj = quadratic4({0, 0, 0, 0});
  CHECK_THROWS(minimize(OptMethod::bfgs, obj, {0.0, 0.0}, {1000}));
}
