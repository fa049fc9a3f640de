#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qfb/analytics.hpp"
#include "qfb/errors.hpp"
#include "qfb/quadrature.hpp"

TEST_CASE("adaptive Gauss-Kronrod on known integrals") {
  const auto sine = qfb::integrate_adaptive([](double x) { return std::sin(x); }, 0, std::numbers::pi, 1e-13);
  CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-13));
  const auto gauss = qfb::integrate_adaptive([](double x) { return std::exp(-x * x); }, -10, 10, 1e-13);
  CHECK(gauss.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  const auto peaked = qfb::integrate_adaptive([](double x) { return 1 / (1e-4 + x * x); }, -1, 1, 1e-11);
  CHECK(peaked.value == doctest::Approx(2 * std::atan(100.0) * 100).epsilon(1e-11));
  CHECK(peaked.intervals > 1);
}

TEST_CASE("adaptive quadrature reports non-convergence") {
  CHECK_THROWS_AS(qfb::integrate_adaptive([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-14, 0, 8),
                  qfb::ConvergenceError);
}

TEST_CASE("feedback entropy curve") {
  const auto c = qfb::feedback_entropy_curve(0.5, 2.0, {0.0, std::log(2.0) / 16, 1.0});
  CHECK(c.values[0] == 0.5);
  CHECK(c.values[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.provenance == qfb::Provenance::analytic);
  CHECK(c.is_valid());
  CHECK(c.is_non_increasing());
}

TEST_CASE("discrete recursion converges to the continuum curve at first order") {
  const double gamma = 1.0, p0 = 0.5, horizon = 1.0;
  auto max_gap = [&](double dt) {
    const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    const auto d = qfb::discrete_feedback_curve(p0, gamma, dt, n);
    const auto a = qfb::feedback_entropy_curve(p0, gamma, d.times);
    double gap = 0;
    for (std::size_t i = 0; i < d.size(); ++i) gap = std::max(gap, std::abs(d.values[i] - a.values[i]));
    CHECK(d.provenance == qfb::Provenance::discrete_exact);
    CHECK(d.is_non_increasing());
    return gap;
  };
  const double g1 = max_gap(1e-3), g2 = max_gap(5e-4);
  CHECK(g1 <= 8 * gamma * 1e-3 * p0 * horizon);
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("classical curve at the origin and against independent values") {
  CHECK(qfb::classical_entropy(1.0, 0.0) == 0.5);
  CHECK(qfb::classical_entropy(1.0, 1e-12) == doctest::Approx(0.5).epsilon(1e-10));

  // Values from an independent adaptive quadrature of the u-form integrand.
  CHECK(qfb::classical_entropy(1.0, 0.5) == doctest::Approx(0.0342987043953694).epsilon(1e-12));
  CHECK(qfb::classical_entropy(1.0, 1.0) == doctest::Approx(0.003588128609078456).epsilon(1e-12));

  for (double t : {0.01, 0.05, 0.25, 0.5, 1.0, 2.0}) {
    const double ours = qfb::classical_entropy(1.0, t);
    const double simpson = oracle::classical_entropy_simpson(1.0, t);
    CHECK(ours == doctest::Approx(simpson).epsilon(1e-9));
    // Depends on gamma only through gamma t.
    CHECK(qfb::classical_entropy(4.0, t / 4) == doctest::Approx(ours).epsilon(1e-12));
  }
  CHECK_THROWS_AS(qfb::classical_entropy(1.0, 0.5, 1e-3), qfb::ConfigError);
  CHECK_THROWS_AS(qfb::classical_entropy(1.0, 0.5, 1e-16), qfb::ConfigError);
}

TEST_CASE("classical curve is monotone and self-consistent under tolerance halving") {
  const auto times = qfb::linspace_times(3.0, 31);
  for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
    const auto coarse = qfb::classical_entropy_curve(1.0, times, tol);
    const auto fine = qfb::classical_entropy_curve(1.0, times, tol / 2);
    CHECK(coarse.provenance == qfb::Provenance::quadrature);
    CHECK(coarse.is_valid());
    for (std::size_t i = 1; i < times.size(); ++i) {
      CHECK(coarse.values[i] < coarse.values[i - 1]);
      CHECK(std::abs(coarse.values[i] - fine.values[i]) <= tol * fine.values[i]);
    }
  }
}

TEST_CASE("no-feedback decay slope tends to -4 gamma") {
  auto slope = [](double gamma, double t0, double t1) {
    return (std::log(qfb::classical_entropy(gamma, t1)) - std::log(qfb::classical_entropy(gamma, t0))) / (t1 - t0);
  };
  // d/dt log P_c = -4 gamma - 1/(2t) + ... from the t^(-1/2) prefactor.
  const double near = slope(1.0, 2.0, 3.0);
  const double far = slope(1.0, 20.0, 30.0);
  CHECK(near < -4.0);
  CHECK(near > -4.3);
  CHECK(far == doctest::Approx(-4.0).epsilon(0.01));
  CHECK(slope(2.5, 8.0, 12.0) == doctest::Approx(-10.0).epsilon(0.01));
}

TEST_CASE("speed-up factor") {
  const auto s1 = qfb::speedup_factor(0.01, 1.0);
  const auto s3 = qfb::speedup_factor(0.01, 3.0);
  CHECK(std::abs(s1.ratio - s3.ratio) <= 1e-6);
  CHECK(s1.time_feedback == doctest::Approx(std::log(50.0) / 8));
  CHECK(qfb::classical_entropy(1.0, s1.time_classical) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(s1.final_purity == doctest::Approx(0.98));

  double prev = 1.0;
  for (double p : {0.45, 0.3, 0.1, 0.01, 1e-3, 1e-4, 1e-6, 1e-9}) {
    const double r = qfb::speedup_factor(p, 1.0).ratio;
    CHECK(r > prev);
    CHECK(r < 2.0);
    prev = r;
  }

  const double quad = qfb::speedup_factor(1e-4, 1.0).ratio;
  const double tail = oracle::tail_model_speedup(1.0, 1e-4);
  CHECK(std::abs(quad - tail) <= 0.02 * tail);

  CHECK_THROWS_AS(qfb::speedup_factor(0.5, 1.0), qfb::ConfigError);
  CHECK_THROWS_AS(qfb::speedup_factor(0.7, 1.0), qfb::ConfigError);
}
