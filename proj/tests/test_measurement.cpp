#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qfb/measurement.hpp"

using qfb::BlochState;
using qfb::MeasurementStrength;
using Vec = Eigen::Vector3d;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("strength_from_rate") {
  const auto m = qfb::strength_from_rate(1.0, 0.005);
  CHECK(m.kappa() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(m.b() == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(m.b_squared() == doctest::Approx(8 * 1.0 * 0.005).epsilon(1e-14));

  const auto weak = qfb::strength_from_rate(1.0, 1e-14);
  CHECK(weak.kappa() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(weak.b() < 1e-6);

  CHECK_THROWS_AS(qfb::strength_from_rate(1.0, 1.0), qfb::StepTooLarge);
  CHECK_THROWS_AS(qfb::strength_from_rate(-1.0, 0.1), qfb::ConfigError);
  CHECK(std::abs(qfb::strength_from_rate(1.0, 0.125).kappa()) < 1e-15);
}

TEST_CASE("strength invariants") {
  for (double k : {0.0, 0.1, 0.4, 0.5, 0.77, 1.0}) {
    const auto m = MeasurementStrength<double>::from_kappa(k);
    CHECK(std::abs(m.b() - std::abs(2 * k - 1)) <= 1e-12);
  }
  CHECK_THROWS_AS(MeasurementStrength<double>::from_kappa(1.2), qfb::ConfigError);
}

TEST_CASE("outcome probabilities") {
  for (double k : {0.1, 0.3, 0.9}) {
    const auto [pp, pm] = qfb::outcome_probabilities(BlochState<double>(0.5, 0.1, 0), MeasurementStrength<double>::from_kappa(k));
    // Brute-force trace of Omega rho Omega^dagger.
    const auto plus = oracle::measure(Vec(0.5, 0.1, 0), k, 1);
    CHECK(pp == doctest::Approx(plus.probability).epsilon(1e-15));
    CHECK(pp == doctest::Approx(0.5));
    CHECK(pm == doctest::Approx(0.5));
  }
  const auto [pp, pm] = qfb::outcome_probabilities(BlochState<double>(0, 0, 1), MeasurementStrength<double>::from_kappa(0.9));
  CHECK(pp == doctest::Approx(0.9));
  CHECK(pm == doctest::Approx(0.1));

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-0.57, 0.57);
  const auto half = MeasurementStrength<double>::from_kappa(0.5);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = qfb::outcome_probabilities(BlochState<double>(u(gen), u(gen), u(gen)), half);
    CHECK(a == 0.5);
    CHECK(b == 0.5);
  }
}

TEST_CASE("measure_step examples") {
  const BlochState<double> s(0.3, -0.2, 0.4);
  const auto half = MeasurementStrength<double>::from_kappa(0.5);
  for (double u : {0.1, 0.9}) CHECK((qfb::measure_step(s, half, u).post_state.vector() - s.vector()).norm() < 1e-15);

  const auto projective = MeasurementStrength<double>::from_kappa(1.0);
  const auto up = qfb::measure_step(BlochState<double>(), projective, 0.25);
  const auto down = qfb::measure_step(BlochState<double>(), projective, 0.75);
  CHECK(up.sign == 1);
  CHECK(up.probability == 0.5);
  CHECK((up.post_state.vector() - Vec(0, 0, 1)).norm() < 1e-15);
  CHECK(down.sign == -1);
  CHECK((down.post_state.vector() - Vec(0, 0, -1)).norm() < 1e-15);

  // b = 0.2 from an in-plane state: both branches shrink x by sqrt(1 - b^2).
  const auto m = MeasurementStrength<double>::from_b(0.2);
  for (double u : {0.2, 0.8}) {
    const auto out = qfb::measure_step(BlochState<double>(0.6, 0, 0), m, u);
    const auto ref = oracle::measure(Vec(0.6, 0, 0), m.kappa(), out.sign);
    CHECK(out.probability == doctest::Approx(0.5));
    CHECK((out.post_state.vector() - Vec(0.6 * std::sqrt(0.96), 0, 0.2 * out.sign)).norm() < 1e-15);
    CHECK((out.post_state.vector() - ref.post).norm() < 1e-15);
  }
}

TEST_CASE("outcome +1 from kappa < 1/2 moves az toward -b") {
  const auto m = qfb::strength_from_rate(1.0, 0.005);
  const auto out = qfb::measure_step(BlochState<double>(), m, 0.1);
  CHECK(out.sign == 1);
  CHECK(out.post_state.z() == doctest::Approx(-0.2));
}

TEST_CASE("Bloch update agrees with matrix conjugation on random inputs") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u;
  for (int i = 0; i < 1000; ++i) {
    Vec a(n(gen), n(gen), n(gen));
    a *= std::cbrt(u(gen)) / a.norm();
    const double kappa = u(gen);
    const auto m = MeasurementStrength<double>::from_kappa(kappa);
    const auto [pp, pm] = qfb::outcome_probabilities(BlochState<double>(a), m);
    CHECK(std::abs(pp + pm - 1) <= 1e-12);
    for (int sign : {1, -1}) {
      const auto ref = oracle::measure(a, kappa, sign);
      const auto got = qfb::post_measurement_state(BlochState<double>(a), m, sign);
      CHECK(std::abs((sign > 0 ? pp : pm) - ref.probability) <= 1e-12);
      CHECK((got.vector() - ref.post).norm() <= 1e-10);
    }
  }
}

TEST_CASE("average_purification examples") {
  const auto m = MeasurementStrength<double>::from_b(0.2);
  CHECK(qfb::average_purification(0.5, kPi / 2, m) == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(oracle::average_purification(Vec(0, 0, 0), m.kappa()) == doctest::Approx(0.02).epsilon(1e-14));

  for (double p : {0.05, 0.2, 0.4}) {
    const double b2 = 0.04;
    const double expected = 2 * p * p * b2 / (1 - (1 - 2 * p) * b2);
    CHECK(qfb::average_purification(p, 0.0, m) == doctest::Approx(expected).epsilon(1e-13));
    const Vec a(0, 0, std::sqrt(1 - 2 * p));
    CHECK(oracle::average_purification(a, m.kappa()) == doctest::Approx(expected).epsilon(1e-12));
  }

  const auto none = MeasurementStrength<double>::from_b(0.0);
  for (double p : {0.0, 0.1, 0.5})
    for (double th : {0.0, 1.0, kPi / 2}) CHECK(qfb::average_purification(p, th, none) == 0.0);
}

TEST_CASE("purification formula matches enumeration and is maximal at pi/2") {
  for (int i = 0; i <= 20; ++i) {
    const double p = 0.5 * i / 20;
    for (int j = 0; j <= 20; ++j) {
      const double theta = kPi * j / 20;
      for (int k = 1; k < 20; ++k) {
        const double b = static_cast<double>(k) / 20;
        const auto m = MeasurementStrength<double>::from_b(b);
        const auto s = BlochState<double>::from_spherical(p, theta);
        const double formula = qfb::average_purification(p, theta, m);
        CHECK(std::abs(formula - oracle::average_purification(s.vector(), m.kappa())) <= 1e-10);
        CHECK(formula >= 0.0);
        const double best = qfb::average_purification(p, kPi / 2, m);
        CHECK(best >= formula - 1e-12);
        if (p > 0 && p < 0.5 && j != 10) CHECK(best > formula);
      }
    }
  }
}

TEST_CASE("at pi/2 both outcomes leave the same entropy") {
  for (double p : {0.1, 0.3, 0.5})
    for (double b : {0.1, 0.5, 0.9}) {
      const auto m = MeasurementStrength<double>::from_b(b);
      const auto s = BlochState<double>::from_spherical(p, kPi / 2, 0.7);
      for (int sign : {1, -1})
        CHECK(qfb::linear_entropy(qfb::post_measurement_state(s, m, sign)) ==
              doctest::Approx((1 - b * b) * p).epsilon(1e-13));
    }
}
