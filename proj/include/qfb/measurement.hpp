#pragma once

#include <cmath>
#include <utility>

#include "qfb/bloch.hpp"
#include "qfb/errors.hpp"

namespace qfb {

/// Strength of one two-outcome step
///   Omega_+- = sqrt(kappa)|+-><+-| + sqrt(1 - kappa)|-+><-+|.
/// b = |2 kappa - 1| is cached; b = 0 carries no information and b = 1 is
/// projective.
template <typename Scalar = double>
class MeasurementStrength {
 public:
  MeasurementStrength() = default;

  static MeasurementStrength from_kappa(Scalar kappa) {
    if (!(kappa >= 0 && kappa <= 1)) throw ConfigError("kappa must lie in [0, 1]");
    MeasurementStrength m;
    m.kappa_ = kappa;
    m.b_ = std::abs(2 * kappa - 1);
    return m;
  }

  // kappa = (1 + b)/2, so outcome +1 moves az toward +b.
  static MeasurementStrength from_b(Scalar b) {
    if (!(b >= 0 && b <= 1)) throw ConfigError("measurement strength b must lie in [0, 1]");
    return from_kappa((1 + b) / 2);
  }

  Scalar kappa() const { return kappa_; }
  Scalar b() const { return b_; }
  Scalar b_squared() const { return b_ * b_; }
  // Signed contrast 2 kappa - 1 of the Omega_+ outcome.
  Scalar contrast() const { return 2 * kappa_ - 1; }

  Mat2c<Scalar> kraus(int sign) const {
    using C = std::complex<Scalar>;
    const Scalar hi = std::sqrt(kappa_);
    const Scalar lo = std::sqrt(1 - kappa_);
    Mat2c<Scalar> op = Mat2c<Scalar>::Zero();
    op(0, 0) = C(sign > 0 ? hi : lo, 0);
    op(1, 1) = C(sign > 0 ? lo : hi, 0);
    return op;
  }

 private:
  Scalar kappa_ = Scalar(0.5);
  Scalar b_ = 0;
};

/// kappa = 1/2 - sqrt(2 gamma dt), hence b^2 = 8 gamma dt.
template <typename Scalar = double>
MeasurementStrength<Scalar> strength_from_rate(Scalar gamma, Scalar dt) {
  if (!(gamma > 0) || !(dt > 0)) throw ConfigError("gamma and dt must be positive");
  if (2 * gamma * dt > Scalar(0.25))
    throw StepTooLarge("2*gamma*dt exceeds 1/4; kappa would leave [0, 1]");
  return MeasurementStrength<Scalar>::from_kappa(Scalar(0.5) - std::sqrt(2 * gamma * dt));
}

template <typename Scalar>
struct StepOutcome {
  int sign = 1;
  Scalar probability = 1;
  BlochState<Scalar> post_state;
};

// Born probabilities (p_plus, p_minus).
template <typename Scalar>
std::pair<Scalar, Scalar> outcome_probabilities(const BlochState<Scalar>& s,
                                                const MeasurementStrength<Scalar>& m) {
  const Scalar p_plus = (1 + m.contrast() * s.z()) / 2;
  return {p_plus, 1 - p_plus};
}

// Posterior Omega_s rho Omega_s / p_s in Bloch form.
template <typename Scalar>
BlochState<Scalar> post_measurement_state(const BlochState<Scalar>& s,
                                          const MeasurementStrength<Scalar>& m, int sign) {
  const Scalar c = sign > 0 ? m.contrast() : -m.contrast();
  const Scalar denom = 1 + c * s.z();
  if (denom <= 0) return s;  // zero-probability branch
  const Scalar shrink = std::sqrt(std::max(Scalar(0), 1 - c * c)) / denom;
  Vec3<Scalar> a(s.x() * shrink, s.y() * shrink, (c + s.z()) / denom);
  const Scalar n2 = a.squaredNorm();
  if (n2 > 1) a /= std::sqrt(n2);
  return BlochState<Scalar>(a);
}

/// One step of the two-outcome measurement. The uniform variate u in [0, 1)
/// selects outcome +1 iff u < p_plus; the module draws no randomness itself.
template <typename Scalar>
StepOutcome<Scalar> measure_step(const BlochState<Scalar>& s, const MeasurementStrength<Scalar>& m,
                                 Scalar u) {
  const auto [p_plus, p_minus] = outcome_probabilities(s, m);
  const int sign = u < p_plus ? 1 : -1;
  return {sign, sign > 0 ? p_plus : p_minus, post_measurement_state(s, m, sign)};
}

/// Average reduction of the linear entropy P by one step, for a state at
/// polar angle theta:
///   b^2 P (1 - (1-2P) cos^2 theta) / (1 - (1-2P) b^2 cos^2 theta).
/// Largest at theta = pi/2, where it equals b^2 P for both outcomes.
template <typename Scalar>
Scalar average_purification(Scalar entropy, Scalar theta, const MeasurementStrength<Scalar>& m) {
  const Scalar cos2 = std::cos(theta) * std::cos(theta);
  const Scalar purity_term = (1 - 2 * entropy) * cos2;
  const Scalar b2 = m.b_squared();
  const Scalar denom = 1 - purity_term * b2;
  if (denom <= 0) return 0;  // pure state measured in its own basis
  return b2 * entropy * (1 - purity_term) / denom;
}

}  // namespace qfb
