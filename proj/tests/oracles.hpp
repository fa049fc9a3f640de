#pragma once

// Independent reference computations for the tests: explicit 2x2 complex
// matrix algebra, no Bloch-form shortcuts from the library.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using V3 = Eigen::Vector3d;

inline M2 identity() { return M2::Identity(); }
inline M2 sigma_x() { M2 m; m << 0, 1, 1, 0; return m; }
inline M2 sigma_y() { M2 m; m << 0, C(0, -1), C(0, 1), 0; return m; }
inline M2 sigma_z() { M2 m; m << 1, 0, 0, -1; return m; }

inline M2 density(const V3& a) {
  return (identity() + a.x() * sigma_x() + a.y() * sigma_y() + a.z() * sigma_z()) / 2.0;
}

// Bloch vector of rho / Tr rho.
inline V3 bloch(const M2& rho) {
  const double tr = rho.trace().real();
  return V3((rho * sigma_x()).trace().real(), (rho * sigma_y()).trace().real(),
            (rho * sigma_z()).trace().real()) / tr;
}

inline double linear_entropy(const M2& rho) {
  const M2 r = rho / rho.trace();
  return 1.0 - (r * r).trace().real();
}

// exp(-i angle/2 n.sigma) via the matrix exponential series of a Hermitian
// generator, computed by eigendecomposition.
inline M2 unitary(const V3& n, double angle) {
  const M2 gen = n.x() * sigma_x() + n.y() * sigma_y() + n.z() * sigma_z();
  Eigen::SelfAdjointEigenSolver<M2> es(gen);
  Eigen::Vector2cd phases;
  for (int i = 0; i < 2; ++i) phases(i) = std::exp(C(0, -angle / 2 * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Omega_+- = sqrt(kappa)|+-><+-| + sqrt(1-kappa)|-+><-+| with |+> the sz = +1 state.
inline M2 kraus(double kappa, int sign) {
  const M2 up = (identity() + sigma_z()) / 2.0;
  const M2 down = (identity() - sigma_z()) / 2.0;
  return sign > 0 ? (std::sqrt(kappa) * up + std::sqrt(1 - kappa) * down).eval()
                  : (std::sqrt(kappa) * down + std::sqrt(1 - kappa) * up).eval();
}

struct Branch {
  double probability;
  V3 post;
};

inline Branch measure(const V3& a, double kappa, int sign) {
  const M2 k = kraus(kappa, sign);
  const M2 out = k * density(a) * k.adjoint();
  return {out.trace().real(), bloch(out)};
}

// P - sum_s p_s P_s by enumerating both outcomes.
inline double average_purification(const V3& a, double kappa) {
  double after = 0;
  for (int s : {1, -1}) {
    const M2 k = kraus(kappa, s);
    const M2 out = k * density(a) * k.adjoint();
    const double p = out.trace().real();
    if (p > 0) after += p * linear_entropy(out);
  }
  return linear_entropy(density(a)) - after;
}

// Euler-Maruyama on the matrix form
//   d rho = -gamma [sz,[sz,rho]] dt + sqrt(2 gamma)(sz rho + rho sz - 2<sz> rho) dW
// followed by trace renormalization.
inline V3 matrix_sde_step(const V3& a, double gamma, double dt, double dw) {
  const M2 rho = density(a);
  const M2 sz = sigma_z();
  const M2 comm = sz * rho - rho * sz;
  const M2 double_comm = sz * comm - comm * sz;
  const double mean_z = (sz * rho).trace().real();
  const M2 drho = -gamma * double_comm * dt +
                  std::sqrt(2 * gamma) * (sz * rho + rho * sz - 2 * mean_z * rho) * dw;
  return bloch(rho + drho);
}

// Trace of the stochastic term applied to a density matrix.
inline double stochastic_trace(const V3& a) {
  const M2 rho = density(a);
  const M2 sz = sigma_z();
  const double mean_z = (sz * rho).trace().real();
  return (sz * rho + rho * sz - 2 * mean_z * rho).trace().real();
}

}  // namespace oracle

namespace oracle {

// Untransformed no-feedback integral
//   exp(-4 gamma t)/sqrt(8 pi t) Int exp(-x^2/(2t)) / cosh(sqrt(8 gamma) x) dx
// by composite Simpson on [-L, L] with L = 12 sqrt(t).
inline double classical_entropy_simpson(double gamma, double t, int intervals = 20000) {
  const double half_width = 12 * std::sqrt(t);
  const double h = 2 * half_width / intervals;
  const double c = std::sqrt(8 * gamma);
  auto f = [&](double x) { return std::exp(-x * x / (2 * t)) / std::cosh(c * x); };
  double sum = f(-half_width) + f(half_width);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(-half_width + i * h);
  const double integral = sum * h / 3;
  return std::exp(-4 * gamma * t) / std::sqrt(8 * 3.14159265358979323846 * t) * integral;
}

// Large-t tail of the same integral: exp(-x^2/2t) -> 1 leaves
//   P_c(t) ~ C(t) exp(-4 gamma t),  C(t) = sqrt(pi) / (8 sqrt(gamma t)).
// Returns the first-passage time to `target` of the tail model.
inline double tail_model_time(double gamma, double target) {
  auto model = [&](double t) {
    return std::sqrt(3.14159265358979323846) * std::exp(-4 * gamma * t) / (8 * std::sqrt(gamma * t));
  };
  double lo = 1e-9 / gamma, hi = 1.0 / gamma;
  while (model(hi) > target) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (model(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Speed-up predicted by the tail model, 2 ln(C/P) / ln(P0/P) with C taken at
// the model's own crossing time and P0 = 1/2.
inline double tail_model_speedup(double gamma, double target) {
  const double t_classical = tail_model_time(gamma, target);
  const double t_feedback = std::log(0.5 / target) / (8 * gamma);
  return t_classical / t_feedback;
}

}  // namespace oracle

namespace oracle {

// Exact mean linear entropy after n no-feedback two-outcome steps from the
// mixed state: with k plus outcomes az = tanh((2k - n) L / 2), L = ln(kappa/(1-kappa)).
inline double discrete_no_feedback_mean(double kappa, std::size_t n) {
  const double l = std::log(kappa / (1 - kappa));
  double mean = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double nk = static_cast<double>(n - k), kk = static_cast<double>(k);
    const double log_binom = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(kk + 1) - std::lgamma(nk + 1);
    const double prob = 0.5 * std::exp(log_binom + kk * std::log(kappa) + nk * std::log(1 - kappa)) +
                        0.5 * std::exp(log_binom + kk * std::log(1 - kappa) + nk * std::log(kappa));
    const double az = std::tanh((2 * kk - static_cast<double>(n)) * l / 2);
    mean += prob * (1 - az * az) / 2;
  }
  return mean;
}

}  // namespace oracle
