#include "bfvar/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bfvar/kernels.hpp"
#include "bfvar/parallel.hpp"

namespace bfvar::oracle {

Eigen::VectorXd simulate_dgp(const moments::DataGeneratingProcess& dgp,
                             rng::Stream& stream) {
  using Noise = moments::DataGeneratingProcess::Noise;
  if (dgp.noise() == Noise::matrix)
    throw std::invalid_argument(
        "simulate_dgp: matrix-variate process needs simulate_dgp_mv");
  const Eigen::Index n = dgp.n();
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = stream.next_gaussian();
  if (dgp.noise() == Noise::isotropic) {
    const double sd = std::sqrt(dgp.sigma2_star());
    Eigen::VectorXd y = dgp.mean();
    kernels::axpy(sd, z.data(), y.data(), static_cast<std::size_t>(n));
    return y;
  }
  // y = mu + L z with L the lower Cholesky factor of Sigma_eps.
  const Eigen::MatrixXd& l = dgp.noise_cholesky();
  Eigen::VectorXd noise(n);
  kernels::gemv_n(l.data(), static_cast<std::size_t>(n),
                  static_cast<std::size_t>(n), z.data(), noise.data());
  return dgp.mean() + noise;
}

Eigen::MatrixXd simulate_dgp_mv(const moments::DataGeneratingProcess& dgp,
                                rng::Stream& stream) {
  if (dgp.noise() != moments::DataGeneratingProcess::Noise::matrix)
    throw std::invalid_argument(
        "simulate_dgp_mv: univariate process needs simulate_dgp");
  const Eigen::Index n = dgp.n();
  const Eigen::Index q = dgp.q();
  Eigen::MatrixXd z(n, q);
  for (Eigen::Index c = 0; c < q; ++c)
    for (Eigen::Index r = 0; r < n; ++r) z(r, c) = stream.next_gaussian();
  // Rows of Z L^T are iid N(0, Sigma*).
  return dgp.mean_matrix() + z * dgp.noise_cholesky().transpose();
}

namespace {

MomentPath choose_path(const moments::DataGeneratingProcess& dgp,
                       const gprior::RegressionModel& m1,
                       const gprior::RegressionModel& m2) {
  using Noise = moments::DataGeneratingProcess::Noise;
  if (dgp.noise() == Noise::matrix) return MomentPath::multivariate;
  if (dgp.noise() == Noise::general) return MomentPath::general;
  const double a = m1.sigma2();
  const double b = m2.sigma2();
  return std::abs(a - b) <= 1e-12 * std::max(a, b) ? MomentPath::equal_var
                                                   : MomentPath::general;
}

moments::BfMoments closed_moments(MomentPath path,
                                  const moments::DataGeneratingProcess& dgp,
                                  const gprior::RegressionModel& m1,
                                  const gprior::RegressionModel& m2) {
  switch (path) {
    case MomentPath::equal_var:
      return moments::bf_moments_equal_var(m1, m2, dgp);
    case MomentPath::general:
      return moments::bf_moments_general(m1, m2, dgp);
    case MomentPath::multivariate:
      return moments::bf_moments_mv(m1, m2, dgp);
  }
  throw std::logic_error("closed_moments: unreachable");
}

}  // namespace

OracleReport empirical_bf_moments(const moments::DataGeneratingProcess& dgp,
                                  const gprior::RegressionModel& m1,
                                  const gprior::RegressionModel& m2,
                                  std::int64_t n_sims, std::uint64_t seed,
                                  int threads,
                                  std::optional<MomentPath> path) {
  if (n_sims < 1000)
    throw std::invalid_argument(
        "empirical_bf_moments: need at least 1000 simulations");
  const MomentPath chosen = path.value_or(choose_path(dgp, m1, m2));
  const moments::BfMoments closed = closed_moments(chosen, dgp, m1, m2);
  const bool mv = chosen == MomentPath::multivariate;

  std::vector<double> values(static_cast<std::size_t>(n_sims));
  parallel_for(n_sims, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      rng::Stream stream(seed, static_cast<std::uint64_t>(i));
      if (mv) {
        values[static_cast<std::size_t>(i)] =
            moments::log_bf(m1, m2, simulate_dgp_mv(dgp, stream));
      } else {
        values[static_cast<std::size_t>(i)] = moments::log_bf(
            m1, m2, Eigen::VectorXd(simulate_dgp(dgp, stream)));
      }
    }
  });

  // Index-ordered reduction keeps results identical across thread counts.
  const double m = static_cast<double>(n_sims);
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / m;
  double m2c = 0.0;
  double m4c = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2c += d2;
    m4c += d2 * d2;
  }
  const double var = m2c / (m - 1.0);
  const double fourth = m4c / m;

  OracleReport out;
  out.n_sims = n_sims;
  out.seed = seed;
  out.closed_mean = closed.mean;
  out.closed_var = closed.variance;
  out.empirical_mean = mean;
  out.empirical_var = var;
  out.se_mean = std::sqrt(var / m);
  const double var_of_var =
      (fourth - var * var * (m - 3.0) / (m - 1.0)) / m;
  out.se_var = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
  out.z_mean = out.se_mean > 0.0
                   ? (out.empirical_mean - out.closed_mean) / out.se_mean
                   : 0.0;
  out.z_var =
      out.se_var > 0.0 ? (out.empirical_var - out.closed_var) / out.se_var
                       : 0.0;
  return out;
}

}  // namespace bfvar::oracle
