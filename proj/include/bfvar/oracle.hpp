// Monte Carlo ground truth for the closed-form log Bayes factor moments:
// simulate datasets from the data-generating process, compute the log BF
// on each, and compare empirical moments against a closed-form path with
// standard errors.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "bfvar/moments.hpp"
#include "bfvar/rng.hpp"

namespace bfvar::oracle {

/// One dataset drawn from the process (univariate and heteroscedastic
/// noise kinds).
Eigen::VectorXd simulate_dgp(const moments::DataGeneratingProcess& dgp,
                             rng::Stream& stream);

/// Matrix-variate draw: rows of the error matrix iid N(0, Sigma*).
Eigen::MatrixXd simulate_dgp_mv(const moments::DataGeneratingProcess& dgp,
                                rng::Stream& stream);

struct OracleReport {
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;  // via the fourth central moment
  double closed_mean = 0.0;
  double closed_var = 0.0;
  double z_mean = 0.0;  // (empirical - closed) / se; 0 when se is 0
  double z_var = 0.0;
  std::int64_t n_sims = 0;
  std::uint64_t seed = 0;
};

enum class MomentPath { equal_var, general, multivariate };

/// Simulates n_sims datasets (one random stream per dataset, reduction in
/// index order) and compares against the selected closed-form path; by
/// default the path is chosen from the model and process kinds.
OracleReport empirical_bf_moments(
    const moments::DataGeneratingProcess& dgp,
    const gprior::RegressionModel& m1, const gprior::RegressionModel& m2,
    std::int64_t n_sims, std::uint64_t seed, int threads = 1,
    std::optional<MomentPath> path = std::nullopt);

}  // namespace bfvar::oracle
