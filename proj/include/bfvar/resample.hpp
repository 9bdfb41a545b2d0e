// Bootstrap approximation of the sampling distribution of posterior model
// probabilities and log Bayes factors.
//
// Two resampling schemes: a circular block bootstrap for time-series rows
// (blocks of consecutive rows, wrapped modulo n) and an iid bootstrap for
// exchangeable rows. Replicate b draws its indices from its own counter
// random stream, so a run is reproducible for a fixed seed no matter how
// replicates are scheduled across threads.

#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "bfvar/posterior.hpp"

namespace bfvar::resample {

enum class Scheme { circular_block, iid };

struct ResamplePlan {
  Scheme scheme = Scheme::iid;
  int block_length = 1;  // circular_block only
  int replicates = 1;
  std::uint64_t seed = 0;
};

/// Rate-optimal-order default for the circular block bootstrap,
/// ceil(n^(1/3)).
int default_block_length(int n);

/// Row indices for one replicate; deterministic in (plan.seed, replicate).
std::vector<int> resample_indices(int n, const ResamplePlan& plan,
                                  int replicate);

/// Posterior model probabilities per successful replicate. Rows keep the
/// replicate order; failed (rank-deficient) replicates are dropped and
/// counted.
struct PmpMatrix {
  Eigen::MatrixXd values;           // rows sum to one
  std::vector<std::string> labels;
  std::vector<int> replicate_ids;   // original replicate index per row
  int failed_replicates = 0;
};

/// Recomputes all K marginal likelihoods on jointly resampled design and
/// response rows, for every replicate. Throws NumericalError when more
/// than 1% of replicates produce a rank-deficient design.
PmpMatrix bootstrap_pmp(const Eigen::MatrixXd& response,
                        const posterior::ModelSet& set,
                        const ResamplePlan& plan, int threads = 1);

struct ConclusivenessTable {
  std::vector<double> thresholds;
  Eigen::MatrixXd fractions;        // thresholds x models
  Eigen::VectorXd inconclusive;     // per threshold
  std::vector<std::string> labels;
};

/// Shares of replicates in which some model's probability exceeds each
/// threshold. Thresholds must lie in (0.5, 1), so at most one model can
/// be conclusive per replicate and rows sum to one.
ConclusivenessTable conclusiveness(const PmpMatrix& p,
                                   const std::vector<double>& thresholds);

/// Rows sorted descending by the chosen model's probability; stable, so
/// ties keep their replicate order.
PmpMatrix stripe_export(const PmpMatrix& p, const std::string& sort_by);

struct BfHistogram {
  Eigen::VectorXd values;            // log BF per successful replicate
  std::vector<int> replicate_ids;
  double observed = 0.0;             // full-data value
  std::array<int, 7> bin_counts{};   // evidence bins -3..+3
  int failed_replicates = 0;
};

/// Bootstrap distribution of log BF between two models in the set.
BfHistogram bf_histogram(const Eigen::MatrixXd& response,
                         const posterior::ModelSet& set,
                         const std::string& label1, const std::string& label2,
                         const ResamplePlan& plan, int threads = 1);

/// Family-vs-family variant: each family's marginal likelihood is the
/// log-sum-exp of member marginals weighted by prior shares within the
/// family.
BfHistogram bf_histogram_family(
    const Eigen::MatrixXd& response, const posterior::ModelSet& set,
    const std::map<std::string, std::string>& partition,
    const std::string& family1, const std::string& family2,
    const ResamplePlan& plan, int threads = 1);

}  // namespace bfvar::resample
