#include "bfvar/resample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bfvar/errors.hpp"
#include "bfvar/parallel.hpp"
#include "bfvar/rng.hpp"

namespace bfvar::resample {

int default_block_length(int n) {
  if (n < 1) throw std::invalid_argument("default_block_length: n must be >= 1");
  // Smallest L with L^3 >= n; integer arithmetic avoids cbrt rounding on
  // perfect cubes.
  int length = static_cast<int>(std::cbrt(static_cast<double>(n)));
  while (length > 1 && (length - 1) * (length - 1) * (length - 1) >= n)
    --length;
  while (length * length * length < n) ++length;
  return length;
}

std::vector<int> resample_indices(int n, const ResamplePlan& plan,
                                  int replicate) {
  if (n < 1) throw std::invalid_argument("resample_indices: n must be >= 1");
  if (replicate < 0)
    throw std::invalid_argument("resample_indices: negative replicate index");
  rng::Stream stream(plan.seed, static_cast<std::uint64_t>(replicate));
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(n));
  if (plan.scheme == Scheme::iid) {
    for (int i = 0; i < n; ++i)
      idx.push_back(static_cast<int>(
          stream.next_below(static_cast<std::uint64_t>(n))));
    return idx;
  }
  const int block = plan.block_length;
  if (block < 1 || block > n)
    throw std::invalid_argument(
        "resample_indices: block length must lie in [1, n]");
  while (static_cast<int>(idx.size()) < n) {
    const int start = static_cast<int>(
        stream.next_below(static_cast<std::uint64_t>(n)));
    for (int j = 0; j < block && static_cast<int>(idx.size()) < n; ++j)
      idx.push_back((start + j) % n);
  }
  return idx;
}

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m,
                            const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t r = 0; r < idx.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = m.row(idx[r]);
  return out;
}

// Log marginal likelihoods of every model rebuilt on the given rows;
// nullopt when some resampled design is rank deficient.
std::optional<Eigen::VectorXd> replicate_log_marginals(
    const Eigen::MatrixXd& response, const posterior::ModelSet& set,
    const std::vector<int>& idx) {
  const Eigen::Index k = set.size();
  Eigen::VectorXd lm(k);
  const Eigen::MatrixXd resp = gather_rows(response, idx);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& full = set.model(i);
    try {
      if (full.multivariate()) {
        gprior::RegressionModel m(gather_rows(full.design(), idx),
                                  full.sigma(), full.g());
        lm(i) = gprior::log_marginal_mv(m, resp, set.mv_exponent());
      } else {
        gprior::RegressionModel m(gather_rows(full.design(), idx),
                                  full.sigma2(), full.g());
        lm(i) = gprior::log_marginal(m, Eigen::VectorXd(resp.col(0)));
      }
    } catch (const std::invalid_argument&) {
      return std::nullopt;  // rank-deficient resample
    }
  }
  return lm;
}

void check_response(const Eigen::MatrixXd& response,
                    const posterior::ModelSet& set) {
  if (response.rows() != set.model(0).n())
    throw std::invalid_argument("resample: response rows mismatch the models");
  const Eigen::Index q = set.model(0).multivariate() ? set.model(0).q() : 1;
  if (response.cols() != q)
    throw std::invalid_argument("resample: response columns mismatch the models");
  Eigen::Index max_p = 0;
  for (Eigen::Index i = 0; i < set.size(); ++i)
    max_p = std::max(max_p, set.model(i).p());
  if (response.rows() < max_p + 1)
    throw std::invalid_argument(
        "resample: need at least max(p_i)+1 data rows");
}

void enforce_failure_budget(int failed, int replicates) {
  if (failed > 0 &&
      static_cast<double>(failed) > 0.01 * static_cast<double>(replicates))
    throw NumericalError(
        "resample: more than 1% of replicates had rank-deficient designs (" +
        std::to_string(failed) + " of " + std::to_string(replicates) + ")");
}

// Runs fn for every replicate and compacts the successful results in
// replicate order.
template <typename PerReplicate>
std::pair<std::vector<int>, int> run_replicates(const ResamplePlan& plan,
                                                int threads,
                                                const PerReplicate& fn) {
  if (plan.replicates < 1)
    throw std::invalid_argument("resample: replicates must be >= 1");
  std::vector<char> ok(static_cast<std::size_t>(plan.replicates), 0);
  parallel_for(plan.replicates, threads,
               [&](std::int64_t begin, std::int64_t end) {
                 for (std::int64_t b = begin; b < end; ++b)
                   ok[static_cast<std::size_t>(b)] =
                       fn(static_cast<int>(b)) ? 1 : 0;
               });
  std::vector<int> kept;
  kept.reserve(ok.size());
  for (int b = 0; b < plan.replicates; ++b)
    if (ok[static_cast<std::size_t>(b)]) kept.push_back(b);
  const int failed = plan.replicates - static_cast<int>(kept.size());
  enforce_failure_budget(failed, plan.replicates);
  return {std::move(kept), failed};
}

}  // namespace

PmpMatrix bootstrap_pmp(const Eigen::MatrixXd& response,
                        const posterior::ModelSet& set,
                        const ResamplePlan& plan, int threads) {
  check_response(response, set);
  const int n = static_cast<int>(response.rows());
  const Eigen::Index k = set.size();
  Eigen::MatrixXd all(plan.replicates, k);
  auto [kept, failed] = run_replicates(plan, threads, [&](int b) {
    const auto lm =
        replicate_log_marginals(response, set, resample_indices(n, plan, b));
    if (!lm) return false;
    all.row(b) = posterior::pmp(*lm, set.prior_probs()).probs;
    return true;
  });

  PmpMatrix out;
  out.labels = set.labels();
  out.failed_replicates = failed;
  out.replicate_ids = kept;
  out.values = Eigen::MatrixXd(static_cast<Eigen::Index>(kept.size()), k);
  for (std::size_t r = 0; r < kept.size(); ++r)
    out.values.row(static_cast<Eigen::Index>(r)) = all.row(kept[r]);
  return out;
}

ConclusivenessTable conclusiveness(const PmpMatrix& p,
                                   const std::vector<double>& thresholds) {
  if (p.values.rows() == 0)
    throw std::invalid_argument("conclusiveness: empty probability matrix");
  if (thresholds.empty())
    throw std::invalid_argument("conclusiveness: no thresholds");
  for (double t : thresholds)
    if (!(t > 0.5 && t < 1.0))
      throw std::invalid_argument(
          "conclusiveness: thresholds must lie in (0.5, 1)");

  const Eigen::Index rows = p.values.rows();
  const Eigen::Index k = p.values.cols();
  ConclusivenessTable out;
  out.thresholds = thresholds;
  out.labels = p.labels;
  out.fractions =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(thresholds.size()), k);
  out.inconclusive =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(thresholds.size()));
  for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
    const double t = thresholds[ti];
    Eigen::Index inconclusive_rows = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      Eigen::Index winner = -1;
      for (Eigen::Index c = 0; c < k; ++c)
        if (p.values(r, c) > t) winner = c;
      if (winner < 0)
        ++inconclusive_rows;
      else
        out.fractions(static_cast<Eigen::Index>(ti), winner) += 1.0;
    }
    out.fractions.row(static_cast<Eigen::Index>(ti)) /=
        static_cast<double>(rows);
    out.inconclusive(static_cast<Eigen::Index>(ti)) =
        static_cast<double>(inconclusive_rows) / static_cast<double>(rows);
  }
  return out;
}

PmpMatrix stripe_export(const PmpMatrix& p, const std::string& sort_by) {
  const auto it = std::find(p.labels.begin(), p.labels.end(), sort_by);
  if (it == p.labels.end())
    throw std::invalid_argument("stripe_export: unknown label '" + sort_by +
                                "'");
  const Eigen::Index col = it - p.labels.begin();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p.values.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return p.values(a, col) > p.values(b, col);
                   });
  PmpMatrix out;
  out.labels = p.labels;
  out.failed_replicates = p.failed_replicates;
  out.values = Eigen::MatrixXd(p.values.rows(), p.values.cols());
  out.replicate_ids.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) = p.values.row(order[r]);
    out.replicate_ids.push_back(p.replicate_ids.empty()
                                    ? static_cast<int>(order[r])
                                    : p.replicate_ids[order[r]]);
  }
  return out;
}

namespace {

BfHistogram bf_histogram_impl(
    const Eigen::MatrixXd& response, const posterior::ModelSet& set,
    const ResamplePlan& plan, int threads,
    const std::function<double(const Eigen::VectorXd&)>& log_bf_of) {
  check_response(response, set);
  const int n = static_cast<int>(response.rows());
  Eigen::VectorXd all(plan.replicates);
  auto [kept, failed] = run_replicates(plan, threads, [&](int b) {
    const auto lm =
        replicate_log_marginals(response, set, resample_indices(n, plan, b));
    if (!lm) return false;
    all(b) = log_bf_of(*lm);
    return true;
  });

  BfHistogram out;
  out.failed_replicates = failed;
  out.replicate_ids = kept;
  out.values = Eigen::VectorXd(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    out.values(static_cast<Eigen::Index>(r)) = all(kept[r]);
    ++out.bin_counts[static_cast<std::size_t>(
        posterior::evidence_bin(all(kept[r])) + 3)];
  }

  // Observed value on the unresampled data.
  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  const auto observed_lm = replicate_log_marginals(response, set, identity);
  if (!observed_lm)
    throw std::invalid_argument("bf_histogram: full-data design rank deficient");
  out.observed = log_bf_of(*observed_lm);
  return out;
}

}  // namespace

BfHistogram bf_histogram(const Eigen::MatrixXd& response,
                         const posterior::ModelSet& set,
                         const std::string& label1, const std::string& label2,
                         const ResamplePlan& plan, int threads) {
  const Eigen::Index i1 = set.index_of(label1);
  const Eigen::Index i2 = set.index_of(label2);
  return bf_histogram_impl(response, set, plan, threads,
                           [i1, i2](const Eigen::VectorXd& lm) {
                             return lm(i1) - lm(i2);
                           });
}

BfHistogram bf_histogram_family(
    const Eigen::MatrixXd& response, const posterior::ModelSet& set,
    const std::map<std::string, std::string>& partition,
    const std::string& family1, const std::string& family2,
    const ResamplePlan& plan, int threads) {
  auto family_bf = [&](const Eigen::VectorXd& lm) {
    const auto fam = posterior::family_pmp(
        posterior::pmp(lm, set.prior_probs()), set.labels(), set.prior_probs(),
        partition);
    const auto find = [&](const std::string& name) {
      const auto it = std::find(fam.families.begin(), fam.families.end(), name);
      if (it == fam.families.end())
        throw std::invalid_argument("bf_histogram: unknown family '" + name +
                                    "'");
      return static_cast<Eigen::Index>(it - fam.families.begin());
    };
    return fam.log_marginals(find(family1)) - fam.log_marginals(find(family2));
  };
  return bf_histogram_impl(response, set, plan, threads, family_bf);
}

}  // namespace bfvar::resample
