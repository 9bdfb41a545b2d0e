#include "bfvar/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace bfvar::posterior {

ModelSet::ModelSet(std::vector<gprior::RegressionModel> models,
                   std::vector<std::string> labels,
                   Eigen::VectorXd prior_probs,
                   gprior::MvKappaExponent mv_exponent)
    : models_(std::move(models)), labels_(std::move(labels)),
      priors_(std::move(prior_probs)), mv_exponent_(mv_exponent) {
  const auto k = models_.size();
  if (k < 2) throw std::invalid_argument("ModelSet: need at least two models");
  if (labels_.size() != k || priors_.size() != static_cast<Eigen::Index>(k))
    throw std::invalid_argument("ModelSet: labels/priors length mismatch");
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != k)
    throw std::invalid_argument("ModelSet: labels must be unique");
  if (priors_.minCoeff() < 0.0)
    throw std::invalid_argument("ModelSet: negative prior probability");
  if (std::abs(priors_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("ModelSet: prior probabilities must sum to 1");
  for (const auto& m : models_)
    if (m.n() != models_.front().n() ||
        m.multivariate() != models_.front().multivariate() ||
        m.q() != models_.front().q())
      throw std::invalid_argument("ModelSet: models disagree on data shape");
}

Eigen::Index ModelSet::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::invalid_argument("ModelSet: unknown label '" + label + "'");
  return static_cast<Eigen::Index>(it - labels_.begin());
}

PmpVector pmp(const Eigen::VectorXd& log_marginals,
              const Eigen::VectorXd& priors) {
  const Eigen::Index k = log_marginals.size();
  if (priors.size() != k || k == 0)
    throw std::invalid_argument("pmp: length mismatch");
  if (priors.minCoeff() < 0.0)
    throw std::invalid_argument("pmp: negative prior");
  if (priors.sum() <= 0.0)
    throw std::invalid_argument("pmp: all priors zero");
  for (Eigen::Index i = 0; i < k; ++i)
    if (!std::isfinite(log_marginals(i)))
      throw std::invalid_argument("pmp: non-finite log marginal likelihood");

  Eigen::VectorXd weighted(k);
  for (Eigen::Index i = 0; i < k; ++i)
    weighted(i) = priors(i) > 0.0
                      ? log_marginals(i) + std::log(priors(i))
                      : -std::numeric_limits<double>::infinity();
  const double shift = weighted.maxCoeff();
  Eigen::VectorXd probs = (weighted.array() - shift).exp();
  probs /= probs.sum();

  PmpVector out;
  out.probs = std::move(probs);
  out.log_marginals = log_marginals;
  return out;
}

FamilyPmp family_pmp(const PmpVector& p, const std::vector<std::string>& labels,
                     const Eigen::VectorXd& priors,
                     const std::map<std::string, std::string>& partition) {
  const Eigen::Index k = p.probs.size();
  if (static_cast<Eigen::Index>(labels.size()) != k || priors.size() != k)
    throw std::invalid_argument("family_pmp: length mismatch");

  FamilyPmp out;
  std::map<std::string, Eigen::Index> family_index;
  std::vector<double> prob_sum;
  std::vector<double> weight_sum;               // prior mass per family
  std::vector<std::vector<double>> member_terms;  // log(prior) + log marginal
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto it = partition.find(labels[i]);
    if (it == partition.end())
      throw std::invalid_argument("family_pmp: partition misses label '" +
                                  labels[i] + "'");
    auto [pos, inserted] = family_index.try_emplace(
        it->second, static_cast<Eigen::Index>(out.families.size()));
    if (inserted) {
      out.families.push_back(it->second);
      prob_sum.push_back(0.0);
      weight_sum.push_back(0.0);
      member_terms.emplace_back();
    }
    const Eigen::Index f = pos->second;
    prob_sum[f] += p.probs(i);
    weight_sum[f] += priors(i);
    if (priors(i) > 0.0)
      member_terms[f].push_back(std::log(priors(i)) + p.log_marginals(i));
  }

  const auto nf = static_cast<Eigen::Index>(out.families.size());
  out.probs = Eigen::VectorXd(nf);
  out.log_marginals = Eigen::VectorXd(nf);
  for (Eigen::Index f = 0; f < nf; ++f) {
    out.probs(f) = prob_sum[f];
    // log p(y | family) = LSE_i(log prior_i + log marginal_i) - log(prior mass)
    const auto& terms = member_terms[f];
    if (terms.empty() || weight_sum[f] <= 0.0) {
      out.log_marginals(f) = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double m = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    out.log_marginals(f) = m + std::log(acc) - std::log(weight_sum[f]);
  }
  return out;
}

EvidenceClass kass_raftery_class(double log_bf,
                                 const std::array<double, 3>& thresholds) {
  if (!std::isfinite(log_bf))
    throw std::invalid_argument("kass_raftery_class: non-finite log BF");
  EvidenceClass out;
  out.favored_model = log_bf >= 0.0 ? 1 : 2;
  const double scaled = 2.0 * std::abs(log_bf);
  if (scaled < thresholds[0])
    out.strength = EvidenceStrength::negligible;
  else if (scaled < thresholds[1])
    out.strength = EvidenceStrength::positive;
  else if (scaled < thresholds[2])
    out.strength = EvidenceStrength::strong;
  else
    out.strength = EvidenceStrength::very_strong;
  return out;
}

int evidence_bin(double log_bf, const std::array<double, 3>& thresholds) {
  const EvidenceClass c = kass_raftery_class(log_bf, thresholds);
  const int magnitude = static_cast<int>(c.strength);
  return c.favored_model == 1 ? magnitude : -magnitude;
}

}  // namespace bfvar::posterior
