// Posterior model probabilities across a set of models, family-level
// aggregation, and the conventional evidence scale on 2 ln BF.

#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bfvar/gprior.hpp"

namespace bfvar::posterior {

/// An ordered collection of labeled models with prior probabilities.
class ModelSet {
 public:
  ModelSet(std::vector<gprior::RegressionModel> models,
           std::vector<std::string> labels, Eigen::VectorXd prior_probs,
           gprior::MvKappaExponent mv_exponent = gprior::MvKappaExponent::paper);

  Eigen::Index size() const { return static_cast<Eigen::Index>(models_.size()); }
  const gprior::RegressionModel& model(Eigen::Index k) const { return models_[k]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::VectorXd& prior_probs() const { return priors_; }
  gprior::MvKappaExponent mv_exponent() const { return mv_exponent_; }
  Eigen::Index index_of(const std::string& label) const;

 private:
  std::vector<gprior::RegressionModel> models_;
  std::vector<std::string> labels_;
  Eigen::VectorXd priors_;
  gprior::MvKappaExponent mv_exponent_;
};

struct PmpVector {
  Eigen::VectorXd probs;          // sums to one
  Eigen::VectorXd log_marginals;  // inputs that produced the probabilities
};

/// Normalized posterior probabilities from log marginal likelihoods and
/// prior probabilities, computed with max-subtracted exponentials so that
/// marginals spanning hundreds of log units do not overflow.
PmpVector pmp(const Eigen::VectorXd& log_marginals,
              const Eigen::VectorXd& priors);

struct FamilyPmp {
  std::vector<std::string> families;  // sorted by first appearance
  Eigen::VectorXd probs;
  Eigen::VectorXd log_marginals;      // prior-weighted family marginals
};

/// Aggregates member probabilities by family. `partition` must map every
/// label. Family marginals are log-sum-exp of member marginals weighted
/// by the members' prior shares within the family.
FamilyPmp family_pmp(const PmpVector& p, const std::vector<std::string>& labels,
                     const Eigen::VectorXd& priors,
                     const std::map<std::string, std::string>& partition);

enum class EvidenceStrength { negligible, positive, strong, very_strong };

struct EvidenceClass {
  EvidenceStrength strength = EvidenceStrength::negligible;
  /// 1 when log_bf >= 0 (first model favored), 2 otherwise.
  int favored_model = 1;
};

/// Default band edges on the 2 ln BF scale. These are the conventional
/// conservative thresholds; they are configurable because the scale is a
/// convention, not a derived quantity.
inline constexpr std::array<double, 3> kEvidenceThresholds{2.0, 6.0, 10.0};

EvidenceClass kass_raftery_class(
    double log_bf, const std::array<double, 3>& thresholds = kEvidenceThresholds);

/// Signed category index in {-3,...,3}: 0 negligible, +/-1 positive,
/// +/-2 strong, +/-3 very strong; positive favors the first model.
int evidence_bin(double log_bf,
                 const std::array<double, 3>& thresholds = kEvidenceThresholds);

}  // namespace bfvar::posterior
