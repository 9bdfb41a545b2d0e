#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "bfvar/errors.hpp"
#include "bfvar/moments.hpp"
#include "bfvar/resample.hpp"
#include "bfvar/rng.hpp"
#include "test_util.hpp"

using namespace bfvar;
using resample::ResamplePlan;
using resample::Scheme;

namespace {

posterior::ModelSet two_model_set(const Eigen::MatrixXd& x1,
                                  const Eigen::MatrixXd& x2, double s2,
                                  double g) {
  std::vector<gprior::RegressionModel> models;
  models.emplace_back(x1, s2, g);
  models.emplace_back(x2, s2, g);
  return posterior::ModelSet(std::move(models), {"m1", "m2"},
                             Eigen::VectorXd::Constant(2, 0.5));
}

}  // namespace

TEST_CASE("resampled indices: block structure and determinism") {
  ResamplePlan plan;
  plan.scheme = Scheme::circular_block;
  plan.seed = 99;
  plan.replicates = 10;

  // A single block of length n is a cyclic rotation.
  plan.block_length = 12;
  const auto rotation = resample::resample_indices(12, plan, 3);
  REQUIRE(rotation.size() == 12);
  for (std::size_t i = 1; i < rotation.size(); ++i)
    CHECK(rotation[i] == (rotation[i - 1] + 1) % 12);

  // Blocks are runs of consecutive indices modulo n.
  plan.block_length = 5;
  const auto blocks = resample::resample_indices(12, plan, 0);
  REQUIRE(blocks.size() == 12);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (i % 5 != 0)
      CHECK(blocks[i] == (blocks[i - 1] + 1) % 12);

  // Deterministic in (seed, replicate).
  CHECK(resample::resample_indices(12, plan, 7) ==
        resample::resample_indices(12, plan, 7));
  CHECK(resample::resample_indices(12, plan, 7) !=
        resample::resample_indices(12, plan, 8));

  plan.block_length = 13;
  CHECK_THROWS_AS(resample::resample_indices(12, plan, 0),
                  std::invalid_argument);

  CHECK(resample::default_block_length(27) == 3);
  CHECK(resample::default_block_length(28) == 4);
  CHECK(resample::default_block_length(1) == 1);
}

TEST_CASE("unit blocks are distributionally uniform (chi-square)") {
  const int n = 10;
  const int replicates = 10000;
  for (const Scheme scheme : {Scheme::circular_block, Scheme::iid}) {
    ResamplePlan plan;
    plan.scheme = scheme;
    plan.block_length = 1;
    plan.replicates = replicates;
    plan.seed = 314;
    std::vector<double> counts(n, 0.0);
    for (int b = 0; b < replicates; ++b)
      for (int idx : resample::resample_indices(n, plan, b))
        counts[static_cast<std::size_t>(idx)] += 1.0;
    const double total = static_cast<double>(replicates) * n;
    const double expected = total / n;
    double chi2 = 0.0;
    for (double c : counts)
      chi2 += (c - expected) * (c - expected) / expected;
    const double p_value = testutil::chi_square_upper_tail(chi2, n - 1.0);
    CHECK(p_value > 0.001);
  }
}

TEST_CASE("bootstrap probabilities: degenerate and symmetric cases") {
  // Every row identical: any resample reproduces the full dataset.
  const int n = 6;
  Eigen::MatrixXd x1 = Eigen::MatrixXd::Ones(n, 1);
  Eigen::MatrixXd x2 = 2.0 * Eigen::MatrixXd::Ones(n, 1);
  const auto set = two_model_set(x1, x2, 1.0, 1.0);
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(n, 1, 0.7);

  ResamplePlan plan;
  plan.scheme = Scheme::iid;
  plan.replicates = 1;
  plan.seed = 5;
  const auto pm = resample::bootstrap_pmp(y, set, plan);
  REQUIRE(pm.values.rows() == 1);
  const auto full = posterior::pmp(
      (Eigen::VectorXd(2) << gprior::log_marginal(set.model(0), y.col(0)),
       gprior::log_marginal(set.model(1), y.col(0)))
          .finished(),
      set.prior_probs());
  CHECK((pm.values.row(0).transpose() - full.probs).cwiseAbs().maxCoeff() <
        1e-14);

  // Two identical models keep identical probabilities in every replicate.
  rng::Stream gen(61, 0);
  const Eigen::MatrixXd xr = testutil::random_matrix(gen, 20, 2);
  const auto twins = two_model_set(xr, xr, 1.0, 2.0);
  const Eigen::MatrixXd yr = testutil::random_matrix(gen, 20, 1);
  plan.replicates = 50;
  const auto twins_pm = resample::bootstrap_pmp(yr, twins, plan);
  for (Eigen::Index r = 0; r < twins_pm.values.rows(); ++r) {
    CHECK(std::abs(twins_pm.values(r, 0) - twins_pm.values(r, 1)) < 1e-10);
    CHECK(std::abs(twins_pm.values.row(r).sum() - 1.0) < 1e-10);
  }
}

TEST_CASE("bootstrap is reproducible across thread counts") {
  rng::Stream gen(62, 0);
  const Eigen::MatrixXd x1 = testutil::random_matrix(gen, 30, 2);
  const Eigen::MatrixXd x2 = testutil::random_matrix(gen, 30, 3);
  const auto set = two_model_set(x1, x2, 1.0, 1.5);
  const Eigen::MatrixXd y = testutil::random_matrix(gen, 30, 1);

  ResamplePlan plan;
  plan.scheme = Scheme::circular_block;
  plan.block_length = resample::default_block_length(30);
  plan.replicates = 200;
  plan.seed = 777;

  const auto serial = resample::bootstrap_pmp(y, set, plan, 1);
  const auto parallel = resample::bootstrap_pmp(y, set, plan, 4);
  REQUIRE(serial.values.rows() == parallel.values.rows());
  CHECK(serial.values == parallel.values);  // bit-identical
  CHECK(serial.replicate_ids == parallel.replicate_ids);
}

TEST_CASE("conclusiveness tabulation") {
  resample::PmpMatrix pm;
  pm.labels = {"m1", "m2"};
  pm.values = Eigen::MatrixXd(2, 2);
  pm.values << 1.0, 0.0, 0.5, 0.5;
  pm.replicate_ids = {0, 1};

  const auto table = resample::conclusiveness(pm, {0.99});
  CHECK(table.fractions(0, 0) == doctest::Approx(0.5));
  CHECK(table.fractions(0, 1) == doctest::Approx(0.0));
  CHECK(table.inconclusive(0) == doctest::Approx(0.5));

  // Uniform rows are inconclusive at every threshold above one half.
  resample::PmpMatrix uniform;
  uniform.labels = {"a", "b"};
  uniform.values = Eigen::MatrixXd::Constant(4, 2, 0.5);
  uniform.replicate_ids = {0, 1, 2, 3};
  const auto utable = resample::conclusiveness(uniform, {0.9, 0.95, 0.99});
  for (int t = 0; t < 3; ++t) CHECK(utable.inconclusive(t) == 1.0);

  // Fractions shrink as the threshold rises, and each row sums to one.
  rng::Stream gen(63, 0);
  resample::PmpMatrix random;
  random.labels = {"a", "b", "c"};
  random.values = Eigen::MatrixXd(100, 3);
  for (int r = 0; r < 100; ++r) {
    Eigen::Vector3d w;
    for (int c = 0; c < 3; ++c) w(c) = -std::log(1.0 - gen.next_unit());
    random.values.row(r) = (w / w.sum()).transpose();
    random.replicate_ids.push_back(r);
  }
  const auto rtable = resample::conclusiveness(random, {0.6, 0.8, 0.95});
  for (int t = 0; t < 3; ++t) {
    CHECK(rtable.fractions.row(t).sum() + rtable.inconclusive(t) ==
          doctest::Approx(1.0));
    if (t > 0)
      for (int k = 0; k < 3; ++k)
        CHECK(rtable.fractions(t, k) <= rtable.fractions(t - 1, k));
  }

  CHECK_THROWS_AS(resample::conclusiveness(pm, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(resample::conclusiveness(pm, {1.0}), std::invalid_argument);
  resample::PmpMatrix empty;
  empty.labels = {"a"};
  empty.values = Eigen::MatrixXd(0, 1);
  CHECK_THROWS_AS(resample::conclusiveness(empty, {0.9}),
                  std::invalid_argument);
}

TEST_CASE("stripe export sorts by the chosen model") {
  resample::PmpMatrix pm;
  pm.labels = {"m1", "m2"};
  pm.values = Eigen::MatrixXd(4, 2);
  pm.values << 0.9, 0.1, 0.2, 0.8, 0.9, 0.1, 0.5, 0.5;
  pm.replicate_ids = {0, 1, 2, 3};

  const auto sorted = resample::stripe_export(pm, "m1");
  CHECK(sorted.values(0, 0) == doctest::Approx(0.9));
  CHECK(sorted.values(1, 0) == doctest::Approx(0.9));
  CHECK(sorted.values(2, 0) == doctest::Approx(0.5));
  CHECK(sorted.values(3, 0) == doctest::Approx(0.2));
  // Stable: the two tied rows keep replicate order.
  CHECK(sorted.replicate_ids[0] == 0);
  CHECK(sorted.replicate_ids[1] == 2);

  // Already sorted input is unchanged; re-sorting by the other model
  // reverses distinct values.
  const auto again = resample::stripe_export(sorted, "m1");
  CHECK(again.values == sorted.values);
  const auto by_m2 = resample::stripe_export(pm, "m2");
  CHECK(by_m2.values(0, 1) == doctest::Approx(0.8));

  CHECK_THROWS_AS(resample::stripe_export(pm, "zzz"), std::invalid_argument);
}

TEST_CASE("log Bayes factor histogram") {
  rng::Stream gen(64, 0);
  const Eigen::MatrixXd x = testutil::random_matrix(gen, 15, 2);
  const auto twins = two_model_set(x, x, 1.0, 1.0);
  const Eigen::MatrixXd y = testutil::random_matrix(gen, 15, 1);

  ResamplePlan plan;
  plan.scheme = Scheme::iid;
  plan.replicates = 64;
  plan.seed = 11;
  const auto hist = resample::bf_histogram(y, twins, "m1", "m2", plan);
  CHECK(hist.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(hist.bin_counts[3] == 64);  // everything negligible
  CHECK(hist.observed == 0.0);

  // Repeated-row dataset: the bootstrap value equals the full-data value.
  const int n = 6;
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  Eigen::MatrixXd halves = 0.5 * Eigen::MatrixXd::Ones(n, 1);
  const auto degenerate = two_model_set(ones, halves, 1.0, 1.0);
  Eigen::MatrixXd yc = Eigen::MatrixXd::Constant(n, 1, 1.3);
  plan.replicates = 1;
  const auto dhist = resample::bf_histogram(yc, degenerate, "m1", "m2", plan);
  CHECK(dhist.values(0) == doctest::Approx(dhist.observed).epsilon(1e-14));

  // Families: two singleton families reproduce the model-vs-model value.
  std::map<std::string, std::string> partition{{"m1", "f1"}, {"m2", "f2"}};
  rng::Stream gen2(65, 0);
  const Eigen::MatrixXd xa = testutil::random_matrix(gen2, 15, 2);
  const Eigen::MatrixXd xb = testutil::random_matrix(gen2, 15, 1);
  const auto set = two_model_set(xa, xb, 1.0, 1.0);
  const Eigen::MatrixXd yr = testutil::random_matrix(gen2, 15, 1);
  plan.replicates = 16;
  const auto pair_hist = resample::bf_histogram(yr, set, "m1", "m2", plan);
  const auto fam_hist =
      resample::bf_histogram_family(yr, set, partition, "f1", "f2", plan);
  CHECK((pair_hist.values - fam_hist.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(pair_hist.observed == doctest::Approx(fam_hist.observed));
}

TEST_CASE("rank-deficient resamples are dropped, counted, and capped") {
  // First design column is nonzero only in a few rows: replicates that
  // miss all of them are rank deficient.
  const int n = 40;
  rng::Stream gen(66, 0);
  Eigen::MatrixXd fragile = Eigen::MatrixXd::Zero(n, 1);
  for (int i = 0; i < 6; ++i) fragile(i, 0) = 1.0 + gen.next_unit();
  const Eigen::MatrixXd stable = testutil::random_matrix(gen, n, 1);
  const auto set = two_model_set(fragile, stable, 1.0, 1.0);
  const Eigen::MatrixXd y = testutil::random_matrix(gen, n, 1);

  ResamplePlan plan;
  plan.scheme = Scheme::iid;
  plan.replicates = 1000;
  plan.seed = 2100;
  const auto pm = resample::bootstrap_pmp(y, set, plan);
  CHECK(pm.failed_replicates > 0);
  CHECK(pm.failed_replicates <= 10);  // ~0.15% expected rate
  CHECK(pm.values.rows() + pm.failed_replicates == 1000);

  // Concentrating the column on three rows pushes failures past 1%.
  Eigen::MatrixXd very_fragile = Eigen::MatrixXd::Zero(n, 1);
  for (int i = 0; i < 3; ++i) very_fragile(i, 0) = 1.0;
  const auto bad_set = two_model_set(very_fragile, stable, 1.0, 1.0);
  CHECK_THROWS_AS(resample::bootstrap_pmp(y, bad_set, plan), NumericalError);
}

TEST_CASE("with plenty of data the conclusive model is the generating one") {
  const int n = 500;
  rng::Stream gen(67, 0);
  const Eigen::MatrixXd x1 = testutil::random_matrix(gen, n, 2);
  const Eigen::MatrixXd x2 = testutil::random_matrix(gen, n, 2);
  // Data from the first model.
  Eigen::VectorXd beta(2);
  beta << 1.0, -0.7;
  rng::Stream noise(68, 0);
  Eigen::MatrixXd y(n, 1);
  y.col(0) = x1 * beta + testutil::random_vector(noise, n);
  const auto set = two_model_set(x1, x2, 1.0, 1.0);

  ResamplePlan plan;
  plan.scheme = Scheme::iid;
  plan.replicates = 200;
  plan.seed = 3000;
  const auto pm = resample::bootstrap_pmp(y, set, plan, 2);
  const auto table = resample::conclusiveness(pm, {0.9});
  CHECK(table.fractions(0, 0) > 0.5);
  CHECK(table.fractions(0, 0) >= table.fractions(0, 1));
}
