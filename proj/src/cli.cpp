#include "bfvar/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>

#include "bfvar/csv.hpp"
#include "bfvar/errors.hpp"
#include "bfvar/geometry.hpp"
#include "bfvar/moments.hpp"
#include "bfvar/oracle.hpp"
#include "bfvar/posterior.hpp"
#include "bfvar/resample.hpp"
#include "bfvar/svg.hpp"

namespace bfvar::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> block_length;
  std::optional<int> threads;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw InputError("config: missing '" + key + "' in " + context);
  return *it;
}

template <typename T>
T get_as(const json& value, const std::string& what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw InputError("config: '" + what + "' has the wrong type");
  }
}

Eigen::VectorXd to_vector(const json& arr, const std::string& what) {
  const auto values = get_as<std::vector<double>>(arr, what);
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

Eigen::MatrixXd to_matrix(const json& arr, const std::string& what) {
  const auto rows = get_as<std::vector<std::vector<double>>>(arr, what);
  if (rows.empty()) throw InputError("config: '" + what + "' is empty");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size())
      throw InputError("config: '" + what + "' rows have unequal lengths");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
  }
  return m;
}

Eigen::MatrixXd select_columns(const csv::Table& table,
                               const std::vector<std::string>& names) {
  if (names.empty()) throw InputError("config: empty column selection");
  Eigen::MatrixXd out(table.values.rows(),
                      static_cast<Eigen::Index>(names.size()));
  for (std::size_t c = 0; c < names.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = table.column(names[c]);
  return out;
}

struct Problem {
  csv::Table dataset;
  std::vector<gprior::RegressionModel> models;
  std::vector<std::string> labels;
  Eigen::VectorXd priors;
  Eigen::MatrixXd response;  // n x q (q = 1 univariate); empty if absent
  gprior::MvKappaExponent exponent = gprior::MvKappaExponent::paper;
  double g = 1.0;
};

Problem build_problem(const json& config, bool need_response) {
  Problem p;
  p.dataset = csv::read_file(
      get_as<std::string>(require(config, "dataset", "top level"), "dataset"));
  p.g = get_as<double>(require(config, "g", "top level"), "g");

  if (config.contains("mv_kappa_exponent")) {
    const auto mode = get_as<std::string>(config["mv_kappa_exponent"],
                                          "mv_kappa_exponent");
    if (mode == "paper")
      p.exponent = gprior::MvKappaExponent::paper;
    else if (mode == "pq")
      p.exponent = gprior::MvKappaExponent::pq;
    else
      throw InputError("config: mv_kappa_exponent must be 'paper' or 'pq'");
  }

  const json& models = require(config, "models", "top level");
  if (!models.is_array() || models.size() < 2)
    throw InputError("config: 'models' must list at least two models");
  for (const auto& m : models) {
    p.labels.push_back(
        get_as<std::string>(require(m, "label", "a model"), "label"));
    const auto design_cols = get_as<std::vector<std::string>>(
        require(m, "design", "model '" + p.labels.back() + "'"), "design");
    const Eigen::MatrixXd design = select_columns(p.dataset, design_cols);
    if (m.contains("sigma2")) {
      p.models.emplace_back(design, get_as<double>(m["sigma2"], "sigma2"),
                            p.g);
    } else if (m.contains("sigma")) {
      p.models.emplace_back(design, to_matrix(m["sigma"], "sigma"), p.g);
    } else {
      throw InputError("config: model '" + p.labels.back() +
                       "' needs 'sigma2' or 'sigma'");
    }
  }

  const auto k = static_cast<Eigen::Index>(p.models.size());
  if (config.contains("priors")) {
    p.priors = to_vector(config["priors"], "priors");
    if (p.priors.size() != k)
      throw InputError("config: 'priors' length mismatches 'models'");
  } else {
    p.priors = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  }

  if (need_response) {
    const json& response = require(config, "response", "top level");
    std::vector<std::string> cols;
    if (response.is_string())
      cols.push_back(response.get<std::string>());
    else
      cols = get_as<std::vector<std::string>>(response, "response");
    p.response = select_columns(p.dataset, cols);
    const bool mv = p.models.front().multivariate();
    const Eigen::Index q = mv ? p.models.front().q() : 1;
    if (p.response.cols() != q)
      throw InputError(
          "config: response selects " + std::to_string(p.response.cols()) +
          " columns but the models expect " + std::to_string(q));
  }
  return p;
}

moments::DataGeneratingProcess build_dgp(const json& config,
                                         const csv::Table& dataset) {
  const json& dgp = require(config, "dgp", "top level");

  // The mean: explicit numbers, a dataset column, or design times
  // coefficients.
  const bool mv = dgp.contains("sigma_star");
  Eigen::MatrixXd mean;
  if (dgp.contains("mean")) {
    mean = mv ? to_matrix(dgp["mean"], "dgp.mean")
              : Eigen::MatrixXd(to_vector(dgp["mean"], "dgp.mean"));
  } else if (dgp.contains("mean_column")) {
    std::vector<std::string> cols;
    if (dgp["mean_column"].is_string())
      cols.push_back(dgp["mean_column"].get<std::string>());
    else
      cols = get_as<std::vector<std::string>>(dgp["mean_column"],
                                              "dgp.mean_column");
    mean = select_columns(dataset, cols);
  } else if (dgp.contains("mean_design")) {
    const auto cols = get_as<std::vector<std::string>>(dgp["mean_design"],
                                                       "dgp.mean_design");
    const Eigen::MatrixXd design = select_columns(dataset, cols);
    if (mv) {
      mean = design * to_matrix(require(dgp, "beta", "dgp"), "dgp.beta");
    } else {
      mean = design * to_vector(require(dgp, "beta", "dgp"), "dgp.beta");
    }
  } else {
    throw InputError(
        "config: dgp needs 'mean', 'mean_column', or 'mean_design'");
  }

  if (mv)
    return moments::DataGeneratingProcess::matrix_variate(
        mean, to_matrix(dgp["sigma_star"], "dgp.sigma_star"));
  if (dgp.contains("sigma_eps"))
    return moments::DataGeneratingProcess::with_noise_covariance(
        mean.col(0), to_matrix(dgp["sigma_eps"], "dgp.sigma_eps"));
  if (dgp.contains("sigma_eps_diag")) {
    const Eigen::VectorXd diag =
        to_vector(dgp["sigma_eps_diag"], "dgp.sigma_eps_diag");
    return moments::DataGeneratingProcess::with_noise_covariance(
        mean.col(0), diag.asDiagonal().toDenseMatrix());
  }
  return moments::DataGeneratingProcess::from_mean(
      mean.col(0),
      get_as<double>(require(dgp, "sigma2_star", "dgp"), "dgp.sigma2_star"));
}

std::pair<Eigen::Index, Eigen::Index> model_pair(const json& section,
                                                 const Problem& p) {
  const auto find = [&](const std::string& label) {
    for (std::size_t i = 0; i < p.labels.size(); ++i)
      if (p.labels[i] == label) return static_cast<Eigen::Index>(i);
    throw InputError("config: unknown model label '" + label + "'");
  };
  if (section.contains("model1") || section.contains("model2")) {
    return {find(get_as<std::string>(require(section, "model1", "pair"),
                                     "model1")),
            find(get_as<std::string>(require(section, "model2", "pair"),
                                     "model2"))};
  }
  return {0, 1};
}

std::string out_path(const Options& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

int resolve_threads(const Options& opt, const json& config) {
  if (opt.threads) return std::max(1, *opt.threads);
  if (const char* env = std::getenv("BFVAR_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      throw InputError("BFVAR_THREADS is not an integer");
    }
  }
  if (config.contains("threads"))
    return std::max(1, get_as<int>(config["threads"], "threads"));
  return 1;
}

std::uint64_t resolve_seed(const Options& opt, const json& config) {
  if (opt.seed) return *opt.seed;
  if (config.contains("seed"))
    return get_as<std::uint64_t>(config["seed"], "seed");
  return 0;
}

oracle::MomentPath parse_path(const json& section, const Problem& p,
                              const moments::DataGeneratingProcess& dgp,
                              Eigen::Index i1, Eigen::Index i2) {
  std::string mode = "auto";
  if (section.contains("path"))
    mode = get_as<std::string>(section["path"], "path");
  if (mode == "equal") return oracle::MomentPath::equal_var;
  if (mode == "general") return oracle::MomentPath::general;
  if (mode == "mv") return oracle::MomentPath::multivariate;
  if (mode != "auto")
    throw InputError("config: path must be auto, equal, general, or mv");
  using Noise = moments::DataGeneratingProcess::Noise;
  if (dgp.noise() == Noise::matrix) return oracle::MomentPath::multivariate;
  if (dgp.noise() == Noise::general) return oracle::MomentPath::general;
  const double a = p.models[i1].sigma2();
  const double b = p.models[i2].sigma2();
  return std::abs(a - b) <= 1e-12 * std::max(a, b)
             ? oracle::MomentPath::equal_var
             : oracle::MomentPath::general;
}

int cmd_moments(const json& config, const Options& opt) {
  const Problem p = build_problem(config, /*need_response=*/false);
  const auto dgp = build_dgp(config, p.dataset);
  const json section = config.value("moments", json::object());
  const auto [i1, i2] = model_pair(section, p);
  const auto path = parse_path(section, p, dgp, i1, i2);

  moments::BfMoments bf;
  switch (path) {
    case oracle::MomentPath::equal_var:
      bf = moments::bf_moments_equal_var(p.models[i1], p.models[i2], dgp);
      break;
    case oracle::MomentPath::general:
      bf = moments::bf_moments_general(p.models[i1], p.models[i2], dgp);
      break;
    case oracle::MomentPath::multivariate:
      bf = moments::bf_moments_mv(p.models[i1], p.models[i2], dgp);
      break;
  }
  Eigen::MatrixXd row(1, 6);
  row << bf.mean, bf.variance, bf.kl_difference_term,
      bf.complexity_penalty_term, bf.divergence_term, bf.nonshared_dof_term;
  csv::write_file(out_path(opt, "moments.csv"),
                  {"mean", "variance", "kl_difference_term",
                   "complexity_penalty_term", "divergence_term",
                   "nonshared_dof_term"},
                  row);
  return 0;
}

int cmd_oracle(const json& config, const Options& opt) {
  const Problem p = build_problem(config, /*need_response=*/false);
  const auto dgp = build_dgp(config, p.dataset);
  const json section = config.value("oracle", json::object());
  const auto [i1, i2] = model_pair(section, p);
  const auto path = parse_path(section, p, dgp, i1, i2);
  const auto n_sims =
      section.contains("n_sims")
          ? get_as<std::int64_t>(section["n_sims"], "oracle.n_sims")
          : 200000;
  const auto report = oracle::empirical_bf_moments(
      dgp, p.models[i1], p.models[i2], n_sims, resolve_seed(opt, config),
      resolve_threads(opt, config), path);
  Eigen::MatrixXd row(1, 10);
  row << report.empirical_mean, report.empirical_var, report.se_mean,
      report.se_var, report.closed_mean, report.closed_var, report.z_mean,
      report.z_var, static_cast<double>(report.n_sims),
      static_cast<double>(report.seed);
  csv::write_file(out_path(opt, "oracle_report.csv"),
                  {"empirical_mean", "empirical_var", "se_mean", "se_var",
                   "closed_mean", "closed_var", "z_mean", "z_var", "n_sims",
                   "seed"},
                  row);
  return 0;
}

int cmd_angles(const json& config, const Options& opt) {
  const json& section = require(config, "angles", "top level");
  const csv::Table dataset = csv::read_file(
      get_as<std::string>(require(config, "dataset", "top level"), "dataset"));
  const double g = get_as<double>(require(config, "g", "top level"), "g");
  const auto cols1 = get_as<std::vector<std::string>>(
      require(section, "design1", "angles"), "angles.design1");
  const auto cols2 = get_as<std::vector<std::string>>(
      require(section, "design2", "angles"), "angles.design2");
  const Eigen::MatrixXd x1 = select_columns(dataset, cols1);
  const Eigen::MatrixXd x2 = select_columns(dataset, cols2);

  const auto report = geometry::principal_angles(x1, x2);
  const double via = geometry::nonshared_dof_via_angles(x1, x2, g);
  const gprior::RegressionModel m1(x1, 1.0, g);
  const gprior::RegressionModel m2(x2, 1.0, g);
  const double direct = geometry::nonshared_dof_direct(gprior::hat_matrix(m1),
                                                       gprior::hat_matrix(m2));

  Eigen::MatrixXd rows(report.angles.size(), 7);
  for (Eigen::Index i = 0; i < report.angles.size(); ++i)
    rows.row(i) << static_cast<double>(i), report.angles(i),
        report.cos_squared(i), static_cast<double>(report.shared_dims),
        static_cast<double>(report.partial_dims), direct, via;
  csv::write_file(out_path(opt, "angles.csv"),
                  {"index", "angle", "cos_squared", "shared_dims",
                   "partial_dims", "nonshared_dof_direct",
                   "nonshared_dof_via_angles"},
                  rows);
  return 0;
}

int cmd_pmp(const json& config, const Options& opt) {
  const Problem p = build_problem(config, /*need_response=*/true);
  Eigen::VectorXd lm(static_cast<Eigen::Index>(p.models.size()));
  for (std::size_t i = 0; i < p.models.size(); ++i) {
    lm(static_cast<Eigen::Index>(i)) =
        p.models[i].multivariate()
            ? gprior::log_marginal_mv(p.models[i], p.response, p.exponent)
            : gprior::log_marginal(p.models[i],
                                   Eigen::VectorXd(p.response.col(0)));
  }
  const auto result = posterior::pmp(lm, p.priors);

  const auto k = static_cast<Eigen::Index>(p.models.size());
  std::vector<std::string> header;
  Eigen::MatrixXd row(1, 3 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    header.push_back("prior_" + p.labels[static_cast<std::size_t>(i)]);
    row(0, i) = p.priors(i);
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    header.push_back("log_marginal_" + p.labels[static_cast<std::size_t>(i)]);
    row(0, k + i) = result.log_marginals(i);
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    header.push_back("pmp_" + p.labels[static_cast<std::size_t>(i)]);
    row(0, 2 * k + i) = result.probs(i);
  }
  csv::write_file(out_path(opt, "pmp.csv"), header, row);

  if (config.contains("families")) {
    const auto partition = get_as<std::map<std::string, std::string>>(
        config["families"], "families");
    const auto fam = posterior::family_pmp(result, p.labels, p.priors,
                                           partition);
    std::vector<std::string> fam_header;
    Eigen::MatrixXd fam_row(1, 2 * fam.probs.size());
    for (Eigen::Index i = 0; i < fam.probs.size(); ++i) {
      fam_header.push_back("log_marginal_" +
                           fam.families[static_cast<std::size_t>(i)]);
      fam_row(0, i) = fam.log_marginals(i);
    }
    for (Eigen::Index i = 0; i < fam.probs.size(); ++i) {
      fam_header.push_back("pmp_" + fam.families[static_cast<std::size_t>(i)]);
      fam_row(0, fam.probs.size() + i) = fam.probs(i);
    }
    csv::write_file(out_path(opt, "family_pmp.csv"), fam_header, fam_row);
  }
  return 0;
}

resample::ResamplePlan build_plan(const json& section, const Options& opt,
                                  const json& config, int n) {
  resample::ResamplePlan plan;
  const std::string scheme =
      section.contains("scheme")
          ? get_as<std::string>(section["scheme"], "bootstrap.scheme")
          : "iid";
  if (scheme == "iid")
    plan.scheme = resample::Scheme::iid;
  else if (scheme == "circular_block")
    plan.scheme = resample::Scheme::circular_block;
  else
    throw InputError("config: scheme must be 'iid' or 'circular_block'");

  plan.replicates =
      opt.replicates
          ? *opt.replicates
          : (section.contains("replicates")
                 ? get_as<int>(section["replicates"], "bootstrap.replicates")
                 : 1000);
  if (plan.replicates < 1)
    throw InputError("config: replicates must be positive");

  if (opt.block_length)
    plan.block_length = *opt.block_length;
  else if (section.contains("block_length"))
    plan.block_length =
        get_as<int>(section["block_length"], "bootstrap.block_length");
  else
    plan.block_length = resample::default_block_length(n);

  plan.seed = resolve_seed(opt, config);
  return plan;
}

int cmd_bootstrap(const json& config, const Options& opt) {
  const Problem p = build_problem(config, /*need_response=*/true);
  const json section = config.value("bootstrap", json::object());
  auto models = p.models;
  const posterior::ModelSet set(std::move(models), p.labels, p.priors,
                                p.exponent);
  const auto plan = build_plan(section, opt, config,
                               static_cast<int>(p.response.rows()));
  const int threads = resolve_threads(opt, config);

  const auto pm = resample::bootstrap_pmp(p.response, set, plan, threads);
  const auto k = static_cast<Eigen::Index>(p.labels.size());

  const auto matrix_with_ids = [&](const resample::PmpMatrix& m) {
    Eigen::MatrixXd out(m.values.rows(), k + 1);
    for (Eigen::Index r = 0; r < m.values.rows(); ++r) {
      out(r, 0) = static_cast<double>(m.replicate_ids[static_cast<std::size_t>(r)]);
      out.row(r).tail(k) = m.values.row(r);
    }
    return out;
  };
  std::vector<std::string> pm_header{"replicate"};
  for (const auto& label : p.labels) pm_header.push_back(label);
  csv::write_file(out_path(opt, "pmp_matrix.csv"), pm_header,
                  matrix_with_ids(pm));

  const std::string sort_by =
      section.contains("sort_by")
          ? get_as<std::string>(section["sort_by"], "bootstrap.sort_by")
          : p.labels.front();
  csv::write_file(out_path(opt, "stripes.csv"), pm_header,
                  matrix_with_ids(resample::stripe_export(pm, sort_by)));

  std::vector<double> thresholds{0.9, 0.95, 0.99};
  if (section.contains("thresholds"))
    thresholds = get_as<std::vector<double>>(section["thresholds"],
                                             "bootstrap.thresholds");
  const auto table = resample::conclusiveness(pm, thresholds);
  Eigen::MatrixXd conc(static_cast<Eigen::Index>(thresholds.size()), k + 2);
  for (Eigen::Index t = 0; t < conc.rows(); ++t) {
    conc(t, 0) = thresholds[static_cast<std::size_t>(t)];
    conc.row(t).segment(1, k) = table.fractions.row(t);
    conc(t, k + 1) = table.inconclusive(t);
  }
  std::vector<std::string> conc_header{"threshold"};
  for (const auto& label : p.labels) conc_header.push_back(label);
  conc_header.push_back("inconclusive");
  csv::write_file(out_path(opt, "conclusiveness.csv"), conc_header, conc);

  // Log Bayes factor histogram for the configured pair (or families).
  const json bf_section = section.value("bf", json::object());
  resample::BfHistogram hist;
  if (bf_section.contains("family1")) {
    const auto partition = get_as<std::map<std::string, std::string>>(
        require(config, "families", "top level (family BF requested)"),
        "families");
    hist = resample::bf_histogram_family(
        p.response, set, partition,
        get_as<std::string>(require(bf_section, "family1", "bf"), "family1"),
        get_as<std::string>(require(bf_section, "family2", "bf"), "family2"),
        plan, threads);
  } else {
    const auto [i1, i2] = model_pair(bf_section, p);
    hist = resample::bf_histogram(p.response, set,
                                  p.labels[static_cast<std::size_t>(i1)],
                                  p.labels[static_cast<std::size_t>(i2)],
                                  plan, threads);
  }

  Eigen::MatrixXd hist_rows(hist.values.size() + 1, 4);
  hist_rows.row(0) << -1.0, hist.observed, 2.0 * hist.observed,
      static_cast<double>(posterior::evidence_bin(hist.observed));
  for (Eigen::Index i = 0; i < hist.values.size(); ++i)
    hist_rows.row(i + 1)
        << static_cast<double>(hist.replicate_ids[static_cast<std::size_t>(i)]),
        hist.values(i), 2.0 * hist.values(i),
        static_cast<double>(posterior::evidence_bin(hist.values(i)));
  csv::write_file(out_path(opt, "bf_histogram.csv"),
                  {"replicate", "log_bf", "two_ln_bf", "evidence_bin"},
                  hist_rows);
  svg::write_file(out_path(opt, "bf_histogram.svg"), hist.values,
                  hist.observed);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Sampling variability of Bayesian model probabilities for "
               "g-prior regression"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed_value = 0;
  int replicates_value = 0;
  int block_value = 0;
  int threads_value = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON configuration file")
        ->required();
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--seed", seed_value, "Random seed")
        ->each([&](const std::string&) { opt.seed = seed_value; });
    cmd->add_option("--replicates", replicates_value, "Bootstrap replicates")
        ->each([&](const std::string&) { opt.replicates = replicates_value; });
    cmd->add_option("--block-length", block_value,
                    "Circular block length")
        ->each([&](const std::string&) { opt.block_length = block_value; });
    cmd->add_option("--threads", threads_value, "Worker threads")
        ->each([&](const std::string&) { opt.threads = threads_value; });
  };

  CLI::App* moments_cmd = app.add_subcommand(
      "moments", "Closed-form log Bayes factor moments");
  CLI::App* bootstrap_cmd = app.add_subcommand(
      "bootstrap", "Bootstrap distribution of model probabilities");
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Monte Carlo check of the closed-form moments");
  CLI::App* angles_cmd = app.add_subcommand(
      "angles", "Principal angles and non-shared degrees of freedom");
  CLI::App* pmp_cmd = app.add_subcommand(
      "pmp", "Posterior model probabilities on the full dataset");
  for (CLI::App* cmd :
       {moments_cmd, bootstrap_cmd, oracle_cmd, angles_cmd, pmp_cmd})
    add_common(cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const json config = load_config(opt.config_path);
    if (moments_cmd->parsed()) return cmd_moments(config, opt);
    if (bootstrap_cmd->parsed()) return cmd_bootstrap(config, opt);
    if (oracle_cmd->parsed()) return cmd_oracle(config, opt);
    if (angles_cmd->parsed()) return cmd_angles(config, opt);
    if (pmp_cmd->parsed()) return cmd_pmp(config, opt);
    std::cerr << "error: no command\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bfvar::cli
