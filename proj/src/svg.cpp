#include "bfvar/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "bfvar/errors.hpp"

namespace bfvar::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 50.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;
constexpr int kBins = 48;

// Band fill colors, most negative to most positive: very strong / strong /
// positive for the second model, negligible, then the mirrored shades for
// the first model.
constexpr std::array<const char*, 8> kBandColors{
    "#d6604d", "#f4a582", "#fddbc7", "#f7f7f7",
    "#f7f7f7", "#d1e5f0", "#92c5de", "#4393c3"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string histogram(const Eigen::VectorXd& values, double observed) {
  if (values.size() == 0)
    throw InputError("svg histogram: no values to plot");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values(i)))
      throw InputError("svg histogram: non-finite value");
  if (!std::isfinite(observed))
    throw InputError("svg histogram: non-finite observed value");

  const std::array<double, 7> edges{-5.0, -3.0, -1.0, 0.0, 1.0, 3.0, 5.0};
  double lo = std::min({values.minCoeff(), observed, edges.front() - 0.5});
  double hi = std::max({values.maxCoeff(), observed, edges.back() + 0.5});
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto to_x = [&](double v) {
    return kLeft + (v - lo) / (hi - lo) * plot_w;
  };

  std::vector<int> counts(kBins, 0);
  const double bin_w = (hi - lo) / kBins;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    int b = static_cast<int>((values(i) - lo) / bin_w);
    b = std::clamp(b, 0, kBins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  const int max_count = *std::max_element(counts.begin(), counts.end());

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  out += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";

  // Evidence bands partition [lo, hi].
  std::vector<double> cuts{lo};
  for (double e : edges) cuts.push_back(e);
  cuts.push_back(hi);
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    const double x0 = to_x(cuts[b]);
    const double x1 = to_x(cuts[b + 1]);
    out += "<rect class=\"band\" x=\"" + num(x0) + "\" y=\"" + num(kTop) +
           "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(plot_h) +
           "\" fill=\"" + kBandColors[b] + "\"/>\n";
  }

  // Histogram bars.
  for (int b = 0; b < kBins; ++b) {
    if (counts[static_cast<std::size_t>(b)] == 0) continue;
    const double frac =
        static_cast<double>(counts[static_cast<std::size_t>(b)]) /
        static_cast<double>(max_count);
    const double bar_h = frac * (plot_h - 10.0);
    const double x0 = to_x(lo + b * bin_w);
    const double x1 = to_x(lo + (b + 1) * bin_w);
    out += "<rect class=\"bar\" x=\"" + num(x0) + "\" y=\"" +
           num(kTop + plot_h - bar_h) + "\" width=\"" + num(x1 - x0) +
           "\" height=\"" + num(bar_h) +
           "\" fill=\"#404040\" fill-opacity=\"0.7\"/>\n";
  }

  // Axis, band edge ticks, labels.
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) +
         "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) +
         "\" stroke=\"black\"/>\n";
  for (double e : edges) {
    const double x = to_x(e);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + plot_h) +
           "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + plot_h + 6.0) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 20.0) +
           "\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" +
           num(e) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + plot_w / 2.0) + "\" y=\"" +
         num(kHeight - 12.0) +
         "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">log Bayes factor</text>\n";

  // Observed full-data value.
  const double ox = to_x(observed);
  out += "<line class=\"observed\" x1=\"" + num(ox) + "\" y1=\"" + num(kTop) +
         "\" x2=\"" + num(ox) + "\" y2=\"" + num(kTop + plot_h) +
         "\" stroke=\"#e7298a\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"4 3\"/>\n";
  out += "<circle class=\"observed\" cx=\"" + num(ox) + "\" cy=\"" +
         num(kTop + plot_h) +
         "\" r=\"5\" fill=\"#e7298a\" stroke=\"white\"/>\n";
  out += "</svg>\n";
  return out;
}

void write_file(const std::string& path, const Eigen::VectorXd& values,
                double observed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("svg: cannot write '" + path + "'");
  out << histogram(values, observed);
  if (!out) throw InputError("svg: write failed for '" + path + "'");
}

}  // namespace bfvar::svg
