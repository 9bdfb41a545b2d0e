// Deterministic standalone SVG histogram of log Bayes factor values with
// shaded evidence bands and the observed full-data value marked. Fixed
// input produces byte-identical output, which keeps the file usable in
// golden tests.

#pragma once

#include <Eigen/Core>
#include <string>

namespace bfvar::svg {

/// Band edges are placed at 2 ln BF in {-10,-6,-2,0,2,6,10}, i.e. at
/// log BF in {-5,-3,-1,0,1,3,5}; the outermost bands extend to the plot
/// edges so the bands partition the axis.
std::string histogram(const Eigen::VectorXd& values, double observed);

void write_file(const std::string& path, const Eigen::VectorXd& values,
                double observed);

}  // namespace bfvar::svg
