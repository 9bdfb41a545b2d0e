#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <vector>

#include "bfvar/csv.hpp"
#include "bfvar/errors.hpp"
#include "bfvar/rng.hpp"
#include "bfvar/svg.hpp"
#include "test_util.hpp"

using namespace bfvar;

TEST_CASE("csv parsing") {
  const auto table = csv::parse("a,b\n1,2\n3,4\n5,6\n", "test");
  REQUIRE(table.columns.size() == 2);
  CHECK(table.columns[0] == "a");
  CHECK(table.columns[1] == "b");
  REQUIRE(table.values.rows() == 3);
  CHECK(table.values(1, 0) == 3.0);
  CHECK(table.values(2, 1) == 6.0);
  CHECK(table.column("b")(0) == 2.0);
  CHECK_THROWS_AS(table.column("c"), InputError);

  // Windows line endings and scientific notation both parse.
  const auto crlf = csv::parse("x\r\n1e-3\r\n-2.5E+2\r\n", "test");
  CHECK(crlf.values(0, 0) == 1e-3);
  CHECK(crlf.values(1, 0) == -250.0);

  CHECK_THROWS_AS(csv::parse("a,b\n", "test"), InputError);       // no rows
  CHECK_THROWS_AS(csv::parse("", "test"), InputError);            // empty
  CHECK_THROWS_AS(csv::parse("a,b\n1\n", "test"), InputError);    // ragged
  CHECK_THROWS_AS(csv::parse("a,b\n1,x\n", "test"), InputError);  // non-numeric
  CHECK_THROWS_AS(csv::parse("a,b\n1,\n", "test"), InputError);   // missing

  // Errors carry the offending location.
  try {
    csv::parse("a,b\n1,2\n3,oops\n", "somefile");
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("somefile") != std::string::npos);
    CHECK(msg.find("row 3") != std::string::npos);
  }

  CHECK_THROWS_AS(csv::read_file("/nonexistent/path.csv"), InputError);
}

TEST_CASE("csv round-trips at full precision") {
  rng::Stream gen(81, 0);
  Eigen::MatrixXd values(40, 3);
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    values(r, 0) = gen.next_gaussian() * std::pow(10.0, gen.next_below(60)) *
                   1e-30;
    values(r, 1) = gen.next_gaussian();
    values(r, 2) = static_cast<double>(gen.next_below(1000));
  }
  values(0, 0) = 0.0;
  values(1, 0) = -0.0;
  values(2, 0) = 1.0 / 3.0;

  const std::string text = csv::to_string({"u", "v", "w"}, values);
  const auto back = csv::parse(text, "roundtrip");
  REQUIRE(back.values.rows() == values.rows());
  for (Eigen::Index r = 0; r < values.rows(); ++r)
    for (Eigen::Index c = 0; c < values.cols(); ++c)
      CHECK(back.values(r, c) == values(r, c));
}

TEST_CASE("svg histogram structure") {
  // A single zero value sits in the negligible band.
  const Eigen::VectorXd single = Eigen::VectorXd::Zero(1);
  const std::string art = svg::histogram(single, 0.0);
  CHECK(art.find("<svg") == 0);
  CHECK(art.find("</svg>") != std::string::npos);
  CHECK(art.find("class=\"bar\"") != std::string::npos);
  CHECK(art.find("class=\"observed\"") != std::string::npos);

  // Byte determinism.
  rng::Stream gen(82, 0);
  Eigen::VectorXd values(500);
  for (Eigen::Index i = 0; i < values.size(); ++i)
    values(i) = 4.0 * gen.next_gaussian();
  CHECK(svg::histogram(values, 1.25) == svg::histogram(values, 1.25));

  // The shaded bands tile the axis with no gaps: parse rects back out.
  const std::string big = svg::histogram(values, 1.25);
  std::regex band_re(
      "<rect class=\"band\" x=\"([-0-9.e+]+)\" y=\"[-0-9.e+]+\" "
      "width=\"([-0-9.e+]+)\"");
  std::vector<std::pair<double, double>> bands;
  for (std::sregex_iterator it(big.begin(), big.end(), band_re), end;
       it != end; ++it)
    bands.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  REQUIRE(bands.size() == 8);
  for (std::size_t i = 1; i < bands.size(); ++i) {
    const double prev_edge = bands[i - 1].first + bands[i - 1].second;
    CHECK(std::abs(prev_edge - bands[i].first) < 1e-3);
  }

  // The single-value plot puts its one bar inside the negligible band,
  // which spans log BF in (-1, 1): bands 3 and 4 of its own rect list.
  std::vector<std::pair<double, double>> sbands;
  for (std::sregex_iterator it(art.begin(), art.end(), band_re), end;
       it != end; ++it)
    sbands.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  REQUIRE(sbands.size() == 8);
  std::regex bar_re(
      "<rect class=\"bar\" x=\"([-0-9.e+]+)\" y=\"[-0-9.e+]+\" "
      "width=\"([-0-9.e+]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(art, m, bar_re));
  const double bar_lo = std::stod(m[1]);
  const double bar_hi = bar_lo + std::stod(m[2]);
  CHECK(bar_lo >= sbands[3].first - 1e-6);
  CHECK(bar_hi <= sbands[4].first + sbands[4].second + 1e-6);

  CHECK_THROWS_AS(svg::histogram(Eigen::VectorXd(0), 0.0), InputError);
  Eigen::VectorXd bad(1);
  bad << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svg::histogram(bad, 0.0), InputError);
}

TEST_CASE("csv file writing") {
  const std::string path = "/tmp/bfvar_test_write.csv";
  Eigen::MatrixXd values(2, 2);
  values << 1.5, 2.5, -3.5, 4.5;
  csv::write_file(path, {"p", "q"}, values);
  const auto back = csv::read_file(path);
  CHECK(back.columns[1] == "q");
  CHECK(back.values(1, 0) == -3.5);
  std::remove(path.c_str());
}
