#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "roundness/metric.hpp"

using namespace roundness::metric;

namespace {

// Euclidean point clouds give valid metrics for free.
FiniteMetricSpace random_euclidean_metric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 3>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      d[i][j] = std::sqrt(s) + 0.1;  // +0.1 keeps points separated
    }
  }
  return FiniteMetricSpace::validate(d);
}

}  // namespace

TEST_CASE("validate_metric accepts and rejects") {
  CHECK_NOTHROW(FiniteMetricSpace::validate({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));

  // d(0,1) = 5 > d(0,2) + d(2,1) = 2
  try {
    FiniteMetricSpace::validate({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
    CHECK(false);
  } catch (const MetricValidationError& e) {
    CHECK(std::string(e.what()).find("triangle") != std::string::npos);
    CHECK(e.i == 0);
    CHECK(e.j == 1);
    CHECK(e.k == 2);
  }

  CHECK_THROWS_AS(FiniteMetricSpace::validate({{0, 1}, {2, 0}}), MetricValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::validate({{0, 1}, {1, 0.5}}), MetricValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::validate({{0, 0}, {0, 0}}), MetricValidationError);
  CHECK_THROWS_AS(FiniteMetricSpace::validate({{0, 1, 1}, {1, 0, 1}}), MetricValidationError);
}

TEST_CASE("roundness_defect at p = 1 is never positive") {
  std::mt19937_64 rng(7ULL);
  for (int k = 0; k < 20; ++k) {
    const auto m = random_euclidean_metric(3 + k % 4, rng);
    CHECK(roundness_defect(m, 1.0).defect <= 1e-12);
  }
}

TEST_CASE("roundness_defect on the 4-cycle") {
  const auto c4 = cycle_metric(4);
  const auto at1 = roundness_defect(c4, 1.0);
  CHECK(std::abs(at1.defect) <= 1e-12);  // equality at the two diagonals

  const auto at12 = roundness_defect(c4, 1.2);
  // diagonal pairs: 2 * 2^{1.2} - 4
  CHECK(at12.defect == doctest::Approx(2.0 * std::pow(2.0, 1.2) - 4.0).epsilon(1e-12));
  CHECK(at12.defect > 0.0);
}

TEST_CASE("roundness_profile") {
  const auto tri = simplex_metric(3);
  for (const auto& pt : roundness_profile(tri, {1.0, 2.0, 5.0})) {
    CHECK(pt.defect <= 1e-12);
  }

  const auto c4 = cycle_metric(4);
  const auto prof = roundness_profile(c4, {1.0, 1.5, 2.0});
  CHECK(std::abs(prof[0].defect) <= 1e-12);
  CHECK(prof[1].defect > 0.0);
  CHECK(prof[2].defect > 0.0);

  const auto single = FiniteMetricSpace::validate({{0.0}});
  for (const auto& pt : roundness_profile(single, {1.0, 3.0})) {
    CHECK(pt.defect == 0.0);
  }

  CHECK_THROWS_AS(roundness_profile(c4, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("sanchez_mgr on the 3-point path") {
  // D_p = [[0,1,2^p],[1,0,1],[2^p,1,0]]: det = 2^{p+1} never 0;
  // <D_p^{-1}1,1> = 2 - 2^{p-1} vanishes exactly at p = 2.
  const auto m = path_metric(3);
  const auto r = sanchez_mgr(m, 20.0, 0.01, 1e-9);
  CHECK(!r.at_least_pmax);
  CHECK(r.root_source == RootSource::quadratic_form);
  CHECK(std::abs(r.value - 2.0) <= 1e-6);
}

TEST_CASE("sanchez_mgr on the equilateral triangle never fires") {
  const auto r = sanchez_mgr(simplex_metric(3), 20.0, 0.01, 1e-9);
  CHECK(r.at_least_pmax);
  CHECK(r.p_max == 20.0);
}

TEST_CASE("sanchez_mgr on the 4-cycle") {
  // circulant eigenvalues {2 + 2^p, -2^p, 2^p - 2, -2^p}: determinant root at
  // p = 1 while <D_p^{-1}1,1> = 4/(2+2^p) stays positive.
  const auto r = sanchez_mgr(cycle_metric(4), 20.0, 0.01, 1e-9);
  CHECK(!r.at_least_pmax);
  CHECK(r.root_source == RootSource::determinant);
  CHECK(std::abs(r.value - 1.0) <= 1e-6);
}

TEST_CASE("gr_bruteforce on the 4-cycle") {
  const auto c4 = cycle_metric(4);
  const auto at1 = gr_bruteforce(c4, 1.0, 2);
  CHECK(std::abs(at1.defect) <= 1e-12);  // diagonals vs diagonals

  const auto at11 = gr_bruteforce(c4, 1.1, 2);
  CHECK(at11.defect > 0.0);
  CHECK(at11.defect >= 4.0 * std::pow(2.0, 1.1) - 8.0 - 1e-12);
}

TEST_CASE("gr_bruteforce on the equilateral triangle") {
  CHECK(gr_bruteforce(simplex_metric(3), 5.0, 2).defect <= 1e-12);
  CHECK(gr_bruteforce(simplex_metric(3), 5.0, 3).defect <= 1e-12);
}

TEST_CASE("gr_bruteforce guards") {
  CHECK_THROWS_AS(gr_bruteforce(simplex_metric(3), 1.0, 4), std::invalid_argument);
  try {
    gr_bruteforce(simplex_metric(9), 1.0, 2);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("configurations") != std::string::npos);
  }
}

TEST_CASE("gr_bruteforce at n = 2 doubles the roundness defect") {
  std::mt19937_64 rng(11ULL);
  for (int k = 0; k < 10; ++k) {
    const auto m = random_euclidean_metric(4, rng);
    for (double p : {1.0, 1.3, 2.5}) {
      const double gr = gr_bruteforce(m, p, 2).defect;
      const double rd = roundness_defect(m, p).defect;
      CHECK(std::abs(gr - 2.0 * rd) <= 1e-12);
    }
  }
}

TEST_CASE("sanchez_mgr is consistent with the brute-force oracle") {
  struct Fixture {
    FiniteMetricSpace m;
    bool check_above;
  };
  const std::vector<Fixture> fixtures = {
      {path_metric(3), true},
      {cycle_metric(4), true},
      {complete_bipartite_metric(2, 3), false},
  };
  for (const auto& f : fixtures) {
    const auto r = sanchez_mgr(f.m, 20.0, 0.01, 1e-9);
    if (r.at_least_pmax) continue;
    for (int n_points : {2, 3}) {
      CHECK(gr_bruteforce(f.m, r.value - 0.05, n_points).defect <= 1e-9);
      if (f.check_above) {
        CHECK(gr_bruteforce(f.m, r.value + 0.05, 2).defect > 0.0);
      }
    }
  }
}

TEST_CASE("scan functions move slowly between grid points") {
  // smoke check that the default step resolves the scan functions: adjacent
  // values differ by no more than a local-derivative estimate times the step
  const auto m = path_metric(3);
  const double h = 0.01;
  auto det_at = [&](double p) {
    // det(D_p) = 2^{p+1} for the path fixture
    return std::pow(2.0, p + 1.0);
  };
  for (double p = 0.5; p < 3.0; p += 0.25) {
    const double deriv = (det_at(p + h / 10) - det_at(p - h / 10)) / (h / 5);
    CHECK(std::abs(det_at(p + h) - det_at(p)) <= (std::abs(deriv) + 1.0) * h * 3.0);
  }
}

TEST_CASE("outputs are invariant under relabelling") {
  std::mt19937_64 rng(23ULL);
  const auto m = random_euclidean_metric(5, rng);
  const std::vector<int> perm = {3, 0, 4, 1, 2};
  const auto mp = m.relabel(perm);

  for (double p : {1.0, 1.4, 2.2}) {
    CHECK(roundness_defect(m, p).defect == roundness_defect(mp, p).defect);
    CHECK(gr_bruteforce(m, p, 2).defect == gr_bruteforce(mp, p, 2).defect);
  }

  const auto r1 = sanchez_mgr(m, 20.0, 0.01, 1e-9);
  const auto r2 = sanchez_mgr(mp, 20.0, 0.01, 1e-9);
  CHECK(r1.at_least_pmax == r2.at_least_pmax);
  if (!r1.at_least_pmax) {
    CHECK(std::abs(r1.value - r2.value) <= 1e-7);
    CHECK(r1.root_source == r2.root_source);
  }
}

TEST_CASE("distance csv parsing") {
  {
    std::istringstream in("# path on three points\n0,1,2\n1,0,1\n2,1,0\n");
    const auto m = parse_distance_csv(in);
    CHECK(m.size() == 3);
    CHECK(m.dist(0, 2) == 2.0);
  }
  {
    std::istringstream in("0,1\n1,zero\n");
    try {
      parse_distance_csv(in);
      CHECK(false);
    } catch (const MetricValidationError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  {
    std::istringstream in("0,1,2\n1,0\n2,1,0\n");
    CHECK_THROWS_AS(parse_distance_csv(in), MetricValidationError);
  }
  {
    std::istringstream in("0,1\n1,0\n0,1\n1,0\n");
    CHECK_THROWS_AS(parse_distance_csv(in), MetricValidationError);  // not square
  }
}

TEST_CASE("graph fixtures are valid metrics") {
  CHECK(cycle_metric(6).dist(0, 3) == 3.0);
  CHECK(path_metric(4).dist(0, 3) == 3.0);
  CHECK(complete_bipartite_metric(2, 3).dist(0, 1) == 2.0);
  CHECK(complete_bipartite_metric(2, 3).dist(0, 2) == 1.0);
  CHECK(simplex_metric(5).dist(1, 4) == 1.0);
}
