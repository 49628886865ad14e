#include <doctest.h>

#include <cmath>
#include <limits>

#include "roundness/moduli.hpp"

using namespace roundness::moduli;
using roundness::spaces::Space;
using roundness::spaces::SpaceKind;
using roundness::spaces::SpaceSpec;
using roundness::spaces::Vector;

namespace {

SpaceSpec lp_spec(double p, int dim) {
  SpaceSpec s;
  s.kind = SpaceKind::lp;
  s.p = p;
  s.dim = dim;
  return s;
}

SpaceSpec racetrack_spec() {
  SpaceSpec s;
  s.kind = SpaceKind::racetrack;
  return s;
}

SearchBudget small_budget(int starts = 32, int steps = 40) {
  SearchBudget b;
  b.starts = starts;
  b.refine_steps = steps;
  return b;
}

// closed form for l^p: 2 below min(p,p'), then 2^{q/min(p,p')}, then 2^{q-1}
double lp_nu_closed_form(double p, double q) {
  const double lo = std::min(p, p / (p - 1.0));
  const double hi = std::max(p, p / (p - 1.0));
  if (q <= lo) return 2.0;
  if (q <= hi) return std::pow(2.0, q / lo);
  return std::pow(2.0, q - 1.0);
}

}  // namespace

TEST_CASE("nu_estimate on Hilbert and l^p matches closed forms") {
  const Space l2_2(lp_spec(2.0, 2));
  CHECK(std::abs(nu_estimate(l2_2, 3.0, small_budget()).value - 4.0) <= 1e-4);

  const Space l15(lp_spec(1.5, 2));
  CHECK(std::abs(nu_estimate(l15, 2.0, small_budget()).value - std::pow(2.0, 4.0 / 3.0)) <= 1e-3);

  // nu(1) = 2 for any Banach space
  const Space rt(racetrack_spec());
  CHECK(std::abs(nu_estimate(rt, 1.0, small_budget()).value - 2.0) <= 1e-6);

  CHECK_THROWS_AS(nu_estimate(l2_2, 0.9, small_budget()), std::invalid_argument);
}

TEST_CASE("nu_estimate respects the hard bounds and records clamping") {
  const Space l1(lp_spec(1.0, 2));
  for (double p : {1.0, 1.3, 2.0, 2.7, 4.0}) {
    const auto s = nu_estimate(l1, p, small_budget());
    CHECK(s.value >= nu_lower_bound(p));
    CHECK(s.value <= nu_upper_bound(p));
    CHECK(s.raw <= nu_upper_bound(p) + 1e-9);
    if (s.clamped) CHECK(s.raw != s.value);
  }
}

TEST_CASE("nu_estimate witness reproduces the reported value") {
  const Space l15(lp_spec(1.5, 3));
  const auto s = nu_estimate(l15, 2.5, small_budget());
  REQUIRE(!s.witness_x.empty());
  Vector sum(3), dif(3);
  for (int i = 0; i < 3; ++i) {
    sum[i] = s.witness_x[i] + s.witness_y[i];
    dif[i] = s.witness_x[i] - s.witness_y[i];
  }
  const double num = std::pow(l15.norm(sum), 2.5) + std::pow(l15.norm(dif), 2.5);
  const double den = std::pow(l15.norm(s.witness_x), 2.5) + std::pow(l15.norm(s.witness_y), 2.5);
  CHECK(std::abs(num / den - s.raw) <= 1e-12 * std::max(1.0, s.raw));
}

TEST_CASE("nu curve is nondecreasing along a grid") {
  for (const auto& spec : {lp_spec(1.5, 2), racetrack_spec()}) {
    const Space space(spec);
    double prev = 0.0;
    for (int k = 0; k <= 8; ++k) {
      const double p = 1.0 + 3.0 * k / 8.0;
      const double v = nu_estimate(space, p, small_budget()).value;
      CHECK(v >= prev - 1e-6);
      prev = v;
    }
  }
}

TEST_CASE("mr_estimate brackets") {
  const Space l3(lp_spec(3.0, 4));
  const auto b3 = mr_estimate(l3, 5e-3, small_budget());
  CHECK(b3.lo <= 1.5 + 5e-3);
  CHECK(b3.hi >= 1.5 - 5e-3);
  CHECK(b3.width() <= 5e-3 + 1e-12);
  CHECK(!b3.verdict_lo);
  CHECK(b3.verdict_hi);

  const Space l1(lp_spec(1.0, 2));
  const auto b1 = mr_estimate(l1, 5e-3, small_budget());
  CHECK(b1.lo <= 1.0 + 5e-3);
  CHECK(b1.hi >= 1.0 - 1e-12);
  CHECK(b1.hi <= 1.0 + 5e-3 + 1e-12);

  const Space l2(lp_spec(2.0, 3));
  const auto b2 = mr_estimate(l2, 5e-3, small_budget());
  CHECK(b2.lo == 2.0);
  CHECK(b2.hi == 2.0);
}

TEST_CASE("mc_estimate brackets and sentinel") {
  const Space l15(lp_spec(1.5, 4));
  const auto m15 = mc_estimate(l15, 12.0, 1e-2, small_budget());
  CHECK(!m15.at_least_pmax);
  CHECK(m15.bracket.lo <= 3.0 + 1e-2);
  CHECK(m15.bracket.hi >= 3.0 - 1e-2);

  const Space l2(lp_spec(2.0, 2));
  const auto m2 = mc_estimate(l2, 12.0, 1e-2, small_budget());
  CHECK(!m2.at_least_pmax);
  CHECK(m2.bracket.lo == 2.0);
  CHECK(m2.bracket.hi == 2.0);

  const Space l1(lp_spec(1.0, 2));
  const auto m1 = mc_estimate(l1, 12.0, 1e-2, small_budget());
  CHECK(m1.at_least_pmax);
  CHECK(m1.p_max == 12.0);
}

TEST_CASE("rho_estimate") {
  const Space l2(lp_spec(2.0, 2));
  // parallelogram law: rho(t) = sqrt(1 + t^2) - 1
  CHECK(std::abs(rho_estimate(l2, 0.3, small_budget(64)).value - (std::sqrt(1.09) - 1.0)) <= 1e-5);

  const Space l1(lp_spec(1.0, 2));
  CHECK(std::abs(rho_estimate(l1, 0.2, small_budget()).value - 0.2) <= 1e-6);

  CHECK(rho_estimate(l2, 0.0, small_budget()).value == 0.0);
  CHECK_THROWS_AS(rho_estimate(l2, -0.1, small_budget()), std::invalid_argument);

  // bounds: 0 <= rho(t) <= t and the Nordlander floor for dim >= 2
  for (const auto& spec : {lp_spec(1.0, 2), lp_spec(2.0, 3), racetrack_spec()}) {
    const Space space(spec);
    for (double t : {0.1, 0.5, 1.0}) {
      const auto s = rho_estimate(space, t, small_budget(64));
      CHECK(s.value >= std::sqrt(1.0 + t * t) - 1.0 - 1e-6);
      CHECK(s.value <= t);
    }
  }
}

TEST_CASE("delta_estimate") {
  const Space l2(lp_spec(2.0, 2));
  // parallelogram law: delta(eps) = 1 - sqrt(1 - eps^2/4)
  CHECK(std::abs(delta_estimate(l2, 1.0, small_budget(64)).value -
                 (1.0 - std::sqrt(3.0) / 2.0)) <= 1e-5);

  const Space l1(lp_spec(1.0, 2));
  const auto s15 = delta_estimate(l1, 1.5, small_budget());
  CHECK(s15.value <= 1e-9);
  CHECK(s15.value >= 0.0);

  CHECK(delta_estimate(l2, 0.0, small_budget()).value <= 1e-12);
  CHECK_THROWS_AS(delta_estimate(l2, 2.1, small_budget()), std::invalid_argument);

  for (double eps : {0.4, 1.2, 2.0}) {
    const auto s = delta_estimate(l2, eps, small_budget());
    CHECK(s.value >= 0.0);
    CHECK(s.value <= 1.0);
    CHECK(!s.infeasible);
  }
}

TEST_CASE("clarkson_ratio") {
  const Space r1(lp_spec(1.7, 1));
  CHECK(std::abs(clarkson_ratio(r1, 1.7, small_budget()).value - 1.0) <= 1e-9);

  const Space l2(lp_spec(2.0, 2));
  CHECK(std::abs(clarkson_ratio(l2, 2.0, small_budget()).value - 1.0) <= 1e-6);

  const Space l1(lp_spec(1.0, 2));
  CHECK(std::abs(clarkson_ratio(l1, 2.0, small_budget()).value - std::sqrt(2.0)) <= 1e-4);

  CHECK_THROWS_AS(clarkson_ratio(l2, 1.0, small_budget()), std::invalid_argument);
  CHECK_THROWS_AS(clarkson_ratio(l2, 2.2, small_budget()), std::invalid_argument);
}

TEST_CASE("clarkson roundness implies plain roundness (shadow of the lemma)") {
  for (const auto& spec : {lp_spec(1.5, 2), lp_spec(2.0, 2), lp_spec(1.2, 3)}) {
    const Space space(spec);
    const double p = std::min(spec.p, spec.p / (spec.p - 1.0));
    if (clarkson_ratio(space, p, small_budget()).value <= 1.0 + 1e-6) {
      CHECK(nu_estimate(space, p, small_budget()).value <= 2.0 + 1e-4);
    }
  }
}

TEST_CASE("duality_gap") {
  // both sides are 2^{2/3}
  CHECK(duality_gap(lp_spec(1.5, 2), 2.0, small_budget(), 4000) < 5e-3);
  // Hilbert is self-dual
  CHECK(duality_gap(lp_spec(2.0, 2), 3.0, small_budget(), 4000) < 5e-3);
  // racetrack against its polygonal dual
  CHECK(duality_gap(racetrack_spec(), 1.5, small_budget(), 4000) < 1e-2);

  CHECK_THROWS_AS(duality_gap(lp_spec(2.0, 3), 2.0, small_budget(), 4000),
                  std::invalid_argument);
  CHECK_THROWS_AS(duality_gap(lp_spec(2.0, 2), 1.0, small_budget(), 4000),
                  std::invalid_argument);
}

TEST_CASE("frechet_exponent") {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -1.0 - 0.25 * i));

  const Space l2(lp_spec(2.0, 2));
  const auto r2 = frechet_exponent(l2, {1, 0}, {0, 1}, grid);
  CHECK(std::abs(r2.exponent - 2.0) <= 0.05);
  CHECK(!r2.ambiguous);
  CHECK(!r2.degenerate);
  CHECK(std::abs(r2.derivative) <= 1e-9);

  const Space l15(lp_spec(1.5, 2));
  const auto r15 = frechet_exponent(l15, {1, 0}, {0, 1}, grid);
  CHECK(std::abs(r15.exponent - 1.5) <= 0.05);

  const Space l1(lp_spec(1.0, 2));
  const auto r1 = frechet_exponent(l1, {1, 0}, {0, 1}, grid);
  CHECK(std::abs(r1.exponent - 1.0) <= 0.05);
  CHECK(r1.ambiguous);

  // |e1 + t e1| = 1 + t exactly: zero remainder everywhere
  const auto rd = frechet_exponent(l1, {1, 0}, {1, 0}, grid);
  CHECK(rd.degenerate);
  CHECK(std::isinf(rd.exponent));

  CHECK_THROWS_AS(frechet_exponent(l2, {1, 0}, {0, 1}, {1e-4, 1e-3}), std::invalid_argument);
  CHECK_THROWS_AS(frechet_exponent(l2, {1, 0}, {0, 1}, {1e-3, 1e-7}), std::invalid_argument);
  CHECK_THROWS_AS(frechet_exponent(l2, {2, 0}, {0, 1}, grid), std::invalid_argument);
}

TEST_CASE("log_convexity_check") {
  const Space l2(lp_spec(2.0, 2));
  CHECK(log_convexity_check(l2, 1.0, 4.0, 0.5, small_budget()) <= 0.02);

  const Space l15(lp_spec(1.5, 2));
  CHECK(log_convexity_check(l15, 1.5, 3.0, 0.5, small_budget()) <= 0.02);

  // degenerate interpolation collapses to a single point
  CHECK(std::abs(log_convexity_check(l2, 2.5, 2.5, 0.5, small_budget())) <= 0.02);

  CHECK_THROWS_AS(log_convexity_check(l2, 1.0, 4.0, 0.0, small_budget()),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_convexity_check(l2, 1.0, 4.0, 1.0, small_budget()),
                  std::invalid_argument);
}

TEST_CASE("lp closed forms across a q grid") {
  for (double p : {1.5, 3.0}) {
    const Space space(lp_spec(p, 2));
    for (int k = 0; k < 9; ++k) {
      const double q = 1.0 + 3.0 * k / 8.0;
      const double expect = lp_nu_closed_form(p, q);
      CHECK(std::abs(nu_estimate(space, q, small_budget()).value - expect) <= 1e-3);
    }
  }
}

TEST_CASE("searches are deterministic across thread counts") {
  const Space l15(lp_spec(1.5, 3));
  SearchBudget b = small_budget(48, 30);
  b.seed = 3;

  const int before = search_threads();
  set_search_threads(1);
  const auto s1 = nu_estimate(l15, 2.2, b);
  set_search_threads(2);
  const auto s2 = nu_estimate(l15, 2.2, b);
  set_search_threads(4);
  const auto s4 = nu_estimate(l15, 2.2, b);
  set_search_threads(before);

  CHECK(s1.value == s2.value);
  CHECK(s1.value == s4.value);
  CHECK(s1.witness_x == s2.witness_x);
  CHECK(s1.witness_x == s4.witness_x);
  CHECK(s1.witness_y == s2.witness_y);
  CHECK(s1.witness_y == s4.witness_y);
}

TEST_CASE("identical seeds reproduce bit-identical samples") {
  const Space rt(racetrack_spec());
  SearchBudget b = small_budget(40, 35);
  b.seed = 17;
  const auto a = rho_estimate(rt, 0.1, b);
  const auto c = rho_estimate(rt, 0.1, b);
  CHECK(a.value == c.value);
  CHECK(a.witness_x == c.witness_x);
  CHECK(a.witness_y == c.witness_y);
}
