#include <doctest.h>

#include <cmath>
#include <limits>

#include "roundness/orlicz.hpp"

using namespace roundness::orlicz;

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("psi_example1 point values") {
  const double p = 1.5, t0 = 0.05;
  const auto psi = psi_example1(p, t0);
  CHECK(psi(0.0) == 0.0);
  // psi0(1) = |log t0| + 1 - 1/p
  const double at1 = std::abs(std::log(t0)) + 1.0 - 1.0 / p;
  CHECK(psi(1.0) == doctest::Approx(at1).epsilon(1e-12));
  // linear branch: psi(2) = psi0(1) + psi0'(1)
  const double slope1 = p * std::abs(std::log(t0)) + p - 2.0;
  CHECK(psi(2.0) == doctest::Approx(at1 + slope1).epsilon(1e-12));
}

TEST_CASE("psi_example1 rejects t0 that breaks convexity") {
  CHECK_THROWS_AS(psi_example1(1.5, 0.2), OrliczValidationError);
  CHECK_THROWS_AS(psi_example1(0.9, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(psi_example1(1.5, 1.2), std::invalid_argument);
}

TEST_CASE("find_valid_t0 returns the largest grid value") {
  // convexity boundary for p = 1.5 sits at exp(-7/3) ~ 0.09697
  const double t0 = find_valid_t0(1.5);
  CHECK(t0 == doctest::Approx(0.09));
  CHECK_NOTHROW(psi_example1(1.5, t0));
  CHECK_THROWS_AS(psi_example1(1.5, t0 + 0.01), OrliczValidationError);
}

TEST_CASE("phi_from_psi reproduces a pure power") {
  const auto psi = orlicz_power(1.5);
  const auto phi = phi_from_psi(psi, 1e-9);
  for (double t : log_grid(1e-6, 1.0, 40)) {
    CHECK(rel_err(phi(t), std::pow(t, 1.5)) < 1e-8);
  }
  CHECK(phi(1.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phi_from_psi matches the closed form for example 1") {
  const double p = 1.5;
  const double t0 = find_valid_t0(p);
  const auto psi = psi_example1(p, t0);
  const auto phi = phi_from_psi(psi, 1e-9);
  const auto closed = phi_example1(p, t0);
  for (double t : log_grid(1e-6, 1.0, 200)) {
    CHECK(std::abs(phi(t) - closed(t)) < 1e-8);
  }
  CHECK(phi(1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // continuation beyond 1 agrees as well
  for (double t : {1.25, 1.5, 1.9}) {
    CHECK(std::abs(phi(t) - closed(t)) < 1e-7);
  }
}

TEST_CASE("phi_from_psi rejects a divergent head") {
  OrliczFunction bad;
  bad.label = "log-reciprocal";
  bad.value = [](double t) { return t <= 0.0 ? 0.0 : 1.0 / (1.0 - std::log(t)); };
  CHECK_THROWS_AS(phi_from_psi(bad, 1e-8), NonIntegrableError);
}

TEST_CASE("phi_example2 point values") {
  const double p = 2.0;
  const auto phi = phi_example2(p);
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // |log(1/e)| = 1 so phi(1/e) = e^{-p}/2
  CHECK(phi(std::exp(-1.0)) == doctest::Approx(std::exp(-p) / 2.0).epsilon(1e-12));
  CHECK(phi(2.0) == doctest::Approx(std::pow(2.0, 2.0 * p)).epsilon(1e-12));
  CHECK_THROWS_AS(phi_example2(1.5), std::invalid_argument);
}

TEST_CASE("delta2_index on powers and both examples") {
  const auto grid = default_delta2_grid();

  const auto power = orlicz_power(1.7);
  CHECK(std::abs(delta2_index(power, grid).value - 1.7) <= 1e-6);

  const auto psi = psi_example1(1.5, find_valid_t0(1.5));
  CHECK(std::abs(delta2_index(psi, grid).value - 1.5) <= 0.02);

  const auto phi2 = phi_example2(2.0);
  CHECK(std::abs(delta2_index(phi2, grid).value - 2.0) <= 0.05);
}

TEST_CASE("delta2_index is invariant under scaling of phi") {
  const auto psi = psi_example1(1.5, 0.05);
  const auto grid = default_delta2_grid();
  const double base = delta2_index(psi, grid).value;
  for (double lambda : {0.5, 2.0}) {
    OrliczFunction scaled;
    scaled.p = psi.p;
    auto inner = psi.value;
    scaled.value = [inner, lambda](double t) { return lambda * inner(t); };
    auto dinner = psi.derivative;
    scaled.derivative = [dinner, lambda](double t) { return lambda * dinner(t); };
    CHECK(std::abs(delta2_index(scaled, grid).value - base) <= 1e-9);
  }
}

TEST_CASE("delta2_index flags underflow and uses the remaining grid") {
  OrliczFunction cutoff;  // vanishes identically below 1e-6
  cutoff.value = [](double t) { return t < 1e-6 ? 0.0 : t * t; };
  cutoff.derivative = [](double t) { return t < 1e-6 ? 0.0 : 2.0 * t; };
  const auto r = delta2_index(cutoff, default_delta2_grid());
  CHECK(r.grid_shortened);
  CHECK(std::abs(r.value - 2.0) <= 1e-9);
}

TEST_CASE("delta2_index validates the grid") {
  const auto power = orlicz_power(2.0);
  CHECK_THROWS_AS(delta2_index(power, {1e-4, 1e-3}), std::invalid_argument);
  CHECK_THROWS_AS(delta2_index(power, {}), std::invalid_argument);
}

TEST_CASE("supermult_check") {
  const auto grid = log_grid(1e-8, 1.0, 200);
  const auto phi2 = phi_example2(2.0);
  CHECK(supermult_check(phi2, grid, 1.0) >= -1e-12);

  const auto power = orlicz_power(1.5);
  CHECK(std::abs(supermult_check(power, grid, 1.0)) <= 1e-12);

  // boundary sanity at s = t = 1
  const double v = supermult_check(phi2, {1.0}, 0.75);
  CHECK(v == doctest::Approx(phi2(1.0) - 0.75 * phi2(1.0) * phi2(1.0)).epsilon(1e-12));
}

TEST_CASE("sqrt_convexity_check") {
  CHECK(sqrt_convexity_check(phi_example2(2.0), 4.0, 401) >= -1e-10);
  CHECK(sqrt_convexity_check(orlicz_power(4.0), 4.0, 401) >= -1e-10);
  CHECK(sqrt_convexity_check(orlicz_power(1.5), 4.0, 401) < -1e-10);
  CHECK_THROWS_AS(sqrt_convexity_check(orlicz_power(2.0), 4.0, 50), std::invalid_argument);
}

TEST_CASE("smoothness_ratio_sup") {
  // pure power: ratio = u^{p-2}, maximised at u = t
  const auto power = orlicz_power(1.5);
  CHECK(smoothness_ratio_sup(power, 0.25, 200).value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(smoothness_ratio_sup(power, 1.0, 200).value == doctest::Approx(1.0).epsilon(1e-9));

  // example 1: t^{p-2} (1 + c_p |log t|)
  const double p = 1.5;
  const double t0 = find_valid_t0(p);
  const auto phi = phi_example1(p, t0);
  const double cp = 1.0 / (1.0 + std::abs(std::log(t0)));
  for (double t : {0.01, 0.1, 0.5}) {
    const double expected = std::pow(t, p - 2.0) * (1.0 + cp * std::abs(std::log(t)));
    const double got = smoothness_ratio_sup(phi, t, 300).value;
    CHECK(std::abs(got - expected) / expected < 0.01);
  }
  CHECK_THROWS_AS(smoothness_ratio_sup(power, 0.0, 200), std::invalid_argument);
  CHECK_THROWS_AS(smoothness_ratio_sup(power, 1.5, 200), std::invalid_argument);
}

TEST_CASE("constructed functions pass their own validation") {
  CHECK_NOTHROW(validate_orlicz(orlicz_power(1.0)));
  CHECK_NOTHROW(validate_orlicz(orlicz_power(3.0)));
  CHECK_NOTHROW(validate_orlicz(psi_example1(1.5, 0.05)));
  CHECK_NOTHROW(validate_orlicz(phi_example1(1.5, 0.05)));
  CHECK_NOTHROW(validate_orlicz(phi_example2(2.0)));
  CHECK_NOTHROW(validate_orlicz(phi_example2(3.0)));
}
