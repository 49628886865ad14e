#pragma once

#include <cstdint>
#include <vector>

#include "roundness/spaces.hpp"

namespace roundness::moduli {

/// Deterministic multi-start pattern-search budget. Identical budgets and
/// seeds give bit-identical results regardless of evaluation parallelism.
struct SearchBudget {
  int starts = 256;
  int refine_steps = 60;
  double shrink = 0.5;
  std::uint64_t seed = 0;
};

struct ModulusSample {
  double argument = 0.0;
  double value = 0.0;
  double raw = 0.0;  // pre-clamp search value
  spaces::Vector witness_x;
  spaces::Vector witness_y;
  SearchBudget budget;
  bool clamped = false;
  bool infeasible = false;  // delta only: no feasible pair found
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool verdict_lo = false;  // inequality violation found at lo
  bool verdict_hi = false;
  double width() const { return hi - lo; }
};

struct McEstimate {
  Bracket bracket;
  bool at_least_pmax = false;
  double p_max = 0.0;
};

struct FrechetEstimate {
  double exponent = 0.0;
  double derivative = 0.0;  // symmetric difference quotient at the smallest t
  bool degenerate = false;  // remainders below 1e-13 throughout
  bool ambiguous = false;   // one-sided quotients disagree (non-smooth point)
};

/// Worker threads for multi-start searches; 0 picks a hardware default.
void set_search_threads(int n);
int search_threads();

double conjugate_exponent(double p);
double nu_lower_bound(double p);  // max(2, 2^{p-1})
double nu_upper_bound(double p);  // 2^p

/// Lower-bound estimate of nu_X(p) = sup (|x+y|^p + |x-y|^p)/(|x|^p + |y|^p),
/// clamped into [max(2, 2^{p-1}), 2^p]; clamping is recorded on the sample.
ModulusSample nu_estimate(const spaces::Space& space, double p, const SearchBudget& budget = {});

/// Bisects p in [1,2] on "nu_estimate(p) > 2 + 1e-6" down to width tol_p;
/// reports lo = hi = 2 when no violation is found at p = 2.
Bracket mr_estimate(const spaces::Space& space, double tol_p = 5e-3,
                    const SearchBudget& budget = {});

/// Bisects p in [2, p_max] on "nu_estimate(p) > 2^{p-1} + 1e-6". Violation at
/// p_max reports the sentinel at_least_pmax.
McEstimate mc_estimate(const spaces::Space& space, double p_max = 12.0, double tol_p = 5e-3,
                       const SearchBudget& budget = {});

/// Lower-bound estimate of the modulus of uniform smoothness
/// rho_X(t) = sup{ (|x+y| + |x-y|)/2 - 1 : |x| = 1, |y| = t }.
ModulusSample rho_estimate(const spaces::Space& space, double t, const SearchBudget& budget = {});

/// Upper-bound estimate of the modulus of uniform convexity
/// delta_X(eps) = inf{ 1 - |x+y|/2 : |x| = |y| = 1, |x-y| >= eps }.
ModulusSample delta_estimate(const spaces::Space& space, double eps,
                             const SearchBudget& budget = {});

/// Lower-bound estimate of
/// sup (|x+y|^{p'} + |x-y|^{p'})^{1/p'} / (2^{1/p'} (|x|^p + |y|^p)^{1/p});
/// a value <= 1 certifies Clarkson roundness p up to search power. 1 < p <= 2.
ModulusSample clarkson_ratio(const spaces::Space& space, double p,
                             const SearchBudget& budget = {});

/// |nu_X(p)^{1/p} - nu_{X*}(p')^{1/p'}| with X* the polygonal numerical dual
/// at the given resolution; small values corroborate the duality identity.
double duality_gap(const spaces::SpaceSpec& base, double p, const SearchBudget& budget = {},
                   int resolution = 10000);

/// Fits r in |x + t y| = 1 + f_x(y) t + O(t^r) on a positive decreasing grid
/// (min >= 1e-6): f_x(y) from the symmetric quotient at the smallest t, then
/// the log-log slope of the remainder. Exact linearity flags degenerate and
/// reports +infinity.
FrechetEstimate frechet_exponent(const spaces::Space& space, const spaces::Vector& x,
                                 const spaces::Vector& y, const std::vector<double>& t_grid);

/// LHS - RHS of nu_X(p)^{1/p} <= (nu_X(p0)^{1/p0})^{1-theta} (nu_X(p1)^{1/p1})^theta
/// with 1/p = (1-theta)/p0 + theta/p1; the endpoints get an enlarged budget.
/// Advisory: a positive return beyond search tolerance signals estimator
/// shortfall at the endpoints, not a violation.
double log_convexity_check(const spaces::Space& space, double p0, double p1, double theta,
                           const SearchBudget& budget = {});

}  // namespace roundness::moduli
