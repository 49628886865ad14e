#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace roundness::orlicz {

/// A Young/Orlicz function: continuous, strictly increasing and convex on
/// [0, inf), vanishing at 0 and unbounded. `derivative` may be empty, in
/// which case consumers fall back to central differences.
struct OrliczFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double p = 0.0;
  double t0 = 0.0;
  std::string label;

  double operator()(double t) const { return value(t); }
  bool has_derivative() const { return static_cast<bool>(derivative); }
  double derivative_at(double t) const;  // analytic if present, else central difference
};

struct OrliczValidationError : std::runtime_error {
  OrliczValidationError(const std::string& msg, double where)
      : std::runtime_error(msg), offending_t(where) {}
  double offending_t;
};

struct NonIntegrableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid-based validation used by all constructors: value 0 at 0, strictly
/// increasing, second differences >= -1e-10, finite growth at t = 1e3.
/// Quadrature-backed functions validate on a coarser grid so that their
/// evaluation jitter stays below the second-difference threshold.
void validate_orlicz(const OrliczFunction& phi, int n_points = 4000);

OrliczFunction orlicz_power(double p);

/// Log-perturbed power function on [0,1], psi0(t) = t^p|log(t0 t)| + (1-1/p)t^p,
/// extended linearly beyond 1. Requires 1 < p < 2, t0 in (0,1); the constructor
/// verifies monotonicity and convexity of psi0 on a 1e4-point grid of [0,1] and
/// rejects a t0 that breaks either, reporting the first offending grid point.
OrliczFunction psi_example1(double p, double t0);

/// Largest t0 in {0.01, 0.02, ..., 0.99} accepted by psi_example1 for this p.
double find_valid_t0(double p);

/// Normalised primitive of psi(s)/s: phi(t) = (int_0^1 psi/s)^{-1} int_0^t psi/s,
/// evaluated by adaptive quadrature to absolute tolerance quad_tol. The head
/// [0, eps] is integrated after the substitution s = e^{-u}. Throws
/// NonIntegrableError when psi(s)/s has a divergent head.
OrliczFunction phi_from_psi(const OrliczFunction& psi, double quad_tol);

/// Closed form of phi_from_psi(psi_example1(p, t0)):
/// c_p t^p (1 + |log(t0 t)|) on [0,1] with c_p = (1+|log t0|)^{-1}, and the
/// exact continuation of the normalised primitive beyond 1.
OrliczFunction phi_example1(double p, double t0);

/// t^p / (1 + |log t|) on [0,1], t^{2p} beyond; requires p >= 2.
OrliczFunction phi_example2(double p);

struct Delta2Estimate {
  double value = 0.0;
  bool grid_shortened = false;  // phi underflowed to 0 before the grid end
};

/// Estimates limsup_{t->0} t phi'(t)/phi(t) from a decreasing grid: the
/// quotient is sampled on the grid tail and extrapolated to t -> 0 linearly in
/// 1/(1+|log t|), which is exact for pure powers and for logarithmically
/// perturbed powers.
Delta2Estimate delta2_index(const OrliczFunction& phi, const std::vector<double>& t_grid);

std::vector<double> default_delta2_grid();

/// min over the grid squared of phi(s t) - c phi(s) phi(t); nonnegative iff
/// super-multiplicativity holds on the grid.
double supermult_check(const OrliczFunction& phi, const std::vector<double>& grid, double c);

/// Worst second difference of g(t) = phi(sqrt(t)) on a uniform grid of
/// [0, t_max] with n_points >= 100; values >= -1e-10 pass.
double sqrt_convexity_check(const OrliczFunction& phi, double t_max, int n_points);

struct RatioSup {
  double value = 0.0;
  bool truncated = false;  // phi underflowed on part of the v grid
};

/// Grid maximum of phi(u v) / (u^2 phi(v)) over u in [t,1], v in (0,1],
/// both log-spaced with floor 1e-8 on v; a lower bound for the supremum.
RatioSup smoothness_ratio_sup(const OrliczFunction& phi, double t, int resolution);

/// Log-spaced grid with exact endpoints, lo > 0.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace roundness::orlicz
