#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "roundness/orlicz.hpp"

namespace roundness::spaces {

using Vector = std::vector<double>;

double lp_norm(const Vector& x, double p);

/// x read as outer_dim blocks of length inner_dim; l^q inside blocks,
/// l^p across them.
double lplq_norm(const Vector& x, int outer_dim, int inner_dim, double p, double q);

/// l^p norm of the singular values of the n x n row-major matrix a. Singular
/// values come from a cyclic Jacobi eigen-solve of A^T A driven to
/// off-diagonal norm < 1e-14 relative; small negative eigenvalues clamp to 0.
double schatten_norm(const Vector& a, int n, double p);

/// inf{k > 0 : sum phi(|x_i|/k) <= 1}, located by doubling/halving the bracket
/// from max_i |x_i| and bisecting to relative width 1e-10.
double luxemburg_norm(const Vector& x, const orlicz::OrliczFunction& phi);

/// |x2| when |x2| >= |x1|, else (x1^2 + x2^2) / (2|x1|).
double racetrack_norm(const Vector& x);

/// sqrt(x1^2 + x2^2) + |x1|.
double racetrack_dual_norm(const Vector& x);

enum class SpaceKind { lp, lplq, schatten, orlicz, racetrack, racetrack_dual, numerical_dual };

struct OrliczFnSpec {
  enum class Family { power, example1, example2 };
  Family family = Family::power;
  double p = 2.0;
  double t0 = 0.0;

  bool operator==(const OrliczFnSpec&) const = default;
};

struct SpaceSpec {
  SpaceKind kind = SpaceKind::lp;
  double p = 2.0;
  double q = 2.0;
  int dim = 2;  // lp/orlicz: coordinate count; schatten: matrix side
  int outer = 2;
  int inner = 2;
  OrliczFnSpec orlicz_fn;
  std::shared_ptr<SpaceSpec> base;  // numerical_dual only
  int dual_resolution = 4096;

  bool operator==(const SpaceSpec& o) const;
};

SpaceSpec make_numerical_dual(const SpaceSpec& base, int resolution);

orlicz::OrliczFunction build_orlicz_fn(const OrliczFnSpec& spec);

/// A concrete normed space built from a SpaceSpec. Norm evaluation is pure and
/// safe to call concurrently.
class Space {
 public:
  explicit Space(SpaceSpec spec);

  int dim() const { return dim_; }
  double norm(const Vector& x) const;
  const SpaceSpec& spec() const { return spec_; }
  std::string label() const;

 private:
  SpaceSpec spec_;
  int dim_ = 0;
  orlicz::OrliczFunction phi_;                       // orlicz kind
  std::vector<std::array<double, 2>> dual_vertices_;  // numerical_dual kind
};

/// max over a polygonal discretisation of the base unit sphere (resolution
/// angle-equispaced directions, radially normalised) of <f, u>; a lower bound
/// converging to the dual norm of f.
double dual_norm_2d(const Space& base, const Vector& f, int resolution);
double dual_norm_2d(const SpaceSpec& base, const Vector& f, int resolution);

}  // namespace roundness::spaces
