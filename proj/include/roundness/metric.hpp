#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace roundness::metric {

struct MetricValidationError : std::runtime_error {
  MetricValidationError(const std::string& msg, int i_, int j_, int k_ = -1)
      : std::runtime_error(msg), i(i_), j(j_), k(k_) {}
  int i, j, k;
};

/// A validated finite metric space: symmetric table, zero diagonal, strictly
/// positive off-diagonal, triangle inequality within 1e-12 relative slack.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace validate(const std::vector<std::vector<double>>& table);

  int size() const { return n_; }
  double dist(int i, int j) const { return d_[i * n_ + j]; }
  FiniteMetricSpace relabel(const std::vector<int>& perm) const;

 private:
  FiniteMetricSpace(int n, std::vector<double> d) : n_(n), d_(std::move(d)) {}
  int n_;
  std::vector<double> d_;
};

/// Entrywise p-th power of the distance table.
struct PMatrix {
  double p = 1.0;
  int n = 0;
  std::vector<double> entries;  // row-major

  static PMatrix build(const FiniteMetricSpace& m, double p);
  double at(int i, int j) const { return entries[i * n + j]; }
};

struct QuadrupleDefect {
  double defect = 0.0;
  std::array<int, 4> witness{0, 0, 0, 0};  // a1, a2, b1, b2
};

/// Exact max over all ordered quadruples (repeats allowed) of
/// d(a1,a2)^p + d(b1,b2)^p - sum_{i,j} d(a_i,b_j)^p; <= 0 iff the space has
/// roundness p.
QuadrupleDefect roundness_defect(const FiniteMetricSpace& m, double p);

struct ProfilePoint {
  double p = 0.0;
  double defect = 0.0;
};

/// Defect at every grid point, reported verbatim (the roundness set of a
/// general metric space need not be downward closed).
std::vector<ProfilePoint> roundness_profile(const FiniteMetricSpace& m,
                                            const std::vector<double>& p_grid);

enum class RootSource { determinant, quadratic_form, none };

struct MgrResult {
  double value = 0.0;
  bool at_least_pmax = false;
  double p_max = 0.0;
  RootSource root_source = RootSource::none;
  double bracket_width = 0.0;
};

/// Scans p in (0, p_max] for the first zero of det(D_p) or of
/// s(p) = det(D_p) <D_p^{-1} 1, 1> (evaluated in the adjugate form
/// det(D_p + 11^T) - det(D_p), which stays finite and accurate across
/// determinant zeros); sign changes are bisected to width tol. No root means
/// the sentinel "at_least_pmax".
MgrResult sanchez_mgr(const FiniteMetricSpace& m, double p_max = 20.0, double grid_step = 0.01,
                      double tol = 1e-9);

struct GrDefect {
  double defect = 0.0;
  std::vector<int> a;
  std::vector<int> b;
};

/// Exhaustive generalised-roundness defect over all n_points-tuples with
/// repetition: sum_{i,j} d(a_i,a_j)^p + d(b_i,b_j)^p - 2 sum_{i,j} d(a_i,b_j)^p.
/// n_points must be 2 or 3 and the space at most 8 points.
GrDefect gr_bruteforce(const FiniteMetricSpace& m, double p, int n_points);

/// Distance matrix CSV: n rows of n comma-separated reals; '#' lines skipped.
FiniteMetricSpace parse_distance_csv(std::istream& in);
FiniteMetricSpace parse_distance_csv_file(const std::string& path);

// graph fixtures (shortest-path metrics)
FiniteMetricSpace cycle_metric(int n);
FiniteMetricSpace path_metric(int n);
FiniteMetricSpace complete_bipartite_metric(int m, int n);
FiniteMetricSpace simplex_metric(int n);

}  // namespace roundness::metric
