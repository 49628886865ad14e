#include "roundness/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <sstream>

namespace roundness::metric {

namespace {

double det_lu(std::vector<double> a, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    const double d = a[col * n + col];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

struct ScanFunctions {
  const FiniteMetricSpace& m;
  int n;
  mutable std::vector<double> dp;

  explicit ScanFunctions(const FiniteMetricSpace& ms)
      : m(ms), n(ms.size()), dp(static_cast<size_t>(n) * n) {}

  void fill(double p) const {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        dp[i * n + j] = i == j ? 0.0 : std::pow(m.dist(i, j), p);
      }
    }
  }

  double det(double p) const {
    fill(p);
    return det_lu(dp, n);
  }

  // s(p) = det(D_p) <D_p^{-1} 1, 1> = det(D_p + 11^T) - det(D_p), exact by the
  // matrix determinant lemma; the right-hand side has no singularity at
  // det(D_p) = 0.
  double quad(double p) const {
    fill(p);
    const double d0 = det_lu(dp, n);
    for (auto& v : dp) v += 1.0;
    const double d1 = det_lu(dp, n);
    return d1 - d0;
  }
};

double median_abs(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

template <class F>
double bisect_root(const F& f, double lo, double hi, double flo, double tol) {
  // sign change assumed between lo and hi
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::validate(const std::vector<std::vector<double>>& table) {
  const int n = static_cast<int>(table.size());
  if (n < 1) throw MetricValidationError("metric: empty table", 0, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw MetricValidationError("metric: table row " + std::to_string(i) + " is not length " +
                                      std::to_string(n),
                                  i, 0);
    }
  }
  std::vector<double> d(static_cast<size_t>(n) * n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = table[i][j];
      if (!std::isfinite(v)) {
        throw MetricValidationError("metric: non-finite entry at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")",
                                    i, j);
      }
      d[i * n + j] = v;
      scale = std::max(scale, std::abs(v));
    }
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int i = 0; i < n; ++i) {
    if (std::abs(d[i * n + i]) > tol) {
      throw MetricValidationError("metric: nonzero diagonal at (" + std::to_string(i) + "," +
                                      std::to_string(i) + ")",
                                  i, i);
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(d[i * n + j] - d[j * n + i]) > tol) {
        throw MetricValidationError("metric: asymmetric at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")",
                                    i, j);
      }
      if (!(d[i * n + j] > 0.0)) {
        throw MetricValidationError("metric: off-diagonal distance not positive at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")",
                                    i, j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k] + tol) {
          throw MetricValidationError(
              "metric: triangle inequality violated, d(" + std::to_string(i) + "," +
                  std::to_string(k) + ") > d(" + std::to_string(i) + "," + std::to_string(j) +
                  ") + d(" + std::to_string(j) + "," + std::to_string(k) + ")",
              i, k, j);
        }
      }
    }
  }
  return FiniteMetricSpace(n, std::move(d));
}

FiniteMetricSpace FiniteMetricSpace::relabel(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw std::invalid_argument("relabel: permutation size mismatch");
  }
  std::vector<double> d(d_.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) d[i * n_ + j] = dist(perm[i], perm[j]);
  }
  return FiniteMetricSpace(n_, std::move(d));
}

PMatrix PMatrix::build(const FiniteMetricSpace& m, double p) {
  PMatrix out;
  out.p = p;
  out.n = m.size();
  out.entries.resize(static_cast<size_t>(out.n) * out.n);
  for (int i = 0; i < out.n; ++i) {
    for (int j = 0; j < out.n; ++j) {
      out.entries[i * out.n + j] = i == j ? 0.0 : std::pow(m.dist(i, j), p);
    }
  }
  return out;
}

QuadrupleDefect roundness_defect(const FiniteMetricSpace& m, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("roundness_defect: p must be >= 1");
  const PMatrix dp = PMatrix::build(m, p);
  const int n = m.size();
  QuadrupleDefect best;
  best.defect = -std::numeric_limits<double>::infinity();
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const double aa = dp.at(a1, a2);
      for (int b1 = 0; b1 < n; ++b1) {
        for (int b2 = 0; b2 < n; ++b2) {
          const double v = aa + dp.at(b1, b2) -
                           (dp.at(a1, b1) + dp.at(a1, b2) + dp.at(a2, b1) + dp.at(a2, b2));
          if (v > best.defect) {
            best.defect = v;
            best.witness = {a1, a2, b1, b2};
          }
        }
      }
    }
  }
  return best;
}

std::vector<ProfilePoint> roundness_profile(const FiniteMetricSpace& m,
                                            const std::vector<double>& p_grid) {
  for (size_t i = 0; i + 1 < p_grid.size(); ++i) {
    if (!(p_grid[i] <= p_grid[i + 1])) {
      throw std::invalid_argument("roundness_profile: grid must be sorted");
    }
  }
  std::vector<ProfilePoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) out.push_back({p, roundness_defect(m, p).defect});
  return out;
}

MgrResult sanchez_mgr(const FiniteMetricSpace& m, double p_max, double grid_step, double tol) {
  if (!(p_max > 0.0)) throw std::invalid_argument("sanchez_mgr: p_max must be > 0");
  if (!(grid_step > 0.0 && tol > 0.0)) {
    throw std::invalid_argument("sanchez_mgr: grid_step and tol must be > 0");
  }
  MgrResult none;
  none.at_least_pmax = true;
  none.p_max = p_max;
  none.value = p_max;
  if (m.size() == 1) return none;  // formula degenerates on a single point

  const ScanFunctions fns(m);
  auto fdet = [&](double p) { return fns.det(p); };
  auto fquad = [&](double p) { return fns.quad(p); };

  std::vector<double> hist_det, hist_quad;
  double prev_p = 0.0;
  double prev_det = 0.0, prev_quad = 0.0;
  bool have_prev = false;

  struct Root {
    bool found = false;
    double at = 0.0;
    double width = 0.0;
    RootSource source = RootSource::none;
  };

  auto near_zero = [&](double v, const std::vector<double>& hist) {
    const double scale = std::max(1.0, median_abs(hist));
    return std::abs(v) < tol * scale;
  };

  for (double p = grid_step; p <= p_max + 0.5 * grid_step; p += grid_step) {
    const double vd = fdet(p);
    const double vq = fquad(p);
    hist_det.push_back(std::abs(vd));
    hist_quad.push_back(std::abs(vq));

    Root rdet, rquad;
    if (near_zero(vd, hist_det)) {
      rdet = {true, p, tol, RootSource::determinant};
    } else if (have_prev && (vd < 0.0) != (prev_det < 0.0)) {
      rdet = {true, bisect_root(fdet, prev_p, p, prev_det, tol), tol, RootSource::determinant};
    }
    if (near_zero(vq, hist_quad)) {
      rquad = {true, p, tol, RootSource::quadratic_form};
    } else if (have_prev && (vq < 0.0) != (prev_quad < 0.0)) {
      rquad = {true, bisect_root(fquad, prev_p, p, prev_quad, tol), tol,
               RootSource::quadratic_form};
    }

    if (rdet.found || rquad.found) {
      MgrResult out;
      out.p_max = p_max;
      if (rdet.found && rquad.found) {
        // coincident roots report as determinant
        if (std::abs(rdet.at - rquad.at) <= 10.0 * tol || rdet.at <= rquad.at) {
          out.value = rdet.at;
          out.root_source = RootSource::determinant;
          out.bracket_width = rdet.width;
        } else {
          out.value = rquad.at;
          out.root_source = RootSource::quadratic_form;
          out.bracket_width = rquad.width;
        }
      } else {
        const Root& r = rdet.found ? rdet : rquad;
        // a quadratic-form root where the determinant also vanishes is a
        // determinant root
        if (r.source == RootSource::quadratic_form) {
          const double dval = fdet(r.at);
          if (near_zero(dval, hist_det)) {
            out.value = r.at;
            out.root_source = RootSource::determinant;
            out.bracket_width = r.width;
            return out;
          }
        }
        out.value = r.at;
        out.root_source = r.source;
        out.bracket_width = r.width;
      }
      return out;
    }

    prev_p = p;
    prev_det = vd;
    prev_quad = vq;
    have_prev = true;
  }
  return none;
}

GrDefect gr_bruteforce(const FiniteMetricSpace& m, double p, int n_points) {
  if (n_points != 2 && n_points != 3) {
    throw std::invalid_argument("gr_bruteforce: n_points must be 2 or 3");
  }
  const int n = m.size();
  if (n > 8) {
    const double cost = std::pow(static_cast<double>(n), 2.0 * n_points);
    throw std::runtime_error("gr_bruteforce: refusing " + std::to_string(n) + " points (about " +
                             std::to_string(static_cast<long long>(cost)) + " configurations)");
  }
  const PMatrix dp = PMatrix::build(m, p);
  const int k = n_points;

  std::vector<int> a(k, 0), b(k, 0);
  GrDefect best;
  best.defect = -std::numeric_limits<double>::infinity();

  auto advance = [n](std::vector<int>& idx) {
    for (int pos = static_cast<int>(idx.size()) - 1; pos >= 0; --pos) {
      if (++idx[pos] < n) return true;
      idx[pos] = 0;
    }
    return false;
  };

  do {
    std::fill(b.begin(), b.end(), 0);
    do {
      double v = 0.0;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          v += dp.at(a[i], a[j]) + dp.at(b[i], b[j]) - 2.0 * dp.at(a[i], b[j]);
        }
      }
      if (v > best.defect) {
        best.defect = v;
        best.a = a;
        best.b = b;
      }
    } while (advance(b));
  } while (advance(a));
  return best;
}

FiniteMetricSpace parse_distance_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // strip whitespace-only and comment lines
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto a = cell.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) {
        throw MetricValidationError("csv line " + std::to_string(line_no) + ": empty cell",
                                    line_no, 0);
      }
      const auto z = cell.find_last_not_of(" \t\r\n");
      const std::string body = cell.substr(a, z - a + 1);
      try {
        size_t used = 0;
        row.push_back(std::stod(body, &used));
        if (used != body.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw MetricValidationError(
            "csv line " + std::to_string(line_no) + ": bad number '" + body + "'", line_no, 0);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw MetricValidationError("csv line " + std::to_string(line_no) + ": ragged row", line_no,
                                  0);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw MetricValidationError("csv: no data rows", 0, 0);
  if (rows.size() != rows.front().size()) {
    throw MetricValidationError("csv: table is not square", 0, 0);
  }
  return FiniteMetricSpace::validate(rows);
}

FiniteMetricSpace parse_distance_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricValidationError("csv: cannot open '" + path + "'", 0, 0);
  return parse_distance_csv(in);
}

namespace {

FiniteMetricSpace from_graph_distance(int n, const std::function<double(int, int)>& d) {
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = i == j ? 0.0 : d(i, j);
  return FiniteMetricSpace::validate(t);
}

}  // namespace

FiniteMetricSpace cycle_metric(int n) {
  if (n < 3) throw std::invalid_argument("cycle_metric: n must be >= 3");
  return from_graph_distance(n, [n](int i, int j) {
    const int k = std::abs(i - j);
    return static_cast<double>(std::min(k, n - k));
  });
}

FiniteMetricSpace path_metric(int n) {
  if (n < 1) throw std::invalid_argument("path_metric: n must be >= 1");
  return from_graph_distance(n, [](int i, int j) { return static_cast<double>(std::abs(i - j)); });
}

FiniteMetricSpace complete_bipartite_metric(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("complete_bipartite_metric: sides must be >= 1");
  return from_graph_distance(m + n, [m](int i, int j) {
    const bool same_side = (i < m) == (j < m);
    return same_side ? 2.0 : 1.0;
  });
}

FiniteMetricSpace simplex_metric(int n) {
  if (n < 2) throw std::invalid_argument("simplex_metric: n must be >= 2");
  return from_graph_distance(n, [](int, int) { return 1.0; });
}

}  // namespace roundness::metric
