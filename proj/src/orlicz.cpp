#include "roundness/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roundness::orlicz {

namespace {

bool finite(double v) { return std::isfinite(v); }

double abs_log(double t) { return std::abs(std::log(t)); }

// Adaptive Simpson with absolute tolerance.
double simpson_step(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_step(a, fa, m, fm, flm);
  const double right = simpson_step(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (!finite(fa) || !finite(fb) || !finite(fm)) {
    throw std::runtime_error("quadrature: non-finite integrand");
  }
  const double whole = simpson_step(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 28);
}

double intercept_of_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  if (n == 1) return ys[0];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return sy / n;
  const double slope = (n * sxy - sx * sy) / det;
  return (sy - slope * sx) / n;
}

}  // namespace

double OrliczFunction::derivative_at(double t) const {
  if (derivative) return derivative(t);
  const double h = std::max(t * 1e-5, 1e-300);
  return (value(t + h) - value(t - h)) / (2.0 * h);
}

void validate_orlicz(const OrliczFunction& phi, int n_points) {
  const double at0 = phi(0.0);
  if (!(std::abs(at0) <= 1e-12)) {
    throw OrliczValidationError("orlicz function: value at 0 is not 0", 0.0);
  }
  const int n = n_points;
  const double hi = 2.0;
  const double h = hi / n;
  double prev = at0;
  double prev2 = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = i * h;
    const double v = phi(t);
    if (!finite(v)) throw OrliczValidationError("orlicz function: non-finite value", t);
    if (!(v > prev)) throw OrliczValidationError("orlicz function: not strictly increasing", t);
    if (i >= 2) {
      const double second = prev2 - 2.0 * prev + v;
      if (second < -1e-10) throw OrliczValidationError("orlicz function: not convex", t - h);
    }
    prev2 = prev;
    prev = v;
  }
  const double far = phi(1e3);
  if (!finite(far) || !(far > phi(1.0))) {
    throw OrliczValidationError("orlicz function: does not grow at large t", 1e3);
  }
}

OrliczFunction orlicz_power(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("orlicz_power: p must be >= 1");
  OrliczFunction f;
  f.p = p;
  f.label = "power(p=" + std::to_string(p) + ")";
  f.value = [p](double t) { return t <= 0.0 ? 0.0 : std::pow(t, p); };
  f.derivative = [p](double t) { return t <= 0.0 ? 0.0 : p * std::pow(t, p - 1.0); };
  validate_orlicz(f);
  return f;
}

OrliczFunction psi_example1(double p, double t0) {
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("psi_example1: requires 1 < p < 2");
  if (!(t0 > 0.0 && t0 < 1.0)) throw std::invalid_argument("psi_example1: requires t0 in (0,1)");

  auto psi0 = [p, t0](double t) {
    if (t <= 0.0) return 0.0;
    const double tp = std::pow(t, p);
    return tp * abs_log(t0 * t) + (1.0 - 1.0 / p) * tp;
  };
  const double value1 = psi0(1.0);
  const double slope1 = p * abs_log(t0) + p - 2.0;  // psi0'(1)

  // monotonicity/convexity of psi0 on a 1e4-point grid of [0,1]
  {
    const int n = 10000;
    const double h = 1.0 / n;
    double prev = 0.0, prev2 = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double t = i * h;
      const double v = psi0(t);
      if (!(v > prev)) {
        throw OrliczValidationError("psi_example1: psi0 not increasing for this t0", t);
      }
      if (i >= 2 && prev2 - 2.0 * prev + v < -1e-10) {
        throw OrliczValidationError("psi_example1: psi0 not convex for this t0", t - h);
      }
      prev2 = prev;
      prev = v;
    }
  }

  OrliczFunction f;
  f.p = p;
  f.t0 = t0;
  f.label = "psi_example1(p=" + std::to_string(p) + ", t0=" + std::to_string(t0) + ")";
  f.value = [psi0, value1, slope1](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return psi0(t);
    return value1 + (t - 1.0) * slope1;
  };
  f.derivative = [p, t0, slope1](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return std::pow(t, p - 1.0) * (p * abs_log(t0 * t) + p - 2.0);
    return slope1;
  };
  validate_orlicz(f);
  return f;
}

double find_valid_t0(double p) {
  for (int k = 99; k >= 1; --k) {
    const double t0 = k / 100.0;
    try {
      psi_example1(p, t0);
      return t0;
    } catch (const OrliczValidationError&) {
    }
  }
  throw std::invalid_argument("find_valid_t0: no grid t0 validates for this p");
}

OrliczFunction phi_from_psi(const OrliczFunction& psi, double quad_tol) {
  if (!(quad_tol > 0.0)) throw std::invalid_argument("phi_from_psi: quad_tol must be > 0");

  // Head integrability screen: estimate the growth exponent of psi from
  // samples; psi(s)/s ~ s^{alpha-1} needs alpha > 0.
  const double s1 = 1e-6, s2 = 1e-4;
  const double v1 = psi(s1), v2 = psi(s2);
  if (!(v1 > 0.0) || !(v2 > 0.0) || !finite(v1) || !finite(v2)) {
    throw NonIntegrableError("phi_from_psi: psi not positive near 0");
  }
  const double alpha = (std::log(v2) - std::log(v1)) / (std::log(s2) - std::log(s1));
  if (!(alpha > 0.01)) {
    throw NonIntegrableError("phi_from_psi: head integral of psi(s)/s diverges");
  }

  auto psi_val = psi.value;
  const double eps = 0.05;

  // int_0^t psi(s)/s ds for t <= eps, via s = e^{-u}. If the integrand is
  // still non-negligible at the double-precision floor of s the head cannot
  // converge.
  auto head_integral = [psi_val, quad_tol](double t) {
    const double u0 = -std::log(t);
    auto g = [&psi_val](double u) { return psi_val(std::exp(-u)); };
    double U = u0;
    while (g(U) > quad_tol / 64.0) {
      U += 8.0;
      if (U > 600.0) {
        throw NonIntegrableError("phi_from_psi: head integral of psi(s)/s diverges");
      }
    }
    return adaptive_simpson(g, u0, U, quad_tol / 4.0);
  };

  const double head_eps = head_integral(eps);
  auto tail_integral = [psi_val, quad_tol](double a, double b) {
    auto g = [&psi_val](double s) { return psi_val(s) / s; };
    return adaptive_simpson(g, a, b, quad_tol / 4.0);
  };
  const double normaliser = head_eps + tail_integral(eps, 1.0);
  if (!(normaliser > 0.0) || !finite(normaliser)) {
    throw NonIntegrableError("phi_from_psi: normalising integral not positive");
  }

  OrliczFunction f;
  f.p = psi.p;
  f.t0 = psi.t0;
  f.label = "phi_from[" + psi.label + "]";
  f.value = [head_integral, tail_integral, head_eps, normaliser, eps](double t) {
    if (t <= 0.0) return 0.0;
    const double raw = t <= eps ? head_integral(t) : head_eps + tail_integral(eps, t);
    return raw / normaliser;
  };
  f.derivative = [psi_val, normaliser](double t) {
    if (t <= 0.0) return 0.0;
    return psi_val(t) / (t * normaliser);
  };
  validate_orlicz(f, 500);
  return f;
}

OrliczFunction phi_example1(double p, double t0) {
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("phi_example1: requires 1 < p < 2");
  if (!(t0 > 0.0 && t0 < 1.0)) throw std::invalid_argument("phi_example1: requires t0 in (0,1)");
  const double cp = 1.0 / (1.0 + abs_log(t0));
  // Continuation past 1 integrates the linear branch of psi_example1:
  // psi(s)/s = (A - B)/s + B with A = psi0(1), B = psi0'(1).
  const double A = abs_log(t0) + 1.0 - 1.0 / p;
  const double B = p * abs_log(t0) + p - 2.0;

  OrliczFunction f;
  f.p = p;
  f.t0 = t0;
  f.label = "example1(p=" + std::to_string(p) + ", t0=" + std::to_string(t0) + ")";
  f.value = [p, t0, cp, A, B](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return cp * std::pow(t, p) * (1.0 + abs_log(t0 * t));
    return 1.0 + p * cp * ((A - B) * std::log(t) + B * (t - 1.0));
  };
  f.derivative = [p, t0, cp, A, B](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return cp * std::pow(t, p - 1.0) * (p * (1.0 + abs_log(t0 * t)) - 1.0);
    return p * cp * ((A - B) / t + B);
  };
  validate_orlicz(f);
  return f;
}

OrliczFunction phi_example2(double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("phi_example2: requires p >= 2");
  OrliczFunction f;
  f.p = p;
  f.label = "example2(p=" + std::to_string(p) + ")";
  f.value = [p](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return std::pow(t, p) / (1.0 + abs_log(t));
    return std::pow(t, 2.0 * p);
  };
  f.derivative = [p](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) {
      const double L = 1.0 + abs_log(t);
      return std::pow(t, p - 1.0) * (p * L + 1.0) / (L * L);
    }
    return 2.0 * p * std::pow(t, 2.0 * p - 1.0);
  };
  validate_orlicz(f);
  return f;
}

std::vector<double> default_delta2_grid() {
  auto g = log_grid(1e-8, 1e-2, 61);
  std::reverse(g.begin(), g.end());
  return g;
}

Delta2Estimate delta2_index(const OrliczFunction& phi, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("delta2_index: empty grid");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i + 1])) {
      throw std::invalid_argument("delta2_index: grid must be strictly decreasing");
    }
  }
  if (!(t_grid.back() > 0.0)) throw std::invalid_argument("delta2_index: grid must be positive");

  Delta2Estimate out;
  std::vector<double> xs, rs;
  for (double t : t_grid) {
    const double v = phi(t);
    if (!(v > 0.0) || !finite(v)) {
      out.grid_shortened = true;
      break;
    }
    const double d = phi.derivative_at(t);
    const double r = t * d / v;
    if (!finite(r)) {
      out.grid_shortened = true;
      break;
    }
    xs.push_back(1.0 / (1.0 + std::abs(std::log(t))));
    rs.push_back(r);
  }
  if (xs.empty()) throw std::runtime_error("delta2_index: phi vanished on the whole grid");

  // fit on the small-t half and extrapolate to t -> 0
  const size_t tail = std::max<size_t>(1, xs.size() / 2);
  std::vector<double> txs(xs.end() - tail, xs.end());
  std::vector<double> trs(rs.end() - tail, rs.end());
  out.value = intercept_of_fit(txs, trs);
  return out;
}

double supermult_check(const OrliczFunction& phi, const std::vector<double>& grid, double c) {
  if (grid.empty()) throw std::invalid_argument("supermult_check: empty grid");
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0)) {
      throw std::invalid_argument("supermult_check: grid must lie in (0,1]");
    }
    vals[i] = phi(grid[i]);
  }
  double worst = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = 0; j < grid.size(); ++j) {
      const double gap = phi(grid[i] * grid[j]) - c * vals[i] * vals[j];
      worst = std::min(worst, gap);
    }
  }
  return worst;
}

double sqrt_convexity_check(const OrliczFunction& phi, double t_max, int n_points) {
  if (n_points < 100) throw std::invalid_argument("sqrt_convexity_check: need >= 100 grid points");
  if (!(t_max > 0.0)) throw std::invalid_argument("sqrt_convexity_check: t_max must be > 0");
  const double h = t_max / (n_points - 1);
  std::vector<double> g(n_points);
  for (int i = 0; i < n_points; ++i) g[i] = phi(std::sqrt(i * h));
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < n_points; ++i) {
    worst = std::min(worst, g[i - 1] - 2.0 * g[i] + g[i + 1]);
  }
  return worst;
}

RatioSup smoothness_ratio_sup(const OrliczFunction& phi, double t, int resolution) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("smoothness_ratio_sup: t in (0,1]");
  if (resolution < 2) throw std::invalid_argument("smoothness_ratio_sup: resolution too small");
  const auto us = t < 1.0 ? log_grid(t, 1.0, resolution) : std::vector<double>{1.0};
  const auto vs = log_grid(1e-8, 1.0, resolution);
  RatioSup out;
  for (double v : vs) {
    const double pv = phi(v);
    if (!(pv > 0.0) || !finite(pv)) {
      out.truncated = true;
      continue;
    }
    for (double u : us) {
      const double r = phi(u * v) / (u * u * pv);
      if (finite(r)) out.value = std::max(out.value, r);
    }
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad arguments");
  std::vector<double> g(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace roundness::orlicz
