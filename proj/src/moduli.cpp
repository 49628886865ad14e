#include "roundness/moduli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace roundness::moduli {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::atomic<int> g_threads{0};

int effective_threads() {
  const int configured = g_threads.load();
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool is_prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Acklam's rational approximation of the standard normal quantile.
double inv_normal_cdf(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  u = std::clamp(u, 1e-12, 1.0 - 1e-12);
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Canonical coordinate-pair seeds followed by a Halton direction set offset by
// the seed. Each start is a point in R^{2d} holding the (x, y) pair.
std::vector<std::vector<double>> build_starts(int dim, const SearchBudget& b) {
  const int m = 2 * dim;
  std::vector<std::vector<double>> starts;
  starts.reserve(b.starts);
  auto push = [&](std::vector<double> z) {
    if (static_cast<int>(starts.size()) < b.starts) starts.push_back(std::move(z));
  };
  auto pair_of = [&](int i, double si, int j, double sj, bool cross) {
    std::vector<double> z(m, 0.0);
    if (cross) {
      // (e_i + e_j, e_i - e_j)
      z[i] = 1.0;
      z[j] += sj;
      z[dim + i] = 1.0;
      z[dim + j] -= sj;
      (void)si;
    } else {
      z[i] = si;
      z[dim + j] = sj;
    }
    return z;
  };
  for (int i = 0; i < dim && static_cast<int>(starts.size()) < b.starts; ++i) {
    std::vector<double> z(m, 0.0);
    z[i] = 1.0;
    push(std::move(z));  // (e_i, 0)
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) push(pair_of(i, 1.0, j, 1.0, false));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) push(pair_of(i, 1.0, j, -1.0, false));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) push(pair_of(i, 1.0, j, 1.0, true));
  }

  const int canonical = static_cast<int>(starts.size());
  const auto primes = first_primes(m);
  for (int k = canonical; k < b.starts; ++k) {
    const std::uint64_t index =
        static_cast<std::uint64_t>(k - canonical) + 1 + b.seed * static_cast<std::uint64_t>(b.starts);
    std::vector<double> z(m);
    double norm2 = 0.0;
    for (int j = 0; j < m; ++j) {
      z[j] = inv_normal_cdf(radical_inverse(index, primes[j]));
      norm2 += z[j] * z[j];
    }
    const double nrm = std::sqrt(norm2);
    if (nrm > 1e-12) {
      for (double& v : z) v /= nrm;
    } else {
      z.assign(m, 0.0);
      z[0] = 1.0;
    }
    starts.push_back(std::move(z));
  }
  return starts;
}

struct PatternPoint {
  double value = kNegInf;
  std::vector<double> z;
};

// Gauss-Seidel coordinate pattern search: sweep +/- step per coordinate,
// repeat sweeps while improving (bounded), then shrink the step.
template <class F>
PatternPoint pattern_search(std::vector<double> z, const SearchBudget& b, F& f) {
  double v = f(z.data());
  double step = 0.5;
  const int m = static_cast<int>(z.size());
  for (int level = 0; level < b.refine_steps; ++level) {
    for (int pass = 0; pass < 8; ++pass) {
      bool improved = false;
      for (int j = 0; j < m; ++j) {
        const double zj = z[j];
        z[j] = zj + step;
        const double vp = f(z.data());
        if (vp > v) {
          v = vp;
          improved = true;
          continue;
        }
        z[j] = zj - step;
        const double vm = f(z.data());
        if (vm > v) {
          v = vm;
          improved = true;
          continue;
        }
        z[j] = zj;
      }
      if (!improved) break;
    }
    step *= b.shrink;
    double zmax = 1.0;
    for (double c : z) zmax = std::max(zmax, std::abs(c));
    if (step < 1e-17 * zmax) break;
  }
  return {v, std::move(z)};
}

struct BestOutcome {
  double value = kNegInf;
  int start_index = std::numeric_limits<int>::max();
  std::vector<double> z;

  void consider(double v, int idx, std::vector<double>&& zz) {
    if (v > value || (v == value && idx < start_index)) {
      value = v;
      start_index = idx;
      z = std::move(zz);
    }
  }
  void merge(BestOutcome&& other) {
    consider(other.value, other.start_index, std::move(other.z));
  }
};

// Runs each start through pattern search, partitioned over worker threads by
// contiguous index ranges; the reduction is keyed on (value, start index) so
// the outcome is independent of the partition.
template <class ObjFactory>
BestOutcome multistart_max(int dim, const SearchBudget& b, const ObjFactory& make_obj) {
  if (b.starts < 1) throw std::invalid_argument("search budget: starts must be >= 1");
  if (b.refine_steps < 0) throw std::invalid_argument("search budget: refine_steps must be >= 0");
  if (!(b.shrink > 0.0 && b.shrink < 1.0)) {
    throw std::invalid_argument("search budget: shrink must lie in (0,1)");
  }
  const auto starts = build_starts(dim, b);
  const int n = static_cast<int>(starts.size());
  const int threads = std::min(effective_threads(), n);

  auto run_range = [&](int lo, int hi, BestOutcome& out) {
    auto obj = make_obj();
    for (int i = lo; i < hi; ++i) {
      PatternPoint r = pattern_search(starts[i], b, obj);
      out.consider(r.value, i, std::move(r.z));
    }
  };

  if (threads <= 1) {
    BestOutcome best;
    run_range(0, n, best);
    return best;
  }
  std::vector<BestOutcome> locals(threads);
  std::vector<std::thread> pool;
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run_range, lo, hi, std::ref(locals[t]));
  }
  for (auto& th : pool) th.join();
  BestOutcome best;
  for (auto& l : locals) best.merge(std::move(l));
  return best;
}

void split_pair(const double* z, int dim, spaces::Vector& x, spaces::Vector& y) {
  for (int i = 0; i < dim; ++i) {
    x[i] = z[i];
    y[i] = z[dim + i];
  }
}

struct NuObjective {
  const spaces::Space* space;
  double p;
  int dim;
  spaces::Vector x, y, sum, dif;

  NuObjective(const spaces::Space& s, double pp)
      : space(&s), p(pp), dim(s.dim()), x(dim), y(dim), sum(dim), dif(dim) {}

  double operator()(const double* z) {
    split_pair(z, dim, x, y);
    const double den = std::pow(space->norm(x), p) + std::pow(space->norm(y), p);
    if (den < 1e-12) return kNegInf;
    for (int i = 0; i < dim; ++i) {
      sum[i] = x[i] + y[i];
      dif[i] = x[i] - y[i];
    }
    return (std::pow(space->norm(sum), p) + std::pow(space->norm(dif), p)) / den;
  }
};

struct RhoObjective {
  const spaces::Space* space;
  double t;
  int dim;
  spaces::Vector x, u, plus, minus;

  RhoObjective(const spaces::Space& s, double tt)
      : space(&s), t(tt), dim(s.dim()), x(dim), u(dim), plus(dim), minus(dim) {}

  double operator()(const double* z) {
    split_pair(z, dim, x, u);
    const double nx = space->norm(x);
    const double nu = space->norm(u);
    if (nx < 1e-12 || nu < 1e-12) return kNegInf;
    for (int i = 0; i < dim; ++i) {
      const double xi = x[i] / nx;
      const double yi = t * u[i] / nu;
      plus[i] = xi + yi;
      minus[i] = xi - yi;
    }
    return 0.5 * (space->norm(plus) + space->norm(minus)) - 1.0;
  }
};

struct DeltaObjective {
  const spaces::Space* space;
  double eps;
  int dim;
  spaces::Vector x, y, sum, dif;

  DeltaObjective(const spaces::Space& s, double e)
      : space(&s), eps(e), dim(s.dim()), x(dim), y(dim), sum(dim), dif(dim) {}

  // negated midpoint-depth; infeasible pairs are rejected
  double operator()(const double* z) {
    split_pair(z, dim, x, y);
    const double nx = space->norm(x);
    const double ny = space->norm(y);
    if (nx < 1e-12 || ny < 1e-12) return kNegInf;
    for (int i = 0; i < dim; ++i) {
      const double xi = x[i] / nx;
      const double yi = y[i] / ny;
      sum[i] = xi + yi;
      dif[i] = xi - yi;
    }
    if (space->norm(dif) < eps - 1e-12) return kNegInf;
    return space->norm(sum) / 2.0 - 1.0;
  }
};

struct ClarksonObjective {
  const spaces::Space* space;
  double p, pc;
  int dim;
  spaces::Vector x, y, sum, dif;

  ClarksonObjective(const spaces::Space& s, double pp)
      : space(&s), p(pp), pc(conjugate_exponent(pp)), dim(s.dim()), x(dim), y(dim), sum(dim),
        dif(dim) {}

  double operator()(const double* z) {
    split_pair(z, dim, x, y);
    const double den_core = std::pow(space->norm(x), p) + std::pow(space->norm(y), p);
    if (den_core < 1e-12) return kNegInf;
    for (int i = 0; i < dim; ++i) {
      sum[i] = x[i] + y[i];
      dif[i] = x[i] - y[i];
    }
    const double num =
        std::pow(std::pow(space->norm(sum), pc) + std::pow(space->norm(dif), pc), 1.0 / pc);
    return num / (std::pow(2.0, 1.0 / pc) * std::pow(den_core, 1.0 / p));
  }
};

ModulusSample make_sample(double argument, const BestOutcome& best, int dim,
                          const SearchBudget& b) {
  ModulusSample s;
  s.argument = argument;
  s.raw = best.value;
  s.value = best.value;
  s.budget = b;
  s.witness_x.assign(dim, 0.0);
  s.witness_y.assign(dim, 0.0);
  if (!best.z.empty()) {
    for (int i = 0; i < dim; ++i) {
      s.witness_x[i] = best.z[i];
      s.witness_y[i] = best.z[dim + i];
    }
  }
  return s;
}

double linear_fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return 0.0;
  return (n * sxy - sx * sy) / det;
}

}  // namespace

void set_search_threads(int n) {
  if (n < 0) throw std::invalid_argument("set_search_threads: n must be >= 0");
  g_threads.store(n);
}

int search_threads() { return effective_threads(); }

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("conjugate_exponent: p must be > 1");
  return p / (p - 1.0);
}

double nu_lower_bound(double p) { return std::max(2.0, std::pow(2.0, p - 1.0)); }
double nu_upper_bound(double p) { return std::pow(2.0, p); }

ModulusSample nu_estimate(const spaces::Space& space, double p, const SearchBudget& budget) {
  if (!(p >= 1.0)) throw std::invalid_argument("nu_estimate: p must be >= 1");
  auto best = multistart_max(space.dim(), budget,
                             [&space, p]() { return NuObjective(space, p); });
  ModulusSample s = make_sample(p, best, space.dim(), budget);
  const double lo = nu_lower_bound(p);
  const double hi = nu_upper_bound(p);
  s.value = std::clamp(s.raw, lo, hi);
  s.clamped = s.value != s.raw;
  return s;
}

Bracket mr_estimate(const spaces::Space& space, double tol_p, const SearchBudget& budget) {
  if (!(tol_p > 0.0)) throw std::invalid_argument("mr_estimate: tol_p must be > 0");
  auto violated = [&](double p) { return nu_estimate(space, p, budget).value > 2.0 + 1e-6; };
  if (!violated(2.0)) return {2.0, 2.0, false, false};
  double lo = 1.0, hi = 2.0;  // nu(1) = 2 always, so no violation at lo
  while (hi - lo > tol_p) {
    const double mid = 0.5 * (lo + hi);
    if (violated(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi, false, true};
}

McEstimate mc_estimate(const spaces::Space& space, double p_max, double tol_p,
                       const SearchBudget& budget) {
  if (!(p_max >= 2.0)) throw std::invalid_argument("mc_estimate: p_max must be >= 2");
  if (!(tol_p > 0.0)) throw std::invalid_argument("mc_estimate: tol_p must be > 0");
  auto violated = [&](double p) {
    return nu_estimate(space, p, budget).value > std::pow(2.0, p - 1.0) + 1e-6;
  };
  McEstimate out;
  out.p_max = p_max;
  if (!violated(2.0)) {
    out.bracket = {2.0, 2.0, false, false};
    return out;
  }
  if (violated(p_max)) {
    out.bracket = {p_max, p_max, true, true};
    out.at_least_pmax = true;
    return out;
  }
  double lo = 2.0, hi = p_max;
  while (hi - lo > tol_p) {
    const double mid = 0.5 * (lo + hi);
    if (violated(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.bracket = {lo, hi, true, false};
  return out;
}

ModulusSample rho_estimate(const spaces::Space& space, double t, const SearchBudget& budget) {
  if (!(t >= 0.0)) throw std::invalid_argument("rho_estimate: t must be >= 0");
  const int dim = space.dim();
  if (t == 0.0) {
    ModulusSample s;
    s.argument = 0.0;
    s.budget = budget;
    s.witness_x.assign(dim, 0.0);
    s.witness_y.assign(dim, 0.0);
    s.witness_x[0] = 1.0;
    return s;
  }
  auto best = multistart_max(dim, budget, [&space, t]() { return RhoObjective(space, t); });
  ModulusSample s = make_sample(t, best, dim, budget);
  // witness as (unit x, t * unit u)
  const double nx = space.norm(s.witness_x);
  const double nu = space.norm(s.witness_y);
  if (nx > 0.0 && nu > 0.0) {
    for (auto& v : s.witness_x) v /= nx;
    for (auto& v : s.witness_y) v *= t / nu;
  }
  s.value = std::clamp(s.raw, 0.0, t);
  s.clamped = s.value != s.raw;
  return s;
}

ModulusSample delta_estimate(const spaces::Space& space, double eps, const SearchBudget& budget) {
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw std::invalid_argument("delta_estimate: eps must lie in [0, 2]");
  }
  const int dim = space.dim();

  // Starts are repaired towards the antipodal pair, which is feasible for any
  // eps <= 2; pattern moves that break the constraint are rejected.
  auto factory = [&space, eps]() { return DeltaObjective(space, eps); };
  auto repair = [&](std::vector<double>& z, DeltaObjective& obj) {
    if (obj(z.data()) > kNegInf) return true;
    spaces::Vector x(dim), y(dim);
    split_pair(z.data(), dim, x, y);
    const double nx = space.norm(x);
    if (nx < 1e-12) {
      x.assign(dim, 0.0);
      x[0] = 1.0;
    } else {
      for (auto& v : x) v /= nx;
    }
    const double ny = space.norm(y);
    if (ny > 1e-12) {
      for (auto& v : y) v /= ny;
    } else {
      y.assign(dim, 0.0);
    }
    for (int k = 0; k <= 40; ++k) {
      const double w = std::pow(0.5, k);
      for (int i = 0; i < dim; ++i) {
        z[i] = x[i];
        z[dim + i] = (1.0 - w) * (-x[i]) + w * y[i];
      }
      if (obj(z.data()) > kNegInf) return true;
    }
    return false;
  };

  // dedicated multi-start loop so each start can be repaired first
  const auto starts = build_starts(dim, budget);
  const int n = static_cast<int>(starts.size());
  const int threads = std::min(effective_threads(), n);
  auto run_range = [&](int lo, int hi, BestOutcome& out) {
    auto obj = factory();
    for (int i = lo; i < hi; ++i) {
      std::vector<double> z = starts[i];
      if (!repair(z, obj)) continue;
      PatternPoint r = pattern_search(std::move(z), budget, obj);
      out.consider(r.value, i, std::move(r.z));
    }
  };
  BestOutcome best;
  if (threads <= 1) {
    run_range(0, n, best);
  } else {
    std::vector<BestOutcome> locals(threads);
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi, std::ref(locals[t]));
    }
    for (auto& th : pool) th.join();
    for (auto& l : locals) best.merge(std::move(l));
  }

  ModulusSample s = make_sample(eps, best, dim, budget);
  if (best.start_index == std::numeric_limits<int>::max()) {
    s.infeasible = true;
    s.value = 0.0;
    s.raw = 0.0;
    return s;
  }
  s.raw = -best.value;  // un-negate
  const double nx = space.norm(s.witness_x);
  const double ny = space.norm(s.witness_y);
  if (nx > 0.0 && ny > 0.0) {
    for (auto& v : s.witness_x) v /= nx;
    for (auto& v : s.witness_y) v /= ny;
  }
  s.value = std::clamp(s.raw, 0.0, 1.0);
  s.clamped = s.value != s.raw;
  return s;
}

ModulusSample clarkson_ratio(const spaces::Space& space, double p, const SearchBudget& budget) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw std::invalid_argument("clarkson_ratio: p must lie in (1, 2]");
  }
  auto best = multistart_max(space.dim(), budget,
                             [&space, p]() { return ClarksonObjective(space, p); });
  ModulusSample s = make_sample(p, best, space.dim(), budget);
  // the pair (x, 0) realises ratio 1 exactly, so 1 is always attainable
  s.value = std::max(s.raw, 1.0);
  s.clamped = s.value != s.raw;
  return s;
}

double duality_gap(const spaces::SpaceSpec& base, double p, const SearchBudget& budget,
                   int resolution) {
  if (!(p > 1.0)) throw std::invalid_argument("duality_gap: p must be > 1");
  spaces::Space primal(base);
  if (primal.dim() != 2) throw std::invalid_argument("duality_gap: base must be 2-D");
  spaces::Space dual(spaces::make_numerical_dual(base, resolution));
  const double pc = conjugate_exponent(p);
  const double lhs = std::pow(nu_estimate(primal, p, budget).value, 1.0 / p);
  const double rhs = std::pow(nu_estimate(dual, pc, budget).value, 1.0 / pc);
  return std::abs(lhs - rhs);
}

FrechetEstimate frechet_exponent(const spaces::Space& space, const spaces::Vector& x,
                                 const spaces::Vector& y, const std::vector<double>& t_grid) {
  const int dim = space.dim();
  if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim) {
    throw std::invalid_argument("frechet_exponent: vectors must match the space dimension");
  }
  if (std::abs(space.norm(x) - 1.0) > 1e-8 || std::abs(space.norm(y) - 1.0) > 1e-8) {
    throw std::invalid_argument("frechet_exponent: x and y must be unit vectors");
  }
  if (t_grid.size() < 2) throw std::invalid_argument("frechet_exponent: grid too small");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i + 1])) {
      throw std::invalid_argument("frechet_exponent: grid must be strictly decreasing");
    }
  }
  if (!(t_grid.back() >= 1e-6)) {
    throw std::invalid_argument("frechet_exponent: grid minimum must be >= 1e-6");
  }

  spaces::Vector plus(dim), minus(dim);
  auto norms_at = [&](double t) {
    for (int i = 0; i < dim; ++i) {
      plus[i] = x[i] + t * y[i];
      minus[i] = x[i] - t * y[i];
    }
    return std::pair<double, double>(space.norm(plus), space.norm(minus));
  };

  FrechetEstimate out;
  const double tmin = t_grid.back();
  const auto [np, nm] = norms_at(tmin);
  out.derivative = (np - nm) / (2.0 * tmin);
  const double dplus = (np - 1.0) / tmin;
  const double dminus = (1.0 - nm) / tmin;
  out.ambiguous = std::abs(dplus - dminus) > 1e-2;

  std::vector<double> lts, lrs;
  for (double t : t_grid) {
    const double n = norms_at(t).first;
    const double rem = std::abs(n - 1.0 - out.derivative * t);
    if (rem < 1e-13) continue;
    lts.push_back(std::log(t));
    lrs.push_back(std::log(rem));
  }
  if (lts.size() < 2) {
    out.degenerate = true;
    out.exponent = std::numeric_limits<double>::infinity();
    return out;
  }
  out.exponent = linear_fit_slope(lts, lrs);
  return out;
}

double log_convexity_check(const spaces::Space& space, double p0, double p1, double theta,
                           const SearchBudget& budget) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("log_convexity_check: theta must lie in (0,1)");
  }
  if (!(p0 >= 1.0 && p1 >= 1.0)) {
    throw std::invalid_argument("log_convexity_check: p0, p1 must be >= 1");
  }
  const double p = 1.0 / ((1.0 - theta) / p0 + theta / p1);
  SearchBudget endpoint = budget;
  endpoint.starts *= 2;  // the RHS is a product of lower bounds; push it harder
  const double lhs = std::pow(nu_estimate(space, p, budget).value, 1.0 / p);
  const double r0 = std::pow(nu_estimate(space, p0, endpoint).value, 1.0 / p0);
  const double r1 = std::pow(nu_estimate(space, p1, endpoint).value, 1.0 / p1);
  return lhs - std::pow(r0, 1.0 - theta) * std::pow(r1, theta);
}

}  // namespace roundness::moduli
