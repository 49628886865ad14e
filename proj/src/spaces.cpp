#include "roundness/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roundness::spaces {

namespace {

double max_abs(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double lp_norm(const Vector& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

double lplq_norm(const Vector& x, int outer_dim, int inner_dim, double p, double q) {
  if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("lplq_norm: p, q must be >= 1");
  if (outer_dim < 1 || inner_dim < 1 ||
      x.size() != static_cast<size_t>(outer_dim) * static_cast<size_t>(inner_dim)) {
    throw std::invalid_argument("lplq_norm: length must equal outer_dim * inner_dim");
  }
  Vector block_norms(outer_dim);
  Vector block(inner_dim);
  for (int b = 0; b < outer_dim; ++b) {
    for (int i = 0; i < inner_dim; ++i) block[i] = x[b * inner_dim + i];
    block_norms[b] = lp_norm(block, q);
  }
  return lp_norm(block_norms, p);
}

double schatten_norm(const Vector& a, int n, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (n < 1 || a.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw std::invalid_argument("schatten_norm: matrix must be n x n");
  }
  // B = A^T A, symmetric positive semidefinite
  std::vector<double> b(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a[k * n + i] * a[k * n + j];
      b[i * n + j] = s;
      b[j * n + i] = s;
    }
  }
  double fro = 0.0;
  for (double v : b) fro += v * v;
  fro = std::sqrt(fro);
  const double tol = 1e-14 * std::max(1.0, fro);

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * b[i * n + j] * b[i * n + j];
    if (std::sqrt(off) < tol) break;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double bij = b[i * n + j];
        if (bij == 0.0) continue;
        const double theta = (b[j * n + j] - b[i * n + i]) / (2.0 * bij);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double bik = b[i * n + k];
          const double bjk = b[j * n + k];
          b[i * n + k] = c * bik - s * bjk;
          b[j * n + k] = s * bik + c * bjk;
        }
        for (int k = 0; k < n; ++k) {
          const double bki = b[k * n + i];
          const double bkj = b[k * n + j];
          b[k * n + i] = c * bki - s * bkj;
          b[k * n + j] = s * bki + c * bkj;
        }
      }
    }
  }

  Vector sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = std::sqrt(std::max(0.0, b[i * n + i]));
  return lp_norm(sigma, p);
}

double luxemburg_norm(const Vector& x, const orlicz::OrliczFunction& phi) {
  const double m = max_abs(x);
  if (m == 0.0) return 0.0;

  auto sum_at = [&](double k) {
    double s = 0.0;
    for (double v : x) {
      const double term = phi(std::abs(v) / k);
      if (!std::isfinite(term)) {
        throw std::runtime_error("luxemburg_norm: non-finite orlicz value inside bracket");
      }
      s += term;
    }
    return s;
  };

  double lo = m, hi = m;
  double s0 = sum_at(m);
  if (s0 > 1.0) {
    int guard = 0;
    do {
      hi *= 2.0;
      if (++guard > 2000) throw std::runtime_error("luxemburg_norm: bracket search failed");
    } while (sum_at(hi) > 1.0);
  } else {
    int guard = 0;
    do {
      lo *= 0.5;
      if (++guard > 2000) throw std::runtime_error("luxemburg_norm: bracket search failed");
    } while (sum_at(lo) < 1.0);
  }
  // sum is strictly decreasing in k: sum(lo) >= 1 >= sum(hi)
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (sum_at(mid) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double racetrack_norm(const Vector& x) {
  if (x.size() != 2) throw std::invalid_argument("racetrack_norm: needs a 2-vector");
  const double a1 = std::abs(x[0]);
  const double a2 = std::abs(x[1]);
  if (a2 >= a1) return a2;
  return (x[0] * x[0] + x[1] * x[1]) / (2.0 * a1);
}

double racetrack_dual_norm(const Vector& x) {
  if (x.size() != 2) throw std::invalid_argument("racetrack_dual_norm: needs a 2-vector");
  return std::sqrt(x[0] * x[0] + x[1] * x[1]) + std::abs(x[0]);
}

bool SpaceSpec::operator==(const SpaceSpec& o) const {
  if (kind != o.kind || p != o.p || q != o.q || dim != o.dim || outer != o.outer ||
      inner != o.inner || !(orlicz_fn == o.orlicz_fn) || dual_resolution != o.dual_resolution) {
    return false;
  }
  if ((base == nullptr) != (o.base == nullptr)) return false;
  return base == nullptr || *base == *o.base;
}

SpaceSpec make_numerical_dual(const SpaceSpec& base, int resolution) {
  SpaceSpec s;
  s.kind = SpaceKind::numerical_dual;
  s.base = std::make_shared<SpaceSpec>(base);
  s.dual_resolution = resolution;
  s.dim = 2;
  return s;
}

orlicz::OrliczFunction build_orlicz_fn(const OrliczFnSpec& spec) {
  switch (spec.family) {
    case OrliczFnSpec::Family::power:
      return orlicz::orlicz_power(spec.p);
    case OrliczFnSpec::Family::example1:
      return orlicz::phi_example1(spec.p, spec.t0);
    case OrliczFnSpec::Family::example2:
      return orlicz::phi_example2(spec.p);
  }
  throw std::logic_error("build_orlicz_fn: unknown family");
}

Space::Space(SpaceSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case SpaceKind::lp:
      if (!(spec_.p >= 1.0)) throw std::invalid_argument("space lp: p must be >= 1");
      if (spec_.dim < 1) throw std::invalid_argument("space lp: dim must be >= 1");
      dim_ = spec_.dim;
      break;
    case SpaceKind::lplq:
      if (!(spec_.p >= 1.0 && spec_.q >= 1.0)) {
        throw std::invalid_argument("space lplq: p, q must be >= 1");
      }
      if (spec_.outer < 1 || spec_.inner < 1) {
        throw std::invalid_argument("space lplq: dims must be >= 1");
      }
      dim_ = spec_.outer * spec_.inner;
      break;
    case SpaceKind::schatten:
      if (!(spec_.p >= 1.0)) throw std::invalid_argument("space schatten: p must be >= 1");
      if (spec_.dim < 1) throw std::invalid_argument("space schatten: dim must be >= 1");
      dim_ = spec_.dim * spec_.dim;
      break;
    case SpaceKind::orlicz:
      if (spec_.dim < 1) throw std::invalid_argument("space orlicz: dim must be >= 1");
      phi_ = build_orlicz_fn(spec_.orlicz_fn);
      dim_ = spec_.dim;
      break;
    case SpaceKind::racetrack:
    case SpaceKind::racetrack_dual:
      dim_ = 2;
      break;
    case SpaceKind::numerical_dual: {
      if (!spec_.base) throw std::invalid_argument("numerical_dual: missing base space");
      if (spec_.dual_resolution < 8) {
        throw std::invalid_argument("numerical_dual: resolution must be >= 8");
      }
      Space base(*spec_.base);
      if (base.dim() != 2) throw std::invalid_argument("numerical_dual: base must be 2-D");
      dim_ = 2;
      dual_vertices_.resize(spec_.dual_resolution);
      Vector dir(2);
      for (int j = 0; j < spec_.dual_resolution; ++j) {
        const double th = 2.0 * M_PI * j / spec_.dual_resolution;
        dir[0] = std::cos(th);
        dir[1] = std::sin(th);
        const double nb = base.norm(dir);
        if (!(nb > 0.0) || !std::isfinite(nb)) {
          throw std::runtime_error("numerical_dual: base norm degenerate on a direction");
        }
        dual_vertices_[j] = {dir[0] / nb, dir[1] / nb};
      }
      break;
    }
  }
}

double Space::norm(const Vector& x) const {
  switch (spec_.kind) {
    case SpaceKind::lp:
      return lp_norm(x, spec_.p);
    case SpaceKind::lplq:
      return lplq_norm(x, spec_.outer, spec_.inner, spec_.p, spec_.q);
    case SpaceKind::schatten:
      return schatten_norm(x, spec_.dim, spec_.p);
    case SpaceKind::orlicz:
      return luxemburg_norm(x, phi_);
    case SpaceKind::racetrack:
      return racetrack_norm(x);
    case SpaceKind::racetrack_dual:
      return racetrack_dual_norm(x);
    case SpaceKind::numerical_dual: {
      if (x.size() != 2) throw std::invalid_argument("numerical_dual norm: needs a 2-vector");
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& u : dual_vertices_) {
        best = std::max(best, x[0] * u[0] + x[1] * u[1]);
      }
      return best;
    }
  }
  throw std::logic_error("Space::norm: unknown kind");
}

std::string Space::label() const {
  switch (spec_.kind) {
    case SpaceKind::lp:
      return "lp(p=" + std::to_string(spec_.p) + ", dim=" + std::to_string(spec_.dim) + ")";
    case SpaceKind::lplq:
      return "lplq(p=" + std::to_string(spec_.p) + ", q=" + std::to_string(spec_.q) + ", " +
             std::to_string(spec_.outer) + "x" + std::to_string(spec_.inner) + ")";
    case SpaceKind::schatten:
      return "schatten(p=" + std::to_string(spec_.p) + ", n=" + std::to_string(spec_.dim) + ")";
    case SpaceKind::orlicz:
      return "orlicz(dim=" + std::to_string(spec_.dim) + ")";
    case SpaceKind::racetrack:
      return "racetrack";
    case SpaceKind::racetrack_dual:
      return "racetrack_dual";
    case SpaceKind::numerical_dual:
      return "numerical_dual(res=" + std::to_string(spec_.dual_resolution) + ")";
  }
  return "?";
}

double dual_norm_2d(const Space& base, const Vector& f, int resolution) {
  if (base.dim() != 2) throw std::invalid_argument("dual_norm_2d: base must be 2-D");
  if (f.size() != 2) throw std::invalid_argument("dual_norm_2d: f must be a 2-vector");
  if (resolution < 8) throw std::invalid_argument("dual_norm_2d: resolution must be >= 8");
  double best = -std::numeric_limits<double>::infinity();
  Vector dir(2);
  for (int j = 0; j < resolution; ++j) {
    const double th = 2.0 * M_PI * j / resolution;
    dir[0] = std::cos(th);
    dir[1] = std::sin(th);
    const double nb = base.norm(dir);
    if (!(nb > 0.0) || !std::isfinite(nb)) {
      throw std::runtime_error("dual_norm_2d: base norm degenerate on a direction");
    }
    best = std::max(best, (f[0] * dir[0] + f[1] * dir[1]) / nb);
  }
  return best;
}

double dual_norm_2d(const SpaceSpec& base, const Vector& f, int resolution) {
  return dual_norm_2d(Space(base), f, resolution);
}

}  // namespace roundness::spaces
