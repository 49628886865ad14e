#include "roundness/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roundness/metric.hpp"
#include "roundness/moduli.hpp"
#include "roundness/report.hpp"
#include "roundness/specfile.hpp"

namespace roundness::cli {

namespace {

using report::real17;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](const std::string& s) {
    try {
      size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected a number, got '" + s + "'");
    }
  };
  if (parts.empty() || text.empty()) throw UsageError(flag + ": empty range");
  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() == 2) {
    const double a = num(parts[0]), b = num(parts[1]);
    if (a == b) return {a};
    throw UsageError(flag + ": ranges need a step, use a:b:step");
  }
  if (parts.size() != 3) throw UsageError(flag + ": use value | a:b:step");
  const double a = num(parts[0]), b = num(parts[1]), step = num(parts[2]);
  if (!(step > 0.0)) throw UsageError(flag + ": step must be > 0");
  if (b < a) throw UsageError(flag + ": range end precedes start");
  std::vector<double> out;
  for (double v = a; v <= b + step * 1e-9; v += step) out.push_back(std::min(v, b));
  if (out.empty()) throw UsageError(flag + ": empty range");
  return out;
}

spaces::Vector parse_vector(const std::string& text, const std::string& flag) {
  spaces::Vector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected comma-separated reals");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty vector");
  for (double v : out) {
    if (!std::isfinite(v)) throw UsageError(flag + ": entries must be finite");
  }
  return out;
}

struct Options {
  std::string space_path;
  std::string metric_path;
  std::string p_range;
  std::string t_range;
  std::string eps_range;
  std::string csv_path;
  std::string svg_path;
  std::string dump_spec_path;
  std::string x_text;
  std::string y_text;
  int budget_starts = moduli::SearchBudget{}.starts;
  int budget_steps = moduli::SearchBudget{}.refine_steps;
  std::uint64_t seed = 0;
  double pmax = 0.0;  // per-command default applied later
  double tol = 0.0;
  double grid_step = 0.01;
  int resolution = 10000;

  moduli::SearchBudget budget() const {
    moduli::SearchBudget b;
    b.starts = budget_starts;
    b.refine_steps = budget_steps;
    b.seed = seed;
    return b;
  }
};

void add_space_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--space", o.space_path, "space spec file")->required();
  cmd->add_option("--dump-spec", o.dump_spec_path, "re-serialise the parsed spec to this path");
  cmd->add_option("--budget-starts", o.budget_starts, "multi-start count");
  cmd->add_option("--budget-steps", o.budget_steps, "pattern-search refinement steps");
  cmd->add_option("--seed", o.seed, "search seed");
}

void add_output_options(CLI::App* cmd, Options& o, bool with_svg = true) {
  cmd->add_option("--csv", o.csv_path, "write CSV here (default stdout)");
  if (with_svg) cmd->add_option("--svg", o.svg_path, "write an SVG line plot here");
}

spaces::Space load_space(const Options& o) {
  const spaces::SpaceSpec spec = spaces::parse_space_spec_file(o.space_path);
  if (!o.dump_spec_path.empty()) {
    std::ofstream out(o.dump_spec_path);
    if (!out) throw std::runtime_error("cannot write '" + o.dump_spec_path + "'");
    out << spaces::dump_space_spec(spec);
  }
  return spaces::Space(spec);
}

struct CsvSink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot write '" + path + "'");
      os = &file;
    }
  }
  std::ostream& out() { return *os; }
};

void maybe_svg(const Options& o, const std::string& title, const std::string& xl,
               const std::string& yl, const std::vector<report::Series>& series) {
  if (o.svg_path.empty()) return;
  std::ofstream out(o.svg_path);
  if (!out) throw std::runtime_error("cannot write '" + o.svg_path + "'");
  report::write_svg_chart(out, title, xl, yl, series);
}

int cmd_nu_curve(const Options& o) {
  const spaces::Space space = load_space(o);
  const auto ps = parse_range(o.p_range, "--p");
  CsvSink sink(o.csv_path);
  sink.out() << "p,nu,lower,upper\n";
  report::Series nu{"nu", {}}, lo{"lower", {}}, up{"upper", {}};
  for (double p : ps) {
    const auto s = moduli::nu_estimate(space, p, o.budget());
    if (s.clamped && std::abs(s.raw - s.value) > 1e-9) {
      std::cerr << "note: nu(" << p << ") clamped from " << s.raw << " to " << s.value << "\n";
    }
    const double l = moduli::nu_lower_bound(p);
    const double u = moduli::nu_upper_bound(p);
    sink.out() << real17(p) << "," << real17(s.value) << "," << real17(l) << "," << real17(u)
               << "\n";
    nu.points.emplace_back(p, s.value);
    lo.points.emplace_back(p, l);
    up.points.emplace_back(p, u);
  }
  maybe_svg(o, "modulus of roundness: " + space.label(), "p", "nu(p)", {nu, lo, up});
  return 0;
}

int cmd_mr(const Options& o) {
  const spaces::Space space = load_space(o);
  const double tol = o.tol > 0.0 ? o.tol : 5e-3;
  const auto br = moduli::mr_estimate(space, tol, o.budget());
  CsvSink sink(o.csv_path);
  sink.out() << "lo,hi,verdict_lo,verdict_hi\n";
  sink.out() << real17(br.lo) << "," << real17(br.hi) << "," << (br.verdict_lo ? "true" : "false")
             << "," << (br.verdict_hi ? "true" : "false") << "\n";
  return 0;
}

int cmd_mc(const Options& o) {
  const spaces::Space space = load_space(o);
  const double tol = o.tol > 0.0 ? o.tol : 5e-3;
  const double pmax = o.pmax > 0.0 ? o.pmax : 12.0;
  const auto mc = moduli::mc_estimate(space, pmax, tol, o.budget());
  CsvSink sink(o.csv_path);
  sink.out() << "lo,hi,verdict_lo,verdict_hi\n";
  if (mc.at_least_pmax) {
    const std::string sentinel = ">=" + real17(mc.p_max);
    sink.out() << sentinel << "," << sentinel << ",true,true\n";
  } else {
    sink.out() << real17(mc.bracket.lo) << "," << real17(mc.bracket.hi) << ","
               << (mc.bracket.verdict_lo ? "true" : "false") << ","
               << (mc.bracket.verdict_hi ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_mgr(const Options& o) {
  const auto m = metric::parse_distance_csv_file(o.metric_path);
  const double pmax = o.pmax > 0.0 ? o.pmax : 20.0;
  const double tol = o.tol > 0.0 ? o.tol : 1e-9;
  const auto r = metric::sanchez_mgr(m, pmax, o.grid_step, tol);
  CsvSink sink(o.csv_path);
  sink.out() << "value,root_source,bracket_width\n";
  if (r.at_least_pmax) {
    sink.out() << ">=" << real17(r.p_max) << ",none,0\n";
  } else {
    const char* src = r.root_source == metric::RootSource::determinant ? "determinant"
                                                                       : "quadratic_form";
    sink.out() << real17(r.value) << "," << src << "," << real17(r.bracket_width) << "\n";
  }
  return 0;
}

int cmd_rho(const Options& o) {
  const spaces::Space space = load_space(o);
  const auto ts = parse_range(o.t_range, "--t");
  CsvSink sink(o.csv_path);
  sink.out() << "t,rho,nordlander_lower,triangle_upper\n";
  report::Series rho{"rho", {}}, lo{"nordlander", {}}, up{"t", {}};
  for (double t : ts) {
    const auto s = moduli::rho_estimate(space, t, o.budget());
    const double l = std::sqrt(1.0 + t * t) - 1.0;
    sink.out() << real17(t) << "," << real17(s.value) << "," << real17(l) << "," << real17(t)
               << "\n";
    rho.points.emplace_back(t, s.value);
    lo.points.emplace_back(t, l);
    up.points.emplace_back(t, t);
  }
  maybe_svg(o, "modulus of smoothness: " + space.label(), "t", "rho(t)", {rho, lo, up});
  return 0;
}

int cmd_delta(const Options& o) {
  const spaces::Space space = load_space(o);
  const auto es = parse_range(o.eps_range, "--eps");
  CsvSink sink(o.csv_path);
  sink.out() << "eps,delta\n";
  report::Series del{"delta", {}};
  for (double e : es) {
    const auto s = moduli::delta_estimate(space, e, o.budget());
    if (s.infeasible) std::cerr << "note: delta(" << e << ") found no feasible pair\n";
    sink.out() << real17(e) << "," << real17(s.value) << "\n";
    del.points.emplace_back(e, s.value);
  }
  maybe_svg(o, "modulus of convexity: " + space.label(), "eps", "delta(eps)", {del});
  return 0;
}

int cmd_clarkson(const Options& o) {
  const spaces::Space space = load_space(o);
  const auto ps = parse_range(o.p_range, "--p");
  CsvSink sink(o.csv_path);
  sink.out() << "p,ratio\n";
  report::Series r{"clarkson ratio", {}};
  for (double p : ps) {
    const auto s = moduli::clarkson_ratio(space, p, o.budget());
    sink.out() << real17(p) << "," << real17(s.value) << "\n";
    r.points.emplace_back(p, s.value);
  }
  maybe_svg(o, "Clarkson ratio: " + space.label(), "p", "ratio", {r});
  return 0;
}

int cmd_frechet(const Options& o) {
  const spaces::Space space = load_space(o);
  std::vector<double> grid;
  if (!o.t_range.empty()) {
    grid = parse_range(o.t_range, "--t");
    std::sort(grid.begin(), grid.end(), std::greater<>());
  } else {
    for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -1.0 - 0.25 * i));
  }
  spaces::Vector x, y;
  if (!o.x_text.empty()) {
    x = parse_vector(o.x_text, "--x");
  } else {
    x.assign(space.dim(), 0.0);
    x[0] = 1.0;
  }
  if (!o.y_text.empty()) {
    y = parse_vector(o.y_text, "--y");
  } else {
    y.assign(space.dim(), 0.0);
    y[space.dim() > 1 ? 1 : 0] = 1.0;
  }
  const double nx = space.norm(x);
  const double ny = space.norm(y);
  if (!(nx > 0.0 && ny > 0.0)) throw std::runtime_error("frechet: x and y must be nonzero");
  for (auto& v : x) v /= nx;
  for (auto& v : y) v /= ny;
  const auto r = moduli::frechet_exponent(space, x, y, grid);
  CsvSink sink(o.csv_path);
  sink.out() << "exponent,derivative,degenerate,ambiguous\n";
  sink.out() << real17(r.exponent) << "," << real17(r.derivative) << ","
             << (r.degenerate ? "true" : "false") << "," << (r.ambiguous ? "true" : "false")
             << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"isometric roundness invariants of normed spaces and finite metric spaces"};
  app.require_subcommand(1);
  Options o;

  auto* nu = app.add_subcommand("nu-curve", "sweep the modulus of roundness nu(p)");
  add_space_options(nu, o);
  nu->add_option("--p", o.p_range, "p sweep, value or a:b:step")->required();
  add_output_options(nu, o);

  auto* mr = app.add_subcommand("mr", "bracket the maximal roundness");
  add_space_options(mr, o);
  mr->add_option("--tol", o.tol, "bracket width (default 5e-3)");
  add_output_options(mr, o, false);

  auto* mc = app.add_subcommand("mc", "bracket the minimal coroundness");
  add_space_options(mc, o);
  mc->add_option("--tol", o.tol, "bracket width (default 5e-3)");
  mc->add_option("--pmax", o.pmax, "scan bound (default 12)");
  add_output_options(mc, o, false);

  auto* mgr = app.add_subcommand("mgr", "maximal generalised roundness of a distance matrix");
  mgr->add_option("--metric", o.metric_path, "distance matrix CSV")->required();
  mgr->add_option("--pmax", o.pmax, "scan bound (default 20)");
  mgr->add_option("--tol", o.tol, "root width (default 1e-9)");
  mgr->add_option("--grid-step", o.grid_step, "scan step (default 0.01)");
  add_output_options(mgr, o, false);

  auto* rho = app.add_subcommand("rho", "sweep the modulus of uniform smoothness");
  add_space_options(rho, o);
  rho->add_option("--t", o.t_range, "t sweep, value or a:b:step")->required();
  add_output_options(rho, o);

  auto* del = app.add_subcommand("delta", "sweep the modulus of uniform convexity");
  add_space_options(del, o);
  del->add_option("--eps", o.eps_range, "eps sweep, value or a:b:step")->required();
  add_output_options(del, o);

  auto* cl = app.add_subcommand("clarkson", "sweep the Clarkson roundness ratio");
  add_space_options(cl, o);
  cl->add_option("--p", o.p_range, "p sweep in (1,2], value or a:b:step")->required();
  add_output_options(cl, o);

  auto* fr = app.add_subcommand("frechet", "norm expansion exponent along a direction");
  add_space_options(fr, o);
  fr->add_option("--t", o.t_range, "t grid (sorted descending); default 1e-1..1e-4");
  fr->add_option("--x", o.x_text, "base point, comma-separated (normalised; default e1)");
  fr->add_option("--y", o.y_text, "direction, comma-separated (normalised; default e2)");
  add_output_options(fr, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (nu->parsed()) return cmd_nu_curve(o);
    if (mr->parsed()) return cmd_mr(o);
    if (mc->parsed()) return cmd_mc(o);
    if (mgr->parsed()) return cmd_mgr(o);
    if (rho->parsed()) return cmd_rho(o);
    if (del->parsed()) return cmd_delta(o);
    if (cl->parsed()) return cmd_clarkson(o);
    if (fr->parsed()) return cmd_frechet(o);
    std::cerr << "no command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const spaces::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const metric::MetricValidationError& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("csv", 0) == 0 ? kExitParse : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace roundness::cli
