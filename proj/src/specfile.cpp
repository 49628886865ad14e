#include "roundness/specfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace roundness::spaces {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a real number, got '" + s + "'", line_no);
  }
}

int parse_int(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line_no);
  }
}

}  // namespace

OrliczFnSpec parse_orlicz_fn(const std::string& text, int line_no) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ParseError("orlicz_fn must look like name(key=value, ...)", line_no);
  }
  const std::string name = trim(text.substr(0, open));
  OrliczFnSpec spec;
  if (name == "power") {
    spec.family = OrliczFnSpec::Family::power;
  } else if (name == "example1") {
    spec.family = OrliczFnSpec::Family::example1;
  } else if (name == "example2") {
    spec.family = OrliczFnSpec::Family::example2;
  } else {
    throw ParseError("unknown orlicz_fn family '" + name + "'", line_no);
  }
  std::string args = text.substr(open + 1, close - open - 1);
  std::stringstream ss(args);
  std::string item;
  bool saw_p = false;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("orlicz_fn argument missing '='", line_no);
    const std::string key = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    if (key == "p") {
      spec.p = parse_real(val, line_no);
      saw_p = true;
    } else if (key == "t0") {
      spec.t0 = parse_real(val, line_no);
    } else {
      throw ParseError("unknown orlicz_fn argument '" + key + "'", line_no);
    }
  }
  if (!saw_p) throw ParseError("orlicz_fn needs a p argument", line_no);
  if (spec.family == OrliczFnSpec::Family::example1 && spec.t0 == 0.0) {
    throw ParseError("example1 needs a t0 argument", line_no);
  }
  return spec;
}

std::string dump_orlicz_fn(const OrliczFnSpec& spec) {
  switch (spec.family) {
    case OrliczFnSpec::Family::power:
      return "power(p=" + real17(spec.p) + ")";
    case OrliczFnSpec::Family::example1:
      return "example1(p=" + real17(spec.p) + ", t0=" + real17(spec.t0) + ")";
    case OrliczFnSpec::Family::example2:
      return "example2(p=" + real17(spec.p) + ")";
  }
  return "";
}

SpaceSpec parse_space_spec(std::istream& in) {
  SpaceSpec spec;
  bool saw_kind = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key == "kind") {
      if (val == "lp") {
        spec.kind = SpaceKind::lp;
      } else if (val == "lplq") {
        spec.kind = SpaceKind::lplq;
      } else if (val == "schatten") {
        spec.kind = SpaceKind::schatten;
      } else if (val == "orlicz") {
        spec.kind = SpaceKind::orlicz;
      } else if (val == "racetrack") {
        spec.kind = SpaceKind::racetrack;
      } else if (val == "racetrack_dual") {
        spec.kind = SpaceKind::racetrack_dual;
      } else {
        throw ParseError("unknown kind '" + val + "'", line_no);
      }
      saw_kind = true;
    } else if (key == "p") {
      spec.p = parse_real(val, line_no);
    } else if (key == "q") {
      spec.q = parse_real(val, line_no);
    } else if (key == "dim") {
      spec.dim = parse_int(val, line_no);
    } else if (key == "outer") {
      spec.outer = parse_int(val, line_no);
    } else if (key == "inner") {
      spec.inner = parse_int(val, line_no);
    } else if (key == "orlicz_fn") {
      spec.orlicz_fn = parse_orlicz_fn(val, line_no);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  if (!saw_kind) throw ParseError("missing 'kind = ...' line", line_no == 0 ? 1 : line_no);
  return spec;
}

SpaceSpec parse_space_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_space_spec(in);
}

std::string dump_space_spec(const SpaceSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case SpaceKind::lp:
      os << "kind = lp\n";
      os << "p = " << real17(spec.p) << "\n";
      os << "dim = " << spec.dim << "\n";
      break;
    case SpaceKind::lplq:
      os << "kind = lplq\n";
      os << "p = " << real17(spec.p) << "\n";
      os << "q = " << real17(spec.q) << "\n";
      os << "outer = " << spec.outer << "\n";
      os << "inner = " << spec.inner << "\n";
      break;
    case SpaceKind::schatten:
      os << "kind = schatten\n";
      os << "p = " << real17(spec.p) << "\n";
      os << "dim = " << spec.dim << "\n";
      break;
    case SpaceKind::orlicz:
      os << "kind = orlicz\n";
      os << "dim = " << spec.dim << "\n";
      os << "orlicz_fn = " << dump_orlicz_fn(spec.orlicz_fn) << "\n";
      break;
    case SpaceKind::racetrack:
      os << "kind = racetrack\n";
      break;
    case SpaceKind::racetrack_dual:
      os << "kind = racetrack_dual\n";
      break;
    case SpaceKind::numerical_dual:
      throw std::invalid_argument("dump_space_spec: numerical_dual has no file form");
  }
  return os.str();
}

}  // namespace roundness::spaces
