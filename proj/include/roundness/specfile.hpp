#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "roundness/spaces.hpp"

namespace roundness::spaces {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  int line;
};

/// Space spec text format: one `kind = <name>` line plus `key = value`
/// parameter lines; blank lines and lines starting with '#' are ignored.
SpaceSpec parse_space_spec(std::istream& in);
SpaceSpec parse_space_spec_file(const std::string& path);

/// Canonical serialisation; parse_space_spec(dump_space_spec(s)) == s.
std::string dump_space_spec(const SpaceSpec& spec);

OrliczFnSpec parse_orlicz_fn(const std::string& text, int line_no);
std::string dump_orlicz_fn(const OrliczFnSpec& spec);

}  // namespace roundness::spaces
