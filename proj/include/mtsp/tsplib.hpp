#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "mtsp/geometry.hpp"

namespace mtsp {

struct TsplibError : std::runtime_error {
  TsplibError(int line_number, const std::string& what_arg)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what_arg),
        line(line_number) {}
  int line;
};

// Reads a TSPLIB-style node coordinate file.  Header keys are optional: a
// bare NODE_COORD_SECTION body ("id x y" per line, 1-based ids) parses
// too.  If EDGE_WEIGHT_TYPE is present it must be EUC_2D.  Cities are
// re-indexed from 0 in file order; duplicate ids are rejected.
CityList parse_tsplib(std::istream& in);
CityList parse_tsplib(const std::string& text);
CityList parse_tsplib_file(const std::string& path);

}  // namespace mtsp
