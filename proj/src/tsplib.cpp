#include "mtsp/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace mtsp {

static std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

static bool parse_node_line(const std::string& line, long long& id, double& x, double& y) {
  std::istringstream ss(line);
  std::string a, b, c, extra;
  if (!(ss >> a >> b >> c)) return false;
  if (ss >> extra) return false;
  std::size_t pos = 0;
  try {
    id = std::stoll(a, &pos);
    if (pos != a.size()) return false;
    x = std::stod(b, &pos);
    if (pos != b.size()) return false;
    y = std::stod(c, &pos);
    if (pos != c.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

CityList parse_tsplib(std::istream& in) {
  CityList cities;
  std::unordered_set<long long> seen;
  std::string raw;
  int line_no = 0;
  bool in_body = false;
  bool body_done = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "EOF") {
      body_done = true;
      continue;
    }
    if (body_done) throw TsplibError(line_no, "content after EOF marker");

    if (!in_body) {
      if (line == "NODE_COORD_SECTION") {
        in_body = true;
        continue;
      }
      // Header "KEY: value" or "KEY : value".  A line that already looks
      // like a node entry starts a bare body with no header.
      long long id;
      double x, y;
      if (parse_node_line(line, id, x, y)) {
        in_body = true;
      } else {
        auto colon = line.find(':');
        if (colon == std::string::npos)
          throw TsplibError(line_no, "unrecognised header line: " + line);
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        if (key == "EDGE_WEIGHT_TYPE" && value != "EUC_2D")
          throw TsplibError(line_no, "unsupported EDGE_WEIGHT_TYPE: " + value);
        continue;
      }
    }

    long long id;
    double x, y;
    if (!parse_node_line(line, id, x, y))
      throw TsplibError(line_no, "malformed node entry: " + line);
    if (!seen.insert(id).second)
      throw TsplibError(line_no, "duplicate city id " + std::to_string(id));
    cities.push_back(City{static_cast<int>(cities.size()), x, y});
  }
  return cities;
}

CityList parse_tsplib(const std::string& text) {
  std::istringstream ss(text);
  return parse_tsplib(ss);
}

CityList parse_tsplib_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return parse_tsplib(f);
}

}  // namespace mtsp
