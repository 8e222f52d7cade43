#include "mtsp/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtsp {

namespace {

// Index of the lower empirical quantile num/den on a sample of size len:
// ceil(len * num / den) - 1, in integer arithmetic.
std::size_t quantile_index(std::size_t len, std::size_t num, std::size_t den) {
  return (len * num + den - 1) / den - 1;
}

}  // namespace

double decile(std::vector<double> values, int k) {
  if (values.empty()) throw std::invalid_argument("decile of empty sample");
  if (k < 1 || k > 9) throw std::invalid_argument("decile index out of range");
  std::sort(values.begin(), values.end());
  return values[quantile_index(values.size(), static_cast<std::size_t>(k), 10)];
}

BoxStats boxplot(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("boxplot of empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t len = values.size();
  BoxStats b;
  b.min = values.front();
  b.max = values.back();
  b.q1 = values[quantile_index(len, 1, 4)];
  b.median = values[quantile_index(len, 2, 4)];
  b.q3 = values[quantile_index(len, 3, 4)];
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr;
  const double hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.max;
  b.whisker_high = b.min;
  for (double v : values) {
    if (v >= lo && v < b.whisker_low) b.whisker_low = v;
    if (v <= hi && v > b.whisker_high) b.whisker_high = v;
  }
  return b;
}

}  // namespace mtsp
