#pragma once

#include <vector>

namespace mtsp {

// k-th decile (k in 1..9) of a non-empty sample, lower empirical rule:
// sort ascending, take the element at index ceil(k*len/10) - 1.  No
// interpolation, so results are reproducible bit for bit.
double decile(std::vector<double> values, int k);

struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;   // smallest point >= q1 - 1.5*IQR
  double whisker_high = 0.0;  // largest point <= q3 + 1.5*IQR
};

// Five-number summary with 1.5*IQR whiskers, quartiles by the same lower
// empirical rule as decile().
BoxStats boxplot(std::vector<double> values);

}  // namespace mtsp
