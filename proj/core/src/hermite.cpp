#include "chaosint/hermite.hpp"

#include <cmath>

namespace chaosint {

double hermite(unsigned n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (unsigned k = 1; k < n; ++k) {
    const double next = t * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> normalized_hermite_table(unsigned n, double t) {
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = t;
  for (unsigned k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    h[k + 1] = (t * h[k] - std::sqrt(kk) * h[k - 1]) / std::sqrt(kk + 1.0);
  }
  return h;
}

}  // namespace chaosint
