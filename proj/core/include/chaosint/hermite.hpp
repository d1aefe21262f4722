#pragma once

#include <vector>

namespace chaosint {

/// Probabilists' Hermite polynomial H_n(t), leading coefficient one, via
/// H_{n+1} = t H_n - n H_{n-1}.
double hermite(unsigned n, double t);

/// Values h_0(t), ..., h_n(t) of the normalized polynomials h_j = H_j / sqrt(j!).
/// The normalized recurrence avoids the factorial growth of H_j.
std::vector<double> normalized_hermite_table(unsigned n, double t);

}  // namespace chaosint
