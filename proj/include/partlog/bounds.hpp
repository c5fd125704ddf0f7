#pragma once

// Closed-form bound functions, transcribed term by term. Each takes the center
// index n of the second difference it bounds (indices n-1, n, n+1).

#include "partlog/rigor.hpp"

#include <utility>

namespace partlog::bounds {

/// Second derivatives of the four summands of (1/n) log T~(n):
///   f1 = mu/n, f2 = -3 log(mu)/n, f3 = log(mu - 1)/n, f4 = log(d)/n.
Interval f_second_derivative(int i, long n, long bits);

/// B1(n) = 72 pi / ((n+1)(24n+23)^{3/2}) - 4 log(mu(n-1)) / (n-1)^3
Interval b1(long n, long bits);
/// B2(n) = 72 pi / ((n-1)(24n-25)^{3/2}) - 4 log(mu(n+1)) / (n+1)^3 + 5/(n-1)^3
Interval b2(long n, long bits);
std::pair<Interval, Interval> sandwich_bounds(long n, long bits);

/// (5 / (n-1)) e^{-pi sqrt(24n - 25) / 18}
Interval error_envelope(long n, long bits);

/// 2(1 + log d)/(n-1)^3 - 12 pi / ((n+1)^2 (24n+23)^{3/2}) - 12 log(mu(n+1) - 1)/(n-1)^4
Interval c_lower(long n, long bits);

/// B1(n) - 2 log(n-1)/(n-1)^3 + 3/(n-1)^3 - error_envelope(n)
Interval d_lower(long n, long bits);

/// Upper bound of -Delta^2 log p(n-1) valid from n = 50 (two-term form).
Interval dp_upper(long n, long bits);
/// 24 pi/(24n)^{3/2} - (24 pi/(24n)^{3/2})^2, valid from n = 5000.
Interval cwx_upper(long n, long bits);
/// 3 pi / (sqrt 24 n^{5/2} + 3 pi), valid from n = 2095.
Interval thm32_upper(long n, long bits);

struct ReferenceBounds {
  Interval dp_upper;
  Interval cwx_upper;
  Interval thm32_upper;
};

ReferenceBounds reference_bounds(long n, long bits);

struct BoundEvaluation {
  long n = 0;
  Interval b1;
  Interval b2;
  Interval e_env;
  Interval c_val;
  Interval d_val;
  Interval dp_upper;
  Interval cwx_upper;
  Interval thm32_upper;
};

/// Every bound above at one n >= 2.
BoundEvaluation evaluate_bounds(long n, long bits);

}  // namespace partlog::bounds
