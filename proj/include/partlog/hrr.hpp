#pragma once

// Two-term (N = 2) Hardy-Ramanujan-Rademacher main terms for p(n), Lehmer's
// majorant of the truncation remainder, and the residuals of p(n) against the
// single dominant term
//
//   T~(n) = d / mu(n)^2 * (1 - 1/mu(n)) * e^{mu(n)},   mu(n) = (pi/6) sqrt(24n - 1).
//
// The residual R~(n) is taken to be p(n) - T~(n) with p(n) exact.

#include "partlog/partitions.hpp"
#include "partlog/rigor.hpp"

namespace partlog::hrr {

Interval mu(long n, long bits);

/// log T~(n) = log d - 2 log mu + log(1 - 1/mu) + mu, without forming e^{mu}.
Interval log_t_tilde(long n, long bits);
Interval t_tilde(long n, long bits);

/// T(n) = d/mu^2 [(1 - 1/mu) e^{mu} + (-1)^n / sqrt 2 * e^{mu/2}]
Interval t_two_term(long n, long bits);

enum class LehmerForm { general, simplified };

/// Majorant of |R_2(n, N)| for N in {1, 2}:
///   general:    (pi^2 N^{-2/3} / sqrt 3) [(N/mu)^3 sinh(mu/N) + 1/6 - (N/mu)^2]
///   simplified: 4 (1 + 4/mu^3 e^{mu/2})            (N = 2 only)
Interval lehmer_r2_bound(long n, int terms, long bits, LehmerForm form = LehmerForm::general);

/// 5 + 9/mu^2 e^{mu/2}, the majorant of |p(n) - T~(n)|.
Interval r_tilde_majorant(long n, long bits);

struct HrrDecomposition {
  long n = 0;
  Interval mu;
  Interval t_tilde;
  Interval t_two_term;
  Interval lehmer_bound;
  Interval y_tilde;   // (p(n) - T~(n)) / T~(n)
  Interval e_tilde;   // log(1 + y~) / n
  Interval r_tilde_majorant;
};

/// Throws DomainError when 1 + y~ cannot be separated from zero at `bits`.
HrrDecomposition hrr_residuals(long n, long bits, PartitionTable& table);

/// (p(n) - T~(n)) / T~(n)
Interval y_tilde(long n, long bits, PartitionTable& table);
/// log(1 + y~_n) / n
Interval e_tilde(long n, long bits, PartitionTable& table);

}  // namespace partlog::hrr
