#pragma once

// Second and third differences of log-quantities of p(n), and the scaled
// limit tables built from them.
//
// Every difference is parameterized by its center n:
//   order 2:  f(n+1) + f(n-1) - 2 f(n)                 (= Delta^2 f(n-1))
//   order 3:  f(n+2) - 3 f(n+1) + 3 f(n) - f(n-1)      (= Delta^3 f(n-1))

#include "partlog/partitions.hpp"
#include "partlog/rigor.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace partlog::diffcalc {

enum class LogKind {
  log_p,           // log p(k)
  log_r,           // (log p(k) - log k) / k
  nthroot_log_p,   // log p(k) / k
  nthroot_log_t,   // log T~(k) / k
};

LogKind log_kind_from_name(std::string_view name);
std::string_view to_string(LogKind kind);

/// The quantity itself at index k >= 1.
Interval log_quantity(LogKind kind, long k, long bits, PartitionTable& table);

/// Difference of the given order around center n at a fixed precision.
Interval delta_at(LogKind kind, int order, long n, long bits, PartitionTable& table);

struct DeltaResult {
  Interval value;
  long bits = 0;
  /// False when max_bits was reached before the width dropped below
  /// n^{-5/2}/8.
  bool width_ok = false;
};

/// delta_at with the precision escalated along `policy` until the enclosure is
/// narrower than n^{-5/2}/8.
DeltaResult delta(LogKind kind, int order, long n, const PrecisionPolicy& policy,
                  PartitionTable& table);

/// Second differences around center n of B~(k) = (1/k) log T~(k) - (1/k) log k
/// and of E~(k) = (1/k) log(1 + y~_k) with y~ from the exact residual.
Interval delta2_b_tilde(long n, long bits);
Interval delta2_e_tilde(long n, long bits, PartitionTable& table);
/// Second difference of (1/k) log k around center n.
Interval delta2_log_k_over_k(long n, long bits);

enum class LimitKind {
  pi24,    // -n^{3/2} Delta^2 log p(n-1)           -> pi / sqrt 24
  alpha,   //  n^{5/2} Delta^2 (1/n) log p(n)       -> 3 pi / sqrt 24
};

LimitKind limit_kind_from_name(std::string_view name);
std::string_view to_string(LimitKind kind);

struct LimitTableRow {
  long n = 0;
  Interval value;
  Interval target;
  /// Upper bound of max |x - target| over x in the enclosure, rounded up.
  double abs_dev = 0.0;
};

/// Rows for each n in `grid` (entries >= 2, ascending). The alpha rows use the
/// forward difference at n, i.e. center n + 1. Rows are computed on up to
/// `jobs` threads after the table is extended to the largest index needed.
std::vector<LimitTableRow> limit_table(LimitKind kind, std::span<const long> grid, long bits,
                                       PartitionTable& table, int jobs = 1);

/// The limit constant for a table.
Interval limit_target(LimitKind kind, long bits);

/// Parses "a,b,c" or "geometric:a:b:f" (a, a f, a f^2, ... <= b, rounded to
/// integers, deduplicated).
std::vector<long> parse_grid(std::string_view spec);

}  // namespace partlog::diffcalc
