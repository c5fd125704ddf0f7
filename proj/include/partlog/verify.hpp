#pragma once

// Theorem-level verifiers.
//
// Statements that are polynomial in p-values are decided on exact integers.
// The rest are decided by certify_sign on an interval enclosure of the
// defining expression. Every statement is a strict inequality "expr > 0" at a
// center n; an exact zero counts as a failure, an enclosure that still
// straddles zero at max_bits counts as indeterminate.

#include "partlog/partitions.hpp"
#include "partlog/rigor.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace partlog::verify {

enum class TheoremId {
  log_concavity,        // p(n)^2 > p(n-1) p(n+1)
  chen,                 // (n+1) p(n-1) p(n+1) > n p(n)^2
  dp_conjecture,        // p(n-1) p(n+1) (1 + pi/(sqrt24 n^{3/2})) > p(n)^2
  r_log_convex,         // Delta^2 log r(n-1) > 0
  nthroot_log_convex,   // Delta^2 (1/(n-1)) log p(n-1) > 0
  ratio_ineq,           // Delta^2 (1/(n-1)) log p(n-1) < log(1 + 3pi/(sqrt24 n^{5/2}))
  delta3_positive,      // p(n+2) p(n)^3 > p(n+1)^3 p(n-1)
  nthroot_decreasing,   // p(n)^{n+1} > p(n+1)^n
  lemma22_sandwich,     // B1(n) < Delta^2 (1/(n-1)) log T~(n-1) < B2(n)
  lemma23_error,        // |Delta^2 E~(n-1)| < (5/(n-1)) e^{-pi sqrt(24n-25)/18}
  c_positive,           // C(n) > 0
  d_positive,           // D(n) > 0
  dp_upper,             // -Delta^2 log p(n-1) < dp_upper(n)
  cwx_upper,            // -Delta^2 log p(n-1) < cwx_upper(n)
  thm32_upper,          // Delta^2 (1/(n-1)) log p(n-1) < 3pi/(sqrt24 n^{5/2} + 3pi)
};

std::string_view to_string(TheoremId id);
/// Accepts the dashed names used on the command line ("r-log-convex", ...).
TheoremId theorem_from_name(std::string_view name);
std::span<const TheoremId> all_theorems();
/// Smallest center n the statement is defined at.
long min_center(TheoremId id);
/// Ids that may be sampled with stride > 1.
bool allows_stride(TheoremId id);
/// False for the closed-form statements (c-positive, d-positive), which never
/// touch p(n).
bool needs_partitions(TheoremId id);

enum class AuxId {
  mu_shift,            // mu(n) - 1 > (2/3) mu(n-2)
  mu_upper,            // mu(n+1) - 1 < (pi/4) sqrt(24n - 24)
  x_series,            // (1-x)^{-3/2} < 1 + 3x/2 + 3x^{3/2}/8, x = i/48000
  log_quarter_power,   // log x < x^{1/4}
  exp_poly,            // e^x > x^6/720
};

std::string_view to_string(AuxId id);
AuxId aux_from_name(std::string_view name);

enum class Status { verified, failed, indeterminate };

std::string_view to_string(Status s);
Status status_from_name(std::string_view name);

struct VerificationReport {
  std::string theorem;
  long from = 0;
  long to = 0;
  Status status = Status::verified;
  std::vector<long> failures;
  std::vector<long> indeterminates;
  long max_bits_used = 0;
  long wall_time_ms = 0;
};

/// JSON object with the snake_case field names above.
std::string to_json(const VerificationReport& report);
/// Throws std::invalid_argument on a malformed document.
VerificationReport report_from_json(std::string_view text);

enum class DiscriminantKind {
  logconc,      // p(n)^2 - p(n-1) p(n+1)
  chen,         // (n+1) p(n-1) p(n+1) - n p(n)^2
  delta3,       // p(n+2) p(n)^3 - p(n+1)^3 p(n-1)
  decreasing,   // p(n)^{n+1} - p(n+1)^n
};

ExactInteger exact_discriminant(DiscriminantKind kind, long n, PartitionTable& table);

/// The same statements decided through interval logarithms of p.
Certified interval_discriminant_sign(DiscriminantKind kind, long n, const PrecisionPolicy& policy,
                                     PartitionTable& table);

/// Sign of "expr > 0" for one theorem at center n. Exact ids report bits = 0.
Certified decide(TheoremId id, long n, const PrecisionPolicy& policy, PartitionTable& table);
Certified decide_aux(AuxId id, long point, const PrecisionPolicy& policy);

struct VerifyOptions {
  PrecisionPolicy policy;
  long stride = 1;
  int jobs = 1;
};

/// from, from + stride, ..., always ending with `to`.
std::vector<long> sample_points(long from, long to, long stride);

VerificationReport verify_theorem(TheoremId id, long from, long to, const VerifyOptions& options,
                                  PartitionTable& table);
/// Explicit, ascending points; the report range is [front, back].
VerificationReport verify_points(TheoremId id, std::span<const long> points,
                                 const VerifyOptions& options, PartitionTable& table);
VerificationReport verify_aux_inequality(AuxId id, long from, long to, const VerifyOptions& options);

}  // namespace partlog::verify
