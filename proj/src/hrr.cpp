#include "partlog/hrr.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace partlog::hrr {

namespace {

constexpr long kGuard = 16;

// e^{mu} turns an absolute error in mu into a relative error about mu times
// larger, and mu < 2^{bit_width(n)}.
long exp_guard(long n) { return kGuard + static_cast<long>(std::bit_width(static_cast<unsigned long>(n))); }

void require_positive(long n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

Interval mu(long n, long bits) {
  require_positive(n, "mu");
  const long work = bits + kGuard;
  return (iv_const(Constant::pi, work) * sqrt(Interval(24 * n - 1, work)) / 6).round_to(bits);
}

Interval log_t_tilde(long n, long bits) {
  require_positive(n, "log_t_tilde");
  const long work = bits + kGuard;
  const Interval m = mu(n, work);
  const Interval d = iv_const(Constant::d, work);
  return (log(d) - 2 * log(m) + log(1 - 1 / m) + m).round_to(bits);
}

Interval t_tilde(long n, long bits) {
  require_positive(n, "t_tilde");
  const long work = bits + exp_guard(n);
  const Interval m = mu(n, work);
  const Interval d = iv_const(Constant::d, work);
  return (d / (m * m) * (1 - 1 / m) * exp(m)).round_to(bits);
}

Interval t_two_term(long n, long bits) {
  require_positive(n, "t_two_term");
  const long work = bits + exp_guard(n);
  const Interval m = mu(n, work);
  const Interval d = iv_const(Constant::d, work);
  Interval second = exp(m / 2) / sqrt(Interval(2L, work));
  if (n % 2 != 0) second = -second;
  return (d / (m * m) * ((1 - 1 / m) * exp(m) + second)).round_to(bits);
}

Interval lehmer_r2_bound(long n, int terms, long bits, LehmerForm form) {
  require_positive(n, "lehmer_r2_bound");
  if (terms != 1 && terms != 2) {
    throw std::invalid_argument("lehmer_r2_bound: only N = 1 or N = 2 is supported");
  }
  const long work = bits + kGuard;
  const Interval m = mu(n, work);
  if (form == LehmerForm::simplified) {
    if (terms != 2) throw std::invalid_argument("lehmer_r2_bound: simplified form needs N = 2");
    return (4 * (1 + 4 / pow(m, 3) * exp(m / 2))).round_to(bits);
  }
  const Interval pi = iv_const(Constant::pi, work);
  const Interval big_n(static_cast<long>(terms), work);
  // N^{-2/3} = 1 / cbrt(N^2)
  const Interval n_pow = 1 / nth_root(big_n * big_n, 3);
  const Interval ratio = big_n / m;
  const Interval bracket =
      pow(ratio, 3) * sinh(m / static_cast<long>(terms)) + Interval(mpq_class(1, 6), work) - ratio * ratio;
  return (pi * pi * n_pow / sqrt(Interval(3L, work)) * bracket).round_to(bits);
}

Interval r_tilde_majorant(long n, long bits) {
  require_positive(n, "r_tilde_majorant");
  const long work = bits + kGuard;
  const Interval m = mu(n, work);
  return (5 + 9 / (m * m) * exp(m / 2)).round_to(bits);
}

Interval y_tilde(long n, long bits, PartitionTable& table) {
  require_positive(n, "y_tilde");
  // T~ carries a relative error near mu * 2^-work; y~ is about e^{-mu/2}, so
  // the subtraction loses roughly that many bits.
  const long work = bits + kGuard;
  const Interval t = t_tilde(n, work);
  const Interval p(table.value(static_cast<std::size_t>(n)), work);
  return ((p - t) / t).round_to(bits);
}

Interval e_tilde(long n, long bits, PartitionTable& table) {
  const Interval one_plus_y = 1 + y_tilde(n, bits, table);
  if (!one_plus_y.is_positive()) {
    throw DomainError("e_tilde: 1 + y~ not separated from zero at n=" + std::to_string(n));
  }
  return log(one_plus_y) / n;
}

HrrDecomposition hrr_residuals(long n, long bits, PartitionTable& table) {
  require_positive(n, "hrr_residuals");
  HrrDecomposition out;
  out.n = n;
  out.mu = mu(n, bits);
  out.t_tilde = t_tilde(n, bits);
  out.t_two_term = t_two_term(n, bits);
  out.lehmer_bound = lehmer_r2_bound(n, 2, bits, LehmerForm::general);
  out.y_tilde = y_tilde(n, bits, table);
  out.e_tilde = e_tilde(n, bits, table);
  out.r_tilde_majorant = r_tilde_majorant(n, bits);
  return out;
}

}  // namespace partlog::hrr
