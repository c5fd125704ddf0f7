#include "partlog/bounds.hpp"

#include "partlog/hrr.hpp"

#include <stdexcept>
#include <string>

namespace partlog::bounds {

namespace {

constexpr long kGuard = 16;

void require_at_least(long n, long min, const char* what) {
  if (n < min) {
    throw std::invalid_argument(std::string(what) + ": n must be >= " + std::to_string(min));
  }
}

// Shorthands evaluated at a fixed working precision.
struct Terms {
  long work;
  Interval pi;

  explicit Terms(long bits) : work(bits + kGuard), pi(iv_const(Constant::pi, bits + kGuard)) {}

  Interval num(long v) const { return Interval(v, work); }
  Interval mu(long n) const { return hrr::mu(n, work); }
  Interval log_d() const { return log(iv_const(Constant::d, work)); }
};

}  // namespace

Interval f_second_derivative(int i, long n, long bits) {
  require_at_least(n, 1, "f_second_derivative");
  const Terms t(bits);
  const Interval nn = t.num(n);
  const Interval s = t.num(24 * n - 1);   // 24n - 1
  const Interval s32 = pow3_2(s);
  switch (i) {
    case 1:
      return (72 * t.pi / (nn * s32) - 12 * t.pi / (pow(nn, 2) * s32) + t.pi / (3 * pow(nn, 3) * s32))
          .round_to(bits);
    case 2:
      return (-6 * log(t.mu(n)) / pow(nn, 3) + 72 / (s * pow(nn, 2)) + 864 / (nn * s * s))
          .round_to(bits);
    case 3: {
      const Interval m1 = t.mu(n) - 1;
      return (-4 * t.pi * t.pi / (m1 * m1 * s * nn) + 2 * log(m1) / pow(nn, 3) -
              4 * t.pi / (m1 * sqrt(s) * pow(nn, 2)) - 24 * t.pi / (m1 * s32 * nn))
          .round_to(bits);
    }
    case 4:
      return (2 * t.log_d() / pow(nn, 3)).round_to(bits);
    default:
      throw std::invalid_argument("f_second_derivative: index must be 1..4, got " + std::to_string(i));
  }
}

Interval b1(long n, long bits) {
  require_at_least(n, 2, "b1");
  const Terms t(bits);
  return (72 * t.pi / ((n + 1) * pow3_2(t.num(24 * n + 23))) -
          4 * log(t.mu(n - 1)) / pow(t.num(n - 1), 3))
      .round_to(bits);
}

Interval b2(long n, long bits) {
  require_at_least(n, 2, "b2");
  const Terms t(bits);
  return (72 * t.pi / ((n - 1) * pow3_2(t.num(24 * n - 25))) -
          4 * log(t.mu(n + 1)) / pow(t.num(n + 1), 3) + 5 / pow(t.num(n - 1), 3))
      .round_to(bits);
}

std::pair<Interval, Interval> sandwich_bounds(long n, long bits) { return {b1(n, bits), b2(n, bits)}; }

Interval error_envelope(long n, long bits) {
  require_at_least(n, 2, "error_envelope");
  const Terms t(bits);
  return (5 / t.num(n - 1) * exp(-(t.pi * sqrt(t.num(24 * n - 25)) / 18))).round_to(bits);
}

Interval c_lower(long n, long bits) {
  require_at_least(n, 2, "c_lower");
  const Terms t(bits);
  const Interval nm1 = t.num(n - 1);
  return (2 * (1 + t.log_d()) / pow(nm1, 3) -
          12 * t.pi / (pow(t.num(n + 1), 2) * pow3_2(t.num(24 * n + 23))) -
          12 * log(t.mu(n + 1) - 1) / pow(nm1, 4))
      .round_to(bits);
}

Interval d_lower(long n, long bits) {
  require_at_least(n, 2, "d_lower");
  const Terms t(bits);
  const Interval nm1 = t.num(n - 1);
  const Interval cube = pow(nm1, 3);
  return (b1(n, t.work) - 2 * log(nm1) / cube + 3 / cube - error_envelope(n, t.work)).round_to(bits);
}

Interval dp_upper(long n, long bits) {
  require_at_least(n, 2, "dp_upper");
  const Terms t(bits);
  const Interval a = t.num(24 * (n - 1) - 1);
  const Interval a32 = pow3_2(a);
  const Interval pis = t.pi * sqrt(a);
  const Interval tail_exp = exp(-(t.pi / 10 * sqrt(Interval(mpq_class(2 * n, 3), t.work))));
  return (24 * t.pi / a32 + 288 * t.pi * (pis - 3) / (a32 * pow(pis - 6, 2)) -
          864 / pow(t.num(24 * (n + 1) - 1), 2) + 2 * tail_exp)
      .round_to(bits);
}

Interval cwx_upper(long n, long bits) {
  require_at_least(n, 1, "cwx_upper");
  const Terms t(bits);
  const Interval x = 24 * t.pi / pow3_2(t.num(24 * n));
  return (x - x * x).round_to(bits);
}

Interval thm32_upper(long n, long bits) {
  require_at_least(n, 1, "thm32_upper");
  const Terms t(bits);
  const Interval three_pi = 3 * t.pi;
  return (three_pi / (iv_const(Constant::sqrt24, t.work) * pow5_2(t.num(n)) + three_pi)).round_to(bits);
}

ReferenceBounds reference_bounds(long n, long bits) {
  return {dp_upper(n, bits), cwx_upper(n, bits), thm32_upper(n, bits)};
}

BoundEvaluation evaluate_bounds(long n, long bits) {
  BoundEvaluation out;
  out.n = n;
  out.b1 = b1(n, bits);
  out.b2 = b2(n, bits);
  out.e_env = error_envelope(n, bits);
  out.c_val = c_lower(n, bits);
  out.d_val = d_lower(n, bits);
  out.dp_upper = dp_upper(n, bits);
  out.cwx_upper = cwx_upper(n, bits);
  out.thm32_upper = thm32_upper(n, bits);
  return out;
}

}  // namespace partlog::bounds
