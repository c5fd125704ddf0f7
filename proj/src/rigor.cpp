#include "partlog/rigor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

namespace partlog {

// ---------------------------------------------------------------------------
// Real

Real::Real(long bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(std::max(bits, 2L)));
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

// ---------------------------------------------------------------------------
// Interval construction and queries

namespace {

void check_finite_order(const Interval& x, const char* what) {
  if (mpfr_nan_p(x.lo()) || mpfr_nan_p(x.hi())) {
    throw DomainError(std::string(what) + ": result is not a number");
  }
}

int default_digits(long bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 2;
}

std::string format(mpfr_srcptr v, char rnd, int digits) {
  char* buf = nullptr;
  std::string fmt = std::string("%.*R") + rnd + "e";
  mpfr_asprintf(&buf, fmt.c_str(), digits - 1, v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

Interval::Interval(long bits) : lo_(bits), hi_(bits) {}

Interval::Interval(long value, long bits) : lo_(bits), hi_(bits) {
  mpfr_set_si(lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(hi_.get(), value, MPFR_RNDU);
}

Interval::Interval(const mpz_class& value, long bits) : lo_(bits), hi_(bits) {
  mpfr_set_z(lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_.get(), value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& value, long bits) : lo_(bits), hi_(bits) {
  mpfr_set_q(lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), value.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::hull(double lo, double hi, long bits) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("Interval::hull: need lo <= hi");
  }
  Interval out(bits);
  mpfr_set_d(out.lo_mut(), lo, MPFR_RNDD);
  mpfr_set_d(out.hi_mut(), hi, MPFR_RNDU);
  return out;
}

Interval Interval::from_double(double value, long bits) { return hull(value, value, bits); }

double Interval::lo_double() const { return mpfr_get_d(lo(), MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi(), MPFR_RNDU); }

double Interval::mid_double() const {
  Real m(bits() + 1);
  mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return mpfr_get_d(m.get(), MPFR_RNDN);
}

double Interval::width_double() const {
  Real w(bits() + 2);
  mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

double Interval::relative_width() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  Real w(bits() + 2);
  Real m(bits() + 2);
  mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
  if (mpfr_sgn(lo()) > 0) {
    mpfr_set(m.get(), lo(), MPFR_RNDD);
  } else {
    mpfr_neg(m.get(), hi(), MPFR_RNDD);
  }
  mpfr_div(w.get(), w.get(), m.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::is_positive() const { return mpfr_sgn(lo()) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi()) < 0; }
bool Interval::contains_zero() const { return mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0; }

bool Interval::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo(), value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi(), value.get_mpq_t()) >= 0;
}

bool Interval::contains(double value) const {
  return mpfr_cmp_d(lo(), value) <= 0 && mpfr_cmp_d(hi(), value) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo(), inner.lo()) && mpfr_greaterequal_p(hi(), inner.hi());
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo(), other.hi()) && mpfr_lessequal_p(other.lo(), hi());
}

Interval Interval::round_to(long target_bits) const {
  Interval out(target_bits);
  mpfr_set(out.lo_mut(), lo(), MPFR_RNDD);
  mpfr_set(out.hi_mut(), hi(), MPFR_RNDU);
  return out;
}

std::string Interval::str() const { return "[" + lo_str() + ", " + hi_str() + "]"; }

std::string Interval::lo_str(int digits) const {
  return format(lo(), 'D', digits > 0 ? digits : default_digits(bits()));
}

std::string Interval::hi_str(int digits) const {
  return format(hi(), 'U', digits > 0 ? digits : default_digits(bits()));
}

std::string Interval::mid_str(int digits) const {
  Real m(bits() + 1);
  mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return format(m.get(), 'N', digits);
}

// ---------------------------------------------------------------------------
// Arithmetic. Each kernel writes an outward-rounded result at `bits`.

namespace {

long wider(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

using BinaryKernel = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Extremes of a function that is monotone in each argument over the box lie at
// the four corners.
Interval corners(const Interval& a, const Interval& b, BinaryKernel f, long bits,
                 const char* what) {
  Interval out(bits);
  Real t(bits);
  mpfr_srcptr as[2] = {a.lo(), a.hi()};
  mpfr_srcptr bs[2] = {b.lo(), b.hi()};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      f(t.get(), x, y, MPFR_RNDD);
      if (mpfr_nan_p(t.get())) throw DomainError(std::string(what) + ": undefined corner");
      if (first || mpfr_less_p(t.get(), out.lo())) mpfr_set(out.lo_mut(), t.get(), MPFR_RNDD);
      f(t.get(), x, y, MPFR_RNDU);
      if (mpfr_nan_p(t.get())) throw DomainError(std::string(what) + ": undefined corner");
      if (first || mpfr_greater_p(t.get(), out.hi())) mpfr_set(out.hi_mut(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Interval add_at(const Interval& a, const Interval& b, long bits) {
  Interval out(bits);
  mpfr_add(out.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(out.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  check_finite_order(out, "add");
  return out;
}

Interval sub_at(const Interval& a, const Interval& b, long bits) {
  Interval out(bits);
  mpfr_sub(out.lo_mut(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(out.hi_mut(), a.hi(), b.lo(), MPFR_RNDU);
  check_finite_order(out, "sub");
  return out;
}

Interval mul_at(const Interval& a, const Interval& b, long bits) {
  return corners(a, b, mpfr_mul, bits, "mul");
}

Interval div_at(const Interval& a, const Interval& b, long bits) {
  if (b.contains_zero()) throw DomainError("div: denominator interval contains zero");
  return corners(a, b, mpfr_div, bits, "div");
}

Interval sqrt_at(const Interval& x, long bits) {
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("sqrt: argument interval reaches below zero");
  Interval out(bits);
  mpfr_sqrt(out.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_sqrt(out.hi_mut(), x.hi(), MPFR_RNDU);
  return out;
}

Interval nth_root_at(const Interval& x, unsigned long k, long bits) {
  if (k == 0) throw DomainError("nth_root: degree must be positive");
  if (k % 2 == 0 && mpfr_sgn(x.lo()) < 0) {
    throw DomainError("nth_root: even root of an interval reaching below zero");
  }
  Interval out(bits);
  mpfr_rootn_ui(out.lo_mut(), x.lo(), k, MPFR_RNDD);
  mpfr_rootn_ui(out.hi_mut(), x.hi(), k, MPFR_RNDU);
  check_finite_order(out, "nth_root");
  return out;
}

Interval pow_at(const Interval& x, long e, long bits) {
  if (e == 0) return Interval(1L, bits);
  if (e < 0 && x.contains_zero()) throw DomainError("int_pow: negative power of an interval containing zero");
  if (e > 0 && e % 2 == 0 && mpfr_sgn(x.lo()) < 0 && mpfr_sgn(x.hi()) > 0) {
    Interval out(bits);
    Real mag(x.bits());
    mpfr_abs(mag.get(), x.lo(), MPFR_RNDU);
    if (mpfr_greater_p(x.hi(), mag.get())) mpfr_set(mag.get(), x.hi(), MPFR_RNDU);
    mpfr_set_zero(out.lo_mut(), 1);
    mpfr_pow_si(out.hi_mut(), mag.get(), e, MPFR_RNDU);
    return out;
  }
  // Monotone on a sign-definite interval (or odd power): endpoints suffice.
  Interval out(bits);
  Real t(bits);
  mpfr_pow_si(out.lo_mut(), x.lo(), e, MPFR_RNDD);
  mpfr_pow_si(t.get(), x.hi(), e, MPFR_RNDD);
  if (mpfr_less_p(t.get(), out.lo())) mpfr_set(out.lo_mut(), t.get(), MPFR_RNDD);
  mpfr_pow_si(out.hi_mut(), x.lo(), e, MPFR_RNDU);
  mpfr_pow_si(t.get(), x.hi(), e, MPFR_RNDU);
  if (mpfr_greater_p(t.get(), out.hi())) mpfr_set(out.hi_mut(), t.get(), MPFR_RNDU);
  check_finite_order(out, "int_pow");
  return out;
}

Interval exp_at(const Interval& x, long bits) {
  Interval out(bits);
  mpfr_exp(out.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_exp(out.hi_mut(), x.hi(), MPFR_RNDU);
  check_finite_order(out, "exp");
  return out;
}

Interval log_at(const Interval& x, long bits) {
  if (mpfr_sgn(x.lo()) <= 0) throw DomainError("log: argument interval is not strictly positive");
  Interval out(bits);
  mpfr_log(out.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_log(out.hi_mut(), x.hi(), MPFR_RNDU);
  return out;
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return add_at(a, b, wider(a, b)); }
Interval operator-(const Interval& a, const Interval& b) { return sub_at(a, b, wider(a, b)); }
Interval operator*(const Interval& a, const Interval& b) { return mul_at(a, b, wider(a, b)); }
Interval operator/(const Interval& a, const Interval& b) { return div_at(a, b, wider(a, b)); }

Interval operator-(const Interval& a) {
  Interval out(a.bits());
  mpfr_neg(out.lo_mut(), a.hi(), MPFR_RNDD);
  mpfr_neg(out.hi_mut(), a.lo(), MPFR_RNDU);
  return out;
}

Interval operator+(const Interval& a, long b) {
  Interval out(a.bits());
  mpfr_add_si(out.lo_mut(), a.lo(), b, MPFR_RNDD);
  mpfr_add_si(out.hi_mut(), a.hi(), b, MPFR_RNDU);
  return out;
}

Interval operator+(long a, const Interval& b) { return b + a; }

Interval operator-(const Interval& a, long b) {
  Interval out(a.bits());
  mpfr_sub_si(out.lo_mut(), a.lo(), b, MPFR_RNDD);
  mpfr_sub_si(out.hi_mut(), a.hi(), b, MPFR_RNDU);
  return out;
}

Interval operator-(long a, const Interval& b) {
  Interval out(b.bits());
  mpfr_si_sub(out.lo_mut(), a, b.hi(), MPFR_RNDD);
  mpfr_si_sub(out.hi_mut(), a, b.lo(), MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, long b) {
  Interval out(a.bits());
  if (b >= 0) {
    mpfr_mul_si(out.lo_mut(), a.lo(), b, MPFR_RNDD);
    mpfr_mul_si(out.hi_mut(), a.hi(), b, MPFR_RNDU);
  } else {
    mpfr_mul_si(out.lo_mut(), a.hi(), b, MPFR_RNDD);
    mpfr_mul_si(out.hi_mut(), a.lo(), b, MPFR_RNDU);
  }
  check_finite_order(out, "mul");
  return out;
}

Interval operator*(long a, const Interval& b) { return b * a; }

Interval operator/(const Interval& a, long b) {
  if (b == 0) throw DomainError("div: division by zero");
  Interval out(a.bits());
  if (b > 0) {
    mpfr_div_si(out.lo_mut(), a.lo(), b, MPFR_RNDD);
    mpfr_div_si(out.hi_mut(), a.hi(), b, MPFR_RNDU);
  } else {
    mpfr_div_si(out.lo_mut(), a.hi(), b, MPFR_RNDD);
    mpfr_div_si(out.hi_mut(), a.lo(), b, MPFR_RNDU);
  }
  return out;
}

Interval operator/(long a, const Interval& b) { return div_at(Interval(a, b.bits()), b, b.bits()); }

Interval sqrt(const Interval& x) { return sqrt_at(x, x.bits()); }
Interval nth_root(const Interval& x, unsigned long k) { return nth_root_at(x, k, x.bits()); }
Interval pow(const Interval& x, long exponent) { return pow_at(x, exponent, x.bits()); }
Interval exp(const Interval& x) { return exp_at(x, x.bits()); }
Interval log(const Interval& x) { return log_at(x, x.bits()); }

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo()) >= 0) return x;
  if (mpfr_sgn(x.hi()) <= 0) return -x;
  Interval out(x.bits());
  mpfr_set_zero(out.lo_mut(), 1);
  mpfr_neg(out.hi_mut(), x.lo(), MPFR_RNDU);
  if (mpfr_greater_p(x.hi(), out.hi())) mpfr_set(out.hi_mut(), x.hi(), MPFR_RNDU);
  return out;
}

Interval sinh(const Interval& x) { return (exp(x) - exp(-x)) / 2; }

Interval pow3_2(const Interval& x) { return x * sqrt(x); }

Interval pow5_2(const Interval& x) { return x * x * sqrt(x); }

Interval hull(const Interval& a, const Interval& b) {
  Interval out(wider(a, b));
  mpfr_min(out.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(out.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  return out;
}

// ---------------------------------------------------------------------------
// Constants

Constant constant_from_name(std::string_view name) {
  if (name == "pi") return Constant::pi;
  if (name == "d") return Constant::d;
  if (name == "alpha") return Constant::alpha;
  if (name == "sqrt24") return Constant::sqrt24;
  throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
}

namespace {

constexpr long kGuardBits = 16;

Interval compute_constant(Constant c, long bits) {
  const long work = bits + kGuardBits;
  Interval pi(work);
  mpfr_const_pi(pi.lo_mut(), MPFR_RNDD);
  mpfr_const_pi(pi.hi_mut(), MPFR_RNDU);
  switch (c) {
    case Constant::pi:
      return pi.round_to(bits);
    case Constant::sqrt24:
      return sqrt(Interval(24L, work)).round_to(bits);
    case Constant::d:
      return (pi * pi / (6 * sqrt(Interval(3L, work)))).round_to(bits);
    case Constant::alpha:
      return (3 * pi / sqrt(Interval(24L, work))).round_to(bits);
  }
  throw std::invalid_argument("unknown constant");
}

}  // namespace

Interval iv_const(Constant c, long bits) {
  if (bits < 2) throw std::invalid_argument("iv_const: need at least 2 bits");
  static std::mutex mutex;
  static std::map<std::pair<int, long>, Interval> memo;
  const auto key = std::make_pair(static_cast<int>(c), bits);
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  Interval value = compute_constant(c, bits);
  std::lock_guard lock(mutex);
  return memo.try_emplace(key, std::move(value)).first->second;
}

Interval iv_const(std::string_view name, long bits) { return iv_const(constant_from_name(name), bits); }

// ---------------------------------------------------------------------------

Interval iv_apply(Op op, std::span<const Interval> args, long int_arg, long bits) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw std::invalid_argument("iv_apply: wrong number of arguments");
  };
  switch (op) {
    case Op::add: need(2); return add_at(args[0], args[1], bits);
    case Op::sub: need(2); return sub_at(args[0], args[1], bits);
    case Op::mul: need(2); return mul_at(args[0], args[1], bits);
    case Op::div: need(2); return div_at(args[0], args[1], bits);
    case Op::sqrt: need(1); return sqrt_at(args[0], bits);
    case Op::nth_root:
      need(1);
      if (int_arg <= 0) throw DomainError("nth_root: degree must be positive");
      return nth_root_at(args[0], static_cast<unsigned long>(int_arg), bits);
    case Op::int_pow: need(1); return pow_at(args[0], int_arg, bits);
    case Op::exp: need(1); return exp_at(args[0], bits);
    case Op::log: need(1); return log_at(args[0], bits);
  }
  throw std::invalid_argument("iv_apply: unknown op");
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::positive: return "positive";
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::indeterminate: return "indeterminate";
  }
  return "?";
}

void PrecisionPolicy::validate() const {
  if (initial_bits < 2) throw std::invalid_argument("precision policy: initial_bits must be >= 2");
  if (max_bits < initial_bits) throw std::invalid_argument("precision policy: initial_bits > max_bits");
  if (escalation_factor < 2) throw std::invalid_argument("precision policy: escalation_factor must be >= 2");
}

Certified certify_sign(const std::function<Interval(long)>& expr, const PrecisionPolicy& policy) {
  policy.validate();
  long bits = policy.initial_bits;
  for (;;) {
    const Interval value = expr(bits);
    if (value.is_positive()) return {Sign::positive, bits};
    if (value.is_negative()) return {Sign::negative, bits};
    if (bits >= policy.max_bits) return {Sign::indeterminate, bits};
    bits = std::min(bits * policy.escalation_factor, policy.max_bits);
  }
}

}  // namespace partlog
