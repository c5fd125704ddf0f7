#pragma once

// Directed-rounding interval arithmetic on top of MPFR.
//
// Every Interval carries a lower endpoint rounded toward -inf and an upper
// endpoint rounded toward +inf, so the exact value of the expression that
// produced it always lies inside [lo, hi]. Results take the working precision
// of their widest operand; integers enter exactly.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace partlog {

/// Raised when an operation is applied to an interval that touches a
/// singularity of the operation (log of a non-positive value, division by an
/// interval containing zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thin RAII owner of an mpfr_t.
class Real {
 public:
  explicit Real(long bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }

 private:
  mpfr_t value_;
};

class Interval {
 public:
  /// [0, 0] at the given precision.
  explicit Interval(long bits = 53);
  Interval(long value, long bits);
  Interval(const mpz_class& value, long bits);
  Interval(const mpq_class& value, long bits);

  /// [lo, hi] from two doubles; throws if lo > hi or either is NaN.
  static Interval hull(double lo, double hi, long bits);
  static Interval from_double(double value, long bits);

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }
  long bits() const { return lo_.bits(); }

  double lo_double() const;   // rounded down
  double hi_double() const;   // rounded up
  double mid_double() const;
  /// Width rounded up to a double.
  double width_double() const;
  /// Width relative to the smaller endpoint magnitude, rounded up.
  double relative_width() const;

  bool is_positive() const;   // lo > 0
  bool is_negative() const;   // hi < 0
  bool contains_zero() const;
  bool contains(const mpq_class& value) const;
  bool contains(double value) const;
  bool contains(const Interval& inner) const;
  bool overlaps(const Interval& other) const;

  /// Outward re-rounding to a (usually smaller) precision.
  Interval round_to(long bits) const;

  /// "[lo, hi]" with lo printed rounded down and hi rounded up, using enough
  /// significant digits to resolve the current precision.
  std::string str() const;
  std::string lo_str(int digits = 0) const;
  std::string hi_str(int digits = 0) const;
  std::string mid_str(int digits = 20) const;

  mpfr_ptr lo_mut() { return lo_.get(); }
  mpfr_ptr hi_mut() { return hi_.get(); }

 private:
  Real lo_;
  Real hi_;
};

// Binary operations. The result precision is the larger operand precision.
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval operator+(const Interval& a, long b);
Interval operator+(long a, const Interval& b);
Interval operator-(const Interval& a, long b);
Interval operator-(long a, const Interval& b);
Interval operator*(const Interval& a, long b);
Interval operator*(long a, const Interval& b);
Interval operator/(const Interval& a, long b);
Interval operator/(long a, const Interval& b);

Interval sqrt(const Interval& x);
Interval nth_root(const Interval& x, unsigned long k);
Interval pow(const Interval& x, long exponent);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval abs(const Interval& x);
/// (e^x - e^-x) / 2
Interval sinh(const Interval& x);
/// x^{3/2} for x >= 0.
Interval pow3_2(const Interval& x);
/// x^{5/2} for x >= 0.
Interval pow5_2(const Interval& x);

/// Smallest interval containing both operands.
Interval hull(const Interval& a, const Interval& b);

enum class Constant { pi, d, alpha, sqrt24 };

/// Parses "pi", "d", "alpha" or "sqrt24"; throws std::invalid_argument.
Constant constant_from_name(std::string_view name);

/// Memoized enclosure of a named constant, width at most a couple of ulps.
///   d     = pi^2 / (6 sqrt 3)
///   alpha = 3 pi / sqrt 24
Interval iv_const(Constant c, long bits);
Interval iv_const(std::string_view name, long bits);

enum class Op { add, sub, mul, div, sqrt, nth_root, int_pow, exp, log };

/// Generic dispatcher over the elementary operations. `int_arg` is the root
/// degree for nth_root and the exponent for int_pow; results are rounded
/// outward to `bits`.
Interval iv_apply(Op op, std::span<const Interval> args, long int_arg, long bits);

enum class Sign { positive, negative, zero, indeterminate };

std::string_view to_string(Sign s);

struct PrecisionPolicy {
  long initial_bits = 96;
  long max_bits = 16384;
  long escalation_factor = 2;

  /// Throws std::invalid_argument when the policy is malformed.
  void validate() const;
};

struct Certified {
  Sign sign = Sign::indeterminate;
  long bits = 0;
};

/// Evaluates `expr` at the policy's precision schedule until the enclosure
/// excludes zero. Never returns Sign::zero.
Certified certify_sign(const std::function<Interval(long)>& expr,
                       const PrecisionPolicy& policy);

}  // namespace partlog
