#include "doctest.h"

#include "partlog/bounds.hpp"
#include "partlog/diffcalc.hpp"
#include "partlog/hrr.hpp"
#include "partlog/verify.hpp"

#include <cmath>

using namespace partlog;
using namespace partlog::bounds;

namespace {

bool near(const Interval& x, double value, double tol) {
  return x.lo_double() >= value - tol && x.hi_double() <= value + tol;
}

double mid(const Interval& x) { return x.mid_double(); }

bool less(const Interval& a, const Interval& b) { return mpfr_cmp(a.hi(), b.lo()) < 0; }

}  // namespace

TEST_CASE("second derivatives") {
  for (long n : {1L, 2L, 10L, 1000L, 1000000L}) CHECK(f_second_derivative(4, n, 64).is_negative());
  // the oracle value; the rough figure 1.94e-5 is the leading term alone
  CHECK(std::abs(mid(f_second_derivative(1, 100, 128)) - 1.9218202738709675603e-5) < 1e-20);
  CHECK(near(f_second_derivative(1, 100, 64), 1.92e-5, 2e-7));
  CHECK_THROWS_AS(f_second_derivative(5, 10, 64), std::invalid_argument);
  CHECK_THROWS_AS(f_second_derivative(1, 0, 64), std::invalid_argument);
}

TEST_CASE("second difference sits between neighbouring second derivatives") {
  // f1(k) = pi sqrt(24k - 1) / (6k); its second difference around 100
  auto f1 = [](long k) { return hrr::mu(k, 128) / k; };
  const Interval d2 = f1(101) + f1(99) - 2 * f1(100);
  CHECK(less(f_second_derivative(1, 101, 128), d2));
  CHECK(less(d2, f_second_derivative(1, 99, 128)));
}

TEST_CASE("B1, B2 and the envelope") {
  CHECK(near(b1(100, 64), 5.42e-6, 5e-9));
  CHECK(near(b2(100, 64), 1.228e-5, 1e-8));
  CHECK(std::abs(mid(b1(100, 128)) - 5.4231871294313041809e-6) < 1e-21);
  CHECK(std::abs(mid(b2(100, 128)) - 1.2278106737884759014e-5) < 1e-21);
  CHECK(less(b1(40, 64), b2(40, 64)));
  const auto [lo, hi] = sandwich_bounds(77, 64);
  CHECK(less(lo, hi));

  // (5/99) e^{-8.5056} is 1.0218e-5, outside 1.02e-5 +- 1e-8
  CHECK(near(error_envelope(100, 64), 1.0218e-5, 1e-8));
  CHECK(std::abs(mid(error_envelope(100, 128)) - 1.0217950011328226183e-5) < 1e-21);
  CHECK(less(error_envelope(101, 64), error_envelope(100, 64)));

  PartitionTable t;
  CHECK(less(abs(diffcalc::delta2_e_tilde(40, 96, t)), error_envelope(40, 96)));
}

TEST_CASE("C(n)") {
  const Interval c40 = c_lower(40, 64);
  CHECK(c40.is_positive());
  CHECK(near(c40, 1.71e-5, 1e-7));
  CHECK(std::abs(mid(c_lower(40, 128)) - 1.7059531775940841697e-5) < 1e-21);
  CHECK(c_lower(489, 64).is_positive());
  CHECK(c_lower(1000, 64).is_positive());
}

TEST_CASE("D(n)") {
  const Interval d100 = d_lower(100, 64);
  CHECK(d100.is_negative());
  CHECK(near(d100, -1.12e-5, 1e-7));
  CHECK(std::abs(mid(d_lower(100, 128)) + 1.117448676110238326e-5) < 1e-21);
  CHECK(d_lower(5505, 64).is_positive());
  CHECK(std::abs(mid(d_lower(5505, 128)) - 6.4398944531173567601e-10) < 1e-24);
  CHECK(d_lower(1000000, 64).is_positive());
}

TEST_CASE("D(n) changes sign exactly once below 5505") {
  // last negative center is 161; everything above is positive
  for (long n = 2; n <= 5505; ++n) {
    const Interval d = d_lower(n, 96);
    if (n <= 161) {
      CHECK(d.is_negative());
    } else {
      CHECK(d.is_positive());
    }
  }
}

TEST_CASE("reference upper bounds") {
  CHECK(near(thm32_upper(2, 64), 0.25378, 1e-5));
  CHECK(std::abs(mid(thm32_upper(2, 128)) - 0.25378000395200787593) < 1e-17);

  PartitionTable t;
  auto minus_d2 = [&](long n) { return -diffcalc::delta_at(diffcalc::LogKind::log_p, 2, n, 128, t); };
  CHECK(less(minus_d2(5000), cwx_upper(5000, 128)));
  CHECK(less(minus_d2(50), dp_upper(50, 128)));

  const ReferenceBounds r = reference_bounds(300, 64);
  CHECK(r.dp_upper.overlaps(dp_upper(300, 64)));
  CHECK(r.cwx_upper.overlaps(cwx_upper(300, 64)));
  CHECK(r.thm32_upper.overlaps(thm32_upper(300, 64)));
}

TEST_CASE("sandwich and envelope on 40..5000") {
  PartitionTable t;
  verify::VerifyOptions opts;
  const auto sandwich = verify::verify_theorem(verify::TheoremId::lemma22_sandwich, 40, 5000, opts, t);
  CHECK(sandwich.status == verify::Status::verified);
  const auto env = verify::verify_theorem(verify::TheoremId::lemma23_error, 40, 5000, opts, t);
  CHECK(env.status == verify::Status::verified);
}

TEST_CASE("C(n) > 0 on 40..10000") {
  PartitionTable t;
  const auto r = verify::verify_theorem(verify::TheoremId::c_positive, 40, 10000, {}, t);
  CHECK(r.status == verify::Status::verified);
  CHECK(t.max_n() < 40);
}

TEST_CASE("bracket (n-1)^{5/2} B_i(n) approaches alpha") {
  const Interval alpha = iv_const(Constant::alpha, 128);
  double prev1 = INFINITY;
  double prev2 = INFINITY;
  for (long n : {1000L, 10000L, 100000L, 1000000L}) {
    const Interval s = pow5_2(Interval(n - 1, 128));
    const double dev1 = abs(s * b1(n, 128) - alpha).hi_double();
    const double dev2 = abs(s * b2(n, 128) - alpha).hi_double();
    CHECK(dev1 < prev1);
    CHECK(dev2 < prev2);
    prev1 = dev1;
    prev2 = dev2;
  }
}

TEST_CASE("bundle") {
  const BoundEvaluation e = evaluate_bounds(100, 64);
  CHECK(e.n == 100);
  CHECK(e.b1.overlaps(b1(100, 64)));
  CHECK(e.d_val.is_negative());
  CHECK(e.c_val.is_positive());
  CHECK_THROWS_AS(evaluate_bounds(1, 64), std::invalid_argument);
}
