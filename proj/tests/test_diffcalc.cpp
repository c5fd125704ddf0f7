#include "doctest.h"

#include "support/oracles.hpp"
#include "support/properties.hpp"

#include "partlog/bounds.hpp"
#include "partlog/diffcalc.hpp"

#include <cmath>
#include <random>

using namespace partlog;
using namespace partlog::diffcalc;

TEST_CASE("difference examples") {
  PartitionTable t;
  CHECK(delta_at(LogKind::log_p, 2, 26, 96, t).is_negative());
  CHECK(delta_at(LogKind::log_r, 2, 61, 96, t).is_positive());
  CHECK(delta_at(LogKind::log_p, 3, 116, 96, t).is_positive());
  CHECK(std::abs(delta_at(LogKind::log_r, 2, 61, 128, t).mid_double() - 4.1813555712930758694e-6) < 1e-21);
}

TEST_CASE("center convention") {
  PartitionTable t;
  // order 2 around n uses p(n-1), p(n), p(n+1)
  const Interval direct = log_partition(11, 96, t) + log_partition(9, 96, t) - 2 * log_partition(10, 96, t);
  CHECK(delta_at(LogKind::log_p, 2, 10, 96, t).overlaps(direct));
  const Interval third = log_partition(12, 96, t) - 3 * log_partition(11, 96, t) + 3 * log_partition(10, 96, t) -
                         log_partition(9, 96, t);
  CHECK(delta_at(LogKind::log_p, 3, 10, 96, t).overlaps(third));
  CHECK_THROWS_AS(delta_at(LogKind::log_p, 2, 1, 96, t), std::invalid_argument);
  CHECK_THROWS_AS(delta_at(LogKind::log_p, 4, 10, 96, t), std::invalid_argument);
}

TEST_CASE("log quantities") {
  PartitionTable t;
  CHECK(log_quantity(LogKind::log_p, 10, 96, t).overlaps(log(Interval(42L, 96))));
  CHECK(log_quantity(LogKind::log_r, 10, 96, t).overlaps(log(Interval(mpq_class(42, 10), 96)) / 10));
  CHECK(log_quantity(LogKind::nthroot_log_p, 10, 96, t).overlaps(log(Interval(42L, 96)) / 10));
  CHECK(log_kind_from_name("log_r") == LogKind::log_r);
  CHECK(to_string(LogKind::nthroot_log_t) == "nthroot_log_t");
  CHECK_THROWS_AS(log_kind_from_name("log_q"), std::invalid_argument);
}

TEST_CASE("escalating delta reaches the width target") {
  PartitionTable t;
  for (long n : {2L, 100L, 5000L}) {
    const DeltaResult r = delta(LogKind::nthroot_log_p, 2, n, PrecisionPolicy{}, t);
    CHECK(r.width_ok);
    CHECK(r.value.width_double() < std::pow(static_cast<double>(n), -2.5) / 8);
  }
  const DeltaResult capped = delta(LogKind::log_p, 2, 100, PrecisionPolicy{8, 8, 2}, t);
  CHECK_FALSE(capped.width_ok);
  CHECK(capped.bits == 8);
}

TEST_CASE("linearity: log T~/k splits as B~ + log k / k") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> pick(2, 20000);
  PartitionTable t;
  for (int i = 0; i < 50; ++i) {
    const long n = pick(rng);
    CAPTURE(n);
    const Interval whole = delta_at(LogKind::nthroot_log_t, 2, n, 128, t);
    const Interval parts = delta2_b_tilde(n, 128) + delta2_log_k_over_k(n, 128);
    CHECK(whole.overlaps(parts));
  }
}

TEST_CASE("decomposition identities on 40..1000") {
  PartitionTable t;
  CHECK(props::decomposition_violations(40, 1000, t) == 0);
}

TEST_CASE("interval and exact signs agree on 2..2000") {
  PartitionTable t;
  CHECK(props::verdict_agreement_violations(2, 2000, t) == 0);
}

TEST_CASE("limit tables") {
  PartitionTable t;
  const std::vector<long> grid{1000, 10000};
  const auto alpha = limit_table(LimitKind::alpha, grid, 128, t);
  REQUIRE(alpha.size() == 2);
  CHECK(std::abs(alpha[0].value.mid_double() - 1.4542541923917028023) < 1e-15);
  CHECK(alpha[0].target.width_double() < 1e-30);
  CHECK(std::abs(alpha[0].target.mid_double() - 1.92382) < 1e-5);
  CHECK(alpha[1].abs_dev < alpha[0].abs_dev);

  // sandwich from the bound functions, shifted to center n + 1
  const long n = 1000;
  const Interval s = pow5_2(Interval(n, 128));
  const Interval lo = s * (bounds::b1(n + 1, 128) - bounds::error_envelope(n + 1, 128));
  const Interval hi = s * (bounds::b2(n + 1, 128) + bounds::error_envelope(n + 1, 128));
  CHECK(mpfr_cmp(lo.hi(), alpha[0].value.lo()) <= 0);
  CHECK(mpfr_cmp(alpha[0].value.hi(), hi.lo()) <= 0);

  const auto pi24 = limit_table(LimitKind::pi24, grid, 128, t, 2);
  CHECK(std::abs(pi24[0].value.mid_double() - 0.60998706831607627353) < 1e-15);
  CHECK(pi24[1].abs_dev < pi24[0].abs_dev);
  CHECK(std::abs(pi24[0].target.mid_double() - 0.64127491508093204777) < 1e-15);

  // thread count does not change the rows
  const auto serial = limit_table(LimitKind::pi24, grid, 128, t, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(serial[i].value.str() == pi24[i].value.str());

  CHECK_THROWS_AS(limit_table(LimitKind::pi24, std::vector<long>{1}, 64, t), std::invalid_argument);
  CHECK_THROWS_AS(limit_table(LimitKind::pi24, std::vector<long>{5, 3}, 64, t), std::invalid_argument);
  CHECK(limit_kind_from_name("alpha") == LimitKind::alpha);
  CHECK_THROWS_AS(limit_kind_from_name("beta"), std::invalid_argument);
}

TEST_CASE("grid parsing") {
  CHECK(parse_grid("5,3,5,10") == std::vector<long>{3, 5, 10});
  CHECK(parse_grid("geometric:1000:100000:10") == std::vector<long>{1000, 10000, 100000});
  CHECK(parse_grid("geometric:2:10:1.5") == std::vector<long>{2, 3, 5, 7});
  CHECK_THROWS_AS(parse_grid("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("geometric:10:5:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("geometric:1:5:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("geometric:1:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("abc"), std::invalid_argument);
}
