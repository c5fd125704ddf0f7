#include "partlog/verify.hpp"

#include "partlog/bounds.hpp"
#include "partlog/diffcalc.hpp"
#include "partlog/hrr.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>

namespace partlog::verify {

namespace {

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
  long min_center;
  bool stride_ok;
};

constexpr std::array<TheoremInfo, 15> kTheorems{{
    {TheoremId::log_concavity, "log-concavity", 1, false},
    {TheoremId::chen, "chen", 1, false},
    {TheoremId::dp_conjecture, "dp-conjecture", 1, false},
    {TheoremId::r_log_convex, "r-log-convex", 2, false},
    {TheoremId::nthroot_log_convex, "nthroot-log-convex", 2, false},
    {TheoremId::ratio_ineq, "ratio-ineq", 2, false},
    {TheoremId::delta3_positive, "delta3-positive", 1, false},
    {TheoremId::nthroot_decreasing, "nthroot-decreasing", 1, false},
    {TheoremId::lemma22_sandwich, "lemma22-sandwich", 2, false},
    {TheoremId::lemma23_error, "lemma23-error", 2, false},
    {TheoremId::c_positive, "c-positive", 2, false},
    {TheoremId::d_positive, "d-positive", 2, true},
    {TheoremId::dp_upper, "dp-upper", 2, true},
    {TheoremId::cwx_upper, "cwx-upper", 2, true},
    {TheoremId::thm32_upper, "thm32-upper", 2, true},
}};

constexpr std::array<TheoremId, 15> kAllIds = [] {
  std::array<TheoremId, 15> ids{};
  for (std::size_t i = 0; i < kTheorems.size(); ++i) ids[i] = kTheorems[i].id;
  return ids;
}();

const TheoremInfo& info(TheoremId id) {
  for (const auto& t : kTheorems) {
    if (t.id == id) return t;
  }
  throw std::invalid_argument("unknown theorem id");
}

constexpr std::array<std::pair<AuxId, std::string_view>, 5> kAux{{
    {AuxId::mu_shift, "mu-shift"},
    {AuxId::mu_upper, "mu-upper"},
    {AuxId::x_series, "x-series"},
    {AuxId::log_quarter_power, "log-quarter-power"},
    {AuxId::exp_poly, "exp-poly"},
}};

constexpr long kXSeriesGrid = 1000;

}  // namespace

std::string_view to_string(TheoremId id) { return info(id).name; }

TheoremId theorem_from_name(std::string_view name) {
  for (const auto& t : kTheorems) {
    if (t.name == name) return t.id;
  }
  throw std::invalid_argument("unknown theorem id '" + std::string(name) + "'");
}

std::span<const TheoremId> all_theorems() { return kAllIds; }
long min_center(TheoremId id) { return info(id).min_center; }
bool allows_stride(TheoremId id) { return info(id).stride_ok; }
bool needs_partitions(TheoremId id) { return id != TheoremId::c_positive && id != TheoremId::d_positive; }

std::string_view to_string(AuxId id) {
  for (const auto& [aux, name] : kAux) {
    if (aux == id) return name;
  }
  return "?";
}

AuxId aux_from_name(std::string_view name) {
  for (const auto& [aux, n] : kAux) {
    if (n == name) return aux;
  }
  throw std::invalid_argument("unknown auxiliary inequality '" + std::string(name) + "'");
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::failed: return "failed";
    case Status::indeterminate: return "indeterminate";
  }
  return "?";
}

Status status_from_name(std::string_view name) {
  if (name == "verified") return Status::verified;
  if (name == "failed") return Status::failed;
  if (name == "indeterminate") return Status::indeterminate;
  throw std::invalid_argument("unknown status '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["theorem"] = report.theorem;
  j["from"] = report.from;
  j["to"] = report.to;
  j["status"] = std::string(to_string(report.status));
  j["failures"] = report.failures;
  j["indeterminates"] = report.indeterminates;
  j["max_bits_used"] = report.max_bits_used;
  j["wall_time_ms"] = report.wall_time_ms;
  return j.dump(2);
}

VerificationReport report_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    VerificationReport r;
    r.theorem = j.at("theorem").get<std::string>();
    r.from = j.at("from").get<long>();
    r.to = j.at("to").get<long>();
    r.status = status_from_name(j.at("status").get<std::string>());
    r.failures = j.at("failures").get<std::vector<long>>();
    r.indeterminates = j.at("indeterminates").get<std::vector<long>>();
    r.max_bits_used = j.at("max_bits_used").get<long>();
    r.wall_time_ms = j.at("wall_time_ms").get<long>();
    if (j.size() != 8) throw std::invalid_argument("unexpected extra fields");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed verification report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Exact and interval discriminants

namespace {

const mpz_class& p_of(long n, PartitionTable& table) {
  return table.value(static_cast<std::size_t>(n));
}

// log p(k) with log p(0) = 0.
Interval log_p(long k, long bits, PartitionTable& table) {
  if (k == 0) return Interval(bits);
  return log_partition(static_cast<std::size_t>(k), bits, table);
}

void require_min(long n, long min, const char* what) {
  if (n < min) {
    throw std::invalid_argument(std::string(what) + ": n must be >= " + std::to_string(min));
  }
}

}  // namespace

ExactInteger exact_discriminant(DiscriminantKind kind, long n, PartitionTable& table) {
  require_min(n, 1, "exact_discriminant");
  switch (kind) {
    case DiscriminantKind::logconc:
      return p_of(n, table) * p_of(n, table) - p_of(n - 1, table) * p_of(n + 1, table);
    case DiscriminantKind::chen:
      return mpz_class(n + 1) * p_of(n - 1, table) * p_of(n + 1, table) -
             mpz_class(n) * p_of(n, table) * p_of(n, table);
    case DiscriminantKind::delta3: {
      const mpz_class& a = p_of(n, table);
      const mpz_class& b = p_of(n + 1, table);
      return p_of(n + 2, table) * a * a * a - b * b * b * p_of(n - 1, table);
    }
    case DiscriminantKind::decreasing: {
      mpz_class lhs;
      mpz_class rhs;
      mpz_pow_ui(lhs.get_mpz_t(), p_of(n, table).get_mpz_t(), static_cast<unsigned long>(n + 1));
      mpz_pow_ui(rhs.get_mpz_t(), p_of(n + 1, table).get_mpz_t(), static_cast<unsigned long>(n));
      return lhs - rhs;
    }
  }
  throw std::invalid_argument("exact_discriminant: unknown kind");
}

Certified interval_discriminant_sign(DiscriminantKind kind, long n, const PrecisionPolicy& policy,
                                     PartitionTable& table) {
  require_min(n, 1, "interval_discriminant_sign");
  table.extend_to(static_cast<std::size_t>(n + 2));
  auto lp = [&](long k, long bits) { return log_p(k, bits, table); };
  std::function<Interval(long)> expr;
  switch (kind) {
    case DiscriminantKind::logconc:
      expr = [&](long b) { return 2 * lp(n, b) - lp(n - 1, b) - lp(n + 1, b); };
      break;
    case DiscriminantKind::chen:
      expr = [&](long b) {
        return log(Interval(mpq_class(n + 1, n), b)) + lp(n + 1, b) + lp(n - 1, b) - 2 * lp(n, b);
      };
      break;
    case DiscriminantKind::delta3:
      expr = [&](long b) { return lp(n + 2, b) - 3 * lp(n + 1, b) + 3 * lp(n, b) - lp(n - 1, b); };
      break;
    case DiscriminantKind::decreasing:
      expr = [&](long b) { return (n + 1) * lp(n, b) - n * lp(n + 1, b); };
      break;
  }
  return certify_sign(expr, policy);
}

// ---------------------------------------------------------------------------
// Per-point decisions

namespace {

Certified from_exact(const mpz_class& value) {
  const int s = sgn(value);
  return {s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero), 0};
}

Interval second_diff_nthroot(long n, long bits, PartitionTable& table) {
  return diffcalc::delta_at(diffcalc::LogKind::nthroot_log_p, 2, n, bits, table);
}

Interval second_diff_log_p(long n, long bits, PartitionTable& table) {
  return diffcalc::delta_at(diffcalc::LogKind::log_p, 2, n, bits, table);
}

Certified both_positive(const Certified& a, const Certified& b) {
  const long bits = std::max(a.bits, b.bits);
  if (a.sign == Sign::negative || b.sign == Sign::negative) return {Sign::negative, bits};
  if (a.sign == Sign::positive && b.sign == Sign::positive) return {Sign::positive, bits};
  return {Sign::indeterminate, bits};
}

}  // namespace

Certified decide(TheoremId id, long n, const PrecisionPolicy& policy, PartitionTable& table) {
  require_min(n, min_center(id), std::string(to_string(id)).c_str());
  using diffcalc::LogKind;
  switch (id) {
    case TheoremId::log_concavity:
      return from_exact(exact_discriminant(DiscriminantKind::logconc, n, table));
    case TheoremId::chen:
      return from_exact(exact_discriminant(DiscriminantKind::chen, n, table));
    case TheoremId::delta3_positive:
      return from_exact(exact_discriminant(DiscriminantKind::delta3, n, table));
    case TheoremId::nthroot_decreasing:
      return from_exact(exact_discriminant(DiscriminantKind::decreasing, n, table));

    case TheoremId::dp_conjecture: {
      const mpz_class product = p_of(n - 1, table) * p_of(n + 1, table);
      const mpz_class square = p_of(n, table) * p_of(n, table);
      return certify_sign(
          [&](long b) {
            const Interval c = iv_const(Constant::pi, b) /
                               (iv_const(Constant::sqrt24, b) * pow3_2(Interval(n, b)));
            return Interval(product, b) * (1 + c) - Interval(square, b);
          },
          policy);
    }
    case TheoremId::r_log_convex:
      return certify_sign([&](long b) { return diffcalc::delta_at(LogKind::log_r, 2, n, b, table); },
                          policy);
    case TheoremId::nthroot_log_convex:
      return certify_sign([&](long b) { return second_diff_nthroot(n, b, table); }, policy);
    case TheoremId::ratio_ineq:
      return certify_sign(
          [&](long b) {
            const Interval beta = 3 * iv_const(Constant::pi, b) /
                                  (iv_const(Constant::sqrt24, b) * pow5_2(Interval(n, b)));
            return log(1 + beta) - second_diff_nthroot(n, b, table);
          },
          policy);
    case TheoremId::lemma22_sandwich: {
      auto mid = [&](long b) { return diffcalc::delta_at(LogKind::nthroot_log_t, 2, n, b, table); };
      const Certified lower = certify_sign([&](long b) { return mid(b) - bounds::b1(n, b); }, policy);
      const Certified upper = certify_sign([&](long b) { return bounds::b2(n, b) - mid(b); }, policy);
      return both_positive(lower, upper);
    }
    case TheoremId::lemma23_error:
      return certify_sign(
          [&](long b) { return bounds::error_envelope(n, b) - abs(diffcalc::delta2_e_tilde(n, b, table)); },
          policy);
    case TheoremId::c_positive:
      return certify_sign([&](long b) { return bounds::c_lower(n, b); }, policy);
    case TheoremId::d_positive:
      return certify_sign([&](long b) { return bounds::d_lower(n, b); }, policy);
    case TheoremId::dp_upper:
      return certify_sign([&](long b) { return bounds::dp_upper(n, b) + second_diff_log_p(n, b, table); },
                          policy);
    case TheoremId::cwx_upper:
      return certify_sign([&](long b) { return bounds::cwx_upper(n, b) + second_diff_log_p(n, b, table); },
                          policy);
    case TheoremId::thm32_upper:
      return certify_sign([&](long b) { return bounds::thm32_upper(n, b) - second_diff_nthroot(n, b, table); },
                          policy);
  }
  throw std::invalid_argument("decide: unknown theorem id");
}

Certified decide_aux(AuxId id, long point, const PrecisionPolicy& policy) {
  switch (id) {
    case AuxId::mu_shift:
      require_min(point, 3, "mu-shift");
      return certify_sign(
          [&](long b) {
            return hrr::mu(point, b) - 1 - Interval(mpq_class(2, 3), b) * hrr::mu(point - 2, b);
          },
          policy);
    case AuxId::mu_upper:
      require_min(point, 2, "mu-upper");
      return certify_sign(
          [&](long b) {
            return iv_const(Constant::pi, b) / 4 * sqrt(Interval(24 * point - 24, b)) -
                   (hrr::mu(point + 1, b) - 1);
          },
          policy);
    case AuxId::x_series: {
      if (point < 1 || point > kXSeriesGrid) {
        throw std::invalid_argument("x-series: grid index must be in [1, 1000]");
      }
      const mpq_class x_exact(point, 48 * kXSeriesGrid);
      return certify_sign(
          [&](long b) {
            const Interval x(x_exact, b);
            const Interval rhs = 1 + Interval(mpq_class(3, 2), b) * x +
                                 Interval(mpq_class(3, 8), b) * pow3_2(x);
            return rhs - 1 / pow3_2(1 - x);
          },
          policy);
    }
    case AuxId::log_quarter_power:
      require_min(point, 1, "log-quarter-power");
      return certify_sign(
          [&](long b) {
            const Interval x(point, b);
            return nth_root(x, 4) - log(x);
          },
          policy);
    case AuxId::exp_poly:
      require_min(point, 1, "exp-poly");
      return certify_sign(
          [&](long b) {
            const Interval x(point, b);
            return exp(x) - pow(x, 6) / 720;
          },
          policy);
  }
  throw std::invalid_argument("decide_aux: unknown id");
}

// ---------------------------------------------------------------------------
// Range drivers

std::vector<long> sample_points(long from, long to, long stride) {
  if (from > to) throw std::invalid_argument("range: from must be <= to");
  if (stride < 1) throw std::invalid_argument("range: stride must be >= 1");
  std::vector<long> points;
  points.reserve(static_cast<std::size_t>((to - from) / stride + 2));
  for (long n = from; n <= to; n += stride) points.push_back(n);
  if (points.back() != to) points.push_back(to);
  return points;
}

namespace {

VerificationReport run_points(std::string name, std::span<const long> points, int jobs,
                              const std::function<Certified(long)>& decide_one) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.theorem = std::move(name);
  if (points.empty()) throw std::invalid_argument("verify: no points to check");
  report.from = points.front();
  report.to = points.back();

  std::vector<Certified> verdicts(points.size());
  const auto workers = static_cast<std::size_t>(
      std::clamp<long>(jobs, 1, static_cast<long>(points.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) verdicts[i] = decide_one(points[i]);
  } else {
    // Contiguous chunks, merged back in index order.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(points.size(), (w + 1) * chunk);
          for (std::size_t i = w * chunk; i < end; ++i) verdicts[i] = decide_one(points[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    report.max_bits_used = std::max(report.max_bits_used, verdicts[i].bits);
    switch (verdicts[i].sign) {
      case Sign::positive: break;
      case Sign::negative:
      case Sign::zero: report.failures.push_back(points[i]); break;
      case Sign::indeterminate: report.indeterminates.push_back(points[i]); break;
    }
  }
  report.status = !report.failures.empty()         ? Status::failed
                  : !report.indeterminates.empty() ? Status::indeterminate
                                                   : Status::verified;
  report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

}  // namespace

VerificationReport verify_points(TheoremId id, std::span<const long> points,
                                 const VerifyOptions& options, PartitionTable& table) {
  options.policy.validate();
  if (points.empty()) throw std::invalid_argument("verify: no points to check");
  if (!std::is_sorted(points.begin(), points.end())) {
    throw std::invalid_argument("verify: points must be ascending");
  }
  require_min(points.front(), min_center(id), std::string(to_string(id)).c_str());
  // Single-writer extension before any worker reads the table.
  if (needs_partitions(id)) table.extend_to(static_cast<std::size_t>(points.back() + 2));
  return run_points(std::string(to_string(id)), points, options.jobs,
                    [&](long n) { return decide(id, n, options.policy, table); });
}

VerificationReport verify_theorem(TheoremId id, long from, long to, const VerifyOptions& options,
                                  PartitionTable& table) {
  if (options.stride > 1 && !allows_stride(id)) {
    throw std::invalid_argument(std::string(to_string(id)) + " must be checked at every n (stride 1)");
  }
  const auto points = sample_points(from, to, options.stride);
  return verify_points(id, points, options, table);
}

VerificationReport verify_aux_inequality(AuxId id, long from, long to, const VerifyOptions& options) {
  options.policy.validate();
  const auto points = sample_points(from, to, options.stride);
  return run_points(std::string(to_string(id)), points, options.jobs,
                    [&](long x) { return decide_aux(id, x, options.policy); });
}

}  // namespace partlog::verify
