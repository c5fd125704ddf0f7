#include "partlog/diffcalc.hpp"

#include "partlog/hrr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace partlog::diffcalc {

namespace {

constexpr long kGuard = 8;

void require_center(long n, int order) {
  if (order != 2 && order != 3) throw std::invalid_argument("delta: order must be 2 or 3");
  if (n < 2) throw std::invalid_argument("delta: center n must be >= 2");
}

template <typename F>
Interval second_difference(long n, F&& f) {
  return f(n + 1) + f(n - 1) - 2 * f(n);
}

template <typename F>
Interval third_difference(long n, F&& f) {
  return f(n + 2) - 3 * f(n + 1) + 3 * f(n) - f(n - 1);
}

long parse_long(std::string_view text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("grid: malformed integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

LogKind log_kind_from_name(std::string_view name) {
  if (name == "log_p") return LogKind::log_p;
  if (name == "log_r") return LogKind::log_r;
  if (name == "nthroot_log_p") return LogKind::nthroot_log_p;
  if (name == "nthroot_log_t") return LogKind::nthroot_log_t;
  throw std::invalid_argument("unknown log quantity '" + std::string(name) + "'");
}

std::string_view to_string(LogKind kind) {
  switch (kind) {
    case LogKind::log_p: return "log_p";
    case LogKind::log_r: return "log_r";
    case LogKind::nthroot_log_p: return "nthroot_log_p";
    case LogKind::nthroot_log_t: return "nthroot_log_t";
  }
  return "?";
}

Interval log_quantity(LogKind kind, long k, long bits, PartitionTable& table) {
  if (k < 1) throw std::invalid_argument("log_quantity: index must be >= 1");
  const long work = bits + kGuard;
  const auto idx = static_cast<std::size_t>(k);
  switch (kind) {
    case LogKind::log_p:
      return log_partition(idx, work, table);
    case LogKind::log_r:
      return (log_partition(idx, work, table) - log(Interval(k, work))) / k;
    case LogKind::nthroot_log_p:
      return log_partition(idx, work, table) / k;
    case LogKind::nthroot_log_t:
      return hrr::log_t_tilde(k, work) / k;
  }
  throw std::invalid_argument("log_quantity: unknown kind");
}

Interval delta_at(LogKind kind, int order, long n, long bits, PartitionTable& table) {
  require_center(n, order);
  const long work = bits + kGuard;
  auto f = [&](long k) { return log_quantity(kind, k, work, table); };
  const Interval d = order == 2 ? second_difference(n, f) : third_difference(n, f);
  return d.round_to(bits);
}

DeltaResult delta(LogKind kind, int order, long n, const PrecisionPolicy& policy,
                  PartitionTable& table) {
  require_center(n, order);
  policy.validate();
  const double target = std::pow(static_cast<double>(n), -2.5) / 8;
  long bits = policy.initial_bits;
  for (;;) {
    Interval value = delta_at(kind, order, n, bits, table);
    if (value.width_double() < target) return {std::move(value), bits, true};
    if (bits >= policy.max_bits) return {std::move(value), bits, false};
    bits = std::min(bits * policy.escalation_factor, policy.max_bits);
  }
}

Interval delta2_log_k_over_k(long n, long bits) {
  if (n < 2) throw std::invalid_argument("delta2_log_k_over_k: n must be >= 2");
  const long work = bits + kGuard;
  auto f = [&](long k) { return log(Interval(k, work)) / k; };
  return second_difference(n, f).round_to(bits);
}

Interval delta2_b_tilde(long n, long bits) {
  if (n < 2) throw std::invalid_argument("delta2_b_tilde: n must be >= 2");
  const long work = bits + kGuard;
  auto f = [&](long k) { return (hrr::log_t_tilde(k, work) - log(Interval(k, work))) / k; };
  return second_difference(n, f).round_to(bits);
}

Interval delta2_e_tilde(long n, long bits, PartitionTable& table) {
  if (n < 2) throw std::invalid_argument("delta2_e_tilde: n must be >= 2");
  const long work = bits + kGuard;
  auto f = [&](long k) { return hrr::e_tilde(k, work, table); };
  return second_difference(n, f).round_to(bits);
}

// ---------------------------------------------------------------------------

LimitKind limit_kind_from_name(std::string_view name) {
  if (name == "pi24") return LimitKind::pi24;
  if (name == "alpha") return LimitKind::alpha;
  throw std::invalid_argument("unknown limit table '" + std::string(name) + "'");
}

std::string_view to_string(LimitKind kind) { return kind == LimitKind::pi24 ? "pi24" : "alpha"; }

Interval limit_target(LimitKind kind, long bits) {
  if (kind == LimitKind::alpha) return iv_const(Constant::alpha, bits);
  const long work = bits + kGuard;
  return (iv_const(Constant::pi, work) / iv_const(Constant::sqrt24, work)).round_to(bits);
}

namespace {

LimitTableRow limit_row(LimitKind kind, long n, long bits, const Interval& target,
                        PartitionTable& table) {
  const long work = bits + kGuard;
  LimitTableRow row;
  row.n = n;
  const Interval scale_n(n, work);
  if (kind == LimitKind::pi24) {
    row.value = (-(pow3_2(scale_n) * delta_at(LogKind::log_p, 2, n, work, table))).round_to(bits);
  } else {
    row.value = (pow5_2(scale_n) * delta_at(LogKind::nthroot_log_p, 2, n + 1, work, table)).round_to(bits);
  }
  row.target = target;
  row.abs_dev = abs(row.value - target).hi_double();
  return row;
}

}  // namespace

std::vector<LimitTableRow> limit_table(LimitKind kind, std::span<const long> grid, long bits,
                                       PartitionTable& table, int jobs) {
  if (grid.empty()) return {};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) throw std::invalid_argument("limit_table: grid entries must be >= 2");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("limit_table: grid must be ascending");
  }
  table.extend_to(static_cast<std::size_t>(grid.back() + 2));
  const Interval target = limit_target(kind, bits);

  std::vector<LimitTableRow> rows(grid.size());
  const auto workers = static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = limit_row(kind, grid[i], bits, target, table);
    return rows;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < grid.size(); i += workers) {
          rows[i] = limit_row(kind, grid[i], bits, target, table);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<long> parse_grid(std::string_view spec) {
  std::vector<long> out;
  constexpr std::string_view kGeometric = "geometric:";
  if (spec.starts_with(kGeometric)) {
    std::string_view rest = spec.substr(kGeometric.size());
    const auto c1 = rest.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("grid: expected geometric:a:b:f");
    const long a = parse_long(rest.substr(0, c1));
    const long b = parse_long(rest.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view f_text = rest.substr(c2 + 1);
    double f = 0;
    auto [ptr, ec] = std::from_chars(f_text.data(), f_text.data() + f_text.size(), f);
    if (ec != std::errc() || ptr != f_text.data() + f_text.size() || !(f > 1.0)) {
      throw std::invalid_argument("grid: factor must be a number > 1");
    }
    if (a < 1 || b < a) throw std::invalid_argument("grid: need 1 <= a <= b");
    // relative slack absorbs drift in repeated multiplication (10^5 != 1000 * 10 * 10)
    const double limit = static_cast<double>(b) * (1 + 1e-12);
    for (double x = static_cast<double>(a); x <= limit; x *= f) {
      const long v = std::lround(x);
      if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    out.push_back(parse_long(spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace partlog::diffcalc
