#include "partlog/partitions.hpp"

#include <charconv>
#include <fstream>
#include <mutex>
#include <string>

namespace partlog {

PartitionTable::PartitionTable() { values_.emplace_back(1); }

const ExactInteger& PartitionTable::value(std::size_t n) {
  {
    std::shared_lock lock(mutex_);
    if (n < values_.size()) return values_[n];
  }
  extend_to(n);
  return at(n);
}

const ExactInteger& PartitionTable::at(std::size_t n) const {
  std::shared_lock lock(mutex_);
  if (n >= values_.size()) {
    throw std::out_of_range("partition table holds p(0.." + std::to_string(values_.size() - 1) +
                            "), asked for p(" + std::to_string(n) + ")");
  }
  return values_[n];
}

std::size_t PartitionTable::max_n() const {
  std::shared_lock lock(mutex_);
  return values_.size() - 1;
}

// p(k) = sum_{j>=1} (-1)^{j+1} [p(k - j(3j-1)/2) + p(k - j(3j+1)/2)]
void PartitionTable::extend_to(std::size_t n) {
  std::unique_lock lock(mutex_);
  mpz_class acc;
  for (std::size_t k = values_.size(); k <= n; ++k) {
    acc = 0;
    for (std::size_t j = 1;; ++j) {
      const std::size_t g1 = j * (3 * j - 1) / 2;
      if (g1 > k) break;
      const std::size_t g2 = g1 + j;
      if (j % 2 == 1) {
        mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), values_[k - g1].get_mpz_t());
        if (g2 <= k) mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), values_[k - g2].get_mpz_t());
      } else {
        mpz_sub(acc.get_mpz_t(), acc.get_mpz_t(), values_[k - g1].get_mpz_t());
        if (g2 <= k) mpz_sub(acc.get_mpz_t(), acc.get_mpz_t(), values_[k - g2].get_mpz_t());
      }
    }
    values_.push_back(acc);
  }
}

void PartitionTable::append_loaded(std::size_t n, ExactInteger value) {
  std::unique_lock lock(mutex_);
  if (n != values_.size()) {
    throw std::logic_error("append_loaded: expected index " + std::to_string(values_.size()));
  }
  values_.push_back(std::move(value));
}

const ExactInteger& partition(std::size_t n, PartitionTable& table) { return table.value(n); }

Interval log_partition(std::size_t n, long bits, PartitionTable& table) {
  if (n == 0) throw std::invalid_argument("log_partition: n must be >= 1");
  // Round the integer outward at a few guard bits, take the log there, then
  // round outward once more to the requested precision.
  const long work = bits + 8;
  return log(Interval(table.value(n), work)).round_to(bits);
}

// ---------------------------------------------------------------------------
// Cache file

CacheError::CacheError(const std::string& message, std::size_t line)
    : std::runtime_error("cache line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Parsed {
  std::size_t n;
  mpz_class value;
};

Parsed parse_line(const std::string& text, std::size_t line_no) {
  const auto tab = text.find('\t');
  if (tab == std::string::npos) throw CacheError("expected 'n<TAB>p(n)'", line_no);
  std::size_t n = 0;
  const char* first = text.data();
  const char* last = text.data() + tab;
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || tab == 0) {
    throw CacheError("malformed index '" + text.substr(0, tab) + "'", line_no);
  }
  const std::string digits = text.substr(tab + 1);
  const bool all_digits = !digits.empty() &&
                          digits.find_first_not_of("0123456789") == std::string::npos;
  mpz_class value;
  if (!all_digits || value.set_str(digits, 10) != 0) {
    throw CacheError("malformed value for n=" + std::to_string(n) + ": '" + digits + "'", line_no);
  }
  return {n, std::move(value)};
}

}  // namespace

long load_cache(const std::filesystem::path& path, PartitionTable& table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return -1;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.empty()) return -1;
  if (content.back() != '\n') {
    std::size_t lines = 1;
    for (char c : content) lines += (c == '\n');
    throw CacheError("file is not newline-terminated", lines);
  }

  std::size_t line_no = 0;
  std::size_t pos = 0;
  long last = -1;
  std::deque<mpz_class> loaded;
  while (pos < content.size()) {
    const auto eol = content.find('\n', pos);
    const std::string text = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (text != kCacheHeader) throw CacheError("unsupported header '" + text + "'", line_no);
      continue;
    }
    Parsed parsed = parse_line(text, line_no);
    if (static_cast<long>(parsed.n) != last + 1) {
      throw CacheError("expected n=" + std::to_string(last + 1) + ", found n=" +
                           std::to_string(parsed.n),
                       line_no);
    }
    if (parsed.n == 0 && parsed.value != 1) throw CacheError("p(0) must be 1", line_no);
    last = static_cast<long>(parsed.n);
    loaded.push_back(std::move(parsed.value));
  }

  // Only take over entries beyond what the table already holds; the prefix
  // the table has computed itself is authoritative.
  const std::size_t have = table.max_n();
  for (std::size_t n = have + 1; n < loaded.size(); ++n) table.append_loaded(n, std::move(loaded[n]));
  return last;
}

PartitionTable& cache_sync(const std::filesystem::path& path, std::size_t upto,
                           PartitionTable& table) {
  const long on_disk = load_cache(path, table);
  if (on_disk >= static_cast<long>(upto)) return table;

  table.extend_to(upto);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache file " + path.string());
  if (on_disk < 0) {
    // Empty or missing file; start over with a header.
    out.close();
    out.open(path, std::ios::binary | std::ios::trunc);
    out << kCacheHeader << '\n';
  }
  for (std::size_t n = static_cast<std::size_t>(on_disk + 1); n <= upto; ++n) {
    out << n << '\t' << table.at(n).get_str(10) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing cache file " + path.string());
  return table;
}

}  // namespace partlog
