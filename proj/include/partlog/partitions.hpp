#pragma once

// Exact partition numbers p(n) from Euler's pentagonal-number recurrence,
// with a text cache on disk.

#include "partlog/rigor.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <deque>
#include <filesystem>
#include <shared_mutex>
#include <stdexcept>

namespace partlog {

using ExactInteger = mpz_class;

/// Append-only table of p(0), p(1), ...
///
/// Reads of the computed prefix may run concurrently; extension takes an
/// exclusive lock. References returned by `at` stay valid for the lifetime of
/// the table since elements are never moved or modified.
class PartitionTable {
 public:
  PartitionTable();
  PartitionTable(const PartitionTable&) = delete;
  PartitionTable& operator=(const PartitionTable&) = delete;

  /// p(n), extending the table first if needed.
  const ExactInteger& value(std::size_t n);
  /// p(n) for n <= max_n(); throws std::out_of_range otherwise.
  const ExactInteger& at(std::size_t n) const;

  void extend_to(std::size_t n);
  std::size_t max_n() const;

  /// Appends a value read from an external source; n must be max_n() + 1.
  void append_loaded(std::size_t n, ExactInteger value);

 private:
  mutable std::shared_mutex mutex_;
  std::deque<ExactInteger> values_;
};

const ExactInteger& partition(std::size_t n, PartitionTable& table);

/// Enclosure of log p(n), n >= 1, a few ulps wide at `bits`.
Interval log_partition(std::size_t n, long bits, PartitionTable& table);

class CacheError : public std::runtime_error {
 public:
  CacheError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr const char* kCacheHeader = "#partlog-cache v1";

/// Brings the cache at `path` up to p(0..upto): loads the existing prefix into
/// `table`, computes what is missing, and appends only the new lines. A
/// missing or empty file is created. Malformed content raises CacheError with
/// the 1-based line number.
PartitionTable& cache_sync(const std::filesystem::path& path, std::size_t upto,
                           PartitionTable& table);

/// Reads a cache file into `table` without writing. Returns the largest n read,
/// or -1 for an empty file.
long load_cache(const std::filesystem::path& path, PartitionTable& table);

}  // namespace partlog
