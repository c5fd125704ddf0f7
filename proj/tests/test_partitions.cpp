#include "doctest.h"

#include "support/oracles.hpp"

#include "partlog/partitions.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace partlog;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("partlog-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string cache_text(std::size_t upto) {
  const auto p = oracle::partitions_dp(upto);
  std::string s = std::string(kCacheHeader) + "\n";
  for (std::size_t n = 0; n <= upto; ++n) s += std::to_string(n) + "\t" + p[n].get_str() + "\n";
  return s;
}

}  // namespace

TEST_CASE("small values") {
  PartitionTable t;
  CHECK(partition(0, t) == 1);
  CHECK(partition(5, t) == 7);
  CHECK(partition(100, t) == mpz_class("190569292"));
  CHECK(partition(200, t) == mpz_class("3972999029388"));
  CHECK(oracle::partitions_dp(200)[200] == mpz_class("3972999029388"));
}

TEST_CASE("recurrence equals the parts DP up to 2000") {
  const auto dp = oracle::partitions_dp(2000);
  PartitionTable t;
  t.extend_to(2000);
  int mismatches = 0;
  for (std::size_t n = 0; n <= 2000; ++n) mismatches += (t.at(n) != dp[n]);
  CHECK(mismatches == 0);
}

TEST_CASE("recurrence equals brute-force enumeration up to 60") {
  PartitionTable t;
  for (int n = 0; n <= 60; ++n) {
    CAPTURE(n);
    CHECK(t.value(static_cast<std::size_t>(n)) == mpz_class(std::to_string(oracle::enumerate_partitions(n))));
  }
}

TEST_CASE("monotone growth") {
  PartitionTable t;
  t.extend_to(10000);
  CHECK(t.at(1) == t.at(0));
  int bad = 0;
  for (std::size_t n = 2; n < 10000; ++n) bad += !(t.at(n + 1) > t.at(n));
  CHECK(bad == 0);
}

TEST_CASE("nth root of p(n) decreases from n = 6") {
  PartitionTable t;
  t.extend_to(2001);
  int bad = 0;
  for (unsigned long n = 6; n <= 2000; ++n) {
    mpz_class lhs;
    mpz_class rhs;
    mpz_pow_ui(lhs.get_mpz_t(), t.at(n).get_mpz_t(), n + 1);
    mpz_pow_ui(rhs.get_mpz_t(), t.at(n + 1).get_mpz_t(), n);
    bad += !(lhs > rhs);
  }
  CHECK(bad == 0);
}

TEST_CASE("at() does not extend") {
  PartitionTable t;
  CHECK_THROWS_AS(t.at(10), std::out_of_range);
  t.extend_to(10);
  CHECK(t.max_n() == 10);
  CHECK(t.at(10) == 42);
}

TEST_CASE("log_partition") {
  PartitionTable t;
  const Interval one = log_partition(1, 64, t);
  CHECK(mpfr_zero_p(one.lo()));
  CHECK(mpfr_zero_p(one.hi()));
  const Interval l10 = log_partition(10, 64, t);
  CHECK(oracle::overlaps(l10, oracle::log_bracket(42)));
  CHECK(std::abs(l10.mid_double() - 3.7376696182833683059) < 1e-15);
  const auto b = oracle::log_bracket(42);
  CHECK(oracle::lo_q(l10) <= b.lo);
  CHECK(b.hi <= oracle::hi_q(l10));

  const Interval w1 = log_partition(1000, 96, t);
  const Interval w2 = log_partition(1000, 192, t);
  CHECK(w2.width_double() <= w1.width_double());
  CHECK(oracle::overlaps(w1, oracle::log_bracket(mpq_class(t.value(1000)))));
  CHECK_THROWS_AS(log_partition(0, 64, t), std::invalid_argument);
}

TEST_CASE("cache: creation from an empty file") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  write(file, "");
  PartitionTable t;
  cache_sync(file, 10, t);
  const auto lines = lines_of(slurp(file));
  REQUIRE(lines.size() == 12);
  CHECK(lines.front() == kCacheHeader);
  CHECK(lines.size() - 1 == 11);
  CHECK(lines.back() == "10\t42");
  CHECK(slurp(file).back() == '\n');
}

TEST_CASE("cache: missing file is created") {
  TempDir dir;
  const fs::path file = dir.path / "sub" / "cache.txt";
  PartitionTable t;
  cache_sync(file, 5, t);
  CHECK(slurp(file) == cache_text(5));
}

TEST_CASE("cache: existing prefix is left alone") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  write(file, cache_text(100));
  const auto before = fs::last_write_time(file);
  PartitionTable t;
  cache_sync(file, 50, t);
  CHECK(slurp(file) == cache_text(100));
  CHECK(fs::last_write_time(file) == before);
  CHECK(t.max_n() >= 50);
}

TEST_CASE("cache: only the missing suffix is appended") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  write(file, cache_text(30));
  PartitionTable t;
  cache_sync(file, 80, t);
  CHECK(slurp(file) == cache_text(80));

  PartitionTable reloaded;
  CHECK(load_cache(file, reloaded) == 80);
  for (std::size_t n = 0; n <= 80; ++n) CHECK(reloaded.at(n) == t.value(n));
}

TEST_CASE("cache: malformed digits name the line") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  write(file, std::string(kCacheHeader) + "\n0\t1\n1\t1\n2\t2\n3\tfour\n4\t5\n");
  PartitionTable t;
  try {
    load_cache(file, t);
    FAIL("expected CacheError");
  } catch (const CacheError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("n=3") != std::string::npos);
  }
  CHECK_THROWS_AS(cache_sync(file, 10, t), CacheError);
}

TEST_CASE("cache: structural errors") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  PartitionTable t;

  write(file, "#partlog-cache v2\n0\t1\n");
  CHECK_THROWS_AS(load_cache(file, t), CacheError);

  write(file, std::string(kCacheHeader) + "\n0\t1\n2\t2\n");
  try {
    PartitionTable t2;
    load_cache(file, t2);
    FAIL("expected CacheError");
  } catch (const CacheError& e) {
    CHECK(e.line() == 3);
  }

  write(file, std::string(kCacheHeader) + "\n0\t1\n1\t1");
  PartitionTable t3;
  CHECK_THROWS_AS(load_cache(file, t3), CacheError);

  write(file, std::string(kCacheHeader) + "\n0\t2\n");
  PartitionTable t4;
  CHECK_THROWS_AS(load_cache(file, t4), CacheError);
}

TEST_CASE("cache round trip reproduces the table") {
  TempDir dir;
  const fs::path file = dir.path / "cache.txt";
  PartitionTable t;
  cache_sync(file, 500, t);
  PartitionTable back;
  CHECK(load_cache(file, back) == 500);
  for (std::size_t n = 0; n <= 500; ++n) CHECK(back.at(n) == t.at(n));
}
