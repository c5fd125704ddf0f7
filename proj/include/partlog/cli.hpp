#pragma once

// Command-line front end. `run` never throws; every outcome maps to an exit
// code:
//   0  success / verified
//   1  counterexample found
//   2  indeterminate (precision exhausted)
//   3  usage or I/O error, message and usage text on `err`

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace partlog::cli {

enum class Format { text, json, csv };

struct CliConfig {
  std::filesystem::path cache_path = "./partlog-cache.txt";
  bool use_cache = true;
  long prec_init = 96;
  long prec_max = 16384;
  int jobs = 1;
  Format format = Format::text;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 3;

/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace partlog::cli
