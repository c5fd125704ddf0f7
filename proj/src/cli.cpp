#include "partlog/cli.hpp"

#include "partlog/bounds.hpp"
#include "partlog/diffcalc.hpp"
#include "partlog/hrr.hpp"
#include "partlog/partitions.hpp"
#include "partlog/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>
#include <utility>
#include <vector>

namespace partlog::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Loads/extends the cache (or a bare table with --no-cache) through p(upto).
void ensure_table(const CliConfig& cfg, std::size_t upto, PartitionTable& table) {
  if (cfg.use_cache) {
    cache_sync(cfg.cache_path, upto, table);
  } else {
    table.extend_to(upto);
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

void finish_output(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

ordered_json interval_json(const Interval& x) {
  return {{"lo", x.lo_str()}, {"hi", x.hi_str()}, {"mid", x.mid_str()}, {"width", fmt_double(x.width_double())}};
}

// Named intervals printed as an aligned text block, a JSON object or CSV.
void emit_named(std::ostream& out, Format format, long n,
                const std::vector<std::pair<std::string, Interval>>& items) {
  switch (format) {
    case Format::json: {
      ordered_json j;
      j["n"] = n;
      for (const auto& [name, x] : items) j[name] = interval_json(x);
      out << j.dump(2) << '\n';
      return;
    }
    case Format::csv:
      out << "name,lo,hi,mid,width\n";
      for (const auto& [name, x] : items) {
        out << name << ',' << x.lo_str() << ',' << x.hi_str() << ',' << x.mid_str() << ','
            << fmt_double(x.width_double()) << '\n';
      }
      return;
    case Format::text:
      out << "n = " << n << '\n';
      for (const auto& [name, x] : items) {
        out << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << x.mid_str()
            << "  (width " << fmt_double(x.width_double()) << ")\n";
      }
      return;
  }
}

int exit_for(verify::Status s) {
  switch (s) {
    case verify::Status::verified: return kExitOk;
    case verify::Status::failed: return kExitCounterexample;
    case verify::Status::indeterminate: return kExitIndeterminate;
  }
  return kExitUsage;
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

void emit_report(std::ostream& out, Format format, const verify::VerificationReport& r) {
  if (format == Format::json) {
    out << verify::to_json(r) << '\n';
    return;
  }
  if (format == Format::csv) {
    out << "theorem,from,to,status,failures,indeterminates,max_bits_used,wall_time_ms\n"
        << r.theorem << ',' << r.from << ',' << r.to << ',' << verify::to_string(r.status) << ",\""
        << join(r.failures) << "\",\"" << join(r.indeterminates) << "\"," << r.max_bits_used << ','
        << r.wall_time_ms << '\n';
    return;
  }
  out << r.theorem << " on [" << r.from << ", " << r.to << "]: " << verify::to_string(r.status) << '\n';
  if (!r.failures.empty()) out << "failures (" << r.failures.size() << "): " << join(r.failures) << '\n';
  if (!r.indeterminates.empty()) {
    out << "indeterminate (" << r.indeterminates.size() << "): " << join(r.indeterminates) << '\n';
  }
  out << "max bits " << r.max_bits_used << ", " << r.wall_time_ms << " ms\n";
}

PrecisionPolicy policy_of(const CliConfig& cfg) {
  PrecisionPolicy p;
  p.initial_bits = cfg.prec_init;
  p.max_bits = cfg.prec_max;
  p.validate();
  return p;
}

void check_config(const CliConfig& cfg) {
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (cfg.prec_init < 2) throw UsageError("--prec-init must be >= 2");
  if (cfg.prec_init > cfg.prec_max) throw UsageError("--prec-init must be <= --prec-max");
}

void check_prec(long bits) {
  if (bits < 2) throw UsageError("--prec must be >= 2");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  const unsigned hw = std::thread::hardware_concurrency();
  cfg.jobs = hw == 0 ? 1 : static_cast<int>(hw);

  CLI::App app{"Exact partition numbers and certified verification of their log-convexity inequalities",
               "partlog"};
  app.require_subcommand(1);
  std::string cache_path = cfg.cache_path.string();
  app.add_option("--cache", cache_path, "Partition cache file")->capture_default_str();
  app.add_flag("--no-cache", [&](std::int64_t) { cfg.use_cache = false; }, "Do not read or write the cache");
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads");
  app.add_option("--prec-init", cfg.prec_init, "Initial working precision in bits")->capture_default_str();
  app.add_option("--prec-max", cfg.prec_max, "Precision ceiling in bits")->capture_default_str();
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  long n = 0;
  long a = 0;
  long b = 0;
  long bits = 128;
  std::string out_path;
  std::string name;
  std::string json_path;
  std::string grid_spec;
  long stride = 1;

  auto* p_cmd = app.add_subcommand("p", "Print p(n)");
  p_cmd->add_option("n", n)->required()->check(CLI::NonNegativeNumber);

  auto* range_cmd = app.add_subcommand("p-range", "Write n<TAB>p(n) for a <= n <= b");
  range_cmd->add_option("a", a)->required()->check(CLI::NonNegativeNumber);
  range_cmd->add_option("b", b)->required()->check(CLI::NonNegativeNumber);
  range_cmd->add_option("--out", out_path)->required();

  auto* hrr_cmd = app.add_subcommand("hrr", "Two-term HRR decomposition at n");
  hrr_cmd->add_option("n", n)->required()->check(CLI::PositiveNumber);
  hrr_cmd->add_option("--prec", bits)->capture_default_str();

  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the bound functions at n");
  bounds_cmd->add_option("n", n)->required()->check(CLI::Range(2L, 1L << 40));
  bounds_cmd->add_option("--prec", bits)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Certify a statement over a range of n");
  verify_cmd->add_option("theorem", name)->required();
  verify_cmd->add_option("--from", a)->required();
  verify_cmd->add_option("--to", b)->required();
  verify_cmd->add_option("--stride", stride)->capture_default_str();
  verify_cmd->add_option("--json", json_path, "Also write the report to this file");

  auto* aux_cmd = app.add_subcommand("aux", "Certify an auxiliary inequality over a range");
  aux_cmd->add_option("inequality", name)->required();
  aux_cmd->add_option("--from", a)->required();
  aux_cmd->add_option("--to", b)->required();
  aux_cmd->add_option("--stride", stride)->capture_default_str();

  auto* table_cmd = app.add_subcommand("table", "Scaled second differences against their limits");
  table_cmd->add_option("kind", name)->required()->check(CLI::IsMember({"pi24", "alpha"}));
  table_cmd->add_option("--grid", grid_spec)->required();
  table_cmd->add_option("--csv", out_path)->required();
  table_cmd->add_option("--prec", bits)->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI::App* active = &app;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    cfg.cache_path = cache_path;
    cfg.format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
    check_config(cfg);
    for (auto* sub : app.get_subcommands()) active = sub;

    PartitionTable table;

    if (*p_cmd) {
      ensure_table(cfg, static_cast<std::size_t>(n), table);
      const std::string value = table.value(static_cast<std::size_t>(n)).get_str();
      if (cfg.format == Format::json) {
        out << ordered_json{{"n", n}, {"p", value}}.dump() << '\n';
      } else if (cfg.format == Format::csv) {
        out << "n,p\n" << n << ',' << value << '\n';
      } else {
        out << value << '\n';
      }
      return kExitOk;
    }

    if (*range_cmd) {
      if (a > b) throw UsageError("p-range: need a <= b");
      ensure_table(cfg, static_cast<std::size_t>(b), table);
      auto f = open_output(out_path);
      const char sep = cfg.format == Format::csv ? ',' : '\t';
      if (cfg.format == Format::csv) f << "n,p\n";
      for (long k = a; k <= b; ++k) f << k << sep << table.at(static_cast<std::size_t>(k)).get_str() << '\n';
      finish_output(f, out_path);
      if (cfg.format == Format::text) out << "wrote p(" << a << ".." << b << ") to " << out_path << '\n';
      return kExitOk;
    }

    if (*hrr_cmd) {
      check_prec(bits);
      ensure_table(cfg, static_cast<std::size_t>(n), table);
      const auto d = hrr::hrr_residuals(n, bits, table);
      emit_named(out, cfg.format, n,
                 {{"mu", d.mu},
                  {"T_tilde", d.t_tilde},
                  {"T", d.t_two_term},
                  {"lehmer_bound", d.lehmer_bound},
                  {"y_tilde", d.y_tilde},
                  {"E_tilde", d.e_tilde},
                  {"R_tilde_majorant", d.r_tilde_majorant}});
      return kExitOk;
    }

    if (*bounds_cmd) {
      check_prec(bits);
      const auto e = bounds::evaluate_bounds(n, bits);
      emit_named(out, cfg.format, n,
                 {{"B1", e.b1},
                  {"B2", e.b2},
                  {"envelope", e.e_env},
                  {"C", e.c_val},
                  {"D", e.d_val},
                  {"dp_upper", e.dp_upper},
                  {"cwx_upper", e.cwx_upper},
                  {"thm32_upper", e.thm32_upper}});
      return kExitOk;
    }

    if (*verify_cmd) {
      const auto id = verify::theorem_from_name(name);
      verify::VerifyOptions opts;
      opts.policy = policy_of(cfg);
      opts.stride = stride;
      opts.jobs = cfg.jobs;
      if (a > b) throw UsageError("verify: need --from <= --to");
      if (a < verify::min_center(id)) {
        throw UsageError(name + " is defined for n >= " + std::to_string(verify::min_center(id)));
      }
      if (stride > 1 && !verify::allows_stride(id)) throw UsageError(name + " must be checked with stride 1");
      if (verify::needs_partitions(id)) ensure_table(cfg, static_cast<std::size_t>(b + 2), table);
      const auto report = verify::verify_theorem(id, a, b, opts, table);
      emit_report(out, cfg.format, report);
      if (!json_path.empty()) {
        auto f = open_output(json_path);
        f << verify::to_json(report) << '\n';
        finish_output(f, json_path);
      }
      return exit_for(report.status);
    }

    if (*aux_cmd) {
      const auto id = verify::aux_from_name(name);
      verify::VerifyOptions opts;
      opts.policy = policy_of(cfg);
      opts.stride = stride;
      opts.jobs = cfg.jobs;
      const auto report = verify::verify_aux_inequality(id, a, b, opts);
      emit_report(out, cfg.format, report);
      return exit_for(report.status);
    }

    if (*table_cmd) {
      check_prec(bits);
      const auto kind = diffcalc::limit_kind_from_name(name);
      const auto grid = diffcalc::parse_grid(grid_spec);
      if (grid.empty()) throw UsageError("table: empty grid");
      if (grid.front() < 2) throw UsageError("table: grid entries must be >= 2");
      ensure_table(cfg, static_cast<std::size_t>(grid.back() + 2), table);
      const auto rows = diffcalc::limit_table(kind, grid, bits, table, cfg.jobs);
      auto f = open_output(out_path);
      f << "n,value_lo,value_hi,target,abs_dev\n";
      for (const auto& r : rows) {
        f << r.n << ',' << r.value.lo_str() << ',' << r.value.hi_str() << ',' << r.target.mid_str() << ','
          << fmt_double(r.abs_dev) << '\n';
      }
      finish_output(f, out_path);
      if (cfg.format == Format::text) {
        for (const auto& r : rows) out << r.n << "  " << r.value.mid_str(12) << "  dev " << fmt_double(r.abs_dev) << '\n';
      }
      return kExitOk;
    }
    throw UsageError("no subcommand given");
  } catch (const CLI::CallForHelp&) {
    out << active->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace partlog::cli
