#pragma once

// Command-line front end. Exit codes: 0 bound holds / success, 1 usage error,
// 2 input error, 3 violation found, 4 reproduction mismatch.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "signed_spectra/conjectures.hpp"
#include "signed_spectra/fixtures.hpp"
#include "signed_spectra/io.hpp"
#include "signed_spectra/search.hpp"
#include "signed_spectra/spectra.hpp"

namespace signed_spectra::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kViolation = 3, kReproMismatch = 4 };

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  // Avoid printing "-0.000000".
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

inline std::string_view to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Holds: return "holds";
    case BoundStatus::Tie: return "tie";
    case BoundStatus::Violated: return "VIOLATED";
  }
  return "?";
}

inline nlohmann::json rows_json(const std::vector<BoundRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k},
                   {"sum", r.sum},
                   {"bound", r.bound},
                   {"margin", r.margin},
                   {"status", r.status == BoundStatus::Violated ? "violated"
                              : r.status == BoundStatus::Tie    ? "tie"
                                                                : "holds"}});
  }
  return out;
}

inline void print_rows(std::ostream& out, const std::vector<BoundRow>& rows) {
  char line[160];
  std::snprintf(line, sizeof line, "%4s %14s %8s %14s  %s\n", "k", "sum", "bound", "margin", "status");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%4zu %14s %8lld %14s  %s\n", r.k, fixed6(r.sum).c_str(),
                  static_cast<long long>(r.bound), fixed6(r.margin).c_str(), std::string(to_string(r.status)).c_str());
    out << line;
  }
}

inline std::string describe_record(const ViolationRecord& r) {
  return "violation: base=" + r.base + " signs=" + r.signs.to_hex() + " bound=" + std::string(to_string(r.kind)) +
         " k=" + std::to_string(r.k) + " sum=" + fixed6(r.sum) + " bound_value=" + std::to_string(r.bound) +
         " margin=" + fixed6(r.margin);
}

/// "K7" -> complete graph on 7 vertices.
inline SimpleGraph parse_base_name(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'K' && name[0] != 'k')) {
    throw InputError("unknown base '" + name + "', expected K<n> or an edge-list file");
  }
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(name.substr(1), &used);
    if (used != name.size() - 1) throw std::invalid_argument(name);
  } catch (const std::logic_error&) {
    throw InputError("unknown base '" + name + "', expected K<n>");
  }
  return complete_graph(n);
}

struct CheckArgs {
  std::string input;
  std::string bound = "wang-hou";
  double tol = kDefaultTolerance;
  std::string format = "human";
};

inline int cmd_check(const CheckArgs& a, std::ostream& out) {
  const auto g = parse_graph(read_file(a.input));
  const auto kind = parse_bound_kind(a.bound);
  const auto spectrum = eigenvalues(laplacian(g));
  const auto rows = evaluate_bounds(spectrum, g.m(), kind, a.tol);
  auto violations = check_all_k(spectrum, g.m(), kind, a.tol);
  for (auto& r : violations) {
    r.base = describe(g.base());
    r.signs = g.signs();
  }
  if (a.format == "json") {
    nlohmann::json j{{"base", describe(g.base())}, {"n", g.n()},       {"m", g.m()},
                     {"signs_hex", g.signs().to_hex()}, {"kind", std::string(to_string(kind))},
                     {"tol", a.tol},                  {"rows", rows_json(rows)}, {"violations", violations}};
    out << j.dump() << '\n';
  } else {
    out << "graph " << describe(g.base()) << " (n=" << g.n() << ", m=" << g.m() << "), bound " << to_string(kind)
        << ", tol " << a.tol << "\n";
    print_rows(out, rows);
    for (const auto& r : violations) out << describe_record(r) << '\n';
    if (violations.empty()) out << "bound holds for every k\n";
  }
  return violations.empty() ? kOk : kViolation;
}

struct SpectrumArgs {
  std::string input;
  std::string format = "human";
};

inline int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const auto g = parse_graph(read_file(a.input));
  const auto s = eigenvalues(laplacian(g));
  if (a.format == "json") {
    const auto prefix = s.prefix();
    nlohmann::json j{{"base", describe(g.base())},
                     {"n", g.n()},
                     {"m", g.m()},
                     {"eigenvalues", std::vector<double>(s.values().begin(), s.values().end())},
                     {"prefix_sums", std::vector<double>(prefix.begin() + 1, prefix.end())}};
    out << j.dump() << '\n';
  } else {
    out << "   i     eigenvalue     prefix_sum\n";
    char line[96];
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::snprintf(line, sizeof line, "%4zu %14s %14s\n", i + 1, fixed6(s.values()[i]).c_str(),
                    fixed6(s.prefix()[i + 1]).c_str());
      out << line;
    }
  }
  return kOk;
}

struct SearchArgs {
  std::string base;
  std::string input;
  std::string bound = "wang-hou";
  std::string mode = "classes";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string checkpoint;
  std::vector<std::size_t> k;
  double tol = kDefaultTolerance;
  std::string format = "human";
  bool quiet = false;
};

inline int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  SearchJob job;
  job.base = !a.base.empty() ? parse_base_name(a.base) : parse_graph(read_file(a.input)).base();
  job.kind = parse_bound_kind(a.bound);
  job.mode = parse_search_mode(a.mode);
  job.sample_count = a.samples;
  job.seed = a.seed;
  job.workers = a.workers;
  job.k_filter = a.k;
  job.tol = a.tol;
  job.validate();

  std::mutex out_mutex;
  RunOptions opts;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
  if (!a.quiet) opts.progress = &err;
  const bool json = a.format == "json";
  opts.on_violation = [&](const ViolationRecord& r) {
    std::lock_guard lock(out_mutex);
    if (json) {
      out << nlohmann::json(r).dump() << '\n';
    } else {
      out << describe_record(r) << '\n';
    }
  };

  const auto report = run(job, opts);
  if (json) {
    out << nlohmann::json(report).dump() << '\n';
  } else {
    out << "search " << describe(job.base) << " bound " << to_string(job.kind) << " mode " << to_string(job.mode)
        << ": checked " << report.classes_checked << (report.complete ? "" : " (INCOMPLETE)") << ", "
        << report.violations.size() << " violation records, best margin "
        << (std::isfinite(report.best_margin) ? fixed6(report.best_margin) : std::string("n/a")) << ", "
        << report.wall_time.count() << " s\n";
  }
  if (!report.error.empty()) {
    err << "error: " << report.error << '\n';
    return kInput;
  }
  return report.violations.empty() ? kOk : kViolation;
}

struct ReproArgs {
  int example = 0;
  std::string format = "human";
  std::string dump;
};

inline constexpr double kPaperTolerance = 1e-3;

inline int cmd_repro(const ReproArgs& a, std::ostream& out, std::ostream& err) {
  const auto ex = fixtures::example(a.example);
  if (!a.dump.empty()) {
    std::ofstream f(a.dump, std::ios::binary);
    if (!f) throw InputError("cannot write '" + a.dump + "'");
    f << format_matrix_text(ex.laplacian);
  }
  const auto g = from_laplacian_matrix(ex.laplacian);
  const auto s = eigenvalues(laplacian(g));
  const auto violations = check_graph(g, BoundKind::WangHou);

  std::vector<std::string> mismatches;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.values()[i] - ex.eigenvalues[i]) > kPaperTolerance) {
      mismatches.push_back("eigenvalue " + std::to_string(i + 1) + " = " + fixed6(s.values()[i]));
    }
  }
  if (violations.size() != 1 || violations[0].k != ex.k) {
    mismatches.push_back("expected exactly one violation at k = " + std::to_string(ex.k));
  } else {
    if (std::abs(violations[0].sum - ex.sum) > kPaperTolerance) mismatches.push_back("sum " + fixed6(violations[0].sum));
    if (violations[0].bound != ex.bound) mismatches.push_back("bound " + std::to_string(violations[0].bound));
  }
  const bool ok = mismatches.empty();

  if (a.format == "json") {
    nlohmann::json j{{"example", ex.id},
                     {"eigenvalues", std::vector<double>(s.values().begin(), s.values().end())},
                     {"violations", violations},
                     {"reproduced", ok}};
    out << j.dump() << '\n';
  } else {
    out << "example " << ex.id << ": signed " << describe(g.base()) << ", Wang-Hou bound\n";
    out << "eigenvalues:";
    for (double v : s.values()) out << ' ' << fixed6(v);
    out << '\n';
    for (const auto& r : violations) {
      out << "k=" << r.k << " sum=" << fixed6(r.sum) << " bound=" << r.bound << " margin=" << fixed6(r.margin) << '\n';
    }
    out << (ok ? "reproduced\n" : "NOT reproduced\n");
  }
  for (const auto& m : mismatches) err << "mismatch: " << m << '\n';
  return ok ? kOk : kReproMismatch;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Laplacian spectra of signed graphs and the Brouwer / Wang-Hou eigenvalue-sum bounds"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"human", "json"};
  const std::vector<std::string> bounds{"brouwer", "wang-hou"};

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a bound for every k on one signed graph");
  check_cmd->add_option("input", check.input, "Edge-list or Laplacian-matrix file")->required();
  check_cmd->add_option("--bound", check.bound, "brouwer or wang-hou")->check(CLI::IsMember(bounds))->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "Violation tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  check_cmd->add_option("--format", check.format)->check(CLI::IsMember(formats))->capture_default_str();

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Print the Laplacian eigenvalues and prefix sums");
  spectrum_cmd->add_option("input", spectrum.input, "Edge-list or Laplacian-matrix file")->required();
  spectrum_cmd->add_option("--format", spectrum.format)->check(CLI::IsMember(formats))->capture_default_str();

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Search signings of a base graph for violations");
  auto* base_opt = search_cmd->add_option("--base", search.base, "Complete base graph, e.g. K7");
  auto* input_opt = search_cmd->add_option("--input", search.input, "Edge-list file giving the base graph");
  base_opt->excludes(input_opt);
  input_opt->excludes(base_opt);
  search_cmd->add_option("--bound", search.bound)->check(CLI::IsMember(bounds))->capture_default_str();
  search_cmd->add_option("--mode", search.mode, "classes, all or random")
      ->check(CLI::IsMember({"classes", "all", "random"}))
      ->capture_default_str();
  search_cmd->add_option("--samples", search.samples, "Sample count for --mode random");
  search_cmd->add_option("--seed", search.seed)->capture_default_str();
  search_cmd->add_option("--workers", search.workers)
      ->envname("SIGNED_SPECTRA_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--checkpoint", search.checkpoint, "JSON-lines checkpoint to resume from and update");
  search_cmd->add_option("--k", search.k, "Only check these k (repeatable)");
  search_cmd->add_option("--tol", search.tol)->check(CLI::PositiveNumber)->capture_default_str();
  search_cmd->add_option("--format", search.format)->check(CLI::IsMember(formats))->capture_default_str();
  search_cmd->add_flag("--quiet", search.quiet, "No progress on stderr");

  ReproArgs repro;
  auto* repro_cmd = app.add_subcommand("repro", "Reproduce a built-in counterexample");
  repro_cmd->add_option("--example", repro.example, "1 (signed K7) or 2 (signed K8)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  repro_cmd->add_option("--format", repro.format)->check(CLI::IsMember(formats))->capture_default_str();
  repro_cmd->add_option("--dump", repro.dump, "Also write the fixture matrix to this file");

  try {
    app.parse(argc, argv);
    if (search_cmd->parsed() && search.base.empty() && search.input.empty()) {
      throw CLI::RequiredError("--base or --input");
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (app.get_subcommands().size() == 1) out << app.get_subcommands().front()->help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check, out);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum, out);
    if (search_cmd->parsed()) return cmd_search(search, out, err);
    if (repro_cmd->parsed()) return cmd_repro(repro, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kInput;
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

}  // namespace signed_spectra::cli
