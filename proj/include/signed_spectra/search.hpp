#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "signed_spectra/conjectures.hpp"
#include "signed_spectra/graph.hpp"
#include "signed_spectra/spectra.hpp"
#include "signed_spectra/switching.hpp"

namespace signed_spectra {

enum class SearchMode { ExhaustiveClasses, ExhaustiveAllSignings, RandomSample };

inline std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::ExhaustiveClasses: return "classes";
    case SearchMode::ExhaustiveAllSignings: return "all";
    case SearchMode::RandomSample: return "random";
  }
  return "?";
}

inline SearchMode parse_search_mode(std::string_view name) {
  if (name == "classes") return SearchMode::ExhaustiveClasses;
  if (name == "all") return SearchMode::ExhaustiveAllSignings;
  if (name == "random") return SearchMode::RandomSample;
  throw InputError("unknown search mode '" + std::string(name) + "', expected classes, all or random");
}

struct SearchJob {
  SimpleGraph base;
  BoundKind kind = BoundKind::WangHou;
  SearchMode mode = SearchMode::ExhaustiveClasses;
  std::vector<std::size_t> k_filter;  ///< empty: every k in [1, n]
  std::uint64_t sample_count = 0;     ///< RandomSample only
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::size_t workers = 1;

  void validate() const {
    if (base.n() == 0) throw ValidationError("search job has no base graph");
    if (workers == 0) throw ValidationError("workers must be positive");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    for (auto k : k_filter) {
      if (k < 1 || k > base.n()) {
        throw ValidationError("k = " + std::to_string(k) + " outside [1, " + std::to_string(base.n()) + "]");
      }
    }
    if (mode == SearchMode::RandomSample && sample_count == 0) {
      throw ValidationError("random sampling needs a positive sample count");
    }
    if (mode != SearchMode::ExhaustiveAllSignings && !is_connected(base)) {
      throw ValidationError("switching-class search needs a connected base graph");
    }
  }
};

/// Half-open range of enumeration indices.
struct IndexRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Number of enumeration indices: 2^(m-n+1), 2^m or the sample count.
inline std::uint64_t space_size(const SearchJob& job) {
  switch (job.mode) {
    case SearchMode::ExhaustiveClasses: return ClassSpace(job.base).count();
    case SearchMode::ExhaustiveAllSignings:
      if (job.base.m() > 62) throw ValidationError("2^" + std::to_string(job.base.m()) + " signings is too many to enumerate");
      return std::uint64_t{1} << job.base.m();
    case SearchMode::RandomSample: return job.sample_count;
  }
  return 0;
}

/// `workers` contiguous ranges covering [0, space) once; sizes differ by at most one.
inline std::vector<IndexRange> partition(std::uint64_t space, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("partition: need at least one worker");
  std::vector<IndexRange> out;
  out.reserve(workers);
  const std::uint64_t base = space / workers;
  const std::uint64_t extra = space % workers;
  std::uint64_t at = 0;
  for (std::size_t i = 0; i < workers; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.push_back({at, at + len});
    at += len;
  }
  return out;
}

inline std::vector<IndexRange> partition(const SearchJob& job, std::size_t workers) {
  return partition(space_size(job), workers);
}

/// Stable fingerprint of everything that affects results (not worker count).
inline std::string job_fingerprint(const SearchJob& job) {
  std::ostringstream s;
  s << "v1|" << job.base.n();
  for (const auto& e : job.base.edges()) s << ';' << e.u << ',' << e.v;
  auto ks = job.k_filter;
  std::sort(ks.begin(), ks.end());
  s << '|' << to_string(job.kind) << '|' << to_string(job.mode) << "|k";
  for (auto k : ks) s << ',' << k;
  s << '|' << job.sample_count << '|' << job.seed << '|' << std::hexfloat << job.tol;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s.str())));
  return buf;
}

struct SearchReport {
  SearchJob job;
  std::uint64_t classes_checked = 0;
  std::vector<ViolationRecord> violations;  ///< sorted by (signs, k), deduplicated
  std::chrono::duration<double> wall_time{0};
  /// max over checked signings of max_k (sum - bound); -inf before anything is checked.
  double best_margin = -std::numeric_limits<double>::infinity();
  bool complete = false;
  std::string error;  ///< set when a worker failed

  /// Equality on everything except wall time.
  bool same_results(const SearchReport& other) const {
    return job_fingerprint(job) == job_fingerprint(other.job) && classes_checked == other.classes_checked &&
           violations == other.violations && best_margin == other.best_margin && complete == other.complete &&
           error == other.error;
  }
};

struct RunOptions {
  std::optional<std::filesystem::path> checkpoint;  ///< resume from and write to this file
  double checkpoint_interval_seconds = 10.0;
  std::ostream* progress = nullptr;                 ///< diagnostics stream
  std::uint64_t progress_every = 4096;              ///< per worker
  std::function<void(const ViolationRecord&)> on_violation;  ///< called once per new record
  std::optional<std::uint64_t> stop_after;          ///< stop (incomplete) once this many indices are checked
};

/// Per-range progress persisted in checkpoints. `next` is the first unchecked index.
struct RangeProgress {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t next = 0;

  friend bool operator==(const RangeProgress&, const RangeProgress&) = default;
};

struct CheckpointState {
  std::vector<RangeProgress> ranges;
  std::vector<ViolationRecord> violations;
  std::uint64_t classes_checked = 0;
  double best_margin = -std::numeric_limits<double>::infinity();
};

namespace detail {

/// Checks signings of one base graph; owns scratch buffers, one per worker.
class SigningEvaluator {
public:
  explicit SigningEvaluator(const SearchJob& job)
      : job_(job), label_(describe(job.base)), n_(job.base.n()), keep_k_(job.base.n() + 1, job.k_filter.empty()) {
    for (auto k : job.k_filter) keep_k_[k] = true;
    if (job.mode != SearchMode::ExhaustiveAllSignings || is_connected(job.base)) classes_.emplace(job.base);
    work_.resize(n_ * n_);
    values_.resize(n_);
  }

  struct Outcome {
    double best_margin = -std::numeric_limits<double>::infinity();
    std::vector<ViolationRecord> violations;
  };

  /// Signing for enumeration index `index`.
  SignedGraph signing_at(std::uint64_t index) const {
    switch (job_.mode) {
      case SearchMode::ExhaustiveClasses: return classes_->signing(index);
      case SearchMode::ExhaustiveAllSignings: return SignedGraph(job_.base, BitVector::from_word(index, job_.base.m()));
      case SearchMode::RandomSample: return classes_->signing(random_class(index));
    }
    return {};
  }

  /// Class index for sample `index`: uniform over the non-tree bitmasks, drawn
  /// from a generator seeded by (seed, index) so results do not depend on how
  /// samples are split across workers.
  BitVector random_class(std::uint64_t index) const {
    std::seed_seq seq{static_cast<std::uint32_t>(job_.seed), static_cast<std::uint32_t>(job_.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t dim = classes_->dimension();
    BitVector r(dim);
    for (std::size_t j = 0; j < dim; j += 64) {
      const std::uint64_t word = rng();
      for (std::size_t b = 0; b < 64 && j + b < dim; ++b) r.set(j + b, (word >> b) & 1U);
    }
    return r;
  }

  void evaluate(std::uint64_t index, Outcome& out) {
    const SignedGraph g = signing_at(index);
    auto rows = rows_for(g);
    bool violated = false;
    for (const auto& row : rows) {
      if (!keep_k_[row.k]) continue;
      out.best_margin = std::max(out.best_margin, row.margin);
      violated = violated || row.status == BoundStatus::Violated;
    }
    if (!violated) return;
    if (job_.mode == SearchMode::ExhaustiveAllSignings && classes_) {
      // Evidence is reported against the class representative.
      const SignedGraph rep = classes_->canonicalize(g).graph;
      emit(rep, rows_for(rep), out);
    } else {
      emit(g, rows, out);
    }
  }

private:
  std::vector<BoundRow> rows_for(const SignedGraph& g) {
    const auto L = laplacian(g);
    std::copy(L.data().begin(), L.data().end(), work_.begin());
    jacobi_eigenvalues(work_, n_, values_);
    return evaluate_bounds(Spectrum(values_), g.m(), job_.kind, job_.tol);
  }

  void emit(const SignedGraph& g, const std::vector<BoundRow>& rows, Outcome& out) const {
    for (const auto& row : rows) {
      if (!keep_k_[row.k] || row.status != BoundStatus::Violated) continue;
      out.violations.push_back({label_, g.signs(), job_.kind, row.k, row.sum, row.bound, row.margin});
    }
  }

  const SearchJob& job_;
  std::string label_;
  std::size_t n_;
  std::vector<bool> keep_k_;
  std::optional<ClassSpace> classes_;
  std::vector<double> work_;
  std::vector<double> values_;
};

inline nlohmann::json footer_json(const SearchJob& job, const CheckpointState& state) {
  nlohmann::json ranges = nlohmann::json::array();
  for (const auto& r : state.ranges) ranges.push_back({{"begin", r.begin}, {"end", r.end}, {"next", r.next}});
  nlohmann::json footer{{"job_hash", job_fingerprint(job)},
                        {"completed_through", std::move(ranges)},
                        {"classes_checked", state.classes_checked}};
  if (std::isfinite(state.best_margin)) {
    footer["best_margin"] = state.best_margin;
  } else {
    footer["best_margin"] = nullptr;
  }
  return footer;
}

}  // namespace detail

/// Writes records (one JSON object per line) and the progress footer, replacing
/// the file atomically.
inline void write_checkpoint(const std::filesystem::path& path, const SearchJob& job, const CheckpointState& state) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint '" + tmp.string() + "'");
    for (const auto& r : state.violations) out << nlohmann::json(r).dump() << '\n';
    out << detail::footer_json(job, state).dump() << '\n';
    if (!out.flush()) throw CheckpointError("failed writing checkpoint '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("cannot replace checkpoint '" + path.string() + "': " + ec.message());
}

/// Loads a checkpoint for `job`. A missing or empty file yields nullopt (fresh
/// start); anything unreadable or written for a different job throws.
inline std::optional<CheckpointState> read_checkpoint(const std::filesystem::path& path, const SearchJob& job) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(std::move(line));
  }
  if (lines.empty()) return std::nullopt;

  CheckpointState state;
  try {
    const auto footer = nlohmann::json::parse(lines.back());
    if (!footer.is_object() || !footer.contains("job_hash") || !footer.contains("completed_through")) {
      throw CheckpointError("checkpoint '" + path.string() + "' has no footer; start a fresh run");
    }
    if (footer.at("job_hash").get<std::string>() != job_fingerprint(job)) {
      throw CheckpointError("checkpoint '" + path.string() + "' was written for a different job (hash mismatch)");
    }
    std::uint64_t expect_begin = 0;
    std::uint64_t done = 0;
    for (const auto& r : footer.at("completed_through")) {
      RangeProgress p{r.at("begin").get<std::uint64_t>(), r.at("end").get<std::uint64_t>(),
                      r.at("next").get<std::uint64_t>()};
      if (p.begin != expect_begin || p.end < p.begin || p.next < p.begin || p.next > p.end) {
        throw CheckpointError("checkpoint '" + path.string() + "' has inconsistent ranges");
      }
      expect_begin = p.end;
      done += p.next - p.begin;
      state.ranges.push_back(p);
    }
    if (expect_begin != space_size(job)) {
      throw CheckpointError("checkpoint '" + path.string() + "' does not cover the enumeration space");
    }
    state.classes_checked = footer.at("classes_checked").get<std::uint64_t>();
    if (state.classes_checked != done) throw CheckpointError("checkpoint '" + path.string() + "' has an inconsistent count");
    if (!footer.at("best_margin").is_null()) state.best_margin = footer.at("best_margin").get<double>();

    const std::string label = describe(job.base);
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
      auto r = record_from_json(nlohmann::json::parse(lines[i]), job.base.m());
      if (r.base != label || r.kind != job.kind) {
        throw CheckpointError("checkpoint '" + path.string() + "' line " + std::to_string(i + 1) +
                              " belongs to a different job");
      }
      state.violations.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("corrupt checkpoint '" + path.string() + "': " + e.what());
  } catch (const InputError& e) {
    throw CheckpointError("corrupt checkpoint '" + path.string() + "': " + e.what());
  }
  return state;
}

/// Checks every signing in the job's scope against the chosen bound.
inline SearchReport run(const SearchJob& job, const RunOptions& options = {}) {
  job.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t space = space_size(job);

  CheckpointState state;
  std::optional<CheckpointState> resumed;
  if (options.checkpoint) resumed = read_checkpoint(*options.checkpoint, job);
  if (resumed) {
    state = std::move(*resumed);
  } else {
    for (const auto& r : partition(space, job.workers)) state.ranges.push_back({r.begin, r.end, r.begin});
  }

  std::map<std::pair<BitVector, std::size_t>, ViolationRecord> found;
  for (auto& r : state.violations) found.emplace(std::make_pair(r.signs, r.k), r);

  std::mutex mutex;
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next_range{0};
  std::string error;
  auto last_write = std::chrono::steady_clock::now();

  auto snapshot = [&] {
    state.violations.clear();
    for (const auto& [key, r] : found) state.violations.push_back(r);
    return state;
  };

  // Caller holds the mutex.
  auto merge = [&](std::size_t range_id, std::uint64_t next, std::uint64_t processed,
                   detail::SigningEvaluator::Outcome& outcome) {
    for (auto& r : outcome.violations) {
      auto [it, inserted] = found.emplace(std::make_pair(r.signs, r.k), r);
      if (inserted && options.on_violation) options.on_violation(it->second);
    }
    outcome.violations.clear();
    state.best_margin = std::max(state.best_margin, outcome.best_margin);
    state.ranges[range_id].next = next;
    state.classes_checked += processed;
    if (options.stop_after && state.classes_checked >= *options.stop_after) stop = true;
    if (options.progress) {
      const auto& r = state.ranges[range_id];
      *options.progress << "[search] range " << range_id << ": " << (r.next - r.begin) << "/" << (r.end - r.begin)
                        << " done, " << state.classes_checked << "/" << space << " total, " << found.size()
                        << " violation records\n";
    }
    if (options.checkpoint) {
      const auto now = std::chrono::steady_clock::now();
      if (std::chrono::duration<double>(now - last_write).count() >= options.checkpoint_interval_seconds) {
        write_checkpoint(*options.checkpoint, job, snapshot());
        last_write = now;
      }
    }
  };

  auto worker = [&] {
    try {
      detail::SigningEvaluator eval(job);
      for (std::size_t id = next_range++; id < state.ranges.size() && !stop; id = next_range++) {
        std::uint64_t at;
        std::uint64_t end;
        {
          std::lock_guard lock(mutex);
          at = state.ranges[id].next;
          end = state.ranges[id].end;
        }
        const std::uint64_t step = std::max<std::uint64_t>(1, options.progress_every);
        while (at < end && !stop) {
          const std::uint64_t chunk_end = std::min(end, at + step);
          detail::SigningEvaluator::Outcome outcome;
          for (std::uint64_t i = at; i < chunk_end; ++i) eval.evaluate(i, outcome);
          std::lock_guard lock(mutex);
          merge(id, chunk_end, chunk_end - at, outcome);
          at = chunk_end;
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(mutex);
      if (error.empty()) error = e.what();
      stop = true;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(job.workers, state.ranges.size()));
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SearchReport report;
  report.job = job;
  snapshot();
  report.classes_checked = state.classes_checked;
  report.violations = state.violations;
  report.best_margin = state.best_margin;
  report.error = error;
  report.complete = error.empty() && state.classes_checked == space;
  if (options.checkpoint) write_checkpoint(*options.checkpoint, job, state);
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

inline void to_json(nlohmann::json& j, const SearchJob& job) {
  j = nlohmann::json{{"base", describe(job.base)},
                     {"n", job.base.n()},
                     {"m", job.base.m()},
                     {"kind", std::string(to_string(job.kind))},
                     {"mode", std::string(to_string(job.mode))},
                     {"k_filter", job.k_filter},
                     {"samples", job.sample_count},
                     {"seed", job.seed},
                     {"tol", job.tol},
                     {"workers", job.workers},
                     {"job_hash", job_fingerprint(job)}};
}

inline void to_json(nlohmann::json& j, const SearchReport& report) {
  j = nlohmann::json{{"job", report.job},
                     {"classes_checked", report.classes_checked},
                     {"complete", report.complete},
                     {"wall_time_s", report.wall_time.count()},
                     {"violations", report.violations}};
  if (std::isfinite(report.best_margin)) {
    j["best_margin"] = report.best_margin;
  } else {
    j["best_margin"] = nullptr;
  }
  if (!report.error.empty()) j["error"] = report.error;
}

}  // namespace signed_spectra
