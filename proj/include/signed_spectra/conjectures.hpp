#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "signed_spectra/graph.hpp"
#include "signed_spectra/spectra.hpp"

namespace signed_spectra {

/// Brouwer: e(G) + C(k+1, 2). WangHou (signed graphs): one more.
enum class BoundKind { Brouwer, WangHou };

inline constexpr double kDefaultTolerance = 1e-9;

inline std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Brouwer ? "brouwer" : "wang-hou";
}

inline BoundKind parse_bound_kind(std::string_view name) {
  if (name == "brouwer") return BoundKind::Brouwer;
  if (name == "wang-hou") return BoundKind::WangHou;
  throw InputError("unknown bound '" + std::string(name) + "', expected brouwer or wang-hou");
}

/// Exact integer bound on the sum of the k largest Laplacian eigenvalues.
inline std::int64_t bound(BoundKind kind, std::int64_t m, std::int64_t k) {
  if (m < 0 || k < 1) throw std::invalid_argument("bound: need m >= 0 and k >= 1");
  // k(k+1)/2 + m + 1 must fit in int64.
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  if (k > 3'000'000'000LL || m > kMax - k * (k + 1) / 2 - 1) throw std::overflow_error("bound: overflow");
  return m + k * (k + 1) / 2 + (kind == BoundKind::WangHou ? 1 : 0);
}

enum class BoundStatus { Holds, Tie, Violated };

/// One row of the per-k table: sum of the k largest eigenvalues against the bound.
struct BoundRow {
  std::size_t k = 0;
  double sum = 0.0;
  std::int64_t bound = 0;
  double margin = 0.0;
  BoundStatus status = BoundStatus::Holds;
};

/// Classifies every k in [1, n]. |margin| <= tol is a tie, margin > tol a violation.
inline std::vector<BoundRow> evaluate_bounds(const Spectrum& s, std::size_t m, BoundKind kind,
                                             double tol = kDefaultTolerance) {
  std::vector<BoundRow> rows;
  rows.reserve(s.size());
  for (std::size_t k = 1; k <= s.size(); ++k) {
    BoundRow row;
    row.k = k;
    row.sum = top_k_sum(s, k);
    row.bound = bound(kind, static_cast<std::int64_t>(m), static_cast<std::int64_t>(k));
    row.margin = row.sum - static_cast<double>(row.bound);
    row.status = row.margin > tol ? BoundStatus::Violated
                 : row.margin >= -tol ? BoundStatus::Tie
                                      : BoundStatus::Holds;
    rows.push_back(row);
  }
  // Sum of all eigenvalues is 2m <= m + n(n+1)/2 for every simple graph.
  assert(rows.empty() || rows.back().status != BoundStatus::Violated);
  return rows;
}

/// Evidence of a violated bound for one signing and one k.
struct ViolationRecord {
  std::string base;  ///< base graph label, e.g. "K7"
  BitVector signs;   ///< sign bits over the canonical edge order
  BoundKind kind = BoundKind::WangHou;
  std::size_t k = 0;
  double sum = 0.0;
  std::int64_t bound = 0;
  double margin = 0.0;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

/// Records for every k with sum - bound > tol, ascending k.
inline std::vector<ViolationRecord> check_all_k(const Spectrum& s, std::size_t m, BoundKind kind,
                                                double tol = kDefaultTolerance) {
  std::vector<ViolationRecord> out;
  for (const auto& row : evaluate_bounds(s, m, kind, tol)) {
    if (row.status != BoundStatus::Violated) continue;
    ViolationRecord r;
    r.kind = kind;
    r.k = row.k;
    r.sum = row.sum;
    r.bound = row.bound;
    r.margin = row.margin;
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ViolationRecord> check_graph(const SignedGraph& g, BoundKind kind,
                                                double tol = kDefaultTolerance) {
  auto records = check_all_k(eigenvalues(laplacian(g)), g.m(), kind, tol);
  const std::string label = describe(g.base());
  for (auto& r : records) {
    r.base = label;
    r.signs = g.signs();
  }
  return records;
}

inline void to_json(nlohmann::json& j, const ViolationRecord& r) {
  j = nlohmann::json{{"base", r.base},  {"signs_hex", r.signs.to_hex()},
                     {"kind", std::string(to_string(r.kind))},
                     {"k", r.k},        {"sum", r.sum},
                     {"bound", r.bound}, {"margin", r.margin}};
}

/// Parses a record; `edge_count` sizes the sign vector. When omitted it is
/// inferred from a "K<n>" base label.
inline ViolationRecord record_from_json(const nlohmann::json& j, std::optional<std::size_t> edge_count = {}) {
  ViolationRecord r;
  try {
    r.base = j.at("base").get<std::string>();
    if (!edge_count) {
      if (r.base.size() < 2 || r.base[0] != 'K') {
        throw InputError("cannot infer edge count for base '" + r.base + "'");
      }
      const auto n = std::stoull(r.base.substr(1));
      edge_count = n * (n - 1) / 2;
    }
    r.signs = BitVector::from_hex(j.at("signs_hex").get<std::string>(), *edge_count);
    r.kind = parse_bound_kind(j.at("kind").get<std::string>());
    r.k = j.at("k").get<std::size_t>();
    r.sum = j.at("sum").get<double>();
    r.bound = j.at("bound").get<std::int64_t>();
    r.margin = j.at("margin").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed violation record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed violation record: ") + e.what());
  }
  return r;
}

}  // namespace signed_spectra
