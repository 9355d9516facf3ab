#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signed_spectra/errors.hpp"
#include "signed_spectra/graph.hpp"

namespace signed_spectra {

/// Dense square integer matrix, row-major.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> entries;

  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : n(dim), entries(dim * dim, 0) {}

  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw ValidationError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(rows.size()));
      }
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

/// Non-blank lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string_view>>> tokenize_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++lineno;
    auto tokens = split_ws(text.substr(pos, end - pos));
    if (!tokens.empty()) lines.emplace_back(lineno, std::move(tokens));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

}  // namespace detail

/// Reads the "n m" header followed by m lines of "i j s", s in {+1, -1}.
inline SignedGraph parse_edge_list(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected header 'n m'");
  const auto& [header_line, header] = lines.front();
  if (header.size() != 2) throw ParseError(header_line, "header must be 'n m'");
  const auto n = detail::parse_int<std::size_t>(header[0], header_line, "vertex count");
  const auto m = detail::parse_int<std::size_t>(header[1], header_line, "edge count");
  if (n == 0) throw ParseError(header_line, "vertex count must be positive");
  if (m > n * (n - 1) / 2) {
    throw ParseError(header_line, "edge count " + std::to_string(m) + " exceeds n(n-1)/2");
  }
  if (lines.size() - 1 != m) {
    const std::size_t at = lines.size() - 1 < m ? lines.back().first : lines[m + 1].first;
    throw ParseError(at, "header declares " + std::to_string(m) + " edges but " +
                             std::to_string(lines.size() - 1) + " edge lines are present");
  }

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<bool> negative;
  std::vector<std::size_t> line_of;
  pairs.reserve(m);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& [lineno, tok] = lines[r];
    if (tok.size() != 3) throw ParseError(lineno, "edge line must be 'i j s'");
    const auto i = detail::parse_int<std::size_t>(tok[0], lineno, "vertex index");
    const auto j = detail::parse_int<std::size_t>(tok[1], lineno, "vertex index");
    if (i >= n || j >= n) throw ParseError(lineno, "vertex index out of range for n = " + std::to_string(n));
    if (i == j) throw ParseError(lineno, "self-loop at vertex " + std::to_string(i));
    const std::string_view s = tok[2];
    bool neg = false;
    if (s == "-1") {
      neg = true;
    } else if (s != "+1" && s != "1") {
      throw ParseError(lineno, "malformed sign '" + std::string(s) + "', expected +1 or -1");
    }
    pairs.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    negative.push_back(neg);
    line_of.push_back(lineno);
  }

  // Duplicates are reported against the later of the two lines.
  {
    std::vector<std::pair<Edge, std::size_t>> keyed;
    keyed.reserve(pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      auto [a, b] = pairs[r];
      keyed.emplace_back(a < b ? Edge{a, b} : Edge{b, a}, r);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t r = 1; r < keyed.size(); ++r) {
      if (keyed[r].first == keyed[r - 1].first) {
        throw ParseError(line_of[keyed[r].second],
                         "duplicate edge (" + std::to_string(keyed[r].first.u) + ", " +
                             std::to_string(keyed[r].first.v) + ")");
      }
    }
  }

  auto base = SimpleGraph::from_edges(n, pairs);
  BitVector signs(m);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    if (negative[r]) signs.set(*base.edge_index(pairs[r].first, pairs[r].second), true);
  }
  return SignedGraph(std::move(base), std::move(signs));
}

/// Inverse of parse_edge_list; edges in canonical order.
inline std::string serialize(const SignedGraph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (std::size_t t = 0; t < g.m(); ++t) {
    const auto& e = g.base().edge(t);
    out += std::to_string(e.u) + " " + std::to_string(e.v) + (g.is_negative(t) ? " -1\n" : " +1\n");
  }
  return out;
}

/// Reads "n" followed by n rows of n integers.
inline IntMatrix parse_matrix_text(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected header 'n'");
  const auto& [header_line, header] = lines.front();
  if (header.size() != 1) throw ParseError(header_line, "matrix header must be a single dimension 'n'");
  const auto n = detail::parse_int<std::size_t>(header[0], header_line, "dimension");
  if (n == 0) throw ParseError(header_line, "dimension must be positive");
  if (lines.size() - 1 != n) {
    const std::size_t at = lines.size() - 1 < n ? lines.back().first : lines[n + 1].first;
    throw ParseError(at, "expected " + std::to_string(n) + " matrix rows, found " +
                             std::to_string(lines.size() - 1));
  }
  IntMatrix mat(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [lineno, tok] = lines[r + 1];
    if (tok.size() != n) {
      throw ParseError(lineno, "row has " + std::to_string(tok.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) mat(r, c) = detail::parse_int<std::int64_t>(tok[c], lineno, "matrix entry");
  }
  return mat;
}

inline std::string format_matrix_text(const IntMatrix& mat) {
  std::string out = std::to_string(mat.n) + "\n";
  for (std::size_t i = 0; i < mat.n; ++i) {
    for (std::size_t j = 0; j < mat.n; ++j) {
      if (j) out += ' ';
      out += std::to_string(mat(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Exact integer L = D - A(G_sigma).
inline IntMatrix integer_laplacian(const SignedGraph& g) {
  IntMatrix mat(g.n());
  for (std::size_t t = 0; t < g.m(); ++t) {
    const auto& e = g.base().edge(t);
    mat(e.u, e.u) += 1;
    mat(e.v, e.v) += 1;
    mat(e.u, e.v) = -g.sign(t);
    mat(e.v, e.u) = -g.sign(t);
  }
  return mat;
}

/// Recovers the signing from L = D - A(G_sigma): an entry +1 is a negative
/// edge, -1 a positive edge.
inline SignedGraph from_laplacian_matrix(const IntMatrix& mat) {
  if (mat.n == 0) throw ValidationError("Laplacian matrix must be at least 1x1");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<bool> negative;
  for (std::size_t i = 0; i < mat.n; ++i) {
    std::int64_t nonzero = 0;
    for (std::size_t j = 0; j < mat.n; ++j) {
      if (i == j) continue;
      const auto a = mat(i, j);
      if (a != mat(j, i)) {
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + ")");
      }
      if (a < -1 || a > 1) {
        throw ValidationError("off-diagonal entry " + std::to_string(a) + " at (" + std::to_string(i + 1) +
                              ", " + std::to_string(j + 1) + ") is outside {-1, 0, 1}");
      }
      if (a != 0) {
        ++nonzero;
        if (i < j) {
          pairs.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
          negative.push_back(a == 1);
        }
      }
    }
    if (mat(i, i) != nonzero) {
      throw ValidationError("diagonal entry " + std::to_string(mat(i, i)) + " in row " + std::to_string(i + 1) +
                            " does not match degree " + std::to_string(nonzero));
    }
  }
  // Pairs are produced in canonical order already.
  auto base = SimpleGraph::from_edges(mat.n, std::move(pairs));
  BitVector signs(base.m());
  for (std::size_t t = 0; t < negative.size(); ++t) signs.set(t, negative[t]);
  return SignedGraph(std::move(base), std::move(signs));
}

enum class InputFormat { EdgeList, LaplacianMatrix };

/// A one-token header means a Laplacian matrix, two tokens an edge list.
inline InputFormat detect_format(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const auto& [lineno, header] = lines.front();
  if (header.size() == 1) return InputFormat::LaplacianMatrix;
  if (header.size() == 2) return InputFormat::EdgeList;
  throw ParseError(lineno, "unrecognised header: expected 'n m' (edge list) or 'n' (Laplacian matrix)");
}

inline SignedGraph parse_graph(std::string_view text) {
  return detect_format(text) == InputFormat::EdgeList ? parse_edge_list(text)
                                                      : from_laplacian_matrix(parse_matrix_text(text));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace signed_spectra
