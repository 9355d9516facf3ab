#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "signed_spectra/errors.hpp"
#include "signed_spectra/graph.hpp"

namespace signed_spectra {

/// Dense real symmetric matrix, full row-major storage.
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Throws ValidationError unless `rows` is square, symmetric and finite.
  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    SymmetricMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ValidationError("matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (!std::isfinite(rows[i][j])) throw ValidationError("matrix has a non-finite entry");
        m.data_[i * m.n_ + j] = rows[i][j];
      }
    }
    for (std::size_t i = 0; i < m.n_; ++i) {
      for (std::size_t j = i + 1; j < m.n_; ++j) {
        if (m(i, j) != m(j, i)) throw ValidationError("matrix is not symmetric");
      }
    }
    return m;
  }

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }

  std::span<const double> data() const noexcept { return data_; }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
  }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues in non-increasing order; prefix[k] is the sum of the k largest.
class Spectrum {
public:
  Spectrum() = default;

  /// Sorts `values` non-increasing and builds the prefix sums.
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
    prefix_.assign(values_.size() + 1, 0.0);
    for (std::size_t i = 0; i < values_.size(); ++i) prefix_[i + 1] = prefix_[i] + values_[i];
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> prefix() const noexcept { return prefix_; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
  std::vector<double> values_;
  std::vector<double> prefix_;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm is at most this fraction of ||M||_F.
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
};

/// L = D(G) - A(G_sigma).
inline SymmetricMatrix laplacian(const SignedGraph& g) {
  SymmetricMatrix L(g.n());
  const auto deg = degree_sequence(g.base());
  for (std::size_t v = 0; v < g.n(); ++v) L.set(v, v, static_cast<double>(deg.deg[v]));
  for (std::size_t t = 0; t < g.m(); ++t) {
    const auto& e = g.base().edge(t);
    L.set(e.u, e.v, -static_cast<double>(g.sign(t)));
  }
  return L;
}

/// Cyclic Jacobi on a row-major symmetric n x n buffer, destroyed in place.
/// Eigenvalues (unsorted) are written to `out`. Returns the number of sweeps run.
inline int jacobi_eigenvalues(std::span<double> a, std::size_t n, std::span<double> out,
                              const JacobiOptions& opts = {}) {
  double norm2 = 0.0;
  for (double x : a.first(n * n)) {
    if (!std::isfinite(x)) throw SolverError("eigenvalues: matrix has a non-finite entry");
    norm2 += x * x;
  }
  const double threshold2 = opts.relative_tolerance * opts.relative_tolerance * norm2;

  auto off_diagonal2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    }
    return 2.0 * s;
  };

  int sweeps = 0;
  while (off_diagonal2() > threshold2) {
    if (sweeps == opts.max_sweeps) {
      throw SolverError("eigenvalues: Jacobi did not converge within " + std::to_string(opts.max_sweeps) +
                        " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Smaller-angle rotation: t = tan(phi) annihilating a_pq.
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double new_rp = c * arp - s * arq;
          const double new_rq = s * arp + c * arq;
          a[r * n + p] = new_rp;
          a[p * n + r] = new_rp;
          a[r * n + q] = new_rq;
          a[q * n + r] = new_rq;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i * n + i];
  return sweeps;
}

inline Spectrum eigenvalues(const SymmetricMatrix& m, const JacobiOptions& opts = {}) {
  std::vector<double> work(m.data().begin(), m.data().end());
  std::vector<double> values(m.n());
  jacobi_eigenvalues(work, m.n(), values, opts);
  return Spectrum(std::move(values));
}

/// Sum of the k largest eigenvalues, 1 <= k <= n.
inline double top_k_sum(const Spectrum& s, std::size_t k) {
  if (k < 1 || k > s.size()) {
    throw std::out_of_range("top_k_sum: k = " + std::to_string(k) + " outside [1, " + std::to_string(s.size()) +
                            "]");
  }
  return s.prefix()[k];
}

}  // namespace signed_spectra
