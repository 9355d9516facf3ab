#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "signed_spectra/io.hpp"

namespace signed_spectra::fixtures {

/// A published counterexample: its Laplacian and the rounded figures quoted with it.
struct CounterExample {
  int id = 0;
  IntMatrix laplacian;
  std::vector<double> eigenvalues;  ///< as printed, 4 decimals
  std::size_t k = 0;
  double sum = 0.0;                 ///< as printed
  std::int64_t bound = 0;
};

/// Signed K7 violating the Wang-Hou bound at k = 4.
inline CounterExample example1() {
  return {1,
          IntMatrix::from_rows({{6, 1, 1, -1, 1, -1, 1},
                                {1, 6, 1, 1, -1, 1, 1},
                                {1, 1, 6, 1, 1, -1, -1},
                                {-1, 1, 1, 6, 1, 1, -1},
                                {1, -1, 1, 1, 6, 1, 1},
                                {-1, 1, -1, 1, 1, 6, 1},
                                {1, 1, -1, -1, 1, 1, 6}}),
          {8.7015, 8.2360, 8.2360, 7.0, 3.7639, 3.7639, 2.2984},
          4,
          32.1735,
          32};
}

/// Signed K8 violating the Wang-Hou bound at k = 5.
inline CounterExample example2() {
  return {2,
          IntMatrix::from_rows({{7, 1, 1, 1, -1, 1, 1, 1},
                                {1, 7, 1, 1, 1, -1, -1, 1},
                                {1, 1, 7, 1, 1, -1, 1, -1},
                                {1, 1, 1, 7, 1, 1, -1, -1},
                                {-1, 1, 1, 1, 7, 1, 1, 1},
                                {1, -1, -1, 1, 1, 7, 1, 1},
                                {1, -1, 1, -1, 1, 1, 7, 1},
                                {1, 1, -1, -1, 1, 1, 1, 7}}),
          {10.6056, 10.0, 8.0, 8.0, 8.0, 4.0, 4.0, 3.3944},
          5,
          44.6056,
          44};
}

inline CounterExample example(int id) {
  if (id == 1) return example1();
  if (id == 2) return example2();
  throw std::out_of_range("no built-in example " + std::to_string(id) + " (expected 1 or 2)");
}

}  // namespace signed_spectra::fixtures
