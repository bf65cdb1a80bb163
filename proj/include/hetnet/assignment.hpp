#pragma once

#include <vector>

namespace hetnet {

/// Row-major weight matrix. Rows and columns need not be equal in number.
struct WeightMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  WeightMatrix() = default;
  WeightMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct Matching {
  std::vector<int> row_to_col;  // -1 when the row landed on a padding column
  double total = 0.0;
};

/// Maximum-weight assignment (Kuhn-Munkres with potentials, O(n^3)). The
/// matrix is zero-padded to square; rows matched to padding come back as -1.
/// Equal inputs always give equal outputs.
///
/// Throws DomainError for NaN, infinite or negative entries.
Matching optimal_matching(const WeightMatrix& weights);

}  // namespace hetnet
