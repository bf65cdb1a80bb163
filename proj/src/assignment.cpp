#include "hetnet/assignment.hpp"

#include <cmath>
#include <limits>

#include "hetnet/errors.hpp"

namespace hetnet {

Matching optimal_matching(const WeightMatrix& weights) {
  const int n = std::max(weights.rows, weights.cols);
  Matching out;
  out.row_to_col.assign(static_cast<std::size_t>(weights.rows), -1);
  if (n == 0) return out;

  double top = 0.0;
  for (double w : weights.data) {
    if (!std::isfinite(w)) throw DomainError("assignment weight is not finite");
    if (w < 0.0) throw DomainError("assignment weight is negative");
    top = std::max(top, w);
  }

  // Minimisation form on the padded square matrix, 1-based as in the
  // classic shortest-augmenting-path formulation.
  auto cost = [&](int i, int j) {
    if (i > weights.rows || j > weights.cols) return top;
    return top - weights(i - 1, j - 1);
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i < 1 || i > weights.rows || j > weights.cols) continue;
    out.row_to_col[static_cast<std::size_t>(i - 1)] = j - 1;
  }
  for (int r = 0; r < weights.rows; ++r)
    if (const int c = out.row_to_col[static_cast<std::size_t>(r)]; c >= 0) out.total += weights(r, c);
  return out;
}

}  // namespace hetnet
