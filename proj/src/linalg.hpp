#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace confal {

// Dense exact matrix, row-major.  Only the two operations the engine needs:
// rank and one solution of A x = b (free unknowns pinned to zero).
struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

inline int q_rank(QMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Rational lead = m.at(r, c);
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c) / lead;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

// One exact solution of A x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> q_solve(QMatrix m,
                                                    std::vector<Rational> b) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    std::swap(b[piv], b[r]);
    const Rational lead = m.at(r, c);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c) / lead;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m.rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(m.cols, ratio(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / m.at(i, pivot_col[i]);
  return x;
}

}  // namespace confal
