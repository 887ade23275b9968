#pragma once

// Closed-form matrix arithmetic written directly on integers, with no use of
// the library's quantale tables. Boolean: 0 <= 1, tensor is `and`. Tropical
// with cap c: distances 0..c ordered by >=, tensor is capped addition.

#include <algorithm>
#include <string>
#include <vector>

#include "veq/matrix_equipment.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<int>>;

struct Arith {
  bool tropical = false;
  int cap = 1;

  [[nodiscard]] int unit() const { return tropical ? 0 : 1; }
  [[nodiscard]] int bottom() const { return tropical ? cap : 0; }
  [[nodiscard]] int tensor(int a, int b) const { return tropical ? std::min(a + b, cap) : (a & b); }
  [[nodiscard]] int join(int a, int b) const { return tropical ? std::min(a, b) : (a | b); }
  [[nodiscard]] bool leq(int a, int b) const { return tropical ? a >= b : a <= b; }
};

inline Arith boolean() { return Arith{false, 1}; }
inline Arith tropical(int cap) { return Arith{true, cap}; }

inline IntMatrix entries(const veq::MatrixEquipment& me, veq::ProarrowId p) {
  const auto& m = me.matrix(p);
  IntMatrix out(static_cast<std::size_t>(m.rows), std::vector<int>(static_cast<std::size_t>(m.cols)));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) out[r][c] = std::stoi(me.quantale().literal(m.at(r, c)));
  }
  return out;
}

// Back to element indices, matching entries through the printed literals.
inline veq::Matrix to_matrix(const veq::MatrixEquipment& me, const IntMatrix& m) {
  const auto& q = me.quantale();
  veq::Matrix out{static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()), {}};
  for (const auto& row : m) {
    for (int x : row) {
      for (veq::QElem e = 0; e < q.size(); ++e) {
        if (q.literal(e) == std::to_string(x)) out.entries.push_back(e);
      }
    }
  }
  return out;
}

inline IntMatrix identity(const Arith& q, int n) {
  IntMatrix out(n, std::vector<int>(n, q.bottom()));
  for (int i = 0; i < n; ++i) out[i][i] = q.unit();
  return out;
}

inline IntMatrix product(const Arith& q, const IntMatrix& a, const IntMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t mid = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(rows, std::vector<int>(cols, q.bottom()));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < mid; ++k) {
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = q.join(out[i][j], q.tensor(a[i][k], b[k][j]));
    }
  }
  return out;
}

// K(g, f)[i][j] = K[g(i)][f(j)]
inline IntMatrix restrict(const IntMatrix& k, const std::vector<int>& g, const std::vector<int>& f) {
  IntMatrix out(g.size(), std::vector<int>(f.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out[i][j] = k[g[i]][f[j]];
  }
  return out;
}

// f_!(i, y) = [f(i) = y]
inline IntMatrix companion(const Arith& q, const std::vector<int>& f, int cod_size) {
  IntMatrix out(f.size(), std::vector<int>(cod_size, q.bottom()));
  for (std::size_t i = 0; i < f.size(); ++i) out[i][f[i]] = q.unit();
  return out;
}

// f^*(y, i) = [y = f(i)]
inline IntMatrix conjoint(const Arith& q, const std::vector<int>& f, int cod_size) {
  IntMatrix out(cod_size, std::vector<int>(f.size(), q.bottom()));
  for (std::size_t i = 0; i < f.size(); ++i) out[f[i]][i] = q.unit();
  return out;
}

inline bool below(const Arith& q, const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!q.leq(a[i][j], b[i][j])) return false;
    }
  }
  return true;
}

// Every function from an n-set into an m-set, images in lexicographic order.
inline std::vector<std::vector<int>> functions(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(n, 0);
  for (;;) {
    out.push_back(f);
    int i = n - 1;
    while (i >= 0 && ++f[i] == m) f[i--] = 0;
    if (i < 0) return out;
  }
}

}  // namespace oracle
