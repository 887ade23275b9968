#include "veq/quantale.hpp"

#include <algorithm>

#include "veq/error.hpp"

namespace veq {
namespace {

[[noreturn]] void invalid(const std::string& name, const std::string& what) {
  throw Error(ErrorKind::InvalidQuantale, name + ": " + what);
}

}  // namespace

FiniteQuantale::FiniteQuantale(std::string name, std::vector<std::string> literals,
                               const std::vector<std::vector<bool>>& leq, const std::vector<std::vector<int>>& tensor,
                               int unit)
    : name_(std::move(name)), n_(static_cast<int>(literals.size())), literals_(std::move(literals)) {
  const int n = n_;
  if (n == 0 || n > 255) invalid(name_, "carrier size must lie in 1..255");
  if (static_cast<int>(leq.size()) != n || static_cast<int>(tensor.size()) != n) invalid(name_, "table size mismatch");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(leq[a].size()) != n || static_cast<int>(tensor[a].size()) != n) {
      invalid(name_, "table row " + std::to_string(a) + " has the wrong length");
    }
  }
  if (unit < 0 || unit >= n) invalid(name_, "unit out of range");
  const auto& lit = literals_;
  auto s = [&](int a) { return lit[a]; };

  leq_.assign(n * n, false);
  tensor_.assign(n * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      leq_[a * n + b] = leq[a][b];
      if (tensor[a][b] < 0 || tensor[a][b] >= n) invalid(name_, "tensor " + s(a) + "*" + s(b) + " out of range");
      tensor_[a * n + b] = static_cast<QElem>(tensor[a][b]);
    }
  }
  unit_ = static_cast<QElem>(unit);

  for (int a = 0; a < n; ++a) {
    if (!leq[a][a]) invalid(name_, "order is not reflexive at " + s(a));
    for (int b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) invalid(name_, "order is not antisymmetric at " + s(a) + ", " + s(b));
      for (int c = 0; c < n; ++c) {
        if (leq[a][b] && leq[b][c] && !leq[a][c]) {
          invalid(name_, "order is not transitive at " + s(a) + " <= " + s(b) + " <= " + s(c));
        }
      }
    }
  }

  // Least upper bounds of pairs and of the empty family.
  join_.assign(n * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int best = -1;
      for (int u = 0; u < n; ++u) {
        if (!leq[a][u] || !leq[b][u]) continue;
        if (best < 0 || leq[u][best]) best = u;
      }
      for (int u = 0; u < n && best >= 0; ++u) {
        if (leq[a][u] && leq[b][u] && !leq[best][u]) best = -1;
      }
      if (best < 0) invalid(name_, "no least upper bound for " + s(a) + ", " + s(b));
      join_[a * n + b] = static_cast<QElem>(best);
    }
  }
  int bottom = -1;
  for (int a = 0; a < n; ++a) {
    bool below_all = true;
    for (int b = 0; b < n; ++b) below_all = below_all && leq[a][b];
    if (below_all) bottom = a;
  }
  if (bottom < 0) invalid(name_, "no bottom element");
  bottom_ = static_cast<QElem>(bottom);

  auto t = [&](int a, int b) { return static_cast<int>(tensor_[a * n + b]); };
  auto j = [&](int a, int b) { return static_cast<int>(join_[a * n + b]); };
  for (int a = 0; a < n; ++a) {
    if (t(unit, a) != a || t(a, unit) != a) invalid(name_, "unit law fails at " + s(a));
    if (t(a, bottom) != bottom || t(bottom, a) != bottom) {
      invalid(name_, "tensor does not preserve the empty join at " + s(a));
    }
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (t(t(a, b), c) != t(a, t(b, c))) {
          invalid(name_, "tensor is not associative at " + s(a) + ", " + s(b) + ", " + s(c));
        }
        if (t(a, j(b, c)) != j(t(a, b), t(a, c))) {
          invalid(name_, "tensor does not distribute on the left at " + s(a) + " * (" + s(b) + " v " + s(c) + ")");
        }
        if (t(j(b, c), a) != j(t(b, a), t(c, a))) {
          invalid(name_, "tensor does not distribute on the right at (" + s(b) + " v " + s(c) + ") * " + s(a));
        }
      }
    }
  }
}

FiniteQuantale FiniteQuantale::boolean() {
  return FiniteQuantale("bool", {"0", "1"}, {{true, true}, {false, true}}, {{0, 0}, {0, 1}}, 1);
}

FiniteQuantale FiniteQuantale::tropical(int cap) {
  if (cap < 1) throw Error(ErrorKind::CapExceeded, "tropical cap must be at least 1");
  if (cap > 9) throw Error(ErrorKind::CapExceeded, "tropical cap above 9 is not supported");
  const int n = cap + 1;
  std::vector<std::string> lits;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<int>> tensor(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    lits.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) {
      leq[a][b] = a >= b;
      tensor[a][b] = std::min(a + b, cap);
    }
  }
  return FiniteQuantale("tropical" + std::to_string(cap), std::move(lits), leq, tensor, 0);
}

std::optional<QElem> FiniteQuantale::parse_literal(const std::string& s) const {
  for (int a = 0; a < n_; ++a) {
    if (literals_[a] == s) return static_cast<QElem>(a);
  }
  return std::nullopt;
}

}  // namespace veq
