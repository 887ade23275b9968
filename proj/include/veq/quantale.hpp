#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace veq {

using QElem = std::uint8_t;

// A finite commutative-or-not quantale given by explicit tables. The order
// must be a lattice with a bottom; tensor must be associative, unital and
// distribute over binary joins and the empty join on both sides.
class FiniteQuantale {
 public:
  // leq[a][b] means a <= b. Throws InvalidQuantale naming the first violated
  // axiom instance.
  FiniteQuantale(std::string name, std::vector<std::string> literals, const std::vector<std::vector<bool>>& leq,
                 const std::vector<std::vector<int>>& tensor, int unit);

  static FiniteQuantale boolean();
  // Distances {0..cap} with truncated addition; reversed order, so join is
  // min and the bottom is cap.
  static FiniteQuantale tropical(int cap);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] bool leq(QElem a, QElem b) const { return leq_[a * n_ + b]; }
  [[nodiscard]] QElem tensor(QElem a, QElem b) const { return tensor_[a * n_ + b]; }
  [[nodiscard]] QElem join(QElem a, QElem b) const { return join_[a * n_ + b]; }
  [[nodiscard]] QElem unit() const { return unit_; }
  [[nodiscard]] QElem bottom() const { return bottom_; }
  [[nodiscard]] const std::string& literal(QElem a) const { return literals_.at(a); }
  [[nodiscard]] std::optional<QElem> parse_literal(const std::string& s) const;

 private:
  std::string name_;
  int n_ = 0;
  std::vector<std::string> literals_;
  std::vector<bool> leq_;
  std::vector<QElem> tensor_;
  std::vector<QElem> join_;
  QElem unit_ = 0;
  QElem bottom_ = 0;
};

}  // namespace veq
