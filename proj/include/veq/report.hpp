#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace veq {

// Limits on every quantifier of a bounded verification. A positive claim is
// certified only up to these bounds; a counterexample found within them is a
// genuine refutation.
struct SearchBounds {
  int max_path = 3;                      // quantified domain-path length
  int max_flank = 1;                     // flanking proarrows per side
  int max_depth = 2;                     // substitution depth for law checks
  std::size_t max_candidates = 1 << 20;  // factorizations examined per check

  static SearchBounds universal_default() { return SearchBounds{}; }
  static SearchBounds laws_default() { return SearchBounds{4, 1, 2, std::size_t{1} << 22}; }

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

std::string describe(const SearchBounds& b);

enum class Status { Pass, Fail, Truncated };

std::string_view to_string(Status s);

struct Finding {
  std::string check;
  Status status = Status::Pass;
  std::string detail;
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string name, SearchBounds bounds = {})
      : name_(std::move(name)), bounds_(bounds) {}

  void pass(std::string check, std::string detail = {});
  void fail(std::string check, std::string detail);
  void truncated(std::string check, std::string detail);
  void add(Finding f) { findings_.push_back(std::move(f)); }
  // Merge-by-union of findings.
  void merge(const VerificationReport& other);

  [[nodiscard]] Status status() const;
  [[nodiscard]] bool passed() const { return status() == Status::Pass; }
  [[nodiscard]] bool failed() const { return status() == Status::Fail; }
  [[nodiscard]] std::size_t failure_count() const;
  [[nodiscard]] const std::vector<Finding>& findings() const { return findings_; }
  // First failing finding, or nullptr.
  [[nodiscard]] const Finding* first_failure() const;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const SearchBounds& bounds() const { return bounds_; }
  void set_elapsed(std::chrono::duration<double> d) { elapsed_ = d; }
  [[nodiscard]] std::chrono::duration<double> elapsed() const { return elapsed_; }

 private:
  std::string name_;
  SearchBounds bounds_;
  std::vector<Finding> findings_;
  std::chrono::duration<double> elapsed_{0};
};

// Runs `body` against a fresh report and records wall time.
template <class F>
VerificationReport timed_report(std::string name, SearchBounds bounds, F&& body) {
  VerificationReport report(std::move(name), bounds);
  auto start = std::chrono::steady_clock::now();
  body(report);
  report.set_elapsed(std::chrono::steady_clock::now() - start);
  return report;
}

}  // namespace veq
