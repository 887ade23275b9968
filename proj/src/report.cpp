#include "veq/report.hpp"

#include <algorithm>

namespace veq {

std::string describe(const SearchBounds& b) {
  return "path<=" + std::to_string(b.max_path) + " flank<=" + std::to_string(b.max_flank) +
         " depth<=" + std::to_string(b.max_depth) + " candidates<=" + std::to_string(b.max_candidates);
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Truncated: return "truncated";
  }
  return "fail";
}

void VerificationReport::pass(std::string check, std::string detail) {
  findings_.push_back(Finding{std::move(check), Status::Pass, std::move(detail)});
}

void VerificationReport::fail(std::string check, std::string detail) {
  findings_.push_back(Finding{std::move(check), Status::Fail, std::move(detail)});
}

void VerificationReport::truncated(std::string check, std::string detail) {
  findings_.push_back(Finding{std::move(check), Status::Truncated, std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other) {
  findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
  elapsed_ += other.elapsed_;
}

Status VerificationReport::status() const {
  bool truncated = false;
  for (const auto& f : findings_) {
    if (f.status == Status::Fail) return Status::Fail;
    truncated = truncated || f.status == Status::Truncated;
  }
  return truncated ? Status::Truncated : Status::Pass;
}

std::size_t VerificationReport::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(findings_.begin(), findings_.end(), [](const Finding& f) { return f.status == Status::Fail; }));
}

const Finding* VerificationReport::first_failure() const {
  for (const auto& f : findings_) {
    if (f.status == Status::Fail) return &f;
  }
  return nullptr;
}

}  // namespace veq
