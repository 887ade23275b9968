#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "veq/report.hpp"

namespace veq {

enum class ReportFormat { Text, Lines };

// 0 all pass, 1 a check failed, 2 parse or semantic error, 3 truncated.
int exit_code(const std::vector<VerificationReport>& reports);

// `CHECK <name> <status> <detail>` per finding, or an indented text listing.
void emit(std::ostream& out, const VerificationReport& report, ReportFormat format);

// args excludes the program name. Reports go to `out`, usage and input
// errors to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace veq
