#pragma once

#include "veq/report.hpp"
#include "veq/vdc.hpp"

namespace veq {

// Checks the identity laws and the two-level associativity law of
// substitution over every arrangement whose pasted domain has length at most
// bounds.max_path. bounds.max_candidates caps the number of arrangements;
// hitting the cap yields a truncated finding rather than a pass.
VerificationReport check_vdc_laws(const VirtualDoubleCategory& vdc, SearchBounds bounds = SearchBounds::laws_default());

}  // namespace veq
