#pragma once

#include <optional>
#include <vector>

#include "veq/embedding.hpp"
#include "veq/vcat.hpp"

namespace veq {

// Laws of every representative: all objects, arrows and proarrows, and every
// cell whose domain has length <= max_cell_path.
VerificationReport verify_constructions(const Embedding& emb, int max_cell_path = 1);

struct ArrangementBounds {
  int max_path = 1;                  // total domain length of the pasted cell
  int max_outer = 1;                 // domain length of the outer cell
  std::vector<ProarrowId> family;    // proarrows allowed anywhere; empty means all
};

// |paste(b, [a1..an])| = compose_morphisms(|b|, [|a1|..|an|]) on every
// arrangement within the bounds.
VerificationReport verify_functoriality(const Embedding& emb, const ArrangementBounds& bounds);

// Fragment holding |J1|, |J2|, |J1 J2| and the representatives between their
// ends, for a binary composite witness.
Fragment composite_fragment(const Embedding& emb, ProarrowId j1, ProarrowId j2);

// The first `count` binary composite witnesses (in proarrow order) are
// checked for the composite property inside their materialized fragment.
VerificationReport verify_composite_preservation(const Embedding& emb, std::size_t count,
                                                 SearchBounds bounds = SearchBounds{3, 1, 2, std::size_t{1} << 20});

// Cells of VCat among the representatives of `proarrows` against base cells,
// frame by frame, for domains of length <= max_path. The fragment holds the
// ends of the proarrows and `objects`.
VerificationReport verify_ff_2cells(const Embedding& emb, const std::vector<ProarrowId>& proarrows, int max_path,
                                    const std::vector<ObjId>& objects = {});

VerificationReport verify_full_arrows(const Embedding& emb);

// coreflect(|K|) = K with identity counit for every base proarrow, the hom
// profunctors, and counit naturality along unary cells with identity verticals.
VerificationReport verify_coreflection(const Embedding& emb);

// Thin bases only: the profunctor between representatives with the given
// components and the unique action cells, or nothing when an action frame is
// empty. components[x * m + u].
std::optional<ProfunctorPtr> thin_profunctor(const CategoryPtr& source, const CategoryPtr& target,
                                             const std::vector<ProarrowId>& components, const std::string& name);

struct RepresentabilityCensus {
  std::size_t families = 0;       // component choices examined
  std::size_t lawful = 0;         // with all action cells and passing the laws
  std::size_t representable = 0;  // lawful with invertible counit
  VerificationReport report;
};

// Every component family of a profunctor |A| -|> |B| over a thin base.
RepresentabilityCensus representability_census(const Embedding& emb, ObjId a, ObjId b,
                                               std::size_t max_families = 1'000'000);

// |K| with its (id, id) component replaced by `larger`, actions kept where
// their frames are still inhabited.
EnrichedProfunctor enlarge_identity_component(const Embedding& emb, ProarrowId k, ProarrowId larger);

// coreflect(|J K|) against the base composite of coreflect(|J|), coreflect(|K|).
VerificationReport verify_composite_coreflection(const Embedding& emb);

struct MoritaCandidate {
  ProarrowId there;  // A -|> B
  ProarrowId back;   // B -|> A
};

struct MoritaOutcome {
  bool vcat_equivalent = false;  // |J||K| and |K||J| are the hom profunctors up to iso
  bool base_equivalent = false;  // J K and K J are the units up to iso
  std::string detail;
};

MoritaOutcome check_morita_candidate(const Embedding& emb, const MoritaCandidate& c);

// Every candidate that is an equivalence of representatives must be one in
// the base. With an expectation, a positive pair must also have such a
// candidate and a negative pair none at either level. Empty candidate lists
// mean every pair of proarrows between a and b.
VerificationReport verify_morita(const Embedding& emb, ObjId a, ObjId b, std::vector<MoritaCandidate> candidates,
                                 std::optional<bool> expect_equivalent = std::nullopt);

struct SuiteOptions {
  ArrangementBounds functoriality;
  std::size_t composite_witnesses = 20;
  SearchBounds vcat_composite = SearchBounds{3, 1, 2, std::size_t{1} << 20};
  std::vector<ProarrowId> ff_proarrows;  // at most two
  int ff_max_path = 2;
  std::optional<std::pair<ObjId, ObjId>> morita_positive;
  std::vector<MoritaCandidate> morita_positive_candidates;
  std::optional<std::pair<ObjId, ObjId>> morita_negative;
};

// The theorem suite (a)-(g); each theorem contributes one summary finding
// named after it plus its detailed findings.
VerificationReport verify_embedding(const Embedding& emb, const SuiteOptions& options);

}  // namespace veq
