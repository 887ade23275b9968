#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "veq/report.hpp"
#include "veq/vdc.hpp"

namespace veq {

enum class UniversalKind { Unit, Composite, Restriction, Companion, Conjoint };

std::string_view to_string(UniversalKind k);

struct UniversalWitness {
  UniversalKind kind = UniversalKind::Composite;
  ProarrowId proarrow;
  Cell structure_cell;
  SearchBounds certificate;
  // Number of candidates that passed; above one the answer is unique only up
  // to isomorphism.
  std::size_t witnesses = 1;
};

enum class SearchOutcome { Found, NotFound, BoundsTooSmall };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NotFound;
  std::optional<UniversalWitness> witness;
  std::string detail;

  [[nodiscard]] bool found() const { return outcome == SearchOutcome::Found; }
  // The witness, or an Error of kind NotFound / BoundsTooSmall.
  [[nodiscard]] const UniversalWitness& value() const;
};

struct UniversalCheck {
  bool holds = false;
  VerificationReport report;
};

// Unary cell ([R], g, f, K): every cell on (P, g.a, f.b, K) factors uniquely
// through it by a cell on (P, a, b, R).
UniversalCheck is_cartesian(const VirtualDoubleCategory& vdc, const Cell& cell,
                            SearchBounds bounds = SearchBounds::universal_default());

// Cell (D, id, id, J) with D possibly empty: every cell on (P ++ D ++ Q, l, r, L)
// factors uniquely as psi(ids, cell, ids) with psi on (P ++ [J] ++ Q, l, r, L).
UniversalCheck is_composite(const VirtualDoubleCategory& vdc, const Cell& cell,
                            SearchBounds bounds = SearchBounds::universal_default());

SearchResult find_restriction(const VirtualDoubleCategory& vdc, ProarrowId k, VArrowId g, VArrowId f,
                              SearchBounds bounds = SearchBounds::universal_default());
SearchResult find_unit(const VirtualDoubleCategory& vdc, ObjId a,
                       SearchBounds bounds = SearchBounds::universal_default());
SearchResult find_composite(const VirtualDoubleCategory& vdc, const Path& path,
                            SearchBounds bounds = SearchBounds::universal_default());

// The unique psi on (phi.domain, a, b, R) with paste(cart, [psi]) == phi.
std::optional<Cell> factor_cartesian(const VirtualDoubleCategory& vdc, const Cell& cart, const Cell& phi, VArrowId a,
                                     VArrowId b);
// The unique psi with paste(psi, [ids of the first `left` entries, s, ids of
// the last `right` entries]) == phi.
std::optional<Cell> factor_composite(const VirtualDoubleCategory& vdc, const Cell& s, const Cell& phi,
                                     std::size_t left, std::size_t right);

// The unique cell on `frame`, if there is exactly one.
std::optional<Cell> unique_cell(const VirtualDoubleCategory& vdc, const Frame& frame);

// Cells ([J], id, id, K) and back whose pastings are identities.
std::optional<std::pair<Cell, Cell>> proarrows_isomorphic(const VirtualDoubleCategory& vdc, ProarrowId j,
                                                          ProarrowId k);

struct BendBundle {
  VArrowId arrow;
  UniversalWitness companion;  // f_! with its cartesian cell ([f_!], f, id, h)
  UniversalWitness conjoint;   // f^* with its cartesian cell ([f^*], id, f, h)
  Cell companion_bend;         // ([@X], id, f, f_!)
  Cell conjoint_bend;          // ([@X], f, id, f^*)
  VerificationReport kinks;
};

// Throws NotFound / BoundsTooSmall from the underlying searches.
BendBundle derive_bends(const VirtualDoubleCategory& vdc, VArrowId f,
                        SearchBounds bounds = SearchBounds::universal_default());

VerificationReport check_equipment(const VirtualDoubleCategory& vdc,
                                   SearchBounds bounds = SearchBounds::universal_default());

enum LemmaSet : unsigned {
  kRestrictionAsComposite = 1,  // K(g,f) is the composite of g_!, K, f^*
  kNestedComposites = 2,        // composites of composites, over paths of length 3
  kBendComposites = 4,          // (gf)_! and (gf)^* against composites of bends
  kFlankedComposites = 8,       // g_!, K1, K2, f^* against a restriction of K1 K2
  kAllLemmas = 15,
};

VerificationReport check_derived_lemmas(const VirtualDoubleCategory& vdc,
                                        SearchBounds bounds = SearchBounds::universal_default(),
                                        unsigned lemmas = kAllLemmas);

}  // namespace veq
