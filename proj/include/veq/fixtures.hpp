#pragma once

#include <string>
#include <vector>

#include "veq/vdc.hpp"

namespace veq {

// Generators-and-relations-free presentation of a virtual double category.
// Vertical composites must be listed for every composable non-identity pair.
struct Presentation {
  struct Arrow {
    std::string name, dom, cod;
  };
  struct Composite {
    std::string g, f, h;  // g . f = h
  };
  struct Proarrow {
    std::string name, src, tgt;
  };
  struct Generator {
    std::string name;
    std::vector<std::string> domain;  // proarrow names
    std::string anchor;               // object, when the domain is empty
    std::string left, right, codomain;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<Composite> composites;
  std::vector<Proarrow> proarrows;
  std::vector<Generator> generators;
};

struct FreeOptions {
  int max_depth = 4;             // nesting depth of generator trees
  std::size_t max_cells = 4096;  // closure budget
};

// Tabulated store whose cells are the pasting trees of the generators
// (identity cells included). Throws ClosureBudgetExceeded when the closure
// does not stabilise within the options.
VirtualDoubleCategory free_vdc(const Presentation& p, FreeOptions options = {});

// One object A, identity vertical, one endo-proarrow J, no generating cells.
VirtualDoubleCategory make_f1();

// One object, one proarrow P and exactly one cell on each frame [P^n] => P
// for n <= max_arity; every pasting within that arity is tabulated.
VirtualDoubleCategory make_terminal(int max_arity = 8);

// One object, one proarrow J and unary cells forming the cyclic group of the
// given order under pasting (the identity cell is the neutral element). With
// corrupt = true the entry a(a) is replaced by a, breaking associativity.
VirtualDoubleCategory make_cyclic(int order = 3, bool corrupt = false);

}  // namespace veq
