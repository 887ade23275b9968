#pragma once

#include <optional>
#include <string>
#include <vector>

#include "veq/equipment.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/vdc.hpp"

namespace veq {

// Declarations of a spec file, in file order within each kind. `line` is
// informational and ignored by equality, so parse(print(s)) == s.
struct SpecFile {
  struct Object {
    std::string name;
    int line = 0;
    friend bool operator==(const Object& a, const Object& b) { return a.name == b.name; }
  };
  struct VArrow {
    std::string name, dom, cod;
    int line = 0;
    friend bool operator==(const VArrow& a, const VArrow& b) {
      return a.name == b.name && a.dom == b.dom && a.cod == b.cod;
    }
  };
  struct VComp {
    std::string g, f, h;  // g . f = h
    int line = 0;
    friend bool operator==(const VComp& a, const VComp& b) { return a.g == b.g && a.f == b.f && a.h == b.h; }
  };
  struct Proarrow {
    std::string name, src, tgt;
    int line = 0;
    friend bool operator==(const Proarrow& a, const Proarrow& b) {
      return a.name == b.name && a.src == b.src && a.tgt == b.tgt;
    }
  };
  struct CellDecl {
    std::string name;
    std::vector<std::string> domain;
    std::string anchor;  // object of an empty domain
    std::string left, right, codomain;
    int line = 0;
    friend bool operator==(const CellDecl& a, const CellDecl& b) {
      return a.name == b.name && a.domain == b.domain && a.anchor == b.anchor && a.left == b.left &&
             a.right == b.right && a.codomain == b.codomain;
    }
  };
  struct Paste {
    std::string outer;
    std::vector<std::string> inners;
    std::string result;
    int line = 0;
    friend bool operator==(const Paste& a, const Paste& b) {
      return a.outer == b.outer && a.inners == b.inners && a.result == b.result;
    }
  };
  struct Instance {
    std::string kind;                // bool_matrix | tropical_matrix
    std::optional<int> parameter;    // tropical cap
    std::vector<std::pair<std::string, int>> sets;
    int line = 0;
    friend bool operator==(const Instance& a, const Instance& b) {
      return a.kind == b.kind && a.parameter == b.parameter && a.sets == b.sets;
    }
  };
  struct MatrixDecl {
    std::string name;
    std::string src, tgt;  // both empty when inferred from the dimensions
    std::vector<std::vector<std::string>> rows;
    int line = 0;
    friend bool operator==(const MatrixDecl& a, const MatrixDecl& b) {
      return a.name == b.name && a.src == b.src && a.tgt == b.tgt && a.rows == b.rows;
    }
  };
  struct FragmentDecl {
    std::vector<std::string> objects;
    std::vector<std::string> proarrows;
    int line = 0;
    friend bool operator==(const FragmentDecl& a, const FragmentDecl& b) {
      return a.objects == b.objects && a.proarrows == b.proarrows;
    }
  };

  std::optional<Instance> instance;
  std::vector<Object> objects;
  std::vector<VArrow> arrows;
  std::vector<VComp> compositions;
  std::vector<Proarrow> proarrows;
  std::vector<CellDecl> cells;
  std::vector<Paste> pastes;
  std::vector<MatrixDecl> matrices;
  std::vector<FragmentDecl> fragments;

  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

// Throws ParseError with the position and the expected tokens.
SpecFile parse_spec(const std::string& text);
// Canonical text; parse_spec(print_spec(s)) == s.
std::string print_spec(const SpecFile& s);

class ResolutionError : public Error {
 public:
  ResolutionError(int line, const std::string& what)
      : Error(ErrorKind::Resolution, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + what),
        line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

// A resolved spec: the instance it denotes, the search bounds suited to it
// and its fragments by id.
struct LoadedSpec {
  SpecFile spec;
  std::optional<MatrixEquipment> matrices;  // instance blocks
  VirtualDoubleCategory vdc;
  EquipmentBounds bounds;
  struct Fragment {
    std::vector<ObjId> objects;
    std::vector<ProarrowId> proarrows;
  };
  std::vector<Fragment> fragments;
};

// Throws ResolutionError for unknown names, missing compositions and
// inconsistent declarations.
LoadedSpec load_spec(const SpecFile& s);
LoadedSpec load_spec_file(const std::string& path);

}  // namespace veq
