#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veq/quantale.hpp"
#include "veq/vdc.hpp"

namespace veq {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<QElem> entries;  // row-major

  static Matrix filled(int rows, int cols, QElem v) {
    return Matrix{rows, cols, std::vector<QElem>(static_cast<std::size_t>(rows * cols), v)};
  }
  [[nodiscard]] QElem at(int r, int c) const { return entries[static_cast<std::size_t>(r * cols + c)]; }
  QElem& at(int r, int c) { return entries[static_cast<std::size_t>(r * cols + c)]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct MatrixOptions {
  int max_set_size = 3;               // elements per object set (hard limit 4)
  std::size_t max_proarrows = 50000;  // registered matrices
};

// Thin virtual equipment of quantale-valued matrices between named finite
// sets. Vertical arrows are all functions; proarrows are either every matrix
// or a finite family closed under units, restrictions and binary composites.
// A cell exists on a frame when, for every element chain, the tensor of the
// domain entries lies below the codomain entry at the images.
class MatrixEquipment {
 public:
  static MatrixEquipment full(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                              MatrixOptions options = {});

  struct NamedMatrix {
    std::string name;  // empty for an automatic name
    std::string src;
    std::string tgt;
    Matrix matrix;
  };
  // Registers the generators and closes the family. With close = false the
  // family is taken as given (used to build deliberately broken instances).
  static MatrixEquipment family(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                                const std::vector<NamedMatrix>& generators, bool close = true,
                                MatrixOptions options = {});

  [[nodiscard]] const VirtualDoubleCategory& vdc() const { return vdc_; }
  [[nodiscard]] const FiniteQuantale& quantale() const { return data_->q; }
  [[nodiscard]] int set_size(ObjId a) const { return data_->sizes.at(a.index()); }
  [[nodiscard]] const Matrix& matrix(ProarrowId p) const { return data_->matrices.at(p.index()); }
  [[nodiscard]] const std::vector<int>& function(VArrowId f) const { return data_->functions.at(f.index()); }
  [[nodiscard]] bool is_full() const { return full_; }

  // Closed forms.
  [[nodiscard]] Matrix unit_matrix(ObjId a) const;
  [[nodiscard]] Matrix restrict_matrix(const Matrix& k, VArrowId g, VArrowId f) const;
  [[nodiscard]] Matrix product(const Matrix& m, const Matrix& n) const;
  [[nodiscard]] std::optional<ProarrowId> proarrow_of(ObjId src, ObjId tgt, const Matrix& m) const;
  [[nodiscard]] std::optional<VArrowId> arrow_of(ObjId dom, ObjId cod, const std::vector<int>& images) const;

  [[nodiscard]] bool exists(const Frame& f) const;

  // "[1 0 ; 0 1]" using the quantale's literals.
  [[nodiscard]] std::string literal(const Matrix& m) const;
  [[nodiscard]] static std::string function_name(const std::string& dom, const std::string& cod,
                                                 const std::vector<int>& images);
  [[nodiscard]] std::string auto_matrix_name(ObjId src, ObjId tgt, const Matrix& m) const;

  // Registers an alternative name for an existing proarrow (spec-file aliases).
  void add_alias(const std::string& alias, ProarrowId p);
  [[nodiscard]] std::optional<ProarrowId> find_proarrow(const std::string& name) const;
  [[nodiscard]] const std::vector<std::pair<std::string, ProarrowId>>& aliases() const { return aliases_; }

 private:
  struct Data {
    FiniteQuantale q;
    std::vector<int> sizes;
    std::vector<Matrix> matrices;               // per proarrow
    std::vector<std::pair<ObjId, ObjId>> ends;  // per proarrow
    std::vector<std::vector<int>> functions;    // per vertical arrow
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<QElem>>, ProarrowId> by_matrix;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<int>>, VArrowId> by_function;

    [[nodiscard]] bool exists(const Frame& f) const;
    [[nodiscard]] Matrix path_product(const Path& p) const;
    [[nodiscard]] bool below(const Matrix& product, VArrowId left, VArrowId right, ProarrowId k) const;
  };

  MatrixEquipment() = default;
  static MatrixEquipment assemble(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                                  const std::vector<NamedMatrix>& matrices, MatrixOptions options, bool full);

  std::shared_ptr<Data> data_;
  VirtualDoubleCategory vdc_;
  bool full_ = false;
  std::vector<std::pair<std::string, ProarrowId>> aliases_;
};

// Named fixtures: B2 is Boolean matrices on U (1 element) and V (2 elements);
// T3 is the tropical quantale capped at 2 on the same sets.
MatrixEquipment make_b2();
MatrixEquipment make_t3();

}  // namespace veq
