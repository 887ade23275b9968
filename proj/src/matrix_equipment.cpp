#include "veq/matrix_equipment.hpp"

#include <array>
#include <deque>
#include <set>

namespace veq {
namespace {

constexpr int kHardSetLimit = 4;

// Enumerates all length-n words over {0..base-1} in lexicographic order.
template <class F>
void for_each_word(int n, int base, F&& visit) {
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == base - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    out *= base;
    if (out > limit) return limit + 1;
  }
  return out;
}

}  // namespace

Matrix MatrixEquipment::Data::path_product(const Path& p) const {
  if (p.is_empty()) {
    const int n = sizes[p.anchor.index()];
    Matrix out = Matrix::filled(n, n, q.bottom());
    for (int a = 0; a < n; ++a) out.entries[static_cast<std::size_t>(a * n + a)] = q.unit();
    return out;
  }
  Matrix acc = matrices[p.arrows[0].index()];
  for (std::size_t s = 1; s < p.arrows.size(); ++s) {
    const Matrix& m = matrices[p.arrows[s].index()];
    Matrix next = Matrix::filled(acc.rows, m.cols, q.bottom());
    for (int r = 0; r < acc.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        QElem best = q.bottom();
        for (int mid = 0; mid < acc.cols; ++mid) best = q.join(best, q.tensor(acc.at(r, mid), m.at(mid, c)));
        next.entries[static_cast<std::size_t>(r * m.cols + c)] = best;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

// The frame is inhabited iff the path product lies below K(left, right).
bool MatrixEquipment::Data::below(const Matrix& product, VArrowId left, VArrowId right, ProarrowId k) const {
  const auto& lf = functions[left.index()];
  const auto& rf = functions[right.index()];
  const Matrix& target = matrices[k.index()];
  for (int r = 0; r < product.rows; ++r) {
    for (int c = 0; c < product.cols; ++c) {
      if (!q.leq(product.at(r, c), target.at(lf[static_cast<std::size_t>(r)], rf[static_cast<std::size_t>(c)]))) {
        return false;
      }
    }
  }
  return true;
}

bool MatrixEquipment::Data::exists(const Frame& f) const {
  const auto& lf = functions[f.left.index()];
  const auto& rf = functions[f.right.index()];
  const Matrix& k = matrices[f.codomain.index()];
  if (f.domain.is_empty()) {
    const int n = sizes[f.domain.anchor.index()];
    for (int a = 0; a < n; ++a) {
      if (!q.leq(q.unit(), k.at(lf[static_cast<std::size_t>(a)], rf[static_cast<std::size_t>(a)]))) return false;
    }
    return true;
  }
  // Row vector per source element, advanced along the path.
  const auto& first = matrices[f.domain.arrows[0].index()];
  const int rows = first.rows;
  std::array<QElem, kHardSetLimit * kHardSetLimit> acc{};
  std::array<QElem, kHardSetLimit * kHardSetLimit> next{};
  int cols = first.cols;
  for (int i = 0; i < rows * cols; ++i) acc[static_cast<std::size_t>(i)] = first.entries[static_cast<std::size_t>(i)];
  for (std::size_t s = 1; s < f.domain.arrows.size(); ++s) {
    const Matrix& m = matrices[f.domain.arrows[s].index()];
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        QElem best = q.bottom();
        for (int mid = 0; mid < cols; ++mid) {
          best = q.join(best, q.tensor(acc[static_cast<std::size_t>(r * cols + mid)], m.at(mid, c)));
        }
        next[static_cast<std::size_t>(r * m.cols + c)] = best;
      }
    }
    cols = m.cols;
    acc = next;
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!q.leq(acc[static_cast<std::size_t>(r * cols + c)], k.at(lf[static_cast<std::size_t>(r)], rf[static_cast<std::size_t>(c)]))) {
        return false;
      }
    }
  }
  return true;
}

std::string MatrixEquipment::function_name(const std::string& dom, const std::string& cod,
                                           const std::vector<int>& images) {
  std::string out = dom + cod + "_";
  for (int i : images) out += std::to_string(i);
  return out;
}

std::string MatrixEquipment::auto_matrix_name(ObjId src, ObjId tgt, const Matrix& m) const {
  const auto& v = vdc_.vertical();
  std::string out = "m_" + v.object_name(src) + v.object_name(tgt) + "_";
  for (auto e : m.entries) out += data_->q.literal(e);
  return out;
}

std::string MatrixEquipment::literal(const Matrix& m) const {
  std::string out = "[";
  for (int r = 0; r < m.rows; ++r) {
    if (r > 0) out += " ;";
    for (int c = 0; c < m.cols; ++c) out += (r == 0 && c == 0 ? "" : " ") + data_->q.literal(m.at(r, c));
  }
  return out + "]";
}

MatrixEquipment MatrixEquipment::assemble(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                                          const std::vector<NamedMatrix>& matrices, MatrixOptions options,
                                          bool full) {
  const int limit = std::min(options.max_set_size, kHardSetLimit);
  for (const auto& [name, n] : sets) {
    if (n < 1) throw Error(ErrorKind::CapExceeded, "object set " + name + " must be nonempty");
    if (n > limit) {
      throw Error(ErrorKind::CapExceeded,
                  "object set " + name + " has " + std::to_string(n) + " elements; the cap is " + std::to_string(limit));
    }
  }
  MatrixEquipment out;
  out.full_ = full;
  out.data_ = std::make_shared<Data>(Data{std::move(q), {}, {}, {}, {}, {}, {}});
  Data& d = *out.data_;
  VdcBuilder b;
  std::vector<ObjId> objs;
  for (const auto& [name, n] : sets) {
    objs.push_back(b.add_object(name));
    d.sizes.push_back(n);
  }
  d.functions.resize(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::vector<int> ident(static_cast<std::size_t>(d.sizes[i]));
    for (int k = 0; k < d.sizes[i]; ++k) ident[static_cast<std::size_t>(k)] = k;
    d.functions[b.vertical().identity(objs[i]).index()] = ident;
    d.by_function[{objs[i].value, objs[i].value, ident}] = b.vertical().identity(objs[i]);
  }
  for (std::size_t x = 0; x < objs.size(); ++x) {
    for (std::size_t y = 0; y < objs.size(); ++y) {
      for_each_word(d.sizes[x], d.sizes[y], [&](const std::vector<int>& images) {
        if (d.by_function.contains({objs[x].value, objs[y].value, images})) return;
        auto id = b.add_arrow(function_name(sets[x].first, sets[y].first, images), objs[x], objs[y]);
        if (d.functions.size() <= id.index()) d.functions.resize(id.index() + 1);
        d.functions[id.index()] = images;
        d.by_function[{objs[x].value, objs[y].value, images}] = id;
      });
    }
  }
  const auto& v = b.vertical();
  for (std::size_t g = 0; g < d.functions.size(); ++g) {
    for (std::size_t f = 0; f < d.functions.size(); ++f) {
      VArrowId gi{g};
      VArrowId fi{f};
      if (v.cod(fi) != v.dom(gi) || v.is_identity(gi) || v.is_identity(fi)) continue;
      std::vector<int> h;
      for (int i : d.functions[f]) h.push_back(d.functions[g][static_cast<std::size_t>(i)]);
      b.set_compose(gi, fi, d.by_function.at({v.dom(fi).value, v.cod(gi).value, h}));
    }
  }
  for (const auto& nm : matrices) {
    ObjId s = b.object(nm.src);
    ObjId t = b.object(nm.tgt);
    if (nm.matrix.rows != d.sizes[s.index()] || nm.matrix.cols != d.sizes[t.index()]) {
      throw Error(ErrorKind::IllFormedInstance, "matrix " + nm.name + " does not fit " + nm.src + " x " + nm.tgt);
    }
    auto key = std::make_tuple(s.value, t.value, nm.matrix.entries);
    if (d.by_matrix.contains(key)) continue;
    std::string name = nm.name;
    if (name.empty()) {
      name = "m_" + nm.src + nm.tgt + "_";
      for (auto e : nm.matrix.entries) name += d.q.literal(e);
    }
    auto p = b.add_proarrow(name, s, t);
    d.matrices.push_back(nm.matrix);
    d.ends.emplace_back(s, t);
    d.by_matrix[key] = p;
  }
  std::shared_ptr<const Data> data = out.data_;
  out.vdc_ = b.build_thin([data](const Frame& f) { return data->exists(f); },
                         [data](const Path& p) -> BoundaryTest {
                           return [data, m = data->path_product(p)](VArrowId l, VArrowId r, ProarrowId k) {
                             return data->below(m, l, r, k);
                           };
                         });
  return out;
}

MatrixEquipment MatrixEquipment::full(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                                      MatrixOptions options) {
  std::vector<NamedMatrix> all;
  std::size_t count = 0;
  for (const auto& [sn, sx] : sets) {
    for (const auto& [tn, tx] : sets) {
      const auto cells = static_cast<std::size_t>(sx * tx);
      count += checked_power(static_cast<std::size_t>(q.size()), cells, options.max_proarrows);
      if (count > options.max_proarrows) {
        throw Error(ErrorKind::CapExceeded, "the full matrix family exceeds " + std::to_string(options.max_proarrows) +
                                                " proarrows");
      }
      for_each_word(sx * tx, q.size(), [&](const std::vector<int>& w) {
        Matrix m{sx, tx, {}};
        for (int e : w) m.entries.push_back(static_cast<QElem>(e));
        all.push_back(NamedMatrix{"", sn, tn, std::move(m)});
      });
    }
  }
  return assemble(std::move(q), sets, all, options, true);
}

MatrixEquipment MatrixEquipment::family(FiniteQuantale q, const std::vector<std::pair<std::string, int>>& sets,
                                        const std::vector<NamedMatrix>& generators, bool close,
                                        MatrixOptions options) {
  if (!close) return assemble(std::move(q), sets, generators, options, false);
  // Close with a throwaway full-vertical skeleton: restrictions need the
  // functions, composites need only the matrices.
  MatrixEquipment skeleton = assemble(q, sets, {}, options, false);
  const auto& v = skeleton.vdc().vertical();
  std::vector<NamedMatrix> family = generators;
  std::set<std::tuple<std::string, std::string, std::vector<QElem>>> seen;
  for (const auto& g : family) seen.insert({g.src, g.tgt, g.matrix.entries});
  auto add = [&](const std::string& s, const std::string& t, Matrix m) {
    if (!seen.insert({s, t, m.entries}).second) return;
    if (family.size() >= options.max_proarrows) {
      throw Error(ErrorKind::CapExceeded,
                  "closing the matrix family exceeds " + std::to_string(options.max_proarrows) + " proarrows");
    }
    family.push_back(NamedMatrix{"", s, t, std::move(m)});
  };
  for (std::size_t a = 0; a < v.object_count(); ++a) {
    add(sets[a].first, sets[a].first, skeleton.unit_matrix(ObjId{a}));
  }
  for (std::size_t done = 0; done < family.size(); ++done) {
    const NamedMatrix cur = family[done];
    const ObjId s = *v.find_object(cur.src);
    const ObjId t = *v.find_object(cur.tgt);
    for (auto g : v.arrows_into(s)) {
      for (auto f : v.arrows_into(t)) {
        add(v.object_name(v.dom(g)), v.object_name(v.dom(f)), skeleton.restrict_matrix(cur.matrix, g, f));
      }
    }
    for (std::size_t other = 0; other <= done; ++other) {
      const NamedMatrix o = family[other];
      if (cur.tgt == o.src) add(cur.src, o.tgt, skeleton.product(cur.matrix, o.matrix));
      if (o.tgt == cur.src) add(o.src, cur.tgt, skeleton.product(o.matrix, cur.matrix));
    }
  }
  return assemble(std::move(q), sets, family, options, false);
}

Matrix MatrixEquipment::unit_matrix(ObjId a) const {
  const int n = set_size(a);
  Matrix m = Matrix::filled(n, n, data_->q.bottom());
  for (int i = 0; i < n; ++i) m.at(i, i) = data_->q.unit();
  return m;
}

Matrix MatrixEquipment::restrict_matrix(const Matrix& k, VArrowId g, VArrowId f) const {
  const auto& gi = function(g);
  const auto& fi = function(f);
  Matrix m = Matrix::filled(static_cast<int>(gi.size()), static_cast<int>(fi.size()), data_->q.bottom());
  for (std::size_t x = 0; x < gi.size(); ++x) {
    for (std::size_t y = 0; y < fi.size(); ++y) {
      m.at(static_cast<int>(x), static_cast<int>(y)) = k.at(gi[x], fi[y]);
    }
  }
  return m;
}

Matrix MatrixEquipment::product(const Matrix& m, const Matrix& n) const {
  const auto& q = data_->q;
  Matrix out = Matrix::filled(m.rows, n.cols, q.bottom());
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < n.cols; ++c) {
      QElem acc = q.bottom();
      for (int k = 0; k < m.cols; ++k) acc = q.join(acc, q.tensor(m.at(r, k), n.at(k, c)));
      out.at(r, c) = acc;
    }
  }
  return out;
}

std::optional<ProarrowId> MatrixEquipment::proarrow_of(ObjId src, ObjId tgt, const Matrix& m) const {
  auto it = data_->by_matrix.find({src.value, tgt.value, m.entries});
  if (it == data_->by_matrix.end()) return std::nullopt;
  return it->second;
}

std::optional<VArrowId> MatrixEquipment::arrow_of(ObjId dom, ObjId cod, const std::vector<int>& images) const {
  auto it = data_->by_function.find({dom.value, cod.value, images});
  if (it == data_->by_function.end()) return std::nullopt;
  return it->second;
}

bool MatrixEquipment::exists(const Frame& f) const { return data_->exists(f); }

void MatrixEquipment::add_alias(const std::string& alias, ProarrowId p) {
  if (find_proarrow(alias)) throw Error(ErrorKind::Resolution, "duplicate proarrow name " + alias);
  aliases_.emplace_back(alias, p);
}

std::optional<ProarrowId> MatrixEquipment::find_proarrow(const std::string& name) const {
  for (const auto& [a, p] : aliases_) {
    if (a == name) return p;
  }
  return vdc_.find_proarrow(name);
}

MatrixEquipment make_b2() { return MatrixEquipment::full(FiniteQuantale::boolean(), {{"U", 1}, {"V", 2}}); }

MatrixEquipment make_t3() { return MatrixEquipment::full(FiniteQuantale::tropical(2), {{"U", 1}, {"V", 2}}); }

}  // namespace veq
