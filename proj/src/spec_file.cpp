#include "veq/spec_file.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "veq/quantale.hpp"

namespace veq {
namespace {

enum class Tok { Word, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'' || c == '+' || c == '*' ||
         c == '^' || c == '!';
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (line.compare(i, 3, "-|>") == 0) {
      out.push_back({Tok::Punct, "-|>", col});
      i += 3;
    } else if (line.compare(i, 2, "->") == 0 || line.compare(i, 2, "=>") == 0) {
      out.push_back({Tok::Punct, line.substr(i, 2), col});
      i += 2;
    } else if (std::string_view("[](){};,:=|/@.").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), col});
      ++i;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < line.size() && word_char(line[j])) ++j;
      out.push_back({Tok::Word, line.substr(i, j - i), col});
      i = j;
    } else {
      throw ParseError(line_no, col, "a name or punctuation");
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

class LineParser {
 public:
  LineParser(const std::string& text, int line) : tokens_(tokenize(text, line)), line_(line) {}

  [[nodiscard]] const Token& peek() const { return tokens_[pos_]; }
  [[nodiscard]] bool at(const std::string& punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  [[nodiscard]] bool at_word() const { return peek().kind == Tok::Word; }

  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(line_, peek().column, expected); }

  void expect(const std::string& punct) {
    if (!at(punct)) fail("'" + punct + "'");
    ++pos_;
  }
  bool accept(const std::string& punct) {
    if (!at(punct)) return false;
    ++pos_;
    return true;
  }
  std::string word(const std::string& what) {
    if (!at_word()) fail(what);
    return tokens_[pos_++].text;
  }
  int integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Word || t.text.find_first_not_of("0123456789") != std::string::npos || t.text.size() > 6) {
      fail(what);
    }
    ++pos_;
    return std::stoi(t.text);
  }
  void end() {
    if (peek().kind != Tok::End) fail("end of line");
  }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] bool blank() const { return tokens_.front().kind == Tok::End; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

void parse_instance(LineParser& p, SpecFile& s) {
  if (s.instance) p.fail("at most one instance block");
  SpecFile::Instance inst;
  inst.line = p.line();
  inst.kind = p.word("an instance kind");
  if (p.accept("(")) {
    inst.parameter = p.integer("an integer parameter");
    p.expect(")");
  }
  p.expect("{");
  do {
    std::string name = p.word("an object name");
    p.expect("=");
    inst.sets.emplace_back(std::move(name), p.integer("a set size"));
  } while (p.accept(";"));
  p.expect("}");
  s.instance = std::move(inst);
}

void parse_matrix(LineParser& p, SpecFile& s) {
  SpecFile::MatrixDecl m;
  m.line = p.line();
  m.name = p.word("a matrix name");
  if (p.accept(":")) {
    m.src = p.word("a source object");
    p.expect("-|>");
    m.tgt = p.word("a target object");
  }
  p.expect("=");
  p.expect("[");
  m.rows.emplace_back();
  for (;;) {
    if (p.at_word()) {
      m.rows.back().push_back(p.word("an entry"));
      continue;
    }
    const bool closing = p.at("]");
    if (!closing && !p.at(";")) p.fail("an entry, ';' or ']'");
    if (m.rows.back().empty()) p.fail("an entry");
    if (m.rows.back().size() != m.rows.front().size()) {
      p.fail(std::to_string(m.rows.front().size()) + " entries in the row");
    }
    p.expect(closing ? "]" : ";");
    if (closing) break;
    m.rows.emplace_back();
  }
  s.matrices.push_back(std::move(m));
}

std::vector<std::string> barred_names(LineParser& p) {
  std::vector<std::string> out;
  while (p.accept("|")) {
    out.push_back(p.word("a name"));
    p.expect("|");
  }
  return out;
}

void parse_fragment(LineParser& p, SpecFile& s) {
  SpecFile::FragmentDecl f;
  f.line = p.line();
  p.expect("{");
  if (p.peek().text != "objects") p.fail("'objects'");
  p.word("'objects'");
  p.expect(":");
  f.objects = barred_names(p);
  p.expect(";");
  if (p.peek().text != "proarrows") p.fail("'proarrows'");
  p.word("'proarrows'");
  p.expect(":");
  f.proarrows = barred_names(p);
  p.expect("}");
  s.fragments.push_back(std::move(f));
}

void parse_line(LineParser& p, SpecFile& s) {
  const std::string kw = p.word("a declaration");
  const int line = p.line();
  if (kw == "object") {
    s.objects.push_back({p.word("an object name"), line});
  } else if (kw == "varrow") {
    SpecFile::VArrow a;
    a.line = line;
    a.name = p.word("an arrow name");
    p.expect(":");
    a.dom = p.word("a domain object");
    p.expect("->");
    a.cod = p.word("a codomain object");
    s.arrows.push_back(std::move(a));
  } else if (kw == "vcomp") {
    SpecFile::VComp c;
    c.line = line;
    c.g = p.word("an arrow name");
    p.expect(".");
    c.f = p.word("an arrow name");
    p.expect("=");
    c.h = p.word("an arrow name");
    s.compositions.push_back(std::move(c));
  } else if (kw == "proarrow") {
    SpecFile::Proarrow j;
    j.line = line;
    j.name = p.word("a proarrow name");
    p.expect(":");
    j.src = p.word("a source object");
    p.expect("-|>");
    j.tgt = p.word("a target object");
    s.proarrows.push_back(std::move(j));
  } else if (kw == "cell") {
    SpecFile::CellDecl c;
    c.line = line;
    c.name = p.word("a cell name");
    p.expect(":");
    p.expect("[");
    if (p.accept("@")) {
      c.anchor = p.word("an object name");
    } else {
      while (p.at_word()) c.domain.push_back(p.word("a proarrow name"));
      if (c.domain.empty()) p.fail("a proarrow name or '@'");
    }
    p.expect("]");
    p.expect("/");
    p.expect("(");
    c.left = p.word("a vertical arrow");
    p.expect(",");
    c.right = p.word("a vertical arrow");
    p.expect(")");
    p.expect("=>");
    c.codomain = p.word("a proarrow name");
    s.cells.push_back(std::move(c));
  } else if (kw == "paste") {
    SpecFile::Paste q;
    q.line = line;
    q.outer = p.word("a cell name");
    p.expect("(");
    while (p.at_word()) q.inners.push_back(p.word("a cell name"));
    p.expect(")");
    p.expect("=");
    q.result = p.word("a cell name");
    s.pastes.push_back(std::move(q));
  } else if (kw == "instance") {
    parse_instance(p, s);
  } else if (kw == "matrix") {
    parse_matrix(p, s);
  } else if (kw == "fragment") {
    parse_fragment(p, s);
  } else {
    throw ParseError(line, 1, "object, varrow, vcomp, proarrow, cell, paste, instance, matrix or fragment");
  }
  p.end();
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  SpecFile s;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser p(line, n);
    if (!p.blank()) parse_line(p, s);
  }
  return s;
}

std::string print_spec(const SpecFile& s) {
  std::ostringstream out;
  if (s.instance) {
    out << "instance " << s.instance->kind;
    if (s.instance->parameter) out << "(" << *s.instance->parameter << ")";
    out << " {";
    for (std::size_t i = 0; i < s.instance->sets.size(); ++i) {
      out << (i ? " ; " : " ") << s.instance->sets[i].first << " = " << s.instance->sets[i].second;
    }
    out << " }\n";
  }
  for (const auto& o : s.objects) out << "object " << o.name << "\n";
  for (const auto& a : s.arrows) out << "varrow " << a.name << " : " << a.dom << " -> " << a.cod << "\n";
  for (const auto& c : s.compositions) out << "vcomp " << c.g << " . " << c.f << " = " << c.h << "\n";
  for (const auto& j : s.proarrows) out << "proarrow " << j.name << " : " << j.src << " -|> " << j.tgt << "\n";
  for (const auto& c : s.cells) {
    out << "cell " << c.name << " : [" << (c.domain.empty() ? "@" + c.anchor : join(c.domain, " ")) << "] / ("
        << c.left << ", " << c.right << ") => " << c.codomain << "\n";
  }
  for (const auto& q : s.pastes) out << "paste " << q.outer << " (" << join(q.inners, " ") << ") = " << q.result << "\n";
  for (const auto& m : s.matrices) {
    out << "matrix " << m.name;
    if (!m.src.empty()) out << " : " << m.src << " -|> " << m.tgt;
    std::vector<std::string> rows;
    for (const auto& r : m.rows) rows.push_back(join(r, " "));
    out << " = [" << join(rows, " ; ") << "]\n";
  }
  for (const auto& f : s.fragments) {
    auto barred = [](const std::vector<std::string>& xs) {
      std::string o;
      for (const auto& x : xs) o += " |" + x + "|";
      return o;
    };
    out << "fragment { objects:" << barred(f.objects) << " ; proarrows:" << barred(f.proarrows) << " }\n";
  }
  return out.str();
}

namespace {

EquipmentBounds bounds_for(const SpecFile& s) {
  EquipmentBounds b;
  if (!s.instance) return b;
  if (s.instance->kind == "tropical_matrix") {
    // Flanked composite searches over 81 endo-matrices are too slow past flank 0.
    b.cartesian = SearchBounds{2, 1, 2, std::size_t{1} << 26};
    b.composite = SearchBounds{1, 0, 2, std::size_t{1} << 26};
  } else {
    b.cartesian = SearchBounds{3, 1, 2, std::size_t{1} << 20};
    b.composite = SearchBounds{3, 1, 2, std::size_t{1} << 20};
  }
  return b;
}

MatrixEquipment load_instance(const SpecFile& s) {
  const auto& inst = *s.instance;
  const int line = inst.line;
  std::optional<FiniteQuantale> q;
  if (inst.kind == "bool_matrix") {
    if (inst.parameter) throw ResolutionError(line, "bool_matrix takes no parameter");
    q = FiniteQuantale::boolean();
  } else if (inst.kind == "tropical_matrix") {
    if (!inst.parameter) throw ResolutionError(line, "tropical_matrix needs a cap, as in tropical_matrix(2)");
    q = FiniteQuantale::tropical(*inst.parameter);
  } else {
    throw ResolutionError(line, "unknown instance kind '" + inst.kind + "'");
  }
  std::set<std::string> names;
  for (const auto& [name, size] : inst.sets) {
    if (!names.insert(name).second) throw ResolutionError(line, "object '" + name + "' declared twice");
  }
  MatrixEquipment me = MatrixEquipment::full(*q, inst.sets);
  const auto& vdc = me.vdc();
  for (const auto& m : s.matrices) {
    const int rows = static_cast<int>(m.rows.size());
    const int cols = static_cast<int>(m.rows.front().size());
    std::optional<ObjId> src;
    std::optional<ObjId> tgt;
    if (!m.src.empty()) {
      src = vdc.find_object(m.src);
      tgt = vdc.find_object(m.tgt);
      if (!src) throw ResolutionError(m.line, "unknown object '" + m.src + "'");
      if (!tgt) throw ResolutionError(m.line, "unknown object '" + m.tgt + "'");
      if (me.set_size(*src) != rows || me.set_size(*tgt) != cols) {
        throw ResolutionError(m.line, "matrix " + m.name + " is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                          ", not " + m.src + " x " + m.tgt);
      }
    } else {
      for (std::size_t a = 0; a < vdc.object_count(); ++a) {
        for (std::size_t b = 0; b < vdc.object_count(); ++b) {
          if (me.set_size(ObjId{a}) != rows || me.set_size(ObjId{b}) != cols) continue;
          if (src) throw ResolutionError(m.line, "ends of matrix " + m.name + " are ambiguous; write " + m.name + " : A -|> B");
          src = ObjId{a};
          tgt = ObjId{b};
        }
      }
      if (!src) throw ResolutionError(m.line, "no objects fit the dimensions of matrix " + m.name);
    }
    Matrix mat{rows, cols, {}};
    for (const auto& r : m.rows) {
      for (const auto& e : r) {
        auto v = q->parse_literal(e);
        if (!v) throw ResolutionError(m.line, "'" + e + "' is not an element of " + q->name());
        mat.entries.push_back(*v);
      }
    }
    auto p = me.proarrow_of(*src, *tgt, mat);
    if (!p) throw ResolutionError(m.line, "matrix " + m.name + " is not registered");
    if (me.find_proarrow(m.name)) throw ResolutionError(m.line, "name '" + m.name + "' is already taken");
    me.add_alias(m.name, *p);
  }
  return me;
}

VirtualDoubleCategory load_tabulated(const SpecFile& s) {
  VdcBuilder b;
  std::set<std::string> taken;
  auto fresh = [&](const std::string& name, int line) {
    if (!taken.insert(name).second) throw ResolutionError(line, "name '" + name + "' declared twice");
  };
  auto object = [&](const std::string& name, int line) {
    try {
      return b.object(name);
    } catch (const Error&) {
      throw ResolutionError(line, "unknown object '" + name + "'");
    }
  };
  auto arrow = [&](const std::string& name, int line) {
    try {
      return b.arrow(name);
    } catch (const Error&) {
      throw ResolutionError(line, "unknown vertical arrow '" + name + "'");
    }
  };
  auto proarrow = [&](const std::string& name, int line) {
    try {
      return b.proarrow(name);
    } catch (const Error&) {
      throw ResolutionError(line, "unknown proarrow '" + name + "'");
    }
  };
  auto cell = [&](const std::string& name, int line) {
    try {
      return b.cell(name);
    } catch (const Error&) {
      throw ResolutionError(line, "unknown cell '" + name + "'");
    }
  };
  for (const auto& o : s.objects) {
    fresh(o.name, o.line);
    fresh("id_" + o.name, o.line);
    b.add_object(o.name);
  }
  for (const auto& a : s.arrows) {
    fresh(a.name, a.line);
    b.add_arrow(a.name, object(a.dom, a.line), object(a.cod, a.line));
  }
  const auto& v = b.vertical();
  std::set<std::pair<std::uint32_t, std::uint32_t>> declared;
  for (const auto& c : s.compositions) {
    const VArrowId g = arrow(c.g, c.line);
    const VArrowId f = arrow(c.f, c.line);
    const VArrowId h = arrow(c.h, c.line);
    if (v.cod(f) != v.dom(g)) throw ResolutionError(c.line, c.g + " . " + c.f + " is not composable");
    if (v.dom(h) != v.dom(f) || v.cod(h) != v.cod(g)) {
      throw ResolutionError(c.line, c.h + " has the wrong boundary for " + c.g + " . " + c.f);
    }
    if (!declared.insert({g.value, f.value}).second) throw ResolutionError(c.line, c.g + " . " + c.f + " declared twice");
    b.set_compose(g, f, h);
  }
  for (const auto& a : s.arrows) {
    for (const auto& c : s.arrows) {
      if (a.dom != c.cod) continue;
      const VArrowId g = b.arrow(a.name);
      const VArrowId f = b.arrow(c.name);
      if (!declared.count({g.value, f.value})) {
        throw ResolutionError(a.line, "missing vcomp " + a.name + " . " + c.name);
      }
    }
  }
  for (const auto& j : s.proarrows) {
    fresh(j.name, j.line);
    fresh("id_" + j.name, j.line);
    b.add_proarrow(j.name, object(j.src, j.line), object(j.tgt, j.line));
  }
  for (const auto& c : s.cells) {
    fresh(c.name, c.line);
    Frame f;
    if (c.domain.empty()) {
      f.domain = Path::empty(object(c.anchor, c.line));
    } else {
      std::vector<ProarrowId> ps;
      for (const auto& p : c.domain) ps.push_back(proarrow(p, c.line));
      f.domain = Path::of(std::move(ps));
    }
    f.left = arrow(c.left, c.line);
    f.right = arrow(c.right, c.line);
    f.codomain = proarrow(c.codomain, c.line);
    b.add_cell(c.name, f);
  }
  for (const auto& q : s.pastes) {
    std::vector<CellId> inners;
    for (const auto& c : q.inners) inners.push_back(cell(c, q.line));
    b.set_paste(cell(q.outer, q.line), std::move(inners), cell(q.result, q.line));
  }
  return b.build_tabulated();
}

}  // namespace

LoadedSpec load_spec(const SpecFile& s) {
  LoadedSpec out{s, std::nullopt, {}, bounds_for(s), {}};
  if (s.instance) {
    if (!s.objects.empty() || !s.arrows.empty() || !s.compositions.empty() || !s.proarrows.empty() ||
        !s.cells.empty() || !s.pastes.empty()) {
      throw ResolutionError(s.instance->line, "an instance block cannot be mixed with tabulated declarations");
    }
    out.matrices = load_instance(s);
    out.vdc = out.matrices->vdc();
  } else {
    if (!s.matrices.empty()) throw ResolutionError(s.matrices.front().line, "matrix declarations need an instance block");
    out.vdc = load_tabulated(s);
  }
  for (const auto& f : s.fragments) {
    LoadedSpec::Fragment r;
    for (const auto& o : f.objects) {
      auto id = out.vdc.find_object(o);
      if (!id) throw ResolutionError(f.line, "unknown object '" + o + "'");
      r.objects.push_back(*id);
    }
    for (const auto& p : f.proarrows) {
      auto id = out.matrices ? out.matrices->find_proarrow(p) : out.vdc.find_proarrow(p);
      if (!id) throw ResolutionError(f.line, "unknown proarrow '" + p + "'");
      r.proarrows.push_back(*id);
    }
    out.fragments.push_back(std::move(r));
  }
  return out;
}

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResolutionError(0, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return load_spec(parse_spec(text.str()));
}

}  // namespace veq
