#include "veq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "veq/embedding.hpp"
#include "veq/laws.hpp"
#include "veq/spec_file.hpp"
#include "veq/theorems.hpp"
#include "veq/universal.hpp"

namespace veq {
namespace {

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::Resolution:
    case ErrorKind::UnknownName:
    case ErrorKind::UnknownProarrow:
    case ErrorKind::IllFormedInstance:
    case ErrorKind::InvalidQuantale:
    case ErrorKind::CapExceeded:
      return true;
    default:
      return false;
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// The loaded spec owns the VDC that the equipment and embedding refer to.
struct Session {
  LoadedSpec spec;
  std::unique_ptr<Equipment> equipment;
  std::unique_ptr<Embedding> embedding;

  explicit Session(const std::string& path) : spec(load_spec_file(path)) {
    equipment = std::make_unique<Equipment>(spec.vdc, spec.bounds);
    embedding = std::make_unique<Embedding>(*equipment);
  }
  [[nodiscard]] const VirtualDoubleCategory& vdc() const { return spec.vdc; }

  ObjId object(const std::string& name) const {
    auto id = vdc().find_object(name);
    if (!id) throw ResolutionError(0, "unknown object '" + name + "'");
    return *id;
  }
  VArrowId arrow(const std::string& name) const {
    auto id = vdc().find_arrow(name);
    if (!id) throw ResolutionError(0, "unknown vertical arrow '" + name + "'");
    return *id;
  }
  ProarrowId proarrow(const std::string& name) const {
    auto id = spec.matrices ? spec.matrices->find_proarrow(name) : vdc().find_proarrow(name);
    if (!id) throw ResolutionError(0, "unknown proarrow '" + name + "'");
    return *id;
  }
};

void apply_overrides(SearchBounds& b, const std::string& text) {
  if (text.empty()) return;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ResolutionError(0, "bounds entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ResolutionError(0, "bounds entry '" + item + "' needs a number");
    }
    if (key == "path") {
      b.max_path = static_cast<int>(value);
    } else if (key == "flank") {
      b.max_flank = static_cast<int>(value);
    } else if (key == "depth") {
      b.max_depth = static_cast<int>(value);
    } else if (key == "candidates") {
      b.max_candidates = value;
    } else {
      throw ResolutionError(0, "unknown bounds key '" + key + "' (path, flank, depth, candidates)");
    }
  }
}

VerificationReport search_report(const std::string& name, const SearchBounds& bounds,
                                 const VirtualDoubleCategory& vdc, const SearchResult& r) {
  VerificationReport report(name, bounds);
  switch (r.outcome) {
    case SearchOutcome::Found:
      report.pass(name, vdc.proarrow(r.witness->proarrow).name + " via " + vdc.describe(r.witness->structure_cell) +
                            ", certified up to " + describe(r.witness->certificate));
      break;
    case SearchOutcome::NotFound:
      report.fail(name, "NotFound" + (r.detail.empty() ? std::string() : ": " + r.detail));
      break;
    case SearchOutcome::BoundsTooSmall:
      report.truncated(name, "BoundsTooSmall" + (r.detail.empty() ? std::string() : ": " + r.detail));
      break;
  }
  return report;
}

VerificationReport derive(const Session& s, const std::string& what) {
  const auto colon = what.find(':');
  const std::string kind = what.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<std::string>{} : split(what.substr(colon + 1), ',');
  const auto& vdc = s.vdc();
  auto arity = [&](std::size_t n) {
    if (args.size() != n) throw ResolutionError(0, kind + " takes " + std::to_string(n) + " argument(s)");
  };
  if (kind == "unit") {
    arity(1);
    return search_report("unit", s.spec.bounds.cartesian, vdc, find_unit(vdc, s.object(args[0]), s.spec.bounds.cartesian));
  }
  if (kind == "restriction") {
    arity(3);
    return search_report("restriction", s.spec.bounds.cartesian, vdc,
                         find_restriction(vdc, s.proarrow(args[0]), s.arrow(args[1]), s.arrow(args[2]),
                                          s.spec.bounds.cartesian));
  }
  if (kind == "composite") {
    if (args.empty()) throw ResolutionError(0, "composite takes at least one proarrow");
    std::vector<ProarrowId> ps;
    for (const auto& a : args) ps.push_back(s.proarrow(a));
    const Path p = Path::of(std::move(ps));
    if (!vdc.is_composable(p)) throw ResolutionError(0, "the proarrows " + what.substr(colon + 1) + " are not composable");
    return search_report("composite", s.spec.bounds.composite, vdc, find_composite(vdc, p, s.spec.bounds.composite));
  }
  if (kind == "companion" || kind == "conjoint") {
    arity(1);
    const VArrowId f = s.arrow(args[0]);
    return timed_report(kind, s.spec.bounds.cartesian, [&](VerificationReport& report) {
      try {
        const auto bends = derive_bends(vdc, f, s.spec.bounds.cartesian);
        const auto& w = kind == "companion" ? bends.companion : bends.conjoint;
        report.pass(kind, vdc.proarrow(w.proarrow).name + " via " + vdc.describe(w.structure_cell));
        report.merge(bends.kinks);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BoundsTooSmall) {
          report.truncated(kind, e.what());
        } else {
          report.fail(kind, e.what());
        }
      }
    });
  }
  throw ResolutionError(0, "unknown derivation '" + kind + "' (unit, restriction, companion, conjoint, composite)");
}

VerificationReport embed(const Session& s, const std::string& object) {
  const ObjId a = s.object(object);
  return timed_report("embed |" + object + "|", SearchBounds{}, [&](VerificationReport& report) {
    const auto& emb = *s.embedding;
    const auto& vdc = s.vdc();
    try {
      const auto& c = emb.represent_object(a);
      std::string names;
      for (std::size_t x = 0; x < c->size(); ++x) {
        names += (x ? " " : "") + vdc.vertical().arrow(emb.element_arrow(a, x)).name;
      }
      report.pass("embed.objects", std::to_string(c->size()) + ": " + names);
      for (std::size_t x = 0; x < c->size(); ++x) {
        for (std::size_t y = 0; y < c->size(); ++y) {
          report.pass("embed.hom(" + std::to_string(x) + "," + std::to_string(y) + ")", vdc.proarrow(c->hom(x, y)).name);
        }
      }
      report.merge(check_category_laws(*c));
    } catch (const Error& e) {
      report.fail("embed", e.what());
    }
  });
}

VerificationReport describe_instance(const Session& s) {
  return timed_report("instance", SearchBounds{}, [&](VerificationReport& report) {
    const auto& vdc = s.vdc();
    const auto& v = vdc.vertical();
    std::string kind = "tabulated";
    if (s.spec.spec.instance) {
      kind = s.spec.spec.instance->kind;
      if (s.spec.spec.instance->parameter) kind += "(" + std::to_string(*s.spec.spec.instance->parameter) + ")";
    }
    report.pass("instance.kind", kind);
    std::string objects;
    for (std::size_t a = 0; a < vdc.object_count(); ++a) objects += (a ? " " : "") + v.object_name(ObjId{a});
    report.pass("instance.objects", std::to_string(vdc.object_count()) + ": " + objects);
    report.pass("instance.vertical_arrows", std::to_string(v.arrow_count()));
    report.pass("instance.proarrows", std::to_string(vdc.proarrow_count()));
    if (const auto* t = vdc.tabulated()) report.pass("instance.cells", std::to_string(t->cell_count()));
    report.pass("instance.fragments", std::to_string(s.spec.fragments.size()));
    report.pass("instance.bounds", "restrictions " + describe(s.spec.bounds.cartesian) + "; composites " +
                                       describe(s.spec.bounds.composite));
  });
}

std::vector<VerificationReport> verify(const Session& s, const std::string& theorem, const std::string& overrides,
                                       std::size_t witnesses) {
  static const std::vector<std::string> kAll{"laws",         "equipment",   "lemmas",       "functoriality",
                                             "preserves-composites", "ff-2cells", "full-arrows", "coreflective",
                                             "morita"};
  std::vector<std::string> wanted;
  if (theorem == "all") {
    wanted = kAll;
  } else if (std::find(kAll.begin(), kAll.end(), theorem) != kAll.end()) {
    wanted = {theorem};
  } else {
    throw ResolutionError(0, "unknown theorem '" + theorem + "'");
  }
  const auto& vdc = s.vdc();
  const auto& emb = *s.embedding;
  SearchBounds laws = vdc.is_thin() ? SearchBounds{1, 1, 2, std::size_t{1} << 22} : SearchBounds::laws_default();
  SearchBounds cart = s.spec.bounds.cartesian;
  SearchBounds comp = s.spec.bounds.composite;
  apply_overrides(laws, overrides);
  apply_overrides(cart, overrides);
  apply_overrides(comp, overrides);
  std::vector<VerificationReport> out;
  for (const auto& t : wanted) {
    auto guarded = [&](const std::string& name, const std::function<VerificationReport()>& body) {
      try {
        out.push_back(body());
      } catch (const Error& e) {
        if (is_input_error(e.kind())) throw;
        VerificationReport r(name);
        if (e.kind() == ErrorKind::BoundsTooSmall || e.kind() == ErrorKind::FragmentTooLarge) {
          r.truncated(name, e.what());
        } else {
          r.fail(name, e.what());
        }
        out.push_back(std::move(r));
      }
    };
    if (t == "laws") {
      guarded(t, [&] { return check_vdc_laws(vdc, laws); });
    } else if (t == "equipment") {
      guarded(t, [&] { return check_equipment(vdc, cart); });
    } else if (t == "lemmas") {
      guarded(t, [&] { return check_derived_lemmas(vdc, comp); });
    } else if (t == "functoriality") {
      guarded(t, [&] { return verify_functoriality(emb, ArrangementBounds{1, 1, {}}); });
    } else if (t == "preserves-composites") {
      guarded(t, [&] { return verify_composite_preservation(emb, witnesses, comp); });
    } else if (t == "ff-2cells") {
      if (s.spec.fragments.empty()) {
        if (theorem == "all") continue;
        throw ResolutionError(0, "ff-2cells needs a fragment declaration");
      }
      for (const auto& f : s.spec.fragments) {
        guarded(t, [&] { return verify_ff_2cells(emb, f.proarrows, 2, f.objects); });
      }
    } else if (t == "full-arrows") {
      guarded(t, [&] { return verify_full_arrows(emb); });
    } else if (t == "coreflective") {
      guarded(t, [&] { return verify_coreflection(emb); });
    } else if (t == "morita") {
      guarded("composite-coreflection", [&] { return verify_composite_coreflection(emb); });
      for (std::size_t a = 0; a < vdc.object_count(); ++a) {
        for (std::size_t b = a; b < vdc.object_count(); ++b) {
          guarded(t, [&] { return verify_morita(emb, ObjId{a}, ObjId{b}, {}); });
        }
      }
    }
  }
  return out;
}

}  // namespace

int exit_code(const std::vector<VerificationReport>& reports) {
  bool truncated = false;
  for (const auto& r : reports) {
    if (r.status() == Status::Fail) return 1;
    truncated = truncated || r.status() == Status::Truncated;
  }
  return truncated ? 3 : 0;
}

void emit(std::ostream& out, const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::Lines) {
    for (const auto& f : report.findings()) {
      std::string name = f.check;
      for (char& c : name) {
        if (c == ' ') c = '_';
      }
      out << "CHECK " << one_line(name) << " " << to_string(f.status) << " " << one_line(f.detail) << "\n";
    }
    return;
  }
  out << report.name() << ": " << to_string(report.status()) << " (" << report.elapsed().count() << " s; bounds "
      << describe(report.bounds()) << ")\n";
  for (const auto& f : report.findings()) {
    out << "  " << to_string(f.status) << "  " << f.check << (f.detail.empty() ? "" : ": " + f.detail) << "\n";
  }
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite virtual equipments and their enriched categories", "veqcheck"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or lines")->check(CLI::IsMember({"text", "lines"}));

  std::string file;
  int max_path = -1;
  auto* validate = app.add_subcommand("validate", "check the substitution laws");
  validate->add_option("file", file)->required();
  validate->add_option("--max-path", max_path, "longest pasted domain");

  std::string what;
  auto* derive_cmd = app.add_subcommand("derive", "search for a universal cell");
  derive_cmd->add_option("file", file)->required();
  derive_cmd->add_option("--what", what, "unit:A | restriction:K,g,f | companion:f | conjoint:f | composite:J1,J2,...")
      ->required();

  std::string object;
  auto* embed_cmd = app.add_subcommand("embed", "build the enriched category |A|");
  embed_cmd->add_option("file", file)->required();
  embed_cmd->add_option("--object", object)->required();

  std::string theorem = "all";
  std::string bounds;
  std::size_t witnesses = 20;
  auto* verify_cmd = app.add_subcommand("verify", "run a theorem check");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--theorem", theorem,
                         "laws|equipment|lemmas|functoriality|preserves-composites|ff-2cells|full-arrows|coreflective|"
                         "morita|all");
  verify_cmd->add_option("--bounds", bounds, "path=K,flank=K,depth=K,candidates=N");
  verify_cmd->add_option("--witnesses", witnesses, "composite witnesses checked in VCat");

  auto* report_cmd = app.add_subcommand("report", "describe the instance");
  report_cmd->add_option("file", file)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  const ReportFormat fmt = format == "lines" ? ReportFormat::Lines : ReportFormat::Text;

  std::vector<VerificationReport> reports;
  try {
    Session s(file);
    if (validate->parsed()) {
      SearchBounds b = s.vdc().is_thin() ? SearchBounds{1, 1, 2, std::size_t{1} << 22} : SearchBounds::laws_default();
      if (max_path >= 0) b.max_path = max_path;
      reports.push_back(check_vdc_laws(s.vdc(), b));
    } else if (derive_cmd->parsed()) {
      reports.push_back(derive(s, what));
    } else if (embed_cmd->parsed()) {
      reports.push_back(embed(s, object));
    } else if (verify_cmd->parsed()) {
      reports = verify(s, theorem, bounds, witnesses);
    } else {
      reports.push_back(describe_instance(s));
    }
  } catch (const Error& e) {
    if (fmt == ReportFormat::Lines) {
      out << "CHECK input fail " << one_line(e.what()) << "\n";
    }
    err << e.what() << "\n";
    return 2;
  }
  for (const auto& r : reports) emit(out, r, fmt);
  return exit_code(reports);
}

}  // namespace veq
