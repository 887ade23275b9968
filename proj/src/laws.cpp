#include "veq/laws.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "veq/enumerate.hpp"

namespace veq {
namespace {

constexpr std::size_t kMaxReportedFailures = 16;

struct Budget {
  std::size_t left;
  bool exhausted = false;
  bool take() {
    if (left == 0) {
      exhausted = true;
      return false;
    }
    --left;
    return true;
  }
};

class LawChecker {
 public:
  LawChecker(const VirtualDoubleCategory& vdc, SearchBounds bounds, VerificationReport& report)
      : vdc_(vdc), bounds_(bounds), report_(report), budget_{bounds.max_candidates} {
    cells_ = enumerate_cells(vdc, bounds.max_path);
    for (std::size_t i = 0; i < cells_.size(); ++i) by_codomain_[cells_[i].frame.codomain.value].push_back(i);
  }

  void run() {
    identity_laws();
    if (bounds_.max_depth >= 1 && !stopped()) {
      if (vdc_.is_thin()) {
        thin_closure();
      } else {
        closure();
      }
    }
    // In a thin store both sides of an associativity instance lie on the same
    // frame, so the law reduces to definedness of each pasting, which the
    // closure pass already covers for every arrangement within the bounds.
    if (bounds_.max_depth >= 2 && !vdc_.is_thin() && !stopped()) associativity();
    if (failures_ == 0) {
      if (budget_.exhausted) {
        report_.truncated("vdc.laws", "arrangement budget of " + std::to_string(bounds_.max_candidates) +
                                          " exhausted after " + std::to_string(checked_) + " arrangements");
      } else {
        report_.pass("vdc.laws", std::to_string(cells_.size()) + " cells, " + std::to_string(checked_) +
                                     " arrangements checked");
      }
    } else if (budget_.exhausted) {
      report_.truncated("vdc.laws", "arrangement budget exhausted; failures above are genuine");
    }
  }

 private:
  [[nodiscard]] bool stopped() const { return budget_.exhausted || failures_ >= kMaxReportedFailures; }

  void fail(const std::string& law, const std::string& arrangement, const std::string& why) {
    ++failures_;
    report_.fail("vdc.laws." + law, arrangement + ": " + why);
  }

  std::string show(const Cell& c) const { return "<" + vdc_.describe(c) + ">"; }

  std::string show(const std::vector<Cell>& cs) const {
    std::string out = "(";
    for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? " " : "") + show(cs[i]);
    return out + ")";
  }

  void identity_laws() {
    for (const auto& c : cells_) {
      if (stopped()) return;
      if (!budget_.take()) return;
      ++checked_;
      try {
        const Cell id = vdc_.identity_cell(c.frame.codomain);
        Cell got = vdc_.paste(id, {c});
        if (got != c) fail("left_identity", "id(" + show(c) + ")", "yields " + show(got));
      } catch (const Error& e) {
        fail("left_identity", "id(" + show(c) + ")", e.what());
      }
      if (c.frame.domain.is_empty()) continue;
      std::vector<Cell> ids;
      try {
        for (auto p : c.frame.domain.arrows) ids.push_back(vdc_.identity_cell(p));
        Cell got = vdc_.paste(c, ids);
        if (got != c) fail("right_identity", show(c) + "(ids)", "yields " + show(got));
      } catch (const Error& e) {
        fail("right_identity", show(c) + "(ids)", e.what());
      }
    }
  }

  // Chooses one cell per entry of `codomains`, chaining verticals, with total
  // domain length at most `room`.
  template <class F>
  void choose(const std::vector<ProarrowId>& codomains, std::size_t slot, int room, std::vector<Cell>& picked,
              F&& on_complete) {
    if (stopped()) return;
    if (slot == codomains.size()) {
      on_complete(picked, room);
      return;
    }
    auto it = by_codomain_.find(codomains[slot].value);
    if (it == by_codomain_.end()) return;
    for (auto idx : it->second) {
      const Cell& c = cells_[idx];
      const int len = static_cast<int>(c.frame.domain.size());
      if (len > room) continue;
      if (slot > 0 && picked.back().frame.right != c.frame.left) continue;
      picked.push_back(c);
      choose(codomains, slot + 1, room - len, picked, on_complete);
      picked.pop_back();
      if (stopped()) return;
    }
  }

  void closure() {
    for (const auto& beta : cells_) {
      if (beta.frame.domain.is_empty()) continue;
      std::vector<Cell> alphas;
      choose(beta.frame.domain.arrows, 0, bounds_.max_path, alphas, [&](std::vector<Cell>& as, int) {
        if (!budget_.take()) return;
        ++checked_;
        try {
          (void)vdc_.paste(beta, as);
        } catch (const Error& e) {
          fail("closure", show(beta) + show(as), e.what());
        }
      });
      if (stopped()) return;
    }
  }

  // A thin pasting depends only on the outer frame and on the outer verticals
  // and concatenated domain of the inners, so inner tuples are collapsed to
  // those states once per outer domain.
  struct State {
    VArrowId left;
    VArrowId right;
    Path domain;
    friend bool operator==(const State&, const State&) = default;
  };
  struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
      std::size_t h = std::hash<VArrowId>{}(s.left);
      h = hash_combine(h, std::hash<VArrowId>{}(s.right));
      return hash_combine(h, PathHash{}(s.domain));
    }
  };

  void thin_closure() {
    std::unordered_map<Path, std::vector<std::size_t>, PathHash> outers;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!cells_[i].frame.domain.is_empty()) outers[cells_[i].frame.domain].push_back(i);
    }
    const auto& vert = vdc_.vertical();
    for (const auto& [domain, betas] : outers) {
      std::unordered_set<State, StateHash> states;
      for (std::size_t slot = 0; slot < domain.size(); ++slot) {
        std::unordered_set<State, StateHash> next;
        auto it = by_codomain_.find(domain.arrows[slot].value);
        if (it == by_codomain_.end()) break;
        for (auto idx : it->second) {
          const Frame& a = cells_[idx].frame;
          if (slot == 0) {
            next.insert(State{a.left, a.right, a.domain});
            continue;
          }
          for (const auto& s : states) {
            if (s.right != a.left) continue;
            if (s.domain.size() + a.domain.size() > static_cast<std::size_t>(bounds_.max_path)) continue;
            next.insert(State{s.left, a.right, concat(s.domain, a.domain)});
          }
        }
        states = std::move(next);
      }
      for (auto bi : betas) {
        const Frame& beta = cells_[bi].frame;
        for (const auto& s : states) {
          if (!budget_.take()) return;
          ++checked_;
          Frame result{s.domain, vert.compose(beta.left, s.left), vert.compose(beta.right, s.right), beta.codomain};
          if (!vdc_.has_cell(result)) {
            fail("closure", show(cells_[bi]) + " over inners " + vdc_.describe(s.domain),
                 "pasted frame " + vdc_.describe(result) + " has no cell");
          }
          if (stopped()) return;
        }
      }
    }
  }

  void associativity() {
    for (const auto& beta : cells_) {
      if (beta.frame.domain.is_empty()) continue;
      std::vector<Cell> alphas;
      choose(beta.frame.domain.arrows, 0, bounds_.max_path, alphas, [&](std::vector<Cell>& as, int) {
        std::vector<ProarrowId> entries;
        for (const auto& a : as) entries.insert(entries.end(), a.frame.domain.arrows.begin(), a.frame.domain.arrows.end());
        if (entries.empty()) return;
        std::vector<Cell> gammas;
        const std::vector<Cell> fixed_alphas = as;
        choose(entries, 0, bounds_.max_path, gammas,
               [&](std::vector<Cell>& gs, int) { check_arrangement(beta, fixed_alphas, gs); });
      });
      if (stopped()) return;
    }
  }

  void check_arrangement(const Cell& beta, const std::vector<Cell>& alphas, const std::vector<Cell>& gammas) {
    // Regroup the gammas by the alpha whose domain they fill.
    std::vector<std::vector<Cell>> blocks(alphas.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (std::size_t j = 0; j < alphas[i].frame.domain.size(); ++j) blocks[i].push_back(gammas[next++]);
    }
    // The left side is defined only when the partially pasted inners still
    // chain; a nullary alpha between gammas can break that.
    std::vector<Frame> lhs_frames;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (blocks[i].empty()) {
        lhs_frames.push_back(alphas[i].frame);
        continue;
      }
      std::vector<Frame> fs;
      for (const auto& g : blocks[i]) fs.push_back(g.frame);
      lhs_frames.push_back(vdc_.pasted_frame(alphas[i].frame, fs));
    }
    for (std::size_t i = 1; i < lhs_frames.size(); ++i) {
      if (lhs_frames[i - 1].right != lhs_frames[i].left) return;
    }
    if (!budget_.take()) return;
    ++checked_;
    const std::string arrangement = show(beta) + show(alphas) + show(gammas);
    Cell lhs;
    Cell rhs;
    try {
      std::vector<Cell> inner;
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        inner.push_back(blocks[i].empty() ? alphas[i] : vdc_.paste(alphas[i], blocks[i]));
      }
      lhs = vdc_.paste(beta, inner);
    } catch (const Error& e) {
      fail("associativity", arrangement, std::string("inner-first pasting: ") + e.what());
      return;
    }
    try {
      rhs = vdc_.paste(vdc_.paste(beta, alphas), gammas);
    } catch (const Error& e) {
      fail("associativity", arrangement, std::string("outer-first pasting: ") + e.what());
      return;
    }
    if (lhs != rhs) fail("associativity", arrangement, show(lhs) + " != " + show(rhs));
  }

  const VirtualDoubleCategory& vdc_;
  SearchBounds bounds_;
  VerificationReport& report_;
  Budget budget_;
  std::vector<Cell> cells_;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_codomain_;
  std::size_t checked_ = 0;
  std::size_t failures_ = 0;
};

}  // namespace

VerificationReport check_vdc_laws(const VirtualDoubleCategory& vdc, SearchBounds bounds) {
  return timed_report("vdc-laws", bounds, [&](VerificationReport& report) {
    try {
      LawChecker(vdc, bounds, report).run();
    } catch (const Error& e) {
      report.fail("vdc.laws", e.what());
    }
  });
}

}  // namespace veq
