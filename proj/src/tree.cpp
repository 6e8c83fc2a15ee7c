#include "neutro/tree.hpp"

#include <algorithm>
#include <set>

#include "neutro/error.hpp"

namespace neutro {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::ParseError,
                  "not a binary string: \"" + bits_ + "\"");
    }
  }
}

BitString BitString::child(char bit) const {
  return BitString(bits_ + bit);
}

BitString BitString::prefix(std::size_t length) const {
  BitString out;
  out.bits_ = bits_.substr(0, std::min(length, bits_.size()));
  return out;
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return bits_.size() <= other.bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

std::string_view to_string(StringRelation r) noexcept {
  switch (r) {
    case StringRelation::Equal: return "equal";
    case StringRelation::PrefixOf: return "prefix_of";
    case StringRelation::Extends: return "extends";
    case StringRelation::ImmediateSuccessorOf: return "immediate_successor_of";
    case StringRelation::Incompatible: return "incompatible";
  }
  return "?";
}

StringRelation string_relation(const BitString& sigma, const BitString& tau) {
  if (sigma == tau) return StringRelation::Equal;
  if (sigma.is_prefix_of(tau)) return StringRelation::PrefixOf;
  if (tau.is_prefix_of(sigma)) {
    return sigma.level() == tau.level() + 1
               ? StringRelation::ImmediateSuccessorOf
               : StringRelation::Extends;
  }
  return StringRelation::Incompatible;
}

// ---------------------------------------------------------------------------

bool Tree::contains(const BitString& s) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), s);
}

std::optional<std::size_t> Tree::index_of(const BitString& s) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
  if (it == nodes_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<BitString> Tree::level_nodes(std::size_t level) const {
  std::vector<BitString> out;
  for (const auto& n : nodes_) {
    if (n.level() == level) out.push_back(n);
  }
  return out;
}

std::size_t Tree::max_level() const noexcept {
  std::size_t m = 0;
  for (const auto& n : nodes_) m = std::max(m, n.level());
  return m;
}

Tree build_tree(const std::vector<BitString>& strings, std::size_t horizon) {
  if (horizon == 0) {
    throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  }
  std::set<BitString> closed;
  for (const auto& s : strings) {
    if (s.level() > horizon) {
      throw Error(ErrorKind::DepthExceeded,
                  "level " + std::to_string(s.level()) + " exceeds horizon " +
                      std::to_string(horizon),
                  "\"" + s.str() + "\"");
    }
    for (std::size_t len = 0; len <= s.level(); ++len) {
      closed.insert(s.prefix(len));
    }
  }
  Tree t;
  t.nodes_.assign(closed.begin(), closed.end());
  t.horizon_ = horizon;
  return t;
}

namespace {

void require_node(const Tree& t, const BitString& s) {
  if (!t.contains(s)) {
    throw Error(ErrorKind::NodeNotInTree, "node is not in the tree",
                "\"" + s.str() + "\"");
  }
}

}  // namespace

std::vector<BitString> backward_tracking(const Tree& t, const BitString& sigma) {
  require_node(t, sigma);
  std::vector<BitString> out;
  for (std::size_t len = 0; len < sigma.level(); ++len) {
    out.push_back(sigma.prefix(len));
  }
  return out;
}

std::vector<BitString> forward_tracking(const Tree& t, const BitString& sigma) {
  require_node(t, sigma);
  std::vector<BitString> out;
  // Extensions of sigma are contiguous right after it in lexicographic order.
  auto it = std::upper_bound(t.nodes().begin(), t.nodes().end(), sigma);
  for (; it != t.nodes().end() && sigma.is_prefix_of(*it); ++it) {
    out.push_back(*it);
  }
  return out;
}

std::size_t extension_depth(const Tree& t, const BitString& sigma) {
  require_node(t, sigma);
  std::size_t depth = sigma.level();
  auto it = std::upper_bound(t.nodes().begin(), t.nodes().end(), sigma);
  for (; it != t.nodes().end() && sigma.is_prefix_of(*it); ++it) {
    depth = std::max(depth, it->level());
  }
  return depth;
}

// ---------------------------------------------------------------------------

const Triplet& TreeChoice::triplet(const BitString& node) const {
  auto idx = tree_.index_of(node);
  if (!idx) {
    throw Error(ErrorKind::NodeNotInTree, "node is not in the tree",
                "\"" + node.str() + "\"");
  }
  return triplets_[*idx];
}

TreeChoice build_tree_choice(Tree tree, const NodeTripletTable& triplets) {
  for (const auto& [node, raw] : triplets) {
    if (!tree.contains(node)) {
      throw Error(ErrorKind::NodeNotInTree, "assignment for a node outside the tree",
                  "\"" + node.str() + "\"");
    }
  }
  std::vector<Triplet> table;
  table.reserve(tree.size());
  for (const auto& node : tree.nodes()) {
    auto it = triplets.find(node);
    if (it == triplets.end()) {
      throw Error(ErrorKind::MissingAssignment, "node has no triplet",
                  "\"" + node.str() + "\"");
    }
    try {
      table.push_back(make_triplet(it->second));
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail(), "\"" + node.str() + "\"");
    }
  }
  return TreeChoice(std::move(tree), std::move(table));
}

std::vector<std::size_t> dead_levels(const TreeChoice& tc) {
  const auto& nodes = tc.tree().nodes();
  std::map<std::size_t, bool> any_chosen;
  for (const auto& n : nodes) {
    bool& flag = any_chosen[n.level()];
    flag = flag || tc.verdict(n) == Verdict::Chosen;
  }
  std::vector<std::size_t> out;
  for (const auto& [level, chosen] : any_chosen) {
    if (!chosen) out.push_back(level);
  }
  return out;
}

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::ChosenMax: return "chosen_max";
    case StepKind::CompensatedBackward: return "comp_backward";
    case StepKind::CompensatedForward: return "comp_forward";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Path construction

namespace {

class PathSearch {
 public:
  explicit PathSearch(const TreeChoice& tc)
      : tc_(tc), tree_(tc.tree()), horizon_(tree_.horizon()) {
    depth_.resize(tree_.size());
    // Reverse lexicographic order visits every extension before its prefix.
    for (std::size_t i = tree_.size(); i-- > 0;) {
      const auto& n = tree_.nodes()[i];
      depth_[i] = std::max(depth_[i], n.level());
      if (!n.is_root()) {
        auto parent = *tree_.index_of(n.prefix(n.level() - 1));
        depth_[parent] = std::max(depth_[parent], depth_[i]);
      }
    }
    by_level_.resize(tree_.max_level() + 1);
    for (const auto& n : tree_.nodes()) by_level_[n.level()].push_back(n);
  }

  bool viable(const BitString& s) const {
    auto idx = tree_.index_of(s);
    return idx && depth_[*idx] >= horizon_;
  }

  bool chosen(const BitString& s) const {
    return tc_.verdict(s) == Verdict::Chosen;
  }

  // Higher p_c first, lexicographically least on ties.
  bool prefer(const BitString& a, const BitString& b) const {
    const auto& pa = tc_.p_c(a);
    const auto& pb = tc_.p_c(b);
    if (pa != pb) return pa > pb;
    return a < b;
  }

  std::vector<BitString> viable_children(const BitString& s) const {
    std::vector<BitString> out;
    for (char bit : {'0', '1'}) {
      auto c = s.child(bit);
      if (viable(c)) out.push_back(c);
    }
    return out;
  }

  std::optional<BitString> best_of(const std::vector<BitString>& xs) const {
    if (xs.empty()) return std::nullopt;
    return *std::min_element(xs.begin(), xs.end(),
                             [&](const auto& a, const auto& b) { return prefer(a, b); });
  }

  struct Candidate {
    StepKind kind;
    BitString compensator;
    BitString next;
    std::optional<BitString> partner;
  };

  // Compensated options for a step out of path.back(); marks are not applied
  // here.
  std::vector<Candidate> candidates(const std::vector<BitString>& path,
                                    const std::vector<BitString>& successors) const {
    std::vector<Candidate> out;
    const BitString& sigma = path.back();
    const std::size_t t = sigma.level();

    if (auto slot = best_of(successors)) {
      std::vector<BitString> backward;
      for (std::size_t m = 1; m <= t; ++m) {
        const auto& on_path = path[m];
        if (!chosen(on_path)) continue;
        for (const auto& c : by_level_[m]) {
          if (c != on_path && chosen(c) && tc_.p_c(c) < tc_.p_c(on_path)) {
            backward.push_back(c);
          }
        }
      }
      std::sort(backward.begin(), backward.end(),
                [&](const auto& a, const auto& b) { return prefer(a, b); });
      for (auto& c : backward) {
        out.push_back({StepKind::CompensatedBackward, std::move(c), *slot, {}});
      }
    }

    std::set<std::pair<BitString, BitString>> seen;
    const auto left = sigma.child('0');
    const auto right = sigma.child('1');
    for (std::size_t m = t + 2; m < by_level_.size(); ++m) {
      std::vector<BitString> lo, hi;
      for (const auto& n : by_level_[m]) {
        if (!chosen(n)) continue;
        if (left.is_prefix_of(n)) lo.push_back(n);
        if (right.is_prefix_of(n)) hi.push_back(n);
      }
      for (const auto& a : lo) {
        for (const auto& b : hi) {
          const bool a_wins = prefer(a, b);
          const auto& keep = a_wins ? a : b;
          const auto& comp = a_wins ? b : a;
          auto next = keep.prefix(t + 1);
          if (!viable(next)) continue;
          if (!seen.insert({comp, next}).second) continue;
          out.push_back({StepKind::CompensatedForward, comp, next, keep});
        }
      }
    }
    return out;
  }

  std::optional<PathTrace> run() {
    std::vector<BitString> path{BitString()};
    PathTrace trace;
    std::set<BitString> marks;
    if (extend(path, trace, marks)) return trace;
    return std::nullopt;
  }

  const std::optional<BitString>& stuck() const { return stuck_; }
  std::size_t root_depth() const { return depth_.empty() ? 0 : depth_[0]; }

 private:
  bool extend(std::vector<BitString>& path, PathTrace& trace,
              std::set<BitString>& marks) {
    const BitString sigma = path.back();
    if (sigma.level() == horizon_) return true;
    const auto successors = viable_children(sigma);

    std::vector<BitString> chosen_succ;
    for (const auto& s : successors) {
      if (chosen(s)) chosen_succ.push_back(s);
    }
    if (auto best = best_of(chosen_succ)) {
      return step(path, trace, marks,
                  {StepKind::ChosenMax, BitString(), *best, std::nullopt});
    }

    bool any = false;
    for (auto& cand : candidates(path, successors)) {
      if (marks.count(cand.compensator) != 0) continue;
      any = true;
      if (step(path, trace, marks, cand)) return true;
    }
    if (!any && !stuck_) stuck_ = sigma;
    return false;
  }

  bool step(std::vector<BitString>& path, PathTrace& trace,
            std::set<BitString>& marks, const Candidate& cand) {
    PathStage stage{cand.next.level(), cand.next, cand.kind, std::nullopt,
                    cand.partner};
    const bool compensated = cand.kind != StepKind::ChosenMax;
    if (compensated) {
      stage.compensator = cand.compensator;
      marks.insert(cand.compensator);
    }
    path.push_back(cand.next);
    trace.stages.push_back(std::move(stage));
    if (extend(path, trace, marks)) return true;
    trace.stages.pop_back();
    path.pop_back();
    if (compensated) marks.erase(cand.compensator);
    return false;
  }

  const TreeChoice& tc_;
  const Tree& tree_;
  std::size_t horizon_;
  std::vector<std::size_t> depth_;
  std::vector<std::vector<BitString>> by_level_;
  std::optional<BitString> stuck_;
};

}  // namespace

PathTrace construct_path(const TreeChoice& tc) {
  if (tc.tree().empty()) {
    throw Error(ErrorKind::EmptyTree, "tree has no nodes");
  }
  PathSearch search(tc);
  if (search.root_depth() < tc.tree().horizon()) {
    throw Error(ErrorKind::PreconditionViolated,
                "tree reaches level " + std::to_string(search.root_depth()) +
                    ", horizon is " + std::to_string(tc.tree().horizon()));
  }
  if (auto trace = search.run()) return *std::move(trace);
  std::string where =
      search.stuck() ? "\"" + search.stuck()->str() + "\"" : std::string();
  throw Error(ErrorKind::PreconditionViolated,
              "dead step with neither a backward nor a forward compensator",
              where);
}

std::vector<PathTrace> enumerate_paths(const TreeChoice& tc, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  if (tc.tree().empty()) throw Error(ErrorKind::EmptyTree, "tree has no nodes");
  if (k == 1) return {construct_path(tc)};

  PathSearch search(tc);
  const std::size_t horizon = tc.tree().horizon();
  std::vector<BitString> frontier;
  if (search.root_depth() >= horizon) frontier.push_back(BitString());
  for (std::size_t level = 0; level < horizon && !frontier.empty(); ++level) {
    std::vector<BitString> next;
    for (const auto& s : frontier) {
      for (const auto& c : search.viable_children(s)) {
        if (search.chosen(c)) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  if (frontier.size() < k) {
    throw Error(ErrorKind::InsufficientBranching,
                std::to_string(frontier.size()) +
                    " horizon-length chosen path(s), " + std::to_string(k) +
                    " requested");
  }
  std::vector<PathTrace> out;
  for (std::size_t i = 0; i < k; ++i) {
    PathTrace trace;
    const auto& leaf = frontier[i];
    for (std::size_t level = 1; level <= leaf.level(); ++level) {
      trace.stages.push_back({level, leaf.prefix(level), StepKind::ChosenMax,
                              std::nullopt, std::nullopt});
    }
    out.push_back(std::move(trace));
  }
  return out;
}

TraceCheck validate_trace(const TreeChoice& tc, const PathTrace& trace,
                          bool strict) {
  auto fail = [](std::string why) { return TraceCheck{false, std::move(why)}; };
  const Tree& tree = tc.tree();
  if (tree.empty()) return fail("empty tree");
  const std::size_t horizon = tree.horizon();
  if (trace.stages.size() != horizon) return fail("trace does not reach the horizon");
  if (trace.stages.size() > tree.size()) return fail("trace longer than the tree");

  PathSearch search(tc);
  std::vector<BitString> path{BitString()};
  std::set<BitString> used;
  std::map<std::size_t, std::size_t> backward_per_level;

  for (std::size_t s = 0; s < trace.stages.size(); ++s) {
    const auto& st = trace.stages[s];
    const BitString& prev = path.back();
    if (st.stage != s + 1 || st.node.level() != s + 1) return fail("stage/level mismatch");
    if (!tree.contains(st.node)) return fail("node \"" + st.node.str() + "\" not in tree");
    if (st.node.prefix(s) != prev) return fail("stage " + std::to_string(s + 1) + " breaks the chain");

    const auto successors = search.viable_children(prev);
    if (std::find(successors.begin(), successors.end(), st.node) == successors.end()) {
      return fail("node \"" + st.node.str() + "\" cannot reach the horizon");
    }
    std::vector<BitString> chosen_succ;
    for (const auto& c : successors) {
      if (search.chosen(c)) chosen_succ.push_back(c);
    }

    if (st.kind == StepKind::ChosenMax) {
      if (st.compensator) return fail("chosen step carries a compensator");
      if (!search.chosen(st.node)) return fail("chosen step on an unchosen node");
      if (strict && st.node != *search.best_of(chosen_succ)) {
        return fail("chosen step is not the argmax successor");
      }
    } else {
      if (!chosen_succ.empty()) return fail("compensated step where a chosen successor exists");
      if (!st.compensator) return fail("compensated step without a compensator");
      const BitString& comp = *st.compensator;
      if (!tree.contains(comp) || !search.chosen(comp)) return fail("compensator is not a chosen node");
      if (!used.insert(comp).second) return fail("compensator \"" + comp.str() + "\" used twice");

      if (st.kind == StepKind::CompensatedBackward) {
        if (st.node != *search.best_of(successors)) return fail("backward step skips the best slot");
        const std::size_t m = comp.level();
        if (m == 0 || m > prev.level()) return fail("backward compensator level out of range");
        const BitString& on_path = path[m];
        if (comp == on_path || !search.chosen(on_path) ||
            !(tc.p_c(comp) < tc.p_c(on_path))) {
          return fail("backward compensator not dominated on its level");
        }
        if (++backward_per_level[st.node.level()] > (std::size_t{1} << st.node.level())) {
          return fail("backward budget exceeded");
        }
      } else {
        if (comp.level() < prev.level() + 2 || !prev.is_prefix_of(comp)) {
          return fail("forward compensator does not extend the stuck node");
        }
        bool justified = false;
        for (const auto& other : tree.level_nodes(comp.level())) {
          if (st.partner && other != *st.partner) continue;
          if (!search.chosen(other) || !prev.is_prefix_of(other)) continue;
          if (other.str()[prev.level()] == comp.str()[prev.level()]) continue;
          if (search.prefer(other, comp) && other.prefix(prev.level() + 1) == st.node) {
            justified = true;
            break;
          }
        }
        if (!justified) return fail("forward compensator is not the weaker member of a split pair");
      }
    }
    path.push_back(st.node);
  }

  for (const auto& node : path) {
    if (used.count(node) != 0) return fail("compensator lies on the path");
  }
  for (std::size_t level : dead_levels(tc)) {
    if (level == 0 || level > horizon) continue;
    if (trace.stages[level - 1].kind == StepKind::ChosenMax) {
      return fail("dead level " + std::to_string(level) + " crossed without compensation");
    }
  }
  return {};
}

}  // namespace neutro
