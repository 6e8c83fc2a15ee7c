#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neutro/triplet.hpp"

namespace neutro {

/// Finite string over {0,1}. The empty string is the root; level = length.
/// Ordering is lexicographic ("0" < "00" < "01" < "1").
class BitString {
 public:
  BitString() = default;
  /// Throws ParseError on any character other than '0' or '1'.
  explicit BitString(std::string bits);

  std::size_t level() const noexcept { return bits_.size(); }
  const std::string& str() const noexcept { return bits_; }
  bool is_root() const noexcept { return bits_.empty(); }

  BitString child(char bit) const;
  BitString prefix(std::size_t length) const;
  /// Non-strict: every string is a prefix of itself.
  bool is_prefix_of(const BitString& other) const noexcept;

  friend auto operator<=>(const BitString&, const BitString&) = default;
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

/// How `sigma` relates to `tau`. ImmediateSuccessorOf replaces Extends when
/// sigma is tau plus exactly one bit.
enum class StringRelation {
  Equal,
  PrefixOf,
  Extends,
  ImmediateSuccessorOf,
  Incompatible,
};

std::string_view to_string(StringRelation r) noexcept;

StringRelation string_relation(const BitString& sigma, const BitString& tau);

/// Prefix-closed finite set of binary strings with a depth horizon standing
/// in for "infinite": a path is infinite here when it reaches the horizon.
class Tree {
 public:
  std::size_t horizon() const noexcept { return horizon_; }
  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Lexicographic order.
  const std::vector<BitString>& nodes() const noexcept { return nodes_; }
  bool contains(const BitString& s) const;
  std::optional<std::size_t> index_of(const BitString& s) const;
  /// Lexicographically ordered nodes at `level`.
  std::vector<BitString> level_nodes(std::size_t level) const;
  std::size_t max_level() const noexcept;

 private:
  friend Tree build_tree(const std::vector<BitString>&, std::size_t);
  std::vector<BitString> nodes_;
  std::size_t horizon_ = 1;
};

/// Adds all prefixes of the inputs. Throws DepthExceeded for a string longer
/// than the horizon and InvalidArgument for a zero horizon.
Tree build_tree(const std::vector<BitString>& strings, std::size_t horizon);

/// B_sigma: strict prefixes of sigma, root first. Throws NodeNotInTree.
std::vector<BitString> backward_tracking(const Tree& t, const BitString& sigma);
/// F_sigma: strict extensions of sigma in lexicographic order.
std::vector<BitString> forward_tracking(const Tree& t, const BitString& sigma);
/// Deepest level reached by sigma or any extension of it.
std::size_t extension_depth(const Tree& t, const BitString& sigma);

using NodeTripletTable = std::map<BitString, RawTriplet>;

class TreeChoice {
 public:
  const Tree& tree() const noexcept { return tree_; }
  const Triplet& triplet(const BitString& node) const;
  Verdict verdict(const BitString& node) const {
    return classify(triplet(node));
  }
  const Rational& p_c(const BitString& node) const {
    return triplet(node).choose();
  }

 private:
  friend TreeChoice build_tree_choice(Tree, const NodeTripletTable&);
  TreeChoice(Tree tree, std::vector<Triplet> triplets)
      : tree_(std::move(tree)), triplets_(std::move(triplets)) {}

  Tree tree_;
  std::vector<Triplet> triplets_;  // parallel to tree_.nodes()
};

/// Throws MissingAssignment for an uncovered node, NodeNotInTree for an entry
/// outside the tree, or the triplet error tagged with the node.
TreeChoice build_tree_choice(Tree tree, const NodeTripletTable& triplets);

/// Ascending levels (among those holding nodes) where nothing is Chosen.
std::vector<std::size_t> dead_levels(const TreeChoice& tc);

enum class StepKind { ChosenMax, CompensatedBackward, CompensatedForward };

std::string_view to_string(StepKind k) noexcept;

struct PathStage {
  std::size_t stage = 0;  // equals the level of `node`
  BitString node;
  StepKind kind = StepKind::ChosenMax;
  std::optional<BitString> compensator;
  /// Forward steps: the other member of the incompatible chosen pair.
  std::optional<BitString> partner;

  friend bool operator==(const PathStage&, const PathStage&) = default;
};

/// Stages 1..D; the root is the implicit stage 0.
struct PathTrace {
  std::vector<PathStage> stages;

  BitString path() const {
    return stages.empty() ? BitString() : stages.back().node;
  }
  friend bool operator==(const PathTrace&, const PathTrace&) = default;
};

/// Staged construction of a horizon-length path.
///
/// From sigma_s the viable successors are the immediate successors whose
/// extension depth reaches the horizon. If one of them is Chosen, the step
/// takes the highest p_c (lexicographically least on ties). Otherwise the
/// step needs a compensator, and each compensator is marked so it serves at
/// most once:
///  - backward: an unmarked chosen node c at level m <= level(sigma_s) with
///    p_c(c) < p_c(path node at m), that path node being chosen. The path
///    passes through the best viable successor.
///  - forward: a chosen pair at a common level m >= level(sigma_s) + 2, one
///    below sigma_s0 and one below sigma_s1; the lower-p_c member is the
///    compensator and the path moves toward the other.
/// Backward candidates are tried before forward ones. A compensated step that
/// later dead-ends is undone and the next candidate tried, so the call fails
/// only when no admissible sequence exists.
///
/// Throws EmptyTree, or PreconditionViolated naming the stuck node.
PathTrace construct_path(const TreeChoice& tc);

/// k = 1 returns construct_path's trace. For k >= 2 returns the first k
/// horizon-length paths, in lexicographic order, that move through Chosen
/// viable successors only. Throws InsufficientBranching.
std::vector<PathTrace> enumerate_paths(const TreeChoice& tc, std::size_t k);

struct TraceCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// Re-validates a trace from the TreeChoice alone. With `strict`, chosen
/// steps must also be the argmax successor (construct_path traces); without
/// it any Chosen viable successor is accepted (enumerated traces).
TraceCheck validate_trace(const TreeChoice& tc, const PathTrace& trace,
                          bool strict = true);

}  // namespace neutro
