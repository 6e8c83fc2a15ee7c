#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "neutro/triplet.hpp"

namespace neutro {

using MemberSet = std::set<std::string>;

/// Finite family of finite sets, ordered as given. Member order is the
/// canonical order for fans, processing and tie-breaking.
class ZornFamily {
 public:
  ZornFamily() = default;
  /// Throws DuplicateMember if two members are equal as sets.
  explicit ZornFamily(const std::vector<std::vector<std::string>>& members);

  std::size_t size() const noexcept { return members_.size(); }
  const MemberSet& member(std::size_t i) const;
  const std::vector<MemberSet>& members() const noexcept { return members_; }
  std::optional<std::size_t> index_of(const MemberSet& s) const;

 private:
  std::vector<MemberSet> members_;
};

/// A ⊊ B.
bool strict_subset(const MemberSet& a, const MemberSet& b);

/// For finite families, closure under unions of chains reduces to containing
/// the empty set (the union of the empty chain).
bool check_chain_closed(const ZornFamily& p);

struct SupersetFan {
  std::size_t base = 0;
  std::vector<std::size_t> fan;  // member indices Q with A ⊊ Q, ascending
};

/// Throws NotAMember.
SupersetFan superset_fan(const ZornFamily& p, std::size_t base);
SupersetFan superset_fan(const ZornFamily& p, const MemberSet& base);

/// fan_triplets[a][e] is the triplet of the e-th entry of member a's fan.
using FanTriplets = std::vector<std::vector<RawTriplet>>;

enum class Provenance { DirectChoice, Compensated };
std::string_view to_string(Provenance p) noexcept;

/// A compensator is the fan entry `member` of owner `owner`'s fan.
struct CompensatorId {
  std::size_t owner = 0;
  std::size_t member = 0;
  friend auto operator<=>(const CompensatorId&, const CompensatorId&) = default;
  friend bool operator==(const CompensatorId&, const CompensatorId&) = default;
};

struct SuccessorEntry {
  std::size_t base = 0;
  std::size_t successor = 0;
  Provenance provenance = Provenance::DirectChoice;
  std::optional<CompensatorId> compensator;
  friend bool operator==(const SuccessorEntry&, const SuccessorEntry&) = default;
};

struct MaximalReport {
  std::vector<std::size_t> maximal;
  std::vector<SuccessorEntry> successors;  // ascending by base
  std::size_t passes = 0;
};

struct ZornCapacity {
  bool holds = true;
  /// Members with no Chosen fan entry left without a compensator by a
  /// maximum matching.
  std::vector<std::size_t> unmatched;
};

/// Whether every member with no Chosen fan entry can get a distinct unmarked
/// compensator Q from another member's fan with A ⊊ Q. Validates triplets.
ZornCapacity check_zorn_compensation(const ZornFamily& p,
                                     const FanTriplets& triplets);

/// Maximal members plus a successor S_A for every other member, chosen
/// directly (highest p_c Chosen fan entry, which is then marked) or by
/// compensation. Members are processed in order; a member whose compensator
/// has not been encountered yet is deferred to a later pass. Among available
/// compensators the highest p_c wins (ties: owner order, then fan order),
/// skipping any pick that would leave a later member unservable.
///
/// Throws MissingAssignment / triplet errors for a malformed table, and
/// CompensationExhausted naming the member that cannot be served.
MaximalReport find_maximal(const ZornFamily& p, const FanTriplets& triplets);

/// Independent check of a report against the family: every member is either
/// maximal or has exactly one strict-superset successor, and no compensator
/// serves twice.
bool verify_report(const ZornFamily& p, const MaximalReport& r);

}  // namespace neutro
