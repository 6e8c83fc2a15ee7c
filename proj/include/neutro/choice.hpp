#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neutro/triplet.hpp"

namespace neutro {

/// Address of one element occurrence: the same identifier in two different
/// sets names two different occurrences.
struct ElementRef {
  std::size_t set = 0;
  std::string id;

  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

std::string to_string(const ElementRef& ref);

/// Ordered family X_0..X_{n-1} of finite non-empty sets. Each set keeps its
/// listing order, which is the canonical element order for tie-breaking.
class SetFamily {
 public:
  SetFamily() = default;
  /// Throws InvalidArgument for an empty set or a repeated identifier.
  explicit SetFamily(std::vector<std::vector<std::string>> sets);

  std::size_t size() const noexcept { return sets_.size(); }
  const std::vector<std::string>& set(std::size_t i) const;
  const std::vector<std::vector<std::string>>& sets() const noexcept {
    return sets_;
  }
  std::optional<std::size_t> position(std::size_t set,
                                      const std::string& id) const;

 private:
  std::vector<std::vector<std::string>> sets_;
};

using TripletTable = std::map<ElementRef, RawTriplet>;

/// A triplet for every element occurrence of a family.
class NeutroChoice {
 public:
  const SetFamily& family() const noexcept { return family_; }
  const Triplet& triplet(std::size_t set, std::size_t pos) const {
    return triplets_.at(set).at(pos);
  }
  const Triplet& triplet(const ElementRef& ref) const;
  Verdict verdict(std::size_t set, std::size_t pos) const {
    return classify(triplet(set, pos));
  }

 private:
  friend NeutroChoice build_choice(SetFamily, const TripletTable&);
  friend NeutroChoice embed_classical(SetFamily,
                                      const std::vector<std::string>&);
  NeutroChoice(SetFamily family, std::vector<std::vector<Triplet>> triplets)
      : family_(std::move(family)), triplets_(std::move(triplets)) {}

  SetFamily family_;
  std::vector<std::vector<Triplet>> triplets_;
};

/// Throws MissingAssignment, or the triplet validation error tagged with the
/// offending element. Entries for elements outside the family are rejected
/// with InvalidArgument.
NeutroChoice build_choice(SetFamily family, const TripletTable& triplets);

struct Partition {
  std::vector<std::string> chosen;
  std::vector<std::string> not_chosen;
  std::vector<std::string> indeterminate;
};

Partition partition_set(const NeutroChoice& f, std::size_t set);

/// Canonical neutrosophic image of a classical choice function.
inline const RawTriplet kEmbedChosen{Rational(7, 10), Rational(2, 10),
                                     Rational(1, 10)};
inline const RawTriplet kEmbedNotChosen{Rational(2, 10), Rational(7, 10),
                                        Rational(1, 10)};

/// `choice[i]` is the element picked from X_i. Throws InvalidChoice.
NeutroChoice embed_classical(SetFamily family,
                             const std::vector<std::string>& choice);

struct CompensationReport {
  bool holds = true;
  std::vector<std::size_t> uncompensatable;
};

CompensationReport check_compensation(const NeutroChoice& f);

struct CompensationPair {
  ElementRef compensated;
  ElementRef compensator;
  std::size_t donor = 0;

  friend bool operator==(const CompensationPair&,
                         const CompensationPair&) = default;
};

struct CompensationPlan {
  std::vector<CompensationPair> pairs;
  /// Per-donor top chosen elements plus every compensator used; sorted.
  std::vector<ElementRef> marks;
};

/// Throws PreconditionViolated when the compensation property fails.
CompensationPlan allocate_compensators(const NeutroChoice& f);

/// Re-checks a plan against `f` without reusing the allocator.
bool validate_plan(const NeutroChoice& f, const CompensationPlan& plan);

struct ProductStatus {
  enum class Kind { NonEmptyWitness, Indeterminate, NoWitness };
  Kind kind = Kind::NoWitness;
  /// One element per set, only for NonEmptyWitness.
  std::vector<std::string> witness;
};

std::string_view to_string(ProductStatus::Kind kind) noexcept;

ProductStatus product_status(const NeutroChoice& f);

}  // namespace neutro
