#include "neutro/choice.hpp"

#include <algorithm>
#include <set>

#include "neutro/error.hpp"

namespace neutro {

std::string to_string(const ElementRef& ref) {
  return "X" + std::to_string(ref.set) + ":" + ref.id;
}

SetFamily::SetFamily(std::vector<std::vector<std::string>> sets)
    : sets_(std::move(sets)) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].empty()) {
      throw Error(ErrorKind::InvalidArgument, "set is empty",
                  "X" + std::to_string(i));
    }
    std::set<std::string> seen;
    for (const auto& id : sets_[i]) {
      if (!seen.insert(id).second) {
        throw Error(ErrorKind::InvalidArgument, "identifier listed twice",
                    to_string(ElementRef{i, id}));
      }
    }
  }
}

const std::vector<std::string>& SetFamily::set(std::size_t i) const {
  if (i >= sets_.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "family has " + std::to_string(sets_.size()) + " sets",
                "X" + std::to_string(i));
  }
  return sets_[i];
}

std::optional<std::size_t> SetFamily::position(std::size_t set,
                                               const std::string& id) const {
  const auto& xs = this->set(set);
  auto it = std::find(xs.begin(), xs.end(), id);
  if (it == xs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - xs.begin());
}

const Triplet& NeutroChoice::triplet(const ElementRef& ref) const {
  auto pos = family_.position(ref.set, ref.id);
  if (!pos) {
    throw Error(ErrorKind::InvalidArgument, "no such element", to_string(ref));
  }
  return triplet(ref.set, *pos);
}

NeutroChoice build_choice(SetFamily family, const TripletTable& triplets) {
  for (const auto& [ref, raw] : triplets) {
    if (ref.set >= family.size() || !family.position(ref.set, ref.id)) {
      throw Error(ErrorKind::InvalidArgument,
                  "assignment for an element outside the family",
                  to_string(ref));
    }
  }
  std::vector<std::vector<Triplet>> table(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const auto& id : family.set(i)) {
      ElementRef ref{i, id};
      auto it = triplets.find(ref);
      if (it == triplets.end()) {
        throw Error(ErrorKind::MissingAssignment, "element has no triplet",
                    to_string(ref));
      }
      try {
        table[i].push_back(make_triplet(it->second));
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail(), to_string(ref));
      }
    }
  }
  return NeutroChoice(std::move(family), std::move(table));
}

Partition partition_set(const NeutroChoice& f, std::size_t set) {
  const auto& xs = f.family().set(set);
  Partition p;
  for (std::size_t pos = 0; pos < xs.size(); ++pos) {
    switch (f.verdict(set, pos)) {
      case Verdict::Chosen: p.chosen.push_back(xs[pos]); break;
      case Verdict::NotChosen: p.not_chosen.push_back(xs[pos]); break;
      case Verdict::Indeterminate: p.indeterminate.push_back(xs[pos]); break;
    }
  }
  return p;
}

NeutroChoice embed_classical(SetFamily family,
                             const std::vector<std::string>& choice) {
  if (choice.size() != family.size()) {
    throw Error(ErrorKind::InvalidChoice,
                "choice map covers " + std::to_string(choice.size()) +
                    " sets, family has " + std::to_string(family.size()));
  }
  const Triplet chosen = make_triplet(kEmbedChosen);
  const Triplet rejected = make_triplet(kEmbedNotChosen);
  std::vector<std::vector<Triplet>> table(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family.position(i, choice[i])) {
      throw Error(ErrorKind::InvalidChoice, "chosen element not in its set",
                  to_string(ElementRef{i, choice[i]}));
    }
    for (const auto& id : family.set(i)) {
      table[i].push_back(id == choice[i] ? chosen : rejected);
    }
  }
  return NeutroChoice(std::move(family), std::move(table));
}

namespace {

struct Candidate {
  std::size_t set;
  std::size_t pos;
  Rational p_c;
};

// Highest choice probability first; equal probabilities keep set order, then
// element order.
bool better(const Candidate& a, const Candidate& b) {
  if (a.p_c != b.p_c) return a.p_c > b.p_c;
  if (a.set != b.set) return a.set < b.set;
  return a.pos < b.pos;
}

struct DonorState {
  std::vector<std::size_t> empty_sets;
  std::vector<Candidate> tops;        // marked up front
  std::vector<Candidate> candidates;  // potential compensators
};

DonorState analyse(const NeutroChoice& f) {
  DonorState st;
  const auto& fam = f.family();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    std::vector<Candidate> chosen;
    for (std::size_t pos = 0; pos < fam.set(i).size(); ++pos) {
      if (f.verdict(i, pos) == Verdict::Chosen) {
        chosen.push_back({i, pos, f.triplet(i, pos).choose()});
      }
    }
    if (chosen.empty()) {
      st.empty_sets.push_back(i);
    } else if (chosen.size() >= 2) {
      auto top = std::min_element(chosen.begin(), chosen.end(), better);
      st.tops.push_back(*top);
      for (auto it = chosen.begin(); it != chosen.end(); ++it) {
        if (it != top) st.candidates.push_back(*it);
      }
    }
  }
  std::sort(st.candidates.begin(), st.candidates.end(), better);
  return st;
}

ElementRef ref_of(const NeutroChoice& f, std::size_t set, std::size_t pos) {
  return ElementRef{set, f.family().set(set)[pos]};
}

std::size_t top_position(const NeutroChoice& f, std::size_t set) {
  std::size_t best = 0;
  const auto n = f.family().set(set).size();
  for (std::size_t pos = 1; pos < n; ++pos) {
    if (f.triplet(set, pos).choose() > f.triplet(set, best).choose()) best = pos;
  }
  return best;
}

}  // namespace

CompensationReport check_compensation(const NeutroChoice& f) {
  auto st = analyse(f);
  CompensationReport report;
  // Donors are never empty-choice sets, so every slot serves every recipient
  // and index-order allocation fails exactly on the overflow.
  for (std::size_t k = st.candidates.size(); k < st.empty_sets.size(); ++k) {
    report.uncompensatable.push_back(st.empty_sets[k]);
  }
  report.holds = report.uncompensatable.empty();
  return report;
}

CompensationPlan allocate_compensators(const NeutroChoice& f) {
  auto report = check_compensation(f);
  if (!report.holds) {
    throw Error(ErrorKind::PreconditionViolated,
                std::to_string(report.uncompensatable.size()) +
                    " empty-choice set(s) lack an unmarked compensator",
                "X" + std::to_string(report.uncompensatable.front()));
  }
  auto st = analyse(f);
  CompensationPlan plan;
  for (const auto& top : st.tops) plan.marks.push_back(ref_of(f, top.set, top.pos));
  // Candidates are already in preference order; marking consumes the front.
  std::size_t next = 0;
  for (std::size_t recipient : st.empty_sets) {
    const auto& y = st.candidates[next++];
    plan.pairs.push_back({ref_of(f, recipient, top_position(f, recipient)),
                          ref_of(f, y.set, y.pos), y.set});
    plan.marks.push_back(ref_of(f, y.set, y.pos));
  }
  std::sort(plan.marks.begin(), plan.marks.end());
  return plan;
}

bool validate_plan(const NeutroChoice& f, const CompensationPlan& plan) {
  const auto& fam = f.family();
  auto chosen_count = [&](std::size_t set) {
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < fam.set(set).size(); ++pos) {
      n += f.verdict(set, pos) == Verdict::Chosen;
    }
    return n;
  };
  std::set<ElementRef> expected_marks;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    if (chosen_count(j) >= 2) {
      std::optional<std::size_t> top;
      for (std::size_t pos = 0; pos < fam.set(j).size(); ++pos) {
        if (f.verdict(j, pos) != Verdict::Chosen) continue;
        if (!top || f.triplet(j, pos).choose() > f.triplet(j, *top).choose()) {
          top = pos;
        }
      }
      expected_marks.insert(ref_of(f, j, *top));
    }
  }
  std::set<std::size_t> served;
  std::set<ElementRef> used;
  for (const auto& pair : plan.pairs) {
    const auto& e = pair.compensated;
    const auto& y = pair.compensator;
    if (e.set >= fam.size() || y.set >= fam.size()) return false;
    auto epos = fam.position(e.set, e.id);
    auto ypos = fam.position(y.set, y.id);
    if (!epos || !ypos) return false;
    if (y.set != pair.donor || pair.donor == e.set) return false;
    if (chosen_count(e.set) != 0 || chosen_count(pair.donor) < 2) return false;
    if (f.verdict(y.set, *ypos) != Verdict::Chosen) return false;
    if (expected_marks.count(y) != 0) return false;
    if (!used.insert(y).second) return false;
    if (!served.insert(e.set).second) return false;
    expected_marks.insert(y);
  }
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (chosen_count(i) == 0 && served.count(i) == 0) return false;
  }
  std::set<ElementRef> marks(plan.marks.begin(), plan.marks.end());
  return marks.size() == plan.marks.size() && marks == expected_marks;
}

std::string_view to_string(ProductStatus::Kind kind) noexcept {
  switch (kind) {
    case ProductStatus::Kind::NonEmptyWitness: return "non_empty_witness";
    case ProductStatus::Kind::Indeterminate: return "indeterminate";
    case ProductStatus::Kind::NoWitness: return "no_witness";
  }
  return "?";
}

ProductStatus product_status(const NeutroChoice& f) {
  const auto& fam = f.family();
  ProductStatus status;
  bool all_have_choice = true;
  bool some_all_indeterminate = false;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    std::optional<std::size_t> best;
    bool all_indeterminate = true;
    for (std::size_t pos = 0; pos < fam.set(i).size(); ++pos) {
      auto v = f.verdict(i, pos);
      all_indeterminate = all_indeterminate && v == Verdict::Indeterminate;
      if (v == Verdict::Chosen &&
          (!best || f.triplet(i, pos).choose() > f.triplet(i, *best).choose())) {
        best = pos;
      }
    }
    some_all_indeterminate = some_all_indeterminate || all_indeterminate;
    if (best) {
      status.witness.push_back(fam.set(i)[*best]);
    } else {
      all_have_choice = false;
    }
  }
  if (all_have_choice) {
    status.kind = ProductStatus::Kind::NonEmptyWitness;
  } else {
    status.witness.clear();
    status.kind = some_all_indeterminate ? ProductStatus::Kind::Indeterminate
                                         : ProductStatus::Kind::NoWitness;
  }
  return status;
}

}  // namespace neutro
