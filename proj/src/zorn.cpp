#include "neutro/zorn.hpp"

#include <algorithm>
#include <functional>

#include "neutro/error.hpp"

namespace neutro {

ZornFamily::ZornFamily(const std::vector<std::vector<std::string>>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    MemberSet s(members[i].begin(), members[i].end());
    if (index_of(s)) {
      throw Error(ErrorKind::DuplicateMember, "member repeats an earlier one",
                  "P" + std::to_string(i));
    }
    members_.push_back(std::move(s));
  }
}

const MemberSet& ZornFamily::member(std::size_t i) const {
  if (i >= members_.size()) {
    throw Error(ErrorKind::NotAMember, "member index out of range",
                "P" + std::to_string(i));
  }
  return members_[i];
}

std::optional<std::size_t> ZornFamily::index_of(const MemberSet& s) const {
  auto it = std::find(members_.begin(), members_.end(), s);
  if (it == members_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool strict_subset(const MemberSet& a, const MemberSet& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool check_chain_closed(const ZornFamily& p) {
  return p.index_of(MemberSet{}).has_value();
}

SupersetFan superset_fan(const ZornFamily& p, std::size_t base) {
  const auto& a = p.member(base);
  SupersetFan out{base, {}};
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (strict_subset(a, p.member(q))) out.fan.push_back(q);
  }
  return out;
}

SupersetFan superset_fan(const ZornFamily& p, const MemberSet& base) {
  auto idx = p.index_of(base);
  if (!idx) throw Error(ErrorKind::NotAMember, "set is not a member of the family");
  return superset_fan(p, *idx);
}

std::string_view to_string(Provenance p) noexcept {
  return p == Provenance::DirectChoice ? "direct" : "compensated";
}

namespace {

struct PoolEntry {
  CompensatorId id;
  Rational p_c;
  std::size_t fan_pos;
};

bool prefer(const PoolEntry& a, const PoolEntry& b) {
  if (a.p_c != b.p_c) return a.p_c > b.p_c;
  if (a.id.owner != b.id.owner) return a.id.owner < b.id.owner;
  return a.fan_pos < b.fan_pos;
}

struct Analysis {
  std::vector<SupersetFan> fans;
  std::vector<std::size_t> maximal;
  std::vector<SuccessorEntry> direct;
  std::vector<std::size_t> needy;       // no Chosen fan entry
  std::vector<PoolEntry> pool;          // preference order
};

Analysis analyse(const ZornFamily& p, const FanTriplets& triplets) {
  if (triplets.size() != p.size()) {
    throw Error(ErrorKind::MissingAssignment,
                "fan triplet table has " + std::to_string(triplets.size()) +
                    " rows, family has " + std::to_string(p.size()) + " members");
  }
  Analysis an;
  for (std::size_t a = 0; a < p.size(); ++a) {
    an.fans.push_back(superset_fan(p, a));
    const auto& fan = an.fans.back().fan;
    const auto& row = triplets[a];
    if (row.size() != fan.size()) {
      throw Error(row.size() < fan.size() ? ErrorKind::MissingAssignment
                                          : ErrorKind::InvalidArgument,
                  "fan has " + std::to_string(fan.size()) + " entries, row has " +
                      std::to_string(row.size()),
                  "P" + std::to_string(a));
    }
    if (fan.empty()) {
      an.maximal.push_back(a);
      continue;
    }
    std::vector<PoolEntry> chosen;
    for (std::size_t e = 0; e < fan.size(); ++e) {
      Triplet t = [&] {
        try {
          return make_triplet(row[e]);
        } catch (const Error& err) {
          throw Error(err.kind(), err.detail(),
                      "P" + std::to_string(a) + " fan[" + std::to_string(e) + "]");
        }
      }();
      if (classify(t) == Verdict::Chosen) {
        chosen.push_back({{a, fan[e]}, t.choose(), e});
      }
    }
    if (chosen.empty()) {
      an.needy.push_back(a);
      continue;
    }
    auto top = std::min_element(chosen.begin(), chosen.end(), prefer);
    an.direct.push_back({a, top->id.member, Provenance::DirectChoice, std::nullopt});
    for (auto it = chosen.begin(); it != chosen.end(); ++it) {
      if (it != top) an.pool.push_back(*it);
    }
  }
  std::sort(an.pool.begin(), an.pool.end(), prefer);
  return an;
}

// Bipartite matching between needy members and pool slots (Kuhn's augmenting
// paths). `usable[k]` masks out slots already consumed.
class Matcher {
 public:
  Matcher(const ZornFamily& p, const Analysis& an) : p_(p), an_(an) {}

  bool edge(std::size_t member, std::size_t slot) const {
    const auto& id = an_.pool[slot].id;
    return id.owner != member && strict_subset(p_.member(member), p_.member(id.member));
  }

  // Members of `needy` left unmatched by a maximum matching.
  std::vector<std::size_t> unmatched(const std::vector<std::size_t>& needy,
                                     const std::vector<bool>& usable) const {
    std::vector<long> owner_of(an_.pool.size(), -1);
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < needy.size(); ++i) {
      std::vector<bool> seen(an_.pool.size(), false);
      if (!augment(needy, usable, i, seen, owner_of)) left.push_back(needy[i]);
    }
    return left;
  }

 private:
  bool augment(const std::vector<std::size_t>& needy, const std::vector<bool>& usable,
               std::size_t i, std::vector<bool>& seen,
               std::vector<long>& owner_of) const {
    for (std::size_t k = 0; k < an_.pool.size(); ++k) {
      if (!usable[k] || seen[k] || !edge(needy[i], k)) continue;
      seen[k] = true;
      if (owner_of[k] < 0 ||
          augment(needy, usable, static_cast<std::size_t>(owner_of[k]), seen, owner_of)) {
        owner_of[k] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  }

  const ZornFamily& p_;
  const Analysis& an_;
};

}  // namespace

ZornCapacity check_zorn_compensation(const ZornFamily& p,
                                     const FanTriplets& triplets) {
  auto an = analyse(p, triplets);
  Matcher matcher(p, an);
  ZornCapacity cap;
  cap.unmatched = matcher.unmatched(an.needy, std::vector<bool>(an.pool.size(), true));
  cap.holds = cap.unmatched.empty();
  return cap;
}

MaximalReport find_maximal(const ZornFamily& p, const FanTriplets& triplets) {
  auto an = analyse(p, triplets);
  Matcher matcher(p, an);
  std::vector<bool> usable(an.pool.size(), true);

  if (auto left = matcher.unmatched(an.needy, usable); !left.empty()) {
    throw Error(ErrorKind::CompensationExhausted,
                "no unmarked compensator strictly contains this member",
                "P" + std::to_string(left.front()));
  }

  MaximalReport report;
  report.maximal = an.maximal;
  std::vector<SuccessorEntry> entries = an.direct;

  std::vector<std::size_t> pending = an.needy;
  std::vector<std::size_t> deferred;
  std::vector<bool> encountered(an.pool.size(), false);

  auto serve = [&](std::size_t member) {
    std::vector<std::size_t> rest;
    for (auto m : pending) {
      if (m != member) rest.push_back(m);
    }
    for (std::size_t k = 0; k < an.pool.size(); ++k) {
      if (!usable[k] || !encountered[k] || !matcher.edge(member, k)) continue;
      usable[k] = false;
      if (matcher.unmatched(rest, usable).empty()) {
        const auto& id = an.pool[k].id;
        entries.push_back({member, id.member, Provenance::Compensated, id});
        pending = std::move(rest);
        return true;
      }
      usable[k] = true;
    }
    return false;
  };

  // First pass: walk members in order; compensators become available once
  // their owner has been visited.
  report.passes = 1;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t k = 0; k < an.pool.size(); ++k) {
      if (an.pool[k].id.owner == a) encountered[k] = true;
    }
    if (std::find(an.needy.begin(), an.needy.end(), a) != an.needy.end() && !serve(a)) {
      deferred.push_back(a);
    }
  }
  std::fill(encountered.begin(), encountered.end(), true);
  while (!deferred.empty()) {
    if (report.passes >= std::max<std::size_t>(p.size(), 1)) break;
    ++report.passes;
    std::vector<std::size_t> still;
    for (auto a : deferred) {
      if (!serve(a)) still.push_back(a);
    }
    if (still.size() == deferred.size()) {
      deferred = std::move(still);
      break;
    }
    deferred = std::move(still);
  }
  if (!deferred.empty()) {
    throw Error(ErrorKind::CompensationExhausted,
                "deferred member was never served", "P" + std::to_string(deferred.front()));
  }

  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.base < y.base; });
  report.successors = std::move(entries);
  return report;
}

bool verify_report(const ZornFamily& p, const MaximalReport& r) {
  const std::size_t n = p.size();
  std::vector<bool> seen_base(n, false);
  for (auto m : r.maximal) {
    if (m >= n || seen_base[m]) return false;
    seen_base[m] = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (strict_subset(p.member(m), p.member(q))) return false;
    }
  }
  std::set<CompensatorId> used;
  for (const auto& e : r.successors) {
    if (e.base >= n || e.successor >= n || seen_base[e.base]) return false;
    seen_base[e.base] = true;
    if (!strict_subset(p.member(e.base), p.member(e.successor))) return false;
    if (e.provenance == Provenance::Compensated) {
      if (!e.compensator) return false;
      const auto& id = *e.compensator;
      if (id.owner >= n || id.owner == e.base || id.member != e.successor) return false;
      if (!strict_subset(p.member(id.owner), p.member(id.member))) return false;
      if (!used.insert(id).second) return false;
    } else if (e.compensator) {
      return false;
    }
  }
  return std::all_of(seen_base.begin(), seen_base.end(), [](bool b) { return b; });
}

}  // namespace neutro
