#pragma once
// Test-only generators and brute-force oracles. Nothing here calls the
// library's selection, allocation or path-construction code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "neutro/choice.hpp"
#include "neutro/tree.hpp"
#include "neutro/triplet.hpp"
#include "neutro/zorn.hpp"

namespace testing {

using neutro::BitString;
using neutro::RawTriplet;
using neutro::Rational;

/// Every tie-free triplet (a/d, b/d, c/d) with d in [min_den, max_den].
inline std::vector<RawTriplet> triplet_pool(int max_den, int min_den = 4) {
  std::vector<RawTriplet> out;
  std::set<std::array<std::pair<std::int64_t, std::int64_t>, 3>> seen;
  for (int d = min_den; d <= max_den; ++d) {
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; a + b <= d; ++b) {
        int c = d - a - b;
        if (a == b || b == c || a == c) continue;
        RawTriplet t{Rational(a, d), Rational(b, d), Rational(c, d)};
        std::array<std::pair<std::int64_t, std::int64_t>, 3> key;
        for (int k = 0; k < 3; ++k) key[k] = {t[k].num(), t[k].den()};
        if (seen.insert(key).second) out.push_back(t);
      }
    }
  }
  return out;
}

// Verdict straight from the components, without neutro::classify.
enum class Raw { Chosen, NotChosen, Indeterminate };
inline Raw raw_verdict(const RawTriplet& t) {
  if (t[0] > t[1] && t[0] > t[2]) return Raw::Chosen;
  if (t[1] > t[0] && t[1] > t[2]) return Raw::NotChosen;
  return Raw::Indeterminate;
}

inline const RawTriplet& pick(std::mt19937_64& rng, const std::vector<RawTriplet>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline RawTriplet pick_with(std::mt19937_64& rng, const std::vector<RawTriplet>& pool, Raw want) {
  for (;;) {
    const auto& t = pick(rng, pool);
    if (raw_verdict(t) == want) return t;
  }
}

// ---------------------------------------------------------------------------
// Set families

struct FamilyInstance {
  std::vector<std::vector<std::string>> sets;
  neutro::TripletTable table;
};

inline FamilyInstance random_family(std::mt19937_64& rng, std::size_t max_sets,
                                    std::size_t max_elems,
                                    const std::vector<RawTriplet>& pool) {
  FamilyInstance inst;
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_sets)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_elems)(rng);
    std::vector<std::string> set;
    for (std::size_t k = 0; k < m; ++k) {
      std::string id = "e" + std::to_string(k);
      set.push_back(id);
      inst.table[{i, id}] = pick(rng, pool);
    }
    // Shuffle so listing order is not always the identifier order.
    std::shuffle(set.begin(), set.end(), rng);
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

/// Brute-force compensation oracle: every empty-choice set must be matched
/// to a distinct unmarked chosen element of another set that has at least
/// two chosen elements (the top one in each such set being marked).
inline bool oracle_compensation(const FamilyInstance& inst) {
  struct Slot { std::size_t set; };
  std::vector<std::size_t> empty;
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    std::vector<RawTriplet> chosen;
    for (const auto& id : inst.sets[i]) {
      const auto& t = inst.table.at({i, id});
      if (raw_verdict(t) == Raw::Chosen) chosen.push_back(t);
    }
    if (chosen.empty()) empty.push_back(i);
    for (std::size_t k = 1; k < chosen.size(); ++k) slots.push_back({i});
  }
  std::vector<bool> used(slots.size(), false);
  std::function<bool(std::size_t)> assign = [&](std::size_t e) {
    if (e == empty.size()) return true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (used[s] || slots[s].set == empty[e]) continue;
      used[s] = true;
      if (assign(e + 1)) return true;
      used[s] = false;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Trees

struct TreeInstance {
  std::vector<BitString> strings;
  std::size_t horizon;
  neutro::NodeTripletTable table;
};

inline TreeInstance random_tree(std::mt19937_64& rng, std::size_t max_horizon,
                                const std::vector<RawTriplet>& pool,
                                double branch_p = 0.75) {
  TreeInstance inst;
  inst.horizon = std::uniform_int_distribution<std::size_t>(1, max_horizon)(rng);
  std::bernoulli_distribution grow(branch_p);
  std::vector<std::string> frontier{""};
  std::vector<std::string> all{""};
  for (std::size_t level = 0; level < inst.horizon; ++level) {
    std::vector<std::string> next;
    for (const auto& s : frontier) {
      for (char b : {'0', '1'}) {
        if (grow(rng)) next.push_back(s + b);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& s : all) {
    inst.strings.emplace_back(s);
    inst.table[BitString(s)] = pick(rng, pool);
  }
  return inst;
}

inline neutro::TreeChoice make_tree_choice(const TreeInstance& inst) {
  return neutro::build_tree_choice(neutro::build_tree(inst.strings, inst.horizon), inst.table);
}

/// Brute-force path oracle. Enumerates every root-to-horizon path, derives
/// the compensator options of each step from the stage rules restated over
/// raw strings, and searches all injective compensator assignments. Returns
/// the set of paths admitting a valid assignment.
inline std::set<std::string> oracle_paths(const TreeInstance& inst) {
  std::set<std::string> nodes;
  for (const auto& [n, t] : inst.table) nodes.insert(n.str());
  const std::size_t horizon = inst.horizon;
  auto p = [&](const std::string& s) { return inst.table.at(BitString(s))[0]; };
  auto chosen = [&](const std::string& s) {
    return raw_verdict(inst.table.at(BitString(s))) == Raw::Chosen;
  };
  auto starts = [](const std::string& s, const std::string& pre) {
    return s.size() >= pre.size() && s.compare(0, pre.size(), pre) == 0;
  };
  auto reaches = [&](const std::string& s) {
    for (const auto& n : nodes) {
      if (n.size() == horizon && starts(n, s)) return true;
    }
    return false;
  };
  // a beats b: higher p_c, lexicographically smaller on ties.
  auto beats = [&](const std::string& a, const std::string& b) {
    return p(a) != p(b) ? p(a) > p(b) : a < b;
  };
  auto best = [&](const std::vector<std::string>& xs) {
    std::string b = xs.front();
    for (const auto& x : xs) {
      if (beats(x, b)) b = x;
    }
    return b;
  };

  std::set<std::string> valid;
  for (const auto& leaf : nodes) {
    if (leaf.size() != horizon) continue;
    std::vector<std::set<std::string>> options;
    bool ok = true;
    for (std::size_t t = 0; t < horizon && ok; ++t) {
      const std::string cur = leaf.substr(0, t);
      const std::string nxt = leaf.substr(0, t + 1);
      std::vector<std::string> succ, succ_chosen;
      for (char b : {'0', '1'}) {
        std::string c = cur + b;
        if (nodes.count(c) && reaches(c)) {
          succ.push_back(c);
          if (chosen(c)) succ_chosen.push_back(c);
        }
      }
      if (!succ_chosen.empty()) {
        ok = best(succ_chosen) == nxt;
        continue;
      }
      std::set<std::string> k;
      if (best(succ) == nxt) {
        for (std::size_t m = 1; m <= t; ++m) {
          const std::string on_path = leaf.substr(0, m);
          if (!chosen(on_path)) continue;
          for (const auto& c : nodes) {
            if (c.size() == m && c != on_path && chosen(c) && p(c) < p(on_path)) k.insert(c);
          }
        }
      }
      for (const auto& a : nodes) {
        if (a.size() < t + 2 || !chosen(a) || !starts(a, cur + '0')) continue;
        for (const auto& b : nodes) {
          if (b.size() != a.size() || !chosen(b) || !starts(b, cur + '1')) continue;
          const std::string& win = beats(a, b) ? a : b;
          const std::string& lose = beats(a, b) ? b : a;
          if (starts(win, nxt)) k.insert(lose);
        }
      }
      if (k.empty()) ok = false;
      options.push_back(std::move(k));
    }
    if (!ok) continue;
    std::set<std::string> taken;
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
      if (i == options.size()) return true;
      for (const auto& c : options[i]) {
        if (taken.count(c)) continue;
        taken.insert(c);
        if (assign(i + 1)) return true;
        taken.erase(c);
      }
      return false;
    };
    if (assign(0)) valid.insert(leaf);
  }
  return valid;
}

// ---------------------------------------------------------------------------
// Zorn families

struct ZornInstance {
  std::vector<std::vector<std::string>> members;
  neutro::FanTriplets fans;
};

inline std::vector<std::string> mask_to_members(unsigned mask) {
  std::vector<std::string> out;
  for (unsigned b = 0; b < 5; ++b) {
    if (mask & (1u << b)) out.push_back(std::to_string(b + 1));
  }
  return out;
}

/// Up to `max_members` distinct subsets of {1..universe}, the empty set
/// always included, in shuffled order.
inline std::vector<unsigned> random_masks(std::mt19937_64& rng, std::size_t max_members,
                                          unsigned universe) {
  std::vector<unsigned> all;
  for (unsigned m = 1; m < (1u << universe); ++m) all.push_back(m);
  std::shuffle(all.begin(), all.end(), rng);
  std::size_t want = std::uniform_int_distribution<std::size_t>(
      1, std::min<std::size_t>(max_members, all.size() + 1))(rng);
  std::vector<unsigned> out{0};
  for (std::size_t i = 0; out.size() < want; ++i) out.push_back(all[i]);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline bool mask_strict_subset(unsigned a, unsigned b) { return (a & b) == a && a != b; }

/// Maximal members by brute force over bitmasks.
inline std::vector<std::size_t> oracle_maximal(const std::vector<unsigned>& masks) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    bool dominated = false;
    for (unsigned q : masks) dominated = dominated || mask_strict_subset(masks[i], q);
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Raw chosen fan entries for member a: (fan position, p_c), top first.
struct FanView {
  std::vector<std::size_t> fan;
  std::optional<std::size_t> top;      // fan position of the direct pick
  std::vector<std::size_t> spare;      // other chosen fan positions
};

inline FanView fan_view(const std::vector<unsigned>& masks, const neutro::FanTriplets& t, std::size_t a) {
  FanView v;
  for (std::size_t q = 0; q < masks.size(); ++q) {
    if (mask_strict_subset(masks[a], masks[q])) v.fan.push_back(q);
  }
  for (std::size_t e = 0; e < v.fan.size(); ++e) {
    if (raw_verdict(t[a][e]) != Raw::Chosen) continue;
    if (!v.top || t[a][e][0] > t[a][*v.top][0]) {
      if (v.top) v.spare.push_back(*v.top);
      v.top = e;
    } else {
      v.spare.push_back(e);
    }
  }
  return v;
}

// Brute-force capacity: an injective map from needy members to spare chosen
// fan entries of other members that strictly contain them.
inline bool oracle_capacity(const std::vector<unsigned>& masks, const neutro::FanTriplets& t) {
  std::vector<std::size_t> needy;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (owner, member)
  for (std::size_t a = 0; a < masks.size(); ++a) {
    auto v = fan_view(masks, t, a);
    if (!v.fan.empty() && !v.top) needy.push_back(a);
    for (auto e : v.spare) slots.push_back({a, v.fan[e]});
  }
  std::vector<bool> used(slots.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == needy.size()) return true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (used[s] || slots[s].first == needy[i]) continue;
      if (!mask_strict_subset(masks[needy[i]], masks[slots[s].second])) continue;
      used[s] = true;
      if (go(i + 1)) return true;
      used[s] = false;
    }
    return false;
  };
  return go(0);
}

inline neutro::FanTriplets random_fans(std::mt19937_64& rng, const std::vector<unsigned>& masks,
                        const std::vector<RawTriplet>& pool, double p_chosen) {
  neutro::FanTriplets t(masks.size());
  std::bernoulli_distribution coin(p_chosen);
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t q = 0; q < masks.size(); ++q) {
      if (!mask_strict_subset(masks[a], masks[q])) continue;
      t[a].push_back(coin(rng) ? pick_with(rng, pool, Raw::Chosen)
                               : pick_with(rng, pool, Raw::NotChosen));
    }
  }
  return t;
}

}  // namespace testing
