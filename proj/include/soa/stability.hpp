#ifndef SOA_STABILITY_HPP
#define SOA_STABILITY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "soa/arrow.hpp"
#include "soa/colimits.hpp"
#include "soa/finset.hpp"
#include "soa/lifting.hpp"

namespace soa {

struct HarnessConfig {
  std::size_t max_set_size = 3;
  int num_random_cases = 200;
  std::uint64_t seed = 1;
  std::string profile = "set-weak";

  void validate() const {
    if (max_set_size < 1) throw std::invalid_argument("HarnessConfig: max_set_size must be >= 1");
  }
};

struct Counterexample {
  std::string description;
  std::vector<FinMap> maps;
};

struct CheckReport {
  std::string name;
  int cases_run = 0;
  int counterexamples = 0;
  std::vector<Counterexample> examples;
  std::string notes;
  bool skipped = false;

  bool ok() const { return skipped || counterexamples == 0; }
};

namespace harness {

using detail::Rng;

inline FinMap random_map_sized(Rng& rng, std::size_t max_size) {
  return detail::random_map(rng, max_size);
}

inline FinMap random_map_from(Rng& rng, const FinSet& dom, std::size_t max_size,
                              const std::string& tag = "g") {
  std::size_t n = rng.below(max_size + 1);
  if (!dom.empty() && n == 0) n = 1;
  FinSet cod = FinSet::range(n, tag);
  std::vector<std::uint32_t> t(dom.size());
  for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(n));
  return FinMap(dom, cod, std::move(t));
}

/// One-element-at-a-time shrinking: repeatedly remove an element of the
/// largest set in the instance while the failure persists. Removal drops
/// domain rows and is skipped when an element is still hit by some map.
inline std::vector<FinMap> shrink_counterexample(
    std::vector<FinMap> maps, const std::function<bool(const std::vector<FinMap>&)>& fails) {
  auto remove_atom = [](const std::vector<FinMap>& ms, const FinSet& victim_set,
                        const Atom& victim) -> std::pair<bool, std::vector<FinMap>> {
    std::vector<Atom> kept;
    for (const auto& a : victim_set.elements())
      if (a != victim) kept.push_back(a);
    FinSet smaller(kept);
    std::vector<FinMap> out;
    for (const FinMap& m : ms) {
      FinSet dom = m.dom() == victim_set ? smaller : m.dom();
      FinSet cod = m.cod() == victim_set ? smaller : m.cod();
      std::map<Atom, Atom> table;
      for (const auto& a : dom.elements()) {
        Atom img = m(a);
        if (m.cod() == victim_set && img == victim) return {false, {}};  // still hit
        table[a] = img;
      }
      out.push_back(FinMap::from_pairs(dom, cod, table));
    }
    return {true, out};
  };
  bool progress = true;
  while (progress) {
    progress = false;
    // Collect the distinct sets of the instance, largest first.
    std::vector<FinSet> sets;
    for (const FinMap& m : maps) {
      for (const FinSet& s : {m.dom(), m.cod()}) {
        bool seen = false;
        for (const auto& t : sets)
          if (t == s) seen = true;
        if (!seen) sets.push_back(s);
      }
    }
    std::sort(sets.begin(), sets.end(),
              [](const FinSet& a, const FinSet& b) { return a.size() > b.size(); });
    for (const FinSet& s : sets) {
      for (const auto& victim : s.elements()) {
        auto [okay, smaller] = remove_atom(maps, s, victim);
        if (!okay) continue;
        if (fails(smaller)) {
          maps = std::move(smaller);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return maps;
}

inline void record_failure(CheckReport& rep, const std::string& what, std::vector<FinMap> maps,
                           const std::function<bool(const std::vector<FinMap>&)>& fails) {
  ++rep.counterexamples;
  if (rep.examples.size() < 5)
    rep.examples.push_back(Counterexample{what, shrink_counterexample(std::move(maps), fails)});
}

/// Draws a map in the enriched left class of the targets by rejection.
inline std::optional<FinMap> draw_left_member(Rng& rng, const WfsSpec& spec,
                                              std::size_t max_size, int attempts = 200) {
  for (int i = 0; i < attempts; ++i) {
    FinMap f = random_map_sized(rng, max_size);
    if (llp_f_member(f, spec.generators, spec.generators)) return f;
  }
  return std::nullopt;
}

}  // namespace harness

/// Pushouts preserve the enriched left class.
inline CheckReport check_pushout_stability(const WfsSpec& spec, const HarnessConfig& cfg) {
  cfg.validate();
  CheckReport rep;
  rep.name = "pushout-stability";
  harness::Rng rng(cfg.seed);
  auto fails = [&](const std::vector<FinMap>& ms) {
    if (ms.size() != 2 || ms[0].dom() != ms[1].dom()) return false;
    if (!llp_f_member(ms[0], spec.generators, spec.generators)) return false;
    return !llp_f_member(pushout(ms[0], ms[1]).in_right, spec.generators, spec.generators);
  };
  for (int i = 0; i < cfg.num_random_cases; ++i) {
    auto f = harness::draw_left_member(rng, spec, cfg.max_set_size);
    if (!f) continue;
    FinMap g = harness::random_map_from(rng, f->dom(), cfg.max_set_size);
    ++rep.cases_run;
    if (!llp_f_member(pushout(*f, g).in_right, spec.generators, spec.generators))
      harness::record_failure(rep, "pushout leg left the class", {*f, g}, fails);
  }
  // Exhaustive two-element cube.
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 2; ++n)
      for (std::size_t p = 0; p <= 2; ++p) {
        FinSet a = FinSet::range(m, "a"), b = FinSet::range(n, "b"), c = FinSet::range(p, "c");
        for (const FinMap& f : enumerate_maps(a, b)) {
          if (!llp_f_member(f, spec.generators, spec.generators)) continue;
          for (const FinMap& g : enumerate_maps(a, c)) {
            ++rep.cases_run;
            if (!llp_f_member(pushout(f, g).in_right, spec.generators, spec.generators))
              harness::record_failure(rep, "pushout leg left the class (exhaustive)", {f, g},
                                      fails);
          }
        }
      }
  return rep;
}

/// Finite chains of class members compose inside the class.
inline CheckReport check_transfinite_stability(const WfsSpec& spec, const HarnessConfig& cfg) {
  cfg.validate();
  CheckReport rep;
  rep.name = "transfinite-stability";
  harness::Rng rng(cfg.seed + 1);
  auto fails = [&](const std::vector<FinMap>& ms) {
    if (ms.empty()) return false;
    FinMap acc = ms[0];
    for (std::size_t i = 1; i < ms.size(); ++i) {
      if (ms[i].dom() != acc.cod()) return false;
      acc = compose(ms[i], acc);
    }
    for (const FinMap& m : ms)
      if (!llp_f_member(m, spec.generators, spec.generators)) return false;
    return !llp_f_member(acc, spec.generators, spec.generators);
  };
  for (int i = 0; i < cfg.num_random_cases; ++i) {
    std::size_t len = 1 + rng.below(4);
    std::vector<FinMap> chain;
    FinSet cur = FinSet::range(rng.below(cfg.max_set_size + 1), "a");
    bool good = true;
    for (std::size_t j = 0; j < len; ++j) {
      // Rejection-sample a member out of the current object.
      bool found = false;
      for (int tries = 0; tries < 120 && !found; ++tries) {
        std::size_t n = rng.below(cfg.max_set_size + 2);
        FinSet nxt = FinSet::range(n, "s" + std::to_string(j));
        if (!cur.empty() && nxt.empty()) continue;
        std::vector<std::uint32_t> t(cur.size());
        for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(nxt.size()));
        FinMap step(cur, nxt, t);
        if (llp_f_member(step, spec.generators, spec.generators)) {
          chain.push_back(step);
          cur = nxt;
          found = true;
        }
      }
      if (!found) {
        good = false;
        break;
      }
    }
    if (!good) continue;
    ++rep.cases_run;
    FinMap acc = chain[0];
    for (std::size_t j = 1; j < chain.size(); ++j) acc = compose(chain[j], acc);
    if (!llp_f_member(acc, spec.generators, spec.generators))
      harness::record_failure(rep, "chain composite left the class", chain, fails);
  }
  // Exhaustive two-element cube over length-two chains.
  std::vector<FinMap> small;
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 2; ++n)
      for (const FinMap& h : enumerate_maps(FinSet::range(m, "e"), FinSet::range(n, "e")))
        small.push_back(h);
  for (const FinMap& f : small) {
    if (!llp_f_member(f, spec.generators, spec.generators)) continue;
    for (const FinMap& g : small) {
      if (g.dom() != f.cod()) continue;
      if (!llp_f_member(g, spec.generators, spec.generators)) continue;
      ++rep.cases_run;
      if (!llp_f_member(compose(g, f), spec.generators, spec.generators))
        harness::record_failure(rep, "binary composite left the class (exhaustive)", {f, g},
                                fails);
    }
  }
  return rep;
}

/// Corners with left-class maps preserve the enriched left class.
inline CheckReport check_corner_stability(const WfsSpec& spec, const HarnessConfig& cfg) {
  cfg.validate();
  CheckReport rep;
  rep.name = "corner-stability";
  if (!spec.has_l()) {
    rep.skipped = true;
    rep.notes = "profile has no decidable left-class predicate";
    return rep;
  }
  harness::Rng rng(cfg.seed + 2);
  auto fails = [&](const std::vector<FinMap>& ms) {
    if (ms.size() != 2) return false;
    if (!spec.l_predicate(ms[0])) return false;
    if (!llp_f_member(ms[1], spec.generators, spec.generators)) return false;
    return !llp_f_member(corner(ms[0], ms[1]).corner, spec.generators, spec.generators);
  };
  for (int i = 0; i < cfg.num_random_cases; ++i) {
    FinMap u = harness::random_map_sized(rng, cfg.max_set_size);
    if (!spec.l_predicate(u)) continue;
    auto f = harness::draw_left_member(rng, spec, cfg.max_set_size);
    if (!f) continue;
    ++rep.cases_run;
    if (!llp_f_member(corner(u, *f).corner, spec.generators, spec.generators))
      harness::record_failure(rep, "corner left the class", {u, *f}, fails);
  }
  // Exhaustive two-element cube.
  std::vector<FinMap> small;
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 2; ++n)
      for (const FinMap& h : enumerate_maps(FinSet::range(m, "u"), FinSet::range(n, "v")))
        small.push_back(h);
  for (const FinMap& u : small) {
    if (!spec.l_predicate(u)) continue;
    for (const FinMap& f : small) {
      if (!llp_f_member(f, spec.generators, spec.generators)) continue;
      ++rep.cases_run;
      if (!llp_f_member(corner(u, f).corner, spec.generators, spec.generators))
        harness::record_failure(rep, "corner left the class (exhaustive)", {u, f}, fails);
    }
  }
  return rep;
}

/// Premise and conclusion of the corner-closure lemma for the profile's
/// generators and certified left-class members.
inline CheckReport check_lemma_corners(const WfsSpec& spec, const HarnessConfig& cfg) {
  cfg.validate();
  CheckReport rep;
  rep.name = "lemma-corners";
  if (!spec.has_l() || !spec.has_r()) {
    rep.skipped = true;
    rep.notes = "profile lacks decidable class predicates";
    return rep;
  }
  auto fails = [&](const std::vector<FinMap>& ms) {
    return ms.size() == 2 && !spec.l_predicate(corner(ms[0], ms[1]).corner);
  };
  for (const FinMap& u1 : spec.generators)
    for (const FinMap& u2 : spec.generators) {
      ++rep.cases_run;
      if (!spec.l_predicate(corner(u1, u2).corner)) {
        harness::record_failure(rep, "premise: corner of generators not in the class", {u1, u2},
                                fails);
        rep.notes += "premise failure; ";
      }
    }
  harness::Rng rng(cfg.seed + 3);
  // Certified members arise by replaying small cell complexes built from
  // the profile's generators attached over random bases.
  auto random_certified = [&](const std::string& tag) -> FinMap {
    const FinMap& gen = spec.generators[rng.below(spec.generators.size())];
    FinMap attach = harness::random_map_from(rng, gen.dom(), cfg.max_set_size, tag);
    CellCertificate cell =
        CellCertificate::pushout_node(CellCertificate::generator_node(gen), attach);
    FinMap first = replay_certificate(cell);
    if (rng.below(2) == 0) return first;
    const FinMap& gen2 = spec.generators[rng.below(spec.generators.size())];
    std::vector<std::uint32_t> t(gen2.dom().size());
    for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(first.cod().size()));
    if (first.cod().empty() && !gen2.dom().empty()) return first;
    FinMap attach2(gen2.dom(), first.cod(), t);
    CellCertificate two = CellCertificate::composite_node(
        {cell, CellCertificate::pushout_node(CellCertificate::generator_node(gen2), attach2)});
    return replay_certificate(two);
  };
  for (int i = 0; i < cfg.num_random_cases; ++i) {
    FinMap m1 = random_certified("p");
    FinMap m2 = random_certified("q");
    ++rep.cases_run;
    if (!spec.l_predicate(corner(m1, m2).corner))
      harness::record_failure(rep, "conclusion: corner of certified members not in the class",
                              {m1, m2}, fails);
  }
  return rep;
}

/// Exhaustive transposition equivalence over the configured cube.
inline CheckReport check_adjlift_equivalence(const HarnessConfig& cfg) {
  cfg.validate();
  CheckReport rep;
  rep.name = "adjlift-equivalence";
  auto fails = [&](const std::vector<FinMap>& ms) {
    if (ms.size() != 3) return false;
    InducedE e = e_map(ms[1], ms[2]);
    return box_lifts(ms[0], e.map) != box_lifts(corner(ms[0], ms[1]).corner, ms[2]);
  };
  std::vector<FinMap> maps;
  for (std::size_t m = 0; m <= cfg.max_set_size; ++m)
    for (std::size_t n = 0; n <= cfg.max_set_size; ++n)
      for (const FinMap& h : enumerate_maps(FinSet::range(m), FinSet::range(n)))
        maps.push_back(h);
  for (const FinMap& u : maps)
    for (const FinMap& f : maps) {
      CornerResult crn = corner(u, f);
      for (const FinMap& k : maps) {
        ++rep.cases_run;
        InducedE e = e_map(f, k);
        if (box_lifts(u, e.map) != box_lifts(crn.corner, k))
          harness::record_failure(rep, "transposition equivalence failed", {u, f, k}, fails);
      }
    }
  return rep;
}

struct StabilitySuiteReport {
  std::vector<CheckReport> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

inline StabilitySuiteReport run_stability_suite(const WfsSpec& spec, const HarnessConfig& cfg) {
  StabilitySuiteReport out;
  out.checks.push_back(check_pushout_stability(spec, cfg));
  out.checks.push_back(check_transfinite_stability(spec, cfg));
  out.checks.push_back(check_corner_stability(spec, cfg));
  out.checks.push_back(check_lemma_corners(spec, cfg));
  HarnessConfig adj = cfg;
  if (adj.max_set_size > 2) adj.max_set_size = 2;  // the size-3 cube runs in acceptance
  out.checks.push_back(check_adjlift_equivalence(adj));
  return out;
}

}  // namespace soa

#endif  // SOA_STABILITY_HPP
