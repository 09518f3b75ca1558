// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "soa/commands.hpp"
#include "soa/day.hpp"
#include "soa/stability.hpp"
#include "soa/twocat.hpp"

using namespace soa;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool ok, const std::string& what, const Timer& t) {
  std::printf("%s criterion %d: %s (%lld ms)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              t.ms());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::vector<FinMap> all_maps_up_to(std::size_t n) {
  std::vector<FinMap> out;
  for (std::size_t m = 0; m <= n; ++m)
    for (std::size_t k = 0; k <= n; ++k)
      for (const FinMap& f : enumerate_maps(FinSet::range(m), FinSet::range(k)))
        out.push_back(f);
  return out;
}

// Criterion 1: the transposition equivalence over the exhaustive size-3
// cube, with an internal soundness pass for the fast decision tiers.
void criterion1() {
  Timer t;
  // Soundness pass (a): closed form == literal search on the base cube.
  std::vector<FinMap> cube3 = all_maps_up_to(3);
  for (const FinMap& f : cube3)
    for (const FinMap& k : cube3)
      if (detail::lifts_closed_form(f, k) != has_lift(f, k).all_lift) {
        report(1, false, "fast decision tier disagrees with the literal search", t);
        return;
      }
  // Soundness pass (b): on derived maps over the size-2 cube the literal
  // search is affordable; compare against the tiered decision.
  std::vector<FinMap> cube2 = all_maps_up_to(2);
  for (const FinMap& u : cube2)
    for (const FinMap& f : cube2)
      for (const FinMap& k : cube2) {
        InducedE e = e_map(f, k);
        if (box_lifts(u, e.map, 0) != has_lift(u, e.map).all_lift) {
          report(1, false, "fast decision disagrees on a derived comparison map", t);
          return;
        }
        CornerResult crn = corner(u, f);
        if (box_lifts(crn.corner, k, 0) != has_lift(crn.corner, k).all_lift) {
          report(1, false, "fast decision disagrees on a derived corner map", t);
          return;
        }
      }
  // Soundness pass (c): seeded size-3 derived comparisons wherever the
  // literal search still fits a generous budget.
  {
    detail::Rng rng(101);
    int done = 0, guard = 0;
    while (done < 300 && guard < 20'000) {
      ++guard;
      FinMap u = detail::random_map(rng, 3);
      FinMap f = detail::random_map(rng, 3);
      FinMap k = detail::random_map(rng, 3);
      InducedE e = e_map(f, k);
      CornerResult crn = corner(u, f);
      bool e_feasible = detail::lift_enum_cost(u, e.map, 3'000'000) <= 3'000'000;
      bool c_feasible = detail::lift_enum_cost(crn.corner, k, 3'000'000) <= 3'000'000;
      if (!e_feasible && !c_feasible) continue;
      ++done;
      if (e_feasible && box_lifts(u, e.map, 0) != has_lift(u, e.map).all_lift) {
        report(1, false, "fast decision disagrees on a sampled size-3 comparison map", t);
        return;
      }
      if (c_feasible && box_lifts(crn.corner, k, 0) != has_lift(crn.corner, k).all_lift) {
        report(1, false, "fast decision disagrees on a sampled size-3 corner map", t);
        return;
      }
    }
  }
  // Exhaustive sweep: precompute the derived maps per pair.
  std::size_t n = cube3.size();
  std::vector<FinMap> emaps;
  emaps.reserve(n * n);
  for (const FinMap& f : cube3)
    for (const FinMap& k : cube3) emaps.push_back(e_map(f, k).map);
  std::vector<FinMap> corners;
  corners.reserve(n * n);
  for (const FinMap& u : cube3)
    for (const FinMap& f : cube3) corners.push_back(corner(u, f).corner);
  std::size_t checked = 0;
  for (std::size_t ui = 0; ui < n; ++ui)
    for (std::size_t fi = 0; fi < n; ++fi) {
      const FinMap& nabla = corners[ui * n + fi];
      for (std::size_t ki = 0; ki < n; ++ki) {
        bool left = box_lifts(cube3[ui], emaps[fi * n + ki], 2'000);
        bool right = box_lifts(nabla, cube3[ki], 2'000);
        if (left != right) {
          report(1, false, "transposition equivalence failed at triple " +
                               std::to_string(ui * n * n + fi * n + ki), t);
          return;
        }
        ++checked;
      }
    }
  bool in_budget = t.ms() < 60'000;
  report(1, in_budget,
         "transposition equivalence over all " + std::to_string(checked) +
             " size-3 triples" + (in_budget ? "" : " [over 60 s budget]"),
         t);
}

// Criterion 2: the enriched relation reduces to the elementary one for the
// weak generators and to unique diagonals for the ortho generators.
void criterion2() {
  Timer t;
  WfsSpec weak = set_weak_profile();
  WfsSpec ortho = set_ortho_profile();
  std::vector<FinMap> cube = all_maps_up_to(3);
  std::size_t checked = 0;
  for (const FinMap& f : cube)
    for (const FinMap& k : cube) {
      LiftTable lit = has_lift(f, k);
      if (f_lift(f, k, weak.generators) != lit.all_lift) {
        report(2, false, "weak reduction failed", t);
        return;
      }
      bool unique_everywhere = true;
      HomSet hbc = hom(f.cod(), k.dom());
      for (std::size_t i = 0; i < lit.square.carrier.size() && unique_everywhere; ++i) {
        int count = 0;
        for (const FinMap& d : hbc.maps)
          if (compose(d, f) == lit.square.squares[i].first &&
              compose(k, d) == lit.square.squares[i].second)
            ++count;
        if (count != 1) unique_everywhere = false;
      }
      if (f_lift(f, k, ortho.generators) != unique_everywhere) {
        report(2, false, "ortho reduction failed", t);
        return;
      }
      ++checked;
    }
  bool in_budget = t.ms() < 30'000;
  report(2, in_budget,
         "generator reductions over all " + std::to_string(checked) + " size-3 pairs" +
             (in_budget ? "" : " [over 30 s budget]"),
         t);
}

// Criterion 3: the constructed corner-associativity bijection on 200
// seeded triples.
void criterion3() {
  Timer t;
  detail::Rng rng(301);
  for (int i = 0; i < 200; ++i) {
    FinMap v = detail::random_map(rng, 3);
    FinMap u = detail::random_map(rng, 3);
    FinMap f = detail::random_map(rng, 3);
    CornerAssocWitness w = corner_assoc_witness(v, u, f);
    if (!w.ok) {
      report(3, false, "apex bijection failed: " + w.detail, t);
      return;
    }
  }
  report(3, true, "corner associativity witnesses on 200 seeded triples", t);
}

// Criterion 4: action-law suite with at least 100 cases per law over the
// trivial and walking-arrow bases.
void criterion4() {
  Timer t;
  LawsOptions opt;
  opt.cases = 102;
  opt.max_stage = 3;
  opt.adjunction_max_stage = 2;
  opt.seed = 401;
  RunOutcome out = cmd_laws(opt);
  bool ok = out.exit_code == kExitOk;
  std::string what = "law suite: ";
  for (const auto& name : {"assoc", "unit", "adjunction"})
    what += std::string(name) + "=" + std::to_string(int(out.report["checks"][name]["cases"])) +
            " ";
  report(4, ok, ok ? what + "all green" : what + std::string(out.report.dump()), t);
}

// Criterion 5: the walking-arrow specializations as literal equalities
// after canonical renaming, on 100 seeded cases.
void criterion5() {
  Timer t;
  detail::Rng rng(501);
  for (int i = 0; i < 100; ++i) {
    FinMap u = detail::random_map(rng, 3);
    FinMap f = detail::random_map(rng, 3);
    LawReport r1 = star_matches_corner(u, f);
    LawReport r2 = hom_angle_matches_e(u, f);
    if (!r1.ok || !r2.ok) {
      report(5, false, r1.ok ? r2.detail : r1.detail, t);
      return;
    }
  }
  report(5, true, "copower action = corner and hom = comparison map on 100 seeded cases", t);
}

// Criterion 6: stability suite for both profiles: 200 seeded cases per
// check plus the exhaustive two-element cube inside the harness.
void criterion6() {
  Timer t;
  for (const WfsSpec& spec : {set_weak_profile(), set_ortho_profile()}) {
    HarnessConfig cfg;
    cfg.num_random_cases = 200;
    cfg.max_set_size = 3;
    cfg.seed = 601;
    cfg.profile = spec.name;
    StabilitySuiteReport suite = run_stability_suite(spec, cfg);
    for (const CheckReport& c : suite.checks) {
      if (!c.ok()) {
        report(6, false, spec.name + "/" + c.name + " found counterexamples", t);
        return;
      }
      if (!c.skipped && c.cases_run < 100) {
        report(6, false, spec.name + "/" + c.name + " ran too few cases", t);
        return;
      }
    }
  }
  report(6, true, "stability suite clean for both profiles", t);
}

// Criterion 7: the published corpus end to end, with bit-exact
// factorization equations and deterministic certificate replay.
void criterion7() {
  Timer t;
  const std::vector<std::string> corpus{
      "weak-point.json",  "weak-fold.json",  "weak-two-cells.json", "weak-partial.json",
      "weak-glue.json",   "ortho-point.json", "ortho-fold.json",    "ortho-three.json",
      "ortho-inclusion.json", "ortho-iso.json", "custom-profile.json",
      "mixed-weak-quotient.json"};
  for (const std::string& name : corpus) {
    std::ifstream in(std::string(SOA_SOURCE_DIR) + "/instances/" + name);
    if (!in) {
      report(7, false, "missing corpus instance " + name, t);
      return;
    }
    InstanceDocument doc;
    try {
      doc = instance_from_json(json::parse(in));
    } catch (const std::exception& ex) {
      report(7, false, name + ": " + ex.what(), t);
      return;
    }
    if (doc.config.stage_cap > 8) {
      report(7, false, name + ": corpus must run within stage cap 8", t);
      return;
    }
    std::vector<FinMap> targets;
    for (const auto& nm : doc.targets) targets.push_back(doc.named_map(nm));
    const FinMap& f = doc.named_map(*doc.f_name);
    FactorizationResult r1 = soa_factorize(f, targets, doc.profile.generators, doc.config);
    FactorizationResult r2 = soa_factorize(f, targets, doc.profile.generators, doc.config);
    if (!r1.converged) {
      report(7, false, name + ": did not converge within the cap", t);
      return;
    }
    if (compose(r1.m, r1.e) != f) {
      report(7, false, name + ": factorization equation failed", t);
      return;
    }
    VerificationReport v = verify_result(r1, targets, doc.profile.generators, doc.config.seed);
    if (!v.all_ok()) {
      report(7, false, name + ": verification failed: " + v.detail, t);
      return;
    }
    json c1 = certificate_to_json(r1.certificate);
    json c2 = certificate_to_json(r2.certificate);
    if (c1.dump() != c2.dump() ||
        !(replay_certificate(certificate_from_json(c1, "/"), f.dom()) == r1.e)) {
      report(7, false, name + ": certificates are not deterministic/replayable", t);
      return;
    }
  }
  bool in_budget = t.ms() < 10'000;
  report(7, in_budget,
         "corpus of " + std::to_string(corpus.size()) + " instances converged and verified" +
             (in_budget ? "" : " [over 10 s budget]"),
         t);
}

// Criterion 8: discrete-hom 2-categories agree with the elementary and
// Set-backend decisions on instances with at most two objects.
void criterion8() {
  Timer t;
  // Elementary agreement on abstract two-object categories.
  for (const FinCategory& c :
       {walking_arrow_category(), parallel_pair_category(), discrete_category({"0", "1"})}) {
    FiniteTwoCategory tc = discrete_two_category(c);
    for (const auto& f : c.morphisms)
      for (const auto& k : c.morphisms) {
        TwoLiftReport r = f_lift2(tc, f.name, k.name);
        if (r.ok != unique_diagonal_lift(c, f.name, k.name)) {
          report(8, false, "elementary disagreement at (" + f.name + "," + k.name + ")", t);
          return;
        }
      }
  }
  // Set-backend agreement on realized pairs of sets.
  WfsSpec ortho = set_ortho_profile();
  std::size_t checked = 0;
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 2; ++n) {
      SetSubcategory sc = full_set_subcategory({FinSet::range(m, "x"), FinSet::range(n, "y")});
      if (sc.cat.validate()) {
        report(8, false, "realized category invalid", t);
        return;
      }
      FiniteTwoCategory tc = discrete_two_category(sc.cat);
      for (const auto& f : sc.cat.morphisms)
        for (const auto& k : sc.cat.morphisms) {
          TwoLiftReport r = f_lift2(tc, f.name, k.name);
          bool set_side = f_lift(sc.maps.at(f.name), sc.maps.at(k.name), ortho.generators);
          if (r.ok != set_side) {
            report(8, false, "backend disagreement at (" + f.name + "," + k.name + ")", t);
            return;
          }
          ++checked;
        }
    }
  report(8, true, "cross-backend agreement on " + std::to_string(checked) + " realized pairs",
         t);
}

// Criterion 9: the profile predicates against literal brute-force
// membership over the full size-4 map cube.
void criterion9() {
  Timer t;
  std::vector<FinMap> cube = all_maps_up_to(4);
  WfsSpec weak = set_weak_profile();
  WfsSpec ortho = set_ortho_profile();
  for (const FinMap& v : cube) {
    bool weak_brute = true;
    for (const FinMap& u : weak.generators)
      if (!has_lift(u, v).all_lift) weak_brute = false;
    if (weak.r_predicate(v) != weak_brute) {
      report(9, false, "weak predicate disagrees at " + map_atom(v), t);
      return;
    }
    bool ortho_brute = true;
    for (const FinMap& u : ortho.generators)
      if (!has_lift(u, v).all_lift) ortho_brute = false;
    if (ortho.r_predicate(v) != ortho_brute) {
      report(9, false, "ortho predicate disagrees at " + map_atom(v), t);
      return;
    }
  }
  bool in_budget = t.ms() < 120'000;
  report(9, in_budget,
         "predicates match brute force on all " + std::to_string(cube.size()) +
             " size-4 maps" + (in_budget ? "" : " [over 120 s budget]"),
         t);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", g_failures);
  return 1;
}
