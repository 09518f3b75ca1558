#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "soa/soa.hpp"

using namespace soa;

namespace {

// Direct colimit oracle for the five-object attachment diagram: quotient of
// D + V.B' by the relations through V.A' and U.B', computed by naive
// closure. Returns the number of classes.
std::size_t naive_attach_colimit_size(const FinMap& u, const FinMap& g, const FinMap& r_part,
                                      const FinMap& h_part) {
  const FinSet& d = r_part.cod();
  FinSet vb = product(u.cod(), g.cod());
  struct El {
    int side;
    Atom a;
    bool operator<(const El& o) const { return std::tie(side, a) < std::tie(o.side, o.a); }
  };
  std::map<El, std::size_t> cls;
  std::size_t n = 0;
  for (const auto& a : d.elements()) cls[{0, a}] = n++;
  for (const auto& a : vb.elements()) cls[{1, a}] = n++;
  auto unite = [&](El x, El y) {
    std::size_t cx = cls.at(x), cy = cls.at(y);
    if (cx == cy) return;
    std::size_t lo = std::min(cx, cy), hi = std::max(cx, cy);
    for (auto& [k, v] : cls)
      if (v == hi) v = lo;
  };
  FinMap vg = copower_right(u.cod(), g);
  FinSet va = product(u.cod(), g.dom());
  for (const auto& x : va.elements()) unite({1, vg(x)}, {0, r_part(x)});
  FinMap ub = copower_left(u, g.cod());
  FinSet ua = product(u.dom(), g.cod());
  for (const auto& y : ua.elements()) unite({1, ub(y)}, {0, h_part(y)});
  std::set<std::size_t> ids;
  for (auto& [k, v] : cls) ids.insert(v);
  return ids.size();
}

}  // namespace

TEST_CASE("mod_schedule basics") {
  REQUIRE(mod_schedule(0, 3) == 0);
  REQUIRE(mod_schedule(5, 2) == 1);
  std::vector<std::size_t> seen;
  for (std::size_t a = 0; a < 6; ++a) seen.push_back(mod_schedule(a, 3));
  REQUIRE(seen == std::vector<std::size_t>{0, 1, 2, 0, 1, 2});
  REQUIRE_THROWS_AS(mod_schedule(1, 0), std::invalid_argument);
}

TEST_CASE("triples with the point generator are the squares") {
  FinMap u = point_generator();
  FinMap phi = FinMap::to_point(FinSet::range(2, "d"), FinSet::range(1, "l"));
  std::vector<FinMap> targets{point_generator()};
  std::vector<Triple> ts = enumerate_triples(targets, phi, u);
  SquareObject s = sq(targets[0], phi);
  REQUIRE(ts.size() == s.carrier.size());
  for (const Triple& t : ts) REQUIRE(t.w.dom().empty());
}

TEST_CASE("triples are empty when there are no targets") {
  FinMap u = point_generator();
  FinMap phi = FinMap::identity(FinSet::range(2, "d"));
  REQUIRE(enumerate_triples({}, phi, u).empty());
}

TEST_CASE("fold-generator triples carry the unique preimage data when e is bijective") {
  // Target the identity: e_{id, phi} is a bijection, so each square has
  // exactly one compatible w.
  FinMap u = fold_generator();
  FinSet d = FinSet::range(2, "d");
  FinMap phi = FinMap::identity(d);
  std::vector<FinMap> targets{FinMap::identity(d)};
  std::vector<Triple> ts = enumerate_triples(targets, phi, u);
  SquareObject s = sq(targets[0], phi);
  REQUIRE(ts.size() == s.carrier.size());
  for (const Triple& t : ts) {
    InducedE e = e_map(targets[0], phi);
    REQUIRE(compose(e.map, t.w) == compose(t.v, u));
  }
}

TEST_CASE("copowered pushout relative to the point generator is an ordinary pushout") {
  FinMap u = point_generator();
  FinSet a = FinSet::range(1, "a");
  FinSet b = FinSet::range(2, "b");
  FinMap g = FinMap::from_pairs(a, b, {{"a0", "b0"}});
  FinSet d = FinSet::range(2, "d");
  const FinSet& v = u.cod();
  FinMap r_small = FinMap::from_pairs(a, d, {{"a0", "d1"}});
  FinMap r_part = FinMap::from_fn(product(v, a), d,
                                  [&](const Atom&) { return Atom("d1"); });
  FinMap h_part = FinMap::empty_to(d);
  // h lives on U.cod g which is empty for the point generator.
  h_part = FinMap(product(u.dom(), b), d, {});
  CopoweredPushout cp = copowered_pushout(u, g, r_part, h_part);
  PushoutResult po = pushout(g, r_small);
  REQUIRE(cp.object.size() == po.obj.size());
  REQUIRE(cp.object.size() == naive_attach_colimit_size(u, g, r_part, h_part));
  REQUIRE(compose(cp.cell, copower_right(v, g)) == compose(cp.connecting, r_part));
}

TEST_CASE("copowered pushout relative to the fold coequalizes the attachments") {
  // Two parallel attachments h0, h1 : cod g -> D agreeing on the image of g
  // become one map from U.cod g; the fold-relative pushout glues h0 and h1.
  FinMap u = fold_generator();
  FinSet cs(std::vector<Atom>{"c0"});
  FinSet c = FinSet::range(2, "c");
  FinMap g = FinMap::from_fn(cs, c, [](const Atom& x) { return x; });  // point inclusion
  FinSet d = FinSet::range(3, "d");
  FinMap h0 = FinMap::from_pairs(c, d, {{"c0", "d0"}, {"c1", "d1"}});
  FinMap h1 = FinMap::from_pairs(c, d, {{"c0", "d0"}, {"c1", "d2"}});
  FinMap h_part = FinMap::from_fn(product(u.dom(), c), d, [&](const Atom& p) -> Atom {
    for (const auto& x : c.elements()) {
      if (p == pair_atom("0", x)) return h0(x);
      if (p == pair_atom("1", x)) return h1(x);
    }
    throw std::logic_error("unexpected atom");
  });
  FinMap r_part = FinMap::from_fn(product(u.cod(), cs), d, [&](const Atom&) { return h0("c0"); });
  CopoweredPushout cp = copowered_pushout(u, g, r_part, h_part);
  REQUIRE(cp.object.size() == naive_attach_colimit_size(u, g, r_part, h_part));
  // d1 and d2 are glued through the attached cell; d0 absorbs the other one.
  REQUIRE(cp.connecting("d1") == cp.connecting("d2"));
  REQUIRE(cp.object.size() == 2);
  REQUIRE(compose(cp.cell, copower_left(u, c)) == compose(cp.connecting, h_part));
  REQUIRE(compose(cp.cell, copower_right(u.cod(), g)) == compose(cp.connecting, r_part));
}

TEST_CASE("copowered pushout of a fresh cell is a disjoint cell") {
  FinMap u = point_generator();
  FinMap g = point_generator();
  FinSet d = FinSet::range(2, "d");
  FinMap r_part = FinMap(product(u.cod(), g.dom()), d, {});
  FinMap h_part = FinMap(product(u.dom(), g.cod()), d, {});
  CopoweredPushout cp = copowered_pushout(u, g, r_part, h_part);
  REQUIRE(cp.object.size() == d.size() + 1);
  REQUIRE(cp.connecting.is_injective());
}

TEST_CASE("copowered pushout rejects incompatible attachments") {
  FinMap u = fold_generator();
  FinSet c = FinSet::range(1, "c");
  FinMap g = FinMap::identity(c);
  FinSet d = FinSet::range(2, "d");
  FinMap r_part = FinMap::from_fn(product(u.cod(), c), d, [](const Atom&) { return Atom("d0"); });
  FinMap h_bad = FinMap::from_fn(product(u.dom(), c), d, [&](const Atom& p) {
    return p == pair_atom("0", "c0") ? Atom("d0") : Atom("d1");
  });
  REQUIRE_THROWS_AS(copowered_pushout(u, g, r_part, h_bad), std::invalid_argument);
}

TEST_CASE("factorization of a surjection under the weak profile converges immediately") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::to_point(FinSet::range(2, "k"), FinSet::range(1, "l"));
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(r.stats.stages_run == 0);
  REQUIRE(r.e.is_identity());
  REQUIRE(r.m == f);
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("factorization of the point arrow attaches one cell") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::empty_to(FinSet::range(1, "l"));
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(r.stats.stages_run == 1);
  REQUIRE(r.m.cod().size() == 1);
  REQUIRE(r.m.dom().size() == 1);
  REQUIRE(r.m.is_bijective());
  REQUIRE(r.e.dom().empty());
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("factorization of an identity is trivial") {
  WfsSpec spec = set_ortho_profile();
  FinMap f = FinMap::identity(FinSet::range(3, "k"));
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(r.stats.stages_run == 0);
  REQUIRE(r.e.is_identity());
}

TEST_CASE("factorization into a larger codomain fills the missing points") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::empty_to(FinSet::range(2, "l"));
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(r.m.is_surjective());
  REQUIRE(compose(r.m, r.e) == f);
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("ortho factorization of the fold collapses the domain") {
  WfsSpec spec = set_ortho_profile();
  FinMap f = FinMap::to_point(FinSet::range(2, "k"), FinSet::range(1, "l"));
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(r.m.is_bijective());  // right class of the ortho profile
  REQUIRE(compose(r.m, r.e) == f);
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("truncated runs keep the factorization and report the unmet goal") {
  WfsSpec spec = set_ortho_profile();
  FinMap f = FinMap::to_point(FinSet::range(2, "k"), FinSet::range(1, "l"));
  SoaConfig cfg;
  cfg.stage_cap = 1;
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators, cfg);
  REQUIRE_FALSE(r.converged);
  REQUIRE(compose(r.m, r.e) == f);
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  REQUIRE(rep.factorization_ok);
  REQUIRE(rep.certificate_ok);
  REQUIRE_FALSE(rep.right_class_ok);
}

TEST_CASE("runs are deterministic") {
  WfsSpec spec = set_ortho_profile();
  FinMap f = FinMap::from_pairs(FinSet::range(2, "k"), FinSet::range(3, "l"),
                                {{"k0", "l0"}, {"k1", "l0"}});
  FactorizationResult r1 = soa_factorize(f, spec.generators, spec.generators);
  FactorizationResult r2 = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r1.e == r2.e);
  REQUIRE(r1.m == r2.m);
  REQUIRE(r1.certificate == r2.certificate);
}

TEST_CASE("stage objects grow monotonically under the weak profile") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::from_pairs(FinSet::range(1, "k"), FinSet::range(3, "l"), {{"k0", "l1"}});
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  std::size_t prev = f.dom().size();
  for (const StageLog& log : r.stats.stage_logs) {
    REQUIRE(log.object_size >= prev);
    prev = log.object_size;
  }
}

TEST_CASE("skip_solved avoids reattaching solved problems") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::empty_to(FinSet::range(2, "l"));
  SoaConfig faithful;
  SoaConfig lean;
  lean.skip_solved = true;
  FactorizationResult r1 = soa_factorize(f, spec.generators, spec.generators, faithful);
  FactorizationResult r2 = soa_factorize(f, spec.generators, spec.generators, lean);
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  REQUIRE(r2.stats.cells_attached <= r1.stats.cells_attached);
  REQUIRE(compose(r2.m, r2.e) == f);
}

TEST_CASE("certificates replay bit-identically to the left factor") {
  WfsSpec spec = set_ortho_profile();
  FinMap f = FinMap::from_pairs(FinSet::range(3, "k"), FinSet::range(1, "l"),
                                {{"k0", "l0"}, {"k1", "l0"}, {"k2", "l0"}});
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators);
  REQUIRE(r.converged);
  REQUIRE(replay_certificate(r.certificate, f.dom()) == r.e);
}

TEST_CASE("mixed profile: fold targets under the weak generator family") {
  WfsSpec weak = set_weak_profile();
  std::vector<FinMap> targets{fold_generator()};
  FinMap f = FinMap::to_point(FinSet::range(3, "k"), FinSet::range(1, "l"));
  FactorizationResult r = soa_factorize(f, targets, weak.generators);
  REQUIRE(r.converged);
  REQUIRE(compose(r.m, r.e) == f);
  VerificationReport rep = verify_result(r, targets, weak.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("without pre-checks the engine runs every stage and re-attaches") {
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::empty_to(FinSet::range(1, "l"));
  SoaConfig cfg;
  cfg.check_before_stage = false;
  cfg.stage_cap = 4;
  FactorizationResult r = soa_factorize(f, spec.generators, spec.generators, cfg);
  REQUIRE(r.stats.stages_run == 4);   // never stops early
  REQUIRE(r.converged);               // evaluated once at the end
  REQUIRE(compose(r.m, r.e) == f);
  // Faithful mode keeps attaching a cell per solved square each stage.
  std::size_t prev = 0;
  for (const StageLog& log : r.stats.stage_logs) {
    REQUIRE(log.object_size > prev);
    prev = log.object_size;
  }
  VerificationReport rep = verify_result(r, spec.generators, spec.generators);
  INFO(rep.detail);
  REQUIRE(rep.all_ok());
}

TEST_CASE("config validation") {
  SoaConfig bad;
  bad.stage_cap = 0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  WfsSpec spec = set_weak_profile();
  FinMap f = FinMap::identity(FinSet::range(1));
  REQUIRE_THROWS_AS(soa_factorize(f, {}, spec.generators), std::invalid_argument);
  REQUIRE_THROWS_AS(soa_factorize(f, spec.generators, {}), std::invalid_argument);
}
