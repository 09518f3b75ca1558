#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "soa/colimits.hpp"
#include "soa/finset.hpp"

using namespace soa;

namespace {

// Independent quotient oracle: repeated-scan closure over B + C with the
// relation f(a) ~ g(a), no union-find. Returns the number of classes.
std::size_t naive_pushout_size(const FinMap& f, const FinMap& g) {
  struct El {
    int side;
    Atom a;
    bool operator<(const El& o) const { return std::tie(side, a) < std::tie(o.side, o.a); }
  };
  std::vector<El> els;
  for (const auto& a : f.cod().elements()) els.push_back({0, a});
  for (const auto& a : g.cod().elements()) els.push_back({1, a});
  std::map<El, std::size_t> cls;
  for (std::size_t i = 0; i < els.size(); ++i) cls[els[i]] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : f.dom().elements()) {
      El x{0, f(a)}, y{1, g(a)};
      std::size_t cx = cls[x], cy = cls[y];
      if (cx != cy) {
        std::size_t lo = std::min(cx, cy), hi = std::max(cx, cy);
        for (auto& [k, v] : cls)
          if (v == hi) v = lo;
        changed = true;
      }
    }
  }
  std::set<std::size_t> ids;
  for (auto& [k, v] : cls) ids.insert(v);
  return ids.size();
}

}  // namespace

TEST_CASE("pushout of identities is the identity square") {
  FinSet pt(std::vector<Atom>{"p"});
  FinMap id = FinMap::identity(pt);
  PushoutResult po = pushout(id, id);
  REQUIRE(po.obj.size() == 1);
  REQUIRE(po.in_left.is_bijective());
  REQUIRE(po.in_right.is_bijective());
}

TEST_CASE("pushout over an empty apex is the coproduct") {
  FinSet b(std::vector<Atom>{"b"});
  FinSet c(std::vector<Atom>{"c"});
  PushoutResult po = pushout(FinMap::empty_to(b), FinMap::empty_to(c));
  REQUIRE(po.obj.size() == 2);
  REQUIRE(po.in_left.is_injective());
  REQUIRE(po.in_right.is_injective());
  REQUIRE(po.in_left("b") != po.in_right("c"));
}

TEST_CASE("pushout frozen example: one identification") {
  FinSet a(std::vector<Atom>{"s"});
  FinSet b(std::vector<Atom>{"b1", "b2"});
  FinSet c(std::vector<Atom>{"c1"});
  FinMap f = FinMap::from_pairs(a, b, {{"s", "b1"}});
  FinMap g = FinMap::from_pairs(a, c, {{"s", "c1"}});
  PushoutResult po = pushout(f, g);
  REQUIRE(naive_pushout_size(f, g) == 2);  // oracle
  REQUIRE(po.obj.size() == 2);
  REQUIRE(compose(po.in_left, f) == compose(po.in_right, g));
}

TEST_CASE("pushout mismatched domains rejected") {
  FinMap f = FinMap::identity(FinSet::range(1));
  FinMap g = FinMap::identity(FinSet::range(2));
  REQUIRE_THROWS_AS(pushout(f, g), std::invalid_argument);
}

TEST_CASE("pushout symmetry: canonical bijection between both orders") {
  FinSet a = FinSet::range(2, "a");
  FinSet b = FinSet::range(3, "b");
  FinSet c = FinSet::range(2, "c");
  for (const FinMap& f : enumerate_maps(a, b))
    for (const FinMap& g : enumerate_maps(a, c)) {
      PushoutResult p1 = pushout(f, g);
      PushoutResult p2 = pushout(g, f);
      REQUIRE(p1.obj.size() == p2.obj.size());
      // The swap cocone mediates to a bijection in both directions.
      FinMap h12 = pushout_mediate(p1, p2.in_right, p2.in_left);
      FinMap h21 = pushout_mediate(p2, p1.in_right, p1.in_left);
      REQUIRE(compose(h21, h12).is_identity());
      REQUIRE(compose(h12, h21).is_identity());
    }
}

TEST_CASE("pushout universal property on small inputs") {
  FinSet a = FinSet::range(1, "a");
  FinSet b = FinSet::range(2, "b");
  FinSet c = FinSet::range(2, "c");
  for (const FinMap& f : enumerate_maps(a, b))
    for (const FinMap& g : enumerate_maps(a, c)) {
      PushoutResult po = pushout(f, g);
      REQUIRE(pushout_universal_ok(f, g, po, 3));
    }
}

TEST_CASE("pullback of identities is the diagonal") {
  FinSet d = FinSet::range(3, "d");
  FinMap id = FinMap::identity(d);
  PullbackResult pb = pullback(id, id);
  REQUIRE(pb.obj.size() == 3);
  REQUIRE(pb.p1.is_bijective());
}

TEST_CASE("pullback over a point is the product") {
  FinSet pt(std::vector<Atom>{"p"});
  FinSet b = FinSet::range(2, "b");
  FinSet c = FinSet::range(2, "c");
  PullbackResult pb = pullback(FinMap::to_point(b, pt), FinMap::to_point(c, pt));
  REQUIRE(pb.obj.size() == 4);
}

TEST_CASE("pullback frozen example: single matching pair") {
  FinSet b(std::vector<Atom>{"1", "2"});
  FinSet d(std::vector<Atom>{"x", "y"});
  FinSet c(std::vector<Atom>{"a"});
  FinMap f = FinMap::from_pairs(b, d, {{"1", "x"}, {"2", "y"}});
  FinMap g = FinMap::from_pairs(c, d, {{"a", "x"}});
  PullbackResult pb = pullback(f, g);
  // Oracle: exhaustive pair filter.
  std::size_t expected = 0;
  for (const auto& x : b.elements())
    for (const auto& y : c.elements())
      if (f(x) == g(y)) ++expected;
  REQUIRE(expected == 1);
  REQUIRE(pb.obj.size() == 1);
  REQUIRE(pb.obj.at(0) == pair_atom("1", "a"));
  REQUIRE_THROWS_AS(pullback(f, FinMap::identity(c)), std::invalid_argument);
}

TEST_CASE("pullback universal property on small inputs") {
  FinSet b = FinSet::range(2, "b");
  FinSet c = FinSet::range(2, "c");
  FinSet d = FinSet::range(2, "d");
  for (const FinMap& f : enumerate_maps(b, d))
    for (const FinMap& g : enumerate_maps(c, d)) {
      PullbackResult pb = pullback(f, g);
      REQUIRE(pullback_universal_ok(f, g, pb, 2));
    }
}

TEST_CASE("coequalizer of an equal pair is a bijection") {
  FinSet a = FinSet::range(2, "a");
  FinSet b = FinSet::range(3, "b");
  FinMap f = FinMap::from_pairs(a, b, {{"a0", "b0"}, {"a1", "b2"}});
  CoequalizerResult ce = coequalizer(f, f);
  REQUIRE(ce.obj.size() == 3);
  REQUIRE(ce.q.is_bijective());
}

TEST_CASE("coequalizer frozen example: fold of two points") {
  FinSet a(std::vector<Atom>{"s"});
  FinSet b(std::vector<Atom>{"x", "y"});
  FinMap f = FinMap::from_pairs(a, b, {{"s", "x"}});
  FinMap g = FinMap::from_pairs(a, b, {{"s", "y"}});
  CoequalizerResult ce = coequalizer(f, g);
  REQUIRE(ce.obj.size() == 1);
  REQUIRE(coequalizer_universal_ok(f, g, ce, 3));
}

TEST_CASE("coequalizer of the empty relation is the codomain") {
  FinSet b = FinSet::range(2, "b");
  FinMap e = FinMap::empty_to(b);
  CoequalizerResult ce = coequalizer(e, e);
  REQUIRE(ce.obj == b);
  REQUIRE(ce.q.is_identity());
  FinMap f = FinMap::identity(b);
  REQUIRE_THROWS_AS(coequalizer(f, FinMap::empty_to(b)), std::invalid_argument);
}

TEST_CASE("coequalizer universal property on small inputs") {
  FinSet a = FinSet::range(2, "a");
  FinSet b = FinSet::range(2, "b");
  for (const FinMap& f : enumerate_maps(a, b))
    for (const FinMap& g : enumerate_maps(a, b))
      REQUIRE(coequalizer_universal_ok(f, g, coequalizer(f, g), 3));
}

TEST_CASE("chain colimit of a single map") {
  FinSet a = FinSet::range(1, "a");
  FinSet b = FinSet::range(2, "b");
  FinMap f = FinMap::from_pairs(a, b, {{"a0", "b1"}});
  ChainColimitResult cc = chain_colimit({f});
  REQUIRE(cc.obj == b);
  REQUIRE(cc.inj.size() == 2);
  REQUIRE(cc.inj[0] == f);
  REQUIRE(cc.inj[1].is_identity());
}

TEST_CASE("chain colimit composes injections") {
  FinSet a = FinSet::range(1, "a");
  FinSet b = FinSet::range(2, "b");
  FinSet c = FinSet::range(2, "c");
  FinMap f = FinMap::from_pairs(a, b, {{"a0", "b0"}});
  FinMap g = FinMap::from_pairs(b, c, {{"b0", "c1"}, {"b1", "c1"}});
  ChainColimitResult cc = chain_colimit({f, g});
  REQUIRE(cc.inj[0] == compose(g, f));
  REQUIRE_THROWS_AS(chain_colimit({g, f}), std::invalid_argument);
  REQUIRE_THROWS_AS(chain_colimit({}), std::invalid_argument);
}

TEST_CASE("chain colimit of three inclusions") {
  std::vector<FinMap> chain;
  std::vector<Atom> pool{"1", "2", "3", "4"};
  for (std::size_t n = 1; n < 4; ++n) {
    FinSet s(std::vector<Atom>(pool.begin(), pool.begin() + n));
    FinSet t(std::vector<Atom>(pool.begin(), pool.begin() + n + 1));
    chain.push_back(FinMap::from_fn(s, t, [](const Atom& a) { return a; }));
  }
  ChainColimitResult cc = chain_colimit(chain);
  REQUIRE(cc.obj.size() == 4);
  REQUIRE(cc.inj[0]("1") == "1");
}

TEST_CASE("universal properties hold on five-element inputs") {
  FinSet a = FinSet::range(5, "a");
  FinSet b = FinSet::range(5, "b");
  FinSet c = FinSet::range(4, "c");
  FinMap f = FinMap::from_pairs(
      a, b, {{"a0", "b0"}, {"a1", "b0"}, {"a2", "b3"}, {"a3", "b4"}, {"a4", "b4"}});
  FinMap g = FinMap::from_pairs(
      a, c, {{"a0", "c1"}, {"a1", "c2"}, {"a2", "c2"}, {"a3", "c3"}, {"a4", "c0"}});
  PushoutResult po = pushout(f, g);
  REQUIRE(pushout_universal_ok(f, g, po, 3));
  FinSet d = FinSet::range(3, "d");
  FinMap p = FinMap::from_pairs(
      b, d, {{"b0", "d0"}, {"b1", "d1"}, {"b2", "d2"}, {"b3", "d0"}, {"b4", "d1"}});
  FinMap q = FinMap::from_pairs(c, d, {{"c0", "d0"}, {"c1", "d0"}, {"c2", "d2"}, {"c3", "d1"}});
  PullbackResult pb = pullback(p, q);
  REQUIRE(pullback_universal_ok(p, q, pb, 2));
  FinMap h1 = FinMap::from_pairs(
      a, b, {{"a0", "b1"}, {"a1", "b1"}, {"a2", "b2"}, {"a3", "b0"}, {"a4", "b3"}});
  CoequalizerResult ce = coequalizer(f, h1);
  REQUIRE(coequalizer_universal_ok(f, h1, ce, 3));
}

TEST_CASE("larger pushouts agree with the naive quotient oracle") {
  FinSet a = FinSet::range(3, "a");
  FinSet b = FinSet::range(3, "b");
  FinSet c = FinSet::range(2, "c");
  for (const FinMap& f : enumerate_maps(a, b))
    for (const FinMap& g : enumerate_maps(a, c))
      REQUIRE(pushout(f, g).obj.size() == naive_pushout_size(f, g));
}
