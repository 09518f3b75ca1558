#include <catch2/catch_amalgamated.hpp>

#include "soa/fincat.hpp"

using namespace soa;

TEST_CASE("builders produce valid categories") {
  for (const FinCategory& c : {empty_category(), terminal_category(),
                               discrete_category({"a", "b"}), walking_arrow_category(),
                               parallel_pair_category(), chain_category(4)}) {
    auto err = c.validate();
    INFO(err.value_or(""));
    REQUIRE_FALSE(err.has_value());
  }
}

TEST_CASE("validation catches broken composition tables") {
  FinCategory c = walking_arrow_category();
  c.comp.erase({"id_1", "a01"});
  REQUIRE(c.validate().has_value());

  FinCategory c2 = walking_arrow_category();
  c2.comp[{"a01", "id_0"}] = "id_0";  // wrong boundary
  REQUIRE(c2.validate().has_value());

  FinCategory c3 = walking_arrow_category();
  c3.morphisms.push_back({"a01", "0", "1"});  // duplicate name
  REQUIRE(c3.validate().has_value());
}

TEST_CASE("functor enumeration counts on small shapes") {
  // Functors from the walking arrow into the chain of length 3 pick a
  // morphism of the chain: 6 of them.
  REQUIRE(enumerate_functors(walking_arrow_category(), chain_category(3)).size() == 6);
  // Functors from the discrete pair: one per ordered object pair.
  REQUIRE(enumerate_functors(discrete_category({"0", "1"}), chain_category(3)).size() == 9);
  // From the empty category: exactly one.
  REQUIRE(enumerate_functors(empty_category(), chain_category(3)).size() == 1);
  // Into the empty category: none from a nonempty source.
  REQUIRE(enumerate_functors(terminal_category(), empty_category()).empty());
}

TEST_CASE("every enumerated functor validates and composes") {
  FinCategory a = parallel_pair_category();
  FinCategory b = walking_arrow_category();
  auto fs = enumerate_functors(a, b);
  // Object assignments (0,0), (0,1), (1,1) admit exactly one functor each;
  // (1,0) has no arrow images.
  REQUIRE(fs.size() == 3);
  for (const CatFunctor& f : fs) {
    REQUIRE_FALSE(f.validate().has_value());
    CatFunctor idb = identity_functor(b);
    REQUIRE(compose_functors(idb, f) == f);
  }
}

TEST_CASE("set functor validation") {
  SetFunctor x;
  x.source = walking_arrow_category();
  FinSet a = FinSet::range(2, "a");
  FinSet b = FinSet::range(2, "b");
  x.on_obj["0"] = a;
  x.on_obj["1"] = b;
  x.on_mor["id_0"] = FinMap::identity(a);
  x.on_mor["id_1"] = FinMap::identity(b);
  x.on_mor["a01"] = FinMap::from_pairs(a, b, {{"a0", "b1"}, {"a1", "b1"}});
  REQUIRE_FALSE(x.validate().has_value());
  x.on_mor["id_1"] = FinMap::from_pairs(b, b, {{"b0", "b1"}, {"b1", "b1"}});
  REQUIRE(x.validate().has_value());
}

TEST_CASE("natural transformation enumeration filters naturality") {
  SetFunctor x, y;
  x.source = y.source = walking_arrow_category();
  FinSet two = FinSet::range(2, "s");
  x.on_obj["0"] = two;
  x.on_obj["1"] = two;
  x.on_mor["id_0"] = FinMap::identity(two);
  x.on_mor["id_1"] = FinMap::identity(two);
  x.on_mor["a01"] = FinMap::identity(two);
  y = x;
  auto nats = enumerate_nats(x, y);
  REQUIRE(nats.has_value());
  // Components must be equal at both stages: 4 maps, not 16 pairs.
  REQUIRE(nats->size() == 4);
  for (const NatTrans& t : *nats) REQUIRE(t.at("0") == t.at("1"));
}

TEST_CASE("set-realized categories validate and name composites correctly") {
  SetSubcategory sc = full_set_subcategory({FinSet::range(2, "x"), FinSet::range(3, "y")});
  auto err = sc.cat.validate();
  INFO(err.value_or(""));
  REQUIRE_FALSE(err.has_value());
  // 2^2 + 3^2 + 2^3 + 3^3 = 4 + 9 + 8 + 27 maps in total.
  REQUIRE(sc.cat.morphisms.size() == 48);
  for (const auto& f : sc.cat.morphisms)
    for (const auto& g : sc.cat.morphisms) {
      if (f.cod != g.dom) continue;
      REQUIRE(sc.maps.at(sc.cat.compose_mor(g.name, f.name)) ==
              compose(sc.maps.at(g.name), sc.maps.at(f.name)));
    }
}
