#ifndef SOA_FINCAT_HPP
#define SOA_FINCAT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soa/finset.hpp"

namespace soa {

struct CatMor {
  std::string name, dom, cod;
  friend bool operator==(const CatMor&, const CatMor&) = default;
};

/// Finite category: objects, globally uniquely named morphisms, identity
/// assignment and a total composition table on composable pairs.
struct FinCategory {
  std::vector<std::string> objects;
  std::vector<CatMor> morphisms;
  std::map<std::string, std::string> identity;                       // obj -> mor
  std::map<std::pair<std::string, std::string>, std::string> comp;   // (g,f) -> g.f

  bool has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
  }

  const CatMor& mor(const std::string& name) const {
    for (const auto& m : morphisms)
      if (m.name == name) return m;
    throw std::out_of_range("FinCategory: unknown morphism '" + name + "'");
  }

  const std::string& id_of(const std::string& x) const {
    auto it = identity.find(x);
    if (it == identity.end())
      throw std::out_of_range("FinCategory: no identity for object '" + x + "'");
    return it->second;
  }

  std::string compose_mor(const std::string& g, const std::string& f) const {
    auto it = comp.find({g, f});
    if (it == comp.end())
      throw std::invalid_argument("FinCategory: morphisms '" + g + "' and '" + f +
                                  "' are not composable");
    return it->second;
  }

  std::vector<std::string> hom_mors(const std::string& x, const std::string& y) const {
    std::vector<std::string> out;
    for (const auto& m : morphisms)
      if (m.dom == x && m.cod == y) out.push_back(m.name);
    return out;
  }

  /// Exhaustive associativity, identity and totality check.
  std::optional<std::string> validate() const {
    for (const auto& x : objects) {
      auto it = identity.find(x);
      if (it == identity.end()) return "missing identity for object '" + x + "'";
      const CatMor& i = mor(it->second);
      if (i.dom != x || i.cod != x) return "identity of '" + x + "' has wrong boundary";
    }
    for (const auto& m : morphisms) {
      if (!has_object(m.dom) || !has_object(m.cod))
        return "morphism '" + m.name + "' has unknown boundary";
      std::size_t copies = 0;
      for (const auto& m2 : morphisms)
        if (m2.name == m.name) ++copies;
      if (copies != 1) return "duplicate morphism name '" + m.name + "'";
    }
    for (const auto& f : morphisms)
      for (const auto& g : morphisms) {
        bool composable = f.cod == g.dom;
        auto it = comp.find({g.name, f.name});
        if (composable && it == comp.end())
          return "missing composite of '" + g.name + "' after '" + f.name + "'";
        if (!composable && it != comp.end())
          return "composite recorded for non-composable pair ('" + g.name + "','" + f.name + "')";
        if (composable) {
          const CatMor& gf = mor(it->second);
          if (gf.dom != f.dom || gf.cod != g.cod)
            return "composite of '" + g.name + "' after '" + f.name + "' has wrong boundary";
        }
      }
    for (const auto& f : morphisms) {
      if (compose_mor(f.name, id_of(f.dom)) != f.name)
        return "right identity law fails at '" + f.name + "'";
      if (compose_mor(id_of(f.cod), f.name) != f.name)
        return "left identity law fails at '" + f.name + "'";
    }
    for (const auto& f : morphisms)
      for (const auto& g : morphisms) {
        if (f.cod != g.dom) continue;
        for (const auto& h : morphisms) {
          if (g.cod != h.dom) continue;
          if (compose_mor(h.name, compose_mor(g.name, f.name)) !=
              compose_mor(compose_mor(h.name, g.name), f.name))
            return "associativity fails at ('" + h.name + "','" + g.name + "','" + f.name + "')";
        }
      }
    return std::nullopt;
  }

  friend bool operator==(const FinCategory&, const FinCategory&) = default;
};

// --- builders -------------------------------------------------------------

inline FinCategory discrete_category(const std::vector<std::string>& objects,
                                     const std::string& prefix = "id_") {
  FinCategory c;
  c.objects = objects;
  for (const auto& x : objects) {
    c.morphisms.push_back({prefix + x, x, x});
    c.identity[x] = prefix + x;
    c.comp[{prefix + x, prefix + x}] = prefix + x;
  }
  return c;
}

inline FinCategory empty_category() { return FinCategory{}; }

inline FinCategory terminal_category() { return discrete_category({"*"}); }

inline FinCategory chain_category(std::size_t n);

/// The walking arrow: objects 0, 1 and one non-identity morphism a01.
inline FinCategory walking_arrow_category() { return chain_category(2); }

/// The walking parallel pair: objects 0, 1 and two morphisms 0 -> 1.
inline FinCategory parallel_pair_category() {
  FinCategory c = discrete_category({"0", "1"});
  for (const std::string n : {"a01", "b01"}) {
    c.morphisms.push_back({n, "0", "1"});
    c.comp[{n, "id_0"}] = n;
    c.comp[{"id_1", n}] = n;
  }
  return c;
}

/// The chain 0 -> 1 -> ... -> n-1 with all composites.
inline FinCategory chain_category(std::size_t n) {
  FinCategory c;
  for (std::size_t i = 0; i < n; ++i) c.objects.push_back(std::to_string(i));
  auto arrow_name = [](std::size_t i, std::size_t j) {
    return "a" + std::to_string(i) + std::to_string(j);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::string nm = i == j ? "id_" + std::to_string(i) : arrow_name(i, j);
      c.morphisms.push_back({nm, std::to_string(i), std::to_string(j)});
      if (i == j) c.identity[std::to_string(i)] = nm;
    }
  auto name_of = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + std::to_string(i) : arrow_name(i, j);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        c.comp[{name_of(j, k), name_of(i, j)}] = name_of(i, k);
  return c;
}

/// The full subcategory of finite sets spanned by the given objects, with
/// every map materialized as a named morphism.
struct SetSubcategory {
  FinCategory cat;
  std::map<std::string, FinSet> objs;   // object name -> set
  std::map<std::string, FinMap> maps;   // morphism name -> map
  std::map<std::pair<std::pair<std::string, std::string>, std::vector<std::uint32_t>>,
           std::string>
      name_of;  // ((dom,cod), table) -> morphism name

  const std::string& lookup(const std::string& dom, const std::string& cod,
                            const FinMap& m) const {
    auto it = name_of.find({{dom, cod}, m.table()});
    if (it == name_of.end()) throw std::out_of_range("SetSubcategory: unnamed map");
    return it->second;
  }
};

inline SetSubcategory full_set_subcategory(const std::vector<FinSet>& sets) {
  SetSubcategory out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string nm = "S" + std::to_string(i);
    out.cat.objects.push_back(nm);
    out.objs[nm] = sets[i];
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      for (const FinMap& m : enumerate_maps(sets[i], sets[j])) {
        std::string nm = "m" + std::to_string(count++);
        std::string oi = "S" + std::to_string(i), oj = "S" + std::to_string(j);
        out.cat.morphisms.push_back({nm, oi, oj});
        out.maps[nm] = m;
        out.name_of[{{oi, oj}, m.table()}] = nm;
        if (i == j && m.is_identity()) out.cat.identity[oi] = nm;
      }
  for (const auto& f : out.cat.morphisms)
    for (const auto& g : out.cat.morphisms) {
      if (f.cod != g.dom) continue;
      FinMap comp_map = compose(out.maps.at(g.name), out.maps.at(f.name));
      out.cat.comp[{g.name, f.name}] = out.lookup(f.dom, g.cod, comp_map);
    }
  return out;
}

/// Functor between finite categories given by name tables.
struct CatFunctor {
  FinCategory source, target;
  std::map<std::string, std::string> on_obj;
  std::map<std::string, std::string> on_mor;

  const std::string& obj(const std::string& x) const {
    auto it = on_obj.find(x);
    if (it == on_obj.end()) throw std::out_of_range("CatFunctor: unmapped object '" + x + "'");
    return it->second;
  }
  const std::string& mor_name(const std::string& m) const {
    auto it = on_mor.find(m);
    if (it == on_mor.end()) throw std::out_of_range("CatFunctor: unmapped morphism '" + m + "'");
    return it->second;
  }

  std::optional<std::string> validate() const {
    for (const auto& x : source.objects)
      if (!target.has_object(obj(x))) return "object image missing for '" + x + "'";
    for (const auto& m : source.morphisms) {
      const CatMor& im = target.mor(mor_name(m.name));
      if (im.dom != obj(m.dom) || im.cod != obj(m.cod))
        return "morphism image boundary mismatch at '" + m.name + "'";
    }
    for (const auto& x : source.objects)
      if (mor_name(source.id_of(x)) != target.id_of(obj(x)))
        return "identity not preserved at '" + x + "'";
    for (const auto& f : source.morphisms)
      for (const auto& g : source.morphisms) {
        if (f.cod != g.dom) continue;
        if (mor_name(source.compose_mor(g.name, f.name)) !=
            target.compose_mor(mor_name(g.name), mor_name(f.name)))
          return "composition not preserved at ('" + g.name + "','" + f.name + "')";
      }
    return std::nullopt;
  }

  bool surjective_on_objects() const {
    for (const auto& y : target.objects) {
      bool hit = false;
      for (const auto& x : source.objects)
        if (obj(x) == y) hit = true;
      if (!hit) return false;
    }
    return true;
  }

  friend bool operator==(const CatFunctor&, const CatFunctor&) = default;
};

inline CatFunctor identity_functor(const FinCategory& c) {
  CatFunctor f;
  f.source = c;
  f.target = c;
  for (const auto& x : c.objects) f.on_obj[x] = x;
  for (const auto& m : c.morphisms) f.on_mor[m.name] = m.name;
  return f;
}

inline CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
  if (f.target != g.source)
    throw std::invalid_argument("compose_functors: middle categories differ");
  CatFunctor out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [x, y] : f.on_obj) out.on_obj[x] = g.obj(y);
  for (const auto& [m, n] : f.on_mor) out.on_mor[m] = g.mor_name(n);
  return out;
}

/// All functors C -> D, ordered lexicographically by their tables.
inline std::vector<CatFunctor> enumerate_functors(const FinCategory& c, const FinCategory& d,
                                                  std::size_t cap = 2'000'000) {
  std::vector<CatFunctor> out;
  if (c.objects.empty()) {
    CatFunctor f;
    f.source = c;
    f.target = d;
    out.push_back(std::move(f));
    return out;
  }
  if (d.objects.empty()) return out;
  // Odometer over object images, then over morphism images filtered by
  // boundaries and functoriality.
  std::vector<std::size_t> oidx(c.objects.size(), 0);
  std::size_t produced = 0;
  for (;;) {
    std::map<std::string, std::string> on_obj;
    for (std::size_t i = 0; i < c.objects.size(); ++i) on_obj[c.objects[i]] = d.objects[oidx[i]];
    // Candidate images per morphism.
    std::vector<std::vector<std::string>> cand(c.morphisms.size());
    bool feasible = true;
    for (std::size_t i = 0; i < c.morphisms.size(); ++i) {
      const CatMor& m = c.morphisms[i];
      if (m.name == c.id_of(m.dom)) {
        cand[i] = {d.id_of(on_obj[m.dom])};
      } else {
        cand[i] = d.hom_mors(on_obj[m.dom], on_obj[m.cod]);
      }
      if (cand[i].empty()) feasible = false;
    }
    if (feasible) {
      std::vector<std::size_t> midx(c.morphisms.size(), 0);
      for (;;) {
        CatFunctor f;
        f.source = c;
        f.target = d;
        f.on_obj = on_obj;
        for (std::size_t i = 0; i < c.morphisms.size(); ++i)
          f.on_mor[c.morphisms[i].name] = cand[i][midx[i]];
        if (!f.validate()) {
          out.push_back(std::move(f));
          if (++produced > cap) throw std::length_error("enumerate_functors: cap exceeded");
        }
        std::size_t k = c.morphisms.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++midx[k] < cand[k].size()) { done = false; break; }
          midx[k] = 0;
        }
        if (done) break;
      }
    }
    std::size_t k = c.objects.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++oidx[k] < d.objects.size()) { done = false; break; }
      oidx[k] = 0;
    }
    if (done) break;
  }
  return out;
}

/// Functor into finite sets.
struct SetFunctor {
  FinCategory source;
  std::map<std::string, FinSet> on_obj;
  std::map<std::string, FinMap> on_mor;

  const FinSet& at(const std::string& x) const {
    auto it = on_obj.find(x);
    if (it == on_obj.end()) throw std::out_of_range("SetFunctor: unmapped object '" + x + "'");
    return it->second;
  }
  const FinMap& map_of(const std::string& m) const {
    auto it = on_mor.find(m);
    if (it == on_mor.end()) throw std::out_of_range("SetFunctor: unmapped morphism '" + m + "'");
    return it->second;
  }

  std::optional<std::string> validate() const {
    for (const auto& m : source.morphisms) {
      const FinMap& im = map_of(m.name);
      if (im.dom() != at(m.dom) || im.cod() != at(m.cod))
        return "stage boundary mismatch at '" + m.name + "'";
    }
    for (const auto& x : source.objects)
      if (!map_of(source.id_of(x)).is_identity()) return "identity not preserved at '" + x + "'";
    for (const auto& f : source.morphisms)
      for (const auto& g : source.morphisms) {
        if (f.cod != g.dom) continue;
        if (map_of(source.compose_mor(g.name, f.name)) !=
            compose(map_of(g.name), map_of(f.name)))
          return "composition not preserved at ('" + g.name + "','" + f.name + "')";
      }
    return std::nullopt;
  }

  friend bool operator==(const SetFunctor&, const SetFunctor&) = default;
};

/// Natural transformation between set-valued functors.
struct NatTrans {
  std::map<std::string, FinMap> components;  // object -> F(x) -> G(x)

  const FinMap& at(const std::string& x) const {
    auto it = components.find(x);
    if (it == components.end()) throw std::out_of_range("NatTrans: missing component '" + x + "'");
    return it->second;
  }
  friend bool operator==(const NatTrans&, const NatTrans&) = default;
  friend auto operator<=>(const NatTrans&, const NatTrans&) = default;
};

inline bool natural_ok(const SetFunctor& f, const SetFunctor& g, const NatTrans& t) {
  for (const auto& m : f.source.morphisms) {
    if (compose(g.map_of(m.name), t.at(m.dom)) != compose(t.at(m.cod), f.map_of(m.name)))
      return false;
  }
  return true;
}

/// All natural transformations F => G, or nullopt when the raw component
/// space exceeds the cap.
inline std::optional<std::vector<NatTrans>> enumerate_nats(const SetFunctor& f,
                                                           const SetFunctor& g,
                                                           std::uint64_t cap = 2'000'000) {
  std::uint64_t total = 1;
  for (const auto& x : f.source.objects) {
    std::uint64_t h = hom_count(f.at(x), g.at(x), cap);
    if (h > cap) return std::nullopt;
    if (total > cap / (h ? h : 1)) return std::nullopt;
    total *= h ? h : 1;
    if (h == 0) total = 0;
  }
  if (total > cap) return std::nullopt;
  std::vector<NatTrans> out;
  std::vector<std::vector<FinMap>> choices;
  for (const auto& x : f.source.objects) choices.push_back(enumerate_maps(f.at(x), g.at(x)));
  for (const auto& ch : choices)
    if (ch.empty()) return out;
  std::vector<std::size_t> idx(choices.size(), 0);
  if (choices.empty()) {
    out.push_back(NatTrans{});
    return out;
  }
  for (;;) {
    NatTrans t;
    for (std::size_t i = 0; i < choices.size(); ++i)
      t.components[f.source.objects[i]] = choices[i][idx[i]];
    if (natural_ok(f, g, t)) out.push_back(std::move(t));
    std::size_t k = choices.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k].size()) { done = false; break; }
      idx[k] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace soa

#endif  // SOA_FINCAT_HPP
