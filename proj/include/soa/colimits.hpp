#ifndef SOA_COLIMITS_HPP
#define SOA_COLIMITS_HPP

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soa/finset.hpp"

namespace soa {

/// Union-find with least-index representatives, so quotient classes are
/// represented by their least atom under the canonical order.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;  // keep the smaller index as root
    else parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

namespace detail {

// Quotient of a set by a union-find over its element indices. Class
// representatives are the least atoms; the returned map sends each
// element to its representative.
inline std::pair<FinSet, FinMap> quotient_by(const FinSet& s, UnionFind& uf) {
  std::vector<Atom> reps;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (uf.find(i) == i) reps.push_back(s.at(i));
  FinSet q(std::move(reps));
  std::vector<std::uint32_t> t(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    t[i] = static_cast<std::uint32_t>(q.index_of(s.at(uf.find(i))));
  return {q, FinMap(s, q, std::move(t))};
}

inline FinSet tagged_union(const FinSet& left, const FinSet& right) {
  std::vector<Atom> elems;
  elems.reserve(left.size() + right.size());
  for (const auto& a : left.elements()) elems.push_back("0:" + a);
  for (const auto& a : right.elements()) elems.push_back("1:" + a);
  return FinSet(std::move(elems));
}

}  // namespace detail

struct PushoutResult {
  FinSet obj;
  FinMap in_left;   // from cod of the first leg
  FinMap in_right;  // from cod of the second leg
};

/// Pushout of f : A -> B, g : A -> C, computed as the quotient of the
/// tagged union B + C by the relation f(a) ~ g(a). Left-leg elements are
/// tagged "0:" and win ties, so their names survive when classes merge.
inline PushoutResult pushout(const FinMap& f, const FinMap& g) {
  if (f.dom() != g.dom())
    throw std::invalid_argument("pushout: legs have different domains");
  const FinSet& b = f.cod();
  const FinSet& c = g.cod();
  FinSet disj = detail::tagged_union(b, c);
  UnionFind uf(disj.size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    std::size_t bi = disj.index_of("0:" + b.at(f.apply_index(i)));
    std::size_t ci = disj.index_of("1:" + c.at(g.apply_index(i)));
    uf.unite(bi, ci);
  }
  auto [q, proj] = detail::quotient_by(disj, uf);
  FinMap in_left = FinMap::from_fn(b, q, [&](const Atom& a) { return proj("0:" + a); });
  FinMap in_right = FinMap::from_fn(c, q, [&](const Atom& a) { return proj("1:" + a); });
  return {std::move(q), std::move(in_left), std::move(in_right)};
}

/// The unique map out of a pushout determined by a commuting cocone.
/// Throws if the cocone does not commute with the legs.
inline FinMap pushout_mediate(const PushoutResult& po, const FinMap& from_left,
                              const FinMap& from_right) {
  if (from_left.dom() != po.in_left.dom() || from_right.dom() != po.in_right.dom() ||
      from_left.cod() != from_right.cod())
    throw std::invalid_argument("pushout_mediate: cocone shape mismatch");
  const FinSet& z = from_left.cod();
  std::vector<std::uint32_t> t(po.obj.size(), 0);
  std::vector<bool> seen(po.obj.size(), false);
  auto record = [&](std::size_t q, std::size_t zi) {
    if (seen[q] && t[q] != zi)
      throw std::invalid_argument("pushout_mediate: cocone does not respect the quotient");
    seen[q] = true;
    t[q] = static_cast<std::uint32_t>(zi);
  };
  for (std::size_t i = 0; i < po.in_left.dom().size(); ++i)
    record(po.in_left.apply_index(i), from_left.apply_index(i));
  for (std::size_t i = 0; i < po.in_right.dom().size(); ++i)
    record(po.in_right.apply_index(i), from_right.apply_index(i));
  for (std::size_t q = 0; q < po.obj.size(); ++q)
    if (!seen[q]) throw std::logic_error("pushout_mediate: legs not jointly surjective");
  return FinMap(po.obj, z, std::move(t));
}

struct PullbackResult {
  FinSet obj;
  FinMap p1;  // to dom of the first leg
  FinMap p2;  // to dom of the second leg
};

/// Pullback of f : B -> D, g : C -> D: pairs (b,c) with f(b) = g(c).
inline PullbackResult pullback(const FinMap& f, const FinMap& g) {
  if (f.cod() != g.cod())
    throw std::invalid_argument("pullback: legs have different codomains");
  std::vector<Atom> elems;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j)
      if (f.apply_index(i) == g.apply_index(j))
        elems.push_back(pair_atom(f.dom().at(i), g.dom().at(j)));
  FinSet obj(std::move(elems));
  std::vector<std::uint32_t> t1(obj.size()), t2(obj.size());
  std::size_t n = 0;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j)
      if (f.apply_index(i) == g.apply_index(j)) {
        std::size_t q = obj.index_of(pair_atom(f.dom().at(i), g.dom().at(j)));
        t1[q] = static_cast<std::uint32_t>(i);
        t2[q] = static_cast<std::uint32_t>(j);
        ++n;
      }
  (void)n;
  FinMap p1(obj, f.dom(), std::move(t1));
  FinMap p2(obj, g.dom(), std::move(t2));
  return {std::move(obj), std::move(p1), std::move(p2)};
}

/// The unique map into a pullback determined by a commuting cone.
inline FinMap pullback_mediate(const PullbackResult& pb, const FinMap& to_left,
                               const FinMap& to_right) {
  if (to_left.dom() != to_right.dom())
    throw std::invalid_argument("pullback_mediate: cone legs have different domains");
  return FinMap::from_fn(to_left.dom(), pb.obj, [&](const Atom& a) {
    return pair_atom(to_left(a), to_right(a));
  });
}

struct CoequalizerResult {
  FinSet obj;
  FinMap q;
};

/// Coequalizer of a parallel pair f, g : A -> B: quotient of B by the
/// relation f(a) ~ g(a). Representatives keep their own names.
inline CoequalizerResult coequalizer(const FinMap& f, const FinMap& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw std::invalid_argument("coequalizer: maps are not a parallel pair");
  UnionFind uf(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    uf.unite(f.apply_index(i), g.apply_index(i));
  auto [q, proj] = detail::quotient_by(f.cod(), uf);
  return {std::move(q), std::move(proj)};
}

inline FinMap coequalizer_mediate(const CoequalizerResult& ce, const FinMap& cocone) {
  if (cocone.dom() != ce.q.dom())
    throw std::invalid_argument("coequalizer_mediate: cocone shape mismatch");
  std::vector<std::uint32_t> t(ce.obj.size(), 0);
  std::vector<bool> seen(ce.obj.size(), false);
  for (std::size_t i = 0; i < cocone.dom().size(); ++i) {
    std::size_t q = ce.q.apply_index(i);
    std::size_t zi = cocone.apply_index(i);
    if (seen[q] && t[q] != static_cast<std::uint32_t>(zi))
      throw std::invalid_argument("coequalizer_mediate: cocone does not respect the quotient");
    seen[q] = true;
    t[q] = static_cast<std::uint32_t>(zi);
  }
  return FinMap(ce.obj, cocone.cod(), std::move(t));
}

struct ChainColimitResult {
  FinSet obj;
  std::vector<FinMap> inj;  // one per chain object, last is the identity
};

/// Colimit of a finite composable chain: the final object, with the
/// evident composite injections. The empty chain is rejected.
inline ChainColimitResult chain_colimit(const std::vector<FinMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("chain_colimit: empty chain");
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (maps[i].cod() != maps[i + 1].dom())
      throw std::invalid_argument("chain_colimit: chain is not composable");
  FinSet last = maps.back().cod();
  std::vector<FinMap> inj(maps.size() + 1, FinMap::identity(last));
  for (std::size_t i = maps.size(); i-- > 0;) inj[i] = compose(inj[i + 1], maps[i]);
  return {std::move(last), std::move(inj)};
}

// ---------------------------------------------------------------------------
// Universal-property verifiers. Exponential; meant for tests only.
// ---------------------------------------------------------------------------

inline bool pushout_universal_ok(const FinMap& f, const FinMap& g, const PushoutResult& po,
                                 std::size_t max_cocone_size = 4) {
  if (compose(po.in_left, f) != compose(po.in_right, g)) return false;
  // Uniqueness of every mediating map == the legs are jointly surjective.
  std::vector<bool> hit(po.obj.size(), false);
  for (auto i : po.in_left.table()) hit[i] = true;
  for (auto i : po.in_right.table()) hit[i] = true;
  for (bool h : hit)
    if (!h) return false;
  // Existence: every commuting cocone factors through the quotient.
  for (std::size_t zn = 0; zn <= max_cocone_size; ++zn) {
    FinSet z = FinSet::range(zn, "z");
    for (const FinMap& cb : enumerate_maps(f.cod(), z))
      for (const FinMap& cc : enumerate_maps(g.cod(), z)) {
        if (compose(cb, f) != compose(cc, g)) continue;
        try {
          FinMap h = pushout_mediate(po, cb, cc);
          if (compose(h, po.in_left) != cb || compose(h, po.in_right) != cc) return false;
        } catch (const std::invalid_argument&) {
          return false;
        }
      }
  }
  return true;
}

inline bool pullback_universal_ok(const FinMap& f, const FinMap& g, const PullbackResult& pb,
                                  std::size_t max_cone_size = 4) {
  if (compose(f, pb.p1) != compose(g, pb.p2)) return false;
  for (std::size_t zn = 0; zn <= max_cone_size; ++zn) {
    FinSet z = FinSet::range(zn, "z");
    for (const FinMap& tb : enumerate_maps(z, f.dom()))
      for (const FinMap& tc : enumerate_maps(z, g.dom())) {
        if (compose(f, tb) != compose(g, tc)) continue;
        FinMap h = pullback_mediate(pb, tb, tc);
        if (compose(pb.p1, h) != tb || compose(pb.p2, h) != tc) return false;
        // Uniqueness: any other factoring map agrees.
        for (const FinMap& h2 : enumerate_maps(z, pb.obj))
          if (compose(pb.p1, h2) == tb && compose(pb.p2, h2) == tc && h2 != h) return false;
      }
  }
  return true;
}

inline bool coequalizer_universal_ok(const FinMap& f, const FinMap& g,
                                     const CoequalizerResult& ce,
                                     std::size_t max_cocone_size = 4) {
  if (compose(ce.q, f) != compose(ce.q, g)) return false;
  if (!ce.q.is_surjective()) return false;  // uniqueness
  for (std::size_t zn = 0; zn <= max_cocone_size; ++zn) {
    FinSet z = FinSet::range(zn, "z");
    for (const FinMap& c : enumerate_maps(f.cod(), z)) {
      if (compose(c, f) != compose(c, g)) continue;
      try {
        FinMap h = coequalizer_mediate(ce, c);
        if (compose(h, ce.q) != c) return false;
      } catch (const std::invalid_argument&) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace soa

#endif  // SOA_COLIMITS_HPP
