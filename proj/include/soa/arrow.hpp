#ifndef SOA_ARROW_HPP
#define SOA_ARROW_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soa/colimits.hpp"
#include "soa/finset.hpp"

namespace soa {

/// Copower of a set object by a set object: the cartesian product.
inline FinSet copower(const FinSet& v, const FinSet& a) { return product(v, a); }

/// Functorial action of the copower in both variables.
inline FinMap copower_map(const FinMap& u, const FinMap& f) { return product_map(u, f); }

inline FinMap copower_left(const FinMap& u, const FinSet& a) {
  return product_map(u, FinMap::identity(a));
}

inline FinMap copower_right(const FinSet& v, const FinMap& f) {
  return product_map(FinMap::identity(v), f);
}

/// The object of squares from f : A -> B to k : C -> D, realized as the
/// pullback of precomposition hom(B,D) -> hom(A,D) against postcomposition
/// hom(A,C) -> hom(A,D). Carrier atoms are pairs (r,s) with k.r = s.f.
struct SquareObject {
  FinMap f, k;
  FinSet carrier;
  std::vector<std::pair<FinMap, FinMap>> squares;  // aligned with carrier
  FinMap p1;  // carrier -> hom(A,C)
  FinMap p2;  // carrier -> hom(B,D)
  FinSet hom_ac, hom_bd;

  std::size_t index_of(const FinMap& r, const FinMap& s) const {
    return carrier.index_of(pair_atom(map_atom(r), map_atom(s)));
  }
};

inline SquareObject sq(const FinMap& f, const FinMap& k) {
  HomSet hac = hom(f.dom(), k.dom());
  HomSet hbd = hom(f.cod(), k.cod());
  FinMap post = postcompose_map(f.dom(), k);   // hom(A,C) -> hom(A,D)
  FinMap pre = precompose_map(f, k.cod());     // hom(B,D) -> hom(A,D)
  PullbackResult pb = pullback(post, pre);     // pairs (r,s)
  std::vector<std::pair<FinMap, FinMap>> squares;
  squares.reserve(pb.obj.size());
  for (std::size_t i = 0; i < pb.obj.size(); ++i)
    squares.emplace_back(hac.maps[pb.p1.apply_index(i)], hbd.maps[pb.p2.apply_index(i)]);
  return SquareObject{f,
                      k,
                      pb.obj,
                      std::move(squares),
                      std::move(pb.p1),
                      std::move(pb.p2),
                      hac.carrier,
                      hbd.carrier};
}

/// Contravariant action of a commutative square (g,g') : f -> f' on square
/// objects: Sq(f',k) -> Sq(f,k), (r,s) |-> (r.g, s.g').
inline FinMap sq_action(const FinMap& f, const FinMap& fp, const FinMap& g, const FinMap& gp,
                        const FinMap& k) {
  if (g.dom() != f.dom() || gp.dom() != f.cod() || g.cod() != fp.dom() || gp.cod() != fp.cod())
    throw std::invalid_argument("sq_action: square boundary mismatch");
  if (compose(fp, g) != compose(gp, f))
    throw std::invalid_argument("sq_action: input square does not commute");
  SquareObject src = sq(fp, k);
  SquareObject dst = sq(f, k);
  std::vector<std::uint32_t> t(src.carrier.size());
  for (std::size_t i = 0; i < src.squares.size(); ++i) {
    const auto& [r, s] = src.squares[i];
    t[i] = static_cast<std::uint32_t>(dst.index_of(compose(r, g), compose(s, gp)));
  }
  return FinMap(src.carrier, dst.carrier, std::move(t));
}

/// The comparison hom(B,C) -> Sq(f,k), d |-> (d.f, k.d).
struct InducedE {
  FinMap f, k;
  SquareObject square;
  FinMap map;  // hom(B,C) -> Sq(f,k)
};

inline InducedE e_map(const FinMap& f, const FinMap& k) {
  SquareObject sqo = sq(f, k);
  HomSet hbc = hom(f.cod(), k.dom());
  std::vector<std::uint32_t> t(hbc.carrier.size());
  for (std::size_t i = 0; i < hbc.maps.size(); ++i) {
    const FinMap& d = hbc.maps[i];
    t[i] = static_cast<std::uint32_t>(sqo.index_of(compose(d, f), compose(k, d)));
  }
  FinMap m(hbc.carrier, sqo.carrier, std::move(t));
  return InducedE{f, k, std::move(sqo), std::move(m)};
}

/// The corner construction: apex is the pushout of U.f against u.A, and the
/// corner map is induced into V.B by u.B and V.f.
struct CornerResult {
  FinMap u, f;
  FinSet apex;
  FinMap i1;      // U.B -> apex
  FinMap i2;      // V.A -> apex
  FinMap corner;  // apex -> V.B
};

inline CornerResult corner(const FinMap& u, const FinMap& f) {
  FinMap uf = copower_right(u.dom(), f);   // U.A -> U.B
  FinMap ua = copower_left(u, f.dom());    // U.A -> V.A
  PushoutResult po = pushout(uf, ua);
  FinMap ub = copower_left(u, f.cod());    // U.B -> V.B
  FinMap vf = copower_right(u.cod(), f);   // V.A -> V.B
  FinMap nabla = pushout_mediate(po, ub, vf);
  return CornerResult{u, f, std::move(po.obj), std::move(po.in_left), std::move(po.in_right),
                      std::move(nabla)};
}

/// Transpose of phi : U -> hom(A,B) to U.A -> B via evaluation.
inline FinMap transpose_up(const FinMap& phi, const FinSet& a, const FinSet& b) {
  HomSet hab = hom(a, b);
  if (phi.cod() != hab.carrier)
    throw std::invalid_argument("transpose_up: codomain is not hom(A,B)");
  FinSet ua = product(phi.dom(), a);
  std::vector<std::uint32_t> t(ua.size());
  for (std::size_t i = 0; i < phi.dom().size(); ++i) {
    const FinMap& m = hab.maps[phi.apply_index(i)];
    for (std::size_t j = 0; j < a.size(); ++j)
      t[ua.index_of(pair_atom(phi.dom().at(i), a.at(j)))] =
          static_cast<std::uint32_t>(m.apply_index(j));
  }
  return FinMap(ua, b, std::move(t));
}

/// Inverse transpose of psi : U.A -> B to U -> hom(A,B).
inline FinMap transpose_down(const FinMap& psi, const FinSet& u, const FinSet& a,
                             const FinSet& b) {
  if (psi.dom() != product(u, a) || psi.cod() != b)
    throw std::invalid_argument("transpose_down: map is not of shape U.A -> B");
  HomSet hab = hom(a, b);
  std::vector<std::uint32_t> t(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    FinMap section = FinMap::from_fn(a, b, [&](const Atom& x) {
      return psi(pair_atom(u.at(i), x));
    });
    t[i] = static_cast<std::uint32_t>(hab.index_of(section));
  }
  return FinMap(u, hab.carrier, std::move(t));
}

/// A commutative square from the corner map of (u,f) to k.
struct CornerSquare {
  CornerResult crn;
  FinMap top;     // apex -> C
  FinMap bottom;  // V.B -> D
};

/// Forward transposition of a lifting problem: a square (v,w) from u to
/// e_{f,k} becomes a square from the corner of (u,f) to k.
inline CornerSquare adjoint_square_fwd(const FinMap& u, const FinMap& f, const FinMap& k,
                                       const FinMap& v, const FinMap& w) {
  InducedE e = e_map(f, k);
  if (v.dom() != u.dom() || w.dom() != u.cod() || v.cod() != e.map.dom() ||
      w.cod() != e.map.cod())
    throw std::invalid_argument("adjoint_square_fwd: square boundary mismatch");
  if (compose(e.map, v) != compose(w, u))
    throw std::invalid_argument("adjoint_square_fwd: input square does not commute");
  CornerResult crn = corner(u, f);
  const FinSet& c = k.dom();
  const FinSet& d = k.cod();
  FinMap from_ub = transpose_up(v, f.cod(), c);                       // U.B -> C
  FinMap from_va = transpose_up(compose(e.square.p1, w), f.dom(), c); // V.A -> C
  // Reconstruct the apex pushout to mediate the cocone (v^*, (p1.w)^*).
  PushoutResult po{crn.apex, crn.i1, crn.i2};
  FinMap top = pushout_mediate(po, from_ub, from_va);
  FinMap bottom = transpose_up(compose(e.square.p2, w), f.cod(), d);  // V.B -> D
  if (compose(k, top) != compose(bottom, crn.corner))
    throw std::logic_error("adjoint_square_fwd: output square does not commute");
  return CornerSquare{std::move(crn), std::move(top), std::move(bottom)};
}

struct ESquare {
  FinMap v;  // U -> hom(B,C)
  FinMap w;  // V -> Sq(f,k)
};

/// Backward transposition: a square (g,h) from the corner of (u,f) to k
/// becomes the square ((g.i1)_*, ((g.i2)_*, h_*)) from u to e_{f,k}.
inline ESquare adjoint_square_bwd(const FinMap& u, const FinMap& f, const FinMap& k,
                                  const FinMap& g, const FinMap& h) {
  CornerResult crn = corner(u, f);
  if (g.dom() != crn.apex || h.dom() != crn.corner.cod() || g.cod() != k.dom() ||
      h.cod() != k.cod())
    throw std::invalid_argument("adjoint_square_bwd: square boundary mismatch");
  if (compose(k, g) != compose(h, crn.corner))
    throw std::invalid_argument("adjoint_square_bwd: input square does not commute");
  InducedE e = e_map(f, k);
  FinMap v = transpose_down(compose(g, crn.i1), u.dom(), f.cod(), k.dom());
  FinMap w_r = transpose_down(compose(g, crn.i2), u.cod(), f.dom(), k.dom());
  FinMap w_s = transpose_down(h, u.cod(), f.cod(), k.cod());
  HomSet hac = hom(f.dom(), k.dom());
  HomSet hbd = hom(f.cod(), k.cod());
  std::vector<std::uint32_t> t(u.cod().size());
  for (std::size_t i = 0; i < u.cod().size(); ++i) {
    const FinMap& r = hac.maps[w_r.apply_index(i)];
    const FinMap& s = hbd.maps[w_s.apply_index(i)];
    t[i] = static_cast<std::uint32_t>(e.square.index_of(r, s));
  }
  FinMap w(u.cod(), e.square.carrier, std::move(t));
  if (compose(e.map, v) != compose(w, u))
    throw std::logic_error("adjoint_square_bwd: output square does not commute");
  return ESquare{std::move(v), std::move(w)};
}

/// Witness for corner associativity: an explicit apex bijection
/// chi : apex(v, corner(u,f)) -> apex(corner(v,u), f) commuting with the
/// two corner maps through the product reassociation.
struct CornerAssocWitness {
  bool ok = false;
  std::string detail;
  FinMap chi;
  CornerResult left_outer, right_outer;
};

inline CornerAssocWitness corner_assoc_witness(const FinMap& v, const FinMap& u,
                                               const FinMap& f) {
  CornerAssocWitness out;
  CornerResult inner_l = corner(u, f);             // apex1, corner : apex1 -> V1.B
  CornerResult outer_l = corner(v, inner_l.corner);
  CornerResult inner_r = corner(v, u);             // in the base: apex_vu -> V2.V1
  CornerResult outer_r = corner(inner_r.corner, f);

  const FinSet& u2 = v.dom();
  const FinSet& v2 = v.cod();
  const FinSet& u1 = u.dom();
  const FinSet& v1 = u.cod();
  const FinSet& a = f.dom();
  const FinSet& b = f.cod();

  // chi on the i1-part U2.(V1.B): ((x,(y,b))) -> i1R(j1(x,y), b).
  // chi on the i2-part V2.apex1: through any member of the apex1 class.
  std::vector<std::int64_t> target(outer_l.apex.size(), -1);
  auto put = [&](const Atom& src, const Atom& dst) -> bool {
    std::size_t si = outer_l.apex.index_of(src);
    std::size_t di = outer_r.apex.index_of(dst);
    if (target[si] >= 0 && target[si] != static_cast<std::int64_t>(di)) return false;
    target[si] = static_cast<std::int64_t>(di);
    return true;
  };
  for (const auto& x : u2.elements())
    for (const auto& y : v1.elements())
      for (const auto& bb : b.elements()) {
        Atom src = outer_l.i1(pair_atom(x, pair_atom(y, bb)));
        Atom dst = outer_r.i1(pair_atom(inner_r.i1(pair_atom(x, y)), bb));
        if (!put(src, dst)) {
          out.detail = "i1-part not class-constant at " + src;
          return out;
        }
      }
  for (const auto& z : v2.elements()) {
    for (const auto& x1 : u1.elements())
      for (const auto& bb : b.elements()) {
        Atom member = inner_l.i1(pair_atom(x1, bb));
        Atom src = outer_l.i2(pair_atom(z, member));
        Atom dst = outer_r.i1(pair_atom(inner_r.i2(pair_atom(z, x1)), bb));
        if (!put(src, dst)) {
          out.detail = "i2/i1-part not class-constant at " + src;
          return out;
        }
      }
    for (const auto& y1 : v1.elements())
      for (const auto& aa : a.elements()) {
        Atom member = inner_l.i2(pair_atom(y1, aa));
        Atom src = outer_l.i2(pair_atom(z, member));
        Atom dst = outer_r.i2(pair_atom(pair_atom(z, y1), aa));
        if (!put(src, dst)) {
          out.detail = "i2/i2-part not class-constant at " + src;
          return out;
        }
      }
  }
  for (std::size_t i = 0; i < target.size(); ++i)
    if (target[i] < 0) {
      out.detail = "no image assigned for apex class " + outer_l.apex.at(i);
      return out;
    }
  std::vector<std::uint32_t> t(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) t[i] = static_cast<std::uint32_t>(target[i]);
  FinMap chi(outer_l.apex, outer_r.apex, std::move(t));
  if (!chi.is_bijective()) {
    out.detail = "canonical apex map is not a bijection";
    return out;
  }
  // Compatibility with the corner maps through reassociation
  // V2.(V1.B) -> (V2.V1).B.
  FinSet lcod = product(v2, product(v1, b));
  FinSet rcod = product(product(v2, v1), b);
  std::vector<std::uint32_t> rt(lcod.size());
  for (const auto& z : v2.elements())
    for (const auto& y : v1.elements())
      for (const auto& bb : b.elements())
        rt[lcod.index_of(pair_atom(z, pair_atom(y, bb)))] =
            static_cast<std::uint32_t>(rcod.index_of(pair_atom(pair_atom(z, y), bb)));
  FinMap reassoc(lcod, rcod, std::move(rt));
  if (compose(outer_r.corner, chi) != compose(reassoc, outer_l.corner)) {
    out.detail = "apex bijection does not commute with the corner maps";
    return out;
  }
  out.ok = true;
  out.chi = std::move(chi);
  out.left_outer = std::move(outer_l);
  out.right_outer = std::move(outer_r);
  return out;
}

}  // namespace soa

#endif  // SOA_ARROW_HPP
