#ifndef SOA_FINSET_HPP
#define SOA_FINSET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace soa {

using Atom = std::string;

// Characters reserved for atoms produced by constructions (pairs, hom
// elements, quotient tags). User-supplied atoms must avoid them so that
// generated names never collide with input names.
inline bool atom_is_valid(const Atom& a) {
  if (a.empty()) return false;
  for (char c : a) {
    switch (c) {
      case '(': case ')': case '[': case ']': case '{': case '}':
      case ',': case ';': case ':': case '|':
        return false;
      default:
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    }
  }
  return true;
}

/// Finite set of atoms in canonical (sorted) order. Equality is structural.
class FinSet {
 public:
  FinSet() = default;

  explicit FinSet(std::vector<Atom> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    auto dup = std::adjacent_find(elems_.begin(), elems_.end());
    if (dup != elems_.end())
      throw std::invalid_argument("FinSet: duplicate atom '" + *dup + "'");
  }

  /// Canonical n-element set {prefix0, ..., prefix(n-1)}.
  static FinSet range(std::size_t n, const std::string& prefix = "e") {
    std::vector<Atom> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
    return FinSet(std::move(v));
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<Atom>& elements() const { return elems_; }
  const Atom& at(std::size_t i) const { return elems_.at(i); }

  bool contains(const Atom& a) const {
    return std::binary_search(elems_.begin(), elems_.end(), a);
  }

  std::size_t index_of(const Atom& a) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
    if (it == elems_.end() || *it != a)
      throw std::out_of_range("FinSet: atom '" + a + "' not present");
    return static_cast<std::size_t>(it - elems_.begin());
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet&, const FinSet&) = default;

 private:
  std::vector<Atom> elems_;
};

/// Total map between finite sets, stored as an index table over the
/// canonical element orders of dom and cod.
class FinMap {
 public:
  FinMap() = default;

  FinMap(FinSet dom, FinSet cod, std::vector<std::uint32_t> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size())
      throw std::invalid_argument("FinMap: table size does not match domain");
    for (auto i : table_)
      if (i >= cod_.size())
        throw std::invalid_argument("FinMap: image index out of codomain");
  }

  static FinMap from_pairs(const FinSet& dom, const FinSet& cod,
                           const std::map<Atom, Atom>& assign) {
    std::vector<std::uint32_t> t(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      auto it = assign.find(dom.at(i));
      if (it == assign.end())
        throw std::invalid_argument("FinMap: no image for atom '" + dom.at(i) + "'");
      t[i] = static_cast<std::uint32_t>(cod.index_of(it->second));
    }
    if (assign.size() != dom.size())
      throw std::invalid_argument("FinMap: assignment mentions atoms outside the domain");
    return FinMap(dom, cod, std::move(t));
  }

  template <typename Fn>
  static FinMap from_fn(const FinSet& dom, const FinSet& cod, Fn&& fn) {
    std::vector<std::uint32_t> t(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
      t[i] = static_cast<std::uint32_t>(cod.index_of(fn(dom.at(i))));
    return FinMap(dom, cod, std::move(t));
  }

  static FinMap identity(const FinSet& s) {
    std::vector<std::uint32_t> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) t[i] = static_cast<std::uint32_t>(i);
    return FinMap(s, s, std::move(t));
  }

  static FinMap empty_to(const FinSet& cod) { return FinMap(FinSet(), cod, {}); }

  /// The unique map to a singleton.
  static FinMap to_point(const FinSet& dom, const FinSet& point) {
    if (point.size() != 1)
      throw std::invalid_argument("FinMap::to_point: codomain is not a singleton");
    return FinMap(dom, point, std::vector<std::uint32_t>(dom.size(), 0));
  }

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::size_t apply_index(std::size_t i) const { return table_.at(i); }
  const Atom& apply(const Atom& a) const { return cod_.at(table_.at(dom_.index_of(a))); }
  const Atom& operator()(const Atom& a) const { return apply(a); }

  bool is_identity() const {
    if (dom_ != cod_) return false;
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (table_[i] != i) return false;
    return true;
  }

  bool is_injective() const {
    std::vector<bool> hit(cod_.size(), false);
    for (auto i : table_) {
      if (hit[i]) return false;
      hit[i] = true;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(cod_.size(), false);
    std::size_t n = 0;
    for (auto i : table_)
      if (!hit[i]) { hit[i] = true; ++n; }
    return n == cod_.size();
  }

  bool is_bijective() const { return is_injective() && is_surjective(); }

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap&, const FinMap&) = default;

 private:
  FinSet dom_, cod_;
  std::vector<std::uint32_t> table_;
};

/// g after f. Requires cod f = dom g structurally.
inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod() != g.dom())
    throw std::invalid_argument("compose: cod of first factor differs from dom of second");
  std::vector<std::uint32_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = static_cast<std::uint32_t>(g.apply_index(f.apply_index(i)));
  return FinMap(f.dom(), g.cod(), std::move(t));
}

inline Atom pair_atom(const Atom& a, const Atom& b) { return "(" + a + "," + b + ")"; }

/// Cartesian product with canonical pair atoms.
inline FinSet product(const FinSet& a, const FinSet& b) {
  std::vector<Atom> elems;
  elems.reserve(a.size() * b.size());
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) elems.push_back(pair_atom(x, y));
  return FinSet(std::move(elems));
}

/// f x g : A x B -> A' x B'.
inline FinMap product_map(const FinMap& f, const FinMap& g) {
  FinSet src = product(f.dom(), g.dom());
  FinSet dst = product(f.cod(), g.cod());
  std::vector<std::uint32_t> t(src.size());
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j) {
      Atom from = pair_atom(f.dom().at(i), g.dom().at(j));
      Atom to = pair_atom(f.cod().at(f.apply_index(i)), g.cod().at(g.apply_index(j)));
      t[src.index_of(from)] = static_cast<std::uint32_t>(dst.index_of(to));
    }
  return FinMap(std::move(src), std::move(dst), std::move(t));
}

inline std::uint64_t pow_count(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / (base == 0 ? 1 : base)) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

/// |hom(A,B)| = |B|^|A|, saturating at cap+1.
inline std::uint64_t hom_count(const FinSet& a, const FinSet& b,
                               std::uint64_t cap = UINT64_MAX - 1) {
  return pow_count(b.size(), a.size(), cap);
}

inline Atom map_atom(const FinMap& f) {
  Atom s = "[";
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (i) s += ",";
    s += f.cod().at(f.apply_index(i));
  }
  s += "]";
  return s;
}

/// All maps A -> B in lexicographic order of their index tables.
inline std::vector<FinMap> enumerate_maps(const FinSet& a, const FinSet& b,
                                          std::uint64_t cap = 4'000'000) {
  if (hom_count(a, b, cap) > cap)
    throw std::length_error("enumerate_maps: hom set exceeds cap");
  std::vector<FinMap> out;
  if (a.empty()) {
    out.push_back(FinMap(a, b, {}));
    return out;
  }
  if (b.empty()) return out;  // no maps from nonempty to empty
  std::vector<std::uint32_t> t(a.size(), 0);
  for (;;) {
    out.push_back(FinMap(a, b, t));
    std::size_t k = a.size();
    while (k > 0) {
      --k;
      if (++t[k] < b.size()) break;
      t[k] = 0;
      if (k == 0) return out;
    }
  }
}

/// The hom object K(A,B) materialized: carrier atoms in canonical order,
/// with the decoded map stored alongside each atom.
struct HomSet {
  FinSet dom, cod;
  FinSet carrier;
  std::vector<FinMap> maps;  // aligned with carrier order

  const FinMap& map_at(std::size_t i) const { return maps.at(i); }
  const FinMap& decode(const Atom& a) const { return maps.at(carrier.index_of(a)); }
  Atom encode(const FinMap& f) const {
    Atom a = map_atom(f);
    carrier.index_of(a);  // throws if absent
    return a;
  }
  std::size_t index_of(const FinMap& f) const { return carrier.index_of(map_atom(f)); }
};

inline HomSet hom(const FinSet& a, const FinSet& b, std::uint64_t cap = 4'000'000) {
  std::vector<FinMap> ms = enumerate_maps(a, b, cap);
  std::vector<std::pair<Atom, FinMap>> tagged;
  tagged.reserve(ms.size());
  for (auto& m : ms) tagged.emplace_back(map_atom(m), std::move(m));
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Atom> atoms;
  std::vector<FinMap> maps;
  atoms.reserve(tagged.size());
  maps.reserve(tagged.size());
  for (auto& [at, m] : tagged) {
    atoms.push_back(at);
    maps.push_back(std::move(m));
  }
  HomSet h{a, b, FinSet(std::move(atoms)), std::move(maps)};
  return h;
}

/// hom(A,B) as a plain object.
inline FinSet hom_set(const FinSet& a, const FinSet& b) { return hom(a, b).carrier; }

/// Precomposition hom(B,X) -> hom(A,X) with f : A -> B.
inline FinMap precompose_map(const FinMap& f, const FinSet& x) {
  HomSet hbx = hom(f.cod(), x);
  HomSet hax = hom(f.dom(), x);
  std::vector<std::uint32_t> t(hbx.carrier.size());
  for (std::size_t i = 0; i < hbx.maps.size(); ++i)
    t[i] = static_cast<std::uint32_t>(hax.index_of(compose(hbx.maps[i], f)));
  return FinMap(hbx.carrier, hax.carrier, std::move(t));
}

/// Postcomposition hom(X,A) -> hom(X,B) with k : A -> B.
inline FinMap postcompose_map(const FinSet& x, const FinMap& k) {
  HomSet hxa = hom(x, k.dom());
  HomSet hxb = hom(x, k.cod());
  std::vector<std::uint32_t> t(hxa.carrier.size());
  for (std::size_t i = 0; i < hxa.maps.size(); ++i)
    t[i] = static_cast<std::uint32_t>(hxb.index_of(compose(k, hxa.maps[i])));
  return FinMap(hxa.carrier, hxb.carrier, std::move(t));
}

}  // namespace soa

#endif  // SOA_FINSET_HPP
