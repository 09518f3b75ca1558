#ifndef SOA_SOA_HPP
#define SOA_SOA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "soa/arrow.hpp"
#include "soa/colimits.hpp"
#include "soa/finset.hpp"
#include "soa/lifting.hpp"

namespace soa {

struct SoaConfig {
  int stage_cap = 8;        // outer stage bound
  int inner_cap = 4096;     // triples processed per stage
  bool check_before_stage = true;
  bool skip_solved = false; // skip triples whose problem already lifts
  std::uint64_t seed = 1;   // used by verification sampling only

  void validate() const {
    if (stage_cap < 1 || inner_cap < 1)
      throw std::invalid_argument("SoaConfig: caps must be at least 1");
  }
};

/// Scheduling function cycling through the generator list.
inline std::size_t mod_schedule(std::size_t alpha, std::size_t gen_count) {
  if (gen_count == 0) throw std::invalid_argument("mod_schedule: no generators");
  return alpha % gen_count;
}

/// One attachment datum: a target map g, a cocone of squares v indexed by
/// the codomain of the scheduled generator, and a compatible w on its
/// domain. The defining equation is e_{g,phi}. w = v . u.
struct Triple {
  std::size_t g_index = 0;
  FinMap v;  // V -> Sq(g, phi).carrier
  FinMap w;  // U -> hom(cod g, D).carrier
};

/// All triples for the scheduled generator, ordered by (g index, v table,
/// w table). The w component is enumerated fiberwise over the equation, so
/// no infeasible product is ever materialized.
inline std::vector<Triple> enumerate_triples(const std::vector<FinMap>& targets,
                                             const FinMap& phi, const FinMap& u,
                                             std::uint64_t cap = 1u << 20) {
  std::vector<Triple> out;
  for (std::size_t gi = 0; gi < targets.size(); ++gi) {
    const FinMap& g = targets[gi];
    InducedE e = e_map(g, phi);
    const FinSet& sq_carrier = e.square.carrier;
    const FinSet& hom_carrier = e.map.dom();
    // v : V -> Sq free; w constrained pointwise by w(j) in e^{-1}(v(u(j))).
    std::uint64_t v_count = hom_count(u.cod(), sq_carrier, cap);
    if (v_count > cap)
      throw std::length_error("enumerate_triples: square cocone space exceeds cap");
    std::vector<std::vector<std::uint32_t>> fibers(sq_carrier.size());
    for (std::size_t i = 0; i < hom_carrier.size(); ++i)
      fibers[e.map.apply_index(i)].push_back(static_cast<std::uint32_t>(i));
    if (!u.cod().empty() && sq_carrier.empty()) continue;  // no squares, no triples
    std::vector<std::uint32_t> vt(u.cod().size(), 0);
    for (;;) {
      FinMap v(u.cod(), sq_carrier, vt);
      // Enumerate w through the fibers of e over v(u(-)).
      std::vector<const std::vector<std::uint32_t>*> slots(u.dom().size());
      bool feasible = true;
      for (std::size_t j = 0; j < u.dom().size(); ++j) {
        slots[j] = &fibers[v.apply_index(u.apply_index(j))];
        if (slots[j]->empty()) feasible = false;
      }
      if (feasible) {
        std::vector<std::size_t> widx(u.dom().size(), 0);
        for (;;) {
          std::vector<std::uint32_t> wt(u.dom().size());
          for (std::size_t j = 0; j < u.dom().size(); ++j) wt[j] = (*slots[j])[widx[j]];
          out.push_back(Triple{gi, v, FinMap(u.dom(), hom_carrier, std::move(wt))});
          if (out.size() > cap) throw std::length_error("enumerate_triples: cap exceeded");
          std::size_t k = u.dom().size();
          bool done = true;
          while (k > 0) {
            --k;
            if (++widx[k] < slots[k]->size()) { done = false; break; }
            widx[k] = 0;
          }
          if (done) break;
        }
      }
      if (u.cod().empty()) break;
      std::size_t k = u.cod().size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++vt[k] < sq_carrier.size()) { done = false; break; }
        vt[k] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

/// Result of one copowered pushout step.
struct CopoweredPushout {
  FinSet object;       // the new stage object
  FinMap connecting;   // old stage -> new stage
  FinMap cell;         // V . cod g -> new stage
  FinMap attach;       // corner apex -> old stage (the attaching map)
  CornerResult crn;
};

/// Attaches one cell: the pushout of the corner of (u,g) against the
/// attaching map assembled from the transposed triple components.
/// r_part : V.dom g -> D and h_part : U.cod g -> D must agree on U.dom g.
inline CopoweredPushout copowered_pushout(const FinMap& u, const FinMap& g,
                                          const FinMap& r_part, const FinMap& h_part) {
  CornerResult crn = corner(u, g);
  if (r_part.dom() != crn.i2.dom() || h_part.dom() != crn.i1.dom() ||
      r_part.cod() != h_part.cod())
    throw std::invalid_argument("copowered_pushout: attaching data has wrong shape");
  if (compose(h_part, copower_right(u.dom(), g)) != compose(r_part, copower_left(u, g.dom())))
    throw std::invalid_argument("copowered_pushout: attaching data is not transpose-compatible");
  PushoutResult apex_po{crn.apex, crn.i1, crn.i2};
  FinMap attach = pushout_mediate(apex_po, h_part, r_part);
  PushoutResult po = pushout(attach, crn.corner);
  return CopoweredPushout{po.obj, po.in_left, po.in_right, std::move(attach), std::move(crn)};
}

struct StageLog {
  int stage = 0;
  std::size_t scheduled_generator = 0;
  std::size_t triples = 0;
  std::size_t attached = 0;
  std::size_t skipped = 0;
  std::size_t object_size = 0;
};

/// The running state of the staged construction: the current object, the
/// cocone component into the target, and the connecting maps so far.
/// Invariants: cocone.dom() == object, and composing the cocone with each
/// recorded connecting map recovers the previous cocone component.
struct SoaState {
  int stage = 0;
  FinSet object;                  // D_alpha
  FinMap cocone;                  // phi_alpha : D_alpha -> L
  std::vector<FinMap> connecting; // D(alpha -> alpha+1), one per run stage

  FinMap left_factor(const FinSet& start) const {
    FinMap acc = FinMap::identity(start);
    for (const FinMap& step : connecting) acc = compose(step, acc);
    return acc;
  }
};

struct SoaStats {
  int stages_run = 0;
  std::size_t cells_attached = 0;
  bool inner_cap_hit = false;
  std::vector<StageLog> stage_logs;
};

struct FactorizationResult {
  FinMap f;  // the factored map
  FinMap e;  // left factor
  FinMap m;  // right factor
  bool converged = false;
  CellCertificate certificate;  // derivation of e
  SoaStats stats;
};

/// Staged construction of the factorization f = m . e. Each stage schedules
/// one generator, enumerates all its triples against the current cocone
/// component, and attaches the corresponding cells in order.
inline FactorizationResult soa_factorize(const FinMap& f, const std::vector<FinMap>& targets,
                                         const std::vector<FinMap>& gens,
                                         const SoaConfig& config = {}) {
  config.validate();
  if (targets.empty() || gens.empty())
    throw std::invalid_argument("soa_factorize: target and generator lists must be nonempty");

  SoaState state;
  state.object = f.dom();
  state.cocone = f;
  std::vector<CellCertificate> stage_nodes;
  SoaStats stats;

  auto converged_now = [&]() {
    for (const FinMap& g : targets)
      if (!rlp_member(e_map(g, state.cocone).map, gens)) return false;
    return true;
  };

  bool converged = false;
  for (state.stage = 0; state.stage < config.stage_cap; ++state.stage) {
    if (config.check_before_stage && converged_now()) {
      converged = true;
      break;
    }
    const FinMap& u = gens[mod_schedule(static_cast<std::size_t>(state.stage), gens.size())];
    std::vector<Triple> triples = enumerate_triples(targets, state.cocone, u);
    StageLog log;
    log.stage = state.stage;
    log.scheduled_generator = mod_schedule(static_cast<std::size_t>(state.stage), gens.size());
    log.triples = triples.size();

    FinMap stage_connect = FinMap::identity(state.object);  // f'_{0,beta} within the stage
    FinMap stage_phi = state.cocone;
    std::vector<CellCertificate> cell_nodes;

    std::size_t processed = 0;
    std::optional<std::size_t> cached_gi;
    std::optional<InducedE> cached_e;
    for (const Triple& tr : triples) {
      if (processed >= static_cast<std::size_t>(config.inner_cap)) {
        stats.inner_cap_hit = true;
        break;
      }
      const FinMap& g = targets[tr.g_index];
      if (cached_gi != tr.g_index) {
        cached_e = e_map(g, state.cocone);
        cached_gi = tr.g_index;
      }
      const InducedE& e = *cached_e;
      if (config.skip_solved) {
        // The triple's problem is solved when the (v,w) square against
        // e_{g,phi} admits a diagonal V -> hom(cod g, D).
        bool solved = false;
        HomSet hcd = hom(g.cod(), state.object);
        for (const FinMap& dd : enumerate_maps(u.cod(), hcd.carrier)) {
          if (compose(dd, u) == tr.w && compose(e.map, dd) == tr.v) {
            solved = true;
            break;
          }
        }
        if (solved) {
          ++log.skipped;
          continue;
        }
      }
      ++processed;
      FinMap r_small = compose(e.square.p1, tr.v);  // V -> hom(dom g, D_alpha)
      FinMap r_att = compose(stage_connect, transpose_up(r_small, g.dom(), state.object));
      FinMap h_att = compose(stage_connect, transpose_up(tr.w, g.cod(), state.object));
      CopoweredPushout cp = copowered_pushout(u, g, r_att, h_att);
      // New cocone component: old one on the old stage, the transposed
      // square codomain data on the attached cell.
      FinMap cell_phi = transpose_up(compose(e.square.p2, tr.v), g.cod(), f.cod());
      PushoutResult po{cp.object, cp.connecting, cp.cell};
      FinMap new_phi = pushout_mediate(po, stage_phi, cell_phi);
      stage_phi = std::move(new_phi);
      stage_connect = compose(cp.connecting, stage_connect);
      cell_nodes.push_back(CellCertificate::pushout_node(
          CellCertificate::corner_node(CellCertificate::generator_node(u),
                                       CellCertificate::generator_node(g)),
          cp.attach));
      ++stats.cells_attached;
      ++log.attached;
    }

    if (compose(stage_phi, stage_connect) != state.cocone)
      throw std::logic_error("soa_factorize: cocone invariant broken within a stage");
    state.object = stage_connect.cod();
    state.cocone = std::move(stage_phi);
    state.connecting.push_back(std::move(stage_connect));
    if (!cell_nodes.empty())
      stage_nodes.push_back(CellCertificate::composite_node(std::move(cell_nodes)));
    log.object_size = state.object.size();
    stats.stage_logs.push_back(log);
    ++stats.stages_run;
  }
  if (!converged) converged = converged_now();

  FactorizationResult out{f,
                          state.left_factor(f.dom()),
                          state.cocone,
                          converged,
                          CellCertificate::composite_node(std::move(stage_nodes)),
                          std::move(stats)};
  if (compose(out.m, out.e) != f)
    throw std::logic_error("soa_factorize: factorization invariant broken");
  return out;
}

struct VerificationReport {
  bool factorization_ok = false;   // m.e = f
  bool right_class_ok = false;     // every e_{g,m} is in the right class
  bool certificate_ok = false;     // the certificate replays to e
  bool left_spot_ok = false;       // e lifts against sampled right-class members
  int left_samples = 0;
  std::string detail;

  bool all_ok() const {
    return factorization_ok && right_class_ok && certificate_ok && left_spot_ok;
  }
};

/// Exact and sampled checks of the factorization contract.
inline VerificationReport verify_result(const FactorizationResult& r,
                                        const std::vector<FinMap>& targets,
                                        const std::vector<FinMap>& gens,
                                        std::uint64_t seed = 1, int want_samples = 50) {
  VerificationReport rep;
  rep.factorization_ok = compose(r.m, r.e) == r.f;
  rep.right_class_ok = true;
  for (const FinMap& g : targets)
    if (!rlp_member(e_map(g, r.m).map, gens)) {
      rep.right_class_ok = false;
      rep.detail += "e_{g,m} not in the right class for some target; ";
      break;
    }
  try {
    rep.certificate_ok = replay_certificate(r.certificate, r.f.dom()) == r.e;
  } catch (const std::exception& ex) {
    rep.certificate_ok = false;
    rep.detail += std::string("certificate replay failed: ") + ex.what() + "; ";
  }
  // Spot-check the left class behavior of e against sampled maps that are
  // exactly certified members of the right class of the targets.
  detail::Rng rng(seed);
  rep.left_spot_ok = true;
  int tried = 0;
  while (rep.left_samples < want_samples && tried < want_samples * 80) {
    ++tried;
    FinMap k = detail::random_map(rng, 3);
    bool member = true;
    for (const FinMap& g : targets)
      if (!f_lift(g, k, gens)) {
        member = false;
        break;
      }
    if (!member) continue;
    ++rep.left_samples;
    if (!f_lift(r.e, k, gens)) {
      rep.left_spot_ok = false;
      rep.detail += "e fails the enriched lifting against a sampled member; ";
      break;
    }
  }
  return rep;
}

}  // namespace soa

#endif  // SOA_SOA_HPP
