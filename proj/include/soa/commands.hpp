#ifndef SOA_COMMANDS_HPP
#define SOA_COMMANDS_HPP

#include <string>
#include <vector>

#include "soa/day.hpp"
#include "soa/instance.hpp"

namespace soa {

// Exit-code contract: 0 success, 1 input error, 2 non-convergence or a
// failed check.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUnmet = 2;

struct RunOutcome {
  json report;
  int exit_code = kExitOk;
};

namespace detail_cmd {

inline json report_head(const std::string& command, const InstanceDocument& doc) {
  return json{{"schema", kReportSchema},
              {"command", command},
              {"base", doc.base},
              {"profile", doc.profile.name},
              {"seed", doc.config.seed},
              {"timing_ms", 0}};
}

inline json verification_to_json(const VerificationReport& v) {
  return json{{"factorization_ok", v.factorization_ok},
              {"right_class_ok", v.right_class_ok},
              {"certificate_ok", v.certificate_ok},
              {"left_spot_ok", v.left_spot_ok},
              {"left_samples", v.left_samples},
              {"detail", v.detail}};
}

inline json check_to_json(const CheckReport& c) {
  json examples = json::array();
  for (const auto& ex : c.examples) {
    json maps = json::array();
    for (const auto& m : ex.maps) maps.push_back(finmap_to_json(m));
    examples.push_back(json{{"description", ex.description}, {"maps", maps}});
  }
  return json{{"name", c.name},          {"cases_run", c.cases_run},
              {"counterexamples", c.counterexamples}, {"examples", examples},
              {"notes", c.notes},        {"skipped", c.skipped}};
}

}  // namespace detail_cmd

/// Runs the staged factorization on the instance's named map and verifies
/// the result; the certificate is embedded in replayable form.
inline RunOutcome cmd_factorize(const InstanceDocument& doc) {
  if (doc.base != "set")
    throw InstanceError("/base", "factorize requires the set base");
  if (!doc.f_name) throw InstanceError("/f", "factorize needs the map to factor");
  if (doc.targets.empty()) throw InstanceError("/I", "factorize needs a target family");
  std::vector<FinMap> targets;
  for (const auto& n : doc.targets) targets.push_back(doc.named_map(n));
  const FinMap& f = doc.named_map(*doc.f_name);

  FactorizationResult r = soa_factorize(f, targets, doc.profile.generators, doc.config);
  VerificationReport v =
      verify_result(r, targets, doc.profile.generators, doc.config.seed);

  json stage_logs = json::array();
  for (const auto& log : r.stats.stage_logs)
    stage_logs.push_back(json{{"stage", log.stage},
                              {"scheduled_generator", log.scheduled_generator},
                              {"triples", log.triples},
                              {"attached", log.attached},
                              {"skipped", log.skipped},
                              {"object_size", log.object_size}});
  RunOutcome out;
  out.report = detail_cmd::report_head("factorize", doc);
  out.report["result"] = json{{"converged", r.converged},
                              {"e", finmap_to_json(r.e)},
                              {"m", finmap_to_json(r.m)},
                              {"middle_object", finset_to_json(r.e.cod())},
                              {"stats",
                               json{{"stages_run", r.stats.stages_run},
                                    {"cells_attached", r.stats.cells_attached},
                                    {"inner_cap_hit", r.stats.inner_cap_hit},
                                    {"stage_logs", stage_logs}}},
                              {"verification", detail_cmd::verification_to_json(v)}};
  out.report["certificate"] = json{{"start", finset_to_json(f.dom())},
                                   {"tree", certificate_to_json(r.certificate)}};
  out.exit_code = (r.converged && v.all_ok()) ? kExitOk : kExitUnmet;
  return out;
}

/// Replays an embedded certificate and confirms it reproduces the payload.
inline bool report_certificate_replays(const json& report) {
  if (!report.contains("certificate") || !report.contains("result")) return false;
  const json& cert = report["certificate"];
  FinSet start = finset_from_json(cert["start"], "/certificate/start");
  CellCertificate tree = certificate_from_json(cert["tree"], "/certificate/tree");
  FinMap replayed = replay_certificate(tree, start);
  return finmap_to_json(replayed) == report["result"]["e"];
}

/// Decides the enriched lifting relation for the instance's f against k.
inline RunOutcome cmd_lift(const InstanceDocument& doc, bool witnesses = false) {
  if (!doc.f_name || !doc.k_name)
    throw InstanceError("/", "lift needs both 'f' and 'k'");
  RunOutcome out;
  out.report = detail_cmd::report_head("lift", doc);
  if (doc.base == "set") {
    const FinMap& f = doc.named_map(*doc.f_name);
    const FinMap& k = doc.named_map(*doc.k_name);
    bool lifts = f_lift(f, k, doc.profile.generators);
    out.report["result"] = json{{"lifts", lifts}};
    if (witnesses) {
      // Per-square diagonal table for the plain relation between f and k.
      LiftTable t = has_lift(f, k);
      json rows = json::array();
      for (std::size_t i = 0; i < t.square.carrier.size(); ++i) {
        const auto& [r, s] = t.square.squares[i];
        json row{{"r", finmap_to_json(r)}, {"s", finmap_to_json(s)}};
        row["diagonal"] = t.diagonals[i] ? finmap_to_json(*t.diagonals[i]) : json();
        rows.push_back(row);
      }
      out.report["result"]["witnesses"] = rows;
      out.report["result"]["plain_lifts"] = t.all_lift;
    }
    out.exit_code = kExitOk;
    return out;
  }
  // 2-categorical base.
  if (!doc.twocat) throw InstanceError("/twocat", "missing 2-category");
  TwoLiftReport r = f_lift2(*doc.twocat, *doc.f_name, *doc.k_name);
  out.report["result"] = json{{"lifts", r.ok},
                              {"unfolded", r.unfolded},
                              {"equivalence",
                               json{{"surjective_on_objects", r.equivalence.surjective_on_objects},
                                    {"full", r.equivalence.full},
                                    {"faithful", r.equivalence.faithful},
                                    {"detail", r.equivalence.detail}}}};
  out.exit_code = kExitOk;
  return out;
}

struct LawsOptions {
  bool assoc = true;
  bool unit = true;
  bool adjunction = true;
  int cases = 100;
  std::size_t max_stage = 3;
  std::size_t adjunction_max_stage = 2;
  std::uint64_t seed = 1;
};

/// Runs the action-law verifiers over a seeded grid of functor instances on
/// the trivial, walking-arrow and three-chain bases.
inline RunOutcome cmd_laws(const LawsOptions& opt) {
  detail::Rng rng(opt.seed);
  auto random_arrow = [&](std::size_t max_size) { return detail::random_map(rng, max_size); };
  auto random_const = [&](const MonoidalFinCategory& a, std::size_t max_size) {
    FinSet s = FinSet::range(rng.below(max_size + 1), "s");
    SetFunctor f;
    f.source = a.cat;
    for (const auto& x : a.cat.objects) f.on_obj[x] = s;
    for (const auto& m : a.cat.morphisms) f.on_mor[m.name] = FinMap::identity(s);
    return f;
  };
  auto random_chain3 = [&](const MonoidalFinCategory& a, std::size_t max_size) {
    FinMap m01 = random_arrow(max_size);
    FinMap m12 = detail::random_map(rng, max_size);
    // Rebase m12 to start at cod(m01).
    std::vector<std::uint32_t> t(m01.cod().size());
    if (m12.cod().empty() && !m01.cod().empty()) m12 = FinMap::identity(m01.cod());
    for (auto& v : t)
      v = static_cast<std::uint32_t>(m12.cod().empty() ? 0 : rng.below(m12.cod().size()));
    FinMap step(m01.cod(), m12.cod().empty() ? FinSet::range(1, "t") : m12.cod(), t);
    SetFunctor f;
    f.source = a.cat;
    f.on_obj["0"] = m01.dom();
    f.on_obj["1"] = m01.cod();
    f.on_obj["2"] = step.cod();
    f.on_mor["id_0"] = FinMap::identity(m01.dom());
    f.on_mor["id_1"] = FinMap::identity(m01.cod());
    f.on_mor["id_2"] = FinMap::identity(step.cod());
    f.on_mor["a01"] = m01;
    f.on_mor["a12"] = step;
    f.on_mor["a02"] = compose(step, m01);
    return f;
  };

  json checks = json::object();
  bool all_ok = true;
  auto run_block = [&](const std::string& name, bool enabled, auto&& body) {
    if (!enabled) return;
    int ran = 0, failed = 0;
    std::string first_fail;
    body(ran, failed, first_fail);
    checks[name] = json{{"cases", ran}, {"failures", failed}, {"detail", first_fail}};
    if (failed > 0) all_ok = false;
  };

  MonoidalFinCategory triv = trivial_monoidal();
  MonoidalFinCategory arrow = arrow_monoidal();
  MonoidalFinCategory chain3 = chain_min_monoidal(3);

  run_block("assoc", opt.assoc, [&](int& ran, int& failed, std::string& first) {
    for (int i = 0; i < opt.cases; ++i) {
      LawReport r =
          i % 3 == 0
              ? assoc_check(triv, random_const(triv, opt.max_stage),
                            random_const(triv, opt.max_stage), random_const(triv, opt.max_stage))
              : (i % 3 == 1
                     ? assoc_check(arrow, arrow_functor(random_arrow(opt.max_stage)),
                                   arrow_functor(random_arrow(opt.max_stage)),
                                   arrow_functor(random_arrow(opt.max_stage)))
                     : assoc_check(chain3, random_chain3(chain3, 2), random_chain3(chain3, 2),
                                   random_chain3(chain3, 2)));
      ++ran;
      if (!r.ok) {
        ++failed;
        if (first.empty()) first = r.detail;
      }
    }
  });
  run_block("unit", opt.unit, [&](int& ran, int& failed, std::string& first) {
    for (int i = 0; i < opt.cases; ++i) {
      LawReport r = i % 3 == 0 ? unit_check(triv, random_const(triv, opt.max_stage))
                               : (i % 3 == 1
                                      ? unit_check(arrow, arrow_functor(random_arrow(opt.max_stage)))
                                      : unit_check(chain3, random_chain3(chain3, 2)));
      ++ran;
      if (!r.ok) {
        ++failed;
        if (first.empty()) first = r.detail;
      }
    }
  });
  run_block("adjunction", opt.adjunction, [&](int& ran, int& failed, std::string& first) {
    for (int i = 0; i < opt.cases; ++i) {
      LawReport r;
      if (i % 2 == 0)
        r = adjunction_check(triv, random_const(triv, opt.adjunction_max_stage),
                             random_const(triv, opt.adjunction_max_stage),
                             random_const(triv, opt.adjunction_max_stage));
      else
        r = adjunction_check(arrow, arrow_functor(random_arrow(opt.adjunction_max_stage)),
                             arrow_functor(random_arrow(opt.adjunction_max_stage)),
                             arrow_functor(random_arrow(opt.adjunction_max_stage)));
      ++ran;
      if (!r.ok) {
        ++failed;
        if (first.empty()) first = r.detail;
      }
    }
  });
  // The walking-arrow specializations: copower action = corner, hom = e.
  run_block("specialization", true, [&](int& ran, int& failed, std::string& first) {
    for (int i = 0; i < opt.cases; ++i) {
      FinMap u = random_arrow(opt.max_stage);
      FinMap f = random_arrow(opt.max_stage);
      LawReport r1 = star_matches_corner(u, f);
      LawReport r2 = hom_angle_matches_e(u, f);
      ++ran;
      if (!r1.ok || !r2.ok) {
        ++failed;
        if (first.empty()) first = r1.ok ? r2.detail : r1.detail;
      }
    }
  });
  // Witness coherence: the unit triangle for the constructed comparisons.
  run_block("coherence", opt.assoc && opt.unit, [&](int& ran, int& failed, std::string& first) {
    for (int i = 0; i < opt.cases / 2; ++i) {
      LawReport r = i % 2 == 0
                        ? unit_coherence_check(triv, random_const(triv, opt.max_stage),
                                               random_const(triv, opt.max_stage))
                        : unit_coherence_check(arrow, arrow_functor(random_arrow(2)),
                                               arrow_functor(random_arrow(2)));
      ++ran;
      if (!r.ok) {
        ++failed;
        if (first.empty()) first = r.detail;
      }
    }
  });

  RunOutcome out;
  out.report = json{{"schema", kReportSchema}, {"command", "laws"},
                    {"seed", opt.seed},        {"cases", opt.cases},
                    {"checks", checks},        {"timing_ms", 0}};
  out.exit_code = all_ok ? kExitOk : kExitUnmet;
  return out;
}

/// Runs the stability suite for the instance's profile.
inline RunOutcome cmd_stability(const WfsSpec& spec, const HarnessConfig& cfg) {
  StabilitySuiteReport suite = run_stability_suite(spec, cfg);
  json checks = json::array();
  for (const auto& c : suite.checks) checks.push_back(detail_cmd::check_to_json(c));
  RunOutcome out;
  out.report = json{{"schema", kReportSchema},
                    {"command", "stability"},
                    {"profile", spec.name},
                    {"seed", cfg.seed},
                    {"num_random_cases", cfg.num_random_cases},
                    {"max_set_size", cfg.max_set_size},
                    {"checks", checks},
                    {"timing_ms", 0}};
  out.exit_code = suite.ok() ? kExitOk : kExitUnmet;
  return out;
}

/// Decides the 2-categorical lifting for the instance's named 1-cells.
inline RunOutcome cmd_twocat_lift(const InstanceDocument& doc) {
  if (doc.base != "twocat") throw InstanceError("/base", "twocat-lift requires the twocat base");
  return cmd_lift(doc);
}

}  // namespace soa

#endif  // SOA_COMMANDS_HPP
