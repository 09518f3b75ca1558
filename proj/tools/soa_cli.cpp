#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "soa/commands.hpp"

namespace {

using soa::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw soa::InstanceError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw soa::InstanceError(path, ex.what());
  }
}

void emit(const soa::RunOutcome& out, const std::optional<std::string>& out_path, bool timing,
          std::chrono::steady_clock::time_point started) {
  json report = out.report;
  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    report["timing_ms"] = ms;
  }
  std::string text = soa::dump_report(report);
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw soa::InstanceError(*out_path, "cannot write file");
    f << text;
    std::cout << "report written to " << *out_path << "\n";
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-set small object argument engine"};
  app.require_subcommand(1);

  std::string instance_path;
  std::optional<std::string> out_path;
  bool timing = false;
  std::optional<int> stage_cap;
  bool skip_solved = false;
  std::optional<std::uint64_t> seed;
  bool witnesses = false;

  auto add_common = [&](CLI::App* cmd, bool needs_instance) {
    if (needs_instance)
      cmd->add_option("instance", instance_path, "instance file (JSON)")->required();
    cmd->add_option("--out", out_path, "write the report to this path");
    cmd->add_flag("--timing", timing, "record wall-clock time in the report");
  };

  CLI::App* factorize = app.add_subcommand("factorize", "run the staged factorization");
  add_common(factorize, true);
  factorize->add_option("--stage-cap", stage_cap, "override the outer stage bound");
  factorize->add_flag("--skip-solved", skip_solved, "skip already-solved lifting problems");
  factorize->add_option("--seed", seed, "verification sampling seed");

  CLI::App* lift = app.add_subcommand("lift", "decide the enriched lifting relation");
  add_common(lift, true);
  lift->add_flag("--witnesses", witnesses, "include the per-square diagonal table");

  CLI::App* laws = app.add_subcommand("laws", "verify the action laws on a generated grid");
  add_common(laws, false);
  std::string selected = "assoc,unit,adjunction";
  int cases = 100;
  std::size_t max_stage = 3;
  laws->add_option("--check", selected, "comma list from assoc,unit,adjunction");
  laws->add_option("--cases", cases, "cases per law");
  laws->add_option("--max-stage", max_stage, "stage size bound");
  laws->add_option("--seed", seed, "grid seed");

  CLI::App* stability = app.add_subcommand("stability", "run the stability property suite");
  add_common(stability, false);
  std::string profile = "set-weak";
  int random_cases = 200;
  std::size_t max_set_size = 3;
  stability->add_option("--profile", profile, "set-weak or set-ortho");
  stability->add_option("--cases", random_cases, "random cases per check");
  stability->add_option("--max-set-size", max_set_size, "set size bound");
  stability->add_option("--seed", seed, "harness seed");

  CLI::App* twl = app.add_subcommand("twocat-lift", "decide lifting in a finite 2-category");
  add_common(twl, true);

  CLI11_PARSE(app, argc, argv);
  auto started = std::chrono::steady_clock::now();

  try {
    if (factorize->parsed()) {
      soa::InstanceDocument doc = soa::instance_from_json(load_json(instance_path));
      if (stage_cap) doc.config.stage_cap = *stage_cap;
      if (skip_solved) doc.config.skip_solved = true;
      if (seed) doc.config.seed = *seed;
      doc.config.validate();
      soa::RunOutcome out = soa::cmd_factorize(doc);
      emit(out, out_path, timing, started);
      return out.exit_code;
    }
    if (lift->parsed()) {
      soa::InstanceDocument doc = soa::instance_from_json(load_json(instance_path));
      soa::RunOutcome out = soa::cmd_lift(doc, witnesses);
      emit(out, out_path, timing, started);
      return out.exit_code;
    }
    if (laws->parsed()) {
      soa::LawsOptions opt;
      opt.assoc = selected.find("assoc") != std::string::npos;
      opt.unit = selected.find("unit") != std::string::npos;
      opt.adjunction = selected.find("adjunction") != std::string::npos;
      opt.cases = cases;
      opt.max_stage = max_stage;
      if (seed) opt.seed = *seed;
      soa::RunOutcome out = soa::cmd_laws(opt);
      emit(out, out_path, timing, started);
      return out.exit_code;
    }
    if (stability->parsed()) {
      auto spec = soa::builtin_profile(profile);
      if (!spec) {
        std::cerr << "error: unknown profile '" << profile << "'\n";
        return soa::kExitInput;
      }
      soa::HarnessConfig cfg;
      cfg.num_random_cases = random_cases;
      cfg.max_set_size = max_set_size;
      if (seed) cfg.seed = *seed;
      cfg.profile = profile;
      soa::RunOutcome out = soa::cmd_stability(*spec, cfg);
      emit(out, out_path, timing, started);
      return out.exit_code;
    }
    if (twl->parsed()) {
      soa::InstanceDocument doc = soa::instance_from_json(load_json(instance_path));
      soa::RunOutcome out = soa::cmd_twocat_lift(doc);
      emit(out, out_path, timing, started);
      return out.exit_code;
    }
  } catch (const soa::InstanceError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return soa::kExitInput;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return soa::kExitInput;
  }
  return soa::kExitInput;
}
