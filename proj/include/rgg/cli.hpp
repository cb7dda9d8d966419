#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgg/generator.hpp"
#include "rgg/io.hpp"
#include "rgg/iterated_positive.hpp"
#include "rgg/iterated_tree.hpp"
#include "rgg/oracle.hpp"
#include "rgg/regret_edge.hpp"

namespace rgg {
namespace cli {

// Exit codes: 0 success, 1 diagnostics, 2 resource limit, 3 solver/oracle
// disagreement.
enum ExitCode : int {
  kOk = 0,
  kDiagnostics = 1,
  kResource = 2,
  kDisagreement = 3,
};

namespace detail {

inline std::string read_input(const std::string& file, std::istream& in) {
  if (file == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(file);
  if (!f) throw InputError("cannot open file: " + file);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline int emit_diagnostics(const std::string& command,
                            const std::vector<Diagnostic>& diags,
                            std::ostream& out) {
  Json doc;
  doc["command"] = command;
  doc["diagnostics"] = diagnostics_to_json(diags);
  out << doc.dump(2) << "\n";
  return kDiagnostics;
}

inline std::string join(const std::vector<std::string>& args) {
  std::string s = "rgg";
  for (const auto& a : args) s += " " + a;
  return s;
}

inline Json value_json(ExtendedNat v) {
  return v.is_infinite() ? Json("inf") : Json(v.finite_value());
}

inline Json ranks_json(const IteratedReport& report) {
  Json arr = Json::array();
  for (const auto& r : report.ranks) {
    Json j;
    j["regret1"] = value_json(r.regret1);
    j["regret2"] = value_json(r.regret2);
    j["edges_removed"] = r.edges_removed;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace detail

// Runs one command line (without the program name). All reports go to
// `out` as JSON; `in` backs the "-" file argument.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::istream& in = std::cin) {
  const std::string command = detail::join(args);

  CLI::App app{"regret and iterated-regret solver for reachability games"};
  app.require_subcommand(1);

  std::string file = "-";
  int player = 1;
  std::size_t cap = 1'000'000;
  std::uint64_t bound = 0;
  // gen options
  std::uint64_t seed = 1;
  std::size_t positions = 6;
  std::uint64_t max_weight = 3;
  bool gen_tree = false, gen_positive = false;

  auto* validate_cmd = app.add_subcommand("validate", "check an arena document");
  validate_cmd->add_option("file", file);

  auto* minmax_cmd =
      app.add_subcommand("minmax", "min-max value of a target-weighted arena");
  minmax_cmd->add_option("--player", player)->check(CLI::Range(1, 2));
  minmax_cmd->add_option("file", file);

  auto* regret_cmd = app.add_subcommand("regret", "minimal regret and witness");
  regret_cmd->add_option("--player", player)->check(CLI::Range(1, 2));
  regret_cmd->add_option("file", file);

  auto* iterated_cmd =
      app.add_subcommand("iterated", "iterated regret for both players");
  iterated_cmd->add_option("--cap", cap, "unfolding node cap");
  iterated_cmd->add_option("--bound", bound, "override the unfolding bound");
  iterated_cmd->add_option("file", file);

  auto* matrix_cmd =
      app.add_subcommand("matrix", "iterated regret on a penalty matrix");
  matrix_cmd->add_option("file", file);

  auto* check_cmd =
      app.add_subcommand("check", "compare the solver against the oracle");
  check_cmd->add_option("--player", player)->check(CLI::Range(1, 2));
  check_cmd->add_option("--cap", cap, "oracle enumeration cap");
  check_cmd->add_option("file", file);

  auto* gen_cmd = app.add_subcommand("gen", "emit a random arena document");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--positions", positions);
  gen_cmd->add_option("--max-weight", max_weight);
  gen_cmd->add_flag("--tree", gen_tree, "generate a tree arena");
  gen_cmd->add_flag("--positive", gen_positive, "strictly positive weights");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return detail::emit_diagnostics(command, {{"arguments", e.what()}}, out);
  }

  const PlayerId who = player == 1 ? PlayerId::p1 : PlayerId::p2;
  try {
    if (gen_cmd->parsed()) {
      SplitMix64 rng(seed);
      ArenaData data;
      if (gen_tree) {
        gen::TreeOptions opt;
        opt.max_leaves = positions;
        opt.max_weight = max_weight;
        if (gen_positive) opt.min_weight = 1;
        data = gen::random_tree(rng, opt);
      } else if (gen_positive) {
        gen::PositiveOptions opt;
        opt.positions = positions;
        opt.max_weight = std::max<std::uint64_t>(1, max_weight);
        data = gen::random_positive_arena(rng, opt);
      } else {
        gen::TwaOptions opt;
        opt.positions = positions;
        opt.max_weight = max_weight;
        data = gen::random_twa(rng, opt);
      }
      out << arena_to_json(data).dump(2) << "\n";
      return kOk;
    }

    const std::string text = detail::read_input(file, in);

    if (matrix_cmd->parsed()) {
      auto parsed = parse_matrix_document(text);
      if (!parsed.ok())
        return detail::emit_diagnostics(command, parsed.diagnostics, out);
      const auto result = iterate_matrix(*parsed.value);
      Json doc;
      doc["command"] = command;
      doc["digest"] = digest(text);
      doc["ranks"] = Json::array();
      for (const auto& r : result.ranks) {
        Json j;
        j["regret1"] = r.regret1;
        j["regret2"] = r.regret2;
        j["rows"] = r.survivors.rows;
        j["cols"] = r.survivors.cols;
        doc["ranks"].push_back(j);
      }
      doc["fixpoint_rank"] = result.fixpoint_rank;
      doc["fixpoint"]["rows"] = result.fixpoint().rows;
      doc["fixpoint"]["cols"] = result.fixpoint().cols;
      out << doc.dump(2) << "\n";
      return kOk;
    }

    auto parsed = parse_arena_document(text);
    if (!parsed.ok())
      return detail::emit_diagnostics(command, parsed.diagnostics, out);
    const ArenaData& data = *parsed.value;
    const Arena arena = Arena::from_data(data);
    Json doc;
    doc["command"] = command;
    doc["digest"] = arena_digest(data);

    if (validate_cmd->parsed()) {
      doc["valid"] = true;
      auto twa_issues = TargetWeightedArena::twa_violations(arena);
      doc["target_weighted"] = twa_issues.empty();
      doc["tree"] = arena.is_tree();
      doc["positive"] = arena.all_weights_positive();
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (minmax_cmd->parsed()) {
      auto twa_issues = TargetWeightedArena::twa_violations(arena);
      if (!twa_issues.empty()) {
        std::vector<Diagnostic> diags;
        for (const auto& v : twa_issues) diags.push_back({v.subject, v.message});
        return detail::emit_diagnostics(command, diags, out);
      }
      const auto twa = TargetWeightedArena::from_edge_weights(arena);
      doc["player"] = player;
      doc["value"] = detail::value_json(minmax_value(twa, who));
      doc["witness"] = strategy_to_json(minmax_strategy(twa, who), arena);
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (regret_cmd->parsed()) {
      const bool twa_shape = TargetWeightedArena::twa_violations(arena).empty();
      const RegretReport report = solve_regret(arena, who);
      doc["player"] = player;
      doc["mode"] = twa_shape ? "target-weighted" : "edge-weighted";
      doc["regret"] = detail::value_json(report.regret);
      doc["winning"] = report.winning;
      doc["witness"] = strategy_to_json(report.witness, arena);
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (iterated_cmd->parsed()) {
      if (arena.is_tree()) {
        const auto report = iterated_regret_tree(arena);
        doc["mode"] = "tree";
        doc["ranks"] = detail::ranks_json(report);
        doc["fixpoint_rank"] = report.fixpoint_rank;
        doc["witness1"] = strategy_to_json(report.witness1, arena);
        doc["witness2"] = strategy_to_json(report.witness2, arena);
        Json surv = Json::array();
        for (int v = 0; v < static_cast<int>(arena.size()); ++v)
          for (int c : arena.successors(v))
            if (!report.deleted_at.count({v, c}))
              surv.push_back(arena.id(v) + "->" + arena.id(c));
        doc["surviving_edges"] = surv;
      } else {
        UnfoldConfig config;
        config.node_cap = cap;
        if (bound > 0) config.bound_override = bound;
        const auto report = iterated_regret_positive(arena, config);
        doc["mode"] = "positive";
        doc["bound"] = report.bound_used;
        doc["ranks"] = detail::ranks_json(report.tree);
        doc["fixpoint_rank"] = report.tree.fixpoint_rank;
        doc["witness1"] = strategy_to_json(report.witness1, arena);
        doc["witness2"] = strategy_to_json(report.witness2, arena);
      }
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (check_cmd->parsed()) {
      bool agree = true;
      if (arena.is_tree()) {
        const auto solver = iterated_regret_tree(arena);
        const auto tree = oracle::PlayTree::from_leaf_twa(edge_tree_to_leaf_twa(arena));
        const auto brute = oracle::iterated_bruteforce(tree, 64, cap);
        agree = solver.fixpoint_rank == brute.fixpoint_rank &&
                solver.ranks.size() == brute.ranks.size();
        for (std::size_t k = 0; agree && k < solver.ranks.size(); ++k) {
          agree = solver.ranks[k].regret1 == brute.ranks[k].regret1 &&
                  solver.ranks[k].regret2 == brute.ranks[k].regret2;
        }
        doc["mode"] = "tree";
        doc["solver_ranks"] = detail::ranks_json(solver);
        Json oracle_ranks = Json::array();
        for (const auto& r : brute.ranks) {
          Json j;
          j["regret1"] = detail::value_json(r.regret1);
          j["regret2"] = detail::value_json(r.regret2);
          oracle_ranks.push_back(j);
        }
        doc["oracle_ranks"] = oracle_ranks;
      } else {
        const auto solver = solve_regret(arena, who);
        const auto brute = oracle::graph_regret_bruteforce(arena, who, cap, cap);
        agree = solver.regret == brute;
        doc["mode"] = "regret";
        doc["player"] = player;
        doc["solver"] = detail::value_json(solver.regret);
        doc["oracle"] = detail::value_json(brute);
      }
      doc["agree"] = agree;
      out << doc.dump(2) << "\n";
      return agree ? kOk : kDisagreement;
    }
  } catch (const ResourceError& e) {
    Json err;
    err["command"] = command;
    err["error"] = "resource";
    err["message"] = e.what();
    err["required"] = e.required;
    err["cap"] = e.cap;
    out << err.dump(2) << "\n";
    return kResource;
  } catch (const InputError& e) {
    return detail::emit_diagnostics(command, {{"input", e.what()}}, out);
  }
  return detail::emit_diagnostics(command, {{"arguments", "unknown command"}}, out);
}

}  // namespace cli
}  // namespace rgg
