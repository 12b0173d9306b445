#include "allpay/cli.hpp"

#include <cstdio>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "allpay/json_io.hpp"
#include "allpay/single_item.hpp"
#include "allpay/three_item.hpp"
#include "allpay/two_item.hpp"
#include "allpay/verify.hpp"

namespace allpay {
namespace {

std::pair<MixedStrategy, MixedStrategy> strategies_from_file(const std::string& path) {
  Json j = load_json_file(path);
  const Json* arr = nullptr;
  if (j.is_object() && j.contains("strategies")) arr = &j["strategies"];
  else if (j.is_array()) arr = &j;
  if (!arr || arr->size() != 2)
    throw AuctionError(ErrorKind::invalid_parameter,
                       path + " must hold two strategies (solve output or a two-element array)");
  MixedStrategy a = strategy_from_json((*arr)[0]);
  MixedStrategy b = strategy_from_json((*arr)[1]);
  if (a.owner == b.owner)
    throw AuctionError(ErrorKind::invalid_parameter,
                       path + ": both strategies claim player " + std::to_string(a.owner));
  if (a.owner == 2) std::swap(a, b);
  return {a, b};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else write_text_file(out_path, text);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::no_equilibrium:
    case ErrorKind::unsupported_regime:
    case ErrorKind::construction_invalid:
      return 3;
    default:
      return 2;
  }
}

int cmd_solve(const std::string& profile_path, const std::string& out_path,
              std::optional<double> boundary_mass) {
  AuctionProfile profile = profile_from_json(load_json_file(profile_path));
  SolveResult r = solve_profile(profile, boundary_mass);
  std::cout << "case: " << r.case_label << "\n";
  emit(out_path, solution_to_json(r.case_label, r.strategy1, r.strategy2).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& profile_path, const std::string& strategies_path,
               const std::string& out_path, const VerifierConfig& config) {
  AuctionProfile profile = profile_from_json(load_json_file(profile_path));
  auto [s1, s2] = strategies_from_file(strategies_path);
  EquilibriumCertificate cert = verify_equilibrium(profile, s1, s2, config);
  emit(out_path, certificate_to_json(cert).dump(2) + "\n");
  if (!cert.pass) {
    std::cerr << "verification failed: player1 gain " << format_double(cert.player1.gain)
              << ", player2 gain " << format_double(cert.player2.gain) << "\n";
    return 1;
  }
  return 0;
}

int cmd_sample(const std::string& strategies_path, int player, int count,
               std::uint64_t seed, const std::string& out_path) {
  Json j = load_json_file(strategies_path);
  MixedStrategy s;
  if (j.is_object() && j.contains("owner")) s = strategy_from_json(j);
  else {
    auto pair = strategies_from_file(strategies_path);
    s = player == 1 ? pair.first : pair.second;
  }
  auto draws = sample(s, seed, count);
  emit(out_path, samples_to_csv(draws, s.dims()));
  return 0;
}

int cmd_marginals(const std::string& strategies_path, int item, const std::string& out_path) {
  auto [s1, s2] = strategies_from_file(strategies_path);
  if (item < 1 || item > s1.dims())
    throw AuctionError(ErrorKind::invalid_parameter,
                       "item must be between 1 and " + std::to_string(s1.dims()));
  emit(out_path, marginals_to_csv(marginal_of(s1, item - 1), marginal_of(s2, item - 1)));
  return 0;
}

int cmd_demo();

}  // namespace

SolveResult solve_profile(const AuctionProfile& profile,
                          std::optional<double> boundary_mass) {
  AuctionProfile p = validate_profile(profile);
  SolveResult r;
  switch (p.n_items) {
    case 1: {
      SingleItemCase c = classify_single(p);
      auto [s1, s2] = solve_single(p, boundary_mass);
      r = {"single-item " + to_string(c.tag), s1, s2};
      break;
    }
    case 2: {
      if (p.budgets(0) != p.budgets(1)) {
        ThresholdSet t = compute_thresholds(p);
        auto [s1, s2] = solve_two_asymmetric(p);
        r = {"two-item " + to_string(t.case_tag), s1, s2};
      } else {
        auto [s1, s2] = solve_two(p);  // symmetric or unsupported_regime
        r = {"two-item symmetric", s1, s2};
      }
      break;
    }
    default: {
      TriangleSpec spec = three_item_spec(p);
      auto [s1, s2] = solve_three(p);
      r = {"three-item " + to_string(spec.case_tag), s1, s2};
      break;
    }
  }
  return r;
}

namespace {

int cmd_demo() {
  struct Row {
    std::string name;
    AuctionProfile profile;
  };
  std::vector<Row> rows = {
      {"single pure", make_profile(1, 1, {4}, {3})},
      {"single boundary", make_profile(1.5, 1.5, {3}, {4})},
      {"single strong-high", make_profile(3, 1, {4}, {2})},
      {"single strong-low", make_profile(3, 1, {1}, {5})},
      {"single no-equilibrium", make_profile(2, 2, {4}, {3})},
      {"two symmetric", make_profile(1, 1, {3, 3}, {3, 3})},
      {"two strong-above-both", make_profile(5, 2, {3.5, 3.2}, {4, 3})},
      {"two strong-at-both", make_profile(10, 5, {3, 2}, {4, 6})},
      {"two strong-above-first", make_profile(4, 3, {5, 2}, {3.5, 2.1})},
      {"two strong-above-second", make_profile(6, 3, {3, 5}, {3.5, 4})},
      {"two invalid-region", make_profile(5, 2, {6, 5}, {4, 3})},
      {"three triangle", make_profile(6, 5, {4, 3, 3}, {4, 3, 3})},
      {"three chord", make_profile(7, 6, {6, 2, 1}, {6, 2, 1})},
  };

  std::printf("%-24s %-32s %10s %10s %12s  %s\n", "profile", "case", "u1", "u2",
              "max gain", "verdict");
  bool all_ok = true;
  for (const auto& row : rows) {
    try {
      SolveResult r = solve_profile(row.profile);
      EquilibriumCertificate cert =
          verify_equilibrium(row.profile, r.strategy1, r.strategy2, {});
      double max_gain = std::max(cert.player1.gain, cert.player2.gain);
      std::printf("%-24s %-32s %10.6f %10.6f %12.3e  %s\n", row.name.c_str(),
                  r.case_label.c_str(), cert.player1.value, cert.player2.value, max_gain,
                  cert.pass ? "pass" : "FAIL");
      all_ok = all_ok && cert.pass;
    } catch (const AuctionError& e) {
      bool expected_refusal = exit_code_for(e.kind()) == 3;
      std::printf("%-24s %-32s %10s %10s %12s  %s\n", row.name.c_str(), e.what(), "-", "-",
                  "-", expected_refusal ? "refused" : "ERROR");
      all_ok = all_ok && expected_refusal;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Equilibrium toolkit for two-player budget-constrained all-pay auctions"};
  app.require_subcommand(1);

  std::string profile_path, strategies_path, out_path;
  std::optional<double> boundary_mass;
  VerifierConfig config;
  int player = 1, item = 1, count = 1;
  std::uint64_t seed = 42;

  auto* solve = app.add_subcommand("solve", "construct the equilibrium for a profile");
  solve->add_option("--profile", profile_path, "profile JSON path")->required();
  solve->add_option("--out", out_path, "output path for the strategy JSON (default stdout)");
  solve->add_option("--boundary-mass", boundary_mass,
                    "probability on 0 for the boundary family's mixing player");

  auto* verify = app.add_subcommand("verify", "certify a strategy pair");
  verify->add_option("--profile", profile_path, "profile JSON path")->required();
  verify->add_option("--strategies", strategies_path, "strategy-pair JSON path")->required();
  verify->add_option("--out", out_path, "output path for the certificate JSON (default stdout)");
  verify->add_option("--grid-step", config.grid_step, "search grid step");
  verify->add_option("--tolerance", config.tolerance, "gain tolerance at critical points");
  verify->add_flag("--parallel", config.parallel, "evaluate candidates in parallel");

  auto* smp = app.add_subcommand("sample", "draw i.i.d. bid vectors from a strategy");
  smp->add_option("--strategies", strategies_path, "strategy or strategy-pair JSON path")->required();
  smp->add_option("--player", player, "which strategy of a pair to sample (1 or 2)")
      ->check(CLI::Range(1, 2));
  smp->add_option("--count", count, "number of draws")->required()->check(CLI::PositiveNumber);
  smp->add_option("--seed", seed, "RNG seed");
  smp->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* marg = app.add_subcommand("marginals", "export both players' CDFs on one item as CSV");
  marg->add_option("--strategies", strategies_path, "strategy-pair JSON path")->required();
  marg->add_option("--item", item, "item index, 1-based");
  marg->add_option("--out", out_path, "output CSV path (default stdout)");

  app.add_subcommand("demo", "solve and certify a set of built-in example profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(profile_path, out_path, boundary_mass);
    if (verify->parsed()) return cmd_verify(profile_path, strategies_path, out_path, config);
    if (smp->parsed()) return cmd_sample(strategies_path, player, count, seed, out_path);
    if (marg->parsed()) return cmd_marginals(strategies_path, item, out_path);
    return cmd_demo();
  } catch (const AuctionError& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace allpay
