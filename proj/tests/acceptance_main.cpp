// End-to-end acceptance suite: every check pins the tolerances the library
// commits to, one printed line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "allpay/cli.hpp"
#include "allpay/json_io.hpp"
#include "allpay/single_item.hpp"
#include "allpay/three_item.hpp"
#include "allpay/two_item.hpp"
#include "allpay/verify.hpp"
#include "test_util.hpp"

using namespace allpay;
using testing::Rng;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    require(std::abs(got - want) <= tol,
            what + ": got " + format_double(got) + ", want " + format_double(want));
  }
};

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// --- 1. asymmetric single-item reproduction --------------------------------

void criterion_single_item_mixture(Checker& c) {
  AuctionProfile p = make_profile(3, 1, {4}, {2});
  auto [s, w] = solve_single(p);
  MarginalCdf fs = marginal_of(s, 0);
  c.require(fs.pieces().size() == 1, "strong marginal should be one linear piece");
  c.near(fs.pieces()[0].density, 0.5, 1e-12, "strong marginal slope");
  c.near(fs.atom_mass_at(1.0), 0.5, 1e-12, "strong atom at the cap");
  MarginalCdf fw = marginal_of(w, 0);
  c.near(fw.atom_mass_at(0.0), 0.75, 1e-12, "weak atom at zero");

  auto [u1, u2] = single_equilibrium_value(p);
  c.near(u1, 3.0, 1e-9, "strong closed-form value");
  c.near(u2, 0.0, 1e-9, "weak closed-form value");
  auto [e1, e2] = equilibrium_value(p, s, w);
  c.near(e1, 3.0, 1e-9, "strong integrated value");
  c.near(e2, 0.0, 1e-9, "weak integrated value");

  EquilibriumCertificate cert = verify_equilibrium(p, s, w, {});
  c.require(cert.player1.critical_gain <= 1e-6, "strong critical-point gain above 1e-6");
  c.require(cert.player2.critical_gain <= 1e-6, "weak critical-point gain above 1e-6");
}

// --- 2. pure-case utilities -------------------------------------------------

void criterion_pure_case(Checker& c) {
  AuctionProfile p = make_profile(1, 1, {4}, {3});
  auto [s1, s2] = solve_single(p);
  c.require(s1.atoms.size() == 1 && s1.atoms[0].point(0) == 1.0, "player 1 atom at 1");
  c.require(s2.atoms.size() == 1 && s2.atoms[0].point(0) == 1.0, "player 2 atom at 1");
  auto [u1, u2] = single_equilibrium_value(p);
  c.require(u1 == 1.0 && u2 == 0.5, "values must be exactly (1, 0.5)");
  auto [e1, e2] = equilibrium_value(p, s1, s2);
  c.require(e1 == 1.0 && e2 == 0.5, "integrated values must be exactly (1, 0.5)");
}

// --- 3. non-existence regime ------------------------------------------------

void criterion_non_existence(Checker& c) {
  AuctionProfile p = make_profile(2, 2, {4}, {3});
  bool refused = false;
  try {
    solve_single(p);
  } catch (const AuctionError& e) {
    refused = e.kind() == ErrorKind::no_equilibrium;
  }
  c.require(refused, "solver must refuse with NoEquilibrium");

  MixedStrategy c1{1, {{vec({2.0}), 1.0}}, {}};
  MixedStrategy c2{2, {{vec({2.0}), 1.0}}, {}};
  EquilibriumCertificate cert = verify_equilibrium(p, c1, c2, {});
  c.require(!cert.pass, "pure full-budget pair must fail");
  c.near(cert.player2.gain, 0.5, 1e-12, "player 2 deviation gain");
  c.require(cert.player2.witness(0) == 0.0, "witness bid should be 0");
}

// --- 4. fully symmetric two-item instance -----------------------------------

void criterion_two_symmetric(Checker& c) {
  AuctionProfile p = testing::profile2(1, 1, 3, 3, 3, 3);
  auto [s1, s2] = solve_two_symmetric(p);
  for (const MixedStrategy* s : {&s1, &s2})
    for (int j = 0; j < 2; ++j) {
      MarginalCdf m = marginal_of(*s, j);
      c.require(m.atoms().empty(), "marginal must be atomless");
      c.require(m.pieces().size() == 1, "marginal must be a single piece");
      c.near(m.pieces()[0].density, 1.0, 1e-12, "marginal slope");
      c.near(m.sup_support(), 1.0, 1e-12, "marginal support top");
    }
  // the induced single-item game is solved by the pure pair at the cap instead
  auto [r1, r2] = solve_single(make_profile(1, 1, {3}, {3}));
  c.require(r1.atoms.size() == 1 && r1.atoms[0].point(0) == 1.0,
            "single-item equilibrium should be the atom at 1");
  c.require(cdf_sup_distance(marginal_of(s1, 0), marginal_of(r1, 0)) > 0.4,
            "joint marginal must differ from the single-item equilibrium");
  (void)r2;
  EquilibriumCertificate cert = verify_equilibrium(p, s1, s2, {});
  c.require(cert.pass, "certificate must pass");
  c.require(cert.player1.critical_gain <= 1e-6 && cert.player2.critical_gain <= 1e-6,
            "gains above 1e-6");
}

// --- 5. two-item asymmetric instance ----------------------------------------

void criterion_two_asymmetric(Checker& c) {
  AuctionProfile p = testing::profile2(5, 2, 3.5, 3.2, 4, 3);
  ThresholdSet t = compute_thresholds(p);
  c.near(t.T1, 4.0 / 3.0, 1e-12, "T1");
  c.near(t.T2, 1.5, 1e-12, "T2");
  c.near(t.T3, 0.6875, 1e-12, "T3");
  c.near(t.T4, 2.0 - 48.0 / 35.0, 1e-12, "T4");

  auto [s, w] = solve_two_asymmetric(p);
  c.near(s.total_mass(), 1.0, 1e-12, "strong total mass");
  c.near(w.total_mass(), 1.0, 1e-12, "weak total mass");

  auto [u1, u2] = equilibrium_value(p, s, w);
  c.near(u1, 2.7, 1e-9, "strong equilibrium value");
  c.near(u2, 0.0, 1e-9, "weak equilibrium value");

  for (int j = 0; j < 2; ++j) {
    AuctionProfile sub =
        make_profile(p.budgets(0), p.budgets(1), {p.values(0, j)}, {p.values(1, j)});
    auto [r1, r2] = solve_single(sub);
    c.require(cdf_sup_distance(marginal_of(s, j), marginal_of(r1, 0)) <= 1e-9,
              "strong marginal differs from the single-item equilibrium on item " +
                  std::to_string(j + 1));
    c.require(cdf_sup_distance(marginal_of(w, j), marginal_of(r2, 0)) <= 1e-9,
              "weak marginal differs from the single-item equilibrium on item " +
                  std::to_string(j + 1));
  }
  c.require(verify_equilibrium(p, s, w, {}).pass, "certificate must pass");
}

// --- 6. invalid-region detection --------------------------------------------

void criterion_invalid_region(Checker& c) {
  bool refused = false;
  std::string message;
  try {
    compute_thresholds(testing::profile2(5, 2, 6, 5, 4, 3));
  } catch (const AuctionError& e) {
    refused = e.kind() == ErrorKind::construction_invalid;
    message = e.what();
  }
  c.require(refused, "must refuse with ConstructionInvalid");
  c.require(message.find("T3") != std::string::npos, "refusal must cite T3");
}

// --- 7. three-item instances -------------------------------------------------

void check_three(Checker& c, const AuctionProfile& p, const std::string& label) {
  auto [s1, s2] = solve_three(p);
  for (int j = 0; j < 3; ++j) {
    MarginalCdf m = marginal_of(s1, j);
    double v = p.values(0, j);
    for (int k = 0; k <= 32; ++k) {
      double x = v * k / 32.0;
      c.near(m.value(x), x / v, 1e-9, label + " marginal on item " + std::to_string(j + 1));
    }
  }
  auto [u1, u2] = equilibrium_value(p, s1, s2);
  c.near(u1, 0.0, 1e-9, label + " player 1 value");
  c.near(u2, 0.0, 1e-9, label + " player 2 value");
  c.require(verify_equilibrium(p, s1, s2, {}).pass, label + " certificate must pass");
}

void criterion_three_item(Checker& c) {
  AuctionProfile tri = testing::profile3(6, 5, 4, 3, 3);
  TriangleSpec spec = three_item_spec(tri);
  c.near(spec.seg_probs(0), 0.25, 1e-12, "P_AB");
  c.near(spec.seg_probs(1), 0.25, 1e-12, "P_BC");
  c.near(spec.seg_probs(2), 0.5, 1e-12, "P_CA");
  check_three(c, tri, "triangle");

  AuctionProfile chord = testing::profile3(7, 6, 6, 2, 1);
  TriangleSpec cspec = three_item_spec(chord);
  c.require(cspec.case_tag == ThreeItemCaseTag::chord, "chord case expected");
  auto [s1, s2] = solve_three(chord);
  c.require(s1.segments.size() == 1 && s1.atoms.empty(), "chord is one segment");
  c.require((s1.segments[0].a - vec({6, 0, 0})).norm() < 1e-12 &&
                (s1.segments[0].b - vec({0, 2, 1})).norm() < 1e-12 &&
                s1.segments[0].prob == 1.0,
            "chord endpoints");
  (void)s2;
  check_three(c, chord, "chord");
}

// --- 8. randomized property suite --------------------------------------------

void criterion_property_suite(Checker& c) {
  auto start = std::chrono::steady_clock::now();
  Rng rng(20260809);
  VerifierConfig config;  // grid 0.005, tolerance 1e-6

  struct Tagged {
    const char* name;
    std::function<AuctionProfile(Rng&)> gen;
    std::function<std::pair<MixedStrategy, MixedStrategy>(const AuctionProfile&)> solve;
  };
  auto single = [](const AuctionProfile& p) { return solve_single(p); };
  auto two = [](const AuctionProfile& p) { return solve_two(p); };
  auto three = [](const AuctionProfile& p) { return solve_three(p); };
  std::vector<Tagged> tags = {
      {"single-pure", testing::random_single_pure, single},
      {"single-boundary", testing::random_single_boundary, single},
      {"single-strong-high", testing::random_single_strong_high, single},
      {"single-strong-low", testing::random_single_strong_low, single},
      {"two-symmetric", testing::random_two_symmetric, two},
      {"two-above-both", testing::random_two_above_both, two},
      {"two-at-both", testing::random_two_at_both, two},
      {"two-above-first", testing::random_two_above_first, two},
      {"two-above-second", testing::random_two_above_second, two},
      {"three-triangle", testing::random_three_triangle, three},
      {"three-chord", testing::random_three_chord, three},
  };

  const int kPerTag = 500;
  for (const Tagged& tag : tags) {
    for (int it = 0; it < kPerTag && c.ok; ++it) {
      AuctionProfile p = tag.gen(rng);
      std::pair<MixedStrategy, MixedStrategy> pair;
      try {
        pair = tag.solve(p);
      } catch (const AuctionError& e) {
        c.require(false, std::string(tag.name) + " solver refused: " + e.what());
        break;
      }
      try {
        validate_strategy(pair.first, p);
        validate_strategy(pair.second, p);
      } catch (const AuctionError& e) {
        c.require(false, std::string(tag.name) + " invalid strategy: " + e.what());
        break;
      }
      EquilibriumCertificate cert = verify_equilibrium(p, pair.first, pair.second, config);
      bool fine = cert.player1.critical_gain <= config.tolerance &&
                  cert.player2.critical_gain <= config.tolerance &&
                  cert.player1.gain <= 2 * config.grid_step &&
                  cert.player2.gain <= 2 * config.grid_step &&
                  cert.player1.gain >= -1e-9 && cert.player2.gain >= -1e-9;
      if (!fine) {
        std::ostringstream ss;
        ss << tag.name << " iteration " << it << " gains (" << cert.player1.critical_gain
           << ", " << cert.player2.critical_gain << ") budgets (" << p.budgets(0) << ", "
           << p.budgets(1) << ")";
        c.require(false, ss.str());
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(secs <= 300.0, "suite exceeded five minutes: " + std::to_string(secs) + "s");
  std::printf("       (5500 profiles in %.1fs)\n", secs);
}

// --- 9. Monte-Carlo cross-check ----------------------------------------------

void criterion_monte_carlo(Checker& c) {
  Rng rng(424242);
  int done = 0;
  while (done < 50) {
    AuctionProfile p;
    MixedStrategy opponent;
    int which = done % 5;
    if (which == 0) {
      p = testing::random_single_strong_high(rng);
      opponent = solve_single(p).second;
    } else if (which == 1) {
      p = testing::random_two_above_both(rng);
      opponent = solve_two_asymmetric(p).first;
    } else if (which == 2) {
      p = testing::random_three_triangle(rng);
      opponent = solve_three(p).second;
    } else {
      // an arbitrary mixture, not an equilibrium
      p = which == 3 ? testing::random_two_at_both(rng) : testing::random_single_pure(rng);
      opponent = testing::random_mixture(rng, p, 2);
    }
    int player = opponent.owner == 1 ? 2 : 1;
    Vec bid(p.n_items);
    double left = p.budget(player);
    for (int j = 0; j < p.n_items; ++j) {
      bid(j) = rng.uniform(0.0, left / p.n_items);
      left -= bid(j);
    }
    double exact = pure_vs_mixed_utility(p, player, bid, opponent);
    auto [mean, se] = testing::mc_utility(p, player, bid, opponent, 1000000,
                                          777000 + static_cast<std::uint64_t>(done));
    double slack = 4.0 * se + 1e-9 * (1.0 + std::abs(exact));
    if (std::abs(exact - mean) > slack) {
      std::ostringstream ss;
      ss << "triple " << done << ": exact " << exact << " vs MC " << mean << " (se " << se
         << ")";
      c.require(false, ss.str());
      return;
    }
    ++done;
  }
}

// --- 10. determinism -----------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism(Checker& c) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "allpay_acceptance";
  fs::create_directories(dir);
  auto at = [&](const std::string& n) { return (dir / n).string(); };

  std::ofstream(at("profile.json")) << R"({"budgets":[5,2],"values":[[3.5,3.2],[4,3]]})";
  auto run = [&](std::initializer_list<std::string> args) {
    std::vector<const char*> argv = {"allpay"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
  };

  c.require(run({"solve", "--profile", at("profile.json"), "--out", at("sol.json")}) == 0,
            "solve failed");
  for (int k = 0; k < 2; ++k) {
    c.require(run({"sample", "--strategies", at("sol.json"), "--count", "2000", "--seed",
                   "42", "--out", at("samples" + std::to_string(k) + ".csv")}) == 0,
              "sample failed");
    c.require(run({"verify", "--profile", at("profile.json"), "--strategies", at("sol.json"),
                   "--out", at("cert" + std::to_string(k) + ".json")}) == 0,
              "verify failed");
  }
  c.require(!slurp(at("samples0.csv")).empty(), "empty sample output");
  c.require(slurp(at("samples0.csv")) == slurp(at("samples1.csv")),
            "sample CSVs differ between runs");
  c.require(slurp(at("cert0.json")) == slurp(at("cert1.json")),
            "certificates differ between runs");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    std::function<void(Checker&)> fn;
  };
  std::vector<Entry> criteria = {
      {"single-item mixed equilibrium reproduction", criterion_single_item_mixture},
      {"pure-case utilities", criterion_pure_case},
      {"non-existence detection and refutation", criterion_non_existence},
      {"symmetric two-item equilibrium and marginal contrast", criterion_two_symmetric},
      {"asymmetric two-item thresholds, masses, values, marginals", criterion_two_asymmetric},
      {"invalid construction region detection", criterion_invalid_region},
      {"three-item triangle and chord constructions", criterion_three_item},
      {"randomized property suite (500 profiles per construction)", criterion_property_suite},
      {"Monte-Carlo utility cross-check (50 triples)", criterion_monte_carlo},
      {"byte-identical outputs under fixed seeds", criterion_determinism},
  };

  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Checker c;
    try {
      criteria[k].fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("unexpected exception: ") + e.what());
    }
    std::printf("[%s] %2zu. %s%s%s\n", c.ok ? "PASS" : "FAIL", k + 1, criteria[k].title,
                c.ok ? "" : " -- ", c.ok ? "" : c.detail.c_str());
    if (!c.ok) ++failures;
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
