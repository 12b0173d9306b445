#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "allpay/strategy.hpp"
#include "allpay/verify.hpp"

// Wire formats. Field order is fixed, so everything round-trips through
// nlohmann's ordered_json; doubles serialize with shortest round-trip
// precision and parse back bit-exact.
namespace allpay {

using Json = nlohmann::ordered_json;

// {"budgets":[B1,B2],"values":[[v11,...],[v21,...]]}
Json profile_to_json(const AuctionProfile& profile);
AuctionProfile profile_from_json(const Json& j);

// {"owner":1,"atoms":[{"point":[...],"prob":p}],"segments":[{"a":[...],"b":[...],"prob":p}]}
Json strategy_to_json(const MixedStrategy& strategy);
MixedStrategy strategy_from_json(const Json& j);

// Solve output: {"case":"...","strategies":[<strategy>,<strategy>]}
Json solution_to_json(const std::string& case_label, const MixedStrategy& s1,
                      const MixedStrategy& s2);

// {"player1":{"value":..,"best_deviation":..,"gain":..,"witness":[..],"pass":..},
//  "player2":{...},"config":{...}}
Json certificate_to_json(const EquilibriumCertificate& cert);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// CSV of bid vectors: header "x1[,x2[,x3]]", one row per draw, 17 significant
// digits, LF line endings.
std::string samples_to_csv(const std::vector<Vec>& draws, int dims);

// CSV "x,F1,F2" on an even grid of `points` plus every breakpoint; atoms get
// two rows (left limit, then right value) so plotted jumps are faithful.
std::string marginals_to_csv(const MarginalCdf& f1, const MarginalCdf& f2, int points = 512);

std::string format_double(double x);  // %.17g

}  // namespace allpay
