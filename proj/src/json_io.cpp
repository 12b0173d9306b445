#include "allpay/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace allpay {
namespace {

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from_json(const Json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) v(i++) = x.get<double>();
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json profile_to_json(const AuctionProfile& profile) {
  Json j;
  j["budgets"] = {profile.budgets(0), profile.budgets(1)};
  Json rows = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json row = Json::array();
    for (int c = 0; c < profile.n_items; ++c) row.push_back(profile.values(i, c));
    rows.push_back(row);
  }
  j["values"] = rows;
  return j;
}

AuctionProfile profile_from_json(const Json& j) {
  try {
    AuctionProfile p;
    const auto& budgets = j.at("budgets");
    const auto& values = j.at("values");
    if (budgets.size() != 2 || values.size() != 2)
      throw AuctionError(ErrorKind::invalid_profile,
                         "budgets must have 2 entries and values 2 rows");
    p.budgets << budgets[0].get<double>(), budgets[1].get<double>();
    size_t n = values[0].size();
    if (values[1].size() != n)
      throw AuctionError(ErrorKind::invalid_profile, "value rows have mismatched lengths");
    p.n_items = static_cast<int>(n);
    p.values.resize(2, static_cast<Eigen::Index>(n));
    for (int i = 0; i < 2; ++i)
      for (size_t c = 0; c < n; ++c)
        p.values(i, static_cast<Eigen::Index>(c)) = values[static_cast<size_t>(i)][c].get<double>();
    return validate_profile(p);
  } catch (const Json::exception& e) {
    throw AuctionError(ErrorKind::invalid_profile, std::string("malformed profile JSON: ") + e.what());
  }
}

Json strategy_to_json(const MixedStrategy& strategy) {
  Json j;
  j["owner"] = strategy.owner;
  Json atoms = Json::array();
  for (const auto& a : strategy.atoms) {
    Json e;
    e["point"] = vec_to_json(a.point);
    e["prob"] = a.prob;
    atoms.push_back(e);
  }
  j["atoms"] = atoms;
  Json segments = Json::array();
  for (const auto& s : strategy.segments) {
    Json e;
    e["a"] = vec_to_json(s.a);
    e["b"] = vec_to_json(s.b);
    e["prob"] = s.prob;
    segments.push_back(e);
  }
  j["segments"] = segments;
  return j;
}

MixedStrategy strategy_from_json(const Json& j) {
  try {
    MixedStrategy s;
    s.owner = j.at("owner").get<int>();
    if (s.owner != 1 && s.owner != 2)
      throw AuctionError(ErrorKind::invalid_parameter, "strategy owner must be 1 or 2");
    for (const auto& e : j.value("atoms", Json::array()))
      s.atoms.push_back({vec_from_json(e.at("point")), e.at("prob").get<double>()});
    for (const auto& e : j.value("segments", Json::array()))
      s.segments.push_back(
          {vec_from_json(e.at("a")), vec_from_json(e.at("b")), e.at("prob").get<double>()});
    return s;
  } catch (const Json::exception& e) {
    throw AuctionError(ErrorKind::invalid_parameter,
                       std::string("malformed strategy JSON: ") + e.what());
  }
}

Json solution_to_json(const std::string& case_label, const MixedStrategy& s1,
                      const MixedStrategy& s2) {
  Json j;
  j["case"] = case_label;
  j["strategies"] = Json::array({strategy_to_json(s1), strategy_to_json(s2)});
  return j;
}

Json certificate_to_json(const EquilibriumCertificate& cert) {
  auto player = [](const PlayerCertificate& c) {
    Json j;
    j["value"] = c.value;
    j["best_deviation"] = c.best_deviation;
    j["gain"] = c.gain;
    j["witness"] = vec_to_json(c.witness);
    j["pass"] = c.pass;
    return j;
  };
  Json j;
  j["player1"] = player(cert.player1);
  j["player2"] = player(cert.player2);
  Json config;
  config["grid_step"] = cert.config.grid_step;
  config["critical_offset"] = cert.config.critical_offset;
  config["tolerance"] = cert.config.tolerance;
  config["parallel"] = cert.config.parallel;
  j["config"] = config;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw AuctionError(ErrorKind::invalid_profile, "cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw AuctionError(ErrorKind::invalid_profile,
                       "cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw AuctionError(ErrorKind::invalid_parameter, "cannot write file: " + path);
  out << text;
}

std::string samples_to_csv(const std::vector<Vec>& draws, int dims) {
  std::string csv;
  for (int j = 0; j < dims; ++j) {
    if (j) csv += ',';
    csv += "x" + std::to_string(j + 1);
  }
  csv += '\n';
  for (const Vec& d : draws) {
    for (int j = 0; j < dims; ++j) {
      if (j) csv += ',';
      csv += format_double(d(j));
    }
    csv += '\n';
  }
  return csv;
}

std::string marginals_to_csv(const MarginalCdf& f1, const MarginalCdf& f2, int points) {
  double hi = std::max(f1.sup_support(), f2.sup_support());
  std::vector<double> xs = f1.breakpoints();
  for (double x : f2.breakpoints()) xs.push_back(x);
  xs.push_back(0.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return approx_eq(a, b); }),
           xs.end());
  // even grid, snapping onto existing breakpoints
  if (hi > 0.0) {
    std::vector<double> grid;
    for (int k = 0; k < points; ++k) {
      double x = k + 1 == points ? hi : hi * static_cast<double>(k) / (points - 1);
      auto it = std::lower_bound(xs.begin(), xs.end(), x - kTol);
      if (it == xs.end() || !approx_eq(*it, x)) grid.push_back(x);
    }
    xs.insert(xs.end(), grid.begin(), grid.end());
    std::sort(xs.begin(), xs.end());
  }

  std::string csv = "x,F1,F2\n";
  auto row = [&](double x, CdfSide side) {
    csv += format_double(x);
    csv += ',';
    csv += format_double(cdf_eval(f1, x, side));
    csv += ',';
    csv += format_double(cdf_eval(f2, x, side));
    csv += '\n';
  };
  for (double x : xs) {
    bool jump = f1.atom_mass_at(x) > 0.0 || f2.atom_mass_at(x) > 0.0;
    if (jump) row(x, CdfSide::left_limit);
    row(x, CdfSide::right_value);
  }
  return csv;
}

}  // namespace allpay
