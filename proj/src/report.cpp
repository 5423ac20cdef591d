#include "divmatch/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace divmatch {

using nlohmann::json;

json solution_to_json(const Instance& inst, const SolveReport& report) {
  json doc;
  doc["mode"] = to_string(report.layout.mode);
  doc["termination"] = to_string(report.termination);

  doc["features"] = json::array();
  for (const auto& f : inst.schema.features) doc["features"].push_back({{"name", f.name}, {"values", f.values}});

  const std::size_t t = inst.num_teams();
  std::vector<std::vector<std::size_t>> members(t + 1);
  for (std::size_t x = 0; x < report.workers.team_of.size(); ++x) members[report.workers.team_of[x]].push_back(x);
  doc["teams"] = json::array();
  for (std::size_t i = 1; i <= t; ++i) {
    doc["teams"].push_back({{"name", inst.teams[i - 1].name}, {"demand", inst.demand(i)}, {"workers", members[i]}});
  }
  doc["unassigned"] = members[0];

  doc["columns"] = report.layout.values;
  json w = json::array();
  for (std::size_t i = 0; i < report.assignment.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < report.assignment.cols(); ++j) row.push_back(report.assignment.at(i, j));
    w.push_back(std::move(row));
  }
  doc["w"] = std::move(w);

  const CountTensor c = count_tensor(inst, report.layout, report.assignment);
  json ct = json::array();
  for (std::size_t i = 1; i <= t; ++i) {
    json per_feature = json::array();
    for (std::size_t k = 0; k < c.num_features(); ++k) {
      json vals = json::array();
      for (std::size_t v = 0; v < c.domain(k); ++v) vals.push_back(c.at(i, k, v));
      per_feature.push_back(std::move(vals));
    }
    ct.push_back(std::move(per_feature));
  }
  doc["c"] = std::move(ct);

  doc["total_utility"] = report.breakdown.total_utility;
  doc["diversity"] = report.breakdown.diversity;
  doc["objective"] = report.breakdown.objective;
  doc["initial_objective"] = report.initial_objective;
  doc["iterations"] = report.iterations;
  doc["iteration_bound"] = report.iteration_bound;
  doc["log"] = json::array();
  for (const auto& r : report.log) doc["log"].push_back(format_record(r));
  doc["warnings"] = report.warnings;
  return doc;
}

namespace {

const json& need(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("malformed solution: missing '") + key + "'");
  }
  return obj.at(key);
}

}  // namespace

BalanceReport balance_report(const json& sol) {
  BalanceReport out;
  try {
    const json& features = need(sol, "features");
    const json& teams = need(sol, "teams");
    const json& c = need(sol, "c");
    if (!features.is_array() || !teams.is_array() || !c.is_array() || c.size() != teams.size()) {
      throw InputError("malformed solution: teams and count tensor disagree");
    }
    for (const auto& f : features) {
      FeatureBalance fb;
      fb.feature = need(f, "name").get<std::string>();
      out.features.push_back(fb);
    }
    for (std::size_t i = 0; i < teams.size(); ++i) {
      TeamHistogram h;
      h.team = need(teams[i], "name").get<std::string>();
      h.demand = need(teams[i], "demand").get<Count>();
      h.counts = c[i].get<std::vector<std::vector<Count>>>();
      if (h.counts.size() != out.features.size()) throw InputError("malformed solution: count tensor shape");
      for (std::size_t k = 0; k < h.counts.size(); ++k) {
        const auto& vals = need(features[k], "values");
        if (h.counts[k].size() != vals.size()) throw InputError("malformed solution: count tensor shape");
        Count sum = 0;
        for (Count x : h.counts[k]) sum += x;
        if (sum != h.demand) throw InputError("malformed solution: histogram does not sum to the team demand");
      }
      out.teams.push_back(std::move(h));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed solution: ") + e.what());
  }

  for (std::size_t k = 0; k < out.features.size(); ++k) {
    FeatureBalance& fb = out.features[k];
    for (const auto& h : out.teams) {
      if (h.demand == 0) continue;
      ++fb.teams;
      const auto [lo, hi] = std::minmax_element(h.counts[k].begin(), h.counts[k].end());
      if (*hi - *lo <= 1) {
        ++fb.balanced;
      } else if (*hi == h.demand) {
        ++fb.skewed;
      }
    }
    fb.balanced_fraction = fb.teams == 0 ? 0.0 : static_cast<double>(fb.balanced) / static_cast<double>(fb.teams);
  }
  return out;
}

json to_json(const BalanceReport& r) {
  json doc;
  doc["teams"] = json::array();
  for (const auto& h : r.teams) doc["teams"].push_back({{"name", h.team}, {"demand", h.demand}, {"counts", h.counts}});
  doc["features"] = json::array();
  for (const auto& f : r.features) {
    doc["features"].push_back({{"name", f.feature},
                               {"teams", f.teams},
                               {"balanced", f.balanced},
                               {"skewed", f.skewed},
                               {"balanced_fraction", f.balanced_fraction}});
  }
  return doc;
}

std::string to_text(const BalanceReport& r) {
  std::ostringstream os;
  for (const auto& f : r.features) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.3f", f.balanced_fraction);
    os << f.feature << ": " << f.balanced << "/" << f.teams << " teams balanced (" << frac << "), " << f.skewed
       << " fully skewed\n";
  }
  return os.str();
}

}  // namespace divmatch
