#include "divmatch/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace divmatch {

using nlohmann::json;

const char* to_string(CostMode mode) {
  return mode == CostMode::kClass ? "class" : "worker";
}

Count TradeoffWeights::max_lambda() const {
  Count m = 0;
  for (Count l : lambdas) m = std::max(m, l);
  return m;
}

Count Instance::total_demand() const {
  Count s = 0;
  for (const auto& team : teams) s += team.demand;
  return s;
}

Count Instance::worker_cost(std::size_t team, std::size_t x) const {
  if (team == 0) return 0;
  const auto& row = costs.u[team - 1];
  if (costs.mode == CostMode::kWorker) return row[x];
  return row[static_cast<std::size_t>(workers[x].feature_values[0])];
}

bool Instance::costs_class_constant() const {
  if (costs.mode == CostMode::kClass) return true;
  for (const auto& row : costs.u) {
    std::map<int, Count> seen;
    for (std::size_t x = 0; x < workers.size(); ++x) {
      auto [it, inserted] = seen.emplace(workers[x].feature_values[0], row[x]);
      if (!inserted && it->second != row[x]) return false;
    }
  }
  return true;
}

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

// Largest magnitude any objective value or edge weight may reach.
constexpr __int128 kMagnitudeLimit = static_cast<__int128>(1) << 60;

}  // namespace

void validate(const Instance& inst) {
  const auto& feats = inst.schema.features;
  require(!feats.empty(), "instance needs at least one feature");
  std::set<std::string> names;
  for (const auto& f : feats) {
    require(!f.values.empty(), "feature '" + f.name + "' has no values");
    require(names.insert(f.name).second, "duplicate feature name '" + f.name + "'");
    std::set<std::string> vals(f.values.begin(), f.values.end());
    require(vals.size() == f.values.size(), "duplicate value in feature '" + f.name + "'");
  }

  const std::size_t n = inst.num_workers();
  const std::size_t t = inst.num_teams();
  require(n >= 1, "instance needs at least one worker");
  require(t >= 1, "instance needs at least one team");

  for (std::size_t x = 0; x < n; ++x) {
    const auto& fv = inst.workers[x].feature_values;
    require(fv.size() == feats.size(),
            "dimension mismatch: worker " + std::to_string(x) + " has " + std::to_string(fv.size()) +
                " feature values, expected " + std::to_string(feats.size()));
    for (std::size_t k = 0; k < fv.size(); ++k) {
      require(fv[k] >= 0 && static_cast<std::size_t>(fv[k]) < feats[k].values.size(),
              "worker " + std::to_string(x) + " value index out of range for feature '" + feats[k].name +
                  "'");
    }
  }

  for (const auto& team : inst.teams) {
    require(team.demand >= 0, "team '" + team.name + "' has negative demand");
  }
  if (inst.total_demand() > static_cast<Count>(n)) throw InfeasibleError();

  const std::size_t width = inst.costs.mode == CostMode::kClass ? feats[0].values.size() : n;
  require(inst.costs.u.size() == t, "dimension mismatch: cost table has " +
                                        std::to_string(inst.costs.u.size()) + " rows, expected " +
                                        std::to_string(t));
  Count max_cost = 0;
  for (const auto& row : inst.costs.u) {
    require(row.size() == width, "dimension mismatch: cost row has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(width));
    for (Count c : row) {
      require(c >= 0, "negative cost");
      max_cost = std::max(max_cost, c);
    }
  }

  require(inst.weights.lambda0 >= 0, "lambda0 must be non-negative");
  require(inst.weights.lambdas.size() == feats.size(),
          "dimension mismatch: expected " + std::to_string(feats.size()) + " lambdas");
  for (Count l : inst.weights.lambdas) require(l >= 0, "lambdas must be non-negative");

  const __int128 nn = static_cast<__int128>(n);
  const __int128 bound = static_cast<__int128>(inst.weights.max_lambda()) * feats.size() * nn * nn * 4 +
                         static_cast<__int128>(inst.weights.lambda0) * max_cost * nn * 2;
  require(bound < kMagnitudeLimit, "instance magnitudes overflow 64-bit arithmetic");
}

namespace {

Count get_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                                           std::numeric_limits<Count>::max())) {
    throw InputError(what + " out of range");
  }
  return j.get<Count>();
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

const json& array_field(const json& obj, const char* key) {
  const json& a = field(obj, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

std::string get_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");
  Instance inst;

  for (const auto& f : array_field(doc, "features")) {
    Feature feat;
    feat.name = get_string(field(f, "name"), "feature name");
    for (const auto& v : array_field(f, "values")) feat.values.push_back(get_string(v, "feature value"));
    inst.schema.features.push_back(std::move(feat));
  }

  for (const auto& w : array_field(doc, "workers")) {
    if (!w.is_array()) throw InputError("each worker must be an array of value indices");
    Worker worker;
    for (const auto& v : w) {
      Count idx = get_int(v, "worker value index");
      if (idx < 0 || idx > std::numeric_limits<int>::max()) throw InputError("worker value index out of range");
      worker.feature_values.push_back(static_cast<int>(idx));
    }
    inst.workers.push_back(std::move(worker));
  }

  for (const auto& t : array_field(doc, "teams")) {
    Team team;
    team.name = get_string(field(t, "name"), "team name");
    team.demand = get_int(field(t, "demand"), "team demand");
    inst.teams.push_back(std::move(team));
  }

  const json& costs = field(doc, "costs");
  const std::string mode = get_string(field(costs, "mode"), "cost mode");
  if (mode == "class") {
    inst.costs.mode = CostMode::kClass;
  } else if (mode == "worker") {
    inst.costs.mode = CostMode::kWorker;
  } else {
    throw InputError("cost mode must be 'class' or 'worker'");
  }
  for (const auto& row : array_field(costs, "u")) {
    if (!row.is_array()) throw InputError("cost rows must be arrays");
    std::vector<Count> r;
    for (const auto& v : row) r.push_back(get_int(v, "cost"));
    inst.costs.u.push_back(std::move(r));
  }

  inst.weights.lambda0 = get_int(field(doc, "lambda0"), "lambda0");
  for (const auto& l : array_field(doc, "lambdas")) inst.weights.lambdas.push_back(get_int(l, "lambda"));

  validate(inst);
  return inst;
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

json to_json(const Instance& inst) {
  json doc;
  doc["features"] = json::array();
  for (const auto& f : inst.schema.features) {
    doc["features"].push_back({{"name", f.name}, {"values", f.values}});
  }
  doc["workers"] = json::array();
  for (const auto& w : inst.workers) doc["workers"].push_back(w.feature_values);
  doc["teams"] = json::array();
  for (const auto& t : inst.teams) doc["teams"].push_back({{"name", t.name}, {"demand", t.demand}});
  doc["costs"] = {{"mode", to_string(inst.costs.mode)}, {"u", inst.costs.u}};
  doc["lambda0"] = inst.weights.lambda0;
  doc["lambdas"] = inst.weights.lambdas;
  return doc;
}

Instance to_worker_costs(const Instance& inst) {
  if (inst.costs.mode == CostMode::kWorker) return inst;
  Instance out = inst;
  out.costs.mode = CostMode::kWorker;
  out.costs.u.assign(inst.num_teams(), std::vector<Count>(inst.num_workers()));
  for (std::size_t i = 1; i <= inst.num_teams(); ++i) {
    for (std::size_t x = 0; x < inst.num_workers(); ++x) out.costs.u[i - 1][x] = inst.worker_cost(i, x);
  }
  return out;
}

Instance to_class_costs(const Instance& inst) {
  if (inst.costs.mode == CostMode::kClass) return inst;
  if (!inst.costs_class_constant()) {
    throw InputError("worker costs vary within a first-feature class; class mode is not applicable");
  }
  Instance out = inst;
  out.costs.mode = CostMode::kClass;
  const std::size_t width = inst.schema.domain(0);
  out.costs.u.assign(inst.num_teams(), std::vector<Count>(width, 0));
  for (std::size_t i = 0; i < inst.num_teams(); ++i) {
    for (std::size_t x = 0; x < inst.num_workers(); ++x) {
      out.costs.u[i][static_cast<std::size_t>(inst.workers[x].feature_values[0])] = inst.costs.u[i][x];
    }
  }
  return out;
}

CombinationIndex build_combination_index(const Instance& inst) {
  CombinationIndex idx;
  std::map<std::vector<int>, std::size_t> slot;
  for (const auto& w : inst.workers) slot.emplace(w.feature_values, 0);
  for (auto& [key, col] : slot) {
    col = idx.columns.size();
    idx.columns.push_back(key);
  }
  idx.multiplicity.assign(idx.columns.size(), 0);
  idx.members.resize(idx.columns.size());
  idx.column_of.reserve(inst.num_workers());
  for (std::size_t x = 0; x < inst.num_workers(); ++x) {
    const std::size_t col = slot.at(inst.workers[x].feature_values);
    idx.column_of.push_back(col);
    idx.multiplicity[col] += 1;
    idx.members[col].push_back(x);
  }
  return idx;
}

std::optional<GenderBalance> parse_gender_balance(const std::string& s) {
  if (s == "balanced") return GenderBalance::kBalanced;
  if (s == "alternating") return GenderBalance::kAlternating;
  if (s == "same") return GenderBalance::kAllSame;
  return std::nullopt;
}

Instance generate_reviewer_instance(const ReviewerParams& p) {
  if (p.papers == 0) throw InputError("papers must be positive");
  if (p.reviewers_per_cluster.empty()) throw InputError("at least one reviewer cluster is required");
  if (p.demand_per_paper < 1) throw InputError("demand per paper must be positive");
  if (p.max_cost < 0) throw InputError("max cost must be non-negative");
  std::size_t n = 0;
  for (std::size_t c : p.reviewers_per_cluster) {
    if (c == 0) throw InputError("cluster sizes must be positive");
    n += c;
  }
  const Count needed = static_cast<Count>(p.papers) * p.demand_per_paper;
  if (needed > static_cast<Count>(n)) {
    throw InfeasibleError("infeasible: demand exceeds workers (" + std::to_string(needed) + " > " +
                          std::to_string(n) + ")");
  }

  // Portable draws: raw 64-bit outputs reduced by modulo, no distribution objects.
  std::mt19937_64 rng(p.seed);
  auto draw = [&rng](std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; };

  Instance inst;
  Feature cluster{"cluster", {}};
  for (std::size_t c = 0; c < p.reviewers_per_cluster.size(); ++c) {
    cluster.values.push_back("c" + std::to_string(c + 1));
  }
  inst.schema.features.push_back(std::move(cluster));
  inst.schema.features.push_back(Feature{"gender", {"M", "F"}});

  std::vector<int> gender(n, 0);
  switch (p.genders) {
    case GenderBalance::kBalanced: {
      for (std::size_t x = n / 2; x < n; ++x) gender[x] = 1;
      for (std::size_t x = n; x > 1; --x) std::swap(gender[x - 1], gender[draw(x)]);
      break;
    }
    case GenderBalance::kAlternating:
      for (std::size_t x = 0; x < n; ++x) gender[x] = static_cast<int>(x % 2);
      break;
    case GenderBalance::kAllSame:
      break;
  }

  std::size_t x = 0;
  for (std::size_t c = 0; c < p.reviewers_per_cluster.size(); ++c) {
    for (std::size_t r = 0; r < p.reviewers_per_cluster[c]; ++r, ++x) {
      inst.workers.push_back(Worker{{static_cast<int>(c), gender[x]}});
    }
  }

  for (std::size_t i = 0; i < p.papers; ++i) {
    inst.teams.push_back(Team{"paper" + std::to_string(i + 1), p.demand_per_paper});
  }

  inst.costs.mode = CostMode::kClass;
  inst.costs.u.assign(p.papers, std::vector<Count>(p.reviewers_per_cluster.size()));
  for (auto& row : inst.costs.u) {
    for (auto& c : row) c = static_cast<Count>(draw(static_cast<std::uint64_t>(p.max_cost) + 1));
  }
  inst.weights.lambda0 = p.lambda0;
  inst.weights.lambdas = {p.lambda_cluster, p.lambda_gender};
  validate(inst);
  return inst;
}

}  // namespace divmatch
