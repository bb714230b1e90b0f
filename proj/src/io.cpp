#include "carriergame/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace carriergame {

namespace {

using nlohmann::json;

// JSON has no NaN literal; absent statistics round-trip as null.
json num_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

double null_to_nan(const json& j) {
  if (j.is_null()) return std::nan("");
  return j.get<double>();
}

bool same_number(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::NashExact: return "NashExact";
    case EquilibriumKind::NashInfeasible: return "NashInfeasible";
    case EquilibriumKind::StackelbergExact: return "StackelbergExact";
    case EquilibriumKind::StackelbergEpsilon: return "StackelbergEpsilon";
    case EquilibriumKind::NoEquilibrium: return "NoEquilibrium";
  }
  return "?";
}

std::string to_string(WinningValue w) {
  switch (w) {
    case WinningValue::V: return "V";
    case WinningValue::W: return "W";
    case WinningValue::U: return "U";
    case WinningValue::V0: return "V0";
    case WinningValue::Split: return "Split";
    case WinningValue::SameCarrierNash: return "SameCarrierNash";
  }
  return "?";
}

std::string sweep_csv_header() {
  return "variable,value,trials,ee_stackelberg_leader,ee_stackelberg_follower,"
         "ee_stackelberg_sum,ee_nash_sum,nash_excluded,p_nocoord_stackelberg,"
         "p_nocoord_nash,p_nocoord_bound,se_mean,se_bound,p_lead_preferred,"
         "ci_ee_stackelberg_sum,ci_ee_nash_sum,ci_p_nocoord_stackelberg,"
         "ci_p_nocoord_nash,ci_se_mean,ci_p_lead_preferred";
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << sweep_csv_header() << '\n';
  for (const SweepPoint& p : result.points) {
    os << to_string(result.variable) << ',' << format_double(p.value) << ','
       << p.trials << ',' << format_double(p.ee_stackelberg_leader) << ','
       << format_double(p.ee_stackelberg_follower) << ','
       << format_double(p.ee_stackelberg_sum) << ',' << format_double(p.ee_nash_sum)
       << ',' << p.nash_excluded << ',' << format_double(p.p_nocoord_stackelberg)
       << ',' << format_double(p.p_nocoord_nash) << ','
       << format_double(p.p_nocoord_bound) << ',' << format_double(p.se_mean) << ','
       << format_double(p.se_bound) << ',' << format_double(p.p_lead_preferred) << ','
       << format_double(p.ci_ee_stackelberg_sum) << ','
       << format_double(p.ci_ee_nash_sum) << ','
       << format_double(p.ci_p_nocoord_stackelberg) << ','
       << format_double(p.ci_p_nocoord_nash) << ',' << format_double(p.ci_se_mean)
       << ',' << format_double(p.ci_p_lead_preferred) << '\n';
  }
  return os.str();
}

std::string to_json(const SweepResult& result) {
  json points = json::array();
  for (const SweepPoint& p : result.points) {
    points.push_back(json{
        {"value", p.value},
        {"trials", p.trials},
        {"ee_stackelberg_leader", num_or_null(p.ee_stackelberg_leader)},
        {"ee_stackelberg_follower", num_or_null(p.ee_stackelberg_follower)},
        {"ee_stackelberg_sum", num_or_null(p.ee_stackelberg_sum)},
        {"ee_nash_sum", num_or_null(p.ee_nash_sum)},
        {"nash_excluded", p.nash_excluded},
        {"p_nocoord_stackelberg", num_or_null(p.p_nocoord_stackelberg)},
        {"p_nocoord_nash", num_or_null(p.p_nocoord_nash)},
        {"p_nocoord_bound", p.p_nocoord_bound},
        {"se_mean", num_or_null(p.se_mean)},
        {"se_bound", p.se_bound},
        {"p_lead_preferred", num_or_null(p.p_lead_preferred)},
        {"p_same_best_carrier", p.p_same_best_carrier},
        {"welfare_ratio_vs_nash_mean", num_or_null(p.welfare_ratio_vs_nash_mean)},
        {"welfare_ratio_vs_nash_max", num_or_null(p.welfare_ratio_vs_nash_max)},
        {"welfare_ratio_vs_max_mean", num_or_null(p.welfare_ratio_vs_max_mean)},
        {"welfare_ratio_vs_max_max", num_or_null(p.welfare_ratio_vs_max_max)},
        {"welfare_defined_trials", p.welfare_defined_trials},
        {"ci_ee_stackelberg_sum", num_or_null(p.ci_ee_stackelberg_sum)},
        {"ci_ee_nash_sum", num_or_null(p.ci_ee_nash_sum)},
        {"ci_p_nocoord_stackelberg", num_or_null(p.ci_p_nocoord_stackelberg)},
        {"ci_p_nocoord_nash", num_or_null(p.ci_p_nocoord_nash)},
        {"ci_se_mean", num_or_null(p.ci_se_mean)},
        {"ci_p_lead_preferred", num_or_null(p.ci_p_lead_preferred)},
        {"anomalies", p.anomalies},
    });
  }
  json j{{"variable", to_string(result.variable)},
         {"seed", result.seed},
         {"trials", result.trials},
         {"run_nash", result.run_nash},
         {"run_stackelberg", result.run_stackelberg},
         {"points", points}};
  return j.dump(2) + "\n";
}

SweepResult sweep_result_from_json(const std::string& text) {
  const json j = json::parse(text);
  SweepResult r;
  const std::string var = j.at("variable").get<std::string>();
  if (var == "K") {
    r.variable = SweepVariable::Carriers;
  } else if (var == "SNR_dB") {
    r.variable = SweepVariable::SnrDb;
  } else if (var == "theta") {
    r.variable = SweepVariable::Theta;
  } else {
    throw std::invalid_argument("unknown sweep variable: " + var);
  }
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<int>();
  r.run_nash = j.at("run_nash").get<bool>();
  r.run_stackelberg = j.at("run_stackelberg").get<bool>();
  for (const json& q : j.at("points")) {
    SweepPoint p;
    p.value = q.at("value").get<double>();
    p.trials = q.at("trials").get<int>();
    p.ee_stackelberg_leader = null_to_nan(q.at("ee_stackelberg_leader"));
    p.ee_stackelberg_follower = null_to_nan(q.at("ee_stackelberg_follower"));
    p.ee_stackelberg_sum = null_to_nan(q.at("ee_stackelberg_sum"));
    p.ee_nash_sum = null_to_nan(q.at("ee_nash_sum"));
    p.nash_excluded = q.at("nash_excluded").get<int>();
    p.p_nocoord_stackelberg = null_to_nan(q.at("p_nocoord_stackelberg"));
    p.p_nocoord_nash = null_to_nan(q.at("p_nocoord_nash"));
    p.p_nocoord_bound = q.at("p_nocoord_bound").get<double>();
    p.se_mean = null_to_nan(q.at("se_mean"));
    p.se_bound = q.at("se_bound").get<double>();
    p.p_lead_preferred = null_to_nan(q.at("p_lead_preferred"));
    p.p_same_best_carrier = q.at("p_same_best_carrier").get<double>();
    p.welfare_ratio_vs_nash_mean = null_to_nan(q.at("welfare_ratio_vs_nash_mean"));
    p.welfare_ratio_vs_nash_max = null_to_nan(q.at("welfare_ratio_vs_nash_max"));
    p.welfare_ratio_vs_max_mean = null_to_nan(q.at("welfare_ratio_vs_max_mean"));
    p.welfare_ratio_vs_max_max = null_to_nan(q.at("welfare_ratio_vs_max_max"));
    p.welfare_defined_trials = q.at("welfare_defined_trials").get<int>();
    p.ci_ee_stackelberg_sum = null_to_nan(q.at("ci_ee_stackelberg_sum"));
    p.ci_ee_nash_sum = null_to_nan(q.at("ci_ee_nash_sum"));
    p.ci_p_nocoord_stackelberg = null_to_nan(q.at("ci_p_nocoord_stackelberg"));
    p.ci_p_nocoord_nash = null_to_nan(q.at("ci_p_nocoord_nash"));
    p.ci_se_mean = null_to_nan(q.at("ci_se_mean"));
    p.ci_p_lead_preferred = null_to_nan(q.at("ci_p_lead_preferred"));
    p.anomalies = q.at("anomalies").get<int>();
    r.points.push_back(p);
  }
  return r;
}

bool operator==(const SweepPoint& a, const SweepPoint& b) {
  return same_number(a.value, b.value) && a.trials == b.trials &&
         same_number(a.ee_stackelberg_leader, b.ee_stackelberg_leader) &&
         same_number(a.ee_stackelberg_follower, b.ee_stackelberg_follower) &&
         same_number(a.ee_stackelberg_sum, b.ee_stackelberg_sum) &&
         same_number(a.ee_nash_sum, b.ee_nash_sum) &&
         a.nash_excluded == b.nash_excluded &&
         same_number(a.p_nocoord_stackelberg, b.p_nocoord_stackelberg) &&
         same_number(a.p_nocoord_nash, b.p_nocoord_nash) &&
         same_number(a.p_nocoord_bound, b.p_nocoord_bound) &&
         same_number(a.se_mean, b.se_mean) && same_number(a.se_bound, b.se_bound) &&
         same_number(a.p_lead_preferred, b.p_lead_preferred) &&
         same_number(a.p_same_best_carrier, b.p_same_best_carrier) &&
         same_number(a.welfare_ratio_vs_nash_mean, b.welfare_ratio_vs_nash_mean) &&
         same_number(a.welfare_ratio_vs_nash_max, b.welfare_ratio_vs_nash_max) &&
         same_number(a.welfare_ratio_vs_max_mean, b.welfare_ratio_vs_max_mean) &&
         same_number(a.welfare_ratio_vs_max_max, b.welfare_ratio_vs_max_max) &&
         a.welfare_defined_trials == b.welfare_defined_trials &&
         same_number(a.ci_ee_stackelberg_sum, b.ci_ee_stackelberg_sum) &&
         same_number(a.ci_ee_nash_sum, b.ci_ee_nash_sum) &&
         same_number(a.ci_p_nocoord_stackelberg, b.ci_p_nocoord_stackelberg) &&
         same_number(a.ci_p_nocoord_nash, b.ci_p_nocoord_nash) &&
         same_number(a.ci_se_mean, b.ci_se_mean) &&
         same_number(a.ci_p_lead_preferred, b.ci_p_lead_preferred) &&
         a.anomalies == b.anomalies;
}

bool operator==(const SweepResult& a, const SweepResult& b) {
  return a.variable == b.variable && a.seed == b.seed && a.trials == b.trials &&
         a.run_nash == b.run_nash && a.run_stackelberg == b.run_stackelberg &&
         a.points == b.points;
}

std::string outcome_csv_header() {
  return "kind,winner,coordinated,carrier1,power1,carrier2,power2,utility1,utility2";
}

std::string to_csv(const EquilibriumOutcome& outcome) {
  std::ostringstream os;
  os << outcome_csv_header() << '\n';
  os << to_string(outcome.kind) << ','
     << (outcome.winner ? to_string(*outcome.winner) : std::string()) << ','
     << (outcome.coordinated ? 1 : 0);
  for (int n = 0; n < 2; ++n) {
    const auto c = outcome.active_carriers[static_cast<std::size_t>(n)];
    if (c) {
      os << ',' << *c << ',' << format_double(outcome.alloc.power(n, *c));
    } else {
      os << ",,";
    }
  }
  if (outcome.utilities) {
    os << ',' << format_double((*outcome.utilities)[0]) << ','
       << format_double((*outcome.utilities)[1]);
  } else {
    os << ",,";
  }
  os << '\n';
  return os.str();
}

std::string to_json(const EquilibriumOutcome& outcome) {
  json j;
  j["kind"] = to_string(outcome.kind);
  if (outcome.winner) j["winner"] = to_string(*outcome.winner);
  if (outcome.kind == EquilibriumKind::StackelbergEpsilon) j["epsilon"] = outcome.epsilon;
  j["coordinated"] = outcome.coordinated;
  for (int n = 0; n < 2; ++n) {
    json u;
    const auto c = outcome.active_carriers[static_cast<std::size_t>(n)];
    u["carrier"] = c ? json(*c) : json(nullptr);
    u["power"] = c ? json(outcome.alloc.power(n, *c)) : json(nullptr);
    u["utility"] =
        outcome.utilities ? json((*outcome.utilities)[static_cast<std::size_t>(n)]) : json(nullptr);
    j[n == 0 ? "leader" : "follower"] = u;
  }
  return j.dump(2) + "\n";
}

}  // namespace carriergame
