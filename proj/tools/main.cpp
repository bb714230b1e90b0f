// Command-line front end: closed-form equilibria for explicit gains, Monte
// Carlo sweeps, closed-form bound tables and solver-vs-grid-oracle checks.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "carriergame/analysis.hpp"
#include "carriergame/equilibrium.hpp"
#include "carriergame/io.hpp"
#include "carriergame/simulator.hpp"

namespace {

using namespace carriergame;

// Bad option values are usage errors (exit 2), distinct from runtime
// failures (exit 1).
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_value_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_error(std::string(flag) + ": cannot parse number '" + item + "'");
    }
  }
  if (out.empty())
    throw usage_error(std::string(flag) + ": expected a comma-separated list");
  return out;
}

// Accepts "1..32" or a comma list "2,4,8".
std::vector<int> parse_carrier_range(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (hi < lo) throw usage_error("--K: empty range");
      for (int k = lo; k <= hi; ++k) out.push_back(k);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(std::stoi(item));
    }
  } catch (const usage_error&) {
    throw;
  } catch (const std::exception&) {
    throw usage_error("--K: expected K list or lo..hi range, got '" + text + "'");
  }
  if (out.empty()) throw usage_error("--K: expected K list or lo..hi range");
  return out;
}

SweepVariable parse_variable(const std::string& name) {
  if (name == "K") return SweepVariable::Carriers;
  if (name == "SNR_dB" || name == "snr-db" || name == "snr_db") return SweepVariable::SnrDb;
  if (name == "theta") return SweepVariable::Theta;
  throw usage_error("--var: expected K, SNR_dB or theta");
}

std::array<std::vector<double>, 2> parse_inline_gains(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw usage_error("--gains: expected \"row1;row2\" with comma-separated gains");
  std::array<std::vector<double>, 2> rows;
  rows[0] = parse_value_list(text.substr(0, semi), "--gains");
  rows[1] = parse_value_list(text.substr(semi + 1), "--gains");
  return rows;
}

std::array<std::vector<double>, 2> read_gains_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gains file: " + path);
  std::array<std::vector<double>, 2> rows;
  std::string line;
  for (int n = 0; n < 2; ++n) {
    if (!std::getline(in, line))
      throw std::runtime_error("gains file needs two lines of positive decimals");
    std::stringstream ss(line);
    double x;
    while (ss >> x) rows[static_cast<std::size_t>(n)].push_back(x);
  }
  return rows;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

double snr_db_to_noise(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

struct CommonOptions {
  int block_length = 100;
  int num_carriers = 4;
  double snr_db = 10.0;
  double theta = 0.0;
  int trials = 10000;
  std::uint64_t seed = 1;
  double rate1 = 1e6;
  double rate2 = 1e6;
  std::string out_path;
  std::string format = "csv";

  GameConfig config() const {
    GameConfig c;
    c.num_carriers = num_carriers;
    c.noise_variance = snr_db_to_noise(snr_db);
    c.rates = {rate1, rate2};
    c.theta = theta;
    c.model = EfficiencyModel::exp_block(block_length);
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_trials_seed) {
  cmd->add_option("--M", opt.block_length, "block length of f(x) = (1 - e^-x)^M")
      ->check(CLI::Range(2, 1000000));
  cmd->add_option("--snr-db", opt.snr_db, "SNR in dB; noise variance = 10^(-SNR/10)");
  cmd->add_option("--theta", opt.theta, "inter-user fading correlation in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--rate1", opt.rate1, "rate of user 1 (bit/s)");
  cmd->add_option("--rate2", opt.rate2, "rate of user 2 (bit/s)");
  if (with_trials_seed) {
    cmd->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "base seed");
  }
  cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int run_solve(const CommonOptions& opt, const std::string& gains_text,
              const std::string& gains_file, const std::string& solver) {
  std::array<std::vector<double>, 2> rows;
  if (!gains_file.empty()) {
    rows = read_gains_file(gains_file);
  } else if (!gains_text.empty()) {
    rows = parse_inline_gains(gains_text);
  } else {
    throw usage_error("solve: provide --gains or --gains-file");
  }
  GameConfig config = opt.config();
  config.num_carriers = static_cast<int>(rows[0].size());
  const ChannelRealization ch =
      ChannelRealization::from_gains(rows, config.noise_variance, config.rates);
  const GammaStar gamma = solve_gamma_star(config.model);
  const EquilibriumOutcome outcome = solver == "nash"
                                         ? nash_solve(ch, config, gamma)
                                         : stackelberg_solve(ch, config, gamma, 1e-6);
  write_output(opt.format == "json" ? to_json(outcome) : to_csv(outcome), opt.out_path);
  return 0;
}

int run_sweep_cmd(const CommonOptions& opt, const std::string& var_name,
                  const std::string& values_text) {
  SweepSpec spec;
  spec.variable = parse_variable(var_name);
  spec.values = parse_value_list(values_text, "--values");
  spec.trials = opt.trials;
  spec.seed = opt.seed;
  spec.base = opt.config();
  const SweepResult result = run_sweep(spec);
  write_output(opt.format == "json" ? to_json(result) : to_csv(result), opt.out_path);
  return 0;
}

int run_bound(const CommonOptions& opt, const std::string& k_text) {
  const std::vector<int> ks = parse_carrier_range(k_text);
  const GammaStar gamma = solve_gamma_star(EfficiencyModel::exp_block(opt.block_length));
  if (opt.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (int k : ks) {
      rows.push_back({{"K", k},
                      {"gamma_star", gamma.value},
                      {"p_nocoord_bound", no_coordination_bound(k, gamma).bound},
                      {"se_bound", spectral_efficiency_bound(k, gamma)}});
    }
    write_output(rows.dump(2) + "\n", opt.out_path);
    return 0;
  }
  std::ostringstream os;
  os << "K,gamma_star,p_nocoord_bound,se_bound\n";
  for (int k : ks) {
    os << k << ',' << format_double(gamma.value) << ','
       << format_double(no_coordination_bound(k, gamma).bound) << ','
       << format_double(spectral_efficiency_bound(k, gamma)) << '\n';
  }
  write_output(os.str(), opt.out_path);
  return 0;
}

int run_oracle_compare(const CommonOptions& opt, int points_per_decade) {
  GameConfig config = opt.config();
  const GammaStar gamma = solve_gamma_star(config.model);
  OracleGrid grid;
  grid.points_per_decade = points_per_decade;

  double max_gap = -std::numeric_limits<double>::infinity();
  double gap_sum = 0.0;
  int above_half_percent = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const ChannelRealization ch =
        sample_channels(config, opt.seed, static_cast<std::uint64_t>(t));
    const EquilibriumOutcome closed = stackelberg_solve(ch, config, gamma, 1e-6);
    const EquilibriumOutcome grid_best = oracle_stackelberg(ch, config, gamma, grid);
    // Positive gap: the grid found a leader strategy beating the closed form.
    const double gap =
        ((*grid_best.utilities)[0] - (*closed.utilities)[0]) / (*closed.utilities)[0];
    max_gap = std::max(max_gap, gap);
    gap_sum += gap;
    if (gap > 0.005) ++above_half_percent;
  }
  const double mean_gap = gap_sum / opt.trials;
  if (opt.format == "json") {
    nlohmann::json j{{"trials", opt.trials},
                     {"K", config.num_carriers},
                     {"points_per_decade", points_per_decade},
                     {"max_rel_gap", max_gap},
                     {"mean_rel_gap", mean_gap},
                     {"instances_above_half_percent", above_half_percent}};
    write_output(j.dump(2) + "\n", opt.out_path);
    return 0;
  }
  std::ostringstream os;
  os << "trials,K,points_per_decade,max_rel_gap,mean_rel_gap,instances_above_half_percent\n";
  os << opt.trials << ',' << config.num_carriers << ',' << points_per_decade << ','
     << format_double(max_gap) << ',' << format_double(mean_gap) << ','
     << above_half_percent << '\n';
  write_output(os.str(), opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user multi-carrier energy-efficiency power-control game: "
               "closed-form equilibria, Monte Carlo sweeps and bound tables"};
  app.require_subcommand(1);

  CommonOptions solve_opt, sweep_opt, bound_opt, oracle_opt;
  std::string gains_text, gains_file, solver = "stackelberg";
  std::string var_name = "K", values_text;
  std::string k_text = "1..32";
  int points_per_decade = 200;

  CLI::App* solve_cmd = app.add_subcommand("solve", "equilibrium for explicit gains");
  add_common(solve_cmd, solve_opt, false);
  solve_cmd->add_option("--gains", gains_text, "inline gains \"row1;row2\"");
  solve_cmd->add_option("--gains-file", gains_file,
                        "file with two lines of K whitespace-separated gains");
  solve_cmd->add_option("--solver", solver, "stackelberg or nash")
      ->check(CLI::IsMember({"stackelberg", "nash"}));

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep");
  add_common(sweep_cmd, sweep_opt, true);
  sweep_cmd->add_option("--K", sweep_opt.num_carriers, "carriers when not swept");
  sweep_cmd->add_option("--var", var_name, "sweep variable: K, SNR_dB or theta");
  sweep_cmd->add_option("--values", values_text, "comma-separated sweep values")->required();

  CLI::App* bound_cmd = app.add_subcommand("bound", "closed-form bound table over K");
  add_common(bound_cmd, bound_opt, false);
  bound_cmd->add_option("--K", k_text, "K list (2,4,8) or range (1..32)");

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle-compare", "closed form vs brute-force grid");
  add_common(oracle_cmd, oracle_opt, true);
  oracle_cmd->add_option("--K", oracle_opt.num_carriers, "carriers")->check(CLI::Range(2, 64));
  oracle_cmd->add_option("--points-per-decade", points_per_decade, "oracle grid density")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(solve_cmd))
      return run_solve(solve_opt, gains_text, gains_file, solver);
    if (app.got_subcommand(sweep_cmd))
      return run_sweep_cmd(sweep_opt, var_name, values_text);
    if (app.got_subcommand(bound_cmd)) return run_bound(bound_opt, k_text);
    if (app.got_subcommand(oracle_cmd))
      return run_oracle_compare(oracle_opt, points_per_decade);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
