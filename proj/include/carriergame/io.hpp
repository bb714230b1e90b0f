#pragma once

#include <string>

#include "carriergame/equilibrium.hpp"
#include "carriergame/simulator.hpp"

namespace carriergame {

/// "%.12g" rendering used for every number in CSV output.
std::string format_double(double x);

std::string to_string(EquilibriumKind kind);
std::string to_string(WinningValue w);

/// Stable sweep CSV schema: one record per sweep value.
std::string sweep_csv_header();
std::string to_csv(const SweepResult& result);

/// JSON carries the CSV columns plus the welfare-ratio aggregates,
/// the same-best-carrier frequency and the anomaly counter.
std::string to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const std::string& text);

bool operator==(const SweepPoint& a, const SweepPoint& b);
bool operator==(const SweepResult& a, const SweepResult& b);

std::string to_csv(const EquilibriumOutcome& outcome);
std::string outcome_csv_header();
std::string to_json(const EquilibriumOutcome& outcome);

}  // namespace carriergame
