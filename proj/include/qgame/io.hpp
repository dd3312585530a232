#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qgame/circuits.hpp"
#include "qgame/games.hpp"
#include "qgame/hist.hpp"
#include "qgame/lhv.hpp"
#include "qgame/mitigation.hpp"
#include "qgame/simulator.hpp"

namespace qgame {

// JSON bindings for every file format the tools read or write. Parsing
// failures surface as Error("parse"), filesystem trouble as Error("io"),
// and structurally valid JSON with bad content as the owning type's own
// validation error.

nlohmann::json to_json(const Histogram& hist);
Histogram histogram_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QuasiDistribution& dist);
QuasiDistribution quasi_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GameResult& result);
GameResult game_result_from_json(const nlohmann::json& j);

/// Confusion matrices for audit: {"player": i, "matrix": [[...]]}.
nlohmann::json confusion_to_json(const ConfusionSet& set);

/// LHV report in its CLI-facing shape; quantum value and classical
/// threshold come from the game spec the bound was computed for.
nlohmann::json lhv_report_to_json(const std::string& operator_label,
                                  const LhvReport& report,
                                  double quantum_value,
                                  double classical_threshold);

/// Serializes with sorted keys and a trailing newline so identical data is
/// byte-identical on disk.
std::string dump_json(const nlohmann::json& j);

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace qgame
