#pragma once

#include <string>

#include <json.hpp>

#include "ccsim/experiment.hpp"
#include "ccsim/graph.hpp"

namespace ccsim {

/// Shortest round-trip decimal form of a double (std::to_chars), so exports
/// are byte-stable and re-importable without loss.
std::string format_double(double v);

/// Data rows. Columns, exactly:
/// scheme,M,trial,load_bits,load_files,decodable,elapsed_ms,seed
void write_results_csv(const ExperimentResults& results, const std::string& path);

/// Per-(scheme, M) aggregate rows plus the yma_bound value at each M.
void write_summary_csv(const ExperimentResults& results, const std::string& path);

nlohmann::json results_to_json(const ExperimentResults& results);
void write_results_json(const ExperimentResults& results, const std::string& path);

/// Inverse of results_to_json; summary statistics are recomputed from rows.
ExperimentResults results_from_json(const nlohmann::json& j);
ExperimentResults read_results_json(const std::string& path);

/// Full single-trial trace: codewords with per-segment provenance, demand,
/// leaders, per-user decode flags, optionally the raw cache contents.
nlohmann::json trace_to_json(const SystemConfig& cfg, const std::string& scheme,
                             uint64_t seed, const DemandVector& demand, const LeaderSet& leaders,
                             const CacheState& cache, const TransmissionLog& log,
                             const std::vector<bool>& user_decodable, bool include_cache);

/// Conflict-graph dump (nodes with requester, packet, knower set; edge list).
nlohmann::json graph_to_json(const ConflictGraph& g);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ccsim
