#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

enum class Scheme { uncoded, decman, yma, hcd, mhcd, hglc, ahglc };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);              // throws on unknown names
std::vector<Scheme> parse_scheme_list(const std::string&); // comma separated

/// Full experiment description: one Monte Carlo run per (M, scheme, trial).
struct ExperimentSpec {
    SystemConfig base;  // memory field is ignored; the grid supplies it
    std::vector<double> memory_grid;
    std::vector<Scheme> schemes;
    int trials = 1;
    uint64_t master_seed = 1;
    DemandDist dist;
    bool verify = true;   // run the decodability oracle on every trial
    bool timing = false;  // record wall time per trial (off keeps output byte-stable)
    int threads = 0;      // 0 = hardware concurrency

    void validate() const;
};

struct TrialResult {
    Scheme scheme;
    double memory = 0.0;
    int trial = 0;
    int64_t load_bits = 0;
    double load_files = 0.0;
    bool decodable = true;
    double elapsed_ms = 0.0;
    uint64_t seed = 0;  // placement-stream sub-seed of the trial
};

/// Runs one trial: placement and demand derive from (master seed, M index,
/// trial index) only, so every scheme sees the same realization; scheme
/// randomness comes from a scheme-specific stream. The uncoded baseline uses
/// the identical-prefix placement, everything else the random placement.
TrialResult run_trial(const ExperimentSpec& spec, Scheme scheme, int m_index, int trial);

struct SchemeStats {
    Scheme scheme;
    double memory = 0.0;
    int trials = 0;
    double mean_load = 0.0;
    double stddev = 0.0;     // 0 with std_defined=false for a single trial
    bool std_defined = false;
    double ci95 = 0.0;       // normal-approximation half width
    int decode_failures = 0;
};

struct ExperimentResults {
    ExperimentSpec spec;
    std::vector<TrialResult> rows;  // ordered by (scheme, M index, trial)
    std::vector<SchemeStats> summary;
    std::string first_error;  // message of the first failed trial, if any
};

std::vector<SchemeStats> summarize(const ExperimentSpec& spec,
                                   const std::vector<TrialResult>& rows);

/// Aggregates run_trial over schemes x grid x trials; trials are independent
/// and folded in index order no matter how they are scheduled, so the result
/// is identical for any thread count. A throwing scheme is recorded as a
/// failed (non-decodable) trial, never dropped.
ExperimentResults monte_carlo(const ExperimentSpec& spec);

}  // namespace ccsim
