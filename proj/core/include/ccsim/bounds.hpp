#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

/// P(|N(d)| = j) for K i.i.d. uniform draws over [1:N]; index j in [0:min(N,K)].
/// Exact occupancy recurrence, no combinatorial blowup.
std::vector<double> distinct_demand_pmf(int num_files, int num_users);

/// Same distribution for an arbitrary demand law, estimated by Monte Carlo.
std::vector<double> distinct_demand_pmf_mc(int num_files, int num_users, const DemandDist& dist,
                                           uint64_t seed, int samples);

struct BoundResult {
    double value = 0.0;
    bool uncached_limit = false;  // set when M = 0: the value is E[|N(d)|]
};

/// Converse-matching achievable load (N-M)/M * E[1 - ((N-M)/N)^|N(d)|] for
/// this placement class as the file size grows. Exact under uniform demands;
/// Monte Carlo otherwise. At M = 0 the expression is singular and the
/// no-cache limit E[|N(d)|] is returned with the flag set.
BoundResult yma_bound(int num_files, int num_users, double memory,
                      const DemandDist& dist = DemandDist{}, uint64_t mc_seed = 1,
                      int mc_samples = 200000);

}  // namespace ccsim
