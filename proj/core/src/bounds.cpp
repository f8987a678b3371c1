#include "ccsim/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ccsim/rng.hpp"

namespace ccsim {

std::vector<double> distinct_demand_pmf(int num_files, int num_users) {
    if (num_files < 1 || num_users < 1)
        throw std::invalid_argument("distinct_demand_pmf: need N >= 1, K >= 1");
    const int cap = std::min(num_files, num_users);
    std::vector<double> p(static_cast<size_t>(cap) + 1, 0.0);
    p[0] = 1.0;
    const double n = static_cast<double>(num_files);
    for (int draw = 0; draw < num_users; ++draw) {
        // one more draw either hits an already-seen file or a fresh one
        for (int j = cap; j >= 1; --j)
            p[static_cast<size_t>(j)] = p[static_cast<size_t>(j)] * (static_cast<double>(j) / n) +
                                        p[static_cast<size_t>(j - 1)] *
                                            (static_cast<double>(num_files - j + 1) / n);
        p[0] = 0.0;
    }
    return p;
}

std::vector<double> distinct_demand_pmf_mc(int num_files, int num_users, const DemandDist& dist,
                                           uint64_t seed, int samples) {
    dist.validate();
    if (samples < 1) throw std::invalid_argument("distinct_demand_pmf_mc: samples >= 1");
    SystemConfig cfg;
    cfg.num_files = num_files;
    cfg.num_users = num_users;
    cfg.file_bits = 1;
    const int cap = std::min(num_files, num_users);
    std::vector<double> p(static_cast<size_t>(cap) + 1, 0.0);
    Rng mix(seed);
    for (int s = 0; s < samples; ++s) {
        DemandVector d = sample_demands(cfg, dist, mix.next());
        p[static_cast<size_t>(d.distinct_count())] += 1.0;
    }
    for (auto& v : p) v /= static_cast<double>(samples);
    return p;
}

BoundResult yma_bound(int num_files, int num_users, double memory, const DemandDist& dist,
                      uint64_t mc_seed, int mc_samples) {
    if (memory < 0.0 || memory > static_cast<double>(num_files))
        throw std::invalid_argument("yma_bound: memory must lie in [0, N]");
    std::vector<double> pmf = dist.kind == DemandDist::Kind::uniform
                                  ? distinct_demand_pmf(num_files, num_users)
                                  : distinct_demand_pmf_mc(num_files, num_users, dist, mc_seed,
                                                           mc_samples);
    if (memory == 0.0) {
        double mean_distinct = 0.0;
        for (size_t j = 1; j < pmf.size(); ++j)
            mean_distinct += static_cast<double>(j) * pmf[j];
        return {mean_distinct, true};
    }
    const double ratio = (static_cast<double>(num_files) - memory) / static_cast<double>(num_files);
    double expectation = 0.0;
    for (size_t j = 1; j < pmf.size(); ++j)
        expectation += pmf[j] * (1.0 - std::pow(ratio, static_cast<double>(j)));
    double value =
        (static_cast<double>(num_files) - memory) / memory * expectation;
    return {value, false};
}

}  // namespace ccsim
