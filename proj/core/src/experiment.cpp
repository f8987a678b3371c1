#include "ccsim/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ccsim/graph.hpp"
#include "ccsim/oracle.hpp"
#include "ccsim/rng.hpp"
#include "ccsim/schemes.hpp"

namespace ccsim {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::uncoded: return "uncoded";
        case Scheme::decman: return "decman";
        case Scheme::yma: return "yma";
        case Scheme::hcd: return "hcd";
        case Scheme::mhcd: return "mhcd";
        case Scheme::hglc: return "hglc";
        case Scheme::ahglc: return "ahglc";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    for (Scheme s : {Scheme::uncoded, Scheme::decman, Scheme::yma, Scheme::hcd, Scheme::mhcd,
                     Scheme::hglc, Scheme::ahglc})
        if (name == scheme_name(s)) return s;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
    std::vector<Scheme> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_scheme(item));
    if (out.empty()) throw std::invalid_argument("empty scheme list");
    return out;
}

void ExperimentSpec::validate() const {
    SystemConfig probe = base;
    if (memory_grid.empty()) throw std::invalid_argument("memory grid is empty");
    for (double m : memory_grid) {
        probe.memory = m;
        probe.validate();
    }
    if (schemes.empty()) throw std::invalid_argument("scheme list is empty");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    dist.validate();
}

namespace {

enum StreamTag : uint64_t { placement_stream = 0, demand_stream = 1, scheme_stream_base = 2 };

TransmissionLog run_scheme(Scheme scheme, const CacheState& cache, const DemandVector& demand,
                           const SystemConfig& cfg, uint64_t scheme_seed) {
    switch (scheme) {
        case Scheme::uncoded:
            return uncoded_delivery(cache, demand, cfg);
        case Scheme::decman:
            return decman_delivery(cache, demand, cfg);
        case Scheme::yma:
            return yma_delivery(cache, demand, leader_set(demand, scheme_seed), cfg);
        case Scheme::hcd:
            return hcd_delivery(cache, demand, cfg);
        case Scheme::mhcd:
            return mhcd_delivery(cache, demand, leader_set(demand, scheme_seed), cfg);
        case Scheme::hglc:
        case Scheme::ahglc: {
            ConflictGraph g = build_conflict_graph(cache, demand, cfg);
            uint64_t color_seed = derive_seed(scheme_seed, {1});
            uint64_t rlc_seed = derive_seed(scheme_seed, {2});
            Coloring col = scheme == Scheme::hglc ? hglc_color(g, color_seed)
                                                  : ahglc_color(g, color_seed);
            return coloring_to_log(col, g, cache, cfg, rlc_seed);
        }
    }
    throw std::logic_error("unreachable scheme");
}

}  // namespace

TrialResult run_trial(const ExperimentSpec& spec, Scheme scheme, int m_index, int trial) {
    SystemConfig cfg = spec.base;
    cfg.memory = spec.memory_grid[static_cast<size_t>(m_index)];
    cfg.validate();

    const uint64_t place_seed =
        derive_seed(spec.master_seed, {static_cast<uint64_t>(m_index), static_cast<uint64_t>(trial),
                                       placement_stream});
    const uint64_t demand_seed =
        derive_seed(spec.master_seed, {static_cast<uint64_t>(m_index), static_cast<uint64_t>(trial),
                                       demand_stream});
    const uint64_t scheme_seed = derive_seed(
        spec.master_seed, {static_cast<uint64_t>(m_index), static_cast<uint64_t>(trial),
                           scheme_stream_base + static_cast<uint64_t>(scheme)});

    auto start = std::chrono::steady_clock::now();
    CacheState cache = scheme == Scheme::uncoded ? CacheState::prefix_placement(cfg)
                                                 : CacheState::random_placement(cfg, place_seed);
    DemandVector demand = sample_demands(cfg, spec.dist, demand_seed);
    TransmissionLog log = run_scheme(scheme, cache, demand, cfg, scheme_seed);

    TrialResult result;
    result.scheme = scheme;
    result.memory = cfg.memory;
    result.trial = trial;
    result.load_bits = log.total_bits();
    result.load_files = log.load_files(cfg);
    result.decodable = spec.verify ? all_users_decodable(cache, log, demand, cfg) : true;
    result.seed = place_seed;
    if (spec.timing) {
        auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        result.elapsed_ms = static_cast<double>(ns) / 1e6;
    }
    return result;
}

std::vector<SchemeStats> summarize(const ExperimentSpec& spec,
                                   const std::vector<TrialResult>& rows) {
    std::vector<SchemeStats> out;
    for (Scheme scheme : spec.schemes) {
        for (double m : spec.memory_grid) {
            SchemeStats st;
            st.scheme = scheme;
            st.memory = m;
            double sum = 0.0, sq = 0.0;
            for (const auto& r : rows) {
                if (r.scheme != scheme || r.memory != m) continue;
                ++st.trials;
                sum += r.load_files;
                sq += r.load_files * r.load_files;
                if (!r.decodable) ++st.decode_failures;
            }
            if (st.trials == 0) continue;
            const double n = static_cast<double>(st.trials);
            st.mean_load = sum / n;
            if (st.trials >= 2) {
                double var = (sq - sum * sum / n) / (n - 1.0);
                st.stddev = std::sqrt(std::max(0.0, var));
                st.std_defined = true;
                st.ci95 = 1.96 * st.stddev / std::sqrt(n);
            }
            out.push_back(st);
        }
    }
    return out;
}

ExperimentResults monte_carlo(const ExperimentSpec& spec) {
    spec.validate();
    const size_t num_m = spec.memory_grid.size();
    const size_t num_s = spec.schemes.size();
    const size_t per_cell = static_cast<size_t>(spec.trials);
    const size_t total = num_s * num_m * per_cell;

    ExperimentResults results;
    results.spec = spec;
    results.rows.resize(total);

    int threads = spec.threads > 0 ? spec.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, static_cast<int>(total));

    std::atomic<size_t> cursor{0};
    std::mutex err_mutex;

    auto worker = [&]() {
        for (;;) {
            size_t at = cursor.fetch_add(1);
            if (at >= total) return;
            size_t si = at / (num_m * per_cell);
            size_t mi = (at / per_cell) % num_m;
            size_t ti = at % per_cell;
            TrialResult row;
            try {
                row = run_trial(spec, spec.schemes[si], static_cast<int>(mi),
                                static_cast<int>(ti));
            } catch (const std::exception& e) {
                // a scheme failure is recorded, never silently dropped
                row.scheme = spec.schemes[si];
                row.memory = spec.memory_grid[mi];
                row.trial = static_cast<int>(ti);
                row.decodable = false;
                std::lock_guard<std::mutex> lock(err_mutex);
                if (results.first_error.empty()) results.first_error = e.what();
            }
            results.rows[at] = row;
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    results.summary = summarize(spec, results.rows);
    return results;
}

}  // namespace ccsim
