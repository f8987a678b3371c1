#include "ccsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccsim/bounds.hpp"

namespace ccsim {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string spec_dist_name(const ExperimentSpec& spec) { return spec.dist.name(); }

std::string results_csv_text(const ExperimentResults& results) {
    std::ostringstream out;
    out << "scheme,M,trial,load_bits,load_files,decodable,elapsed_ms,seed\n";
    for (const auto& r : results.rows) {
        out << scheme_name(r.scheme) << ',' << format_double(r.memory) << ',' << r.trial << ','
            << r.load_bits << ',' << format_double(r.load_files) << ',' << (r.decodable ? 1 : 0)
            << ',' << format_double(r.elapsed_ms) << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string summary_csv_text(const ExperimentResults& results) {
    std::ostringstream out;
    out << "scheme,M,trials,mean_load,stddev,std_defined,ci95,decode_failures,yma_bound\n";
    for (const auto& s : results.summary) {
        BoundResult bound = yma_bound(results.spec.base.num_files, results.spec.base.num_users,
                                      s.memory, results.spec.dist,
                                      derive_seed(results.spec.master_seed, {0xb0}), 200000);
        out << scheme_name(s.scheme) << ',' << format_double(s.memory) << ',' << s.trials << ','
            << format_double(s.mean_load) << ',' << format_double(s.stddev) << ','
            << (s.std_defined ? 1 : 0) << ',' << format_double(s.ci95) << ','
            << s.decode_failures << ',' << format_double(bound.value) << '\n';
    }
    return out.str();
}

}  // namespace

void write_results_csv(const ExperimentResults& results, const std::string& path) {
    write_text_file(path, results_csv_text(results));
}

void write_summary_csv(const ExperimentResults& results, const std::string& path) {
    write_text_file(path, summary_csv_text(results));
}

nlohmann::json results_to_json(const ExperimentResults& results) {
    const ExperimentSpec& spec = results.spec;
    nlohmann::json j;
    j["spec"] = {
        {"n", spec.base.num_files},       {"k", spec.base.num_users},
        {"f", spec.base.file_bits},       {"b", spec.base.packets()},
        {"memory_grid", spec.memory_grid}, {"trials", spec.trials},
        {"seed", spec.master_seed},       {"dist", spec_dist_name(spec)},
        {"verify", spec.verify},          {"timing", spec.timing},
    };
    auto& schemes = j["spec"]["schemes"] = nlohmann::json::array();
    for (Scheme s : spec.schemes) schemes.push_back(scheme_name(s));

    auto& rows = j["results"] = nlohmann::json::array();
    for (const auto& r : results.rows) {
        rows.push_back({{"scheme", scheme_name(r.scheme)},
                        {"m", r.memory},
                        {"trial", r.trial},
                        {"load_bits", r.load_bits},
                        {"load_files", r.load_files},
                        {"decodable", r.decodable},
                        {"elapsed_ms", r.elapsed_ms},
                        {"seed", r.seed}});
    }
    auto& summary = j["summary"] = nlohmann::json::array();
    for (const auto& s : results.summary) {
        BoundResult bound = yma_bound(spec.base.num_files, spec.base.num_users, s.memory,
                                      spec.dist, derive_seed(spec.master_seed, {0xb0}), 200000);
        summary.push_back({{"scheme", scheme_name(s.scheme)},
                           {"m", s.memory},
                           {"trials", s.trials},
                           {"mean_load", s.mean_load},
                           {"stddev", s.stddev},
                           {"std_defined", s.std_defined},
                           {"ci95", s.ci95},
                           {"decode_failures", s.decode_failures},
                           {"yma_bound", bound.value}});
    }
    if (!results.first_error.empty()) j["first_error"] = results.first_error;
    return j;
}

void write_results_json(const ExperimentResults& results, const std::string& path) {
    write_text_file(path, results_to_json(results).dump(2) + "\n");
}

ExperimentResults results_from_json(const nlohmann::json& j) {
    ExperimentResults results;
    const auto& spec = j.at("spec");
    results.spec.base.num_files = spec.at("n").get<int>();
    results.spec.base.num_users = spec.at("k").get<int>();
    results.spec.base.file_bits = spec.at("f").get<int>();
    results.spec.base.packet_count = spec.at("b").get<int>();
    results.spec.memory_grid = spec.at("memory_grid").get<std::vector<double>>();
    results.spec.trials = spec.at("trials").get<int>();
    results.spec.master_seed = spec.at("seed").get<uint64_t>();
    results.spec.dist = DemandDist::parse(spec.at("dist").get<std::string>());
    results.spec.verify = spec.at("verify").get<bool>();
    results.spec.timing = spec.at("timing").get<bool>();
    for (const auto& name : spec.at("schemes"))
        results.spec.schemes.push_back(parse_scheme(name.get<std::string>()));

    for (const auto& row : j.at("results")) {
        TrialResult r;
        r.scheme = parse_scheme(row.at("scheme").get<std::string>());
        r.memory = row.at("m").get<double>();
        r.trial = row.at("trial").get<int>();
        r.load_bits = row.at("load_bits").get<int64_t>();
        r.load_files = row.at("load_files").get<double>();
        r.decodable = row.at("decodable").get<bool>();
        r.elapsed_ms = row.at("elapsed_ms").get<double>();
        r.seed = row.at("seed").get<uint64_t>();
        results.rows.push_back(r);
    }
    results.summary = summarize(results.spec, results.rows);
    return results;
}

ExperimentResults read_results_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    return results_from_json(j);
}

nlohmann::json trace_to_json(const SystemConfig& cfg, const std::string& scheme, uint64_t seed,
                             const DemandVector& demand, const LeaderSet& leaders,
                             const CacheState& cache, const TransmissionLog& log,
                             const std::vector<bool>& user_decodable, bool include_cache) {
    nlohmann::json j;
    j["config"] = {{"n", cfg.num_files}, {"k", cfg.num_users},      {"f", cfg.file_bits},
                   {"m", cfg.memory},    {"b", cfg.packets()}};
    j["scheme"] = scheme;
    j["seed"] = seed;
    j["demand"] = demand.d;
    auto& lj = j["leaders"] = nlohmann::json::array();
    for (const auto& [file, user] : leaders.by_file) lj.push_back({{"file", file}, {"user", user}});

    auto& cws = j["codewords"] = nlohmann::json::array();
    for (const auto& cw : log.codewords) {
        nlohmann::json cj;
        cj["length"] = cw.length();
        auto& segs = cj["segments"] = nlohmann::json::array();
        for (const auto& seg : cw.segments)
            segs.push_back({{"file", seg.file}, {"bits", seg.bits}, {"origin", seg.origin}});
        cws.push_back(std::move(cj));
    }
    j["load_bits"] = log.total_bits();
    j["load_files"] = log.load_files(cfg);
    j["decodable"] = user_decodable;

    if (include_cache) {
        auto& cj = j["cache"] = nlohmann::json::array();
        for (int user = 1; user <= cfg.num_users; ++user) {
            nlohmann::json uj;
            uj["user"] = user;
            auto& files = uj["files"] = nlohmann::json::array();
            for (int file = 1; file <= cfg.num_files; ++file) {
                BitList bits;
                for (int64_t b = 0; b < cfg.file_bits; ++b)
                    if (cache.caches(user, file, b)) bits.push_back(static_cast<int32_t>(b));
                files.push_back({{"file", file}, {"bits", bits}});
            }
            cj.push_back(std::move(uj));
        }
    }
    return j;
}

nlohmann::json graph_to_json(const ConflictGraph& g) {
    nlohmann::json j;
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (int v = 0; v < g.num_nodes(); ++v) {
        nodes.push_back({{"id", v},
                         {"user", g.node_user(v)},
                         {"file", g.packet_file(g.node_packet(v))},
                         {"packet", g.packet_index(g.node_packet(v))},
                         {"knowers", g.knowers(v).ids()}});
    }
    auto& edges = j["edges"] = nlohmann::json::array();
    for (int v = 0; v < g.num_nodes(); ++v)
        for (int w = 0; w < g.num_nodes(); ++w)
            if (v != w && g.edge(v, w)) edges.push_back({v, w});
    return j;
}

}  // namespace ccsim
