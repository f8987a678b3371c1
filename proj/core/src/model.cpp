#include "ccsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccsim {

void SystemConfig::validate() const {
    if (num_files < 1) throw std::invalid_argument("num_files must be >= 1");
    if (num_users < 1 || num_users > UserSet::max_users)
        throw std::invalid_argument("num_users must be in [1:62]");
    if (file_bits < 1) throw std::invalid_argument("file_bits must be >= 1");
    if (memory < 0.0 || memory > static_cast<double>(num_files))
        throw std::invalid_argument("memory must lie in [0, N]");
    int b = packets();
    if (b < 1 || file_bits % b != 0)
        throw std::invalid_argument("packet_count must divide file_bits");
    if (cached_bits_per_file() > file_bits)
        throw std::invalid_argument("per-file cache exceeds file size");
}

CacheState::CacheState(int num_users, int num_files, int64_t file_bits)
    : num_files_(num_files), file_bits_(file_bits) {
    user_bits_.reserve(static_cast<size_t>(num_users));
    for (int k = 0; k < num_users; ++k)
        user_bits_.emplace_back(static_cast<int64_t>(num_files) * file_bits);
}

CacheState CacheState::random_placement(const SystemConfig& cfg, uint64_t seed) {
    cfg.validate();
    CacheState cache(cfg.num_users, cfg.num_files, cfg.file_bits);
    const int64_t take = cfg.cached_bits_per_file();
    Rng rng(seed);
    std::vector<int32_t> pool(static_cast<size_t>(cfg.file_bits));
    for (int user = 1; user <= cfg.num_users; ++user) {
        BitVec& bits = cache.user_bits_[static_cast<size_t>(user - 1)];
        for (int file = 1; file <= cfg.num_files; ++file) {
            // partial Fisher-Yates: the first `take` entries end up a uniform
            // sample without replacement
            std::iota(pool.begin(), pool.end(), 0);
            for (int64_t i = 0; i < take; ++i) {
                int64_t j = i + static_cast<int64_t>(rng.below(static_cast<uint64_t>(cfg.file_bits - i)));
                std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
                bits.set(cache.cfg_bit(file, pool[static_cast<size_t>(i)]));
            }
        }
    }
    return cache;
}

CacheState CacheState::prefix_placement(const SystemConfig& cfg) {
    cfg.validate();
    CacheState cache(cfg.num_users, cfg.num_files, cfg.file_bits);
    const int64_t take = cfg.cached_bits_per_file();
    for (int user = 1; user <= cfg.num_users; ++user) {
        BitVec& bits = cache.user_bits_[static_cast<size_t>(user - 1)];
        for (int file = 1; file <= cfg.num_files; ++file)
            for (int64_t b = 0; b < take; ++b) bits.set(cache.cfg_bit(file, b));
    }
    return cache;
}

CacheState CacheState::from_cells(const SystemConfig& cfg, const std::vector<Cell>& cells) {
    CacheState cache(cfg.num_users, cfg.num_files, cfg.file_bits);
    std::vector<int64_t> next(static_cast<size_t>(cfg.num_files) + 1, 0);
    for (const auto& cell : cells) {
        if (cell.file < 1 || cell.file > cfg.num_files)
            throw std::invalid_argument("from_cells: file id out of range");
        int64_t& cursor = next[static_cast<size_t>(cell.file)];
        if (cursor + cell.count > cfg.file_bits)
            throw std::invalid_argument("from_cells: cells exceed file size");
        for (int64_t i = 0; i < cell.count; ++i, ++cursor)
            for (int user : cell.cachers.ids())
                cache.user_bits_[static_cast<size_t>(user - 1)].set(cache.cfg_bit(cell.file, cursor));
    }
    // leftover bits: cached by everyone, so no scheme ever has to move them
    for (int file = 1; file <= cfg.num_files; ++file)
        for (int64_t b = next[static_cast<size_t>(file)]; b < cfg.file_bits; ++b)
            for (int user = 1; user <= cfg.num_users; ++user)
                cache.user_bits_[static_cast<size_t>(user - 1)].set(cache.cfg_bit(file, b));
    return cache;
}

bool CacheState::caches_packet(int user, int file, int packet, int packet_bits) const {
    int64_t base = static_cast<int64_t>(packet) * packet_bits;
    for (int64_t b = 0; b < packet_bits; ++b)
        if (!caches(user, file, base + b)) return false;
    return true;
}

int64_t CacheState::cached_count(int user, int file) const {
    const BitVec& bits = user_bits_[static_cast<size_t>(user - 1)];
    int64_t n = 0;
    for (int64_t b = 0; b < file_bits_; ++b)
        if (bits.get(cfg_bit(file, b))) ++n;
    return n;
}

void DemandDist::validate() const {
    if (kind == Kind::zipf && (exponent < 0.0 || !std::isfinite(exponent)))
        throw std::invalid_argument("zipf exponent must be >= 0");
}

DemandDist DemandDist::parse(const std::string& text) {
    DemandDist d;
    if (text == "uniform") return d;
    if (text.rfind("zipf:", 0) == 0) {
        d.kind = Kind::zipf;
        d.exponent = std::stod(text.substr(5));
        d.validate();
        return d;
    }
    throw std::invalid_argument("demand distribution must be 'uniform' or 'zipf:EXP'");
}

std::string DemandDist::name() const {
    if (kind == Kind::uniform) return "uniform";
    return "zipf:" + std::to_string(exponent);
}

std::vector<int> DemandVector::distinct() const {
    std::vector<int> out = d;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

UserSet DemandVector::demanders_of(int file) const {
    UserSet s;
    for (int k = 1; k <= num_users(); ++k)
        if (of_user(k) == file) s.insert(k);
    return s;
}

DemandVector sample_demands(const SystemConfig& cfg, const DemandDist& dist, uint64_t seed) {
    cfg.validate();
    dist.validate();
    Rng rng(seed);
    DemandVector demand;
    demand.d.resize(static_cast<size_t>(cfg.num_users));
    if (dist.kind == DemandDist::Kind::uniform) {
        for (auto& v : demand.d) v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(cfg.num_files)));
        return demand;
    }
    std::vector<double> cdf(static_cast<size_t>(cfg.num_files));
    double acc = 0.0;
    for (int i = 1; i <= cfg.num_files; ++i) {
        acc += std::pow(static_cast<double>(i), -dist.exponent);
        cdf[static_cast<size_t>(i - 1)] = acc;
    }
    for (auto& v : demand.d) {
        double u = rng.unit() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        v = static_cast<int>(it - cdf.begin()) + 1;
        if (v > cfg.num_files) v = cfg.num_files;
    }
    return demand;
}

const BitList* SubFileTables::cell(int file, UserSet w) const {
    auto it = partition_.find({file, w});
    return it == partition_.end() ? nullptr : &it->second;
}

void SubFileTables::init_requested(const DemandVector& demand) {
    common_.clear();
    individual_.clear();
    for (const auto& [key, bits] : partition_) {
        UserSet demanders = demand.demanders_of(key.file);
        bool wanted = false;
        for (int k : demanders.ids()) {
            if (key.cachers.contains(k)) continue;
            individual_[{k, key.cachers}] = bits;
            wanted = true;
        }
        if (wanted) common_[{key.file, key.cachers}] = bits;
    }
}

SubFileTables partition_subfiles(const CacheState& cache, const SystemConfig& cfg) {
    cfg.validate();
    SubFileTables tables;
    for (int file = 1; file <= cfg.num_files; ++file) {
        for (int64_t bit = 0; bit < cfg.file_bits; ++bit) {
            UserSet cachers;
            for (int user = 1; user <= cfg.num_users; ++user)
                if (cache.caches(user, file, bit)) cachers.insert(user);
            tables.partition_[{file, cachers}].push_back(static_cast<int32_t>(bit));
        }
    }
    return tables;
}

double subfile_fraction(const SystemConfig& cfg, int w_size) {
    if (w_size < 0 || w_size > cfg.num_users)
        throw std::invalid_argument("w_size must lie in [0, K]");
    double q = cfg.memory / static_cast<double>(cfg.num_files);
    return std::pow(q, w_size) * std::pow(1.0 - q, cfg.num_users - w_size);
}

LeaderSet leader_set(const DemandVector& demand, uint64_t seed, LeaderPolicy policy) {
    LeaderSet leaders;
    Rng rng(seed);
    for (int file : demand.distinct()) {
        std::vector<int> users = demand.demanders_of(file).ids();
        int pick = users.front();
        if (policy == LeaderPolicy::seeded_random)
            pick = users[static_cast<size_t>(rng.below(users.size()))];
        leaders.by_file[file] = pick;
        leaders.members.insert(pick);
    }
    return leaders;
}

}  // namespace ccsim
