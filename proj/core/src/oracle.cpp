#include "ccsim/oracle.hpp"

namespace ccsim {

DecodabilityChecker::DecodabilityChecker(const CacheState& cache, int user, const SystemConfig& cfg)
    : cfg_(cfg), cache_mask_(&cache.user_mask(user)), elim_(cfg.total_bits()) {}

void DecodabilityChecker::add_codeword(const Codeword& cw) {
    int64_t len = cw.length();
    for (int64_t offset = 0; offset < len; ++offset) {
        BitVec row(cfg_.total_bits());
        for (const auto& seg : cw.segments) {
            if (offset >= static_cast<int64_t>(seg.bits.size())) continue;
            row.flip(cfg_.bit_column(seg.file, seg.bits[static_cast<size_t>(offset)]));
        }
        // positions the user caches are free to cancel
        row.and_not(*cache_mask_);
        elim_.insert(std::move(row));
    }
}

void DecodabilityChecker::add_log(const TransmissionLog& log) {
    for (const auto& cw : log.codewords) add_codeword(cw);
}

bool DecodabilityChecker::can_decode_bit(int file, int64_t bit) const {
    int64_t col = cfg_.bit_column(file, bit);
    if (cache_mask_->get(col)) return true;
    return elim_.contains_unit(col);
}

bool DecodabilityChecker::can_decode_file(int file) const {
    for (int64_t bit = 0; bit < cfg_.file_bits; ++bit)
        if (!can_decode_bit(file, bit)) return false;
    return true;
}

bool decodable(const CacheState& cache, const TransmissionLog& log, int user, int demanded_file,
               const SystemConfig& cfg) {
    DecodabilityChecker checker(cache, user, cfg);
    checker.add_log(log);
    return checker.can_decode_file(demanded_file);
}

bool all_users_decodable(const CacheState& cache, const TransmissionLog& log,
                         const DemandVector& demand, const SystemConfig& cfg) {
    for (int user = 1; user <= cfg.num_users; ++user)
        if (!decodable(cache, log, user, demand.of_user(user), cfg)) return false;
    return true;
}

}  // namespace ccsim
