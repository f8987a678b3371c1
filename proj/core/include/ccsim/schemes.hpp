#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

/// Transmits, per distinct demanded file, the union of bits missed by any of
/// its demanders, uncoded. With the identical-prefix placement this is the
/// classical uncoded baseline.
TransmissionLog uncoded_delivery(const CacheState& cache, const DemandVector& demand,
                                 const SystemConfig& cfg);

/// One codeword per nonempty S in [1:K]: XOR of F_{d_s, S\{s}} over s in S,
/// shorter sub-files zero-padded. Codewords iterated by |S| then lex order.
TransmissionLog decman_delivery(const CacheState& cache, const DemandVector& demand,
                                const SystemConfig& cfg);

/// decman restricted to the S that intersect the leader set; the omitted
/// codewords are linear combinations of the kept ones.
TransmissionLog yma_delivery(const CacheState& cache, const DemandVector& demand,
                             const LeaderSet& leaders, const SystemConfig& cfg);

/// Round-robin bit collection over candidate sub-files: candidates sorted by
/// descending length (ties keep candidate order), then bit b of candidate a
/// with a cycling fastest, until `quota` bits are collected. When the
/// candidates hold at most `quota` bits in total, everything is returned.
BitList getbits(const std::vector<BitList>& candidates, int64_t quota);

/// Audit trail of delivered bits: each record says that after the first
/// `codewords_emitted` codewords of the log, `user` can decode `bits` of
/// `file`. Used by the bit-conservation tests.
struct DeliveryAudit {
    struct Record {
        size_t codewords_emitted;
        int user;
        int file;
        BitList bits;
    };
    std::vector<Record> records;
};

/// Per-user borrowing delivery: treats each sub-file demanded by each user
/// as a distinct message; shorter terms of each XOR borrow tail bits from
/// the user's higher-type sub-files before zero-padding.
TransmissionLog hcd_delivery(const CacheState& cache, const DemandVector& demand,
                             const SystemConfig& cfg, DeliveryAudit* audit = nullptr);

/// Borrow-order policy: Algorithm-style round robin over the candidate cells
/// (the default), or sequentially exhausting one cell before the next.
enum class BorrowOrder { round_robin, sequential };

struct MhcdOptions {
    BorrowOrder borrow = BorrowOrder::round_robin;
    DeliveryAudit* audit = nullptr;
};

/// Multicast borrowing delivery: per step t, demanders of the same files are
/// grouped and served by shared segments Y_{i,J} (identical in every sum that
/// contains them, including identical borrowed padding); the remaining
/// per-user bits are flushed by an hcd-style cleanup pass.
TransmissionLog mhcd_delivery(const CacheState& cache, const DemandVector& demand,
                              const LeaderSet& leaders, const SystemConfig& cfg,
                              const MhcdOptions& opts = {});

}  // namespace ccsim
