#pragma once

#include "ccsim/gf2.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

/// Incremental GF(2) span tracker for one user: columns are the N*F file-bit
/// positions, rows are the user's cached positions (folded in as a mask) plus
/// one row per bit offset of every received codeword.
class DecodabilityChecker {
public:
    DecodabilityChecker(const CacheState& cache, int user, const SystemConfig& cfg);

    /// Folds a codeword into the span. Offset j contributes one row: the XOR
    /// of the positions aligned at j over all segments long enough to reach
    /// it; zero-pad offsets contribute nothing.
    void add_codeword(const Codeword& cw);

    void add_log(const TransmissionLog& log);

    /// Every bit of `file` the user does not cache lies in the span.
    bool can_decode_file(int file) const;

    /// Single position check (cached positions count as decodable).
    bool can_decode_bit(int file, int64_t bit) const;

private:
    const SystemConfig cfg_;
    const BitVec* cache_mask_;
    Gf2Eliminator elim_;
};

/// True iff the user can reconstruct every bit of the demanded file from its
/// cache plus the logged codewords.
bool decodable(const CacheState& cache, const TransmissionLog& log, int user, int demanded_file,
               const SystemConfig& cfg);

/// Runs the oracle for every user against its demanded file.
bool all_users_decodable(const CacheState& cache, const TransmissionLog& log,
                         const DemandVector& demand, const SystemConfig& cfg);

}  // namespace ccsim
