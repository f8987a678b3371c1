#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccsim/gf2.hpp"
#include "ccsim/user_set.hpp"

namespace ccsim {

/// Problem dimensions. File ids and user ids are 1-based at every API
/// surface; bit indices are 0-based.
struct SystemConfig {
    int num_files = 1;    // N
    int num_users = 1;    // K
    int file_bits = 1;    // F
    double memory = 0.0;  // M, in file units, 0 <= M <= N
    int packet_count = 0; // B, divides F; 0 means B = F (bit-level packets)

    void validate() const;

    int packets() const { return packet_count > 0 ? packet_count : file_bits; }
    int packet_bits() const { return file_bits / packets(); }

    /// floor(M*F/N): bits of each file held per user. Under-fills on
    /// fractional budgets so the cache size is never exceeded. The small
    /// epsilon keeps dyadic M grids exact through the double division.
    int64_t cached_bits_per_file() const {
        double x = memory * static_cast<double>(file_bits) / static_cast<double>(num_files);
        return static_cast<int64_t>(x + 1e-9);
    }

    int64_t total_bits() const { return static_cast<int64_t>(num_files) * file_bits; }
    int64_t bit_column(int file, int64_t bit) const {
        return static_cast<int64_t>(file - 1) * file_bits + bit;
    }
};

/// A realization Z of every user's cache, stored as one bitmap per user over
/// the N*F bit positions.
class CacheState {
public:
    /// Each user independently picks cached_bits_per_file() bit indices of
    /// every file, uniformly without replacement. Deterministic given seed.
    static CacheState random_placement(const SystemConfig& cfg, uint64_t seed);

    /// Every user caches the same leading cached_bits_per_file() bits of each
    /// file (the uncoded baseline's placement).
    static CacheState prefix_placement(const SystemConfig& cfg);

    /// Test/fixture constructor: assigns each file's bits to the given
    /// (file, cacher set, count) cells in order; leftover bits of a file are
    /// cached by every user, which makes them inert in every scheme.
    struct Cell {
        int file;
        UserSet cachers;
        int64_t count;
    };
    static CacheState from_cells(const SystemConfig& cfg, const std::vector<Cell>& cells);

    bool caches(int user, int file, int64_t bit) const {
        return user_bits_[static_cast<size_t>(user - 1)].get(cfg_bit(file, bit));
    }
    bool caches_packet(int user, int file, int packet, int packet_bits) const;

    /// Bitmap over all N*F positions for one user.
    const BitVec& user_mask(int user) const { return user_bits_[static_cast<size_t>(user - 1)]; }

    int64_t cached_count(int user, int file) const;

    int num_users() const { return static_cast<int>(user_bits_.size()); }
    int num_files() const { return num_files_; }
    int64_t file_bits() const { return file_bits_; }

private:
    CacheState(int num_users, int num_files, int64_t file_bits);
    int64_t cfg_bit(int file, int64_t bit) const {
        return static_cast<int64_t>(file - 1) * file_bits_ + bit;
    }

    int num_files_ = 0;
    int64_t file_bits_ = 0;
    std::vector<BitVec> user_bits_;
};

/// Demand distribution: uniform over [1:N] or Zipf with exponent >= 0
/// (probability of file i proportional to i^-exponent).
struct DemandDist {
    enum class Kind { uniform, zipf };
    Kind kind = Kind::uniform;
    double exponent = 0.0;

    void validate() const;
    static DemandDist parse(const std::string& text);
    std::string name() const;
};

struct DemandVector {
    std::vector<int> d;  // K file ids, 1-based

    int num_users() const { return static_cast<int>(d.size()); }
    int of_user(int user) const { return d[static_cast<size_t>(user - 1)]; }

    /// Distinct demanded files, ascending.
    std::vector<int> distinct() const;
    int distinct_count() const { return static_cast<int>(distinct().size()); }
    UserSet demanders_of(int file) const;
};

/// K i.i.d. draws from the distribution; deterministic given seed.
DemandVector sample_demands(const SystemConfig& cfg, const DemandDist& dist, uint64_t seed);

using BitList = std::vector<int32_t>;

/// Key of a sub-file cell F_{i,W}: bits of file i cached by exactly W.
struct CellKey {
    int file;
    UserSet cachers;
};
struct CellKeyLess {
    bool operator()(const CellKey& a, const CellKey& b) const {
        if (a.file != b.file) return a.file < b.file;
        return lex_less(a.cachers, b.cachers);
    }
};

/// Key of a per-user requested cell D_{k,J}.
struct UserCellKey {
    int user;
    UserSet cachers;
};
struct UserCellKeyLess {
    bool operator()(const UserCellKey& a, const UserCellKey& b) const {
        if (a.user != b.user) return a.user < b.user;
        return lex_less(a.cachers, b.cachers);
    }
};

/// Partition of every file's bits by exact cacher set, plus the mutable
/// common/individual requested views used by the borrowing schemes.
/// Cell sequences are kept in ascending bit order; borrow operations take
/// prefixes and removals preserve order.
class SubFileTables {
public:
    using PartitionMap = std::map<CellKey, BitList, CellKeyLess>;
    using CommonMap = std::map<CellKey, BitList, CellKeyLess>;
    using IndividualMap = std::map<UserCellKey, BitList, UserCellKeyLess>;

    const PartitionMap& partition() const { return partition_; }
    const BitList* cell(int file, UserSet w) const;

    /// Initializes common(i,J) and individual(k,J) from the partition for
    /// every demanded file i and demander k with d_k = i, k not in J.
    void init_requested(const DemandVector& demand);

    CommonMap& common() { return common_; }
    const CommonMap& common() const { return common_; }
    IndividualMap& individual() { return individual_; }
    const IndividualMap& individual() const { return individual_; }

    BitList& common_cell(int file, UserSet j) { return common_[{file, j}]; }
    BitList& individual_cell(int user, UserSet j) { return individual_[{user, j}]; }

    friend SubFileTables partition_subfiles(const CacheState&, const SystemConfig&);

private:
    PartitionMap partition_;
    CommonMap common_;
    IndividualMap individual_;
};

/// Assigns every bit of every file to its exact cacher-set cell, ascending
/// bit order inside each cell.
SubFileTables partition_subfiles(const CacheState& cache, const SystemConfig& cfg);

/// Expected fraction of a file falling in one specific cell with |W| = w_size:
/// (M/N)^w * (1 - M/N)^(K-w).
double subfile_fraction(const SystemConfig& cfg, int w_size);

/// One XOR-aligned segment of a codeword: bit indices of one file in
/// transmission order. Shorter segments are implicitly zero-padded at the
/// tail when XOR-ed.
struct Segment {
    int file = 0;
    BitList bits;
    std::string origin;  // provenance label for traces
};

struct Codeword {
    std::vector<Segment> segments;

    int64_t length() const {
        int64_t len = 0;
        for (const auto& s : segments) len = std::max<int64_t>(len, static_cast<int64_t>(s.bits.size()));
        return len;
    }
};

struct TransmissionLog {
    std::vector<Codeword> codewords;

    /// Appends unless every segment is empty; zero-length codewords carry no
    /// bits and are suppressed in every scheme.
    void push(Codeword cw) {
        if (cw.length() > 0) codewords.push_back(std::move(cw));
    }

    int64_t total_bits() const {
        int64_t n = 0;
        for (const auto& c : codewords) n += c.length();
        return n;
    }
    double load_files(const SystemConfig& cfg) const {
        return static_cast<double>(total_bits()) / static_cast<double>(cfg.file_bits);
    }
};

/// One designated demander per distinct demanded file.
struct LeaderSet {
    std::map<int, int> by_file;  // distinct file -> leader user
    UserSet members;

    bool touches(UserSet s) const { return s.intersects(members); }
};

enum class LeaderPolicy { lowest_index, seeded_random };

/// Default policy picks the lowest-index demander of each distinct file;
/// the seeded policy picks uniformly among its demanders.
LeaderSet leader_set(const DemandVector& demand, uint64_t seed,
                     LeaderPolicy policy = LeaderPolicy::lowest_index);

}  // namespace ccsim
