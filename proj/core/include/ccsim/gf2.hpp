#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccsim/rng.hpp"
#include "ccsim/user_set.hpp"

namespace ccsim {

/// Dense bit vector over GF(2), word-packed.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int64_t size) : size_(size), words_((size + 63) / 64, 0) {}

    int64_t size() const { return size_; }

    bool get(int64_t i) const { return (words_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }

    void set(int64_t i, bool v = true) {
        uint64_t mask = uint64_t{1} << (i & 63);
        auto& w = words_[static_cast<size_t>(i >> 6)];
        if (v)
            w |= mask;
        else
            w &= ~mask;
    }

    void flip(int64_t i) { words_[static_cast<size_t>(i >> 6)] ^= uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o);

    /// this &= ~mask; sizes must match.
    void and_not(const BitVec& mask);

    bool any() const;
    int64_t count() const;
    int64_t lowest_set() const;  // -1 when all-zero

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

private:
    int64_t size_ = 0;
    std::vector<uint64_t> words_;
};

/// Bitwise XOR of the segments after right-padding each with zeros to the
/// longest length. Throws on empty input.
BitVec xor_pad(const std::vector<BitVec>& segments);

/// Dense GF(2) matrix, row-major word-packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          data_(static_cast<size_t>(rows) * wpr_, 0) {}

    static BitMatrix identity(int n);
    static BitMatrix random(int rows, int cols, Rng& rng);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (row(r)[static_cast<size_t>(c >> 6)] >> (c & 63)) & 1;
    }
    void set(int r, int c, bool v = true) {
        uint64_t mask = uint64_t{1} << (c & 63);
        auto* w = &row(r)[static_cast<size_t>(c >> 6)];
        if (v)
            *w |= mask;
        else
            *w &= ~mask;
    }

    std::span<const uint64_t> row(int r) const {
        return {data_.data() + static_cast<size_t>(r) * wpr_, wpr_};
    }
    std::span<uint64_t> row(int r) {
        return {data_.data() + static_cast<size_t>(r) * wpr_, wpr_};
    }

    bool is_identity() const;

private:
    int rows_ = 0, cols_ = 0;
    size_t wpr_ = 0;
    std::vector<uint64_t> data_;
};

/// GF(2) rank by Gaussian elimination.
int rank(const BitMatrix& m);

/// Incremental forward elimination with a pivot-per-column map. Rows are
/// inserted one at a time; span-membership queries reuse the accumulated
/// pivots, which is what keeps the per-trial decodability check cheap.
class Gf2Eliminator {
public:
    explicit Gf2Eliminator(int64_t cols) : cols_(cols), pivot_row_(static_cast<size_t>(cols), -1) {}

    /// Reduces `row` against the current pivots and stores the residue if it
    /// is nonzero. Returns true when the rank increased.
    bool insert(BitVec row);

    /// Whether the unit vector e_col lies in the span of the inserted rows.
    bool contains_unit(int64_t col) const;

    /// Whether `v` lies in the span.
    bool contains(const BitVec& v) const;

    int64_t rank() const { return static_cast<int64_t>(rows_.size()); }
    int64_t cols() const { return cols_; }

private:
    void reduce(BitVec& v) const;

    int64_t cols_;
    std::vector<int32_t> pivot_row_;  // column -> index into rows_, -1 if free
    std::vector<BitVec> rows_;        // echelon rows, leading bit = pivot column
};

/// Per-user color knowledge for the random-linear-code compressor: entry k
/// holds the colors whose packets user k caches in full.
struct ColorKnowledge {
    int num_colors = 0;               // L
    std::vector<BitVec> known;        // K entries, each of length L

    int min_known() const;
};

/// Builds the compression matrix C with rows = L - min_k |A_k| such that for
/// every user the columns outside A_k have full column rank. Retries up to
/// `attempts` random draws; on failure returns the LxL identity, meaning no
/// compression. Deterministic given the seed.
BitMatrix build_rlc(const ColorKnowledge& ck, uint64_t seed, int attempts = 10);

/// True when `c` satisfies every user's rank condition from `ck`.
bool rlc_valid(const BitMatrix& c, const ColorKnowledge& ck);

}  // namespace ccsim
