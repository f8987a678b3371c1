#include "ccsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace ccsim {

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.size_ != size_) throw std::invalid_argument("BitVec xor: size mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

void BitVec::and_not(const BitVec& mask) {
    if (mask.size_ != size_) throw std::invalid_argument("BitVec and_not: size mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~mask.words_[i];
}

bool BitVec::any() const {
    for (uint64_t w : words_)
        if (w) return true;
    return false;
}

int64_t BitVec::count() const {
    int64_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

int64_t BitVec::lowest_set() const {
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<int64_t>(i) * 64 + std::countr_zero(words_[i]);
    return -1;
}

BitVec xor_pad(const std::vector<BitVec>& segments) {
    if (segments.empty()) throw std::invalid_argument("xor_pad: no segments");
    int64_t len = 0;
    for (const auto& s : segments) len = std::max(len, s.size());
    BitVec out(len);
    for (const auto& s : segments) {
        auto dst = out.words();
        auto src = s.words();
        for (size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
    }
    return out;
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::random(int rows, int cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        auto w = m.row(r);
        for (auto& word : w) word = rng.next();
        if (cols & 63) w.back() &= ~uint64_t{0} >> (64 - (cols & 63));
    }
    return m;
}

bool BitMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c) != (r == c)) return false;
    return true;
}

int rank(const BitMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Gf2Eliminator elim(m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        BitVec row(m.cols());
        auto src = m.row(r);
        auto dst = row.words();
        for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
        elim.insert(std::move(row));
    }
    return static_cast<int>(elim.rank());
}

void Gf2Eliminator::reduce(BitVec& v) const {
    for (;;) {
        int64_t lead = v.lowest_set();
        if (lead < 0) return;
        int32_t p = pivot_row_[static_cast<size_t>(lead)];
        if (p < 0) return;
        v ^= rows_[static_cast<size_t>(p)];
    }
}

bool Gf2Eliminator::insert(BitVec row) {
    reduce(row);
    int64_t lead = row.lowest_set();
    if (lead < 0) return false;
    pivot_row_[static_cast<size_t>(lead)] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

bool Gf2Eliminator::contains_unit(int64_t col) const {
    BitVec v(cols_);
    v.set(col);
    return contains(v);
}

bool Gf2Eliminator::contains(const BitVec& v) const {
    BitVec scratch = v;
    reduce(scratch);
    return !scratch.any();
}

int ColorKnowledge::min_known() const {
    int64_t best = num_colors;
    for (const auto& a : known) best = std::min(best, a.count());
    return static_cast<int>(best);
}

namespace {

// Full column rank of the columns of `c` outside `skip`, checked by inserting
// column vectors into an eliminator over GF(2)^rows; early exit on the first
// dependent column.
bool columns_independent(const BitMatrix& c, const BitVec& skip) {
    Gf2Eliminator elim(c.rows());
    for (int col = 0; col < c.cols(); ++col) {
        if (skip.get(col)) continue;
        BitVec v(c.rows());
        for (int r = 0; r < c.rows(); ++r)
            if (c.get(r, col)) v.set(r);
        if (!elim.insert(std::move(v))) return false;
    }
    return true;
}

}  // namespace

bool rlc_valid(const BitMatrix& c, const ColorKnowledge& ck) {
    // Condition per user: the columns outside A_k span a space of dimension
    // L - |A_k|, i.e. they are linearly independent.
    std::vector<uint64_t> seen;
    for (const auto& a : ck.known) {
        uint64_t h = 1469598103934665603ULL;
        for (uint64_t w : a.words()) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        bool dup = false;
        for (uint64_t s : seen) dup |= (s == h);
        if (dup) continue;  // identical knowledge, identical condition
        seen.push_back(h);
        if (!columns_independent(c, a)) return false;
    }
    return true;
}

BitMatrix build_rlc(const ColorKnowledge& ck, uint64_t seed, int attempts) {
    const int l = ck.num_colors;
    if (l < 1) throw std::invalid_argument("build_rlc: need at least one color");
    const int rows = l - ck.min_known();
    Rng rng(seed);
    for (int t = 0; t < attempts; ++t) {
        BitMatrix c = BitMatrix::random(rows, l, rng);
        if (rlc_valid(c, ck)) return c;
    }
    return BitMatrix::identity(l);
}

std::vector<UserSet> subsets_of_size(UserSet ground, int m) {
    std::vector<UserSet> out;
    std::vector<int> ids = ground.ids();
    int n = static_cast<int>(ids.size());
    if (m < 0 || m > n) return out;
    std::vector<int> idx(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<size_t>(i)] = i;
    for (;;) {
        UserSet s;
        for (int i : idx) s.insert(ids[static_cast<size_t>(i)]);
        out.push_back(s);
        int i = m - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - m + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < m; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace ccsim
