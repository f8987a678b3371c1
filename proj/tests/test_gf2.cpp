#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ccsim/gf2.hpp"
#include "ccsim/model.hpp"
#include "ccsim/oracle.hpp"
#include "ccsim/rng.hpp"
#include "ccsim/schemes.hpp"

using namespace ccsim;

namespace {

BitVec from_bits(const std::vector<int>& bits) {
    BitVec v(static_cast<int64_t>(bits.size()));
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) v.set(static_cast<int64_t>(i));
    return v;
}

BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    BitMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c]) m.set(static_cast<int>(r), static_cast<int>(c));
    return m;
}

// O(2^rows) span enumeration, the independent rank oracle for small matrices
int naive_rank(const BitMatrix& m) {
    std::vector<uint64_t> span;
    for (int mask = 0; mask < (1 << m.rows()); ++mask) {
        uint64_t v = 0;
        for (int r = 0; r < m.rows(); ++r)
            if (mask & (1 << r))
                for (int c = 0; c < m.cols(); ++c)
                    if (m.get(r, c)) v ^= uint64_t{1} << c;
        if (std::find(span.begin(), span.end(), v) == span.end()) span.push_back(v);
    }
    int rank = 0;
    while ((size_t{1} << rank) < span.size()) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("xor_pad pads the tail") {
    BitVec out = xor_pad({from_bits({1, 0, 1}), from_bits({1, 1})});
    REQUIRE(out.size() == 3);
    CHECK(out.get(0) == false);
    CHECK(out.get(1) == true);
    CHECK(out.get(2) == true);  // 101 ^ 110 = 011
}

TEST_CASE("xor_pad identities") {
    BitVec x = from_bits({1, 0, 1, 1});
    CHECK(xor_pad({x}) == x);
    BitVec zero = xor_pad({x, x});
    CHECK(zero.size() == 4);
    CHECK_FALSE(zero.any());
    CHECK_THROWS_AS(xor_pad({}), std::invalid_argument);
}

TEST_CASE("xor_pad is invariant under segment permutation") {
    Rng rng(21);
    for (int it = 0; it < 200; ++it) {
        std::vector<BitVec> segs;
        int n = 2 + static_cast<int>(rng.below(4));
        for (int s = 0; s < n; ++s) {
            BitVec v(1 + static_cast<int64_t>(rng.below(24)));
            for (int64_t b = 0; b < v.size(); ++b)
                if (rng.next() & 1) v.set(b);
            segs.push_back(std::move(v));
        }
        BitVec expect = xor_pad(segs);
        rng.shuffle(segs);
        CHECK(xor_pad(segs) == expect);
    }
}

TEST_CASE("rank spot values") {
    CHECK(rank(BitMatrix::identity(3)) == 3);
    CHECK(rank(BitMatrix(4, 5)) == 0);
    CHECK(rank(from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
}

TEST_CASE("rank agrees with the span-enumeration oracle") {
    Rng rng(31);
    for (int it = 0; it < 300; ++it) {
        int r = 1 + static_cast<int>(rng.below(6));
        int c = 1 + static_cast<int>(rng.below(6));
        BitMatrix m = BitMatrix::random(r, c, rng);
        CHECK(rank(m) == naive_rank(m));
    }
}

TEST_CASE("eliminator answers span-membership queries") {
    Gf2Eliminator elim(4);
    CHECK(elim.insert(from_bits({1, 1, 0, 0})));
    CHECK(elim.insert(from_bits({0, 1, 1, 0})));
    CHECK_FALSE(elim.insert(from_bits({1, 0, 1, 0})));
    CHECK(elim.rank() == 2);
    CHECK(elim.contains(from_bits({1, 0, 1, 0})));
    CHECK_FALSE(elim.contains_unit(0));
    CHECK(elim.insert(from_bits({0, 1, 0, 0})));
    CHECK(elim.contains_unit(0));
    CHECK_FALSE(elim.contains_unit(3));
}

namespace {

ColorKnowledge make_ck(int colors, const std::vector<std::vector<int>>& known_per_user) {
    ColorKnowledge ck;
    ck.num_colors = colors;
    for (const auto& list : known_per_user) {
        BitVec v(colors);
        for (int c : list) v.set(c - 1);  // 1-based colors at the surface
        ck.known.push_back(std::move(v));
    }
    return ck;
}

}  // namespace

TEST_CASE("build_rlc: vacuous condition for an all-knowing user") {
    // L=2, A_1={1,2}, A_2={}: user 1's condition is vacuous and any
    // invertible 2x2 matrix serves user 2
    ColorKnowledge ck = make_ck(2, {{1, 2}, {}});
    BitMatrix c = build_rlc(ck, 7);
    CHECK(c.cols() == 2);
    CHECK(c.rows() == 2);
    CHECK(rlc_valid(c, ck));
    CHECK(rank(c) == 2);
}

TEST_CASE("build_rlc satisfies the per-user rank conditions") {
    // L=3, each user fully knows one distinct color; a valid 2x3 matrix
    // exists (verified by exhaustive search over all 2^6 candidates, e.g.
    // rows 110 and 011)
    ColorKnowledge ck = make_ck(3, {{1}, {2}, {3}});
    bool exists = false;
    for (int mask = 0; mask < 64 && !exists; ++mask) {
        BitMatrix cand(2, 3);
        for (int bit = 0; bit < 6; ++bit)
            if (mask & (1 << bit)) cand.set(bit / 3, bit % 3);
        exists = rlc_valid(cand, ck);
    }
    CHECK(exists);

    BitMatrix c = build_rlc(ck, 99);
    CHECK(c.rows() == 2);
    CHECK(c.cols() == 3);
    CHECK(rlc_valid(c, ck));
}

TEST_CASE("build_rlc: no knowledge forces an invertible square matrix") {
    ColorKnowledge ck = make_ck(4, {{}, {}});
    BitMatrix c = build_rlc(ck, 3);
    CHECK(c.rows() == 4);
    CHECK(c.cols() == 4);
    CHECK(rank(c) == 4);
}

TEST_CASE("build_rlc falls back to the identity when out of attempts") {
    ColorKnowledge ck = make_ck(3, {{1}, {2}});
    BitMatrix c = build_rlc(ck, 5, 0);
    CHECK(c.is_identity());
    CHECK(c.rows() == 3);
}

// --- decodability oracle -----------------------------------------------

namespace {

SystemConfig tiny_cfg(int n, int k, int f, double m) {
    SystemConfig cfg;
    cfg.num_files = n;
    cfg.num_users = k;
    cfg.file_bits = f;
    cfg.memory = m;
    return cfg;
}

Codeword plain_codeword(int file, BitList bits) {
    Codeword cw;
    cw.segments.push_back({file, std::move(bits), "test"});
    return cw;
}

}  // namespace

TEST_CASE("oracle: full cache decodes an empty log") {
    SystemConfig cfg = tiny_cfg(2, 3, 6, 2.0);
    CacheState cache = CacheState::random_placement(cfg, 1);
    TransmissionLog log;
    for (int u = 1; u <= 3; ++u)
        for (int f = 1; f <= 2; ++f) CHECK(decodable(cache, log, u, f, cfg));
}

TEST_CASE("oracle: uncoded transmission covers an empty cache") {
    SystemConfig cfg = tiny_cfg(2, 2, 5, 0.0);
    CacheState cache = CacheState::random_placement(cfg, 1);
    TransmissionLog log;
    log.push(plain_codeword(1, {0, 1, 2, 3, 4}));
    log.push(plain_codeword(2, {0, 1, 2, 3, 4}));
    CHECK(decodable(cache, log, 1, 1, cfg));
    CHECK(decodable(cache, log, 2, 2, cfg));

    TransmissionLog missing;
    missing.push(plain_codeword(1, {0, 1, 2, 3}));  // bit 4 absent
    CHECK_FALSE(decodable(cache, missing, 1, 1, cfg));
}

TEST_CASE("oracle: XOR cancellation uses the cache") {
    SystemConfig cfg = tiny_cfg(2, 2, 2, 1.0);
    // user 1 caches file 2 entirely, user 2 caches file 1 entirely
    CacheState cache = CacheState::from_cells(
        cfg, {{1, UserSet::of({2}), 2}, {2, UserSet::of({1}), 2}});
    Codeword cw;
    cw.segments.push_back({1, {0, 1}, "a"});
    cw.segments.push_back({2, {0, 1}, "b"});
    TransmissionLog log;
    log.push(std::move(cw));
    CHECK_FALSE(decodable(cache, TransmissionLog{}, 1, 1, cfg));
    CHECK(decodable(cache, log, 1, 1, cfg));
    CHECK(decodable(cache, log, 2, 2, cfg));
    CHECK(decodable(cache, log, 1, 2, cfg));  // fully cached counts as decodable
}

TEST_CASE("oracle monotonicity: more codewords never hurt") {
    SystemConfig cfg = tiny_cfg(2, 3, 8, 0.75);
    Rng rng(17);
    for (int it = 0; it < 40; ++it) {
        CacheState cache = CacheState::random_placement(cfg, rng.next());
        DemandVector demand = sample_demands(cfg, DemandDist{}, rng.next());
        TransmissionLog log = decman_delivery(cache, demand, cfg);
        std::vector<DecodabilityChecker> checkers;
        for (int u = 1; u <= 3; ++u) checkers.emplace_back(cache, u, cfg);
        std::vector<bool> was(3, false);
        for (const auto& cw : log.codewords) {
            for (int u = 1; u <= 3; ++u) {
                checkers[static_cast<size_t>(u - 1)].add_codeword(cw);
                bool now = checkers[static_cast<size_t>(u - 1)].can_decode_file(demand.of_user(u));
                CHECK((was[static_cast<size_t>(u - 1)] ? now : true));
                was[static_cast<size_t>(u - 1)] = now;
            }
        }
    }
}
