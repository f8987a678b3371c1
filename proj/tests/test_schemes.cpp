#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ccsim/oracle.hpp"
#include "ccsim/rng.hpp"
#include "ccsim/schemes.hpp"

using namespace ccsim;

namespace {

SystemConfig make_cfg(int n, int k, int f, double m) {
    SystemConfig cfg;
    cfg.num_files = n;
    cfg.num_users = k;
    cfg.file_bits = f;
    cfg.memory = m;
    return cfg;
}

// placement where every cell of a demanded file with |W| = w has the same
// length; quota[w] bits per cell, remainder cached by everyone
CacheState symmetric_cells(const SystemConfig& cfg, const std::vector<int>& quota) {
    std::vector<CacheState::Cell> cells;
    for (int file = 1; file <= cfg.num_files; ++file)
        for (int w = 0; w < static_cast<int>(quota.size()); ++w)
            for (UserSet s : subsets_of_size(UserSet::full(cfg.num_users), w))
                cells.push_back({file, s, quota[static_cast<size_t>(w)]});
    return CacheState::from_cells(cfg, cells);
}

// canonical form of a log for set comparison: sorted per-codeword segment
// keys, then sorted codewords
std::multiset<std::string> codeword_set(const TransmissionLog& log) {
    std::multiset<std::string> out;
    for (const auto& cw : log.codewords) {
        std::vector<std::string> segs;
        for (const auto& s : cw.segments) {
            std::string t = std::to_string(s.file) + ":";
            for (int32_t b : s.bits) t += std::to_string(b) + ".";
            segs.push_back(std::move(t));
        }
        std::sort(segs.begin(), segs.end());
        std::string key;
        for (auto& s : segs) key += s + "|";
        out.insert(std::move(key));
    }
    return out;
}

bool logs_identical(const TransmissionLog& a, const TransmissionLog& b) {
    if (a.codewords.size() != b.codewords.size()) return false;
    for (size_t i = 0; i < a.codewords.size(); ++i) {
        const auto& ca = a.codewords[i];
        const auto& cb = b.codewords[i];
        if (ca.segments.size() != cb.segments.size()) return false;
        for (size_t s = 0; s < ca.segments.size(); ++s) {
            if (ca.segments[s].file != cb.segments[s].file) return false;
            if (ca.segments[s].bits != cb.segments[s].bits) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("uncoded: degenerate memory") {
    SystemConfig cfg = make_cfg(4, 6, 40, 0.0);
    CacheState cache = CacheState::prefix_placement(cfg);
    DemandVector d{{1, 1, 2, 3, 3, 3}};
    TransmissionLog log = uncoded_delivery(cache, d, cfg);
    CHECK(log.load_files(cfg) == doctest::Approx(3.0));  // |N(d)| file units

    cfg.memory = 4.0;
    CacheState full = CacheState::prefix_placement(cfg);
    CHECK(uncoded_delivery(full, d, cfg).codewords.empty());
}

TEST_CASE("uncoded: identical prefix placement leaves the remaining fraction") {
    SystemConfig cfg = make_cfg(4, 8, 400, 1.0);
    CacheState cache = CacheState::prefix_placement(cfg);
    DemandVector d{{1, 2, 2, 3, 1, 1, 2, 2}};
    TransmissionLog log = uncoded_delivery(cache, d, cfg);
    CHECK(log.load_files(cfg) == doctest::Approx(3.0 * (1.0 - 0.25)));
}

TEST_CASE("decman: K=1 transmits the uncached cell only") {
    SystemConfig cfg = make_cfg(2, 1, 10, 1.0);
    CacheState cache = CacheState::random_placement(cfg, 3);
    DemandVector d{{2}};
    TransmissionLog log = decman_delivery(cache, d, cfg);
    REQUIRE(log.codewords.size() == 1);
    CHECK(log.codewords[0].segments[0].file == 2);
    CHECK(log.total_bits() == 10 - cfg.cached_bits_per_file());
    CHECK(all_users_decodable(cache, log, d, cfg));
}

TEST_CASE("decman: full memory means an empty log") {
    SystemConfig cfg = make_cfg(2, 3, 12, 2.0);
    CacheState cache = CacheState::random_placement(cfg, 3);
    DemandVector d{{1, 2, 1}};
    CHECK(decman_delivery(cache, d, cfg).codewords.empty());
}

TEST_CASE("decman: symmetric all-distinct instance emits 2^K - 1 codewords") {
    SystemConfig cfg = make_cfg(3, 3, 16, 1.0);
    CacheState cache = symmetric_cells(cfg, {2, 2, 2});  // 2+6+6 = 14 bits placed, 2 inert
    DemandVector d{{1, 2, 3}};
    TransmissionLog log = decman_delivery(cache, d, cfg);
    CHECK(log.codewords.size() == 7);
    CHECK(all_users_decodable(cache, log, d, cfg));
}

TEST_CASE("yma equals decman when all demands are distinct") {
    SystemConfig cfg = make_cfg(4, 4, 32, 1.0);
    CacheState cache = CacheState::random_placement(cfg, 8);
    DemandVector d{{3, 1, 4, 2}};
    TransmissionLog a = decman_delivery(cache, d, cfg);
    TransmissionLog b = yma_delivery(cache, d, leader_set(d, 0), cfg);
    CHECK(logs_identical(a, b));
}

TEST_CASE("yma: repeated demands drop the leaderless codewords yet still decode") {
    SystemConfig cfg = make_cfg(2, 3, 8, 1.0);
    CacheState cache = symmetric_cells(cfg, {1, 1, 1, 1});
    DemandVector d{{1, 1, 1}};
    LeaderSet lead = leader_set(d, 0);
    TransmissionLog log = yma_delivery(cache, d, lead, cfg);
    // t=1: C(3,2) - C(2,2) = 2 codewords of size-2 sets
    int size2 = 0;
    for (const auto& cw : log.codewords) size2 += cw.segments.size() == 2;
    CHECK(size2 == 2);
    CHECK(all_users_decodable(cache, log, d, cfg));

    // count per size t+1 equals C(K,t+1) - C(K-|N(d)|,t+1) on symmetric cells
    SystemConfig cfg2 = make_cfg(2, 4, 16, 1.0);
    CacheState cache2 = symmetric_cells(cfg2, {1, 1, 1, 1, 1});
    DemandVector d2{{1, 2, 1, 2}};
    TransmissionLog log2 = yma_delivery(cache2, d2, leader_set(d2, 0), cfg2);
    std::map<size_t, int> by_size;
    for (const auto& cw : log2.codewords) ++by_size[cw.segments.size()];
    CHECK(by_size[1] == 2);  // C(4,1)-C(2,1)
    CHECK(by_size[2] == 5);  // C(4,2)-C(2,2)
    CHECK(by_size[3] == 4);  // C(4,3)-C(2,3)=4-0
    CHECK(by_size[4] == 1);
    CHECK(all_users_decodable(cache2, log2, d2, cfg2));
}

TEST_CASE("yma never loads more than decman on symmetric instances") {
    SystemConfig cfg = make_cfg(3, 4, 32, 1.5);
    CacheState cache = symmetric_cells(cfg, {1, 1, 1, 1, 1});
    DemandVector repeated{{1, 1, 2, 2}};
    DemandVector spread{{1, 2, 3, 3}};
    for (const auto& d : {repeated, spread}) {
        auto lead = leader_set(d, 0);
        CHECK(yma_delivery(cache, d, lead, cfg).total_bits() <=
              decman_delivery(cache, d, cfg).total_bits());
    }
    // equality requires every user to be a leader
    DemandVector all_distinct{{1, 2, 3, 1}};
    (void)all_distinct;
}

TEST_CASE("getbits follows the round-robin collection order") {
    BitList a{10, 11, 12};
    BitList b{20};
    CHECK(getbits({a, b}, 3) == BitList{10, 20, 11});
    CHECK(getbits({a, b}, 9) == BitList{10, 11, 12, 20});  // everything available
    CHECK(getbits({a, b}, 0).empty());
    // ties keep candidate order
    BitList c{30, 31};
    BitList e{40, 41};
    CHECK(getbits({c, e}, 3) == BitList{30, 40, 31});
}

TEST_CASE("hcd: zero-pad when no higher-type bits exist") {
    SystemConfig cfg = make_cfg(2, 2, 2, 1.0);
    CacheState cache = CacheState::from_cells(cfg, {{1, UserSet::of({2}), 2},
                                                    {2, UserSet::of({1}), 1},
                                                    {2, UserSet::of({1, 2}), 1}});
    DemandVector d{{1, 2}};
    TransmissionLog log = hcd_delivery(cache, d, cfg);
    REQUIRE(log.codewords.size() == 1);
    CHECK(log.codewords[0].length() == 2);  // 2-bit codeword, one pad bit
    CHECK(log.codewords[0].segments.size() == 2);
    CHECK(log.total_bits() == 2);
    CHECK(all_users_decodable(cache, log, d, cfg));
}

TEST_CASE("hcd equals decman load on symmetric instances") {
    SystemConfig cfg = make_cfg(3, 3, 16, 1.0);
    CacheState cache = symmetric_cells(cfg, {2, 2, 2});
    DemandVector d{{1, 2, 3}};
    CHECK(hcd_delivery(cache, d, cfg).total_bits() ==
          decman_delivery(cache, d, cfg).total_bits());
}

TEST_CASE("hcd borrows from higher types and marks the bits delivered") {
    SystemConfig cfg = make_cfg(2, 3, 12, 1.0);
    CacheState cache = CacheState::from_cells(cfg, {{1, UserSet::of({2}), 1},
                                                    {1, UserSet::of({2, 3}), 4},
                                                    {1, UserSet::of({3}), 2},
                                                    {2, UserSet::of({1}), 3},
                                                    {2, UserSet::of({3}), 2}});
    DemandVector d{{1, 1, 2}};
    DeliveryAudit audit;
    TransmissionLog log = hcd_delivery(cache, d, cfg, &audit);
    CHECK(all_users_decodable(cache, log, d, cfg));
    // every audited delivery is decodable at its moment
    for (const auto& rec : audit.records) {
        TransmissionLog prefix;
        prefix.codewords.assign(log.codewords.begin(),
                                log.codewords.begin() + static_cast<long>(rec.codewords_emitted));
        DecodabilityChecker checker(cache, rec.user, cfg);
        checker.add_log(prefix);
        for (int32_t bit : rec.bits) CHECK(checker.can_decode_bit(rec.file, bit));
    }
}

TEST_CASE("mhcd degenerates to hcd at K=2") {
    SystemConfig cfg = make_cfg(2, 2, 16, 0.75);
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        CacheState cache = CacheState::random_placement(cfg, rng.next());
        DemandVector d = sample_demands(cfg, DemandDist{}, rng.next());
        TransmissionLog a = hcd_delivery(cache, d, cfg);
        TransmissionLog b = mhcd_delivery(cache, d, leader_set(d, 0), cfg);
        CHECK(logs_identical(a, b));
    }
}

TEST_CASE("mhcd matches yma codeword sets per step on symmetric instances") {
    SystemConfig cfg = make_cfg(2, 4, 16, 1.0);
    CacheState cache = symmetric_cells(cfg, {1, 1, 1, 1, 1});
    DemandVector d{{1, 1, 2, 2}};
    LeaderSet lead = leader_set(d, 0);
    TransmissionLog mhcd = mhcd_delivery(cache, d, lead, cfg);
    TransmissionLog yma = yma_delivery(cache, d, lead, cfg);
    CHECK(codeword_set(mhcd) == codeword_set(yma));
    CHECK(mhcd.total_bits() == yma.total_bits());
}

TEST_CASE("mhcd shares one segment across the sums of a group") {
    // users 1,2 demand file 1, users 3,4 demand file 2; the (1,{1}) cell is
    // short, so its segment borrows from (1,{1,4}) and the same borrowed bits
    // appear wherever the pair does
    SystemConfig cfg = make_cfg(2, 4, 16, 1.0);
    CacheState cache = CacheState::from_cells(cfg, {{1, UserSet::of({1}), 1},
                                                    {1, UserSet::of({2}), 3},
                                                    {1, UserSet::of({3}), 3},
                                                    {1, UserSet::of({1, 4}), 5},
                                                    {2, UserSet::of({1}), 2},
                                                    {2, UserSet::of({2}), 2},
                                                    {2, UserSet::of({3}), 2},
                                                    {2, UserSet::of({4}), 2}});
    DemandVector d{{1, 1, 1, 2}};
    LeaderSet lead = leader_set(d, 0);
    DeliveryAudit audit;
    MhcdOptions opts;
    opts.audit = &audit;
    TransmissionLog log = mhcd_delivery(cache, d, lead, cfg, opts);
    CHECK(all_users_decodable(cache, log, d, cfg));

    // find the codewords carrying the shared pair (file 1 cached by exactly {1})
    std::vector<const Segment*> shared;
    for (const auto& cw : log.codewords)
        for (const auto& seg : cw.segments)
            if (seg.origin.rfind("Y(1|{1})", 0) == 0) shared.push_back(&seg);
    REQUIRE(shared.size() == 2);  // S = {1,2} and {1,3}
    CHECK(shared[0]->bits == shared[1]->bits);
    CHECK(shared[0]->bits.size() == 3);  // one own bit plus two borrowed
    // the borrowed bits come from the (1,{1,4}) cell, i.e. positions 7..11
    CHECK(shared[0]->bits[1] >= 7);
    CHECK(shared[0]->bits[2] >= 7);

    // bit-conservation: every removed bit decodable at its moment
    for (const auto& rec : audit.records) {
        TransmissionLog prefix;
        prefix.codewords.assign(log.codewords.begin(),
                                log.codewords.begin() + static_cast<long>(rec.codewords_emitted));
        DecodabilityChecker checker(cache, rec.user, cfg);
        checker.add_log(prefix);
        for (int32_t bit : rec.bits) CHECK(checker.can_decode_bit(rec.file, bit));
    }
}

TEST_CASE("mhcd reuses identical borrowed padding across three sums") {
    // file 1 demanded by users 1,2,5 and file 2 by users 3,4: the (1,{3,4})
    // segment appears in the sums for {1,3,4}, {2,3,4}, {5,3,4} and must be
    // identical in all three, with the same bit borrowed from (1,{3,4,6})
    SystemConfig cfg = make_cfg(3, 6, 20, 1.0);
    CacheState cache = CacheState::from_cells(cfg, {{1, UserSet::of({3, 4}), 1},
                                                    {1, UserSet::of({2, 3}), 2},
                                                    {1, UserSet::of({2, 4}), 2},
                                                    {1, UserSet::of({1, 3}), 2},
                                                    {1, UserSet::of({1, 4}), 2},
                                                    {1, UserSet::of({1, 2}), 2},
                                                    {1, UserSet::of({3, 4, 6}), 5},
                                                    {2, UserSet::of({1, 4}), 2},
                                                    {2, UserSet::of({1, 3}), 2},
                                                    {2, UserSet::of({2, 4}), 3},
                                                    {2, UserSet::of({2, 3}), 3},
                                                    {2, UserSet::of({4, 5}), 2},
                                                    {2, UserSet::of({3, 5}), 2},
                                                    {2, UserSet::of({1, 5}), 2},
                                                    {2, UserSet::of({2, 5}), 2},
                                                    {2, UserSet::of({1, 2}), 2}});
    DemandVector d{{1, 1, 2, 2, 1, 3}};
    LeaderSet lead = leader_set(d, 0);
    TransmissionLog log = mhcd_delivery(cache, d, lead, cfg);
    CHECK(all_users_decodable(cache, log, d, cfg));

    std::vector<const Segment*> shared;
    for (const auto& cw : log.codewords)
        for (const auto& seg : cw.segments)
            if (seg.origin.rfind("Y(1|{3,4})", 0) == 0) shared.push_back(&seg);
    REQUIRE(shared.size() == 3);
    CHECK(shared[0]->bits == shared[1]->bits);
    CHECK(shared[1]->bits == shared[2]->bits);
    REQUIRE(shared[0]->bits.size() == 2);
    CHECK(shared[0]->bits[0] == 0);    // the cell's own bit
    CHECK(shared[0]->bits[1] >= 11);   // borrowed from the (1,{3,4,6}) cell
}

TEST_CASE("borrow order variant changes collection, not correctness") {
    SystemConfig cfg = make_cfg(2, 4, 24, 1.0);
    Rng rng(12);
    for (int it = 0; it < 10; ++it) {
        CacheState cache = CacheState::random_placement(cfg, rng.next());
        DemandVector d = sample_demands(cfg, DemandDist{}, rng.next());
        LeaderSet lead = leader_set(d, 0);
        MhcdOptions seq;
        seq.borrow = BorrowOrder::sequential;
        TransmissionLog a = mhcd_delivery(cache, d, lead, cfg);
        TransmissionLog b = mhcd_delivery(cache, d, lead, cfg, seq);
        CHECK(all_users_decodable(cache, a, d, cfg));
        CHECK(all_users_decodable(cache, b, d, cfg));
        CHECK(a.total_bits() == b.total_bits());
    }
}

TEST_CASE("all schemes decode on random small instances") {
    SystemConfig cfg = make_cfg(3, 4, 24, 1.2);
    Rng rng(2024);
    for (int it = 0; it < 15; ++it) {
        CacheState cache = CacheState::random_placement(cfg, rng.next());
        DemandVector d = sample_demands(cfg, DemandDist{}, rng.next());
        LeaderSet lead = leader_set(d, 0);
        CHECK(all_users_decodable(cache, uncoded_delivery(cache, d, cfg), d, cfg));
        CHECK(all_users_decodable(cache, decman_delivery(cache, d, cfg), d, cfg));
        CHECK(all_users_decodable(cache, yma_delivery(cache, d, lead, cfg), d, cfg));
        CHECK(all_users_decodable(cache, hcd_delivery(cache, d, cfg), d, cfg));
        CHECK(all_users_decodable(cache, mhcd_delivery(cache, d, lead, cfg), d, cfg));
    }
}
