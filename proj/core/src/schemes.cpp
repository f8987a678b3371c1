#include "ccsim/schemes.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "ccsim/check.hpp"

namespace ccsim {

namespace {

std::string set_label(UserSet s) {
    std::string out = "{";
    bool first = true;
    for (int u : s.ids()) {
        if (!first) out += ",";
        out += std::to_string(u);
        first = false;
    }
    return out + "}";
}

BitList take_prefix(const BitList& v, int64_t n) {
    n = std::min<int64_t>(n, static_cast<int64_t>(v.size()));
    return BitList(v.begin(), v.begin() + n);
}

// Removes `removed` from `cell`; both stay ascending, which every cell is by
// construction (initial order is ascending and removals preserve it).
void remove_sorted(BitList& cell, BitList removed) {
    if (removed.empty()) return;
    std::sort(removed.begin(), removed.end());
    BitList out;
    out.reserve(cell.size());
    std::set_difference(cell.begin(), cell.end(), removed.begin(), removed.end(),
                        std::back_inserter(out));
    cell.swap(out);
}

struct GetbitsTake {
    BitList flat;                // collected bits in collection order
    std::vector<int64_t> taken;  // per-candidate count; always a prefix of the candidate
};

GetbitsTake getbits_take(const std::vector<const BitList*>& cands, int64_t quota,
                         BorrowOrder order) {
    GetbitsTake out;
    out.taken.assign(cands.size(), 0);
    if (quota <= 0 || cands.empty()) return out;
    int64_t total = 0;
    for (const auto* c : cands) total += static_cast<int64_t>(c->size());
    if (total <= quota) {
        for (size_t i = 0; i < cands.size(); ++i) {
            out.flat.insert(out.flat.end(), cands[i]->begin(), cands[i]->end());
            out.taken[i] = static_cast<int64_t>(cands[i]->size());
        }
        return out;
    }
    if (order == BorrowOrder::sequential) {
        int64_t need = quota;
        for (size_t i = 0; i < cands.size() && need > 0; ++i) {
            int64_t take = std::min<int64_t>(need, static_cast<int64_t>(cands[i]->size()));
            out.flat.insert(out.flat.end(), cands[i]->begin(), cands[i]->begin() + take);
            out.taken[i] = take;
            need -= take;
        }
        return out;
    }
    // descending length, ties keep candidate order, then round-robin by offset
    std::vector<size_t> idx(cands.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return cands[a]->size() > cands[b]->size(); });
    int64_t need = quota;
    for (int64_t b = 0; need > 0; ++b) {
        for (size_t j : idx) {
            if (b >= static_cast<int64_t>(cands[j]->size())) continue;
            out.flat.push_back((*cands[j])[static_cast<size_t>(b)]);
            ++out.taken[j];
            if (--need == 0) break;
        }
    }
    return out;
}

// Mutable per-delivery state shared by hcd and mhcd.
struct BorrowState {
    const SystemConfig& cfg;
    const DemandVector& demand;
    SubFileTables tables;
    BorrowOrder order = BorrowOrder::round_robin;
    DeliveryAudit* audit = nullptr;
    std::vector<DeliveryAudit::Record> pending;

    BitList& common(int file, UserSet j) { return tables.common_cell(file, j); }
    BitList& indiv(int user, UserSet j) { return tables.individual_cell(user, j); }

    void note(int user, int file, BitList bits) {
        if (audit && !bits.empty()) pending.push_back({0, user, file, std::move(bits)});
    }
    void flush(size_t emitted) {
        if (!audit) {
            pending.clear();
            return;
        }
        for (auto& r : pending) {
            r.codewords_emitted = emitted;
            audit->records.push_back(std::move(r));
        }
        pending.clear();
    }
};

// Transmits F_{i,empty} uncoded, one codeword per distinct demanded file.
void emit_uncached(BorrowState& st, TransmissionLog& log) {
    for (int file : st.demand.distinct()) {
        BitList cell = st.common(file, UserSet{});
        if (cell.empty()) continue;
        Codeword cw;
        cw.segments.push_back({file, cell, "F(" + std::to_string(file) + "|{})"});
        log.push(std::move(cw));
        for (int k : st.demand.demanders_of(file).ids()) {
            st.indiv(k, UserSet{}).clear();
            st.note(k, file, cell);
        }
        st.common(file, UserSet{}).clear();
        st.flush(log.codewords.size());
    }
}

// All candidate supersets J1 of `j` with |J1| = t1 avoiding `forbidden`,
// in lex order.
std::vector<UserSet> borrow_supersets(UserSet j, int t1, UserSet forbidden, int num_users) {
    UserSet ground = setminus(UserSet::full(num_users), j | forbidden);
    std::vector<UserSet> out;
    for (UserSet x : subsets_of_size(ground, t1 - j.size())) out.push_back(j | x);
    std::sort(out.begin(), out.end(), [](UserSet a, UserSet b) { return lex_less(a, b); });
    return out;
}

// Step-t per-user pass: for every S of size t+1, XOR the users' remaining
// individual cells, borrowing tail bits from the borrowing user's own
// higher-type cells before zero-padding.
void cleanup_step(BorrowState& st, int t, TransmissionLog& log) {
    const int k_users = st.cfg.num_users;
    UserSet all = UserSet::full(k_users);
    for (UserSet s : subsets_of_size(all, t + 1)) {
        int64_t target = 0;
        for (int u : s.ids())
            target = std::max<int64_t>(target,
                                       static_cast<int64_t>(st.indiv(u, s.without(u)).size()));
        if (target == 0) continue;
        Codeword cw;
        for (int u : s.ids()) {
            const int file = st.demand.of_user(u);
            UserSet j = s.without(u);
            BitList base = st.indiv(u, j);
            BitList seg = base;
            int64_t re = target - static_cast<int64_t>(base.size());
            for (int t2 = t + 1; t2 <= k_users - 1 && re > 0; ++t2) {
                std::vector<UserSet> srcs;
                std::vector<const BitList*> cands;
                for (UserSet s1 : borrow_supersets(j, t2, UserSet::single(u), k_users)) {
                    const BitList& cell = st.indiv(u, s1);
                    if (cell.empty()) continue;
                    srcs.push_back(s1);
                    cands.push_back(&cell);
                }
                GetbitsTake take = getbits_take(cands, re, st.order);
                for (size_t i = 0; i < srcs.size(); ++i) {
                    if (take.taken[i] == 0) continue;
                    BitList prefix = take_prefix(*cands[i], take.taken[i]);
                    remove_sorted(st.indiv(u, srcs[i]), prefix);
                    remove_sorted(st.common(file, srcs[i]), prefix);
                    st.note(u, file, std::move(prefix));
                }
                seg.insert(seg.end(), take.flat.begin(), take.flat.end());
                re -= static_cast<int64_t>(take.flat.size());
            }
            // any residue is implicit zero padding
            if (!seg.empty())
                cw.segments.push_back(
                    {file, std::move(seg), "D(" + std::to_string(u) + "|" + set_label(j) + ")"});
            st.indiv(u, j).clear();
            st.common(file, j).clear();
            st.note(u, file, std::move(base));
        }
        CCSIM_CHECK(cw.length() == target, "cleanup codeword must reach the longest cell");
        log.push(std::move(cw));
        st.flush(log.codewords.size());
    }
}

// Step-t grouped pass: demanders of the same files share one segment Y_{i,J}
// per cell, reused verbatim in every sum of the group that contains it.
void group_step(BorrowState& st, int t, const LeaderSet& leaders, TransmissionLog& log,
                std::set<CellKey, CellKeyLess>& step_pairs) {
    const int k_users = st.cfg.num_users;
    const std::vector<int> distinct = st.demand.distinct();
    const int nd = static_cast<int>(distinct.size());
    const int cap = std::min(t + 1, nd);

    // enumerate candidate T (index sets over the distinct files) in lex order
    std::vector<UserSet> t_sets;
    UserSet idx_ground = UserSet::full(nd);
    for (int size = 1; size <= cap; ++size)
        for (UserSet x : subsets_of_size(idx_ground, size)) t_sets.push_back(x);
    std::sort(t_sets.begin(), t_sets.end(), [](UserSet a, UserSet b) { return lex_less(a, b); });

    for (UserSet t_idx : t_sets) {
        std::vector<int> files;
        UserSet demanders;
        for (int i : t_idx.ids()) {
            files.push_back(distinct[static_cast<size_t>(i - 1)]);
            demanders = demanders | st.demand.demanders_of(distinct[static_cast<size_t>(i - 1)]);
        }
        if (demanders.size() - static_cast<int>(files.size()) <= t) continue;

        auto covers = [&](UserSet s) {
            UserSet got;
            for (int u : s.ids())
                for (size_t fi = 0; fi < files.size(); ++fi)
                    if (st.demand.of_user(u) == files[fi]) got.insert(static_cast<int>(fi) + 1);
            return got == UserSet::full(static_cast<int>(files.size()));
        };

        std::vector<UserSet> q;
        for (UserSet s : subsets_of_size(demanders, t + 1))
            if (covers(s) && leaders.touches(s)) q.push_back(s);
        if (q.empty()) continue;

        std::vector<CellKey> pairs;
        for (UserSet s : q)
            for (int u : s.ids()) pairs.push_back({st.demand.of_user(u), s.without(u)});
        std::sort(pairs.begin(), pairs.end(),
                  [](const CellKey& a, const CellKey& b) { return CellKeyLess{}(a, b); });
        pairs.erase(std::unique(pairs.begin(), pairs.end(),
                                [](const CellKey& a, const CellKey& b) {
                                    return a.file == b.file && a.cachers == b.cachers;
                                }),
                    pairs.end());
        for (const auto& p : pairs)
            CCSIM_CHECK(step_pairs.insert(p).second,
                        "groups of one step must touch disjoint (file, cell) pairs");

        int64_t quota = std::numeric_limits<int64_t>::max();
        for (UserSet s : q) {
            int64_t mx = 0;
            for (int u : s.ids())
                mx = std::max<int64_t>(
                    mx, static_cast<int64_t>(st.common(st.demand.of_user(u), s.without(u)).size()));
            quota = std::min(quota, mx);
        }
        if (quota == 0) continue;

        std::map<CellKey, Segment, CellKeyLess> shared;
        std::map<CellKey, bool, CellKeyLess> pure;
        for (const CellKey& p : pairs) {
            const int file = p.file;
            const UserSet j = p.cachers;
            UserSet receivers = setminus(st.demand.demanders_of(file), j);
            BitList w_part = take_prefix(st.common(file, j), quota);
            BitList bits = w_part;
            std::string origin = "Y(" + std::to_string(file) + "|" + set_label(j) + ")";
            int64_t re = quota - static_cast<int64_t>(w_part.size());
            if (re > 0) {
                origin += "+borrow";
                for (int t1 = t + 1; t1 <= k_users - 1 && re > 0; ++t1) {
                    std::vector<UserSet> srcs;
                    std::vector<const BitList*> cands;
                    for (UserSet j1 : borrow_supersets(j, t1, receivers, k_users)) {
                        const BitList& cell = st.common(file, j1);
                        if (cell.empty()) continue;
                        srcs.push_back(j1);
                        cands.push_back(&cell);
                    }
                    GetbitsTake take = getbits_take(cands, re, st.order);
                    for (size_t i = 0; i < srcs.size(); ++i) {
                        if (take.taken[i] == 0) continue;
                        BitList prefix = take_prefix(*cands[i], take.taken[i]);
                        remove_sorted(st.common(file, srcs[i]), prefix);
                        for (int k : receivers.ids()) {
                            remove_sorted(st.indiv(k, srcs[i]), prefix);
                            st.note(k, file, prefix);
                        }
                    }
                    bits.insert(bits.end(), take.flat.begin(), take.flat.end());
                    re -= static_cast<int64_t>(take.flat.size());
                }
                // remaining shortfall is implicit zero padding
            }
            remove_sorted(st.common(file, j), w_part);
            for (int k : receivers.ids()) {
                remove_sorted(st.indiv(k, j), w_part);
                st.note(k, file, w_part);
            }
            pure[p] = static_cast<int64_t>(w_part.size()) == quota;
            shared[p] = Segment{file, std::move(bits), std::move(origin)};
        }

        for (UserSet s : q) {
            Codeword cw;
            bool has_anchor = false;
            for (int u : s.ids()) {
                CellKey p{st.demand.of_user(u), s.without(u)};
                const Segment& seg = shared[p];
                has_anchor |= pure[p];
                if (!seg.bits.empty()) cw.segments.push_back(seg);
            }
            CCSIM_CHECK(has_anchor, "every group codeword needs one borrow-free segment");
            CCSIM_CHECK(cw.length() == quota, "group codeword length equals the group quota");
            log.push(std::move(cw));
        }
        st.flush(log.codewords.size());
    }
}

}  // namespace

TransmissionLog uncoded_delivery(const CacheState& cache, const DemandVector& demand,
                                 const SystemConfig& cfg) {
    cfg.validate();
    TransmissionLog log;
    for (int file : demand.distinct()) {
        std::vector<int> users = demand.demanders_of(file).ids();
        BitList missing;
        for (int64_t b = 0; b < cfg.file_bits; ++b) {
            for (int u : users) {
                if (!cache.caches(u, file, b)) {
                    missing.push_back(static_cast<int32_t>(b));
                    break;
                }
            }
        }
        Codeword cw;
        cw.segments.push_back({file, std::move(missing), "uncoded(" + std::to_string(file) + ")"});
        log.push(std::move(cw));
    }
    return log;
}

namespace {

TransmissionLog decman_like(const CacheState& cache, const DemandVector& demand,
                            const SystemConfig& cfg, const LeaderSet* leaders) {
    cfg.validate();
    SubFileTables tables = partition_subfiles(cache, cfg);
    TransmissionLog log;
    UserSet all = UserSet::full(cfg.num_users);
    for (int t = 0; t < cfg.num_users; ++t) {
        for (UserSet s : subsets_of_size(all, t + 1)) {
            if (leaders && !leaders->touches(s)) continue;
            Codeword cw;
            for (int u : s.ids()) {
                const int file = demand.of_user(u);
                UserSet j = s.without(u);
                const BitList* cell = tables.cell(file, j);
                if (!cell || cell->empty()) continue;
                cw.segments.push_back(
                    {file, *cell, "F(" + std::to_string(file) + "|" + set_label(j) + ")"});
            }
            log.push(std::move(cw));
        }
    }
    return log;
}

}  // namespace

TransmissionLog decman_delivery(const CacheState& cache, const DemandVector& demand,
                                const SystemConfig& cfg) {
    return decman_like(cache, demand, cfg, nullptr);
}

TransmissionLog yma_delivery(const CacheState& cache, const DemandVector& demand,
                             const LeaderSet& leaders, const SystemConfig& cfg) {
    return decman_like(cache, demand, cfg, &leaders);
}

BitList getbits(const std::vector<BitList>& candidates, int64_t quota) {
    if (quota < 0) throw std::invalid_argument("getbits: quota must be >= 0");
    std::vector<const BitList*> ptrs;
    ptrs.reserve(candidates.size());
    for (const auto& c : candidates) ptrs.push_back(&c);
    return getbits_take(ptrs, quota, BorrowOrder::round_robin).flat;
}

TransmissionLog hcd_delivery(const CacheState& cache, const DemandVector& demand,
                             const SystemConfig& cfg, DeliveryAudit* audit) {
    cfg.validate();
    BorrowState st{cfg, demand, partition_subfiles(cache, cfg), BorrowOrder::round_robin, audit, {}};
    st.tables.init_requested(demand);
    TransmissionLog log;
    emit_uncached(st, log);
    for (int t = 1; t <= cfg.num_users - 1; ++t) cleanup_step(st, t, log);
    return log;
}

TransmissionLog mhcd_delivery(const CacheState& cache, const DemandVector& demand,
                              const LeaderSet& leaders, const SystemConfig& cfg,
                              const MhcdOptions& opts) {
    cfg.validate();
    BorrowState st{cfg, demand, partition_subfiles(cache, cfg), opts.borrow, opts.audit, {}};
    st.tables.init_requested(demand);
    TransmissionLog log;
    emit_uncached(st, log);
    for (int t = 1; t <= cfg.num_users - 1; ++t) {
        std::set<CellKey, CellKeyLess> step_pairs;
        group_step(st, t, leaders, log, step_pairs);
        cleanup_step(st, t, log);
    }
    return log;
}

}  // namespace ccsim
