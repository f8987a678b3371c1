#include "ccsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ccsim/check.hpp"

namespace ccsim {

ConflictGraph build_conflict_graph(const CacheState& cache, const DemandVector& demand,
                                   const SystemConfig& cfg) {
    cfg.validate();
    ConflictGraph g;
    g.num_users_ = cfg.num_users;
    g.packet_bits_ = cfg.packet_bits();
    g.packets_per_file_ = cfg.packets();
    const int total_packets = cfg.num_files * cfg.packets();
    g.packet_cachers_.assign(static_cast<size_t>(total_packets), UserSet{});
    g.packet_knowers_.assign(static_cast<size_t>(total_packets), UserSet{});
    g.packet_nodes_.assign(static_cast<size_t>(total_packets), {});

    for (int file : demand.distinct()) {
        UserSet demanders = demand.demanders_of(file);
        for (int p = 0; p < cfg.packets(); ++p) {
            int packet = (file - 1) * cfg.packets() + p;
            UserSet cachers;
            for (int user = 1; user <= cfg.num_users; ++user)
                if (cache.caches_packet(user, file, p, g.packet_bits_)) cachers.insert(user);
            g.packet_cachers_[static_cast<size_t>(packet)] = cachers;
            g.packet_knowers_[static_cast<size_t>(packet)] = cachers | demanders;
            for (int user : demanders.ids()) {
                if (cachers.contains(user)) continue;
                g.packet_nodes_[static_cast<size_t>(packet)].push_back(g.num_nodes());
                g.nodes_.push_back({user, packet});
            }
        }
    }
    return g;
}

bool coloring_valid(const Coloring& col, const ConflictGraph& g) {
    std::vector<int> seen(static_cast<size_t>(g.num_nodes()), 0);
    for (const auto& cls : col.classes) {
        for (size_t a = 0; a < cls.size(); ++a) {
            ++seen[static_cast<size_t>(cls[a])];
            for (size_t b = a + 1; b < cls.size(); ++b)
                if (g.conflict(cls[a], cls[b])) return false;
        }
    }
    for (int count : seen)
        if (count != 1) return false;
    return true;
}

namespace {

bool conflicts_with(const ConflictGraph& g, int w, const std::vector<int>& members) {
    for (int v : members)
        if (g.conflict(w, v)) return true;
    return false;
}

}  // namespace

Coloring hglc_color(const ConflictGraph& g, uint64_t seed) {
    const int n = g.num_nodes();
    Coloring col;
    if (n == 0) return col;
    Rng rng(seed);

    std::vector<int> level(static_cast<size_t>(n));
    std::vector<char> colored(static_cast<size_t>(n), 0);
    int max_level = 1;
    for (int v = 0; v < n; ++v) {
        level[static_cast<size_t>(v)] = g.hierarchy(v);
        max_level = std::max(max_level, level[static_cast<size_t>(v)]);
    }

    for (int i = max_level; i >= 1; --i) {
        // start-of-level membership, ascending node id; later state changes do
        // not grow or reorder it, and its members keep blocking the greedy scan
        std::vector<int> snapshot;
        for (int v = 0; v < n; ++v)
            if (!colored[static_cast<size_t>(v)] && level[static_cast<size_t>(v)] == i)
                snapshot.push_back(v);
        std::vector<int> order = snapshot;
        rng.shuffle(order);
        for (int v : order) {
            if (colored[static_cast<size_t>(v)] || level[static_cast<size_t>(v)] != i) continue;
            std::vector<int> members{v};
            for (int u : g.nodes_of_packet(g.node_packet(v))) {
                if (u == v || colored[static_cast<size_t>(u)]) continue;
                if (level[static_cast<size_t>(u)] == i) members.push_back(u);
            }
            for (int w : snapshot) {
                if (w == v) continue;
                if (std::find(members.begin(), members.end(), w) != members.end()) continue;
                if (conflicts_with(g, w, members)) break;  // first conflict closes the class
                if (!colored[static_cast<size_t>(w)] && level[static_cast<size_t>(w)] == i)
                    members.push_back(w);
            }
            if (static_cast<int>(members.size()) >= i) {
                for (int u : members) colored[static_cast<size_t>(u)] = 1;
                col.classes.push_back(std::move(members));
            } else {
                level[static_cast<size_t>(v)] = i - 1;  // retried one hierarchy down
            }
        }
    }
    CCSIM_CHECK(coloring_valid(col, g), "hglc produced an invalid coloring");
    return col;
}

Coloring ahglc_color(const ConflictGraph& g, uint64_t seed) {
    const int n = g.num_nodes();
    Coloring col;
    if (n == 0) return col;
    Rng rng(seed);

    const int k_users = g.num_users();
    std::vector<char> colored(static_cast<size_t>(n), 0);
    std::vector<std::vector<int>> bucket(static_cast<size_t>(k_users) + 1);
    for (int v = 0; v < n; ++v) bucket[static_cast<size_t>(g.hierarchy(v))].push_back(v);

    int uncolored = n;
    int m = 0;
    while (uncolored > 0) {
        for (int i = 1; i <= k_users && uncolored > 0; ++i) {
            std::vector<int> queue = bucket[static_cast<size_t>(i)];
            rng.shuffle(queue);
            for (int v : queue) {
                if (colored[static_cast<size_t>(v)]) continue;
                std::vector<int> members{v};
                for (int u : g.nodes_of_packet(g.node_packet(v))) {
                    if (u != v && !colored[static_cast<size_t>(u)]) members.push_back(u);
                }
                UserSet kv = g.knowers(v);
                auto scan = [&](bool want_superset) {
                    for (int j = i; j <= k_users; ++j) {
                        std::vector<int> cands;
                        for (int w : bucket[static_cast<size_t>(j)]) {
                            if (colored[static_cast<size_t>(w)]) continue;
                            if (std::find(members.begin(), members.end(), w) != members.end())
                                continue;
                            if (g.knowers(w).superset_of(kv) != want_superset) continue;
                            cands.push_back(w);
                        }
                        rng.shuffle(cands);
                        for (int w : cands)
                            if (!conflicts_with(g, w, members)) members.push_back(w);
                    }
                };
                scan(true);
                if (static_cast<int>(members.size()) < i - m) scan(false);
                if (static_cast<int>(members.size()) >= i - m) {
                    for (int u : members) colored[static_cast<size_t>(u)] = 1;
                    uncolored -= static_cast<int>(members.size());
                    col.classes.push_back(std::move(members));
                }
            }
            // drop colored nodes so later scans stay short
            auto& b = bucket[static_cast<size_t>(i)];
            b.erase(std::remove_if(b.begin(), b.end(),
                                   [&](int v) { return colored[static_cast<size_t>(v)]; }),
                    b.end());
        }
        if (uncolored > 0) ++m;
        CCSIM_CHECK(m <= k_users, "ahglc sweep failed to make progress");
    }
    col.relax_rounds = m;
    CCSIM_CHECK(coloring_valid(col, g), "ahglc produced an invalid coloring");
    return col;
}

TransmissionLog coloring_to_log(const Coloring& col, const ConflictGraph& g,
                                const CacheState& cache, const SystemConfig& cfg, uint64_t seed) {
    (void)cache;
    TransmissionLog log;
    const int num_colors = col.num_colors();
    if (num_colors == 0) return log;

    // packet set per color, mod-2 on repeats
    std::vector<std::vector<int>> class_packets(static_cast<size_t>(num_colors));
    for (int c = 0; c < num_colors; ++c) {
        std::vector<int> packets;
        for (int v : col.classes[static_cast<size_t>(c)]) packets.push_back(g.node_packet(v));
        std::sort(packets.begin(), packets.end());
        packets.erase(std::unique(packets.begin(), packets.end()), packets.end());
        class_packets[static_cast<size_t>(c)] = std::move(packets);
    }

    ColorKnowledge ck;
    ck.num_colors = num_colors;
    ck.known.assign(static_cast<size_t>(cfg.num_users), BitVec(num_colors));
    for (int user = 1; user <= cfg.num_users; ++user) {
        for (int c = 0; c < num_colors; ++c) {
            bool knows_all = true;
            for (int p : class_packets[static_cast<size_t>(c)])
                knows_all = knows_all && g.user_caches_packet(user, p);
            if (knows_all) ck.known[static_cast<size_t>(user - 1)].set(c);
        }
    }

    BitMatrix c_mat = build_rlc(ck, seed);
    const int pb = cfg.packet_bits();
    for (int r = 0; r < c_mat.rows(); ++r) {
        // XOR of the selected color codewords; packets appearing twice cancel
        std::vector<int> toggled;
        for (int c = 0; c < num_colors; ++c) {
            if (!c_mat.get(r, c)) continue;
            toggled.insert(toggled.end(), class_packets[static_cast<size_t>(c)].begin(),
                           class_packets[static_cast<size_t>(c)].end());
        }
        std::sort(toggled.begin(), toggled.end());
        Codeword cw;
        for (size_t a = 0; a < toggled.size();) {
            size_t b = a;
            while (b < toggled.size() && toggled[b] == toggled[a]) ++b;
            if ((b - a) % 2 == 1) {
                int packet = toggled[a];
                BitList bits;
                bits.reserve(static_cast<size_t>(pb));
                int64_t base = static_cast<int64_t>(g.packet_index(packet)) * pb;
                for (int o = 0; o < pb; ++o) bits.push_back(static_cast<int32_t>(base + o));
                cw.segments.push_back({g.packet_file(packet), std::move(bits),
                                       "packet(" + std::to_string(g.packet_file(packet)) + "#" +
                                           std::to_string(g.packet_index(packet)) + ")"});
            }
            a = b;
        }
        log.push(std::move(cw));
    }
    return log;
}

}  // namespace ccsim
