#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/gf2.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

/// Directed conflict graph over (user, packet) requests. A node exists for
/// each packet demanded by a user who does not cache it in full; an edge
/// v -> w means the requester of v cannot cancel w's packet. Adjacency is
/// derived from per-packet cacher sets instead of stored edge lists.
class ConflictGraph {
public:
    struct Node {
        int user;    // 1-based requester
        int packet;  // global packet id: (file-1)*B + index
    };

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_users() const { return num_users_; }
    int packet_bits() const { return packet_bits_; }

    int node_user(int v) const { return nodes_[static_cast<size_t>(v)].user; }
    int node_packet(int v) const { return nodes_[static_cast<size_t>(v)].packet; }
    int packet_file(int packet) const { return packet / packets_per_file_ + 1; }
    int packet_index(int packet) const { return packet % packets_per_file_; }

    /// Users demanding or fully caching the node's packet.
    UserSet knowers(int v) const { return packet_knowers_[static_cast<size_t>(node_packet(v))]; }
    int hierarchy(int v) const { return knowers(v).size(); }

    bool user_caches_packet(int user, int packet) const {
        return packet_cachers_[static_cast<size_t>(packet)].contains(user);
    }

    /// Directed edge v -> w.
    bool edge(int v, int w) const {
        int pw = node_packet(w);
        if (node_packet(v) == pw) return false;
        return !user_caches_packet(node_user(v), pw);
    }

    /// An edge in either direction; same-packet nodes never conflict.
    bool conflict(int v, int w) const {
        int pv = node_packet(v), pw = node_packet(w);
        if (pv == pw) return false;
        return !user_caches_packet(node_user(v), pw) || !user_caches_packet(node_user(w), pv);
    }

    const std::vector<int>& nodes_of_packet(int packet) const {
        return packet_nodes_[static_cast<size_t>(packet)];
    }

    friend ConflictGraph build_conflict_graph(const CacheState&, const DemandVector&,
                                              const SystemConfig&);

private:
    int num_users_ = 0;
    int packet_bits_ = 1;
    int packets_per_file_ = 0;
    std::vector<Node> nodes_;
    std::vector<UserSet> packet_knowers_;        // filled for demanded packets
    std::vector<UserSet> packet_cachers_;        // users caching the packet in full
    std::vector<std::vector<int>> packet_nodes_; // packet -> node ids
};

/// Nodes in ascending (file, packet, user) construction order; hierarchies
/// and knower sets per the packet's demanders plus full cachers.
ConflictGraph build_conflict_graph(const CacheState& cache, const DemandVector& demand,
                                   const SystemConfig& cfg);

struct Coloring {
    std::vector<std::vector<int>> classes;  // color -> node ids
    int relax_rounds = 0;                   // final value of the size-slack counter

    int num_colors() const { return static_cast<int>(classes.size()); }
};

/// Baseline greedy: hierarchies from K down to 1. Each seed merges its
/// same-packet nodes, then extends along the level's start-of-level member
/// list in ascending node order, stopping at the first conflicting member
/// (members that were colored or demoted earlier still stop the scan). A set
/// of size >= i is colored; otherwise the seed drops one hierarchy and is
/// searched again there. The seed shuffles only the seed processing order,
/// so the class structure on a fixed instance does not depend on it.
Coloring hglc_color(const ConflictGraph& g, uint64_t seed);

/// Improved search: hierarchies from 1 up to K with a relaxation counter m.
/// Each seed first merges same-packet nodes, then scans candidates with a
/// superset knower set level by level upward, then (if still short of i - m)
/// arbitrary candidates; a sweep that leaves nodes uncolored increments m.
/// Candidate order inside each scan is a seeded random permutation.
Coloring ahglc_color(const ConflictGraph& g, uint64_t seed);

/// True when every class is a set of pairwise same-packet or mutually-cached
/// nodes and every node is colored exactly once.
bool coloring_valid(const Coloring& col, const ConflictGraph& g);

/// Emits one packet-XOR codeword per color, then compresses with the
/// random-linear-code construction: rows of C over the color codewords when a
/// valid C exists, the color codewords themselves otherwise.
TransmissionLog coloring_to_log(const Coloring& col, const ConflictGraph& g,
                                const CacheState& cache, const SystemConfig& cfg, uint64_t seed);

}  // namespace ccsim
