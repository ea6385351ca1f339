#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trichain/degree_sequence.hpp"
#include "trichain/errors.hpp"
#include "trichain/rng.hpp"

namespace trichain {

struct Edge {
    int u, v;  // normalized u < v
};

inline bool operator==(Edge a, Edge b) { return a.u == b.u && a.v == b.v; }

// A switch removes the edges a1a2, a3a4 and inserts a1a3, a2a4 on the same
// four vertices. The diagonals are a1a4 and a2a3.
struct Switch {
    int a1, a2, a3, a4;

    // Exchanges the removed and inserted pairs.
    Switch inverse() const { return Switch{a1, a3, a2, a4}; }
    std::array<int, 4> vertices() const { return {a1, a2, a3, a4}; }
};

inline bool operator==(const Switch& a, const Switch& b) {
    return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4;
}

// Number of present diagonals: A none, B both, C exactly one.
enum class SwitchType { A, B, C };

// A switch known to change the triangle set, together with its count change.
struct TriSwitch {
    Switch sw;
    long long delta_t = 0;
};

// Simple labeled graph with sorted adjacency sets, an index-addressable edge
// list (swap-remove plus pair->index map) and an incrementally maintained
// triangle count.
class Graph {
public:
    explicit Graph(int n);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    std::vector<int> degrees() const;

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    long long triangle_count() const { return tri_; }
    // Unordered pairs of non-incident distinct edges in this graph,
    // C(m,2) - sum_v C(deg v, 2).
    long long nonincident_pair_count() const;

    bool same_edges(const Graph& other) const;

private:
    static std::uint64_t key(int u, int v);

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, int> edge_index_;
    long long tri_ = 0;
    long long incident_pairs_ = 0;  // sum_v C(deg v, 2)
};

// Canonical Havel-Hakimi realization: highest residual vertex first, ties by
// lowest label, candidates by residual then label. The seeded overload
// shuffles candidates of equal residual.
Graph from_degree_sequence(const DegreeSequence& d);
Graph from_degree_sequence(const DegreeSequence& d, std::uint64_t seed);

// Exact recount by edge-wise neighborhood intersection; ignores the cache.
long long count_triangles(const Graph& g);

// Common neighbors of x and y (two-pointer over sorted adjacency).
long long count_common_neighbors(const Graph& g, int x, int y);

bool switch_valid(const Graph& g, const Switch& s);
void require_switch_valid(const Graph& g, const Switch& s);

// t(H) - t(G) without mutating g. Edge changes are counted in the fixed
// order remove a1a2, remove a3a4, add a1a3, add a2a4 against the running
// intermediate edge set.
long long triangle_delta(const Graph& g, const Switch& s);

// In-place application; cached triangle count follows the same order as
// triangle_delta, degrees are unchanged.
void apply_switch(Graph& g, const Switch& s);

// The transition-procedure condition: some pair among {a1a2, a3a4, a1a3,
// a2a4} has a common neighbor outside {a1,a2,a3,a4}. Equivalently, applying
// the switch changes the set of triangles.
bool is_tri_switch(const Graph& g, const Switch& s);

SwitchType classify_switch(const Graph& g, const Switch& s);

// Uniform over the a(d) unordered non-incident pairs, by rejection on two
// distinct edge indices.
std::pair<Edge, Edge> random_nonincident_edge_pair(const Graph& g, Rng& rng);

}  // namespace trichain
