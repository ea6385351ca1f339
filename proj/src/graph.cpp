#include "trichain/graph.hpp"

#include <algorithm>
#include <numeric>

namespace trichain {

Graph::Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw Error("negative vertex count");
}

std::uint64_t Graph::key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return edge_index_.count(key(u, v)) > 0;
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw Error("loop edge");
    if (u > v) std::swap(u, v);
    if (has_edge(u, v)) throw Error("duplicate edge");
    tri_ += count_common_neighbors(*this, u, v);
    incident_pairs_ += degree(u) + degree(v);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    edge_index_[key(u, v)] = static_cast<int>(edges_.size());
    edges_.push_back(Edge{u, v});
}

void Graph::remove_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    auto it = edge_index_.find(key(u, v));
    if (it == edge_index_.end()) throw Error("edge not present");
    const int idx = it->second;
    tri_ -= count_common_neighbors(*this, u, v);
    incident_pairs_ -= (degree(u) - 1) + (degree(v) - 1);
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
    edge_index_.erase(it);
    const int last = static_cast<int>(edges_.size()) - 1;
    if (idx != last) {
        edges_[idx] = edges_[last];
        edge_index_[key(edges_[idx].u, edges_[idx].v)] = idx;
    }
    edges_.pop_back();
}

long long Graph::nonincident_pair_count() const {
    const long long m = num_edges();
    return m * (m - 1) / 2 - incident_pairs_;
}

bool Graph::same_edges(const Graph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    for (const Edge& e : edges_)
        if (!other.has_edge(e.u, e.v)) return false;
    return true;
}

long long count_common_neighbors(const Graph& g, int x, int y) {
    const auto& a = g.neighbors(x);
    const auto& b = g.neighbors(y);
    long long c = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++c;
            ++ia;
            ++ib;
        }
    }
    return c;
}

long long count_triangles(const Graph& g) {
    long long total = 0;
    for (const Edge& e : g.edges()) total += count_common_neighbors(g, e.u, e.v);
    return total / 3;
}

namespace {

Graph havel_hakimi(const DegreeSequence& d, Rng* rng) {
    const int n = d.n();
    Graph g(n);
    std::vector<int> residual = d.degrees();  // vertex i has degree degrees()[i]
    std::vector<std::uint64_t> tiebreak(n, 0);

    for (;;) {
        int v = -1;
        for (int i = 0; i < n; ++i)
            if (residual[i] > 0 && (v == -1 || residual[i] > residual[v])) v = i;
        if (v == -1) break;

        std::vector<int> cand;
        for (int i = 0; i < n; ++i)
            if (i != v && residual[i] > 0) cand.push_back(i);
        if (static_cast<int>(cand.size()) < residual[v])
            throw NonGraphical("Havel-Hakimi reduction failed");
        if (rng)
            for (int i : cand) tiebreak[i] = rng->next();
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
            if (residual[a] != residual[b]) return residual[a] > residual[b];
            if (rng) return tiebreak[a] < tiebreak[b];
            return a < b;
        });
        const int need = residual[v];
        for (int k = 0; k < need; ++k) {
            const int w = cand[k];
            if (g.has_edge(v, w)) throw NonGraphical("Havel-Hakimi reduction failed");
            g.add_edge(v, w);
            --residual[w];
        }
        residual[v] = 0;
    }
    return g;
}

}  // namespace

Graph from_degree_sequence(const DegreeSequence& d) { return havel_hakimi(d, nullptr); }

Graph from_degree_sequence(const DegreeSequence& d, std::uint64_t seed) {
    Rng rng(seed);
    return havel_hakimi(d, &rng);
}

bool switch_valid(const Graph& g, const Switch& s) {
    const auto v = s.vertices();
    for (int i = 0; i < 4; ++i) {
        if (v[i] < 0 || v[i] >= g.num_vertices()) return false;
        for (int j = i + 1; j < 4; ++j)
            if (v[i] == v[j]) return false;
    }
    return g.has_edge(s.a1, s.a2) && g.has_edge(s.a3, s.a4) && !g.has_edge(s.a1, s.a3) &&
           !g.has_edge(s.a2, s.a4);
}

void require_switch_valid(const Graph& g, const Switch& s) {
    if (!switch_valid(g, s)) throw InvalidSwitch("switch preconditions violated");
}

namespace {

// Pending edge changes layered over a graph; at most four entries, which is
// all a switch ever touches.
struct EdgePatch {
    std::array<std::pair<int, int>, 4> removed{};
    std::array<std::pair<int, int>, 4> added{};
    int n_removed = 0;
    int n_added = 0;

    static bool matches(const std::pair<int, int>& e, int u, int v) {
        return (e.first == u && e.second == v) || (e.first == v && e.second == u);
    }
    void remove(int u, int v) { removed[n_removed++] = {u, v}; }
    void add(int u, int v) { added[n_added++] = {u, v}; }
    bool is_removed(int u, int v) const {
        for (int i = 0; i < n_removed; ++i)
            if (matches(removed[i], u, v)) return true;
        return false;
    }
    bool is_added(int u, int v) const {
        for (int i = 0; i < n_added; ++i)
            if (matches(added[i], u, v)) return true;
        return false;
    }
    bool adjacent(const Graph& g, int u, int v) const {
        if (is_removed(u, v)) return false;
        if (is_added(u, v)) return true;
        return g.has_edge(u, v);
    }
};

long long common_patched(const Graph& g, const EdgePatch& p, int x, int y) {
    long long c = 0;
    for (int z : g.neighbors(x)) {
        if (z == y || p.is_removed(x, z)) continue;
        if (p.adjacent(g, y, z)) ++c;
    }
    for (int i = 0; i < p.n_added; ++i) {
        int z = -1;
        if (p.added[i].first == x)
            z = p.added[i].second;
        else if (p.added[i].second == x)
            z = p.added[i].first;
        if (z >= 0 && z != y && p.adjacent(g, y, z)) ++c;
    }
    return c;
}

}  // namespace

long long triangle_delta(const Graph& g, const Switch& s) {
    require_switch_valid(g, s);
    EdgePatch p;
    long long d = 0;
    d -= common_patched(g, p, s.a1, s.a2);
    p.remove(s.a1, s.a2);
    d -= common_patched(g, p, s.a3, s.a4);
    p.remove(s.a3, s.a4);
    d += common_patched(g, p, s.a1, s.a3);
    p.add(s.a1, s.a3);
    d += common_patched(g, p, s.a2, s.a4);
    return d;
}

void apply_switch(Graph& g, const Switch& s) {
    require_switch_valid(g, s);
    g.remove_edge(s.a1, s.a2);
    g.remove_edge(s.a3, s.a4);
    g.add_edge(s.a1, s.a3);
    g.add_edge(s.a2, s.a4);
}

namespace {

bool common_neighbor_outside(const Graph& g, int x, int y, const std::array<int, 4>& d) {
    const auto& a = g.neighbors(x);
    const auto& b = g.neighbors(y);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            const int z = *ia;
            if (z != d[0] && z != d[1] && z != d[2] && z != d[3]) return true;
            ++ia;
            ++ib;
        }
    }
    return false;
}

}  // namespace

bool is_tri_switch(const Graph& g, const Switch& s) {
    require_switch_valid(g, s);
    const auto d = s.vertices();
    return common_neighbor_outside(g, s.a1, s.a2, d) ||
           common_neighbor_outside(g, s.a3, s.a4, d) ||
           common_neighbor_outside(g, s.a1, s.a3, d) ||
           common_neighbor_outside(g, s.a2, s.a4, d);
}

SwitchType classify_switch(const Graph& g, const Switch& s) {
    require_switch_valid(g, s);
    const int diagonals = (g.has_edge(s.a1, s.a4) ? 1 : 0) + (g.has_edge(s.a2, s.a3) ? 1 : 0);
    if (diagonals == 0) return SwitchType::A;
    if (diagonals == 2) return SwitchType::B;
    return SwitchType::C;
}

std::pair<Edge, Edge> random_nonincident_edge_pair(const Graph& g, Rng& rng) {
    if (g.nonincident_pair_count() <= 0)
        throw NoValidPair("graph has no pair of non-incident edges");
    const std::uint64_t m = g.num_edges();
    for (;;) {
        const auto i = rng.below(m);
        const auto j = rng.below(m);
        if (i == j) continue;
        const Edge e1 = g.edges()[i];
        const Edge e2 = g.edges()[j];
        if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) continue;
        return {e1, e2};
    }
}

}  // namespace trichain
