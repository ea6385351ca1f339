#include "trichain/simulation_paths.hpp"

#include <algorithm>
#include <sstream>

namespace trichain {

const char* case_label_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
        case CaseLabel::IV: return "IV";
        case CaseLabel::V: return "V";
        case CaseLabel::VI: return "VI";
        case CaseLabel::VII: return "VII";
        case CaseLabel::VIIIa: return "VIIIa";
        case CaseLabel::VIIIb: return "VIIIb";
        case CaseLabel::IXa: return "IXa";
        case CaseLabel::IXb: return "IXb";
        case CaseLabel::IXc: return "IXc";
    }
    return "?";
}

namespace {

// The four relabelings preserving {removed, added} as ordered roles; entry p
// means new a_{i+1} = old a_{p[i]+1}. kKlein[j] moves old a_{j+1} to the
// front.
constexpr std::array<std::array<int, 4>, 4> kKlein = {{
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
}};

std::array<int, 4> permuted(const std::array<int, 4>& a, const std::array<int, 4>& p) {
    return {a[p[0]], a[p[1]], a[p[2]], a[p[3]]};
}

bool in_quad(int x, const std::array<int, 4>& d) {
    return x == d[0] || x == d[1] || x == d[2] || x == d[3];
}

// N(vertex) \ D, sorted.
std::vector<int> ext_neighbors(const Graph& g, int vertex, const std::array<int, 4>& d) {
    std::vector<int> out;
    for (int x : g.neighbors(vertex))
        if (!in_quad(x, d)) out.push_back(x);
    return out;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> symdiff_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

// Graph with at most one edge masked out; lets the planting search run on
// G - a1a2 without copying.
struct MaskedView {
    const Graph* g;
    int mu = -1, mv = -1;

    bool masked(int x, int y) const {
        return mu >= 0 && ((x == mu && y == mv) || (x == mv && y == mu));
    }
    bool adj(int x, int y) const { return !masked(x, y) && g->has_edge(x, y); }
    int degree(int x) const {
        int d = g->degree(x);
        if (mu >= 0 && (x == mu || x == mv)) --d;
        return d;
    }
    std::vector<int> neighbors_excluding(int x, int skip) const {
        std::vector<int> out;
        for (int y : g->neighbors(x)) {
            if (y == skip || masked(x, y)) continue;
            out.push_back(y);
        }
        return out;
    }
};

struct PlantOutcome {
    bool ok = false;
    Switch sw{};
    int tri_u = -1, tri_w = -1;  // planted triangle is (v, tri_u, tri_w)
    // failure data for the forced 5-cycle exception: cycle v r1 w1c w2c rj
    int fail_rj = -1, fail_w1c = -1, fail_w2c = -1;
};

// Planting search. The shortest cycle through a path r_i v r_j
// has length 2 + dist(r_i, r_j) in (G - v); the three constructions below
// correspond to distance 2, 3 and >= 4.
PlantOutcome planting_search(const MaskedView& mg, int v, const std::array<int, 3>& r,
                          bool forced) {
    for (int i = 0; i < 3; ++i) {
        if (!mg.adj(v, r[i])) throw Error("plant: r is not a neighborhood subset");
        if (mg.degree(r[i]) < 2) throw Error("plant: neighbor degree below 2");
        for (int j = i + 1; j < 3; ++j)
            if (mg.adj(r[i], r[j])) throw Error("plant: triangle at v already present");
        for (int y : mg.neighbors_excluding(r[i], v))
            if (mg.adj(v, y)) throw Error("plant: triangle at v already present");
    }

    const auto pairs = forced
                           ? std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}
                           : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 0},
                                                              {1, 2}, {2, 0}, {2, 1}};

    PlantOutcome out;

    // distance 2: plant on (v, r_i, w) where w is a second common neighbor
    for (const auto& [i, j] : pairs) {
        const auto wi = mg.neighbors_excluding(r[i], v);
        int w = -1;
        for (int x : wi)
            if (mg.adj(r[j], x) && (w == -1 || x < w)) w = x;
        if (w == -1) continue;
        const int k = 3 - i - j;
        out.ok = true;
        out.sw = Switch{v, r[k], w, r[j]};  // removes {r_j w, v r_k}, adds {v w, r_j r_k}
        out.tri_u = r[i];
        out.tri_w = w;
        return out;
    }

    // distance 3: 5-cycle v r_i w1 w2 r_j
    bool saw_five_cycle = false;
    for (const auto& [i, j] : pairs) {
        const int k = 3 - i - j;
        for (int w1 : mg.neighbors_excluding(r[i], v)) {
            for (int w2 : mg.neighbors_excluding(r[j], v)) {
                if (w1 == w2 || !mg.adj(w1, w2)) continue;
                if (forced && mg.adj(r[k], w2)) {
                    // exception candidate: record the first cycle seen
                    if (!saw_five_cycle) {
                        saw_five_cycle = true;
                        out.fail_rj = r[j];
                        out.fail_w1c = w1;
                        out.fail_w2c = w2;
                    }
                    continue;
                }
                out.ok = true;
                out.sw = Switch{v, r[k], w1, w2};  // removes {w1 w2, v r_k}, adds {v w1, r_k w2}
                out.tri_u = r[i];
                out.tri_w = w1;
                return out;
            }
        }
    }
    if (saw_five_cycle) return out;  // forced 5-cycle exception, out.ok == false

    // no short cycle: path w1 r_1 v r_2 w2
    {
        const int i = 0, j = 1;
        const auto wi = mg.neighbors_excluding(r[i], v);
        const auto wj = mg.neighbors_excluding(r[j], v);
        if (wi.empty() || wj.empty()) throw InternalContradiction("plant: missing neighbors");
        const int w1 = wi.front();
        const int w2 = wj.front();
        out.ok = true;
        out.sw = Switch{r[i], w1, r[j], w2};  // removes {r_i w1, r_j w2}, adds {r_i r_j, w1 w2}
        out.tri_u = r[i];
        out.tri_w = r[j];
        return out;
    }
}

struct Analysis {
    CaseLabel label = CaseLabel::I;
    std::array<int, 4> a{};  // canonical a1..a4
    std::vector<std::pair<std::string, int>> aux;
    // planting cases
    bool has_plant = false;
    Switch plant{};
    int pivot = -1;    // u of the core: triangle (a1, pivot, witness), pivot a4-nonadjacent
    int witness = -1;  // third triangle vertex
    // simple cases
    int u = -1, v = -1, w = -1;
    int u1 = -1, u2 = -1, v1 = -1, v2 = -1, w1 = -1, w2 = -1, z = -1;
};

void require_min_degree_3(const Graph& g) {
    for (int i = 0; i < g.num_vertices(); ++i)
        if (g.degree(i) < 3) throw MinDegreeTooSmall("simulation paths need minimum degree 3");
}

Analysis analyze(const Graph& g, const Switch& s) {
    require_min_degree_3(g);
    require_switch_valid(g, s);

    Analysis an;
    const std::array<int, 4> orig = s.vertices();
    an.a = orig;
    const SwitchType type = classify_switch(g, s);

    // (I) the switch already changes the triangle set
    if (is_tri_switch(g, s)) {
        an.label = CaseLabel::I;
        return an;
    }

    // (II)/(III) common external neighbor across a diagonal pair
    if (type == SwitchType::A || type == SwitchType::B) {
        for (const auto& p : kKlein) {
            const auto a = permuted(orig, p);
            const auto common =
                intersect_sorted(ext_neighbors(g, a[0], a), ext_neighbors(g, a[3], a));
            if (!common.empty()) {
                an.label = type == SwitchType::A ? CaseLabel::II : CaseLabel::III;
                an.a = a;
                an.v = common.front();
                an.aux.emplace_back("v", an.v);
                return an;
            }
        }
    }

    // (IV) pivot vertex: a diagonal with asymmetric outside neighborhoods, or
    // an external triangle on some a_j
    {
        // subcase 1: diagonal a_j a_{5-j} present and A_i xor A_{5-i} nonempty
        int best_i = -1, best_u = -1;
        if (g.has_edge(orig[1], orig[2])) {  // diagonal a2a3, i = 1
            const auto sd = symdiff_sorted(ext_neighbors(g, orig[0], orig),
                                           ext_neighbors(g, orig[3], orig));
            if (!sd.empty()) {
                best_i = 1;
                best_u = sd.front();
            }
        }
        if (best_i == -1 && g.has_edge(orig[0], orig[3])) {  // diagonal a1a4, i = 2
            const auto sd = symdiff_sorted(ext_neighbors(g, orig[1], orig),
                                           ext_neighbors(g, orig[2], orig));
            if (!sd.empty()) {
                best_i = 2;
                best_u = sd.front();
            }
        }
        if (best_i != -1) {
            std::array<int, 4> perm{};
            if (best_i == 1) {
                const bool in_a1 = g.has_edge(orig[0], best_u);
                perm = in_a1 ? kKlein[0] : kKlein[3];
            } else {
                const bool in_a2 = g.has_edge(orig[1], best_u);
                perm = in_a2 ? kKlein[1] : kKlein[2];
            }
            an.label = CaseLabel::IV;
            an.a = permuted(orig, perm);
            an.u = best_u;
            an.aux.emplace_back("u", an.u);
            return an;
        }

        // subcase 2: triangle a_j u w with u, w outside D and u not adjacent
        // to the diagonal partner a_{5-j}
        int bj = -1, bu = -1, bw = -1;
        for (int j = 0; j < 4; ++j) {
            const int partner = 3 - j;
            const auto aj = ext_neighbors(g, orig[j], orig);
            for (int uu : aj) {
                if (g.has_edge(uu, orig[partner])) continue;
                for (int ww : aj) {
                    if (ww == uu || !g.has_edge(uu, ww)) continue;
                    if (bj == -1 || std::array<int, 3>{j, uu, ww} <
                                        std::array<int, 3>{bj, bu, bw}) {
                        bj = j;
                        bu = uu;
                        bw = ww;
                    }
                }
            }
        }
        if (bj != -1) {
            an.label = CaseLabel::IV;
            an.a = permuted(orig, kKlein[bj]);
            an.u = bu;
            an.w = bw;
            an.aux.emplace_back("u", an.u);
            an.aux.emplace_back("w", an.w);
            return an;
        }
    }

    // (V)/(VI) single diagonal with A_i = A_{5-i}
    if (type == SwitchType::C) {
        std::array<int, 4> a{};
        bool found = false;
        for (const auto& p : kKlein) {
            a = permuted(orig, p);
            if (g.has_edge(a[0], a[3])) {
                found = true;
                break;
            }
        }
        if (!found) throw InternalContradiction("type C switch without diagonal");
        an.a = a;
        const auto a2ext = ext_neighbors(g, a[1], a);
        const auto a3ext = ext_neighbors(g, a[2], a);
        if (a2ext != a3ext)
            throw InternalContradiction("case V/VI reached with asymmetric neighborhoods");
        const auto& shared = a2ext;
        // lexicographically least edge inside the shared neighborhood, if any
        for (int x : shared) {
            for (int y : shared) {
                if (y == x || !g.has_edge(x, y)) continue;
                an.label = CaseLabel::V;
                an.u = x;
                an.v = y;
                an.aux.emplace_back("u", an.u);
                an.aux.emplace_back("v", an.v);
                return an;
            }
        }
        if (shared.size() < 2)
            throw InternalContradiction("case VI needs two shared neighbors");
        an.label = CaseLabel::VI;
        an.u = shared[0];
        an.v = shared[1];
        an.w = -1;
        for (int y : g.neighbors(an.v))
            if (!in_quad(y, a)) {
                an.w = y;
                break;
            }
        if (an.w == -1) throw InternalContradiction("case VI: no external neighbor of v");
        an.aux.emplace_back("u", an.u);
        an.aux.emplace_back("v", an.v);
        an.aux.emplace_back("w", an.w);
        return an;
    }

    if (type != SwitchType::A)
        throw InternalContradiction("type B/C switch escaped cases I-VI");

    // From here on: type (a), no common neighbors among D, no triangle
    // touching D.

    // (VII) some switch vertex of degree >= 4: plant on it
    {
        int jbest = -1;
        for (int j = 0; j < 4; ++j)
            if (g.degree(orig[j]) >= 4 && (jbest == -1 || orig[j] < orig[jbest])) jbest = j;
        if (jbest != -1) {
            an.label = CaseLabel::VII;
            an.a = permuted(orig, kKlein[jbest]);
            const auto a1ext = ext_neighbors(g, an.a[0], an.a);
            const std::array<int, 3> r = {a1ext[0], a1ext[1], a1ext[2]};
            MaskedView mg{&g};
            const PlantOutcome plant = planting_search(mg, an.a[0], r, /*forced=*/false);
            if (!plant.ok) throw InternalContradiction("unforced plant failed");
            an.has_plant = true;
            an.plant = plant.sw;
            an.pivot = plant.tri_u;
            an.witness = plant.tri_w;
            an.aux.emplace_back("u", an.pivot);
            an.aux.emplace_back("w", an.witness);
            return an;
        }
    }

    // (VIII) all degrees 3 and a short path between opposite neighborhoods
    {
        const std::array<std::vector<int>, 4> ext = {
            ext_neighbors(g, orig[0], orig), ext_neighbors(g, orig[1], orig),
            ext_neighbors(g, orig[2], orig), ext_neighbors(g, orig[3], orig)};
        // length 1 first (shortest path wins), then length 2
        for (int len = 1; len <= 2; ++len) {
            for (int j = 0; j < 2; ++j) {
                for (int x : ext[j]) {
                    for (int y : ext[j + 2]) {
                        int ww = -1;
                        if (len == 1) {
                            if (!g.has_edge(x, y)) continue;
                        } else {
                            for (int t : g.neighbors(x))
                                if (!in_quad(t, orig) && g.has_edge(t, y) &&
                                    (ww == -1 || t < ww))
                                    ww = t;
                            if (ww == -1) continue;
                        }
                        an.label = len == 1 ? CaseLabel::VIIIa : CaseLabel::VIIIb;
                        an.a = permuted(orig, kKlein[j]);
                        const auto A1 = ext_neighbors(g, an.a[0], an.a);
                        const auto A3 = ext_neighbors(g, an.a[2], an.a);
                        if (A1.size() != 2 || A3.size() != 2)
                            throw InternalContradiction("case VIII expects degree 3");
                        an.u1 = x;
                        an.u2 = A1[0] == x ? A1[1] : A1[0];
                        an.v1 = y;
                        an.v2 = A3[0] == y ? A3[1] : A3[0];
                        an.aux.emplace_back("u1", an.u1);
                        an.aux.emplace_back("u2", an.u2);
                        an.aux.emplace_back("v1", an.v1);
                        an.aux.emplace_back("v2", an.v2);
                        an.has_plant = true;
                        if (len == 1) {
                            // remove {a1 u2, a3 v1}, add {a1 v1, a3 u2}
                            an.plant = Switch{an.a[0], an.u2, an.v1, an.a[2]};
                            an.pivot = an.u1;
                            an.witness = an.v1;
                        } else {
                            an.w = ww;
                            an.aux.emplace_back("w", an.w);
                            // remove {a1 u2, w v1}, add {a1 w, u2 v1}
                            an.plant = Switch{an.a[0], an.u2, an.w, an.v1};
                            an.pivot = an.u1;
                            an.witness = an.w;
                        }
                        return an;
                    }
                }
            }
        }
    }

    // (IX) all degrees 3, opposite neighborhoods far apart
    {
        const auto A1 = ext_neighbors(g, orig[0], orig);
        if (A1.size() != 2) throw InternalContradiction("case IX expects degree 3");
        int uu1 = A1[0], uu2 = A1[1];

        // (IXa) an edge between two neighbors of u1 or u2
        for (int swap = 0; swap < 2; ++swap) {
            const int cand = swap == 0 ? uu1 : uu2;
            int bw1 = -1, bw2 = -1;
            const auto nb = g.neighbors(cand);
            for (int x : nb) {
                if (x == orig[0]) continue;
                for (int y : nb) {
                    if (y == orig[0] || y <= x) continue;
                    if (g.has_edge(x, y)) {
                        bw1 = x;
                        bw2 = y;
                        break;
                    }
                }
                if (bw1 != -1) break;
            }
            if (bw1 != -1) {
                an.label = CaseLabel::IXa;
                an.u1 = cand;
                an.u2 = cand == uu1 ? uu2 : uu1;
                an.w1 = bw1;
                an.w2 = bw2;
                const auto A3 = ext_neighbors(g, orig[2], orig);
                an.v = A3.front();
                an.aux = {{"u1", an.u1}, {"u2", an.u2}, {"w1", an.w1},
                          {"w2", an.w2}, {"v", an.v}};
                return an;
            }
        }

        // (IXb)/(IXc) plant on G - a1a2 with v = u1,
        // R = (a1, w1, w2), insisting the triangle contains a1
        std::vector<int> nbrs;
        for (int x : g.neighbors(uu1))
            if (x != orig[0]) nbrs.push_back(x);
        if (nbrs.size() < 2) throw InternalContradiction("case IX: u1 degree below 3");
        const int ww1 = nbrs[0], ww2 = nbrs[1];
        MaskedView mg{&g, orig[0], orig[1]};
        const PlantOutcome plant =
            planting_search(mg, uu1, {orig[0], ww1, ww2}, /*forced=*/true);
        an.u1 = uu1;
        an.u2 = uu2;
        an.w1 = ww1;
        an.w2 = ww2;
        if (plant.ok) {
            an.label = CaseLabel::IXb;
            an.has_plant = true;
            an.plant = plant.sw;
            an.pivot = uu1;  // triangle is (u1, a1, tri_w)
            an.witness = plant.tri_w;
            an.z = plant.tri_w;
            an.aux = {{"u1", an.u1}, {"u2", an.u2}, {"w1", an.w1},
                      {"w2", an.w2}, {"z", an.z}};
            return an;
        }
        // exception: 5-cycle a1 u1 w_j z u2 with both orientations blocked
        an.label = CaseLabel::IXc;
        const int cyc_w = plant.fail_rj;           // the neighbor of u1 on the cycle
        const int other_w = cyc_w == ww1 ? ww2 : ww1;
        an.w1 = cyc_w;
        an.w2 = other_w;
        an.z = plant.fail_w2c;
        an.has_plant = true;
        // remove {u1 w2, z u2}, add {u1 z, u2 w2}: plants triangle u1 w1 z
        an.plant = Switch{an.u1, an.w2, an.z, an.u2};
        an.aux = {{"u1", an.u1}, {"u2", an.u2}, {"w1", an.w1},
                  {"w2", an.w2}, {"z", an.z}};
        return an;
    }
}

}  // namespace

CaseLabel classify_case(const Graph& g, const Switch& s) { return analyze(g, s).label; }

SimulationPath simulate_switch(const Graph& g, const Switch& s) {
    const Analysis an = analyze(g, s);
    SimulationPath path;
    path.label = an.label;
    path.relabeling = an.a;
    path.auxiliaries = an.aux;

    Graph scratch = g;
    auto push = [&](const Switch& sw) {
        if (!switch_valid(scratch, sw) || !is_tri_switch(scratch, sw))
            throw InternalContradiction("emitted step is not a valid triangle switch");
        const long long d = triangle_delta(scratch, sw);
        path.steps.push_back(TriSwitch{sw, d});
        apply_switch(scratch, sw);
    };

    const auto& a = an.a;
    switch (an.label) {
        case CaseLabel::I:
            push(s);
            break;
        case CaseLabel::II:
            push(Switch{a[0], a[1], a[3], a[2]});  // to the diagonals
            push(Switch{a[0], a[3], a[2], a[1]});  // and on to H
            break;
        case CaseLabel::III:
            push(Switch{a[0], a[3], a[2], a[1]});  // diagonals out, switch edges in
            push(Switch{a[0], a[1], a[3], a[2]});  // diagonals back
            break;
        case CaseLabel::IV:
            push(Switch{a[0], an.u, a[2], a[3]});
            push(Switch{an.u, a[3], a[0], a[1]});
            break;
        case CaseLabel::V:
            push(Switch{an.u, an.v, a[0], a[3]});
            push(Switch{a[0], a[1], a[3], a[2]});
            push(Switch{a[0], a[3], a[2], a[1]});
            push(Switch{an.u, a[0], an.v, a[3]});
            break;
        case CaseLabel::VI:
            push(Switch{an.u, a[2], an.v, an.w});
            push(Switch{a[2], a[3], an.u, a[1]});
            push(Switch{a[0], a[1], a[2], an.u});
            push(Switch{an.u, an.v, a[2], an.w});
            break;
        case CaseLabel::VII:
        case CaseLabel::VIIIa:
        case CaseLabel::VIIIb:
        case CaseLabel::IXb:
            push(an.plant);
            push(Switch{a[0], an.pivot, a[2], a[3]});
            push(Switch{an.pivot, a[3], a[0], a[1]});
            push(an.plant.inverse());
            break;
        case CaseLabel::IXa:
            push(Switch{a[2], an.v, an.u1, an.w2});
            push(Switch{a[0], a[1], a[2], a[3]});
            push(Switch{a[2], an.u1, an.v, an.w2});
            break;
        case CaseLabel::IXc: {
            push(an.plant);
            // now the IXa situation holds around u1 in the planted graph
            int pw1 = -1, pw2 = -1;
            const auto nb = scratch.neighbors(an.u1);
            for (int x : nb) {
                if (x == a[0]) continue;
                for (int y : nb) {
                    if (y == a[0] || y <= x) continue;
                    if (scratch.has_edge(x, y)) {
                        pw1 = x;
                        pw2 = y;
                        break;
                    }
                }
                if (pw1 != -1) break;
            }
            if (pw1 == -1) throw InternalContradiction("IXc: planted edge not found");
            const auto A3 = ext_neighbors(scratch, a[2], a);
            const int vv = A3.front();
            push(Switch{a[2], vv, an.u1, pw2});
            push(Switch{a[0], a[1], a[2], a[3]});
            push(Switch{a[2], an.u1, vv, pw2});
            push(an.plant.inverse());
            break;
        }
    }

    Graph target = g;
    apply_switch(target, s);
    if (!scratch.same_edges(target))
        throw InternalContradiction("simulation path does not reach H");
    return path;
}

TriSwitch plant_triangle(const Graph& g, int v, std::array<int, 3> r,
                         std::optional<int> forced_first) {
    MaskedView mg{&g};
    bool forced = false;
    if (forced_first) {
        auto it = std::find(r.begin(), r.end(), *forced_first);
        if (it == r.end()) throw Error("forced_first must be a member of r");
        std::swap(r[0], *it);
        forced = true;
    }
    const PlantOutcome plant = planting_search(mg, v, r, forced);
    if (!plant.ok)
        throw PlantImpossible("5-cycle through the forced path but no 4-cycle");
    return TriSwitch{plant.sw, triangle_delta(g, plant.sw)};
}

bool verify_path(const Graph& g, const Switch& s, const SimulationPath& p, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (p.steps.empty() || p.length() > kMaxSimulationPathLength)
        return fail("path length out of range");
    if (!switch_valid(g, s)) return fail("target switch invalid on g");
    Graph scratch = g;
    for (int i = 0; i < p.length(); ++i) {
        const TriSwitch& st = p.steps[i];
        std::ostringstream os;
        if (!switch_valid(scratch, st.sw)) {
            os << "step " << i << " is not a valid switch";
            return fail(os.str());
        }
        if (!is_tri_switch(scratch, st.sw)) {
            os << "step " << i << " does not change the triangle set";
            return fail(os.str());
        }
        if (triangle_delta(scratch, st.sw) != st.delta_t) {
            os << "step " << i << " has wrong delta_t";
            return fail(os.str());
        }
        apply_switch(scratch, st.sw);
    }
    Graph target = g;
    apply_switch(target, s);
    if (!scratch.same_edges(target)) return fail("endpoint differs from H");
    return true;
}

}  // namespace trichain
