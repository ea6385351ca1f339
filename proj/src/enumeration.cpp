#include "trichain/enumeration.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>

#include "trichain/simulation_paths.hpp"

namespace trichain {

int pair_bit(int u, int v) {
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

Graph StateSpace::decode(int idx) const {
    const StateKey& k = states[idx];
    Graph g(n());
    for (int v = 1; v < n(); ++v)
        for (int u = 0; u < v; ++u)
            if (k.test(pair_bit(u, v))) g.add_edge(u, v);
    return g;
}

StateKey StateSpace::encode(const Graph& g) const {
    StateKey k;
    for (const Edge& e : g.edges()) k.set(pair_bit(e.u, e.v));
    return k;
}

namespace {

struct Enumerator {
    const DegreeSequence& d;
    long long limit;
    int n;
    Graph g;
    std::vector<int> residual;
    std::vector<StateKey> states;
    std::vector<long long> tri;
    bool census_only = false;
    std::vector<long long> census;
    long long total = 0;

    Enumerator(const DegreeSequence& dd, long long lim)
        : d(dd), limit(lim), n(dd.n()), g(dd.n()), residual(dd.degrees()) {}

    bool residual_feasible(int from) const {
        std::vector<int> rest(residual.begin() + from, residual.end());
        std::sort(rest.begin(), rest.end(), std::greater<int>());
        return erdos_gallai_graphical(rest);
    }

    void record() {
        if (census_only) {
            ++census[g.triangle_count()];
            ++total;
            return;
        }
        if (static_cast<long long>(states.size()) >= limit)
            throw SpaceTooLarge("enumeration limit exceeded");
        StateKey k;
        for (const Edge& e : g.edges()) k.set(pair_bit(e.u, e.v));
        states.push_back(k);
        tri.push_back(g.triangle_count());
    }

    void choose(int v, int from, int need) {
        if (need == 0) {
            vertex(v + 1);
            return;
        }
        // not enough candidates left
        int avail = 0;
        for (int w = from; w < n; ++w)
            if (residual[w] > 0) ++avail;
        if (avail < need) return;
        for (int w = from; w < n; ++w) {
            if (residual[w] == 0) continue;
            g.add_edge(v, w);
            --residual[w];
            choose(v, w + 1, need - 1);
            ++residual[w];
            g.remove_edge(v, w);
        }
    }

    void vertex(int v) {
        if (v == n) {
            record();
            return;
        }
        if (residual[v] == 0) {
            vertex(v + 1);
            return;
        }
        if (!residual_feasible(v)) return;
        const int need = residual[v];
        residual[v] = 0;
        choose(v, v + 1, need);
        residual[v] = need;
    }
};

}  // namespace

StateSpace enumerate_space(const DegreeSequence& d, long long limit) {
    if (d.n() > 16) throw SpaceTooLarge("enumeration supports at most 16 vertices");
    Enumerator en(d, limit);
    en.vertex(0);
    StateSpace space{d};
    space.states = std::move(en.states);
    space.tri = std::move(en.tri);

    // canonical order: sort keys, carry triangle counts along
    std::vector<int> order(space.states.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return space.states[a] < space.states[b]; });
    std::vector<StateKey> sorted_states(order.size());
    std::vector<long long> sorted_tri(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted_states[i] = space.states[order[i]];
        sorted_tri[i] = space.tri[order[i]];
    }
    space.states = std::move(sorted_states);
    space.tri = std::move(sorted_tri);

    space.index.reserve(space.states.size() * 2);
    for (int i = 0; i < space.size(); ++i) space.index[space.states[i]] = i;

    space.census.assign(space.max_triangles() + 1, 0);
    for (long long t : space.tri) ++space.census[t];
    return space;
}

std::vector<long long> enumerate_census_only(const DegreeSequence& d) {
    if (d.n() > 16) throw SpaceTooLarge("enumeration supports at most 16 vertices");
    Enumerator en(d, 0);
    en.census_only = true;
    en.census.assign(d.m2() / 6 + 1, 0);
    en.vertex(0);
    return en.census;
}

namespace {

long long capped(long long t, const std::optional<long long>& nu) {
    return nu ? std::min(t, *nu) : t;
}

// Visits each of the 2 a(d) non-identity proposals (unordered pair, non-lazy
// matching) of the current graph.
template <class F>
void for_each_proposal(const Graph& g, F f) {
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Edge e1 = es[i], e2 = es[j];
            if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) continue;
            f(Switch{e1.u, e1.v, e2.u, e2.v});
            f(Switch{e1.u, e1.v, e2.v, e2.u});
        }
    }
}

StateKey key_after_switch(StateKey k, const Switch& s) {
    k.flip(pair_bit(s.a1, s.a2));
    k.flip(pair_bit(s.a3, s.a4));
    k.flip(pair_bit(s.a1, s.a3));
    k.flip(pair_bit(s.a2, s.a4));
    return k;
}

}  // namespace

void build_matrix(StateSpace& space, ChainKind which, double lambda,
                  std::optional<long long> nu) {
    if (lambda < 1.0) throw Error("lambda must be >= 1");
    const long long a_pairs = space.d.a_pairs();
    space.rows.assign(space.size(), {});
    space.chain = which;
    space.lambda = lambda;
    space.nu = nu;

    for (int gi = 0; gi < space.size(); ++gi) {
        const Graph g = space.decode(gi);
        if (g.nonincident_pair_count() != a_pairs)
            throw InternalContradiction("a(d) mismatch against the formula");
        std::unordered_map<int, double> row;
        double diag = a_pairs > 0 ? 1.0 / 3.0 : 1.0;  // the F' = F draws
        const double p = a_pairs > 0 ? 1.0 / (3.0 * a_pairs) : 0.0;
        for_each_proposal(g, [&](const Switch& sw) {
            if (g.has_edge(sw.a1, sw.a3) || g.has_edge(sw.a2, sw.a4)) {
                diag += p;
                return;
            }
            if (which == ChainKind::TriSwitch && !is_tri_switch(g, sw)) {
                diag += p;
                return;
            }
            const auto it = space.index.find(key_after_switch(space.states[gi], sw));
            if (it == space.index.end())
                throw InternalContradiction("switch left the state space");
            const int hi = it->second;
            double q = 1.0;
            if (which == ChainKind::TriSwitch) {
                const long long dtau =
                    capped(space.tri[hi], nu) - capped(space.tri[gi], nu);
                q = dtau >= 0 ? 1.0 : std::pow(lambda, static_cast<double>(dtau));
            }
            row[hi] += p * q;
            diag += p * (1.0 - q);
        });
        row[gi] += diag;
        auto& out = space.rows[gi];
        out.assign(row.begin(), row.end());
        std::sort(out.begin(), out.end());
    }
    space.matrix_built = true;
}

bool check_irreducible(const StateSpace& space) {
    if (!space.matrix_built) throw Error("matrix not built");
    if (space.size() == 0) return false;
    std::vector<char> seen(space.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (const auto& [y, p] : space.rows[x]) {
            if (y == x || p <= 0.0 || seen[y]) continue;
            seen[y] = 1;
            ++reached;
            q.push(y);
        }
    }
    return reached == space.size();
}

std::vector<double> stationary_closed_form(const StateSpace& space) {
    if (!space.matrix_built) throw Error("matrix not built");
    std::vector<double> pi(space.size());
    double z = 0.0;
    for (int i = 0; i < space.size(); ++i) {
        const double w =
            space.chain == ChainKind::Switch
                ? 1.0
                : std::pow(space.lambda,
                           static_cast<double>(capped(space.tri[i], space.nu)));
        pi[i] = w;
        z += w;
    }
    for (double& x : pi) x /= z;
    return pi;
}

std::vector<double> stationary_exact(const StateSpace& space) {
    if (!space.matrix_built) throw Error("matrix not built");
    if (!check_irreducible(space)) throw NotIrreducible("chain support is disconnected");
    const int n = space.size();
    if (n > 6000) throw SpaceTooLarge("dense stationary solve limited to 6000 states");

    // (P^T - I) pi = 0 with the last equation replaced by sum pi = 1
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, p] : space.rows[i]) a(j, i) += p;
        a(i, i) -= 1.0;
    }
    for (int j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    const Eigen::VectorXd x = a.partialPivLu().solve(b);

    std::vector<double> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = x(i);

    // residual check
    std::vector<double> next(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, p] : space.rows[i]) next[j] += pi[i] * p;
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(next[i] - pi[i]));
    if (resid > 1e-13) throw ConvergenceFailure("stationary solve residual too large");
    return pi;
}

namespace {

struct SparseSym {
    // reversibilized matrix S = D^{1/2} P D^{-1/2}
    int n;
    std::vector<std::vector<std::pair<int, double>>> rows;

    void mul(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (const auto& [j, s] : rows[i]) y[i] += s * x[j];
    }
};

double norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

SpectralReport spectral_report(const StateSpace& space, double epsilon) {
    if (!space.matrix_built) throw Error("matrix not built");
    SpectralReport rep;
    rep.epsilon = epsilon;
    const int n = space.size();

    const std::vector<double> pi = stationary_exact(space);
    double max_inv = 0.0;
    for (int i = 0; i < n; ++i)
        for (const auto& [j, p] : space.rows[i])
            if (j == i) max_inv = std::max(max_inv, 1.0 / (2.0 * p));
    rep.max_inv_two_diag = max_inv;

    if (n == 1) {
        rep.trivial = true;
        rep.inv_one_plus_mun = 0.5;  // mu_{N-1} slot is the top eigenvalue 1
        return rep;
    }

    SparseSym s{n, std::vector<std::vector<std::pair<int, double>>>(n)};
    for (int i = 0; i < n; ++i)
        for (const auto& [j, p] : space.rows[i])
            s.rows[i].emplace_back(j, std::sqrt(pi[i] / pi[j]) * p);

    std::vector<double> v0(n);
    for (int i = 0; i < n; ++i) v0[i] = std::sqrt(pi[i]);
    const double v0n = norm(v0);
    for (double& x : v0) x /= v0n;

    const long long max_iters = 500000;
    const double tol = 1e-13;
    Rng rng(0x5eed5eed);

    auto power = [&](bool shift_up, bool deflate) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = rng.real() - 0.5;
        double value = 0.0;
        for (long long it = 0; it < max_iters; ++it) {
            if (deflate) {
                const double c = dot(x, v0);
                for (int i = 0; i < n; ++i) x[i] -= c * v0[i];
            }
            const double xn = norm(x);
            if (xn == 0.0) throw ConvergenceFailure("power iteration collapsed");
            for (double& e : x) e /= xn;
            s.mul(x, y);
            // (S + I)/2 or (I - S)/2
            for (int i = 0; i < n; ++i)
                y[i] = shift_up ? 0.5 * (y[i] + x[i]) : 0.5 * (x[i] - y[i]);
            const double next = dot(x, y);
            x.swap(y);
            rep.iterations = it + 1;
            if (it > 8 && std::abs(next - value) < tol) {
                value = next;
                return value;
            }
            value = next;
        }
        throw ConvergenceFailure("power iteration did not converge");
    };

    rep.mu1 = 2.0 * power(/*shift_up=*/true, /*deflate=*/true) - 1.0;
    rep.mu_n = 1.0 - 2.0 * power(/*shift_up=*/false, /*deflate=*/false);
    rep.mu_star = std::max(rep.mu1, std::abs(rep.mu_n));

    double pi_min = 1.0;
    for (double v : pi) pi_min = std::min(pi_min, v);
    rep.tau_bound =
        (std::log(1.0 / pi_min) + std::log(1.0 / epsilon)) / (1.0 - rep.mu_star);
    rep.inv_one_plus_mun = 1.0 / (1.0 + rep.mu_n);
    return rep;
}

PathEnsembleStats path_ensemble_stats(const StateSpace& space) {
    if (!space.matrix_built) throw Error("matrix not built");
    if (space.d.min_degree() < 3)
        throw MinDegreeTooSmall("path ensemble needs minimum degree 3");

    PathEnsembleStats stats;
    const long long d1 = space.d.max_degree();
    stats.b_bound = 20 * d1 * d1 * (2 * space.d.m() + d1 * d1);

    std::unordered_map<std::uint64_t, long long> tally;
    long long cap_min_edge = -1;  // min over tri-switch transitions of min(t-hat)

    for (int gi = 0; gi < space.size(); ++gi) {
        const Graph g = space.decode(gi);
        for_each_proposal(g, [&](const Switch& sw) {
            if (g.has_edge(sw.a1, sw.a3) || g.has_edge(sw.a2, sw.a4)) return;
            const auto it = space.index.find(key_after_switch(space.states[gi], sw));
            const int hi = it->second;
            if (is_tri_switch(g, sw)) {
                ++stats.num_tri_transitions;
                const long long m =
                    std::min(capped(space.tri[gi], space.nu), capped(space.tri[hi], space.nu));
                if (cap_min_edge < 0 || m < cap_min_edge) cap_min_edge = m;
            }
            if (hi <= gi) return;  // one canonical direction per unordered transition
            ++stats.num_switch_transitions;

            const SimulationPath path = simulate_switch(g, sw);
            stats.ell = std::max<long long>(stats.ell, path.length());
            StateKey cur = space.states[gi];
            int cur_idx = gi;
            for (const TriSwitch& st : path.steps) {
                cur = key_after_switch(cur, st.sw);
                const auto jt = space.index.find(cur);
                if (jt == space.index.end())
                    throw InternalContradiction("path stepped outside the space");
                const int nxt = jt->second;
                const std::uint64_t ekey =
                    (static_cast<std::uint64_t>(std::min(cur_idx, nxt)) << 32) |
                    static_cast<std::uint32_t>(std::max(cur_idx, nxt));
                ++tally[ekey];
                cur_idx = nxt;
            }
        });
    }
    stats.num_tri_transitions /= 2;  // seen from both endpoints

    for (const auto& [k, c] : tally) stats.b_sigma = std::max(stats.b_sigma, c);

    double zhat = 0.0, wmax = 0.0;
    for (int i = 0; i < space.size(); ++i) {
        const double w = std::pow(space.lambda,
                                  static_cast<double>(capped(space.tri[i], space.nu)));
        zhat += w;
        wmax = std::max(wmax, w);
    }
    const double omega = static_cast<double>(space.size());
    stats.r_ratio = (wmax * omega / zhat) * (wmax * omega / zhat);
    if (cap_min_edge >= 0)
        stats.d_gap = zhat / (omega * std::pow(space.lambda,
                                               static_cast<double>(cap_min_edge)));
    else
        stats.d_gap = zhat / omega;  // no triangle-switch transitions at all
    return stats;
}

CensusReport census_ratio_check(const StateSpace& space, std::optional<long long> t0) {
    CensusReport rep;
    rep.mu = space.d.mu();
    const auto& c = space.census;
    for (long long t = 0; t + 1 < static_cast<long long>(c.size()); ++t) {
        if (c[t] == 0 || c[t + 1] == 0) continue;
        CensusRow row;
        row.t = t;
        row.n_t = c[t];
        row.ratio = static_cast<double>(c[t + 1]) / static_cast<double>(c[t]);
        row.mu_over_t1 = rep.mu / static_cast<double>(t + 1);
        rep.rows.push_back(row);
    }
    rep.t0 = t0 ? *t0 : static_cast<long long>(std::ceil(rep.mu)) + 3;
    long long tail = 0, total = 0;
    for (long long t = 0; t < static_cast<long long>(c.size()); ++t) {
        total += c[t];
        if (t >= rep.t0) tail += c[t];
    }
    rep.tail_mass = total > 0 ? static_cast<double>(tail) / total : 0.0;
    return rep;
}

namespace {

constexpr std::uint32_t kCacheMagic = 0x54525353;  // "TRSS"
constexpr std::uint32_t kCacheVersion = 1;

template <class T>
void put(std::ostream& os, const T& x) {
    os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T x{};
    is.read(reinterpret_cast<char*>(&x), sizeof(T));
    if (!is) throw Error("truncated state-space cache");
    return x;
}

}  // namespace

void save_space(const StateSpace& space, std::ostream& os) {
    put(os, kCacheMagic);
    put(os, kCacheVersion);
    put(os, static_cast<std::uint32_t>(space.n()));
    for (int d : space.d.degrees()) put(os, static_cast<std::int32_t>(d));
    put(os, static_cast<std::uint64_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) {
        put(os, space.states[i].lo);
        put(os, space.states[i].hi);
        put(os, static_cast<std::int64_t>(space.tri[i]));
    }
}

StateSpace load_space(std::istream& is) {
    if (get<std::uint32_t>(is) != kCacheMagic) throw Error("bad cache magic");
    if (get<std::uint32_t>(is) != kCacheVersion) throw Error("unsupported cache version");
    const auto n = get<std::uint32_t>(is);
    std::vector<int> degrees(n);
    for (auto& d : degrees) d = get<std::int32_t>(is);
    StateSpace space{DegreeSequence(degrees)};
    const auto count = get<std::uint64_t>(is);
    space.states.resize(count);
    space.tri.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        space.states[i].lo = get<std::uint64_t>(is);
        space.states[i].hi = get<std::uint64_t>(is);
        space.tri[i] = get<std::int64_t>(is);
    }
    space.index.reserve(count * 2);
    for (int i = 0; i < space.size(); ++i) space.index[space.states[i]] = i;
    space.census.assign(space.max_triangles() + 1, 0);
    for (long long t : space.tri) ++space.census[t];
    return space;
}

}  // namespace trichain
