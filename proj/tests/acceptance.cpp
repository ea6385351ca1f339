// Acceptance suite: one line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trichain/analysis.hpp"
#include "trichain/chains.hpp"
#include "trichain/enumeration.hpp"
#include "trichain/simulation_paths.hpp"

using namespace trichain;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<Outcome> results(10);
double g_min_diag = 1.0;  // across every matrix built anywhere in this run

void report(int id, const Outcome& o) {
    std::printf("CRITERION %d: %s — %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    results[id] = o;
}

void fold_diag(const StateSpace& space) {
    for (int i = 0; i < space.size(); ++i)
        for (const auto& [j, p] : space.rows[i])
            if (j == i) g_min_diag = std::min(g_min_diag, p);
}

// criterion 1 sequences: every regular one with n <= 8, 3 <= d < n, nd even,
// plus a fixed sample of irregular ones with minimum degree 3
std::vector<std::vector<int>> criterion1_sequences() {
    std::vector<std::vector<int>> out;
    for (int n = 4; n <= 8; ++n)
        for (int d = 3; d < n; ++d)
            if (n * d % 2 == 0) out.push_back(std::vector<int>(n, d));
    out.push_back({4, 3, 3, 3, 3});
    out.push_back({4, 4, 3, 3, 3, 3});
    out.push_back({5, 3, 3, 3, 3, 3});
    out.push_back({5, 4, 3, 3, 3, 3, 3});
    out.push_back({4, 4, 3, 3, 3, 3, 3, 3});
    out.push_back({6, 4, 3, 3, 3, 3, 3, 3});
    out.push_back({5, 5, 4, 4, 3, 3, 3, 3});
    out.push_back({7, 3, 3, 3, 3, 3, 3, 3});
    return out;
}

std::string degs_to_string(const std::vector<int>& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    return os.str();
}

// independent per-step verifier for criterion 2: brute-force triangle sets,
// no reliance on the library's incremental counting
bool brute_verify(const Graph& g, const Switch& s, const SimulationPath& p,
                  std::string* why) {
    if (p.length() < 1 || p.length() > 5) {
        *why = "length out of range";
        return false;
    }
    Graph cur = g;
    for (int i = 0; i < p.length(); ++i) {
        const Switch& sw = p.steps[i].sw;
        if (!switch_valid(cur, sw)) {
            *why = "step " + std::to_string(i) + " invalid";
            return false;
        }
        const auto before = oracles::triangle_set(cur);
        apply_switch(cur, sw);
        if (before == oracles::triangle_set(cur)) {
            *why = "step " + std::to_string(i) + " left the triangle set unchanged";
            return false;
        }
    }
    Graph target = g;
    apply_switch(target, s);
    if (!cur.same_edges(target)) {
        *why = "endpoint differs from H";
        return false;
    }
    return true;
}

void run_criteria_1_and_3() {
    Outcome c1, c3;
    long long spaces_checked = 0, paths_total = 0;
    std::ostringstream c1_detail, c3_detail;

    for (const auto& degs : criterion1_sequences()) {
        DegreeSequence d(degs);
        auto space = enumerate_space(d);
        ++spaces_checked;

        build_matrix(space, ChainKind::TriSwitch, 1.0, std::nullopt);
        fold_diag(space);

        if (!check_irreducible(space)) {
            c1.pass = false;
            c1_detail << " DISCONNECTED[" << degs_to_string(degs) << "]";
        }

        const auto stats = path_ensemble_stats(space);
        paths_total += stats.num_switch_transitions;
        if (stats.ell > 5 || stats.b_sigma > stats.b_bound) {
            c3.pass = false;
            c3_detail << " VIOLATION[" << degs_to_string(degs) << " ell=" << stats.ell
                      << " B=" << stats.b_sigma << " bound=" << stats.b_bound << "]";
        }
    }

    {
        std::ostringstream os;
        os << "triangle-switch move graph connected on all " << spaces_checked
           << " enumerated spaces (n<=8, min degree 3)" << c1_detail.str();
        c1.detail = os.str();
        report(1, c1);
    }
    {
        std::ostringstream os;
        os << "B(Sigma) <= 20 d1^2 (2M + d1^2) and ell <= 5 over " << paths_total
           << " simulation paths on the criterion-1 spaces" << c3_detail.str();
        c3.detail = os.str();
        report(3, c3);
    }
}

void run_criterion_2() {
    Outcome c;
    Rng seq_rng(20240817);
    long long instances = 0, failures = 0;
    std::string first_why;
    while (instances < 10000) {
        const int n = 8 + static_cast<int>(seq_rng.below(9));  // 8..16
        const auto d = oracles::random_graphical(n, 3, std::min(n - 1, 6), seq_rng);
        Graph g = from_degree_sequence(d, seq_rng.next());
        Rng mix(seq_rng.next());
        for (int i = 0; i < 400; ++i) switch_step(g, mix);
        int from_this_graph = 0;
        for (int tries = 0; tries < 200 && from_this_graph < 10 && instances < 10000;
             ++tries) {
            const auto [e1, e2] = random_nonincident_edge_pair(g, mix);
            const bool flip = mix.below(2) == 1;
            const Switch s = flip ? Switch{e1.u, e1.v, e2.v, e2.u}
                                  : Switch{e1.u, e1.v, e2.u, e2.v};
            if (!switch_valid(g, s)) continue;
            ++from_this_graph;
            ++instances;
            std::string why;
            const SimulationPath p = simulate_switch(g, s);
            if (!brute_verify(g, s, p, &why)) {
                ++failures;
                if (first_why.empty()) first_why = why;
            }
        }
    }
    c.pass = failures == 0;
    std::ostringstream os;
    os << instances << " randomized (graph, switch) instances with 8<=n<=16: every path "
       << "is <=5 valid triangle switches ending exactly at H; failures=" << failures;
    if (!first_why.empty()) os << " first=" << first_why;
    c.detail = os.str();
    report(2, c);
}

void run_criterion_4() {
    Outcome c;
    auto space = enumerate_space(DegreeSequence(std::vector<int>(6, 3)));
    double worst_pi = 0.0, worst_db = 0.0;
    for (double lambda : {1.0, 2.0, 5.0}) {
        for (int capped = 0; capped < 2; ++capped) {
            const std::optional<long long> nu =
                capped ? std::optional<long long>(space.d.default_nu()) : std::nullopt;
            build_matrix(space, ChainKind::TriSwitch, lambda, nu);
            fold_diag(space);
            const auto pi = stationary_exact(space);
            const auto closed = stationary_closed_form(space);
            for (int i = 0; i < space.size(); ++i)
                worst_pi = std::max(worst_pi, std::abs(pi[i] - closed[i]));
            for (int i = 0; i < space.size(); ++i)
                for (const auto& [j, p] : space.rows[i]) {
                    if (j == i) continue;
                    double back = 0.0;
                    for (const auto& [k, q] : space.rows[j])
                        if (k == i) back = q;
                    worst_db = std::max(worst_db,
                                        std::abs(closed[i] * p - closed[j] * back));
                }
        }
    }
    c.pass = worst_pi < 1e-10 && worst_db < 1e-12;
    std::ostringstream os;
    os << "n=6 cubic, lambda in {1,2,5}, capped and uncapped: stationary vs closed form "
       << "inf-norm " << worst_pi << " (<1e-10), detailed balance " << worst_db
       << " (<1e-12)";
    c.detail = os.str();
    report(4, c);
}

void run_criterion_6() {
    Outcome c;
    DegreeSequence d(std::vector<int>(100, 3));
    Graph g = from_degree_sequence(d, 6);
    ChainConfig cfg;
    cfg.lambda = 1.0;
    cfg.seed = 1;
    cfg.burn_in = 1000000;
    cfg.thin = 1000;
    cfg.steps = 10000000;  // 10^4 samples
    const auto stats = run_chain(g, cfg, ChainKind::Switch);
    const auto cmp = compare_to_poisson(stats, 4.0 / 3.0);
    c.pass = cmp.tv <= 0.05;
    std::ostringstream os;
    os << "switch chain n=100 cubic, burn 1e6, thin 1e3, 1e4 samples: TV(empirical, "
       << "Pois(4/3)) = " << cmp.tv << " (<=0.05), mean " << cmp.mean_emp;
    c.detail = os.str();
    report(6, c);
}

void run_criterion_7() {
    Outcome c;
    DegreeSequence d(std::vector<int>(100, 3));
    Graph g = from_degree_sequence(d, 7);
    ChainConfig cfg;
    cfg.lambda = 2.0;
    // cap pinned at 14: Pr(t > 14) < 2e-7 under Pois(8/3), so the chain is
    // capped but undistorted at this scale; the default floor(ln n / ln ln n)
    // = 3 at n=100 would pull the equilibrium mean to about 2.15 by design
    cfg.nu_cap = 14;
    cfg.seed = 1;
    cfg.burn_in = 1000000;
    cfg.thin = 1000;
    cfg.steps = 10000000;
    const auto stats = run_chain(g, cfg, ChainKind::TriSwitch);
    const auto cmp = compare_to_poisson(stats, 8.0 / 3.0);
    const double err = std::abs(cmp.mean_emp - 8.0 / 3.0);
    c.pass = err <= 3.0 * cmp.se_mean;
    std::ostringstream os;
    os << "capped (nu=14) triangle-switch chain, lambda=2, n=100 cubic: mean t = "
       << cmp.mean_emp << ", |mean - 8/3| = " << err << " vs 3 SE = "
       << 3.0 * cmp.se_mean << " (batch means)";
    c.detail = os.str();
    report(7, c);
}

void run_criterion_8() {
    Outcome c;
    std::ostringstream os;

    // (a) a(d) equals the direct count on every enumerated realization
    bool a_ok = true;
    for (const auto degs : {std::vector<int>(6, 3), std::vector<int>{4, 4, 3, 3, 3, 3},
                            std::vector<int>(6, 2), std::vector<int>{3, 2, 2, 2, 2, 1}}) {
        DegreeSequence d(degs);
        const auto space = enumerate_space(d);
        for (int i = 0; i < space.size(); ++i) {
            const Graph g = space.decode(i);
            long long direct = 0;
            const auto& es = g.edges();
            for (std::size_t x = 0; x < es.size(); ++x)
                for (std::size_t y = x + 1; y < es.size(); ++y) {
                    const Edge e1 = es[x], e2 = es[y];
                    if (e1.u != e2.u && e1.u != e2.v && e1.v != e2.u && e1.v != e2.v)
                        ++direct;
                }
            if (direct != d.a_pairs()) a_ok = false;
        }
    }
    os << "a(d) identity on all enumerated realizations: " << (a_ok ? "ok" : "VIOLATED");

    // (b) the iff over 10^3 random graphical sequences, sparse ones included
    Rng rng(271828);
    long long iff_violations = 0;
    long long forward_violations = 0;  // dbar >= 2 but M2 < M (provable direction)
    std::string example;
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(12));
        // hi >= 2 so odd n always admits an even-sum sequence
        const int hi = 2 + static_cast<int>(rng.below(std::min(n - 2, 5)));
        const auto d = oracles::random_graphical(n, 1, hi, rng);
        const auto r = degree_sequence_checks(d);
        if (r.dbar_ge_2 && !r.m2_ge_m) ++forward_violations;
        if (!r.iff_holds) {
            ++iff_violations;
            if (example.empty()) example = degs_to_string(d.degrees());
        }
    }
    os << "; M2>=M <=> dbar>=2 over 1000 random sequences: " << iff_violations
       << " violations";
    if (iff_violations > 0)
        os << " (e.g. (" << example
           << "): the reverse implication is false for non-path trees; the provable "
              "direction dbar>=2 => M2>=M held "
           << 1000 - forward_violations << "/1000)";

    // (c) M - M2 = 2 for path graphs of length 3..50
    bool paths_ok = true;
    for (int len = 3; len <= 50; ++len) {
        std::vector<int> degs(len, 2);
        degs.front() = degs.back() = 1;
        DegreeSequence d(degs);
        Graph g(len);
        for (int i = 0; i + 1 < len; ++i) g.add_edge(i, i + 1);
        const auto r = degree_sequence_checks(d, g);
        if (r.m_minus_m2 != 2 || !r.all_components_paths) paths_ok = false;
    }
    os << "; M-M2=2 for paths of length 3..50: " << (paths_ok ? "ok" : "VIOLATED");

    c.pass = a_ok && iff_violations == 0 && paths_ok;
    c.detail = os.str();
    report(8, c);
}

void run_criterion_9() {
    Outcome c;
    std::ostringstream os;

    // spectral side: (1 + mu_{N-1})^{-1} <= max_H 1/(2 P(H,H)) <= 3/2
    auto space = enumerate_space(DegreeSequence(std::vector<int>(6, 3)));
    bool spectral_ok = true;
    for (double lambda : {1.0, 2.0, 5.0}) {
        build_matrix(space, ChainKind::TriSwitch, lambda, std::nullopt);
        fold_diag(space);
        const auto rep = spectral_report(space, 0.25);
        if (!(rep.inv_one_plus_mun <= rep.max_inv_two_diag + 1e-9 &&
              rep.max_inv_two_diag <= 1.5 + 1e-12))
            spectral_ok = false;
    }
    os << "(1+mu_{N-1})^{-1} <= max 1/(2P(H,H)) <= 3/2 on n=6 for lambda in {1,2,5}: "
       << (spectral_ok ? "ok" : "VIOLATED");

    // convergence side: exact k-step distributions from 10 random starts,
    // average TV to pi non-increasing in k
    build_matrix(space, ChainKind::TriSwitch, 2.0, space.d.default_nu());
    fold_diag(space);
    const auto pi = stationary_exact(space);
    const int kmax = 200;
    std::vector<double> avg_tv(kmax + 1, 0.0);
    Rng rng(99);
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        std::vector<double> mu(space.size(), 0.0);
        mu[rng.below(space.size())] = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            double tv = 0.0;
            for (int i = 0; i < space.size(); ++i) tv += std::abs(mu[i] - pi[i]);
            avg_tv[k] += tv / 2.0 / seeds;
            std::vector<double> next(space.size(), 0.0);
            for (int i = 0; i < space.size(); ++i)
                for (const auto& [j, p] : space.rows[i]) next[j] += mu[i] * p;
            mu.swap(next);
        }
    }
    bool monotone = true;
    for (int k = 0; k < kmax; ++k)
        if (avg_tv[k + 1] > avg_tv[k] + 1e-12) monotone = false;
    os << "; mean TV to pi over 10 start states non-increasing for 200 steps: "
       << (monotone ? "ok" : "VIOLATED") << " (TV_0 = " << avg_tv[0]
       << ", TV_200 = " << avg_tv[kmax] << ")";
    os << "; the tau(eps) bound itself is asymptotic over unconstructed canonical paths "
          "and is reported, not reproduced";

    c.pass = spectral_ok && monotone;
    c.detail = os.str();
    report(9, c);
}

}  // namespace

int main() {
    std::printf("acceptance suite: triangle-switch chain toolkit\n");
    run_criteria_1_and_3();
    run_criterion_2();
    run_criterion_4();
    run_criterion_6();
    run_criterion_7();
    run_criterion_8();
    run_criterion_9();

    {
        Outcome c;
        c.pass = g_min_diag >= 1.0 / 3.0 - 1e-12;
        std::ostringstream os;
        os << "every diagonal of every transition matrix built in this run >= 1/3 - "
           << "1e-12 (minimum seen: " << g_min_diag << ")";
        c.detail = os.str();
        report(5, c);
    }

    int failed = 0;
    for (int i = 1; i <= 9; ++i)
        if (!results[i].pass) ++failed;
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
