#include "trichain/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace trichain {

ScalarReport scalar_report(const DegreeSequence& d, double lambda) {
    ScalarReport r;
    r.m = d.m();
    r.m2 = d.m2();
    r.dbar = d.dbar();
    r.mu = d.mu();
    r.a_d = d.a_pairs();
    r.nu = d.default_nu();
    r.lambda_mu = lambda * d.mu();
    return r;
}

double mu_of(const DegreeSequence& d) { return d.mu(); }

double tv_distance(const std::map<long long, double>& p,
                   const std::map<long long, double>& q) {
    double sum = 0.0;
    auto ip = p.begin();
    auto iq = q.begin();
    while (ip != p.end() || iq != q.end()) {
        if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
            sum += std::abs(ip->second);
            ++ip;
        } else if (ip == p.end() || iq->first < ip->first) {
            sum += std::abs(iq->second);
            ++iq;
        } else {
            sum += std::abs(ip->second - iq->second);
            ++ip;
            ++iq;
        }
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

double poisson_pmf(double mu, long long k) {
    if (mu < 0.0 || k < 0) throw Error("poisson_pmf needs mu >= 0 and k >= 0");
    if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
    const double logp =
        -mu + static_cast<double>(k) * std::log(mu) - std::lgamma(static_cast<double>(k) + 1.0);
    return std::exp(logp);
}

PoissonComparison compare_to_poisson(const SampleStats& stats, double mu) {
    if (stats.n_samples <= 0) throw Error("no samples to compare");
    PoissonComparison cmp;
    cmp.mean_ref = mu;
    cmp.var_ref = mu;

    long long kmax = stats.histogram.empty() ? 0 : stats.histogram.rbegin()->first;
    // run the reference out to negligible tail mass
    while (poisson_pmf(mu, kmax) > 1e-15 || kmax < 2 * static_cast<long long>(mu) + 8) ++kmax;

    std::map<long long, double> emp, ref;
    for (const auto& [t, c] : stats.histogram)
        emp[t] = static_cast<double>(c) / static_cast<double>(stats.n_samples);
    for (long long k = 0; k <= kmax; ++k) ref[k] = poisson_pmf(mu, k);

    cmp.tv = tv_distance(emp, ref);
    for (long long k = 0; k <= kmax; ++k) {
        cmp.support.push_back(k);
        cmp.empirical_pmf.push_back(emp.count(k) ? emp[k] : 0.0);
        cmp.poisson_pmf.push_back(ref[k]);
    }

    double s = 0.0, sq = 0.0;
    for (const auto& [t, c] : stats.histogram) {
        s += static_cast<double>(t) * c;
        sq += static_cast<double>(t) * t * c;
    }
    cmp.mean_emp = s / stats.n_samples;
    cmp.var_emp = sq / stats.n_samples - cmp.mean_emp * cmp.mean_emp;

    // batch means over the recorded sample order, robust to autocorrelation
    const long long nb = std::min<long long>(100, std::max<long long>(1, stats.n_samples / 10));
    if (nb >= 2 && !stats.samples.empty()) {
        const long long bs = static_cast<long long>(stats.samples.size()) / nb;
        std::vector<double> means;
        for (long long b = 0; b < nb; ++b) {
            double acc = 0.0;
            for (long long i = b * bs; i < (b + 1) * bs; ++i)
                acc += static_cast<double>(stats.samples[i]);
            means.push_back(acc / bs);
        }
        double bm = 0.0;
        for (double x : means) bm += x;
        bm /= means.size();
        double bv = 0.0;
        for (double x : means) bv += (x - bm) * (x - bm);
        bv /= (means.size() - 1);
        cmp.se_mean = std::sqrt(bv / means.size());
    } else {
        cmp.se_mean = std::sqrt(cmp.var_emp / stats.n_samples);
    }
    return cmp;
}

DegreeChecksReport degree_sequence_checks(const DegreeSequence& d) {
    DegreeChecksReport r;
    r.m = d.m();
    r.m2 = d.m2();
    r.dbar = d.dbar();
    r.m2_ge_m = d.m2() >= d.m();
    r.dbar_ge_2 = d.dbar() >= 2.0;
    r.iff_holds = r.m2_ge_m == r.dbar_ge_2;
    r.m_minus_m2 = d.m() - d.m2();
    return r;
}

namespace {

bool components_are_paths(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack = {s};
        comp[s] = nc;
        std::vector<int> members;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int y : g.neighbors(x))
                if (comp[y] == -1) {
                    comp[y] = nc;
                    stack.push_back(y);
                }
        }
        // a path: acyclic (edges = vertices - 1) and max degree <= 2
        long long edges = 0;
        for (int x : members) {
            edges += g.degree(x);
            if (g.degree(x) > 2) return false;
        }
        edges /= 2;
        if (edges != static_cast<long long>(members.size()) - 1) return false;
        ++nc;
    }
    return true;
}

}  // namespace

DegreeChecksReport degree_sequence_checks(const DegreeSequence& d, const Graph& g) {
    DegreeChecksReport r = degree_sequence_checks(d);
    r.has_graph = true;
    r.all_components_paths = components_are_paths(g);
    return r;
}

}  // namespace trichain
