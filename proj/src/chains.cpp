#include "trichain/chains.hpp"

#include <chrono>
#include <cmath>
#include <thread>

namespace trichain {

void SampleStats::record(long long t) {
    ++histogram[t];
    samples.push_back(t);
    ++n_samples;
}

void SampleStats::finalize_moments() {
    if (n_samples == 0) {
        mean = variance = 0.0;
        return;
    }
    double s = 0.0;
    for (const auto& [t, c] : histogram) s += static_cast<double>(t) * c;
    mean = s / n_samples;
    double sq = 0.0;
    for (const auto& [t, c] : histogram) {
        const double d = static_cast<double>(t) - mean;
        sq += d * d * c;
    }
    variance = sq / n_samples;
}

void SampleStats::merge(const SampleStats& other) {
    for (const auto& [t, c] : other.histogram) histogram[t] += c;
    samples.insert(samples.end(), other.samples.begin(), other.samples.end());
    n_samples += other.n_samples;
    for (std::size_t i = 0; i < counters.size(); ++i) counters[i] += other.counters[i];
    wall_seconds = std::max(wall_seconds, other.wall_seconds);
    finalize_moments();
}

namespace {

struct Proposal {
    bool lazy = false;       // F' == F
    bool multi_edge = false;
    Switch sw{};
};

Proposal draw_proposal(Graph& g, Rng& rng) {
    const auto [e1, e2] = random_nonincident_edge_pair(g, rng);
    const int a1 = e1.u, a2 = e1.v, a3 = e2.u, a4 = e2.v;
    Proposal p;
    const auto k = rng.below(3);
    if (k == 0) {
        p.lazy = true;  // F' = F, the proposal is the current state
        return p;
    }
    p.sw = (k == 1) ? Switch{a1, a2, a3, a4} : Switch{a1, a2, a4, a3};
    p.multi_edge = g.has_edge(p.sw.a1, p.sw.a3) || g.has_edge(p.sw.a2, p.sw.a4);
    return p;
}

long long capped(long long t, const std::optional<long long>& nu) {
    return nu ? std::min(t, *nu) : t;
}

}  // namespace

StepOutcome tri_switch_step(Graph& g, double lambda, std::optional<long long> nu, Rng& rng) {
    const Proposal p = draw_proposal(g, rng);
    if (p.lazy) return {StepKind::LazyIdentity, 0};
    if (p.multi_edge) return {StepKind::RejectedMultiEdge, 0};
    if (!is_tri_switch(g, p.sw)) return {StepKind::RejectedNotTriSwitch, 0};

    const long long t_g = g.triangle_count();
    const long long delta = triangle_delta(g, p.sw);
    const long long dtau = capped(t_g + delta, nu) - capped(t_g, nu);
    const double accept = dtau >= 0 ? 1.0 : std::pow(lambda, static_cast<double>(dtau));
    // one uniform per proposal regardless of the ratio, for reproducibility
    const double coin = rng.real();
    if (coin < accept) {
        apply_switch(g, p.sw);
        return {StepKind::Moved, delta};
    }
    return {StepKind::RejectedMetropolis, 0};
}

StepOutcome switch_step(Graph& g, Rng& rng) {
    const Proposal p = draw_proposal(g, rng);
    if (p.lazy) return {StepKind::LazyIdentity, 0};
    if (p.multi_edge) return {StepKind::RejectedMultiEdge, 0};
    const long long delta = triangle_delta(g, p.sw);
    apply_switch(g, p.sw);
    return {StepKind::Moved, delta};
}

SampleStats run_chain(Graph& g, const ChainConfig& cfg, ChainKind which,
                      std::vector<Graph>* snapshots) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);
    SampleStats stats;

    auto step = [&]() {
        const StepOutcome out = which == ChainKind::TriSwitch
                                    ? tri_switch_step(g, cfg.lambda, cfg.nu_cap, rng)
                                    : switch_step(g, rng);
        ++stats.counters[static_cast<int>(out.kind)];
    };

    for (long long i = 0; i < cfg.burn_in; ++i) step();
    for (long long i = 1; i <= cfg.steps; ++i) {
        step();
        if (i % cfg.thin == 0) {
            stats.record(g.triangle_count());
            if (snapshots) snapshots->push_back(g);
        }
    }
    stats.finalize_moments();
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return stats;
}

SampleStats run_chains_parallel(const Graph& g, const ChainConfig& cfg, ChainKind which,
                                int jobs) {
    cfg.validate();
    if (jobs < 1) throw Error("jobs must be >= 1");
    if (jobs == 1) {
        Graph copy = g;
        return run_chain(copy, cfg, which);
    }
    std::vector<SampleStats> parts(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int i = 0; i < jobs; ++i)
        workers.emplace_back([&, i]() {
            Graph copy = g;
            ChainConfig local = cfg;
            local.seed = cfg.seed ^ static_cast<std::uint64_t>(i);
            parts[i] = run_chain(copy, local, which);
        });
    for (auto& w : workers) w.join();
    SampleStats total = parts.front();
    for (int i = 1; i < jobs; ++i) total.merge(parts[i]);
    total.finalize_moments();
    return total;
}

}  // namespace trichain
