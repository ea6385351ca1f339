#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "trichain/graph.hpp"
#include "trichain/rng.hpp"

namespace trichain {

enum class ChainKind { Switch, TriSwitch };

enum class StepKind {
    Moved = 0,
    RejectedMetropolis = 1,
    RejectedNotTriSwitch = 2,
    RejectedMultiEdge = 3,
    LazyIdentity = 4,
};

inline const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Moved: return "moved";
        case StepKind::RejectedMetropolis: return "rejected_metropolis";
        case StepKind::RejectedNotTriSwitch: return "rejected_not_tri_switch";
        case StepKind::RejectedMultiEdge: return "rejected_multi_edge";
        case StepKind::LazyIdentity: return "lazy_identity";
    }
    return "?";
}

struct StepOutcome {
    StepKind kind;
    long long delta_t = 0;  // 0 unless Moved
};

struct ChainConfig {
    double lambda = 1.0;
    std::optional<long long> nu_cap;  // modified-chain cap; default_nu() when engaged via CLI
    std::uint64_t seed = 0;
    long long steps = 0;
    long long burn_in = 0;
    long long thin = 1;

    void validate() const {
        if (lambda < 1.0) throw Error("lambda must be >= 1");
        if (steps < 0 || burn_in < 0) throw Error("steps and burn_in must be >= 0");
        if (thin < 1) throw Error("thin must be >= 1");
        if (nu_cap && *nu_cap < 1) throw Error("nu cap must be >= 1");
    }
};

struct SampleStats {
    std::map<long long, long long> histogram;  // t value -> count
    std::vector<long long> samples;            // recorded t values in order
    long long n_samples = 0;
    double mean = 0.0;
    double variance = 0.0;
    std::array<long long, 5> counters{};  // indexed by StepKind
    double wall_seconds = 0.0;

    void record(long long t);
    void finalize_moments();
    // Pure merge for independent chains; sample vectors concatenate in call order.
    void merge(const SampleStats& other);
};

// One transition of the triangle-switch chain: draw a non-incident pair F
// uniformly, draw one of the 3 perfect matchings F' of its vertices, accept
// H = G - F + F' with probability min{1, lambda^(t(H)-t(G))} if F' creates no
// multi-edge and the switch changes the triangle set. When nu is set, both
// triangle counts are capped at nu in the exponent.
StepOutcome tri_switch_step(Graph& g, double lambda, std::optional<long long> nu, Rng& rng);

// Same proposal mechanism without the triangle condition or the Metropolis
// weighting; every simple-graph-preserving proposal is accepted.
StepOutcome switch_step(Graph& g, Rng& rng);

// burn_in steps, then `steps` more recording t every `thin` steps. When
// snapshots is given it receives a copy of the graph at every record point.
SampleStats run_chain(Graph& g, const ChainConfig& cfg, ChainKind which,
                      std::vector<Graph>* snapshots = nullptr);

// Independent chains on copies of g, chain i seeded with cfg.seed ^ i,
// results merged in chain order.
SampleStats run_chains_parallel(const Graph& g, const ChainConfig& cfg, ChainKind which,
                                int jobs);

}  // namespace trichain
