#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trichain/chains.hpp"
#include "trichain/degree_sequence.hpp"
#include "trichain/graph.hpp"

namespace trichain {

// Canonical encoding of a labeled graph on n <= 16 vertices: one bit per
// unordered pair in triangular order.
struct StateKey {
    std::uint64_t lo = 0, hi = 0;

    friend bool operator==(const StateKey& a, const StateKey& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator<(const StateKey& a, const StateKey& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    }
    void set(int bit) {
        if (bit < 64)
            lo |= (std::uint64_t{1} << bit);
        else
            hi |= (std::uint64_t{1} << (bit - 64));
    }
    void flip(int bit) {
        if (bit < 64)
            lo ^= (std::uint64_t{1} << bit);
        else
            hi ^= (std::uint64_t{1} << (bit - 64));
    }
    bool test(int bit) const {
        return bit < 64 ? (lo >> bit) & 1 : (hi >> (bit - 64)) & 1;
    }
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::uint64_t x = k.lo * 0x9e3779b97f4a7c15ull ^ (k.hi + 0x517cc1b727220a95ull);
        x ^= x >> 32;
        return static_cast<std::size_t>(x * 0xff51afd7ed558ccdull);
    }
};

int pair_bit(int u, int v);  // triangular index of the unordered pair

// Exhaustive enumeration of all labeled graphs with degree sequence d,
// triangle census, and optionally an exact transition matrix.
struct StateSpace {
    explicit StateSpace(DegreeSequence dd) : d(std::move(dd)) {}

    DegreeSequence d;
    std::vector<StateKey> states;  // sorted
    std::vector<long long> tri;    // t per state
    std::vector<long long> census; // N_t for t = 0..M2/6
    std::unordered_map<StateKey, int, StateKeyHash> index;

    bool matrix_built = false;
    ChainKind chain = ChainKind::TriSwitch;
    double lambda = 1.0;
    std::optional<long long> nu;
    std::vector<std::vector<std::pair<int, double>>> rows;  // column-sorted, incl. diagonal

    int n() const { return d.n(); }
    int size() const { return static_cast<int>(states.size()); }
    long long max_triangles() const { return d.m2() / 6; }
    Graph decode(int idx) const;
    StateKey encode(const Graph& g) const;
};

inline constexpr long long kDefaultEnumerationLimit = 2'000'000;

// Backtracking over per-vertex adjacency choices in label order with
// Erdos-Gallai feasibility pruning on the residual sequence.
StateSpace enumerate_space(const DegreeSequence& d,
                           long long limit = kDefaultEnumerationLimit);

// Triangle census N_t without storing states; same traversal, O(1) memory.
// Usable beyond the state-storage limit (e.g. cubic n=10).
std::vector<long long> enumerate_census_only(const DegreeSequence& d);

// Exact transition matrix for the chosen chain: every proposal carries mass
// 1/(3 a(d)), accepted moves keep min{1, lambda^dtau} of it, the rest stays
// on the diagonal.
void build_matrix(StateSpace& space, ChainKind which, double lambda,
                  std::optional<long long> nu = std::nullopt);

// Connectivity of the off-diagonal support graph of the built matrix.
bool check_irreducible(const StateSpace& space);

// Solves pi P = pi by dense LU; checked against a 1e-13 residual.
std::vector<double> stationary_exact(const StateSpace& space);

// Closed form lambda^min(t,nu) / Z-hat from the census, in state order.
std::vector<double> stationary_closed_form(const StateSpace& space);

struct SpectralReport {
    bool trivial = false;  // one-state space
    double mu1 = 0.0;      // second-largest eigenvalue
    double mu_n = 0.0;     // smallest eigenvalue
    double mu_star = 0.0;
    double tau_bound = 0.0;
    double epsilon = 0.0;
    // the smallest-eigenvalue inequality chain
    double inv_one_plus_mun = 0.0;  // (1 + mu_{N-1})^{-1}
    double max_inv_two_diag = 0.0;  // max_H 1/(2 P(H,H))
    long long iterations = 0;
};

// Second-largest and smallest eigenvalues by power iteration with deflation
// on the reversibilized matrix, plus the tau(epsilon) bound at epsilon.
SpectralReport spectral_report(const StateSpace& space, double epsilon = 0.25);

struct PathEnsembleStats {
    long long ell = 0;      // max simulation path length
    long long b_sigma = 0;  // max paths through one triangle-switch transition
    double d_gap = 1.0;     // simulation gap D
    double r_ratio = 1.0;   // stationary ratio R
    long long b_bound = 0;  // 20 d1^2 (2M + d1^2)
    long long num_switch_transitions = 0;
    long long num_tri_transitions = 0;
};

// Builds the canonical simulation path for every unordered switch transition
// of the enumerated space and tallies them per triangle-switch transition.
// Requires the matrix (for lambda and nu) and minimum degree >= 3.
PathEnsembleStats path_ensemble_stats(const StateSpace& space);

struct CensusRow {
    long long t = 0;
    long long n_t = 0;
    double ratio = 0.0;        // N_{t+1} / N_t
    double mu_over_t1 = 0.0;   // mu / (t+1)
};

struct CensusReport {
    double mu = 0.0;
    std::vector<CensusRow> rows;
    long long t0 = 0;
    double tail_mass = 0.0;  // Pr(t >= t0) under the uniform census
};

// N_{t+1}/N_t against mu/(t+1); informational, no pass/fail.
CensusReport census_ratio_check(const StateSpace& space,
                                std::optional<long long> t0 = std::nullopt);

// Versioned binary cache of states and census.
void save_space(const StateSpace& space, std::ostream& os);
StateSpace load_space(std::istream& is);

}  // namespace trichain
