#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trichain/graph.hpp"

namespace trichain {

// Construction cases, tried in order; the emitted tag is the first that
// applies. I-VI assume a diagonal, a common external neighbor or an external
// triangle on some a_j; VII-IXc handle the remaining switches, planting a
// temporary triangle except in IXa.
enum class CaseLabel { I, II, III, IV, V, VI, VII, VIIIa, VIIIb, IXa, IXb, IXc };

const char* case_label_name(CaseLabel c);

// Maximum steps a simulation path can take.
inline constexpr int kMaxSimulationPathLength = 5;

struct SimulationPath {
    CaseLabel label = CaseLabel::I;
    std::array<int, 4> relabeling{};  // canonical (a1,a2,a3,a4) after relabeling
    std::vector<TriSwitch> steps;     // length 1..5
    std::vector<std::pair<std::string, int>> auxiliaries;

    int length() const { return static_cast<int>(steps.size()); }
};

// First applicable case for the switch s on g, after canonical relabeling.
// Requires minimum degree >= 3.
CaseLabel classify_case(const Graph& g, const Switch& s);

// The canonical triangle-switch path realizing s on g: every step is a valid
// triangle switch on its intermediate graph and the composition lands exactly
// on the switched graph. Pure function of (g, s); re-running yields the
// identical path.
SimulationPath simulate_switch(const Graph& g, const Switch& s);

// Triangle planting: v has three neighbors r (each of degree >= 2) and no
// triangle contains v together with a member of r. Returns the unique
// triangle-creating switch determined by the shortest cycle through a path
// r_i v r_j (length 4, 5, or >= 6). With forced_first set, the search is
// restricted to cycles through forced_first and the result triangle contains
// it; throws PlantImpossible in the 5-cycle exception.
TriSwitch plant_triangle(const Graph& g, int v, std::array<int, 3> r,
                         std::optional<int> forced_first = std::nullopt);

// Replays p from g checking each step and the final edge set; never throws.
// On failure *why (if given) receives a first-failure description.
bool verify_path(const Graph& g, const Switch& s, const SimulationPath& p,
                 std::string* why = nullptr);

}  // namespace trichain
