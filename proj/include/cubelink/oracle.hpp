#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubelink/graph.hpp"
#include "cubelink/paths.hpp"

namespace cubelink {

enum class Verdict { Linked, Unlinkable, Timeout };
const char* to_string(Verdict v);

struct OracleBudget {
    long long max_nodes = -1;  // negative: unlimited
    std::chrono::milliseconds timeout{0};  // zero: unlimited
};

// Default per-instance timeout for sampled work: 10 s, or CUBELINK_ORACLE_TIMEOUT_MS.
std::chrono::milliseconds default_oracle_timeout();

struct OracleResult {
    Verdict verdict = Verdict::Unlinkable;
    PathSystem paths;          // in pair order when linked
    long long nodes = 0;       // search nodes expanded
    size_t pairs_routed = 0;   // partial progress when the budget ran out
};

// Exhaustive search for a Y-linkage in G avoiding `avoid`.
OracleResult oracle_linkage(const Graph& G, const Pairing& Y, const std::vector<int>& avoid = {},
                            const OracleBudget& budget = {});

struct CensusHost {
    std::string name;
    Graph graph;
    std::vector<int> vertices;        // vertices taking part (all when empty)
    std::vector<std::string> labels;  // for witness samples
    int cube_dim = 0;                 // > 0 when vertex ids are cube coordinates (enables symmetry reduction)
};

struct CensusOptions {
    int k = 2;
    bool exhaustive = true;
    long long samples = 0;
    std::uint64_t seed = 0;
    bool use_symmetry = true;
    int threads = 0;  // zero: hardware concurrency
    std::chrono::milliseconds timeout{0};
    long long max_instances = 2'000'000;
};

// Returns the obstruction kind detected for a pairing, if any.
using WitnessDetector = std::function<std::optional<std::string>(const Pairing&)>;

// Classifies every (or a sample of) pairing of 2k vertices with the oracle and
// cross-tabulates against the detector. Key order of the report is fixed.
nlohmann::ordered_json census(const CensusHost& host, const CensusOptions& options,
                              const WitnessDetector& detector = {});

// Enumerates the perfect matchings of a sorted terminal list in canonical order.
std::vector<Pairing> perfect_matchings(const std::vector<int>& X);

struct SeparatorCensus {
    int d = 0;
    long long subsets = 0;
    long long separators = 0;
    bool all_neighbourhoods = true;
    bool all_independent = true;
    bool all_two_components = true;
    nlohmann::ordered_json to_json() const;
};

// Examines every d-subset of Q_d (d ≤ 4) that disconnects the cube.
SeparatorCensus separator_census(int d);

// True iff no two vertices share three or more neighbours.
bool common_neighbor_check(const Graph& G);

// Canonical form of a pairing in Q_d under coordinate permutations and flips.
std::vector<std::pair<int, int>> canonical_cube_pairing(const Pairing& Y, int d, int avoid_vertex = -1);

}  // namespace cubelink
