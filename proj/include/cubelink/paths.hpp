#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubelink/graph.hpp"
#include "cubelink/hypercube.hpp"

namespace cubelink {

using Path = std::vector<int>;
using PathSystem = std::vector<Path>;
using Pairing = std::vector<std::pair<int, int>>;

std::vector<int> terminals_of(const Pairing& Y);

struct MengerResult {
    bool ok = false;
    PathSystem paths;      // k disjoint A-B paths when ok
    std::vector<int> cut;  // separator of size < k otherwise
};

// k vertex-disjoint A-B paths avoiding `forbidden`, each meeting A only at its
// first vertex and B only at its last; a vertex in A ∩ B is a one-vertex path.
// When A (or B) is a single vertex the paths form a fan and all share it. The cut
// lists the separating vertices; it can be short of the flow value only when the
// two fan centres are adjacent (their edge carries one path and has no vertex to cut).
MengerResult disjoint_paths(const Graph& G, const std::vector<int>& A, const std::vector<int>& B, int k,
                            const std::vector<int>& forbidden = {});

// Shortest s-t path in G whose inner vertices avoid `blocked` (endpoints are allowed).
std::optional<Path> bfs_path(const Graph& G, int s, int t, const std::vector<char>& blocked);

// Shortest s-t path in G − (X ∖ {s, t}).
std::optional<Path> x_valid_path(const Graph& G, int s, int t, const std::vector<int>& X);

struct AffineFunction {
    std::vector<double> coeffs;
    double constant = 0.0;
    double operator()(Bits x) const;
};

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// u-v path in Q_d whose inner vertices all have f > 0.
Path linear_function_path(int d, const AffineFunction& f, Bits u, Bits v);

struct ValidationReport {
    bool ok = true;
    std::string message;
};

ValidationReport validate_linkage(const Graph& G, const Pairing& Y, const PathSystem& L,
                                  const std::vector<int>& avoid = {});

}  // namespace cubelink
