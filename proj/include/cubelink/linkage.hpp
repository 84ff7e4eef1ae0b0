#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubelink/graph.hpp"
#include "cubelink/hypercube.hpp"
#include "cubelink/paths.hpp"
#include "cubelink/polytope.hpp"

namespace cubelink {

// Ordered list of proof-case identifiers visited while solving.
using Trace = std::vector<std::string>;

// Raised when the case analysis falls through: a gap in the construction, never an answer.
class CaseNotCovered : public std::runtime_error {
public:
    CaseNotCovered(const std::string& msg, Trace trace) : std::runtime_error(msg), trace(std::move(trace)) {}
    Trace trace;
};

// A terminal s1 whose partner t1 sits at distance d-1 from it in a facet that holds
// at least d+1 terminals, with every neighbour of t1 in that facet a terminal.
struct ObstructionWitness {
    std::string kind;             // "config-3F" or "config-dF"
    std::vector<int> facet;       // vertex list of the facet (sorted)
    std::pair<int, int> pair;     // (s1, t1)
    std::vector<int> blocking;    // neighbours of t1 in the facet (sorted)
};

struct LinkageCertificate {
    bool linked = false;
    PathSystem paths;                         // one path per pair, oriented s -> t, when linked
    std::optional<ObstructionWitness> obstruction;
    Trace trace;
};

// ---------------------------------------------------------------- obstructions

// First terminal (in increasing vertex order) in Configuration 3F on a 3-polytope.
std::optional<ObstructionWitness> detect_config_3F(const Polytope& P3, const Pairing& Y);
// Configuration dF for the given terminal s1 of Y.
std::optional<ObstructionWitness> detect_config_dF(const Polytope& P, int s1, const Pairing& Y);
// Replays the configuration conditions against P; on failure `why` names the first broken one.
bool check_witness(const Polytope& P, const Pairing& Y, const ObstructionWitness& w, std::string* why = nullptr);

// Two pairs on a 3-polytope: obstruction witness or a linkage.
LinkageCertificate solve_3polytope(const Polytope& P3, const Pairing& Y);

// ---------------------------------------------------------------- cubes

// For a facet F of Q_d holding the terminals, an X-valid path in F for each pair that has one.
std::vector<std::optional<Path>> short_distance_paths(int d, const CubeFace& F, const Pairing& Y);

// Classification of the terminals of a facet F for a pair Y[0] inside F, and the
// short paths M_x carrying terminals from F to the opposite facet.
struct MxPaths {
    std::vector<int> X0, X1, X2, X3, X4;
    std::map<int, Path> M;  // x -> path from x into the opposite facet
};
MxPaths build_Mx_paths(int d, const CubeFace& F, const Pairing& Y);

// Y-linkage in Q_d avoiding `avoid` (vertex ids are coordinate bits).
LinkageCertificate solve_cube(int d, const Pairing& Y, const std::vector<int>& avoid = {});
// Y-linkage in Q_d that avoids the unpaired terminal x.
LinkageCertificate solve_cube_strong(int d, const Pairing& Y, int x);

// Y-linkage in Q_{cube_dim} - {v, v^o}, the link of v. Paths use cube vertex ids.
LinkageCertificate solve_link(int cube_dim, Bits v, const Pairing& Y);

// ---------------------------------------------------------------- cubical polytopes

using SubSolver = std::function<PathSystem(const Pairing&)>;

// Routes the terminals into `sub` by disjoint paths, links the entry points with
// `sub_solver` and concatenates.
PathSystem link_via_subgraph(const Graph& G, const Pairing& Y, const std::vector<int>& sub, const SubSolver& sub_solver,
                             Trace* trace = nullptr);

// Injective map from V(F) minus the vertex opposite to s into neighbours outside F in the
// star of s. Entries are -1 outside the domain.
std::vector<int> projections_star_injection(const Polytope& P, int s, int F);

// Linkage inside the star of Y[0].first (odd d >= 5, exactly (d+1)/2 pairs).
LinkageCertificate solve_star(const Polytope& P, const Pairing& Y);

LinkageCertificate solve_cubical(const Polytope& P, const Pairing& Y, const std::vector<int>& avoid = {});
LinkageCertificate solve_cubical_strong(const Polytope& P, const Pairing& Y, int x);

}  // namespace cubelink
