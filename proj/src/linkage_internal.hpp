#pragma once

// Helpers shared by the constructive solvers.

#include <optional>
#include <string>
#include <vector>

#include "cubelink/linkage.hpp"

namespace cubelink::detail {

[[noreturn]] void fail(const Trace& tr, const std::string& msg);
inline void require(bool cond, const Trace& tr, const std::string& msg) {
    if (!cond) fail(tr, msg);
}

// Concatenation that merges a shared endpoint.
Path join(const Path& a, const Path& b);
Path join(std::initializer_list<Path> parts);
Path reversed(Path p);
// Path p oriented so that it starts at s.
Path oriented(Path p, int s);

bool contains(const std::vector<int>& v, int x);
int partner_index(const Pairing& Y, int x);  // index of the pair containing x, or -1

// Appends dummy pairs built from `avoid` and then from `spare` until Y has `target`
// pairs. Returns the padded pairing (real pairs first).
Pairing pad_pairs(const Pairing& Y, const std::vector<int>& avoid, const std::vector<int>& spare, int target);

// ---- cube label space: vertex ids are coordinate bits, K a subcube of Q_d

std::optional<Path> cube_bfs(const CubeFace& K, int s, int t, const std::vector<int>& blocked);
// Y-linkage in K avoiding `avoid`, following the cube case analysis.
PathSystem cube_link(const CubeFace& K, const Pairing& Y, const std::vector<int>& avoid, Trace& tr);
// Exhaustive linkage in a small subcube; fails with CaseNotCovered when none exists.
PathSystem cube_oracle(const CubeFace& K, const Pairing& Y, const std::vector<int>& avoid, Trace& tr);
// Y-linkage in Q_m - {v, v^o}.
PathSystem cube_link_of_vertex(int m, Bits v, const Pairing& Y, Trace& tr);

// ---- polytope faces through their cube charts

std::optional<Path> face_bfs(const Polytope& P, int face, int s, int t, const std::vector<int>& blocked);
PathSystem face_link(const Polytope& P, int face, const Pairing& Y, const std::vector<int>& avoid, Trace& tr);
// Linkage in the link of vertex c inside face `face` (the face minus c and its opposite).
PathSystem face_link_of_vertex(const Polytope& P, int face, int c, const Pairing& Y, Trace& tr);
// Hamming distance of two vertices in the chart of a face.
int face_dist(const Polytope& P, int face, int u, int v);

// Graph on all vertex ids of P whose edges are the edges of the given faces that
// avoid every vertex in `exclude`.
Graph faces_graph(const Polytope& P, const std::vector<int>& faces, const VertexMask& exclude = {});

// Exhaustive linkage on a general graph (small hosts); nullopt when unlinkable.
std::optional<PathSystem> oracle_paths(const Graph& G, const Pairing& Y, const std::vector<int>& avoid);

void check_linkage(const Graph& G, const Pairing& Y, const PathSystem& L, const std::vector<int>& avoid,
                   const Trace& tr);

}  // namespace cubelink::detail
