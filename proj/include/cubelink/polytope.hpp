#pragma once

#include <bitset>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubelink/graph.hpp"
#include "cubelink/hypercube.hpp"

namespace cubelink {

inline constexpr int kMaxPolytopeVertices = 512;
using VertexMask = std::bitset<kMaxPolytopeVertices>;

VertexMask mask_of(const std::vector<int>& vs);
std::vector<int> members(const VertexMask& m);

// Identification of a cubical face with a standard cube: labels in {0,1}^dim.
class CubeChart {
public:
    CubeChart() = default;
    CubeChart(int dim, std::vector<int> vertex_of_label);

    int dim() const { return dim_; }
    int vertex(Bits label) const { return vertex_[label]; }
    Bits label(int v) const;
    std::optional<Bits> find_label(int v) const;
    bool contains(int v) const { return find_label(v).has_value(); }
    const std::vector<int>& vertices_by_label() const { return vertex_; }

private:
    int dim_ = 0;
    std::vector<int> vertex_;
    std::vector<std::pair<int, Bits>> sorted_;  // (vertex, label) sorted by vertex
};

struct Face {
    std::vector<int> vertices;  // sorted
    VertexMask mask;
    int dim = 0;
    CubeChart chart;
};

class NotCubical : public std::runtime_error {
public:
    NotCubical(const std::string& msg, std::vector<int> face) : std::runtime_error(msg), face(std::move(face)) {}
    std::vector<int> face;
};

class InconsistentIncidence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A cubical polytope given combinatorially by its vertex-facet incidences.
// Faces are the nonempty intersections of facets plus the polytope itself,
// sorted by (dimension, vertex list); ids index into faces().
class Polytope {
public:
    int dim() const { return dim_; }
    int vertex_count() const { return n_; }
    bool cubical() const { return cubical_; }
    const Graph& graph() const { return graph_; }

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int id) const { return faces_[static_cast<size_t>(id)]; }
    int face_count() const { return static_cast<int>(faces_.size()); }  // nonempty faces, P included
    int face_count_with_empty() const { return face_count() + 1; }
    int top_face() const { return face_count() - 1; }
    std::optional<int> find_face(const VertexMask& m) const;
    std::optional<int> find_face(const std::vector<int>& vertices) const;

    const std::vector<int>& faces_of_dim(int j) const { return by_dim_[static_cast<size_t>(j)]; }
    const std::vector<int>& facets() const { return faces_of_dim(dim_ - 1); }
    const std::vector<int>& ridges() const { return faces_of_dim(dim_ - 2); }
    const std::vector<int>& facets_of_vertex(int v) const { return facets_of_vertex_[static_cast<size_t>(v)]; }
    // The two facets sharing a ridge.
    std::pair<int, int> facets_of_ridge(int ridge) const;
    int other_facet(int ridge, int facet) const;

    bool face_contains(int face_id, int v) const { return face(face_id).mask.test(static_cast<size_t>(v)); }
    bool face_contains_face(int outer, int inner) const;

    // Chart-based helpers: `local` is a subcube in the chart coordinates of `face_id`.
    int subface(int face_id, const CubeFace& local) const;
    CubeFace local_face(int face_id, int sub_id) const;
    int opposite_in(int face_id, int v) const;
    std::vector<int> neighbors_in(int face_id, int v) const;
    // Codimension-one subfaces of a face.
    std::vector<int> subfacets(int face_id) const;
    // The codimension-one subface of J opposite to its subface R.
    int opposite_subface(int J, int R) const;
    // Projection inside J onto its codimension-one subface `target`.
    int project_within(int J, int target, int v) const;

    const std::string& label(int v) const { return labels_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> vertex_by_label(const std::string& s) const;
    const std::vector<int>& parent_ids() const { return parent_; }

    friend Polytope build_from_incidence(int, int, const std::vector<std::vector<int>>&,
                                         const std::vector<std::string>&);

private:
    int dim_ = 0;
    int n_ = 0;
    bool cubical_ = false;
    Graph graph_;
    std::vector<Face> faces_;
    std::unordered_map<VertexMask, int> index_;
    std::vector<std::vector<int>> by_dim_;
    std::vector<std::vector<int>> facets_of_vertex_;
    std::vector<std::pair<int, int>> ridge_facets_;  // indexed by position in ridges()
    std::vector<int> ridge_slot_;                    // face id -> position in ridges(), or -1
    std::vector<std::string> labels_;
    std::vector<int> parent_;

    friend Polytope link_polytope(const Polytope&, int);
};

Polytope build_from_incidence(int dim, int vertex_count, const std::vector<std::vector<int>>& facets,
                              const std::vector<std::string>& labels = {});
// Q_d with vertex id = coordinate bits and labels = bit strings.
Polytope build_cube_polytope(int d);
// Cubical polytope whose boundary complex is the link of v in the boundary of P.
// Vertex labels are inherited; parent_ids() maps back to P.
Polytope link_polytope(const Polytope& P, int v);
Polytope link_polytope_of_cube(int cube_dim, Bits v);

// A set of faces of a polytope closed under taking nonempty faces.
class Complex {
public:
    Complex(const Polytope& host, const std::vector<int>& generators);
    static Complex boundary(const Polytope& P);

    const Polytope& host() const { return *host_; }
    const std::vector<int>& faces() const { return faces_; }
    bool contains_face(int id) const { return member_[static_cast<size_t>(id)] != 0; }
    bool empty() const { return faces_.empty(); }
    int dim() const { return dim_; }
    bool pure() const;
    std::vector<int> facets() const;  // inclusion-maximal faces
    std::vector<int> vertices() const;
    VertexMask vertex_mask() const;
    Graph graph() const;

private:
    const Polytope* host_;
    std::vector<int> faces_;
    std::vector<char> member_;
    int dim_ = -1;
};

Complex star(const Complex& C, int v);
Complex antistar(const Complex& C, const std::vector<int>& X);
Complex link(const Complex& C, int v);
// Faces of C whose vertices all lie in `keep`.
Complex induced(const Complex& C, const VertexMask& keep);
Complex complex_union(const Complex& A, const Complex& B);

bool is_strongly_connected(const Complex& C, std::string* diagnostic = nullptr);
// Shortest facet-ridge path between two facets of C avoiding `forbidden` facets.
std::optional<std::vector<int>> facet_ridge_path(const Complex& C, int start, int end,
                                                 const std::vector<int>& forbidden = {});

struct TechnicalDecomposition {
    Complex S12, A1, A12, C;
    bool single_facet = false;       // S12 is just F12: the spanning-complex claim does not apply
    bool star_pair_connected = false;   // S12 strongly connected of dimension d-1
    bool avoids_F12 = false;            // facet-ridge paths avoiding F12 between other facets
    bool spanning_connected = false;    // C spans A12, pure of dimension d-3, strongly connected
    std::string diagnostic;
};

TechnicalDecomposition technical_decomposition(const Polytope& P, int s1, int s2, int F1, int F12);

// Exact vertex connectivity of G restricted to `present` vertices (all when empty).
int vertex_connectivity(const Graph& G, const std::vector<char>& present = {});

}  // namespace cubelink
