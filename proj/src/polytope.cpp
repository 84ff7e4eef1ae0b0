#include "cubelink/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "cubelink/paths.hpp"

namespace cubelink {

VertexMask mask_of(const std::vector<int>& vs) {
    VertexMask m;
    for (int v : vs) m.set(static_cast<size_t>(v));
    return m;
}

std::vector<int> members(const VertexMask& m) {
    std::vector<int> out;
    for (size_t i = m._Find_first(); i < m.size(); i = m._Find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

CubeChart::CubeChart(int dim, std::vector<int> vertex_of_label) : dim_(dim), vertex_(std::move(vertex_of_label)) {
    sorted_.reserve(vertex_.size());
    for (size_t l = 0; l < vertex_.size(); ++l) sorted_.emplace_back(vertex_[l], static_cast<Bits>(l));
    std::sort(sorted_.begin(), sorted_.end());
}

std::optional<Bits> CubeChart::find_label(int v) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(v, Bits{0}));
    if (it == sorted_.end() || it->first != v) return std::nullopt;
    return it->second;
}

Bits CubeChart::label(int v) const {
    auto l = find_label(v);
    if (!l) throw std::invalid_argument("CubeChart: vertex " + std::to_string(v) + " not in face");
    return *l;
}

namespace {

bool is_power_of_two(size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_exact(size_t x) { return __builtin_ctzll(static_cast<unsigned long long>(x)); }

// Recognise the graph of a face as a cube and return the labelling.
CubeChart chart_for(const Graph& G, const Face& f) {
    const int j = f.dim;
    const auto& S = f.vertices;
    if (j == 0) return CubeChart(0, {S.front()});
    auto inside = [&](int v) { return f.mask.test(static_cast<size_t>(v)); };
    auto fail = [&](const std::string& why) {
        return NotCubical("face of dimension " + std::to_string(j) + " is not a cube: " + why, S);
    };
    std::unordered_map<int, Bits> label;
    std::unordered_map<int, int> depth;
    const int v0 = S.front();
    label[v0] = 0;
    depth[v0] = 0;
    int axis = 0;
    for (int w : G.neighbors(v0)) {
        if (!inside(w)) continue;
        if (axis >= j) throw fail("vertex degree exceeds dimension");
        label[w] = Bits{1} << axis++;
        depth[w] = 1;
    }
    if (axis != j) throw fail("vertex degree below dimension");
    std::deque<int> queue;
    for (auto& [w, dw] : depth)
        if (dw == 1) queue.push_back(w);
    std::sort(queue.begin(), queue.end());
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : G.neighbors(u)) {
            if (!inside(w) || depth.count(w)) continue;
            depth[w] = depth[u] + 1;
            queue.push_back(w);
            Bits l = 0;
            for (int x : G.neighbors(w))
                if (inside(x) && depth.count(x) && depth[x] == depth[u]) l |= label[x];
            label[w] = l;
        }
    }
    if (label.size() != S.size()) throw fail("face graph is disconnected");
    std::vector<int> by_label(S.size(), -1);
    for (auto& [v, l] : label) {
        if (popcount(l) != depth[v] || l >= S.size()) throw fail("inconsistent coordinates");
        if (by_label[l] != -1) throw fail("repeated coordinates");
        by_label[l] = v;
    }
    for (int v : S) {
        int deg = 0;
        for (int w : G.neighbors(v)) {
            if (!inside(w)) continue;
            ++deg;
            if (popcount(label[v] ^ label[w]) != 1) throw fail("edge between non-adjacent coordinates");
        }
        if (deg != j) throw fail("irregular face graph");
    }
    return CubeChart(j, std::move(by_label));
}

}  // namespace

Polytope build_from_incidence(int dim, int vertex_count, const std::vector<std::vector<int>>& facets,
                              const std::vector<std::string>& labels) {
    if (dim < 1) throw InconsistentIncidence("polytope dimension must be positive");
    if (vertex_count < 1 || vertex_count > kMaxPolytopeVertices)
        throw InconsistentIncidence("vertex count out of range");
    if (facets.empty()) throw InconsistentIncidence("no facets");
    if (!labels.empty() && static_cast<int>(labels.size()) != vertex_count)
        throw InconsistentIncidence("label count does not match vertex count");

    Polytope P;
    P.dim_ = dim;
    P.n_ = vertex_count;

    std::vector<VertexMask> masks;
    std::unordered_map<VertexMask, int> seen;
    VertexMask covered;
    std::vector<VertexMask> facet_masks;
    for (const auto& f : facets) {
        if (f.empty()) throw InconsistentIncidence("empty facet");
        for (int v : f)
            if (v < 0 || v >= vertex_count) throw InconsistentIncidence("facet vertex id out of range");
        VertexMask m = mask_of(f);
        if (m.count() != f.size()) throw InconsistentIncidence("facet lists a vertex twice");
        if (seen.count(m)) throw InconsistentIncidence("duplicate facet");
        seen[m] = static_cast<int>(masks.size());
        masks.push_back(m);
        facet_masks.push_back(m);
        covered |= m;
    }
    if (static_cast<int>(covered.count()) != vertex_count) throw InconsistentIncidence("facets do not cover all vertices");
    for (size_t a = 0; a < facet_masks.size(); ++a)
        for (size_t b = 0; b < facet_masks.size(); ++b)
            if (a != b && (facet_masks[a] & ~facet_masks[b]).none())
                throw InconsistentIncidence("a facet is contained in another facet");

    for (size_t i = 0; i < masks.size(); ++i)
        for (const auto& fm : facet_masks) {
            VertexMask m = masks[i] & fm;
            if (m.none() || seen.count(m)) continue;
            seen[m] = static_cast<int>(masks.size());
            masks.push_back(m);
        }

    std::vector<Face> faces;
    for (const auto& m : masks) {
        Face f;
        f.mask = m;
        f.vertices = members(m);
        if (!is_power_of_two(f.vertices.size()))
            throw NotCubical("face with " + std::to_string(f.vertices.size()) + " vertices is not a cube", f.vertices);
        f.dim = log2_exact(f.vertices.size());
        if (f.dim >= dim) throw NotCubical("face as large as the polytope", f.vertices);
        faces.push_back(std::move(f));
    }
    for (const auto& fm : facet_masks)
        if (static_cast<int>(fm.count()) != (1 << (dim - 1)))
            throw NotCubical("facet is not a (d-1)-cube", members(fm));
    for (const auto& f : faces)
        if (f.dim == dim - 1 && !std::count(facet_masks.begin(), facet_masks.end(), f.mask))
            throw InconsistentIncidence("proper intersection of facets has facet dimension");
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    Face top;
    top.mask = covered;
    top.vertices = members(covered);
    top.dim = dim;
    faces.push_back(std::move(top));

    P.by_dim_.assign(static_cast<size_t>(dim + 1), {});
    for (size_t id = 0; id < faces.size(); ++id) {
        P.index_[faces[id].mask] = static_cast<int>(id);
        P.by_dim_[static_cast<size_t>(faces[id].dim)].push_back(static_cast<int>(id));
    }
    if (static_cast<int>(P.by_dim_[0].size()) != vertex_count)
        throw InconsistentIncidence("some vertex is not an intersection of facets");

    P.graph_ = Graph(vertex_count);
    if (dim >= 2)
        for (int e : P.by_dim_[1]) P.graph_.add_edge(faces[static_cast<size_t>(e)].vertices[0], faces[static_cast<size_t>(e)].vertices[1]);
    else if (vertex_count == 2)
        P.graph_.add_edge(0, 1);
    P.graph_.finalize();

    for (size_t id = 0; id + 1 < faces.size(); ++id) faces[id].chart = chart_for(P.graph_, faces[id]);
    P.faces_ = std::move(faces);

    P.facets_of_vertex_.assign(static_cast<size_t>(vertex_count), {});
    for (int f : P.facets())
        for (int v : P.face(f).vertices) P.facets_of_vertex_[static_cast<size_t>(v)].push_back(f);

    P.ridge_slot_.assign(P.faces_.size(), -1);
    if (dim >= 2) {
        for (int r : P.ridges()) {
            std::vector<int> holders;
            for (int f : P.facets())
                if ((P.face(r).mask & ~P.face(f).mask).none()) holders.push_back(f);
            if (holders.size() != 2)
                throw InconsistentIncidence("ridge lies in " + std::to_string(holders.size()) + " facets instead of 2");
            P.ridge_slot_[static_cast<size_t>(r)] = static_cast<int>(P.ridge_facets_.size());
            P.ridge_facets_.emplace_back(holders[0], holders[1]);
        }
    }

    if (labels.empty()) {
        for (int v = 0; v < vertex_count; ++v) P.labels_.push_back(std::to_string(v));
    } else {
        P.labels_ = labels;
        std::set<std::string> unique(labels.begin(), labels.end());
        if (static_cast<int>(unique.size()) != vertex_count) throw InconsistentIncidence("vertex labels are not unique");
    }
    P.parent_.resize(static_cast<size_t>(vertex_count));
    for (int v = 0; v < vertex_count; ++v) P.parent_[static_cast<size_t>(v)] = v;
    P.cubical_ = true;
    return P;
}

std::optional<int> Polytope::find_face(const VertexMask& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Polytope::find_face(const std::vector<int>& vertices) const { return find_face(mask_of(vertices)); }

std::pair<int, int> Polytope::facets_of_ridge(int ridge) const {
    int slot = ridge_slot_.at(static_cast<size_t>(ridge));
    if (slot < 0) throw std::invalid_argument("facets_of_ridge: not a ridge");
    return ridge_facets_[static_cast<size_t>(slot)];
}

int Polytope::other_facet(int ridge, int facet) const {
    auto [a, b] = facets_of_ridge(ridge);
    if (a == facet) return b;
    if (b == facet) return a;
    throw std::invalid_argument("other_facet: facet does not contain the ridge");
}

bool Polytope::face_contains_face(int outer, int inner) const {
    return (face(inner).mask & ~face(outer).mask).none();
}

int Polytope::subface(int face_id, const CubeFace& local) const {
    const CubeChart& chart = face(face_id).chart;
    if (local.d != chart.dim()) throw DimensionMismatch("subface: chart dimension mismatch");
    VertexMask m;
    for (Bits l : local.vertices()) m.set(static_cast<size_t>(chart.vertex(l)));
    auto id = find_face(m);
    if (!id) throw std::logic_error("subface: chart subcube is not a face");
    return *id;
}

CubeFace Polytope::local_face(int face_id, int sub_id) const {
    const CubeChart& chart = face(face_id).chart;
    std::vector<Bits> ls;
    for (int v : face(sub_id).vertices) ls.push_back(chart.label(v));
    CubeFace lf = smallest_face(ls, chart.dim());
    if (lf.dim() != face(sub_id).dim) throw std::logic_error("local_face: not a subface");
    return lf;
}

int Polytope::opposite_in(int face_id, int v) const {
    const CubeChart& chart = face(face_id).chart;
    return chart.vertex(chart.label(v) ^ full_mask(chart.dim()));
}

std::vector<int> Polytope::neighbors_in(int face_id, int v) const {
    const CubeChart& chart = face(face_id).chart;
    Bits l = chart.label(v);
    std::vector<int> out;
    for (int a = 0; a < chart.dim(); ++a) out.push_back(chart.vertex(l ^ (Bits{1} << a)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Polytope::subfacets(int face_id) const {
    int j = face(face_id).dim;
    std::vector<int> out;
    for (int a = 0; a < j; ++a)
        for (int val = 0; val < 2; ++val) out.push_back(subface(face_id, CubeFace::facet(j, a, val != 0)));
    return out;
}

int Polytope::opposite_subface(int J, int R) const {
    CubeFace lf = local_face(J, R);
    return subface(J, CubeFace(lf.mask, lf.values ^ lf.mask, lf.d));
}

int Polytope::project_within(int J, int target, int v) const {
    CubeFace lf = local_face(J, target);
    const CubeChart& chart = face(J).chart;
    return chart.vertex((chart.label(v) & ~lf.mask) | lf.values);
}

std::optional<int> Polytope::vertex_by_label(const std::string& s) const {
    for (int v = 0; v < n_; ++v)
        if (labels_[static_cast<size_t>(v)] == s) return v;
    return std::nullopt;
}

Polytope build_cube_polytope(int d) {
    if (d < 1 || d > 8) throw std::invalid_argument("build_cube_polytope: dimension out of range");
    std::vector<std::vector<int>> facets;
    for (int a = 0; a < d; ++a)
        for (int val = 0; val < 2; ++val) {
            std::vector<int> f;
            for (Bits v : CubeFace::facet(d, a, val != 0).vertices()) f.push_back(static_cast<int>(v));
            facets.push_back(f);
        }
    std::vector<std::string> labels;
    for (int v = 0; v < (1 << d); ++v) labels.push_back(to_string(static_cast<Bits>(v), d));
    return build_from_incidence(d, 1 << d, facets, labels);
}

Polytope link_polytope(const Polytope& P, int v) {
    if (P.dim() < 2) throw std::invalid_argument("link_polytope: dimension too small");
    std::set<std::vector<int>> link_facets;
    VertexMask star_vertices;
    for (int F : P.facets_of_vertex(v)) {
        star_vertices |= P.face(F).mask;
        for (int R : P.subfacets(F))
            if (!P.face_contains(R, v)) link_facets.insert(P.face(R).vertices);
    }
    star_vertices.reset(static_cast<size_t>(v));
    std::vector<int> old_ids = members(star_vertices);
    std::vector<int> new_id(static_cast<size_t>(P.vertex_count()), -1);
    for (size_t i = 0; i < old_ids.size(); ++i) new_id[static_cast<size_t>(old_ids[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> facets;
    for (const auto& f : link_facets) {
        std::vector<int> g;
        for (int u : f) {
            if (new_id[static_cast<size_t>(u)] < 0) throw std::logic_error("link_polytope: facet leaves the star");
            g.push_back(new_id[static_cast<size_t>(u)]);
        }
        facets.push_back(g);
    }
    std::vector<std::string> labels;
    for (int u : old_ids) labels.push_back(P.label(u));
    Polytope L = build_from_incidence(P.dim() - 1, static_cast<int>(old_ids.size()), facets, labels);
    L.parent_ = old_ids;
    return L;
}

Polytope link_polytope_of_cube(int cube_dim, Bits v) {
    Polytope Q = build_cube_polytope(cube_dim);
    return link_polytope(Q, static_cast<int>(v));
}

// ---------------------------------------------------------------- complexes

Complex::Complex(const Polytope& host, const std::vector<int>& generators)
    : host_(&host), member_(static_cast<size_t>(host.face_count()), 0) {
    for (int f = 0; f < host.face_count(); ++f) {
        const VertexMask& m = host.face(f).mask;
        for (int g : generators)
            if ((m & ~host.face(g).mask).none()) {
                member_[static_cast<size_t>(f)] = 1;
                faces_.push_back(f);
                dim_ = std::max(dim_, host.face(f).dim);
                break;
            }
    }
}

Complex Complex::boundary(const Polytope& P) { return Complex(P, P.facets()); }

std::vector<int> Complex::facets() const {
    std::vector<int> order = faces_;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return host_->face(a).dim > host_->face(b).dim; });
    std::vector<int> maximal;
    for (int f : order) {
        bool covered = false;
        for (int g : maximal)
            if (host_->face_contains_face(g, f)) {
                covered = true;
                break;
            }
        if (!covered) maximal.push_back(f);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

bool Complex::pure() const {
    for (int f : facets())
        if (host_->face(f).dim != dim_) return false;
    return true;
}

VertexMask Complex::vertex_mask() const {
    VertexMask m;
    for (int f : faces_)
        if (host_->face(f).dim == 0) m |= host_->face(f).mask;
    return m;
}

std::vector<int> Complex::vertices() const { return members(vertex_mask()); }

Graph Complex::graph() const {
    Graph g(host_->vertex_count());
    for (int f : faces_)
        if (host_->face(f).dim == 1) g.add_edge(host_->face(f).vertices[0], host_->face(f).vertices[1]);
    g.finalize();
    return g;
}

Complex star(const Complex& C, int v) {
    if (!C.vertex_mask().test(static_cast<size_t>(v))) throw std::invalid_argument("star: vertex not in complex");
    std::vector<int> gens;
    for (int f : C.faces())
        if (C.host().face_contains(f, v)) gens.push_back(f);
    return Complex(C.host(), gens);
}

Complex antistar(const Complex& C, const std::vector<int>& X) {
    VertexMask avoid = mask_of(X);
    VertexMask present = C.vertex_mask();
    for (int x : X)
        if (!present.test(static_cast<size_t>(x))) throw std::invalid_argument("antistar: vertex not in complex");
    std::vector<int> gens;
    for (int f : C.faces())
        if ((C.host().face(f).mask & avoid).none()) gens.push_back(f);
    return Complex(C.host(), gens);
}

Complex link(const Complex& C, int v) {
    Complex S = star(C, v);
    std::vector<int> gens;
    for (int f : S.faces())
        if (!C.host().face_contains(f, v)) gens.push_back(f);
    return Complex(C.host(), gens);
}

Complex induced(const Complex& C, const VertexMask& keep) {
    std::vector<int> gens;
    for (int f : C.faces())
        if ((C.host().face(f).mask & ~keep).none()) gens.push_back(f);
    return Complex(C.host(), gens);
}

Complex complex_union(const Complex& A, const Complex& B) {
    std::vector<int> gens = A.faces();
    gens.insert(gens.end(), B.faces().begin(), B.faces().end());
    return Complex(A.host(), gens);
}

namespace {

std::vector<std::vector<int>> dual_graph(const Complex& C, const std::vector<int>& facets) {
    const Polytope& P = C.host();
    std::vector<std::vector<int>> adj(facets.size());
    for (size_t a = 0; a < facets.size(); ++a)
        for (size_t b = a + 1; b < facets.size(); ++b) {
            VertexMask inter = P.face(facets[a]).mask & P.face(facets[b]).mask;
            bool shared_ridge;
            if (C.dim() == 0) {
                shared_ridge = true;  // points share the empty face
            } else {
                auto id = inter.none() ? std::nullopt : P.find_face(inter);
                shared_ridge = id && C.contains_face(*id) && P.face(*id).dim == C.dim() - 1;
            }
            if (shared_ridge) {
                adj[a].push_back(static_cast<int>(b));
                adj[b].push_back(static_cast<int>(a));
            }
        }
    return adj;
}

}  // namespace

bool is_strongly_connected(const Complex& C, std::string* diagnostic) {
    auto say = [&](const std::string& s) {
        if (diagnostic) *diagnostic = s;
        return false;
    };
    if (C.empty()) return say("empty complex");
    if (!C.pure()) return say("complex is not pure");
    std::vector<int> facets = C.facets();
    auto adj = dual_graph(C, facets);
    std::vector<char> seen(facets.size(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (int b : adj[static_cast<size_t>(a)])
            if (!seen[static_cast<size_t>(b)]) {
                seen[static_cast<size_t>(b)] = 1;
                ++reached;
                queue.push_back(b);
            }
    }
    if (reached != facets.size()) return say("dual graph is disconnected");
    return true;
}

std::optional<std::vector<int>> facet_ridge_path(const Complex& C, int start, int end, const std::vector<int>& forbidden) {
    std::vector<int> facets = C.facets();
    auto pos = [&](int f) -> int {
        auto it = std::find(facets.begin(), facets.end(), f);
        if (it == facets.end()) throw std::invalid_argument("facet_ridge_path: not a facet of the complex");
        return static_cast<int>(it - facets.begin());
    };
    int a = pos(start), b = pos(end);
    std::vector<char> banned(facets.size(), 0);
    for (int f : forbidden) {
        auto it = std::find(facets.begin(), facets.end(), f);
        if (it != facets.end()) banned[static_cast<size_t>(it - facets.begin())] = 1;
    }
    if (banned[static_cast<size_t>(a)] || banned[static_cast<size_t>(b)])
        throw std::invalid_argument("facet_ridge_path: endpoint is forbidden");
    auto adj = dual_graph(C, facets);
    std::vector<int> parent(facets.size(), -1);
    std::vector<char> seen(facets.size(), 0);
    std::deque<int> queue{a};
    seen[static_cast<size_t>(a)] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == b) break;
        for (int w : adj[static_cast<size_t>(u)])
            if (!seen[static_cast<size_t>(w)] && !banned[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                parent[static_cast<size_t>(w)] = u;
                queue.push_back(w);
            }
    }
    if (!seen[static_cast<size_t>(b)]) return std::nullopt;
    std::vector<int> path;
    for (int u = b; u != -1; u = parent[static_cast<size_t>(u)]) path.push_back(facets[static_cast<size_t>(u)]);
    std::reverse(path.begin(), path.end());
    return path;
}

TechnicalDecomposition technical_decomposition(const Polytope& P, int s1, int s2, int F1, int F12) {
    const int d = P.dim();
    if (d < 4) throw std::invalid_argument("technical_decomposition: dimension must be at least 4");
    if (s1 == s2) throw std::invalid_argument("technical_decomposition: s1 = s2");
    if (!P.face_contains(F1, s1) || P.face_contains(F1, s2))
        throw std::invalid_argument("technical_decomposition: F1 must contain s1 and not s2");
    if (!P.face_contains(F12, s1) || !P.face_contains(F12, s2))
        throw std::invalid_argument("technical_decomposition: F12 must contain s1 and s2");

    Complex S1(P, P.facets_of_vertex(s1));
    std::vector<int> both;
    for (int f : P.facets_of_vertex(s1))
        if (P.face_contains(f, s2)) both.push_back(f);
    Complex S12(P, both);
    const VertexMask& m1 = P.face(F1).mask;
    const VertexMask& m12 = P.face(F12).mask;
    Complex A1 = induced(S1, ~m1);
    Complex A12 = induced(S12, ~(m1 | m12));

    std::vector<int> gens;
    for (int J : both) {
        if (J == F12) continue;
        for (int R : P.subfacets(J)) {
            if ((P.face(R).mask & m1).any()) continue;
            for (int f = 0; f < P.face_count(); ++f)
                if (P.face(f).dim <= d - 3 && P.face_contains_face(R, f) && (P.face(f).mask & m12).none())
                    gens.push_back(f);
        }
    }
    Complex C(P, gens);

    TechnicalDecomposition out{S12, A1, A12, C, false, false, false, false, {}};
    out.single_facet = both.size() == 1;
    std::string why;
    out.star_pair_connected = is_strongly_connected(S12, &why) && S12.dim() == d - 1;
    if (!out.star_pair_connected) out.diagnostic += "S12: " + why + "; ";

    out.avoids_F12 = true;
    if (both.size() > 2)
        for (size_t a = 0; a < both.size(); ++a)
            for (size_t b = a + 1; b < both.size(); ++b) {
                if (both[a] == F12 || both[b] == F12) continue;
                if (!facet_ridge_path(S12, both[a], both[b], {F12})) out.avoids_F12 = false;
            }
    if (!out.avoids_F12) out.diagnostic += "facet-ridge path forced through F12; ";

    if (out.single_facet) {
        out.diagnostic += "S12 has a single facet; spanning subcomplex claim does not apply; ";
    } else {
        why.clear();
        bool spans = C.vertex_mask() == A12.vertex_mask();
        bool shape = !C.empty() && C.pure() && C.dim() == d - 3;
        bool connected = is_strongly_connected(C, &why);
        out.spanning_connected = spans && shape && connected;
        if (!spans) out.diagnostic += "C does not span A12; ";
        if (!shape) out.diagnostic += "C is not a pure (d-3)-complex; ";
        if (!connected) out.diagnostic += "C: " + why + "; ";
    }
    return out;
}

int vertex_connectivity(const Graph& G, const std::vector<char>& present_in) {
    std::vector<char> present = present_in.empty() ? std::vector<char>(static_cast<size_t>(G.size()), 1) : present_in;
    std::vector<int> V;
    for (int v = 0; v < G.size(); ++v)
        if (present[static_cast<size_t>(v)]) V.push_back(v);
    const int n = static_cast<int>(V.size());
    if (n <= 1) return 0;
    std::vector<int> absent;
    for (int v = 0; v < G.size(); ++v)
        if (!present[static_cast<size_t>(v)]) absent.push_back(v);
    auto present_neighbors = [&](int v) {
        std::vector<int> out;
        for (int w : G.neighbors(v))
            if (present[static_cast<size_t>(w)]) out.push_back(w);
        return out;
    };
    int best = n - 1;
    for (int i = 0; i < n && i <= best; ++i)
        for (int j = i + 1; j < n; ++j) {
            int u = V[static_cast<size_t>(i)], w = V[static_cast<size_t>(j)];
            if (G.adjacent(u, w)) continue;
            auto Nu = present_neighbors(u), Nw = present_neighbors(w);
            if (Nu.empty() || Nw.empty()) return 0;
            std::vector<int> forbidden = absent;
            forbidden.push_back(u);
            forbidden.push_back(w);
            // A one-vertex neighbourhood would be treated as a fan centre; that
            // vertex alone separates u from w, so at most one path exists.
            const int k = (Nu.size() == 1 || Nw.size() == 1) ? 1 : n;
            MengerResult r = disjoint_paths(G, Nu, Nw, k, forbidden);
            int local = r.ok ? k : static_cast<int>(r.cut.size());
            best = std::min(best, local);
        }
    return best;
}

}  // namespace cubelink
