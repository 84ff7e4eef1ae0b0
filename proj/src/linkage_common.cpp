#include <algorithm>
#include <set>

#include "cubelink/oracle.hpp"
#include "linkage_internal.hpp"

namespace cubelink {
namespace detail {

void fail(const Trace& tr, const std::string& msg) {
    std::string where = tr.empty() ? std::string("(start)") : tr.back();
    throw CaseNotCovered(where + ": " + msg, tr);
}

Path join(const Path& a, const Path& b) {
    if (a.empty()) return b;
    Path out = a;
    size_t start = (!b.empty() && b.front() == a.back()) ? 1 : 0;
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(start), b.end());
    return out;
}

Path join(std::initializer_list<Path> parts) {
    Path out;
    for (const Path& p : parts) out = join(out, p);
    return out;
}

Path reversed(Path p) {
    std::reverse(p.begin(), p.end());
    return p;
}

Path oriented(Path p, int s) {
    if (!p.empty() && p.front() != s) std::reverse(p.begin(), p.end());
    return p;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

int partner_index(const Pairing& Y, int x) {
    for (size_t i = 0; i < Y.size(); ++i)
        if (Y[i].first == x || Y[i].second == x) return static_cast<int>(i);
    return -1;
}

Pairing pad_pairs(const Pairing& Y, const std::vector<int>& avoid, const std::vector<int>& spare, int target) {
    Pairing out = Y;
    std::vector<int> pool = avoid;
    const int need = 2 * (target - static_cast<int>(Y.size())) - static_cast<int>(avoid.size());
    for (int i = 0, taken = 0; taken < need && i < static_cast<int>(spare.size()); ++i) {
        pool.push_back(spare[static_cast<size_t>(i)]);
        ++taken;
    }
    if (static_cast<int>(pool.size()) != 2 * (target - static_cast<int>(Y.size())))
        throw std::logic_error("pad_pairs: not enough spare vertices");
    for (size_t i = 0; i + 1 < pool.size(); i += 2) out.emplace_back(pool[i], pool[i + 1]);
    return out;
}

// ---------------------------------------------------------------- faces

namespace {

std::vector<int> to_labels(const CubeChart& chart, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs) {
        auto l = chart.find_label(v);
        if (!l) throw std::logic_error("vertex outside the face chart");
        out.push_back(static_cast<int>(*l));
    }
    return out;
}

Pairing to_labels(const CubeChart& chart, const Pairing& Y) {
    Pairing out;
    for (auto [s, t] : Y)
        out.emplace_back(static_cast<int>(chart.label(s)), static_cast<int>(chart.label(t)));
    return out;
}

Path from_labels(const CubeChart& chart, const Path& p) {
    Path out;
    for (int l : p) out.push_back(chart.vertex(static_cast<Bits>(l)));
    return out;
}

}  // namespace

std::optional<Path> face_bfs(const Polytope& P, int face, int s, int t, const std::vector<int>& blocked) {
    const CubeChart& chart = P.face(face).chart;
    std::vector<int> inside;
    for (int b : blocked)
        if (chart.contains(b)) inside.push_back(b);
    auto p = cube_bfs(CubeFace::whole(chart.dim()), static_cast<int>(chart.label(s)), static_cast<int>(chart.label(t)),
                      to_labels(chart, inside));
    if (!p) return std::nullopt;
    return from_labels(chart, *p);
}

PathSystem face_link(const Polytope& P, int face, const Pairing& Y, const std::vector<int>& avoid, Trace& tr) {
    const CubeChart& chart = P.face(face).chart;
    PathSystem L = cube_link(CubeFace::whole(chart.dim()), to_labels(chart, Y), to_labels(chart, avoid), tr);
    for (Path& p : L) p = from_labels(chart, p);
    return L;
}

PathSystem face_link_of_vertex(const Polytope& P, int face, int c, const Pairing& Y, Trace& tr) {
    const CubeChart& chart = P.face(face).chart;
    PathSystem L = cube_link_of_vertex(chart.dim(), chart.label(c), to_labels(chart, Y), tr);
    for (Path& p : L) p = from_labels(chart, p);
    return L;
}

int face_dist(const Polytope& P, int face, int u, int v) {
    const CubeChart& chart = P.face(face).chart;
    return dist(chart.label(u), chart.label(v));
}

Graph faces_graph(const Polytope& P, const std::vector<int>& faces, const VertexMask& exclude) {
    Graph G(P.vertex_count());
    for (int f : faces) {
        const auto& vs = P.face(f).vertices;
        for (int u : vs) {
            if (exclude.test(static_cast<size_t>(u))) continue;
            for (int w : P.graph().neighbors(u))
                if (w > u && P.face_contains(f, w) && !exclude.test(static_cast<size_t>(w))) G.add_edge(u, w);
        }
    }
    G.finalize();
    return G;
}

std::optional<PathSystem> oracle_paths(const Graph& G, const Pairing& Y, const std::vector<int>& avoid) {
    OracleResult r = oracle_linkage(G, Y, avoid);
    if (r.verdict != Verdict::Linked) return std::nullopt;
    PathSystem out;
    for (size_t i = 0; i < Y.size(); ++i) out.push_back(oriented(r.paths[i], Y[i].first));
    return out;
}

void check_linkage(const Graph& G, const Pairing& Y, const PathSystem& L, const std::vector<int>& avoid,
                   const Trace& tr) {
    ValidationReport rep = validate_linkage(G, Y, L, avoid);
    if (!rep.ok) fail(tr, "constructed linkage is invalid: " + rep.message);
}

}  // namespace detail

using namespace detail;

// ---------------------------------------------------------------- obstructions

namespace {

std::optional<ObstructionWitness> config_for(const Polytope& P, const Pairing& Y, int s1, int t1) {
    const int d = P.dim();
    std::vector<int> X = terminals_of(Y);
    VertexMask xm = mask_of(X);
    for (int F : P.facets()) {
        if (!P.face_contains(F, s1) || !P.face_contains(F, t1)) continue;
        if (static_cast<int>((P.face(F).mask & xm).count()) < d + 1) continue;
        if (face_dist(P, F, s1, t1) != d - 1) continue;
        std::vector<int> nb = P.neighbors_in(F, t1);
        bool all = std::all_of(nb.begin(), nb.end(), [&](int w) { return xm.test(static_cast<size_t>(w)); });
        if (!all) continue;
        ObstructionWitness w;
        w.kind = d == 3 ? "config-3F" : "config-dF";
        w.facet = P.face(F).vertices;
        w.pair = {s1, t1};
        w.blocking = nb;
        return w;
    }
    return std::nullopt;
}

}  // namespace

std::optional<ObstructionWitness> detect_config_3F(const Polytope& P3, const Pairing& Y) {
    if (P3.dim() != 3) throw std::invalid_argument("detect_config_3F: polytope must be 3-dimensional");
    std::vector<int> X = terminals_of(Y);
    if (X.size() < 4) return std::nullopt;
    std::sort(X.begin(), X.end());
    for (int x : X) {
        const auto& pr = Y[static_cast<size_t>(partner_index(Y, x))];
        int y = pr.first == x ? pr.second : pr.first;
        if (auto w = config_for(P3, Y, x, y)) return w;
    }
    return std::nullopt;
}

std::optional<ObstructionWitness> detect_config_dF(const Polytope& P, int s1, const Pairing& Y) {
    int i = partner_index(Y, s1);
    if (i < 0) throw std::invalid_argument("detect_config_dF: s1 is not a terminal");
    if (terminals_of(Y).size() < static_cast<size_t>(P.dim() + 1)) return std::nullopt;
    const auto& pr = Y[static_cast<size_t>(i)];
    return config_for(P, Y, s1, pr.first == s1 ? pr.second : pr.first);
}

bool check_witness(const Polytope& P, const Pairing& Y, const ObstructionWitness& w, std::string* why) {
    auto no = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    auto F = P.find_face(w.facet);
    if (!F || P.face(*F).dim != P.dim() - 1) return no("listed facet is not a facet of the polytope");
    auto [s1, t1] = w.pair;
    int i = partner_index(Y, s1);
    if (i < 0) return no("s1 is not a terminal");
    const auto& pr = Y[static_cast<size_t>(i)];
    if (!((pr.first == s1 && pr.second == t1) || (pr.first == t1 && pr.second == s1)))
        return no("listed pair is not a pair of the pairing");
    std::vector<int> X = terminals_of(Y);
    VertexMask xm = mask_of(X);
    if (static_cast<int>((P.face(*F).mask & xm).count()) < P.dim() + 1)
        return no("condition (i): fewer than d+1 terminals in the facet");
    if (!P.face_contains(*F, s1) || !P.face_contains(*F, t1) || face_dist(P, *F, s1, t1) != P.dim() - 1)
        return no("condition (ii): pair is not at distance d-1 in the facet");
    std::vector<int> nb = P.neighbors_in(*F, t1);
    for (int u : nb)
        if (!xm.test(static_cast<size_t>(u))) return no("condition (iii): a neighbour of t1 in the facet is free");
    std::vector<int> listed = w.blocking;
    std::sort(listed.begin(), listed.end());
    if (listed != nb) return no("blocking set differs from the neighbours of t1 in the facet");
    return true;
}

LinkageCertificate solve_3polytope(const Polytope& P3, const Pairing& Y) {
    if (P3.dim() != 3) throw std::invalid_argument("solve_3polytope: polytope must be 3-dimensional");
    if (Y.empty() || Y.size() > 2) throw std::invalid_argument("solve_3polytope: one or two pairs expected");
    LinkageCertificate cert;
    cert.trace.push_back("prop-3polytope");
    if (Y.size() == 2) {
        if (auto w = detect_config_3F(P3, Y)) {
            cert.trace.push_back("prop-3polytope/config-3F");
            cert.obstruction = w;
            return cert;
        }
    }
    cert.trace.push_back("prop-3polytope/search");
    auto L = oracle_paths(P3.graph(), Y, {});
    if (!L) fail(cert.trace, "no linkage found although no facet carries a cyclic arrangement");
    check_linkage(P3.graph(), Y, *L, {}, cert.trace);
    cert.linked = true;
    cert.paths = *L;
    return cert;
}

// ---------------------------------------------------------------- subgraph routing

PathSystem link_via_subgraph(const Graph& G, const Pairing& Y, const std::vector<int>& sub, const SubSolver& sub_solver,
                             Trace* trace) {
    Trace local;
    Trace& tr = trace ? *trace : local;
    tr.push_back("lemma-linked-subgraph");
    std::vector<int> X = terminals_of(Y);
    MengerResult m = disjoint_paths(G, X, sub, static_cast<int>(X.size()));
    if (!m.ok) fail(tr, "terminals cannot be routed into the subgraph: a separator of size " +
                            std::to_string(m.cut.size()) + " exists");
    std::map<int, Path> route;
    for (const Path& p : m.paths) route[p.front()] = p;
    Pairing inner;
    for (auto [s, t] : Y) inner.emplace_back(route.at(s).back(), route.at(t).back());
    PathSystem innerL = sub_solver(inner);
    PathSystem out;
    for (size_t i = 0; i < Y.size(); ++i)
        out.push_back(join({route.at(Y[i].first), innerL[i], reversed(route.at(Y[i].second))}));
    return out;
}

// ---------------------------------------------------------------- star injection

std::vector<int> projections_star_injection(const Polytope& P, int s, int F) {
    if (!P.face_contains(F, s)) throw std::invalid_argument("projections_star_injection: facet does not contain s");
    const int n = P.vertex_count();
    std::vector<int> f(static_cast<size_t>(n), -1);
    VertexMask covered;
    for (int R : P.subfacets(F)) {
        if (!P.face_contains(R, s)) continue;
        int J = P.other_facet(R, F);
        int Ro = P.opposite_subface(J, R);
        for (int v : P.face(R).vertices) {
            if (covered.test(static_cast<size_t>(v))) continue;
            covered.set(static_cast<size_t>(v));
            f[static_cast<size_t>(v)] = P.project_within(J, Ro, v);
        }
    }
    // Post-hoc check: injective, lands outside F, and maps to neighbours.
    std::set<int> image;
    for (int v = 0; v < n; ++v) {
        int w = f[static_cast<size_t>(v)];
        if (w < 0) continue;
        if (P.face_contains(F, w) || !P.graph().adjacent(v, w) || !image.insert(w).second)
            throw std::logic_error("projections_star_injection: map is not an injection into the antistar");
    }
    return f;
}

}  // namespace cubelink
