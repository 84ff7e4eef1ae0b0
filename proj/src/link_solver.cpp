#include <algorithm>
#include <set>

#include "cubelink/oracle.hpp"
#include "linkage_internal.hpp"

namespace cubelink {
namespace detail {

namespace {

CubeFace side(int m, int axis, int value) { return CubeFace::facet(m, axis, value != 0); }

}  // namespace

PathSystem cube_link_of_vertex(int m, Bits v, const Pairing& Yin, Trace& tr) {
    tr.push_back("prop-link-cubical");
    if (Yin.empty()) return {};
    const CubeFace Q = CubeFace::whole(m);
    const int vi = static_cast<int>(v);
    const int voi = static_cast<int>(opposite_vertex(v, Q));
    for (int x : terminals_of(Yin))
        if (x == vi || x == voi) throw std::logic_error("cube_link_of_vertex: terminal equals the centre or its opposite");
    if (Yin.size() == 1) {
        auto p = cube_bfs(Q, Yin[0].first, Yin[0].second, {vi, voi});
        if (!p) fail(tr, "pair cannot be joined in the link");
        return {*p};
    }
    if (m <= 4) return cube_oracle(Q, Yin, {vi, voi}, tr);

    const int k = m / 2;
    if (static_cast<int>(Yin.size()) > k) fail(tr, "more pairs than the link can carry");
    std::vector<int> spare;
    {
        std::vector<int> X = terminals_of(Yin);
        for (int u = 0; u < (1 << m); ++u)
            if (u != vi && u != voi && !contains(X, u)) spare.push_back(u);
    }
    const Pairing Y = pad_pairs(Yin, {}, spare, k);
    const std::vector<int> X = terminals_of(Y);
    const int axis = find_unassociated_pair(std::vector<Bits>(X.begin(), X.end()), Q).axis;
    const int flip = 1 << axis;
    const int vside = (vi >> axis) & 1;
    auto on = [&](int u, int val) { return val ? (u | flip) : (u & ~flip); };

    // Case 1: every terminal on one side S.
    for (int sval = 0; sval <= 1; ++sval) {
        CubeFace S = side(m, axis, sval);
        bool all = std::all_of(X.begin(), X.end(), [&](int x) { return S.contains(static_cast<Bits>(x)); });
        if (!all) continue;
        tr.push_back("prop-link-cubical/case-1");
        const int c = sval == vside ? vi : voi;
        const int co = sval == vside ? voi : vi;
        CubeFace So = side(m, axis, 1 - sval);
        PathSystem L = cube_link(S, Y, {}, tr);
        for (Path& p : L) {
            if (!contains(p, c)) continue;
            tr.push_back("prop-link-cubical/case-1/reroute");
            Path head{p.front()}, tail{p.back()};
            int a = p.front() ^ flip, b = p.back() ^ flip;
            if (a == co) {
                head.push_back(p[1]);
                a = p[1] ^ flip;
            }
            if (b == co) {
                tail.insert(tail.begin(), p[p.size() - 2]);
                b = p[p.size() - 2] ^ flip;
            }
            auto mid = cube_bfs(So, a, b, {co});
            require(mid.has_value() && !contains(*mid, co), tr, "no detour in the opposite facet avoiding its centre");
            p = join({head, *mid, tail});
        }
        L.resize(Yin.size());
        return L;
    }

    // Case 2, adjacent subcase: a terminal on one side projects onto the centre of the other side.
    for (size_t i = 0; i < Y.size(); ++i) {
        for (int end = 0; end < 2; ++end) {
            const int t1 = end ? Y[i].first : Y[i].second;
            const int s1 = end ? Y[i].second : Y[i].first;
            const int tside = (t1 >> axis) & 1;
            const int c = tside == vside ? voi : vi;  // centre of the other side
            if ((t1 ^ flip) != c) continue;
            tr.push_back("prop-link-cubical/case-2/adjacent");
            const int cval = 1 - tside;
            const int co = c == vi ? voi : vi;
            CubeFace C = side(m, axis, cval), O = side(m, axis, tside);
            Pairing proj;
            std::vector<size_t> idx;
            for (size_t j = 0; j < Y.size(); ++j) {
                if (j == i) continue;
                proj.emplace_back(on(Y[j].first, cval), on(Y[j].second, cval));
                idx.push_back(j);
            }
            std::vector<int> blockO = X;
            blockO.push_back(co);
            PathSystem out(Y.size());
            Path L1;
            if (O.contains(static_cast<Bits>(s1))) {
                auto p = cube_bfs(O, s1, t1, blockO);
                require(p.has_value(), tr, "no terminal-free path in the side holding both ends");
                L1 = *p;
                PathSystem inner = cube_link(C, proj, {c}, tr);
                for (size_t j = 0; j < idx.size(); ++j)
                    out[idx[j]] = join({Path{Y[idx[j]].first}, inner[j], Path{Y[idx[j]].second}});
            } else {
                Pairing withc = proj;
                withc.insert(withc.begin(), {s1, c});
                PathSystem inner = cube_link(C, withc, {}, tr);
                for (size_t j = 0; j < idx.size(); ++j)
                    out[idx[j]] = join({Path{Y[idx[j]].first}, inner[j + 1], Path{Y[idx[j]].second}});
                const Path& M1 = inner[0];
                Path head{s1};
                int a = s1 ^ flip;
                if (a == co) {
                    head.push_back(M1[1]);
                    a = M1[1] ^ flip;
                }
                auto p = cube_bfs(O, a, t1, blockO);
                require(p.has_value(), tr, "no terminal-free path to the adjacent terminal");
                L1 = join(head, *p);
            }
            out[i] = oriented(L1, Y[i].first);
            out.resize(Yin.size());
            return out;
        }
    }

    // Case 2, remaining subcase: link all projections on the side of v.
    tr.push_back("prop-link-cubical/case-2/projections");
    CubeFace F = side(m, axis, vside), Fo = side(m, axis, 1 - vside);
    Pairing proj;
    for (auto [s, t] : Y) proj.emplace_back(on(s, vside), on(t, vside));
    PathSystem inner = cube_link(F, proj, {}, tr);
    PathSystem out(Y.size());
    std::vector<int> blockFo = X;
    blockFo.push_back(voi);
    for (size_t i = 0; i < Y.size(); ++i) {
        if (contains(inner[i], vi)) {
            tr.push_back("prop-link-cubical/case-2/reroute");
            auto p = cube_bfs(Fo, on(Y[i].first, 1 - vside), on(Y[i].second, 1 - vside), blockFo);
            require(p.has_value(), tr, "no detour around the centre in the opposite facet");
            out[i] = join({Path{Y[i].first}, *p, Path{Y[i].second}});
        } else {
            out[i] = join({Path{Y[i].first}, inner[i], Path{Y[i].second}});
        }
    }
    out.resize(Yin.size());
    return out;
}

}  // namespace detail

using namespace detail;

LinkageCertificate solve_link(int cube_dim, Bits v, const Pairing& Y) {
    if (cube_dim < 2 || cube_dim > 20) throw std::invalid_argument("solve_link: cube dimension out of range");
    const int n = 1 << cube_dim;
    if (static_cast<int>(v) >= n) throw std::invalid_argument("solve_link: centre outside the cube");
    const int vo = static_cast<int>(opposite_vertex(v, CubeFace::whole(cube_dim)));
    std::set<int> seen;
    for (int x : terminals_of(Y)) {
        if (x < 0 || x >= n || x == static_cast<int>(v) || x == vo)
            throw std::invalid_argument("solve_link: terminal outside the link");
        if (!seen.insert(x).second) throw std::invalid_argument("solve_link: terminals must be distinct");
    }
    if (static_cast<int>(Y.size()) > cube_dim / 2) throw std::invalid_argument("solve_link: too many pairs");
    const std::vector<int> avoid{static_cast<int>(v), vo};
    if (cube_dim == 4 && Y.size() == 2) {
        // The link is a cubical 3-polytope: decide through its facets.
        Polytope L = link_polytope_of_cube(4, v);
        const auto& parent = L.parent_ids();
        std::vector<int> local(static_cast<size_t>(n), -1);
        for (int i = 0; i < L.vertex_count(); ++i) local[static_cast<size_t>(parent[static_cast<size_t>(i)])] = i;
        Pairing Yl;
        for (auto [s, t] : Y) Yl.emplace_back(local[static_cast<size_t>(s)], local[static_cast<size_t>(t)]);
        LinkageCertificate c = solve_3polytope(L, Yl);
        c.trace.insert(c.trace.begin(), "prop-link-cubical/three-polytope");
        for (Path& p : c.paths)
            for (int& u : p) u = parent[static_cast<size_t>(u)];
        if (c.obstruction) {
            auto& w = *c.obstruction;
            for (int& u : w.facet) u = parent[static_cast<size_t>(u)];
            std::sort(w.facet.begin(), w.facet.end());
            w.pair = {parent[static_cast<size_t>(w.pair.first)], parent[static_cast<size_t>(w.pair.second)]};
            for (int& u : w.blocking) u = parent[static_cast<size_t>(u)];
            std::sort(w.blocking.begin(), w.blocking.end());
        }
        if (c.linked) check_linkage(cube_graph(cube_dim), Y, c.paths, avoid, c.trace);
        return c;
    }
    LinkageCertificate cert;
    cert.paths = cube_link_of_vertex(cube_dim, v, Y, cert.trace);
    check_linkage(cube_graph(cube_dim), Y, cert.paths, avoid, cert.trace);
    cert.linked = true;
    return cert;
}

}  // namespace cubelink
