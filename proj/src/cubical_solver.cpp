// Linkage in cubical d-polytopes: even d through a facet, odd d through the star of
// the least terminal, and strong linkage through the link of the extra terminal.

#include <algorithm>
#include <map>
#include <set>

#include "linkage_internal.hpp"

namespace cubelink {
namespace detail {

namespace {

int capacity(int d) { return (d + 1) / 2; }

void validate_terminals(const Polytope& P, const Pairing& Y, const std::vector<int>& avoid, const char* who) {
    std::set<int> seen;
    auto check = [&](int x) {
        if (x < 0 || x >= P.vertex_count()) throw std::invalid_argument(std::string(who) + ": vertex out of range");
        if (!seen.insert(x).second) throw std::invalid_argument(std::string(who) + ": terminals must be distinct");
    };
    for (int x : terminals_of(Y)) check(x);
    for (int x : avoid) check(x);
}

std::vector<int> free_vertices(const Polytope& P, const std::vector<int>& used) {
    std::vector<int> out;
    for (int v = 0; v < P.vertex_count(); ++v)
        if (!contains(used, v)) out.push_back(v);
    return out;
}

// Odd d >= 5, exactly k = (d+1)/2 pairs with s1 = Y[0].first the least terminal.
class CubicalLinker {
public:
    CubicalLinker(const Polytope& P, const Pairing& Y, Trace& tr) : P_(P), Y_(Y), tr_(tr), G_(P.graph()) {
        d_ = P.dim();
        k_ = static_cast<int>(Y.size());
        s1_ = Y[0].first;
        for (int F : P.facets_of_vertex(s1_)) star_ |= P.face(F).mask;
    }

    PathSystem run() {
        // Step 1: route the other d terminals into the star of s1.
        tr_.push_back("thm-cubical/route-to-star");
        std::vector<int> A, B;
        for (int x : terminals_of(Y_))
            if (x != s1_) A.push_back(x);
        std::sort(A.begin(), A.end());
        for (int v = 0; v < P_.vertex_count(); ++v)
            if (in_star(v)) B.push_back(v);
        MengerResult m = disjoint_paths(G_, A, B, static_cast<int>(A.size()));
        require(m.ok, tr_, "cannot route the terminals into the star");
        for (Path& p : m.paths) {
            require(!contains(p, s1_), tr_, "routing path meets s1");
            route_[p.front()] = p;
        }
        route_[s1_] = Path{s1_};

        for (int round = 0;; ++round) {
            Pairing Yb = bar_pairing();
            auto w = detect_config_dF(P_, s1_, Yb);
            if (!w) break;
            require(round < 3, tr_, "configuration persists after redirection");
            tr_.push_back("thm-cubical/config-dF");
            if (!redirect(*w, Yb)) return direct(*w, Yb);
        }

        tr_.push_back("thm-cubical/star");
        Pairing Yb = bar_pairing();
        LinkageCertificate c = solve_star(P_, Yb);
        for (const auto& t : c.trace) tr_.push_back(t);
        require(c.linked, tr_, "star linkage failed");
        return assemble(c.paths);
    }

private:
    bool in(int face, int v) const { return P_.face_contains(face, v); }
    bool in_star(int v) const { return star_.test(static_cast<size_t>(v)); }
    int bar(int x) const { return route_.at(x).back(); }

    Pairing bar_pairing() const {
        Pairing Yb;
        for (auto [s, t] : Y_) Yb.emplace_back(bar(s), bar(t));
        return Yb;
    }

    PathSystem assemble(const PathSystem& inner) const {
        PathSystem out;
        for (size_t i = 0; i < Y_.size(); ++i) {
            auto [s, t] = Y_[i];
            out.push_back(join({route_.at(s), oriented(inner[i], bar(s)), reversed(route_.at(t))}));
        }
        return out;
    }

    // Ridges of F1 through t1bar, in subfacet order.
    std::vector<int> ridges_through(int F1, int t1b) const {
        std::vector<int> out;
        for (int R : P_.subfacets(F1))
            if (in(R, t1b)) out.push_back(R);
        return out;
    }

    // Case 1: some routing path passes through the face R_J opposite a ridge R of F1
    // through t1bar; shorten it so that it lands in R instead. Returns false when no
    // routing path meets any such R_J.
    bool redirect(const ObstructionWitness& w, const Pairing& Yb) {
        const int F1 = *P_.find_face(w.facet);
        const int t1b = w.pair.second;
        std::vector<int> Xb = terminals_of(Yb);
        for (int R : ridges_through(F1, t1b)) {
            const int J = P_.other_facet(R, F1);
            const int RJ = P_.opposite_subface(J, R);
            std::vector<int> bad;
            for (int x : Xb)
                if (in(R, x)) bad.push_back(P_.project_within(J, RJ, x));
            auto good = [&](int v) { return in(RJ, v) && !contains(bad, v); };

            std::vector<int> touching;
            for (auto& [x, p] : route_)
                if (std::any_of(p.begin(), p.end(), [&](int v) { return in(RJ, v); })) touching.push_back(x);
            if (touching.empty()) continue;
            tr_.push_back("thm-cubical/config-dF/case-1");

            for (int x : touching) {
                Path& p = route_[x];
                auto it = std::find_if(p.begin(), p.end(), good);
                if (it == p.end()) continue;
                tr_.push_back("thm-cubical/config-dF/case-1/good-vertex");
                Path np(p.begin(), it + 1);
                if (!in_star(*it)) np.push_back(P_.project_within(J, R, *it));
                p = np;
                return true;
            }

            const int t1p = P_.project_within(J, RJ, t1b);
            int chosen = touching.front();
            for (int x : touching)
                if (!contains(route_[x], t1p)) {
                    chosen = x;
                    break;
                }
            tr_.push_back("thm-cubical/config-dF/case-1/bad-only");
            Path& p = route_[chosen];
            auto it = std::find_if(p.begin(), p.end(), [&](int v) { return in(RJ, v); });
            Path head(p.begin(), it + 1);
            // Shortest walk inside R_J avoiding the other routing paths, stopping at the
            // first good vertex or at the first star vertex, which then becomes the
            // new end of the path.
            std::vector<char> blocked(static_cast<size_t>(P_.vertex_count()), 0);
            for (auto& [y, q] : route_)
                if (y != chosen)
                    for (int v : q) blocked[static_cast<size_t>(v)] = 1;
            std::map<int, int> parent{{*it, -1}};
            std::vector<int> frontier{*it};
            int found = -1;
            while (!frontier.empty() && found < 0) {
                std::vector<int> next;
                for (int u : frontier) {
                    for (int v : P_.neighbors_in(RJ, u)) {
                        if (parent.count(v) || blocked[static_cast<size_t>(v)]) continue;
                        parent[v] = u;
                        if (good(v) || in_star(v)) {
                            found = v;
                            break;
                        }
                        next.push_back(v);
                    }
                    if (found >= 0) break;
                }
                frontier = std::move(next);
            }
            require(found >= 0, tr_, "no good vertex reachable inside R_J");
            if (in_star(found)) tr_.push_back("thm-cubical/config-dF/case-1/stop-in-star");
            Path M;
            for (int v = found; v != -1; v = parent[v]) M.push_back(v);
            std::reverse(M.begin(), M.end());
            Path np = join(head, M);
            if (!in_star(found)) np.push_back(P_.project_within(J, R, found));
            p = np;
            return true;
        }
        return false;
    }

    // Case 2: no routing path meets R_J; link directly through R, R_J and the ridge of F1
    // opposite R.
    PathSystem direct(const ObstructionWitness& w, const Pairing& Yb) {
        tr_.push_back("thm-cubical/config-dF/case-2");
        const int F1 = *P_.find_face(w.facet);
        const int t1b = w.pair.second;
        const int R = ridges_through(F1, t1b).front();
        const int RF = P_.opposite_subface(F1, R);
        const int J = P_.other_facet(R, F1);
        const int RJ = P_.opposite_subface(J, R);
        const int sq = P_.project_within(F1, RF, t1b);
        const int q = partner_index(Yb, sq);
        require(q > 0, tr_, "neighbour of t1 opposite R is not a terminal");
        const int tq = Yb[static_cast<size_t>(q)].first == sq ? Yb[static_cast<size_t>(q)].second
                                                                : Yb[static_cast<size_t>(q)].first;
        require(in(R, tq), tr_, "partner of the opposite neighbour lies outside R");

        auto toRJ = [&](int v) { return P_.project_within(J, RJ, v); };
        const int s1R = P_.project_within(F1, R, s1_);
        Pairing pairs{{toRJ(s1R), toRJ(t1b)}};
        std::vector<int> idx{0};
        for (int i = 1; i < k_; ++i) {
            if (i == q) continue;
            auto [a, b] = Yb[static_cast<size_t>(i)];
            pairs.emplace_back(toRJ(a), toRJ(b));
            idx.push_back(i);
        }
        PathSystem L = face_link(P_, RJ, pairs, {}, tr_);
        PathSystem inner(static_cast<size_t>(k_));
        inner[0] = join({Path{s1_, s1R}, L[0], Path{t1b}});
        for (size_t j = 1; j < idx.size(); ++j) {
            auto [a, b] = Yb[static_cast<size_t>(idx[j])];
            inner[static_cast<size_t>(idx[j])] = join({Path{a}, L[j], Path{b}});
        }
        inner[static_cast<size_t>(q)] = Path{sq, P_.project_within(F1, RF, tq), tq};
        return assemble(inner);
    }

    const Polytope& P_;
    const Pairing& Y_;
    Trace& tr_;
    const Graph& G_;
    int d_ = 0, k_ = 0, s1_ = -1;
    VertexMask star_;
    std::map<int, Path> route_;  // terminal -> path into the star (bar terminal at the end)
};

PathSystem link_cubical(const Polytope& P, const Pairing& Yin, const std::vector<int>& avoid, Trace& tr) {
    const int d = P.dim();
    const Graph& G = P.graph();
    if (Yin.empty()) return {};
    if (Yin.size() == 1) {
        tr.push_back("thm-cubical/single-pair");
        std::vector<int> block = avoid;
        auto p = bfs_path(G, Yin[0].first, Yin[0].second, membership(G.size(), block));
        require(p.has_value(), tr, "pair cannot be joined");
        return {*p};
    }
    if (d == 3) {
        LinkageCertificate c = solve_3polytope(P, Yin);
        for (const auto& t : c.trace) tr.push_back(t);
        require(c.linked && avoid.empty(), tr, "two pairs in a cyclic arrangement on a 2-face");
        return c.paths;
    }
    if (d == 4) {
        tr.push_back("thm-cubical/four-polytope");
        auto L = oracle_paths(G, Yin, avoid);
        require(L.has_value(), tr, "no linkage in the 4-polytope");
        return *L;
    }
    const int k = capacity(d);
    std::vector<int> used = terminals_of(Yin);
    used.insert(used.end(), avoid.begin(), avoid.end());
    const int target = d % 2 == 1 ? k : static_cast<int>(Yin.size() + (avoid.size() + 1) / 2);
    Pairing Y = pad_pairs(Yin, avoid, free_vertices(P, used), target);

    if (d % 2 == 0) {
        tr.push_back("thm-cubical/even");
        const int F = P.facets().front();
        PathSystem L = link_via_subgraph(
            G, Y, P.face(F).vertices, [&](const Pairing& inner) { return face_link(P, F, inner, {}, tr); }, &tr);
        L.resize(Yin.size());
        return L;
    }

    tr.push_back("thm-cubical/odd");
    // The pair holding the least terminal goes first, oriented from it.
    std::vector<int> X = terminals_of(Y);
    const int s1 = *std::min_element(X.begin(), X.end());
    const int i1 = partner_index(Y, s1);
    std::vector<size_t> order{static_cast<size_t>(i1)};
    for (size_t i = 0; i < Y.size(); ++i)
        if (static_cast<int>(i) != i1) order.push_back(i);
    Pairing Yo;
    for (size_t i : order) Yo.push_back(Y[i]);
    if (Yo[0].first != s1) std::swap(Yo[0].first, Yo[0].second);
    CubicalLinker C(P, Yo, tr);
    PathSystem Lo = C.run();
    PathSystem L(Y.size());
    for (size_t j = 0; j < order.size(); ++j) L[order[j]] = oriented(Lo[j], Y[order[j]].first);
    L.resize(Yin.size());
    return L;
}

}  // namespace

}  // namespace detail

using namespace detail;

LinkageCertificate solve_cubical(const Polytope& P, const Pairing& Y, const std::vector<int>& avoid) {
    validate_terminals(P, Y, avoid, "solve_cubical");
    const int d = P.dim();
    if (d % 2 == 0 && avoid.size() == 1 && static_cast<int>(2 * Y.size()) == d) return solve_cubical_strong(P, Y, avoid[0]);
    if (static_cast<int>(2 * Y.size() + avoid.size()) > 2 * capacity(d))
        throw std::invalid_argument("solve_cubical: too many terminals for the dimension");
    LinkageCertificate cert;
    cert.trace.push_back("thm-cubical");
    if (d == 3 && Y.size() == 2) {
        LinkageCertificate c = solve_3polytope(P, Y);
        c.trace.insert(c.trace.begin(), "thm-cubical");
        return c;
    }
    cert.paths = link_cubical(P, Y, avoid, cert.trace);
    check_linkage(P.graph(), Y, cert.paths, avoid, cert.trace);
    cert.linked = true;
    return cert;
}

LinkageCertificate solve_cubical_strong(const Polytope& P, const Pairing& Y, int x) {
    validate_terminals(P, Y, {x}, "solve_cubical_strong");
    const int d = P.dim();
    if (static_cast<int>(2 * Y.size() + 1) > d + 1)
        throw std::invalid_argument("solve_cubical_strong: too many terminals for the dimension");
    if (d % 2 == 1) {
        LinkageCertificate c = solve_cubical(P, Y, {x});
        c.trace.insert(c.trace.begin(), "thm-cubical-strong/odd");
        return c;
    }
    LinkageCertificate cert;
    cert.trace.push_back("thm-cubical-strong");
    if (d <= 4 || Y.size() <= 1) {
        cert.paths = link_cubical(P, Y, {x}, cert.trace);
    } else {
        // Route the terminals into the link of x, solve there, extend.
        cert.trace.push_back("thm-cubical-strong/route-to-link");
        Polytope Lk = link_polytope(P, x);
        const auto& parent = Lk.parent_ids();
        std::vector<int> local(static_cast<size_t>(P.vertex_count()), -1);
        for (int i = 0; i < Lk.vertex_count(); ++i) local[static_cast<size_t>(parent[static_cast<size_t>(i)])] = i;
        std::vector<int> A = terminals_of(Y), B(parent.begin(), parent.end());
        std::sort(A.begin(), A.end());
        MengerResult m = disjoint_paths(P.graph(), A, B, static_cast<int>(A.size()));
        require(m.ok, cert.trace, "cannot route the terminals into the link");
        std::map<int, Path> route;
        for (Path& p : m.paths) {
            require(!contains(p, x), cert.trace, "routing path meets the extra terminal");
            route[p.front()] = p;
        }
        Pairing Yl;
        for (auto [s, t] : Y)
            Yl.emplace_back(local[static_cast<size_t>(route[s].back())], local[static_cast<size_t>(route[t].back())]);
        PathSystem inner = link_cubical(Lk, Yl, {}, cert.trace);
        for (size_t i = 0; i < Y.size(); ++i) {
            Path mid = inner[i];
            for (int& u : mid) u = parent[static_cast<size_t>(u)];
            cert.paths.push_back(join({route[Y[i].first], mid, reversed(route[Y[i].second])}));
        }
    }
    check_linkage(P.graph(), Y, cert.paths, {x}, cert.trace);
    cert.linked = true;
    return cert;
}

}  // namespace cubelink
