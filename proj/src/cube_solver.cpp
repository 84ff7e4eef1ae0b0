#include <algorithm>
#include <set>

#include "cubelink/oracle.hpp"
#include "linkage_internal.hpp"

namespace cubelink {
namespace detail {

namespace {

Bits flip_of(int axis) { return Bits{1} << axis; }

// The facet of K on which coordinate `axis` equals `value`.
CubeFace side(const CubeFace& K, int axis, int value) {
    return CubeFace(K.mask | flip_of(axis), K.values | (static_cast<Bits>(value) << axis), K.d);
}

int bit_of(int v, int axis) { return (v >> axis) & 1; }

// Moves v onto the side of `axis` with the given value.
int onto(int v, int axis, int value) { return value ? (v | static_cast<int>(flip_of(axis))) : (v & ~static_cast<int>(flip_of(axis))); }

std::vector<int> labels_of(const CubeFace& K) {
    std::vector<int> out;
    for (Bits b : K.vertices()) out.push_back(static_cast<int>(b));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Bits> as_bits(const std::vector<int>& v) { return std::vector<Bits>(v.begin(), v.end()); }

bool in_face(const CubeFace& K, int v) { return K.contains(static_cast<Bits>(v)); }

PathSystem lift_through(const Pairing& Y, const PathSystem& inner) {
    PathSystem out;
    for (size_t i = 0; i < Y.size(); ++i) out.push_back(join({Path{Y[i].first}, inner[i], Path{Y[i].second}}));
    return out;
}

PathSystem cube_solve(const CubeFace& K, const Pairing& Y, Trace& tr);
PathSystem cube_solve_strong(const CubeFace& K, const Pairing& Y, int x, Trace& tr);

}  // namespace

std::optional<Path> cube_bfs(const CubeFace& K, int s, int t, const std::vector<int>& blocked) {
    if (K.d > 24) throw std::invalid_argument("cube_bfs: dimension too large");
    if (!in_face(K, s) || !in_face(K, t)) return std::nullopt;
    const size_t n = size_t{1} << K.d;
    std::vector<int> parent(n, -2);
    for (int b : blocked)
        if (b != s && b != t && b >= 0 && static_cast<size_t>(b) < n) parent[static_cast<size_t>(b)] = -3;
    std::vector<int> queue{s};
    parent[static_cast<size_t>(s)] = -1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        if (u == t) break;
        for (Bits w : cube_neighbors(static_cast<Bits>(u), K)) {
            if (parent[w] != -2) continue;
            parent[w] = u;
            queue.push_back(static_cast<int>(w));
        }
    }
    if (parent[static_cast<size_t>(t)] < -1) return std::nullopt;
    Path p;
    for (int u = t; u != -1; u = parent[static_cast<size_t>(u)]) p.push_back(u);
    std::reverse(p.begin(), p.end());
    return p;
}

PathSystem cube_oracle(const CubeFace& K, const Pairing& Y, const std::vector<int>& avoid, Trace& tr) {
    tr.push_back("thm-cube/base-search");
    std::vector<int> axes;
    for (int a = 0; a < K.d; ++a)
        if ((K.free_axes() >> a) & 1U) axes.push_back(a);
    auto compress = [&](int v) {
        int c = 0;
        for (size_t j = 0; j < axes.size(); ++j) c |= bit_of(v, axes[j]) << j;
        return c;
    };
    auto expand = [&](int c) {
        int v = static_cast<int>(K.values);
        for (size_t j = 0; j < axes.size(); ++j) v |= ((c >> j) & 1) << axes[j];
        return v;
    };
    Pairing Yc;
    for (auto [s, t] : Y) Yc.emplace_back(compress(s), compress(t));
    std::vector<int> Ac;
    for (int a : avoid) Ac.push_back(compress(a));
    auto L = oracle_paths(cube_graph(static_cast<int>(axes.size())), Yc, Ac);
    if (!L) fail(tr, "subcube of dimension " + std::to_string(axes.size()) + " admits no linkage for the pairing");
    for (Path& p : *L)
        for (int& v : p) v = expand(v);
    return *L;
}

PathSystem cube_link(const CubeFace& K, const Pairing& Y, const std::vector<int>& avoid_in, Trace& tr) {
    if (Y.empty()) return {};
    std::vector<int> X = terminals_of(Y);
    for (int x : X)
        if (!in_face(K, x)) throw std::logic_error("cube_link: terminal outside the subcube");
    std::vector<int> avoid;
    for (int a : avoid_in)
        if (in_face(K, a) && !contains(avoid, a) && !contains(X, a)) avoid.push_back(a);
    const int m = K.dim();
    const int p = static_cast<int>(Y.size());
    if (p == 1) {
        auto path = cube_bfs(K, Y[0].first, Y[0].second, avoid);
        if (!path) fail(tr, "single pair cannot be joined avoiding the given vertices");
        for (int a : avoid)
            if (contains(*path, a)) fail(tr, "single pair path meets an avoided vertex");
        return {*path};
    }
    if (m <= 4) return cube_oracle(K, Y, avoid, tr);
    const int cap = (m + 1) / 2;
    const int total = 2 * p + static_cast<int>(avoid.size());
    if (total <= 2 * cap) {
        std::vector<int> spare;
        for (int v : labels_of(K))
            if (!contains(X, v) && !contains(avoid, v)) spare.push_back(v);
        Pairing padded = pad_pairs(Y, avoid, spare, cap);
        PathSystem L = cube_solve(K, padded, tr);
        L.resize(static_cast<size_t>(p));
        return L;
    }
    if (total == 2 * cap + 1 && m % 2 == 0) {
        int x = avoid.back();
        std::vector<int> rest(avoid.begin(), avoid.end() - 1);
        Pairing padded = pad_pairs(Y, rest, {}, cap);
        PathSystem L = cube_solve_strong(K, padded, x, tr);
        L.resize(static_cast<size_t>(p));
        return L;
    }
    fail(tr, "too many terminals for the dimension of the subcube");
}

namespace {

// ---------------------------------------------------------------- scenario 1

PathSystem scenario_one(const CubeFace& K, const Pairing& Y, int axis, Trace& tr) {
    tr.push_back("thm-cube/scenario-1");
    const std::vector<int> X = terminals_of(Y);
    const int val = bit_of(X[0], axis);
    const CubeFace F = side(K, axis, val);
    const CubeFace Fo = side(K, axis, 1 - val);
    size_t first = Y.size();
    Path L1;
    for (size_t i = 0; i < Y.size(); ++i) {
        if (auto p = cube_bfs(F, Y[i].first, Y[i].second, X)) {
            first = i;
            L1 = *p;
            break;
        }
    }
    require(first < Y.size(), tr, "no pair has a terminal-free path in the facet holding every terminal");
    Pairing rest, proj;
    std::vector<size_t> idx;
    for (size_t i = 0; i < Y.size(); ++i) {
        if (i == first) continue;
        rest.push_back(Y[i]);
        proj.emplace_back(onto(Y[i].first, axis, 1 - val), onto(Y[i].second, axis, 1 - val));
        idx.push_back(i);
    }
    PathSystem inner = cube_link(Fo, proj, {}, tr);
    PathSystem out(Y.size());
    out[first] = L1;
    PathSystem lifted = lift_through(rest, inner);
    for (size_t j = 0; j < idx.size(); ++j) out[idx[j]] = lifted[j];
    return out;
}

}  // namespace

// ---------------------------------------------------------------- scenario 2 classes

namespace {

struct Classes {
    std::vector<int> X0, X1, X2, X3, X4;
    std::map<int, Path> M;
};

// Y[0] lies in the facet of K given by (axis, val); every other terminal is classified.
Classes classify_and_route(const CubeFace& K, int axis, int val, const Pairing& Y, Trace& tr) {
    const Bits flip = flip_of(axis);
    const CubeFace F = side(K, axis, val);
    const int m = K.dim();
    const std::vector<int> X = terminals_of(Y);
    auto partner = [&](int x) {
        const auto& pr = Y[static_cast<size_t>(partner_index(Y, x))];
        return pr.first == x ? pr.second : pr.first;
    };
    auto inX = [&](int v) { return contains(X, v); };
    std::vector<int> XF;
    for (int x : X)
        if (x != Y[0].first && x != Y[0].second && in_face(F, x)) XF.push_back(x);
    std::sort(XF.begin(), XF.end());

    Classes c;
    for (int x : XF) {
        int y = partner(x);
        int xp = x ^ static_cast<int>(flip);
        if (in_face(F, y) && dist(static_cast<Bits>(x), static_cast<Bits>(y)) == 1)
            c.X0.push_back(x);
        else if (y == xp)
            c.X1.push_back(x);
        else if (!inX(xp))
            c.X2.push_back(x);
        else if (!in_face(F, y) && dist(static_cast<Bits>(x), static_cast<Bits>(y)) == 2 &&
                 !inX(y ^ static_cast<int>(flip)))
            c.X3.push_back(x);
        else
            c.X4.push_back(x);
    }
    std::set<int> used;
    for (int x : c.X2) {
        c.M[x] = {x, x ^ static_cast<int>(flip)};
        used.insert(c.M[x].begin(), c.M[x].end());
    }
    for (int x : c.X3) {
        int y = partner(x);
        c.M[x] = {x, y ^ static_cast<int>(flip), y};
        used.insert(c.M[x].begin(), c.M[x].end());
    }
    if (!c.X4.empty()) tr.push_back("thm-cube/scenario-2/Mx");
    for (int x : c.X4) {
        std::vector<int> nb;
        for (Bits w : cube_neighbors(static_cast<Bits>(x), F)) nb.push_back(static_cast<int>(w));
        std::sort(nb.begin(), nb.end());
        int blocked = 0;
        int chosen = -1;
        for (int w : nb) {
            int wp = w ^ static_cast<int>(flip);
            if (inX(w) || used.count(w) || inX(wp) || used.count(wp)) {
                ++blocked;
                continue;
            }
            if (chosen < 0) chosen = w;
        }
        require(blocked <= m - 2, tr, "more blocked neighbours than the injection bound allows");
        require(chosen >= 0, tr, "no free neighbour for a short path into the opposite facet");
        c.M[x] = {x, chosen, chosen ^ static_cast<int>(flip)};
        used.insert(c.M[x].begin(), c.M[x].end());
    }
    return c;
}

PathSystem scenario_two(const CubeFace& K, const Pairing& Yin, size_t pair, int axis, Trace& tr) {
    tr.push_back("thm-cube/scenario-2");
    Pairing Y = Yin;
    std::vector<size_t> order(Y.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::swap(order[0], order[pair]);
    Pairing Yr;
    for (size_t i : order) Yr.push_back(Y[i]);
    const int val = bit_of(Yr[0].first, axis);
    const CubeFace F = side(K, axis, val);
    const CubeFace Fo = side(K, axis, 1 - val);
    const Bits flip = flip_of(axis);
    Classes c = classify_and_route(K, axis, val, Yr, tr);

    PathSystem out(Yr.size());
    std::vector<char> done(Yr.size(), 0);
    std::vector<int> avoid_o;
    auto settle = [&](int x, Path p) {
        size_t i = static_cast<size_t>(partner_index(Yr, x));
        if (done[i]) return;
        out[i] = oriented(std::move(p), Yr[i].first);
        done[i] = 1;
    };
    for (int x : c.X0) settle(x, {x, Yr[static_cast<size_t>(partner_index(Yr, x))].first == x
                                         ? Yr[static_cast<size_t>(partner_index(Yr, x))].second
                                         : Yr[static_cast<size_t>(partner_index(Yr, x))].first});
    for (int x : c.X1) {
        settle(x, {x, x ^ static_cast<int>(flip)});
        avoid_o.push_back(x ^ static_cast<int>(flip));
    }
    for (int x : c.X3) {
        settle(x, c.M.at(x));
        avoid_o.push_back(c.M.at(x).back());
    }
    // Remaining pairs go through F^o via their short paths.
    Pairing inner;
    std::vector<size_t> inner_idx;
    auto entry = [&](int x) -> Path { return in_face(Fo, x) ? Path{x} : c.M.at(x); };
    for (size_t i = 1; i < Yr.size(); ++i) {
        if (done[i]) continue;
        inner.emplace_back(entry(Yr[i].first).back(), entry(Yr[i].second).back());
        inner_idx.push_back(i);
    }
    PathSystem innerL = cube_link(Fo, inner, avoid_o, tr);
    for (size_t j = 0; j < inner_idx.size(); ++j) {
        size_t i = inner_idx[j];
        out[i] = join({entry(Yr[i].first), innerL[j], reversed(entry(Yr[i].second))});
        done[i] = 1;
    }
    std::vector<int> occupied;
    for (size_t i = 1; i < Yr.size(); ++i) occupied.insert(occupied.end(), out[i].begin(), out[i].end());
    auto L1 = cube_bfs(F, Yr[0].first, Yr[0].second, occupied);
    require(L1.has_value(), tr, "the first pair is separated in its facet by the other paths");
    out[0] = *L1;
    PathSystem result(Y.size());
    for (size_t j = 0; j < order.size(); ++j) result[order[j]] = out[j];
    return result;
}

// ---------------------------------------------------------------- scenario 3

PathSystem scenario_three(const CubeFace& K, const Pairing& Yin, Trace& tr) {
    tr.push_back("thm-cube/scenario-3");
    const int s1 = Yin[0].first;
    std::vector<int> rest;
    for (int x : terminals_of(Yin))
        if (x != s1) rest.push_back(x);
    const int axis = find_unassociated_pair(as_bits(rest), K).axis;
    const int flip = static_cast<int>(flip_of(axis));
    const int vo = bit_of(s1, axis);  // side of s1 plays the role of F^o
    const CubeFace Fo = side(K, axis, vo);
    const CubeFace F = side(K, axis, 1 - vo);
    // Orient every pair with s_i in F^o.
    Pairing Y;
    std::vector<char> swapped;
    for (auto [s, t] : Yin) {
        bool sw = !in_face(Fo, s);
        Y.emplace_back(sw ? t : s, sw ? s : t);
        swapped.push_back(sw ? 1 : 0);
    }
    size_t j2 = 0;
    for (size_t j = 1; j < Y.size(); ++j)
        if ((Y[j].second ^ flip) != s1) {
            j2 = j;
            break;
        }
    require(j2 != 0, tr, "no second pair whose projection misses s1");
    Pairing inF, inFo;
    std::vector<size_t> idxF;
    std::vector<int> avoidF{Y[0].second, Y[j2].second}, avoidFo;
    for (size_t i = 0; i < Y.size(); ++i) {
        if (i == 0 || i == j2) continue;
        inF.emplace_back(Y[i].first ^ flip, Y[i].second);
        idxF.push_back(i);
        avoidFo.push_back(Y[i].first);
    }
    inFo.emplace_back(Y[0].first, Y[0].second ^ flip);
    inFo.emplace_back(Y[j2].first, Y[j2].second ^ flip);
    PathSystem LF = cube_link(F, inF, avoidF, tr);
    PathSystem LFo = cube_link(Fo, inFo, avoidFo, tr);
    PathSystem out(Y.size());
    for (size_t j = 0; j < idxF.size(); ++j) out[idxF[j]] = join(Path{Y[idxF[j]].first}, LF[j]);
    out[0] = join(LFo[0], Path{Y[0].second});
    out[j2] = join(LFo[1], Path{Y[j2].second});
    for (size_t i = 0; i < out.size(); ++i)
        if (swapped[i]) out[i] = reversed(out[i]);
    return out;
}

PathSystem cube_solve(const CubeFace& K, const Pairing& Y, Trace& tr) {
    const std::vector<int> X = terminals_of(Y);
    const int m = K.dim();
    // Scenario 1: every terminal on one facet.
    Bits agree = K.free_axes();
    for (int x : X) agree &= ~(static_cast<Bits>(x) ^ static_cast<Bits>(X[0]));
    if (agree) return scenario_one(K, Y, lowest_bit(agree), tr);
    // Scenario 2: some pair in a facet.
    for (size_t i = 0; i < Y.size(); ++i) {
        Bits same = K.free_axes() & ~(static_cast<Bits>(Y[i].first) ^ static_cast<Bits>(Y[i].second));
        if (same) return scenario_two(K, Y, i, lowest_bit(same), tr);
    }
    (void)m;
    return scenario_three(K, Y, tr);
}

PathSystem cube_solve_strong(const CubeFace& K, const Pairing& Y, int x, Trace& tr) {
    tr.push_back("thm-cube-strong");
    if (K.dim() <= 4) return cube_oracle(K, Y, {x}, tr);
    std::vector<int> X = terminals_of(Y);
    const int axis = find_unassociated_pair(as_bits(X), K).axis;
    const int val = 1 - bit_of(x, axis);
    const CubeFace F = side(K, axis, val);
    Pairing proj;
    for (auto [s, t] : Y) proj.emplace_back(onto(s, axis, val), onto(t, axis, val));
    return lift_through(Y, cube_link(F, proj, {}, tr));
}

}  // namespace
}  // namespace detail

using namespace detail;

namespace {

void check_terminals(int d, const Pairing& Y, const std::vector<int>& avoid) {
    if (d < 1 || d > 20) throw std::invalid_argument("cube dimension out of range");
    std::vector<int> all = terminals_of(Y);
    all.insert(all.end(), avoid.begin(), avoid.end());
    std::set<int> seen;
    for (int v : all) {
        if (v < 0 || v >= (1 << d)) throw std::invalid_argument("vertex outside the cube");
        if (!seen.insert(v).second) throw std::invalid_argument("terminals must be distinct");
    }
}

}  // namespace

std::vector<std::optional<Path>> short_distance_paths(int d, const CubeFace& F, const Pairing& Y) {
    if (F.d != d || !F.is_facet()) throw std::invalid_argument("short_distance_paths: F must be a facet of Q_d");
    std::vector<int> X = terminals_of(Y);
    for (int x : X)
        if (!F.contains(static_cast<Bits>(x))) throw std::invalid_argument("short_distance_paths: terminal outside F");
    std::vector<std::optional<Path>> out;
    for (auto [s, t] : Y) out.push_back(cube_bfs(F, s, t, X));
    return out;
}

MxPaths build_Mx_paths(int d, const CubeFace& F, const Pairing& Y) {
    if (F.d != d || !F.is_facet()) throw std::invalid_argument("build_Mx_paths: F must be a facet of Q_d");
    if (Y.empty() || !F.contains(static_cast<Bits>(Y[0].first)) || !F.contains(static_cast<Bits>(Y[0].second)))
        throw std::invalid_argument("build_Mx_paths: the first pair must lie in F");
    const int axis = lowest_bit(F.mask);
    Trace tr;
    auto c = classify_and_route(CubeFace::whole(d), axis, static_cast<int>((F.values >> axis) & 1U), Y, tr);
    return MxPaths{c.X0, c.X1, c.X2, c.X3, c.X4, c.M};
}

LinkageCertificate solve_cube(int d, const Pairing& Y, const std::vector<int>& avoid) {
    check_terminals(d, Y, avoid);
    const int cap = (d + 1) / 2;
    const int total = 2 * static_cast<int>(Y.size()) + static_cast<int>(avoid.size());
    if (total > 2 * cap + (d % 2 == 0 ? 1 : 0))
        throw std::invalid_argument("solve_cube: more terminals than the cube can link");
    if (d == 3 && Y.size() == 2 && avoid.empty()) {
        LinkageCertificate c = solve_3polytope(build_cube_polytope(3), Y);
        c.trace.insert(c.trace.begin(), "thm-cube/three-cube");
        return c;
    }
    LinkageCertificate cert;
    cert.trace.push_back("thm-cube");
    cert.paths = cube_link(CubeFace::whole(d), Y, avoid, cert.trace);
    check_linkage(cube_graph(d), Y, cert.paths, avoid, cert.trace);
    cert.linked = true;
    return cert;
}

LinkageCertificate solve_cube_strong(int d, const Pairing& Y, int x) {
    check_terminals(d, Y, {x});
    if (2 * static_cast<int>(Y.size()) + 1 > d + 1)
        throw std::invalid_argument("solve_cube_strong: at most d+1 terminals");
    LinkageCertificate cert;
    cert.trace.push_back("thm-cube-strong");
    cert.paths = cube_link(CubeFace::whole(d), Y, {x}, cert.trace);
    check_linkage(cube_graph(d), Y, cert.paths, {x}, cert.trace);
    cert.linked = true;
    return cert;
}

}  // namespace cubelink
