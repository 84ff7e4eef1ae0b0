#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cubelink/graph.hpp"
#include "cubelink/hypercube.hpp"
#include "cubelink/paths.hpp"
#include "naive_linkage.hpp"

using namespace cubelink;

namespace {

int b(const char* s) { return static_cast<int>(parse_bits(s)); }

Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    Graph G(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) G.add_edge(u, v);
    G.finalize();
    return G;
}

// Is there an A-B path in G after deleting `gone`? (A vertex in A ∩ B counts as a path.)
bool connected_after(const Graph& G, const std::vector<int>& A, const std::vector<int>& B, const std::vector<char>& gone) {
    std::vector<char> seen(static_cast<size_t>(G.size()), 0);
    std::vector<int> stack;
    for (int a : A)
        if (!gone[static_cast<size_t>(a)]) {
            seen[static_cast<size_t>(a)] = 1;
            stack.push_back(a);
        }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : G.neighbors(u))
            if (!gone[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    for (int x : B)
        if (seen[static_cast<size_t>(x)]) return true;
    return false;
}

// Smallest vertex set (avoiding `forbidden`, which is deleted anyway) separating A from B.
int min_separator(const Graph& G, const std::vector<int>& A, const std::vector<int>& B, const std::vector<int>& forbidden) {
    const int n = G.size();
    int best = n;
    for (unsigned S = 0; S < (1U << n); ++S) {
        const int size = __builtin_popcount(S);
        if (size >= best) continue;
        std::vector<char> gone(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) gone[static_cast<size_t>(v)] = ((S >> v) & 1U) != 0;
        for (int f : forbidden) gone[static_cast<size_t>(f)] = 1;
        if (!connected_after(G, A, B, gone)) best = size;
    }
    return best;
}

void check_fan(const Graph& G, const std::vector<int>& A, const std::vector<int>& B, const MengerResult& r, int k) {
    REQUIRE(r.paths.size() == static_cast<size_t>(k));
    std::set<int> used;
    const std::set<int> As(A.begin(), A.end()), Bs(B.begin(), B.end());
    for (const Path& p : r.paths) {
        REQUIRE(!p.empty());
        CHECK(As.count(p.front()));
        CHECK(Bs.count(p.back()));
        for (size_t i = 0; i < p.size(); ++i) {
            CHECK(used.insert(p[i]).second);
            if (i > 0) CHECK(G.adjacent(p[i - 1], p[i]));
            if (i > 0) CHECK(As.count(p[i]) == 0);
            if (i + 1 < p.size()) CHECK(Bs.count(p[i]) == 0);
        }
    }
}

}  // namespace

TEST_CASE("Menger fans in the 3-cube") {
    const Graph Q3 = cube_graph(3);
    const MengerResult three = disjoint_paths(Q3, {b("000")}, {b("111")}, 3);
    CHECK(three.ok);
    // With single-vertex A and B the fan is internally disjoint; check endpoints and edges.
    for (const Path& p : three.paths) {
        CHECK(p.front() == b("000"));
        CHECK(p.back() == b("111"));
        CHECK(p.size() == 4);
    }
    const MengerResult four = disjoint_paths(Q3, {b("000")}, {b("111")}, 4);
    CHECK_FALSE(four.ok);
    REQUIRE(four.cut.size() == 3);
    std::vector<int> cut = four.cut;
    std::sort(cut.begin(), cut.end());
    const std::vector<int> n0{b("001"), b("010"), b("100")}, n7{b("011"), b("101"), b("110")};
    CHECK((cut == n0 || cut == n7));
}

TEST_CASE("Menger: fans between adjacent vertices use their edge once") {
    const Graph Q3 = cube_graph(3);
    const MengerResult r = disjoint_paths(Q3, {0}, {1}, 3);
    REQUIRE(r.ok);
    int direct = 0;
    std::set<int> inner;
    for (const Path& p : r.paths) {
        CHECK(p.front() == 0);
        CHECK(p.back() == 1);
        if (p.size() == 2) ++direct;
        for (size_t i = 1; i + 1 < p.size(); ++i) CHECK(inner.insert(p[i]).second);
    }
    CHECK(direct == 1);
    CHECK_FALSE(disjoint_paths(Q3, {0}, {1}, 4).ok);
}

TEST_CASE("Menger: shared vertices are one-vertex paths") {
    const Graph Q3 = cube_graph(3);
    const MengerResult r = disjoint_paths(Q3, {0, 1}, {1, 7}, 2);
    REQUIRE(r.ok);
    bool single = false;
    for (const Path& p : r.paths) single = single || (p.size() == 1 && p[0] == 1);
    CHECK(single);
}

TEST_CASE("Menger succeeds exactly when no smaller separator exists") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 5);
        const Graph G = random_graph(n, 0.35, rng);
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::vector<int> A{perm[0], perm[1]}, B{perm[2], perm[3], perm[1]};
        const std::vector<int> forbidden{perm[4]};
        const int sep = min_separator(G, A, B, forbidden);
        for (int k = 1; k <= 4; ++k) {
            const MengerResult r = disjoint_paths(G, A, B, k, forbidden);
            CHECK(r.ok == (sep >= k));
            if (r.ok) {
                check_fan(G, A, B, r, k);
                for (const Path& p : r.paths) CHECK(std::find(p.begin(), p.end(), perm[4]) == p.end());
            } else {
                CHECK(static_cast<int>(r.cut.size()) < k);
                std::vector<char> gone(static_cast<size_t>(n), 0);
                for (int v : r.cut) gone[static_cast<size_t>(v)] = 1;
                gone[static_cast<size_t>(perm[4])] = 1;
                CHECK_FALSE(connected_after(G, A, B, gone));
            }
        }
    }
}

TEST_CASE("X-valid paths") {
    const Graph Q3 = cube_graph(3);
    const std::vector<int> X{b("001"), b("010"), b("110"), b("101"), b("000"), b("011")};
    CHECK_FALSE(x_valid_path(Q3, b("000"), b("011"), X));
    auto direct = x_valid_path(Q3, b("000"), b("001"), {b("000"), b("001")});
    REQUIRE(direct);
    CHECK(direct->size() == 2);
    auto shortest = x_valid_path(Q3, b("000"), b("111"), {b("000"), b("111")});
    REQUIRE(shortest);
    CHECK(shortest->size() == 4);
}

TEST_CASE("X-valid paths agree with a naive search") {
    std::mt19937 rng(9);
    const naive::Adjacency adj = naive::cube(4);
    const Graph Q4 = cube_graph(4);
    for (int trial = 0; trial < 400; ++trial) {
        const int s = static_cast<int>(rng() % 16), t = static_cast<int>(rng() % 16);
        if (s == t) continue;
        std::vector<int> X{s, t};
        for (int i = 0; i < 7; ++i) X.push_back(static_cast<int>(rng() % 16));
        std::vector<int> avoid;
        for (int x : X)
            if (x != s && x != t) avoid.push_back(x);
        std::sort(avoid.begin(), avoid.end());
        avoid.erase(std::unique(avoid.begin(), avoid.end()), avoid.end());
        const bool expected = naive::linked(adj, {{s, t}}, avoid);
        auto p = x_valid_path(Q4, s, t, X);
        CHECK(p.has_value() == expected);
        if (p) CHECK(naive::valid(adj, {{s, t}}, {*p}, avoid));
    }
}

TEST_CASE("linear function paths keep inner vertices on the positive side") {
    AffineFunction f{{1.0, 1.0, 1.0}, -1.0};
    const Path p = linear_function_path(3, f, static_cast<Bits>(b("100")), static_cast<Bits>(b("010")));
    REQUIRE(p.size() >= 3);
    CHECK(p.front() == b("100"));
    CHECK(p.back() == b("010"));
    for (size_t i = 1; i + 1 < p.size(); ++i) CHECK(f(static_cast<Bits>(p[i])) > 0);

    AffineFunction g{{1.0, 0.0, 0.0}, -0.5};
    const Path q = linear_function_path(3, g, static_cast<Bits>(b("001")), static_cast<Bits>(b("111")));
    for (int v : q) CHECK(g(static_cast<Bits>(v)) > 0);
    CHECK(linear_function_path(3, g, 1, 1) == Path{1});

    AffineFunction negative{{-1.0, -1.0, -1.0}, -1.0};
    CHECK_THROWS_AS(linear_function_path(3, negative, 0, 7), PreconditionViolation);

    std::mt19937 rng(2);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 3 + trial % 4;
        AffineFunction h;
        for (int i = 0; i < d; ++i) h.coeffs.push_back(coef(rng));
        h.constant = coef(rng);
        const Bits u = rng() & full_mask(d), v = rng() & full_mask(d);
        if (h(u) < 0 || h(v) < 0) continue;
        bool some_positive = false;
        for (Bits x = 0; x <= full_mask(d); ++x) some_positive = some_positive || h(x) > 0;
        if (!some_positive) continue;
        const Path r = linear_function_path(d, h, u, v);
        CHECK(r.front() == static_cast<int>(u));
        CHECK(r.back() == static_cast<int>(v));
        for (size_t i = 1; i < r.size(); ++i) CHECK(dist(static_cast<Bits>(r[i - 1]), static_cast<Bits>(r[i])) == 1);
        for (size_t i = 1; i + 1 < r.size(); ++i) CHECK(h(static_cast<Bits>(r[i])) > 0);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("linkage validation names the first violation") {
    const Graph Q4 = cube_graph(4);
    const Pairing Y{{0, 15}, {3, 12}};
    const PathSystem good{{0, 1, 5, 7, 15}, {3, 2, 10, 8, 12}};
    CHECK(validate_linkage(Q4, Y, good).ok);

    const PathSystem shared{{0, 1, 5, 7, 15}, {3, 1, 9, 8, 12}};
    auto r1 = validate_linkage(Q4, Y, shared);
    CHECK_FALSE(r1.ok);
    CHECK(r1.message.find("share vertex 1") != std::string::npos);

    const PathSystem jump{{0, 3, 7, 15}, {3, 2, 10, 8, 12}};
    auto r2 = validate_linkage(Q4, Y, jump);
    CHECK_FALSE(r2.ok);
    CHECK(r2.message.find("0-3") != std::string::npos);

    auto r3 = validate_linkage(Q4, Y, good, {5});
    CHECK_FALSE(r3.ok);

    auto r4 = validate_linkage(Q4, Y, {{0, 1, 5, 7, 15}});
    CHECK_FALSE(r4.ok);
}
