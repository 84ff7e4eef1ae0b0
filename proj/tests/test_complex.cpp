#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubelink/polytope.hpp"

using namespace cubelink;

namespace {

std::vector<int> sorted_vertices(const Complex& C) { return C.vertices(); }

std::vector<int> range_without(int n, std::vector<int> drop) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("the 3-cube has 27 nonempty faces, 28 with the empty face") {
    const Polytope Q3 = build_cube_polytope(3);
    CHECK(Q3.face_count() == 27);
    CHECK(Q3.face_count_with_empty() == 28);
    CHECK(Q3.faces_of_dim(0).size() == 8);
    CHECK(Q3.faces_of_dim(1).size() == 12);
    CHECK(Q3.faces_of_dim(2).size() == 6);
    CHECK(Q3.cubical());
}

TEST_CASE("cube face counts are powers of three") {
    int expected = 1;
    for (int d = 1; d <= 6; ++d) {
        expected *= 3;
        const Polytope Q = build_cube_polytope(d);
        CHECK(Q.face_count() == expected);
        CHECK(Q.facets().size() == static_cast<size_t>(2 * d));
        CHECK(Q.graph().edge_count() == static_cast<size_t>(d) << (d - 1));
    }
}

TEST_CASE("every proper face of a cube has 2^j vertices") {
    const Polytope Q = build_cube_polytope(5);
    for (const auto& f : Q.faces()) CHECK(f.vertices.size() == size_t{1} << f.dim);
}

TEST_CASE("link of a cube vertex: sizes") {
    const Polytope hex = link_polytope_of_cube(3, 0);
    CHECK(hex.dim() == 2);
    CHECK(hex.vertex_count() == 6);
    CHECK(hex.facets().size() == 6);

    const Polytope rd = link_polytope_of_cube(4, 5);
    CHECK(rd.dim() == 3);
    CHECK(rd.vertex_count() == 14);
    CHECK(rd.facets().size() == 12);
    for (int F : rd.facets()) CHECK(rd.face(F).vertices.size() == 4);

    const Polytope l5 = link_polytope_of_cube(5, 0);
    CHECK(l5.dim() == 4);
    CHECK(l5.vertex_count() == 30);
    CHECK(l5.facets().size() == 20);

    const Polytope l6 = link_polytope_of_cube(6, 0);
    CHECK(l6.dim() == 5);
    CHECK(l6.vertex_count() == 62);
    CHECK(l6.facets().size() == 30);
}

TEST_CASE("link polytopes pass cubical validation when rebuilt from their facets") {
    for (int D = 3; D <= 6; ++D) {
        const Polytope L = link_polytope_of_cube(D, 3 % (1 << D));
        std::vector<std::vector<int>> facets;
        for (int F : L.facets()) facets.push_back(L.face(F).vertices);
        const Polytope R = build_from_incidence(L.dim(), L.vertex_count(), facets, L.labels());
        CHECK(R.cubical());
        CHECK(R.face_count() == L.face_count());
        CHECK(R.graph().edge_count() == L.graph().edge_count());
    }
}

TEST_CASE("rhombic dodecahedron from an explicit incidence list") {
    // Cube vertices 0..7 of a 3-cube plus the six pyramid apexes 8..13 over its faces;
    // each cube edge together with the two adjacent apexes is a rhombus.
    const int apex[3][2] = {{8, 9}, {10, 11}, {12, 13}};  // apex[axis][value]
    std::vector<std::vector<int>> facets;
    for (int u = 0; u < 8; ++u)
        for (int i = 0; i < 3; ++i) {
            const int v = u ^ (1 << i);
            if (v < u) continue;
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            facets.push_back({u, v, apex[j][(u >> j) & 1], apex[k][(u >> k) & 1]});
        }
    const Polytope P = build_from_incidence(3, 14, facets);
    CHECK(P.cubical());
    CHECK(P.facets().size() == 12);
    CHECK(P.graph().edge_count() == 24);
}

TEST_CASE("non-cubical incidence is rejected") {
    // A square pyramid has a triangular facet.
    const std::vector<std::vector<int>> pyramid{{0, 1, 2, 3}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    CHECK_THROWS_AS(build_from_incidence(3, 5, pyramid), NotCubical);
}

TEST_CASE("star, antistar and link of a cube vertex") {
    for (int d = 3; d <= 5; ++d) {
        const Polytope Q = build_cube_polytope(d);
        const Complex B = Complex::boundary(Q);
        const int n = 1 << d;
        for (int v = 0; v < n; v += 3) {
            const int o = v ^ (n - 1);
            CHECK(sorted_vertices(star(B, v)) == range_without(n, {o}));
            CHECK(sorted_vertices(link(B, v)) == range_without(n, {v, o}));
            CHECK(antistar(B, {v}).faces() == star(B, o).faces());
        }
    }
}

TEST_CASE("boundary, star, antistar and link are strongly connected (d-1)-complexes") {
    for (int d = 3; d <= 5; ++d) {
        const Polytope Q = build_cube_polytope(d);
        const Complex B = Complex::boundary(Q);
        CHECK(is_strongly_connected(B));
        CHECK(B.dim() == d - 1);
        for (int v : {0, 5}) {
            for (const Complex& C : {star(B, v), antistar(B, {v})}) {
                CHECK(is_strongly_connected(C));
                CHECK(C.dim() == d - 1);
            }
            const Complex L = link(B, v);
            CHECK(is_strongly_connected(L));
            CHECK(L.dim() == d - 2);
        }
    }
}

TEST_CASE("antistar of a proper face of a cube is strongly connected") {
    const Polytope Q = build_cube_polytope(4);
    const Complex B = Complex::boundary(Q);
    for (int f = 0; f < Q.top_face(); ++f) {
        const Complex A = antistar(B, Q.face(f).vertices);
        CHECK(is_strongly_connected(A));
        CHECK(A.dim() == 3);
    }
}

TEST_CASE("facet-ridge paths") {
    const Polytope Q = build_cube_polytope(3);
    const Complex B = Complex::boundary(Q);
    const auto& F = Q.facets();
    auto self = facet_ridge_path(B, F[0], F[0]);
    REQUIRE(self);
    CHECK(self->size() == 1);
    // Two opposite squares of the 3-cube are joined through any of the other four.
    const int a = *Q.find_face(std::vector<int>{0, 2, 4, 6});
    const int b = *Q.find_face(std::vector<int>{1, 3, 5, 7});
    auto p = facet_ridge_path(B, a, b);
    REQUIRE(p);
    CHECK(p->size() == 3);
    std::vector<int> others;
    for (int f : F)
        if (f != a && f != b) others.push_back(f);
    CHECK_FALSE(facet_ridge_path(B, a, b, others));
}

TEST_CASE("technical decomposition on sampled choices") {
    std::mt19937 rng(5);
    const std::vector<Polytope> hosts{build_cube_polytope(5), build_cube_polytope(6), link_polytope_of_cube(6, 0)};
    for (const Polytope& P : hosts) {
        int checked = 0;
        while (checked < 15) {
            const int s1 = static_cast<int>(rng() % static_cast<unsigned>(P.vertex_count()));
            const auto& star1 = P.facets_of_vertex(s1);
            const int J = star1[rng() % star1.size()];
            const auto& Jv = P.face(J).vertices;
            const int s2 = Jv[rng() % Jv.size()];
            if (s2 == s1) continue;
            std::vector<int> F1s, F12s;
            for (int f : star1) (P.face_contains(f, s2) ? F12s : F1s).push_back(f);
            if (F1s.empty()) continue;
            const int F1 = F1s[rng() % F1s.size()];
            const int F12 = F12s[rng() % F12s.size()];
            const TechnicalDecomposition T = technical_decomposition(P, s1, s2, F1, F12);
            INFO(T.diagnostic);
            CHECK(T.star_pair_connected);
            CHECK(T.avoids_F12);
            if (!T.single_facet) CHECK(T.spanning_connected);
            ++checked;
        }
    }
}

TEST_CASE("vertex connectivity of cube graphs and links") {
    for (int d = 2; d <= 5; ++d) CHECK(vertex_connectivity(build_cube_polytope(d).graph()) == d);
    CHECK(vertex_connectivity(link_polytope_of_cube(4, 0).graph()) == 3);
    CHECK(vertex_connectivity(link_polytope_of_cube(5, 0).graph()) == 4);
}

TEST_CASE("graph of the antistar of a facet in a star is (d-2)-connected") {
    for (int d = 4; d <= 5; ++d) {
        const Polytope Q = build_cube_polytope(d);
        const Complex S = star(Complex::boundary(Q), 0);
        for (int F : Q.facets_of_vertex(0)) {
            const Complex A = antistar(S, Q.face(F).vertices);
            CHECK(is_strongly_connected(A));
            CHECK(A.dim() == d - 2);
            const Graph G = S.graph();
            std::vector<char> present(static_cast<size_t>(G.size()), 0);
            for (int v : A.vertices()) present[static_cast<size_t>(v)] = 1;
            CHECK(vertex_connectivity(G, present) >= d - 2);
        }
    }
}
