#include <doctest.h>

#include <random>
#include <set>

#include "cubelink/hypercube.hpp"

using namespace cubelink;

namespace {

Bits b(const char* s) { return parse_bits(s); }

std::vector<Bits> all_vertices(int d) {
    std::vector<Bits> v;
    for (Bits x = 0; x < (Bits{1} << d); ++x) v.push_back(x);
    return v;
}

}  // namespace

TEST_CASE("labels are binary strings with coordinate 0 rightmost") {
    CHECK(b("001") == 1);
    CHECK(b("100") == 4);
    CHECK(to_string(6, 3) == "110");
    CHECK(to_string(b("0101101"), 7) == "0101101");
    CHECK_THROWS(parse_bits("01x"));
    CHECK_THROWS(parse_bits(""));
}

TEST_CASE("distance is the Hamming distance") {
    CHECK(dist(b("000"), b("111")) == 3);
    CHECK(dist(b("0110"), b("0101")) == 2);
    CHECK(dist(b("10101"), b("10101")) == 0);
}

TEST_CASE("opposite vertex inside a face") {
    CHECK(opposite_vertex(b("000"), CubeFace::whole(3)) == b("111"));
    const CubeFace F = CubeFace::facet(3, 2, false);  // x_2 = 0
    CHECK(opposite_vertex(b("001"), F) == b("010"));
    CHECK(F.contains(opposite_vertex(b("011"), F)));
}

TEST_CASE("opposite facet flips the fixed value") {
    const CubeFace F = CubeFace::facet(4, 1, true);
    const CubeFace Fo = opposite_facet(F);
    CHECK(Fo == CubeFace::facet(4, 1, false));
    CHECK(opposite_facet(Fo) == F);
    CHECK_THROWS(opposite_facet(CubeFace::whole(4)));
}

TEST_CASE("projection onto the opposite facet is a graph isomorphism") {
    for (int d = 2; d <= 5; ++d)
        for (int axis = 0; axis < d; ++axis) {
            const CubeFace F = CubeFace::facet(d, axis, false);
            const CubeFace Fo = opposite_facet(F);
            std::set<Bits> image;
            for (Bits x : F.vertices()) {
                const Bits y = project(x, Fo);
                CHECK(Fo.contains(y));
                CHECK(dist(x, y) == 1);
                image.insert(y);
                for (Bits z : F.vertices())
                    CHECK((dist(x, z) == 1) == (dist(project(x, Fo), project(z, Fo)) == 1));
            }
            CHECK(image.size() == F.vertices().size());
            for (Bits y : Fo.vertices()) CHECK(project(y, Fo) == y);
        }
}

TEST_CASE("smallest face of two vertices has dimension equal to their distance") {
    for (int d = 1; d <= 5; ++d)
        for (Bits u : all_vertices(d))
            for (Bits v : all_vertices(d)) {
                const CubeFace F = smallest_face({u, v}, d);
                CHECK(F.dim() == dist(u, v));
                CHECK(F.contains(u));
                CHECK(F.contains(v));
            }
    const CubeFace F = CubeFace::facet(3, 0, true);
    CHECK(smallest_face({b("001"), opposite_vertex(b("001"), F)}, 3) == F);
}

TEST_CASE("associated directions of small sets") {
    CHECK(associated_pairs({b("000"), b("111")}, 3).empty());
    const auto a = associated_pairs({b("000"), b("001"), b("011")}, 3);
    REQUIRE(a.size() == 2);
    CHECK(a[0].axis == 0);
    CHECK(a[1].axis == 1);
    CHECK(associated_pairs({b("101")}, 3).empty());
    CHECK(find_unassociated_pair({b("000"), b("001"), b("011")}, 3).axis == 2);
    CHECK(find_unassociated_pair({b("0000")}, 4).axis == 0);
}

TEST_CASE("a nonempty set Z is associated with at most |Z| - 1 directions") {
    // Exhaustive for d <= 3.
    for (int d = 1; d <= 3; ++d)
        for (Bits sub = 1; sub < (Bits{1} << (1 << d)); ++sub) {
            std::vector<Bits> Z;
            for (Bits v = 0; v < (Bits{1} << d); ++v)
                if ((sub >> v) & 1U) Z.push_back(v);
            CHECK(associated_pairs(Z, d).size() <= Z.size() - 1);
        }
    // Sampled for d = 4..7 with |Z| <= d, where an unassociated direction must exist.
    std::mt19937 rng(11);
    for (int d = 4; d <= 7; ++d)
        for (int trial = 0; trial < 2000; ++trial) {
            std::set<Bits> S;
            const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
            while (static_cast<int>(S.size()) < size) S.insert(rng() & full_mask(d));
            std::vector<Bits> Z(S.begin(), S.end());
            CHECK(associated_pairs(Z, d).size() <= Z.size() - 1);
            const int axis = find_unassociated_pair(Z, d).axis;
            for (Bits z : Z) CHECK(S.count(z ^ (Bits{1} << axis)) == 0);
        }
}

TEST_CASE("two vertices of a cube share at most two neighbours") {
    for (int d = 1; d <= 6; ++d)
        for (Bits u : all_vertices(d))
            for (Bits v = u + 1; v < (Bits{1} << d); ++v) {
                int common = 0;
                for (int i = 0; i < d; ++i)
                    if (dist(u ^ (Bits{1} << i), v) == 1) ++common;
                CHECK(common <= 2);
            }
}

TEST_CASE("face containment and vertex lists") {
    const CubeFace F = CubeFace::facet(4, 3, true);
    CHECK(F.dim() == 3);
    CHECK(F.vertices().size() == 8);
    CHECK(CubeFace::whole(4).contains(F));
    CHECK_FALSE(F.contains(CubeFace::whole(4)));
    CHECK(cube_neighbors(b("1000"), F).size() == 3);
}
