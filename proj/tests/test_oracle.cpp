#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "cubelink/linkage.hpp"
#include "cubelink/oracle.hpp"
#include "naive_linkage.hpp"

using namespace cubelink;
using ojson = nlohmann::ordered_json;

namespace {

int b(const char* s) { return static_cast<int>(parse_bits(s)); }

std::vector<int> range_without(int n, std::vector<int> drop) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) out.push_back(v);
    return out;
}

CensusHost cube_host(int d) {
    CensusHost h;
    h.name = "Q_" + std::to_string(d);
    h.graph = cube_graph(d);
    h.cube_dim = d;
    for (int v = 0; v < (1 << d); ++v) h.labels.push_back(to_string(static_cast<Bits>(v), d));
    return h;
}

WitnessDetector config_3F(const Polytope& P) {
    return [&P](const Pairing& Y) -> std::optional<std::string> {
        if (auto w = detect_config_3F(P, Y)) return w->kind;
        return std::nullopt;
    };
}

ojson without_timing(ojson j) {
    j.erase("wall_time_ms");
    return j;
}

CensusOptions exhaustive(int k) {
    CensusOptions o;
    o.k = k;
    o.exhaustive = true;
    o.threads = 1;
    return o;
}

}  // namespace

TEST_CASE("oracle verdicts on small cubes") {
    const Graph Q3 = cube_graph(3);
    const OracleResult cyclic = oracle_linkage(Q3, {{b("000"), b("110")}, {b("010"), b("100")}});
    CHECK(cyclic.verdict == Verdict::Unlinkable);
    const OracleResult crossing = oracle_linkage(Q3, {{b("000"), b("110")}, {b("011"), b("101")}});
    REQUIRE(crossing.verdict == Verdict::Linked);
    CHECK(validate_linkage(Q3, {{b("000"), b("110")}, {b("011"), b("101")}}, crossing.paths).ok);
    CHECK(std::string(to_string(Verdict::Timeout)) == "timeout");
}

TEST_CASE("oracle agrees with the naive search on every 2-pairing of Q3, Q4 and the rhombic dodecahedron") {
    struct Case {
        Graph G;
        naive::Adjacency adj;
        std::vector<int> vertices;
    };
    std::vector<Case> cases;
    cases.push_back({cube_graph(3), naive::cube(3), range_without(8, {})});
    cases.push_back({cube_graph(4), naive::cube(4), range_without(16, {})});
    // The link of 0000 in Q4, kept in cube coordinates with 0000 and 1111 isolated.
    Graph link4(16);
    const naive::Adjacency adj4 = naive::cube_link(4, 0);
    for (int u = 0; u < 16; ++u)
        for (int w : adj4[static_cast<size_t>(u)]) link4.add_edge(u, w);
    link4.finalize();
    cases.push_back({link4, adj4, range_without(16, {0, 15})});

    for (const Case& c : cases) {
        const auto& V = c.vertices;
        long long disagreements = 0, total = 0;
        for (size_t i = 0; i < V.size(); ++i)
            for (size_t j = i + 1; j < V.size(); ++j)
                for (size_t k = j + 1; k < V.size(); ++k)
                    for (size_t l = k + 1; l < V.size(); ++l)
                        for (const auto& Y : naive::two_pairings(V[i], V[j], V[k], V[l])) {
                            const Pairing P(Y.begin(), Y.end());
                            const OracleResult r = oracle_linkage(c.G, P);
                            const bool expected = naive::linked(c.adj, Y);
                            if ((r.verdict == Verdict::Linked) != expected) ++disagreements;
                            if (r.verdict == Verdict::Linked && !naive::valid(c.adj, Y, r.paths)) ++disagreements;
                            ++total;
                        }
        CHECK(disagreements == 0);
        CHECK(total > 0);
    }
}

TEST_CASE("oracle verdict does not depend on pair order") {
    std::mt19937 rng(17);
    const Graph Q4 = cube_graph(4);
    const Graph Q5 = cube_graph(5);
    for (int trial = 0; trial < 200; ++trial) {
        const bool small = trial % 2 == 0;
        const Graph& G = small ? Q4 : Q5;
        const int n = G.size(), k = 3;
        std::vector<int> V(static_cast<size_t>(n));
        std::iota(V.begin(), V.end(), 0);
        std::shuffle(V.begin(), V.end(), rng);
        Pairing Y;
        for (int i = 0; i < k; ++i) Y.emplace_back(V[static_cast<size_t>(2 * i)], V[static_cast<size_t>(2 * i + 1)]);
        const Verdict a = oracle_linkage(G, Y).verdict;
        std::reverse(Y.begin(), Y.end());
        std::swap(Y[0].first, Y[0].second);
        CHECK(oracle_linkage(G, Y).verdict == a);
    }
}

TEST_CASE("oracle honours its node budget and avoid set") {
    const Graph Q4 = cube_graph(4);
    OracleBudget tiny;
    tiny.max_nodes = 1;
    const OracleResult r = oracle_linkage(Q4, {{0, 15}, {3, 12}, {5, 10}}, {}, tiny);
    CHECK(r.verdict == Verdict::Timeout);

    const OracleResult a = oracle_linkage(Q4, {{0, 15}, {3, 12}}, {1, 2, 4, 8});
    CHECK(a.verdict == Verdict::Unlinkable);  // every neighbour of 0 is avoided
}

TEST_CASE("oracle timeout default and environment override") {
    unsetenv("CUBELINK_ORACLE_TIMEOUT_MS");
    CHECK(default_oracle_timeout() == std::chrono::milliseconds(10000));
    setenv("CUBELINK_ORACLE_TIMEOUT_MS", "250", 1);
    CHECK(default_oracle_timeout() == std::chrono::milliseconds(250));
    unsetenv("CUBELINK_ORACLE_TIMEOUT_MS");
}

TEST_CASE("perfect matchings") {
    CHECK(perfect_matchings({1, 2, 3, 4}).size() == 3);
    CHECK(perfect_matchings({0, 1, 2, 3, 4, 5}).size() == 15);
    CHECK(perfect_matchings({0, 1, 2, 3, 4, 5, 6, 7}).size() == 105);
}

TEST_CASE("census of the 3-cube: 210 pairings, 6 unlinked, all in Configuration 3F") {
    const Polytope Q3 = build_cube_polytope(3);
    const ojson r = census(cube_host(3), exhaustive(2), config_3F(Q3));
    CHECK(r["total"] == 210);
    CHECK(r["linked"] == 204);
    CHECK(r["unlinked"] == 6);
    CHECK(r["timeouts"] == 0);
    CHECK(r["unlinked_with_witness"] == 6);
    CHECK(r["unlinked_without_witness"] == 0);
    CHECK(r["witness_on_linked"] == 0);
    CHECK(r["symmetry_classes"] == 12);
    CHECK(r["obstruction_histogram"]["config-3F"] == 6);
}

TEST_CASE("census of the 4-cube: 5460 pairings, none unlinked") {
    const ojson r = census(cube_host(4), exhaustive(2));
    CHECK(r["total"] == 5460);
    CHECK(r["unlinked"] == 0);
}

TEST_CASE("census of the rhombic dodecahedron: 3003 pairings, 12 unlinked, all in Configuration 3F") {
    const Polytope L = link_polytope_of_cube(4, 0);
    CensusHost h;
    h.name = "link(Q_4)";
    h.graph = L.graph();
    h.labels = L.labels();
    const ojson r = census(h, exhaustive(2), config_3F(L));
    CHECK(r["total"] == 3003);
    CHECK(r["unlinked"] == 12);
    CHECK(r["unlinked_with_witness"] == 12);
    CHECK(r["witness_on_linked"] == 0);
}

TEST_CASE("census reports are reproducible") {
    const ojson a = census(cube_host(3), exhaustive(2));
    const ojson b2 = census(cube_host(3), exhaustive(2));
    CHECK(without_timing(a).dump() == without_timing(b2).dump());

    CensusOptions s;
    s.k = 3;
    s.exhaustive = false;
    s.samples = 300;
    s.seed = 7;
    s.threads = 1;
    const ojson x = census(cube_host(5), s);
    const ojson y = census(cube_host(5), s);
    CHECK(without_timing(x).dump() == without_timing(y).dump());
    CHECK(x["total"] == 300);
    CHECK(x["unlinked"] == 0);
}

TEST_CASE("census refuses oversized exhaustive runs") {
    CensusOptions o = exhaustive(4);
    o.max_instances = 1000;
    CHECK_THROWS_AS(census(cube_host(5), o), std::invalid_argument);
}

TEST_CASE("separators of small cubes are vertex neighbourhoods") {
    const SeparatorCensus s3 = separator_census(3);
    CHECK(s3.subsets == 56);
    CHECK(s3.separators == 8);
    CHECK(s3.all_neighbourhoods);
    CHECK(s3.all_independent);
    CHECK(s3.all_two_components);
    const SeparatorCensus s4 = separator_census(4);
    CHECK(s4.subsets == 1820);
    CHECK(s4.separators == 16);
    CHECK(s4.all_neighbourhoods);
    CHECK(s4.all_independent);
    CHECK_THROWS(separator_census(5));
}

TEST_CASE("no two vertices share three neighbours") {
    for (int d = 1; d <= 6; ++d) CHECK(common_neighbor_check(cube_graph(d)));
    CHECK(common_neighbor_check(link_polytope_of_cube(5, 0).graph()));
    CHECK(common_neighbor_check(link_polytope_of_cube(6, 9).graph()));
    Graph K23(5);
    for (int u : {0, 1})
        for (int w : {2, 3, 4}) K23.add_edge(u, w);
    K23.finalize();
    CHECK_FALSE(common_neighbor_check(K23));
}

TEST_CASE("canonical pairings are invariant under cube symmetries") {
    std::mt19937 rng(4);
    const int d = 4;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> V(16);
        std::iota(V.begin(), V.end(), 0);
        std::shuffle(V.begin(), V.end(), rng);
        const Pairing Y{{V[0], V[1]}, {V[2], V[3]}};
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        const int flip = static_cast<int>(rng() % 16);
        auto map = [&](int v) {
            int w = 0;
            for (int i = 0; i < d; ++i)
                if ((v >> i) & 1) w |= 1 << perm[static_cast<size_t>(i)];
            return w ^ flip;
        };
        const Pairing Z{{map(V[2]), map(V[3])}, {map(V[1]), map(V[0])}};
        CHECK(canonical_cube_pairing(Y, d) == canonical_cube_pairing(Z, d));
        CHECK(canonical_cube_pairing(Y, d, V[4]) == canonical_cube_pairing(Z, d, map(V[4])));
    }
}
