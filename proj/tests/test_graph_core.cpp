#include <catch2/catch_amalgamated.hpp>

#include "kempe/graph.hpp"
#include "kempe/kempe.hpp"
#include "kempe/lvm.hpp"
#include "kempe/oracle.hpp"
#include "test_util.hpp"

using namespace kempe;
using namespace kempe::testutil;

// Fig. 1 colorings of the 3-prism, outer first (o1..o3, i1..i3).
static Coloring prism_frozen_left() { return Coloring(3, {2, 3, 1, 1, 2, 3}); }
static Coloring prism_frozen_right() { return Coloring(3, {3, 1, 2, 1, 2, 3}); }

TEST_CASE("graph construction invariants")
{
    REQUIRE_THROWS_AS(Graph::from_edges(2, {{0, 0}}), kempe_error);
    REQUIRE_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), kempe_error);
    REQUIRE_THROWS_AS(Graph::from_edges(2, {{0, 2}}), kempe_error);
    Graph g = fixtures::prism3();
    REQUIRE(g.n == 6);
    REQUIRE(g.edge_count() == 9);
    REQUIRE(g.is_regular(3));
    REQUIRE(is_three_prism(g));
    REQUIRE_FALSE(is_three_prism(fixtures::complete_bipartite(3, 3)));
}

TEST_CASE("kempe_chain on fixtures")
{
    Graph k3 = fixtures::k3();
    Coloring c(3, {1, 2, 3});
    REQUIRE(kempe_chain(k3, c, 0, 2) == std::vector<int>{0, 1});

    Graph p4 = fixtures::p4();
    Coloring alt(2, {1, 2, 1, 2});
    REQUIRE(kempe_chain(p4, alt, 0, 2) == std::vector<int>{0, 1, 2, 3});

    // frozen prism: every chain is the full union of the two color classes
    Graph pr = fixtures::prism3();
    Coloring fz = prism_frozen_left();
    REQUIRE(is_proper(pr, fz));
    for (int v = 0; v < 6; ++v)
        for (int c2 = 1; c2 <= 3; ++c2) {
            if (c2 == fz(v))
                continue;
            std::vector<int> expect;
            for (int u = 0; u < 6; ++u)
                if (fz(u) == c2 || fz(u) == fz(v))
                    expect.push_back(u);
            REQUIRE(kempe_chain(pr, fz, v, c2) == expect);
            REQUIRE(expect.size() == 4);
        }

    REQUIRE_THROWS_AS(kempe_chain(k3, c, 0, 1), kempe_error); // degenerate
    REQUIRE_THROWS_AS(kempe_chain(k3, c, 0, 4), kempe_error); // out of range
    try {
        kempe_chain(k3, c, 0, 1);
    } catch (const kempe_error& e) {
        REQUIRE(e.code == errc::degenerate_chain);
    }
}

TEST_CASE("apply_move basics")
{
    Graph k3 = fixtures::k3();
    Coloring c(3, {1, 2, 3});
    Coloring after = apply_move(k3, c, {0, 2});
    REQUIRE(after.colors == std::vector<int>{2, 1, 3});

    // involution: reapplying toward the previous color restores the input
    Coloring back = apply_move(k3, after, {0, 1});
    REQUIRE(back == c);

    // frozen prism: every move preserves the color partition
    Graph pr = fixtures::prism3();
    Coloring fz = prism_frozen_left();
    for (int v = 0; v < 6; ++v)
        for (int c2 = 1; c2 <= 3; ++c2) {
            if (c2 == fz(v))
                continue;
            Coloring moved = apply_move(pr, fz, {v, c2});
            REQUIRE(color_partition(moved) == color_partition(fz));
        }
}

TEST_CASE("degeneracy ordering")
{
    REQUIRE(degeneracy_ordering(fixtures::k3()).second == 2);
    REQUIRE(degeneracy_ordering(fixtures::p4()).second == 1);
    REQUIRE(degeneracy_ordering(fixtures::prism3()).second == 3);

    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Graph g = random_graph(rng, 8, 0.4);
        auto [ord, d] = degeneracy_ordering(g);
        for (int v = 0; v < g.n; ++v)
            REQUIRE(static_cast<int>(ord.upper_neighbors(g, v).size()) <= d);
    }
}

TEST_CASE("is_proper with and without lists")
{
    Graph k3 = fixtures::k3();
    REQUIRE(is_proper(k3, Coloring(3, {1, 2, 3})));
    REQUIRE_FALSE(is_proper(k3, Coloring(3, {1, 1, 2})));

    Graph p3 = fixtures::path(3);
    ListAssignment la;
    la.lists = {{1}, {2}, {2}};
    REQUIRE_FALSE(is_proper(p3, Coloring(2, {1, 2, 1}), la));
    la.lists = {{1}, {2}, {1, 2}};
    REQUIRE(is_proper(p3, Coloring(2, {1, 2, 1}), la));
}

TEST_CASE("verify_sequence replay")
{
    Graph k3 = fixtures::k3();
    Coloring start(3, {1, 2, 3});

    MoveSequence empty;
    REQUIRE(verify_sequence(k3, start, empty) == start);

    MoveSequence seq;
    seq.push(0, 2);
    seq.push(2, 1);
    Coloring expect = apply_move(k3, apply_move(k3, start, {0, 2}), {2, 1});
    REQUIRE(verify_sequence(k3, start, seq) == expect);

    MoveSequence degen;
    degen.push(0, 2);
    degen.push(1, 1); // after the first swap v1 is colored 1
    try {
        verify_sequence(k3, start, degen);
        FAIL("expected InvalidMove");
    } catch (const kempe_error& e) {
        REQUIRE(e.code == errc::invalid_move);
        REQUIRE(e.index == 1);
    }

    // off-list intermediate: the chain swap drags v1 to color 1, not in L(v1)
    Graph p2 = Graph::from_edges(2, {{0, 1}});
    ListAssignment la;
    la.lists = {{1, 2}, {2}};
    MoveSequence drag;
    drag.push(0, 2);
    try {
        verify_sequence(p2, Coloring(2, {1, 2}), drag, la);
        FAIL("expected ImproperIntermediate");
    } catch (const kempe_error& e) {
        REQUIRE(e.code == errc::improper_intermediate);
        REQUIRE(e.index == 0);
    }
}

TEST_CASE("lvm baseline")
{
    Graph p4 = fixtures::p4();
    Coloring a(2, {1, 2, 1, 2}), b(2, {2, 1, 2, 1});
    auto seq = lvm_sequence(p4, a, b, 2);
    REQUIRE(verify_sequence(p4, a, seq) == b);

    REQUIRE(lvm_sequence(p4, a, a, 2).length() == 0);

    Graph k3 = fixtures::k3();
    REQUIRE_THROWS_AS(lvm_sequence(k3, Coloring(2, {1, 2, 1}), Coloring(2, {1, 2, 1}), 2),
                      kempe_error);

    // K3 at k=3: every ordered pair of the 6 colorings is reachable
    auto cols = enumerate_colorings(k3, 3);
    REQUIRE(cols.size() == 6);
    for (const auto& x : cols)
        for (const auto& y : cols) {
            auto s = lvm_sequence(k3, x, y, 3);
            REQUIRE(verify_sequence(k3, x, s) == y);
        }
}

TEST_CASE("lvm against oracle on small graphs")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
        int n = 3 + static_cast<int>(rng() % 4); // 3..6
        Graph g = random_graph(rng, n, 0.45);
        auto [ord, d] = degeneracy_ordering(g);
        int k = d + 1;
        if (k > 4)
            continue;
        OracleBudget budget;
        budget.max_n = 8;
        auto rg = build_reconf(g, k, budget);
        if (rg.nodes.size() < 2)
            continue;
        REQUIRE(rg.num_classes == 1); // Las Vergnas-Meyniel guarantee
        std::uniform_int_distribution<int> pick(0, static_cast<int>(rg.nodes.size()) - 1);
        for (int s = 0; s < 5; ++s) {
            const Coloring& x = rg.nodes[pick(rng)];
            const Coloring& y = rg.nodes[pick(rng)];
            auto seq = lvm_sequence(g, x, y, k);
            REQUIRE(verify_sequence(g, x, seq) == y);
        }
    }
}

TEST_CASE("involution and properness properties")
{
    std::mt19937 rng(23);
    for (int t = 0; t < 300; ++t) {
        int n = 2 + static_cast<int>(rng() % 7);
        Graph g = random_graph(rng, n, 0.4);
        int k = 2 + static_cast<int>(rng() % 3);
        auto col = random_proper_coloring(rng, g, k);
        if (!col)
            continue;
        int v = static_cast<int>(rng() % n);
        int c = 1 + static_cast<int>(rng() % k);
        if (c == (*col)(v))
            continue;
        Coloring moved = apply_move(g, *col, {v, c});
        REQUIRE(is_proper(g, moved));
        REQUIRE(apply_move(g, moved, {v, (*col)(v)}) == *col);
    }
}

TEST_CASE("chain partition property")
{
    std::mt19937 rng(31);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng() % 7);
        Graph g = random_graph(rng, n, 0.45);
        int k = 3;
        auto col = random_proper_coloring(rng, g, k);
        if (!col)
            continue;
        int a = 1, b = 2;
        std::vector<int> bichromatic;
        for (int v = 0; v < n; ++v)
            if ((*col)(v) == a || (*col)(v) == b)
                bichromatic.push_back(v);
        std::vector<char> covered(n, 0);
        for (int v : bichromatic) {
            if (covered[v])
                continue;
            int other = (*col)(v) == a ? b : a;
            auto chain = kempe_chain(g, *col, v, other);
            for (int u : chain) {
                REQUIRE_FALSE(covered[u]); // chains never overlap
                covered[u] = 1;
            }
        }
        for (int v : bichromatic)
            REQUIRE(covered[v]);
    }
}
