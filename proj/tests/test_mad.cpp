#include <catch2/catch_amalgamated.hpp>

#include "kempe/mad.hpp"
#include "kempe/oracle.hpp"
#include "test_util.hpp"

using namespace kempe;
using namespace kempe::testutil;

namespace {

// path a--u--b with u on level 1 and a,b on level 2
struct TwoLayerFixture {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}}); // a=0, u=1, b=2
    Layering L;

    TwoLayerFixture()
    {
        L.degree_bound = 2;
        L.layers = {{1}, {0, 2}};
        L.level = {2, 1, 2};
        L.validate(g);
    }
};

// all strictly level-decreasing paths from a to b
int count_level_decreasing_paths(const Graph& g, const Layering& L, int a, int b)
{
    int count = 0;
    std::vector<int> path{a};
    auto rec = [&](auto&& self, int x) -> void {
        if (x == b) {
            ++count;
            return;
        }
        for (int w : g.adj[x])
            if (L.level[w] < L.level[x])
                self(self, w);
    };
    rec(rec, a);
    return count;
}

} // namespace

TEST_CASE("mad oracle on fixtures")
{
    REQUIRE(mad_oracle(fixtures::p4()) == Rational{3, 2});
    REQUIRE(mad_oracle(fixtures::k3()) == Rational{2, 1});
    REQUIRE(mad_oracle(fixtures::prism3()) == Rational{3, 1});
    REQUIRE_THROWS_AS(mad_oracle(Graph::from_edges(25, {}), 20), kempe_error);
}

TEST_CASE("compute_layering")
{
    auto L = compute_layering(fixtures::p4(), 2, 0.5);
    REQUIRE(L.t() == 2);
    REQUIRE(L.layers[0] == std::vector<int>{0, 3});
    REQUIRE(L.layers[1] == std::vector<int>{1, 2});

    auto L3 = compute_layering(fixtures::k3(), 3, 0.5);
    REQUIRE(L3.t() == 1);

    try {
        compute_layering(fixtures::complete(4), 3, 0.1);
        FAIL("expected LayeringFailed");
    } catch (const kempe_error& e) {
        REQUIRE(e.code == errc::layering_failed);
    }

    // peel succeeds but the mad hypothesis fails: P4 has mad 3/2 > 2 - 3/4
    try {
        compute_layering(fixtures::p4(), 2, 0.75);
        FAIL("expected PreconditionViolated");
    } catch (const kempe_error& e) {
        REQUIRE(e.code == errc::precondition_violated);
    }
}

TEST_CASE("mad_problematic and free_vertex")
{
    // single layer: nothing can be problematic
    auto Lk3 = compute_layering(fixtures::k3(), 3, 0.5);
    Coloring ck3(3, {1, 2, 3});
    auto [out0, seq0] = free_vertex(fixtures::k3(), Lk3, ck3, CallSequence::single(0), 2);
    REQUIRE(seq0.length() == 0);
    REQUIRE(out0 == ck3);

    // P4 fixture: v2 at level 2, the level-1 endpoint has one chain neighbor
    Graph p4 = fixtures::p4();
    auto Lp4 = compute_layering(p4, 2, 0.5);
    Coloring cp4(2, {1, 2, 1, 2});
    REQUIRE(mad_problematic(p4, Lp4, cp4, 1, 1).empty());
    auto [out1, seq1] = free_vertex(p4, Lp4, cp4, CallSequence::single(1), 1);
    REQUIRE(seq1.length() == 0);

    // constructed two-layer interference: u sees both level-2 chain vertices
    TwoLayerFixture fx;
    Coloring col(3, {1, 2, 1});
    auto probs = mad_problematic(fx.g, fx.L, col, 0, 2);
    REQUIRE(probs.size() == 1);
    REQUIRE(probs[0].vertex == 1);
    REQUIRE(probs[0].witness_path == std::vector<int>{0, 1});
    MadInstrumentation instr;
    auto [out2, seq2] = free_vertex(fx.g, fx.L, col, CallSequence::single(0), 2, &instr);
    REQUIRE(seq2.length() == 1);
    REQUIRE(seq2.moves[0] == KempeMove{1, 3});
    REQUIRE(mad_problematic(fx.g, fx.L, out2, 0, 2).empty());
    REQUIRE(out2(0) == col(0)); // suffix graph untouched
    REQUIRE(out2(2) == col(2));
    REQUIRE(instr.lex_violations == 0);
}

TEST_CASE("call sequence lex order")
{
    TwoLayerFixture fx;
    // proper extension is smaller; empty is greatest
    REQUIRE(lex_less({0, 1}, {0}, fx.L));
    REQUIRE_FALSE(lex_less({0}, {0, 1}, fx.L));
    REQUIRE(lex_less({0}, {}, fx.L));
    REQUIRE(lex_less({1}, {0}, fx.L)); // level 1 before level 2
    REQUIRE_FALSE(lex_less({0}, {0}, fx.L));
}

TEST_CASE("lift_chain_change")
{
    // t = 1: the layer chain is already a chain of G
    Graph k3 = fixtures::k3();
    auto Lk3 = compute_layering(k3, 3, 0.5);
    Coloring ck3(3, {1, 2, 3});
    auto [o1, s1] = lift_chain_change(k3, Lk3, ck3, 1, {0, 1}, 1, 2);
    REQUIRE(s1.length() == 1);
    REQUIRE(o1.colors == std::vector<int>{2, 1, 3});

    // P4: the layer chain {v2,v3} lifts as the whole-path swap
    Graph p4 = fixtures::p4();
    auto Lp4 = compute_layering(p4, 2, 0.5);
    Coloring cp4(2, {1, 2, 1, 2});
    auto [o2, s2] = lift_chain_change(p4, Lp4, cp4, 2, {1, 2}, 2, 1);
    REQUIRE(verify_sequence(p4, cp4, s2) == o2);
    REQUIRE(o2(1) == 1);
    REQUIRE(o2(2) == 2);

    // junk chains are rejected
    REQUIRE_THROWS_AS(lift_chain_change(p4, Lp4, cp4, 2, {1}, 2, 1), kempe_error);
    REQUIRE_THROWS_AS(lift_chain_change(p4, Lp4, cp4, 2, {0, 1}, 1, 2), kempe_error);
}

TEST_CASE("lift singleton chains on random two-layer graphs")
{
    std::mt19937 rng(211);
    int done = 0;
    for (int t = 0; t < 300 && done < 60; ++t) {
        int n = 4 + static_cast<int>(rng() % 6);
        Graph g = random_graph(rng, n, 0.35);
        int k = 3;
        Rational m = mad_oracle(g);
        if (m.value() > k - 0.5)
            continue;
        Layering L = compute_layering(g, k, 0.5);
        if (L.t() < 2)
            continue;
        auto col = random_proper_coloring(rng, g, k);
        if (!col)
            continue;
        // a singleton layer chain: color absent from the G_i neighborhood
        for (int v = 0; v < n && done < 60; ++v) {
            int i = L.level[v];
            if (i < 2)
                continue;
            for (int c = 1; c <= k; ++c) {
                if (c == (*col)(v))
                    continue;
                bool used = false;
                for (int w : g.adj[v])
                    if (L.level[w] >= i && (*col)(w) == c)
                        used = true;
                if (used)
                    continue;
                auto [out, seq] = lift_chain_change(g, L, *col, i, {v}, (*col)(v), c);
                ++done;
                REQUIRE(verify_sequence(g, *col, seq) == out);
                REQUIRE(out(v) == c);
                for (int w = 0; w < n; ++w)
                    if (w != v && L.level[w] >= i)
                        REQUIRE(out(w) == (*col)(w));
                break;
            }
        }
    }
    REQUIRE(done >= 30);
}

TEST_CASE("mad_equalize on fixtures")
{
    Graph p4 = fixtures::p4();
    Coloring a(2, {1, 2, 1, 2}), b(2, {2, 1, 2, 1});
    REQUIRE(mad_equalize(p4, 2, 0.5, a, a).length() == 0);
    MadInstrumentation instr;
    auto seq = mad_equalize(p4, 2, 0.5, a, b, &instr);
    REQUIRE(verify_sequence(p4, a, seq) == b);
    REQUIRE(instr.lex_violations == 0);
}

TEST_CASE("mad_equalize covers all C5 3-coloring pairs")
{
    Graph c5 = fixtures::c5();
    auto rg = build_reconf(c5, 3);
    REQUIRE(rg.nodes.size() == 30);
    REQUIRE(rg.num_classes == 1);
    MadInstrumentation instr;
    for (size_t i = 0; i < rg.nodes.size(); ++i)
        for (size_t j = i + 1; j < rg.nodes.size(); ++j) {
            auto seq = mad_equalize(c5, 3, 0.2, rg.nodes[i], rg.nodes[j], &instr);
            REQUIRE(verify_sequence(c5, rg.nodes[i], seq) == rg.nodes[j]);
        }
    REQUIRE(instr.lex_violations == 0);
}

TEST_CASE("mad_equalize on random sparse graphs")
{
    std::mt19937 rng(223);
    int done = 0;
    MadInstrumentation instr;
    while (done < 40) {
        int n = 4 + static_cast<int>(rng() % 7);
        int k = 3 + static_cast<int>(rng() % 2);
        Graph g = random_graph(rng, n, 0.3);
        if (mad_oracle(g).value() > k - 0.5)
            continue;
        auto a = random_proper_coloring(rng, g, k);
        auto b = random_proper_coloring(rng, g, k);
        if (!a || !b)
            continue;
        Layering L = compute_layering(g, k, 0.5);
        auto seq = mad_equalize(g, k, 0.5, *a, *b, &instr);
        REQUIRE(verify_sequence(g, *a, seq) == *b);
        double bound = static_cast<double>(n) * n *
                           std::pow(2.0 * (k - 1), L.t()) +
                       n;
        REQUIRE(seq.length() <= bound);
        ++done;
    }
    REQUIRE(instr.lex_violations == 0);
}

TEST_CASE("level-decreasing path count stays within the claimed bound")
{
    Graph p4 = fixtures::p4();
    auto Lp4 = compute_layering(p4, 2, 0.5);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (Lp4.level[a] <= Lp4.level[b])
                continue;
            int i = Lp4.level[a] - Lp4.level[b];
            int bound = static_cast<int>(std::pow(2 - 1, i - 1));
            REQUIRE(count_level_decreasing_paths(p4, Lp4, a, b) <= bound);
        }

    std::mt19937 rng(227);
    int done = 0;
    while (done < 40) {
        int n = 5 + static_cast<int>(rng() % 6);
        int k = 3;
        Graph g = random_graph(rng, n, 0.3);
        if (mad_oracle(g).value() > k - 0.5)
            continue;
        Layering L = compute_layering(g, k, 0.5);
        if (L.t() < 2)
            continue;
        ++done;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (L.level[a] <= L.level[b])
                    continue;
                int i = L.level[a] - L.level[b];
                int bound = 1;
                for (int q = 0; q < i - 1; ++q)
                    bound *= k - 1;
                REQUIRE(count_level_decreasing_paths(g, L, a, b) <= bound);
            }
    }
}
