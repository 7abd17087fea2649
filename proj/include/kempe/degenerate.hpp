#pragma once

#include <optional>
#include <vector>

#include "kempe.hpp"

namespace kempe {

enum class recolor_mode { degree_bounded, list };

// The two Prop.-2-style settings under which the targeted recoloring is
// guaranteed to work. Construction rejects inputs violating the chosen mode:
//   degree_bounded: the ordering is a (d-1)-degeneracy sequence and every
//                   vertex except the last has degree <= d;
//   list:           |L(v_i)| >= deg(v_i)+1 for every i < n.
struct RecolorSetting {
    recolor_mode mode;
    int d = 0; // degree mode only
    int k = 0; // global palette size
    ListAssignment lists;

    static RecolorSetting degree_bounded(const Graph& g, const VertexOrdering& ord,
                                         int d, int k)
    {
        if (ord.size() != g.n)
            fail(errc::precondition_violated, "ordering size mismatch");
        for (int v = 0; v < g.n; ++v) {
            if (static_cast<int>(ord.upper_neighbors(g, v).size()) > d - 1)
                fail(errc::precondition_violated,
                     "ordering is not a (d-1)-degeneracy sequence");
            if (ord.pos[v] != g.n - 1 && g.degree(v) > d)
                fail(errc::precondition_violated,
                     "non-final vertex of degree > d");
        }
        RecolorSetting s;
        s.mode = recolor_mode::degree_bounded;
        s.d = d;
        s.k = k;
        s.lists = ListAssignment::uniform(g.n, k);
        return s;
    }

    static RecolorSetting with_lists(const Graph& g, const VertexOrdering& ord,
                                     ListAssignment lists, int k)
    {
        if (ord.size() != g.n)
            fail(errc::precondition_violated, "ordering size mismatch");
        lists.validate(g.n, k);
        for (int v = 0; v < g.n; ++v)
            if (ord.pos[v] != g.n - 1 &&
                static_cast<int>(lists.lists[v].size()) < g.degree(v) + 1)
                fail(errc::precondition_violated,
                     "list smaller than deg+1 on a non-final vertex");
        RecolorSetting s;
        s.mode = recolor_mode::list;
        s.k = k;
        s.lists = std::move(lists);
        return s;
    }
};

struct BadVertexReport {
    int vertex = 0;
    bool blocking = false;
    bool branching = false;
    bool problematic = false;
    bool is_first_bad = false;
};

struct ClassifyResult {
    std::vector<BadVertexReport> bad;      // every bad vertex of the chain
    std::optional<int> greatest_first_bad; // max in the ordering, if any
};

// Counters filled while Algorithm 1 runs; purely observational except where
// noted in target_recolor.
struct Alg1Stats {
    int loop_iterations = 0;
    int recursive_calls = 0;
    int bad_neighbor_violations = 0; // problematic pivot with >1 bad neighbor
};

namespace detail {

inline void check_target_precondition(const Graph& g, const VertexOrdering& ord,
                                      const RecolorSetting& s, const Coloring& col,
                                      int v, int c)
{
    if (v < 0 || v >= g.n || c < 1 || c > s.k)
        fail(errc::precondition_violated, "target vertex/color out of range");
    if (!s.lists.contains(v, c))
        fail(errc::precondition_violated, "target color off-list");
    if (c == col(v))
        fail(errc::precondition_violated, "target color already in place");
    for (int w : ord.upper_neighbors(g, v))
        if (col(w) == c)
            fail(errc::precondition_violated, "target color used above v");
}

} // namespace detail

// Reports the blocking / branching / problematic vertices of K_{v,c}(col)
// minus v, and the greatest first bad vertex: the largest bad u reachable
// from v inside the chain by a path through no other bad vertex.
inline ClassifyResult classify_bad(const Graph& g, const VertexOrdering& ord,
                                   const RecolorSetting& s, const Coloring& col,
                                   int v, int c)
{
    detail::check_target_precondition(g, ord, s, col, v, c);
    auto chain = kempe_chain(g, col, v, c);
    std::vector<char> in_chain(g.n, 0), is_bad(g.n, 0);
    for (int u : chain)
        in_chain[u] = 1;

    ClassifyResult res;
    for (int u : chain) {
        if (u == v)
            continue;
        int chain_deg = 0, greater = 0;
        for (int w : g.adj[u])
            if (in_chain[w]) {
                ++chain_deg;
                if (ord.pos[w] > ord.pos[u])
                    ++greater;
            }
        BadVertexReport r;
        r.vertex = u;
        r.branching = chain_deg >= 3;
        r.problematic = greater >= 2;
        if (s.mode == recolor_mode::list)
            r.blocking = !s.lists.contains(u, c) || !s.lists.contains(u, col(v));
        if (r.blocking || r.branching || r.problematic) {
            is_bad[u] = 1;
            res.bad.push_back(r);
        }
    }

    // First bad vertices: BFS from v that never walks through a bad vertex.
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u != v && is_bad[u])
            continue; // reachable as an endpoint only
        for (int w : g.adj[u])
            if (in_chain[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    int best = -1;
    for (auto& r : res.bad)
        if (seen[r.vertex]) {
            r.is_first_bad = true;
            if (best == -1 || ord.pos[r.vertex] > ord.pos[best])
                best = r.vertex;
        }
    if (best != -1)
        res.greatest_first_bad = best;
    return res;
}

namespace detail {

inline void target_recolor_impl(const Graph& g, const VertexOrdering& ord,
                                const RecolorSetting& s, Coloring& col, int v, int c,
                                MoveSequence& seq, Alg1Stats& stats, int depth)
{
    check_target_precondition(g, ord, s, col, v, c);
    if (depth > g.n)
        fail(errc::internal_invariant_broken, "recursion deeper than n");

    int prev_pivot_pos = ord.size();
    while (true) {
        ClassifyResult cls = classify_bad(g, ord, s, col, v, c);
        if (!cls.greatest_first_bad)
            break;
        ++stats.loop_iterations;
        int u = *cls.greatest_first_bad;
        if (ord.pos[u] >= ord.pos[v])
            fail(errc::internal_invariant_broken, "first bad vertex not below v");
        if (ord.pos[u] >= prev_pivot_pos)
            fail(errc::internal_invariant_broken,
                 "greatest first bad vertex failed to decrease");
        prev_pivot_pos = ord.pos[u];

        // Trivial recolor of u whenever some list color avoids N[u].
        int fresh = -1;
        for (int cand : s.lists.lists[u]) {
            bool used = (cand == col(u));
            for (int w : g.adj[u])
                if (col(w) == cand) {
                    used = true;
                    break;
                }
            if (!used) {
                fresh = cand;
                break;
            }
        }
        if (fresh != -1) {
            auto triv = kempe_chain(g, col, u, fresh);
            if (triv.size() != 1)
                fail(errc::internal_invariant_broken, "fresh-color chain not trivial");
            swap_chain_colors(col, triv, col(u), fresh);
            seq.push(u, fresh);
        } else {
            if (s.mode == recolor_mode::list)
                fail(errc::internal_invariant_broken,
                     "list mode reached the recursive branch");
            int bad_neighbors = 0;
            for (const auto& r : cls.bad)
                if (g.has_edge(u, r.vertex))
                    ++bad_neighbors;
            if (bad_neighbors > 1)
                ++stats.bad_neighbor_violations;
            int cprime = -1;
            for (int cand : s.lists.lists[u]) {
                if (cand == col(u))
                    continue;
                bool used = false;
                for (int w : ord.upper_neighbors(g, u))
                    if (col(w) == cand) {
                        used = true;
                        break;
                    }
                if (!used) {
                    cprime = cand;
                    break;
                }
            }
            if (cprime == -1)
                fail(errc::internal_invariant_broken,
                     "problematic pivot with no admissible color");
            ++stats.recursive_calls;
            target_recolor_impl(g, ord, s, col, u, cprime, seq, stats, depth + 1);
        }
    }
    auto chain = kempe_chain(g, col, v, c);
    swap_chain_colors(col, chain, col(v), c);
    seq.push(v, c);
}

} // namespace detail

// Algorithm-1-style targeted recoloring: returns a coloring agreeing with col
// on every vertex above v in the ordering, with color c on v.
inline std::pair<Coloring, MoveSequence> target_recolor(const Graph& g,
                                                        const VertexOrdering& ord,
                                                        const RecolorSetting& s,
                                                        const Coloring& col, int v,
                                                        int c,
                                                        Alg1Stats* stats = nullptr)
{
    if (s.mode == recolor_mode::degree_bounded && s.k < s.d)
        fail(errc::precondition_violated, "degree mode needs k >= d");
    if (col.k != s.k)
        fail(errc::precondition_violated, "palette mismatch");
    Coloring out = col;
    MoveSequence seq;
    seq.provenance = s.mode == recolor_mode::list ? "alg1-list" : "alg1-degree";
    Alg1Stats local;
    detail::target_recolor_impl(g, ord, s, out, v, c, seq, stats ? *stats : local, 0);
    return {std::move(out), std::move(seq)};
}

struct EqualizeResult {
    MoveSequence from_alpha;
    MoveSequence from_beta;
    MoveSequence composed; // alpha -> beta, second half reversed
    Coloring meet;
    int pc_fallbacks = 0; // steps where no color had p_c <= 1
};

// Meet-in-the-middle equalization: walk the ordering from the top, recoloring
// the largest disagreeing vertex in both colorings to the smallest color c
// with p_c = |alpha^-1(c) cap N-(v)| + |beta^-1(c) cap N-(v)| <= 1. When no
// color qualifies (possible at the exempt last vertex) the smallest color
// minimizing p_c is used instead.
inline EqualizeResult equalize(const Graph& g, const VertexOrdering& ord,
                               const RecolorSetting& s, const Coloring& alpha,
                               const Coloring& beta, Alg1Stats* stats = nullptr)
{
    if (s.mode == recolor_mode::degree_bounded && s.k < s.d)
        fail(errc::precondition_violated, "degree mode needs k >= d");
    std::optional<ListAssignment> la;
    if (s.mode == recolor_mode::list)
        la = s.lists;
    if (!is_proper(g, alpha, la) || !is_proper(g, beta, la))
        fail(errc::precondition_violated, "endpoint coloring not proper");
    if (alpha.k != s.k || beta.k != s.k)
        fail(errc::precondition_violated, "palette mismatch");

    EqualizeResult res;
    res.from_alpha.provenance = "prop2-equalize";
    res.from_beta.provenance = "prop2-equalize";
    Coloring curA = alpha, curB = beta;
    for (int j = g.n - 1; j >= 0; --j) {
        int v = ord.order[j];
        if (curA(v) == curB(v))
            continue;
        std::vector<int> lp; // L'(v)
        for (int c : s.lists.lists[v]) {
            bool used = false;
            for (int w : ord.upper_neighbors(g, v))
                if (curA(w) == c) {
                    used = true;
                    break;
                }
            if (!used)
                lp.push_back(c);
        }
        if (lp.empty())
            fail(errc::internal_invariant_broken, "empty residual list");
        auto count_pc = [&](int c) {
            int pc = 0;
            for (int w : ord.lower_neighbors(g, v)) {
                if (curA(w) == c)
                    ++pc;
                if (curB(w) == c)
                    ++pc;
            }
            return pc;
        };
        int chosen = -1, chosen_pc = -1;
        for (int c : lp) {
            int pc = count_pc(c);
            if (pc <= 1) {
                chosen = c;
                chosen_pc = pc;
                break;
            }
            if (chosen == -1 || pc < chosen_pc) {
                chosen = c;
                chosen_pc = pc;
            }
        }
        if (chosen_pc > 1)
            ++res.pc_fallbacks;
        if (curA(v) != chosen) {
            MoveSequence sa;
            Alg1Stats local;
            detail::target_recolor_impl(g, ord, s, curA, v, chosen, sa,
                                        stats ? *stats : local, 0);
            res.from_alpha.append(sa);
        }
        if (curB(v) != chosen) {
            MoveSequence sb;
            Alg1Stats local;
            detail::target_recolor_impl(g, ord, s, curB, v, chosen, sb,
                                        stats ? *stats : local, 0);
            res.from_beta.append(sb);
        }
        if (curA(v) != curB(v))
            fail(errc::internal_invariant_broken, "equalize step left a mismatch");
    }
    if (!(curA == curB))
        fail(errc::internal_invariant_broken, "equalize halves did not meet");
    res.meet = curA;
    res.composed = res.from_alpha;
    res.composed.append(inverse_sequence(g, beta, res.from_beta));
    res.composed.provenance = "prop2-equalize";
    return res;
}

} // namespace kempe
