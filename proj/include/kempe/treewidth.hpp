#pragma once

#include <optional>
#include <set>
#include <vector>

#include "kempe.hpp"

namespace kempe {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> tree_edges; // between bag indices

    int width() const
    {
        int w = 0;
        for (const auto& b : bags)
            w = std::max(w, static_cast<int>(b.size()));
        return w - 1;
    }

    void validate(const Graph& g) const
    {
        if (bags.empty())
            fail(errc::invalid_decomposition, "no bags");
        int nb = static_cast<int>(bags.size());
        if (static_cast<int>(tree_edges.size()) != nb - 1)
            fail(errc::invalid_decomposition, "tree must have #bags - 1 edges");
        std::vector<std::vector<int>> tadj(nb);
        for (auto [a, b] : tree_edges) {
            if (a < 0 || a >= nb || b < 0 || b >= nb || a == b)
                fail(errc::invalid_decomposition, "bad tree edge");
            tadj[a].push_back(b);
            tadj[b].push_back(a);
        }
        // tree connectivity
        {
            std::vector<char> seen(nb, 0);
            std::vector<int> stack{0};
            seen[0] = 1;
            int cnt = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : tadj[x])
                    if (!seen[y]) {
                        seen[y] = 1;
                        ++cnt;
                        stack.push_back(y);
                    }
            }
            if (cnt != nb)
                fail(errc::invalid_decomposition, "bag tree not connected");
        }
        std::vector<std::vector<int>> bags_of(g.n);
        for (int b = 0; b < nb; ++b)
            for (int v : bags[b]) {
                if (v < 0 || v >= g.n)
                    fail(errc::invalid_decomposition, "bag vertex out of range");
                bags_of[v].push_back(b);
            }
        for (int v = 0; v < g.n; ++v) {
            if (bags_of[v].empty())
                fail(errc::invalid_decomposition, "vertex in no bag");
            // bags containing v must induce a subtree
            std::set<int> mine(bags_of[v].begin(), bags_of[v].end());
            std::vector<int> stack{bags_of[v][0]};
            std::set<int> seen{bags_of[v][0]};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : tadj[x])
                    if (mine.count(y) && !seen.count(y)) {
                        seen.insert(y);
                        stack.push_back(y);
                    }
            }
            if (seen.size() != mine.size())
                fail(errc::invalid_decomposition, "vertex bags not a subtree");
        }
        for (auto [u, v] : g.edges()) {
            bool covered = false;
            for (const auto& b : bags)
                if (std::find(b.begin(), b.end(), u) != b.end() &&
                    std::find(b.begin(), b.end(), v) != b.end())
                    covered = true;
            if (!covered)
                fail(errc::invalid_decomposition, "edge not inside any bag");
        }
    }
};

namespace detail {

// (v, a, b): a,b are non-adjacent upper neighbors of v -- a chordality
// counterexample for the given ordering.
inline std::optional<std::tuple<int, int, int>> peo_violation(const Graph& h,
                                                              const VertexOrdering& ord)
{
    for (int v = 0; v < h.n; ++v) {
        auto up = ord.upper_neighbors(h, v);
        for (size_t i = 0; i < up.size(); ++i)
            for (size_t j = i + 1; j < up.size(); ++j)
                if (!h.has_edge(up[i], up[j]))
                    return std::make_tuple(v, up[i], up[j]);
    }
    return std::nullopt;
}

} // namespace detail

// Maximum cardinality search; the reversed visit order is a perfect
// elimination ordering iff h is chordal, which is verified by a clique check
// of every N+[v].
inline VertexOrdering peo(const Graph& h)
{
    std::vector<int> weight(h.n, 0);
    std::vector<char> visited(h.n, 0);
    std::vector<int> visit;
    for (int step = 0; step < h.n; ++step) {
        int best = -1;
        for (int v = 0; v < h.n; ++v)
            if (!visited[v] && (best == -1 || weight[v] > weight[best]))
                best = v;
        visited[best] = 1;
        visit.push_back(best);
        for (int w : h.adj[best])
            if (!visited[w])
                ++weight[w];
    }
    std::reverse(visit.begin(), visit.end());
    VertexOrdering ord(std::move(visit), ordering_kind::peo);
    if (auto viol = detail::peo_violation(h, ord))
        fail(errc::not_chordal,
             "N+[" + std::to_string(std::get<0>(*viol)) + "] misses edge " +
                 std::to_string(std::get<1>(*viol)) + "-" +
                 std::to_string(std::get<2>(*viol)));
    return ord;
}

// Chordal host H >= G with a perfect elimination ordering. fill_edges are
// E(H) \ E(G), each written (v,w) with v before w in the peo, sorted
// lexicographically by position.
struct ChordalCompletion {
    Graph host;
    VertexOrdering order;
    int width = 0;
    std::vector<std::pair<int, int>> fill_edges;
};

namespace detail {

inline ChordalCompletion completion_from_host(const Graph& g, Graph h)
{
    ChordalCompletion cc;
    cc.order = peo(h);
    cc.host = std::move(h);
    for (int v = 0; v < g.n; ++v)
        cc.width = std::max(
            cc.width, static_cast<int>(cc.order.upper_neighbors(cc.host, v).size()));
    for (auto [u, v] : cc.host.edges())
        if (!g.has_edge(u, v)) {
            int a = u, b = v;
            if (cc.order.pos[a] > cc.order.pos[b])
                std::swap(a, b);
            cc.fill_edges.emplace_back(a, b);
        }
    std::sort(cc.fill_edges.begin(), cc.fill_edges.end(),
              [&](const auto& e1, const auto& e2) {
                  return std::make_pair(cc.order.pos[e1.first], cc.order.pos[e1.second]) <
                         std::make_pair(cc.order.pos[e2.first], cc.order.pos[e2.second]);
              });
    return cc;
}

} // namespace detail

// Completion from a supplied decomposition (host = union of bag cliques) or
// by the min-fill heuristic (ties by smallest vertex id).
inline ChordalCompletion chordal_completion(
    const Graph& g, const std::optional<TreeDecomposition>& td = std::nullopt)
{
    if (td) {
        td->validate(g);
        std::set<std::pair<int, int>> edges;
        for (auto e : g.edges())
            edges.insert(e);
        for (const auto& bag : td->bags)
            for (size_t i = 0; i < bag.size(); ++i)
                for (size_t j = i + 1; j < bag.size(); ++j)
                    edges.insert({std::min(bag[i], bag[j]), std::max(bag[i], bag[j])});
        std::vector<std::pair<int, int>> ev(edges.begin(), edges.end());
        return detail::completion_from_host(g, Graph::from_edges(g.n, ev));
    }

    // min-fill elimination on a working copy
    std::vector<std::set<int>> adj(g.n);
    for (int v = 0; v < g.n; ++v)
        adj[v] = std::set<int>(g.adj[v].begin(), g.adj[v].end());
    std::vector<char> gone(g.n, 0);
    std::set<std::pair<int, int>> edges;
    for (auto e : g.edges())
        edges.insert(e);
    for (int step = 0; step < g.n; ++step) {
        int best = -1;
        long long best_fill = -1;
        for (int v = 0; v < g.n; ++v) {
            if (gone[v])
                continue;
            long long f = 0;
            for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
                for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                    if (!adj[*it].count(*jt))
                        ++f;
            if (best == -1 || f < best_fill) {
                best = v;
                best_fill = f;
            }
        }
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) {
                    adj[nb[i]].insert(nb[j]);
                    adj[nb[j]].insert(nb[i]);
                    edges.insert({std::min(nb[i], nb[j]), std::max(nb[i], nb[j])});
                }
        gone[best] = 1;
        for (int w : nb)
            adj[w].erase(best);
        adj[best].clear();
    }
    std::vector<std::pair<int, int>> ev(edges.begin(), edges.end());
    return detail::completion_from_host(g, Graph::from_edges(g.n, ev));
}

// Single decreasing pass over the peo: when the current color differs from
// the target, one Kempe change fixes the vertex, and the chain never touches
// anything later in the order (simplicial no-merge argument, asserted).
inline MoveSequence chordal_equalize(const Graph& h, const VertexOrdering& ord,
                                     const Coloring& alpha, const Coloring& beta,
                                     int p)
{
    if (auto viol = detail::peo_violation(h, ord))
        fail(errc::not_chordal, "ordering is not a perfect elimination ordering");
    if (alpha.k != p || beta.k != p)
        fail(errc::precondition_violated, "palette mismatch");
    if (!is_proper(h, alpha) || !is_proper(h, beta))
        fail(errc::precondition_violated, "endpoint coloring not proper");
    Coloring cur = alpha;
    MoveSequence seq;
    seq.provenance = "chordal";
    for (int j = h.n - 1; j >= 0; --j) {
        int v = ord.order[j];
        if (cur(v) == beta(v))
            continue;
        auto chain = kempe_chain(h, cur, v, beta(v));
        for (int x : chain)
            if (ord.pos[x] > j)
                fail(errc::internal_invariant_broken,
                     "chain reached a vertex later in the peo");
        swap_chain_colors(cur, chain, cur(v), beta(v));
        seq.push(v, beta(v));
    }
    if (!(cur == beta))
        fail(errc::internal_invariant_broken, "chordal pass missed the target");
    return seq;
}

namespace detail {

// Swaps a host chain on the current coloring while recording one G-move per
// connected component of the chain in G (smallest contained vertex first).
// Components of a maximal host chain are maximal in G, so the bulk swap and
// the per-component replays agree.
inline void expand_host_chain(const Graph& g, Coloring& cur,
                              const std::vector<int>& chain, int ca, int cb,
                              MoveSequence& out)
{
    std::vector<char> in_chain(g.n, 0), seen(g.n, 0);
    for (int v : chain)
        in_chain[v] = 1;
    for (int v : chain) { // chain is sorted, so components come smallest-first
        if (seen[v])
            continue;
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : g.adj[x])
                if (in_chain[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        out.push(v, cur(v) == ca ? cb : ca);
    }
    swap_chain_colors(cur, chain, ca, cb);
}

} // namespace detail

struct TwInstrumentation {
    int host_moves = 0;
    int g_moves = 0;
    std::vector<int> conditional_fired; // per vertex, as v_j
    std::vector<int> ui_role;           // per vertex, as u_i
};

// Fitting pass: walks the fill edges in lexicographic peo order and clears
// every monochromatic pair, keeping the current coloring proper on the
// partially augmented graph. Moves are performed in the augmented graph and
// recorded as their expansion into G-moves.
inline std::pair<Coloring, MoveSequence> fit_to_host(const Graph& g,
                                                     const ChordalCompletion& cc,
                                                     const Coloring& alpha, int k,
                                                     TwInstrumentation* instr = nullptr)
{
    if (k < cc.width + 1)
        fail(errc::palette_too_small,
             "need k >= width + 1 = " + std::to_string(cc.width + 1));
    if (alpha.k != k || !is_proper(g, alpha))
        fail(errc::precondition_violated, "input not a proper k-coloring of G");

    TwInstrumentation local;
    TwInstrumentation& st = instr ? *instr : local;
    st.conditional_fired.assign(g.n, 0);
    st.ui_role.assign(g.n, 0);

    Graph gt = g;
    Coloring cur = alpha;
    MoveSequence seq;
    seq.provenance = "alg4-fit";
    const auto& ord = cc.order;

    auto add_edge = [&](int a, int b) {
        gt.adj[a].insert(std::lower_bound(gt.adj[a].begin(), gt.adj[a].end(), b), b);
        gt.adj[b].insert(std::lower_bound(gt.adj[b].begin(), gt.adj[b].end(), a), a);
    };
    auto smallest_free = [&](const std::vector<int>& forbidden_from) {
        std::vector<char> used(k + 1, 0);
        for (int x : forbidden_from)
            used[cur(x)] = 1;
        for (int c = 1; c <= k; ++c)
            if (!used[c])
                return c;
        return -1;
    };

    for (auto [vj, wj] : cc.fill_edges) {
        if (cur(vj) == cur(wj)) {
            if (++st.conditional_fired[vj] > 1)
                fail(errc::internal_invariant_broken,
                     "fill-edge conditional fired twice for one vertex");
            std::vector<int> closed_up = ord.upper_neighbors(cc.host, vj);
            closed_up.push_back(vj);
            int c = smallest_free(closed_up);
            if (c == -1)
                fail(errc::internal_invariant_broken, "no free color for v_j");
            std::vector<int> common;
            for (int u : ord.lower_neighbors(gt, vj))
                if (gt.has_edge(u, wj))
                    common.push_back(u);
            std::sort(common.begin(), common.end(),
                      [&](int a, int b) { return ord.pos[a] < ord.pos[b]; });
            for (int i = static_cast<int>(common.size()) - 1; i >= 0; --i) {
                int u = common[i];
                if (cur(u) == c) {
                    if (++st.ui_role[u] > cc.width)
                        fail(errc::internal_invariant_broken,
                             "vertex played u_i more than width times");
                    std::vector<int> up = ord.upper_neighbors(gt, u);
                    up.push_back(u);
                    int ci = smallest_free(up);
                    if (ci == -1)
                        fail(errc::internal_invariant_broken, "no free color for u_i");
                    auto chain = kempe_chain(gt, cur, u, ci);
                    for (int x : chain)
                        if (ord.pos[x] > ord.pos[u])
                            fail(errc::internal_invariant_broken,
                                 "u_i chain climbed above u_i");
                    ++st.host_moves;
                    detail::expand_host_chain(g, cur, chain, cur(u), ci, seq);
                }
                for (int x : gt.adj[vj])
                    if (ord.pos[x] >= ord.pos[u] && cur(x) == c)
                        fail(errc::internal_invariant_broken,
                             "color c survived among processed neighbors");
            }
            for (int x : gt.adj[vj])
                if (cur(x) == c)
                    fail(errc::internal_invariant_broken,
                         "color c still present around v_j");
            auto chain = kempe_chain(gt, cur, vj, c);
            ++st.host_moves;
            detail::expand_host_chain(g, cur, chain, cur(vj), c, seq);
        }
        add_edge(vj, wj);
        if (!is_proper(gt, cur))
            fail(errc::internal_invariant_broken,
                 "coloring not proper on the augmented graph");
    }
    st.g_moves = seq.length();
    return {std::move(cur), std::move(seq)};
}

// Replays host moves, expanding each host chain into its G-components.
inline MoveSequence simulate_host_moves(const Graph& g, const Graph& h,
                                        const Coloring& start,
                                        const MoveSequence& host_moves)
{
    if (g.n != h.n)
        fail(errc::precondition_violated, "vertex sets differ");
    for (auto [u, v] : g.edges())
        if (!h.has_edge(u, v))
            fail(errc::precondition_violated, "G is not a subgraph of H");
    Coloring cur = start;
    MoveSequence out;
    out.provenance = host_moves.provenance + "-simulated";
    for (const auto& m : host_moves.moves) {
        auto chain = kempe_chain(h, cur, m.vertex, m.target_color);
        detail::expand_host_chain(g, cur, chain, cur(m.vertex), m.target_color, out);
    }
    return out;
}

// Theorem-3 driver: fit both endpoints onto the chordal host, equalize there
// in at most n host moves, and pull everything back into G.
inline MoveSequence tw_equalize(const Graph& g,
                                const std::optional<TreeDecomposition>& td,
                                const Coloring& alpha, const Coloring& beta, int k,
                                TwInstrumentation* instr_a = nullptr,
                                TwInstrumentation* instr_b = nullptr)
{
    ChordalCompletion cc = chordal_completion(g, td);
    if (k < cc.width + 1)
        fail(errc::palette_too_small,
             "need k >= width + 1 = " + std::to_string(cc.width + 1));
    auto [alpha_h, seq_a] = fit_to_host(g, cc, alpha, k, instr_a);
    auto [beta_h, seq_b] = fit_to_host(g, cc, beta, k, instr_b);
    auto host_seq = chordal_equalize(cc.host, cc.order, alpha_h, beta_h, k);
    auto mid = simulate_host_moves(g, cc.host, alpha_h, host_seq);
    MoveSequence total = seq_a;
    total.append(mid);
    total.append(inverse_sequence(g, beta, seq_b));
    total.provenance = "thm3-treewidth";
    if (!(verify_sequence(g, alpha, total) == beta))
        fail(errc::internal_invariant_broken, "treewidth driver missed beta");
    return total;
}

} // namespace kempe
