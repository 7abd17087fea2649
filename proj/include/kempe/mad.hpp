#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "degenerate.hpp"
#include "kempe.hpp"

namespace kempe {

struct Rational {
    long long num = 0;
    long long den = 1;

    void reduce()
    {
        long long g = std::gcd(num, den);
        if (g > 0) {
            num /= g;
            den /= g;
        }
    }

    bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Exact maximum average degree by densest-subgraph search over all vertex
// subsets. Desk scale only.
inline Rational mad_oracle(const Graph& g, int max_n = 20)
{
    if (g.n > max_n)
        fail(errc::too_large, "mad oracle limited to n <= " + std::to_string(max_n));
    if (g.n == 0)
        return {0, 1};
    std::vector<uint32_t> adj_mask(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            adj_mask[v] |= 1u << w;
    Rational best{0, 1};
    for (uint32_t s = 1; s < (1u << g.n); ++s) {
        int verts = __builtin_popcount(s);
        long long twice_edges = 0;
        for (int v = 0; v < g.n; ++v)
            if (s & (1u << v))
                twice_edges += __builtin_popcount(adj_mask[v] & s);
        Rational r{twice_edges, verts};
        if (best <= r)
            best = r;
    }
    best.reduce();
    return best;
}

// Ordered partition V_1 .. V_t where every vertex has degree <= degree_bound
// in the graph induced by its own and higher layers. The layer-refined total
// order is layer index major, vertex id minor.
struct Layering {
    std::vector<std::vector<int>> layers;
    std::vector<int> level; // vertex -> 1-based layer index
    int degree_bound = 0;

    int t() const { return static_cast<int>(layers.size()); }

    bool less(int u, int v) const
    {
        return level[u] != level[v] ? level[u] < level[v] : u < v;
    }

    // mask of G_i = G[V_i u V_{i+1} u ...]
    std::vector<char> suffix_mask(int n, int i) const
    {
        std::vector<char> m(n, 0);
        for (int v = 0; v < n; ++v)
            if (level[v] >= i)
                m[v] = 1;
        return m;
    }

    void validate(const Graph& g) const
    {
        if (static_cast<int>(level.size()) != g.n)
            fail(errc::precondition_violated, "layering size mismatch");
        std::vector<char> seen(g.n, 0);
        for (int i = 0; i < t(); ++i)
            for (int v : layers[i]) {
                if (v < 0 || v >= g.n || seen[v] || level[v] != i + 1)
                    fail(errc::precondition_violated, "layering is not a partition");
                seen[v] = 1;
            }
        for (int v = 0; v < g.n; ++v) {
            if (!seen[v])
                fail(errc::precondition_violated, "layering is not a partition");
            int deg_up = 0;
            for (int w : g.adj[v])
                if (level[w] >= level[v])
                    ++deg_up;
            if (deg_up > degree_bound)
                fail(errc::precondition_violated,
                     "vertex exceeds layer degree bound");
        }
    }
};

// Maximal peeling: each round removes every vertex of current degree <= k-1.
// Fails when a nonempty residual graph has minimum degree >= k, which
// certifies mad >= k on that subgraph.
inline Layering compute_layering(const Graph& g, int k, double epsilon,
                                 int mad_check_max_n = 20)
{
    if (k < 1 || epsilon <= 0)
        fail(errc::precondition_violated, "need k >= 1 and epsilon > 0");
    Layering L;
    L.degree_bound = k - 1;
    L.level.assign(g.n, 0);
    std::vector<int> deg(g.n);
    std::vector<char> removed(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        deg[v] = g.degree(v);
    int placed = 0;
    while (placed < g.n) {
        std::vector<int> layer;
        for (int v = 0; v < g.n; ++v)
            if (!removed[v] && deg[v] <= k - 1)
                layer.push_back(v);
        if (layer.empty())
            fail(errc::layering_failed,
                 "residual graph has minimum degree >= k");
        for (int v : layer) {
            removed[v] = 1;
            L.level[v] = L.t() + 1;
        }
        for (int v : layer)
            for (int w : g.adj[v])
                if (!removed[w])
                    --deg[w];
        L.layers.push_back(std::move(layer));
        placed += static_cast<int>(L.layers.back().size());
    }
    L.validate(g);
    // the peel succeeding certifies (k-1)-degeneracy; the mad hypothesis is
    // strictly stronger and is checked exactly while the oracle can afford it
    if (g.n <= mad_check_max_n) {
        Rational m = mad_oracle(g, mad_check_max_n);
        if (m.value() > static_cast<double>(k) - epsilon + 1e-12)
            fail(errc::precondition_violated, "mad(G) exceeds k - epsilon");
    }
    return L;
}

// Strictly level-decreasing list of vertices; the recursion argument of the
// freeing procedure.
struct CallSequence {
    std::vector<int> vertices;

    static CallSequence single(int v) { return CallSequence{{v}}; }

    CallSequence extended(int u) const
    {
        CallSequence s = *this;
        s.vertices.push_back(u);
        return s;
    }

    void validate(const Layering& L) const
    {
        if (vertices.empty())
            fail(errc::precondition_violated, "empty call sequence");
        for (size_t i = 0; i + 1 < vertices.size(); ++i)
            if (L.level[vertices[i + 1]] >= L.level[vertices[i]])
                fail(errc::precondition_violated,
                     "call sequence levels must strictly decrease");
    }
};

// s1 <lex s2: either s2 is empty and s1 is not, or the first vertices differ
// and s1's is smaller, or the heads agree and the tails compare. The empty
// sequence is the greatest element.
inline bool lex_less(const std::vector<int>& s1, const std::vector<int>& s2,
                     const Layering& L)
{
    size_t i = 0;
    while (i < s1.size() && i < s2.size() && s1[i] == s2[i])
        ++i;
    if (i == s2.size())
        return i < s1.size(); // proper extension is smaller
    if (i == s1.size())
        return false;
    return L.less(s1[i], s2[i]);
}

struct MadProblematicReport {
    int vertex = 0;
    std::vector<int> witness_path; // strictly level-decreasing, from v to u
};

struct MadInstrumentation {
    std::vector<std::vector<int>> call_log; // per root call of the freeing loop
    long long lex_violations = 0;
    long long free_moves = 0;
};

namespace detail {

struct MadRun {
    const Graph& g;
    const Layering& L;
    MadInstrumentation* instr = nullptr;
    std::vector<int> current_root_last; // last call sequence within this root
    bool root_open = false;

    void log_call(const CallSequence& s)
    {
        if (!instr)
            return;
        instr->call_log.push_back(s.vertices);
        if (root_open && !lex_less(s.vertices, current_root_last, L))
            ++instr->lex_violations;
        current_root_last = s.vertices;
        root_open = true;
    }

    void new_root() { root_open = false; }
};

} // namespace detail

// Problematic vertices for the pair (v,c): vertices u below l(v), reachable
// from v by a strictly level-decreasing path inside K_{v,c}(col,G), that have
// at least two chain neighbors in their own suffix graph G_{l(u)}. Both such
// neighbors carry the chain color opposite to col(u), which is what makes the
// fresh-color recoloring of u possible. Any chain path escaping back into
// G_{l(v)} has a first non-descending vertex, and that vertex is reported, so
// an empty report certifies that the chain hangs below G_{l(v)} as a
// descending forest.
inline std::vector<MadProblematicReport> mad_problematic(const Graph& g,
                                                         const Layering& L,
                                                         const Coloring& col, int v,
                                                         int c)
{
    std::vector<MadProblematicReport> out;
    if (c == col(v))
        return out; // degenerate pair, nothing to free
    auto chain = kempe_chain(g, col, v, c);
    std::vector<char> in_chain(g.n, 0);
    for (int u : chain)
        in_chain[u] = 1;
    // BFS over edges that strictly decrease the level
    std::vector<int> parent(g.n, -2);
    std::vector<int> queue{v};
    parent[v] = -1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int w : g.adj[x])
            if (in_chain[w] && parent[w] == -2 && L.level[w] < L.level[x]) {
                parent[w] = x;
                queue.push_back(w);
            }
    }
    for (int u : chain) {
        if (u == v || parent[u] == -2)
            continue;
        int seen_suffix = 0;
        for (int w : g.adj[u])
            if (in_chain[w] && L.level[w] >= L.level[u])
                ++seen_suffix;
        if (seen_suffix >= 2) {
            MadProblematicReport r;
            r.vertex = u;
            for (int x = u; x != -1; x = parent[x])
                r.witness_path.push_back(x);
            std::reverse(r.witness_path.begin(), r.witness_path.end());
            out.push_back(std::move(r));
        }
    }
    return out;
}

namespace detail {

inline void free_vertex_impl(MadRun& run, Coloring& col, const CallSequence& s, int c,
                             MoveSequence& seq)
{
    const Graph& g = run.g;
    const Layering& L = run.L;
    int v = s.vertices.back();
    run.log_call(s);

    int guard = 0;
    int prev_u = -1;
    while (true) {
        auto probs = mad_problematic(g, L, col, v, c);
        if (probs.empty())
            break;
        if (++guard > g.n)
            fail(errc::internal_invariant_broken, "freeing loop exceeded n iterations");
        int u = probs[0].vertex;
        for (const auto& r : probs)
            if (L.less(u, r.vertex))
                u = r.vertex;
        if (prev_u != -1 && !L.less(u, prev_u))
            fail(errc::internal_invariant_broken,
                 "largest problematic vertex failed to decrease");
        prev_u = u;

        int cu = -1;
        for (int cand = 1; cand <= col.k; ++cand) {
            bool used = (cand == col(u));
            for (int w : g.adj[u])
                if (L.level[w] >= L.level[u] && col(w) == cand)
                    used = true;
            if (!used) {
                cu = cand;
                break;
            }
        }
        if (cu == -1)
            fail(errc::internal_invariant_broken,
                 "no fresh color around a problematic vertex");

        free_vertex_impl(run, col, s.extended(u), cu, seq);

        auto chain = kempe_chain(g, col, u, cu);
        for (int x : chain)
            if (x != u && L.level[x] >= L.level[u])
                fail(errc::internal_invariant_broken,
                     "freeing chain escaped into the vertex's own suffix graph");
        swap_chain_colors(col, chain, col(u), cu);
        seq.push(u, cu);
        if (run.instr)
            ++run.instr->free_moves;
    }
}

} // namespace detail

// Clears every problematic vertex for (last(s), c) without touching the
// suffix graph of last(s).
inline std::pair<Coloring, MoveSequence> free_vertex(const Graph& g, const Layering& L,
                                                     const Coloring& col,
                                                     const CallSequence& s, int c,
                                                     MadInstrumentation* instr = nullptr)
{
    s.validate(L);
    if (c < 1 || c > col.k)
        fail(errc::precondition_violated, "color outside palette");
    if (!is_proper(g, col))
        fail(errc::precondition_violated, "coloring not proper");
    detail::MadRun run{g, L, instr};
    run.new_root();
    Coloring out = col;
    MoveSequence seq;
    seq.provenance = "alg2-free";
    detail::free_vertex_impl(run, out, s, c, seq);
    int v = s.vertices.back();
    for (int w = 0; w < g.n; ++w)
        if (L.level[w] >= L.level[v] && out(w) != col(w))
            fail(errc::internal_invariant_broken, "freeing touched the suffix graph");
    return {std::move(out), std::move(seq)};
}

// Lifts one Kempe change of G[V_i] into G: frees every interfering lower
// vertex, then performs the chain as a single move of G. The chain must also
// be a chain of G_i (no escape through higher layers).
inline std::pair<Coloring, MoveSequence> lift_chain_change(
    const Graph& g, const Layering& L, const Coloring& col, int i,
    const std::vector<int>& chain_vertices, int color_a, int color_b,
    MadInstrumentation* instr = nullptr)
{
    if (chain_vertices.empty())
        fail(errc::not_a_chain, "empty chain");
    if (!is_proper(g, col))
        fail(errc::precondition_violated, "coloring not proper");
    for (int v : chain_vertices)
        if (L.level[v] != i)
            fail(errc::not_a_chain, "chain vertex outside layer");

    std::vector<int> K = chain_vertices;
    std::sort(K.begin(), K.end());
    int anchor = K[0];
    if (color_a == color_b || color_a < 1 || color_a > col.k || color_b < 1 ||
        color_b > col.k)
        fail(errc::not_a_chain, "invalid chain color pair");
    if (col(anchor) != color_a && col(anchor) != color_b)
        fail(errc::not_a_chain, "anchor color outside the pair");
    int c1 = col(anchor), c2 = c1 == color_a ? color_b : color_a;
    for (int v : K)
        if (col(v) != c1 && col(v) != c2)
            fail(errc::not_a_chain, "chain not bichromatic");

    // K must be a maximal bichromatic component of G[V_i], and equally one of
    // G_i: a chain leaking into higher layers cannot be lifted cleanly.
    std::vector<char> layer_mask(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        if (L.level[v] == i)
            layer_mask[v] = 1;
    if (kempe_chain_masked(g, col, anchor, c2, layer_mask) != K)
        fail(errc::not_a_chain, "not a bichromatic component of the layer");
    auto suffix = L.suffix_mask(g.n, i);
    if (kempe_chain_masked(g, col, anchor, c2, suffix) != K)
        fail(errc::not_a_chain, "chain escapes through higher layers");

    Coloring cur = col;
    MoveSequence seq;
    seq.provenance = "alg3-lift";
    detail::MadRun run{g, L, instr};

    int guard = 0;
    int prev_u = -1;
    while (true) {
        // largest problematic vertex over all (v, other color of v), v in K
        int u = -1;
        int pick_v = -1, pick_c = -1;
        for (int v : K) {
            int other = cur(v) == c1 ? c2 : c1;
            for (const auto& r : mad_problematic(g, L, cur, v, other))
                if (u == -1 || L.less(u, r.vertex)) {
                    u = r.vertex;
                    pick_v = v;
                    pick_c = other;
                }
        }
        if (u == -1)
            break;
        if (++guard > g.n)
            fail(errc::internal_invariant_broken, "lift loop exceeded n iterations");
        if (prev_u != -1 && !L.less(u, prev_u))
            fail(errc::internal_invariant_broken,
                 "largest problematic vertex failed to decrease");
        prev_u = u;

        run.new_root();
        MoveSequence part;
        detail::free_vertex_impl(run, cur, CallSequence::single(pick_v), pick_c, part);
        seq.append(part);
        for (int v : K)
            if (cur(v) != col(v))
                fail(errc::internal_invariant_broken, "freeing recolored the layer");
    }

    auto full = kempe_chain(g, cur, anchor, cur(anchor) == c1 ? c2 : c1);
    for (int x : full)
        if (L.level[x] >= i && !std::binary_search(K.begin(), K.end(), x))
            fail(errc::internal_invariant_broken,
                 "final chain still reaches the suffix graph");
    swap_chain_colors(cur, full, c1, c2);
    seq.push(anchor, cur(anchor)); // anchor now carries the swapped color
    if (instr)
        ++instr->free_moves;

    // contract: the restriction to the layer equals the plain swap of K
    for (int v = 0; v < g.n; ++v)
        if (L.level[v] > i && cur(v) != col(v))
            fail(errc::internal_invariant_broken, "lift touched a higher layer");
    for (int v : K) {
        int expect = col(v) == c1 ? c2 : c1;
        if (cur(v) != expect)
            fail(errc::internal_invariant_broken, "layer restriction mismatch");
    }
    return {std::move(cur), std::move(seq)};
}

// Theorem-2 driver: recolor layer by layer from the top layer down, running
// the list-mode equalizer inside each layer with the residual lists
// L(v) = [k] \ cur(N(v) cap G_{i+1}) and lifting every layer move into G.
inline MoveSequence mad_equalize(const Graph& g, int k, double epsilon,
                                 const Coloring& alpha, const Coloring& beta,
                                 MadInstrumentation* instr = nullptr)
{
    Layering L = compute_layering(g, k, epsilon);
    if (alpha.k != k || beta.k != k)
        fail(errc::precondition_violated, "palette mismatch");
    if (!is_proper(g, alpha) || !is_proper(g, beta))
        fail(errc::precondition_violated, "endpoint coloring not proper");

    Coloring cur = alpha;
    MoveSequence seq;
    seq.provenance = "thm2-mad";

    for (int i = L.t(); i >= 1; --i) {
        auto sub = induced_subgraph(g, L.layers[i - 1]);
        int nl = sub.sub.n;
        ListAssignment lists;
        lists.lists.assign(nl, {});
        for (int li = 0; li < nl; ++li) {
            int v = sub.to_global[li];
            for (int c = 1; c <= k; ++c) {
                bool used = false;
                for (int w : g.adj[v])
                    if (L.level[w] > i && cur(w) == c)
                        used = true;
                if (!used)
                    lists.lists[li].push_back(c);
            }
            if (static_cast<int>(lists.lists[li].size()) < sub.sub.degree(li) + 1)
                fail(errc::internal_invariant_broken, "residual list too small");
        }
        std::vector<int> la_cols(nl), lb_cols(nl);
        for (int li = 0; li < nl; ++li) {
            la_cols[li] = cur(sub.to_global[li]);
            lb_cols[li] = beta(sub.to_global[li]);
        }
        VertexOrdering ord = VertexOrdering::identity(nl);
        auto setting = RecolorSetting::with_lists(sub.sub, ord, lists, k);
        auto eq = equalize(sub.sub, ord, setting, Coloring(k, la_cols),
                           Coloring(k, lb_cols));

        Coloring local(k, la_cols);
        for (const auto& m : eq.composed.moves) {
            auto local_chain = kempe_chain(sub.sub, local, m.vertex, m.target_color);
            std::vector<int> global_chain;
            for (int lv : local_chain)
                global_chain.push_back(sub.to_global[lv]);
            std::sort(global_chain.begin(), global_chain.end());
            auto [next, part] = lift_chain_change(g, L, cur, i, global_chain,
                                                  local(m.vertex), m.target_color,
                                                  instr);
            for (int w = 0; w < g.n; ++w)
                if (L.level[w] > i && next(w) != cur(w))
                    fail(errc::internal_invariant_broken,
                         "lift disturbed an equalized layer");
            cur = std::move(next);
            seq.append(part);
            swap_chain_colors(local, local_chain, local(m.vertex), m.target_color);
        }
        for (int li = 0; li < nl; ++li)
            if (cur(sub.to_global[li]) != lb_cols[li])
                fail(errc::internal_invariant_broken, "layer not equalized");
    }
    if (!(cur == beta))
        fail(errc::internal_invariant_broken, "driver did not reach beta");
    return seq;
}

} // namespace kempe
