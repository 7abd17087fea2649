#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace kempe {

// Simple undirected graph with a fixed 0..n-1 vertex indexing. Adjacency
// lists are kept sorted; construction rejects loops and duplicate edges.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<std::string> labels; // optional, empty or size n

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::vector<std::string> labels = {})
    {
        if (n < 0)
            fail(errc::precondition_violated, "negative vertex count");
        Graph g;
        g.n = n;
        g.adj.assign(n, {});
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                fail(errc::precondition_violated, "edge endpoint out of range");
            if (u == v)
                fail(errc::precondition_violated, "self-loop rejected");
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
        for (auto& nb : g.adj) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                fail(errc::precondition_violated, "duplicate edge rejected");
        }
        if (!labels.empty() && static_cast<int>(labels.size()) != n)
            fail(errc::precondition_violated, "label count mismatch");
        g.labels = std::move(labels);
        return g;
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool has_edge(int u, int v) const
    {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }

    int edge_count() const
    {
        int m = 0;
        for (auto& nb : adj)
            m += static_cast<int>(nb.size());
        return m / 2;
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    int max_degree() const
    {
        int d = 0;
        for (int v = 0; v < n; ++v)
            d = std::max(d, degree(v));
        return d;
    }

    bool is_regular(int r) const
    {
        for (int v = 0; v < n; ++v)
            if (degree(v) != r)
                return false;
        return true;
    }

    bool is_complete() const { return edge_count() == n * (n - 1) / 2; }

    bool is_connected() const
    {
        if (n <= 1)
            return true;
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        return cnt == n;
    }
};

enum class ordering_kind { degeneracy, peo, layer_refined, arbitrary };

// A permutation of the vertices. order[i] is the i-th vertex, pos[v] its
// position; N+(v) / N-(v) are the neighbors after / before v in the order.
struct VertexOrdering {
    std::vector<int> order;
    std::vector<int> pos;
    ordering_kind kind = ordering_kind::arbitrary;

    VertexOrdering() = default;

    VertexOrdering(std::vector<int> ord, ordering_kind k)
        : order(std::move(ord))
        , kind(k)
    {
        pos.assign(order.size(), -1);
        for (int i = 0; i < static_cast<int>(order.size()); ++i) {
            int v = order[i];
            if (v < 0 || v >= static_cast<int>(order.size()) || pos[v] != -1)
                fail(errc::precondition_violated, "ordering is not a permutation");
            pos[v] = i;
        }
    }

    static VertexOrdering identity(int n, ordering_kind k = ordering_kind::arbitrary)
    {
        std::vector<int> ord(n);
        std::iota(ord.begin(), ord.end(), 0);
        return VertexOrdering(std::move(ord), k);
    }

    int size() const { return static_cast<int>(order.size()); }

    bool before(int u, int v) const { return pos[u] < pos[v]; }

    std::vector<int> upper_neighbors(const Graph& g, int v) const
    {
        std::vector<int> out;
        for (int w : g.adj[v])
            if (pos[w] > pos[v])
                out.push_back(w);
        return out;
    }

    std::vector<int> lower_neighbors(const Graph& g, int v) const
    {
        std::vector<int> out;
        for (int w : g.adj[v])
            if (pos[w] < pos[v])
                out.push_back(w);
        return out;
    }
};

// Min-degree peeling, smallest vertex id on ties. Returns the peel order
// together with the exact degeneracy d = max over steps of the degree at
// removal; the order satisfies |N+(v)| <= d for every v.
inline std::pair<VertexOrdering, int> degeneracy_ordering(const Graph& g)
{
    std::vector<int> deg(g.n);
    std::vector<char> removed(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        deg[v] = g.degree(v);
    std::vector<int> order;
    order.reserve(g.n);
    int d = 0;
    for (int step = 0; step < g.n; ++step) {
        int best = -1;
        for (int v = 0; v < g.n; ++v)
            if (!removed[v] && (best == -1 || deg[v] < deg[best]))
                best = v;
        d = std::max(d, deg[best]);
        removed[best] = 1;
        order.push_back(best);
        for (int w : g.adj[best])
            if (!removed[w])
                --deg[w];
    }
    return {VertexOrdering(std::move(order), ordering_kind::degeneracy), d};
}

// An induced subgraph together with both index translations.
struct InducedSubgraph {
    Graph sub;
    std::vector<int> to_global;         // local -> global
    std::vector<int> to_local;          // global -> local, -1 if absent
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices)
{
    InducedSubgraph s;
    s.to_global = vertices;
    std::sort(s.to_global.begin(), s.to_global.end());
    s.to_local.assign(g.n, -1);
    for (int i = 0; i < static_cast<int>(s.to_global.size()); ++i)
        s.to_local[s.to_global[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(s.to_global.size()); ++i)
        for (int w : g.adj[s.to_global[i]]) {
            int j = s.to_local[w];
            if (j > i)
                edges.emplace_back(i, j);
        }
    s.sub = Graph::from_edges(static_cast<int>(s.to_global.size()), edges);
    return s;
}

// Brute-force isomorphism test; only intended for desk-scale guards.
inline bool isomorphic_brute(const Graph& a, const Graph& b)
{
    if (a.n != b.n || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.n; ++v)
        da.push_back(a.degree(v));
    for (int v = 0; v < b.n; ++v)
        db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db)
        return false;
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < a.n && ok; ++u) {
            if (a.degree(u) != b.degree(perm[u])) {
                ok = false;
                break;
            }
            for (int w : a.adj[u])
                if (!b.has_edge(perm[u], perm[w])) {
                    ok = false;
                    break;
                }
        }
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

namespace fixtures {

inline Graph k3() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph p4() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Graph c4() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

inline Graph c5()
{
    return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
}

// Outer triangle o1..o3 = 0..2, inner triangle i1..i3 = 3..5, matching oj-ij.
inline Graph prism3()
{
    return Graph::from_edges(6,
                             {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                              {0, 3}, {1, 4}, {2, 5}},
                             {"o1", "o2", "o3", "i1", "i2", "i3"});
}

inline Graph complete(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

inline Graph path(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    return Graph::from_edges(n, e);
}

inline Graph cycle(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    if (n > 2)
        e.emplace_back(0, n - 1);
    return Graph::from_edges(n, e);
}

inline Graph star(int leaves)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v <= leaves; ++v)
        e.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, e);
}

inline Graph complete_bipartite(int a, int b)
{
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v)
            e.emplace_back(u, a + v);
    return Graph::from_edges(a + b, e);
}

} // namespace fixtures

inline bool is_three_prism(const Graph& g)
{
    return g.n == 6 && g.is_regular(3) && isomorphic_brute(g, fixtures::prism3());
}

} // namespace kempe
