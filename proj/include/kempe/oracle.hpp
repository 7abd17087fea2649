#pragma once

#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "kempe.hpp"

namespace kempe {

struct OracleBudget {
    int max_n = 10;
    int max_k = 4;
    long long max_colorings = 2000000;
};

// All proper k-colorings, in lexicographic order of the color vectors.
inline std::vector<Coloring> enumerate_colorings(const Graph& g, int k,
                                                 const OracleBudget& budget = {})
{
    if (g.n > budget.max_n || k > budget.max_k)
        fail(errc::budget_exceeded, "instance outside oracle budget");
    std::vector<Coloring> out;
    std::vector<int> cur(g.n, 0);
    // Backtracking over vertices in index order prunes improper prefixes.
    auto rec = [&](auto&& self, int v) -> void {
        if (v == g.n) {
            out.emplace_back(k, cur);
            if (static_cast<long long>(out.size()) > budget.max_colorings)
                fail(errc::budget_exceeded, "coloring count exceeds budget");
            return;
        }
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (int w : g.adj[v])
                if (w < v && cur[w] == c) {
                    ok = false;
                    break;
                }
            if (ok) {
                cur[v] = c;
                self(self, v + 1);
            }
        }
        cur[v] = 0;
    };
    if (g.n == 0)
        out.emplace_back(k, std::vector<int>{});
    else
        rec(rec, 0);
    return out;
}

// R^k(G): nodes are the raw color vectors (no symmetry quotient -- the
// 3-prism argument depends on distinguishing relabelings), edges are single
// Kempe changes.
struct ReconfGraph {
    int k = 0;
    std::vector<Coloring> nodes;
    std::vector<std::vector<int>> edges;  // adjacency by node index
    std::vector<int> class_of;
    int num_classes = 0;

    std::optional<int> index_of(const Coloring& c) const
    {
        auto it = index.find(c.colors);
        if (it == index.end())
            return std::nullopt;
        return it->second;
    }

    std::map<std::vector<int>, int> index;
};

inline ReconfGraph build_reconf(const Graph& g, int k, const OracleBudget& budget = {})
{
    ReconfGraph rg;
    rg.k = k;
    rg.nodes = enumerate_colorings(g, k, budget);
    for (int i = 0; i < static_cast<int>(rg.nodes.size()); ++i)
        rg.index[rg.nodes[i].colors] = i;
    rg.edges.assign(rg.nodes.size(), {});
    for (int i = 0; i < static_cast<int>(rg.nodes.size()); ++i) {
        const Coloring& col = rg.nodes[i];
        for (int v = 0; v < g.n; ++v)
            for (int c = 1; c <= k; ++c) {
                if (c == col(v))
                    continue;
                Coloring nb = apply_move(g, col, {v, c});
                int j = rg.index.at(nb.colors);
                if (j != i)
                    rg.edges[i].push_back(j);
            }
        auto& e = rg.edges[i];
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    rg.class_of.assign(rg.nodes.size(), -1);
    for (int i = 0; i < static_cast<int>(rg.nodes.size()); ++i) {
        if (rg.class_of[i] != -1)
            continue;
        int cls = rg.num_classes++;
        std::vector<int> stack{i};
        rg.class_of[i] = cls;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : rg.edges[u])
                if (rg.class_of[w] == -1) {
                    rg.class_of[w] = cls;
                    stack.push_back(w);
                }
        }
    }
    return rg;
}

// Frozen: for every pair of palette colors the subgraph induced by their two
// classes is connected (empty and singleton subgraphs count as connected).
inline bool is_frozen(const Graph& g, const Coloring& col)
{
    if (!is_proper(g, col))
        fail(errc::precondition_violated, "frozen test needs a proper coloring");
    for (int a = 1; a <= col.k; ++a)
        for (int b = a + 1; b <= col.k; ++b) {
            std::vector<int> verts;
            for (int v = 0; v < g.n; ++v)
                if (col(v) == a || col(v) == b)
                    verts.push_back(v);
            if (verts.size() <= 1)
                continue;
            std::vector<char> in(g.n, 0), seen(g.n, 0);
            for (int v : verts)
                in[v] = 1;
            std::vector<int> stack{verts[0]};
            seen[verts[0]] = 1;
            int cnt = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : g.adj[u])
                    if (in[w] && !seen[w]) {
                        seen[w] = 1;
                        ++cnt;
                        stack.push_back(w);
                    }
            }
            if (cnt != static_cast<int>(verts.size()))
                return false;
        }
    return true;
}

inline std::vector<int> bfs_distances(const ReconfGraph& rg, int src)
{
    std::vector<int> dist(rg.nodes.size(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : rg.edges[u])
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

inline std::optional<int> shortest_path(const ReconfGraph& rg, const Coloring& a,
                                        const Coloring& b)
{
    auto ia = rg.index_of(a), ib = rg.index_of(b);
    if (!ia || !ib)
        fail(errc::precondition_violated, "coloring is not an oracle node");
    auto dist = bfs_distances(rg, *ia);
    if (dist[*ib] == -1)
        return std::nullopt;
    return dist[*ib];
}

// Recovers the move joining two adjacent reconfiguration nodes: the changed
// vertices form one chain, so the smallest changed vertex and its new color
// identify it.
inline KempeMove edge_move(const ReconfGraph& rg, int from, int to)
{
    const auto& a = rg.nodes[from];
    const auto& b = rg.nodes[to];
    for (int v = 0; v < a.size(); ++v)
        if (a(v) != b(v))
            return {v, b(v)};
    fail(errc::internal_invariant_broken, "identical oracle nodes");
}

// BFS move path between two nodes of one class.
inline std::optional<MoveSequence> oracle_path(const ReconfGraph& rg, const Coloring& a,
                                               const Coloring& b)
{
    auto ia = rg.index_of(a), ib = rg.index_of(b);
    if (!ia || !ib)
        fail(errc::precondition_violated, "coloring is not an oracle node");
    std::vector<int> prev(rg.nodes.size(), -2);
    std::queue<int> q;
    prev[*ia] = -1;
    q.push(*ia);
    while (!q.empty() && prev[*ib] == -2) {
        int u = q.front();
        q.pop();
        for (int w : rg.edges[u])
            if (prev[w] == -2) {
                prev[w] = u;
                q.push(w);
            }
    }
    if (prev[*ib] == -2)
        return std::nullopt;
    std::vector<int> path;
    for (int u = *ib; u != -1; u = prev[u])
        path.push_back(u);
    std::reverse(path.begin(), path.end());
    MoveSequence seq;
    seq.provenance = "oracle-bfs";
    for (size_t i = 0; i + 1 < path.size(); ++i)
        seq.moves.push_back(edge_move(rg, path[i], path[i + 1]));
    return seq;
}

struct OracleReport {
    long long num_colorings = 0;
    int num_classes = 0;
    std::vector<long long> class_sizes;
    std::vector<int> diameter_per_class;
    std::vector<int> frozen; // node indices
};

inline OracleReport oracle_report(const Graph& g, int k, const OracleBudget& budget = {})
{
    ReconfGraph rg = build_reconf(g, k, budget);
    OracleReport rep;
    rep.num_colorings = static_cast<long long>(rg.nodes.size());
    rep.num_classes = rg.num_classes;
    rep.class_sizes.assign(rg.num_classes, 0);
    rep.diameter_per_class.assign(rg.num_classes, 0);
    for (int i = 0; i < static_cast<int>(rg.nodes.size()); ++i)
        ++rep.class_sizes[rg.class_of[i]];
    for (int i = 0; i < static_cast<int>(rg.nodes.size()); ++i) {
        auto dist = bfs_distances(rg, i);
        int cls = rg.class_of[i];
        for (int d : dist)
            rep.diameter_per_class[cls] = std::max(rep.diameter_per_class[cls], d);
        if (is_frozen(g, rg.nodes[i]))
            rep.frozen.push_back(i);
    }
    return rep;
}

} // namespace kempe
