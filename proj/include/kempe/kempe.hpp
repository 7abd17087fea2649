#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"

namespace kempe {

// A Kempe change encoded as (vertex, target color). The chain K_{v,c} is
// recomputed from the coloring at application time, which keeps sequences
// compact and self-validating.
struct KempeMove {
    int vertex = 0;
    int target_color = 0;

    bool operator==(const KempeMove& o) const
    {
        return vertex == o.vertex && target_color == o.target_color;
    }
};

struct MoveSequence {
    std::vector<KempeMove> moves;
    std::string provenance;

    int length() const { return static_cast<int>(moves.size()); }

    void append(const MoveSequence& o)
    {
        moves.insert(moves.end(), o.moves.begin(), o.moves.end());
    }

    void push(int v, int c) { moves.push_back({v, c}); }
};

namespace detail {

// Chain restricted to G[mask]; mask == nullptr means the whole graph.
inline std::vector<int> chain_impl(const Graph& g, const Coloring& col, int v, int c,
                                   const std::vector<char>* mask)
{
    if (v < 0 || v >= g.n)
        fail(errc::precondition_violated, "chain vertex out of range");
    if (c < 1 || c > col.k)
        fail(errc::color_out_of_range, "chain color outside palette");
    int cv = col(v);
    if (c == cv)
        fail(errc::degenerate_chain, "target color equals current color");
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{v}, out;
    seen[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (int w : g.adj[u]) {
            if (seen[w] || (mask && !(*mask)[w]))
                continue;
            if (col(w) == c || col(w) == cv) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// The maximal connected set containing v whose vertices are colored c or
// col(v). Rejects the degenerate request c == col(v).
inline std::vector<int> kempe_chain(const Graph& g, const Coloring& col, int v, int c)
{
    return detail::chain_impl(g, col, v, c, nullptr);
}

inline std::vector<int> kempe_chain_masked(const Graph& g, const Coloring& col, int v,
                                           int c, const std::vector<char>& mask)
{
    if (!mask[v])
        fail(errc::precondition_violated, "chain anchor outside mask");
    return detail::chain_impl(g, col, v, c, &mask);
}

inline void swap_chain_colors(Coloring& col, const std::vector<int>& chain, int a, int b)
{
    for (int u : chain) {
        if (col.colors[u] == a)
            col.colors[u] = b;
        else if (col.colors[u] == b)
            col.colors[u] = a;
    }
}

inline Coloring apply_move(const Graph& g, const Coloring& col, const KempeMove& m)
{
    auto chain = kempe_chain(g, col, m.vertex, m.target_color);
    Coloring out = col;
    swap_chain_colors(out, chain, col(m.vertex), m.target_color);
    return out;
}

inline void apply_move_inplace(const Graph& g, Coloring& col, const KempeMove& m)
{
    auto chain = kempe_chain(g, col, m.vertex, m.target_color);
    swap_chain_colors(col, chain, col(m.vertex), m.target_color);
}

// Replays a sequence, insisting on a proper (and on-list, when lists are
// given) coloring after every single move.
inline Coloring verify_sequence(const Graph& g, const Coloring& start,
                                const MoveSequence& seq,
                                const std::optional<ListAssignment>& lists = std::nullopt)
{
    if (!is_proper(g, start, lists))
        fail(errc::precondition_violated, "start coloring not proper");
    Coloring cur = start;
    for (int i = 0; i < seq.length(); ++i) {
        const auto& m = seq.moves[i];
        if (m.vertex < 0 || m.vertex >= g.n || m.target_color < 1 || m.target_color > cur.k)
            fail(errc::invalid_move, "move out of range at index " + std::to_string(i), i);
        if (m.target_color == cur(m.vertex))
            fail(errc::invalid_move, "degenerate chain at index " + std::to_string(i), i);
        apply_move_inplace(g, cur, m);
        if (!is_proper(g, cur, lists))
            fail(errc::improper_intermediate,
                 "improper coloring after move " + std::to_string(i), i);
    }
    return cur;
}

// Kempe changes are involutions on a fixed chain, so a replayed sequence can
// be undone move by move: record each vertex's color before its move and
// emit the moves reversed.
inline MoveSequence inverse_sequence(const Graph& g, const Coloring& start,
                                     const MoveSequence& seq)
{
    Coloring cur = start;
    std::vector<KempeMove> inv;
    inv.reserve(seq.moves.size());
    for (const auto& m : seq.moves) {
        inv.push_back({m.vertex, cur(m.vertex)});
        apply_move_inplace(g, cur, m);
    }
    std::reverse(inv.begin(), inv.end());
    MoveSequence out;
    out.moves = std::move(inv);
    out.provenance = seq.provenance + "-inverse";
    return out;
}

} // namespace kempe
