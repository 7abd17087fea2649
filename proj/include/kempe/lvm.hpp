#pragma once

#include <vector>

#include "kempe.hpp"

namespace kempe {

namespace detail {

// Extends a move list valid on the suffix graph G[order[i+1..]] to one valid
// on G[order[i..]], following the peel-one-vertex recursion: each inherited
// change is applied directly unless reinserting v would merge two bichromatic
// components, in which case v is first parked on a color absent from its
// active closed neighborhood.
inline std::vector<KempeMove> lvm_rec(const Graph& g, const std::vector<int>& order,
                                      int i, Coloring cur, const Coloring& beta)
{
    const int n = g.n;
    std::vector<KempeMove> out;
    if (i >= n)
        return out;
    int v = order[i];
    if (i == n - 1) {
        if (cur(v) != beta(v))
            out.push_back({v, beta(v)});
        return out;
    }

    std::vector<char> mask_i(n, 0), mask_i1(n, 0);
    for (int j = i; j < n; ++j)
        mask_i[order[j]] = 1;
    for (int j = i + 1; j < n; ++j)
        mask_i1[order[j]] = 1;

    auto sub = lvm_rec(g, order, i + 1, cur, beta);

    for (const auto& m : sub) {
        auto chain_sub = kempe_chain_masked(g, cur, m.vertex, m.target_color, mask_i1);
        auto chain_full = kempe_chain_masked(g, cur, m.vertex, m.target_color, mask_i);
        std::vector<int> chain_full_no_v;
        for (int w : chain_full)
            if (w != v)
                chain_full_no_v.push_back(w);
        if (chain_full_no_v != chain_sub) {
            // v bridges components of the inherited chain; park it first.
            int cv = -1;
            for (int c = 1; c <= cur.k; ++c) {
                bool used = (c == cur(v));
                for (int w : g.adj[v])
                    if (mask_i[w] && cur(w) == c)
                        used = true;
                if (!used) {
                    cv = c;
                    break;
                }
            }
            if (cv == -1)
                fail(errc::internal_invariant_broken,
                     "no parking color for peeled vertex");
            auto triv = kempe_chain_masked(g, cur, v, cv, mask_i);
            if (triv.size() != 1)
                fail(errc::internal_invariant_broken, "parking change not trivial");
            swap_chain_colors(cur, triv, cur(v), cv);
            out.push_back({v, cv});
            chain_full = kempe_chain_masked(g, cur, m.vertex, m.target_color, mask_i);
        }
        swap_chain_colors(cur, chain_full, cur(m.vertex), m.target_color);
        out.push_back(m);
    }

    if (cur(v) != beta(v))
        out.push_back({v, beta(v)});
    return out;
}

} // namespace detail

// The baseline recursive generator. The produced sequence may be exponential
// in n; it exists as the reference all other generators are measured against.
inline MoveSequence lvm_sequence(const Graph& g, const Coloring& alpha,
                                 const Coloring& beta, int k)
{
    auto [ord, d] = degeneracy_ordering(g);
    if (k < d + 1)
        fail(errc::palette_too_small,
             "need k >= degeneracy + 1 = " + std::to_string(d + 1));
    if (alpha.k != k || beta.k != k || alpha.size() != g.n || beta.size() != g.n)
        fail(errc::precondition_violated, "colorings do not match graph/palette");
    if (!is_proper(g, alpha) || !is_proper(g, beta))
        fail(errc::precondition_violated, "endpoint coloring not proper");
    MoveSequence seq;
    seq.provenance = "lvm";
    seq.moves = detail::lvm_rec(g, ord.order, 0, alpha, beta);
    return seq;
}

} // namespace kempe
