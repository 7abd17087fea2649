#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"

namespace kempe {

// Total map vertex -> color in 1..k. Properness is not an invariant; the
// recoloring algorithms route through improper-looking intermediate checks
// explicitly, so it is validated on demand instead.
struct Coloring {
    int k = 0;
    std::vector<int> colors;

    Coloring() = default;

    Coloring(int palette, std::vector<int> cols)
        : k(palette)
        , colors(std::move(cols))
    {
        if (k < 0)
            fail(errc::color_out_of_range, "negative palette");
        for (int c : colors)
            if (c < 1 || c > k)
                fail(errc::color_out_of_range, "vertex color outside 1..k");
    }

    int operator()(int v) const { return colors[v]; }

    int size() const { return static_cast<int>(colors.size()); }

    bool operator==(const Coloring& o) const
    {
        return k == o.k && colors == o.colors;
    }
};

struct ListAssignment {
    std::vector<std::vector<int>> lists; // sorted color ids, one list per vertex

    static ListAssignment uniform(int n, int k)
    {
        ListAssignment la;
        la.lists.assign(n, {});
        for (auto& l : la.lists)
            for (int c = 1; c <= k; ++c)
                l.push_back(c);
        return la;
    }

    bool contains(int v, int c) const
    {
        const auto& l = lists[v];
        return std::binary_search(l.begin(), l.end(), c);
    }

    void validate(int n, int k) const
    {
        if (static_cast<int>(lists.size()) != n)
            fail(errc::precondition_violated, "list assignment size mismatch");
        for (const auto& l : lists) {
            if (l.empty())
                fail(errc::precondition_violated, "empty color list");
            for (int c : l)
                if (c < 1 || c > k)
                    fail(errc::color_out_of_range, "list color outside palette");
        }
    }
};

inline bool is_proper(const Graph& g, const Coloring& col,
                      const std::optional<ListAssignment>& lists = std::nullopt)
{
    if (col.size() != g.n)
        return false;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (v > u && col(u) == col(v))
                return false;
    if (lists)
        for (int v = 0; v < g.n; ++v)
            if (!lists->contains(v, col(v)))
                return false;
    return true;
}

} // namespace kempe
