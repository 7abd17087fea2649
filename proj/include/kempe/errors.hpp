#pragma once

#include <stdexcept>
#include <string>

namespace kempe {

enum class errc {
    color_out_of_range,
    degenerate_chain,
    invalid_move,
    improper_intermediate,
    palette_too_small,
    precondition_violated,
    internal_invariant_broken,
    layering_failed,
    too_large,
    not_a_chain,
    not_chordal,
    invalid_decomposition,
    adjacent_pair,
    inconsistent_coloring,
    not_a_separator,
    not_a_clique,
    three_prism_excluded,
    routing_failed,
    budget_exceeded,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::color_out_of_range: return "ColorOutOfRange";
    case errc::degenerate_chain: return "DegenerateChain";
    case errc::invalid_move: return "InvalidMove";
    case errc::improper_intermediate: return "ImproperIntermediate";
    case errc::palette_too_small: return "PaletteTooSmall";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::internal_invariant_broken: return "InternalInvariantBroken";
    case errc::layering_failed: return "LayeringFailed";
    case errc::too_large: return "TooLarge";
    case errc::not_a_chain: return "NotAChain";
    case errc::not_chordal: return "NotChordal";
    case errc::invalid_decomposition: return "InvalidDecomposition";
    case errc::adjacent_pair: return "AdjacentPair";
    case errc::inconsistent_coloring: return "InconsistentColoring";
    case errc::not_a_separator: return "NotASeparator";
    case errc::not_a_clique: return "NotAClique";
    case errc::three_prism_excluded: return "ThreePrismExcluded";
    case errc::routing_failed: return "RoutingFailed";
    case errc::budget_exceeded: return "BudgetExceeded";
    }
    return "UnknownError";
}

// All library failures are reported through this type. `index` carries the
// offending move position for replay errors, -1 otherwise.
struct kempe_error : std::runtime_error {
    errc code;
    int index;

    kempe_error(errc c, const std::string& what_arg, int idx = -1)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what_arg)
        , code(c)
        , index(idx)
    {
    }
};

[[noreturn]] inline void fail(errc c, const std::string& msg, int idx = -1)
{
    throw kempe_error(c, msg, idx);
}

} // namespace kempe
