#ifndef PATHWISE_ORACLE_HPP
#define PATHWISE_ORACLE_HPP

#include "pathwise/problem.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pathwise {

    struct OracleResult {
        std::optional<double> optimal_cost;
        std::optional<std::vector<NodeId>> optimal_tour;
        std::uint64_t paths_enumerated = 0; ///< feasible s-d paths seen
    };

    /// Exhaustive depth-first enumeration of every elementary s-d path, pruned by resource infeasibility
    /// only. Neighbours are visited in ascending id order and only strictly cheaper paths replace the
    /// best, so among equal-cost optima the lexicographically smallest tour wins. Throws TooLarge when
    /// the graph has more than `node_cap` nodes.
    [[nodiscard]] OracleResult enumerate(const Problem& problem, std::size_t node_cap = 12);

} // namespace pathwise

#endif // PATHWISE_ORACLE_HPP
