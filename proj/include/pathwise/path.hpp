#ifndef PATHWISE_PATH_HPP
#define PATHWISE_PATH_HPP

#include "pathwise/problem.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace pathwise {

    enum class PathStatus { Optimal, Feasible, Infeasible, TimeLimit };

    [[nodiscard]] std::string_view to_string(PathStatus status);

    /// A solution: node tour from source to destination with its cost and per-resource totals.
    struct Path {
        std::vector<NodeId> tour;
        double cost = 0.0;
        std::vector<double> consumptions;
        bool elementary   = false;
        PathStatus status = PathStatus::Infeasible;

        [[nodiscard]] bool empty() const noexcept { return tour.empty(); }
    };

    /// Cost tolerance used when comparing decoded and label costs.
    inline constexpr double kCostTol = 1e-6;

    [[nodiscard]] bool is_elementary(std::span<const NodeId> tour);

    /// Re-evaluates `tour` with a fresh forward sweep and builds the Path. Throws DecodeMismatch when the
    /// tour is not an s-d walk over existing arcs, violates a resource, or its cost differs from
    /// `expected_cost` by more than kCostTol.
    [[nodiscard]] Path evaluate_path(const Problem& problem, std::vector<NodeId> tour, double expected_cost);

} // namespace pathwise

#endif // PATHWISE_PATH_HPP
