#include "pathwise/path.hpp"

#include "pathwise/errors.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

namespace pathwise {

    std::string_view to_string(PathStatus status) {
        switch (status) {
        case PathStatus::Optimal: return "Optimal";
        case PathStatus::Feasible: return "Feasible";
        case PathStatus::Infeasible: return "Infeasible";
        case PathStatus::TimeLimit: return "TimeLimit";
        }
        return "Infeasible";
    }

    bool is_elementary(std::span<const NodeId> tour) {
        std::unordered_set<NodeId> seen;
        for (NodeId v : tour)
            if (!seen.insert(v).second)
                return false;
        return true;
    }

    Path evaluate_path(const Problem& problem, std::vector<NodeId> tour, double expected_cost) {
        const Graph& g = problem.graph();
        if (tour.size() < 2 || tour.front() != g.source() || tour.back() != g.destination())
            throw DecodeMismatch("decoded tour does not run from source to destination");

        const std::size_t r = problem.resource_count();
        std::vector<double> values(r);
        for (std::size_t k = 0; k < r; ++k)
            values[k] = problem.resource(k).init(g.source(), g.destination()).first;

        double cost = 0.0;
        for (std::size_t pos = 0; pos + 1 < tour.size(); ++pos) {
            const NodeId i = tour[pos];
            const NodeId j = tour[pos + 1];
            const auto arc = g.arc_id(i, j);
            if (!arc)
                throw DecodeMismatch(
                    "decoded tour uses missing arc (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            cost += problem.cost(*arc);
            for (std::size_t k = 0; k < r; ++k) {
                values[k] = problem.resource(k).extend(values[k], i, j, *arc, Direction::Forward);
                if (!problem.resource(k).is_feasible(values[k], j, Direction::Forward))
                    throw DecodeMismatch("decoded tour violates resource " + std::to_string(k));
            }
        }
        for (std::size_t k = 0; k < r; ++k)
            if (!problem.resource(k).accepts_total(values[k]))
                throw DecodeMismatch("decoded tour misses the lower bound of resource " + std::to_string(k));
        if (std::abs(cost - expected_cost) > kCostTol)
            throw DecodeMismatch("decoded cost " + std::to_string(cost) + " differs from label cost "
                                 + std::to_string(expected_cost));

        Path path;
        path.elementary   = is_elementary(tour);
        path.tour         = std::move(tour);
        path.cost         = cost;
        path.consumptions = std::move(values);
        path.status       = PathStatus::Feasible;
        return path;
    }

} // namespace pathwise
