#ifndef PATHWISE_PROBLEM_HPP
#define PATHWISE_PROBLEM_HPP

#include "pathwise/graph.hpp"
#include "pathwise/resource.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pathwise {

    enum class Cyclicity { Acyclic, Cyclic };

    /// A solvable instance: topology, per-arc costs (any sign) and an ordered resource list with one
    /// critical resource. Validated on construction and immutable afterwards.
    class Problem {
    public:
        Problem(std::string name, Graph graph, std::vector<double> arc_costs, std::vector<ResourcePtr> resources,
            std::size_t critical_index);

        [[nodiscard]] const std::string& name() const noexcept { return _name; }
        [[nodiscard]] const Graph& graph() const noexcept { return _graph; }
        [[nodiscard]] std::size_t node_count() const noexcept { return _graph.node_count(); }
        [[nodiscard]] NodeId source() const noexcept { return _graph.source(); }
        [[nodiscard]] NodeId destination() const noexcept { return _graph.destination(); }

        [[nodiscard]] double cost(ArcId a) const { return _arc_costs[a]; }
        [[nodiscard]] const std::vector<double>& arc_costs() const noexcept { return _arc_costs; }

        [[nodiscard]] const std::vector<ResourcePtr>& resources() const noexcept { return _resources; }
        [[nodiscard]] const Resource& resource(std::size_t k) const { return *_resources[k]; }
        [[nodiscard]] std::size_t resource_count() const noexcept { return _resources.size(); }
        [[nodiscard]] std::size_t critical_index() const noexcept { return _critical; }
        [[nodiscard]] const Resource& critical() const { return *_resources[_critical]; }

        /// Non-fatal issues found while loading (dropped self-loops, collapsed duplicates, ...).
        [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return _warnings; }
        void add_warning(std::string warning) { _warnings.push_back(std::move(warning)); }

        /// Re-checks every invariant; throws InconsistentData on violation.
        void validate() const;

    private:
        std::string _name;
        Graph _graph;
        std::vector<double> _arc_costs;
        std::vector<ResourcePtr> _resources;
        std::size_t _critical;
        std::vector<std::string> _warnings;
    };

    /// Conservative: any negative arc makes the problem cyclic. Without negative arcs there is no
    /// negative-cost cycle, so the visited set can be dropped.
    [[nodiscard]] Cyclicity classify_cyclicity(const Problem& problem);

} // namespace pathwise

#endif // PATHWISE_PROBLEM_HPP
