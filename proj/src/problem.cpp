#include "pathwise/problem.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pathwise {

    Problem::Problem(std::string name, Graph graph, std::vector<double> arc_costs, std::vector<ResourcePtr> resources,
        std::size_t critical_index)
        : _name(std::move(name)), _graph(std::move(graph)), _arc_costs(std::move(arc_costs)),
          _resources(std::move(resources)), _critical(critical_index) {
        validate();
    }

    void Problem::validate() const {
        if (_arc_costs.size() != _graph.arc_count())
            throw InconsistentData("arc cost count does not match arc count");
        if (std::any_of(_arc_costs.begin(), _arc_costs.end(), [](double c) { return !std::isfinite(c); }))
            throw InconsistentData("arc costs must be finite");
        if (_resources.empty())
            throw InconsistentData("problem needs at least one resource");
        if (std::any_of(_resources.begin(), _resources.end(), [](const ResourcePtr& r) { return !r; }))
            throw InconsistentData("null resource");
        if (_critical >= _resources.size())
            throw InconsistentData("critical resource index out of range");
        if (!_resources[_critical]->monotone())
            throw InconsistentData("critical resource must be monotone");
    }

    Cyclicity classify_cyclicity(const Problem& problem) {
        const auto& costs = problem.arc_costs();
        return std::any_of(costs.begin(), costs.end(), [](double c) { return c < 0.0; }) ? Cyclicity::Cyclic
                                                                                          : Cyclicity::Acyclic;
    }

} // namespace pathwise
