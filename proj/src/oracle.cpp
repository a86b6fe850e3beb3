#include "pathwise/oracle.hpp"

#include "pathwise/errors.hpp"

#include <string>

namespace pathwise {

    namespace {

        class Enumerator {
        public:
            explicit Enumerator(const Problem& problem)
                : _problem(problem), _on_path(problem.node_count(), false) {}

            OracleResult run() {
                const NodeId s = _problem.source();
                std::vector<double> values(_problem.resource_count());
                for (std::size_t k = 0; k < values.size(); ++k) {
                    values[k] = _problem.resource(k).init(s, _problem.destination()).first;
                    if (!_problem.resource(k).is_feasible(values[k], s, Direction::Forward))
                        return _result;
                }
                _tour.push_back(s);
                _on_path[s] = true;
                visit(s, 0.0, values);
                return _result;
            }

        private:
            void visit(NodeId i, double cost, const std::vector<double>& values) {
                if (i == _problem.destination()) {
                    for (std::size_t k = 0; k < values.size(); ++k)
                        if (!_problem.resource(k).accepts_total(values[k]))
                            return;
                    ++_result.paths_enumerated;
                    if (!_result.optimal_cost || cost < *_result.optimal_cost) {
                        _result.optimal_cost = cost;
                        _result.optimal_tour = _tour;
                    }
                    return;
                }
                const auto& graph = _problem.graph();
                const auto heads  = graph.out_neighbors(i);
                const auto arcs   = graph.out_arcs(i);
                std::vector<double> next(values.size());
                for (std::size_t idx = 0; idx < heads.size(); ++idx) {
                    const NodeId j = heads[idx];
                    if (_on_path[j])
                        continue;
                    bool feasible = true;
                    for (std::size_t k = 0; k < values.size() && feasible; ++k) {
                        const auto& r = _problem.resource(k);
                        next[k]       = r.extend(values[k], i, j, arcs[idx], Direction::Forward);
                        feasible      = r.is_feasible(next[k], j, Direction::Forward);
                    }
                    if (!feasible)
                        continue;
                    _tour.push_back(j);
                    _on_path[j] = true;
                    visit(j, cost + _problem.cost(arcs[idx]), next);
                    _on_path[j] = false;
                    _tour.pop_back();
                }
            }

            const Problem& _problem;
            std::vector<bool> _on_path;
            std::vector<NodeId> _tour;
            OracleResult _result;
        };

    } // namespace

    OracleResult enumerate(const Problem& problem, std::size_t node_cap) {
        if (problem.node_count() > node_cap)
            throw TooLarge("oracle refuses " + std::to_string(problem.node_count()) + " nodes (cap "
                           + std::to_string(node_cap) + ")");
        return Enumerator(problem).run();
    }

} // namespace pathwise
