#include "support.hpp"

#include <cmath>
#include <set>

namespace pathwise::testing {

    namespace {

        Problem assemble(std::string name, std::size_t n, NodeId s, NodeId d, const std::vector<Arc>& arcs,
            const std::vector<double>& costs, ResourceKind kind, ResourceData data) {
            Graph graph = Graph::build(n, arcs, s, d);
            std::vector<double> by_id(graph.arc_count());
            std::vector<double> consumption(graph.arc_count());
            for (std::size_t k = 0; k < arcs.size(); ++k) {
                const ArcId id = *graph.arc_id(arcs[k].tail, arcs[k].head);
                by_id[id]      = costs[k];
                if (!data.arc_consumption.empty())
                    consumption[id] = data.arc_consumption[k];
            }
            if (!data.arc_consumption.empty())
                data.arc_consumption = consumption;
            std::vector<ResourcePtr> resources{make_resource(kind, std::move(data), graph)};
            return Problem(std::move(name), std::move(graph), std::move(by_id), std::move(resources), 0);
        }

    } // namespace

    Problem t4(double capacity) {
        const std::vector<Arc> arcs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        const std::vector<double> costs{1, 4, 10, 1, 5, 1};
        return assemble("t4", 4, 0, 3, arcs, costs, ResourceKind::Capacity, {0.0, capacity, {0, 1, 1, 0}, {}, {}});
    }

    Problem t3neg() {
        const std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 1}};
        const std::vector<double> costs{-5, -5, -5};
        return assemble("t3neg", 3, 0, 2, arcs, costs, ResourceKind::NodeLimit, {0.0, 4.0, {}, {}, {}});
    }

    Problem random_cyclic(std::uint64_t seed, std::size_t n) {
        UniformSource rng(seed);
        std::vector<Arc> arcs;
        std::vector<double> costs;
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                arcs.push_back({i, j});
                costs.push_back(rng.unit() < 0.3 ? -static_cast<double>(rng.integer(1, 10))
                                                 : static_cast<double>(rng.integer(1, 20)));
            }
        std::vector<double> demand(n, 0.0);
        double total = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            demand[i] = static_cast<double>(rng.integer(1, 5));
            total += demand[i];
        }
        const double capacity = std::floor(total * rng.uniform(0.3, 0.7));
        return assemble("cyclic-" + std::to_string(seed), n, 0, static_cast<NodeId>(n - 1), arcs, costs,
            ResourceKind::Capacity, {0.0, capacity, demand, {}, {}});
    }

    Problem random_acyclic(std::uint64_t seed, std::size_t n, std::size_t out_degree) {
        UniformSource rng(seed);
        std::vector<Arc> arcs;
        std::vector<double> costs;
        std::vector<double> times;
        auto add = [&](NodeId i, NodeId j) {
            arcs.push_back({i, j});
            costs.push_back(static_cast<double>(rng.integer(1, 100)));
            times.push_back(static_cast<double>(rng.integer(1, 20)));
        };
        // A Hamiltonian backbone keeps d reachable; extra random arcs add alternatives and cycles.
        for (NodeId i = 0; i + 1 < n; ++i)
            add(i, i + 1);
        for (NodeId i = 0; i < n; ++i)
            for (std::size_t k = 1; k < out_degree; ++k) {
                const auto j = static_cast<NodeId>(rng.integer(0, static_cast<std::int64_t>(n) - 1));
                if (j != i)
                    add(i, j);
            }
        // Drop duplicate pairs so costs and times stay aligned after Graph::build collapses them.
        std::vector<Arc> unique_arcs;
        std::vector<double> unique_costs;
        std::vector<double> unique_times;
        std::set<std::pair<NodeId, NodeId>> seen;
        for (std::size_t k = 0; k < arcs.size(); ++k) {
            const std::pair key{arcs[k].tail, arcs[k].head};
            if (!seen.insert(key).second)
                continue;
            unique_arcs.push_back(arcs[k]);
            unique_costs.push_back(costs[k]);
            unique_times.push_back(times[k]);
        }
        const double bound = 10.0 * static_cast<double>(n) * rng.uniform(0.3, 0.8);
        return assemble("acyclic-" + std::to_string(seed), n, 0, static_cast<NodeId>(n - 1), unique_arcs, unique_costs,
            ResourceKind::Time, {0.0, bound, {}, unique_times, {}});
    }

    SolverConfig config_for(RelaxationScheme scheme) {
        SolverConfig config;
        config.relaxation = scheme;
        config.parallel   = true;
        config.time_limit = 60.0;
        return config;
    }

} // namespace pathwise::testing
