#include "pathwise/instgen.hpp"

#include "pathwise/errors.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace pathwise {

    namespace {

        constexpr std::array<double, 4> kServiceTimes{10.0, 20.0, 30.0, 40.0};
        constexpr double kTimeDivisor = 100.0;

        double rounded_distance(const Point& a, const Point& b) {
            return std::round(std::hypot(a.x - b.x, a.y - b.y));
        }

    } // namespace

    std::int64_t UniformSource::integer(std::int64_t a, std::int64_t b) {
        const auto span = static_cast<std::uint64_t>(b - a) + 1;
        return a + static_cast<std::int64_t>(std::min<std::uint64_t>(
                       static_cast<std::uint64_t>(unit() * static_cast<double>(span)), span - 1));
    }

    WindowSample sample_window(UniformSource& rng, double wide_fraction) {
        WindowSample s;
        s.wide  = rng.unit() < wide_fraction;
        s.open  = rng.uniform(0.0, 1000.0);
        s.close = s.wide ? s.open + 100.0 * rng.uniform(1.0, 4.0) : s.open + 100.0 * rng.uniform(0.1, 0.6);
        return s;
    }

    Problem generate(const PcGenSpec& spec) {
        if (spec.n < 2)
            throw InconsistentData("a prize-collecting instance needs a depot and at least one customer");
        if (!spec.base_nodes.empty() && spec.base_nodes.size() < spec.n)
            throw InconsistentData("base data has " + std::to_string(spec.base_nodes.size()) + " nodes, "
                                   + std::to_string(spec.n) + " requested");
        if (!(spec.capacity > 0.0) || spec.node_limit < 2)
            throw InconsistentData("capacity must be positive and the node limit at least 2");

        UniformSource rng(spec.seed);
        const std::size_t n    = spec.n;
        const NodeId sink      = static_cast<NodeId>(n);
        const std::size_t size = n + 1;

        std::vector<Point> points(size);
        std::vector<double> demand1(size, 0.0);
        std::vector<double> demand2(size, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (spec.base_nodes.empty())
                points[i] = {rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)};
            else
                points[i] = spec.base_nodes[i].position;
        }
        points[sink] = points[0];
        for (std::size_t i = 1; i < n; ++i) {
            const auto& base = spec.base_nodes;
            demand1[i] = !base.empty() && base[i].demand ? *base[i].demand : static_cast<double>(rng.integer(1, 10));
            demand2[i] = static_cast<double>(rng.integer(1, 10));
        }
        const double capacity2 = rng.uniform(0.8 * spec.capacity, 1.2 * spec.capacity);

        std::vector<double> service(size, 0.0);
        std::vector<TimeWindow> windows(size);
        double latest = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            service[i]     = kServiceTimes[static_cast<std::size_t>(rng.integer(0, 3))];
            const auto w   = sample_window(rng, spec.wide_tw_fraction);
            windows[i]     = {w.open, std::max(w.close, w.open + service[i])};
            latest         = std::max(latest, windows[i].close + service[i]);
        }

        // Complete digraph without arcs into the source or out of the sink; i -> sink mirrors i -> 0.
        std::vector<Arc> arcs;
        std::vector<double> distance;
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = 1; j <= sink; ++j) {
                if (i == j || (i == 0 && j == sink))
                    continue;
                arcs.push_back({i, j});
                distance.push_back(std::max(1.0, rounded_distance(points[i], points[j])));
            }
        }
        double longest = 0.0;
        for (double d : distance)
            longest = std::max(longest, d / kTimeDivisor);
        const double horizon = std::ceil(latest + longest);
        windows[0]    = {0.0, horizon};
        windows[sink] = {0.0, horizon};

        Graph graph = Graph::build(size, arcs, 0, sink, {}, points);
        std::vector<double> costs(arcs.size());
        std::vector<double> travel(arcs.size());
        for (std::size_t k = 0; k < arcs.size(); ++k) {
            const ArcId id = *graph.arc_id(arcs[k].tail, arcs[k].head);
            costs[id]      = -distance[k];
            travel[id]     = distance[k] / kTimeDivisor;
        }

        std::vector<ResourcePtr> resources;
        resources.push_back(make_resource(ResourceKind::Capacity, {0.0, spec.capacity, demand1, {}, {}}, graph));
        resources.push_back(make_resource(ResourceKind::Capacity, {0.0, capacity2, demand2, {}, {}}, graph));
        resources.push_back(
            make_resource(ResourceKind::NodeLimit, {0.0, static_cast<double>(spec.node_limit), {}, {}, {}}, graph));
        resources.push_back(make_resource(ResourceKind::TimeWindows, {0.0, horizon, service, travel, windows}, graph));

        Problem problem("pc-n" + std::to_string(n) + "-s" + std::to_string(spec.seed), std::move(graph),
            std::move(costs), std::move(resources), 0);
        return problem;
    }

    std::vector<BaseNode> load_base_nodes(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open " + path.string(), 0, 0);
        std::vector<BaseNode> nodes;
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream fields(line);
            BaseNode node;
            if (!(fields >> node.position.x)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos)
                    continue;
                throw ParseError("expected x y [demand]", number, 1);
            }
            if (!(fields >> node.position.y))
                throw ParseError("expected y coordinate", number, 1);
            double demand = 0.0;
            if (fields >> demand) {
                if (demand < 0.0)
                    throw ParseError("negative demand", number, 1);
                node.demand = demand;
            }
            nodes.push_back(node);
        }
        return nodes;
    }

} // namespace pathwise
