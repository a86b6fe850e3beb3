#include "pathwise/resource.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace pathwise {

    namespace {

        constexpr std::array<std::pair<ResourceKind, std::string_view>, 5> kKindNames{{
            {ResourceKind::Capacity, "CAPACITY"},
            {ResourceKind::Time, "TIME"},
            {ResourceKind::NodeLimit, "NODELIMIT"},
            {ResourceKind::TimeWindows, "TIMEWINDOWS"},
            {ResourceKind::Custom, "CUSTOM"},
        }};

        void check_common(const ResourceData& data, const Graph& graph, std::string_view what) {
            const std::string name(what);
            if (!(data.lower_bound <= data.upper_bound))
                throw InconsistentData(name + ": lower bound exceeds upper bound");
            if (data.node_consumption.size() > graph.node_count())
                throw InconsistentData(name + ": node consumption for unknown node");
            if (data.arc_consumption.size() > graph.arc_count())
                throw InconsistentData(name + ": arc consumption for unknown arc");
            auto negative = [](double v) { return v < 0.0 || !std::isfinite(v); };
            if (std::any_of(data.node_consumption.begin(), data.node_consumption.end(), negative)
                || std::any_of(data.arc_consumption.begin(), data.arc_consumption.end(), negative))
                throw InconsistentData(name + ": consumptions must be finite and non-negative");
        }

    } // namespace

    std::string_view to_string(ResourceKind kind) {
        for (const auto& [k, name] : kKindNames)
            if (k == kind)
                return name;
        return "CUSTOM";
    }

    std::optional<ResourceKind> parse_resource_kind(std::string_view text) {
        std::string upper(text);
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
        for (const auto& [k, name] : kKindNames)
            if (name == upper)
                return k;
        return std::nullopt;
    }

    bool Resource::accepts_total(double total) const {
        return total >= _data.lower_bound - kFeasibilityTol;
    }

    bool Resource::has_lower_bound() const {
        return _data.lower_bound > 0.0;
    }

    bool Resource::excludes(double current, NodeId k, Direction) const {
        return monotone() && current + min_increment(k) > _data.upper_bound + kFeasibilityTol;
    }

    // Capacity

    CapacityResource::CapacityResource(ResourceData data, const Graph& graph) : Resource(std::move(data)) {
        check_common(_data, graph, "capacity");
        _min_increment.assign(graph.node_count(), 0.0);
        for (NodeId k = 0; k < graph.node_count(); ++k) {
            double cheapest = kInfinity;
            for (ArcId a : graph.in_arcs(k))
                cheapest = std::min(cheapest, _data.arc(a));
            for (ArcId a : graph.out_arcs(k))
                cheapest = std::min(cheapest, _data.arc(a));
            _min_increment[k] = _data.node(k) + (std::isfinite(cheapest) ? cheapest : 0.0);
        }
    }

    std::pair<double, double> CapacityResource::init(NodeId origin, NodeId destination) const {
        const double fw = _data.node(origin);
        const double bw = _data.node(destination);
        if (fw > _data.upper_bound + kFeasibilityTol || bw > _data.upper_bound + kFeasibilityTol)
            throw InfeasibleAtSource("capacity consumption at an endpoint exceeds the bound");
        return {fw, bw};
    }

    double CapacityResource::extend(double current, NodeId, NodeId j, ArcId arc, Direction) const {
        return current + _data.arc(arc) + _data.node(j);
    }

    bool CapacityResource::is_feasible(double current, NodeId, Direction, double) const {
        return current <= _data.upper_bound + kFeasibilityTol;
    }

    std::optional<double> CapacityResource::join(double fw, double bw, NodeId, NodeId, ArcId arc) const {
        const double total = fw + bw + _data.arc(arc);
        if (total > _data.upper_bound + kFeasibilityTol)
            return std::nullopt;
        return total;
    }

    // Time

    TimeResource::TimeResource(ResourceData data) : Resource(std::move(data)) {}

    std::pair<double, double> TimeResource::init(NodeId, NodeId) const {
        return {0.0, 0.0};
    }

    double TimeResource::extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const {
        // Service is charged on the node being left: i going forward, the pre-pended j going backward.
        const double service = dir == Direction::Forward ? _data.node(i) : _data.node(j);
        return current + service + _data.arc(arc);
    }

    bool TimeResource::is_feasible(double current, NodeId, Direction, double) const {
        return current <= _data.upper_bound + kFeasibilityTol;
    }

    std::optional<double> TimeResource::join(double fw, double bw, NodeId i, NodeId, ArcId arc) const {
        const double total = fw + _data.node(i) + _data.arc(arc) + bw;
        if (total > _data.upper_bound + kFeasibilityTol)
            return std::nullopt;
        return total;
    }

    // Node limit

    NodeLimitResource::NodeLimitResource(ResourceData data) : Resource(std::move(data)) {}

    std::pair<double, double> NodeLimitResource::init(NodeId, NodeId) const {
        if (1.0 > _data.upper_bound + kFeasibilityTol)
            throw InfeasibleAtSource("node limit below one");
        return {1.0, 1.0};
    }

    double NodeLimitResource::extend(double current, NodeId, NodeId, ArcId, Direction) const {
        return current + 1.0;
    }

    bool NodeLimitResource::is_feasible(double current, NodeId, Direction, double) const {
        return current <= _data.upper_bound + kFeasibilityTol;
    }

    std::optional<double> NodeLimitResource::join(double fw, double bw, NodeId, NodeId, ArcId) const {
        const double total = fw + bw;
        if (total > _data.upper_bound + kFeasibilityTol)
            return std::nullopt;
        return total;
    }

    // Time windows

    TimeWindowResource::TimeWindowResource(ResourceData data, const Graph& graph) : Resource(std::move(data)) {
        const std::size_t n = graph.node_count();
        if (_data.windows.size() > n)
            throw InconsistentData("time windows for unknown node");
        while (_data.windows.size() < n)
            _data.windows.push_back({0.0, _data.upper_bound});
        double latest_close = 0.0;
        for (const auto& w : _data.windows) {
            if (!std::isfinite(w.open) || !std::isfinite(w.close))
                throw InconsistentData("time window bounds must be finite");
            if (w.open > w.close)
                throw InconsistentData("time window opens after it closes");
            latest_close = std::max(latest_close, w.close);
        }
        double max_service = 0.0;
        for (double s : _data.node_consumption)
            max_service = std::max(max_service, s);
        double max_arc = 0.0;
        for (double t : _data.arc_consumption)
            max_arc = std::max(max_arc, t);
        _horizon = latest_close + max_service + max_arc;

        _min_in.assign(n, kInfinity);
        _min_out.assign(n, kInfinity);
        for (ArcId a = 0; a < graph.arc_count(); ++a) {
            const auto& arc   = graph.arc(a);
            _min_in[arc.head] = std::min(_min_in[arc.head], _data.arc(a));
            _min_out[arc.tail] = std::min(_min_out[arc.tail], _data.arc(a));
        }
    }

    bool TimeWindowResource::excludes(double current, NodeId k, Direction dir) const {
        // Forward: reaching k means arriving no earlier than now plus the cheapest arc into k.
        // Backward: k must precede the current node, serving k and leaving it before the latest start.
        if (dir == Direction::Forward)
            return current + _min_in[k] > _data.windows[k].close + kFeasibilityTol;
        return current + _data.node(k) + _min_out[k] > _horizon - _data.windows[k].open + kFeasibilityTol;
    }

    std::pair<double, double> TimeWindowResource::init(NodeId origin, NodeId destination) const {
        return {std::max(0.0, _data.windows[origin].open), std::max(0.0, _horizon - _data.windows[destination].close)};
    }

    double TimeWindowResource::extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const {
        if (dir == Direction::Forward)
            return std::max(_data.windows[j].open, current + _data.node(i) + _data.arc(arc));
        return std::max(_horizon - _data.windows[j].close, current + _data.node(j) + _data.arc(arc));
    }

    bool TimeWindowResource::is_feasible(double current, NodeId node, Direction dir, double) const {
        if (dir == Direction::Forward)
            return current <= _data.windows[node].close + kFeasibilityTol;
        return current <= _horizon - _data.windows[node].open + kFeasibilityTol;
    }

    std::optional<double> TimeWindowResource::join(double fw, double bw, NodeId i, NodeId, ArcId arc) const {
        const double total = fw + _data.node(i) + _data.arc(arc) + bw;
        if (total > _horizon + kFeasibilityTol)
            return std::nullopt;
        return total;
    }

    ResourcePtr make_resource(ResourceKind kind, ResourceData data, const Graph& graph) {
        if (data.node_consumption.size() < graph.node_count())
            data.node_consumption.resize(graph.node_count(), 0.0);
        if (data.arc_consumption.size() < graph.arc_count())
            data.arc_consumption.resize(graph.arc_count(), 0.0);
        switch (kind) {
        case ResourceKind::Capacity:
            return std::make_shared<CapacityResource>(std::move(data), graph);
        case ResourceKind::Time:
            check_common(data, graph, "time");
            return std::make_shared<TimeResource>(std::move(data));
        case ResourceKind::NodeLimit:
            check_common(data, graph, "node limit");
            return std::make_shared<NodeLimitResource>(std::move(data));
        case ResourceKind::TimeWindows:
            check_common(data, graph, "time windows");
            return std::make_shared<TimeWindowResource>(std::move(data), graph);
        case ResourceKind::Custom:
            break;
        }
        throw InconsistentData("custom resources must be constructed directly");
    }

} // namespace pathwise
