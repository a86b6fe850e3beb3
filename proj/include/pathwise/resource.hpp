#ifndef PATHWISE_RESOURCE_HPP
#define PATHWISE_RESOURCE_HPP

#include "pathwise/graph.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace pathwise {

    enum class Direction : std::uint8_t { Forward = 0, Backward = 1 };

    [[nodiscard]] constexpr Direction opposite(Direction d) noexcept {
        return d == Direction::Forward ? Direction::Backward : Direction::Forward;
    }

    enum class ResourceKind { Capacity, Time, NodeLimit, TimeWindows, Custom };

    [[nodiscard]] std::string_view to_string(ResourceKind kind);
    [[nodiscard]] std::optional<ResourceKind> parse_resource_kind(std::string_view text);

    /// Absolute tolerance for every feasibility comparison.
    inline constexpr double kFeasibilityTol = 1e-9;
    inline constexpr double kInfinity       = std::numeric_limits<double>::infinity();

    struct TimeWindow {
        double open  = 0.0;
        double close = kInfinity;

        friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
    };

    /// Raw data for one resource. Node consumption doubles as service time for the time kinds; arc
    /// consumption is indexed by ArcId. Missing entries are zero.
    struct ResourceData {
        double lower_bound = 0.0;
        double upper_bound = kInfinity;
        std::vector<double> node_consumption;
        std::vector<double> arc_consumption;
        std::vector<TimeWindow> windows;

        [[nodiscard]] double node(NodeId i) const { return i < node_consumption.size() ? node_consumption[i] : 0.0; }
        [[nodiscard]] double arc(ArcId a) const { return a < arc_consumption.size() ? arc_consumption[a] : 0.0; }

        friend bool operator==(const ResourceData&, const ResourceData&) = default;
    };

    /// Behaviour contract for one constrained quantity.
    ///
    /// Forward values describe a partial path s -> i, backward values a partial path i -> d. A backward
    /// label at i is extended to j by pre-pending arc (j, i); `arc` is always the id of the arc actually
    /// traversed, i.e. (i, j) forward and (j, i) backward.
    class Resource {
    public:
        virtual ~Resource() = default;

        [[nodiscard]] virtual ResourceKind kind() const = 0;
        [[nodiscard]] virtual bool monotone() const { return true; }

        /// Initial (forward, backward) values at origin and destination.
        [[nodiscard]] virtual std::pair<double, double> init(NodeId origin, NodeId destination) const = 0;
        [[nodiscard]] virtual double extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const = 0;
        /// Upper-side check on a partial path ending (forward) or starting (backward) at `node`. `bounding`
        /// is a remaining-budget hint; the standard kinds ignore it.
        [[nodiscard]] virtual bool is_feasible(
            double current, NodeId node, Direction dir, double bounding = kInfinity) const = 0;
        /// Combines a forward value at i with a backward value at j across arc (i, j); nullopt when infeasible.
        [[nodiscard]] virtual std::optional<double> join(double fw, double bw, NodeId i, NodeId j, ArcId arc) const = 0;

        /// Lower-bound check, applied to complete paths only.
        [[nodiscard]] virtual bool accepts_total(double total) const;
        [[nodiscard]] virtual bool has_lower_bound() const;

        /// Budget U_c used to split work at the half-way point when this resource is critical.
        [[nodiscard]] virtual double critical_budget() const { return _data.upper_bound; }
        /// Every feasible join satisfies fw + bw <= join_limit(); a cheap filter ahead of join().
        [[nodiscard]] virtual double join_limit() const { return critical_budget(); }
        /// Lower bound on how much the value grows when node k is appended (or pre-pended).
        [[nodiscard]] virtual double min_increment(NodeId) const { return 0.0; }
        /// True when no extension of a partial path holding `current` can ever include node k. The default
        /// compares `current + min_increment(k)` with the upper bound.
        [[nodiscard]] virtual bool excludes(double current, NodeId k, Direction dir) const;

        [[nodiscard]] const ResourceData& data() const noexcept { return _data; }

    protected:
        explicit Resource(ResourceData data) : _data(std::move(data)) {}

        ResourceData _data;
    };

    using ResourcePtr = std::shared_ptr<const Resource>;

    /// Additive node + arc consumption (vehicle load and similar).
    class CapacityResource final : public Resource {
    public:
        CapacityResource(ResourceData data, const Graph& graph);

        [[nodiscard]] ResourceKind kind() const override { return ResourceKind::Capacity; }
        [[nodiscard]] std::pair<double, double> init(NodeId origin, NodeId destination) const override;
        [[nodiscard]] double extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const override;
        [[nodiscard]] bool is_feasible(double current, NodeId node, Direction dir, double bounding) const override;
        [[nodiscard]] std::optional<double> join(double fw, double bw, NodeId i, NodeId j, ArcId arc) const override;
        [[nodiscard]] double min_increment(NodeId k) const override { return _min_increment[k]; }

    private:
        std::vector<double> _min_increment;
    };

    /// Duration budget: arc travel time plus per-node service, no windows.
    class TimeResource final : public Resource {
    public:
        explicit TimeResource(ResourceData data);

        [[nodiscard]] ResourceKind kind() const override { return ResourceKind::Time; }
        [[nodiscard]] std::pair<double, double> init(NodeId origin, NodeId destination) const override;
        [[nodiscard]] double extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const override;
        [[nodiscard]] bool is_feasible(double current, NodeId node, Direction dir, double bounding) const override;
        [[nodiscard]] std::optional<double> join(double fw, double bw, NodeId i, NodeId j, ArcId arc) const override;
    };

    /// Caps the number of nodes on the path, endpoints included.
    class NodeLimitResource final : public Resource {
    public:
        explicit NodeLimitResource(ResourceData data);

        [[nodiscard]] ResourceKind kind() const override { return ResourceKind::NodeLimit; }
        [[nodiscard]] std::pair<double, double> init(NodeId origin, NodeId destination) const override;
        [[nodiscard]] double extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const override;
        [[nodiscard]] bool is_feasible(double current, NodeId node, Direction dir, double bounding) const override;
        [[nodiscard]] std::optional<double> join(double fw, double bw, NodeId i, NodeId j, ArcId arc) const override;
        [[nodiscard]] double min_increment(NodeId) const override { return 1.0; }
    };

    /// Start-of-service times with waiting. Forward values are service start times at the label node;
    /// backward values are H minus the latest feasible service start, which mirrors each window to
    /// [H - close, H - open] and makes the backward pass the same arithmetic on the reversed graph.
    class TimeWindowResource final : public Resource {
    public:
        TimeWindowResource(ResourceData data, const Graph& graph);

        [[nodiscard]] ResourceKind kind() const override { return ResourceKind::TimeWindows; }
        [[nodiscard]] std::pair<double, double> init(NodeId origin, NodeId destination) const override;
        [[nodiscard]] double extend(double current, NodeId i, NodeId j, ArcId arc, Direction dir) const override;
        [[nodiscard]] bool is_feasible(double current, NodeId node, Direction dir, double bounding) const override;
        [[nodiscard]] std::optional<double> join(double fw, double bw, NodeId i, NodeId j, ArcId arc) const override;
        [[nodiscard]] bool excludes(double current, NodeId k, Direction dir) const override;
        [[nodiscard]] double critical_budget() const override { return _horizon; }

        [[nodiscard]] double horizon() const noexcept { return _horizon; }
        [[nodiscard]] const TimeWindow& window(NodeId i) const { return _data.windows[i]; }

    private:
        double _horizon = 0.0;
        std::vector<double> _min_in;  ///< cheapest travel time into each node
        std::vector<double> _min_out; ///< cheapest travel time out of each node
    };

    /// Builds the standard resource of `kind` over `graph`; throws InconsistentData for Custom or bad data.
    [[nodiscard]] ResourcePtr make_resource(ResourceKind kind, ResourceData data, const Graph& graph);

} // namespace pathwise

#endif // PATHWISE_RESOURCE_HPP
