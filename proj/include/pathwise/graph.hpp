#ifndef PATHWISE_GRAPH_HPP
#define PATHWISE_GRAPH_HPP

#include "pathwise/node_set.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace pathwise {

    using NodeId = std::uint32_t;
    using ArcId  = std::uint32_t;

    struct Arc {
        NodeId tail;
        NodeId head;

        friend bool operator==(const Arc&, const Arc&) = default;
    };

    struct Point {
        double x = 0.0;
        double y = 0.0;

        friend bool operator==(const Point&, const Point&) = default;
    };

    enum class StorageMode { DenseBits, SparseMap };

    struct GraphOptions {
        double density_threshold      = 0.25;
        std::size_t small_n_threshold = 1024;
        std::optional<StorageMode> mode;
    };

    /// Immutable directed network. Arc ids are dense in [0, m) and ordered by (tail, head), so the k-th
    /// out-neighbor of i carries arc id `out_offset(i) + k`.
    class Graph {
    public:
        /// Duplicate arcs collapse to one; self-loops and out-of-range endpoints throw InvalidArc.
        [[nodiscard]] static Graph build(std::size_t n, std::span<const Arc> arcs, NodeId source, NodeId destination,
            GraphOptions options = {}, std::vector<Point> coordinates = {});

        [[nodiscard]] std::size_t node_count() const noexcept { return _n; }
        [[nodiscard]] std::size_t arc_count() const noexcept { return _arcs.size(); }
        [[nodiscard]] NodeId source() const noexcept { return _source; }
        [[nodiscard]] NodeId destination() const noexcept { return _destination; }
        [[nodiscard]] StorageMode storage_mode() const noexcept { return _mode; }

        [[nodiscard]] bool has_arc(NodeId i, NodeId j) const;
        [[nodiscard]] std::optional<ArcId> arc_id(NodeId i, NodeId j) const;
        [[nodiscard]] const Arc& arc(ArcId a) const { return _arcs[a]; }
        [[nodiscard]] std::span<const Arc> arcs() const noexcept { return _arcs; }

        [[nodiscard]] std::span<const NodeId> out_neighbors(NodeId i) const;
        [[nodiscard]] std::span<const NodeId> in_neighbors(NodeId i) const;
        /// Arc ids aligned with out_neighbors(i) / in_neighbors(i).
        [[nodiscard]] std::span<const ArcId> out_arcs(NodeId i) const;
        [[nodiscard]] std::span<const ArcId> in_arcs(NodeId i) const;

        [[nodiscard]] bool has_coordinates() const noexcept { return !_coordinates.empty(); }
        [[nodiscard]] std::span<const Point> coordinates() const noexcept { return _coordinates; }

    private:
        Graph() = default;

        std::size_t _n       = 0;
        NodeId _source       = 0;
        NodeId _destination  = 0;
        StorageMode _mode    = StorageMode::DenseBits;
        std::vector<Arc> _arcs;

        std::vector<std::size_t> _out_offsets;
        std::vector<NodeId> _out_heads;

        std::vector<std::size_t> _in_offsets;
        std::vector<NodeId> _in_tails;
        std::vector<ArcId> _in_arc_ids;
        std::vector<ArcId> _out_arc_ids;

        std::vector<NodeSet> _dense_rows;
        std::vector<std::unordered_map<NodeId, ArcId>> _sparse_rows;

        std::vector<Point> _coordinates;
    };

} // namespace pathwise

#endif // PATHWISE_GRAPH_HPP
