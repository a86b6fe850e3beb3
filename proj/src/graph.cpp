#include "pathwise/graph.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pathwise {

    Graph Graph::build(std::size_t n, std::span<const Arc> arcs, NodeId source, NodeId destination, GraphOptions options,
        std::vector<Point> coordinates) {
        if (n < 2)
            throw EmptyGraph("graph needs at least two nodes, got " + std::to_string(n));
        if (source >= n || destination >= n)
            throw UnknownNode("source or destination outside [0, " + std::to_string(n) + ")");
        if (source == destination)
            throw InconsistentData("source and destination coincide");
        if (!coordinates.empty() && coordinates.size() != n)
            throw InconsistentData("coordinate count does not match node count");

        std::vector<Arc> sorted(arcs.begin(), arcs.end());
        for (const auto& [tail, head] : sorted) {
            if (tail >= n || head >= n)
                throw InvalidArc("arc (" + std::to_string(tail) + ", " + std::to_string(head) + ") out of range");
            if (tail == head)
                throw InvalidArc("self-loop on node " + std::to_string(tail));
        }
        std::sort(sorted.begin(), sorted.end(),
            [](const Arc& a, const Arc& b) { return a.tail != b.tail ? a.tail < b.tail : a.head < b.head; });
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

        Graph g;
        g._n           = n;
        g._source      = source;
        g._destination = destination;
        g._arcs        = std::move(sorted);
        g._coordinates = std::move(coordinates);

        const std::size_t m = g._arcs.size();
        g._out_offsets.assign(n + 1, 0);
        g._in_offsets.assign(n + 1, 0);
        for (const auto& a : g._arcs) {
            ++g._out_offsets[a.tail + 1];
            ++g._in_offsets[a.head + 1];
        }
        std::partial_sum(g._out_offsets.begin(), g._out_offsets.end(), g._out_offsets.begin());
        std::partial_sum(g._in_offsets.begin(), g._in_offsets.end(), g._in_offsets.begin());

        g._out_heads.resize(m);
        g._out_arc_ids.resize(m);
        for (ArcId id = 0; id < m; ++id) {
            g._out_heads[id]   = g._arcs[id].head;
            g._out_arc_ids[id] = id;
        }

        // Arcs are visited in (tail, head) order, so every in-row ends up sorted by tail.
        g._in_tails.resize(m);
        g._in_arc_ids.resize(m);
        std::vector<std::size_t> cursor(g._in_offsets.begin(), g._in_offsets.end() - 1);
        for (ArcId id = 0; id < m; ++id) {
            const auto slot      = cursor[g._arcs[id].head]++;
            g._in_tails[slot]    = g._arcs[id].tail;
            g._in_arc_ids[slot]  = id;
        }

        const double density = static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n));
        if (options.mode)
            g._mode = *options.mode;
        else if (density >= options.density_threshold || n <= options.small_n_threshold)
            g._mode = StorageMode::DenseBits;
        else
            g._mode = StorageMode::SparseMap;

        if (g._mode == StorageMode::DenseBits) {
            g._dense_rows.assign(n, NodeSet(n));
            for (const auto& a : g._arcs)
                g._dense_rows[a.tail].set(a.head);
        } else {
            g._sparse_rows.resize(n);
            for (ArcId id = 0; id < m; ++id)
                g._sparse_rows[g._arcs[id].tail].emplace(g._arcs[id].head, id);
        }
        return g;
    }

    bool Graph::has_arc(NodeId i, NodeId j) const {
        if (_mode == StorageMode::DenseBits)
            return _dense_rows[i].test(j);
        return _sparse_rows[i].contains(j);
    }

    std::optional<ArcId> Graph::arc_id(NodeId i, NodeId j) const {
        if (_mode == StorageMode::SparseMap) {
            const auto& row = _sparse_rows[i];
            if (auto it = row.find(j); it != row.end())
                return it->second;
            return std::nullopt;
        }
        if (!_dense_rows[i].test(j))
            return std::nullopt;
        const auto row = out_neighbors(i);
        const auto it  = std::lower_bound(row.begin(), row.end(), j);
        return static_cast<ArcId>(_out_offsets[i] + static_cast<std::size_t>(it - row.begin()));
    }

    std::span<const NodeId> Graph::out_neighbors(NodeId i) const {
        return {_out_heads.data() + _out_offsets[i], _out_offsets[i + 1] - _out_offsets[i]};
    }

    std::span<const NodeId> Graph::in_neighbors(NodeId i) const {
        return {_in_tails.data() + _in_offsets[i], _in_offsets[i + 1] - _in_offsets[i]};
    }

    std::span<const ArcId> Graph::out_arcs(NodeId i) const {
        return {_out_arc_ids.data() + _out_offsets[i], _out_offsets[i + 1] - _out_offsets[i]};
    }

    std::span<const ArcId> Graph::in_arcs(NodeId i) const {
        return {_in_arc_ids.data() + _in_offsets[i], _in_offsets[i + 1] - _in_offsets[i]};
    }

} // namespace pathwise
