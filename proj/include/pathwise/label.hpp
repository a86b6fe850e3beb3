#ifndef PATHWISE_LABEL_HPP
#define PATHWISE_LABEL_HPP

#include "pathwise/node_set.hpp"
#include "pathwise/path.hpp"
#include "pathwise/problem.hpp"
#include "pathwise/relaxation.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace pathwise {

    using LabelId = std::uint32_t;
    inline constexpr LabelId kNoLabel = std::numeric_limits<LabelId>::max();

    /// Dynamic-programming state for a partial path. Forward labels end at `node`, backward labels start there.
    struct Label {
        NodeId node         = 0;
        Direction direction = Direction::Forward;
        double cost         = 0.0;
        std::vector<double> resources; ///< one value per problem resource, same order
        NodeSet visited;               ///< masked visit memory; width 0 when visited-state is dropped
        NodeSet unreachable;           ///< nodes no extension can reach within the critical budget
        LabelId predecessor = kNoLabel;
    };

    /// a dominates b when it is no worse on cost and every resource, and (visited | unreachable) of a is a
    /// subset of that of b. Identical labels dominate each other; the pool keeps the incumbent. Resources
    /// flagged in `exact` (those with an active lower bound) must match instead of compare.
    [[nodiscard]] bool dominates(const Label& a, const Label& b, const std::vector<bool>& exact = {});

    enum class SelectionStrategy { NodeSelection, RoundRobin };
    enum class InsertOutcome { Kept, DominatedOnArrival };

    /// Labels of one direction: per-node buckets of mutually non-dominated labels plus the frontier of
    /// labels not yet extended. Removed labels stay in storage so predecessor chains remain decodable.
    class LabelPool {
    public:
        LabelPool(std::size_t node_count, Direction direction, std::vector<bool> exact_resources = {});

        void clear();
        InsertOutcome insert(Label label);

        /// NodeSelection drains the node holding the cheapest frontier label before choosing again;
        /// RoundRobin visits nodes in ascending id order and returns each one's cheapest frontier label.
        [[nodiscard]] std::optional<LabelId> get_candidate(SelectionStrategy strategy);

        [[nodiscard]] Direction direction() const noexcept { return _direction; }
        [[nodiscard]] const Label& label(LabelId id) const { return _labels[id]; }
        /// Debug hook for fault injection; mutating a label breaks the pool invariants.
        [[nodiscard]] Label& mutable_label(LabelId id) { return _labels[id]; }
        [[nodiscard]] bool alive(LabelId id) const { return _alive[id]; }
        /// Live labels at `node`, sorted by (cost, id).
        [[nodiscard]] std::vector<LabelId> bucket(NodeId node) const;
        [[nodiscard]] std::size_t bucket_size(NodeId node) const { return _buckets[node].ids.size() - _buckets[node].dead; }
        [[nodiscard]] bool frontier_empty() const noexcept { return _active.empty(); }
        [[nodiscard]] std::size_t stored() const noexcept { return _labels.size(); }
        [[nodiscard]] std::size_t node_count() const noexcept { return _buckets.size(); }

        [[nodiscard]] std::uint64_t kept() const noexcept { return _kept; }
        [[nodiscard]] std::uint64_t dominated_on_arrival() const noexcept { return _dominated_on_arrival; }
        [[nodiscard]] std::uint64_t removed_by_dominance() const noexcept { return _removed; }

        [[nodiscard]] std::vector<LabelId> lookup(NodeId node, const std::function<bool(const Label&)>& predicate) const;
        /// Nodes of the predecessor chain, root first.
        [[nodiscard]] std::vector<NodeId> chain(LabelId id) const;

    private:
        /// Dominance data of the live labels at one node, stored flat for fast scans. Removed entries
        /// keep their slot (id kNoLabel) until the next compaction.
        struct Bucket {
            std::vector<LabelId> ids;
            std::vector<double> values;          ///< cost, then every resource
            std::vector<NodeSet::word_t> sets;   ///< visited | unreachable
            std::size_t dead = 0;
        };

        void frontier_erase(LabelId id);
        void refresh_key(NodeId node);
        void compact(Bucket& bucket) const;
        [[nodiscard]] bool flat_dominates(
            const double* a, const NodeSet::word_t* a_set, const double* b, const NodeSet::word_t* b_set) const;

        Direction _direction;
        std::vector<char> _exact;
        bool _any_exact = false;
        std::size_t _value_stride = 0;
        std::size_t _set_words    = 0;
        std::deque<Label> _labels;
        std::vector<char> _alive;
        std::vector<Bucket> _buckets;
        std::vector<std::set<std::pair<double, LabelId>>> _frontier;
        std::vector<std::optional<double>> _key;
        std::set<std::pair<double, NodeId>> _by_cost;
        std::set<NodeId> _active;
        std::optional<NodeId> _draining;
        NodeId _cursor = 0;

        std::uint64_t _kept                 = 0;
        std::uint64_t _dominated_on_arrival = 0;
        std::uint64_t _removed              = 0;
    };

    enum class JoinMode { Naive, Bounded };

    struct LabelOptions {
        bool track_visited     = true;
        bool track_unreachable = false;
    };

    struct ExpansionCounts {
        std::uint64_t generated = 0;
        std::uint64_t kept      = 0;
        std::uint64_t dominated = 0;
    };

    struct JoinResult {
        std::optional<Path> best;            ///< cheapest joined path, possibly cyclic
        std::optional<Path> best_elementary; ///< cheapest joined path without repeated nodes
        std::uint64_t attempts  = 0;
        std::uint64_t successes = 0;
    };

    /// Owns the forward and backward pools and performs every label operation the algorithms need.
    /// Operations on one direction touch only that direction's pool, so two workers may run the two
    /// directions concurrently.
    class LabelManager {
    public:
        LabelManager(const Problem& problem, const NeighborhoodMasks& masks, LabelOptions options = {});

        [[nodiscard]] const Problem& problem() const noexcept { return _problem; }
        [[nodiscard]] const LabelOptions& options() const noexcept { return _options; }
        [[nodiscard]] LabelPool& pool(Direction dir) { return _pools[static_cast<int>(dir)]; }
        [[nodiscard]] const LabelPool& pool(Direction dir) const { return _pools[static_cast<int>(dir)]; }

        /// Root label at the source (forward) or destination (backward); throws InfeasibleAtSource.
        [[nodiscard]] Label initial_label(Direction dir) const;
        /// Clears both pools and seeds them with root labels (backward only when requested). Call again
        /// after the masks change.
        void reset(bool with_backward);

        /// Critical-resource limit for extending labels of `dir`: hwp forward, U_c - hwp backward.
        [[nodiscard]] double threshold(Direction dir, double hwp) const;
        [[nodiscard]] bool passes_threshold(const Label& label, double hwp) const;

        /// Elementarity and resource checks for moving `label` across `arc` into j. No threshold check.
        [[nodiscard]] std::optional<Label> extend_label(const Label& label, NodeId j, ArcId arc) const;
        /// True iff the arc exists in the travel direction, j is not remembered as visited, every resource
        /// stays feasible, and `label` itself lies within the half-way threshold.
        [[nodiscard]] bool is_extension_feasible(const Label& label, NodeId j, double hwp) const;

        [[nodiscard]] std::optional<LabelId> next_candidate(Direction dir, SelectionStrategy strategy);
        /// Extends the label to every admissible neighbour and inserts the results in its pool.
        ExpansionCounts expand(Direction dir, LabelId id, double hwp);

        /// Joins a forward and a backward label across arc (fw.node, bw.node). Bounded mode rejects, before
        /// any resource work, pairs whose cost is not below `incumbent`.
        [[nodiscard]] std::optional<Path> join_pair(
            LabelId fw, LabelId bw, double incumbent = kInfinity, JoinMode mode = JoinMode::Naive) const;
        /// Evaluates joins plus forward labels at the destination and backward labels at the source. Naive
        /// mode tries every pair. Bounded mode skips pairs not cheaper than `incumbent` or the best so far,
        /// and joins only forward labels within the half-way threshold: every feasible path has a split
        /// whose forward part passed it, because the passes gate extensions the same way.
        [[nodiscard]] JoinResult join(JoinMode mode, double incumbent = kInfinity, double hwp = kInfinity) const;

        /// Decodes the chains of `fw` and/or `bw` and re-evaluates the tour; DecodeMismatch on disagreement.
        [[nodiscard]] Path extract_path(std::optional<LabelId> fw, std::optional<LabelId> bw) const;

        [[nodiscard]] std::vector<LabelId> lookup(
            NodeId node, Direction dir, const std::function<bool(const Label&)>& predicate) const;
        /// Every forward label produced by extending along `tour` from the source root, ignoring dominance
        /// and the half-way threshold. Stops early when an extension is infeasible.
        [[nodiscard]] std::vector<Label> replay(std::span<const NodeId> tour) const;

    private:
        struct Candidate;
        [[nodiscard]] std::optional<double> evaluate_pair(const Label* fw, const Label* bw, std::optional<ArcId> arc) const;
        /// Nodes that some resource rules out for every extension of `label`.
        void fill_unreachable(Label& label) const;
        [[nodiscard]] std::vector<NodeId> decode(std::optional<LabelId> fw, std::optional<LabelId> bw) const;

        const Problem& _problem;
        const NeighborhoodMasks& _masks;
        LabelOptions _options;
        std::size_t _critical;
        double _budget;
        std::vector<bool> _exact;
        std::vector<NodeId> _remembered; ///< nodes present in some other node's mask, refreshed by reset()
        LabelPool _pools[2];
    };

} // namespace pathwise

#endif // PATHWISE_LABEL_HPP
