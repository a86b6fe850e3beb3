#ifndef PATHWISE_RELAXATION_HPP
#define PATHWISE_RELAXATION_HPP

#include "pathwise/node_set.hpp"
#include "pathwise/problem.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pathwise {

    enum class RelaxationScheme { DSSR, DSSRC, NG, NGC, NG_DSSRC, NGC_DSSRC };

    [[nodiscard]] std::string_view to_string(RelaxationScheme scheme);
    [[nodiscard]] std::optional<RelaxationScheme> parse_relaxation(std::string_view text);
    /// DSSR, DSSRC and both hybrids end with an elementary path; bare NG / NGC may not.
    [[nodiscard]] bool guarantees_elementarity(RelaxationScheme scheme);

    /// Per-node bit-masks B_i. Extending a label into j keeps only the visited bits that are also in B_j,
    /// so a node outside B_j is "forgotten" and may be visited again.
    class NeighborhoodMasks {
    public:
        NeighborhoodMasks() = default;

        /// Throws InvalidNgSize when an NG-family scheme asks for more than n neighbours or for none.
        [[nodiscard]] static NeighborhoodMasks init(RelaxationScheme scheme, const Problem& problem, std::size_t ng_size);
        [[nodiscard]] static NeighborhoodMasks self_only(RelaxationScheme scheme, std::size_t n);
        [[nodiscard]] static NeighborhoodMasks full(RelaxationScheme scheme, std::size_t n);

        [[nodiscard]] RelaxationScheme scheme() const noexcept { return _scheme; }
        [[nodiscard]] std::size_t size() const noexcept { return _masks.size(); }
        [[nodiscard]] const NodeSet& mask(NodeId i) const { return _masks[i]; }
        [[nodiscard]] bool contains(NodeId owner, NodeId v) const { return _masks[owner].test(v); }
        [[nodiscard]] bool has_ng_base() const noexcept { return !_ng_base.empty(); }
        [[nodiscard]] const NodeSet& ng_base(NodeId i) const { return _ng_base[i]; }
        [[nodiscard]] std::size_t iteration() const noexcept { return _iteration; }
        [[nodiscard]] bool handed_off() const noexcept { return _handed_off; }

        /// Sets bit v in B_owner; true when it was not set before.
        bool add(NodeId owner, NodeId v) { return _masks[owner].set(v); }
        void mark_handoff() noexcept { _handed_off = true; }
        void next_iteration() noexcept { ++_iteration; }

    private:
        RelaxationScheme _scheme = RelaxationScheme::DSSR;
        std::vector<NodeSet> _masks;
        std::vector<NodeSet> _ng_base;
        std::size_t _iteration = 0;
        bool _handed_off       = false;
    };

    /// The `ng_size` nodes nearest to every node: Euclidean when coordinates exist, otherwise by the
    /// smaller |cost| of the arcs between the two nodes. Ties go to the smaller id.
    [[nodiscard]] std::vector<NodeSet> ng_neighborhoods(const Problem& problem, std::size_t ng_size);

    struct CycleReport {
        std::vector<NodeId> repeated_nodes;          ///< in order of first occurrence
        std::vector<std::vector<NodeId>> loop_spans; ///< tour slice from first to last occurrence, inclusive

        [[nodiscard]] bool empty() const noexcept { return repeated_nodes.empty(); }
    };

    [[nodiscard]] CycleReport detect_cycles(std::span<const NodeId> tour);

    enum class MaskRule { Global, LoopSpan, LoopSpanWithinNg };

    /// The update rule the masks currently follow (hybrids switch to LoopSpan after the hand-off).
    [[nodiscard]] std::optional<MaskRule> active_rule(const NeighborhoodMasks& masks);

    /// Applies `rule` for every repeated node; returns whether any bit flipped.
    bool update_masks(NeighborhoodMasks& masks, const CycleReport& report, MaskRule rule);
    /// Applies the active rule of the masks' scheme. Bare NG never changes.
    bool update_masks(NeighborhoodMasks& masks, const CycleReport& report);

    enum class StepOutcome { Done, Repeat, Handoff };

    /// Decides what follows a relaxed optimum with tour `tour`, updating the masks when another round is needed.
    [[nodiscard]] StepOutcome relaxation_step(NeighborhoodMasks& masks, std::span<const NodeId> tour);

} // namespace pathwise

#endif // PATHWISE_RELAXATION_HPP
