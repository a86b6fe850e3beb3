#include "pathwise/relaxation.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

namespace pathwise {

    namespace {

        constexpr std::array<std::pair<RelaxationScheme, std::string_view>, 6> kSchemeNames{{
            {RelaxationScheme::DSSR, "dssr"},
            {RelaxationScheme::DSSRC, "dssrc"},
            {RelaxationScheme::NG, "ng"},
            {RelaxationScheme::NGC, "ngc"},
            {RelaxationScheme::NG_DSSRC, "ng-dssrc"},
            {RelaxationScheme::NGC_DSSRC, "ngc-dssrc"},
        }};

        std::vector<NodeSet> self_masks(std::size_t n) {
            std::vector<NodeSet> masks(n, NodeSet(n));
            for (std::size_t i = 0; i < n; ++i)
                masks[i].set(i);
            return masks;
        }

    } // namespace

    std::string_view to_string(RelaxationScheme scheme) {
        for (const auto& [s, name] : kSchemeNames)
            if (s == scheme)
                return name;
        return "dssr";
    }

    std::optional<RelaxationScheme> parse_relaxation(std::string_view text) {
        std::string lower(text);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        std::replace(lower.begin(), lower.end(), '_', '-');
        for (const auto& [s, name] : kSchemeNames)
            if (name == lower)
                return s;
        return std::nullopt;
    }

    bool guarantees_elementarity(RelaxationScheme scheme) {
        return scheme != RelaxationScheme::NG && scheme != RelaxationScheme::NGC;
    }

    std::vector<NodeSet> ng_neighborhoods(const Problem& problem, std::size_t ng_size) {
        const Graph& g      = problem.graph();
        const std::size_t n = g.node_count();
        if (ng_size == 0 || ng_size > n)
            throw InvalidNgSize("ng_size must lie in [1, " + std::to_string(n) + "], got " + std::to_string(ng_size));

        const auto coords = g.coordinates();
        std::vector<NodeSet> result = self_masks(n);
        std::vector<std::pair<double, NodeId>> ranked;
        for (NodeId i = 0; i < n; ++i) {
            ranked.clear();
            if (!coords.empty()) {
                for (NodeId j = 0; j < n; ++j)
                    if (j != i)
                        ranked.emplace_back(std::hypot(coords[i].x - coords[j].x, coords[i].y - coords[j].y), j);
            } else {
                std::unordered_map<NodeId, double> closeness;
                auto note = [&](NodeId j, double c) {
                    auto [it, inserted] = closeness.try_emplace(j, std::abs(c));
                    if (!inserted)
                        it->second = std::min(it->second, std::abs(c));
                };
                const auto out = g.out_neighbors(i);
                const auto out_ids = g.out_arcs(i);
                for (std::size_t k = 0; k < out.size(); ++k)
                    note(out[k], problem.cost(out_ids[k]));
                const auto in = g.in_neighbors(i);
                const auto in_ids = g.in_arcs(i);
                for (std::size_t k = 0; k < in.size(); ++k)
                    note(in[k], problem.cost(in_ids[k]));
                for (const auto& [j, c] : closeness)
                    ranked.emplace_back(c, j);
            }
            const std::size_t keep = std::min(ng_size, ranked.size());
            std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
            for (std::size_t k = 0; k < keep; ++k)
                result[i].set(ranked[k].second);
        }
        return result;
    }

    NeighborhoodMasks NeighborhoodMasks::init(RelaxationScheme scheme, const Problem& problem, std::size_t ng_size) {
        NeighborhoodMasks m;
        m._scheme = scheme;
        switch (scheme) {
        case RelaxationScheme::DSSR:
        case RelaxationScheme::DSSRC:
            m._masks = self_masks(problem.node_count());
            break;
        case RelaxationScheme::NG:
        case RelaxationScheme::NG_DSSRC:
            m._masks = ng_neighborhoods(problem, ng_size);
            break;
        case RelaxationScheme::NGC:
        case RelaxationScheme::NGC_DSSRC:
            m._ng_base = ng_neighborhoods(problem, ng_size);
            m._masks   = self_masks(problem.node_count());
            break;
        }
        return m;
    }

    NeighborhoodMasks NeighborhoodMasks::self_only(RelaxationScheme scheme, std::size_t n) {
        NeighborhoodMasks m;
        m._scheme = scheme;
        m._masks  = self_masks(n);
        return m;
    }

    NeighborhoodMasks NeighborhoodMasks::full(RelaxationScheme scheme, std::size_t n) {
        NeighborhoodMasks m;
        m._scheme = scheme;
        m._masks.assign(n, NodeSet::full(n));
        return m;
    }

    CycleReport detect_cycles(std::span<const NodeId> tour) {
        CycleReport report;
        std::unordered_map<NodeId, std::pair<std::size_t, std::size_t>> first_last;
        std::vector<NodeId> order;
        for (std::size_t pos = 0; pos < tour.size(); ++pos) {
            auto [it, inserted] = first_last.try_emplace(tour[pos], pos, pos);
            if (inserted)
                order.push_back(tour[pos]);
            else
                it->second.second = pos;
        }
        for (NodeId v : order) {
            const auto [first, last] = first_last[v];
            if (first == last)
                continue;
            report.repeated_nodes.push_back(v);
            report.loop_spans.emplace_back(tour.begin() + static_cast<std::ptrdiff_t>(first),
                tour.begin() + static_cast<std::ptrdiff_t>(last) + 1);
        }
        return report;
    }

    std::optional<MaskRule> active_rule(const NeighborhoodMasks& masks) {
        switch (masks.scheme()) {
        case RelaxationScheme::DSSR: return MaskRule::Global;
        case RelaxationScheme::DSSRC: return MaskRule::LoopSpan;
        case RelaxationScheme::NG: return std::nullopt;
        case RelaxationScheme::NGC: return MaskRule::LoopSpanWithinNg;
        case RelaxationScheme::NG_DSSRC: return masks.handed_off() ? std::optional(MaskRule::LoopSpan) : std::nullopt;
        case RelaxationScheme::NGC_DSSRC:
            return masks.handed_off() ? MaskRule::LoopSpan : MaskRule::LoopSpanWithinNg;
        }
        return std::nullopt;
    }

    bool update_masks(NeighborhoodMasks& masks, const CycleReport& report, MaskRule rule) {
        bool changed = false;
        for (std::size_t r = 0; r < report.repeated_nodes.size(); ++r) {
            const NodeId v = report.repeated_nodes[r];
            if (rule == MaskRule::Global) {
                for (NodeId k = 0; k < masks.size(); ++k)
                    changed |= masks.add(k, v);
                continue;
            }
            for (NodeId k : report.loop_spans[r]) {
                if (rule == MaskRule::LoopSpanWithinNg && !masks.ng_base(k).test(v))
                    continue;
                changed |= masks.add(k, v);
            }
        }
        return changed;
    }

    bool update_masks(NeighborhoodMasks& masks, const CycleReport& report) {
        const auto rule = active_rule(masks);
        return rule ? update_masks(masks, report, *rule) : false;
    }

    StepOutcome relaxation_step(NeighborhoodMasks& masks, std::span<const NodeId> tour) {
        const CycleReport report = detect_cycles(tour);
        if (report.empty())
            return StepOutcome::Done;

        masks.next_iteration();
        switch (masks.scheme()) {
        case RelaxationScheme::NG:
            return StepOutcome::Done;
        case RelaxationScheme::NGC:
            return update_masks(masks, report, MaskRule::LoopSpanWithinNg) ? StepOutcome::Repeat : StepOutcome::Done;
        case RelaxationScheme::NG_DSSRC:
        case RelaxationScheme::NGC_DSSRC:
            if (!masks.handed_off()) {
                if (masks.scheme() == RelaxationScheme::NGC_DSSRC
                    && update_masks(masks, report, MaskRule::LoopSpanWithinNg))
                    return StepOutcome::Repeat;
                masks.mark_handoff();
                if (!update_masks(masks, report, MaskRule::LoopSpan))
                    throw NonTerminating("relaxed optimum repeats a cycle that the masks already forbid");
                return StepOutcome::Handoff;
            }
            [[fallthrough]];
        case RelaxationScheme::DSSR:
        case RelaxationScheme::DSSRC:
            if (!update_masks(masks, report))
                throw NonTerminating("relaxed optimum repeats a cycle that the masks already forbid");
            return StepOutcome::Repeat;
        }
        return StepOutcome::Done;
    }

} // namespace pathwise
