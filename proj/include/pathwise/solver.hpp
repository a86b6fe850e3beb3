#ifndef PATHWISE_SOLVER_HPP
#define PATHWISE_SOLVER_HPP

#include "pathwise/label.hpp"
#include "pathwise/path.hpp"
#include "pathwise/problem.hpp"
#include "pathwise/relaxation.hpp"
#include "pathwise/telemetry.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace pathwise {

    enum class DirectionMode { Bidirectional, ForwardOnly };

    /// Tri-state switch whose Auto value depends on the problem's cyclicity.
    enum class Toggle { Auto, On, Off };

    struct SolverConfig {
        RelaxationScheme relaxation = RelaxationScheme::DSSRC;
        std::size_t ng_size         = 16;
        SelectionStrategy selection = SelectionStrategy::NodeSelection;
        JoinMode join               = JoinMode::Bounded;
        /// Initial half-way point as a fraction of the critical budget U_c.
        double hwp_initial_fraction    = 0.5;
        double hwp_step_fraction       = 0.05;
        double hwp_imbalance_threshold = 0.20;
        double time_limit              = 3600.0; ///< seconds
        DirectionMode direction        = DirectionMode::Bidirectional;
        bool parallel                  = false;
        bool elementary_required       = true;
        /// Unreachable-node tracking; Auto enables it on cyclic problems.
        Toggle unreachable = Toggle::Auto;
        /// Dropping the visited set; only ever applied to acyclic problems, where Auto and On both drop it.
        Toggle drop_visited = Toggle::Auto;
        /// Start from all-ones masks, i.e. exact elementarity from the first iteration.
        bool full_masks = false;

        /// Throws ConfigError on out-of-range values.
        void validate() const;
    };

    struct IterationRecord {
        std::size_t iteration = 0;
        double hwp            = 0.0;
        std::uint64_t labels_forward  = 0;
        std::uint64_t labels_backward = 0;
        std::optional<double> relaxed_cost;
        bool relaxed_elementary = false;
        std::optional<double> incumbent_cost;
    };

    struct SolveStats {
        std::uint64_t labels_forward     = 0; ///< N_F over the whole run, root labels included
        std::uint64_t labels_backward    = 0; ///< N_B
        std::uint64_t kept_forward       = 0;
        std::uint64_t kept_backward      = 0;
        std::uint64_t dominated_forward  = 0;
        std::uint64_t dominated_backward = 0;
        std::uint64_t join_attempts      = 0;
        std::uint64_t join_successes     = 0;
        std::uint64_t relaxation_iterations = 0;
        double seconds_forward = 0.0;
        double seconds_backward = 0.0;
        double seconds_join    = 0.0;
        double seconds_total   = 0.0;
        double final_hwp       = 0.0;
        std::vector<IterationRecord> iterations;
    };

    struct SolveResult {
        Path path; ///< status Infeasible with an empty tour when no path exists
        SolveStats stats;
    };

    /// Bidirectional labeling under the configured relaxation, repeated until the relaxation yields an
    /// elementary optimum (or, for bare NG / NGC, until it stops changing).
    [[nodiscard]] SolveResult solve(const Problem& problem, const SolverConfig& config, Telemetry* telemetry = nullptr);

    /// Semi-dynamic half-way point: moves hwp by one step of U_c towards the direction that generated more
    /// than `threshold` extra labels, clamped to [0, U_c].
    [[nodiscard]] double update_hwp(
        double hwp, std::uint64_t labels_forward, std::uint64_t labels_backward, double budget, const SolverConfig& config);

    struct PassResult {
        ExpansionCounts counts;
        std::uint64_t popped = 0;
        bool timed_out       = false;
    };

    /// Extends candidates of one direction until its frontier is empty or the deadline passes.
    PassResult run_direction_pass(LabelManager& manager, Direction dir, double hwp, const SolverConfig& config,
        std::chrono::steady_clock::time_point deadline);

} // namespace pathwise

#endif // PATHWISE_SOLVER_HPP
