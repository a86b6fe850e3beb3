#include "pathwise/solver.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pathwise {

    namespace {

        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point start) {
            return std::chrono::duration<double>(Clock::now() - start).count();
        }

        Clock::time_point deadline_after(double seconds) {
            const auto capped = std::min(seconds, 1e9);
            return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(capped));
        }

        struct TimedPass {
            PassResult result;
            double seconds = 0.0;
        };

        TimedPass timed_pass(LabelManager& manager, Direction dir, double hwp, const SolverConfig& config,
            Clock::time_point deadline) {
            const auto start = Clock::now();
            TimedPass out;
            out.result  = run_direction_pass(manager, dir, hwp, config, deadline);
            out.seconds = seconds_since(start);
            return out;
        }

    } // namespace

    void SolverConfig::validate() const {
        if (!(hwp_initial_fraction >= 0.0 && hwp_initial_fraction <= 1.0))
            throw ConfigError("hwp must lie in [0, 1]");
        if (!(hwp_step_fraction > 0.0 && hwp_step_fraction < 1.0))
            throw ConfigError("hwp_step must lie in (0, 1)");
        if (!(hwp_imbalance_threshold > 0.0 && hwp_imbalance_threshold < 1.0))
            throw ConfigError("hwp_threshold must lie in (0, 1)");
        if (!(time_limit > 0.0))
            throw ConfigError("time_limit must be positive");
        if (ng_size == 0)
            throw ConfigError("ng_size must be positive");
    }

    double update_hwp(double hwp, std::uint64_t labels_forward, std::uint64_t labels_backward, double budget,
        const SolverConfig& config) {
        const double nf   = static_cast<double>(std::max<std::uint64_t>(labels_forward, 1));
        const double nb   = static_cast<double>(std::max<std::uint64_t>(labels_backward, 1));
        const double step = config.hwp_step_fraction * budget;
        double next       = hwp;
        if ((nb - nf) / nf > config.hwp_imbalance_threshold)
            next = hwp + step;
        else if ((nf - nb) / nb > config.hwp_imbalance_threshold)
            next = hwp - step;
        return std::clamp(next, 0.0, budget);
    }

    PassResult run_direction_pass(LabelManager& manager, Direction dir, double hwp, const SolverConfig& config,
        Clock::time_point deadline) {
        PassResult result;
        while (true) {
            if (Clock::now() >= deadline) {
                result.timed_out = true;
                break;
            }
            const auto id = manager.next_candidate(dir, config.selection);
            if (!id)
                break;
            ++result.popped;
            const auto counts = manager.expand(dir, *id, hwp);
            result.counts.generated += counts.generated;
            result.counts.kept += counts.kept;
            result.counts.dominated += counts.dominated;
        }
        return result;
    }

    SolveResult solve(const Problem& problem, const SolverConfig& config, Telemetry* telemetry) {
        config.validate();
        if (!problem.critical().monotone())
            throw ConfigError("the critical resource must be monotone");

        const auto started   = Clock::now();
        const auto deadline  = deadline_after(config.time_limit);
        const auto cyclicity = classify_cyclicity(problem);
        const std::size_t n  = problem.node_count();

        // Without negative arcs there is no negative cycle, so labels need no visit memory. On cyclic
        // problems the switch is ignored: dropping it could loop forever.
        bool drop_visited = !config.full_masks && config.drop_visited != Toggle::Off
                         && cyclicity == Cyclicity::Acyclic;
        LabelOptions options;
        options.track_visited     = !drop_visited;
        options.track_unreachable = config.unreachable == Toggle::On
                                 || (config.unreachable == Toggle::Auto && cyclicity == Cyclicity::Cyclic);

        NeighborhoodMasks masks;
        if (config.full_masks)
            masks = NeighborhoodMasks::full(config.relaxation, n);
        else if (drop_visited)
            masks = NeighborhoodMasks::self_only(RelaxationScheme::DSSR, n);
        else
            masks = NeighborhoodMasks::init(config.relaxation, problem, std::min(config.ng_size, n));

        const double budget = problem.critical().critical_budget();
        const bool bidirectional = config.direction == DirectionMode::Bidirectional && std::isfinite(budget);
        double hwp = bidirectional ? config.hwp_initial_fraction * budget : kInfinity;

        SolveResult out;
        SolveStats& stats = out.stats;
        std::optional<Path> incumbent;
        std::optional<LabelManager> manager;
        manager.emplace(problem, masks, options);

        auto finish = [&](Path path, PathStatus status) {
            path.status         = status;
            out.path            = std::move(path);
            stats.final_hwp     = hwp;
            stats.seconds_total = seconds_since(started);
            if (telemetry)
                telemetry->add_time("solve", stats.seconds_total);
            return out;
        };
        auto record = [&](std::string_view name, std::uint64_t value) {
            if (telemetry)
                telemetry->record(name, value);
        };

        const std::size_t max_iterations = n * n + 2;
        for (std::size_t iteration = 1;; ++iteration) {
            if (iteration > max_iterations)
                throw NonTerminating("relaxation did not converge within n^2 iterations");
            ++stats.relaxation_iterations;
            record(counters::kRelaxationIters, 1);

            try {
                manager->reset(bidirectional);
            } catch (const InfeasibleAtSource&) {
                return finish(Path{}, PathStatus::Infeasible);
            }

            TimedPass fw;
            TimedPass bw;
            if (bidirectional && config.parallel) {
                std::thread worker(
                    [&] { bw = timed_pass(*manager, Direction::Backward, hwp, config, deadline); });
                fw = timed_pass(*manager, Direction::Forward, hwp, config, deadline);
                worker.join();
            } else {
                fw = timed_pass(*manager, Direction::Forward, hwp, config, deadline);
                if (bidirectional)
                    bw = timed_pass(*manager, Direction::Backward, hwp, config, deadline);
            }

            const std::uint64_t nf = 1 + fw.result.counts.generated;
            const std::uint64_t nb = bidirectional ? 1 + bw.result.counts.generated : 0;
            stats.labels_forward += nf;
            stats.labels_backward += nb;
            stats.kept_forward += manager->pool(Direction::Forward).kept();
            stats.kept_backward += manager->pool(Direction::Backward).kept();
            stats.dominated_forward += fw.result.counts.dominated;
            stats.dominated_backward += bw.result.counts.dominated;
            stats.seconds_forward += fw.seconds;
            stats.seconds_backward += bw.seconds;
            record(counters::kLabelsForward, nf);
            record(counters::kLabelsBackward, nb);
            record(counters::kKeptForward, manager->pool(Direction::Forward).kept());
            record(counters::kKeptBackward, manager->pool(Direction::Backward).kept());
            record(counters::kDominatedForward, fw.result.counts.dominated);
            record(counters::kDominatedBackward, bw.result.counts.dominated);
            if (telemetry) {
                telemetry->add_time("pass_fw", fw.seconds);
                telemetry->add_time("pass_bw", bw.seconds);
            }

            IterationRecord it;
            it.iteration       = iteration;
            it.hwp             = hwp;
            it.labels_forward  = nf;
            it.labels_backward = nb;

            if (fw.result.timed_out || bw.result.timed_out) {
                it.incumbent_cost = incumbent ? std::optional(incumbent->cost) : std::nullopt;
                stats.iterations.push_back(it);
                return finish(incumbent.value_or(Path{}), PathStatus::TimeLimit);
            }

            const auto join_start = Clock::now();
            const JoinResult joined = manager->join(config.join, incumbent ? incumbent->cost : kInfinity, hwp);
            const double join_seconds = seconds_since(join_start);
            stats.seconds_join += join_seconds;
            stats.join_attempts += joined.attempts;
            stats.join_successes += joined.successes;
            record(counters::kJoinAttempts, joined.attempts);
            record(counters::kJoinSuccesses, joined.successes);
            if (telemetry)
                telemetry->add_time("join", join_seconds);

            if (joined.best_elementary
                && (!incumbent || joined.best_elementary->cost < incumbent->cost - kFeasibilityTol))
                incumbent = joined.best_elementary;

            if (joined.best) {
                it.relaxed_cost       = joined.best->cost;
                it.relaxed_elementary = joined.best->elementary;
            }
            it.incumbent_cost = incumbent ? std::optional(incumbent->cost) : std::nullopt;
            stats.iterations.push_back(it);

            if (!joined.best) {
                // Nothing beats the incumbent: the relaxed optimum is no better than an elementary path.
                if (incumbent)
                    return finish(*incumbent, PathStatus::Optimal);
                return finish(Path{}, PathStatus::Infeasible);
            }
            const Path& relaxed = *joined.best;
            if (relaxed.elementary)
                return finish(relaxed, PathStatus::Optimal);
            if (incumbent && incumbent->cost <= relaxed.cost + kFeasibilityTol)
                return finish(*incumbent, PathStatus::Optimal);
            if (!config.elementary_required)
                return finish(relaxed, PathStatus::Feasible);

            if (drop_visited) {
                // Zero-cost cycles can survive without a visited set; fall back to DSSR state tracking.
                drop_visited          = false;
                options.track_visited = true;
                masks                 = NeighborhoodMasks::self_only(RelaxationScheme::DSSR, n);
                manager.emplace(problem, masks, options);
                update_masks(masks, detect_cycles(relaxed.tour), MaskRule::Global);
            } else if (relaxation_step(masks, relaxed.tour) == StepOutcome::Done) {
                return finish(relaxed, PathStatus::Feasible);
            }

            if (bidirectional)
                hwp = update_hwp(hwp, nf, nb, budget, config);
        }
    }

} // namespace pathwise
