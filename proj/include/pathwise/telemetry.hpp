#ifndef PATHWISE_TELEMETRY_HPP
#define PATHWISE_TELEMETRY_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace pathwise {

    enum class ReportFormat { Text, Json };

    inline constexpr std::string_view kTelemetrySchema = "pathwise.telemetry/1";

    /// Named monotone counters and wall-clock timers. A disabled instance ignores every call after a flag check.
    class Telemetry {
    public:
        explicit Telemetry(bool enabled = true) : _enabled(enabled) {}
        Telemetry(const Telemetry&)            = delete;
        Telemetry& operator=(const Telemetry&) = delete;

        [[nodiscard]] bool enabled() const noexcept { return _enabled; }

        void record(std::string_view name, std::uint64_t delta = 1);
        void add_time(std::string_view name, double seconds);

        [[nodiscard]] std::uint64_t counter(std::string_view name) const;
        [[nodiscard]] double timer(std::string_view name) const;
        [[nodiscard]] std::map<std::string, std::uint64_t> counters() const;
        [[nodiscard]] std::map<std::string, double> timers() const;

        /// Adds the elapsed time of its own lifetime to a timer.
        class ScopedPhase {
        public:
            ScopedPhase(Telemetry* telemetry, std::string_view name);
            ScopedPhase(const ScopedPhase&)            = delete;
            ScopedPhase& operator=(const ScopedPhase&) = delete;
            ~ScopedPhase();

        private:
            Telemetry* _telemetry;
            std::string _name;
            std::chrono::steady_clock::time_point _start;
        };

        [[nodiscard]] ScopedPhase time_phase(std::string_view name) { return ScopedPhase(this, name); }

        /// Serialized snapshot; take it only when no solve is running. Timers are wall-clock and therefore
        /// excluded unless asked for.
        [[nodiscard]] std::string report(ReportFormat format, bool include_timers = false) const;

    private:
        std::atomic<std::uint64_t>& slot(std::string_view name);

        bool _enabled;
        mutable std::mutex _mutex;
        std::map<std::string, std::atomic<std::uint64_t>, std::less<>> _counters;
        std::map<std::string, double, std::less<>> _timers;
    };

    /// Parses the counter section of a JSON report; nullopt when the schema tag does not match.
    [[nodiscard]] std::optional<std::map<std::string, std::uint64_t>> parse_counters(std::string_view json_report);

    /// Counter names written by the solver.
    namespace counters {
        inline constexpr std::string_view kLabelsForward     = "labels_fw";
        inline constexpr std::string_view kLabelsBackward    = "labels_bw";
        inline constexpr std::string_view kKeptForward       = "kept_fw";
        inline constexpr std::string_view kKeptBackward      = "kept_bw";
        inline constexpr std::string_view kDominatedForward  = "dominated_fw";
        inline constexpr std::string_view kDominatedBackward = "dominated_bw";
        inline constexpr std::string_view kJoinAttempts      = "join_attempts";
        inline constexpr std::string_view kJoinSuccesses     = "join_successes";
        inline constexpr std::string_view kRelaxationIters   = "relaxation_iterations";
    } // namespace counters

} // namespace pathwise

#endif // PATHWISE_TELEMETRY_HPP
