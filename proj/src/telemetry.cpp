#include "pathwise/telemetry.hpp"

#include "json.hpp"

#include <array>

#include <iomanip>
#include <sstream>

namespace pathwise {

    std::atomic<std::uint64_t>& Telemetry::slot(std::string_view name) {
        std::lock_guard lock(_mutex);
        auto it = _counters.find(name);
        if (it == _counters.end())
            it = _counters.try_emplace(std::string(name), 0).first;
        return it->second;
    }

    void Telemetry::record(std::string_view name, std::uint64_t delta) {
        if (!_enabled)
            return;
        slot(name).fetch_add(delta, std::memory_order_relaxed);
    }

    void Telemetry::add_time(std::string_view name, double seconds) {
        if (!_enabled)
            return;
        std::lock_guard lock(_mutex);
        auto it = _timers.find(name);
        if (it == _timers.end())
            it = _timers.try_emplace(std::string(name), 0.0).first;
        it->second += seconds;
    }

    std::uint64_t Telemetry::counter(std::string_view name) const {
        std::lock_guard lock(_mutex);
        auto it = _counters.find(name);
        return it == _counters.end() ? 0 : it->second.load(std::memory_order_relaxed);
    }

    double Telemetry::timer(std::string_view name) const {
        std::lock_guard lock(_mutex);
        auto it = _timers.find(name);
        return it == _timers.end() ? 0.0 : it->second;
    }

    std::map<std::string, std::uint64_t> Telemetry::counters() const {
        std::lock_guard lock(_mutex);
        std::map<std::string, std::uint64_t> out;
        for (const auto& [name, value] : _counters)
            out.emplace(name, value.load(std::memory_order_relaxed));
        return out;
    }

    std::map<std::string, double> Telemetry::timers() const {
        std::lock_guard lock(_mutex);
        return {_timers.begin(), _timers.end()};
    }

    Telemetry::ScopedPhase::ScopedPhase(Telemetry* telemetry, std::string_view name)
        : _telemetry(telemetry && telemetry->enabled() ? telemetry : nullptr), _name(_telemetry ? name : ""),
          _start(_telemetry ? std::chrono::steady_clock::now() : std::chrono::steady_clock::time_point{}) {}

    Telemetry::ScopedPhase::~ScopedPhase() {
        if (_telemetry)
            _telemetry->add_time(
                _name, std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count());
    }

    std::string Telemetry::report(ReportFormat format, bool include_timers) const {
        auto snapshot = counters();
        for (auto name : {pathwise::counters::kLabelsForward, pathwise::counters::kLabelsBackward,
                 pathwise::counters::kKeptForward,
                 pathwise::counters::kKeptBackward, pathwise::counters::kDominatedForward,
                 pathwise::counters::kDominatedBackward,
                 pathwise::counters::kJoinAttempts, pathwise::counters::kJoinSuccesses,
                 pathwise::counters::kRelaxationIters})
            snapshot.try_emplace(std::string(name), 0);
        if (format == ReportFormat::Json) {
            nlohmann::ordered_json doc;
            doc["schema"]   = kTelemetrySchema;
            doc["counters"] = nlohmann::ordered_json::object();
            for (const auto& [name, value] : snapshot)
                doc["counters"][name] = value;
            if (include_timers) {
                doc["timers"] = nlohmann::ordered_json::object();
                for (const auto& [name, value] : timers())
                    doc["timers"][name] = value;
            }
            return doc.dump(2);
        }
        std::ostringstream out;
        out << "telemetry " << kTelemetrySchema << '\n';
        for (const auto& [name, value] : snapshot)
            out << "  " << std::left << std::setw(24) << name << value << '\n';
        if (include_timers)
            for (const auto& [name, value] : timers())
                out << "  " << std::left << std::setw(24) << (name + " [s]") << value << '\n';
        return out.str();
    }

    std::optional<std::map<std::string, std::uint64_t>> parse_counters(std::string_view json_report) {
        const auto doc = nlohmann::json::parse(json_report, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || doc.value("schema", "") != kTelemetrySchema)
            return std::nullopt;
        std::map<std::string, std::uint64_t> out;
        for (const auto& [name, value] : doc.at("counters").items())
            out.emplace(name, value.get<std::uint64_t>());
        return out;
    }

} // namespace pathwise
