#include "pathwise/config.hpp"

#include "pathwise/errors.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

namespace pathwise {

    namespace {

        std::string_view trim(std::string_view text) {
            const auto first = text.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = text.find_last_not_of(" \t\r");
            return text.substr(first, last - first + 1);
        }

        [[noreturn]] void fail(const ConfigEntry& entry, const std::string& what) {
            std::string where = entry.line ? "line " + std::to_string(entry.line) + ": " : std::string();
            throw ConfigError(where + "key '" + entry.key + "': " + what);
        }

        double to_real(const ConfigEntry& entry) {
            double value = 0.0;
            const auto* end = entry.value.data() + entry.value.size();
            const auto [ptr, ec] = std::from_chars(entry.value.data(), end, value);
            if (ec != std::errc() || ptr != end)
                fail(entry, "expected a number, got '" + entry.value + "'");
            return value;
        }

        std::size_t to_count(const ConfigEntry& entry) {
            std::size_t value = 0;
            const auto* end = entry.value.data() + entry.value.size();
            const auto [ptr, ec] = std::from_chars(entry.value.data(), end, value);
            if (ec != std::errc() || ptr != end)
                fail(entry, "expected a non-negative integer, got '" + entry.value + "'");
            return value;
        }

        bool to_flag(const ConfigEntry& entry) {
            const auto& v = entry.value;
            if (v == "on" || v == "true" || v == "1" || v == "yes")
                return true;
            if (v == "off" || v == "false" || v == "0" || v == "no")
                return false;
            fail(entry, "expected on/off, got '" + v + "'");
        }

        Toggle to_toggle(const ConfigEntry& entry) {
            if (entry.value == "auto")
                return Toggle::Auto;
            return to_flag(entry) ? Toggle::On : Toggle::Off;
        }

    } // namespace

    std::vector<ConfigEntry> parse_config(std::istream& in) {
        std::vector<ConfigEntry> entries;
        std::string raw;
        std::size_t number = 0;
        while (std::getline(in, raw)) {
            ++number;
            std::string_view line = raw;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("line " + std::to_string(number) + ": expected key = value");
            ConfigEntry entry{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), number};
            if (entry.key.empty())
                throw ConfigError("line " + std::to_string(number) + ": empty key");
            entries.push_back(std::move(entry));
        }
        return entries;
    }

    std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in)
            return {};
        return parse_config(in);
    }

    RunSettings default_settings(Cyclicity cyclicity) {
        RunSettings s;
        s.solver.direction = DirectionMode::Bidirectional;
        s.solver.join      = JoinMode::Bounded;
        s.solver.hwp_initial_fraction = 0.5;
        if (cyclicity == Cyclicity::Cyclic) {
            s.solver.parallel     = true;
            s.solver.selection    = SelectionStrategy::NodeSelection;
            s.solver.drop_visited = Toggle::Off;
        } else {
            s.solver.parallel     = false;
            s.solver.selection    = SelectionStrategy::RoundRobin;
            s.solver.drop_visited = Toggle::On;
            s.storage             = StorageMode::SparseMap;
        }
        return s;
    }

    void apply_entry(RunSettings& settings, const ConfigEntry& entry) {
        auto& solver     = settings.solver;
        const auto& key  = entry.key;
        const auto& v    = entry.value;
        if (key == "relaxation") {
            const auto scheme = parse_relaxation(v);
            if (!scheme)
                fail(entry, "unknown relaxation '" + v + "'");
            solver.relaxation = *scheme;
        } else if (key == "ng_size") {
            solver.ng_size = to_count(entry);
            if (solver.ng_size == 0)
                fail(entry, "must be positive");
        } else if (key == "selection") {
            if (v == "node")
                solver.selection = SelectionStrategy::NodeSelection;
            else if (v == "rr")
                solver.selection = SelectionStrategy::RoundRobin;
            else
                fail(entry, "expected node or rr");
        } else if (key == "join") {
            if (v == "naive")
                solver.join = JoinMode::Naive;
            else if (v == "bounded")
                solver.join = JoinMode::Bounded;
            else
                fail(entry, "expected naive or bounded");
        } else if (key == "hwp") {
            solver.hwp_initial_fraction = to_real(entry);
        } else if (key == "hwp_step") {
            solver.hwp_step_fraction = to_real(entry);
        } else if (key == "hwp_threshold") {
            solver.hwp_imbalance_threshold = to_real(entry);
        } else if (key == "time_limit") {
            solver.time_limit = to_real(entry);
        } else if (key == "direction") {
            if (v == "bidirectional" || v == "bi")
                solver.direction = DirectionMode::Bidirectional;
            else if (v == "forward")
                solver.direction = DirectionMode::ForwardOnly;
            else
                fail(entry, "expected bidirectional or forward");
        } else if (key == "parallel") {
            solver.parallel = to_flag(entry);
        } else if (key == "elementary") {
            solver.elementary_required = to_flag(entry);
        } else if (key == "unreachable") {
            solver.unreachable = to_toggle(entry);
        } else if (key == "compress_labels") {
            solver.drop_visited = to_toggle(entry);
        } else if (key == "full_masks") {
            solver.full_masks = to_flag(entry);
        } else if (key == "storage") {
            if (v == "auto")
                settings.storage.reset();
            else if (v == "dense")
                settings.storage = StorageMode::DenseBits;
            else if (v == "sparse")
                settings.storage = StorageMode::SparseMap;
            else
                fail(entry, "expected auto, dense or sparse");
        } else if (key == "telemetry") {
            settings.telemetry = to_flag(entry);
        } else if (key == "log_file") {
            if (v.empty())
                settings.log_file.reset();
            else
                settings.log_file = v;
        } else if (key == "report_format") {
            if (v == "text")
                settings.report_format = ReportFormat::Text;
            else if (v == "json")
                settings.report_format = ReportFormat::Json;
            else
                fail(entry, "expected text or json");
        } else {
            fail(entry, "unknown key");
        }
    }

    RunSettings load_config(const std::vector<ConfigEntry>& file_entries, const std::vector<ConfigEntry>& overrides,
        Cyclicity cyclicity) {
        RunSettings settings = default_settings(cyclicity);
        for (const auto& entry : file_entries)
            apply_entry(settings, entry);
        for (const auto& entry : overrides)
            apply_entry(settings, entry);
        settings.solver.validate();
        return settings;
    }

} // namespace pathwise
