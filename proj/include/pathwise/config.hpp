#ifndef PATHWISE_CONFIG_HPP
#define PATHWISE_CONFIG_HPP

#include "pathwise/graph.hpp"
#include "pathwise/problem.hpp"
#include "pathwise/solver.hpp"
#include "pathwise/telemetry.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pathwise {

    inline constexpr const char* kDefaultConfigFile = "pathwise.set";
    inline constexpr const char* kConfigEnvVar      = "PATHWISE_SET";

    struct ConfigEntry {
        std::string key;
        std::string value;
        std::size_t line = 0; ///< 0 for entries that did not come from a file
    };

    /// Everything a run needs besides the instance.
    struct RunSettings {
        SolverConfig solver;
        std::optional<StorageMode> storage; ///< nullopt lets the graph pick by density
        bool telemetry = true;
        std::optional<std::string> log_file;
        ReportFormat report_format = ReportFormat::Text;
    };

    /// `key = value` lines; `#` starts a comment. Throws ConfigError on malformed lines.
    [[nodiscard]] std::vector<ConfigEntry> parse_config(std::istream& in);
    /// Missing file yields no entries.
    [[nodiscard]] std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

    /// Defaults of the instance class: cyclic problems run bidirectional and parallel with node selection;
    /// acyclic ones run bidirectional sequential with round-robin selection, sparse storage and the
    /// visited set dropped.
    [[nodiscard]] RunSettings default_settings(Cyclicity cyclicity);

    /// Applies one entry; throws ConfigError naming the key (and line) for unknown keys or bad values.
    void apply_entry(RunSettings& settings, const ConfigEntry& entry);

    /// Class defaults, then file entries, then overrides (later wins).
    [[nodiscard]] RunSettings load_config(const std::vector<ConfigEntry>& file_entries,
        const std::vector<ConfigEntry>& overrides, Cyclicity cyclicity);

} // namespace pathwise

#endif // PATHWISE_CONFIG_HPP
