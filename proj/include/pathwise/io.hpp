#ifndef PATHWISE_IO_HPP
#define PATHWISE_IO_HPP

#include "pathwise/problem.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace pathwise {

    /// Reads the sectioned native text format:
    ///
    ///     # comment
    ///     NAME <text>
    ///     NODES <n>
    ///     SOURCE <i>
    ///     DEST <j>
    ///     COORD <i> <x> <y>
    ///     ARCS
    ///     <i> <j> <cost> [<time>]
    ///     RESOURCE <CAPACITY|TIME|NODELIMIT|TIMEWINDOWS> <lb> <ub>
    ///     NODE <i> <consumption>
    ///     ARC <i> <j> <consumption>
    ///     TW <i> <open> <close> <service>
    ///     CRITICAL <resource-index>
    ///
    /// The optional ARCS time column is the default arc consumption of every TIME / TIMEWINDOWS resource.
    [[nodiscard]] Problem parse_native(std::istream& in, const std::string& name = "", GraphOptions options = {});
    [[nodiscard]] Problem load_native(const std::filesystem::path& path, GraphOptions options = {});

    /// Writes `problem` so that parse_native reproduces it field by field. Custom resources cannot be written.
    void write_native(const Problem& problem, std::ostream& out);
    void save_native(const Problem& problem, const std::filesystem::path& path);

    /// Prize-collecting instance: a native file with exactly two capacities, one node limit and one time
    /// window resource. The critical resource defaults to the first capacity.
    [[nodiscard]] Problem load_pc(const std::filesystem::path& path, GraphOptions options = {});
    [[nodiscard]] Problem parse_pc(std::istream& in, const std::string& name = "", GraphOptions options = {});

    struct DimacsOptions {
        NodeId source      = 0; ///< 0-based
        NodeId destination = 1; ///< 0-based
        double resource_bound = kInfinity;
        /// Travel time = distance / divisor when no separate time file is given.
        double time_divisor = 1.0;
        std::optional<std::filesystem::path> time_gr;
        std::optional<std::filesystem::path> coordinates;
        GraphOptions graph;
    };

    /// DIMACS shortest-path challenge `.gr` (plus optional time `.gr` and `.co`). File ids are 1-based.
    [[nodiscard]] Problem load_dimacs(const std::filesystem::path& gr_path, const DimacsOptions& options);
    [[nodiscard]] Problem parse_dimacs(std::istream& gr, const DimacsOptions& options, std::istream* time_gr = nullptr,
        std::istream* coordinates = nullptr, const std::string& name = "");

} // namespace pathwise

#endif // PATHWISE_IO_HPP
