#ifndef PATHWISE_INSTGEN_HPP
#define PATHWISE_INSTGEN_HPP

#include "pathwise/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

namespace pathwise {

    /// Seeded uniform source. Maps raw 64-bit draws by hand so that sequences are identical across
    /// standard libraries (std distributions are implementation-defined).
    class UniformSource {
    public:
        explicit UniformSource(std::uint64_t seed) : _engine(seed) {}

        /// Uniform real in [0, 1).
        [[nodiscard]] double unit() { return static_cast<double>(_engine() >> 11) * 0x1.0p-53; }
        /// Uniform real in [a, b).
        [[nodiscard]] double uniform(double a, double b) { return a + (b - a) * unit(); }
        /// Uniform integer in [a, b].
        [[nodiscard]] std::int64_t integer(std::int64_t a, std::int64_t b);

    private:
        std::mt19937_64 _engine;
    };

    struct BaseNode {
        Point position;
        std::optional<double> demand;
    };

    struct PcGenSpec {
        std::size_t n   = 50;  ///< customers plus the depot
        double capacity = 25;  ///< C
        std::size_t node_limit = 8; ///< NL
        std::uint64_t seed     = 1;
        /// First n entries are used, the first one is the depot. Synthetic [0, 1000]^2 points when empty.
        std::vector<BaseNode> base_nodes;
        double wide_tw_fraction = 0.8;
    };

    struct WindowSample {
        double open  = 0.0; ///< at
        double close = 0.0; ///< dt, before widening for service
        bool wide    = false;
    };

    /// One draw of the window rule: at ~ U(0, 1000), then dt = at + 100 U(1, 4) for a wide window or
    /// at + 100 U(0.1, 0.6) for a narrow one.
    [[nodiscard]] WindowSample sample_window(UniformSource& rng, double wide_fraction);

    /// Prize-collecting instance over a complete digraph. The depot is split into source 0 and sink n,
    /// so the graph has n + 1 nodes; arc costs are negated rounded distances. Resources, in order:
    /// capacity (bound C, critical), second capacity (bound in [0.8C, 1.2C]), node limit NL, time windows.
    [[nodiscard]] Problem generate(const PcGenSpec& spec);

    /// Reads `x y [demand]` lines; blank lines and `#` comments are skipped.
    [[nodiscard]] std::vector<BaseNode> load_base_nodes(const std::filesystem::path& path);

} // namespace pathwise

#endif // PATHWISE_INSTGEN_HPP
