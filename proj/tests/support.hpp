#ifndef PATHWISE_TESTS_SUPPORT_HPP
#define PATHWISE_TESTS_SUPPORT_HPP

#include "pathwise/instgen.hpp"
#include "pathwise/problem.hpp"
#include "pathwise/solver.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pathwise::testing {

    /// 4 nodes, s = 0, d = 3; capacity bound Q with unit demand at 1 and 2. Optimum 0-1-2-3 of cost 3 for Q = 2.
    Problem t4(double capacity = 2.0);

    /// 3 nodes, s = 0, d = 2, arcs 0-1, 1-2, 2-1 of cost -5, node limit 4. Optimum 0-1-2 of cost -10.
    Problem t3neg();

    /// Complete digraph on n nodes (s = 0, d = n - 1), about 30% negative arcs, one capacity resource.
    Problem random_cyclic(std::uint64_t seed, std::size_t n);

    /// Sparse digraph with positive costs and one time resource.
    Problem random_acyclic(std::uint64_t seed, std::size_t n, std::size_t out_degree = 3);

    /// Default configuration for a cyclic instance with the given relaxation.
    SolverConfig config_for(RelaxationScheme scheme);

    inline constexpr std::array<RelaxationScheme, 4> kElementarySchemes{
        RelaxationScheme::DSSR, RelaxationScheme::DSSRC, RelaxationScheme::NG_DSSRC, RelaxationScheme::NGC_DSSRC};

} // namespace pathwise::testing

#endif // PATHWISE_TESTS_SUPPORT_HPP
