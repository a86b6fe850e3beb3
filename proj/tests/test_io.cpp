#include "support.hpp"

#include "pathwise/errors.hpp"
#include "pathwise/instgen.hpp"
#include "pathwise/io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

using namespace pathwise;

namespace {

    constexpr const char* kT4Native = R"(# four-node toy
NAME t4
NODES 4
SOURCE 0
DEST 3
ARCS
0 1 1
0 2 4
0 3 10
1 2 1
1 3 5
2 3 1
RESOURCE CAPACITY 0 2
NODE 1 1
NODE 2 1
CRITICAL 0
)";

    Problem parse(const std::string& text) {
        std::istringstream in(text);
        return parse_native(in);
    }

    std::string written(const Problem& p) {
        std::ostringstream out;
        write_native(p, out);
        return out.str();
    }

    void expect_same(const Problem& a, const Problem& b) {
        EXPECT_EQ(a.name(), b.name());
        EXPECT_EQ(a.node_count(), b.node_count());
        EXPECT_EQ(a.source(), b.source());
        EXPECT_EQ(a.destination(), b.destination());
        ASSERT_EQ(a.graph().arc_count(), b.graph().arc_count());
        for (ArcId k = 0; k < a.graph().arc_count(); ++k)
            EXPECT_EQ(a.graph().arc(k), b.graph().arc(k));
        EXPECT_EQ(a.arc_costs(), b.arc_costs());
        ASSERT_EQ(a.resource_count(), b.resource_count());
        for (std::size_t r = 0; r < a.resource_count(); ++r) {
            EXPECT_EQ(a.resource(r).kind(), b.resource(r).kind());
            EXPECT_EQ(a.resource(r).data(), b.resource(r).data());
        }
        EXPECT_EQ(a.critical_index(), b.critical_index());
        EXPECT_EQ(std::vector<Point>(a.graph().coordinates().begin(), a.graph().coordinates().end()),
            std::vector<Point>(b.graph().coordinates().begin(), b.graph().coordinates().end()));
    }

} // namespace

TEST(Native, ParsesT4) {
    const auto p = parse(kT4Native);
    EXPECT_EQ(p.name(), "t4");
    EXPECT_EQ(p.node_count(), 4U);
    EXPECT_EQ(p.resource_count(), 1U);
    EXPECT_EQ(p.resource(0).kind(), ResourceKind::Capacity);
    EXPECT_DOUBLE_EQ(p.cost(*p.graph().arc_id(0, 3)), 10.0);
    expect_same(p, pathwise::testing::t4());
}

TEST(Native, RoundTripIsExact) {
    const auto p = parse(kT4Native);
    expect_same(p, parse(written(p)));

    PcGenSpec spec;
    spec.n    = 12;
    spec.seed = 3;
    const auto generated = generate(spec);
    const auto text      = written(generated);
    const auto reparsed  = parse(text);
    expect_same(generated, reparsed);
    EXPECT_EQ(text, written(reparsed));
}

TEST(Native, RejectsMalformedFiles) {
    EXPECT_THROW((void)parse("NODES 2\nSOURCE 0\nDEST 1\nRESOURCE CAPACITY 0 -1\n"), ParseError);
    EXPECT_THROW((void)parse("NODES 2\nSOURCE 0\nDEST 1\nBOGUS\n"), ParseError);
    EXPECT_THROW((void)parse("SOURCE 0\nDEST 1\n"), ParseError);
    EXPECT_THROW((void)parse("NODES 3\nSOURCE 0\nDEST 2\nARCS\n0 1 1\nRESOURCE NODELIMIT 0 3\n"
                             "RESOURCE NODELIMIT 0 4\n"),
        InconsistentData);
    EXPECT_THROW((void)parse("NODES 3\nSOURCE 0\nDEST 2\nARCS\n0 1 1\nRESOURCE CAPACITY 0 3\nNODE 7 1\n"),
        InconsistentData);
}

TEST(Native, ParseErrorCarriesLine) {
    try {
        (void)parse("NODES 2\nSOURCE 0\nDEST 1\nARCS\n0 1 x\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5U);
    }
}

TEST(Native, SelfLoopsAndDuplicatesWarn) {
    const auto p = parse("NODES 3\nSOURCE 0\nDEST 2\nARCS\n0 1 4\n0 1 2\n1 1 3\n1 2 1\nRESOURCE NODELIMIT 0 3\n");
    EXPECT_EQ(p.graph().arc_count(), 2U);
    EXPECT_DOUBLE_EQ(p.cost(*p.graph().arc_id(0, 1)), 2.0);
    EXPECT_GE(p.warnings().size(), 2U);
}

TEST(Pc, GeneratedInstanceLoads) {
    PcGenSpec spec;
    spec.seed = 1;
    const auto text = written(generate(spec));
    std::istringstream in(text);
    const auto p = parse_pc(in);
    EXPECT_EQ(p.resource_count(), 4U);
    EXPECT_EQ(p.critical_index(), 0U);
    EXPECT_DOUBLE_EQ(p.resource(2).data().upper_bound, 8.0);
    EXPECT_EQ(classify_cyclicity(p), Cyclicity::Cyclic);
}

TEST(Pc, MissingTimeWindowsIsInconsistent) {
    std::istringstream in("NODES 3\nSOURCE 0\nDEST 2\nARCS\n0 1 -1\n1 2 -1\n"
                          "RESOURCE CAPACITY 0 5\nRESOURCE CAPACITY 0 5\nRESOURCE NODELIMIT 0 3\n");
    EXPECT_THROW((void)parse_pc(in), InconsistentData);
}

TEST(Dimacs, ToyFile) {
    std::istringstream gr("c toy\np sp 2 1\na 1 2 7\n");
    DimacsOptions options;
    const auto p = parse_dimacs(gr, options);
    EXPECT_EQ(p.node_count(), 2U);
    EXPECT_DOUBLE_EQ(p.cost(*p.graph().arc_id(0, 1)), 7.0);
    EXPECT_EQ(p.resource(0).kind(), ResourceKind::Time);
    EXPECT_EQ(classify_cyclicity(p), Cyclicity::Acyclic);
}

TEST(Dimacs, SelfLoopDroppedAndDuplicatesCollapsed) {
    std::istringstream gr("p sp 3 4\na 1 1 5\na 1 2 7\na 1 2 3\na 2 3 1\n");
    DimacsOptions options;
    options.destination = 2;
    const auto p = parse_dimacs(gr, options);
    EXPECT_EQ(p.graph().arc_count(), 2U);
    EXPECT_DOUBLE_EQ(p.cost(*p.graph().arc_id(0, 1)), 3.0);
    EXPECT_FALSE(p.warnings().empty());
}

TEST(Dimacs, TimeDivisorAndBound) {
    std::istringstream gr("p sp 2 1\na 1 2 100\n");
    DimacsOptions options;
    options.time_divisor   = 10.0;
    options.resource_bound = 25.0;
    const auto p = parse_dimacs(gr, options);
    EXPECT_DOUBLE_EQ(p.resource(0).data().arc(0), 10.0);
    EXPECT_DOUBLE_EQ(p.resource(0).data().upper_bound, 25.0);
}

TEST(Dimacs, Errors) {
    DimacsOptions options;
    std::istringstream no_header("a 1 2 7\n");
    EXPECT_THROW((void)parse_dimacs(no_header, options), ParseError);
    std::istringstream bad_node("p sp 2 1\na 1 3 7\n");
    EXPECT_THROW((void)parse_dimacs(bad_node, options), ParseError);
    options.destination = 9;
    std::istringstream ok("p sp 2 1\na 1 2 7\n");
    EXPECT_THROW((void)parse_dimacs(ok, options), UnknownNode);
}

TEST(Problem, CyclicityIsConservative) {
    EXPECT_EQ(classify_cyclicity(pathwise::testing::t4()), Cyclicity::Acyclic);
    EXPECT_EQ(classify_cyclicity(pathwise::testing::t3neg()), Cyclicity::Cyclic);
}
