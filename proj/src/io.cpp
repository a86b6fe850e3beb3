#include "pathwise/io.hpp"

#include "pathwise/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace pathwise {

    namespace {

        struct Token {
            std::string_view text;
            std::size_t column; // 1-based
        };

        std::vector<Token> tokenize(std::string_view line) {
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::vector<Token> tokens;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                const std::size_t start = i;
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
                    ++i;
                if (i > start)
                    tokens.push_back({line.substr(start, i - start), start + 1});
            }
            return tokens;
        }

        std::string upper(std::string_view s) {
            std::string out(s);
            std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
            return out;
        }

        double to_real(const Token& t, std::size_t line) {
            const std::string u = upper(t.text);
            if (u == "INF" || u == "+INF")
                return kInfinity;
            double value = 0.0;
            const char* first = t.text.data();
            const char* last  = first + t.text.size();
            if (*first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last || std::isnan(value))
                throw ParseError("expected a number, got '" + std::string(t.text) + "'", line, t.column);
            return value;
        }

        std::uint64_t to_index(const Token& t, std::size_t line) {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size())
                throw ParseError("expected a non-negative integer, got '" + std::string(t.text) + "'", line, t.column);
            return value;
        }

        void expect_arity(const std::vector<Token>& tokens, std::size_t lo, std::size_t hi, std::size_t line) {
            if (tokens.size() < lo || tokens.size() > hi) {
                const std::size_t column = tokens.size() > hi ? tokens[hi].column : tokens.back().column;
                throw ParseError("wrong number of fields for '" + std::string(tokens.front().text) + "'", line, column);
            }
        }

        std::string format_real(double v) {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            std::array<char, 64> buffer{};
            auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), v);
            return std::string(buffer.data(), ptr);
        }

        struct RawArc {
            NodeId tail;
            NodeId head;
            double cost;
            std::optional<double> time;
            std::size_t line;
        };

        /// Keeps the cheapest copy of every (tail, head) pair and drops self-loops, recording warnings.
        std::vector<RawArc> collapse_arcs(std::vector<RawArc> raw, std::vector<std::string>& warnings) {
            std::map<std::pair<NodeId, NodeId>, RawArc> best;
            std::size_t loops = 0;
            std::size_t duplicates = 0;
            for (auto& arc : raw) {
                if (arc.tail == arc.head) {
                    ++loops;
                    continue;
                }
                auto [it, inserted] = best.try_emplace({arc.tail, arc.head}, arc);
                if (!inserted) {
                    ++duplicates;
                    if (arc.cost < it->second.cost)
                        it->second = arc;
                }
            }
            if (loops)
                warnings.push_back("dropped " + std::to_string(loops) + " self-loop arc(s)");
            if (duplicates)
                warnings.push_back("collapsed " + std::to_string(duplicates) + " duplicate arc(s)");
            std::vector<RawArc> out;
            out.reserve(best.size());
            for (auto& [key, arc] : best)
                out.push_back(arc);
            return out;
        }

        struct ResourceSection {
            ResourceKind kind;
            double lower;
            double upper;
            std::size_t line;
            std::map<NodeId, double> nodes;
            std::map<std::pair<NodeId, NodeId>, double> arcs;
            std::map<NodeId, TimeWindow> windows;
        };

        struct NativeDocument {
            std::string name;
            std::optional<std::size_t> nodes;
            std::optional<NodeId> source;
            std::optional<NodeId> destination;
            std::map<NodeId, Point> coordinates;
            bool seen_arcs = false;
            std::vector<RawArc> arcs;
            std::vector<ResourceSection> resources;
            std::optional<std::size_t> critical;
            std::size_t critical_line = 0;
        };

        NativeDocument read_document(std::istream& in) {
            NativeDocument doc;
            enum class State { Header, Arcs, Resource } state = State::Header;
            std::string line;
            std::size_t line_no = 0;

            auto node_arg = [&](const Token& t) -> NodeId {
                const auto v = to_index(t, line_no);
                if (v > std::numeric_limits<NodeId>::max())
                    throw ParseError("node id too large", line_no, t.column);
                return static_cast<NodeId>(v);
            };
            auto once = [&](bool already, const std::string& what) {
                if (already)
                    throw InconsistentData("duplicate " + what + " at line " + std::to_string(line_no));
            };

            while (std::getline(in, line)) {
                ++line_no;
                const auto tokens = tokenize(line);
                if (tokens.empty())
                    continue;
                const std::string keyword = upper(tokens[0].text);

                if (keyword == "NAME") {
                    auto rest = std::string_view(line).substr(tokens[0].column - 1 + tokens[0].text.size());
                    if (auto hash = rest.find('#'); hash != std::string_view::npos)
                        rest = rest.substr(0, hash);
                    const auto b = rest.find_first_not_of(" \t\r");
                    const auto e = rest.find_last_not_of(" \t\r");
                    doc.name = b == std::string_view::npos ? "" : std::string(rest.substr(b, e - b + 1));
                } else if (keyword == "NODES") {
                    expect_arity(tokens, 2, 2, line_no);
                    once(doc.nodes.has_value(), "NODES");
                    doc.nodes = to_index(tokens[1], line_no);
                } else if (keyword == "SOURCE") {
                    expect_arity(tokens, 2, 2, line_no);
                    once(doc.source.has_value(), "SOURCE");
                    doc.source = node_arg(tokens[1]);
                } else if (keyword == "DEST") {
                    expect_arity(tokens, 2, 2, line_no);
                    once(doc.destination.has_value(), "DEST");
                    doc.destination = node_arg(tokens[1]);
                } else if (keyword == "COORD") {
                    expect_arity(tokens, 4, 4, line_no);
                    const NodeId i = node_arg(tokens[1]);
                    once(doc.coordinates.contains(i), "COORD for node " + std::to_string(i));
                    doc.coordinates[i] = {to_real(tokens[2], line_no), to_real(tokens[3], line_no)};
                } else if (keyword == "ARCS") {
                    expect_arity(tokens, 1, 1, line_no);
                    once(doc.seen_arcs, "ARCS section");
                    doc.seen_arcs = true;
                    state         = State::Arcs;
                } else if (keyword == "RESOURCE") {
                    expect_arity(tokens, 4, 4, line_no);
                    const auto kind = parse_resource_kind(tokens[1].text);
                    if (!kind || *kind == ResourceKind::Custom)
                        throw ParseError("unknown resource kind '" + std::string(tokens[1].text) + "'", line_no,
                            tokens[1].column);
                    const double lb = to_real(tokens[2], line_no);
                    const double ub = to_real(tokens[3], line_no);
                    if (lb < 0.0)
                        throw ParseError("negative resource bound", line_no, tokens[2].column);
                    if (ub < 0.0)
                        throw ParseError("negative resource bound", line_no, tokens[3].column);
                    if (lb > ub)
                        throw ParseError("lower bound exceeds upper bound", line_no, tokens[2].column);
                    if (*kind == ResourceKind::NodeLimit || *kind == ResourceKind::TimeWindows) {
                        for (const auto& r : doc.resources)
                            once(r.kind == *kind, std::string(to_string(*kind)) + " resource section");
                    }
                    doc.resources.push_back({*kind, lb, ub, line_no, {}, {}, {}});
                    state = State::Resource;
                } else if (keyword == "NODE" || keyword == "ARC" || keyword == "TW") {
                    if (state != State::Resource)
                        throw ParseError(keyword + " line outside a RESOURCE section", line_no, tokens[0].column);
                    auto& section = doc.resources.back();
                    if (keyword == "NODE") {
                        expect_arity(tokens, 3, 3, line_no);
                        const NodeId i = node_arg(tokens[1]);
                        once(section.nodes.contains(i), "NODE entry for node " + std::to_string(i));
                        section.nodes[i] = to_real(tokens[2], line_no);
                    } else if (keyword == "ARC") {
                        expect_arity(tokens, 4, 4, line_no);
                        const std::pair key{node_arg(tokens[1]), node_arg(tokens[2])};
                        once(section.arcs.contains(key), "ARC entry");
                        section.arcs[key] = to_real(tokens[3], line_no);
                    } else {
                        expect_arity(tokens, 5, 5, line_no);
                        if (section.kind != ResourceKind::TimeWindows)
                            throw ParseError("TW line in a non-TIMEWINDOWS section", line_no, tokens[0].column);
                        const NodeId i = node_arg(tokens[1]);
                        once(section.windows.contains(i), "TW entry for node " + std::to_string(i));
                        const double open  = to_real(tokens[2], line_no);
                        const double close = to_real(tokens[3], line_no);
                        if (open > close)
                            throw ParseError("window opens after it closes", line_no, tokens[2].column);
                        section.windows[i] = {open, close};
                        once(section.nodes.contains(i), "service entry for node " + std::to_string(i));
                        section.nodes[i] = to_real(tokens[4], line_no);
                    }
                } else if (keyword == "CRITICAL") {
                    expect_arity(tokens, 2, 2, line_no);
                    once(doc.critical.has_value(), "CRITICAL");
                    doc.critical      = to_index(tokens[1], line_no);
                    doc.critical_line = line_no;
                } else if (keyword == "END") {
                    break;
                } else if (state == State::Arcs) {
                    expect_arity(tokens, 3, 4, line_no);
                    RawArc arc{node_arg(tokens[0]), node_arg(tokens[1]), to_real(tokens[2], line_no), std::nullopt,
                        line_no};
                    if (tokens.size() == 4)
                        arc.time = to_real(tokens[3], line_no);
                    doc.arcs.push_back(arc);
                } else {
                    throw ParseError("unknown keyword '" + std::string(tokens[0].text) + "'", line_no, tokens[0].column);
                }
            }
            if (!doc.nodes)
                throw ParseError("missing NODES header", line_no);
            if (!doc.source)
                throw ParseError("missing SOURCE header", line_no);
            if (!doc.destination)
                throw ParseError("missing DEST header", line_no);
            return doc;
        }

        Problem build_problem(NativeDocument doc, const std::string& fallback_name, GraphOptions options,
            std::optional<std::size_t> default_critical = std::nullopt) {
            const std::size_t n = *doc.nodes;
            std::vector<std::string> warnings;
            for (const auto& arc : doc.arcs)
                if (arc.tail >= n || arc.head >= n)
                    throw InconsistentData("arc at line " + std::to_string(arc.line) + " references an unknown node");
            auto arcs = collapse_arcs(std::move(doc.arcs), warnings);

            std::vector<Point> coordinates;
            if (!doc.coordinates.empty()) {
                if (doc.coordinates.size() != n || doc.coordinates.rbegin()->first >= n)
                    throw InconsistentData("COORD lines must cover every node exactly once");
                for (const auto& [i, p] : doc.coordinates)
                    coordinates.push_back(p);
            }

            std::vector<Arc> topology;
            topology.reserve(arcs.size());
            for (const auto& a : arcs)
                topology.push_back({a.tail, a.head});
            Graph graph = Graph::build(n, topology, *doc.source, *doc.destination, options, std::move(coordinates));

            // collapse_arcs returns arcs in (tail, head) order, which is also the ArcId order.
            std::vector<double> costs(arcs.size());
            for (std::size_t a = 0; a < arcs.size(); ++a)
                costs[a] = arcs[a].cost;

            std::vector<ResourcePtr> resources;
            for (auto& section : doc.resources) {
                ResourceData data;
                data.lower_bound = section.lower;
                data.upper_bound = section.upper;
                data.node_consumption.assign(n, 0.0);
                data.arc_consumption.assign(graph.arc_count(), 0.0);
                for (const auto& [i, c] : section.nodes) {
                    if (i >= n)
                        throw InconsistentData("consumption for unknown node " + std::to_string(i));
                    data.node_consumption[i] = c;
                }
                const bool timed = section.kind == ResourceKind::Time || section.kind == ResourceKind::TimeWindows;
                if (timed)
                    for (std::size_t a = 0; a < arcs.size(); ++a)
                        data.arc_consumption[a] = arcs[a].time.value_or(0.0);
                for (const auto& [key, c] : section.arcs) {
                    if (key.first >= n || key.second >= n)
                        throw InconsistentData("consumption for unknown node in ARC entry");
                    const auto id = graph.arc_id(key.first, key.second);
                    if (!id)
                        throw InconsistentData("consumption for missing arc (" + std::to_string(key.first) + ", "
                                               + std::to_string(key.second) + ")");
                    data.arc_consumption[*id] = c;
                }
                if (section.kind == ResourceKind::TimeWindows) {
                    data.windows.assign(n, TimeWindow{0.0, section.upper});
                    for (const auto& [i, w] : section.windows) {
                        if (i >= n)
                            throw InconsistentData("time window for unknown node " + std::to_string(i));
                        data.windows[i] = w;
                    }
                }
                resources.push_back(make_resource(section.kind, std::move(data), graph));
            }

            std::size_t critical = doc.critical.value_or(default_critical.value_or(0));
            if (doc.critical && critical >= resources.size())
                throw InconsistentData("CRITICAL index at line " + std::to_string(doc.critical_line) + " out of range");

            Problem problem(doc.name.empty() ? fallback_name : doc.name, std::move(graph), std::move(costs),
                std::move(resources), critical);
            for (auto& w : warnings)
                problem.add_warning(std::move(w));
            return problem;
        }

        std::ifstream open_input(const std::filesystem::path& path) {
            std::ifstream in(path);
            if (!in)
                throw Error("cannot open '" + path.string() + "'");
            return in;
        }

    } // namespace

    Problem parse_native(std::istream& in, const std::string& name, GraphOptions options) {
        return build_problem(read_document(in), name, options);
    }

    Problem load_native(const std::filesystem::path& path, GraphOptions options) {
        auto in = open_input(path);
        return parse_native(in, path.stem().string(), options);
    }

    void write_native(const Problem& problem, std::ostream& out) {
        const Graph& g = problem.graph();
        out << "# pathwise native instance\n";
        if (!problem.name().empty())
            out << "NAME " << problem.name() << '\n';
        out << "NODES " << g.node_count() << '\n';
        out << "SOURCE " << g.source() << '\n';
        out << "DEST " << g.destination() << '\n';
        const auto coords = g.coordinates();
        for (std::size_t i = 0; i < coords.size(); ++i)
            out << "COORD " << i << ' ' << format_real(coords[i].x) << ' ' << format_real(coords[i].y) << '\n';
        out << "ARCS\n";
        for (ArcId a = 0; a < g.arc_count(); ++a)
            out << g.arc(a).tail << ' ' << g.arc(a).head << ' ' << format_real(problem.cost(a)) << '\n';
        for (const auto& resource : problem.resources()) {
            if (resource->kind() == ResourceKind::Custom)
                throw InconsistentData("custom resources have no native representation");
            const auto& data = resource->data();
            out << "RESOURCE " << to_string(resource->kind()) << ' ' << format_real(data.lower_bound) << ' '
                << format_real(data.upper_bound) << '\n';
            if (resource->kind() == ResourceKind::TimeWindows) {
                for (NodeId i = 0; i < g.node_count(); ++i) {
                    const auto& w = data.windows[i];
                    out << "TW " << i << ' ' << format_real(w.open) << ' ' << format_real(w.close) << ' '
                        << format_real(data.node(i)) << '\n';
                }
            } else {
                for (NodeId i = 0; i < g.node_count(); ++i)
                    if (data.node(i) != 0.0)
                        out << "NODE " << i << ' ' << format_real(data.node(i)) << '\n';
            }
            for (ArcId a = 0; a < g.arc_count(); ++a)
                if (data.arc(a) != 0.0)
                    out << "ARC " << g.arc(a).tail << ' ' << g.arc(a).head << ' ' << format_real(data.arc(a)) << '\n';
        }
        out << "CRITICAL " << problem.critical_index() << '\n';
    }

    void save_native(const Problem& problem, const std::filesystem::path& path) {
        std::ofstream out(path);
        if (!out)
            throw Error("cannot write '" + path.string() + "'");
        write_native(problem, out);
    }

    Problem parse_pc(std::istream& in, const std::string& name, GraphOptions options) {
        auto doc = read_document(in);
        std::size_t capacities = 0;
        std::size_t limits     = 0;
        std::size_t windows    = 0;
        std::optional<std::size_t> first_capacity;
        for (std::size_t k = 0; k < doc.resources.size(); ++k) {
            switch (doc.resources[k].kind) {
            case ResourceKind::Capacity:
                if (!first_capacity)
                    first_capacity = k;
                ++capacities;
                break;
            case ResourceKind::NodeLimit: ++limits; break;
            case ResourceKind::TimeWindows: ++windows; break;
            default: throw InconsistentData("prize-collecting instances only use CAPACITY, NODELIMIT and TIMEWINDOWS");
            }
        }
        if (capacities != 2)
            throw InconsistentData("prize-collecting instance needs exactly two CAPACITY sections");
        if (limits != 1)
            throw InconsistentData("prize-collecting instance needs a NODELIMIT section");
        if (windows != 1)
            throw InconsistentData("prize-collecting instance needs a TIMEWINDOWS section");

        Problem problem = build_problem(std::move(doc), name, options, first_capacity);
        const auto& costs = problem.arc_costs();
        const auto non_negative = std::count_if(costs.begin(), costs.end(), [](double c) { return c >= 0.0; });
        if (non_negative > 0)
            problem.add_warning("NonNegativeCost: " + std::to_string(non_negative) + " arc(s) with cost >= 0");
        return problem;
    }

    Problem load_pc(const std::filesystem::path& path, GraphOptions options) {
        auto in = open_input(path);
        return parse_pc(in, path.stem().string(), options);
    }

    // DIMACS

    namespace {

        struct DimacsArcs {
            std::size_t n = 0;
            std::vector<RawArc> arcs;
        };

        DimacsArcs read_gr(std::istream& in) {
            DimacsArcs out;
            std::optional<std::size_t> declared_arcs;
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                const auto tokens = tokenize(line);
                if (tokens.empty() || tokens[0].text == "c")
                    continue;
                if (tokens[0].text == "p") {
                    if (declared_arcs)
                        throw ParseError("duplicate problem line", line_no, tokens[0].column);
                    if (tokens.size() != 4 || tokens[1].text != "sp")
                        throw ParseError("expected 'p sp <n> <m>'", line_no, tokens[0].column);
                    out.n         = to_index(tokens[2], line_no);
                    declared_arcs = to_index(tokens[3], line_no);
                    out.arcs.reserve(*declared_arcs);
                } else if (tokens[0].text == "a") {
                    if (!declared_arcs)
                        throw ParseError("arc line before problem line", line_no, tokens[0].column);
                    if (tokens.size() != 4)
                        throw ParseError("expected 'a <u> <v> <w>'", line_no, tokens[0].column);
                    const auto u = to_index(tokens[1], line_no);
                    const auto v = to_index(tokens[2], line_no);
                    if (u < 1 || u > out.n)
                        throw ParseError("node id out of range", line_no, tokens[1].column);
                    if (v < 1 || v > out.n)
                        throw ParseError("node id out of range", line_no, tokens[2].column);
                    out.arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1),
                        to_real(tokens[3], line_no), std::nullopt, line_no});
                } else {
                    throw ParseError("unknown line type '" + std::string(tokens[0].text) + "'", line_no,
                        tokens[0].column);
                }
            }
            if (!declared_arcs)
                throw ParseError("missing problem line", line_no);
            if (out.arcs.size() != *declared_arcs)
                throw ParseError("header declares " + std::to_string(*declared_arcs) + " arcs, file has "
                                     + std::to_string(out.arcs.size()),
                    line_no);
            return out;
        }

        std::vector<Point> read_co(std::istream& in, std::size_t n) {
            std::vector<Point> points(n);
            std::vector<bool> seen(n, false);
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                const auto tokens = tokenize(line);
                if (tokens.empty() || tokens[0].text == "c" || tokens[0].text == "p")
                    continue;
                if (tokens[0].text != "v" || tokens.size() != 4)
                    throw ParseError("expected 'v <id> <x> <y>'", line_no, tokens[0].column);
                const auto id = to_index(tokens[1], line_no);
                if (id < 1 || id > n)
                    throw ParseError("node id out of range", line_no, tokens[1].column);
                points[id - 1] = {to_real(tokens[2], line_no), to_real(tokens[3], line_no)};
                seen[id - 1]   = true;
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
                throw InconsistentData("coordinate file does not cover every node");
            return points;
        }

    } // namespace

    Problem parse_dimacs(std::istream& gr, const DimacsOptions& options, std::istream* time_gr,
        std::istream* coordinates, const std::string& name) {
        auto distances = read_gr(gr);
        if (options.source >= distances.n || options.destination >= distances.n)
            throw UnknownNode("source or destination outside the DIMACS node range");
        if (!(options.time_divisor > 0.0))
            throw InconsistentData("time divisor must be positive");

        if (time_gr) {
            auto times = read_gr(*time_gr);
            if (times.n != distances.n || times.arcs.size() != distances.arcs.size())
                throw InconsistentData("time file does not match the distance file header");
            for (std::size_t k = 0; k < times.arcs.size(); ++k) {
                const auto& d = distances.arcs[k];
                const auto& t = times.arcs[k];
                if (d.tail != t.tail || d.head != t.head)
                    throw InconsistentData("time file arc at line " + std::to_string(t.line) + " does not match");
                distances.arcs[k].time = t.cost;
            }
        } else {
            for (auto& a : distances.arcs)
                a.time = a.cost / options.time_divisor;
        }

        std::vector<std::string> warnings;
        auto arcs = collapse_arcs(std::move(distances.arcs), warnings);
        std::vector<Arc> topology;
        topology.reserve(arcs.size());
        for (const auto& a : arcs)
            topology.push_back({a.tail, a.head});

        std::vector<Point> points;
        if (coordinates)
            points = read_co(*coordinates, distances.n);
        Graph graph = Graph::build(
            distances.n, topology, options.source, options.destination, options.graph, std::move(points));

        std::vector<double> costs(arcs.size());
        ResourceData time;
        time.upper_bound = options.resource_bound;
        time.node_consumption.assign(distances.n, 0.0);
        time.arc_consumption.resize(arcs.size());
        for (std::size_t a = 0; a < arcs.size(); ++a) {
            costs[a]                = arcs[a].cost;
            time.arc_consumption[a] = *arcs[a].time;
        }
        std::vector<ResourcePtr> resources{make_resource(ResourceKind::Time, std::move(time), graph)};
        Problem problem(name, std::move(graph), std::move(costs), std::move(resources), 0);
        for (auto& w : warnings)
            problem.add_warning(std::move(w));
        return problem;
    }

    Problem load_dimacs(const std::filesystem::path& gr_path, const DimacsOptions& options) {
        auto gr = open_input(gr_path);
        std::optional<std::ifstream> time_in;
        std::optional<std::ifstream> co_in;
        if (options.time_gr)
            time_in = open_input(*options.time_gr);
        if (options.coordinates)
            co_in = open_input(*options.coordinates);
        return parse_dimacs(gr, options, time_in ? &*time_in : nullptr, co_in ? &*co_in : nullptr,
            gr_path.stem().string());
    }

} // namespace pathwise
