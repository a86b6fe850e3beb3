#include "cli.hpp"

#include "pathwise/config.hpp"
#include "pathwise/errors.hpp"
#include "pathwise/instgen.hpp"
#include "pathwise/io.hpp"
#include "pathwise/oracle.hpp"
#include "pathwise/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pathwise::cli {

    namespace {

        using json = nlohmann::ordered_json;

        std::string number(double v) {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof(buf), v);
            return std::string(buf, res.ptr);
        }

        struct InstanceArgs {
            std::string path;
            std::string format = "native";
            // DIMACS only; node ids as written in the file (1-based).
            std::size_t source = 1;
            std::size_t dest   = 2;
            double bound       = kInfinity;
            double time_divisor = 1.0;
            std::string time_gr;
            std::string coords;
        };

        void add_instance_options(CLI::App* cmd, InstanceArgs& a) {
            cmd->add_option("instance", a.path, "Instance file")->required();
            cmd->add_option("--format", a.format, "Instance format")
                ->check(CLI::IsMember({"native", "dimacs", "pc"}))
                ->capture_default_str();
            cmd->add_option("--source", a.source, "DIMACS source node (1-based)")->capture_default_str();
            cmd->add_option("--dest", a.dest, "DIMACS destination node (1-based)")->capture_default_str();
            cmd->add_option("--bound", a.bound, "DIMACS time budget");
            cmd->add_option("--time-divisor", a.time_divisor, "DIMACS time = distance / divisor without --time-gr")
                ->capture_default_str();
            cmd->add_option("--time-gr", a.time_gr, "DIMACS travel-time .gr file");
            cmd->add_option("--coords", a.coords, "DIMACS .co coordinate file");
        }

        /// Offset between internal ids and the ids printed for the user.
        std::size_t id_offset(const InstanceArgs& a) { return a.format == "dimacs" ? 1 : 0; }

        Problem load_instance(const InstanceArgs& a, GraphOptions graph) {
            if (a.format == "native")
                return load_native(a.path, graph);
            if (a.format == "pc")
                return load_pc(a.path, graph);
            if (a.source == 0 || a.dest == 0)
                throw UnknownNode("DIMACS node ids start at 1");
            DimacsOptions d;
            d.source         = static_cast<NodeId>(a.source - 1);
            d.destination    = static_cast<NodeId>(a.dest - 1);
            d.resource_bound = a.bound;
            d.time_divisor   = a.time_divisor;
            if (!a.time_gr.empty())
                d.time_gr = a.time_gr;
            if (!a.coords.empty())
                d.coordinates = a.coords;
            d.graph = graph;
            return load_dimacs(a.path, d);
        }

        std::string tour_text(const std::vector<NodeId>& tour, std::size_t offset) {
            std::string s;
            for (std::size_t k = 0; k < tour.size(); ++k) {
                if (k)
                    s += ' ';
                s += std::to_string(tour[k] + offset);
            }
            return s;
        }

        json tour_json(const std::vector<NodeId>& tour, std::size_t offset) {
            json arr = json::array();
            for (NodeId v : tour)
                arr.push_back(v + offset);
            return arr;
        }

        int exit_code(PathStatus status) {
            switch (status) {
            case PathStatus::Optimal:
            case PathStatus::Feasible:
                return kExitOk;
            case PathStatus::Infeasible:
                return kExitInfeasible;
            case PathStatus::TimeLimit:
                return kExitTimeLimit;
            }
            return kExitError;
        }

        /// Writes to --out when given, else to the caller's stream.
        void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
            if (out_path.empty()) {
                out << text;
                return;
            }
            std::ofstream file(out_path);
            if (!file)
                throw Error("cannot write " + out_path);
            file << text;
        }

        struct SolveArgs {
            InstanceArgs instance;
            std::string config_path;
            std::vector<std::string> sets;
            std::string relaxation;
            std::size_t ng_size = 0;
            std::string selection;
            std::string join;
            std::optional<double> hwp;
            std::optional<double> time_limit;
            int parallel = 0;
            bool json    = false;
            std::string out;
        };

        std::vector<ConfigEntry> overrides_of(const SolveArgs& a) {
            std::vector<ConfigEntry> entries;
            for (const auto& item : a.sets) {
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("--set expects key=value, got '" + item + "'");
                entries.push_back({item.substr(0, eq), item.substr(eq + 1), 0});
            }
            if (!a.relaxation.empty())
                entries.push_back({"relaxation", a.relaxation, 0});
            if (a.ng_size)
                entries.push_back({"ng_size", std::to_string(a.ng_size), 0});
            if (!a.selection.empty())
                entries.push_back({"selection", a.selection, 0});
            if (!a.join.empty())
                entries.push_back({"join", a.join, 0});
            if (a.hwp)
                entries.push_back({"hwp", number(*a.hwp), 0});
            if (a.time_limit)
                entries.push_back({"time_limit", number(*a.time_limit), 0});
            if (a.parallel > 0)
                entries.push_back({"parallel", "on", 0});
            else if (a.parallel < 0)
                entries.push_back({"parallel", "off", 0});
            return entries;
        }

        /// --config, then $PATHWISE_SET, then ./pathwise.set.
        std::vector<ConfigEntry> config_file_entries(const std::string& flag) {
            if (!flag.empty()) {
                std::ifstream in(flag);
                if (!in)
                    throw ConfigError("cannot open config file " + flag);
                return parse_config(in);
            }
            if (const char* env = std::getenv(kConfigEnvVar); env && *env)
                return read_config_file(env);
            return read_config_file(kDefaultConfigFile);
        }

        std::string solve_report(const Problem& problem, const SolveResult& result, const Telemetry& telemetry,
            const RunSettings& settings, bool as_json, std::size_t offset) {
            const Path& path = result.path;
            const auto& st   = result.stats;
            if (as_json) {
                json doc;
                doc["schema"]   = std::string(kTelemetrySchema);
                doc["instance"] = problem.name();
                json p;
                p["status"]       = std::string(to_string(path.status));
                p["cost"]         = path.empty() ? json(nullptr) : json(path.cost);
                p["tour"]         = tour_json(path.tour, offset);
                p["consumptions"] = path.consumptions;
                p["elementary"]   = path.elementary;
                doc["path"]       = p;
                json s;
                s["labels_fw"]             = st.labels_forward;
                s["labels_bw"]             = st.labels_backward;
                s["join_attempts"]         = st.join_attempts;
                s["join_successes"]        = st.join_successes;
                s["relaxation_iterations"] = st.relaxation_iterations;
                s["final_hwp"]             = st.final_hwp;
                doc["stats"]               = s;
                if (settings.telemetry)
                    doc["telemetry"] = json::parse(telemetry.report(ReportFormat::Json));
                return doc.dump(2) + "\n";
            }
            std::ostringstream os;
            os << "instance " << problem.name() << "\n";
            os << "status " << to_string(path.status) << "\n";
            if (!path.empty()) {
                os << "cost " << number(path.cost) << "\n";
                os << "tour " << tour_text(path.tour, offset) << "\n";
                os << "consumptions";
                for (double c : path.consumptions)
                    os << ' ' << number(c);
                os << "\n";
                os << "elementary " << (path.elementary ? "yes" : "no") << "\n";
            }
            os << "iterations " << st.relaxation_iterations << "\n";
            os << "N_F " << st.labels_forward << "\n";
            os << "N_B " << st.labels_backward << "\n";
            os << "final_hwp " << number(st.final_hwp) << "\n";
            if (settings.telemetry)
                os << telemetry.report(settings.report_format);
            return os.str();
        }

        int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
            const auto file_entries = config_file_entries(a.config_path);
            const auto overrides    = overrides_of(a);

            // Storage is part of the configuration but the instance class is only known after loading.
            RunSettings probe;
            for (const auto& e : file_entries)
                apply_entry(probe, e);
            for (const auto& e : overrides)
                apply_entry(probe, e);
            const bool storage_forced = [&] {
                for (const auto* list : {&file_entries, &overrides})
                    for (const auto& e : *list)
                        if (e.key == "storage")
                            return true;
                return false;
            }();

            GraphOptions graph_options;
            graph_options.mode = probe.storage;
            Problem problem    = load_instance(a.instance, graph_options);
            const auto cls     = classify_cyclicity(problem);
            const RunSettings settings = load_config(file_entries, overrides, cls);
            if (!storage_forced && settings.storage && *settings.storage != problem.graph().storage_mode()) {
                graph_options.mode = settings.storage;
                problem            = load_instance(a.instance, graph_options);
            }
            for (const auto& w : problem.warnings())
                err << "warning: " << w << "\n";

            Telemetry telemetry(settings.telemetry);
            const SolveResult result = solve(problem, settings.solver, &telemetry);
            emit(solve_report(problem, result, telemetry, settings, a.json || settings.report_format == ReportFormat::Json,
                     id_offset(a.instance)),
                a.out, out);

            if (settings.log_file) {
                std::ofstream log(*settings.log_file, std::ios::app);
                if (!log)
                    throw Error("cannot write log file " + *settings.log_file);
                log << "instance " << problem.name() << " status " << to_string(result.path.status) << " seconds "
                    << number(result.stats.seconds_total) << "\n";
                log << telemetry.report(ReportFormat::Text, true);
            }
            return exit_code(result.path.status);
        }

        int run_oracle(const InstanceArgs& a, std::size_t cap, bool as_json, const std::string& out_path,
            std::ostream& out) {
            const Problem problem = load_instance(a, {});
            const OracleResult r  = enumerate(problem, cap);
            std::ostringstream os;
            if (as_json) {
                json doc;
                doc["instance"]         = problem.name();
                doc["status"]           = r.optimal_cost ? "Optimal" : "Infeasible";
                doc["cost"]             = r.optimal_cost ? json(*r.optimal_cost) : json(nullptr);
                doc["tour"]             = r.optimal_tour ? tour_json(*r.optimal_tour, id_offset(a)) : json::array();
                doc["paths_enumerated"] = r.paths_enumerated;
                os << doc.dump(2) << "\n";
            } else {
                os << "status " << (r.optimal_cost ? "Optimal" : "Infeasible") << "\n";
                if (r.optimal_cost) {
                    os << "cost " << number(*r.optimal_cost) << "\n";
                    os << "tour " << tour_text(*r.optimal_tour, id_offset(a)) << "\n";
                }
                os << "paths_enumerated " << r.paths_enumerated << "\n";
            }
            emit(os.str(), out_path, out);
            return r.optimal_cost ? kExitOk : kExitInfeasible;
        }

        int run_validate(const InstanceArgs& a, std::ostream& out, std::ostream& err) {
            const Problem problem = load_instance(a, {});
            problem.validate();
            for (const auto& w : problem.warnings())
                err << "warning: " << w << "\n";
            out << "valid " << problem.name() << " nodes " << problem.node_count() << " arcs "
                << problem.graph().arc_count() << " resources " << problem.resource_count() << " "
                << (classify_cyclicity(problem) == Cyclicity::Cyclic ? "cyclic" : "acyclic") << "\n";
            return kExitOk;
        }

    } // namespace

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        CLI::App app{"Resource-constrained elementary shortest paths", "pathwise"};
        app.require_subcommand(1);

        SolveArgs solve_args;
        auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
        add_instance_options(solve_cmd, solve_args.instance);
        solve_cmd->add_option("--config", solve_args.config_path, "Parameters file (default $PATHWISE_SET or pathwise.set)");
        solve_cmd->add_option("--set", solve_args.sets, "Override a parameter, key=value");
        solve_cmd->add_option("--relaxation", solve_args.relaxation, "dssr, dssrc, ng, ngc, ng-dssrc or ngc-dssrc");
        solve_cmd->add_option("--ng-size", solve_args.ng_size, "NG neighbourhood size");
        solve_cmd->add_option("--selection", solve_args.selection, "Candidate selection")
            ->check(CLI::IsMember({"node", "rr"}));
        solve_cmd->add_option("--join", solve_args.join, "Join mode")->check(CLI::IsMember({"naive", "bounded"}));
        solve_cmd->add_option("--hwp", solve_args.hwp, "Initial half-way point as a fraction of the critical bound");
        solve_cmd->add_option("--time-limit", solve_args.time_limit, "Seconds");
        solve_cmd->add_flag("--parallel,!--no-parallel", solve_args.parallel, "Run the two directions concurrently");
        solve_cmd->add_flag("--json", solve_args.json, "Machine-readable output");
        solve_cmd->add_option("--out", solve_args.out, "Write the result here instead of standard output");

        InstanceArgs oracle_args;
        std::size_t node_cap = 12;
        bool oracle_json     = false;
        std::string oracle_out;
        auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate every elementary path of a small instance");
        add_instance_options(oracle_cmd, oracle_args);
        oracle_cmd->add_option("--node-cap", node_cap, "Refuse larger instances")->capture_default_str();
        oracle_cmd->add_flag("--json", oracle_json, "Machine-readable output");
        oracle_cmd->add_option("--out", oracle_out, "Write the result here instead of standard output");

        PcGenSpec spec;
        std::string gen_coords;
        std::string gen_out;
        auto* gen_cmd = app.add_subcommand("gen-pc", "Generate a prize-collecting instance");
        gen_cmd->add_option("--n", spec.n, "Nodes including the depot")->capture_default_str();
        gen_cmd->add_option("--C", spec.capacity, "Capacity bound")->capture_default_str();
        gen_cmd->add_option("--NL", spec.node_limit, "Node limit")->capture_default_str();
        gen_cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
        gen_cmd->add_option("--wide-fraction", spec.wide_tw_fraction, "Share of wide time windows")
            ->capture_default_str();
        gen_cmd->add_option("--coords", gen_coords, "Base nodes, one `x y [demand]` line each");
        gen_cmd->add_option("--out", gen_out, "Output instance file")->required();

        InstanceArgs validate_args;
        auto* validate_cmd = app.add_subcommand("validate", "Parse an instance and check its invariants");
        add_instance_options(validate_cmd, validate_args);

        std::vector<const char*> argv;
        for (const auto& a : args)
            argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitError;
        }

        try {
            if (*solve_cmd)
                return run_solve(solve_args, out, err);
            if (*oracle_cmd)
                return run_oracle(oracle_args, node_cap, oracle_json, oracle_out, out);
            if (*gen_cmd) {
                if (!gen_coords.empty())
                    spec.base_nodes = load_base_nodes(gen_coords);
                save_native(generate(spec), gen_out);
                return kExitOk;
            }
            return run_validate(validate_args, out, err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitError;
        }
    }

} // namespace pathwise::cli
