#include "balfilt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "balfilt/io.hpp"
#include "balfilt/random_states.hpp"

namespace balfilt {

namespace {

struct ExpectFailed {};  // requested boolean verdict was false -> exit 1

std::string slurp(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return slurp(in);
    std::ifstream file(path);
    if (!file) throw input_error("cannot open input file '" + path + "'");
    return slurp(file);
}

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << "\n"; }

Json verify_payload(const PolarisedState& state, const BalancedResult& b) {
    Json out = balanced_to_json(b);
    out["certified"] = verify_balanced(state, Filtration{b.lambda_ambient});
    return out;
}

std::uint64_t selftest_seed() {
    if (const char* env = std::getenv("BALFILT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw input_error("BALFILT_SEED must be an unsigned integer");
        }
    }
    return 20250810ull;
}

void write_flow_csv(const std::string& path, const std::vector<flow::FlowResult>& runs) {
    std::ofstream csv(path);
    if (!csv) throw input_error("cannot open csv file '" + path + "'");
    csv << "start,tau";
    const std::size_t dim =
        runs.empty() || runs[0].trajectory.empty() ? 0 : runs[0].trajectory[0].size();
    for (std::size_t i = 0; i < dim; ++i) csv << ",h" << i;
    for (std::size_t i = 0; i < dim; ++i) csv << ",z" << i;
    csv << "\n";
    csv.precision(17);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& run = runs[r];
        for (std::size_t k = 0; k < run.tau.size(); ++k) {
            csv << r << "," << run.tau[k];
            for (double x : run.trajectory[k]) csv << "," << x;
            if (k < run.residual.size() && run.residual[k].size() == dim)
                for (double x : run.residual[k]) csv << "," << x;
            else
                for (std::size_t i = 0; i < dim; ++i) csv << ",";
            csv << "\n";
        }
    }
}

int run_selftest(std::size_t count, std::ostream& out) {
    const std::uint64_t seed = selftest_seed();
    RandomStates gen(seed);
    std::size_t oracle_checked = 0;
    for (std::size_t k = 0; k < count; ++k) {
        PolarisedState s = gen.next();
        BalancedResult b = balanced_filtration(s);
        if (!verify_balanced(s, Filtration{b.lambda_ambient}))
            throw certification_error("selftest: balanced filtration failed its certificate");
        if (b.slice.sliced.characters().size() <= 10) {
            BalancedResult o = oracle_balanced(s);
            if (o.lambda_intrinsic != b.lambda_intrinsic)
                throw certification_error("selftest: oracle disagrees with the solver");
            ++oracle_checked;
        }
        if (iterate_projected(s) != iterated_balanced(s))
            throw certification_error("selftest: projected route disagrees with the chain");
    }
    Json result;
    result["seed"] = seed;
    result["states"] = count;
    result["oracle_checked"] = oracle_checked;
    result["ok"] = true;
    emit(out, make_report("selftest", Json{{"count", count}}, input_digest(""), result));
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"exact balanced filtrations of polarised states"};
    app.set_help_all_flag("--help-all");

    std::string input_path;
    app.add_option("--input", input_path, "input file (default: stdin)")->capture_default_str();

    auto* check = app.add_subcommand("check", "semistability and polystability verdicts");
    std::string expect;
    check->add_option("--expect", expect, "exit 1 unless this verdict holds")
        ->check(CLI::IsMember({"semistable", "polystable"}));

    auto* balanced = app.add_subcommand("balanced", "balanced filtration with KKT certificate");

    auto* iterate = app.add_subcommand("iterate", "iterated balanced filtration");
    std::string algo = "chain";
    iterate->add_option("--algo", algo, "chain | projected | both")
        ->check(CLI::IsMember({"chain", "projected", "both"}));

    auto* kempf = app.add_subcommand("kempf", "complementedness of a filtration");
    std::string lambda_text;
    kempf->add_option("--lambda", lambda_text, "filtration as a JSON array, e.g. [1,0]")
        ->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force balanced filtration");
    std::size_t max_subset = 12;
    oracle->add_option("--max-characters", max_subset, "subset enumeration budget");

    auto* flow_cmd = app.add_subcommand("flow", "gradient-flow residual harness");
    double tau_min = 2.0, tau_max = 1000.0, rtol = 1e-9, atol = 1e-11;
    std::size_t starts = 5;
    std::uint64_t flow_seed = 12345;
    std::string prediction_path, csv_path;
    flow::FlowVerdict settings;
    flow_cmd->add_option("--tau-min", tau_min, "start of the log-time window");
    flow_cmd->add_option("--tau-max", tau_max, "end of the log-time window");
    flow_cmd->add_option("--starts", starts, "number of random initial points");
    flow_cmd->add_option("--seed", flow_seed, "seed for the initial points");
    flow_cmd->add_option("--rtol", rtol, "relative tolerance");
    flow_cmd->add_option("--atol", atol, "absolute tolerance");
    flow_cmd->add_option("--box", settings.box, "allowed tail residual box");
    flow_cmd->add_option("--drift-tol", settings.drift_tol, "allowed drift per log-decade");
    flow_cmd->add_option("--tail-fraction", settings.tail_fraction, "tail window fraction");
    flow_cmd->add_option("--prediction", prediction_path,
                         "sequential filtration file (default: computed)");
    flow_cmd->add_option("--csv", csv_path, "write the sampled trajectories as CSV");

    auto* selftest = app.add_subcommand("selftest", "random-suite cross checks");
    std::size_t selftest_count = 50;
    selftest->add_option("--count", selftest_count, "number of random states");

    app.require_subcommand(1);
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (selftest->parsed()) return run_selftest(selftest_count, out);

        const std::string text = read_input(input_path, in);
        const std::string digest = input_digest(text);
        PolarisedState state = parse_state(text);

        if (check->parsed()) {
            bool ss = is_semistable(state);
            bool ps = ss && is_polystable(state);
            Json result{{"semistable", ss}, {"polystable", ps}};
            Json options = Json::object();
            if (!expect.empty()) options["expect"] = expect;
            emit(out, make_report("check", options, digest, result));
            if (expect == "semistable" && !ss) return 1;
            if (expect == "polystable" && !ps) return 1;
            return 0;
        }

        if (balanced->parsed()) {
            BalancedResult b = balanced_filtration(state);
            if (!verify_balanced(state, Filtration{b.lambda_ambient}))
                throw certification_error("balanced: result failed its certificate");
            emit(out, make_report("balanced", Json::object(), digest, verify_payload(state, b)));
            return 0;
        }

        if (iterate->parsed()) {
            Json result;
            result["algorithm"] = algo;
            if (algo == "chain" || algo == "both") {
                ChainTrace trace = balancing_chain(state);
                result["sequence"] = sequence_to_json(trace.sequence);
                result["trace"] = chain_to_json(trace);
            }
            if (algo == "projected" || algo == "both") {
                SequentialFiltration projected = iterate_projected(state);
                result["projected_sequence"] = sequence_to_json(projected);
                if (algo == "both") {
                    SequentialFiltration chain_seq =
                        sequence_from_json(result["sequence"], state.rank());
                    if (!(projected == chain_seq))
                        throw certification_error("iterate: the two algorithms disagree");
                    result["equal"] = true;
                } else {
                    result["sequence"] = result["projected_sequence"];
                }
            }
            emit(out, make_report("iterate", Json{{"algo", algo}}, digest, result));
            return 0;
        }

        if (kempf->parsed()) {
            Json lambda_doc;
            try {
                lambda_doc = Json::parse(lambda_text);
            } catch (const nlohmann::json::parse_error& e) {
                throw input_error(std::string("--lambda: invalid JSON: ") + e.what());
            }
            QVec lambda = vector_from_json(lambda_doc, "--lambda");
            if (lambda.size() != state.rank()) throw input_error("--lambda: length differs from rank");
            if (!is_semistable(state)) throw input_error("kempf: state is not semistable");
            ExtendedRational c = complementedness(state, Filtration{lambda});
            Json result;
            result["lambda"] = vector_to_json(lambda);
            result["complementedness"] = c.infinite ? Json("inf") : rational_to_json(c.value);
            emit(out, make_report("kempf", Json{{"lambda", lambda_text}}, digest, result));
            return 0;
        }

        if (oracle->parsed()) {
            BalancedResult b = oracle_balanced(state, max_subset);
            emit(out, make_report("oracle", Json{{"max_characters", max_subset}}, digest,
                                  verify_payload(state, b)));
            return 0;
        }

        if (flow_cmd->parsed()) {
            SequentialFiltration prediction_seq;
            bool prediction_given = !prediction_path.empty();
            if (prediction_given) {
                std::ifstream pf(prediction_path);
                if (!pf) throw input_error("cannot open prediction file '" + prediction_path + "'");
                Json pdoc;
                try {
                    pdoc = Json::parse(slurp(pf));
                } catch (const nlohmann::json::parse_error& e) {
                    throw input_error(std::string("prediction: invalid JSON: ") + e.what());
                }
                prediction_seq = sequence_from_json(pdoc, state.rank());
            } else {
                prediction_seq = iterated_balanced(state);
            }
            auto prediction = flow::prediction_from(prediction_seq);

            std::mt19937_64 rng(flow_seed);
            std::vector<std::vector<double>> start_points;
            for (std::size_t k = 0; k < starts; ++k) {
                std::vector<double> x(state.rank());
                for (double& v : x)
                    v = 3.0 * (2.0 * (double(rng() >> 11) * 0x1p-53) - 1.0);
                start_points.push_back(std::move(x));
            }

            auto runs = flow::run_batch(state, start_points, prediction, tau_min, tau_max, rtol,
                                        atol, settings);
            if (!csv_path.empty()) write_flow_csv(csv_path, runs);

            Json result;
            result["prediction"] = sequence_to_json(prediction_seq);
            result["prediction_source"] = prediction_given ? "file" : "computed";
            Json runs_json = Json::array();
            bool all_bounded = true;
            for (std::size_t k = 0; k < runs.size(); ++k) {
                Json rj = flow_result_to_json(runs[k]);
                Json sp = Json::array();
                for (double v : start_points[k]) sp.push_back(v);
                rj["start"] = std::move(sp);
                all_bounded = all_bounded && runs[k].verdict.bounded;
                runs_json.push_back(std::move(rj));
            }
            result["runs"] = std::move(runs_json);
            result["bounded"] = all_bounded;
            Json options{{"tau_min", tau_min}, {"tau_max", tau_max}, {"starts", starts},
                         {"seed", flow_seed}, {"box", settings.box},
                         {"drift_tol", settings.drift_tol}};
            emit(out, make_report("flow", options, digest, result));
            return 0;
        }

        err << "error: no subcommand\n";
        return 2;
    } catch (const ExpectFailed&) {
        return 1;
    } catch (const certification_error& e) {
        err << "internal fault: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const flow::flow_error& e) {
        err << "error: " << e.what() << " (tau reached " << e.tau_reached << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal fault: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace balfilt
