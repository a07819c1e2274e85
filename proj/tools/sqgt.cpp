// sqgt: semi-quantitative group testing toolkit.
//
// Subcommands: construct, simulate, decode, capacity, critical-rate, mc.
// Every command is deterministic given its flags (and --seed where
// randomness exists); re-runs produce byte-identical files.
//
// Exit codes: 0 success, 2 validation error, 3 infeasible-size guard.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqgt/capacity.hpp"
#include "sqgt/construct.hpp"
#include "sqgt/randomdesign.hpp"
#include "sqgt/serialize.hpp"

namespace {

using nlohmann::ordered_json;

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };
LogLevel g_log_level = LogLevel::warn;

void log_at(LogLevel level, const std::string& msg) {
    static const char* names[] = {"debug", "info", "warn", "error"};
    if (level >= g_log_level)
        std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

LogLevel parse_log_level(const std::string& name) {
    if (name == "debug") return LogLevel::debug;
    if (name == "info") return LogLevel::info;
    if (name == "warn") return LogLevel::warn;
    if (name == "error") return LogLevel::error;
    throw sqgt::ValidationError("unknown log level: " + name);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        if (cell.empty()) continue;
        try {
            if constexpr (std::is_same_v<T, double>)
                out.push_back(std::stod(cell));
            else
                out.push_back(static_cast<T>(std::stoll(cell)));
        } catch (const std::exception&) {
            throw sqgt::ValidationError(std::string("bad ") + what + " value: '" + cell + "'");
        }
    }
    return out;
}

void emit(const std::optional<std::string>& path, const std::string& contents) {
    if (path) {
        sqgt::write_file(*path, contents);
        log_at(LogLevel::info, "wrote " + *path);
    } else {
        std::cout << contents;
    }
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
    std::string mode;
    std::string base;
    int q = 0;
    long long eta = 1;
    int u = 1;
    int factor = 0;
    bool verify_base = false;
    std::optional<std::string> output;
};

sqgt::CodeMatrix load_base(const std::string& spec) {
    if (spec.rfind("id:", 0) == 0) {
        const int size = static_cast<int>(std::stoll(spec.substr(3)));
        return sqgt::CodeMatrix::identity(size, 1);
    }
    return sqgt::load_code(spec);
}

int run_construct(const ConstructArgs& args) {
    sqgt::CodeMatrix base = load_base(args.base);
    if (args.mode == "concat") {
        if (args.q < 2) throw sqgt::ValidationError("construct concat: needs --q >= 2");
        sqgt::DesignParams params{args.q, sqgt::minimal_levels(args.q, args.u, args.eta), args.u};
        sqgt::ConcatCode code = sqgt::concat_construct(base, params, args.eta, args.verify_base);
        emit(args.output, sqgt::to_json(code));
        std::cout << "n=" << code.code.rows() << " N=" << code.code.cols()
                  << " K=" << code.num_blocks << " block_size=" << code.block_size
                  << " max_entry=" << code.code.max_entry() << "\n";
        return 0;
    }
    if (args.mode == "scale") {
        if (args.factor < 1) throw sqgt::ValidationError("construct scale: needs --factor >= 1");
        const int target_q = args.q > 0 ? args.q : args.factor + 1;
        sqgt::CodeMatrix code = sqgt::scale_code(base, args.factor, target_q);
        emit(args.output, sqgt::to_json(code));
        std::cout << "n=" << code.rows() << " N=" << code.cols()
                  << " max_entry=" << code.max_entry() << "\n";
        return 0;
    }
    throw sqgt::ValidationError("construct: unknown --mode '" + args.mode + "'");
}

// ----------------------------------------------------------------- simulate

struct QuantizerArgs {
    long long eta = 0;
    int levels = 0;  // Q; 0 = minimal for the context
    std::string thresholds;

    // Builds the quantizer for a code with alphabet q, sized for at most
    // `bound` positives when no explicit level count is given.
    sqgt::Quantizer resolve(int q, int bound, long long fallback_eta) const {
        if (!thresholds.empty())
            return sqgt::Quantizer(parse_list<long long>(thresholds, "threshold"));
        long long step = eta > 0 ? eta : fallback_eta;
        if (step <= 0)
            throw sqgt::ValidationError("need --eta or --thresholds to define the quantizer");
        const int q_levels =
            levels > 0 ? levels : sqgt::minimal_levels(q, std::max(1, bound), step);
        return sqgt::Quantizer::equidistant(q_levels, step);
    }
};

struct SimulateArgs {
    std::string code_path;
    std::string positives;
    QuantizerArgs quantizer;
    std::optional<std::string> output;
};

int run_simulate(const SimulateArgs& args) {
    sqgt::LoadedCode loaded = sqgt::load_any_code(args.code_path);
    std::vector<int> indices = parse_list<int>(args.positives, "positive index");
    sqgt::PositiveSet set = sqgt::PositiveSet::checked(indices, loaded.code.cols());

    const long long fallback_eta = loaded.concat ? loaded.concat->step : 0;
    const int bound = loaded.concat ? loaded.concat->defect_bound : set.size();
    sqgt::Quantizer qz = args.quantizer.resolve(loaded.code.alphabet_size(),
                                                std::max(bound, set.size()), fallback_eta);

    sqgt::Syndrome result = sqgt::syndrome(loaded.code, set, qz);
    emit(args.output, sqgt::to_json(result));
    std::ostringstream os;
    for (int i = 0; i < result.size(); ++i) {
        if (i) os << ' ';
        os << result[i];
    }
    std::cout << "syndrome: " << os.str() << "\n";
    return 0;
}

// ------------------------------------------------------------------- decode

struct DecodeArgs {
    std::string code_path;
    std::string outcome_path;
    std::string mode = "naive";
    QuantizerArgs quantizer;
    int u = 0;
    std::optional<std::string> output;
};

int run_decode(const DecodeArgs& args) {
    sqgt::LoadedCode loaded = sqgt::load_any_code(args.code_path);
    sqgt::Syndrome observed = sqgt::syndrome_from_json(sqgt::read_file(args.outcome_path));

    sqgt::DecodeResult result;
    if (args.mode == "concat") {
        if (!loaded.concat)
            throw sqgt::ValidationError("decode concat: code file has no block structure");
        result = sqgt::concat_decode(observed, *loaded.concat);
    } else if (args.mode == "naive") {
        const int u = args.u > 0 ? args.u : (loaded.concat ? loaded.concat->defect_bound : 0);
        if (u < 1) throw sqgt::ValidationError("decode naive: needs --u >= 1");
        sqgt::Quantizer qz = args.quantizer.resolve(loaded.code.alphabet_size(), u,
                                                    loaded.concat ? loaded.concat->step : 0);
        sqgt::DesignParams params{loaded.code.alphabet_size(), qz.num_levels(), u};
        result = sqgt::naive_decode(loaded.code, observed, params, qz);
    } else {
        throw sqgt::ValidationError("decode: unknown --mode '" + args.mode + "'");
    }

    if (args.output) {
        ordered_json j;
        j["positives"] = result.positives.indices;
        j["consistent"] = result.consistent;
        emit(args.output, j.dump(2) + "\n");
    }
    std::ostringstream os;
    for (size_t i = 0; i < result.positives.indices.size(); ++i) {
        if (i) os << ' ';
        os << result.positives.indices[i];
    }
    std::cout << "positives: " << os.str() << "\n"
              << "consistent: " << (result.consistent ? "true" : "false") << "\n";
    return 0;
}

// ----------------------------------------------------------------- capacity

struct CapacityArgs {
    int m_min = 0;
    int m_max = 0;
    int q = 0;
    int levels = 0;
    double grid = 0.01;
    bool no_refine = false;
    bool json = false;
    long long restrict_eta = 0;
    std::string restrict_thresholds;
    bool eval_only = false;
    std::string pt;
    std::string thresholds;
    std::optional<std::string> output;
};

std::string capacity_csv_header(int q) {
    std::ostringstream os;
    os << "m,alpha_bits";
    for (int s = 0; s < q; ++s) os << ",pt_" << s;
    os << ",partition\n";
    return os.str();
}

std::string capacity_csv_row(const sqgt::CapacityPoint& point, long long max_sum) {
    std::ostringstream os;
    os << point.m << ',' << format_double(point.alpha_bits);
    for (double p : point.pt.probs) os << ',' << format_double(p);
    os << ",\"" << point.quantizer.partition_string(max_sum) << "\"\n";
    return os.str();
}

ordered_json capacity_json_entry(const sqgt::CapacityPoint& point, long long max_sum) {
    ordered_json j;
    j["m"] = point.m;
    j["alpha_bits"] = point.alpha_bits;
    j["pt"] = point.pt.probs;
    j["thresholds"] = point.quantizer.thresholds();
    j["partition"] = point.quantizer.partition_string(max_sum);
    j["mutual_information_bits"] = point.per_i;
    return j;
}

int run_capacity(const CapacityArgs& args) {
    if (args.q < 2) throw sqgt::ValidationError("capacity: needs --q >= 2");
    std::vector<sqgt::CapacityPoint> points;

    if (args.eval_only) {
        if (args.m_min != args.m_max || args.m_min < 1)
            throw sqgt::ValidationError("capacity --eval-only: needs a single --m");
        if (args.pt.empty() || args.thresholds.empty())
            throw sqgt::ValidationError("capacity --eval-only: needs --pt and --thresholds");
        sqgt::SourceDistribution pt =
            sqgt::SourceDistribution::checked(parse_list<double>(args.pt, "probability"));
        if (pt.alphabet_size() != args.q)
            throw sqgt::ValidationError("capacity: --pt length must equal --q");
        sqgt::Quantizer qz(parse_list<long long>(args.thresholds, "threshold"));
        points.push_back(sqgt::alpha(pt, args.m_min, qz));
    } else {
        if (args.m_min < 1 || args.m_max < args.m_min)
            throw sqgt::ValidationError("capacity: needs --m or a valid --m-min/--m-max range");
        if (args.levels < 2) throw sqgt::ValidationError("capacity: needs --Q >= 2");
        for (int m = args.m_min; m <= args.m_max; ++m) {
            sqgt::SearchOptions opts;
            opts.grid_step = args.grid;
            opts.refine = !args.no_refine;
            if (!args.restrict_thresholds.empty())
                opts.restrict_quantizer =
                    sqgt::Quantizer(parse_list<long long>(args.restrict_thresholds, "threshold"));
            else if (args.restrict_eta > 0)
                opts.restrict_quantizer =
                    sqgt::Quantizer::equidistant(args.levels, args.restrict_eta);
            log_at(LogLevel::info, "searching m=" + std::to_string(m));
            points.push_back(sqgt::capacity_search(m, args.q, args.levels, opts));
        }
    }

    std::string out;
    if (args.json) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : points)
            arr.push_back(capacity_json_entry(p, static_cast<long long>(p.m) * (args.q - 1)));
        out = arr.dump(2) + "\n";
    } else {
        out = capacity_csv_header(args.q);
        for (const auto& p : points)
            out += capacity_csv_row(p, static_cast<long long>(p.m) * (args.q - 1));
    }
    emit(args.output, out);
    if (args.output) {
        for (const auto& p : points)
            std::cout << "m=" << p.m << " alpha_bits=" << format_double(p.alpha_bits) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ critical-rate

struct CriticalRateArgs {
    int q = 0;
    long long eta = 1;
    int u = 1;
    long long n = 1;
    double eps = 0.05;
    std::optional<std::string> output;
};

int run_critical_rate(const CriticalRateArgs& args) {
    sqgt::CriticalRateReport report =
        sqgt::critical_rate(args.q, args.eta, args.u, args.n, args.eps);
    ordered_json j;
    j["q"] = report.q;
    j["eta"] = report.step;
    j["u"] = report.defect_bound;
    j["n"] = report.num_tests;
    j["epsilon"] = report.epsilon;
    j["acceptable_rows"] = report.acceptable_rows;
    j["gamma"] = report.gamma;
    j["asymptotic_rate_bits"] = report.asymptotic_rate_bits;
    j["critical_rate_bits"] = report.critical_rate_bits;
    emit(args.output, j.dump(2) + "\n");
    if (args.output)
        std::cout << "critical_rate_bits=" << format_double(report.critical_rate_bits) << "\n";
    return 0;
}

// ----------------------------------------------------------------------- mc

struct McArgs {
    int q = 0;
    long long eta = 1;
    int u = 1;
    int n = 1;
    int N = 1;
    int trials = 100;
    unsigned long long seed = 1;
    double work_cap = 5e8;
    std::optional<std::string> output;
};

int run_mc(const McArgs& args) {
    sqgt::MonteCarloResult result = sqgt::estimate_disjunct_probability(
        args.n, args.N, args.q, args.eta, args.u, args.trials, args.seed, args.work_cap);

    std::ostringstream csv;
    csv << "trial,disjunct,witness_codeword,witness_covering\n";
    for (const auto& outcome : result.outcomes) {
        csv << outcome.trial << ',' << (outcome.report.is_disjunct ? 1 : 0) << ',';
        if (outcome.report.witness) {
            csv << outcome.report.witness->codeword << ',';
            const auto& covering = outcome.report.witness->covering;
            for (size_t i = 0; i < covering.size(); ++i) {
                if (i) csv << ';';
                csv << covering[i];
            }
        } else {
            csv << ',';
        }
        csv << '\n';
    }
    if (args.output) {
        sqgt::write_file(*args.output, csv.str());
        log_at(LogLevel::info, "wrote " + *args.output);
        std::cout << "fraction=" << format_double(result.fraction) << "\n";
    } else {
        std::cout << csv.str() << "# fraction=" << format_double(result.fraction) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-quantitative group testing toolkit"};
    app.require_subcommand(1);
    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "stderr log level: debug|info|warn|error");

    ConstructArgs construct_args;
    auto* construct = app.add_subcommand("construct", "build a code matrix file");
    construct->add_option("--mode", construct_args.mode, "concat or scale")->required();
    construct->add_option("--base", construct_args.base, "base code: id:N or a .json/.csv path")
        ->required();
    construct->add_option("--q", construct_args.q, "alphabet size of the built code");
    construct->add_option("--eta", construct_args.eta, "quantizer step (concat)");
    construct->add_option("--u", construct_args.u, "defect bound (concat)");
    construct->add_option("--factor", construct_args.factor, "multiplier (scale)");
    construct->add_flag("--verify-base", construct_args.verify_base,
                        "check that the base is u-disjunct (small bases only)");
    construct->add_option("-o,--output", construct_args.output, "output JSON path");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "compute the syndrome of a subject set");
    simulate->add_option("--code", simulate_args.code_path, "code file")->required();
    simulate->add_option("--positives", simulate_args.positives,
                         "comma-separated 1-based subject indices (empty for none)");
    simulate->add_option("--eta", simulate_args.quantizer.eta, "equidistant quantizer step");
    simulate->add_option("--Q", simulate_args.quantizer.levels, "outcome levels (default minimal)");
    simulate->add_option("--thresholds", simulate_args.quantizer.thresholds,
                         "comma-separated general thresholds");
    simulate->add_option("-o,--output", simulate_args.output, "output syndrome JSON path");

    DecodeArgs decode_args;
    auto* decode = app.add_subcommand("decode", "recover the positive set from a syndrome");
    decode->add_option("--code", decode_args.code_path, "code file")->required();
    decode->add_option("--outcome", decode_args.outcome_path, "syndrome JSON file")->required();
    decode->add_option("--mode", decode_args.mode, "naive or concat (default naive)");
    decode->add_option("--u", decode_args.u, "defect bound (naive mode)");
    decode->add_option("--eta", decode_args.quantizer.eta, "equidistant quantizer step");
    decode->add_option("--Q", decode_args.quantizer.levels, "outcome levels (default minimal)");
    decode->add_option("--thresholds", decode_args.quantizer.thresholds, "general thresholds");
    decode->add_option("-o,--output", decode_args.output, "optional result JSON path");

    CapacityArgs capacity_args;
    auto* capacity = app.add_subcommand("capacity", "search or evaluate capacity lower bounds");
    int m_single = 0;
    capacity->add_option("--m", m_single, "single number of positives");
    capacity->add_option("--m-min", capacity_args.m_min, "range start");
    capacity->add_option("--m-max", capacity_args.m_max, "range end");
    capacity->add_option("--q", capacity_args.q, "sample-amount alphabet size")->required();
    capacity->add_option("--Q", capacity_args.levels, "outcome levels");
    capacity->add_option("--grid", capacity_args.grid, "simplex grid step (default 0.01)");
    capacity->add_flag("--no-refine", capacity_args.no_refine, "skip coordinate-ascent refinement");
    capacity->add_flag("--json", capacity_args.json, "emit JSON instead of CSV");
    capacity->add_option("--restrict-eta", capacity_args.restrict_eta,
                         "fix an equidistant quantizer; search only the source");
    capacity->add_option("--restrict-thresholds", capacity_args.restrict_thresholds,
                         "fix a general quantizer; search only the source");
    capacity->add_flag("--eval-only", capacity_args.eval_only,
                       "evaluate alpha at --pt/--thresholds, no search");
    capacity->add_option("--pt", capacity_args.pt, "source distribution (eval-only)");
    capacity->add_option("--thresholds", capacity_args.thresholds, "thresholds (eval-only)");
    capacity->add_option("-o,--output", capacity_args.output, "output path");

    CriticalRateArgs critical_args;
    auto* critical = app.add_subcommand("critical-rate", "random-design critical rate report");
    critical->add_option("--q", critical_args.q, "alphabet size")->required();
    critical->add_option("--eta", critical_args.eta, "quantizer step")->required();
    critical->add_option("--u", critical_args.u, "defect bound")->required();
    critical->add_option("--n", critical_args.n, "number of tests")->required();
    critical->add_option("--eps", critical_args.eps, "failure budget (default 0.05)");
    critical->add_option("-o,--output", critical_args.output, "output JSON path");

    McArgs mc_args;
    auto* mc = app.add_subcommand("mc", "Monte Carlo disjunctness estimate for random codes");
    mc->add_option("--q", mc_args.q, "alphabet size")->required();
    mc->add_option("--eta", mc_args.eta, "quantizer step")->required();
    mc->add_option("--u", mc_args.u, "defect bound")->required();
    mc->add_option("--n", mc_args.n, "number of tests")->required();
    mc->add_option("--N", mc_args.N, "number of subjects")->required();
    mc->add_option("--trials", mc_args.trials, "trial count (default 100)");
    mc->add_option("--seed", mc_args.seed, "generator seed (default 1)");
    mc->add_option("--work-cap", mc_args.work_cap, "per-trial work guard");
    mc->add_option("-o,--output", mc_args.output, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (const char* env = std::getenv("SQGT_LOG_LEVEL"))
            g_log_level = parse_log_level(env);
        else
            g_log_level = parse_log_level(log_level);

        if (*construct) return run_construct(construct_args);
        if (*simulate) return run_simulate(simulate_args);
        if (*decode) return run_decode(decode_args);
        if (*capacity) {
            if (m_single > 0) {
                capacity_args.m_min = m_single;
                capacity_args.m_max = m_single;
            }
            return run_capacity(capacity_args);
        }
        if (*critical) return run_critical_rate(critical_args);
        if (*mc) return run_mc(mc_args);
        throw sqgt::ValidationError("no subcommand given");
    } catch (const sqgt::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sqgt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
