// certpath: command-line front end.
//
// Exit codes
//   0  success
//   1  input error (bad flags, malformed JSON, invalid curve, path or system)
//   2  a singularity lies on the path (CriticalPointOnPath, or NoProgress at
//      a critical point)
//   3  no progress (step or halving budget exhausted, fiber not resolved at
//      the working precision)
//   4  other numerical failure (ambiguous match, root finder failure)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "certpath/fixtures.hpp"
#include "certpath/io.hpp"

#ifndef CERTPATH_DATA_DIR
#define CERTPATH_DATA_DIR "data"
#endif

namespace {

using namespace certpath;
using io::json;

enum Exit { kOk = 0, kInput = 1, kSingular = 2, kNoProgress = 3, kNumerical = 4 };

struct Config {
    double rho_fraction = 0.5;
    double safety_factor = 0.99;
    unsigned precision = 53;
    std::string epsilon_pad = "1e-12,1e-9";
    std::size_t max_halvings = 60;
    std::string range = "linear";
    std::string output = "json";
    std::string plot;
    std::string input;
    std::string fixture;
    // darboux
    int turns = 2;
    double centre_offset = 1e-3;
    // bench
    std::string table = "all";
    std::string data_dir = CERTPATH_DATA_DIR;
};

int failure_code(ErrorKind kind, bool singular) {
    switch (kind) {
        case ErrorKind::CriticalPointOnPath: return kSingular;
        case ErrorKind::NoProgress: return singular ? kSingular : kNoProgress;
        case ErrorKind::AmbiguousMatch:
        case ErrorKind::InterpolationFailure:
        case ErrorKind::NoConvergence: return kNumerical;
        default: return kInput;
    }
}

void check_config(const Config& cfg) {
    if (!(cfg.rho_fraction > 0 && cfg.rho_fraction < 1))
        throw Error(ErrorKind::InvalidArgument, "--rho-fraction must lie in (0, 1)");
    if (!(cfg.safety_factor > 0 && cfg.safety_factor < 1))
        throw Error(ErrorKind::InvalidArgument, "--safety-factor must lie in (0, 1)");
    if (cfg.precision < 2) throw Error(ErrorKind::InvalidArgument, "--precision must be at least 2 bits");
}

std::pair<double, double> parse_pad(const std::string& s) {
    std::istringstream in(s);
    double abs_pad = 0, rel_pad = 0;
    char comma = 0;
    in >> abs_pad;
    if (in && in.peek() == ',') in >> comma >> rel_pad;
    if (!in || !in.eof() || abs_pad < 0 || rel_pad < 0)
        throw Error(ErrorKind::InvalidArgument, "--epsilon-pad expects ABS or ABS,REL with non-negative values");
    return {abs_pad, rel_pad};
}

TraceOptions trace_options(const Config& cfg) {
    TraceOptions o;
    o.rho_fraction = cfg.rho_fraction;
    o.safety_factor = cfg.safety_factor;
    return o;
}

SystemOptions system_options(const Config& cfg) {
    SystemOptions o;
    o.rho_fraction = cfg.rho_fraction;
    o.safety_factor = cfg.safety_factor;
    std::tie(o.epsilon_pad_abs, o.epsilon_pad_rel) = parse_pad(cfg.epsilon_pad);
    o.max_halvings = cfg.max_halvings;
    o.alternative_range = cfg.range == "alternative";
    return o;
}

void write_plot(const Config& cfg, const std::vector<io::SvgPanel>& panels) {
    if (cfg.plot.empty()) return;
    std::ofstream out(cfg.plot);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + cfg.plot + "'");
    out << io::render_svg(panels);
}

template <class R>
std::pair<double, double> xy(const Complex<R>& z) {
    return {to_double(z.real()), to_double(z.imag())};
}

template <class R>
std::vector<io::SvgPanel> trace_panels(const TraceLog<R>& log) {
    io::SvgPanel px{"x", {{}}, {}};
    io::SvgPanel py{"y", {{}}, {}};
    for (const auto& s : log.steps) {
        px.polylines[0].push_back(xy(s.x));
        py.polylines[0].push_back(xy(s.y));
        px.markers.push_back(xy(s.x));
    }
    return {px, py};
}

template <class R>
void emit_trace(const Config& cfg, const TraceLog<R>& log) {
    if (cfg.output == "csv") {
        std::cout << io::trace_log_to_csv(log);
    } else {
        json out = {{"outcome", log.outcome == Outcome::Success ? "success" : "failure"},
                    {"reason", log.reason},
                    {"step_count", log.step_count()},
                    {"steps", io::trace_log_to_json(log)}};
        if (!log.steps.empty()) out["final_y"] = io::complex_to_json(log.final_y());
        std::cout << out.dump(1) << '\n';
    }
    write_plot(cfg, trace_panels(log));
}

template <class R>
int cmd_trace(const Config& cfg) {
    const json in = io::load_json(cfg.input);
    if (!in.is_object()) throw Error(ErrorKind::ParseError, "input: expected an object {curve, path, y0}");
    for (const char* key : {"curve", "path", "y0"})
        if (!in.contains(key)) throw Error(ErrorKind::ParseError, std::string(key) + ": missing field");
    const BivPoly<R> f = io::poly_from_json<R>(in["curve"], "curve");
    const ParamPath<R> path = io::path_from_json<R>(in["path"], "path");
    const Complex<R> y0 = io::complex_from_json<R>(in["y0"], "y0");
    try {
        emit_trace(cfg, trace_curve(f, path, y0, trace_options(cfg)));
        return kOk;
    } catch (const TraceFailure<R>& e) {
        emit_trace(cfg, e.log());
        std::cerr << "certpath: " << e.what() << '\n';
        return failure_code(e.kind(), e.singular_on_path());
    }
}

template <class R>
void emit_system(const Config& cfg, const SystemTraceLog<R>& log) {
    if (cfg.output == "csv") {
        std::cout << io::system_log_to_csv(log);
    } else {
        json out = io::system_log_to_json(log);
        out["step_count"] = log.step_count();
        json fin = json::array();
        for (const auto& z : log.final_positions()) fin.push_back(io::complex_to_json(z));
        out["final_positions"] = fin;
        std::cout << out.dump(1) << '\n';
    }
    if (!cfg.plot.empty()) {
        std::vector<io::SvgPanel> panels;
        const std::size_t n = log.initial.size();
        for (std::size_t k = 0; k < n; ++k) {
            io::SvgPanel p{"x" + std::to_string(k), {{xy(log.initial[k])}}, {xy(log.initial[k])}};
            for (const auto& r : log.rounds) {
                p.polylines[0].push_back(xy(r.positions[k]));
                p.markers.push_back(xy(r.positions[k]));
            }
            panels.push_back(std::move(p));
        }
        write_plot(cfg, panels);
    }
}

template <class R>
ChainSystem<R> load_system(const Config& cfg) {
    if (!cfg.fixture.empty()) {
        if (cfg.fixture == "example2") return fixtures::example2_system<R>(false);
        if (cfg.fixture == "example2-variant") return fixtures::example2_system<R>(true);
        if (cfg.fixture == "linear-chain") return fixtures::linear_chain<R>();
        throw Error(ErrorKind::InvalidArgument,
                    "unknown fixture '" + cfg.fixture + "' (example2, example2-variant, linear-chain)");
    }
    if (cfg.input.empty()) throw Error(ErrorKind::InvalidArgument, "an input file or --fixture is required");
    ChainSystem<R> sys = io::system_from_json<R>(io::load_json(cfg.input));
    sys.validate();
    return sys;
}

template <class R>
int cmd_trace_system(const Config& cfg) {
    const ChainSystem<R> sys = load_system<R>(cfg);
    try {
        emit_system(cfg, trace_system(sys, system_options(cfg)));
        return kOk;
    } catch (const SystemFailure<R>& e) {
        emit_system(cfg, e.log());
        std::cerr << "certpath: " << e.what() << '\n';
        return failure_code(e.kind(), false);
    }
}

template <class R>
int cmd_compare_resultant(const Config& cfg) {
    const ChainSystem<R> sys = load_system<R>(cfg);
    ResultantComparison<R> cmp;
    try {
        cmp = compare_with_resultant(sys, system_options(cfg), trace_options(cfg));
    } catch (const SystemFailure<R>& e) {
        std::cerr << "certpath: system trace failed: " << e.what() << '\n';
        return failure_code(e.kind(), false);
    }
    json out = {{"system_steps", cmp.system_steps()},
                {"system_final", io::complex_to_json(cmp.system.final_positions().back())},
                {"eliminant", io::poly_to_json(cmp.eliminant)}};
    if (cmp.resultant_terminated()) {
        out["resultant_steps"] = cmp.resultant->step_count();
        out["resultant_final"] = io::complex_to_json(cmp.resultant->final_y());
    } else {
        out["resultant_failure"] = to_string(*cmp.resultant_failure);
        out["resultant_reason"] = cmp.resultant_reason;
        out["resultant_partial_steps"] = cmp.resultant_partial_steps;
        // Only a stalled trace counts as non-termination; a hit singularity is
        // reported as such.
        out["resultant_steps"] =
            *cmp.resultant_failure == ErrorKind::NoProgress ? json("NON_TERMINATION") : json(nullptr);
    }
    std::cout << out.dump(1) << '\n';
    return kOk;
}

template <class R>
int cmd_darboux(const Config& cfg) {
    PentagonOptions opts;
    opts.trace = trace_options(cfg);
    opts.turns = cfg.turns;
    opts.centre_offset = cfg.centre_offset;
    const PentagonRun<R> run = run_pentagon_experiment<R>(opts);
    if (cfg.output == "csv") {
        std::cout << io::trace_log_to_csv(run.log);
    } else {
        json ends = json::array();
        for (std::size_t i : run.turn_ends) ends.push_back(i);
        json out = {{"closure", io::poly_to_json(run.closure)},
                    {"ramification", io::real_to_json(run.ramification)},
                    {"centre", io::complex_to_json(run.centre)},
                    {"radius", io::real_to_json(run.radius)},
                    {"turn_ends", ends},
                    {"step_count", run.log.step_count()},
                    {"steps", io::trace_log_to_json(run.log)}};
        std::cout << out.dump(1) << '\n';
    }
    if (!cfg.plot.empty()) {
        io::SvgPanel mu{"mu", {{}}, {{to_double(run.ramification), 0.0}}};
        io::SvgPanel g{"starting point", {{}}, {}};
        for (const auto& s : run.log.steps) {
            mu.polylines[0].push_back(xy(s.x));
            g.polylines[0].push_back(xy(s.y));
        }
        io::SvgPanel poly{"pentagon and transform", {{}, {}}, {}};
        const DiscreteCurve<R> pent = regular_polygon<R>(5);
        for (const auto& v : pent.vertices) poly.polylines[0].push_back(xy(v.affine()));
        const auto& last = run.log.steps.back();
        try {
            const DiscreteCurve<R> t =
                transform_vertices(pent, ProjectivePoint<R>::finite(last.y), last.x, true);
            for (const auto& v : t.vertices)
                if (!v.is_infinite(R(1e-12))) poly.polylines[1].push_back(xy(v.affine()));
        } catch (const Error&) {
        }
        for (const auto& s : run.log.steps) g.markers.push_back(xy(s.y));
        write_plot(cfg, {mu, g, poly});
    }
    return kOk;
}

struct BenchRow {
    std::string key;
    long reference[3] = {0, 0, 0};
};

std::vector<BenchRow> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::vector<BenchRow> rows;
    std::string line;
    bool header = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        BenchRow row;
        std::string cell;
        std::getline(ls, row.key, ',');
        for (long& v : row.reference) {
            if (!std::getline(ls, cell, ',')) throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": short row");
            v = std::stol(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

template <class R>
int cmd_bench(const Config& cfg) {
    struct Job {
        std::string table;
        BenchRow row;
        R m;
        std::size_t steps = 0;
        double endpoint_error = 0;
        std::string error;
    };
    std::vector<Job> jobs;
    if (cfg.table == "1" || cfg.table == "all")
        for (const auto& row : read_table(cfg.data_dir + "/newton_table1.csv"))
            jobs.push_back({"1", row, from_decimal<R>(row.key), 0, 0, {}});
    if (cfg.table == "2" || cfg.table == "all")
        for (const auto& row : read_table(cfg.data_dir + "/newton_table2.csv"))
            jobs.push_back({"2", row, fixtures::newton_table2_m<R>(std::stoi(row.key)), 0, 0, {}});
    if (jobs.empty()) throw Error(ErrorKind::InvalidArgument, "--table must be 1, 2 or all");

    const TraceOptions opts = trace_options(cfg);
    auto run = [&](Job& job) {
        using std::sqrt;
        try {
            const TraceLog<R> log = trace_curve(fixtures::newton_curve<R>(job.m), fixtures::newton_path<R>(),
                                                Complex<R>(1), opts);
            job.steps = log.step_count();
            job.endpoint_error = to_double(magnitude(log.final_y() - Complex<R>(sqrt(R(1) + job.m))));
        } catch (const Error& e) {
            job.error = e.what();
        }
    };
    const long n = static_cast<long>(jobs.size());
    if constexpr (RealTraits<R>::parallel_kernels) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) run(jobs[static_cast<std::size_t>(i)]);
    } else {
        for (long i = 0; i < n; ++i) run(jobs[static_cast<std::size_t>(i)]);
    }

    int code = kOk;
    json rows = json::array();
    std::ostringstream csv;
    csv << "table,m_or_k,our_steps,paper_alg1_steps,bl2013_steps,hhl2014_intervals,endpoint_error\n";
    for (const auto& job : jobs) {
        if (!job.error.empty()) {
            std::cerr << "certpath: table " << job.table << " row " << job.row.key << ": " << job.error << '\n';
            code = kNoProgress;
        }
        char err[32];
        std::snprintf(err, sizeof err, "%.3e", job.endpoint_error);
        csv << job.table << ',' << job.row.key << ',' << (job.error.empty() ? std::to_string(job.steps) : "FAIL")
            << ',' << job.row.reference[0] << ',' << job.row.reference[1] << ',' << job.row.reference[2] << ','
            << (job.error.empty() ? err : "") << '\n';
        rows.push_back({{"table", job.table},
                        {"m_or_k", job.row.key},
                        {"our_steps", job.error.empty() ? json(job.steps) : json(nullptr)},
                        {"paper_alg1_steps", job.row.reference[0]},
                        {"bl2013_steps", job.row.reference[1]},
                        {"hhl2014_intervals", job.row.reference[2]},
                        {"endpoint_error", job.error.empty() ? json(job.endpoint_error) : json(nullptr)}});
    }
    if (cfg.output == "json")
        std::cout << rows.dump(1) << '\n';
    else
        std::cout << csv.str();
    return code;
}

template <class R>
int dispatch(const std::string& command, const Config& cfg) {
    if (command == "trace") return cmd_trace<R>(cfg);
    if (command == "trace-system") return cmd_trace_system<R>(cfg);
    if (command == "compare-resultant") return cmd_compare_resultant<R>(cfg);
    if (command == "darboux") return cmd_darboux<R>(cfg);
    return cmd_bench<R>(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified continuation along plane algebraic curves and chained systems"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool output_choice = true) {
        sub->add_option("--rho-fraction", cfg.rho_fraction, "rho as a fraction of the critical distance")
            ->capture_default_str();
        sub->add_option("--safety-factor", cfg.safety_factor, "steps use this fraction of delta")->capture_default_str();
        sub->add_option("--precision", cfg.precision, "working precision in bits; 53 is binary64")
            ->capture_default_str();
        if (output_choice)
            sub->add_option("--output", cfg.output, "output format")
                ->check(CLI::IsMember({"json", "csv"}))
                ->capture_default_str();
    };

    auto* trace = app.add_subcommand("trace", "continue one branch of a curve along a path");
    trace->add_option("input", cfg.input, "JSON file or inline JSON {curve, path, y0}")->required();
    common(trace);
    trace->add_option("--plot", cfg.plot, "write an SVG of the x path and the y trace");

    auto add_system_flags = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "JSON file or inline JSON {equations, initial, target}");
        sub->add_option("--fixture", cfg.fixture, "built-in system: example2, example2-variant, linear-chain");
        sub->add_option("--epsilon-pad", cfg.epsilon_pad, "padding of the range estimate, ABS[,REL]")
            ->capture_default_str();
        sub->add_option("--max-halvings", cfg.max_halvings, "halvings allowed per round")->capture_default_str();
        sub->add_option("--range-estimate", cfg.range, "how eps' is derived from the step")
            ->check(CLI::IsMember({"linear", "alternative"}))
            ->capture_default_str();
    };

    auto* tsys = app.add_subcommand("trace-system", "continue a chained triangular system");
    add_system_flags(tsys);
    common(tsys);
    tsys->add_option("--plot", cfg.plot, "write an SVG with one panel per variable");

    auto* cmp = app.add_subcommand("compare-resultant",
                                   "trace a two-equation chain directly and through its eliminant");
    add_system_flags(cmp);
    common(cmp, false);

    auto* darb = app.add_subcommand("darboux", "track a closed Darboux transform of the regular pentagon");
    common(darb);
    darb->add_option("--turns", cfg.turns, "full turns around the branch point")->capture_default_str();
    darb->add_option("--centre-offset", cfg.centre_offset, "circle centre beyond half the branch point")
        ->capture_default_str();
    darb->add_option("--plot", cfg.plot, "write an SVG of the mu circle, the trace and the final transform");

    auto* bench = app.add_subcommand("bench", "Newton homotopy step counts against the reference tables");
    common(bench, false);
    bench->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"json", "csv"}));
    bench->add_option("--table", cfg.table, "1, 2 or all")->capture_default_str();
    bench->add_option("--data-dir", cfg.data_dir, "directory with the reference tables")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "compare-resultant" && cmp->count("--rho-fraction") == 0) cfg.rho_fraction = 0.9;
    if (command == "bench" && bench->count("--output") == 0) cfg.output = "csv";

    try {
        check_config(cfg);
        if (cfg.precision == 53) return dispatch<double>(command, cfg);
        set_mp_precision_bits(cfg.precision);
        return dispatch<MpReal>(command, cfg);
    } catch (const TraceFailure<double>& e) {
        std::cerr << "certpath: " << e.what() << '\n';
        return failure_code(e.kind(), e.singular_on_path());
    } catch (const TraceFailure<MpReal>& e) {
        std::cerr << "certpath: " << e.what() << '\n';
        return failure_code(e.kind(), e.singular_on_path());
    } catch (const Error& e) {
        std::cerr << "certpath: " << e.what() << '\n';
        return failure_code(e.kind(), false);
    } catch (const std::exception& e) {
        std::cerr << "certpath: " << e.what() << '\n';
        return kInput;
    }
}
