#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "igabench/assembly.hpp"
#include "igabench/heat.hpp"
#include "igabench/integrators.hpp"
#include "igabench/parallel_runtime.hpp"
#include "igabench/scaling_analysis.hpp"
#include "igabench/taskgraph.hpp"

namespace igabench::cli {

namespace {

// Thrown for flag problems found after parsing; maps to exit_usage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string method = "both";
    std::string strategy = "sequential";
    std::optional<int> p;
    std::optional<int> mesh;
    int quad = 0;
    std::string threads = "1";
    int element_workers = 0;
    int repeat = 1;
    std::uint64_t seed = 42;
    bool shuffle = false;
    bool oversubscribe = false;
    bool dynamic = false;
    double tolerance = 1e-10;
    std::string output;
    std::string format;
    double dt = 0.0;
    double tfinal = 0.01;
    std::string initial = "cosine";
    std::string input;
    int nu = 0;
    double speedup_value = 0.0;
    std::string combine;
};

// Writes to --output when given, else to out.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
        }
        stream_ = file_ ? file_.get() : &fallback;
    }
    std::ostream& operator*() { return *stream_; }
    [[nodiscard]] bool is_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::vector<Method> methods_of(const std::string& name) {
    if (name == "both") {
        return {Method::classical, Method::sumfact};
    }
    try {
        return {parse_method(name)};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Strategy strategy_of(const std::string& name) {
    try {
        return parse_strategy(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<int> thread_sweep(const Options& o, const std::optional<std::string>& env) {
    try {
        return parse_thread_list(env ? *env : o.threads);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(env ? "IGA_BENCH_THREADS: " : "--threads: ") + e.what());
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw UsageError(message);
    }
}

// ---------------------------------------------------------------------------

int cmd_bench(const Options& o, const std::optional<std::string>& env, std::ostream& out, std::ostream& err) {
    const auto methods = methods_of(o.method);
    const auto strategy = strategy_of(o.strategy);
    const auto threads = thread_sweep(o, env);
    const int p = o.p.value_or(3);
    const int K = o.mesh.value_or(8);
    require(p >= 0 && K >= 1, "--p must be >= 0 and --mesh >= 1");
    require(o.quad >= 0, "--quad must be positive");
    require(o.repeat >= 1, "--repeat must be at least 1");
    const std::string format = o.format.empty() ? "csv" : o.format;
    require(format == "csv" || format == "json", "bench supports --format csv or json");
    for (const int t : threads) {
        require(o.element_workers == 0 || t % o.element_workers == 0,
                "--element-workers must divide every thread count");
    }

    Runtime runtime;
    std::vector<BenchRecord> records;
    for (const auto m : methods) {
        for (const int t : threads) {
            RunConfig cfg;
            cfg.method = m;
            cfg.strategy = strategy;
            cfg.workers = t;
            cfg.elements = K;
            cfg.degree = p;
            cfg.repetitions = o.repeat;
            cfg.points_per_direction = o.quad;
            cfg.element_workers = o.element_workers;
            cfg.schedule = o.dynamic ? Schedule::dynamic : Schedule::static_chunks;
            cfg.cap_to_hardware = !o.oversubscribe;
            cfg.shuffle_seed = o.shuffle ? o.seed : 0;
            auto result = runtime.run(cfg);
            for (const auto& w : result.warnings) {
                err << "warning: " << w << '\n';
            }
            cfg.workers = result.workers;
            records.push_back({cfg, std::move(result.seconds), result.flops});
        }
    }

    Sink sink(o.output, out);
    if (format == "csv") {
        write_bench_csv(*sink, records);
    } else {
        nlohmann::json doc;
        doc["version"] = std::string(artifact_version);
        doc["seed"] = o.seed;
        doc["records"] = nlohmann::json::array();
        for (const auto& r : records) {
            doc["records"].push_back({{"method", to_string(r.config.method)},
                                      {"strategy", to_string(r.config.strategy)},
                                      {"p", r.config.degree},
                                      {"K", r.config.elements},
                                      {"threads", r.config.workers},
                                      {"seconds", r.times},
                                      {"min", r.min()},
                                      {"mean", r.mean()},
                                      {"stddev", r.stddev()},
                                      {"flops", r.flops}});
        }
        *sink << doc.dump(2) << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct VerifyOutcome {
    double relative_frobenius = 0.0;
    double worst_abs = 0.0;
    ElementId worst_element;
    int worst_row = 0;
    int worst_col = 0;
};

VerifyOutcome verify_one(int p, int K, int quad, GlobalGram* keep) {
    const KnotVector kv(K, p);
    SumFactBuffers buffers(p, quad > 0 ? quad : p + 1);
    std::vector<ElementMatrix> classical;
    std::vector<ElementMatrix> sumfact;
    VerifyOutcome v;
    for (const auto e : element_list(K)) {
        const auto rule = gauss_rule(p, K, e, quad);
        classical.push_back(integrate_element_classical(e, kv, rule));
        sumfact.push_back(integrate_element_sumfact(e, kv, rule, buffers));
        const auto& a = classical.back();
        const auto& b = sumfact.back();
        for (int r = 0; r < a.size; ++r) {
            for (int c = 0; c < a.size; ++c) {
                const double d = std::abs(a(r, c) - b(r, c));
                if (d > v.worst_abs) {
                    v.worst_abs = d;
                    v.worst_element = e;
                    v.worst_row = r;
                    v.worst_col = c;
                }
            }
        }
    }
    const auto ga = assemble(classical, K, p);
    auto gb = assemble(sumfact, K, p);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ga.values().size(); ++i) {
        const double d = ga.values()[i] - gb.values()[i];
        num += d * d;
        den += ga.values()[i] * ga.values()[i];
    }
    v.relative_frobenius = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    if (keep != nullptr) {
        *keep = std::move(gb);
    }
    return v;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const int pmax = o.p.value_or(4);
    const int kmax = o.mesh.value_or(4);
    require(pmax >= 0 && kmax >= 1, "--p must be >= 0 and --mesh >= 1");
    require(o.quad >= 0, "--quad must be positive");
    require(o.tolerance >= 0.0, "--tolerance must be non-negative");
    require(o.format.empty() || o.format == "mtx", "verify supports --format mtx (with --output)");
    require(o.format.empty() || !o.output.empty(), "--format mtx needs --output");

    bool ok = true;
    std::unique_ptr<GlobalGram> last;
    out << "p,K,relative_frobenius,max_abs_difference,worst_element,worst_entry,status\n";
    out << std::setprecision(6);
    for (int p = 0; p <= pmax; ++p) {
        for (int K = 1; K <= kmax; ++K) {
            GlobalGram g(K, p);
            const auto v = verify_one(p, K, o.quad, &g);
            const bool pass = v.relative_frobenius <= o.tolerance;
            ok = ok && pass;
            out << p << ',' << K << ',' << v.relative_frobenius << ',' << v.worst_abs << ",(" << v.worst_element.i
                << ' ' << v.worst_element.j << ' ' << v.worst_element.k << "),(" << v.worst_row << ' ' << v.worst_col
                << ")," << (pass ? "ok" : "MISMATCH") << '\n';
            if (g.rows() == 1) {
                out << "# matrix [" << std::setprecision(17) << g.values()[0] << std::setprecision(6) << "]\n";
            }
            last = std::make_unique<GlobalGram>(std::move(g));
        }
    }
    if (!o.output.empty() && last) {
        Sink sink(o.output, out);
        write_matrix_market(*sink, *last);
    }
    if (!ok) {
        err << "verify: classical and sum factorization differ beyond tolerance " << o.tolerance << '\n';
        return exit_mismatch;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_graph(const Options& o, std::ostream& out, std::ostream& err) {
    const int p = o.p.value_or(1);
    const int quad = o.quad > 0 ? o.quad : p + 1;
    require(p >= 0, "--p must be >= 0");
    require(o.quad >= 0, "--quad must be positive");
    const std::string format = o.format.empty() ? "dot" : o.format;
    require(format == "dot" || format == "json", "graph supports --format dot or json");
    const std::size_t P = static_cast<std::size_t>(quad) * quad * quad;
    const TaskIndexer sizing({0, 0, 0}, p, static_cast<int>(P));
    require(sizing.size() <= 5'000'000, "graph too large (" + std::to_string(sizing.size()) + " tasks)");

    const auto g = build_task_graph({0, 0, 0}, p, static_cast<int>(P));
    Sink sink(o.output, out);
    *sink << (format == "dot" ? export_dot(g) : export_json(g));

    std::ostream& report = sink.is_file() ? out : err;
    const auto sizes = class_sizes(g);
    report << "p=" << p << " quad=" << quad << " tasks=" << g.tasks.size() << " edges=" << g.edges.size()
           << " classes=" << sizes.size() << '\n';
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        report << "class " << c << ": " << sizes[c] << " tasks\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

void print_amdahl_header(std::ostream& out) {
    out << std::left << std::setw(10) << "method" << std::setw(16) << "strategy" << std::setw(4) << "p"
        << std::setw(5) << "K" << std::setw(5) << "nu" << std::setw(10) << "S(nu)" << std::setw(8) << "P"
        << std::setw(10) << "S(inf)" << std::setw(11) << "combined" << "note" << std::right << '\n';
}

std::string fixed(double v, int digits) {
    if (std::isinf(v)) {
        return "inf";
    }
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

int cmd_amdahl(const Options& o, std::ostream& out, std::ostream& err) {
    const bool from_file = !o.input.empty();
    const bool from_pair = o.nu != 0 || o.speedup_value != 0.0;
    const bool from_limits = !o.combine.empty();
    require(from_file || from_pair || from_limits, "amdahl needs --input, --nu/--speedup, or --combine");

    if (from_limits) {
        std::vector<double> limits;
        std::istringstream s(o.combine);
        std::string item;
        while (std::getline(s, item, ',')) {
            try {
                limits.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw UsageError("--combine expects two numbers, e.g. 1.41,21");
            }
        }
        require(limits.size() == 2, "--combine expects two numbers, e.g. 1.41,21");
        try {
            out << "combined S(inf) = " << fixed(combined_limit(limits[0], limits[1]), 2) << '\n';
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    if (from_pair) {
        require(o.nu >= 2, "Amdahl fraction needs a measurement with nu >= 2");
        require(o.speedup_value > 0.0, "--speedup must be positive");
        const auto est = estimate_amdahl(o.nu, o.speedup_value);
        out << "nu=" << est.nu << " S=" << est.speedup << " P=" << fixed(est.fraction, 2)
            << " S(inf)=" << fixed(est.limit, 2) << (est.out_of_model ? " (out of model)" : "") << '\n';
    }

    if (from_file) {
        std::ifstream in(o.input);
        if (!in) {
            throw UsageError("cannot open --input '" + o.input + "'");
        }
        const auto records = read_bench_csv(in);
        const auto rows = amdahl_report(records);
        if (rows.empty()) {
            err << "amdahl: no record with nu >= 2 and a single-worker baseline\n";
            return exit_usage;
        }
        Sink sink(o.output, out);
        if (o.format == "csv") {
            *sink << "method,strategy,p,K,nu,speedup,fraction,limit,combined,out_of_model\n";
            for (const auto& r : rows) {
                *sink << to_string(r.method) << ',' << to_string(r.strategy) << ',' << r.degree << ',' << r.elements
                      << ',' << r.estimate.nu << ',' << r.estimate.speedup << ',' << r.estimate.fraction << ','
                      << r.estimate.limit << ',' << (r.combined ? fixed(*r.combined, 4) : "") << ','
                      << (r.estimate.out_of_model ? 1 : 0) << '\n';
            }
        } else {
            print_amdahl_header(*sink);
            for (const auto& r : rows) {
                *sink << std::left << std::setw(10) << to_string(r.method) << std::setw(16) << to_string(r.strategy)
                      << std::setw(4) << r.degree << std::setw(5) << r.elements << std::setw(5) << r.estimate.nu
                      << std::setw(10) << fixed(r.estimate.speedup, 2) << std::setw(8)
                      << fixed(r.estimate.fraction, 2) << std::setw(10) << fixed(r.estimate.limit, 2)
                      << std::setw(11) << (r.combined ? fixed(*r.combined, 2) : "-")
                      << (r.estimate.out_of_model ? "out of model" : "") << std::right << '\n';
            }
        }
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_heat(const Options& o, const std::optional<std::string>& env, std::ostream& out, std::ostream& err) {
    HeatConfig cfg;
    cfg.degree = o.p.value_or(2);
    cfg.elements = o.mesh.value_or(4);
    require(cfg.degree >= 1, "heat needs --p >= 1");
    require(cfg.elements >= 1, "--mesh must be >= 1");
    require(o.dt >= 0.0, "--dt must be positive");
    require(o.tfinal >= 0.0, "--tfinal must be non-negative");
    require(o.initial == "cosine" || o.initial == "constant", "--initial is cosine or constant");
    require(o.format.empty() || o.format == "csv", "heat writes --format csv");
    cfg.dt = o.dt;
    cfg.t_final = o.tfinal;
    cfg.strategy = strategy_of(o.strategy);
    const auto methods = methods_of(o.method == "both" ? "sumfact" : o.method);
    cfg.method = methods.front();
    cfg.workers = thread_sweep(o, env).front();

    const bool cosine = o.initial == "cosine";
    const ScalarField3 u0 = cosine ? ScalarField3(default_initial_state)
                                   : ScalarField3([](double, double, double) { return 1.0; });
    const auto exact = cosine ? ExactSolution(analytic_solution)
                              : ExactSolution([](double, double, double, double) { return 1.0; });

    const auto run = run_heat(cfg, u0, exact, [&](const std::string& w) { err << "warning: " << w << '\n'; });
    Sink sink(o.output, out);
    *sink << "# igabench " << artifact_version << " method=" << to_string(cfg.method) << " p=" << cfg.degree
          << " K=" << cfg.elements << " threads=" << cfg.workers << " repetitions=1 dt=" << run.dt
          << " tfinal=" << cfg.t_final << " initial=" << o.initial << '\n';
    *sink << "step,time,mass,L2_error_vs_analytic\n";
    *sink << std::setprecision(15);
    for (const auto& r : run.steps) {
        *sink << r.step << ',' << r.time << ',' << r.mass << ',';
        if (r.l2_error) {
            *sink << *r.l2_error;
        }
        *sink << '\n';
    }
    return exit_ok;
}

}  // namespace

std::vector<int> parse_thread_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad thread count '" + item + "'");
        }
        if (used != item.size() || v < 1) {
            throw std::invalid_argument("bad thread count '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty thread list");
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& threads_env) {
    CLI::App app{"Element integration benchmarks for tensor-product B-spline spaces", "iga_bench"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "spline degree");
        sub->add_option("--mesh", o.mesh, "elements per direction (K)");
        sub->add_option("--output", o.output, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv|json|dot|mtx");
        sub->add_option("--seed", o.seed, "seed for schedule shuffling")->capture_default_str();
    };

    auto* bench = app.add_subcommand("bench", "time mesh integration across worker counts");
    common(bench);
    bench->add_option("--method", o.method, "classical|sumfact|both")->capture_default_str();
    bench->add_option("--strategy", o.strategy, "sequential|over_elements|within_element|combined")
        ->capture_default_str();
    bench->add_option("--quad", o.quad, "quadrature points per direction (default p+1)");
    bench->add_option("--threads", o.threads, "comma-separated worker counts")->capture_default_str();
    bench->add_option("--element-workers", o.element_workers, "outer workers for the combined strategy");
    bench->add_option("--repeat", o.repeat, "repetitions per configuration")->capture_default_str();
    bench->add_flag("--shuffle", o.shuffle, "shuffle within-element work order using --seed");
    bench->add_flag("--oversubscribe", o.oversubscribe, "do not cap workers at hardware concurrency");
    bench->add_flag("--dynamic", o.dynamic, "dynamic element distribution for over_elements");

    auto* verify = app.add_subcommand("verify", "compare classical and sum factorization matrices");
    common(verify);
    verify->add_option("--quad", o.quad, "quadrature points per direction (default p+1)");
    verify->add_option("--tolerance", o.tolerance, "relative Frobenius tolerance")->capture_default_str();

    auto* graph = app.add_subcommand("graph", "export the element task graph");
    common(graph);
    graph->add_option("--quad", o.quad, "quadrature points per direction (default p+1)");

    auto* amdahl = app.add_subcommand("amdahl", "parallel fraction and speedup limits");
    amdahl->add_option("--input", o.input, "bench CSV");
    amdahl->add_option("--nu", o.nu, "worker count of a single measurement");
    amdahl->add_option("--speedup", o.speedup_value, "speedup measured at --nu");
    amdahl->add_option("--combine", o.combine, "inner,outer speedup limits");
    amdahl->add_option("--output", o.output, "output file (default stdout)");
    amdahl->add_option("--format", o.format, "table (default) or csv");

    auto* heat = app.add_subcommand("heat", "forward Euler heat equation demo");
    common(heat);
    heat->add_option("--method", o.method, "classical|sumfact");
    heat->add_option("--strategy", o.strategy, "assembly strategy")->capture_default_str();
    heat->add_option("--threads", o.threads, "worker count (first entry used)");
    heat->add_option("--dt", o.dt, "time step (default h^2/6)");
    heat->add_option("--tfinal", o.tfinal, "final time")->capture_default_str();
    heat->add_option("--initial", o.initial, "cosine|constant")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (bench->parsed()) {
            return cmd_bench(o, threads_env, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out, err);
        }
        if (graph->parsed()) {
            return cmd_graph(o, out, err);
        }
        if (amdahl->parsed()) {
            return cmd_amdahl(o, out, err);
        }
        return cmd_heat(o, threads_env, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace igabench::cli
