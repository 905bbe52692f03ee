// SPDX-License-Identifier: MIT
#include "sepdec/cli.hpp"

#include "sepdec/error.hpp"
#include "sepdec/lattice.hpp"
#include "sepdec/log.hpp"
#include "sepdec/oracle.hpp"
#include "sepdec/step.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sepdec {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string to_text(const PiecewiseLinear& fn) {
    std::ostringstream out;
    write_piecewise_linear(out, fn);
    return out.str();
}

PlaneSample load_sample(const RunConfig& config) {
    if (config.input) return read_sample_csv(config.input->string());
    const GeneratorSpec spec = config.generator.value_or(GeneratorSpec{});
    return generate(spec.family, spec.size, spec.seed, spec.kind);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ArrayPresent: return kExitArrayPresent;
        case ErrorKind::ResolutionExhausted:
        case ErrorKind::NoModulus: return kExitResolutionExhausted;
        case ErrorKind::GuaranteeViolated:
        case ErrorKind::NotDecomposable: return kExitGuarantee;
        default: return kExitIo;
    }
}

void print_witness(const PlaneSample& sample, const ArrayWitness& w) {
    for (std::size_t k : {w.a1, w.a2, w.a3}) std::cout << sample[k].x.to_string() << ',' << sample[k].y.to_string() << '\n';
}

/// Oracle cross-checks shared by `decompose --verify` and `verify`.
ordered_json cross_check(const PlaneSample& sample, const PiecewiseLinear* g, const PiecewiseLinear* h, double tol,
                         bool& ok) {
    ordered_json out;
    const bool detector_array = detect_three_array(sample).has_value();
    const bool alignment_array = build_alignment_graph(sample).has_mixed_node();
    out["detector_agrees"] = detector_array == alignment_array;
    ok = ok && detector_array == alignment_array;

    bool decomposable = true;
    ExactDecomposition exact;
    try {
        exact = exact_decompose_finite(sample);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotDecomposable) throw;
        decomposable = false;
    }
    out["oracle_decomposable"] = decomposable;
    ok = ok && (decomposable || detector_array);

    if (g != nullptr && h != nullptr) {
        double sup = 0.0, gap = 0.0;
        for (const auto& p : sample.points()) {
            const double fit = (*g)(p.x) + (*h)(p.y);
            sup = std::max(sup, std::abs(p.f - fit));
            if (decomposable) {
                const double exact_sum = mpq_class(exact.g.at(p.x) + exact.h.at(p.y)).get_d();
                gap = std::max(gap, std::abs(exact_sum - fit));
            }
        }
        out["residual_sup"] = sup;
        out["residual_within_tol"] = sup <= tol;
        ok = ok && sup <= tol;
        if (decomposable) {
            out["oracle_gap"] = gap;
            out["oracle_gap_within_tol"] = gap <= tol + 1e-9;
            ok = ok && gap <= tol + 1e-9;
        }
    }
    out["passed"] = ok;
    return out;
}

}  // namespace

void validate(const RunConfig& config) {
    if (!(config.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
    if (config.max_iter < 1) throw Error(ErrorKind::InvalidArgument, "--max-iter must be >= 1");
    if (config.max_n < 0 || config.max_n > 40) throw Error(ErrorKind::InvalidArgument, "--max-n must be in [0, 40]");
    if (!(config.eps_divisor >= 12.0)) throw Error(ErrorKind::InvalidArgument, "--eps-divisor must be >= 12");
    if (config.eps && !(*config.eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "--eps must be positive");
    if (config.input && config.generator) throw Error(ErrorKind::InvalidArgument, "give either an input or a generator");
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path.string() + ": " + ec.message());
}

void emit_plotdata(const DecompositionResult& result, const PlaneSample& sample, const fs::path& dir) {
    fs::create_directories(dir);
    const ResidualReport report = evaluate(result, sample);
    std::ostringstream points;
    points << "x,y,f,residual\n";
    for (std::size_t k = 0; k < sample.size(); ++k) {
        points << sample[k].x.to_string() << ',' << sample[k].y.to_string() << ',' << format_double(sample[k].f) << ','
               << format_double(report.residuals[k]) << '\n';
    }
    write_file_atomic(dir / "points.csv", points.str());

    constexpr int kPlotPoints = 1000;
    auto dense = [&](const PiecewiseLinear& fn, const ExactCoord& lo, const ExactCoord& hi, const char* header) {
        std::ostringstream out;
        out << header << '\n';
        const ExactCoord span = hi - lo;
        for (int k = 0; k < kPlotPoints; ++k) {
            const ExactCoord at = lo + ExactCoord(mpq_class(span.value() * k / (kPlotPoints - 1)));
            out << format_double(at.to_double()) << ',' << format_double(fn(at)) << '\n';
        }
        return out.str();
    };
    const auto& box = sample.bounds();
    write_file_atomic(dir / "g_plot.csv", dense(result.g_total, box.x_min, box.x_max, "x,g"));
    write_file_atomic(dir / "h_plot.csv", dense(result.h_total, box.y_min, box.y_max, "y,h"));
}

int run_decompose(const RunConfig& config) {
    std::optional<PlaneSample> sample;
    try {
        validate(config);
        sample = load_sample(config);
        fs::create_directories(config.out_dir);
    } catch (const Error& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return kExitIo;
    }

    if (auto w = detect_three_array(*sample)) {
        std::cerr << "sepdec: input contains a 3-point array:\n";
        print_witness(*sample, *w);
        return kExitArrayPresent;
    }

    try {
        const double f_norm = sup_norm(*sample);
        ordered_json report;
        std::string trace;
        DecompositionResult result;
        int code = kExitOk;

        if (config.eps) {
            const StepResult step = decompose_step(*sample, *config.eps, StepOptions{config.max_n});
            const PotentialCheck check = check_potential(step.graph, step.views, step.fn, step.gn, step.eps_used);
            result.g_total = step.g;
            result.h_total = step.h;
            result.f_norm = f_norm;
            result.trace.push_back({1, step.eps_used, step.residual_sup, step.norm_g, step.norm_h, step.level, f_norm});
            result.final_residual = step.residual_sup;
            result.converged = true;
            report["mode"] = "single_step";
            report["eps"] = step.eps_used;
            report["delta"] = step.delta_used;
            report["F"] = step.F;
            report["level_n"] = step.level;
            report["f_norm"] = f_norm;
            report["final_residual"] = step.residual_sup;
            report["iterations"] = 1;
            report["bounds"] = {{"residual_le_6eps", step.residual_sup <= 6.0 * step.eps_used},
                                {"norm_g_le_norm_f", step.norm_g <= f_norm},
                                {"norm_h_le_2norm_f", step.norm_h <= 2.0 * f_norm},
                                {"short_edges", check.short_edges},
                                {"long_horizontal", check.long_horizontal},
                                {"long_vertical", check.long_vertical},
                                {"potential_norm", check.norm},
                                {"sandwich", check.sandwich}};
        } else {
            result = decompose(*sample, SolverOptions{config.tol, config.max_iter, config.max_n, config.eps_divisor});
            const double rho = 6.0 / config.eps_divisor;
            ordered_json steps = ordered_json::array();
            for (const auto& t : result.trace) {
                steps.push_back({{"iter", t.iter},
                                 {"residual_le_envelope", t.residual_sup <= f_norm * std::pow(rho, t.iter)},
                                 {"residual_le_6eps", t.residual_sup <= 6.0 * t.eps},
                                 {"norm_g_le_entering", t.norm_g <= t.entering_norm},
                                 {"norm_h_le_2entering", t.norm_h <= 2.0 * t.entering_norm}});
            }
            report["mode"] = "iterate";
            report["tol"] = config.tol;
            report["f_norm"] = f_norm;
            report["converged"] = result.converged;
            report["final_residual"] = result.final_residual;
            report["iterations"] = result.trace.size();
            report["norm_g_total"] = result.g_total.sup_norm();
            report["norm_h_total"] = result.h_total.sup_norm();
            report["bounds"] = std::move(steps);
            if (!result.converged) code = kExitNotConverged;
        }
        for (const auto& t : result.trace) trace += trace_line(t) + "\n";

        if (config.verify) {
            bool ok = true;
            const double tol = config.eps ? result.final_residual : config.tol;
            report["verify"] = cross_check(*sample, &result.g_total, &result.h_total, tol, ok);
            if (!ok && code == kExitOk) code = kExitGuarantee;
        }

        write_file_atomic(config.out_dir / "g.csv", to_text(result.g_total));
        write_file_atomic(config.out_dir / "h.csv", to_text(result.h_total));
        write_file_atomic(config.out_dir / "trace.jsonl", trace);
        write_file_atomic(config.out_dir / "report.json", report.dump(2) + "\n");
        if (config.plot) emit_plotdata(result, *sample, config.out_dir);
        log(LogLevel::info, "final residual " + format_double(result.final_residual));
        return code;
    } catch (const Error& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return kExitIo;
    }
}

namespace {

int run_generate(const GeneratorSpec& spec, const fs::path& out) {
    const PlaneSample sample = generate(spec.family, spec.size, spec.seed, spec.kind);
    std::ostringstream text;
    write_sample_csv(text, sample);
    write_file_atomic(out, text.str());
    return kExitOk;
}

int run_graph(const fs::path& input, int n, double delta, const fs::path& dump) {
    const PlaneSample sample = read_sample_csv(input.string());
    const LatticeGraph graph = build_graph(sample, n);
    const SubgraphViews views = classify_edges(graph, delta);
    const std::size_t sep = hv_separation(views, graph);
    write_file_atomic(dump, graph_dump_json(graph, views));
    std::cout << "level " << n << ": " << graph.vertex_count() << " vertices, " << graph.edges().size()
              << " edges, " << views.long_horizontal.size() << " long horizontal, " << views.long_vertical.size()
              << " long vertical, separation " << (sep == kInfiniteDistance ? std::string("inf") : std::to_string(sep))
              << '\n';
    return kExitOk;
}

int run_verify(const fs::path& input, const std::optional<fs::path>& g_path, const std::optional<fs::path>& h_path,
               double tol) {
    const PlaneSample sample = read_sample_csv(input.string());
    std::optional<PiecewiseLinear> g, h;
    if (g_path) g = read_piecewise_linear(g_path->string());
    if (h_path) h = read_piecewise_linear(h_path->string());
    bool ok = true;
    const ordered_json out = cross_check(sample, g ? &*g : nullptr, h ? &*h : nullptr, tol, ok);
    std::cout << out.dump(2) << '\n';
    if (auto w = detect_three_array(sample)) {
        print_witness(sample, *w);
        return kExitArrayPresent;
    }
    return ok ? kExitOk : kExitGuarantee;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Decompose f(x, y) on a plane sample into g(x) + h(y)", "sepdec"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");

    RunConfig config;
    std::string input, family = "monotone_curve", function = "smooth", out_dir = ".";
    std::size_t gen_size = 200;
    std::uint64_t gen_seed = 7;
    double eps = 0.0;
    bool single_step = false;

    auto* dec = app.add_subcommand("decompose", "decompose a sample into g(x) + h(y)");
    dec->add_option("--input", input, "CSV of x,y,f records");
    dec->add_option("--family", family, "generator family when no --input is given");
    dec->add_option("--size", gen_size, "generator size");
    dec->add_option("--seed", gen_seed, "generator seed");
    dec->add_option("--function", function, "smooth|additive");
    dec->add_option("--tol", config.tol, "target sup-norm residual");
    dec->add_option("--max-iter", config.max_iter, "iteration budget");
    dec->add_option("--max-n", config.max_n, "finest lattice level");
    dec->add_option("--eps-divisor", config.eps_divisor, "eps_i = ||f_{i-1}|| / divisor");
    dec->add_option("--out", out_dir, "output directory");
    dec->add_flag("--verify", config.verify, "run oracle cross-checks");
    dec->add_flag("--plot", config.plot, "also write points.csv, g_plot.csv, h_plot.csv");
    dec->add_flag("--single-step", single_step, "run one step at --eps");
    dec->add_option("--eps", eps, "step tolerance for --single-step");

    auto* gen = app.add_subcommand("generate", "write a generated no-array sample");
    std::string gen_out;
    gen->add_option("--family", family, "monotone_curve|coordinate_pairs|random_noarray")->required();
    gen->add_option("--size", gen_size, "number of points")->required();
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--function", function, "smooth|additive");
    gen->add_option("--out", gen_out, "output CSV")->required();

    auto* graph = app.add_subcommand("graph", "dump the lattice graph at one level");
    int level = 0;
    double delta = 0.0;
    std::string dump;
    graph->add_option("--input", input, "CSV of x,y,f records")->required();
    graph->add_option("--n", level, "lattice level")->required();
    graph->add_option("--delta", delta, "long-edge threshold")->required();
    graph->add_option("--dump", dump, "output JSON")->required();

    auto* ver = app.add_subcommand("verify", "cross-check a sample (and optionally g, h) against the oracles");
    std::string g_path, h_path;
    double ver_tol = 1e-3;
    ver->add_option("--input", input, "CSV of x,y,f records")->required();
    ver->add_option("--g", g_path, "g.csv");
    ver->add_option("--h", h_path, "h.csv");
    ver->add_option("--tol", ver_tol, "residual tolerance");

    for (auto* sub : {dec, gen, graph, ver}) sub->set_help_flag("--help", "print this help message and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitIo;
    }

    try {
        const auto fam = parse_family(family);
        const auto kind = parse_function_kind(function);
        if (!fam) throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
        if (!kind) throw Error(ErrorKind::InvalidArgument, "unknown function '" + function + "'");

        if (dec->parsed()) {
            if (!input.empty()) config.input = input;
            if (dec->count("--family") + dec->count("--size") + dec->count("--seed") + dec->count("--function") > 0 ||
                input.empty()) {
                config.generator = GeneratorSpec{*fam, gen_size, gen_seed, *kind};
            }
            if (single_step != (dec->count("--eps") > 0)) {
                throw Error(ErrorKind::InvalidArgument, "--single-step and --eps go together");
            }
            if (single_step) config.eps = eps;
            config.out_dir = out_dir;
            return run_decompose(config);
        }
        if (gen->parsed()) return run_generate({*fam, gen_size, gen_seed, *kind}, gen_out);
        if (graph->parsed()) return run_graph(input, level, delta, dump);
        if (ver->parsed()) {
            if (g_path.empty() != h_path.empty()) throw Error(ErrorKind::InvalidArgument, "--g and --h go together");
            return run_verify(input, g_path.empty() ? std::nullopt : std::optional<fs::path>(g_path),
                              h_path.empty() ? std::nullopt : std::optional<fs::path>(h_path), ver_tol);
        }
    } catch (const Error& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "sepdec: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitIo;
}

}  // namespace sepdec
