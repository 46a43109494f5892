#include <cstdint>
#include <fstream>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reslab/errors.hpp"
#include "reslab/exppoly.hpp"
#include "reslab/geometry.hpp"
#include "reslab/json_io.hpp"
#include "reslab/permutations.hpp"
#include "reslab/pseudoorbit.hpp"
#include "reslab/roots.hpp"
#include "reslab/sizecalc.hpp"
#include "reslab/verify.hpp"

namespace {

using nlohmann::json;
using namespace reslab;

struct ExperimentSpec {
    std::string task;

    // Config source: a file, or one of the canonical builders.
    std::string config_path;
    std::string builder;
    int m = 1;
    double a = 1.0;
    double b = 0.25;
    double c = 0.5;
    double builder_alpha = 0.0;

    // Strengths to run the task for; empty means the config's own alpha.
    std::vector<double> alphas;

    std::string output_path;
    std::string format = "json";

    // Task options.
    bool use_assignment = false;
    bool list_maximizers = false;
    std::string method = "symbolic";
    std::vector<double> rect;
    double tol = 1e-10;
    double radius = 20.0;
    double rmax = 200.0;
    int steps = 40;
    int max_bonds = -1;
    double t_max = 0.0;
    int samples = 64;
    std::uint64_t seed = kDefaultVerifySeed;
};

PointConfig load_config(const ExperimentSpec& spec) {
    if (!spec.config_path.empty() && !spec.builder.empty()) {
        throw ValidationError("pass either --config or --builder, not both");
    }
    if (!spec.config_path.empty()) return read_config(spec.config_path);
    if (spec.builder == "antipodal-sphere") {
        return build_antipodal_sphere_config(spec.m, spec.builder_alpha);
    }
    if (spec.builder == "sphere-center") {
        return build_sphere_center_config(spec.m, spec.builder_alpha);
    }
    if (spec.builder == "nonweyl4") {
        return build_nonweyl4(spec.a, spec.b, spec.c, spec.builder_alpha);
    }
    if (spec.builder.empty()) {
        throw ValidationError("a config source is required: --config FILE or --builder NAME");
    }
    throw ValidationError("unknown builder \"" + spec.builder +
                          "\"; available: antipodal-sphere, sphere-center, nonweyl4");
}

std::string cycles_string(const std::vector<int>& pi) {
    std::ostringstream out;
    const int n = static_cast<int>(pi.size());
    std::vector<char> visited(static_cast<size_t>(n), 0);
    bool any = false;
    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<size_t>(start)] || pi[static_cast<size_t>(start)] == start) {
            visited[static_cast<size_t>(start)] = 1;
            continue;
        }
        any = true;
        out << "(";
        int v = start;
        bool first = true;
        do {
            visited[static_cast<size_t>(v)] = 1;
            out << (first ? "" : ",") << (v + 1);
            first = false;
            v = pi[static_cast<size_t>(v)];
        } while (v != start);
        out << ")";
    }
    return any ? out.str() : "id";
}

json permutation_to_json(const std::vector<int>& pi) {
    json images = json::array();
    for (const int v : pi) images.push_back(v + 1);
    return json{{"images", images}, {"cycles", cycles_string(pi)}};
}

json run_size(const ExperimentSpec& spec, const PointConfig& config) {
    if (spec.use_assignment) {
        const std::vector<int> pi = assignment_maximizer(config);
        const LengthAlphabet alphabet = build_length_alphabet(config);
        return json{{"method", "assignment"},
                    {"v_x", alphabet.vector_total(alphabet.class_vector(pi))},
                    {"maximizer", permutation_to_json(pi)}};
    }
    const SizeReport report = size_bruteforce(config);
    json out{{"method", "brute-force"},
             {"v_x", report.v_x},
             {"unique", weyl_necessary_condition(report)},
             {"maximizer_count", report.maximizers.size()}};
    if (spec.list_maximizers) {
        json list = json::array();
        for (const auto& pi : report.maximizers) list.push_back(permutation_to_json(pi));
        out["maximizers"] = list;
    }
    return out;
}

json sigma_class_json(const std::vector<int>& vec) {
    json out = json::array();
    for (const int v : vec) out.push_back(v);
    return out;
}

json run_effective_size(const ExperimentSpec& spec, const PointConfig& config) {
    json out{{"alpha", config.alpha}, {"method", spec.method}};
    if (spec.method == "symbolic" || spec.method == "both") {
        const ExpPolynomial f = from_determinant(config);
        out["w_x"] = effective_size(f);
        out["sigma_class"] = sigma_class_json(f.terms.back().sigma_class);
    }
    if (spec.method == "growth" || spec.method == "both") {
        const GrowthEstimate est =
            effective_size_growth_estimate(config, config.alpha, spec.t_max, spec.samples);
        out["w_x_estimate"] = est.w_x;
        out["t_max_used"] = est.t_max_used;
        out["fit_residual"] = est.fit_residual;
    }
    if (spec.method == "both") {
        out["difference"] =
            std::abs(out["w_x"].get<double>() - out["w_x_estimate"].get<double>());
    }
    if (spec.method != "symbolic" && spec.method != "growth" && spec.method != "both") {
        throw ValidationError("unknown method \"" + spec.method +
                              "\"; expected symbolic, growth, or both");
    }
    return out;
}

json run_exppoly(const ExperimentSpec&, const PointConfig& config) {
    const ExpPolynomial f = from_determinant(config);
    json terms = json::array();
    for (const ExpTerm& term : f.terms) {
        json coeff = json::array();
        for (const Complex& c : term.coeff.coefficients) {
            coeff.push_back(json::array({c.real(), c.imag()}));
        }
        terms.push_back(json{{"sigma", term.sigma},
                             {"sigma_class", sigma_class_json(term.sigma_class)},
                             {"coeff", coeff}});
    }
    json cancelled = json::array();
    for (const CancelledTerm& term : f.cancelled) {
        cancelled.push_back(json{{"sigma", term.sigma},
                                 {"sigma_class", sigma_class_json(term.sigma_class)},
                                 {"residual", term.residual}});
    }
    return json{{"alpha", config.alpha},
                {"point_count", f.point_count},
                {"terms", terms},
                {"cancelled", cancelled}};
}

json run_pseudo_orbits(const ExperimentSpec& spec, const PointConfig& config) {
    const auto buckets = enumerate_irreducible(config);
    json out = json::array();
    for (const auto& [m, orbits] : buckets) {
        if (spec.max_bonds >= 0 && m > spec.max_bonds) continue;
        json orbit_list = json::array();
        for (const PseudoOrbit& orbit_set : orbits) {
            json cycles = json::array();
            for (const PeriodicOrbit& orbit : orbit_set.orbits) {
                json cycle = json::array();
                for (const Bond& bond : orbit.bonds) cycle.push_back(bond.from + 1);
                cycles.push_back(cycle);
            }
            orbit_list.push_back(
                json{{"cycles", cycles}, {"total_length", orbit_set.total_length()}});
        }
        out.push_back(json{{"m", m}, {"count", orbits.size()}, {"orbits", orbit_list}});
    }
    return json{{"alpha", config.alpha}, {"buckets", out}};
}

const char* kind_name(ZeroKind kind) {
    switch (kind) {
        case ZeroKind::eigenvalue: return "eigenvalue";
        case ZeroKind::resonance: return "resonance";
        case ZeroKind::real_axis: return "real-axis";
    }
    return "unknown";
}

json run_resonances(const ExperimentSpec& spec, const PointConfig& config) {
    if (spec.rect.size() != 4) {
        throw ValidationError("resonances: --rect x0,x1,y0,y1 is required");
    }
    const Rect region{spec.rect[0], spec.rect[1], spec.rect[2], spec.rect[3]};
    const ExpPolynomial f = from_determinant(config);
    const std::vector<Zero> zeros = locate_zeros(f, config.alpha, region, spec.tol);
    json list = json::array();
    int total = 0;
    for (const Zero& z : zeros) {
        total += z.multiplicity;
        list.push_back(json{{"re", z.kappa.real()},
                            {"im", z.kappa.imag()},
                            {"multiplicity", z.multiplicity},
                            {"kind", kind_name(z.kind)},
                            {"polished", z.polished}});
    }
    return json{{"alpha", config.alpha},
                {"rect", spec.rect},
                {"count", total},
                {"zeros", list}};
}

std::string resonances_csv(const json& report) {
    std::ostringstream out;
    out << "re,im,multiplicity,kind\n";
    out.precision(17);
    for (const auto& z : report["zeros"]) {
        out << z["re"].get<double>() << "," << z["im"].get<double>() << ","
            << z["multiplicity"].get<int>() << "," << z["kind"].get<std::string>() << "\n";
    }
    return out.str();
}

json run_count(const ExperimentSpec& spec, const PointConfig& config) {
    const ExpPolynomial f = from_determinant(config);
    const DiscCount dc = count_zeros_disc_detail(f, config.alpha, spec.radius);
    return json{{"alpha", config.alpha},
                {"radius_requested", spec.radius},
                {"radius_used", dc.radius},
                {"count", dc.count}};
}

json run_slope(const ExperimentSpec& spec, const PointConfig& config) {
    const ExpPolynomial f = from_determinant(config);
    const CountingCurve curve = counting_curve(f, config.alpha, spec.rmax, spec.steps);
    const double w_x = effective_size(f);
    const double expected = w_x / std::numbers::pi;
    json samples = json::array();
    for (const CurveSample& s : curve.samples) {
        samples.push_back(json{{"radius", s.radius}, {"count", s.count}});
    }
    return json{{"alpha", config.alpha},
                {"slope", curve.slope},
                {"wx_over_pi", expected},
                {"relative_error", std::abs(curve.slope - expected) / expected},
                {"intercept", curve.intercept},
                {"fit_residual", curve.fit_residual},
                {"samples", samples}};
}

json run_verify(const ExperimentSpec& spec, const PointConfig& config) {
    const VerifyReport report = verify_config(config, spec.seed);
    json checks = json::array();
    for (const VerifyCheck& check : report.checks) {
        checks.push_back(json{{"name", check.name},
                              {"passed", check.passed},
                              {"residual", check.residual},
                              {"detail", check.detail}});
    }
    return json{{"seed", report.seed},
                {"v_x", report.v_x},
                {"w_x", report.w_x},
                {"non_weyl", report.non_weyl},
                {"checks", checks},
                {"passed", report.all_passed()}};
}

void emit(const ExperimentSpec& spec, const std::string& text) {
    if (spec.output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(spec.output_path);
    if (!out) throw IoError("cannot open output file: " + spec.output_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
    if (!out) throw IoError("failed writing to: " + spec.output_path);
}

int run(const ExperimentSpec& spec) {
    if (spec.task == "builder") {
        ExperimentSpec source = spec;
        if (source.builder.empty()) {
            throw ValidationError("builder: --name is required");
        }
        const PointConfig config = load_config(source);
        emit(spec, config_to_json(config).dump(2));
        return 0;
    }

    const PointConfig base = load_config(spec);
    std::vector<double> alphas = spec.alphas;
    if (alphas.empty()) alphas.push_back(base.alpha);

    if (spec.format == "csv" && spec.task != "resonances") {
        throw ValidationError("--format csv is only available for resonances");
    }
    if (spec.format == "csv" && alphas.size() != 1) {
        throw ValidationError("--format csv needs a single alpha");
    }

    bool verify_failed = false;
    json reports = json::array();
    for (const double alpha : alphas) {
        const PointConfig config = with_alpha(base, alpha);
        json report;
        if (spec.task == "size") {
            report = run_size(spec, config);
        } else if (spec.task == "effective-size") {
            report = run_effective_size(spec, config);
        } else if (spec.task == "exppoly") {
            report = run_exppoly(spec, config);
        } else if (spec.task == "pseudo-orbits") {
            report = run_pseudo_orbits(spec, config);
        } else if (spec.task == "resonances") {
            report = run_resonances(spec, config);
        } else if (spec.task == "count") {
            report = run_count(spec, config);
        } else if (spec.task == "slope") {
            report = run_slope(spec, config);
        } else if (spec.task == "verify") {
            report = run_verify(spec, config);
            if (!report["passed"].get<bool>()) verify_failed = true;
        } else {
            throw ValidationError("unknown task: " + spec.task);
        }
        reports.push_back(std::move(report));
    }

    if (spec.format == "csv") {
        emit(spec, resonances_csv(reports[0]));
    } else if (reports.size() == 1) {
        emit(spec, reports[0].dump(2));
    } else {
        emit(spec, reports.dump(2));
    }
    return verify_failed ? 3 : 0;
}

int emit_error(const char* code, const std::string& message, int exit_code) {
    const json err{{"error", {{"code", code}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
    return exit_code;
}

void add_source_options(CLI::App* cmd, ExperimentSpec& spec) {
    cmd->add_option("--config", spec.config_path, "JSON config file: {alpha, points}");
    cmd->add_option("--builder", spec.builder,
                    "canonical configuration: antipodal-sphere, sphere-center, nonweyl4");
    cmd->add_option("--m", spec.m, "sphere builders: half the sphere point count");
    cmd->add_option("--a", spec.a, "nonweyl4 parameter a");
    cmd->add_option("--b", spec.b, "nonweyl4 parameter b");
    cmd->add_option("--c", spec.c, "nonweyl4 parameter c");
    cmd->add_option("--alpha", spec.alphas,
                    "interaction strength override; repeat for one report per value");
    cmd->add_option("-o,--output", spec.output_path, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "reslab: resonances of three-dimensional point-interaction Schrodinger operators.\n"
        "Builds the resonance condition as an exponential polynomial, computes the\n"
        "size V_X and effective size W_X, and counts or locates complex resonances.\n"
        "Worker threads honor the RESLAB_THREADS environment variable."};
    app.require_subcommand(1);

    ExperimentSpec spec;

    CLI::App* size = app.add_subcommand("size", "size V_X and maximizing permutations");
    add_source_options(size, spec);
    size->add_flag("--brute-force", "exhaustive route (default; N <= 10)");
    size->add_flag("--assignment", spec.use_assignment, "polynomial-time assignment route");
    size->add_flag("--list-maximizers", spec.list_maximizers, "include every maximizer");

    CLI::App* wx = app.add_subcommand("effective-size", "effective size W_X");
    add_source_options(wx, spec);
    wx->add_option("--method", spec.method, "symbolic | growth | both")
        ->default_val("symbolic");
    wx->add_option("--t-max", spec.t_max, "growth route: fit horizon (0 = adaptive)");
    wx->add_option("--samples", spec.samples, "growth route: sample count")->default_val(64);

    CLI::App* poly = app.add_subcommand("exppoly", "exponential polynomial term list");
    add_source_options(poly, spec);

    CLI::App* orbits =
        app.add_subcommand("pseudo-orbits", "irreducible pseudo-orbits by bond count");
    add_source_options(orbits, spec);
    orbits->add_option("--max-bonds", spec.max_bonds, "omit buckets above this bond count");

    CLI::App* res = app.add_subcommand("resonances", "locate zeros in a rectangle");
    add_source_options(res, spec);
    res->add_option("--rect", spec.rect, "x0,x1,y0,y1")->delimiter(',')->expected(4);
    res->add_option("--tol", spec.tol, "localization tolerance")->default_val(1e-10);
    res->add_option("--format", spec.format, "json | csv")->default_val("json");

    CLI::App* count = app.add_subcommand("count", "zero count in the disc |kappa| < R");
    add_source_options(count, spec);
    count->add_option("--radius", spec.radius, "disc radius")->required();

    CLI::App* slope = app.add_subcommand("slope", "counting-function slope vs W_X/pi");
    add_source_options(slope, spec);
    slope->add_option("--rmax", spec.rmax, "largest radius")->required();
    slope->add_option("--steps", spec.steps, "radius grid size")->default_val(40);

    CLI::App* verify = app.add_subcommand("verify", "run every cross-check (N <= 7)");
    add_source_options(verify, spec);
    verify->add_option("--seed", spec.seed, "seed for the random test points");

    CLI::App* builder = app.add_subcommand("builder", "emit a canonical config as JSON");
    builder->add_option("--name", spec.builder, "antipodal-sphere | sphere-center | nonweyl4")
        ->required();
    builder->add_option("--m", spec.m, "sphere builders: half the sphere point count");
    builder->add_option("--a", spec.a, "nonweyl4 parameter a");
    builder->add_option("--b", spec.b, "nonweyl4 parameter b");
    builder->add_option("--c", spec.c, "nonweyl4 parameter c");
    builder->add_option("--alpha", spec.builder_alpha, "interaction strength")->default_val(0.0);
    builder->add_option("-o,--output", spec.output_path, "write the config here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return emit_error("validation", e.what(), 2);
    }

    spec.task = app.get_subcommands().front()->get_name();
    try {
        return run(spec);
    } catch (const ValidationError& e) {
        return emit_error("validation", e.what(), 2);
    } catch (const IoError& e) {
        return emit_error("io", e.what(), 4);
    } catch (const NumericError& e) {
        return emit_error("numeric", e.what(), 3);
    } catch (const std::exception& e) {
        return emit_error("internal", e.what(), 3);
    }
}
