#include "extremal/dyadic.hpp"
#include "extremal/enumeration.hpp"
#include "extremal/extremality.hpp"
#include "extremal/instance.hpp"
#include "extremal/json_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace extremal;

// Exit codes: 0 success, 1 --fail-if-not-extreme tripped, 2 invalid input,
// 3 resource budget or size cap exceeded. Nothing else.
constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kInvalidInput = 2;
constexpr int kBudgetExceeded = 3;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ReportContext {
    std::string command;
    std::vector<std::string> argv;
    bool pretty = false;
    Timer timer;
    std::optional<std::string> digest;
};

Json report_envelope(const ReportContext& ctx, Json result) {
    Json j;
    j["command"] = ctx.command;
    j["argv"] = ctx.argv;
    if (ctx.digest) j["instance_digest"] = *ctx.digest;
    j["timing_ms"] = ctx.timer.ms();
    j["result"] = std::move(result);
    return j;
}

void emit(const ReportContext& ctx, Json result) {
    const Json report = report_envelope(ctx, std::move(result));
    std::cout << (ctx.pretty ? report.dump(2) : report.dump()) << "\n";
}

int emit_error(const ReportContext& ctx, const std::string& message, int code,
               Json detail = Json::object()) {
    Json result = std::move(detail);
    result["error"] = message;
    emit(ctx, std::move(result));
    std::cerr << ctx.command << ": " << message << "\n";
    return code;
}

// Classifies every library error into the exit-code contract.
int run_guarded(ReportContext& ctx, const std::function<int()>& body) {
    try {
        return body();
    } catch (const BudgetExceededError& e) {
        return emit_error(ctx, e.what(), kBudgetExceeded,
                          Json{{"required_budget", e.required.str()}});
    } catch (const CapExceededError& e) {
        return emit_error(ctx, e.what(), kBudgetExceeded);
    } catch (const SizeCapExceededError& e) {
        return emit_error(ctx, e.what(), kBudgetExceeded);
    } catch (const CouplingValidationError& e) {
        return emit_error(ctx, e.what(), kInvalidInput,
                          Json{{"violations", violations_to_json(e.violations())}});
    } catch (const std::exception& e) {
        // Parse errors, strip errors, domain errors, bad parameters.
        return emit_error(ctx, e.what(), kInvalidInput);
    }
}

struct Prepared {
    Instance raw;
    Instance inst;  // stripped, re-indexed
    GroupClosure closure;
    OrbitDecomposition orbits;
    bool stripped;
};

Prepared prepare(const std::string& path, std::size_t group_cap) {
    Instance raw = parse_instance(read_file(path));
    StripOutcome stripped = strip_zero_mass(raw);
    GroupClosure closure =
        close_group(stripped.instance.generators, stripped.instance.n1, stripped.instance.n2,
                    group_cap);
    OrbitDecomposition orbits =
        decompose_orbits(stripped.instance.n1, stripped.instance.n2, closure);
    return Prepared{std::move(raw), std::move(stripped.instance), std::move(closure),
                    std::move(orbits), stripped.changed};
}

Json orbit_summary(const Prepared& prep) {
    Json j;
    j["group_order"] = prep.closure.size();
    j["m1"] = prep.orbits.m1();
    j["m2"] = prep.orbits.m2();
    j["m12"] = prep.orbits.m12();
    j["stripped"] = prep.stripped;
    return j;
}

int cmd_check(ReportContext& ctx, const std::string& path, std::size_t group_cap,
              bool fail_if_not_extreme) {
    Prepared prep = prepare(path, group_cap);
    ctx.digest = instance_digest(prep.raw);
    if (!prep.inst.omega)
        return emit_error(ctx, "instance has no omega; nothing to check", kInvalidInput);

    const std::vector<Violation> violations =
        check_coupling(*prep.inst.omega, prep.inst.mu1, prep.inst.mu2, prep.orbits);
    if (!violations.empty()) {
        Json result;
        result["valid"] = false;
        result["violations"] = violations_to_json(violations);
        result["orbits"] = orbit_summary(prep);
        emit(ctx, std::move(result));
        return kInvalidInput;
    }

    const Coupling c = make_coupling(*prep.inst.omega);
    const ExtremalityVerdict verdict = test_extreme(c, prep.orbits);
    Json result;
    result["valid"] = true;
    result["violations"] = Json::array();
    result["orbits"] = orbit_summary(prep);
    result["verdict"] = verdict_to_json(verdict);
    result["graphic"] = graphic_to_json(is_graphic(c));
    emit(ctx, std::move(result));
    return fail_if_not_extreme && !verdict.extreme ? kAssertionFailed : kOk;
}

int cmd_enumerate(ReportContext& ctx, const std::string& path, std::size_t group_cap,
                  std::uint64_t budget) {
    Prepared prep = prepare(path, group_cap);
    ctx.digest = instance_digest(prep.raw);

    const std::vector<Violation> violations =
        check_marginal_pair(prep.inst.mu1, prep.inst.mu2, prep.orbits);
    if (!violations.empty()) {
        Json result;
        result["valid"] = false;
        result["violations"] = violations_to_json(violations);
        emit(ctx, std::move(result));
        return kInvalidInput;
    }

    const VertexSet vs = enumerate_extreme(prep.inst.mu1, prep.inst.mu2, prep.orbits, budget);
    Json result;
    result["orbits"] = orbit_summary(prep);
    result["vertices"] = vertex_set_to_json(vs);
    result["support_bounds"] = support_bounds_to_json(check_support_bounds(vs, prep.orbits));
    result["support_uniqueness"] =
        support_uniqueness_to_json(check_support_uniqueness(vs));
    emit(ctx, std::move(result));
    return kOk;
}

int cmd_birkhoff(ReportContext& ctx, int m, std::uint64_t budget) {
    const BirkhoffReport report = verify_birkhoff(m, budget);
    emit(ctx, birkhoff_to_json(report));
    return kOk;
}

int cmd_orbits(ReportContext& ctx, const std::string& path, std::size_t group_cap) {
    Prepared prep = prepare(path, group_cap);
    ctx.digest = instance_digest(prep.raw);
    Json result = orbits_to_json(prep.orbits, prep.closure.size());
    result["stripped"] = prep.stripped;
    emit(ctx, std::move(result));
    return kOk;
}

int cmd_example34(ReportContext& ctx, const std::string& p_text, int depth, bool check) {
    const Rational p = Rational::parse(p_text);
    const DyadicSpec spec(p, depth);
    const Coupling c = truncated_coupling(spec);
    const Marginal mu = truncated_marginal(spec);

    Instance inst;
    inst.n1 = c.n1();
    inst.n2 = c.n2();
    inst.mu1 = mu;
    inst.mu2 = mu;
    inst.omega = c.matrix;

    if (!check) {
        // Bare instance JSON so the output pipes straight into `check`.
        const Json j = instance_to_json(inst);
        std::cout << (ctx.pretty ? j.dump(2) : j.dump()) << "\n";
        return kOk;
    }

    ctx.digest = instance_digest(inst);
    const OrbitDecomposition orbits = trivial_orbits(inst.n1, inst.n2);
    const ExtremalityVerdict verdict = test_extreme(c, orbits);
    Json result;
    result["instance"] = instance_to_json(inst);
    result["verdict"] = verdict_to_json(verdict);
    result["graphic"] = graphic_to_json(is_graphic(c));
    emit(ctx, std::move(result));
    return kOk;
}

int cmd_fp_eval(ReportContext& ctx, const std::string& p_text, double t, double tol) {
    const Rational p = Rational::parse(p_text);
    const double value = eval_fp(p, t, tol);
    Json result;
    result["p"] = p.str();
    result["t"] = t;
    result["tol"] = tol;
    result["value"] = value;
    emit(ctx, std::move(result));
    return kOk;
}

int cmd_fp_sample(ReportContext& ctx, const std::string& p_text, std::size_t count,
                  std::uint64_t seed, int depth, double tol, const std::string& out_path) {
    const Rational p = Rational::parse(p_text);
    const std::vector<SamplePair> samples = sample_transformed_pairs(p, count, seed, depth, tol);
    if (out_path.empty()) {
        write_samples_csv(std::cout, samples);
        return kOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return emit_error(ctx, "cannot write file: " + out_path, kInvalidInput);
    write_samples_csv(out, samples);
    Json result;
    result["p"] = p.str();
    result["count"] = count;
    result["seed"] = seed;
    result["sample_depth"] = depth;
    result["out"] = out_path;
    emit(ctx, std::move(result));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact extremality tests and vertex enumeration for group-invariant couplings"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string p_text;
    std::string out_path;
    std::size_t group_cap = kDefaultGroupCap;
    std::uint64_t budget = kDefaultEnumerationBudget;
    bool fail_if_not_extreme = false;
    bool pretty = false;
    bool with_check = false;
    int m = 0;
    int depth = 1;
    int sample_depth = 40;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    double t = 0.0;
    double tol = 1e-12;

    CLI::App* check = app.add_subcommand("check", "decide extremality of the instance's omega");
    check->add_option("instance", instance_path, "instance JSON file")->required();
    check->add_flag("--fail-if-not-extreme", fail_if_not_extreme,
                    "exit 1 when the verdict is not extreme");
    check->add_option("--group-cap", group_cap, "group closure size cap");
    check->add_flag("--pretty", pretty, "indent the report");

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "list all extreme points of the instance's polytope");
    enumerate->add_option("instance", instance_path, "instance JSON file")->required();
    enumerate->add_option("--budget", budget, "max restricted solves");
    enumerate->add_option("--group-cap", group_cap, "group closure size cap");
    enumerate->add_flag("--pretty", pretty, "indent the report");

    CLI::App* birkhoff = app.add_subcommand(
        "birkhoff", "enumerate uniform couplings on m points and verify the permutation form");
    birkhoff->add_option("m", m, "space size")->required()->check(CLI::PositiveNumber);
    birkhoff->add_option("--budget", budget, "max restricted solves");
    birkhoff->add_flag("--pretty", pretty, "indent the report");

    CLI::App* orbits_cmd = app.add_subcommand("orbits", "report the orbit decomposition");
    orbits_cmd->add_option("instance", instance_path, "instance JSON file")->required();
    orbits_cmd->add_option("--group-cap", group_cap, "group closure size cap");
    orbits_cmd->add_flag("--pretty", pretty, "indent the report");

    CLI::App* example34 = app.add_subcommand(
        "example34", "emit the two-point nongraphic coupling truncated to the given depth");
    example34->add_option("--p", p_text, "base parameter, rational in (0,1/2)")->required();
    example34->add_option("--depth", depth, "truncation depth (>= 1)");
    example34->add_flag("--check", with_check, "also run the extremality test on the output");
    example34->add_flag("--pretty", pretty, "indent the output");

    CLI::App* fp_eval = app.add_subcommand("fp-eval", "evaluate the digit-distribution CDF F_p");
    fp_eval->add_option("--p", p_text, "digit parameter, rational in (0,1)")->required();
    fp_eval->add_option("--t", t, "evaluation point in [0,1]")->required();
    fp_eval->add_option("--tol", tol, "truncation tolerance");

    CLI::App* fp_sample =
        app.add_subcommand("fp-sample", "sample transformed pairs (F_p(xi~), F_p(eta~)) as CSV");
    fp_sample->add_option("--p", p_text, "base parameter, rational in (0,1/2]")->required();
    fp_sample->add_option("--count", count, "number of pairs");
    fp_sample->add_option("--seed", seed, "generator seed");
    fp_sample->add_option("--depth", sample_depth, "digits per pair (>= 8)");
    fp_sample->add_option("--tol", tol, "F_p truncation tolerance");
    fp_sample->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    ReportContext ctx;
    ctx.pretty = pretty;
    for (int i = 0; i < argc; ++i) ctx.argv.push_back(argv[i]);

    if (app.got_subcommand(check)) {
        ctx.command = "check";
        return run_guarded(
            ctx, [&] { return cmd_check(ctx, instance_path, group_cap, fail_if_not_extreme); });
    }
    if (app.got_subcommand(enumerate)) {
        ctx.command = "enumerate";
        return run_guarded(ctx, [&] { return cmd_enumerate(ctx, instance_path, group_cap, budget); });
    }
    if (app.got_subcommand(birkhoff)) {
        ctx.command = "birkhoff";
        return run_guarded(ctx, [&] { return cmd_birkhoff(ctx, m, budget); });
    }
    if (app.got_subcommand(orbits_cmd)) {
        ctx.command = "orbits";
        return run_guarded(ctx, [&] { return cmd_orbits(ctx, instance_path, group_cap); });
    }
    if (app.got_subcommand(example34)) {
        ctx.command = "example34";
        return run_guarded(ctx, [&] { return cmd_example34(ctx, p_text, depth, with_check); });
    }
    if (app.got_subcommand(fp_eval)) {
        ctx.command = "fp-eval";
        return run_guarded(ctx, [&] { return cmd_fp_eval(ctx, p_text, t, tol); });
    }
    if (app.got_subcommand(fp_sample)) {
        ctx.command = "fp-sample";
        return run_guarded(ctx, [&] {
            return cmd_fp_sample(ctx, p_text, count, seed, sample_depth, tol, out_path);
        });
    }
    return kInvalidInput;  // unreachable: require_subcommand guarantees one branch
}
