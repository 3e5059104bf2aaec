// enrichfp command-line tool.
//
//   enrichfp [--config FILE] <run|verify-contraction|verify-cclass|sweep|list-problems|list-triples> [flags]
//
// Exit codes: 0 converged / satisfied / expectations met, 2 max iterations
// exceeded, 3 certificate violated or expectation mismatch, 4 diverged,
// 64 configuration error, 1 any other runtime failure.

#include <enrichfp/enrichfp.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace enrichfp;

constexpr int kOk = 0;
constexpr int kNotConverged = 2;
constexpr int kViolated = 3;
constexpr int kDiverged = 4;
constexpr int kConfigError = 64;
constexpr int kRuntimeError = 1;

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidConfig("not a number: '" + item + "'");
        }
    }
    return out;
}

Point parse_point(const std::string& s, std::size_t dim)
{
    auto xs = parse_list(s);
    if (xs.size() == 1 && dim > 1) xs.assign(dim, xs.front());
    if (xs.size() != dim) {
        throw InvalidConfig("start point has " + std::to_string(xs.size()) + " coordinates, problem has " +
                            std::to_string(dim));
    }
    return Point(std::span<const double>(xs));
}

// Writes to `path`, or to stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidConfig("cannot open '" + path + "' for writing");
    write(out);
}

int status_code(Status s)
{
    switch (s) {
    case Status::Converged: return kOk;
    case Status::MaxIterExceeded: return kNotConverged;
    case Status::Diverged: return kDiverged;
    }
    return kRuntimeError;
}

struct RunArgs {
    std::string problem;
    std::string scheme = "schaefer";
    std::optional<double> delta;
    std::optional<double> c;
    double tol = 1e-9;
    std::size_t max_iter = 100000;
    double divergence_bound = 1e12;
    std::string norm = "l2";
    std::string start;
    std::string trace;
    std::string summary = "-";
    bool no_coords = false;
};

SolverConfig solver_config(const ProblemInstance& p, Scheme scheme, std::optional<double> delta, std::optional<double> c,
                           double tol, std::size_t max_iter, double bound, const std::string& norm,
                           const std::string& start)
{
    constexpr double kDefaultC = 0.5;
    SolverConfig cfg;
    cfg.scheme = scheme;
    if (delta) {
        cfg.delta = delta;
        cfg.c = SolverConfig::c_from_delta(*delta);
    } else {
        cfg.c = scheme == Scheme::Picard ? 1.0 : c.value_or(kDefaultC);
    }
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.divergence_bound = bound;
    cfg.norm = parse_norm(norm);
    cfg.seed_point = start.empty() ? p.start : parse_point(start, p.f.dim());
    cfg.validate();
    return cfg;
}

IterationTrace solve(const ProblemInstance& p, const SolverConfig& cfg)
{
    if (cfg.scheme == Scheme::JungckSchaefer) {
        if (!p.pair) throw InvalidConfig("problem '" + p.name + "' has no S mapping; jungck-schaefer needs a pair");
        return run_jungck_schaefer(*p.pair, cfg);
    }
    return run(p.f, cfg);
}

int cmd_run(const RunArgs& a)
{
    const auto p = find_problem(a.problem);
    const auto cfg = solver_config(p, parse_scheme(a.scheme), a.delta, a.c, a.tol, a.max_iter, a.divergence_bound,
                                   a.norm, a.start);
    const auto tr = solve(p, cfg);
    if (!a.trace.empty()) emit(a.trace, [&](std::ostream& os) { io::write_trace_csv(os, tr, !a.no_coords); });
    emit(a.summary, [&](std::ostream& os) { io::write_summary(os, tr, cfg, {p.name, a.delta, std::nullopt}); });
    return status_code(tr.status);
}

struct VerifyArgs {
    std::string problem;
    std::string variant = "hr";
    double delta = 0.0;
    std::array<double, 5> c{};
    std::string sum_mode; // empty: implied by the variant
    std::string triple = "example-2.5-monotone";
    std::optional<double> box_lo;
    std::optional<double> box_hi;
    std::uint64_t seed = 0;
    std::size_t pairs = 1000;
    double tol = 1e-9;
    std::string norm = "l2";
    unsigned workers = 1;
    std::string report = "-";
};

int cmd_verify_contraction(const VerifyArgs& a)
{
    const auto p = find_problem(a.problem);
    const VariantTag tag = parse_variant(a.variant);

    SumMode mode = required_sum_mode(tag);
    if (!a.sum_mode.empty()) {
        if (a.sum_mode == "strict") mode = SumMode::StrictlyLessOne;
        else if (a.sum_mode == "one") mode = SumMode::ExactlyOne;
        else throw InvalidConfig("unknown sum mode '" + a.sum_mode + "' (expected strict or one)");
        if (mode != required_sum_mode(tag)) {
            throw InvalidConfig(std::string("variant ") + to_string(tag) + " requires sum mode " +
                                to_string(required_sum_mode(tag)));
        }
    }
    Coefficients k{a.delta, a.c, mode};
    try {
        k.validate();
    } catch (const InvalidInput& e) {
        throw InvalidConfig(e.what());
    }

    ContractionVariant v;
    v.tag = tag;
    if (is_cclass(tag)) v.triple = find_triple(a.triple).triple;
    if (is_jungck(tag)) {
        if (!p.pair) throw InvalidConfig("problem '" + p.name + "' has no S mapping; Jungck variants need a pair");
        v.s_map = p.pair->s;
    }

    PairSampler sampler;
    sampler.box = p.box;
    if (a.box_lo) sampler.box.lo.setConstant(*a.box_lo);
    if (a.box_hi) sampler.box.hi.setConstant(*a.box_hi);
    sampler.seed = a.seed;
    sampler.random_pairs = a.pairs;

    const auto cert = certify(v, p.f, k, sampler, parse_norm(a.norm), a.tol, a.workers);
    emit(a.report, [&](std::ostream& os) { os << io::to_json(cert, p.name, sampler.box).dump(2) << '\n'; });
    for (const auto& w : cert.warnings) std::cerr << "warning: " << w << '\n';
    return cert.satisfied() ? kOk : kViolated;
}

struct CClassArgs {
    std::string triple;
    double grid_max = 10.0;
    std::size_t line_points = 1001;
    std::size_t square_points = 101;
    double jump = 1.0;
    double tol = 1e-9;
    std::string report = "-";
};

int cmd_verify_cclass(const CClassArgs& a)
{
    const auto bt = find_triple(a.triple);
    TripleGrids grids;
    grids.line.max = a.grid_max;
    grids.line.points = a.line_points;
    grids.line.jump_threshold = a.jump;
    grids.square.max = a.grid_max;
    grids.square.points_per_axis = a.square_points;
    grids.square.jump_threshold = a.jump;

    const auto r = validate_triple(bt.triple, grids, a.tol);
    const bool matched = r.components_valid() == bt.expect_components_valid && r.monotone.kind == bt.expect_monotone;

    nlohmann::ordered_json j;
    j["triple"] = bt.name;
    j["description"] = bt.description;
    j["psi"] = io::to_json(r.psi);
    j["phi"] = io::to_json(r.phi);
    j["g"] = io::to_json(r.g);
    j["monotone"] = io::to_json(r.monotone);
    j["expected"] = {{"components_valid", bt.expect_components_valid}, {"monotone", to_string(bt.expect_monotone)}};
    j["matched"] = matched;
    emit(a.report, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return matched ? kOk : kViolated;
}

struct SweepArgs {
    std::string problem;
    std::string scheme = "schaefer";
    std::string c_values;
    double tol = 1e-9;
    std::size_t max_iter = 100000;
    std::string start;
    std::string norm = "l2";
    std::string out = "-";
};

int cmd_sweep(const SweepArgs& a)
{
    const auto p = find_problem(a.problem);
    const auto cs = parse_list(a.c_values);
    if (cs.empty()) throw InvalidConfig("sweep needs at least one c value");
    const Scheme scheme = parse_scheme(a.scheme);
    if (scheme == Scheme::Picard) throw InvalidConfig("sweep varies c; use schaefer or jungck-schaefer");
    std::vector<io::SweepRow> rows;
    for (double c : cs) {
        if (!(c > 0.0 && c <= 1.0)) throw InvalidConfig("c values must lie in (0, 1]");
        const auto cfg = solver_config(p, scheme, std::nullopt, c, a.tol, a.max_iter, 1e12, a.norm, a.start);
        const auto tr = solve(p, cfg);
        rows.push_back({c, tr.iterations(), tr.status, tr.final_residual()});
    }
    emit(a.out, [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
    return kOk;
}

int cmd_list_problems()
{
    for (const auto& p : builtin_problems()) {
        std::cout << p.name << "\tdim=" << p.f.dim() << "\t" << p.description << '\n';
    }
    std::cout << "random-affine:DIM:CAP:SEED\tseeded affine contraction with operator-norm bound CAP\n";
    return kOk;
}

int cmd_list_triples()
{
    for (const auto& t : builtin_triples()) {
        std::cout << t.name << "\texpected=" << to_string(t.expect_monotone) << "\t" << t.description << '\n';
    }
    return kOk;
}

// Pulls "--config FILE" out of argv and appends every "key = value" entry as
// "--key value" unless the same flag was given on the command line.
std::vector<std::string> expand_config(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config" && std::next(it) != args.end()) {
            path = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot read config file '" + path + "'");
    const auto items = CLI::ConfigINI().from_config(in);
    for (const auto& item : items) {
        const std::string flag = "--" + item.name;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given || item.inputs.empty()) continue;
        std::string value;
        for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
        if (value == "true") {
            args.push_back(flag);
        } else if (value != "false") {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Averaged fixed-point iterations and enriched contraction certificates"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.footer("Any subcommand accepts --config FILE with 'key = value' lines; keys are long flag names.");

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run a fixed-point scheme on a problem");
    run->add_option("--problem", ra.problem, "Problem name or random-affine:DIM:CAP:SEED")->required();
    run->add_option("--scheme", ra.scheme, "picard | schaefer | jungck-schaefer")->capture_default_str();
    auto* d_opt = run->add_option("--delta", ra.delta, "Enrichment delta; sets c = 1/(1+delta)");
    run->add_option("--c", ra.c, "Averaging parameter in (0, 1] (default 0.5)")->excludes(d_opt);
    run->add_option("--tol", ra.tol, "Residual threshold")->capture_default_str();
    run->add_option("--max-iter", ra.max_iter)->capture_default_str();
    run->add_option("--divergence-bound", ra.divergence_bound)->capture_default_str();
    run->add_option("--norm", ra.norm, "l1 | l2 | linf")->capture_default_str();
    run->add_option("--start", ra.start, "Comma-separated start point (default: the problem's)");
    run->add_option("--trace", ra.trace, "Trace CSV path ('-' for stdout)");
    run->add_option("--summary", ra.summary, "Summary path ('-' for stdout)")->capture_default_str();
    run->add_flag("--no-coords", ra.no_coords, "Omit coordinate columns from the trace");

    VerifyArgs va;
    auto* vc = app.add_subcommand("verify-contraction", "Certify a contraction condition over sampled pairs");
    vc->add_option("--problem", va.problem)->required();
    vc->add_option("--variant", va.variant, "hr | jungck-hr | cclass-hr | cclass-jungck-hr")->capture_default_str();
    vc->add_option("--delta", va.delta)->capture_default_str();
    for (int i = 0; i < 5; ++i) vc->add_option("--c" + std::to_string(i + 1), va.c[static_cast<std::size_t>(i)]);
    vc->add_option("--sum-mode", va.sum_mode, "strict | one (default: implied by the variant)");
    vc->add_option("--triple", va.triple, "Triple for C-class variants")->capture_default_str();
    vc->add_option("--box-lo", va.box_lo, "Lower box bound for every coordinate");
    vc->add_option("--box-hi", va.box_hi, "Upper box bound for every coordinate");
    vc->add_option("--seed", va.seed)->capture_default_str();
    vc->add_option("--pairs", va.pairs, "Number of random pairs")->capture_default_str();
    vc->add_option("--tol", va.tol)->capture_default_str();
    vc->add_option("--norm", va.norm)->capture_default_str();
    vc->add_option("--workers", va.workers)->capture_default_str();
    vc->add_option("--report", va.report)->capture_default_str();

    CClassArgs ca;
    auto* vcc = app.add_subcommand("verify-cclass", "Validate a (psi, phi, G) triple on sampling grids");
    vcc->add_option("--triple", ca.triple)->required();
    vcc->add_option("--grid-max", ca.grid_max)->capture_default_str();
    vcc->add_option("--line-points", ca.line_points)->capture_default_str();
    vcc->add_option("--square-points", ca.square_points)->capture_default_str();
    vcc->add_option("--jump", ca.jump, "Continuity jump threshold")->capture_default_str();
    vcc->add_option("--tol", ca.tol)->capture_default_str();
    vcc->add_option("--report", ca.report)->capture_default_str();

    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "Run one scheme across several values of c");
    sw->add_option("--problem", sa.problem)->required();
    sw->add_option("--scheme", sa.scheme)->capture_default_str();
    sw->add_option("--c-values", sa.c_values, "Comma-separated values in (0, 1]")->required();
    sw->add_option("--tol", sa.tol)->capture_default_str();
    sw->add_option("--max-iter", sa.max_iter)->capture_default_str();
    sw->add_option("--start", sa.start);
    sw->add_option("--norm", sa.norm)->capture_default_str();
    sw->add_option("--out", sa.out)->capture_default_str();

    auto* lp = app.add_subcommand("list-problems", "List built-in problems");
    auto* lt = app.add_subcommand("list-triples", "List built-in C-class triples");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    } catch (const enrichfp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*run) return cmd_run(ra);
        if (*vc) return cmd_verify_contraction(va);
        if (*vcc) return cmd_verify_cclass(ca);
        if (*sw) return cmd_sweep(sa);
        if (*lp) return cmd_list_problems();
        if (*lt) return cmd_list_triples();
    } catch (const InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidInput& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kRuntimeError;
}
