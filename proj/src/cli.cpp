#include "reflectode/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflectode/analysis.hpp"
#include "reflectode/expr.hpp"
#include "reflectode/kernel.hpp"
#include "reflectode/nthorder.hpp"
#include "reflectode/oracle.hpp"
#include "reflectode/solver.hpp"

namespace reflectode::cli {
namespace {

using nlohmann::json;

// Shortest round-trip decimal form, locale-independent.
std::string fmt(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

// JSON value for a double; infinities become the strings "inf"/"-inf".
json jnum(double x) {
    if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
    return json(x);
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e)
        throw InvalidInputError(std::string("malformed number in ") + what + ": '" + s + "'");
    return v;
}

std::vector<double> linspace(double lo, double hi, long long n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

// --eval accepts "lo:hi:n" or a comma-separated point list.
std::vector<double> parse_eval_spec(const std::string& spec) {
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3)
            throw InvalidInputError("--eval range must be lo:hi:n");
        const double lo = parse_double(parts[0], "--eval");
        const double hi = parse_double(parts[1], "--eval");
        const long long n = std::llround(parse_double(parts[2], "--eval"));
        if (n < 2 || !(lo < hi))
            throw InvalidInputError("--eval range needs lo < hi and n >= 2");
        return linspace(lo, hi, n);
    }
    std::vector<double> pts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) pts.push_back(parse_double(tok, "--eval"));
    if (pts.empty()) throw InvalidInputError("--eval needs at least one point");
    return pts;
}

json degenerate_json(const DegenerateSet& d) {
    switch (d.kind) {
    case DegenerateSet::Kind::Empty: return {{"kind", "empty"}};
    case DegenerateSet::Kind::Single: return {{"kind", "single"}, {"point", d.base}};
    case DegenerateSet::Kind::Progression:
        return {{"kind", "progression"}, {"base", d.base}, {"spacing", d.spacing}};
    }
    return {};
}

json thresholds_json(const std::vector<std::pair<std::string, double>>& ts) {
    json out = json::object();
    for (const auto& [name, value] : ts) out[name] = jnum(value);
    return out;
}

const char* sign_name(SignKind s) {
    switch (s) {
    case SignKind::Positive: return "positive";
    case SignKind::Negative: return "negative";
    case SignKind::Zero: return "zero";
    }
    return "?";
}

json report_json(const SignReport& rep) {
    json tris = json::object();
    for (const TriangleSign& t : rep.triangles) {
        tris[t.triangle] = {{"sign", sign_name(t.sign)},
                            {"conditional", t.conditional},
                            {"window", json::array({jnum(t.win_lo), jnum(t.win_hi)})}};
    }
    return {{"case", to_string(rep.kase.tag)},
            {"omega", rep.kase.omega},
            {"strip", {{"sign", rep.strip.sign > 0 ? "nonnegative" : "nonpositive"},
                       {"lo", jnum(rep.strip.lo)},
                       {"hi", jnum(rep.strip.hi)}}},
            {"triangles", tris},
            {"thresholds", thresholds_json(rep.thresholds)}};
}

// Problem assembly: file fields (if any) overridden by explicit flags.
struct ProblemArgs {
    std::optional<double> a, b, t0, c;
    std::optional<std::string> h_text;
    std::optional<std::pair<double, double>> window;
};

void merge_file(ProblemArgs& args, const std::string& path) {
    json doc;
    if (path == "-") {
        try {
            doc = json::parse(std::cin);
        } catch (const json::exception& e) {
            throw InvalidInputError(std::string("problem file (stdin): ") + e.what());
        }
    } else {
        std::ifstream in(path);
        if (!in) throw InvalidInputError("cannot open problem file: " + path);
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw InvalidInputError("problem file " + path + ": " + e.what());
        }
    }
    if (!doc.is_object()) throw InvalidInputError("problem file must hold a JSON object");
    auto num = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        if (!doc[key].is_number())
            throw InvalidInputError(std::string("problem file field '") + key +
                                    "' must be a number");
        return doc[key].get<double>();
    };
    if (!args.a) args.a = num("a");
    if (!args.b) args.b = num("b");
    if (!args.t0) args.t0 = num("t0");
    if (!args.c) args.c = num("c");
    if (!args.h_text && doc.contains("h")) {
        if (!doc["h"].is_string())
            throw InvalidInputError("problem file field 'h' must be a string expression");
        args.h_text = doc["h"].get<std::string>();
    }
    if (!args.window && doc.contains("window")) {
        const json& w = doc["window"];
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw InvalidInputError("problem file field 'window' must be [lo, hi]");
        args.window = std::make_pair(w[0].get<double>(), w[1].get<double>());
    }
}

ProblemSpec build_problem(const ProblemArgs& args) {
    if (!args.a || !args.b) throw InvalidInputError("missing coefficients --a/--b");
    if (!args.h_text) throw InvalidInputError("missing forcing --h");
    ProblemSpec p;
    p.coeffs = {*args.a, *args.b};
    p.t0 = args.t0.value_or(0.0);
    p.c = args.c.value_or(0.0);
    p.h = parse_forcing(*args.h_text).forcing();
    return p;
}

std::vector<double> eval_points(const std::optional<std::string>& eval_spec,
                                const std::optional<std::pair<double, double>>& window) {
    if (eval_spec) return parse_eval_spec(*eval_spec);
    if (window) {
        if (!(window->first < window->second))
            throw InvalidInputError("window must satisfy lo < hi");
        return linspace(window->first, window->second, 101);
    }
    throw InvalidInputError("no evaluation points: pass --eval or a file window");
}

void print_csv_tu(const std::vector<double>& ts, const std::vector<double>& us,
                  const char* ucol) {
    std::string out = "t,";
    out += ucol;
    out += '\n';
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out += fmt(ts[i]);
        out += ',';
        out += fmt(us[i]);
        out += '\n';
    }
    std::cout << out;
}

int run_impl(int argc, const char* const* argv) {
    CLI::App app{"Solver and analysis toolkit for u'(t) + a*u(-t) + b*u(t) = h(t)"};
    // Long-form help only: the default -h short flag would collide with the
    // --h forcing option on the solve-family subcommands.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    double default_tol = kDefaultQuadTol;
    if (const char* env = std::getenv("REFLECTODE_TOL")) {
        default_tol = parse_double(env, "REFLECTODE_TOL");
        if (!(default_tol > 0.0))
            throw InvalidInputError("REFLECTODE_TOL must be positive");
    }

    // --- classify ---
    auto* sc_classify = app.add_subcommand("classify", "Classify the coefficient regime");
    double cl_a = 0.0, cl_b = 0.0, cl_tol = kClassifyTol;
    sc_classify->add_option("--a", cl_a, "reflection coefficient")->required();
    sc_classify->add_option("--b", cl_b, "identity coefficient")->required();
    sc_classify->add_option("--tol", cl_tol, "classification tolerance");

    // --- green ---
    auto* sc_green = app.add_subcommand("green", "Tabulate the Green's function");
    double gr_a = 0.0, gr_b = 0.0;
    double gr_tmin = -1.0, gr_tmax = 1.0, gr_smin = -1.0, gr_smax = 1.0;
    std::size_t gr_n = 2;
    sc_green->add_option("--a", gr_a)->required();
    sc_green->add_option("--b", gr_b)->required();
    sc_green->add_option("--tmin", gr_tmin)->required();
    sc_green->add_option("--tmax", gr_tmax)->required();
    sc_green->add_option("--smin", gr_smin)->required();
    sc_green->add_option("--smax", gr_smax)->required();
    sc_green->add_option("--n", gr_n, "grid points per axis")->required();

    // --- shared problem options ---
    auto add_problem_opts = [](CLI::App* sc, ProblemArgs& args, std::string& file) {
        sc->add_option_function<double>("--a", [&args](double v) { args.a = v; },
                                        "reflection coefficient");
        sc->add_option_function<double>("--b", [&args](double v) { args.b = v; },
                                        "identity coefficient");
        sc->add_option_function<double>("--t0", [&args](double v) { args.t0 = v; },
                                        "initial time");
        sc->add_option_function<double>("--c", [&args](double v) { args.c = v; },
                                        "initial value");
        sc->add_option_function<std::string>(
            "--h", [&args](std::string v) { args.h_text = std::move(v); },
            "forcing expression");
        sc->add_option("--file", file, "problem file (JSON), '-' for stdin");
    };

    // --- solve ---
    auto* sc_solve = app.add_subcommand("solve", "Solve the initial-value problem");
    ProblemArgs so_args;
    std::string so_file, so_eval;
    double so_tol = default_tol;
    add_problem_opts(sc_solve, so_args, so_file);
    sc_solve->add_option("--eval", so_eval, "points: 'lo:hi:n' or 'x1,x2,...'");
    sc_solve->add_option("--tol", so_tol, "quadrature tolerance");

    // --- region ---
    auto* sc_region = app.add_subcommand("region", "Sign report for the Green's function");
    double rg_a = 0.0, rg_b = 0.0;
    sc_region->add_option("--a", rg_a)->required();
    sc_region->add_option("--b", rg_b)->required();

    // --- validate ---
    auto* sc_validate = app.add_subcommand("validate", "Cross-check solver against an oracle");
    ProblemArgs va_args;
    std::string va_file, va_method = "shooting";
    double va_T = 3.0, va_step = 1e-3, va_tol = default_tol;
    double va_max_sup = 1e-5, va_max_res = 1e-4;
    int va_points = 2001;
    add_problem_opts(sc_validate, va_args, va_file);
    sc_validate->add_option("--T", va_T, "oracle half-window");
    sc_validate->add_option("--step", va_step, "shooting step");
    sc_validate->add_option("--method", va_method, "shooting | collocation")
        ->check(CLI::IsMember({"shooting", "collocation"}));
    sc_validate->add_option("--points", va_points, "collocation grid size (odd)");
    sc_validate->add_option("--max-sup", va_max_sup, "pass threshold on sup error");
    sc_validate->add_option("--max-residual", va_max_res, "pass threshold on residual");
    sc_validate->add_option("--tol", va_tol, "quadrature tolerance");

    // --- nsolve ---
    auto* sc_nsolve = app.add_subcommand("nsolve", "n-th order constructive solve");
    ProblemArgs ns_args;
    std::string ns_file, ns_eval, ns_hyp = "h1";
    int ns_n = 1;
    double ns_tol = default_tol;
    add_problem_opts(sc_nsolve, ns_args, ns_file);
    sc_nsolve->add_option("--n", ns_n, "equation order (built-in aux requires 1)");
    sc_nsolve->add_option("--hyp", ns_hyp, "hypothesis: h1 | h2 | h3")
        ->check(CLI::IsMember({"h1", "h2", "h3"}));
    sc_nsolve->add_option("--eval", ns_eval, "points: 'lo:hi:n' or 'x1,x2,...'");
    sc_nsolve->add_option("--tol", ns_tol, "quadrature tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    }

    if (sc_classify->parsed()) {
        const Coefficients coeffs{cl_a, cl_b};
        const CaseClass k = classify(coeffs, cl_tol);
        const SignReport rep = sign_report(cl_a, cl_b);
        json out = {{"case", to_string(k.tag)},
                    {"omega", k.omega},
                    {"degenerate_t0", degenerate_json(degenerate_t0(cl_a, cl_b))},
                    {"thresholds", thresholds_json(rep.thresholds)}};
        std::cout << out.dump() << '\n';
        return 0;
    }

    if (sc_green->parsed()) {
        const GreenKernel g(Coefficients{gr_a, gr_b});
        const GreenGrid grid = green_grid(g, gr_tmin, gr_tmax, gr_smin, gr_smax, gr_n);
        std::string out = "t,s,G\n";
        for (std::size_t i = 0; i < grid.t.size(); ++i)
            for (std::size_t j = 0; j < grid.s.size(); ++j) {
                out += fmt(grid.t[i]);
                out += ',';
                out += fmt(grid.s[j]);
                out += ',';
                out += fmt(grid.values[i * grid.s.size() + j]);
                out += '\n';
            }
        std::cout << out;
        return 0;
    }

    if (sc_solve->parsed()) {
        if (!so_file.empty()) merge_file(so_args, so_file);
        const ProblemSpec p = build_problem(so_args);
        const std::vector<double> pts =
            eval_points(so_eval.empty() ? std::nullopt : std::optional(so_eval),
                        so_args.window);
        const Solution sol = solve(p, so_tol);
        std::vector<double> us(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) us[i] = sol(pts[i]);
        print_csv_tu(pts, us, "u");
        json side = {{"lambda", sol.lambda()},
                     {"ubar_t0", sol.ubar_t0()},
                     {"case", to_string(sol.kase().tag)}};
        std::cerr << side.dump() << '\n';
        return 0;
    }

    if (sc_region->parsed()) {
        std::cout << report_json(sign_report(rg_a, rg_b)).dump() << '\n';
        return 0;
    }

    if (sc_validate->parsed()) {
        if (!va_file.empty()) merge_file(va_args, va_file);
        const ProblemSpec p = build_problem(va_args);
        const Solution sol = solve(p, va_tol);
        auto cand = [&sol](double t) { return sol(t); };
        GridSolution oracle;
        if (va_method == "shooting") {
            oracle = shooting_solve(p, va_T, va_step);
        } else {
            const CollocationResult cr = collocation_solve(p, va_T, va_points);
            oracle.t = cr.t;
            oracle.u = cr.u;
        }
        const OracleResult res = compare(oracle, cand, p);
        const bool pass = res.sup_error <= va_max_sup && res.residual_sup <= va_max_res;
        json out = {{"sup_error", res.sup_error},
                    {"residual_sup", res.residual_sup},
                    {"pass", pass}};
        std::cout << out.dump() << '\n';
        return 0;
    }

    if (sc_nsolve->parsed()) {
        if (!ns_file.empty()) merge_file(ns_args, ns_file);
        if (ns_n != 1)
            throw InvalidInputError("nsolve: no built-in auxiliary pair for n != 1");
        if (!ns_args.a || !ns_args.b)
            throw InvalidInputError("missing coefficients --a/--b");
        if (!ns_args.h_text) throw InvalidInputError("missing forcing --h");
        const Coefficients coeffs{*ns_args.a, *ns_args.b};
        const Forcing h = parse_forcing(*ns_args.h_text).forcing();
        NthProblem np(1, {*ns_args.a, 0.0}, {*ns_args.b, 1.0}, h,
                      ns_args.t0.value_or(0.0), ns_args.c.value_or(0.0));
        const AuxPair aux = first_order_aux(coeffs, classify(coeffs));
        const Hypothesis hyp = ns_hyp == "h1" ? Hypothesis::H1
                               : ns_hyp == "h2" ? Hypothesis::H2
                                                : Hypothesis::H3;
        const NthSolution sol = construct(np, aux, hyp, ns_tol);
        const std::vector<double> pts =
            eval_points(ns_eval.empty() ? std::nullopt : std::optional(ns_eval),
                        ns_args.window);
        std::vector<double> us(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) us[i] = sol(pts[i]);
        print_csv_tu(pts, us, "u");
        json side = {{"hypothesis", ns_hyp},
                     {"case", to_string(classify(coeffs).tag)}};
        std::cerr << side.dump() << '\n';
        return 0;
    }

    return 0;
}

void emit_error(const std::string& type, const std::string& msg) {
    json out = {{"error", msg}, {"type", type}};
    std::cerr << out.dump() << '\n';
}

} // namespace

int run(int argc, const char* const* argv) {
    try {
        return run_impl(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;
        emit_error("usage", e.what());
        return 1;
    } catch (const NonUniqueError& e) {
        emit_error("nonunique-problem", e.what());
        return 2;
    } catch (const ParseError& e) {
        json out = {{"error", e.what()}, {"type", "parse-error"}, {"offset", e.offset()}};
        std::cerr << out.dump() << '\n';
        return 1;
    } catch (const QuadratureError& e) {
        emit_error("quadrature-failure", e.what());
        return 1;
    } catch (const HypothesisError& e) {
        emit_error("hypothesis-violated", e.what());
        return 1;
    } catch (const InvalidInputError& e) {
        emit_error("invalid-input", e.what());
        return 1;
    } catch (const Error& e) {
        emit_error("error", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}

} // namespace reflectode::cli
