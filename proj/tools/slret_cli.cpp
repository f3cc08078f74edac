// Command-line front end: eigenvalue search, characteristic-function scans,
// eigenfunction tables, asymptotic comparison and shooting-vs-integral-
// equation verification, all emitting CSV.
//
// Exit codes: 0 success, 2 usage or validation failure, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slret/asym.hpp"
#include "slret/charfn.hpp"
#include "slret/csv.hpp"
#include "slret/errors.hpp"
#include "slret/ode.hpp"
#include "slret/picard.hpp"
#include "slret/problem.hpp"

namespace {

using slret::fmt_double;
using slret::problem::Side;
using slret::problem::ValidatedProblem;

struct RunConfig {
    std::string problem_path;
    std::string out_path;
    double lmin = 0.0;
    double lmax = 0.0;
    double step = 0.0;  // 0 = default (min branch spacing / 8)
    double h = 0.0;     // 0 = default per problem
    double tol = slret::charfn::kDefaultTolLambda;
    int n = 8;
    double lambda = 0.0;
    int grid = 2048;
    int iters = 30;
    int xsamples = 512;
};

double pick_h(const ValidatedProblem& vp, double user_h) {
    if (user_h > 0.0) return user_h;
    return std::min(slret::ode::default_step(vp, Side::left),
                    slret::ode::default_step(vp, Side::right));
}

double pick_step(const ValidatedProblem& vp, double user_step) {
    if (user_step > 0.0) return user_step;
    return slret::charfn::default_scan_step(vp);
}

// Output sink: file when --out was given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_solve(const RunConfig& cfg) {
    const ValidatedProblem vp = slret::problem::validate(slret::problem::load(cfg.problem_path));
    const double h = pick_h(vp, cfg.h);
    const double step = pick_step(vp, cfg.step);
    const auto found = slret::charfn::find_roots(vp, cfg.lmin, cfg.lmax, step, h, cfg.tol);
    for (const auto& w : found.warnings) std::cerr << "warning: " << w << "\n";
    for (double ls : found.unresolved_near_singular)
        std::cerr << "warning: unresolved near singularity at lambda=" << fmt_double(ls)
                  << " (excluded from eigenvalues)\n";
    Sink sink(cfg.out_path);
    slret::charfn::export_roots_csv(found.roots, sink.stream());
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    const ValidatedProblem vp = slret::problem::validate(slret::problem::load(cfg.problem_path));
    const double h = pick_h(vp, cfg.h);
    if (!(cfg.step > 0.0)) throw std::invalid_argument("scan requires --step > 0");
    const auto samples = slret::charfn::scan(vp, cfg.lmin, cfg.lmax, cfg.step, h);
    Sink sink(cfg.out_path);
    slret::charfn::export_scan_csv(samples, sink.stream());
    return 0;
}

int cmd_eigfun(const RunConfig& cfg) {
    const ValidatedProblem vp = slret::problem::validate(slret::problem::load(cfg.problem_path));
    const double h = pick_h(vp, cfg.h);
    if (cfg.xsamples < 2) throw std::invalid_argument("--xsamples must be >= 2");
    const auto sol = slret::ode::solve(vp, cfg.lambda, h);
    if (sol.left.degenerate_init())
        std::cerr << "warning: initial state is (0,0); the solution is identically zero\n";

    const double a = vp.spec().a, c = vp.spec().c, b = vp.spec().b;
    const double tiny = 1e-12 * (b - a);
    Sink sink(cfg.out_path);
    std::ostream& out = sink.stream();
    out << "x,u,du\n";
    auto emit = [&](double x, slret::ode::State s) {
        out << fmt_double(x) << ',' << fmt_double(s.u) << ',' << fmt_double(s.du) << '\n';
    };
    bool c_done = false;
    for (int i = 0; i < cfg.xsamples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / (cfg.xsamples - 1);
        if (!c_done && x >= c - tiny) {
            // both one-sided limits at the interface, left then right
            emit(c, sol.left.at(c));
            emit(c, slret::ode::solution_right_limit_at_c(sol));
            c_done = true;
            if (std::fabs(x - c) <= tiny) continue;
        }
        emit(x, slret::ode::eval_solution(sol, x));
    }
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const ValidatedProblem vp = slret::problem::validate(slret::problem::load(cfg.problem_path));
    const double h = pick_h(vp, cfg.h);
    const auto report = slret::asym::compare(vp, cfg.n, h);
    Sink sink(cfg.out_path);
    slret::asym::export_report_csv(report, sink.stream());
    if (report.degenerate_leading)
        std::cout << "warning: degenerate leading term (dt11*dt21*gamma21t- = 0)\n";
    std::cout << "max_scaled_err=" << fmt_double(report.max_scaled_err) << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const ValidatedProblem vp = slret::problem::validate(slret::problem::load(cfg.problem_path));
    const double h = pick_h(vp, cfg.h);
    const double lambda = cfg.lambda;

    const auto sol = slret::ode::solve(vp, lambda, h);
    const auto pl = slret::picard::picard_left(vp, lambda, cfg.iters, cfg.grid);
    const auto pr = slret::picard::picard_right(vp, lambda, pl, cfg.iters, cfg.grid);
    if (pl.nonconvergence_warning || pr.nonconvergence_warning)
        std::cerr << "warning: picard residuals stopped decreasing\n";

    auto sup_diff = [](const slret::ode::Trajectory& t, const slret::picard::PicardRun& p,
                       double& du_sup) {
        double u_sup = 0.0;
        du_sup = 0.0;
        for (std::size_t j = 0; j < p.xs.size(); ++j) {
            const auto s = t.at(p.xs[j]);
            u_sup = std::max(u_sup, std::fabs(s.u - p.us[j]));
            du_sup = std::max(du_sup, std::fabs(s.du - p.dus[j]));
        }
        return u_sup;
    };
    double dul = 0.0, dur = 0.0;
    const double ul = sup_diff(sol.left, pl, dul);
    const double ur = sup_diff(sol.right, pr, dur);

    const auto& s = vp.spec();
    const double lam2 = lambda * lambda;
    const auto sa = sol.left.node_state(0);
    const double t2[] = {s.d10 * sa.u, -s.d11 * sa.du, -lam2 * s.dt10 * sa.u,
                         lam2 * s.dt11 * sa.du};
    double num2 = t2[0] + t2[1] + t2[2] + t2[3], den2 = 0.0;
    for (double t : t2) den2 += std::fabs(t);
    const double r2 = std::fabs(num2) / (den2 + 1e-300);

    const auto um = sol.left_end;
    const auto up = sol.right_begin;
    const double t4[] = {s.g10_plus * up.u, s.g10_minus * um.u};
    const double r4 = std::fabs(t4[0] + t4[1]) / (std::fabs(t4[0]) + std::fabs(t4[1]) + 1e-300);

    const double t5[] = {s.g2_plus[0] * up.u,        s.g2_plus[1] * up.du,
                         s.g2_minus[0] * um.u,       s.g2_minus[1] * um.du,
                         -lam2 * s.g2t_plus[0] * up.u,  -lam2 * s.g2t_plus[1] * up.du,
                         -lam2 * s.g2t_minus[0] * um.u, -lam2 * s.g2t_minus[1] * um.du};
    double num5 = 0.0, den5 = 0.0;
    for (double t : t5) {
        num5 += t;
        den5 += std::fabs(t);
    }
    const double r5 = std::fabs(num5) / (den5 + 1e-300);

    std::cout << "sup|u_shoot-u_picard| left  = " << fmt_double(ul) << "\n"
              << "sup|u_shoot-u_picard| right = " << fmt_double(ur) << "\n"
              << "sup|du_shoot-du_picard| left  = " << fmt_double(dul) << "\n"
              << "sup|du_shoot-du_picard| right = " << fmt_double(dur) << "\n"
              << "endpoint residual (a)      = " << fmt_double(r2) << "\n"
              << "transmission residual (u)  = " << fmt_double(r4) << "\n"
              << "transmission residual (u') = " << fmt_double(r5) << "\n";

    const double dscale = std::max(1.0, std::fabs(lambda));
    const double worst = std::max({ul, ur, dul / dscale, dur / dscale, r2, r4, r5});
    std::cout << (worst <= 1e-6 ? "verify: PASS" : "verify: FAIL") << "\n";
    return worst <= 1e-6 ? 0 : 3;
}

int dispatch(const std::string& name, const RunConfig& cfg) {
    if (name == "solve") return cmd_solve(cfg);
    if (name == "scan") return cmd_scan(cfg);
    if (name == "eigfun") return cmd_eigfun(cfg);
    if (name == "compare") return cmd_compare(cfg);
    return cmd_verify(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Real positive spectrum and eigenfunctions of a discontinuous "
        "Sturm-Liouville problem with retarded argument"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", cfg.problem_path, "problem file (JSON)")->required();
        sub->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
        sub->add_option("--h", cfg.h, "integration step (default: per-problem)");
    };

    CLI::App* solve = app.add_subcommand("solve", "locate eigenvalues in a lambda range");
    add_common(solve);
    solve->add_option("--lmin", cfg.lmin, "lower end of the lambda range");
    solve->add_option("--lmax", cfg.lmax, "upper end of the lambda range")->required();
    solve->add_option("--step", cfg.step, "scan step (default: min branch spacing / 8)");
    solve->add_option("--tol", cfg.tol, "bisection tolerance factor");

    CLI::App* scan = app.add_subcommand("scan", "tabulate the characteristic function");
    add_common(scan);
    scan->add_option("--lmin", cfg.lmin, "lower end of the lambda range");
    scan->add_option("--lmax", cfg.lmax, "upper end of the lambda range")->required();
    scan->add_option("--step", cfg.step, "sample spacing")->required();

    CLI::App* eigfun = app.add_subcommand("eigfun", "tabulate the shooting solution at a lambda");
    add_common(eigfun);
    eigfun->add_option("--lambda", cfg.lambda, "spectral parameter")->required();
    eigfun->add_option("--xsamples", cfg.xsamples, "number of x samples on [a,b]");

    CLI::App* compare = app.add_subcommand("compare", "numeric roots vs branch predictions");
    add_common(compare);
    compare->add_option("--n", cfg.n, "highest branch index to cover");

    CLI::App* verify = app.add_subcommand("verify", "shooting vs integral-equation cross-check");
    add_common(verify);
    verify->add_option("--lambda", cfg.lambda, "spectral parameter (> 0)")->required();
    verify->add_option("--grid", cfg.grid, "picard quadrature grid");
    verify->add_option("--iters", cfg.iters, "picard iteration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), cfg);
    } catch (const slret::NonfiniteState& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const slret::SingularTransmission& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const slret::EvalDomainError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const slret::DegenerateLeadingTerm& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
