#include "slret/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "slret/asym.hpp"
#include "slret/csv.hpp"
#include "slret/errors.hpp"
#include "slret/ode.hpp"

namespace slret::charfn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double display_rescale(double xi_value, double lambda) {
    return xi_value / std::pow(1.0 + std::fabs(lambda), 7);
}

bool within_exclusion(double lambda, const std::vector<double>& singular, double step) {
    for (double ls : singular) {
        const double r = std::max(step, 1e-6 * ls);
        if (std::fabs(lambda - ls) < r) return true;
    }
    return false;
}

void classify(const ValidatedProblem& vp, EigenvalueRecord& rec) {
    struct Candidate {
        Branch branch;
        int n;
        double hat;
        double err;
        double spacing;
    };
    Candidate best{Branch::unclassified, 0, 0.0,
                   std::numeric_limits<double>::infinity(), 0.0};
    for (Branch br : {Branch::A_left, Branch::B_right}) {
        const double spacing = asym::branch_spacing(vp, br);
        const double offset = br == Branch::A_left ? 0.0 : 0.5;
        int n = static_cast<int>(std::lround(rec.lambda / spacing - offset));
        if (n < 1) n = 1;
        const double hat = asym::gamma_branch(vp, br, n).lambda_hat;
        const double err = std::fabs(rec.lambda - hat);
        if (err < best.err) best = {br, n, hat, err, spacing};
    }
    rec.branch_error = best.err;
    if (best.err >= 0.25 * best.spacing) {
        rec.branch = Branch::unclassified;
        rec.branch_n = 0;
    } else {
        rec.branch = best.branch;
        rec.branch_n = best.n;
    }
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::A_left: return "A_left";
        case Branch::B_right: return "B_right";
        case Branch::unclassified: return "unclassified";
    }
    return "?";
}

double xi(const ValidatedProblem& vp, double lambda, double h) {
    const ode::FullSolution sol = ode::solve(vp, lambda, h);
    const ode::State tb = sol.right.node_state(sol.right.node_count() - 1);
    const auto& s = vp.spec();
    const double lam2 = lambda * lambda;
    // the b-endpoint row carries +lambda^2, unlike the a-endpoint row
    return s.d20 * tb.u - s.d21 * tb.du + lam2 * (s.dt20 * tb.u - s.dt21 * tb.du);
}

std::vector<double> singular_lambdas(const ValidatedProblem& vp, double lambda_max) {
    if (!(lambda_max > 0.0))
        throw std::invalid_argument("lambda_max must be positive");
    const auto& s = vp.spec();
    std::vector<double> out;
    if (s.g2t_plus[1] != 0.0) {
        const double ratio = s.g2_plus[1] / s.g2t_plus[1];
        if (ratio > 0.0) {
            const double ls = std::sqrt(ratio);
            if (ls <= lambda_max) out.push_back(ls);
        }
    }
    return out;
}

std::vector<CharSample> scan(const ValidatedProblem& vp, double lambda_min,
                             double lambda_max, double step, double h, bool parallel) {
    if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
    if (!(lambda_min >= 0.0 && lambda_min < lambda_max))
        throw std::invalid_argument("scan range must satisfy 0 <= lambda_min < lambda_max");

    const double span = (lambda_max - lambda_min) / step;
    const long count = static_cast<long>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
    const std::vector<double> singular = singular_lambdas(vp, lambda_max + step);

    std::vector<CharSample> out(static_cast<std::size_t>(count));
    std::exception_ptr error;

#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < count; ++i) {
        CharSample smp;
        smp.lambda = lambda_min + step * static_cast<double>(i);
        if (within_exclusion(smp.lambda, singular, step)) {
            smp.near_singular = true;
            smp.xi = kNaN;
            smp.xi_scaled = kNaN;
        } else {
            try {
                smp.xi = xi(vp, smp.lambda, h);
                smp.xi_scaled = display_rescale(smp.xi, smp.lambda);
            } catch (const SingularTransmission&) {
                smp.near_singular = true;
                smp.xi = kNaN;
                smp.xi_scaled = kNaN;
            } catch (...) {
#pragma omp critical(slret_scan_error)
                if (!error) error = std::current_exception();
            }
        }
        out[static_cast<std::size_t>(i)] = smp;
    }

    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<CharSample> scan_serial(const ValidatedProblem& vp, double lambda_min,
                                    double lambda_max, double step, double h) {
    return scan(vp, lambda_min, lambda_max, step, h, /*parallel=*/false);
}

double default_scan_step(const ValidatedProblem& vp) {
    const double sa = asym::branch_spacing(vp, Branch::A_left);
    const double sb = asym::branch_spacing(vp, Branch::B_right);
    return 0.5 * std::min(sa, sb) / 4.0;
}

RootSearchResult find_roots(const ValidatedProblem& vp, double lambda_min,
                            double lambda_max, double step, double h, double tol_lambda,
                            bool parallel) {
    if (!(tol_lambda > 0.0)) throw std::invalid_argument("tol_lambda must be positive");
    const double sa = asym::branch_spacing(vp, Branch::A_left);
    const double sb = asym::branch_spacing(vp, Branch::B_right);
    const double bound = 0.5 * std::min(sa, sb);
    if (step > bound * (1.0 + 1e-12))
        throw std::invalid_argument(
            "scan step too coarse: must be <= half the finer branch spacing");

    const std::vector<CharSample> samples = scan(vp, lambda_min, lambda_max, step, h, parallel);

    struct Bracket {
        double lo, hi, flo, fhi;
    };
    std::vector<Bracket> brackets;
    std::vector<EigenvalueRecord> direct;  // samples that are exact roots
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].near_singular) continue;
        if (samples[i].xi == 0.0) {
            EigenvalueRecord rec;
            rec.lambda = samples[i].lambda;
            rec.lo = rec.hi = samples[i].lambda;
            rec.residual = 0.0;
            direct.push_back(rec);
            continue;
        }
        if (i + 1 < samples.size() && !samples[i + 1].near_singular &&
            samples[i + 1].xi != 0.0 && samples[i].xi * samples[i + 1].xi < 0.0) {
            brackets.push_back({samples[i].lambda, samples[i + 1].lambda, samples[i].xi,
                                samples[i + 1].xi});
        }
    }

    std::vector<EigenvalueRecord> refined(brackets.size());
    std::exception_ptr error;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long bi = 0; bi < static_cast<long>(brackets.size()); ++bi) {
        try {
            Bracket br = brackets[static_cast<std::size_t>(bi)];
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (br.lo + br.hi);
                if (br.hi - br.lo <= tol_lambda * std::max(1.0, std::fabs(mid))) break;
                const double fm = xi(vp, mid, h);
                if (fm == 0.0) {
                    br.lo = br.hi = mid;
                    br.flo = br.fhi = 0.0;
                    break;
                }
                if ((fm > 0.0) == (br.flo > 0.0)) {
                    br.lo = mid;
                    br.flo = fm;
                } else {
                    br.hi = mid;
                    br.fhi = fm;
                }
            }
            EigenvalueRecord rec;
            rec.lambda = 0.5 * (br.lo + br.hi);
            rec.lo = br.lo;
            rec.hi = br.hi;
            rec.residual = std::fabs(xi(vp, rec.lambda, h));
            refined[static_cast<std::size_t>(bi)] = rec;
        } catch (...) {
#pragma omp critical(slret_refine_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    RootSearchResult result;
    for (auto& rec : direct) refined.push_back(rec);
    std::sort(refined.begin(), refined.end(),
              [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
                  return x.lambda < y.lambda;
              });
    for (auto& rec : refined) {
        if (!(rec.lambda > 0.0)) continue;  // positive spectrum only
        classify(vp, rec);
        rec.index = static_cast<int>(result.roots.size()) + 1;
        result.roots.push_back(rec);
    }

    for (double ls : singular_lambdas(vp, lambda_max + step)) {
        if (ls < lambda_min || ls > lambda_max) continue;
        const CharSample* below = nullptr;
        const CharSample* above = nullptr;
        for (const auto& smp : samples) {
            if (smp.near_singular) continue;
            if (smp.lambda < ls) below = &smp;
            if (smp.lambda > ls) {
                above = &smp;
                break;
            }
        }
        if (below && above && below->xi * above->xi < 0.0)
            result.unresolved_near_singular.push_back(ls);
    }

    for (std::size_t i = 1; i < result.roots.size(); ++i) {
        const double gap = result.roots[i].lambda - result.roots[i - 1].lambda;
        if (gap < step)
            result.warnings.push_back(
                "two sign changes within one scan step near lambda=" +
                fmt_double(result.roots[i].lambda) + "; a close pair may have been missed");
    }

    return result;
}

void export_scan_csv(const std::vector<CharSample>& samples, std::ostream& out) {
    out << "lambda,xi,xi_scaled,near_singular\n";
    for (const auto& s : samples)
        out << fmt_double(s.lambda) << ',' << fmt_double(s.xi) << ','
            << fmt_double(s.xi_scaled) << ',' << (s.near_singular ? 1 : 0) << '\n';
}

void export_roots_csv(const std::vector<EigenvalueRecord>& roots, std::ostream& out) {
    out << "index,lambda,residual,branch,branch_n,branch_error\n";
    for (const auto& r : roots)
        out << r.index << ',' << fmt_double(r.lambda) << ',' << fmt_double(r.residual)
            << ',' << branch_name(r.branch) << ',' << r.branch_n << ','
            << fmt_double(r.branch_error) << '\n';
}

}  // namespace slret::charfn
