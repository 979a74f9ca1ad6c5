#include "reflectode/solver.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "reflectode/analysis.hpp"

namespace reflectode {
namespace {

void check_problem(const ProblemSpec& p) {
    if (!std::isfinite(p.t0) || !std::isfinite(p.c))
        throw InvalidInputError("solver: t0 and c must be finite");
    if (!p.h.h) throw InvalidInputError("solver: missing forcing evaluator");
}

// ubar evaluator shared by ubar() and solve().  The single-integral integrand
// is the pair combination
//   0.5*[(u(-s)v(t) + v(-s)u(t))*h(s) + (u(s)v(t) - v(s)u(t))*h(-s)],
// but it is evaluated here in the equivalent difference form -- functions of
// w*(t-s) only.  The two agree exactly in real arithmetic (p+q = 2b/w,
// p-q = 2a/w, pq = -+1); the product form, however, multiplies terms of size
// e^{w(|t|+|s|)} in the hyperbolic regime, and the resulting cancellation
// noise (~1e-4 absolute at w|t| ~ 13) defeats the quadrature's error
// control.  The difference form's intermediates stay at e^{w|t-s|}.
std::function<double(double)> make_ubar(const HomogeneousPair& pair, const Forcing& h,
                                        double tol) {
    const IntegrationMeta meta = mirrored(meta_of(h));
    const double a = pair.coeffs().a, b = pair.coeffs().b;
    const CaseClass k = pair.kase();
    return [a, b, k, h, meta, tol](double t) {
        auto f = [a, b, k, &h, t](double s) {
            const double x = t - s;
            double kb, sa; // kernel factor K(x) and reflection coupling S(x)
            switch (k.tag) {
            case Regime::C1:
                kb = std::cos(k.omega * x) - (b / k.omega) * std::sin(k.omega * x);
                sa = std::sin(k.omega * x) / k.omega;
                break;
            case Regime::C2:
                kb = std::cosh(k.omega * x) - (b / k.omega) * std::sinh(k.omega * x);
                sa = std::sinh(k.omega * x) / k.omega;
                break;
            default: // C3 regimes: the w -> 0 limit of either branch above
                kb = 1.0 - b * x;
                sa = x;
                break;
            }
            return kb * h(s) + a * sa * h(-s);
        };
        return integrate(f, 0.0, t, meta, tol);
    };
}

[[noreturn]] void throw_nonunique(const Coefficients& c, double t0, double ut0) {
    std::ostringstream os;
    os << "nonunique problem: utilde(t0) = " << ut0 << " at t0 = " << t0 << "; "
       << degenerate_t0(c.a, c.b).describe();
    throw NonUniqueError(os.str());
}

// Wraps a full solution u (with L u = h, u(t0) = c) as a Solution object:
// the canonical particular part is u - u(0)*utilde, so lambda = u(0).
Solution from_full_solution(HomogeneousPair pair, std::function<double(double)> u_full,
                            double t0, double c) {
    const double lambda = u_full(0.0);
    auto ubar_fn = [pair, u_full = std::move(u_full), lambda](double t) {
        return u_full(t) - lambda * pair.u(t);
    };
    const double ubar_t0 = c - lambda * pair.u(t0);
    return Solution(pair, std::move(ubar_fn), lambda, ubar_t0);
}

} // namespace

Solution::Solution(HomogeneousPair pair, std::function<double(double)> ubar_fn,
                   double lambda, double ubar_t0)
    : pair_(std::move(pair)), ubar_fn_(std::move(ubar_fn)), lambda_(lambda),
      ubar_t0_(ubar_t0) {}

double ubar(const ProblemSpec& p, double t, double tol) {
    check_problem(p);
    const CaseClass k = classify(p.coeffs);
    const HomogeneousPair pair(p.coeffs, k);
    return make_ubar(pair, p.h, tol)(t);
}

Solution solve(const ProblemSpec& p, double tol) {
    check_problem(p);
    const CaseClass k = classify(p.coeffs);
    const HomogeneousPair pair(p.coeffs, k);
    const double ut0 = pair.u(p.t0);
    if (std::abs(ut0) <= kUniquenessTol * (1.0 + std::abs(p.t0)))
        throw_nonunique(p.coeffs, p.t0, ut0);
    auto ubar_fn = make_ubar(pair, p.h, tol);
    const double ubar_t0 = ubar_fn(p.t0);
    const double lambda = (p.c - ubar_t0) / ut0;
    return Solution(pair, std::move(ubar_fn), lambda, ubar_t0);
}

Solution closed_form_c31(const ProblemSpec& p, double tol) {
    check_problem(p);
    const CaseClass k = classify(p.coeffs);
    if (k.tag != Regime::C3Plus)
        throw InvalidInputError("closed_form_c31: requires a = b (C3+ regime)");
    const double a = p.coeffs.a, t0 = p.t0;
    if (std::abs(2.0 * a * t0 - 1.0) <= 1e-12)
        throw_nonunique(p.coeffs, t0, 1.0 - 2.0 * a * t0);
    const HomogeneousPair pair(p.coeffs, k);
    const Forcing h = p.h;
    const IntegrationMeta meta = mirrored(meta_of(h));

    // H(t) = int_t0^t h;  HH(t) = int_t0^t H = int_t0^t (t-s) h(s) ds (Fubini).
    auto H = [h, meta, tol, t0](double t) { return integrate(h.h, t0, t, meta, tol); };
    auto HH = [h, meta, tol, t0](double t) {
        auto f = [&h, t](double s) { return (t - s) * h(s); };
        return integrate(f, t0, t, meta, tol);
    };
    auto u_part = [H, HH, a](double t) {
        const double Ho = 0.5 * (HH(t) - HH(-t));
        return H(t) - 2.0 * a * Ho;
    };
    const double mu = (p.c - u_part(t0)) / pair.u(t0);
    auto u_full = [u_part, pair, mu](double t) { return u_part(t) + mu * pair.u(t); };
    return from_full_solution(pair, std::move(u_full), t0, p.c);
}

Solution closed_form_c32(const ProblemSpec& p, double tol) {
    check_problem(p);
    const CaseClass k = classify(p.coeffs);
    if (k.tag != Regime::C3Minus)
        throw InvalidInputError("closed_form_c32: requires a = -b (C3- regime)");
    const double a = p.coeffs.a, t0 = p.t0, c = p.c;
    const HomogeneousPair pair(p.coeffs, k);
    const Forcing h = p.h;
    const IntegrationMeta meta = mirrored(meta_of(h));

    auto H = [h, meta, tol](double t) { return integrate(h.h, 0.0, t, meta, tol); };
    auto HH = [h, meta, tol](double t) {
        auto f = [&h, t](double s) { return (t - s) * h(s); };
        return integrate(f, 0.0, t, meta, tol);
    };
    auto He = [HH](double t) { return 0.5 * (HH(t) + HH(-t)); };
    const double Ht0 = H(t0), Het0 = He(t0);
    auto u_full = [H, He, a, Ht0, Het0, c](double t) {
        return H(t) - Ht0 + 2.0 * a * (He(t) - Het0) + c;
    };
    return from_full_solution(pair, std::move(u_full), t0, c);
}

} // namespace reflectode
