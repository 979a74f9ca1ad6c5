#include "reflectode/nthorder.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace reflectode {
namespace {

double binom(int m, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * static_cast<double>(m - j + i) / i;
    return r;
}

std::vector<double> sample_grid(double lo, double hi, int samples) {
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    return g;
}

} // namespace

NthProblem::NthProblem(int n_, std::vector<double> a_, std::vector<double> b_,
                       Forcing h_, double t0_, double c_)
    : n(n_), a(std::move(a_)), b(std::move(b_)), h(std::move(h_)), t0(t0_), c(c_) {
    if (n < 1) throw InvalidInputError("NthProblem: order must be >= 1");
    if (a.size() != static_cast<std::size_t>(n + 1) ||
        b.size() != static_cast<std::size_t>(n + 1))
        throw InvalidInputError("NthProblem: coefficient vectors must have size n+1");
    for (double x : a)
        if (!std::isfinite(x)) throw InvalidInputError("NthProblem: non-finite a_k");
    for (double x : b)
        if (!std::isfinite(x)) throw InvalidInputError("NthProblem: non-finite b_k");
    if (a[n] != 0.0 || b[n] != 1.0)
        throw InvalidInputError("NthProblem: requires a_n = 0 and b_n = 1");
    if (!std::isfinite(t0) || !std::isfinite(c))
        throw InvalidInputError("NthProblem: t0 and c must be finite");
    if (!h.h) throw InvalidInputError("NthProblem: missing forcing evaluator");
}

AuxPair first_order_aux(const Coefficients& c, const CaseClass& k) {
    HomogeneousPair pair(c, k);
    AuxPair out;
    out.max_order = 1;
    out.u = [pair](int j, double t) {
        if (j == 0) return pair.u(t);
        if (j == 1) return pair.du(t);
        throw InvalidInputError("first_order_aux: derivative order > 1");
    };
    out.v = [pair](int j, double t) {
        if (j == 0) return pair.v(t);
        if (j == 1) return pair.dv(t);
        throw InvalidInputError("first_order_aux: derivative order > 1");
    };
    return out;
}

AuxVerifyReport verify_aux(const NthProblem& p, const AuxPair& pair, double lo,
                           double hi, int samples) {
    if (samples < 2) throw InvalidInputError("verify_aux: need at least 2 samples");
    if (!(lo < hi)) throw InvalidInputError("verify_aux: empty window");
    if (!pair.u || !pair.v) throw InvalidInputError("verify_aux: missing evaluators");
    if (pair.max_order < p.n)
        throw InvalidInputError("verify_aux: pair derivatives must reach order n");

    const int n = p.n;
    AuxVerifyReport rep;
    rep.u_residuals.assign(n, 0.0);
    rep.v_residuals.assign(n, 0.0);
    rep.min_denominator = std::numeric_limits<double>::infinity();

    for (double t : sample_grid(lo, hi, samples)) {
        for (int j = 0; j < n; ++j) {
            double ru = 0.0, rv = 0.0;
            for (int i = 0; i <= n - j; ++i) {
                const double cij = binom(i + j, j);
                const double su = ((n + i - 1) % 2 == 0) ? 1.0 : -1.0;
                ru += cij * (su * p.a[i + j] * pair.u(i, -t) + p.b[i + j] * pair.u(i, t));
                rv += cij * (-su * p.a[i + j] * pair.v(i, -t) + p.b[i + j] * pair.v(i, t));
            }
            rep.u_residuals[j] = std::max(rep.u_residuals[j], std::abs(ru));
            rep.v_residuals[j] = std::max(rep.v_residuals[j], std::abs(rv));
        }
        const double ue = 0.5 * (pair.u(0, t) + pair.u(0, -t));
        const double uo = 0.5 * (pair.u(0, t) - pair.u(0, -t));
        const double ve = 0.5 * (pair.v(0, t) + pair.v(0, -t));
        const double vo = 0.5 * (pair.v(0, t) - pair.v(0, -t));
        rep.min_denominator = std::min(rep.min_denominator, std::abs(ue * ve - uo * vo));
    }
    rep.pass = rep.min_denominator >= 1e-8;
    for (int j = 0; j < n; ++j)
        if (rep.u_residuals[j] > 1e-8 || rep.v_residuals[j] > 1e-8) rep.pass = false;
    return rep;
}

NthSolution::NthSolution(std::function<double(double)> w, std::function<double(double)> ub,
                         std::function<double(double)> ph, std::function<double(double)> ps,
                         Hypothesis hyp)
    : w_(std::move(w)), ubar_(std::move(ub)), phi_(std::move(ph)), psi_(std::move(ps)),
      hyp_(hyp) {}

NthSolution construct(const NthProblem& p, const AuxPair& pair, Hypothesis hyp,
                      double tol) {
    const int n = p.n;
    const double W = std::max(3.0, std::abs(p.t0) + 1.0);
    const AuxVerifyReport rep = verify_aux(p, pair, -W, W, 61);
    if (!rep.pass) {
        std::ostringstream os;
        os << "construct: auxiliary pair fails its identities (min denominator "
           << rep.min_denominator << ", worst residual ";
        double worst = 0.0;
        for (double r : rep.u_residuals) worst = std::max(worst, r);
        for (double r : rep.v_residuals) worst = std::max(worst, r);
        os << worst << ")";
        throw HypothesisError(os.str());
    }

    auto u0 = [pu = pair.u](double t) { return pu(0, t); };
    auto v0 = [pv = pair.v](double t) { return pv(0, t); };
    auto D = [u0, v0](double s) {
        const double ue = 0.5 * (u0(s) + u0(-s)), uo = 0.5 * (u0(s) - u0(-s));
        const double ve = 0.5 * (v0(s) + v0(-s)), vo = 0.5 * (v0(s) - v0(-s));
        return ue * ve - uo * vo;
    };
    const Forcing h = p.h;
    auto phi = [h, v0, D](double s) {
        const double he = 0.5 * (h(s) + h(-s)), ho = 0.5 * (h(s) - h(-s));
        const double ve = 0.5 * (v0(s) + v0(-s)), vo = 0.5 * (v0(s) - v0(-s));
        return (ho * ve - he * vo) / D(s);
    };
    auto psi = [h, u0, D](double s) {
        const double he = 0.5 * (h(s) + h(-s)), ho = 0.5 * (h(s) - h(-s));
        const double ue = 0.5 * (u0(s) + u0(-s)), uo = 0.5 * (u0(s) - u0(-s));
        return (he * ue - ho * uo) / D(s);
    };
    const IntegrationMeta meta = mirrored(meta_of(h));
    auto ubar = [phi, psi, u0, v0, n, tol, meta](double t) {
        const double tphi = iterated_kernel_integral(phi, n, t, tol, meta);
        const double tpsi = iterated_kernel_integral(psi, n, t, tol, meta);
        return tphi * u0(t) + tpsi * v0(t);
    };

    // Full operator L f(t) = sum_k a_k f^(k)(-t) + b_k f^(k)(t).
    auto L_of = [&p, n](const std::function<double(int, double)>& f) {
        return [&p, n, f](double t) {
            double r = 0.0;
            for (int k = 0; k <= n; ++k)
                r += p.a[k] * f(k, -t) + p.b[k] * f(k, t);
            return r;
        };
    };

    std::function<double(double)> corr;
    switch (hyp) {
    case Hypothesis::H1: {
        auto Lu = L_of(pair.u);
        double worst = 0.0;
        for (double t : sample_grid(-W, W, 61)) worst = std::max(worst, std::abs(Lu(t)));
        if (worst > 1e-8)
            throw HypothesisError("h1: L utilde does not vanish (residual " +
                                  std::to_string(worst) + ")");
        if (std::abs(pair.u(0, p.t0)) <= 1e-10)
            throw HypothesisError("h1: utilde(t0) = 0");
        corr = u0;
        break;
    }
    case Hypothesis::H2: {
        auto Lv = L_of(pair.v);
        double worst = 0.0;
        for (double t : sample_grid(-W, W, 61)) worst = std::max(worst, std::abs(Lv(t)));
        if (worst > 1e-8)
            throw HypothesisError("h2: L vtilde does not vanish (residual " +
                                  std::to_string(worst) + ")");
        if (std::abs(pair.v(0, p.t0)) <= 1e-10)
            throw HypothesisError("h2: vtilde(t0) = 0");
        corr = v0;
        break;
    }
    case Hypothesis::H3: {
        const double s0 = p.a[0] + p.b[0];
        if (std::abs(s0) <= 1e-12)
            throw HypothesisError("h3: a_0 + b_0 = 0");
        // w1 solves L w1 = 1 via the same machinery (h == 1: phi1 = -v_o/D,
        // psi1 = u_e/D); w2 = w1 - 1/(a_0+b_0) then solves L w2 = 0.
        auto phi1 = [v0, D](double s) {
            const double vo = 0.5 * (v0(s) - v0(-s));
            return -vo / D(s);
        };
        auto psi1 = [u0, D](double s) {
            const double ue = 0.5 * (u0(s) + u0(-s));
            return ue / D(s);
        };
        auto w1 = [phi1, psi1, u0, v0, n, tol](double t) {
            const double tphi = iterated_kernel_integral(phi1, n, t, tol);
            const double tpsi = iterated_kernel_integral(psi1, n, t, tol);
            return tphi * u0(t) + tpsi * v0(t);
        };
        if (std::abs(s0 * w1(p.t0) - 1.0) <= 1e-8)
            throw HypothesisError("h3: (a_0+b_0) * w1(t0) = 1 (correction vanishes at t0)");
        corr = [w1, s0](double t) { return w1(t) - 1.0 / s0; };
        break;
    }
    }

    const double ubar_t0 = ubar(p.t0);
    const double corr_t0 = corr(p.t0);
    const double mu = (p.c - ubar_t0) / corr_t0;
    auto w = [ubar, corr, mu](double t) { return ubar(t) + mu * corr(t); };
    return NthSolution(std::move(w), std::move(ubar), std::move(phi), std::move(psi), hyp);
}

} // namespace reflectode
