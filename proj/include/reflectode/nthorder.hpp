#pragma once

#include <functional>
#include <vector>

#include "reflectode/core.hpp"
#include "reflectode/quadrature.hpp"

namespace reflectode {

// n-th order problem  L u := sum_k [a_k u^(k)(-t) + b_k u^(k)(t)] = h(t),
// u(t0) = c, with a_n = 0 and b_n = 1 (monic, no highest-order reflection).
struct NthProblem {
    NthProblem(int n, std::vector<double> a, std::vector<double> b, Forcing h,
               double t0, double c);

    int n;
    std::vector<double> a, b; // size n+1
    Forcing h;
    double t0 = 0.0;
    double c = 0.0;
};

// User-supplied auxiliary pair: u(j, t) / v(j, t) evaluate the j-th
// derivatives, j = 0..max_order (max_order >= n required by the identities).
struct AuxPair {
    std::function<double(int, double)> u;
    std::function<double(int, double)> v;
    int max_order = 0;
};

// The first-order built-in: wraps the core homogeneous pair (max_order 1).
AuxPair first_order_aux(const Coefficients& c, const CaseClass& k);

// Residual report for the 2n defining identity families plus the
// denominator floor min |u_e v_e - u_o v_o| over the sample window.
struct AuxVerifyReport {
    std::vector<double> u_residuals; // index j = 0..n-1
    std::vector<double> v_residuals;
    double min_denominator = 0.0;
    bool pass = false; // residuals <= 1e-8 and min_denominator >= 1e-8
};

AuxVerifyReport verify_aux(const NthProblem& p, const AuxPair& pair, double lo,
                           double hi, int samples);

enum class Hypothesis { H1, H2, H3 };

// Constructed solution w = ubar + mu * correction with L w = h, w(t0) = c.
class NthSolution {
public:
    NthSolution(std::function<double(double)> w, std::function<double(double)> ubar,
                std::function<double(double)> phi, std::function<double(double)> psi,
                Hypothesis hyp);

    double operator()(double t) const { return w_(t); }
    double ubar(double t) const { return ubar_(t); }
    double phi(double s) const { return phi_(s); } // odd factor of h
    double psi(double s) const { return psi_(s); } // even factor of h
    Hypothesis hypothesis() const noexcept { return hyp_; }

private:
    std::function<double(double)> w_, ubar_, phi_, psi_;
    Hypothesis hyp_;
};

// Constructive existence: split h = phi*u + psi*v, integrate n-fold via the
// (t-s)^(n-1) kernel, then correct the initial value using the selected
// hypothesis (h1: utilde; h2: vtilde; h3: the L w = 1 auxiliary). The aux
// identities and the hypothesis's numeric precondition are verified on
// [-W, W], W = max(3, |t0|+1), 61 samples; violations throw HypothesisError.
NthSolution construct(const NthProblem& p, const AuxPair& pair, Hypothesis hyp,
                      double tol = kDefaultQuadTol);

} // namespace reflectode
