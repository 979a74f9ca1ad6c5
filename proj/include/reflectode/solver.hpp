#pragma once

#include <functional>
#include <memory>

#include "reflectode/core.hpp"
#include "reflectode/quadrature.hpp"

namespace reflectode {

// The initial-value problem u'(t) + a*u(-t) + b*u(t) = h(t), u(t0) = c.
struct ProblemSpec {
    Coefficients coeffs{};
    double t0 = 0.0;
    double c = 0.0;
    Forcing h{};
};

// Solution u = ubar + lambda * utilde where ubar is the Green's-function
// particular solution (ubar(0) = 0) and lambda = (c - ubar(t0)) / utilde(t0).
class Solution {
public:
    Solution(HomogeneousPair pair, std::function<double(double)> ubar_fn,
             double lambda, double ubar_t0);

    double operator()(double t) const { return ubar(t) + lambda_ * utilde(t); }
    double ubar(double t) const { return ubar_fn_(t); }
    double utilde(double t) const { return pair_.u(t); }
    double lambda() const noexcept { return lambda_; }
    double ubar_t0() const noexcept { return ubar_t0_; }
    const CaseClass& kase() const noexcept { return pair_.kase(); }
    const HomogeneousPair& pair() const noexcept { return pair_; }

private:
    HomogeneousPair pair_;
    std::function<double(double)> ubar_fn_;
    double lambda_;
    double ubar_t0_;
};

// Particular solution at a point, via the single oriented integral
//   ubar(t) = 1/2 int_0^t ([u(-s)v(t) + v(-s)u(t)] h(s)
//                        + [u(s)v(t) - v(s)u(t)] h(-s)) ds.
double ubar(const ProblemSpec& p, double t, double tol = kDefaultQuadTol);

// Green's-function solution. Throws NonUniqueError when
// |utilde(t0)| <= 1e-10 * (1 + |t0|), carrying the degenerate-set description.
Solution solve(const ProblemSpec& p, double tol = kDefaultQuadTol);

// a = b shortcut: u = H - 2a*Ho + mu*utilde with H(t) = int_t0^t h,
// HH(t) = int_t0^t H, Ho its odd part, and mu fixed by the initial condition.
// Throws NonUniqueError when |2a*t0 - 1| <= 1e-12.
Solution closed_form_c31(const ProblemSpec& p, double tol = kDefaultQuadTol);

// a = -b shortcut (valid for every t0; utilde == 1):
// u = H(t) - H(t0) + 2a*(He(t) - He(t0)) + c with H, HH based at 0.
Solution closed_form_c32(const ProblemSpec& p, double tol = kDefaultQuadTol);

} // namespace reflectode
