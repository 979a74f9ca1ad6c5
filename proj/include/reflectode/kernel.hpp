#pragma once

#include <cstddef>
#include <vector>

#include "reflectode/core.hpp"

namespace reflectode {

// Oriented characteristic function:
//   +1 if t1 <= t <= t2,  -1 if t2 <= t < t1,  0 otherwise.
// Closed on the forward branch, half-open backward; chi(x, x, x) == 1.
int chi(double t1, double t2, double t);

// Green's function of u' + a*u(-t) + b*u(t) = h with u(0) = 0:
//   G(t,s) = 1/2 * ( [u(-s)v(t) + v(-s)u(t)] * chi_0^t(s)
//                  + [u(-s)v(t) - v(-s)u(t)] * chi_{-t}^0(s) )
// where (u, v) is the distinguished homogeneous pair. The solution operator is
// ubar(t) = integral G(t,s) h(s) ds over the support.
class GreenKernel {
public:
    GreenKernel(const Coefficients& c, const CaseClass& k);
    explicit GreenKernel(const Coefficients& c);

    // Primary evaluation: regime-specific piecewise closed forms over the
    // four triangles
    //   T1 = {0 <= s <= t}, T2 = {t <= s <= 0},
    //   T3 = {-t <= s <= 0}, T4 = {0 <= s <= -t},
    // first match in that order, 0 outside. Single-valued on shared
    // boundaries by the match order.
    double operator()(double t, double s) const;
    double piecewise(double t, double s) const { return (*this)(t, s); }

    // Literal chi-weighted product formula. Agrees with operator() except on
    // the overlap line s=0, t!=0, where both chi factors are nonzero and the
    // sum double-counts; the integral solution is insensitive to that
    // measure-zero set. Kept as an independent cross-check.
    double product_form(double t, double s) const;

    const HomogeneousPair& pair() const noexcept { return pair_; }
    const Coefficients& coeffs() const noexcept { return pair_.coeffs(); }
    const CaseClass& kase() const noexcept { return pair_.kase(); }

private:
    HomogeneousPair pair_;
};

// Row-major tabulation: values[i*n + j] = G(t[i], s[j]).
struct GreenGrid {
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> values;
};

GreenGrid green_grid(const GreenKernel& g, double t_lo, double t_hi, double s_lo,
                     double s_hi, std::size_t n);

} // namespace reflectode
