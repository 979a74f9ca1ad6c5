#pragma once

#include <string>
#include <utility>

#include "reflectode/errors.hpp"

namespace reflectode {

// Coefficients of u'(t) + a*u(-t) + b*u(t) = h(t).
struct Coefficients {
    double a = 0.0;
    double b = 0.0;
};

// Parameter regimes of the homogeneous equation.
//   C1:      a*a > b*b  (oscillatory, omega = sqrt(a*a - b*b))
//   C2:      a*a < b*b  (hyperbolic,  omega = sqrt(b*b - a*a))
//   C3Plus:  a == b     (affine tilde-u)
//   C3Minus: a == -b    (affine tilde-v)
enum class Regime { C1, C2, C3Plus, C3Minus };

const char* to_string(Regime r);

struct CaseClass {
    Regime tag = Regime::C3Plus;
    double omega = 0.0; // 0 in the C3 regimes
};

// Relative tolerance used to decide |a^2 - b^2| ~ 0, scaled by (a^2 + b^2 + 1).
inline constexpr double kClassifyTol = 1e-12;

// Classify (a, b) into a regime. Throws InvalidInputError on non-finite
// coefficients or a negative tolerance. Ties |a| == |b| with a*b >= 0 go to
// C3Plus, a*b < 0 to C3Minus; the C3 subtag picks the branch whose defining
// identity |a -+ b| is smaller.
CaseClass classify(const Coefficients& c, double tol = kClassifyTol);

// The distinguished homogeneous pair (tilde-u, tilde-v):
//   tilde-u solves u' + a*u(-t) + b*u(t) = 0 with u(0) = 1,
//   tilde-v is the companion with v(0) = 1 making the kernel formula work.
// Closed forms per regime (p = (a+b)/omega, q = (b-a)/omega):
//   C1: u = cos(w t) - p sin(w t),  v = cos(w t) - q sin(w t)
//   C2: u = cosh(w t) - p sinh(w t), v = cosh(w t) - q sinh(w t)
//   C3Plus:  u = 1 - 2 a t, v = 1
//   C3Minus: u = 1,         v = 1 + 2 a t
class HomogeneousPair {
public:
    HomogeneousPair(const Coefficients& c, const CaseClass& k);

    double u(double t) const;  // tilde-u
    double v(double t) const;  // tilde-v
    double du(double t) const; // d/dt tilde-u
    double dv(double t) const; // d/dt tilde-v

    // Analytic even/odd parts (cheaper and exactly symmetric).
    double u_even(double t) const;
    double u_odd(double t) const;
    double v_even(double t) const;
    double v_odd(double t) const;

    const Coefficients& coeffs() const noexcept { return c_; }
    const CaseClass& kase() const noexcept { return k_; }

private:
    Coefficients c_;
    CaseClass k_;
    double p_ = 0.0; // (a+b)/omega, C1/C2 only
    double q_ = 0.0; // (b-a)/omega, C1/C2 only
};

inline HomogeneousPair homogeneous_pair(const Coefficients& c, const CaseClass& k) {
    return HomogeneousPair(c, k);
}

// Even/odd split of an arbitrary callable at t.
template <class F>
std::pair<double, double> even_odd(F&& f, double t) {
    const double ft = f(t);
    const double fmt = f(-t);
    return {0.5 * (ft + fmt), 0.5 * (ft - fmt)};
}

} // namespace reflectode
