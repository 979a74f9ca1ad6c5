#pragma once

#include <functional>
#include <vector>

#include "reflectode/errors.hpp"

namespace reflectode {

// Default target for adaptive quadrature (error <= tol * (1 + |integral|)).
inline constexpr double kDefaultQuadTol = 1e-10;

// Integration hints: points where the integrand is non-smooth (breakpoints)
// or unbounded-but-integrable (singular_points). Singular points are never
// evaluated; intervals adjacent to one are refined geometrically toward it.
struct IntegrationMeta {
    std::vector<double> breakpoints{};
    std::vector<double> singular_points{};
};

// A forcing term h together with its non-smoothness metadata.
struct Forcing {
    std::function<double(double)> h;
    std::vector<double> breakpoints{};
    std::vector<double> singular_points{};
    double operator()(double t) const { return h(t); }
};

inline IntegrationMeta meta_of(const Forcing& f) {
    return {f.breakpoints, f.singular_points};
}

// Meta closed under s -> -s; the solution integrand involves both h(s) and h(-s).
IntegrationMeta mirrored(const IntegrationMeta& m);

// Oriented adaptive Gauss-Kronrod 7/15: returns integral of f from t1 to t2
// (negated when t1 > t2, zero when equal). Splits at interior meta points,
// grades geometrically toward singular endpoints, refines worst-first.
// Throws QuadratureError (carrying best estimate and bound) on non-convergence.
double integrate(const std::function<double(double)>& f, double t1, double t2,
                 const IntegrationMeta& meta = {}, double tol = kDefaultQuadTol);

// (1/(n-1)!) * integral_0^t (t-s)^(n-1) phi(s) ds  -- the n-fold iterated
// integral of phi collapsed to a single weighted quadrature.
double iterated_kernel_integral(const std::function<double(double)>& phi, int n,
                                double t, double tol = kDefaultQuadTol,
                                const IntegrationMeta& meta = {});

} // namespace reflectode
