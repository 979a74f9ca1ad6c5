#include "reflectode/kernel.hpp"

#include <cmath>

namespace reflectode {

int chi(double t1, double t2, double t) {
    if (t1 <= t && t <= t2) return 1;
    if (t2 <= t && t < t1) return -1;
    return 0;
}

GreenKernel::GreenKernel(const Coefficients& c, const CaseClass& k) : pair_(c, k) {}

GreenKernel::GreenKernel(const Coefficients& c) : pair_(c, classify(c)) {}

double GreenKernel::product_form(double t, double s) const {
    if (!std::isfinite(t) || !std::isfinite(s))
        throw InvalidInputError("GreenKernel: arguments must be finite");
    const int c1 = chi(0.0, t, s);
    const int c2 = chi(-t, 0.0, s);
    if (c1 == 0 && c2 == 0) return 0.0;
    const double ums = pair_.u(-s), vms = pair_.v(-s);
    const double ut = pair_.u(t), vt = pair_.v(t);
    return 0.5 * ((ums * vt + vms * ut) * c1 + (ums * vt - vms * ut) * c2);
}

double GreenKernel::operator()(double t, double s) const {
    if (!std::isfinite(t) || !std::isfinite(s))
        throw InvalidInputError("GreenKernel: arguments must be finite");
    const Coefficients& c = pair_.coeffs();
    const double w = pair_.kase().omega;
    const bool t1 = (0.0 <= s && s <= t);
    const bool t2 = (t <= s && s <= 0.0);
    const bool t3 = (-t <= s && s <= 0.0);
    const bool t4 = (0.0 <= s && s <= -t);

    switch (pair_.kase().tag) {
    case Regime::C1: {
        if (t1) return std::cos(w * (s - t)) + (c.b / w) * std::sin(w * (s - t));
        if (t2) return -(std::cos(w * (s - t)) + (c.b / w) * std::sin(w * (s - t)));
        if (t3) return (c.a / w) * std::sin(w * (s + t));
        if (t4) return -(c.a / w) * std::sin(w * (s + t));
        return 0.0;
    }
    case Regime::C2: {
        if (t1) return std::cosh(w * (s - t)) + (c.b / w) * std::sinh(w * (s - t));
        if (t2) return -(std::cosh(w * (s - t)) + (c.b / w) * std::sinh(w * (s - t)));
        if (t3) return (c.a / w) * std::sinh(w * (s + t));
        if (t4) return -(c.a / w) * std::sinh(w * (s + t));
        return 0.0;
    }
    case Regime::C3Plus: {
        if (t1) return 1.0 + c.a * (s - t);
        if (t2) return -(1.0 + c.a * (s - t));
        if (t3) return c.a * (s + t);
        if (t4) return -c.a * (s + t);
        return 0.0;
    }
    case Regime::C3Minus: {
        if (t1) return 1.0 + c.a * (t - s);
        if (t2) return -(1.0 + c.a * (t - s));
        if (t3) return c.a * (s + t);
        if (t4) return -c.a * (s + t);
        return 0.0;
    }
    }
    return 0.0;
}

GreenGrid green_grid(const GreenKernel& g, double t_lo, double t_hi, double s_lo,
                     double s_hi, std::size_t n) {
    if (n < 2) throw InvalidInputError("green_grid: need at least 2 points per axis");
    if (!(t_lo < t_hi) || !(s_lo < s_hi))
        throw InvalidInputError("green_grid: empty window");
    GreenGrid out;
    out.t.resize(n);
    out.s.resize(n);
    out.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(n - 1);
        out.t[i] = t_lo + r * (t_hi - t_lo);
        out.s[i] = s_lo + r * (s_hi - s_lo);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.values[i * n + j] = g(out.t[i], out.s[j]);
    return out;
}

} // namespace reflectode
