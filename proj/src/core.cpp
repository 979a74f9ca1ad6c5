#include "reflectode/core.hpp"

#include <cmath>

namespace reflectode {

const char* to_string(Regime r) {
    switch (r) {
    case Regime::C1: return "C1";
    case Regime::C2: return "C2";
    case Regime::C3Plus: return "C3Plus";
    case Regime::C3Minus: return "C3Minus";
    }
    return "?";
}

CaseClass classify(const Coefficients& c, double tol) {
    if (!std::isfinite(c.a) || !std::isfinite(c.b))
        throw InvalidInputError("classify: coefficients must be finite");
    if (!(tol >= 0.0))
        throw InvalidInputError("classify: tolerance must be nonnegative");

    const double a = c.a, b = c.b;
    const double disc = a * a - b * b;
    const double scale = a * a + b * b + 1.0;
    if (std::abs(disc) <= tol * scale) {
        // |a| == |b| within tolerance; pick the branch with the smaller defect.
        if (std::abs(a + b) <= std::abs(a - b))
            return {Regime::C3Minus, 0.0};
        return {Regime::C3Plus, 0.0};
    }
    if (disc > 0.0)
        return {Regime::C1, std::sqrt(disc)};
    return {Regime::C2, std::sqrt(-disc)};
}

HomogeneousPair::HomogeneousPair(const Coefficients& c, const CaseClass& k) : c_(c), k_(k) {
    if (!std::isfinite(c.a) || !std::isfinite(c.b))
        throw InvalidInputError("HomogeneousPair: coefficients must be finite");
    if (k.tag == Regime::C1 || k.tag == Regime::C2) {
        if (!(k.omega > 0.0))
            throw InvalidInputError("HomogeneousPair: omega must be positive in C1/C2");
        p_ = (c.a + c.b) / k.omega;
        q_ = (c.b - c.a) / k.omega;
    }
}

double HomogeneousPair::u(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return std::cos(w * t) - p_ * std::sin(w * t);
    case Regime::C2: return std::cosh(w * t) - p_ * std::sinh(w * t);
    case Regime::C3Plus: return 1.0 - 2.0 * c_.a * t;
    case Regime::C3Minus: return 1.0;
    }
    return 0.0;
}

double HomogeneousPair::v(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return std::cos(w * t) - q_ * std::sin(w * t);
    case Regime::C2: return std::cosh(w * t) - q_ * std::sinh(w * t);
    case Regime::C3Plus: return 1.0;
    case Regime::C3Minus: return 1.0 + 2.0 * c_.a * t;
    }
    return 0.0;
}

double HomogeneousPair::du(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return -w * std::sin(w * t) - p_ * w * std::cos(w * t);
    case Regime::C2: return w * std::sinh(w * t) - p_ * w * std::cosh(w * t);
    case Regime::C3Plus: return -2.0 * c_.a;
    case Regime::C3Minus: return 0.0;
    }
    return 0.0;
}

double HomogeneousPair::dv(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return -w * std::sin(w * t) - q_ * w * std::cos(w * t);
    case Regime::C2: return w * std::sinh(w * t) - q_ * w * std::cosh(w * t);
    case Regime::C3Plus: return 0.0;
    case Regime::C3Minus: return 2.0 * c_.a;
    }
    return 0.0;
}

double HomogeneousPair::u_even(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return std::cos(w * t);
    case Regime::C2: return std::cosh(w * t);
    case Regime::C3Plus:
    case Regime::C3Minus: return 1.0;
    }
    return 0.0;
}

double HomogeneousPair::u_odd(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return -p_ * std::sin(w * t);
    case Regime::C2: return -p_ * std::sinh(w * t);
    case Regime::C3Plus: return -2.0 * c_.a * t;
    case Regime::C3Minus: return 0.0;
    }
    return 0.0;
}

double HomogeneousPair::v_even(double t) const { return u_even(t); }

double HomogeneousPair::v_odd(double t) const {
    const double w = k_.omega;
    switch (k_.tag) {
    case Regime::C1: return -q_ * std::sin(w * t);
    case Regime::C2: return -q_ * std::sinh(w * t);
    case Regime::C3Plus: return 0.0;
    case Regime::C3Minus: return 2.0 * c_.a * t;
    }
    return 0.0;
}

} // namespace reflectode
