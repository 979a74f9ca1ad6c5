#include "reflectode/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace reflectode {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

double eta(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidInputError("eta: arguments must be finite");
    const double disc = a * a - b * b;
    if (!(disc > 0.0))
        throw InvalidInputError("eta: requires a^2 > b^2");
    const double w = std::sqrt(disc);
    // atan2(w, b) collapses the three branches: arctan(w/b) for b>0,
    // pi/2 for b=0 (then w = |a|), arctan(w/b)+pi for b<0.
    return std::atan2(w, b) / w;
}

double sigma(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidInputError("sigma: arguments must be finite");
    const double disc = b * b - a * a;
    if (!(disc > 0.0))
        throw InvalidInputError("sigma: requires a^2 < b^2");
    const double w = std::sqrt(disc);
    const double z = w / b; // |z| < 1 in exact arithmetic; -> +/-1 as a -> 0
    if (std::abs(z) >= 1.0 - 1e-15)
        return z > 0.0 ? kInf : -kInf;
    return std::atanh(z) / w;
}

double DegenerateSet::distance(double t0) const {
    switch (kind) {
    case Kind::Empty: return kInf;
    case Kind::Single: return std::abs(t0 - base);
    case Kind::Progression: {
        const double r = std::remainder(t0 - base, spacing);
        return std::abs(r);
    }
    }
    return kInf;
}

bool DegenerateSet::contains(double t0) const {
    const CaseClass k = classify(coeffs);
    const HomogeneousPair pair(coeffs, k);
    return std::abs(pair.u(t0)) <= kUniquenessTol * (1.0 + std::abs(t0));
}

std::string DegenerateSet::describe() const {
    switch (kind) {
    case Kind::Empty: return "degenerate set: empty (utilde has no real zero)";
    case Kind::Single: return "degenerate set: single point t0 = " + fmt(base);
    case Kind::Progression:
        return "degenerate set: t0 = " + fmt(base) + " + k*" + fmt(spacing) +
               " for integer k";
    }
    return "";
}

DegenerateSet degenerate_t0(double a, double b) {
    const Coefficients c{a, b};
    const CaseClass k = classify(c);
    DegenerateSet out;
    out.coeffs = c;
    switch (k.tag) {
    case Regime::C1: {
        // zeros of cos(wt) - ((a+b)/w) sin(wt): tan(wt) = w/(a+b), spaced pi/w.
        out.kind = DegenerateSet::Kind::Progression;
        out.base = std::atan(k.omega / (a + b)) / k.omega;
        out.spacing = kPi / k.omega;
        break;
    }
    case Regime::C2: {
        // cosh(wt) = ((a+b)/w) sinh(wt) solvable iff |w/(a+b)| < 1 iff ab > 0.
        if (a * b > 0.0) {
            out.kind = DegenerateSet::Kind::Single;
            out.base = std::atanh(k.omega / (a + b)) / k.omega;
        }
        break;
    }
    case Regime::C3Plus: {
        if (a != 0.0) {
            out.kind = DegenerateSet::Kind::Single;
            out.base = 1.0 / (2.0 * a);
        }
        break;
    }
    case Regime::C3Minus:
        break; // utilde == 1
    }
    return out;
}

namespace {

TriangleSign uncond(const char* tri, SignKind s, double lo, double hi) {
    return {tri, s, false, lo, hi};
}

TriangleSign cond(const char* tri, SignKind s, double lo, double hi) {
    return {tri, s, true, lo, hi};
}

} // namespace

SignReport sign_report(double a, double b) {
    const Coefficients c{a, b};
    SignReport rep;
    rep.coeffs = c;
    rep.kase = classify(c);
    const double w = rep.kase.omega;

    switch (rep.kase.tag) {
    case Regime::C1: {
        const double e_ab = eta(a, b);
        const double e_amb = eta(a, -b);
        const double pw = kPi / w;
        rep.triangles[0] = cond("T1", SignKind::Positive, 0.0, e_ab);
        rep.triangles[1] = cond("T2", SignKind::Negative, -e_amb, 0.0);
        const SignKind sa = a > 0.0 ? SignKind::Positive : SignKind::Negative;
        rep.triangles[2] = cond("T3", sa, 0.0, pw);
        rep.triangles[3] = cond("T4", sa, -pw, 0.0);
        rep.strip = a > 0.0 ? Strip{+1, 0.0, e_ab} : Strip{-1, -e_amb, 0.0};
        rep.thresholds = {{"eta(a,b)", e_ab}, {"eta(a,-b)", e_amb}, {"pi/omega", pw}};
        break;
    }
    case Regime::C2: {
        const double s_ab = sigma(a, b);
        if (b > 0.0) {
            if (std::isinf(s_ab))
                rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            else
                rep.triangles[0] = cond("T1", SignKind::Positive, 0.0, s_ab);
            rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
        } else {
            rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            if (std::isinf(s_ab))
                rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
            else
                rep.triangles[1] = cond("T2", SignKind::Negative, s_ab, 0.0);
        }
        const SignKind sa = a == 0.0 ? SignKind::Zero
                            : a > 0.0 ? SignKind::Positive
                                      : SignKind::Negative;
        rep.triangles[2] = uncond("T3", sa, 0.0, kInf);
        rep.triangles[3] = uncond("T4", sa, -kInf, 0.0);
        if (b > 0.0)
            rep.strip = a >= 0.0 ? Strip{+1, 0.0, s_ab} : Strip{-1, -kInf, 0.0};
        else
            rep.strip = a <= 0.0 ? Strip{-1, s_ab, 0.0} : Strip{+1, 0.0, kInf};
        rep.thresholds = {{"sigma(a,b)", s_ab}};
        break;
    }
    case Regime::C3Plus: {
        if (a > 0.0) {
            const double inv = 1.0 / a;
            rep.triangles[0] = cond("T1", SignKind::Positive, 0.0, inv);
            rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Positive, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Positive, -kInf, 0.0);
            rep.strip = {+1, 0.0, inv};
            rep.thresholds = {{"1/a", inv}};
        } else if (a < 0.0) {
            const double inv = 1.0 / a; // negative
            rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            rep.triangles[1] = cond("T2", SignKind::Negative, inv, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Negative, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Negative, -kInf, 0.0);
            rep.strip = {-1, inv, 0.0};
            rep.thresholds = {{"1/a", inv}};
        } else { // a = b = 0: G = chi_0^t(s)
            rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Zero, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Zero, -kInf, 0.0);
            rep.strip = {+1, 0.0, kInf};
        }
        break;
    }
    case Regime::C3Minus: {
        if (a > 0.0) {
            const double minv = -1.0 / a; // negative
            rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            rep.triangles[1] = cond("T2", SignKind::Negative, minv, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Positive, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Positive, -kInf, 0.0);
            rep.strip = {+1, 0.0, kInf};
            rep.thresholds = {{"-1/a", minv}};
        } else if (a < 0.0) {
            const double minv = -1.0 / a; // positive
            rep.triangles[0] = cond("T1", SignKind::Positive, 0.0, minv);
            rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Negative, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Negative, -kInf, 0.0);
            rep.strip = {-1, -kInf, 0.0};
            rep.thresholds = {{"-1/a", minv}};
        } else { // a = 0, b = 0
            rep.triangles[0] = uncond("T1", SignKind::Positive, 0.0, kInf);
            rep.triangles[1] = uncond("T2", SignKind::Negative, -kInf, 0.0);
            rep.triangles[2] = uncond("T3", SignKind::Zero, 0.0, kInf);
            rep.triangles[3] = uncond("T4", SignKind::Zero, -kInf, 0.0);
            rep.strip = {+1, 0.0, kInf};
        }
        break;
    }
    }
    return rep;
}

} // namespace reflectode
