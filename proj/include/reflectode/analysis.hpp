#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "reflectode/core.hpp"

namespace reflectode {

// Shared "nonunique" threshold: |utilde(t0)| <= kUniquenessTol * (1 + |t0|).
inline constexpr double kUniquenessTol = 1e-10;

// Threshold of the maximum principle in the oscillatory regime (a^2 > b^2):
//   b > 0: arctan(omega/b)/omega
//   b = 0: pi/(2|a|)
//   b < 0: (arctan(omega/b) + pi)/omega
// Always in (0, pi/omega]. Throws InvalidInputError outside a^2 > b^2.
double eta(double a, double b);

// Threshold in the hyperbolic regime (a^2 < b^2): artanh(omega/b)/omega.
// Negative when b < 0; +/-infinity sentinel when |omega/b| >= 1 - 1e-15
// (reached as a -> 0). Throws InvalidInputError outside a^2 < b^2.
double sigma(double a, double b);

// The set {t0 : utilde(t0) = 0} where the initial-value problem loses
// uniqueness.
struct DegenerateSet {
    enum class Kind { Empty, Single, Progression };
    Kind kind = Kind::Empty;
    double base = 0.0;    // the single point, or the progression base
    double spacing = 0.0; // progression only: pi/omega
    Coefficients coeffs{};

    // Distance from t0 to the set (+infinity when empty).
    double distance(double t0) const;
    // Membership via |utilde(t0)| <= kUniquenessTol * (1 + |t0|).
    bool contains(double t0) const;
    std::string describe() const;
};

DegenerateSet degenerate_t0(double a, double b);

// Sign of G over one triangle of its support, possibly only for t inside
// (win_lo, win_hi); unconditional descriptors use the triangle's natural
// half-line as the window.
enum class SignKind { Positive, Negative, Zero };

struct TriangleSign {
    const char* triangle; // "T1".."T4"
    SignKind sign = SignKind::Zero;
    bool conditional = false; // true: sign holds iff t in (win_lo, win_hi)
    double win_lo = 0.0;
    double win_hi = 0.0;
};

// Maximal strip [lo, hi] x R on which G keeps one sign (+1 nonneg, -1 nonpos);
// endpoints may be +/-infinity.
struct Strip {
    int sign = +1;
    double lo = 0.0;
    double hi = 0.0;
};

struct SignReport {
    Coefficients coeffs{};
    CaseClass kase{};
    // T1 = {0<s<t}, T2 = {t<s<0}, T3 = {-t<s<0}, T4 = {0<s<-t}.
    std::array<TriangleSign, 4> triangles{};
    Strip strip{};
    std::vector<std::pair<std::string, double>> thresholds{};
};

SignReport sign_report(double a, double b);

} // namespace reflectode
