#include "reflectode/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace reflectode {
namespace {

// 15-point Kronrod abscissae (positive half) and weights; 7-point Gauss
// weights for the embedded rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0; // approx integral of |f|, sets the roundoff floor
};

RuleResult qk15(const std::function<double(double)>& f, double lo, double hi) {
    const double centr = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);
    double fv1[7], fv2[7];

    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) { // shared Gauss/Kronrod nodes: indices 1,3,5
        const int jk = 2 * j + 1;
        const double absc = hlgth * kXgk[jk];
        fv1[jk] = f(centr - absc);
        fv2[jk] = f(centr + absc);
        const double fsum = fv1[jk] + fv2[jk];
        resg += kWg[j] * fsum;
        resk += kWgk[jk] * fsum;
        resabs += kWgk[jk] * (std::abs(fv1[jk]) + std::abs(fv2[jk]));
    }
    for (int j = 0; j < 4; ++j) { // Kronrod-only nodes: indices 0,2,4,6
        const int jk = 2 * j;
        const double absc = hlgth * kXgk[jk];
        fv1[jk] = f(centr - absc);
        fv2[jk] = f(centr + absc);
        const double fsum = fv1[jk] + fv2[jk];
        resk += kWgk[jk] * fsum;
        resabs += kWgk[jk] * (std::abs(fv1[jk]) + std::abs(fv2[jk]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int jk = 0; jk < 7; ++jk)
        resasc += kWgk[jk] * (std::abs(fv1[jk] - reskh) + std::abs(fv2[jk] - reskh));

    RuleResult r;
    r.value = resk * hlgth;
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0)
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / eps50)
        abserr = std::max(eps50 * resabs, abserr);
    r.error = abserr;
    r.resabs = resabs;
    return r;
}

struct Segment {
    double lo, hi;
    double value, error, resabs;
    int depth = 0;
    bool sing_lo = false, sing_hi = false;
};

struct WorseError {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

bool near(double x, double y, double eps) { return std::abs(x - y) <= eps; }

} // namespace

IntegrationMeta mirrored(const IntegrationMeta& m) {
    IntegrationMeta out = m;
    for (double x : m.breakpoints) out.breakpoints.push_back(-x);
    for (double x : m.singular_points) out.singular_points.push_back(-x);
    auto tidy = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(out.breakpoints);
    tidy(out.singular_points);
    return out;
}

double integrate(const std::function<double(double)>& f, double t1, double t2,
                 const IntegrationMeta& meta, double tol) {
    if (!f) throw InvalidInputError("integrate: null integrand");
    if (!std::isfinite(t1) || !std::isfinite(t2))
        throw InvalidInputError("integrate: endpoints must be finite");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw InvalidInputError("integrate: tolerance must be positive");
    if (t1 == t2) return 0.0;
    if (t1 > t2) return -integrate(f, t2, t1, meta, tol);

    const double span = t2 - t1;
    const double eps = 1e-13 * std::max({1.0, std::abs(t1), std::abs(t2)});

    // Interior split points: breakpoints and singular points inside (t1, t2).
    std::vector<double> cuts;
    for (double x : meta.breakpoints)
        if (x > t1 + eps && x < t2 - eps) cuts.push_back(x);
    for (double x : meta.singular_points)
        if (x > t1 + eps && x < t2 - eps) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [eps](double x, double y) { return near(x, y, eps); }),
               cuts.end());

    auto is_singular = [&](double x) {
        for (double s : meta.singular_points)
            if (near(x, s, eps)) return true;
        return false;
    };

    std::priority_queue<Segment, std::vector<Segment>, WorseError> queue;
    double total_value = 0.0, total_error = 0.0, total_resabs = 0.0;
    double frozen_value = 0.0, frozen_error = 0.0;
    std::size_t n_segments = 0;

    auto push_segment = [&](double lo, double hi, int depth, bool slo, bool shi) {
        Segment seg{lo, hi, 0.0, 0.0, 0.0, depth, slo, shi};
        RuleResult r = qk15(f, lo, hi);
        if (!std::isfinite(r.value))
            throw QuadratureError("integrate: integrand produced non-finite values",
                                  total_value + frozen_value,
                                  std::numeric_limits<double>::infinity());
        seg.value = r.value;
        seg.error = r.error;
        seg.resabs = r.resabs;
        total_value += seg.value;
        total_error += seg.error;
        total_resabs += seg.resabs;
        queue.push(seg);
        ++n_segments;
    };

    {
        double lo = t1;
        for (double c : cuts) {
            push_segment(lo, c, 0, is_singular(lo), is_singular(c));
            lo = c;
        }
        push_segment(lo, t2, 0, is_singular(lo), is_singular(t2));
    }

    constexpr int kMaxDepth = 60;
    constexpr std::size_t kMaxSegments = 20000;

    // Roundoff floor: every panel's error estimate is clipped from below at
    // 50*eps*resabs, so the total estimate can never drop under
    // 50*eps*integral(|f|) no matter how far we subdivide.  Accepting at that
    // floor (QUADPACK-style) keeps large-magnitude integrands with heavy
    // cancellation from chasing an unattainable absolute tolerance.
    const double keps50 = 50.0 * std::numeric_limits<double>::epsilon();
    auto converged = [&]() {
        const double err = total_error + frozen_error;
        const double val = total_value + frozen_value;
        return err <= tol * (1.0 + std::abs(val)) + keps50 * total_resabs;
    };

    while (!converged()) {
        if (queue.empty() || n_segments >= kMaxSegments) {
            const double val = total_value + frozen_value;
            const double err = total_error + frozen_error;
            throw QuadratureError(
                queue.empty() ? "integrate: subdivision depth exhausted near a singular point"
                              : "integrate: interval budget exhausted",
                val, err);
        }
        Segment worst = queue.top();
        queue.pop();
        total_value -= worst.value;
        total_error -= worst.error;
        total_resabs -= worst.resabs;
        --n_segments;
        if (worst.depth >= kMaxDepth) {
            // Cannot refine further; park its contribution.
            frozen_value += worst.value;
            frozen_error += worst.error;
            total_resabs += worst.resabs;
            continue;
        }
        const double len = worst.hi - worst.lo;
        double mid;
        if (worst.sing_lo && !worst.sing_hi)
            mid = worst.lo + 0.125 * len;
        else if (worst.sing_hi && !worst.sing_lo)
            mid = worst.hi - 0.125 * len;
        else
            mid = worst.lo + 0.5 * len;
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval at rounding resolution; park it.
            frozen_value += worst.value;
            frozen_error += worst.error;
            total_resabs += worst.resabs;
            continue;
        }
        push_segment(worst.lo, mid, worst.depth + 1, worst.sing_lo, false);
        push_segment(mid, worst.hi, worst.depth + 1, false, worst.sing_hi);
    }
    (void)span;
    return total_value + frozen_value;
}

double iterated_kernel_integral(const std::function<double(double)>& phi, int n, double t,
                                double tol, const IntegrationMeta& meta) {
    if (n < 1) throw InvalidInputError("iterated_kernel_integral: order must be >= 1");
    if (!std::isfinite(t))
        throw InvalidInputError("iterated_kernel_integral: t must be finite");
    const double fact = std::tgamma(static_cast<double>(n)); // (n-1)!
    auto g = [&phi, n, t, fact](double s) {
        return std::pow(t - s, n - 1) * phi(s) / fact;
    };
    return integrate(g, 0.0, t, meta, tol);
}

} // namespace reflectode
