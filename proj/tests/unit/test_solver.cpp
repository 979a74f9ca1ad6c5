#include <doctest.h>

#include <cmath>
#include <random>

#include "reflectode/solver.hpp"

using namespace reflectode;

namespace {

Forcing smooth(std::function<double(double)> f) {
    Forcing h;
    h.h = std::move(f);
    return h;
}

Forcing bump1() {
    Forcing h;
    h.h = [](double t) { return (t >= 0.0 && t <= 1.0) ? 12.0 * t * (1.0 - t) : 0.0; };
    h.breakpoints = {0.0, 1.0};
    return h;
}

// Piecewise quartic solved by the a=b=1 bump problem (epsilon = 1).
double quartic(double t) {
    if (t < -1.0) return -2.0 * t - 1.0;
    if (t < 0.0) return -t * t * t * t - 2.0 * t * t * t;
    if (t < 1.0) return t * t * t * t - 6.0 * t * t * t + 6.0 * t * t;
    return -2.0 * t + 3.0;
}

} // namespace

TEST_CASE("solve: C1 fixture ubar closed form and first zero") {
    ProblemSpec p;
    p.coeffs = {-5.0, 4.0};
    p.t0 = 0.0;
    p.c = 0.0;
    p.h = smooth([](double t) {
        const double ct = std::cos(3.0 * t);
        return ct * ct;
    });
    const Solution sol = solve(p);
    CHECK(sol.lambda() == doctest::Approx(0.0));
    auto exact = [](double t) {
        return (6.0 * std::cos(3.0 * t) + 3.0 * std::cos(6.0 * t) +
                2.0 * std::sin(3.0 * t) + 2.0 * std::sin(6.0 * t) - 9.0) /
               18.0;
    };
    const double hi = 2.0 * M_PI / 3.0;
    for (int i = 0; i <= 50; ++i) {
        const double t = hi * i / 50.0;
        CHECK(std::abs(sol(t) - exact(t)) <= 1e-8);
    }
    // First positive zero of ubar (gamma in the worked example): ubar rises
    // from 0, stays positive, and crosses down at gamma.
    double lo = 0.1, up = 0.3;
    REQUIRE(sol(lo) > 0.0);
    REQUIRE(sol(up) < 0.0);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + up);
        (sol(mid) > 0.0 ? lo : up) = mid;
    }
    CHECK(std::abs(0.5 * (lo + up) - 0.20182441863107062) <= 1e-6);
}

TEST_CASE("solve: C2 fixture, ubar = sinh and full solution") {
    ProblemSpec p;
    p.coeffs = {1.0, 2.0};
    p.h = smooth([](double t) { return std::exp(t); });
    p.t0 = 0.0;
    p.c = 0.0;
    const Solution s0 = solve(p);
    for (int i = 0; i <= 40; ++i) {
        const double t = -2.0 + 4.0 * i / 40.0;
        CHECK(std::abs(s0.ubar(t) - std::sinh(t)) <= 1e-8);
    }
    p.t0 = 1.0;
    p.c = std::sinh(1.0);
    const Solution s1 = solve(p);
    CHECK(std::abs(s1(1.0) - std::sinh(1.0)) <= 1e-12);
    for (int i = 0; i <= 40; ++i) {
        const double t = -2.0 + 4.0 * i / 40.0;
        CHECK(std::abs(s1(t) - std::sinh(t)) <= 1e-8);
    }
}

TEST_CASE("solve: critical bump fixture reproduces the quartic") {
    ProblemSpec p;
    p.coeffs = {1.0, 1.0};
    p.t0 = 0.0;
    p.c = 0.0;
    p.h = bump1();
    const Solution sol = solve(p);
    for (int i = 0; i <= 60; ++i) {
        const double t = -3.0 + 6.0 * i / 60.0;
        CHECK(std::abs(sol(t) - quartic(t)) <= 1e-8);
    }
    // Sign change pinned at 1.5.
    double lo = 1.2, hi = 1.8;
    REQUIRE(sol(lo) > 0.0);
    REQUIRE(sol(hi) < 0.0);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sol(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - 1.5) <= 1e-6);
}

TEST_CASE("solve: nonuniqueness at degenerate t0") {
    ProblemSpec p;
    p.coeffs = {1.0, 1.0};
    p.t0 = 0.5;
    p.c = 0.0;
    p.h = smooth([](double) { return 1.0; });
    CHECK_THROWS_AS(solve(p), NonUniqueError);
    try {
        (void)solve(p);
    } catch (const NonUniqueError& e) {
        CHECK(std::string(e.what()).find("t0") != std::string::npos);
    }
    p.t0 = 0.5 + 1e-12;
    CHECK_THROWS_AS(solve(p), NonUniqueError);
    p.t0 = 0.51;
    CHECK_NOTHROW(solve(p));
}

TEST_CASE("solve: superposition and homogeneous difference") {
    const Coefficients ab{0.8, -0.3};
    auto h1 = [](double t) { return std::cos(t); };
    auto h2 = [](double t) { return t * t; };

    ProblemSpec p1{ab, 0.4, 0.7, smooth(h1)};
    ProblemSpec p2{ab, 0.4, -0.2, smooth(h2)};
    ProblemSpec p12{ab, 0.4, 0.5, smooth([h1, h2](double t) { return h1(t) + h2(t); })};
    const Solution s1 = solve(p1), s2 = solve(p2), s12 = solve(p12);
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs(s12(t) - (s1(t) + s2(t))) <= 1e-9);
    }

    ProblemSpec q1{ab, 0.4, 1.0, smooth(h1)};
    ProblemSpec q2{ab, 0.4, 2.5, smooth(h1)};
    const Solution u1 = solve(q1), u2 = solve(q2);
    const double dl = u2.lambda() - u1.lambda();
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs((u2(t) - u1(t)) - dl * u1.utilde(t)) <= 1e-10);
    }
}

TEST_CASE("solve: initial condition and ubar normalization") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> tim(-1.0, 1.0);
    int done = 0;
    while (done < 10) {
        ProblemSpec p;
        p.coeffs = {coef(rng), coef(rng)};
        p.t0 = tim(rng);
        p.c = coef(rng);
        const double k = coef(rng);
        p.h = smooth([k](double t) { return std::exp(-t * t) + k * t; });
        try {
            const Solution s = solve(p);
            CHECK(std::abs(s(p.t0) - p.c) <= 1e-9 * (1.0 + std::abs(p.c)));
            CHECK(s.ubar(0.0) == 0.0);
            CHECK(std::abs(ubar(p, 0.7) - s.ubar(0.7)) <= 1e-12);
            ++done;
        } catch (const NonUniqueError&) {
            // unlucky draw; redraw
        }
    }
}

TEST_CASE("closed_form_c31: agrees with solve and handles |t|^p") {
    ProblemSpec p;
    p.coeffs = {0.7, 0.7};
    p.t0 = 0.3;
    p.c = 2.0;
    p.h = smooth([](double t) { return std::cos(t); });
    const Solution cf = closed_form_c31(p);
    const Solution gs = solve(p);
    CHECK(std::abs(cf(p.t0) - p.c) <= 1e-10);
    CHECK(std::abs(cf.ubar(0.0)) <= 1e-10);
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs(cf(t) - gs(t)) <= 2e-8);
    }

    // h = |t|^p with p = -1/2: u = t|t|^p/(p+1) + 1 - 2t for t0=0, c=1.
    ProblemSpec q;
    q.coeffs = {1.0, 1.0};
    q.t0 = 0.0;
    q.c = 1.0;
    q.h.h = [](double t) { return std::pow(std::abs(t), -0.5); };
    q.h.singular_points = {0.0};
    const Solution sq = closed_form_c31(q);
    auto exact = [](double t) {
        const double sgn = t < 0 ? -1.0 : 1.0;
        return 2.0 * sgn * std::sqrt(std::abs(t)) + 1.0 - 2.0 * t;
    };
    for (double t : {-1.0, -0.25, 0.25, 0.5, 1.0, 2.0})
        CHECK(std::abs(sq(t) - exact(t)) <= 1e-6);

    // Degenerate 2*a*t0 = 1 and wrong-regime guards.
    ProblemSpec d = p;
    d.t0 = 1.0 / (2.0 * 0.7);
    CHECK_THROWS_AS(closed_form_c31(d), NonUniqueError);
    ProblemSpec w = p;
    w.coeffs = {1.0, 2.0};
    CHECK_THROWS_AS(closed_form_c31(w), InvalidInputError);
}

TEST_CASE("closed_form_c32: oracle-pinned sign and worked example") {
    // h == 1, a = 1, b = -1, t0 = 0, c = 0  ->  u = t + t^2.
    ProblemSpec p;
    p.coeffs = {1.0, -1.0};
    p.t0 = 0.0;
    p.c = 0.0;
    p.h = smooth([](double) { return 1.0; });
    const Solution cf = closed_form_c32(p);
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs(cf(t) - (t + t * t)) <= 1e-9);
    }
    const Solution gs = solve(p);
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs(cf(t) - gs(t)) <= 2e-8);
    }

    // Worked arctan example at lambda = 1: a=1, b=-1,
    // h=(t^2-2t+1)/(1+t^2)^2, t0=0, c=1.
    ProblemSpec q;
    q.coeffs = {1.0, -1.0};
    q.t0 = 0.0;
    q.c = 1.0;
    q.h = smooth([](double t) {
        const double d = 1.0 + t * t;
        return (t * t - 2.0 * t + 1.0) / (d * d);
    });
    const Solution sq = closed_form_c32(q);
    auto exact = [](double t) {
        return 1.0 / (1.0 + t * t) + (1.0 + 2.0 * t) * std::atan(t) -
               std::log(1.0 + t * t);
    };
    for (int i = 0; i <= 20; ++i) {
        const double t = -2.0 + 4.0 * i / 20.0;
        CHECK(std::abs(sq(t) - exact(t)) <= 1e-8);
    }
    CHECK(std::abs(sq(q.t0) - q.c) <= 1e-12);

    ProblemSpec w = p;
    w.coeffs = {1.0, 1.0};
    CHECK_THROWS_AS(closed_form_c32(w), InvalidInputError);
}
