#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "reflectode/kernel.hpp"

using namespace reflectode;

TEST_CASE("chi: oriented characteristic function") {
    CHECK(chi(0.0, 2.0, 1.0) == 1);
    CHECK(chi(2.0, 0.0, 1.0) == -1);
    CHECK(chi(0.0, 2.0, 3.0) == 0);
    CHECK(chi(0.0, 2.0, -0.5) == 0);
    // Boundary handling follows the defining inequalities literally.
    CHECK(chi(0.0, 2.0, 0.0) == 1);
    CHECK(chi(0.0, 2.0, 2.0) == 1);
    CHECK(chi(2.0, 0.0, 0.0) == -1);
    CHECK(chi(2.0, 0.0, 2.0) == 0);
    CHECK(chi(1.0, 1.0, 1.0) == 1);
    // Orientation flip away from boundaries.
    CHECK(chi(0.0, 2.0, 1.3) == -chi(2.0, 0.0, 1.3));
}

TEST_CASE("green_eval: pinned point values") {
    const GreenKernel g11(Coefficients{1.0, 1.0});
    CHECK(g11(0.5, 0.2) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(g11(1.0, 2.0) == 0.0);

    const GreenKernel gc1(Coefficients{-5.0, 4.0});
    CHECK(gc1(0.3, -0.1) ==
          doctest::Approx(-5.0 / 3.0 * std::sin(0.6)).epsilon(1e-13));
    CHECK(gc1(1.0, 2.0) == 0.0);
}

TEST_CASE("green_eval: compact support is exact") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> time(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const GreenKernel g(Coefficients{coef(rng), coef(rng)});
        const double t = time(rng);
        double s = time(rng);
        if (std::abs(s) <= std::abs(t)) s = (s < 0 ? -1.0 : 1.0) * (std::abs(t) + 0.1);
        CHECK(g(t, s) == 0.0);
    }
}

TEST_CASE("green_eval: invalid input") {
    const GreenKernel g(Coefficients{1.0, 2.0});
    CHECK_THROWS_AS(g(std::nan(""), 0.0), InvalidInputError);
    CHECK_THROWS_AS(g(0.0, std::numeric_limits<double>::infinity()),
                    InvalidInputError);
}

namespace {

// Random sample with s inside the support of G(t,.) and, for hyperbolic
// coefficients, bounded omega*(|t|+|s|) so 1e-12 absolute comparisons are
// meaningful against the product formula's rounding.
struct Draw {
    Coefficients ab;
    double t, s;
};

Draw draw_sample(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-2.5, 2.5);
    std::uniform_real_distribution<double> time(-1.5, 1.5);
    for (;;) {
        Draw d{{coef(rng), coef(rng)}, time(rng), 0.0};
        std::uniform_real_distribution<double> inner(-std::abs(d.t), std::abs(d.t));
        d.s = inner(rng);
        const CaseClass k = classify(d.ab);
        if (k.tag == Regime::C2 && k.omega * (std::abs(d.t) + std::abs(d.s)) > 2.0)
            continue;
        return d;
    }
}

} // namespace

TEST_CASE("reflection antisymmetry on random samples") {
    std::mt19937 rng(101);
    int per_regime[4] = {0, 0, 0, 0};
    int done = 0;
    while (done < 1500) {
        const Draw d = draw_sample(rng);
        const GreenKernel g(d.ab);
        const GreenKernel gm(Coefficients{-d.ab.a, -d.ab.b});
        CHECK(std::abs(g(d.t, d.s) + gm(-d.t, -d.s)) <= 1e-12);
        per_regime[static_cast<int>(classify(d.ab).tag)]++;
        ++done;
    }
    // Random continuous draws land in C1/C2 only; cover C3 explicitly.
    CHECK(per_regime[0] > 100);
    CHECK(per_regime[1] > 100);
    std::uniform_real_distribution<double> coef(0.2, 2.5);
    std::uniform_real_distribution<double> time(-1.5, 1.5);
    for (int i = 0; i < 500; ++i) {
        const double a = coef(rng) * (i % 2 ? -1 : 1);
        const double b = (i % 4 < 2) ? a : -a; // alternate C3plus / C3minus
        const GreenKernel g(Coefficients{a, b});
        const GreenKernel gm(Coefficients{-a, -b});
        const double t = time(rng);
        std::uniform_real_distribution<double> inner(-std::abs(t), std::abs(t));
        const double s = inner(rng);
        CHECK(std::abs(g(t, s) + gm(-t, -s)) <= 1e-12);
    }
}

TEST_CASE("piecewise table agrees with the product formula") {
    std::mt19937 rng(202);
    for (int i = 0; i < 800; ++i) {
        const Draw d = draw_sample(rng);
        const GreenKernel g(d.ab);
        CHECK(std::abs(g(d.t, d.s) - g.product_form(d.t, d.s)) <= 1e-12);
    }
}

TEST_CASE("kernel regime continuity across a^2 = b^2") {
    // C1 side vs C3plus, C2 side vs C3plus, and the C3minus analogues.
    struct Probe {
        Coefficients near, limit;
    };
    // The 1e-9 offset keeps |a^2-b^2| above the classification tolerance
    // (1e-12 relative), so the near pair genuinely lands in C1/C2.
    const Probe probes[] = {
        {{1.0 + 1e-9, 1.0}, {1.0, 1.0}},   // C1 -> C3plus
        {{1.0, 1.0 + 1e-9}, {1.0, 1.0}},   // C2 -> C3plus
        {{-1.0 - 1e-9, 1.0}, {-1.0, 1.0}}, // C1 -> C3minus
        {{-1.0, 1.0 + 1e-9}, {-1.0, 1.0}}, // C2 -> C3minus
    };
    for (const Probe& p : probes) {
        const CaseClass kn = classify(p.near);
        CHECK(kn.tag != classify(p.limit).tag);
        const GreenKernel gn(p.near);
        const GreenKernel gl(p.limit);
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double t = -2.0 + 4.0 * i / 20.0;
                const double s = -2.0 + 4.0 * j / 20.0;
                CHECK(std::abs(gn(t, s) - gl(t, s)) <= 1e-6);
            }
    }
}

TEST_CASE("green_grid: corner lattice and antisymmetric pair") {
    const GreenKernel g(Coefficients{1.0, 1.0});
    const GreenGrid grid = green_grid(g, 0.0, 1.0, 0.0, 1.0, 2);
    REQUIRE(grid.t.size() == 2);
    REQUIRE(grid.s.size() == 2);
    REQUIRE(grid.values.size() == 4);
    CHECK(grid.values[0] == doctest::Approx(1.0)); // G(0,0)
    CHECK(grid.values[1] == 0.0);                  // G(0,1)
    CHECK(grid.values[2] == doctest::Approx(0.0)); // G(1,0)
    CHECK(grid.values[3] == doctest::Approx(1.0)); // G(1,1)
    for (std::size_t i = 0; i < grid.t.size(); ++i)
        for (std::size_t j = 0; j < grid.s.size(); ++j)
            CHECK(grid.values[i * grid.s.size() + j] ==
                  doctest::Approx(g(grid.t[i], grid.s[j])));

    const GreenKernel gm(Coefficients{-1.0, -1.0});
    for (double t : {0.3, -0.8, 1.2})
        for (double s : {0.1, -0.5, 0.9})
            CHECK(g(t, s) == doctest::Approx(-gm(-t, -s)).epsilon(1e-14));

    CHECK_THROWS_AS(green_grid(g, 0.0, 1.0, 0.0, 1.0, 1), InvalidInputError);
    CHECK_THROWS_AS(green_grid(g, 1.0, 0.0, 0.0, 1.0, 4), InvalidInputError);
}
