import math

import pytest

import reflectode as r


def test_classify():
    assert r.classify(-5, 4) == {"case": "C1", "omega": pytest.approx(3.0)}
    assert r.classify(1, 2)["case"] == "C2"
    assert r.classify(1, 1)["case"] == "C3Plus"
    assert r.classify(1, -1)["case"] == "C3Minus"


def test_homogeneous_pair():
    p = r.HomogeneousPair(1, 1)
    assert p.u(0.25) == pytest.approx(0.5)
    assert p.v(3.0) == pytest.approx(1.0)
    q = r.HomogeneousPair(-5, 4)
    t = 0.37
    assert q.u_even(t) ** 2 - q.u_odd(t) ** 2 == pytest.approx(
        q.u(t) * q.u(-t), abs=1e-12
    )


def test_green_kernel_corners():
    g = r.GreenKernel(1, 1)
    assert g(0, 0) == pytest.approx(1.0)
    assert g(1, 0) == pytest.approx(0.0)
    assert g(1, 1) == pytest.approx(1.0)
    assert g(2, 3) == 0.0  # outside the support
    t, s, values = r.green_grid(1, 1, 0, 1, 0, 1, 2)
    assert values == pytest.approx([1.0, 0.0, 0.0, 1.0])


def test_integrate():
    assert r.integrate(lambda t: t * t, 0, 1) == pytest.approx(1 / 3)
    assert r.integrate(lambda t: 1.0, 2, 0) == pytest.approx(-2.0)
    # Integrable endpoint singularity declared via metadata.
    val = r.integrate(lambda t: abs(t) ** -0.5, 0, 1, singular_points=[0.0])
    assert val == pytest.approx(2.0, abs=1e-8)


def test_solve_expression_and_callable():
    s = r.solve(1, 2, 0, 0, "exp(t)")
    assert s(1.0) == pytest.approx(math.sinh(1.0), abs=1e-8)
    assert s.case_ == "C2"
    s2 = r.solve(1, 2, 0, 0, lambda t: math.exp(t))
    assert s2(1.0) == pytest.approx(math.sinh(1.0), abs=1e-8)
    assert abs(s.lambda_) <= 1e-9


def test_solve_bump_fixture():
    s = r.solve(1, 1, 0, 0, "bump(1)")
    assert s(1.5) == pytest.approx(0.0, abs=1e-6)
    assert s(0.5) == pytest.approx(0.8125, abs=1e-8)


def test_nonunique_raises():
    with pytest.raises(r.NonUniqueError):
        r.solve(1, 1, 0.5, 0, "1")


def test_parse_errors():
    with pytest.raises(r.ParseError):
        r.parse_forcing("cos(")
    e = r.parse_forcing("bump(1)")
    assert e.breakpoints == pytest.approx([0.0, 1.0])
    assert e(0.5) == pytest.approx(3.0)


def test_analysis():
    assert r.eta(-5, 4) == pytest.approx(0.21450036959776145)
    assert r.sigma(1, 2) == pytest.approx(0.7603459963009463)
    d = r.degenerate_t0(1, 2)
    assert d["kind"] == "single"
    assert d["point"] == pytest.approx(0.3801729981504732)
    rep = r.sign_report(1, -2)
    assert rep["strip"]["sign"] == "nonnegative"
    assert rep["strip"]["hi"] == math.inf


def test_closed_forms():
    s = r.closed_form_c32(1, -1, 0, 0, "1")
    assert s(2.0) == pytest.approx(6.0, abs=1e-9)  # u = t + t^2
    s31 = r.closed_form_c31(0.7, 0.7, 0.3, 2.0, "cos(t)")
    ref = r.solve(0.7, 0.7, 0.3, 2.0, "cos(t)")
    assert s31(1.1) == pytest.approx(ref(1.1), abs=1e-7)


def test_oracles():
    t, u = r.shooting_solve(1, 2, 0, 0, "exp(t)", 2.0, 1e-3)
    i = min(range(len(t)), key=lambda k: abs(t[k] - 1.0))
    assert u[i] == pytest.approx(math.sinh(1.0), abs=1e-6)
    tc, uc = r.collocation_solve(1, 2, 0, 0, "exp(t)", 2.0, 401)
    j = min(range(len(tc)), key=lambda k: abs(tc[k] - 1.0))
    assert uc[j] == pytest.approx(math.sinh(1.0), abs=1e-4)
