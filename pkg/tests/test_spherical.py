import math
from fractions import Fraction

import numpy as np
import pytest

from steinchar.characters import class_eigenvalues
from steinchar.partitions import Signature
from steinchar.spherical import (
    JackContext,
    coe_table,
    cse_table,
    gegenbauer,
    jack_dimension,
    jack_principal_specialization,
    m_from_p_expansion,
    pieri_column_constant,
    signature_dimension,
    signature_specialization,
    sphere_dimension,
    sphere_spherical_function,
    sphere_table,
)


def test_gegenbauer_low_degrees():
    for rho in (0.5, 1.0, 2.5):
        for x in (-0.9, 0.0, 0.4, 1.0):
            assert gegenbauer(0, rho, x) == 1.0
            assert gegenbauer(1, rho, x) == pytest.approx(2 * rho * x, abs=1e-14)
            assert gegenbauer(2, rho, x) == pytest.approx(
                -rho + 2 * rho * (1 + rho) * x * x, rel=1e-13, abs=1e-13
            )


@pytest.mark.parametrize("rho", [0.5, 1.0, 1.5, 2.0, 4.0])
@pytest.mark.parametrize("x", [-1.0, -0.3, 0.3, 0.95, 1.0])
def test_gegenbauer_generating_function(rho, x):
    # sum_l C_l(x) t^l = (1 - 2xt + t^2)^(-rho), checked through degree 12
    t = 0.1
    tail_degree = 60
    series = sum(gegenbauer(l, rho, x) * t**l for l in range(tail_degree))
    assert series == pytest.approx((1 - 2 * x * t + t * t) ** (-rho), abs=1e-10)


def test_gegenbauer_at_one_binomial_series():
    # x = 1 collapses the generating function to (1 - t)^(-2 rho)
    rho = 1.3
    for l in range(8):
        coeff = math.prod((2 * rho + i) / (i + 1) for i in range(l)) if l else 1.0
        assert gegenbauer(l, rho, 1.0) == pytest.approx(coeff, rel=1e-12)


def test_sphere_table_values():
    with pytest.raises(ValueError):
        sphere_table(2)
    t = sphere_table(6)
    assert t.tau.dim == 6.0
    assert t.components[1].dim == sphere_dimension(2, 6) == 20
    assert t.components[1].multiplicity == pytest.approx(math.sqrt(10.0 / 8.0), rel=1e-14)
    for x in (-0.7, 0.1, 0.8):
        assert t.components[1].ratio(x) == pytest.approx((6 * x * x - 1) / 5, rel=1e-13)
        assert t.tau.ratio(x) == pytest.approx(x)
    # omega at the identity coset is 1 for every component
    for comp in t.components:
        assert comp.ratio(1.0 - 1e-15) == pytest.approx(1.0, abs=1e-12)


def test_sphere_spherical_function_matches_table():
    for n in (3, 5, 9):
        t = sphere_table(n)
        for x in (-0.5, 0.0, 0.6):
            assert sphere_spherical_function(2, n, x) == pytest.approx(
                t.components[1].ratio(x), rel=1e-12
            )
            assert sphere_spherical_function(1, n, x) == pytest.approx(x, rel=1e-13)


def test_jack_principal_specialization_examples():
    for alpha in (Fraction(2), Fraction(1, 2)):
        ctx = JackContext(alpha, 7)
        assert jack_principal_specialization((1,), ctx) == 7
        assert jack_principal_specialization((), ctx) == 1
    ctx = JackContext(Fraction(2), 5)
    assert jack_principal_specialization((2,), ctx) == Fraction(5 * 7, 3)


def test_jack_dimension_examples():
    n = 6
    assert jack_dimension((1,), JackContext(Fraction(2), n)) == Fraction(n * (n + 1), 2)
    assert jack_dimension((1,), JackContext(Fraction(1, 2), n)) == n * (2 * n - 1)
    assert jack_dimension((), JackContext(Fraction(2), n)) == 1


def test_jack_row_count_guard():
    ctx = JackContext(Fraction(2), 2)
    with pytest.raises(ValueError):
        jack_principal_specialization((1, 1, 1), ctx)
    with pytest.raises(ValueError):
        jack_dimension((1, 1, 1), ctx)


def test_conjugate_labels_share_specialization_and_dimension():
    # the determinant-power shift changes neither P(1^n) nor the dimension
    for alpha in (Fraction(2), Fraction(1, 2)):
        for n in (3, 5):
            ctx = JackContext(alpha, n)
            s2c = Signature((0,) * (n - 1) + (-2,))
            s11c = Signature((0,) * (n - 2) + (-1, -1))
            assert signature_specialization(s2c, ctx) == jack_principal_specialization((2,), ctx)
            assert signature_dimension(s2c, ctx) == jack_dimension((2,), ctx)
            assert signature_specialization(s11c, ctx) == jack_principal_specialization(
                (1, 1), ctx
            )
            assert signature_dimension(s11c, ctx) == jack_dimension((1, 1), ctx)


def test_m_from_p_trivial_conversion():
    n = 5
    ctx = JackContext(Fraction(2), n)
    tau_dim = float(jack_dimension((1,), ctx))
    m = m_from_p_expansion(4 * n / (n + 1), Signature((0,) * n), tau_dim, ctx)
    assert m == pytest.approx(2.0, rel=1e-12)


def test_m_from_p_r1_self_case():
    n = 4
    for alpha in (Fraction(2), Fraction(1, 2)):
        ctx = JackContext(alpha, n)
        tau_dim = float(jack_dimension((1,), ctx))
        sig = Signature((1,) + (0,) * (n - 1))
        assert m_from_p_expansion(1.0, sig, tau_dim, ctx, r=1) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("build,alpha", [(coe_table, 2), (cse_table, 0.5)])
def test_circular_tables_structure(build, alpha):
    with pytest.raises(ValueError):
        build(1)
    for n in (2, 4):
        t = build(n)
        t.validate()
        assert float(t.alpha_param) == alpha
        assert t.trivial_multiplicity() == pytest.approx(2.0, rel=1e-12)
        assert t.a(1.3) == pytest.approx(2 * (1 - math.cos(1.3)) / n, rel=1e-13)
        got = {c.label: c for c in t.components}
        # conjugate pairs carry equal multiplicities and ratios at these classes
        for a, b in [("(2)", "(-2)"), ("(1,1)", "(-1,-1)")]:
            assert got[a].multiplicity == pytest.approx(got[b].multiplicity, rel=1e-13)
            assert got[a].ratio(0.9) == pytest.approx(got[b].ratio(0.9), rel=1e-13)
        for comp in t.components:
            assert comp.multiplicity >= 0
            assert comp.ratio(1e-9) == pytest.approx(1.0, abs=1e-12)


def test_circular_w_coefficients():
    # sqrt(dim tau / 2) / n reproduces the stated normalizations
    for n in (2, 5, 11):
        t = coe_table(n)
        assert t.w_coefficient == pytest.approx(0.5 * math.sqrt(1 + 1 / n), rel=1e-14)
        assert math.sqrt(t.tau.dim / 2) / n == pytest.approx(t.w_coefficient, rel=1e-14)
        t = cse_table(n)
        assert t.w_coefficient == pytest.approx(math.sqrt(1 - 1 / (2 * n)), rel=1e-14)
        assert math.sqrt(t.tau.dim / 2) / n == pytest.approx(t.w_coefficient, rel=1e-14)


def test_circular_ratios_match_char_fn_at_class():
    for build in (coe_table, cse_table):
        for n in (2, 3, 5):
            t = build(n)
            for theta in (0.5, 2.2):
                x = class_eigenvalues("u", n, theta)
                p1, p2 = x.sum(), (x * x).sum()
                for comp in t.components:
                    if comp.is_trivial:
                        continue
                    w = comp.char_fn(p1, p2)
                    assert comp.ratio(theta) == pytest.approx(complex(w).real, abs=1e-11)


def test_pieri_column_constants():
    assert pieri_column_constant(Fraction(2), 4) == Fraction(8, 5)
    assert pieri_column_constant(Fraction(1, 2), 4) == Fraction(4, 7)
    # consistency at n=2: the constant equals 2 - (degree-2 monomial coefficient)
    from steinchar.spherical import jack_p2_monomial_coeff

    for alpha in (Fraction(2), Fraction(1, 2)):
        assert pieri_column_constant(alpha, 2) == 2 - jack_p2_monomial_coeff(alpha)


def test_balance_at_identity():
    # complex spherical tables: sum m sqrt(dim) = 4 dim(tau)
    for build in (coe_table, cse_table):
        t = build(5)
        total = sum(c.multiplicity * math.sqrt(c.dim) for c in t.components)
        assert total == pytest.approx(4 * t.tau.dim, rel=1e-12)
    # real sphere table: sum m sqrt(dim)/dim(tau) = 1
    t = sphere_table(8)
    total = sum(c.multiplicity * math.sqrt(c.dim) for c in t.components)
    assert total == pytest.approx(t.tau.dim, rel=1e-12)
