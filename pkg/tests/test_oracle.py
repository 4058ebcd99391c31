import math

import numpy as np
import pytest

from steinchar import stein
from steinchar.oracle import (
    jack_gram_schmidt,
    monte_carlo_multiplicity,
    numeric_limit,
    pieri_least_squares,
)


def test_gram_schmidt_schur_sanity():
    # beta = 2 is the Schur case: P_(2) = m_(2) + m_(1,1), and the full-column
    # coefficient in the first-row product is 1
    res = jack_gram_schmidt(2, 2.0)
    assert res.coefficient == pytest.approx(1.0, abs=1e-10)
    assert res.pieri_constant == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n_vars", [2, 3])
@pytest.mark.parametrize("beta,alpha", [(1.0, 2.0), (4.0, 0.5)])
def test_gram_schmidt_recovers_jack_coefficient(n_vars, beta, alpha):
    res = jack_gram_schmidt(n_vars, beta)
    assert res.coefficient == pytest.approx(2.0 / (alpha + 1.0), abs=1e-6)
    assert res.doubling_change < 1e-6
    # kappa re-derives the full-column expansion constant
    n = n_vars
    expect = 2 * n / (n + 1) if beta == 1.0 else n / (2 * n - 1)
    assert res.pieri_constant == pytest.approx(expect, abs=1e-6)


def test_gram_schmidt_guards():
    with pytest.raises(ValueError):
        jack_gram_schmidt(4, 1.0)
    with pytest.raises(ValueError):
        jack_gram_schmidt(2, 1.0, degree=3)
    with pytest.raises(ValueError, match="non-convergence"):
        jack_gram_schmidt(2, 1.0, grid=64)


def test_pieri_least_squares_coe():
    n = 4
    res = pieri_least_squares(n, "coe", count=240, rng=np.random.default_rng(0))
    assert res.residual < 1e-8
    assert res.condition_number < 1e8
    c = res.coefficients
    assert c["trivial"] == pytest.approx(4 * n / (n + 1), abs=1e-8)
    assert c["(2)"] == pytest.approx(1.0, abs=1e-8)
    assert c["(1,1)"] == pytest.approx(4.0 / 3.0, abs=1e-8)
    assert c["(-2)"] == pytest.approx(1.0, abs=1e-8)
    assert c["(-1,-1)"] == pytest.approx(4.0 / 3.0, abs=1e-8)
    assert c["(1,0^{n-2},-1)"] == pytest.approx(2.0, abs=1e-8)


def test_pieri_least_squares_cse():
    n = 4
    res = pieri_least_squares(n, "cse", count=240, rng=np.random.default_rng(1))
    assert res.residual < 1e-8
    c = res.coefficients
    assert c["trivial"] == pytest.approx(2 * n / (2 * n - 1), abs=1e-8)
    assert c["(2)"] == pytest.approx(1.0, abs=1e-8)
    assert c["(1,1)"] == pytest.approx(2.0 / 3.0, abs=1e-8)
    assert c["(1,0^{n-2},-1)"] == pytest.approx(2.0, abs=1e-8)


def test_pieri_least_squares_u3():
    res = pieri_least_squares(3, "u", count=240, rng=np.random.default_rng(2))
    assert res.residual < 1e-8
    assert res.coefficients["trivial"] == pytest.approx(2.0, abs=1e-8)
    assert res.coefficients["(1,0^{n-2},-1)"] == pytest.approx(2.0, abs=1e-8)
    assert res.coefficients["(2)"] == pytest.approx(1.0, abs=1e-8)


def test_pieri_least_squares_guards():
    with pytest.raises(ValueError):
        pieri_least_squares(4, "coe", count=10)
    with pytest.raises(ValueError):
        pieri_least_squares(4, "goe")


def test_multiplicity_trivial_in_square():
    # real case: the trivial appears exactly once in the square
    for family in ("usp", "so-odd", "o-even"):
        est = monte_carlo_multiplicity(family, "trivial", 2, 30_000, seed=3, n=3)
        assert abs(est.estimate - 1.0) < 3 * est.stderr
    # complex case: exactly twice
    for family in ("u", "coe", "cse"):
        est = monte_carlo_multiplicity(family, "trivial", 2, 30_000, seed=4, n=3)
        assert abs(est.estimate - 2.0) < 3 * est.stderr


def test_multiplicity_tau_in_itself():
    for family, n in (("usp", 3), ("sphere", 6), ("coe", 3)):
        est = monte_carlo_multiplicity(family, "tau" if family != "sphere" else "l=1",
                                       1, 30_000, seed=5, n=n)
        assert abs(est.estimate - 1.0) < 3 * est.stderr


def test_multiplicity_cross_validates_p_expansion():
    table = stein.builtin_table("coe", 4)
    comp = {c.label: c for c in table.components}["(1,1)"]
    est = monte_carlo_multiplicity("coe", "(1,1)", 2, 60_000, seed=6, n=4)
    assert abs(est.estimate - comp.multiplicity) < 3 * est.stderr


def test_multiplicity_higher_powers_match_square_norm():
    # the tau multiplicity in the cube and the trivial in the fourth power
    # both equal the squared norm of the square decomposition
    table = stein.builtin_table("usp", 3)
    msq = sum(c.multiplicity**2 for c in table.components)
    est3 = monte_carlo_multiplicity("usp", "tau", 3, 60_000, seed=7, n=3)
    assert abs(est3.estimate - msq) < 3.5 * est3.stderr
    est4 = monte_carlo_multiplicity("usp", "trivial", 4, 60_000, seed=8, n=3)
    assert abs(est4.estimate - msq) < 3.5 * est4.stderr


def test_multiplicity_stderr_scales_as_root_count():
    a = monte_carlo_multiplicity("u", "(2)", 2, 20_000, seed=9, n=3)
    b = monte_carlo_multiplicity("u", "(2)", 2, 80_000, seed=9, n=3)
    assert b.stderr == pytest.approx(a.stderr / 2.0, rel=0.2)


def test_numeric_limit_examples():
    lim, err = numeric_limit(lambda th: stein.bound(stein.builtin_table("usp", 5), th).term1)
    assert abs(lim - 2 * math.sqrt(2) / 11) < 1e-8
    lim, err = numeric_limit(math.cos)
    assert abs(lim - 1.0) < 1e-12
    lim, err = numeric_limit(lambda th: stein.bound(stein.builtin_table("u", 4), th).term1)
    assert abs(lim - 2 * math.sqrt(18) / 15) < 1e-8
    assert err < 1e-8


def test_numeric_limit_rejects_divergence():
    with pytest.raises(ValueError):
        numeric_limit(lambda th: 1.0 / (1.0 - math.cos(th)))
