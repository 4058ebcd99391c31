"""Generic exchangeable-pair normal-approximation bound evaluators (real and
complex shapes), increment-moment formulas, and the per-family closed-form
limits, all driven by a DecompositionTable.

With a = 1 - ratio_tau(alpha) and d_phi = 1 - ratio_phi(alpha):

  real:    term1 = sqrt( sum* m^2 (2 - d_phi/a)^2 )
           term2 = [ (1/pi) sum m^2 (8 - 6 d_phi/a) ]^(1/4)
  complex: term1 = (1/2) sqrt( sum* m^2 (2 - d_phi/a)^2 )
           term2 = [ (1/pi) sum m^2 (2 - (3/2) d_phi/a) ]^(1/4)

where sum* omits the trivial component and sum includes it.  The Kolmogorov
bound is term1 + term2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .characters import (
    DecompositionTable,
    one_minus_cos,
    usp_table,
    so_odd_table,
    o_even_table,
    u_table,
    FAMILIES,
)
from .spherical import sphere_table, coe_table, cse_table

_BUILDERS = {
    "usp": usp_table,
    "so-odd": so_odd_table,
    "o-even": o_even_table,
    "u": u_table,
    "sphere": sphere_table,
    "coe": coe_table,
    "cse": cse_table,
}


def builtin_table(family: str, n: int) -> DecompositionTable:
    """Decomposition table for one of the built-in families."""
    try:
        builder = _BUILDERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(_BUILDERS)}") from None
    return builder(n)


@dataclass
class MomentReport:
    """Increment moments of the exchangeable pair at a fixed class."""

    a: float
    e2: float  # E(W'-W)^2, exactly 2a
    e4: float  # E(W'-W)^4
    condvar: float  # Var(E[(W'-W)^2 | g])


@dataclass
class BoundReport:
    family: str
    n: int
    theta: float  # class parameter (angle, or cap coordinate for the sphere)
    a: float
    term1: float
    term2: float
    total: float
    limit_term1: float  # value of term1 in the identity-class limit
    limit_coeff_term2: float  # term2 = (coeff * (1 - cos theta))^(1/4), resp. (1-x)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "theta": self.theta,
            "a": self.a,
            "term1": self.term1,
            "term2": self.term2,
            "total": self.total,
            "limit_term1": self.limit_term1,
            "limit_coeff_term2": self.limit_coeff_term2,
        }


@dataclass
class LimitReport:
    """Identity-class limit of the bound for a built-in family: the exact
    limit of term1 next to the (possibly weaker) stated constant."""

    family: str
    n: int
    exact_limit: float
    paper_bound: float
    extrapolated: float  # numeric cross-check of exact_limit


def _deficits(table: DecompositionTable, value: float):
    """(a, [(multiplicity, deficit, is_trivial)]) at the given class value."""
    a = table.a(value)
    rows = [(c.multiplicity, c.deficit(value), c.is_trivial) for c in table.components]
    return a, rows


def _check_a(a: float) -> None:
    # no silent flooring: a this small means the class is numerically the
    # identity and the bound hypotheses (0 < a < 1) are not satisfiable
    if a < 1e-12:
        raise ValueError(f"linearity deficit a={a} is below 1e-12; class too close to identity")
    if a >= 1.0:
        raise ValueError(f"bound requires linearity deficit a in (0, 1), got a={a}")


def moments(table: DecompositionTable, value: float) -> MomentReport:
    """Second and fourth increment moments plus the conditional variance.

    Valid on the whole class-parameter domain (a may exceed 1, e.g. for the
    sphere with x < 0); only the bound evaluators restrict to a < 1.
    """
    a, rows = _deficits(table, value)
    if table.case_kind == "real":
        e4 = sum(m * m * (8.0 * a - 6.0 * d) for m, d, _ in rows)
        condvar = sum(m * m * (2.0 * a - d) ** 2 for m, d, triv in rows if not triv)
    else:
        e4 = sum(m * m * (2.0 * a - 1.5 * d) for m, d, _ in rows)
        condvar = 0.25 * sum(m * m * (2.0 * a - d) ** 2 for m, d, triv in rows if not triv)
    return MomentReport(a=a, e2=2.0 * a, e4=e4, condvar=condvar)


def _term1(case_kind: str, a: float, rows) -> float:
    s = sum(m * m * (2.0 - d / a) ** 2 for m, d, triv in rows if not triv)
    t = math.sqrt(s)
    return t if case_kind == "real" else 0.5 * t


def _term2(case_kind: str, a: float, rows) -> float:
    if case_kind == "real":
        s = sum(m * m * (8.0 - 6.0 * d / a) for m, d, _ in rows)
    else:
        s = sum(m * m * (2.0 - 1.5 * d / a) for m, d, _ in rows)
    if s < -1e-9:
        raise ValueError(
            f"negative radicand {s} in the second error term; the table's "
            "moment data is inconsistent (E(W'-W)^4 would be negative)"
        )
    return (max(s, 0.0) / math.pi) ** 0.25


def _limit_small_parameter(table: DecompositionTable, eps: float) -> float:
    """Class value whose deficit scale is eps (theta families: 1-cos theta,
    sphere: 1-x)."""
    if table.class_kind == "theta":
        return 2.0 * math.asin(math.sqrt(eps / 2.0))
    return 1.0 - eps


def extrapolate_to_identity(f: Callable[[float], float], table: DecompositionTable,
                            ladder=(1e-2, 1e-3, 1e-4)) -> float:
    """Neville extrapolation of f(class value) to the identity class, in the
    natural small parameter (1-cos theta, or 1-x for the sphere)."""
    ss = list(ladder)
    vals = [f(_limit_small_parameter(table, s)) for s in ss]
    for level in range(1, len(ss)):
        for i in range(len(ss) - level):
            vals[i] = (ss[i] * vals[i + 1] - ss[i + level] * vals[i]) / (
                ss[i] - ss[i + level]
            )
    return vals[0]


def _bound(table: DecompositionTable, value: float) -> BoundReport:
    table.validate(probe_values=[value])
    a, rows = _deficits(table, value)
    _check_a(a)
    t1 = _term1(table.case_kind, a, rows)
    t2 = _term2(table.case_kind, a, rows)
    small = one_minus_cos(value) if table.class_kind == "theta" else 1.0 - value

    def t1_at(v: float) -> float:
        aa, rr = _deficits(table, v)
        return _term1(table.case_kind, aa, rr)

    limit_t1 = extrapolate_to_identity(t1_at, table)
    coeff_t2 = t2**4 / small
    return BoundReport(
        family=table.family,
        n=table.n,
        theta=value,
        a=a,
        term1=t1,
        term2=t2,
        total=t1 + t2,
        limit_term1=limit_t1,
        limit_coeff_term2=coeff_t2,
    )


def real_bound(table: DecompositionTable, value: float) -> BoundReport:
    """Kolmogorov bound for a real-character table at one class."""
    if table.case_kind != "real":
        raise ValueError(f"real_bound needs a real-case table, got {table.case_kind!r}")
    return _bound(table, value)


def complex_bound(table: DecompositionTable, value: float) -> BoundReport:
    """Kolmogorov bound for a complex-character table at one class."""
    if table.case_kind != "complex":
        raise ValueError(f"complex_bound needs a complex-case table, got {table.case_kind!r}")
    return _bound(table, value)


def bound(table: DecompositionTable, value: float) -> BoundReport:
    return real_bound(table, value) if table.case_kind == "real" else complex_bound(table, value)


def kth_moment(
    mult_tables: Sequence[Mapping[str, float]],
    ratios: Mapping[str, float],
    k: int,
    case_kind: str = "real",
) -> float:
    """E(W'-W)^k from the alternating sum over tensor-power multiplicities:

        sum_{r=0..k} (-1)^{k-r} C(k,r) sum_phi m_phi(r) m_phi(k-r) ratio_phi,

    with a 2^{-k/2} prefactor in the complex case.  mult_tables[r] maps the
    component label to its multiplicity in the r-th power; mult_tables[0]
    must be the trivial-only map {trivial: 1} and mult_tables[1] the tau map.
    """
    if len(mult_tables) < k + 1:
        raise ValueError(f"need multiplicity maps for r = 0..{k}, got {len(mult_tables)}")
    total = 0.0
    for r in range(k + 1):
        left, right = mult_tables[r], mult_tables[k - r]
        pair = 0.0
        for label, m in left.items():
            mr = right.get(label, 0.0)
            if mr:
                pair += m * mr * ratios[label]
        total += (-1) ** (k - r) * math.comb(k, r) * pair
    if case_kind == "complex":
        total /= 2.0 ** (k / 2.0)
    return total


def builtin_mult_tables(table: DecompositionTable, value: float):
    """(mult_tables r=0..4, ratios) for a built-in trace-square table.

    The third and fourth power maps only need the entries that pair against
    the r=1 and r=0 maps; those multiplicities equal (sums of) the squared
    norm M = sum m_phi^2 of the square, by the usual orthogonality argument.
    """
    msq = sum(c.multiplicity**2 for c in table.components)
    ratios = {c.label: c.ratio(value) for c in table.components}
    ratios["tau"] = table.tau.ratio(value)
    m2 = {c.label: c.multiplicity for c in table.components}
    if table.case_kind == "real":
        m0 = {"trivial": 1.0}
        m1 = {"tau": 1.0}
        m3 = {"tau": msq}
        m4 = {"trivial": msq}
    else:
        ratios["tau-bar"] = table.tau.ratio(value)
        m0 = {"trivial": 1.0}
        m1 = {"tau": 1.0, "tau-bar": 1.0}
        m3 = {"tau": msq / 2.0, "tau-bar": msq / 2.0}
        m4 = {"trivial": msq}
    return [m0, m1, m2, m3, m4], ratios


# ---------------------------------------------------------------------------
# Closed-form limits per family.
# ---------------------------------------------------------------------------


def paper_bound(family: str, n: int) -> float:
    """The stated Kolmogorov bound for each family."""
    if family in ("usp", "so-odd"):
        return math.sqrt(2.0) / n
    if family == "o-even":
        return math.sqrt(2.0) / (n - 1)
    if family == "u":
        return 2.0 / (n - 1)
    if family == "sphere":
        return 2.0 * math.sqrt(2.0) / (n - 1)
    if family in ("coe", "cse"):
        return 4.0 / n
    raise ValueError(f"unknown family {family!r}")


def exact_limit(family: str, n: int) -> float:
    """Identity-class limit of the first error term (the second vanishes)."""
    if family == "usp":
        return 2.0 * math.sqrt(2.0) / (2 * n + 1)
    if family == "so-odd":
        return math.sqrt(2.0) / n
    if family == "o-even":
        return math.sqrt(8.0) / (2 * n - 1)
    if family == "u":
        return 2.0 * math.sqrt(n * n + 2.0) / (n * n - 1.0)
    if family == "sphere":
        # the displayed 2 sqrt(2)/(n-1) weakens this; see the stated bound
        return 2.0 * math.sqrt(2.0 / ((n + 2.0) * (n - 1.0)))
    if family == "coe":
        return math.sqrt(8.0 * (n**3 + 2 * n**2 + 5 * n + 6) / (n**3 + 4 * n**2 + n - 6)) / n
    if family == "cse":
        return math.sqrt(
            8.0 * (4 * n**3 - 4 * n**2 + 5 * n - 3) / (4 * n**3 - 8 * n**2 + n + 3)
        ) / (2 * n)
    raise ValueError(f"unknown family {family!r}")


def limit_report(table: DecompositionTable) -> LimitReport:
    """Closed-form identity-class limit for a built-in table, cross-checked
    against extrapolation of the generic evaluator (must agree to 1e-6)."""
    family, n = table.family, table.n
    closed = exact_limit(family, n)

    def t1_at(v: float) -> float:
        a, rows = _deficits(table, v)
        return _term1(table.case_kind, a, rows)

    extrap = extrapolate_to_identity(t1_at, table)
    if abs(extrap - closed) > 1e-6 * abs(closed):
        raise ValueError(
            f"closed-form limit {closed} and extrapolated limit {extrap} disagree "
            f"for {family}(n={n}); table or closed form is wrong"
        )
    return LimitReport(
        family=family,
        n=n,
        exact_limit=closed,
        paper_bound=paper_bound(family, n),
        extrapolated=extrap,
    )
