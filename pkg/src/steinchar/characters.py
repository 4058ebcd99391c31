"""Character ratios, dimensions, and trace-square decomposition tables for the
defining representations of the compact classical groups USp(2n), SO(2n+1),
O(2n) and U(n), evaluated on the one-parameter classes with eigenvalues
(1, ..., 1, e^{i theta}, e^{-i theta}).

Every component character here is a polynomial in the first two power sums
p1 = sum x_i and p2 = sum x_i^2 of the eigenvalue multiset, which makes the
decomposition identities directly checkable at arbitrary group elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .partitions import Signature, shift_to_partition

GROUP_FAMILIES = ("usp", "so-odd", "o-even", "u")
SPACE_FAMILIES = ("sphere", "coe", "cse")
FAMILIES = GROUP_FAMILIES + SPACE_FAMILIES

#: smallest admissible deficit a = 1 - ratio_tau; below this the class is
#: indistinguishable from the identity and the bound hypotheses fail
MIN_DEFICIT = 1e-12


def one_minus_cos(theta: float) -> float:
    """1 - cos(theta), computed without cancellation near theta = 0."""
    s = math.sin(theta / 2.0)
    return 2.0 * s * s


def validate_class_parameter(class_kind: str, value: float) -> None:
    """The class must be distinguishable from the identity; theta = 0 (mod
    2 pi) and x = 1 give a = 0, which every construction here excludes."""
    if class_kind == "theta":
        if one_minus_cos(value) <= 0.0:
            raise ValueError(
                f"theta={value!r} is the identity class; a nonzero angle is required"
            )
    elif class_kind == "x":
        if not (-1.0 < value < 1.0):
            raise ValueError(f"sphere class parameter x must lie in (-1, 1), got {value!r}")
    else:
        raise ValueError(f"unknown class kind {class_kind!r}")


@dataclass
class IrrepComponent:
    """One component of a decomposition table.

    ``ratio`` maps the class parameter to chi(alpha)/dim (a spherical-function
    value for the symmetric-space tables).  ``deficit`` is 1 - ratio in a
    cancellation-free closed form, which the bound evaluators rely on for
    theta -> 0 stability.  ``char_fn`` evaluates the full character (or
    unnormalized spherical function) from the power sums (p1, p2) of an
    arbitrary element's eigenvalues, when available.
    """

    label: str
    multiplicity: float
    dim: float
    deficit: Callable[[float], float]
    char_fn: Optional[Callable[[complex, complex], complex]] = None
    signature: Optional[Signature] = None
    is_trivial: bool = False

    def ratio(self, value: float) -> float:
        return 1.0 - self.deficit(value)


@dataclass
class DecompositionTable:
    """Decomposition data for the square of tau, sufficient for every moment
    formula and bound in this package."""

    family: str
    n: int
    case_kind: str  # 'real' or 'complex'
    class_kind: str  # 'theta' or 'x'
    tau: IrrepComponent
    components: list[IrrepComponent]
    alpha_param: Optional[Fraction] = None
    w_coefficient: float = 1.0  # W = w_coefficient * (trace + conj trace) / 2-ish; see sampling

    def a(self, value: float) -> float:
        """Linearity deficit a = 1 - ratio_tau(alpha)."""
        validate_class_parameter(self.class_kind, value)
        return self.tau.deficit(value)

    def trivial_multiplicity(self) -> float:
        return sum(c.multiplicity for c in self.components if c.is_trivial)

    def validate(self, probe_values=None) -> None:
        """Check the structural invariants (multiplicities, ratio range)."""
        expected_trivial = 1.0 if self.case_kind == "real" else 2.0
        if not math.isclose(self.trivial_multiplicity(), expected_trivial, rel_tol=1e-9):
            raise ValueError(
                f"trivial multiplicity {self.trivial_multiplicity()} != {expected_trivial} "
                f"for case {self.case_kind!r}"
            )
        if any(c.multiplicity < 0 for c in self.components):
            raise ValueError("negative multiplicity in table")
        if probe_values is None:
            probe_values = (
                [1e-4, 0.5, 1.5, 3.0, math.pi] if self.class_kind == "theta" else [-0.9, 0.0, 0.9]
            )
        for v in probe_values:
            for comp in self.components + [self.tau]:
                r = comp.ratio(v)
                if not (-1.0 - 1e-9 <= r <= 1.0 + 1e-9):
                    raise ValueError(f"ratio of {comp.label} at {v} is {r}, outside [-1, 1]")

    def to_json_dict(self, value: float) -> dict:
        d = {
            "family": self.family,
            "n": self.n,
            "case": self.case_kind,
            "class_kind": self.class_kind,
            "class_parameter": value,
            "a": self.a(value),
            "components": [
                {
                    "label": c.label,
                    "multiplicity": c.multiplicity,
                    "dim": c.dim,
                    "ratio_at_theta": c.ratio(value),
                }
                for c in self.components
            ],
        }
        if self.alpha_param is not None:
            d["alpha_param"] = str(self.alpha_param)
        return d


def _trivial() -> IrrepComponent:
    return IrrepComponent(
        label="trivial",
        multiplicity=1.0,
        dim=1.0,
        deficit=lambda v: 0.0,
        char_fn=lambda p1, p2: 1.0,
        is_trivial=True,
    )


def _require_n(n: int, minimum: int, family: str) -> None:
    if n < minimum:
        raise ValueError(f"family {family!r} requires n >= {minimum}, got {n}")


# ---------------------------------------------------------------------------
# Group tables.  Characters below are written in the full-spectrum power sums;
# for the classes (1^{n-1}, e^{+-i theta}) the pair power sums are
#   p1 = 2(n-1) + 2 cos(theta),   p2 = 2(n-1) + 2 cos(2 theta),
# and the deficits reduce to the closed forms used in the lambdas.
# ---------------------------------------------------------------------------


def usp_table(n: int) -> DecompositionTable:
    """Trace-square table for the compact symplectic group of rank n.

    tau is the 2n-dimensional defining representation; its square splits off
    the trivial line, the symmetric square, and the traceless alternating
    square, each with multiplicity one.
    """
    _require_n(n, 2, "usp")
    tau = IrrepComponent(
        label="tau",
        multiplicity=1.0,
        dim=2.0 * n,
        deficit=lambda th: one_minus_cos(th) / n,
        char_fn=lambda p1, p2: p1,
    )
    sym2 = IrrepComponent(
        label="(2)",
        multiplicity=1.0,
        dim=float(2 * n * n + n),
        deficit=lambda th, n=n: 4.0
        * one_minus_cos(th)
        * (n + 1 - one_minus_cos(th))
        / (n * (2.0 * n + 1.0)),
        char_fn=lambda p1, p2: (p1 * p1 + p2) / 2.0,
        signature=Signature((2,) + (0,) * (n - 1)),
    )
    alt2 = IrrepComponent(
        label="(1,1)",
        multiplicity=1.0,
        dim=float(2 * n * n - n - 1),
        deficit=lambda th, n=n: 4.0 * one_minus_cos(th) / (2.0 * n + 1.0),
        char_fn=lambda p1, p2: (p1 * p1 - p2) / 2.0 - 1.0,
        signature=Signature((1, 1) + (0,) * (n - 2)),
    )
    return DecompositionTable(
        family="usp",
        n=n,
        case_kind="real",
        class_kind="theta",
        tau=tau,
        components=[_trivial(), sym2, alt2],
        w_coefficient=1.0,
    )


def so_odd_table(n: int) -> DecompositionTable:
    """Trace-square table for the rotation group on 2n+1 coordinates."""
    _require_n(n, 2, "so-odd")
    tau = IrrepComponent(
        label="tau",
        multiplicity=1.0,
        dim=2.0 * n + 1.0,
        deficit=lambda th: 2.0 * one_minus_cos(th) / (2.0 * n + 1.0),
        char_fn=lambda p1, p2: p1,
    )
    sym2 = IrrepComponent(
        label="(2)",
        multiplicity=1.0,
        dim=float(2 * n * n + 3 * n),
        deficit=lambda th, n=n: 2.0
        * one_minus_cos(th)
        * (2.0 * n + 3.0 - 2.0 * one_minus_cos(th))
        / (n * (2.0 * n + 3.0)),
        char_fn=lambda p1, p2: (p1 * p1 + p2) / 2.0 - 1.0,
        signature=Signature((2,) + (0,) * (n - 1)),
    )
    alt2 = IrrepComponent(
        label="(1,1)",
        multiplicity=1.0,
        dim=float(2 * n * n + n),
        deficit=lambda th, n=n: 2.0
        * one_minus_cos(th)
        * (2.0 * n - 1.0)
        / (n * (2.0 * n + 1.0)),
        char_fn=lambda p1, p2: (p1 * p1 - p2) / 2.0,
        signature=Signature((1, 1) + (0,) * (n - 2)),
    )
    return DecompositionTable(
        family="so-odd",
        n=n,
        case_kind="real",
        class_kind="theta",
        tau=tau,
        components=[_trivial(), sym2, alt2],
        w_coefficient=1.0,
    )


def o_even_table(n: int) -> DecompositionTable:
    """Trace-square table for the full orthogonal group on 2n coordinates."""
    _require_n(n, 2, "o-even")
    tau = IrrepComponent(
        label="tau",
        multiplicity=1.0,
        dim=2.0 * n,
        deficit=lambda th: one_minus_cos(th) / n,
        char_fn=lambda p1, p2: p1,
    )
    alt2 = IrrepComponent(
        label="(1,1)",
        multiplicity=1.0,
        dim=float(2 * n * n - n),
        deficit=lambda th, n=n: 4.0 * one_minus_cos(th) * (n - 1.0) / (n * (2.0 * n - 1.0)),
        char_fn=lambda p1, p2: (p1 * p1 - p2) / 2.0,
        signature=Signature((1, 1) + (0,) * (n - 2)),
    )
    sym2 = IrrepComponent(
        label="(2)",
        multiplicity=1.0,
        dim=float(2 * n * n + n - 1),
        deficit=lambda th, n=n: 4.0
        * one_minus_cos(th)
        * (n + 1.0 - one_minus_cos(th))
        / ((2.0 * n - 1.0) * (n + 1.0)),
        char_fn=lambda p1, p2: (p1 * p1 + p2) / 2.0 - 1.0,
        signature=Signature((2,) + (0,) * (n - 1)),
    )
    return DecompositionTable(
        family="o-even",
        n=n,
        case_kind="real",
        class_kind="theta",
        tau=tau,
        components=[_trivial(), alt2, sym2],
        w_coefficient=1.0,
    )


def u_table(n: int) -> DecompositionTable:
    """Schur expansion of (trace + conjugate trace)^2 on the unitary group.

    Components are labelled by signatures; the two negative labels are the
    conjugates of (2) and (1,1), and (1, 0^{n-2}, -1) is the adjoint, carrying
    multiplicity two.
    """
    _require_n(n, 2, "u")
    tau = IrrepComponent(
        label="tau",
        multiplicity=1.0,
        dim=float(n),
        deficit=lambda th: 2.0 * one_minus_cos(th) / n,
        char_fn=lambda p1, p2: p1,
        signature=Signature((1,) + (0,) * (n - 1)),
    )
    trivial = _trivial()
    trivial.multiplicity = 2.0

    def d_2(th, n=n):
        c = one_minus_cos(th)
        return 4.0 * c * (n + 2.0 - 2.0 * c) / (n * (n + 1.0))

    def d_11(th, n=n):
        return 4.0 * one_minus_cos(th) * (n - 2.0) / (n * (n - 1.0))

    def d_adj(th, n=n):
        c = one_minus_cos(th)
        return 4.0 * c * (n - c) / (n * n - 1.0)

    s2 = IrrepComponent(
        label="(2)",
        multiplicity=1.0,
        dim=n * (n + 1) / 2.0,
        deficit=d_2,
        char_fn=lambda p1, p2: (p1 * p1 + p2) / 2.0,
        signature=Signature((2,) + (0,) * (n - 1)),
    )
    s11 = IrrepComponent(
        label="(1,1)",
        multiplicity=1.0,
        dim=n * (n - 1) / 2.0,
        deficit=d_11,
        char_fn=lambda p1, p2: (p1 * p1 - p2) / 2.0,
        signature=Signature((1, 1) + (0,) * (n - 2)),
    )
    s2c = IrrepComponent(
        label="(-2)",
        multiplicity=1.0,
        dim=n * (n + 1) / 2.0,
        deficit=d_2,
        char_fn=lambda p1, p2: (np.conj(p1) ** 2 + np.conj(p2)) / 2.0,
        signature=Signature((0,) * (n - 1) + (-2,)),
    )
    s11c = IrrepComponent(
        label="(-1,-1)",
        multiplicity=1.0,
        dim=n * (n - 1) / 2.0,
        deficit=d_11,
        char_fn=lambda p1, p2: (np.conj(p1) ** 2 - np.conj(p2)) / 2.0,
        signature=Signature((0,) * (n - 2) + (-1, -1)),
    )
    adj = IrrepComponent(
        label="(1,0^{n-2},-1)",
        multiplicity=2.0,
        dim=float(n * n - 1),
        deficit=d_adj,
        char_fn=lambda p1, p2: p1 * np.conj(p1) - 1.0,
        signature=Signature((1,) + (0,) * (n - 2) + (-1,)),
    )
    return DecompositionTable(
        family="u",
        n=n,
        case_kind="complex",
        class_kind="theta",
        tau=tau,
        components=[trivial, s2, s11, s2c, s11c, adj],
        w_coefficient=math.sqrt(2.0),
    )


# ---------------------------------------------------------------------------
# Class eigenvalues and random eigenvalue multisets, per family.
# ---------------------------------------------------------------------------


def class_eigenvalues(family: str, n: int, theta: float) -> np.ndarray:
    """Eigenvalue multiset of the class representative used by the tables."""
    if family == "usp" or family == "o-even":
        angles = np.zeros(n)
        angles[-1] = theta
        return np.concatenate([np.exp(1j * angles), np.exp(-1j * angles)])
    if family == "so-odd":
        angles = np.zeros(n)
        angles[-1] = theta
        return np.concatenate([np.exp(1j * angles), np.exp(-1j * angles), [1.0 + 0j]])
    if family == "u":
        angles = np.zeros(n)
        angles[-2] = theta
        angles[-1] = -theta
        return np.exp(1j * angles)
    raise ValueError(f"unknown group family {family!r}")


def random_eigenvalues(family: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """A random eigenvalue multiset with the family's spectral symmetry."""
    angles = rng.uniform(0.0, 2.0 * math.pi, size=n)
    if family in ("usp", "o-even"):
        return np.concatenate([np.exp(1j * angles), np.exp(-1j * angles)])
    if family == "so-odd":
        return np.concatenate([np.exp(1j * angles), np.exp(-1j * angles), [1.0 + 0j]])
    if family == "u":
        return np.exp(1j * angles)
    raise ValueError(f"unknown group family {family!r}")


# ---------------------------------------------------------------------------
# Schur function evaluation.
# ---------------------------------------------------------------------------


def _power_sums(x: np.ndarray, kmax: int) -> np.ndarray:
    ps = np.empty(kmax + 1, dtype=complex)
    ps[0] = len(x)
    acc = np.ones_like(x)
    for k in range(1, kmax + 1):
        acc = acc * x
        ps[k] = acc.sum()
    return ps


def _complete_homogeneous(x: np.ndarray, kmax: int) -> np.ndarray:
    """h_0..h_kmax of the multiset x via the Newton recurrence."""
    ps = _power_sums(x, kmax)
    h = np.zeros(kmax + 1, dtype=complex)
    h[0] = 1.0
    for k in range(1, kmax + 1):
        h[k] = sum(ps[i] * h[k - i] for i in range(1, k + 1)) / k
    return h


def _elementary(x: np.ndarray, kmax: int) -> np.ndarray:
    """e_0..e_kmax of the multiset x by expanding prod (1 + x_i t)."""
    coeffs = np.zeros(kmax + 1, dtype=complex)
    coeffs[0] = 1.0
    for xi in x:
        coeffs[1 : kmax + 1] = coeffs[1 : kmax + 1] + xi * coeffs[0:kmax]
    return coeffs


def schur_evaluate(lam, eigenvalues) -> complex:
    """s_lambda at the given points, for any integer signature lambda.

    Negative parts are handled by the determinant-power shift; repeated
    eigenvalues are fine because the evaluation goes through a Jacobi-Trudi
    determinant (in h's, or in e's on the conjugate shape, whichever is
    smaller) rather than the bialternant ratio.
    """
    x = np.asarray(eigenvalues, dtype=complex)
    sig = lam if isinstance(lam, Signature) else Signature(lam)
    if len(sig) != len(x):
        raise ValueError(f"signature length {len(sig)} != number of eigenvalues {len(x)}")
    part, power = shift_to_partition(sig, len(x))
    rows = part.trimmed()
    if not rows:
        value = 1.0 + 0j
    else:
        height, width = len(rows), rows[0]
        if height <= width:
            h = _complete_homogeneous(x, width + height)
            mat = np.array(
                [[h[rows[i] - i + j] if 0 <= rows[i] - i + j else 0.0 for j in range(height)]
                 for i in range(height)],
                dtype=complex,
            )
        else:
            cols = part.conjugate().parts
            e = _elementary(x, height + width)
            mat = np.array(
                [[e[cols[i] - i + j] if 0 <= cols[i] - i + j <= len(x) else 0.0
                  for j in range(width)]
                 for i in range(width)],
                dtype=complex,
            )
        value = complex(np.linalg.det(mat)) if mat.shape[0] > 1 else complex(mat[0, 0])
    if power:
        det = complex(np.prod(x))
        value = value * det**power
    return value


def tensor_square_character_identity(table: DecompositionTable, eigenvalues) -> float:
    """Absolute residual of the trace-square decomposition at one element.

    For the unitary family the right-hand side is evaluated through
    ``schur_evaluate`` on the component signatures, making the check
    independent of the tables' power-sum formulas.
    """
    x = np.asarray(eigenvalues, dtype=complex)
    p1 = complex(x.sum())
    p2 = complex((x * x).sum())
    if table.case_kind == "real":
        lhs = p1 * p1
        rhs = sum(c.multiplicity * c.char_fn(p1, p2) for c in table.components)
    else:
        lhs = (p1 + np.conj(p1)) ** 2
        rhs = 0.0 + 0j
        for c in table.components:
            if c.is_trivial:
                rhs += c.multiplicity
            else:
                rhs += c.multiplicity * schur_evaluate(c.signature, x)
    return abs(complex(lhs) - complex(rhs))


# ---------------------------------------------------------------------------
# Bialternant character formulas, used as an independent cross-check of the
# power-sum component characters at generic angles.
# ---------------------------------------------------------------------------


def symplectic_character(lam, thetas) -> float:
    """Irreducible character of the rank-n compact symplectic group at the
    element with eigenvalue angles ``thetas`` (all distinct and generic)."""
    th = np.asarray(thetas, dtype=float)
    n = len(th)
    rows = list(lam) + [0] * (n - len(list(lam)))
    num = np.array([[math.sin((rows[j] + n - j) * t) for j in range(n)] for t in th])
    den = np.array([[math.sin((n - j) * t) for j in range(n)] for t in th])
    return float(np.linalg.det(num) / np.linalg.det(den))


def so_odd_character(lam, thetas) -> float:
    """Irreducible character of the rotation group on 2n+1 coordinates at the
    element with rotation angles ``thetas`` (generic)."""
    th = np.asarray(thetas, dtype=float)
    n = len(th)
    rows = list(lam) + [0] * (n - len(list(lam)))
    num = np.array(
        [[math.sin((rows[j] + n - j - 0.5) * t) for j in range(n)] for t in th]
    )
    den = np.array([[math.sin((n - j - 0.5) * t) for j in range(n)] for t in th])
    return float(np.linalg.det(num) / np.linalg.det(den))
