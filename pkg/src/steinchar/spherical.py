"""Spherical-function tables: zonal polynomials on the sphere (Gegenbauer),
and the two circular ensembles through normalized Jack polynomials with
parameter 2 (orthogonal symmetry class) and 1/2 (symplectic symmetry class).

Only degree <= 2 Jack polynomials plus the shifted hook (2, 1^{n-2}) are ever
needed; they are carried in the monomial basis and normalized by the exact
principal specialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import DecompositionTable, IrrepComponent, one_minus_cos, _trivial, _require_n
from .partitions import Signature, boxes, shift_to_partition

# A spherical component plays the role of an irreducible component with
# ratio(alpha) the spherical-function value and dim the dimension of the
# generated invariant subspace.
SphericalComponent = IrrepComponent


@dataclass(frozen=True)
class JackContext:
    """Jack parameter and variable count; alpha is 2 for the orthogonal
    circular ensemble and 1/2 for the symplectic one."""

    alpha_param: Fraction
    n_vars: int

    def __post_init__(self):
        if self.alpha_param not in (Fraction(2), Fraction(1, 2)):
            raise ValueError(f"alpha must be 2 or 1/2, got {self.alpha_param}")


def gegenbauer(l: int, rho: float, x: float) -> float:
    """Ultraspherical polynomial C_l^rho(x) by the three-term recurrence.

    Generating function: sum_l C_l^rho(x) t^l = (1 - 2xt + t^2)^(-rho).
    """
    if l < 0:
        raise ValueError("degree must be nonnegative")
    prev, cur = 1.0, 2.0 * rho * x
    if l == 0:
        return prev
    if l == 1:
        return cur
    for k in range(2, l + 1):
        prev, cur = cur, (2.0 * x * (k + rho - 1.0) * cur - (k + 2.0 * rho - 2.0) * prev) / k
    return cur


def sphere_dimension(l: int, n: int) -> int:
    """Dimension of the degree-l harmonic subspace on the sphere in R^n:
    (2l+n-2)(n+l-3)! / ((n-2)! l!)."""
    if l == 0:
        return 1
    return (2 * l + n - 2) * math.comb(n + l - 3, l) // (n - 2)


def sphere_table(n: int) -> DecompositionTable:
    """Square of the first zonal function on the sphere in R^n.

    The class parameter is the cap coordinate x in (-1, 1) and a = 1 - x.
    The degree-2 multiplicity sqrt(2(n-1)/(n+2)) is not an integer.
    """
    _require_n(n, 3, "sphere")
    tau = IrrepComponent(
        label="l=1",
        multiplicity=1.0,
        dim=float(n),
        deficit=lambda x: 1.0 - x,
        char_fn=None,
    )
    omega2 = IrrepComponent(
        label="l=2",
        multiplicity=math.sqrt(2.0 * (n - 1.0) / (n + 2.0)),
        dim=float(sphere_dimension(2, n)),
        deficit=lambda x, n=n: n * (1.0 - x) * (1.0 + x) / (n - 1.0),
        char_fn=None,
    )
    return DecompositionTable(
        family="sphere",
        n=n,
        case_kind="real",
        class_kind="x",
        tau=tau,
        components=[_trivial(), omega2],
        w_coefficient=math.sqrt(n),
    )


def sphere_spherical_function(l: int, n: int, x) -> float:
    """Normalized zonal function omega_l(x) = C_l^{(n-2)/2}(x) / C_l^{(n-2)/2}(1)."""
    rho = (n - 2) / 2.0
    if np.ndim(x) == 0:
        return gegenbauer(l, rho, float(x)) / gegenbauer(l, rho, 1.0)
    xs = np.asarray(x, dtype=float)
    norm = gegenbauer(l, rho, 1.0)
    return np.array([gegenbauer(l, rho, v) for v in xs]) / norm


# ---------------------------------------------------------------------------
# Jack machinery (exact rational, via diagram box statistics).
# ---------------------------------------------------------------------------


def jack_principal_specialization(lam, ctx: JackContext) -> Fraction:
    """P_lambda(1^n; alpha) as an exact rational:
    prod over boxes of (n + alpha a'(s) - l'(s)) / (alpha a(s) + l(s) + 1).
    """
    sig = lam if isinstance(lam, Signature) else Signature(lam)
    if len(sig.trimmed()) > ctx.n_vars:
        raise ValueError(f"{sig} has more rows than n_vars={ctx.n_vars}")
    alpha, n = ctx.alpha_param, ctx.n_vars
    out = Fraction(1)
    for _, _, b in boxes(sig):
        out *= Fraction(n + alpha * b.a_prime - b.l_prime, 1) / (alpha * b.a + b.l + 1)
    return out


def jack_dimension(lam, ctx: JackContext) -> Fraction:
    """Dimension of the invariant subspace generated by the spherical function
    labelled lam, as an exact rational box product (alpha-specific form)."""
    sig = lam if isinstance(lam, Signature) else Signature(lam)
    if len(sig.trimmed()) > ctx.n_vars:
        raise ValueError(f"{sig} has more rows than n_vars={ctx.n_vars}")
    n = ctx.n_vars
    out = Fraction(1)
    if ctx.alpha_param == 2:
        for _, _, b in boxes(sig):
            out *= Fraction(
                (n + 1 + 2 * b.a_prime - b.l_prime) * (n + 2 * b.a_prime - b.l_prime),
                (2 * b.a + b.l + 2) * (2 * b.a + b.l + 1),
            )
    else:
        for _, _, b in boxes(sig):
            num = (Fraction(n) + Fraction(b.a_prime, 2) - b.l_prime) * (
                2 * n - 1 + b.a_prime - 2 * b.l_prime
            )
            den = (Fraction(b.a, 2) + b.l + 1) * (b.a + 2 * b.l + 1)
            out *= num / den
    return out


def signature_specialization(sig, ctx: JackContext) -> Fraction:
    """P at 1^n for a signature label, via the determinant-power shift (the
    shift leaves the value at the identity unchanged)."""
    part, _ = shift_to_partition(
        sig if isinstance(sig, Signature) else Signature(sig), ctx.n_vars
    )
    return jack_principal_specialization(part, ctx)


def signature_dimension(sig, ctx: JackContext) -> Fraction:
    part, _ = shift_to_partition(
        sig if isinstance(sig, Signature) else Signature(sig), ctx.n_vars
    )
    return jack_dimension(part, ctx)


def jack_p2_monomial_coeff(alpha: Fraction) -> Fraction:
    """Coefficient of m_(1,1) in P_(2) = m_(2) + c m_(1,1); c = 2/(alpha+1)."""
    return Fraction(2) / (Fraction(alpha) + 1)


def pieri_column_constant(alpha: Fraction, n: int) -> Fraction:
    """Coefficient of the full column e_n in P_(1) P_(1^{n-1}); equals
    2n/(n+1) at alpha=2 and n/(2n-1) at alpha=1/2."""
    if alpha == 2:
        return Fraction(2 * n, n + 1)
    if alpha == Fraction(1, 2):
        return Fraction(n, 2 * n - 1)
    raise ValueError(f"unsupported alpha {alpha}")


def m_from_p_expansion(coeff: float, phi, tau_dim: float, ctx: JackContext, r: int = 2) -> float:
    """Convert a P-basis coefficient into the spherical multiplicity:

        m_phi = coeff * P_phi(1^n) / P_(1)(1^n)^r * sqrt(tau_dim^r / dim_phi).
    """
    sig = phi if isinstance(phi, Signature) else Signature(phi)
    p_phi = signature_specialization(sig, ctx)
    dim_phi = signature_dimension(sig, ctx)
    if dim_phi == 0:
        raise ValueError(f"component {sig} has dimension 0; table is inconsistent")
    p_tau = jack_principal_specialization(Signature((1,) + (0,) * (ctx.n_vars - 1)), ctx)
    m = coeff * float(p_phi) / float(p_tau) ** r * math.sqrt(float(tau_dim) ** r / float(dim_phi))
    if m < 0:
        raise ValueError(f"negative multiplicity {m} for {sig}")
    return m


# ---------------------------------------------------------------------------
# Circular-ensemble tables.  At the class (1^{n-2}, e^{i th}, e^{-i th}) write
# c = 1 - cos(th), t = p1 = n - 2c, u = p2 = n - 8c + 4c^2; each deficit below
# is the exact rational function of c implied by the degree-2 monomial
# expansions, arranged so c factors out (no cancellation as th -> 0).
# ---------------------------------------------------------------------------


def _circular_table(family: str, n: int, alpha: Fraction) -> DecompositionTable:
    _require_n(n, 2, family)
    ctx = JackContext(alpha_param=alpha, n_vars=n)
    c_mono = jack_p2_monomial_coeff(alpha)  # P_(2) = m_(2) + c_mono m_(1,1)
    kappa = pieri_column_constant(alpha, n)

    sig_tau = Signature((1,) + (0,) * (n - 1))
    sig_2 = Signature((2,) + (0,) * (n - 1))
    sig_11 = Signature((1, 1) + (0,) * (n - 2))
    sig_2c = Signature((0,) * (n - 1) + (-2,))
    sig_11c = Signature((0,) * (n - 2) + (-1, -1))
    sig_adj = Signature((1,) + (0,) * (n - 2) + (-1,))

    tau_dim = float(jack_dimension(sig_tau, ctx))
    p2_one = float(jack_principal_specialization(sig_2, ctx))
    p11_one = float(jack_principal_specialization(sig_11, ctx))
    padj_one = float(signature_specialization(sig_adj, ctx))
    kf = float(kappa)
    cm = float(c_mono)

    # P-basis coefficients of (P_(1) + conjugate)^2
    if alpha == 2:
        const_coeff = float(Fraction(4 * n, n + 1))
        c11_coeff = 4.0 / 3.0
    else:
        const_coeff = float(Fraction(2 * n, 2 * n - 1))
        c11_coeff = 2.0 / 3.0
    coeffs = {
        "trivial": const_coeff,
        "(2)": 1.0,
        "(1,1)": c11_coeff,
        "(-2)": 1.0,
        "(-1,-1)": c11_coeff,
        "adj": 2.0,
    }

    tau = IrrepComponent(
        label="tau",
        multiplicity=1.0,
        dim=tau_dim,
        deficit=lambda th: 2.0 * one_minus_cos(th) / n,
        char_fn=lambda p1, p2: p1 / n,  # omega_tau, already normalized
        signature=sig_tau,
    )

    def deficit_2(th, n=n, cm=cm, denom=p2_one):
        c = one_minus_cos(th)
        return 2.0 * c * (4.0 - 2.0 * c + cm * (n - 2.0)) / denom

    def deficit_11(th, n=n):
        return 4.0 * one_minus_cos(th) * (n - 2.0) / (n * (n - 1.0))

    def deficit_adj(th, n=n, kf=kf):
        c = one_minus_cos(th)
        return 4.0 * c * (n - c) / (n * n - kf)

    def omega_2(p1, p2, cm=cm, denom=p2_one):
        return (p2 + cm * (p1 * p1 - p2) / 2.0) / denom

    def omega_11(p1, p2, denom=p11_one):
        return (p1 * p1 - p2) / 2.0 / denom

    def omega_adj(p1, p2, kf=kf, denom=padj_one):
        return (p1 * np.conj(p1) - kf) / denom

    trivial = _trivial()
    trivial.multiplicity = m_from_p_expansion(coeffs["trivial"], Signature((0,) * n), tau_dim, ctx)

    def comp(label, sig, coeff, deficit, fn):
        return IrrepComponent(
            label=label,
            multiplicity=m_from_p_expansion(coeff, sig, tau_dim, ctx),
            dim=float(signature_dimension(sig, ctx)),
            deficit=deficit,
            char_fn=fn,
            signature=sig,
        )

    components = [
        trivial,
        comp("(2)", sig_2, coeffs["(2)"], deficit_2, omega_2),
        comp("(1,1)", sig_11, coeffs["(1,1)"], deficit_11, omega_11),
        comp("(-2)", sig_2c, coeffs["(-2)"], deficit_2,
             lambda p1, p2: np.conj(omega_2(p1, p2))),
        comp("(-1,-1)", sig_11c, coeffs["(-1,-1)"], deficit_11,
             lambda p1, p2: np.conj(omega_11(p1, p2))),
        comp("(1,0^{n-2},-1)", sig_adj, coeffs["adj"], deficit_adj, omega_adj),
    ]
    if alpha == 2:
        w_coeff = 0.5 * math.sqrt(1.0 + 1.0 / n)
    else:
        w_coeff = math.sqrt(1.0 - 1.0 / (2.0 * n))
    return DecompositionTable(
        family=family,
        n=n,
        case_kind="complex",
        class_kind="theta",
        tau=tau,
        components=components,
        alpha_param=alpha,
        w_coefficient=w_coeff,
    )


def coe_table(n: int) -> DecompositionTable:
    """Square of the normalized trace on symmetric unitary matrices
    (Jack parameter 2)."""
    return _circular_table("coe", n, Fraction(2))


def cse_table(n: int) -> DecompositionTable:
    """Square of the normalized (half-)trace on self-dual unitary matrices
    (Jack parameter 1/2)."""
    return _circular_table("cse", n, Fraction(1, 2))
