"""Reproducible random generation: invariant-measure samplers for the unitary,
orthogonal and compact symplectic groups, the two circular ensembles, sphere
points, eigenvalue-angle MCMC, and the exchangeable-pair simulator.

All samplers accept an optional ``size`` and then return a stacked batch with
the leading axis the draw index; the W-level helpers chunk internally so that
memory stays flat for large counts.  Determinism: a fixed (seed, count) pair
always produces the same batch, independent of worker threads, because every
chunk gets its own child stream of the seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .characters import FAMILIES, validate_class_parameter

_CHUNK = 20_000


@dataclass
class SampleBatch:
    family: str
    n: int
    count: int
    seed: int
    values: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "values": self.values.tolist(),
        }


@dataclass
class PairBatch:
    family: str
    n: int
    theta: float
    count: int
    seed: int
    w: np.ndarray
    w_prime: np.ndarray

    @property
    def pairs(self):
        return list(zip(self.w.tolist(), self.w_prime.tolist()))

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "theta": self.theta,
            "count": self.count,
            "seed": self.seed,
            "w": self.w.tolist(),
            "w_prime": self.w_prime.tolist(),
        }


# ---------------------------------------------------------------------------
# Matrix samplers.
# ---------------------------------------------------------------------------


def _complex_ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def haar_unitary(n: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Invariant-measure unitary matrices via complex Ginibre + QR, with the
    R-diagonal phase correction that makes the factorization unique."""
    b = 1 if size is None else size
    z = _complex_ginibre(rng, (b, n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1).copy()
    d /= np.abs(d)
    q = q * d.conj()[:, None, :]
    return q[0] if size is None else q


def haar_orthogonal(
    n: int, rng: np.random.Generator, component: str = "full", size: Optional[int] = None
) -> np.ndarray:
    """Invariant-measure orthogonal matrices via real Ginibre + QR with sign
    correction.

    ``special`` conditions on determinant +1 (a fixed coordinate reflection
    maps the other component over).  ``full`` returns a det +1 or det -1
    matrix with probability 1/2 each: a fair sign times that reflection.
    """
    if component not in ("full", "special"):
        raise ValueError(f"component must be 'full' or 'special', got {component!r}")
    b = 1 if size is None else size
    z = rng.standard_normal((b, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    q = q * d[:, None, :]
    det = np.linalg.det(q)
    flip = det < 0  # reflect first coordinate to land in the rotation group
    q[flip, :, 0] = -q[flip, :, 0]
    if component == "full":
        flip = rng.random(b) < 0.5
        q[flip, :, 0] = -q[flip, :, 0]
    return q[0] if size is None else q


def symplectic_form(n: int) -> np.ndarray:
    """The 2n x 2n block form J = [[0, I], [-I, 0]]."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def haar_symplectic(n: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Invariant-measure matrices of the compact symplectic group, as 2n x 2n
    complex unitaries g with g J g^T = J.

    A quaternionic Gaussian (n quaternion columns, embedded as 2n complex
    rows) is orthonormalized by pair-aware Gram-Schmidt: each accepted unit
    column u contributes its quaternion partner -J conj(u), which the
    symplectic structure makes automatically orthogonal to everything kept
    so far.  Division is always by a real positive norm, so the map is
    equivariant and the output distribution invariant.
    """
    b = 1 if size is None else size
    jm = symplectic_form(n)
    a = _complex_ginibre(rng, (b, n, n))
    bb = _complex_ginibre(rng, (b, n, n))
    cand = np.concatenate([a, -np.conj(bb)], axis=1)  # (b, 2n, n) quaternionic columns
    cols: list[np.ndarray] = []
    for i in range(n):
        c = cand[:, :, i].copy()
        while True:
            for _ in range(2):  # second pass controls roundoff growth
                for w in cols:
                    c -= (np.conj(w) * c).sum(axis=1, keepdims=True) * w
            norm = np.linalg.norm(c, axis=1, keepdims=True)
            bad = norm[:, 0] < 1e-8
            if not bad.any():
                break
            c[bad] = _complex_ginibre(rng, (int(bad.sum()), 2 * n))
        u = c / norm
        v = -np.conj(u) @ jm.T  # -J conj(u) as row operation
        cols.append(u)
        cols.append(v)
    # interleave back to (u_1..u_n | v_1..v_n) column order
    us = cols[0::2]
    vs = cols[1::2]
    g = np.stack(us + vs, axis=-1)
    return g[0] if size is None else g


def quaternion_dual(m: np.ndarray, n: int) -> np.ndarray:
    """M^R = J M^T J^T for 2n x 2n matrices (batched on the leading axis)."""
    jm = symplectic_form(n)
    mt = np.swapaxes(m, -1, -2)
    return jm @ mt @ jm.T


# ---------------------------------------------------------------------------
# W samplers per family.
# ---------------------------------------------------------------------------


def coe_sample(
    n: int, rng: np.random.Generator, size: Optional[int] = None, return_eigenvalues: bool = False
):
    """Symmetric-unitary ensemble draw: g = u u^T with u invariant-unitary.

    Returns W = sqrt(1 + 1/n) Re tr(g), which matches the normalization
    (1/2) sqrt(1 + 1/n) (tr g + conj tr g)."""
    b = 1 if size is None else size
    u = haar_unitary(n, rng, b)
    g = u @ np.swapaxes(u, -1, -2)
    w = math.sqrt(1.0 + 1.0 / n) * np.trace(g, axis1=-2, axis2=-1).real
    if return_eigenvalues:
        ev = np.linalg.eigvals(g)
        return (w[0], ev[0]) if size is None else (w, ev)
    return w[0] if size is None else w


def cse_sample(
    n: int, rng: np.random.Generator, size: Optional[int] = None, return_eigenvalues: bool = False
):
    """Self-dual ensemble draw: g = u^R u with u invariant-unitary on 2n
    coordinates and u^R the quaternion dual.

    The 2n eigenvalues are doubly degenerate; the n distinct ones carry the
    ensemble.  W = sqrt(1 - 1/(2n)) Re tr(g) over the full 2n x 2n trace,
    which equals sqrt(1 - 1/(2n)) (tr + conj tr) over distinct eigenvalues.
    """
    b = 1 if size is None else size
    u = haar_unitary(2 * n, rng, b)
    g = quaternion_dual(u, n) @ u
    w = math.sqrt(1.0 - 1.0 / (2.0 * n)) * np.trace(g, axis1=-2, axis2=-1).real
    if return_eigenvalues:
        ev = np.linalg.eigvals(g)
        return (w[0], ev[0]) if size is None else (w, ev)
    return w[0] if size is None else w


def sphere_sample(n: int, rng: np.random.Generator, size: Optional[int] = None):
    """Last coordinate of a uniform point on the unit sphere in R^n."""
    b = 1 if size is None else size
    z = rng.standard_normal((b, n))
    x = z[:, -1] / np.linalg.norm(z, axis=1)
    return x[0] if size is None else x


def _w_chunk(family: str, n: int, rng: np.random.Generator, b: int) -> np.ndarray:
    if family == "usp":
        g = haar_symplectic(n, rng, b)
        return np.trace(g, axis1=-2, axis2=-1).real
    if family == "so-odd":
        g = haar_orthogonal(2 * n + 1, rng, "special", b)
        return np.trace(g, axis1=-2, axis2=-1)
    if family == "o-even":
        g = haar_orthogonal(2 * n, rng, "full", b)
        return np.trace(g, axis1=-2, axis2=-1)
    if family == "u":
        g = haar_unitary(n, rng, b)
        return math.sqrt(2.0) * np.trace(g, axis1=-2, axis2=-1).real
    if family == "sphere":
        return math.sqrt(n) * sphere_sample(n, rng, b)
    if family == "coe":
        return coe_sample(n, rng, b)
    if family == "cse":
        return cse_sample(n, rng, b)
    raise ValueError(f"unknown family {family!r}")


def _chunk_streams(seed: int, count: int, chunk: int = _CHUNK):
    edges = list(range(0, count, chunk))
    sizes = [min(chunk, count - e) for e in edges]
    streams = np.random.SeedSequence(seed).spawn(len(edges))
    return sizes, streams


def sample_w(
    family: str, n: int, count: int, seed: int, workers: int = 1
) -> SampleBatch:
    """Batch of W draws; identical (seed, count) always reproduce the batch."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    sizes, streams = _chunk_streams(seed, count)

    def one(idx: int) -> np.ndarray:
        return _w_chunk(family, n, np.random.default_rng(streams[idx]), sizes[idx])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(len(sizes))))
    else:
        parts = [one(i) for i in range(len(sizes))]
    return SampleBatch(family=family, n=n, count=count, seed=seed,
                       values=np.concatenate(parts))


# ---------------------------------------------------------------------------
# Exchangeable pairs (W, W') = (W(g), W(alpha g)) with alpha uniform on the
# class/double coset of the one-parameter representative.
# ---------------------------------------------------------------------------


def _rotation_block(dim: int, theta: float) -> np.ndarray:
    a0 = np.eye(dim)
    c, s = math.cos(theta), math.sin(theta)
    a0[-2, -2] = c
    a0[-2, -1] = -s
    a0[-1, -2] = s
    a0[-1, -1] = c
    return a0


def _pair_chunk(family, n, theta, rng, b):
    if family == "sphere":
        x0 = theta  # the class parameter is the cap coordinate itself
        validate_class_parameter("x", x0)
        z = rng.standard_normal((b, n))
        y = z / np.linalg.norm(z, axis=1, keepdims=True)  # uniform point g e_n
        w = math.sqrt(n) * y[:, -1]
        k2 = haar_orthogonal(n - 1, rng, "special", b)
        z1 = np.einsum("bij,bj->bi", k2, y[:, :-1])
        sin0 = math.sqrt(max(0.0, 1.0 - x0 * x0))
        w_prime = math.sqrt(n) * (sin0 * z1[:, -1] + x0 * y[:, -1])
        return w, w_prime
    validate_class_parameter("theta", theta)
    if family == "usp":
        g = haar_symplectic(n, rng, b)
        h = haar_symplectic(n, rng, b)
        d = np.ones(2 * n, dtype=complex)
        d[n - 1] = np.exp(1j * theta)
        d[2 * n - 1] = np.exp(-1j * theta)
        alpha = (h * d[None, None, :]) @ np.conj(np.swapaxes(h, -1, -2))
        w = np.trace(g, axis1=-2, axis2=-1).real
        w_prime = np.einsum("bij,bji->b", alpha, g).real
        return w, w_prime
    if family == "so-odd" or family == "o-even":
        dim = 2 * n + 1 if family == "so-odd" else 2 * n
        comp = "special" if family == "so-odd" else "full"
        g = haar_orthogonal(dim, rng, comp, b)
        h = haar_orthogonal(dim, rng, comp, b)
        a0 = _rotation_block(dim, theta)
        alpha = h @ a0 @ np.swapaxes(h, -1, -2)
        w = np.trace(g, axis1=-2, axis2=-1)
        w_prime = np.einsum("bij,bji->b", alpha, g)
        return w, w_prime
    if family == "u":
        g = haar_unitary(n, rng, b)
        h = haar_unitary(n, rng, b)
        d = np.ones(n, dtype=complex)
        d[n - 2] = np.exp(1j * theta)
        d[n - 1] = np.exp(-1j * theta)
        alpha = (h * d[None, None, :]) @ np.conj(np.swapaxes(h, -1, -2))
        w = math.sqrt(2.0) * np.trace(g, axis1=-2, axis2=-1).real
        w_prime = math.sqrt(2.0) * np.einsum("bij,bji->b", alpha, g).real
        return w, w_prime
    if family == "coe":
        u = haar_unitary(n, rng, b)
        s = u @ np.swapaxes(u, -1, -2)
        k2 = haar_orthogonal(n, rng, "full", b)
        m = k2 @ s @ np.swapaxes(k2, -1, -2)
        d = np.ones(n, dtype=complex)
        d[n - 2] = np.exp(1j * theta / 2.0)
        d[n - 1] = np.exp(-1j * theta / 2.0)
        coeff = math.sqrt(1.0 + 1.0 / n)
        w = coeff * np.trace(s, axis1=-2, axis2=-1).real
        # tr(a0 M a0^T) = sum_i d_i^2 M_ii for diagonal a0
        diag = np.diagonal(m, axis1=-2, axis2=-1)
        w_prime = coeff * (diag @ (d * d)).real
        return w, w_prime
    if family == "cse":
        u = haar_unitary(2 * n, rng, b)
        s = quaternion_dual(u, n) @ u
        k2 = haar_symplectic(n, rng, b)
        d = np.ones(n, dtype=complex)
        d[n - 2] = np.exp(1j * theta)
        d[n - 1] = np.exp(-1j * theta)
        dd = np.concatenate([d, d])  # alpha0^R alpha0 for alpha0 = diag(sqrt d, sqrt d)
        m = k2 @ u
        mr = quaternion_dual(m, n)
        sp = mr @ (dd[None, :, None] * m)
        coeff = math.sqrt(1.0 - 1.0 / (2.0 * n))
        w = coeff * np.trace(s, axis1=-2, axis2=-1).real
        w_prime = coeff * np.trace(sp, axis1=-2, axis2=-1).real
        return w, w_prime
    raise ValueError(f"unknown family {family!r}")


def exchangeable_pair(
    family: str, n: int, theta: float, rng: np.random.Generator, size: Optional[int] = None
):
    """(W, W') draws; ``theta`` is the class angle, or the cap coordinate
    x in (-1, 1) for the sphere."""
    b = 1 if size is None else size
    w, wp = _pair_chunk(family, n, theta, rng, b)
    return (float(w[0]), float(wp[0])) if size is None else (w, wp)


def sample_pairs(
    family: str, n: int, theta: float, count: int, seed: int, workers: int = 1
) -> PairBatch:
    sizes, streams = _chunk_streams(seed, count)

    def one(idx: int):
        return _pair_chunk(family, n, theta, np.random.default_rng(streams[idx]), sizes[idx])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(len(sizes))))
    else:
        parts = [one(i) for i in range(len(sizes))]
    return PairBatch(
        family=family,
        n=n,
        theta=theta,
        count=count,
        seed=seed,
        w=np.concatenate([p[0] for p in parts]),
        w_prime=np.concatenate([p[1] for p in parts]),
    )


# ---------------------------------------------------------------------------
# Eigenvalue-angle MCMC against the invariant eigenvalue densities.
# ---------------------------------------------------------------------------

_MCMC_BETA = {"flat": 0.0, "coe": 1.0, "u": 2.0, "cse": 4.0}


@dataclass
class McmcDiagnostics:
    acceptance_rate: float
    autocorrelation_time: float
    warnings: list[str] = field(default_factory=list)


def _pair_log_weight(family: str, theta_i: np.ndarray, others: np.ndarray) -> np.ndarray:
    """Log interaction of one angle against the rest, plus its single-angle
    factor, per chain.  theta_i: (chains,), others: (chains, n-1)."""
    tiny = 1e-300
    if family in _MCMC_BETA:
        beta = _MCMC_BETA[family]
        if beta == 0.0:
            return np.zeros_like(theta_i)
        diff = np.abs(np.exp(1j * theta_i)[:, None] - np.exp(1j * others))
        return beta * np.log(diff + tiny).sum(axis=1)
    if family in ("usp", "so-odd", "so-even"):
        diff = np.abs(np.cos(theta_i)[:, None] - np.cos(others))
        out = 2.0 * np.log(diff + tiny).sum(axis=1)
        if family == "usp":
            out += 2.0 * np.log(np.abs(np.sin(theta_i)) + tiny)
        elif family == "so-odd":
            out += 2.0 * np.log(np.abs(np.sin(theta_i / 2.0)) + tiny)
        return out
    raise ValueError(f"unknown eigenvalue density {family!r}")


def weyl_mcmc(
    family: str,
    n: int,
    count: int,
    rng: np.random.Generator,
    burn_in: int = 2000,
    thin: int = 20,
    step: float = 1.2,
    chains: int = 64,
):
    """Single-angle Metropolis sampler of a family's eigenvalue-angle density.

    Returns (angles, diagnostics) with angles of shape (count, n).  The
    circular families target prod |x_i - x_j|^beta on the torus (beta = 1, 2,
    4, or 0 for the degenerate flat check); usp / so-odd / so-even target
    their angle densities on the torus, symmetric under theta -> -theta.
    """
    if family not in _MCMC_BETA and family not in ("usp", "so-odd", "so-even"):
        raise ValueError(f"no eigenvalue density for family {family!r}")
    per_chain = (count + chains - 1) // chains
    angles = rng.uniform(0.0, 2.0 * math.pi, size=(chains, n))
    kept = []
    accepts = 0
    proposals = 0
    total_sweeps = burn_in + per_chain * thin
    for sweep in range(total_sweeps):
        for i in range(n):
            others = np.delete(angles, i, axis=1)
            cur = angles[:, i]
            prop = np.mod(cur + step * rng.standard_normal(chains), 2.0 * math.pi)
            delta = _pair_log_weight(family, prop, others) - _pair_log_weight(
                family, cur, others
            )
            accept = np.log(rng.random(chains) + 1e-300) < delta
            angles[accept, i] = prop[accept]
            if sweep >= burn_in:
                accepts += int(accept.sum())
                proposals += chains
        if sweep >= burn_in and (sweep - burn_in) % thin == 0:
            kept.append(angles.copy())
    samples = np.concatenate(kept, axis=0)[:count]
    rate = accepts / max(proposals, 1)
    stat = np.cos(samples).sum(axis=1)
    tau_int = _autocorr_time(stat)
    warnings = []
    if not (0.1 <= rate <= 0.9):
        warnings.append(f"acceptance rate {rate:.3f} outside [0.1, 0.9]")
    return samples, McmcDiagnostics(
        acceptance_rate=rate, autocorrelation_time=tau_int, warnings=warnings
    )


def _autocorr_time(x: np.ndarray, max_lag: int = 50) -> float:
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    var = float(x @ x) / len(x)
    if var == 0.0 or len(x) < 3:
        return 1.0
    tau = 1.0
    for lag in range(1, min(max_lag, len(x) // 2)):
        rho = float(x[:-lag] @ x[lag:]) / ((len(x) - lag) * var)
        if rho < 0.05:
            break
        tau += 2.0 * rho
    return tau


def mcmc_w_values(family: str, n: int, angles: np.ndarray) -> np.ndarray:
    """Map eigenvalue-angle samples to the family's W statistic."""
    if family == "usp":
        return 2.0 * np.cos(angles).sum(axis=1)
    if family == "so-odd":
        return 1.0 + 2.0 * np.cos(angles).sum(axis=1)
    if family == "so-even":
        return 2.0 * np.cos(angles).sum(axis=1)
    if family == "u":
        return math.sqrt(2.0) * np.cos(angles).sum(axis=1)
    if family == "coe":
        return math.sqrt(1.0 + 1.0 / n) * np.cos(angles).sum(axis=1)
    if family == "cse":
        return 2.0 * math.sqrt(1.0 - 1.0 / (2.0 * n)) * np.cos(angles).sum(axis=1)
    raise ValueError(f"no W statistic for {family!r}")
