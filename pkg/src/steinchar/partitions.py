"""Integer signatures, Young-diagram box statistics, and the shift convention
that turns a signature with negative parts into a partition times a power of
the determinant.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Signature:
    """Weakly decreasing integer label.

    Trailing zeros are kept, so ``len(sig)`` always equals the number of
    variables it labels.
    """

    parts: tuple[int, ...]

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def is_partition(self) -> bool:
        return not self.parts or self.parts[-1] >= 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def trimmed(self) -> tuple[int, ...]:
        """Parts with trailing zeros dropped."""
        parts = self.parts
        k = len(parts)
        while k > 0 and parts[k - 1] == 0:
            k -= 1
        return parts[:k]

    def conjugate(self) -> "Signature":
        """Transposed diagram (partitions only)."""
        if not self.is_partition:
            raise ValueError("conjugate is defined for partitions only")
        rows = self.trimmed()
        width = rows[0] if rows else 0
        return Signature(tuple(sum(1 for r in rows if r > j) for j in range(width)))

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class BoxStats:
    """Arm/leg data of one diagram box: ``a`` boxes east, ``l`` south,
    ``a_prime`` west, ``l_prime`` north."""

    a: int
    l: int
    a_prime: int
    l_prime: int


def _as_partition(lam) -> Signature:
    sig = lam if isinstance(lam, Signature) else Signature(lam)
    if not sig.is_partition:
        raise ValueError(f"expected a partition (no negative parts), got {sig}")
    return sig


def boxes(lam) -> list[tuple[int, int, BoxStats]]:
    """All boxes of the diagram of ``lam`` as (row, col, BoxStats), 1-indexed.

    Invariants: a + a' + 1 = row length and l + l' + 1 = column height.
    """
    sig = _as_partition(lam)
    rows = sig.trimmed()
    cols = sig.conjugate().parts
    out = []
    for i, row_len in enumerate(rows):
        for j in range(row_len):
            col_height = cols[j]
            out.append(
                (
                    i + 1,
                    j + 1,
                    BoxStats(
                        a=row_len - j - 1,
                        l=col_height - i - 1,
                        a_prime=j,
                        l_prime=i,
                    ),
                )
            )
    return out


def shift_to_partition(lam, n_vars: int) -> tuple[Signature, int]:
    """Rewrite a signature as (partition, power): the labelled polynomial equals
    (x_1 ... x_n)^power times the partition's polynomial.

    Adds k = max(0, -lam_n) to every part; power is -k.
    """
    sig = lam if isinstance(lam, Signature) else Signature(lam)
    if len(sig) != n_vars:
        raise ValueError(f"signature has {len(sig)} parts, expected {n_vars}")
    if not sig.parts:
        return sig, 0
    k = max(0, -sig.parts[-1])
    return Signature(tuple(p + k for p in sig.parts)), -k
