"""Sparse matrices over the exact/float scalar tower, indexed by GT patterns.

Entries live in a dict keyed by (row, col) basis indices; absent means zero
and zeros are never stored, so dict equality is matrix equality.  A matrix is
either fully exact or fully float; the two kinds never mix entries.
"""

from __future__ import annotations

import math

import numpy as np

from .gt_basis import IrrepBasis
from .numerics import is_exact, rational


class NonCancellingNorms(ArithmeticError):
    """A normalized-basis entry kept an unresolved square root."""


def _clean(entries):
    return {k: v for k, v in entries.items() if v != 0}


class PatternMatrix:
    """Square matrix on an IrrepBasis; immutable by convention after build."""

    __slots__ = ("basis", "exact", "entries")

    def __init__(self, basis: IrrepBasis, entries=None, exact: bool = True):
        self.basis = basis
        self.exact = exact
        self.entries = _clean(entries or {})
        if exact and any(not is_exact(v) for v in self.entries.values()):
            raise TypeError("float entry in exact matrix")

    @classmethod
    def zeros(cls, basis, exact=True):
        return cls(basis, {}, exact)

    @classmethod
    def identity(cls, basis, exact=True):
        one = rational(1) if exact else 1.0
        return cls(basis, {(i, i): one for i in range(basis.dim)}, exact)

    @classmethod
    def diagonal(cls, basis, values, exact=True):
        return cls(basis, {(i, i): v for i, v in enumerate(values)}, exact)

    @classmethod
    def from_numpy(cls, basis, array):
        arr = np.asarray(array, dtype=float)
        entries = {
            (i, j): float(arr[i, j])
            for i in range(basis.dim)
            for j in range(basis.dim)
            if arr[i, j] != 0.0
        }
        return cls(basis, entries, exact=False)

    def get(self, i: int, j: int):
        return self.entries.get((i, j), rational(0) if self.exact else 0.0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.basis.dim, self.basis.dim))
        for (i, j), v in self.entries.items():
            out[i, j] = float(v)
        return out

    def zeta_numpy(self) -> np.ndarray:
        """Float matrix of the same operator in the orthonormal basis.

        Change-of-basis and algebra-element matrices conjugate the same way:
        entry (i, j) picks up N_i / N_j."""
        d = np.sqrt(np.array([float(v) for v in self.basis.norms_sq()]))
        return (d[:, None] * self.to_numpy()) / d[None, :]

    @classmethod
    def from_zeta_numpy(cls, basis, array) -> "PatternMatrix":
        d = np.sqrt(np.array([float(v) for v in basis.norms_sq()]))
        return cls.from_numpy(basis, np.asarray(array, dtype=float) * d[None, :] / d[:, None])

    def to_float(self) -> "PatternMatrix":
        if not self.exact:
            return self
        return PatternMatrix(
            self.basis, {k: float(v) for k, v in self.entries.items()}, exact=False
        )

    def transpose(self) -> "PatternMatrix":
        return PatternMatrix(
            self.basis, {(j, i): v for (i, j), v in self.entries.items()}, self.exact
        )

    def scaled(self, c) -> "PatternMatrix":
        exact = self.exact and is_exact(c)
        return PatternMatrix(
            self.basis, {k: c * v for k, v in self.entries.items()}, exact
        )

    def __neg__(self):
        return self.scaled(rational(-1) if self.exact else -1.0)

    def _binary(self, other, op):
        if self.basis.weight != other.basis.weight:
            raise ValueError("matrices live on different bases")
        exact = self.exact and other.exact
        a, b = self, other
        if not exact:
            a, b = self.to_float(), other.to_float()
        out = dict(a.entries)
        for k, v in b.entries.items():
            out[k] = op(out.get(k, 0), v)
        return PatternMatrix(self.basis, out, exact)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __matmul__(self, other) -> "PatternMatrix":
        if self.basis.weight != other.basis.weight:
            raise ValueError("matrices live on different bases")
        exact = self.exact and other.exact
        if not exact:
            return PatternMatrix.from_numpy(
                self.basis, self.to_numpy() @ other.to_numpy()
            )
        rows = {}
        for (j, k), v in other.entries.items():
            rows.setdefault(j, []).append((k, v))
        out = {}
        for (i, j), a in self.entries.items():
            row = rows.get(j)
            if row is None:
                continue
            for k, b in row:
                key = (i, k)
                prev = out.get(key)
                out[key] = a * b if prev is None else prev + a * b
        return PatternMatrix(self.basis, out, exact)

    def commutator(self, other) -> "PatternMatrix":
        return self @ other - other @ self

    def anticommutator(self, other) -> "PatternMatrix":
        return self @ other + other @ self

    def is_zero(self) -> bool:
        return not self.entries

    def is_identity(self) -> bool:
        return self == PatternMatrix.identity(self.basis, self.exact)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PatternMatrix)
            and self.basis.weight == other.basis.weight
            and self.exact == other.exact
            and self.entries == other.entries
        )

    __hash__ = None

    def max_abs(self) -> float:
        return max((abs(float(v)) for v in self.entries.values()), default=0.0)

    def max_abs_diff(self, other) -> float:
        keys = set(self.entries) | set(other.entries)
        return max(
            (abs(float(self.get(*k)) - float(other.get(*k))) for k in keys),
            default=0.0,
        )

    def max_rel_diff(self, other, floor: float = 1e-300) -> float:
        """max |a-b| / max(|a|, |b|, floor) over the union support."""
        keys = set(self.entries) | set(other.entries)
        worst = 0.0
        for k in keys:
            a, b = float(self.get(*k)), float(other.get(*k))
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), floor))
        return worst

    def items(self):
        return self.entries.items()

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"PatternMatrix({self.basis.weight}, {kind}, nnz={self.nnz})"


def orthogonality_defect(m: PatternMatrix) -> PatternMatrix:
    """m^T diag(N^2) m - diag(N^2); zero iff the norm-weighted orthogonality
    relation holds."""
    basis = m.basis
    nsq = basis.norms_sq()
    weighted = PatternMatrix(
        basis,
        {(i, j): nsq[i] * v for (i, j), v in m.entries.items()},
        m.exact,
    )
    gram = m.transpose() @ weighted
    target = PatternMatrix.diagonal(basis, nsq)
    if not m.exact:
        target = target.to_float()
    return gram - target


class NormalizedMatrix:
    """View of an exact matrix conjugated into the orthonormal basis.

    The conjugation multiplies entry (r, c) by N_r / N_c.  Those square roots
    are kept formal: every exact question we ask (transposition, equality)
    only needs the rational ratios (N_r/N_c)^2, and float evaluation takes
    real square roots.  Asking for an exact entry whose ratio is not a perfect
    square raises NonCancellingNorms.
    """

    def __init__(self, base: PatternMatrix):
        if not base.exact:
            raise TypeError("normalization view needs an exact matrix")
        self.base = base
        self.basis = base.basis

    def entry_ratio_sq(self, i, j):
        """Signed square of the normalized entry: sign * m_ij^2 N_i^2/N_j^2."""
        v = self.base.get(i, j)
        nsq = self.basis.norms_sq()
        sq = v * v * nsq[i] / nsq[j]
        return sq if v >= 0 else -sq

    def entry(self, i, j):
        v = self.base.get(i, j)
        if v == 0:
            return rational(0)
        nsq = self.basis.norms_sq()
        ratio = rational(nsq[i]) / rational(nsq[j])
        num, den = ratio.numerator, ratio.denominator
        rnum, rden = _isqrt_exact(num), _isqrt_exact(den)
        if rnum is None or rden is None:
            raise NonCancellingNorms(
                f"entry ({i},{j}) keeps sqrt({num}/{den}) after normalization"
            )
        return v * rational(rnum, rden)

    def entry_float(self, i, j) -> float:
        v = self.base.get(i, j)
        if v == 0:
            return 0.0
        nsq = self.basis.norms_sq()
        return float(v) * (float(nsq[i]) / float(nsq[j])) ** 0.5

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.basis.dim, self.basis.dim))
        for (i, j), _ in self.base.entries.items():
            out[i, j] = self.entry_float(i, j)
        return out

    def equals_transpose_of(self, other: "NormalizedMatrix") -> bool:
        """Exact check that self == other^T in the orthonormal basis."""
        keys = set(self.base.entries) | {(j, i) for (i, j) in other.base.entries}
        return all(
            self.entry_ratio_sq(i, j) == other.entry_ratio_sq(j, i)
            for (i, j) in keys
        )

    def is_orthogonal(self, tol: float = 1e-12) -> bool:
        arr = self.to_numpy()
        return float(np.max(np.abs(arr.T @ arr - np.eye(self.basis.dim)))) <= tol


def _isqrt_exact(n):
    """Integer square root if n is a perfect square, else None."""
    n = int(n)
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
