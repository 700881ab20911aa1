"""Exact rank computations over the rationals and prime fields.

Three elimination kernels live here:

* GF(2): rows packed into Python ints, eliminated with XOR.
* GF(p), p odd: dense row reduction of an ``int64`` array modulo ``p``.
* Q: multi-modular.  Ranks modulo large primes are lower bounds for the
  rational rank; once the product of the primes used exceeds a Hadamard bound
  on the matrix minors the largest modular rank is provably the rational one.

`rank_fraction_free` is an independent Bareiss elimination over Python
integers, kept as a reference route for the rational rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import InconsistentInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``characteristic == 0`` is Q, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 0 or (p != 0 and not is_prime(p)):
            raise InconsistentInput(f"characteristic must be 0 or a prime, got {p!r}")

    @classmethod
    def parse(cls, text: str | int) -> "FieldSpec":
        """Accept ``"q"``/``"Q"``/``"0"`` for the rationals or a prime."""
        if isinstance(text, int):
            return cls(text)
        t = text.strip().lower()
        if t in ("q", "0", "qq"):
            return cls(0)
        try:
            p = int(t)
        except ValueError:
            raise InconsistentInput(f"field must be 'q' or a prime, got {text!r}") from None
        if not is_prime(p):
            raise InconsistentInput(f"field must be 'q' or a prime, got composite {p}")
        return cls(p)

    @property
    def label(self) -> str:
        return "q" if self.characteristic == 0 else str(self.characteristic)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Immutable dense matrix with exact entries.

    Over GF(p) entries are residues in ``[0, p)`` stored as ``int64``; over Q
    they are Python ints or Fractions (``object`` dtype) or small ``int64``.
    """

    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.data.shape != (self.rows, self.cols):
            raise InconsistentInput(
                f"entry array has shape {self.data.shape}, expected {(self.rows, self.cols)}"
            )
        self.data.flags.writeable = False

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], K: FieldSpec = QQ, cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise InconsistentInput("ragged rows")
        p = K.characteristic
        if p:
            data = np.array([[int(x % p) if not isinstance(x, Fraction) else _frac_mod(x, p) for x in r] for r in rows],
                            dtype=np.int64).reshape(len(rows), ncols)
        elif all(isinstance(x, int) and abs(x) < 2**31 for r in rows for x in r):
            data = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
        else:
            data = np.empty((len(rows), ncols), dtype=object)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    data[i, j] = x
        return cls(len(rows), ncols, data)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, self.data.T.copy())

    def tolist(self) -> list[list]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data.tolist()))))


def _frac_mod(x: Fraction, p: int) -> int:
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
    return (x.numerator * pow(den, -1, p)) % p


# --------------------------------------------------------------------------
# GF(2)


def rank_gf2_packed(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors given as bitmask integers."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def _pack_rows(a: np.ndarray) -> list[int]:
    bits = (a % 2).astype(np.uint8)
    out = []
    for row in bits:
        packed = np.packbits(row, bitorder="little")
        out.append(int.from_bytes(packed.tobytes(), "little"))
    return out


# --------------------------------------------------------------------------
# GF(p)


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer array modulo an odd prime ``p < 2**31``."""
    a = np.array(a, dtype=np.int64) % p if a.dtype != object else np.array(
        [[int(x) % p for x in row] for row in a], dtype=np.int64).reshape(a.shape)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = np.flatnonzero(a[r + 1:, c])
        if below.size:
            idx = below + (r + 1)
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % p
        r += 1
    return r


# --------------------------------------------------------------------------
# Q


def _primes_below(start: int, count: int) -> list[int]:
    out = []
    q = start - 1 if start % 2 == 0 else start - 2
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q -= 2
    return out


# Large primes for the multi-modular rational rank; p**2 fits in int64.
MODULI = tuple(_primes_below(2**31, 24))


def _integer_rows(a: np.ndarray) -> np.ndarray:
    """Clear denominators row by row; returns an ``object`` array of ints."""
    out = np.empty(a.shape, dtype=object)
    for i, row in enumerate(a):
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        for j, x in enumerate(row):
            out[i, j] = int(x * den) if isinstance(x, Fraction) else int(x) * den
    return out


def _hadamard_sq(a: np.ndarray, r: int) -> int:
    """Square of a bound on every r x r minor of the (nonzero-trimmed) array."""
    if a.dtype == object or (a.size and int(np.abs(a).max()) > 2**15):
        obj = a.astype(object)
        col = sorted((sum(int(x) * int(x) for x in obj[:, j]) for j in range(obj.shape[1])), reverse=True)
        row = sorted((sum(int(x) * int(x) for x in obj[i, :]) for i in range(obj.shape[0])), reverse=True)
    else:
        sq = a.astype(np.int64) ** 2
        col = sorted(sq.sum(axis=0).tolist(), reverse=True)
        row = sorted(sq.sum(axis=1).tolist(), reverse=True)
    return min(prod(col[:r]), prod(row[:r]))


def rank_rational(a: np.ndarray) -> int:
    """Exact rank over Q of an integer (or Fraction) array."""
    if a.size == 0:
        return 0
    if a.dtype == object and any(isinstance(x, Fraction) for x in a.flat):
        a = _integer_rows(a)
    nzr = np.flatnonzero(np.any(a != 0, axis=1))
    nzc = np.flatnonzero(np.any(a != 0, axis=0))
    if nzr.size == 0:
        return 0
    a = a[np.ix_(nzr, nzc)]
    rmax = min(a.shape)
    bound_sq = _hadamard_sq(a, rmax)
    best = 0
    modulus = 1
    for p in MODULI:
        best = max(best, rank_mod_p(a, p))
        modulus *= p
        if best == rmax or modulus * modulus > bound_sq:
            return best
    # Far beyond any matrix this package builds; fall back to Bareiss.
    return rank_fraction_free(a.tolist())


def rank_fraction_free(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Bareiss fraction-free elimination over Q; pure Python reference."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    if any(isinstance(x, Fraction) for r in m for x in r):
        m = _integer_rows(np.array(m, dtype=object)).tolist()
    m = [[int(x) for x in r] for r in m]
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                # exact division is the Bareiss invariant
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        r += 1
    return r


# --------------------------------------------------------------------------


def rank_array(a: np.ndarray, K: FieldSpec) -> int:
    """Rank of a 2-d array of exact entries over ``K``."""
    a = np.asarray(a)
    if a.ndim != 2 or a.size == 0:
        return 0
    p = K.characteristic
    if p == 2:
        if a.dtype == object:
            a = np.array([[int(x) % 2 if not isinstance(x, Fraction) else _frac_mod(x, 2) for x in r] for r in a],
                         dtype=np.int64).reshape(a.shape)
        return rank_gf2_packed(_pack_rows(a))
    if p:
        if a.dtype == object and any(isinstance(x, Fraction) for x in a.flat):
            a = np.array([[_frac_mod(x, p) if isinstance(x, Fraction) else int(x) % p for x in r] for r in a],
                         dtype=np.int64).reshape(a.shape)
        return rank_mod_p(a, p)
    return rank_rational(a)


def rank(M: ExactMatrix | np.ndarray | Sequence[Sequence], K: FieldSpec = QQ) -> int:
    """Rank of ``M`` over ``K``; empty matrices have rank 0."""
    if isinstance(M, ExactMatrix):
        return rank_array(M.data, K)
    if isinstance(M, np.ndarray):
        return rank_array(M, K)
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    return rank(ExactMatrix.from_rows(rows, K), K)
