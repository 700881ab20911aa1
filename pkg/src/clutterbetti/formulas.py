"""Closed-form Betti data, evaluated in exact rationals.

These serve as oracles for the Hochster engine: the resolution of a clutter
minimal to d-linearity is determined by ``(n, d, mu)``, cycles have their own
binomial formula, and three Herzog-Kuhl type closed forms are evaluated as given.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Mapping, Sequence

from .betti import BettiTable
from .errors import InconsistentInput, NonIntegralBetti
from .linalg import QQ, FieldSpec


@dataclass(frozen=True)
class ResolutionShape:
    """Homological positions with their twist multisets ``{j: multiplicity}``."""

    positions: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    @classmethod
    def from_table(cls, T: BettiTable) -> "ResolutionShape":
        pos: dict[int, dict[int, int]] = {}
        for (i, j), v in T.entries.items():
            pos.setdefault(i, {})[j] = v
        top = max(pos, default=-1)
        return cls(tuple((i, tuple(sorted(pos.get(i, {}).items()))) for i in range(top + 1)))

    def render(self) -> str:
        """``0 -> S^b(-j) + ... -> ... -> S^b(-d) -> I -> 0``."""
        terms = []
        for _, twists in reversed(self.positions):
            terms.append(" + ".join(f"S^{b}(-{j})" if b != 1 else f"S(-{j})" for j, b in sorted(twists, reverse=True)))
        return "0 -> " + " -> ".join(terms) + " -> I -> 0"


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise NonIntegralBetti(f"{what} evaluates to {x}, not a nonnegative integer")
    return int(x)


def homology_difference_identity(n: int, d: int, e: int) -> int:
    """dim H~_{d-2} - dim H~_{d-1} for a (d-1)-dimensional clique complex with e facets."""
    if not 1 <= d <= n or e < 0:
        raise InconsistentInput(f"need 1 <= d <= n and e >= 0, got n={n}, d={d}, e={e}")
    return sum((-1) ** (d + i - 1) * comb(n, i) for i in range(d)) - e


def minimal_resolution_formula(n: int, d: int, mu: int, K: FieldSpec = QQ) -> BettiTable:
    """Betti table forced on a clutter minimal to d-linearity with mu generators."""
    if not 1 <= d < n:
        raise InconsistentInput(f"need 1 <= d < n, got n={n}, d={d}")
    if not 1 <= mu <= comb(n, d):
        raise InconsistentInput(f"mu={mu} outside 1..C({n},{d})")
    e = comb(n, d) - mu
    entries: dict[tuple[int, int], int] = {}
    for i in range(n - d):
        val = comb(n - d, i) * (Fraction(d, d + i) * comb(n, d) - e)
        entries[(i, i + d)] = _integral(val, f"beta_{{{i},{i + d}}}")
    entries[(n - d - 1, n)] = entries.get((n - d - 1, n), 0) + 1
    last = 1 - e + sum((-1) ** (d + i - 1) * comb(n, i) for i in range(d))
    entries[(n - d, n)] = _integral(Fraction(last), f"beta_{{{n - d},{n}}}")
    return BettiTable(K, entries, n, d, multiplicity=e)


def cycle_betti(n: int, K: FieldSpec = QQ) -> BettiTable:
    """Betti table of the circuit ideal of the n-cycle, n >= 4."""
    if n < 4:
        raise InconsistentInput(f"cycle formula needs n >= 4, got {n}")
    entries = {}
    for i in range(n - 3):
        val = n * comb(n - 2, i) * Fraction(n - 3 - i, 2 + i)
        entries[(i, i + 2)] = _integral(val, f"beta_{{{i},{i + 2}}}")
    entries[(n - 3, n)] = 1
    return BettiTable(K, entries, n, 2, multiplicity=n)


def herzog_kuhl_variant(
    case: str,
    d_vec: Sequence[int],
    beta0: int | Mapping[int, int],
    e: int | Fraction,
    rho: int,
) -> list[int]:
    """Evaluate one of three Herzog-Kuhl type closed forms.

    Returns ``[beta'_1, ..., beta'_last]`` where
    ``beta'_i = beta_{i,d_i} - beta_{i-1,d_i}``; ``last`` is ``rho + 1`` in
    case ``"ii"`` and ``rho`` otherwise.  ``d_vec`` starts at ``d_0`` and must
    reach ``d_rho`` (``d_{rho+1}`` in case ``"ii"``).  ``beta0`` is the rank of
    the degree-``d_0`` part of the first free module (a mapping is read at
    ``d_0``).  Signs are taken exactly as in the closed forms, with no
    re-normalisation.
    """
    case = case.lower().strip("() ")
    if case not in ("i", "ii", "iii"):
        raise InconsistentInput(f"unknown case {case!r}")
    if rho < 0:
        raise InconsistentInput("rho must be nonnegative")
    if rho == 0:
        return []
    d = list(d_vec)
    need = rho + 2 if case == "ii" else rho + 1
    if len(d) < need:
        raise InconsistentInput(f"case ({case}) with rho={rho} needs {need} degrees, got {len(d)}")
    if any(a >= b for a, b in zip(d, d[1:])):
        raise InconsistentInput("degree list must be strictly increasing")
    if case in ("ii", "iii") and d[0] != 0:
        raise InconsistentInput(f"case ({case}) requires d_0 = 0")
    b0 = beta0[d[0]] if isinstance(beta0, Mapping) else beta0
    e = Fraction(e)

    out: list[Fraction] = []
    if case == "i":
        for i in range(1, rho + 1):
            ratio = prod((Fraction(d[k] - d[0], d[k] - d[i]) for k in range(1, rho + 1) if k != i), start=Fraction(1))
            out.append(b0 * (-1) ** i * ratio)
    else:
        top, fact = (rho + 1, factorial(rho)) if case == "ii" else (rho, factorial(rho - 1))
        for i in range(1, top + 1):
            others = [k for k in range(1, top + 1) if k != i]
            num = b0 * prod((d[k] for k in others), start=1) - fact * e
            den = prod((d[k] - d[i] for k in others), start=1)
            out.append((-1) ** (i - 1) * Fraction(num, den))
    for i, v in enumerate(out, start=1):
        if v.denominator != 1:
            raise NonIntegralBetti(f"beta'_{i} = {v} is not an integer")
    return [int(v) for v in out]
