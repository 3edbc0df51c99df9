"""Parallel-lines-with-transversals instances and the exponent table.

A Brass instance is N lines concurrent at one point at infinity together with
M transversal lines avoiding that point; the quantity of interest is the exact
number of distinct intersection points the transversals cut on each parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cyclotomic import FieldElement
from .projective import Configuration, ProjLine, ProjPoint, meet, meets_of

__all__ = [
    "BrassInstance",
    "ExponentRow",
    "baseline_n_plus_4",
    "m_of_n",
    "table1",
    "verify_brass",
    "witness",
]


class BrassVerificationError(ValueError):
    pass


@dataclass
class BrassInstance:
    """N concurrent-at-infinity parallels plus M transversals, with exact counts."""

    N: int
    parallels: tuple[ProjLine, ...]
    transversals: tuple[ProjLine, ...]
    per_line_points: tuple[int, ...] = field(default=())
    source: Configuration | None = None
    note: str = ""

    def __post_init__(self):
        self.parallels = tuple(self.parallels)
        self.transversals = tuple(self.transversals)
        if len(self.parallels) != self.N:
            raise BrassVerificationError(
                f"expected {self.N} parallels, got {len(self.parallels)}"
            )
        if len({l.prim for l in self.parallels}) != self.N:
            raise BrassVerificationError("parallels must be pairwise distinct")
        common = meet(self.parallels[0], self.parallels[1]) if self.N >= 2 else None
        if common is not None:
            if not common.at_infinity:
                raise BrassVerificationError("parallels must meet at infinity")
            for l in self.parallels[2:]:
                if not l.contains(common):
                    raise BrassVerificationError("parallels must be concurrent")
            for t in self.transversals:
                if t.contains(common):
                    raise BrassVerificationError(
                        "a transversal passes through the parallels' common point"
                    )
        self.common_point = common
        par_prims = {l.prim for l in self.parallels}
        for t in self.transversals:
            if t.prim in par_prims:
                raise BrassVerificationError("a transversal equals a parallel")
        if not self.per_line_points:
            self.per_line_points = tuple(self._count(l) for l in self.parallels)

    def _count(self, l: ProjLine) -> int:
        return len({p.prim for p in meets_of(l, self.transversals)})

    @property
    def M(self) -> int:
        return len(self.transversals)


def verify_brass(inst: BrassInstance) -> tuple[bool, list[int]]:
    """Check that every parallel carries at most N transversal points."""
    counts = list(inst.per_line_points)
    return all(c <= inst.N for c in counts), counts


def baseline_n_plus_4(N: int) -> BrassInstance:
    """The M = N+4 instance: verticals x=i plus the line at infinity as parallels;
    horizontals y=j and four diagonal lines as transversals."""
    if N < 3:
        raise ValueError("need N >= 3")
    m = 1
    one = FieldElement.one(m)
    zero = FieldElement.zero(m)

    def fe(v) -> FieldElement:
        return FieldElement.from_rational(m, Fraction(v))

    parallels = [ProjLine((one, zero, fe(-i))) for i in range(1, N)]
    parallels.append(ProjLine.at_infinity_line(m))
    transversals = [ProjLine((zero, one, fe(-j))) for j in range(1, N + 1)]
    transversals.append(ProjLine((one, fe(-1), zero)))        # y = x
    transversals.append(ProjLine((one, fe(-1), one)))         # y = x + 1
    transversals.append(ProjLine((one, one, fe(-N))))         # x + y = N
    transversals.append(ProjLine((one, one, fe(-(N + 1)))))   # x + y = N + 1
    inst = BrassInstance(N, tuple(parallels), tuple(transversals))
    ok, counts = verify_brass(inst)
    if not ok:
        raise BrassVerificationError(f"baseline instance failed: counts {counts}")
    expected = sorted([N] * (N - 1) + [3])
    if sorted(counts) != expected:
        raise BrassVerificationError(
            f"baseline count profile {sorted(counts)} != {expected}"
        )
    return inst


def m_of_n(N: int) -> int:
    """Largest transversal count achieved here, by residue of N mod 12."""
    if N < 5:
        raise ValueError("defined for N >= 5")
    r = N % 12
    if r == 11:
        return 2 * N + 3
    if r in (0, 1, 3, 5, 7, 9):
        return 2 * N + 1
    return 2 * N


@dataclass(frozen=True)
class ExponentRow:
    N: int
    M: int
    tau: str  # log M / log N truncated to 3 decimals, as printed
    family: str


def _tau_string(N: int, M: int) -> str:
    old = mpmath.mp.dps
    try:
        mpmath.mp.dps = 40
        scaled = 1000 * mpmath.log(M) / mpmath.log(N)
        nearest = int(mpmath.nint(scaled))
        if abs(scaled - nearest) < mpmath.mpf(10) ** -25:
            # boundary case: trust it only if log M / log N = nearest/1000 exactly
            if M**1000 == N**nearest:
                i = nearest
            else:
                raise ArithmeticError(f"tau for N={N} too close to a truncation edge")
        else:
            i = int(mpmath.floor(scaled))
    finally:
        mpmath.mp.dps = old
    return f"{i // 1000}.{i % 1000:03d}"


def _family_for(N: int) -> str:
    r = N % 12
    if r == 11:
        return "collapsed_star"
    if r == 0:
        return "collapsed_star"
    if N % 2 == 1:
        return "pencil_odd"
    return "pencil_even"


def table1(from_n: int, to_n: int) -> list[ExponentRow]:
    if not (5 <= from_n <= to_n):
        raise ValueError("need 5 <= from <= to")
    rows = []
    for N in range(from_n, to_n + 1):
        M = m_of_n(N)
        rows.append(ExponentRow(N, M, _tau_string(N, M), _family_for(N)))
    return rows


def witness(N: int) -> BrassInstance:
    """A verified instance achieving M = m_of_n(N) transversals."""
    if N < 5:
        raise ValueError("defined for N >= 5")
    from . import constructions

    r = N % 12
    if r == 11:
        _, inst_b, _ = constructions.collapsed_star((N + 1) // 12)
        inst = inst_b
    elif r == 0:
        inst_a, _, _ = constructions.collapsed_star(N // 12)
        inst = inst_a
    elif N % 2 == 1:
        inst, _ = constructions.pencil_odd(N)
    else:
        inst = constructions.pencil_even(N)
    ok, counts = verify_brass(inst)
    if not ok or inst.M != m_of_n(N):
        raise BrassVerificationError(
            f"witness for N={N}: M={inst.M}, counts={counts}"
        )
    return inst
