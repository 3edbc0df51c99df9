"""Orbit configurations of the icosahedral and octahedral groups, the finite
projective planes of orders 3, 4, 5, and the reduction maps relating them.

Icosahedral coordinates live in Z[phi] (phi the golden ratio), kept literally
as integer pairs a + b*phi so reducing modulo the primes 2 and sqrt(5) is a
coefficient-wise operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .cyclotomic import FieldElement
from .projective import Configuration, ProjLine, ProjPoint

__all__ = [
    "FinitePlane",
    "OrbitConfig",
    "Zphi",
    "finite_plane",
    "icosahedral",
    "octahedral",
    "reduce_icosahedral",
    "reduce_octahedral_mod3",
]


class Zphi:
    """a + b*phi with phi^2 = phi + 1; exact golden-ratio integer arithmetic."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = a
        self.b = b

    def __add__(self, other):
        return Zphi(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Zphi(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Zphi(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return Zphi(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return Zphi(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Zphi) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Zphi({self.a}, {self.b})"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def divisible_by_two(self) -> bool:
        return self.a % 2 == 0 and self.b % 2 == 0

    def half(self) -> "Zphi":
        return Zphi(self.a // 2, self.b // 2)

    def divisible_by_sqrt5(self) -> bool:
        return (self.a + 3 * self.b) % 5 == 0

    def div_sqrt5(self) -> "Zphi":
        # sqrt5 = 2*phi - 1 and (a + b*phi) * sqrt5 = (2b - a) + (2a + b)*phi
        a5, b5 = 2 * self.b - self.a, 2 * self.a + self.b
        if a5 % 5 or b5 % 5:
            raise ArithmeticError("not divisible by sqrt5")
        return Zphi(a5 // 5, b5 // 5)

    def mod2(self) -> int:
        # image in GF(4) = {0, 1, w, w+1} encoded 0..3 with w = 2, phi -> w
        return (self.a & 1) | ((self.b & 1) << 1)

    def mod_sqrt5(self) -> int:
        # residue field Z[phi]/sqrt5 = GF(5), phi -> 3
        return (self.a + 3 * self.b) % 5

    def to_field(self, m: int = 5) -> FieldElement:
        if self.b == 0:
            return FieldElement.from_rational(m, self.a)
        # phi = 1 + zeta_5 + zeta_5^4
        phi = (FieldElement.one(5) + FieldElement.zeta(5, 1) + FieldElement.zeta(5, 4))
        val = FieldElement.from_rational(5, self.a) + phi * self.b
        return val.embed(m)


def _dot3(u, v) -> Zphi:
    s = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    return s if isinstance(s, Zphi) else Zphi(s)


def _normalize_sign(v: tuple[Zphi, Zphi, Zphi]):
    for c in v:
        key = (c.b, c.a)
        if key > (0, 0):
            return v
        if key < (0, 0):
            return tuple(-x for x in v)
    raise ValueError("zero vector")


@dataclass
class OrbitConfig:
    """Labeled point and line orbits with an exact symmetric incidence form."""

    points: dict[str, list[tuple]]
    lines: dict[str, list[tuple]]
    field_order: int

    def all_points(self) -> list[tuple[str, int, tuple]]:
        return [(lbl, i, v) for lbl, vs in self.points.items() for i, v in enumerate(vs)]

    def all_lines(self) -> list[tuple[str, int, tuple]]:
        return [(lbl, i, v) for lbl, vs in self.lines.items() for i, v in enumerate(vs)]

    def incident(self, pv, lv) -> bool:
        return _dot3(pv, lv).is_zero()

    def incidence_count(self, point_labels, line_labels) -> int:
        pts = [v for lbl in point_labels for v in self.points[lbl]]
        lns = [v for lbl in line_labels for v in self.lines[lbl]]
        return sum(1 for p in pts for l in lns if self.incident(p, l))

    def to_configuration(self) -> Configuration:
        m = self.field_order
        pts = []
        labels: dict[str, list[int]] = {}
        for lbl, vs in self.points.items():
            for v in vs:
                labels.setdefault(lbl, []).append(len(pts))
                pts.append(ProjPoint(tuple(c.to_field(m) if isinstance(c, Zphi)
                                           else FieldElement.from_rational(m, c)
                                           for c in v)))
        named = {}
        for lbl, vs in self.lines.items():
            named[lbl] = [ProjLine(tuple(c.to_field(m) if isinstance(c, Zphi)
                                         else FieldElement.from_rational(m, c)
                                         for c in v)) for v in vs]
        return Configuration(m, pts, named, labels)


def _icosahedron_vertices() -> list[tuple[Zphi, Zphi, Zphi]]:
    zero, one = Zphi(0), Zphi(1)
    phi = Zphi(0, 1)
    out = []
    for s1, s2 in product((1, -1), repeat=2):
        a, b = one * s1, phi * s2
        out.append((zero, a, b))
        out.append((a, b, zero))
        out.append((b, zero, a))
    return out


def icosahedral() -> OrbitConfig:
    """The A5 orbit configuration: 6 vertex, 10 face, 15 edge point classes of
    the icosahedron, with the dual line classes."""
    verts = _icosahedron_vertices()
    phi = Zphi(0, 1)
    # adjacent vertices have dot product phi (antipodal pairs give -(2+phi))
    p6 = []
    seen = set()
    for v in verts:
        n = _normalize_sign(v)
        if n not in seen:
            seen.add(n)
            p6.append(n)
    edges = set()
    faces = set()
    for u, v in combinations(verts, 2):
        if _dot3(u, v) == phi:
            edges.add(_normalize_sign(tuple(a + b for a, b in zip(u, v))))
    for u, v, w in combinations(verts, 3):
        if (_dot3(u, v) == phi and _dot3(v, w) == phi and _dot3(u, w) == phi):
            faces.add(_normalize_sign(tuple(a + b + c for a, b, c in zip(u, v, w))))
    p10 = sorted(faces, key=lambda t: [(c.a, c.b) for c in t])
    p15 = sorted(edges, key=lambda t: [(c.a, c.b) for c in t])
    p6 = sorted(p6, key=lambda t: [(c.a, c.b) for c in t])
    if (len(p6), len(p10), len(p15)) != (6, 10, 15):
        raise RuntimeError(f"orbit sizes {(len(p6), len(p10), len(p15))}")
    points = {"P6": p6, "P10": p10, "P15": p15}
    lines = {"L6": list(p6), "L10": list(p10), "L15": list(p15)}
    return OrbitConfig(points, lines, 5)


def octahedral() -> OrbitConfig:
    """The S4 orbit configuration: 3 vertex, 4 face, 6 edge classes of the
    octahedron; 13 points and 13 dual lines with 48 incidences."""
    classes: dict[str, list] = {"vertex": [], "face": [], "edge": []}
    seen = set()
    for v in product((-1, 0, 1), repeat=3):
        if v == (0, 0, 0):
            continue
        n = tuple(Zphi(c) for c in v)
        n = _normalize_sign(n)
        if n in seen:
            continue
        seen.add(n)
        support = sum(1 for c in n if not c.is_zero())
        label = {1: "vertex", 2: "edge", 3: "face"}[support]
        classes[label].append(n)
    if (len(classes["vertex"]), len(classes["face"]), len(classes["edge"])) != (3, 4, 6):
        raise RuntimeError("octahedral orbit sizes are wrong")
    points = {k: sorted(v, key=lambda t: [(c.a, c.b) for c in t]) for k, v in classes.items()}
    lines = {k: list(v) for k, v in points.items()}
    return OrbitConfig(points, lines, 1)


# ---------------------------------------------------------------------------
# finite projective planes


def _gf_ops(q: int):
    if q in (3, 5):
        add = lambda a, b: (a + b) % q
        mul = lambda a, b: (a * b) % q
        inv = lambda a: pow(a, q - 2, q)
        return add, mul, inv
    if q == 4:
        # bit pairs over GF(2), w^2 = w + 1, elements 0,1,w=2,w+1=3
        add = lambda a, b: a ^ b
        MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
        mul = lambda a, b: MUL[a][b]
        INV = [0, 1, 3, 2]
        inv = lambda a: INV[a]
        return add, mul, inv
    raise ValueError(f"unsupported field order {q}")


@dataclass
class FinitePlane:
    """PG(2, q): canonical point/line triples and the full incidence matrix."""

    q: int
    points: list[tuple[int, int, int]]
    lines: list[tuple[int, int, int]]
    incidence: list[list[bool]]

    @property
    def incidence_total(self) -> int:
        return sum(sum(1 for x in row if x) for row in self.incidence)

    def incidence_point_line(self, point, line) -> bool:
        add, mul, _ = _gf_ops(self.q)
        acc = 0
        for a, b in zip(point, line):
            acc = add(acc, mul(a, b))
        return acc == 0

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "points": [list(p) for p in self.points],
            "lines": [list(l) for l in self.lines],
            "incidences": self.incidence_total,
        }


def _canonical_triples(q: int) -> list[tuple[int, int, int]]:
    out = [(1, a, b) for a in range(q) for b in range(q)]
    out += [(0, 1, a) for a in range(q)]
    out.append((0, 0, 1))
    return out


def finite_plane(q: int) -> FinitePlane:
    """The projective plane of order q for q in {3, 4, 5}."""
    if q not in (3, 4, 5):
        raise ValueError("supported orders: 3, 4, 5")
    pts = _canonical_triples(q)
    lines = _canonical_triples(q)
    add, mul, _ = _gf_ops(q)
    inc = []
    for l in lines:
        row = []
        for p in pts:
            acc = 0
            for a, b in zip(p, l):
                acc = add(acc, mul(a, b))
            row.append(acc == 0)
        inc.append(row)
    plane = FinitePlane(q, pts, lines, inc)
    expected = (q * q + q + 1) * (q + 1)
    if plane.incidence_total != expected:
        raise RuntimeError(f"PG(2,{q}) has {plane.incidence_total} incidences")
    return plane


# ---------------------------------------------------------------------------
# reduction maps


def _canon_mod_q(triple: tuple[int, int, int], q: int) -> tuple[int, int, int]:
    add, mul, inv = _gf_ops(q)
    for c in triple:
        if c:
            s = inv(c)
            return tuple(mul(s, x) for x in triple)
    raise ValueError("triple reduces to zero")


def _reduce_zphi_triple(v, which: str) -> tuple[int, int, int]:
    v = list(v)
    if which == "two":
        while all(c.divisible_by_two() for c in v):
            v = [c.half() for c in v]
        return _canon_mod_q(tuple(c.mod2() for c in v), 4)
    while all(c.divisible_by_sqrt5() for c in v):
        v = [c.div_sqrt5() for c in v]
    return _canon_mod_q(tuple(c.mod_sqrt5() for c in v), 5)


def reduce_octahedral_mod3():
    """Reduce the 13 octahedral points and lines mod 3 onto PG(2,3); report the
    incidences created by the reduction (exactly the four self-dual face pairs)."""
    oct_cfg = octahedral()
    plane = finite_plane(3)

    def red(v) -> tuple[int, int, int]:
        return _canon_mod_q(tuple(c.a % 3 for c in v), 3)

    point_map = {}
    for lbl, i, v in oct_cfg.all_points():
        point_map[(lbl, i)] = red(v)
    line_map = {}
    for lbl, i, v in oct_cfg.all_lines():
        line_map[(lbl, i)] = red(v)
    if len(set(point_map.values())) != 13 or len(set(line_map.values())) != 13:
        raise RuntimeError("octahedral reduction is not injective")
    new_incidences = []
    total = 0
    for (plbl, pi), pv in ((k, oct_cfg.points[k[0]][k[1]]) for k in point_map):
        for (llbl, li), lv in ((k, oct_cfg.lines[k[0]][k[1]]) for k in line_map):
            rational = oct_cfg.incident(pv, lv)
            mod3 = plane.incidence_point_line(point_map[(plbl, pi)], line_map[(llbl, li)])
            if mod3:
                total += 1
            if mod3 and not rational:
                new_incidences.append(((plbl, pi), (llbl, li)))
    report = {
        "rational_incidences": oct_cfg.incidence_count(oct_cfg.points, oct_cfg.lines),
        "mod3_incidences": total,
        "new_incidences": sorted(new_incidences),
    }
    return (point_map, line_map), report


def reduce_icosahedral(ideal: str):
    """Reduce icosahedral orbits modulo 2 (onto PG(2,4), from the 21-point
    subconfiguration) or modulo sqrt5 (onto PG(2,5), from all 31 points)."""
    if ideal not in ("two", "sqrt5"):
        raise ValueError("ideal must be 'two' or 'sqrt5'")
    cfg = icosahedral()
    if ideal == "two":
        point_labels = ("P6", "P15")
        line_labels = ("L6", "L15")
        q = 4
    else:
        point_labels = ("P6", "P10", "P15")
        line_labels = ("L6", "L10", "L15")
        q = 5
    plane = finite_plane(q)
    point_map = {}
    for lbl in point_labels:
        for i, v in enumerate(cfg.points[lbl]):
            point_map[(lbl, i)] = _reduce_zphi_triple(v, ideal)
    line_map = {}
    for lbl in line_labels:
        for i, v in enumerate(cfg.lines[lbl]):
            line_map[(lbl, i)] = _reduce_zphi_triple(v, ideal)
    n = q * q + q + 1
    if len(set(point_map.values())) != len(point_map) or len(point_map) != n:
        raise RuntimeError("point reduction is not a bijection")
    if len(set(line_map.values())) != len(line_map) or len(line_map) != n:
        raise RuntimeError("line reduction is not a bijection")
    present = 0
    missing = []
    for (plbl, pi), ptriple in point_map.items():
        pv = cfg.points[plbl][pi]
        for (llbl, li), ltriple in line_map.items():
            lv = cfg.lines[llbl][li]
            rational = cfg.incident(pv, lv)
            modular = plane.incidence_point_line(ptriple, ltriple)
            if rational and not modular:
                raise RuntimeError("a rational incidence vanished under reduction")
            if rational:
                present += 1
            elif modular:
                missing.append(((plbl, pi), (llbl, li)))
    report = {
        "rational_incidences": present,
        "plane_incidences": plane.incidence_total,
        "missing": sorted(missing),
    }
    return (point_map, line_map), report
