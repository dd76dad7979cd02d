"""Covering constructions: orientation double covers and cyclic covers.

The orientation double cover takes two coherently oriented copies of every
polygon (the second with its boundary word reversed) and lifts each
pairing; an orientation-preserving pairing stays within a sheet, an
orientation-reversing one swaps sheets, and every lifted pairing is then
orientation preserving.  The cover of a k-extremal genus-g complex is an
orientable 2k-extremal complex of genus g - 1.

Cyclic degree-n covers are driven by voltages: an integer residue per edge
label.  Crossing an edge shifts the sheet by its voltage, so the vertex
cycles survive (length three) exactly when the net voltage around every
cycle vanishes.  `find_nonorientable_cyclic_cover` searches assignments
drawn from the integer kernel of the cycle/edge crossing matrix, in a
deterministic order, and returns the first connected non-orientable cover;
one exists for every n because the deck homomorphism can be chosen to kill
an orientation-reversing loop.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import complexes, feasibility, grafting
from .complexes import PolygonComplex
from .errors import CoverError, EnumerationCapError


@dataclass(frozen=True)
class VoltageAssignment:
    """Sheet-shift residues, one per edge label, for a degree-n cyclic cover."""

    modulus: int
    voltages: tuple[tuple[int, int], ...]  # (label, residue) pairs, sorted

    def as_dict(self) -> dict[int, int]:
        return dict(self.voltages)

    @classmethod
    def from_dict(cls, n: int, d: dict[int, int]) -> "VoltageAssignment":
        return cls(modulus=n, voltages=tuple(sorted((k, v % n) for k, v in d.items())))


# ---------------------------------------------------------------------------
# orientation double cover


def orientation_double_cover(c: PolygonComplex) -> PolygonComplex:
    """Two-sheeted orientable cover of a non-orientable complex."""
    if complexes.is_orientable(c):
        raise CoverError("complex is already orientable; it has no orientation double cover")
    sizes = c.sizes
    k = len(sizes)
    # faces 0..k-1 are the + copies, k..2k-1 the reversed copies
    words = [[0] * sizes[p] for p in range(k)] + [[0] * sizes[p] for p in range(k)]
    label = 0
    for lab in sorted(complexes.occurrences(c)):
        (p, i, s1), (q, j, s2) = complexes.occurrences(c)[lab]
        ri = sizes[p] - 1 - i
        rj = sizes[q] - 1 - j
        if s1 == s2:
            pairs = (((p, i), (q, j)), ((k + p, ri), (k + q, rj)))
        else:
            pairs = (((p, i), (k + q, rj)), ((k + p, ri), (q, j)))
        for (fa, ia), (fb, ib) in pairs:
            label += 1
            words[fa][ia] = label
            words[fb][ib] = label
    out = PolygonComplex(
        tuple(tuple(w) for w in words),
        name=(c.name + "+") if c.name else None,
    )
    assert complexes.is_orientable(out)
    return out


def deck_swapped_double_cover(c: PolygonComplex) -> PolygonComplex:
    """The double cover with its two sheets exchanged (for involution tests)."""
    cover = orientation_double_cover(c)
    k = c.num_polygons
    words = cover.polygons
    return PolygonComplex(words[k:] + words[:k], name=cover.name)


# ---------------------------------------------------------------------------
# cyclic covers


def _cycle_matrix(c: PolygonComplex):
    """Net crossing count of each edge label around each vertex cycle."""
    labels = sorted(complexes.occurrences(c))
    col = {lab: t for t, lab in enumerate(labels)}
    rows = []
    anchors = []
    for data in complexes.vertex_cycles_with_crossings(c):
        row = [0] * len(labels)
        for lab, direction in data.crossings:
            row[col[lab]] += direction
        rows.append(row)
        anchors.append(data.cycle.corners[0])
    return labels, rows, anchors


def _integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the rational nullspace of the row matrix."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    basis = []
    for fc in (cc for cc in range(ncols) if cc not in pivots):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            v[pc] = -mat[rr][fc]
        den = 1
        for x in v:
            den = lcm(den, x.denominator)
        iv = [int(x * den) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, abs(x))
        basis.append([x // g for x in iv] if g > 1 else iv)
    return basis


def _cover_words(c: PolygonComplex, n: int, volt: dict[int, int]):
    """Words of the degree-n cover: sheet copies of each polygon with the
    pairing of label L shifted by volt[L] sheets."""
    occ = complexes.occurrences(c)
    nlabels = len(occ)
    lab_index = {lab: t for t, lab in enumerate(sorted(occ))}
    sizes = c.sizes
    k = len(sizes)
    words = [[0] * sizes[p] for _ in range(n) for p in range(k)]

    def face(p, t):
        return t * k + p

    for lab, ((p, i, s1), (q, j, s2)) in occ.items():
        v = volt[lab] % n
        for t in range(n):
            cover_lab = lab_index[lab] + 1 + nlabels * t
            words[face(p, t)][i] = s1 * cover_lab
            words[face(q, (t + v) % n)][j] = s2 * cover_lab
    return words


def _cover_components(c: PolygonComplex, n: int, volt: dict[int, int]) -> int:
    k = c.num_polygons
    uf = complexes.UnionFind(n * k)
    for lab, ((p, _, _), (q, _, _)) in complexes.occurrences(c).items():
        v = volt[lab] % n
        for t in range(n):
            uf.union(t * k + p, ((t + v) % n) * k + q)
    return len({uf.find(x) for x in range(n * k)})


def cyclic_cover(c: PolygonComplex, assignment: VoltageAssignment) -> PolygonComplex:
    """Degree-n cyclic cover of an extremal complex from explicit voltages.

    Preconditions checked: the base certifies extremal, the net voltage
    around every vertex cycle vanishes mod n, and the cover is connected.
    """
    rep = complexes.verify_extremal(c)
    if not rep.ok:
        raise CoverError("base complex is not extremal: %s" % (rep.failures,))
    n = assignment.modulus
    if n < 1:
        raise CoverError("cover degree must be >= 1")
    volt = assignment.as_dict()
    labels, rows, anchors = _cycle_matrix(c)
    missing = [lab for lab in labels if lab not in volt]
    if missing:
        raise CoverError("no voltage for labels %s" % missing)
    for row, anchor in zip(rows, anchors):
        s = sum(coef * volt[lab] for coef, lab in zip(row, labels)) % n
        if s:
            raise CoverError(
                "net voltage %d != 0 (mod %d) around the vertex cycle at corner %s"
                % (s, n, tuple(anchor))
            )
    parts = _cover_components(c, n, volt)
    if parts > 1:
        raise CoverError(
            "voltages give a disconnected cover (%d components)" % parts
        )
    out = PolygonComplex(tuple(tuple(w) for w in _cover_words(c, n, volt)))
    sizes = complexes.vertex_class_sizes(out)
    assert sizes and sizes[0] == 3 and sizes[-1] == 3
    return out


def find_voltage(c: PolygonComplex, n: int, max_radius: int = 4) -> VoltageAssignment:
    """First voltage assignment giving a connected non-orientable n-cover.

    Candidates are integer combinations of a kernel basis of the cycle
    crossing matrix (so cycle sums vanish exactly), scanned in order of
    increasing coefficient radius and lexicographic within a radius.
    """
    rep = complexes.verify_extremal(c)
    if not rep.ok:
        raise CoverError("base complex is not extremal: %s" % (rep.failures,))
    labels, rows, _ = _cycle_matrix(c)
    if n == 1:
        return VoltageAssignment.from_dict(1, {lab: 0 for lab in labels})
    basis = _integer_kernel(rows, len(labels))
    for radius in range(1, max_radius + 1):
        for combo in itertools.product(range(-radius, radius + 1), repeat=len(basis)):
            if max(abs(x) for x in combo) != radius:
                continue
            vec = [0] * len(labels)
            for coef, bv in zip(combo, basis):
                if coef:
                    for t, x in enumerate(bv):
                        vec[t] += coef * x
            volt = {lab: vec[t] % n for t, lab in enumerate(labels)}
            if all(v == 0 for v in volt.values()):
                continue
            if _cover_components(c, n, volt) > 1:
                continue
            words = _cover_words(c, n, volt)
            out = PolygonComplex(tuple(tuple(w) for w in words))
            if complexes.is_orientable(out):
                continue
            return VoltageAssignment.from_dict(n, volt)
    raise EnumerationCapError(
        "voltage search exhausted (radius %d, kernel dim %d)" % (max_radius, len(basis))
    )


def find_nonorientable_cyclic_cover(c: PolygonComplex, n: int) -> PolygonComplex:
    """First (in voltage search order) connected non-orientable n-cover."""
    if n == 1:
        return PolygonComplex(c.polygons, name=c.name)
    return cyclic_cover(c, find_voltage(c, n))


def realize_spec(k: int, g: int) -> PolygonComplex:
    """A certified k-extremal complex of genus g, for any feasible pair.

    Composes the primitive grafting schedule for N = 6 + 6(g-2)/k with a
    non-orientable cyclic cover of degree j = k/k_N (the position of (k, g)
    on the parameter line of N).
    """
    feasibility.require_feasible(k, g)
    n_sides = 6 + 6 * (g - 2) // k
    j = feasibility.cover_index(k, g)
    base = grafting.build_primitive(n_sides)
    out = find_nonorientable_cyclic_cover(base, j)
    rep = complexes.verify_extremal(out)
    assert rep.ok and (rep.k, rep.g, rep.n) == (k, g, n_sides), (rep, k, g)
    return PolygonComplex(out.polygons, name="K%dG%d" % (k, g))
