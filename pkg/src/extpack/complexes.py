"""Polygon complexes: closed surfaces built from edge-identified polygons.

A complex is a list of polygons, each a cyclic word of signed nonzero
integer labels read counterclockwise around the boundary.  Every absolute
label occurs exactly twice across the complex and the two occurrences are
identified:

* equal signs: the identification is orientation preserving, so the two
  directed boundary occurrences are glued head-to-tail (the classical
  ``a ... a^{-1}`` pattern);
* opposite signs: the identification is orientation reversing and the
  occurrences are glued head-to-head (the classical ``a ... a`` pattern,
  a crosscap when both occurrences sit on one polygon).

With that convention ``polygon 1 1`` is a sphere, ``polygon 1 -1`` the
projective plane, ``polygon 1 2 1 2`` the torus and ``polygon 1 2 -1 2``
the Klein bottle.

Corners are the polygon vertices: corner (p, i) sits between side i-1 and
side i of polygon p.  The gluing partitions corners into vertex cycles; a
complex is certified extremal when it is connected, non-orientable, all
polygons share one size N >= 7 and every vertex cycle has length exactly
three (three angles of 2*pi/3 closing up to 2*pi).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ComplexFormatError, InvalidComplexError

FORMAT_HEADER = "# extpack complex format v1"


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class PolygonComplex:
    """An edge-identified collection of polygons forming a closed surface.

    The name is presentation metadata and does not take part in equality.
    """

    polygons: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        polys = tuple(tuple(w) for w in self.polygons)
        object.__setattr__(self, "polygons", polys)
        if not polys:
            raise InvalidComplexError("complex needs at least one polygon")
        counts: dict[int, int] = {}
        for word in polys:
            if len(word) < 1:
                raise InvalidComplexError("empty polygon")
            for v in word:
                if not isinstance(v, int) or v == 0:
                    raise InvalidComplexError("labels must be nonzero integers, got %r" % (v,))
                counts[abs(v)] = counts.get(abs(v), 0) + 1
        bad = sorted(a for a, n in counts.items() if n != 2)
        if bad:
            raise InvalidComplexError(
                "unpaired label %s: every label must occur exactly twice" % (bad[0],)
            )
        if not _connected(polys):
            raise InvalidComplexError("complex is disconnected")

    @property
    def num_polygons(self) -> int:
        return len(self.polygons)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.polygons)

    @property
    def num_edges(self) -> int:
        return sum(self.sizes) // 2

    def __repr__(self):
        tag = " %s" % self.name if self.name else ""
        return "<PolygonComplex%s k=%d sides=%s>" % (tag, self.num_polygons, list(self.sizes))


class Corner(tuple):
    """Polygon corner (polygon index, boundary position)."""

    __slots__ = ()

    def __new__(cls, polygon, position):
        return super().__new__(cls, (polygon, position))

    @property
    def polygon(self):
        return self[0]

    @property
    def position(self):
        return self[1]


@dataclass(frozen=True)
class VertexCycle:
    """Corners around one surface vertex, in cyclic order."""

    corners: tuple[Corner, ...]

    def __len__(self):
        return len(self.corners)


@dataclass(frozen=True)
class SurfaceInvariants:
    vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    orientable: bool
    genus: int


@dataclass(frozen=True)
class ExtremalityReport:
    ok: bool
    k: int | None
    g: int | None
    n: int | None
    chi: int
    orientable: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "format_version": 1,
            "ok": self.ok,
            "k": self.k,
            "g": self.g,
            "N": self.n,
            "chi": self.chi,
            "orientable": self.orientable,
            "failures": list(self.failures),
        }


# ---------------------------------------------------------------------------
# little union-find used throughout


class UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        """Merge the classes of a and b; returns the merged class size."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return self.size[ra]
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return self.size[ra]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


def _connected(polys: tuple[tuple[int, ...], ...]) -> bool:
    uf = UnionFind(len(polys))
    seen: dict[int, int] = {}
    for p, word in enumerate(polys):
        for v in word:
            a = abs(v)
            if a in seen:
                uf.union(seen[a], p)
            else:
                seen[a] = p
    root = uf.find(0)
    return all(uf.find(p) == root for p in range(len(polys)))


# ---------------------------------------------------------------------------
# combinatorial structure


def occurrences(c: PolygonComplex) -> dict[int, tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Map label -> its two occurrences (polygon, position, sign) in scan order."""
    out: dict[int, list] = {}
    for p, word in enumerate(c.polygons):
        for i, v in enumerate(word):
            out.setdefault(abs(v), []).append((p, i, 1 if v > 0 else -1))
    return {a: (occ[0], occ[1]) for a, occ in out.items()}


def corner_offsets(c: PolygonComplex) -> list[int]:
    offs = [0]
    for w in c.polygons:
        offs.append(offs[-1] + len(w))
    return offs


def _corner_relations(c: PolygonComplex, offs: list[int]):
    """Yield the corner identifications (as dense corner ids) of every pairing."""
    sizes = c.sizes
    for (p, i, s1), (q, j, s2) in occurrences(c).values():
        a0 = offs[p] + i
        a1 = offs[p] + (i + 1) % sizes[p]
        b0 = offs[q] + j
        b1 = offs[q] + (j + 1) % sizes[q]
        if s1 == s2:
            yield a0, b1
            yield a1, b0
        else:
            yield a0, b0
            yield a1, b1


def vertex_class_sizes(c: PolygonComplex, cap: int | None = None) -> list[int] | None:
    """Sizes of the corner classes; returns None early if any exceeds cap."""
    offs = corner_offsets(c)
    uf = UnionFind(offs[-1])
    for a, b in _corner_relations(c, offs):
        if uf.union(a, b) > (cap or 1 << 60):
            return None
    return sorted(len(cl) for cl in uf.classes().values())


def flag_action(c: PolygonComplex) -> tuple[list[int], list[int], list[int]]:
    """The three flag involutions (side swap, edge crossing, corner swap).

    Flags are corner-side incidences: flag 2*(offset+i)+e sits on side i of
    polygon p next to vertex v_{i+e}.  t0 exchanges the two flags of a side,
    t2 the two flags of a corner within its polygon, and t1 crosses the edge
    pairing (respecting the sign convention).
    """
    offs = corner_offsets(c)
    m = 2 * offs[-1]
    t0 = [0] * m
    t1 = [0] * m
    t2 = [0] * m
    sizes = c.sizes
    for p, word in enumerate(c.polygons):
        n = sizes[p]
        for i in range(n):
            f0 = 2 * (offs[p] + i)
            f1 = f0 + 1
            t0[f0] = f1
            t0[f1] = f0
            g0 = 2 * (offs[p] + (i + 1) % n)
            t2[f1] = g0
            t2[g0] = f1
    for (p, i, s1), (q, j, s2) in occurrences(c).values():
        a0 = 2 * (offs[p] + i)
        b0 = 2 * (offs[q] + j)
        if s1 == s2:
            t1[a0], t1[b0 + 1] = b0 + 1, a0
            t1[a0 + 1], t1[b0] = b0, a0 + 1
        else:
            t1[a0], t1[b0] = b0, a0
            t1[a0 + 1], t1[b0 + 1] = b0 + 1, a0 + 1
    return t0, t1, t2


def vertex_cycles(c: PolygonComplex) -> list[VertexCycle]:
    """All vertex cycles with their corners in cyclic order around the vertex."""
    offs = corner_offsets(c)
    sizes = c.sizes
    _, t1, t2 = flag_action(c)

    def corner_of(flag: int) -> Corner:
        side, e = divmod(flag, 2)
        p = _poly_of(offs, side)
        i = side - offs[p]
        return Corner(p, (i + e) % sizes[p])

    total = offs[-1]
    seen = [False] * total
    cycles = []
    for p in range(len(sizes)):
        for i in range(sizes[p]):
            cid = offs[p] + i
            if seen[cid]:
                continue
            start = Corner(p, i)
            f = 2 * cid  # flag (p, i, 0) sits at corner (p, i)
            order = []
            while True:
                cur = corner_of(f)
                if order and cur == start:
                    break
                order.append(cur)
                seen[offs[cur.polygon] + cur.position] = True
                f = t1[t2[f]]
            cycles.append(VertexCycle(tuple(order)))
    return cycles


@dataclass(frozen=True)
class CycleCrossings:
    """A vertex cycle plus the edges crossed between consecutive corners.

    crossing t sits between corners[t] and corners[t+1 (mod len)]; it is
    (label, direction) with direction +1 when the crossing leaves the first
    occurrence of the label (in scan order) and -1 when it leaves the
    second.
    """

    cycle: VertexCycle
    crossings: tuple[tuple[int, int], ...]


def vertex_cycles_with_crossings(c: PolygonComplex) -> list[CycleCrossings]:
    offs = corner_offsets(c)
    sizes = c.sizes
    _, t1, t2 = flag_action(c)
    occ = occurrences(c)
    first_occ = {lab: (p, i) for lab, ((p, i, _), _) in occ.items()}

    def corner_of(flag: int) -> Corner:
        side, e = divmod(flag, 2)
        p = _poly_of(offs, side)
        return Corner(p, (side - offs[p] + e) % sizes[p])

    def side_of(flag: int) -> tuple[int, int]:
        side = flag // 2
        p = _poly_of(offs, side)
        return p, side - offs[p]

    total = offs[-1]
    seen = [False] * total
    out = []
    for p in range(len(sizes)):
        for i in range(sizes[p]):
            if seen[offs[p] + i]:
                continue
            start = Corner(p, i)
            f = 2 * (offs[p] + i)
            order: list[Corner] = []
            crossings: list[tuple[int, int]] = []
            while True:
                cur = corner_of(f)
                if order and cur == start:
                    break
                order.append(cur)
                seen[offs[cur.polygon] + cur.position] = True
                f1 = t2[f]
                sp, si = side_of(f1)
                lab = abs(c.polygons[sp][si])
                direction = 1 if first_occ[lab] == (sp, si) else -1
                crossings.append((lab, direction))
                f = t1[f1]
            out.append(CycleCrossings(VertexCycle(tuple(order)), tuple(crossings)))
    return out


def _poly_of(offs: list[int], corner_id: int) -> int:
    lo, hi = 0, len(offs) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if offs[mid] <= corner_id:
            lo = mid
        else:
            hi = mid
    return lo


def is_orientable(c: PolygonComplex) -> bool:
    """Two-sheet propagation test: the complex is orientable iff the
    polygon x {+,-} graph induced by the pairings has two components."""
    k = c.num_polygons
    uf = UnionFind(2 * k)
    for (p, _, s1), (q, _, s2) in occurrences(c).values():
        if s1 == s2:
            uf.union(2 * p, 2 * q)
            uf.union(2 * p + 1, 2 * q + 1)
        else:
            uf.union(2 * p, 2 * q + 1)
            uf.union(2 * p + 1, 2 * q)
    return uf.find(0) != uf.find(1)


def surface_invariants(c: PolygonComplex) -> SurfaceInvariants:
    """Euler characteristic, orientability and genus of the glued surface."""
    sizes = vertex_class_sizes(c)
    v = len(sizes)
    e = c.num_edges
    f = c.num_polygons
    chi = v - e + f
    orientable = is_orientable(c)
    if orientable:
        if chi % 2:
            raise InvalidComplexError("orientable surface with odd Euler characteristic")
        genus = (2 - chi) // 2
    else:
        genus = 2 - chi
    return SurfaceInvariants(v, e, f, chi, orientable, genus)


def verify_extremal(c: PolygonComplex) -> ExtremalityReport:
    """Certify that c is an extremal complex and report (k, g, N).

    Checks: uniform polygon size N >= 7, every vertex cycle of length three,
    non-orientable.  Failures are collected, never raised.  When the
    certificate holds, kN = 6g + 6k - 12 follows from chi = k - kN/6.
    """
    failures: list[str] = []
    sizes = set(c.sizes)
    n = None
    if len(sizes) != 1:
        failures.append("NonUniformPolygon(sizes=%s)" % sorted(sizes))
    else:
        n = sizes.pop()
        if n < 7:
            failures.append("CellTooSmall(N=%d)" % n)

    offs = corner_offsets(c)
    uf = UnionFind(offs[-1])
    for a, b in _corner_relations(c, offs):
        uf.union(a, b)
    classes = uf.classes()
    v = len(classes)
    for cl in classes.values():
        if len(cl) != 3:
            p = _poly_of(offs, cl[0])
            failures.append(
                "NotTrivalent(length=%d, corner=(%d, %d))"
                % (len(cl), p, cl[0] - offs[p])
            )
    orientable = is_orientable(c)
    if orientable:
        failures.append("Orientable")

    e = c.num_edges
    f = c.num_polygons
    chi = v - e + f
    ok = not failures
    k = g = nn = None
    if ok:
        k, nn, g = f, n, 2 - chi
        assert k * nn == 6 * g + 6 * k - 12
    return ExtremalityReport(
        ok=ok, k=k, g=g, n=nn, chi=chi, orientable=orientable, failures=tuple(failures)
    )


def is_graftable(c: PolygonComplex) -> bool:
    """Connected, non-orientable, every vertex trivalent (sizes may differ)."""
    sizes = vertex_class_sizes(c, cap=3)
    if sizes is None or sizes[0] != 3:
        return False
    return not is_orientable(c)


# ---------------------------------------------------------------------------
# canonical form


def _relabel_word(word, rot, mapping, next_label):
    """Relabel one rotated polygon word, extending mapping for fresh labels."""
    out = []
    n = len(word)
    fresh = []
    for t in range(n):
        v = word[(rot + t) % n]
        a = abs(v)
        if a not in mapping:
            mapping[a] = (next_label, v < 0)
            fresh.append(a)
            next_label += 1
        lab, flip = mapping[a]
        neg = (v < 0) != flip
        out.append(-lab if neg else lab)
    return tuple(out), fresh, next_label


def _assemble_min(c: PolygonComplex) -> tuple[tuple[int, ...], ...]:
    """Greedy lexicographic reassembly over all (first polygon, rotation) roots."""
    polys = c.polygons
    k = len(polys)

    # state: (mapping, next_label, remaining indices, words so far)
    states = []
    best_first = None
    for p in range(k):
        n = len(polys[p])
        for r in range(n):
            mapping: dict[int, tuple[int, bool]] = {}
            word, _, nl = _relabel_word(polys[p], r, mapping, 1)
            if best_first is None or word < best_first:
                best_first = word
                states = []
            if word == best_first:
                rem = frozenset(range(k)) - {p}
                states.append((mapping, nl, rem, (word,)))

    for _ in range(k - 1):
        best_word = None
        advanced = []
        for mapping, nl, rem, words in states:
            cand_best = None
            for q in sorted(rem):
                wq = polys[q]
                for r in range(len(wq)):
                    trial = dict(mapping)
                    word, _, nl2 = _relabel_word(wq, r, trial, nl)
                    if cand_best is None or word < cand_best[0]:
                        cand_best = (word, q, trial, nl2)
            word, q, trial, nl2 = cand_best
            if best_word is None or word < best_word:
                best_word = word
                advanced = []
            if word == best_word:
                advanced.append((trial, nl2, rem - {q}, words + (word,)))
        states = advanced

    return min(st[3] for st in states)


def canonicalize(c: PolygonComplex) -> PolygonComplex:
    """Deterministic canonical form: labels 1..E in first-occurrence order
    with positive first occurrences, polygons rotated and ordered to the
    lexicographically least reassembly.

    The map is iterated to a fixed point (or the least member of a limit
    cycle), which makes canonicalize idempotent by construction.  It is
    stable under rotation and reordering of the input, not a full
    isomorphism invariant.
    """
    seen: dict[tuple, int] = {}
    traj: list[tuple[tuple[int, ...], ...]] = []
    cur = c.polygons
    while cur not in seen:
        seen[cur] = len(traj)
        traj.append(cur)
        cur = _assemble_min(PolygonComplex(cur))
    cycle = traj[seen[cur]:]
    return PolygonComplex(min(cycle), name=c.name)


# ---------------------------------------------------------------------------
# file format


def parse(text: str) -> PolygonComplex:
    """Parse the complex file format and return the canonical complex.

    Lines: ``#`` comments, an optional ``name <string>`` line, and one
    ``polygon <signed ints>`` line per polygon.
    """
    name = None
    polys: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "name":
            if name is not None:
                raise ComplexFormatError("duplicate name line", line=lineno)
            name = line[len("name"):].strip() or None
            continue
        if fields[0] != "polygon":
            raise ComplexFormatError("expected 'polygon' or 'name', got %r" % fields[0], line=lineno)
        word = []
        for tok in fields[1:]:
            try:
                v = int(tok)
            except ValueError:
                raise ComplexFormatError("bad label %r" % tok, line=lineno) from None
            if v == 0:
                raise ComplexFormatError("zero label", line=lineno)
            word.append(v)
        if not word:
            raise ComplexFormatError("empty polygon", line=lineno)
        polys.append(tuple(word))
    if not polys:
        raise ComplexFormatError("no polygon lines found")
    return canonicalize(PolygonComplex(tuple(polys), name=name))


def serialize(c: PolygonComplex) -> str:
    """Write the canonical form of c in the complex file format."""
    canon = canonicalize(c)
    lines = [FORMAT_HEADER]
    if canon.name:
        lines.append("name %s" % canon.name)
    for word in canon.polygons:
        lines.append("polygon " + " ".join(str(v) for v in word))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# exhaustive single-polygon gluings (the small-scale search oracle)


def all_single_polygon_gluings(n: int):
    """Yield every complex made of one n-gon: all side matchings and signs.

    There are (n-1)!! * 2^(n/2) of them; n must be even.  Deterministic
    order: matchings by smallest-unmatched-first recursion, then sign masks.
    """
    if n < 2 or n % 2:
        raise ValueError("need an even polygon size, got %r" % (n,))

    def matchings(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        a = free[0]
        rest = free[1:]
        for t, b in enumerate(rest):
            sub = rest[:t] + rest[t + 1:]
            for m in matchings(sub):
                yield ((a, b),) + m

    positions = tuple(range(n))
    for match in matchings(positions):
        for mask in range(1 << (n // 2)):
            word = [0] * n
            for lab, (a, b) in enumerate(match, start=1):
                word[a] = lab
                word[b] = lab if not (mask >> (lab - 1)) & 1 else -lab
            yield PolygonComplex((tuple(word),))
