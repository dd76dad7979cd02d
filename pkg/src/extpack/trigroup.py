"""Extended triangle groups: presentations, coset enumeration, low-index
subgroup search, and the bridge between subgroups and polygon complexes.

The extended triangle group of type (p, q, r) is generated by the three
reflections r0, r1, r2 in the sides of a hyperbolic triangle with angles
pi/p, pi/q, pi/r; relators are the squares of the generators and the
rotation orders (r0 r1)^p, (r1 r2)^q, (r2 r0)^r.  A subgroup of finite
index is stored as its permutation action on right cosets.

For a torsion-free subgroup, cosets are flags of the quotient surface and
every generator acts as a fixed-point-free involution whose pairwise
products have full cycle length.  When the type is (2, 3, N) the flag
action is exactly the flag structure of a polygon complex; the two
conversion directions live here.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import complexes
from .complexes import PolygonComplex
from .errors import EnumerationCapError

UNDEF = -1

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# presentations


def _free_reduce(word: Word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(word: Word) -> Word:
    w = list(_free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus relator words.

    Words are tuples of signed 1-based generator numbers; relators are
    stored freely and cyclically reduced.
    """

    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        rels = []
        for rel in self.relators:
            for x in rel:
                if x == 0 or abs(x) > self.ngens:
                    raise ValueError("bad letter %r in relator" % (x,))
            red = _cyclic_reduce(tuple(rel))
            if red:
                rels.append(red)
        object.__setattr__(self, "relators", tuple(rels))


def triangle_presentation(p: int, q: int, r: int, extended: bool = True) -> Presentation:
    """Presentation of the (p, q, r) triangle group.

    Extended: reflections r0, r1, r2 with pairwise rotation orders p, q, r.
    Otherwise the rotation subgroup <x, y | x^p = y^q = (xy)^r = 1>.
    """
    if min(p, q, r) < 2:
        raise ValueError("triangle parameters must be >= 2")
    if extended:
        rels = [(1, 1), (2, 2), (3, 3), (1, 2) * p, (2, 3) * q, (3, 1) * r]
        return Presentation(3, tuple(rels))
    rels = [(1,) * p, (2,) * q, (1, 2) * r]
    return Presentation(2, tuple(rels))


def triangle_type(pres: Presentation) -> tuple[int, int, int] | None:
    """Recover (p, q, r) if pres is an extended triangle presentation."""
    if pres.ngens != 3:
        return None
    invol = set()
    orders: dict[frozenset, int] = {}
    for rel in pres.relators:
        w = tuple(abs(x) for x in rel)
        if len(w) == 2 and w[0] == w[1]:
            invol.add(w[0])
            continue
        if len(w) % 2 == 0 and len(set(w[0::2])) == 1 and len(set(w[1::2])) == 1 and w[0] != w[1]:
            orders[frozenset((w[0], w[1]))] = len(w) // 2
            continue
        return None
    if invol != {1, 2, 3} or set(map(frozenset, [(1, 2), (2, 3), (3, 1)])) != set(orders):
        return None
    return (
        orders[frozenset((1, 2))],
        orders[frozenset((2, 3))],
        orders[frozenset((3, 1))],
    )


# ---------------------------------------------------------------------------
# coset tables


@dataclass(frozen=True)
class CosetTable:
    """A complete transitive right-coset action of a presentation's group."""

    ngens: int
    perms: tuple[tuple[int, ...], ...]
    subgroup_words: tuple[Word, ...] = ()

    @property
    def index(self) -> int:
        return len(self.perms[0])

    def inverse_perms(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for perm in self.perms:
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            out.append(tuple(inv))
        return tuple(out)

    def apply_word(self, c: int, word: Word) -> int:
        inv = None
        for x in word:
            if x > 0:
                c = self.perms[x - 1][c]
            else:
                if inv is None:
                    inv = self.inverse_perms()
                c = inv[-x - 1][c]
        return c

    def to_json_dict(self) -> dict:
        return {
            "format_version": 1,
            "index": self.index,
            "generators": [list(p) for p in self.perms],
            "subgroup_words": [list(w) for w in self.subgroup_words],
        }


def validate_table(pres: Presentation, table: CosetTable) -> None:
    """Assert relators act trivially, the action is transitive, and the
    subgroup words stabilize coset 0."""
    n = table.index
    for rel in pres.relators:
        for c in range(n):
            if table.apply_word(c, rel) != c:
                raise ValueError("relator %s broken at coset %d" % (rel, c))
    seen = {0}
    queue = deque([0])
    inv = table.inverse_perms()
    while queue:
        c = queue.popleft()
        for perm in list(table.perms) + list(inv):
            d = perm[c]
            if d not in seen:
                seen.add(d)
                queue.append(d)
    if len(seen) != n:
        raise ValueError("action is not transitive")
    for w in table.subgroup_words:
        if table.apply_word(0, w) != 0:
            raise ValueError("subgroup word %s does not stabilize coset 0" % (w,))


def standardize(perms: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    """Renumber points in BFS order from 0 (columns scanned in order)."""
    n = len(perms[0])
    order = [UNDEF] * n
    order[0] = 0
    seq = [0]
    head = 0
    while head < len(seq):
        c = seq[head]
        head += 1
        for perm in perms:
            d = perm[c]
            if order[d] == UNDEF:
                order[d] = len(seq)
                seq.append(d)
    out = []
    for perm in perms:
        new = [0] * n
        for old, img in enumerate(perm):
            new[order[old]] = order[img]
        out.append(tuple(new))
    return tuple(out)


def schreier_generators(table: CosetTable) -> list[Word]:
    """Subgroup generators from a spanning tree of the coset graph."""
    n = table.index
    inv = table.inverse_perms()
    path: list[Word | None] = [None] * n
    path[0] = ()
    queue = deque([0])
    tree: set[tuple[int, int]] = set()
    while queue:
        c = queue.popleft()
        for g in range(table.ngens):
            for sign, perm in ((1, table.perms[g]), (-1, inv[g])):
                d = perm[c]
                if path[d] is None:
                    path[d] = path[c] + (sign * (g + 1),)
                    tree.add((c, sign * (g + 1)))
                    queue.append(d)
    gens: list[Word] = []
    seen: set[Word] = set()
    for c in range(n):
        for g in range(table.ngens):
            if (c, g + 1) in tree:
                continue
            d = table.perms[g][c]
            back = tuple(-x for x in reversed(path[d]))
            w = _free_reduce(path[c] + (g + 1,) + back)
            if w and w not in seen:
                seen.add(w)
                gens.append(w)
    return gens


def substitute(word: Word, images: dict[int, Word]) -> Word:
    """Rewrite a word through generator images (for subgroup embeddings)."""
    out: list[int] = []
    for x in word:
        img = images[abs(x)]
        if x > 0:
            out.extend(img)
        else:
            out.extend(-y for y in reversed(img))
    return _free_reduce(tuple(out))


# ---------------------------------------------------------------------------
# Todd-Coxeter enumeration


def coset_enumerate(
    pres: Presentation,
    subgroup_words: tuple[Word, ...] = (),
    cap: int = 10**6,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by subgroup_words.

    HLT-style scanning with on-the-fly filling; merged cosets are tracked
    through a union-find.  `cap` bounds the total number of coset rows ever
    allocated (live plus collapsed); exceeding it raises
    EnumerationCapError, a resource signal rather than a mathematical one.
    """
    ncols = 2 * pres.ngens

    def col_of(letter: int) -> int:
        return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)

    rel_paths = [tuple(col_of(x) for x in rel) for rel in pres.relators]
    sub_paths = [tuple(col_of(x) for x in w) for w in subgroup_words]

    rows: list[list[int]] = [[UNDEF] * ncols]
    labels: list[int] = [0]

    def find(c: int) -> int:
        root = c
        while labels[root] != root:
            root = labels[root]
        while labels[c] != root:
            labels[c], c = root, labels[c]
        return root

    def follow(c: int, col: int) -> int:
        c = find(c)
        d = rows[c][col]
        if d == UNDEF:
            if len(rows) >= cap:
                raise EnumerationCapError(
                    "coset enumeration exceeded the cap of %d rows" % cap
                )
            d = len(rows)
            rows.append([UNDEF] * ncols)
            labels.append(d)
            rows[c][col] = d
            rows[d][col ^ 1] = c
        return find(d)

    def unify(a: int, b: int) -> None:
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            labels[y] = x
            rx, ry = rows[x], rows[y]
            for col in range(ncols):
                d = ry[col]
                if d == UNDEF:
                    continue
                if rx[col] == UNDEF:
                    rx[col] = d
                else:
                    stack.append((rx[col], d))

    def trace(c: int, cols: tuple[int, ...]) -> int:
        for col in cols:
            c = follow(c, col)
        return c

    for path in sub_paths:
        unify(trace(0, path), 0)

    visit = 0
    while visit < len(rows):
        if find(visit) == visit:
            for path in rel_paths:
                unify(trace(visit, path), visit)
        visit += 1

    live = [c for c in range(len(rows)) if find(c) == c]
    renum = {c: i for i, c in enumerate(live)}
    perms = []
    for g in range(pres.ngens):
        col = 2 * g
        perm = [renum[find(rows[c][col])] for c in live]
        perms.append(perm)
    table = CosetTable(
        ngens=pres.ngens,
        perms=standardize(perms),
        subgroup_words=tuple(tuple(w) for w in subgroup_words),
    )
    validate_table(pres, table)
    return table


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class SubgroupRecord:
    """A finite-index subgroup of an extended triangle group, classified."""

    table: CosetTable
    params: tuple[int, int, int]
    torsion_free: bool
    proper: bool
    quotient_orientable: bool
    genus: int | None

    @property
    def index(self) -> int:
        return self.table.index

    def to_json_dict(self) -> dict:
        d = self.table.to_json_dict()
        d.update(
            {
                "triangle": list(self.params),
                "extended": True,
                "torsion_free": self.torsion_free,
                "proper": self.proper,
                "quotient_orientable": self.quotient_orientable,
                "genus": self.genus,
            }
        )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def record_from_json(text: str) -> SubgroupRecord:
    d = json.loads(text)
    table = CosetTable(
        ngens=3,
        perms=tuple(tuple(p) for p in d["generators"]),
        subgroup_words=tuple(tuple(w) for w in d.get("subgroup_words", ())),
    )
    p, q, r = d["triangle"]
    return classify(table, p, q, r)


def _cycle_lengths(perm: tuple[int, ...], nxt: tuple[int, ...]) -> list[int]:
    """Cycle lengths of the composite point -> nxt[perm[point]]."""
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        c = s
        while not seen[c]:
            seen[c] = True
            c = nxt[perm[c]]
            length += 1
        out.append(length)
    return out


def _two_colorable(perms) -> bool:
    """True iff the coset graph admits a parity coloring flipped by every
    generator; equivalently the subgroup avoids orientation-reversing words."""
    n = len(perms[0])
    color = [UNDEF] * n
    color[0] = 0
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for perm in perms:
            d = perm[c]
            if color[d] == UNDEF:
                color[d] = 1 - color[c]
                queue.append(d)
            elif color[d] == color[c]:
                return False
    return True


def classify(table: CosetTable, p: int, q: int, r: int) -> SubgroupRecord:
    """Classify a subgroup of the extended (p, q, r) triangle group.

    Torsion-freeness is fixed-point-freeness of the reflections together
    with full cycle length of the three rotations.  Properness is failure
    of the parity coloring.  Genus comes from the area: with
    mu = 1 - 1/p - 1/q - 1/r, a torsion-free subgroup of index m
    uniformizes a surface of Euler characteristic -m*mu/2.
    """
    if table.ngens != 3:
        raise ValueError("expected a 3-generator (reflection) table")
    s0, s1, s2 = table.perms
    m = table.index
    orders = (p, q, r)
    pairs = ((s0, s1), (s1, s2), (s2, s0))
    torsion_free = all(perm[c] != c for perm in table.perms for c in range(m))
    for (a, b), full in zip(pairs, orders):
        lengths = _cycle_lengths(a, b)
        for length in lengths:
            if full % length:
                raise ValueError("rotation relator broken: cycle %d vs order %d" % (length, full))
        if torsion_free and any(length != full for length in lengths):
            torsion_free = False
    proper = not _two_colorable(table.perms)
    mu = 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)
    genus: int | None = None
    if torsion_free:
        if proper:
            gg = 2 + Fraction(m, 2) * mu
        else:
            gg = 1 + Fraction(m, 4) * mu
        if gg.denominator != 1:
            raise ValueError("classification inconsistency: non-integral genus %s" % (gg,))
        genus = int(gg)
    return SubgroupRecord(
        table=table,
        params=(p, q, r),
        torsion_free=torsion_free,
        proper=proper,
        quotient_orientable=not proper,
        genus=genus,
    )


# ---------------------------------------------------------------------------
# low-index subgroup search


class _TriangleSearch:
    """Backtracking search over transitive actions of an extended triangle
    group in which every generator is an involution.

    Points are filled in a fixed scan order; after each tentative entry the
    alternating chains of both dihedral relators through the new edge are
    walked, rejecting overlong or short cycles and forcing the unique
    closure of nearly-complete ones.  With the torsion-free filter, all
    (r2 r0) orbits are prefilled as polygon blocks of size 2r and only the
    edge-pairing involution r1 is searched.
    """

    def __init__(self, p: int, q: int, r: int, index: int, torsion_free: bool):
        self.orders = (p, q, r)
        self.m = index
        self.tf = torsion_free
        self.t = [[UNDEF] * index for _ in range(3)]
        self.trail: list[tuple[int, int, int]] = []
        self.pair_of = {
            (0, 1): p, (1, 0): p,
            (1, 2): q, (2, 1): q,
            (2, 0): r, (0, 2): r,
        }
        self.prefilled = False
        if torsion_free:
            blk = 2 * r
            if index % blk:
                self.impossible = True
                return
            self.impossible = False
            self.block = blk
            for base in range(0, index, blk):
                t0, t2 = self.t[0], self.t[2]
                for s in range(0, blk, 2):
                    t0[base + s] = base + s + 1
                    t0[base + s + 1] = base + s
                    t2[base + s + 1] = base + (s + 2) % blk
                    t2[base + (s + 2) % blk] = base + s + 1
            self.prefilled = True
            self.blocks = index // blk
            self.block_hits = [0] * self.blocks
            self.block_hits[0] = 1  # block 0 is the root
        else:
            self.impossible = False
            self.count = 1

    # -- assignment with propagation ------------------------------------

    def _analyze(self, i: int, j: int, c: int, d: int, queue) -> bool:
        L = self.pair_of[(i, j)]
        t = self.t
        if c == d:
            # loop: one reflection end of the chain
            end, col, hops, looped = self._walk(i, j, c, j, None)
            if looped:
                n_points = hops + 1
                return L % n_points == 0
            return hops <= L - 1
        # walk from d; stopping at c with expected column i means the chain
        # closes through the new edge
        end_d, col_d, hops_d, loop_d = self._walk(i, j, d, j, (c, i))
        if end_d is None:  # closed cycle
            edges = hops_d + 1
            if self.tf:
                return edges == 2 * L
            return edges % 2 == 0 and L % (edges // 2) == 0
        end_c, col_c, hops_c, loop_c = self._walk(i, j, c, j, None)
        edges = hops_c + hops_d + 1
        if loop_c and loop_d:
            return L % (edges + 1) == 0
        if loop_c or loop_d:
            return edges <= L - 1
        if edges >= 2 * L:
            return False
        if edges == 2 * L - 1:
            if col_c != col_d:
                return False
            queue.append((col_c, end_c, end_d))
        return True

    def _walk(self, i, j, start, first, stop):
        """Follow the alternating i/j chain from start (first hop `first`).

        Returns (end, missing_col, hops, looped); end is None when the walk
        reached the stop edge, i.e. the chain closes into a cycle.
        """
        t = self.t
        cur = start
        col = first
        hops = 0
        while True:
            if stop is not None and cur == stop[0] and col == stop[1]:
                return None, None, hops, False
            nxt = t[col][cur]
            if nxt == UNDEF:
                return cur, col, hops, False
            if nxt == cur:
                return cur, col, hops, True
            cur = nxt
            hops += 1
            col = i if col == j else j

    def _assign(self, col: int, a: int, b: int) -> bool:
        t = self.t
        queue = [(col, a, b)]
        while queue:
            col, a, b = queue.pop()
            cur = t[col][a]
            if cur != UNDEF:
                if cur != b:
                    return False
                continue
            if t[col][b] != UNDEF:
                return False
            if self.tf and a == b:
                return False
            t[col][a] = b
            t[col][b] = a
            self.trail.append((col, a, b))
            if self.prefilled and col == 1:
                self.block_hits[a // self.block] += 1
                if a != b:
                    self.block_hits[b // self.block] += 1
            for other in range(3):
                if other == col:
                    continue
                if not self._analyze(col, other, a, b, queue):
                    return False
        return True

    def _undo(self, mark: int) -> None:
        t = self.t
        while len(self.trail) > mark:
            col, a, b = self.trail.pop()
            t[col][a] = UNDEF
            t[col][b] = UNDEF
            if self.prefilled and col == 1:
                self.block_hits[a // self.block] -= 1
                if a != b:
                    self.block_hits[b // self.block] -= 1

    # -- search drivers ---------------------------------------------------

    def solutions(self):
        """Yield complete tables as generator permutations, in DFS order."""
        if self.impossible:
            return
        if self.prefilled:
            yield from self._search_prefilled(0)
        else:
            yield from self._search_generic(0, 0)

    def _emit(self):
        return tuple(tuple(col) for col in self.t)

    def _search_prefilled(self, c: int):
        m = self.m
        t1 = self.t[1]
        while c < m and t1[c] != UNDEF:
            c += 1
        if c == m:
            yield self._emit()
            return
        hits = self.block_hits
        fresh = None
        for blk in range(self.blocks):
            if hits[blk] == 0:
                fresh = blk * self.block
                break
        for d in range(c, m):
            if t1[d] != UNDEF:
                continue
            blk_d = d // self.block
            if hits[blk_d] == 0 and d != fresh:
                continue
            mark = len(self.trail)
            if self._assign(1, c, d):
                yield from self._search_prefilled(c + 1)
            self._undo(mark)

    def _search_generic(self, c: int, col: int):
        m = self.m
        while True:
            if c == self.count:
                if self.count == m:
                    yield self._emit()
                return
            if self.t[col][c] == UNDEF:
                break
            col += 1
            if col == 3:
                col = 0
                c += 1
        for d in range(self.count):
            if self.t[col][d] != UNDEF:
                continue
            if self.tf and d == c:
                continue
            mark = len(self.trail)
            if self._assign(col, c, d):
                yield from self._search_generic(c, col)
            self._undo(mark)
        if self.count < m:
            d = self.count
            self.count += 1
            mark = len(self.trail)
            if self._assign(col, c, d):
                yield from self._search_generic(c, col)
            self._undo(mark)
            self.count -= 1


def _canonical_table_key(perms) -> tuple:
    """Minimum over all base points of the BFS-renumbered table."""
    n = len(perms[0])
    best = None
    for start in range(n):
        order = [UNDEF] * n
        order[start] = 0
        seq = [start]
        head = 0
        while head < len(seq):
            x = seq[head]
            head += 1
            for perm in perms:
                y = perm[x]
                if order[y] == UNDEF:
                    order[y] = len(seq)
                    seq.append(y)
        key = tuple(
            tuple(order[perm[seq[i]]] for i in range(n)) for perm in perms
        )
        if best is None or key < best:
            best = key
    return best


def low_index_subgroups(
    pres: Presentation,
    index: int,
    *,
    torsion_free: bool = False,
    proper: bool | None = None,
    nonorientable: bool | None = None,
    max_count: int | None = None,
) -> list[SubgroupRecord]:
    """Subgroups of exactly the given index, up to conjugacy, classified.

    Only extended triangle presentations are supported; the pair orders are
    read off the relators.  Filters restrict the output (and, for
    torsion_free, prune the search itself).  max_count stops the search
    after that many records, preserving the deterministic DFS order; the
    default enumerates the complete list with conjugates removed via a
    canonical table form.
    """
    if index < 1:
        raise ValueError("need index >= 1")
    ptype = triangle_type(pres)
    if ptype is None:
        raise ValueError(
            "low-index search supports extended triangle presentations only"
        )
    p, q, r = ptype
    want_proper = proper
    if nonorientable is not None:
        # the quotient is non-orientable exactly when the subgroup is proper
        want_proper = nonorientable if want_proper is None else want_proper
        if proper is not None and nonorientable != proper:
            return []
    search = _TriangleSearch(p, q, r, index, torsion_free)
    records: list[SubgroupRecord] = []
    seen_keys: set[tuple] = set()
    for perms in search.solutions():
        rec = classify(
            CosetTable(ngens=3, perms=standardize([list(x) for x in perms])),
            p, q, r,
        )
        if torsion_free and not rec.torsion_free:
            continue
        if want_proper is not None and rec.proper != want_proper:
            continue
        key = _canonical_table_key(rec.table.perms)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        records.append(rec)
        if max_count is not None and len(records) >= max_count:
            break
    return records


# ---------------------------------------------------------------------------
# subgroups <-> polygon complexes


def complex_to_subgroup(c: PolygonComplex) -> SubgroupRecord:
    """Flag action of a certified extremal complex inside its (2, 3, N) group."""
    rep = complexes.verify_extremal(c)
    if not rep.ok:
        raise ValueError("complex is not extremal: %s" % (rep.failures,))
    t0, t1, t2 = complexes.flag_action(c)
    table = CosetTable(ngens=3, perms=standardize([t0, t1, t2]))
    rec = classify(table, 2, 3, rep.n)
    assert rec.torsion_free and rec.proper and rec.genus == rep.g
    assert rec.index == 2 * rep.k * rep.n
    return rec


def subgroup_to_complex(rec: SubgroupRecord) -> PolygonComplex:
    """Quotient surface of a torsion-free proper (2, 3, N) subgroup.

    Cosets are flags: polygons are the <r0, r2> orbits, edges the <r0, r1>
    orbits, and the pairing signs come from which end of the partner side
    the edge reflection reaches.
    """
    p, q, N = rec.params
    if (p, q) != (2, 3):
        raise ValueError("complex reconstruction needs a (2, 3, N) record")
    if not (rec.torsion_free and rec.proper):
        raise ValueError("complex reconstruction needs a torsion-free proper record")
    s0, s1, s2 = rec.table.perms
    m = rec.index
    if m % (2 * N):
        raise ValueError("index %d is not a multiple of 2N = %d" % (m, 2 * N))

    side_of: dict[int, tuple[int, int, int]] = {}  # flag -> (face, side, end)
    faces: list[list[tuple[int, int]]] = []
    visited = [False] * m
    for start in range(m):
        if visited[start]:
            continue
        sides: list[tuple[int, int]] = []
        a = start
        while True:
            b = s0[a]
            side_of[a] = (len(faces), len(sides), 0)
            side_of[b] = (len(faces), len(sides), 1)
            visited[a] = visited[b] = True
            sides.append((a, b))
            a = s2[b]
            if a == start:
                break
        assert len(sides) == N
        faces.append(sides)

    words: list[list[int]] = [[0] * N for _ in faces]
    label = 0
    for f, sides in enumerate(faces):
        for i, (a, b) in enumerate(sides):
            if words[f][i]:
                continue
            label += 1
            words[f][i] = label
            f2, i2, end = side_of[s1[a]]
            assert (f2, i2) != (f, i)
            words[f2][i2] = label if end == 1 else -label
    out = complexes.canonicalize(
        PolygonComplex(tuple(tuple(w) for w in words))
    )
    check = complexes.verify_extremal(out)
    assert check.ok and check.g == rec.genus and check.n == N
    return out


def canonical_fuchsian(rec: SubgroupRecord) -> SubgroupRecord:
    """The orientation-preserving half K+ = K intersect PSL(2, R).

    Cosets double with a parity sheet flipped by every reflection; the
    quotient becomes orientable and, for a genus-g non-orientable surface
    record, the genus drops to g - 1.
    """
    if not rec.proper:
        raise ValueError("record is not proper: it has no smaller Fuchsian half")
    m = rec.index
    doubled = []
    for perm in rec.table.perms:
        new = [0] * (2 * m)
        for c in range(m):
            img = perm[c]
            new[2 * c] = 2 * img + 1
            new[2 * c + 1] = 2 * img
        doubled.append(new)
    table = CosetTable(ngens=3, perms=standardize(doubled))
    p, q, r = rec.params
    return classify(table, p, q, r)
