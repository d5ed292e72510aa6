"""Braid words from planar diagrams by Vogel's algorithm.

Conventions are those of :mod:`linksgould.knots`: ``X[a,b,c,d]`` lists edges
counterclockwise from the incoming under-edge.  Faces are traced with the
face on the left of the walk: arriving at a crossing through slot ``k`` the
walk leaves through slot ``k - 1``.

Seifert regions are the components of the complement of the Seifert
circles; a region is assembled from faces glued at the corners between two
incoming or two outgoing slots.  Regions and circles form a tree: each
circle is an edge directed from the region on its left to the region on its
right.  The diagram is a closed braid exactly when this tree is a directed
path.  The incoherence is the number of unordered pairs of circles that do
not lie on a common directed path of the tree.

A Vogel move is a Reidemeister II move pushing one edge over another across
a face where they belong to different circles on the same side of the face.
It replaces those two circles by a circle and a small circle nested inside
it, merging the two regions beyond them.  This never creates an incoherent
pair and removes the pair of the two old circles, so the incoherence drops
by at least one; the drop is asserted per move.
"""
from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

from .braids import BraidWord
from .knots import InputError, PDCode, parse_pd_code, pd_orientation

__all__ = [
    "SeifertDecomposition",
    "VogelError",
    "Diagram",
    "seifert_circles",
    "pd_to_braid",
    "vogel_moves",
]


class VogelError(AssertionError):
    """An invariant of the algorithm failed."""


@dataclass(frozen=True)
class SeifertDecomposition:
    circles: tuple[tuple[int, ...], ...]   # edge labels of each circle, in travel order
    incoherence_count: int


class Diagram:
    """Oriented planar diagram with derived faces, circles and regions."""

    def __init__(self, pd: PDCode):
        self.pd = tuple(tuple(c) for c in pd)
        n = len(self.pd)
        over = pd_orientation(self.pd) if n else []
        # entering[c][k]: edge at slot k enters crossing c
        self.entering = [[True, o[0] == 1, False, o[0] == 3] for o in over]
        self.sign = [1 if o == (3, 1) else -1 for o in over]
        self.slots: dict[int, list[tuple[int, int]]] = {}
        for ci, c in enumerate(self.pd):
            for k, x in enumerate(c):
                self.slots.setdefault(x, []).append((ci, k))
        self._faces()
        self._circles()
        self._regions()

    # basic navigation
    def other_end(self, ci: int, k: int) -> tuple[int, int]:
        a, b = self.slots[self.pd[ci][k]]
        return b if a == (ci, k) else a

    def tail(self, x: int) -> tuple[int, int]:
        """Slot where edge ``x`` leaves a crossing."""
        for ci, k in self.slots[x]:
            if not self.entering[ci][k]:
                return ci, k
        raise VogelError(f"edge {x} has no tail")

    def head(self, x: int) -> tuple[int, int]:
        for ci, k in self.slots[x]:
            if self.entering[ci][k]:
                return ci, k
        raise VogelError(f"edge {x} has no head")

    def _faces(self):
        n = len(self.pd)
        self.faces: list[list[tuple[int, int]]] = []   # darts (crossing, slot) leaving along an edge
        self.dart_face: dict[tuple[int, int], int] = {}
        for ci in range(n):
            for k in range(4):
                if (ci, k) in self.dart_face:
                    continue
                face = []
                dart = (ci, k)
                while dart not in self.dart_face:
                    self.dart_face[dart] = len(self.faces)
                    face.append(dart)
                    c2, k2 = self.other_end(*dart)
                    dart = (c2, (k2 - 1) % 4)
                if dart != (ci, k):
                    raise VogelError("face walk did not close")
                self.faces.append(face)
        if n and len(self.faces) != n + 2:
            raise InputError(f"PD code is not planar: {len(self.faces)} faces for {n} crossings")

    def forward(self, dart: tuple[int, int]) -> bool:
        """The face of ``dart`` lies on the left of its edge."""
        ci, k = dart
        return not self.entering[ci][k]

    def _circles(self):
        # Seifert smoothing: incoming under (slot 0) continues to the outgoing
        # over slot, incoming over continues to slot 2
        nxt: dict[int, int] = {}
        for ci, c in enumerate(self.pd):
            ent = self.entering[ci]
            over_in = 1 if ent[1] else 3
            nxt[c[0]] = c[4 - over_in]
            nxt[c[over_in]] = c[2]
        self.circle_of: dict[int, int] = {}
        circles = []
        for x in sorted(self.slots):
            if x in self.circle_of:
                continue
            cyc = []
            while x not in self.circle_of:
                self.circle_of[x] = len(circles)
                cyc.append(x)
                x = nxt[x]
            circles.append(tuple(cyc))
        self.circles = circles if self.pd else [()]

    def _regions(self):
        nf = len(self.faces)
        parent = list(range(nf))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        # corner of the face walk at (ci, k) is between slots k and k+1 ... the
        # walk arrives through k and leaves through k-1, so it owns corner (k-1, k)
        corner_face = {}
        for f, face in enumerate(self.faces):
            for ci, k in face:
                corner_face[(ci, k)] = f          # corner between slots k and k+1
        for ci in range(len(self.pd)):
            ent = self.entering[ci]
            for k in range(4):
                if ent[k] == ent[(k + 1) % 4]:
                    a = find(corner_face[(ci, k)])
                    b = find(corner_face[(ci, (k + 2) % 4)])
                    parent[a] = b
        self.region_of = [find(f) for f in range(nf)]
        sides: dict[int, tuple[set, set]] = {}
        for f, face in enumerate(self.faces):
            left, right = sides.setdefault(self.region_of[f], (set(), set()))
            for dart in face:
                circ = self.circle_of[self.pd[dart[0]][dart[1]]]
                (left if self.forward(dart) else right).add(circ)
        self.region_sides = sides
        self.incoherence = self._incoherent_pairs()

    def _incoherent_pairs(self) -> int:
        s = len(self.circles)
        if s < 2:
            return 0
        left, right = [None] * s, [None] * s
        for reg, (l, r) in self.region_sides.items():
            for c in l:
                left[c] = reg
            for c in r:
                right[c] = reg
        out: dict[int, list[int]] = {}
        for c in range(s):
            out.setdefault(left[c], []).append(c)
        # circles reachable along directed paths starting with circle c
        below = []
        for c in range(s):
            seen, stack = set(), [c]
            while stack:
                x = stack.pop()
                for y in out.get(right[x], ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            below.append(seen)
        coherent = sum(len(b) for b in below)
        return s * (s - 1) // 2 - coherent

    # Vogel move
    def defect_site(self):
        """``(face, e1, e2)`` for the next move, or ``None`` when braided.

        Chooses the face with fewest edges (ties: least edge label on it) that
        has two edges of different circles on the same side; within it the
        least-labelled such pair.
        """
        best = None
        for f, face in enumerate(self.faces):
            edges = [(self.pd[ci][k], self.forward((ci, k))) for ci, k in face]
            pairs = [(x, y, side)
                     for side in (True, False)
                     for x in sorted(e for e, fw in edges if fw == side)
                     for y in sorted(e for e, fw in edges if fw == side)
                     if x < y and self.circle_of[x] != self.circle_of[y]]
            pair = min(pairs) if pairs else None
            if pair is None:
                continue
            key = (len(face), min(x for x, _ in edges), pair[:2])
            if best is None or key < best[0]:
                best = (key, f, pair)
        if best is None:
            return None
        _, f, (x, y, side) = best
        return f, x, y, side

    def vogel_move(self, e1: int, e2: int, forward: bool) -> PDCode:
        """Push ``e1`` over ``e2`` across their common face; returns the new PD."""
        top = max(self.slots)
        e1a, e1m, e1b, e2a, e2m, e2b = range(top + 1, top + 7)
        new = [list(c) for c in self.pd]
        t1, h1 = self.tail(e1), self.head(e1)
        t2, h2 = self.tail(e2), self.head(e2)
        new[t1[0]][t1[1]] = e1a
        new[h1[0]][h1[1]] = e1b
        new[t2[0]][t2[1]] = e2a
        new[h2[0]][h2[1]] = e2b
        if forward:
            # e1 dips over e2: first crossing positive, second negative
            new.append([e2m, e1m, e2b, e1a])
            new.append([e2a, e1m, e2m, e1b])
        else:
            new.append([e2m, e1a, e2b, e1m])
            new.append([e2a, e1b, e2m, e1m])
        return tuple(tuple(c) for c in new)

    # braid readout
    def read_braid(self) -> BraidWord:
        if self.incoherence:
            raise VogelError("diagram is not braided")
        s = len(self.circles)
        if not self.pd:
            return BraidWord(1, ())
        # chain of regions and circles
        circle_regions: dict[int, list[int]] = {}
        for reg, (l, r) in self.region_sides.items():
            for c in l | r:
                circle_regions.setdefault(c, []).append(reg)
        region_circles = {reg: sorted(l | r) for reg, (l, r) in self.region_sides.items()}
        ends = sorted(reg for reg, cs in region_circles.items() if len(cs) == 1)
        if s > 1 and len(ends) != 2:
            raise VogelError("Seifert regions do not form a chain")
        order, reg, prev = [], ends[0], None
        while True:
            nxt_c = [c for c in region_circles[reg] if c != prev]
            if not nxt_c or len(order) == s:
                break
            c = nxt_c[0]
            order.append(c)
            regs = [g for g in circle_regions[c] if g != reg]
            if not regs:
                break
            reg, prev = regs[0], c
        if sorted(order) != list(range(s)):
            raise VogelError("circle chain is incomplete")
        pos = {c: i for i, c in enumerate(order)}

        # seam: faces f_i in region between circle i and i+1, edge of circle i+1 on f_i
        seam = {}
        start_reg = ends[0]
        first_circle = order[0]
        cand = [self.pd[ci][k] for f, face in enumerate(self.faces) if self.region_of[f] == start_reg
                for ci, k in face if self.circle_of[self.pd[ci][k]] == first_circle]
        seam[first_circle] = min(cand)
        x = seam[first_circle]
        for i in range(1, s):
            # face on the far side of the previous seam edge, inside the next band
            darts = self.slots[x]
            faces_x = {self.dart_face[d] for d in darts} | {self.dart_face[self.other_end(*d)] for d in darts}
            target = order[i]
            options = []
            for f in sorted(faces_x):
                for ci, k in self.faces[f]:
                    y = self.pd[ci][k]
                    if self.circle_of[y] == target:
                        options.append(y)
            if not options:
                raise VogelError("no seam edge for the next circle")
            seam[target] = x = min(options)

        # crossing sequence along each circle starting after its seam edge
        succ: dict[int, list[int]] = {}
        indeg = [0] * len(self.pd)
        for c, edges in enumerate(self.circles):
            start = edges.index(seam[c])
            cyc = edges[start:] + edges[:start]
            seq = [self.head(e)[0] for e in cyc]
            for a, b in zip(seq, seq[1:]):
                succ.setdefault(a, []).append(b)
                indeg[b] += 1
        crossing_pos = []
        for ci in range(len(self.pd)):
            cs = {self.circle_of[x] for x in self.pd[ci]}
            ps = sorted(pos[c] for c in cs)
            if len(ps) != 2 or ps[1] - ps[0] != 1:
                raise VogelError(f"crossing {ci} does not join adjacent circles")
            crossing_pos.append(ps[0])
        heap = [(crossing_pos[ci], ci) for ci in range(len(self.pd)) if indeg[ci] == 0]
        letters = []
        while heap:
            _, ci = heappop(heap)
            letters.append(self.sign[ci] * (crossing_pos[ci] + 1))
            for b in succ.get(ci, ()):
                indeg[b] -= 1
                if indeg[b] == 0:
                    heappush(heap, (crossing_pos[b], b))
        if len(letters) != len(self.pd):
            raise VogelError("crossing order along the circles is cyclic")
        return BraidWord(s, tuple(letters))


def seifert_circles(pd: PDCode | str) -> SeifertDecomposition:
    """Seifert circles of an oriented diagram and its incoherence."""
    if isinstance(pd, str):
        pd = parse_pd_code(pd)
    dg = Diagram(pd)
    return SeifertDecomposition(tuple(dg.circles), dg.incoherence)


def vogel_moves(pd: PDCode | str, max_moves: int = 1000):
    """Run Vogel moves to a braided diagram.

    Returns ``(diagram, history)`` with ``history`` the incoherence before
    each move and at the end; raises :class:`VogelError` unless every move
    strictly lowers it.
    """
    if isinstance(pd, str):
        pd = parse_pd_code(pd)
    dg = Diagram(pd)
    history = [dg.incoherence]
    circles0 = len(dg.circles)
    while dg.incoherence:
        if len(history) > max_moves:
            raise VogelError("too many Vogel moves")
        site = dg.defect_site()
        if site is None:
            raise VogelError("incoherent diagram without a defect face")
        _, e1, e2, side = site
        nxt = Diagram(dg.vogel_move(e1, e2, side))
        if nxt.incoherence >= dg.incoherence:
            raise VogelError(f"Vogel move did not lower incoherence ({dg.incoherence} -> {nxt.incoherence})")
        if len(nxt.circles) != circles0:
            raise VogelError("Vogel move changed the number of Seifert circles")
        dg = nxt
        history.append(dg.incoherence)
    return dg, history


def pd_to_braid(pd: PDCode | str) -> BraidWord:
    """Braid word whose closure is the knot of ``pd``."""
    if isinstance(pd, str):
        pd = parse_pd_code(pd)
    dg, _ = vogel_moves(pd)
    b = dg.read_braid()
    if len(pd) and b.strands > 0:
        from .braids import closure_components
        if closure_components(b) != 1:
            raise InputError("diagram is not a knot")
    return b
