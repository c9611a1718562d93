"""Braid words, tangles, plat presentations, and banded-spine boundaries.

A tangle is a PD fragment: crossing records in the usual rotation
convention (under-strand diagonal in slots 0 and 2, no orientation), plus
ordered lists of the arcs hanging at the top and bottom boundary and a
count of closed circles.  Tangles compose by stacking, mirror by
reflection, double by the parallel-copy rule, and close up into oriented
diagrams; strand orientations are solved only at closure.

Plat presentations follow the wedge-of-circles model: a braid on
``2*(2g+m)`` strands, capped above by ``2g+m`` arcs and closed below by a
cone on the leftmost ``4g`` endpoints plus ``m`` extra cups.  In plat mode
the caps and cups pair adjacent strands; standardizing renests them
concentrically by adding permutation words to the braid.  Widening the
spine into bands and taking the boundary reuses the doubling rule, with
per-circle framing realized as full twists inserted under the caps.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, NamedTuple

from .diagram import Diagram
from .errors import (
    DiagramSyntaxError,
    DisconnectedBoundary,
    ExtraComponents,
    InterfaceMismatch,
    NotStandardized,
    StrandMismatch,
)

__all__ = [
    "BraidWord",
    "braid_parse",
    "Tangle",
    "braid_to_tangle",
    "tangle_compose",
    "tangle_mirror",
    "tangle_double_delta",
    "tangle_parallel_double",
    "tangle_substitute",
    "trace_closure",
    "plat_closure",
    "PlatPresentation",
    "plat_wedge",
    "validate_plat",
    "standardize",
    "spine_boundary_knot",
]


# =====================================================================
# braid words
# =====================================================================

class BraidWord(NamedTuple):
    """A word in the braid generators; letter ``+i`` is the positive
    generator on strands (i, i+1), ``-i`` its inverse."""

    strands: int
    letters: tuple[int, ...]

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def permutation(self) -> list[int]:
        """perm[k] = bottom position of the strand entering at top k."""
        pos = list(range(self.strands))  # pos[position] = strand id
        for letter in self.letters:
            i = abs(letter) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        out = [0] * self.strands
        for bottom, strand in enumerate(pos):
            out[strand] = bottom
        return out

    def __str__(self):
        return " ".join(f"s{abs(x)}" + ("" if x > 0 else "^-1")
                        for x in self.letters)


_BRAID_TOKEN = re.compile(r"s(\d+)(\^-1)?$")


def braid_parse(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``s1 s2^-1 ...``; the strand count defaults to the largest
    generator index plus one."""
    letters = []
    for token in text.split():
        m = _BRAID_TOKEN.match(token)
        if not m:
            raise DiagramSyntaxError(f"bad braid token {token!r}")
        idx = int(m.group(1))
        if idx < 1:
            raise DiagramSyntaxError("generator indices start at 1")
        letters.append(-idx if m.group(2) else idx)
    if strands is None:
        strands = max((abs(x) for x in letters), default=1) + 1
    for x in letters:
        if abs(x) >= strands:
            raise DiagramSyntaxError(
                f"generator s{abs(x)} needs more than {strands} strands")
    return BraidWord(strands, tuple(letters))


# =====================================================================
# tangles
# =====================================================================

class Tangle:
    """Unoriented PD fragment with ordered top and bottom boundary arcs."""

    __slots__ = ("records", "top", "bottom", "free_loops")

    def __init__(self, records, top, bottom, free_loops=0):
        self.records = tuple(tuple(int(x) for x in r) for r in records)
        self.top = tuple(int(a) for a in top)
        self.bottom = tuple(int(a) for a in bottom)
        self.free_loops = int(free_loops)
        counts: dict[int, int] = {}
        for rec in self.records:
            if len(rec) != 4:
                raise DiagramSyntaxError("crossing records have four arcs")
            for a in rec:
                counts[a] = counts.get(a, 0) + 1
        for a in self.top + self.bottom:
            counts[a] = counts.get(a, 0) + 1
        bad = {a: k for a, k in counts.items() if k != 2}
        if bad:
            raise DiagramSyntaxError(f"arcs with end count != 2: {bad}")

    @property
    def n_top(self) -> int:
        return len(self.top)

    @property
    def n_bottom(self) -> int:
        return len(self.bottom)

    @property
    def n_crossings(self) -> int:
        return len(self.records)

    def __repr__(self):
        return (f"<Tangle {self.n_top}+{self.n_bottom} endpoints, "
                f"{self.n_crossings} crossings>")

    def arcs(self) -> set[int]:
        out = set(self.top) | set(self.bottom)
        for rec in self.records:
            out.update(rec)
        return out

    def _ends(self) -> dict[int, list[tuple]]:
        """Each arc's two ends; an end is ('x', i, s), ('t', k) or ('b', k)."""
        ends: dict[int, list[tuple]] = {}
        for i, rec in enumerate(self.records):
            for s, a in enumerate(rec):
                ends.setdefault(a, []).append(("x", i, s))
        for k, a in enumerate(self.top):
            ends.setdefault(a, []).append(("t", k))
        for k, a in enumerate(self.bottom):
            ends.setdefault(a, []).append(("b", k))
        return ends

    def strand_permutation(self) -> list[int]:
        """Bottom position reached from each top position, for product
        tangles; StrandMismatch when a strand returns to its own side."""
        ends = self._ends()
        other: dict[tuple, tuple] = {}
        for pair in ends.values():
            e1, e2 = pair
            other[e1] = e2
            other[e2] = e1
        perm = []
        for k in range(self.n_top):
            end = ("t", k)
            while True:
                end = other[end]
                if end[0] == "x":
                    _, i, s = end
                    end = ("x", i, (s + 2) % 4)
                    continue
                break
            if end[0] != "b":
                raise StrandMismatch(
                    f"strand at top {k + 1} returns to the top boundary")
            perm.append(end[1])
        return perm

    def is_product(self) -> bool:
        try:
            self.strand_permutation()
            return True
        except StrandMismatch:
            return False


def _fuse(records: list[tuple], boundary: dict[str, list[int]],
          fuse_pairs: list[tuple[tuple, tuple]], keep: dict[str, list[int]]):
    """Generic end-gluing: fuse boundary ends pairwise and relabel arcs.

    Chains of fused arcs collapse to their minimal label; fully closed
    chains are counted as circles.  Returns (records, kept boundary
    labels, circles)."""
    ends: dict[int, list[tuple]] = {}
    for i, rec in enumerate(records):
        for s, a in enumerate(rec):
            ends.setdefault(a, []).append(("x", i, s))
    for tag, arcs in boundary.items():
        for k, a in enumerate(arcs):
            ends.setdefault(a, []).append((tag, k))

    parent: dict[tuple, tuple] = {}

    def find(e):
        root = e
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(e, e) != root:
            parent[e], e = root, parent[e]
        return root

    def union(e1, e2) -> bool:
        """Join two ends; True when this closes a circle."""
        r1, r2 = find(e1), find(e2)
        if r1 == r2:
            return True
        parent[r1] = r2
        return False

    closed = 0
    arc_of_end: dict[tuple, int] = {}
    for a, pair in ends.items():
        e1, e2 = pair
        arc_of_end[e1] = a
        arc_of_end[e2] = a
        if union(e1, e2):
            closed += 1
    for e1, e2 in fuse_pairs:
        if union(e1, e2):
            closed += 1

    label: dict[tuple, int] = {}
    for e, a in arc_of_end.items():
        root = find(e)
        if root not in label or a < label[root]:
            label[root] = a

    new_records = [
        tuple(label[find(("x", i, s))] for s in range(4))
        for i in range(len(records))
    ]
    kept = {tag: [label[find((tag, k))] for k in positions]
            for tag, positions in keep.items()}
    return new_records, kept, closed


def _relabeled(t: Tangle, offset: int) -> Tangle:
    return Tangle(
        [tuple(a + offset for a in rec) for rec in t.records],
        [a + offset for a in t.top],
        [a + offset for a in t.bottom],
        t.free_loops,
    )


def braid_to_tangle(b: BraidWord) -> Tangle:
    """One crossing per letter; positive letters give positive crossings
    once the strands are oriented downward."""
    n = b.strands
    current = list(range(1, n + 1))
    fresh = n + 1
    records = []
    top = tuple(current)
    for letter in b.letters:
        i = abs(letter) - 1
        left_in, right_in = current[i], current[i + 1]
        out_left, out_right = fresh, fresh + 1
        fresh += 2
        if letter > 0:
            # under strand: left in -> right out; over: right in -> left out
            records.append((left_in, out_left, out_right, right_in))
        else:
            records.append((right_in, left_in, out_left, out_right))
        current[i], current[i + 1] = out_left, out_right
    return Tangle(records, top, current)


def tangle_compose(t1: Tangle, t2: Tangle) -> Tangle:
    """Stack t1 on top of t2, fusing t1's bottom to t2's top."""
    if t1.n_bottom != t2.n_top:
        raise StrandMismatch(
            f"cannot stack {t1.n_bottom} strand ends on {t2.n_top}")
    t2r = _relabeled(t2, max(t1.arcs(), default=0))
    records = list(t1.records) + list(t2r.records)
    boundary = {"T": list(t1.top), "M1": list(t1.bottom),
                "M2": list(t2r.top), "B": list(t2r.bottom)}
    fuse = [(("M1", k), ("M2", k)) for k in range(t1.n_bottom)]
    new_records, kept, closed = _fuse(
        records, boundary, fuse,
        {"T": list(range(t1.n_top)), "B": list(range(t2r.n_bottom))})
    return Tangle(new_records, kept["T"], kept["B"],
                  t1.free_loops + t2.free_loops + closed)


def tangle_mirror(t: Tangle) -> Tangle:
    """Reflection through the horizontal plane: top and bottom swap, the
    rotation order of every record reverses, and each braid-like letter
    turns into its inverse.  The under-strand diagonal stays in slots 0/2."""
    return Tangle([(rec[0], rec[3], rec[2], rec[1]) for rec in t.records],
                  t.bottom, t.top, t.free_loops)


def tangle_double_delta(t: Tangle) -> Tangle:
    """The doubling ``delta(T)``: T stacked on its mirror image."""
    t.strand_permutation()  # validates the product structure
    return tangle_compose(t, tangle_mirror(t))


def double_block(u_in, o_out, u_out, o_in, mids) -> list[tuple]:
    """The 2x2 crossing block replacing one crossing under doubling.

    Arguments are the (side 0, side 1) lane pairs at the four slots of
    the original record and four fresh middle-arc labels; lane U0 enters
    at slot 0 side 0 and exits at slot 2 side 1, lane O0 enters at slot 3
    side 0 and exits at slot 1 side 1.
    """
    m_u0, m_u1, m_o0, m_o1 = mids
    return [
        (u_in[0], m_o1, m_u0, o_in[1]),
        (m_u0, m_o0, u_out[1], o_in[0]),
        (u_in[1], o_out[0], m_u1, m_o1),
        (m_u1, o_out[1], u_out[0], m_o0),
    ]


def tangle_parallel_double(t: Tangle) -> Tangle:
    """Replace every arc by two blackboard-parallel copies; each crossing
    becomes a 2x2 block of four crossings of the same sign.

    Lane bookkeeping: at every arc end the two lanes are ordered
    (side 0, side 1); along an arc side 0 at one end continues into
    side 1 at the other.  Top boundary positions expand to (side 0,
    side 1) left to right, bottom positions to (side 1, side 0).
    """
    ends = t._ends()
    lane_pair: dict[tuple[int, tuple], tuple[int, int]] = {}
    counter = [1]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    for a in sorted(ends):
        e1, e2 = ends[a]
        l0, l1 = fresh(), fresh()
        lane_pair[(a, e1)] = (l0, l1)
        lane_pair[(a, e2)] = (l1, l0)

    records = []
    for i, rec in enumerate(t.records):
        records.extend(double_block(
            lane_pair[(rec[0], ("x", i, 0))],
            lane_pair[(rec[1], ("x", i, 1))],
            lane_pair[(rec[2], ("x", i, 2))],
            lane_pair[(rec[3], ("x", i, 3))],
            (fresh(), fresh(), fresh(), fresh()),
        ))
    top = []
    for k, a in enumerate(t.top):
        s0, s1 = lane_pair[(a, ("t", k))]
        top.extend([s0, s1])
    bottom = []
    for k, a in enumerate(t.bottom):
        s0, s1 = lane_pair[(a, ("b", k))]
        bottom.extend([s1, s0])
    return Tangle(records, top, bottom, 2 * t.free_loops)


# =====================================================================
# closures and substitution
# =====================================================================

def trace_closure(t: Tangle) -> Diagram:
    """Braid-style closure joining top k to bottom k."""
    if t.n_top != t.n_bottom:
        raise StrandMismatch("trace closure needs equal boundary counts")
    boundary = {"t": list(t.top), "b": list(t.bottom)}
    fuse = [(("t", k), ("b", k)) for k in range(t.n_top)]
    records, _, closed = _fuse(list(t.records), boundary, fuse, {})
    return Diagram.from_pd(records, t.free_loops + closed,
                           under_in_known=False)


def plat_closure(t: Tangle, nested: bool = False) -> Diagram:
    """Close with caps and cups pairing adjacent strands, or nested
    concentric pairs with ``nested``."""
    n = t.n_top
    if n % 2 or t.n_bottom != n:
        raise StrandMismatch("plat closure needs an even strand count")
    if nested:
        pairs = [(k, n - 1 - k) for k in range(n // 2)]
    else:
        pairs = [(2 * k, 2 * k + 1) for k in range(n // 2)]
    boundary = {"t": list(t.top), "b": list(t.bottom)}
    fuse = [(("t", p), ("t", q)) for p, q in pairs]
    fuse += [(("b", p), ("b", q)) for p, q in pairs]
    records, _, closed = _fuse(list(t.records), boundary, fuse, {})
    return Diagram.from_pd(records, t.free_loops + closed,
                           under_in_known=False)


def tangle_substitute(d: Diagram, box: Iterable[int], t: Tangle) -> Diagram:
    """Replace the trivial tangle spanned by the ``box`` arcs with ``t``.

    The k-th box arc is cut; its upstream part feeds t's top k and its
    downstream part continues from t's bottom k.  Existing strand
    orientations are pinned and the tangle's are solved; an incompatible
    splice raises InterfaceMismatch.
    """
    box = list(box)
    if len(box) != t.n_top or t.n_top != t.n_bottom:
        raise InterfaceMismatch(
            f"box of {len(box)} arcs cannot host a {t.n_top}-strand tangle")
    if len(set(box)) != len(box):
        raise InterfaceMismatch("box arcs must be distinct")
    for a in box:
        if a not in d.arcs:
            raise InterfaceMismatch(f"no arc {a} in the diagram")

    offset = max(max(d.arcs), max(t.arcs(), default=0)) + 1
    tr = _relabeled(t, offset)
    next_id = max(tr.arcs()) + 1
    stub = {a: next_id + k for k, a in enumerate(box)}

    records = []
    pinned = []
    for i, rec in enumerate(d.crossings):
        rec = list(rec)
        for a in box:
            hc, hs = d.head_of(a)
            if hc == i:
                rec[hs] = stub[a]
        records.append(tuple(rec))
        pinned.append(True)
    for rec in tr.records:
        records.append(tuple(rec))
        pinned.append(False)

    boundary = {"t": list(tr.top), "b": list(tr.bottom),
                "up": list(box), "down": [stub[a] for a in box]}
    fuse = [(("up", k), ("t", k)) for k in range(len(box))]
    fuse += [(("b", k), ("down", k)) for k in range(len(box))]
    new_records, _, closed = _fuse(records, boundary, fuse, {})
    try:
        out = Diagram.from_pd(new_records,
                              d.free_loops + t.free_loops + closed,
                              under_in_known=pinned)
    except DiagramSyntaxError as e:
        raise InterfaceMismatch(f"cannot splice tangle into box: {e}") from e
    except Exception as e:
        if type(e).__name__ == "InconsistentOrientation":
            raise InterfaceMismatch(
                f"tangle orientation conflicts with the box: {e}") from e
        raise
    if not out.is_planar():
        raise InterfaceMismatch(
            "splice is not planar: the box cut points must sit side by "
            "side across a face, first box arc on the tangle's left")
    return out


# =====================================================================
# plat presentations of a wedge of circles
# =====================================================================

class PlatPresentation(NamedTuple):
    """Wedge of ``2g`` circles as a capped braid.

    The braid acts on ``2*(2g+m)`` strands; a cone on the leftmost ``4g``
    bottom endpoints closes the wedge and the remaining ``2m`` bottom
    endpoints carry cups.  ``curls`` holds one framing integer per wedge
    circle (circles numbered by their first cone leg, left to right),
    realized as full twists under the circle's cap when the spine is
    widened to bands.
    """

    genus: int
    extra: int
    braid: BraidWord
    mode: str            # "plat" | "standard"
    curls: tuple[int, ...]

    @property
    def arcs_per_side(self) -> int:
        return 2 * self.genus + self.extra

    @property
    def strands(self) -> int:
        return 2 * self.arcs_per_side

    def cap_pairs(self) -> list[tuple[int, int]]:
        """0-based strand pairs joined above the braid."""
        n = self.strands
        if self.mode == "standard":
            return [(k, n - 1 - k) for k in range(n // 2)]
        return [(2 * k, 2 * k + 1) for k in range(n // 2)]

    def cup_pairs(self) -> list[tuple[int, int]]:
        """0-based strand pairs joined below the braid (cone legs excluded)."""
        lo, n = 4 * self.genus, self.strands
        extra = n - lo
        if self.mode == "standard":
            return [(lo + k, n - 1 - k) for k in range(extra // 2)]
        return [(lo + 2 * k, lo + 2 * k + 1) for k in range(extra // 2)]

    def to_json(self) -> str:
        return json.dumps({
            "genus": self.genus, "extra": self.extra,
            "braid": str(self.braid), "strands": self.strands,
            "mode": self.mode, "curls": list(self.curls),
        })

    @classmethod
    def from_json(cls, text: str) -> "PlatPresentation":
        try:
            data = json.loads(text)
            braid = braid_parse(data["braid"], data.get("strands"))
            p = cls(int(data["genus"]), int(data.get("extra", 0)), braid,
                    data.get("mode", "plat"),
                    tuple(data.get("curls", [0] * (2 * int(data["genus"])))))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise DiagramSyntaxError(f"bad plat JSON: {e}") from e
        return validate_plat(p)


def validate_plat(p: PlatPresentation) -> PlatPresentation:
    if p.genus < 1 or p.extra < 0:
        raise DiagramSyntaxError("need genus >= 1 and extra arcs >= 0")
    if p.mode not in ("plat", "standard"):
        raise DiagramSyntaxError(f"unknown mode {p.mode!r}")
    if p.braid.strands != p.strands:
        raise StrandMismatch(
            f"braid on {p.braid.strands} strands, presentation needs {p.strands}")
    if len(p.curls) != 2 * p.genus:
        raise DiagramSyntaxError("one curl count per wedge circle required")
    _check_spine_connected(p)
    return p


def _check_spine_connected(p: PlatPresentation):
    n = p.strands
    perm = p.braid.permutation()
    parent = list(range(n + 1))      # nodes: strand tops, plus the vertex

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    top_of_bottom = {perm[k]: k for k in range(n)}
    for a, b in p.cap_pairs():
        union(a, b)
    for a, b in p.cup_pairs():
        union(top_of_bottom[a], top_of_bottom[b])
    for leg in range(4 * p.genus):
        union(top_of_bottom[leg], n)
    if len({find(x) for x in range(n + 1)}) > 1:
        raise ExtraComponents(
            "the plat closure has circles besides the wedge spine")


def plat_wedge(g: int, m: int, braid: BraidWord,
               curls: Iterable[int] | None = None) -> PlatPresentation:
    """Validated plat presentation of a wedge of ``2g`` circles."""
    curls = tuple(curls) if curls is not None else (0,) * (2 * g)
    return validate_plat(PlatPresentation(g, m, braid, "plat", curls))


def _permutation_word(target: list[int]) -> list[int]:
    """Positive braid letters realizing ``top k -> bottom target[k]``.

    Bubble sort emits adjacent transpositions top to bottom; permutation
    braids slide cap systems isotopically, which is all standardize needs.
    """
    arr = list(target)
    letters = []
    changed = True
    while changed:
        changed = False
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                letters.append(j + 1)
                changed = True
    return letters


def standardize(p: PlatPresentation) -> PlatPresentation:
    """Renest caps and cups concentrically by adding permutation words to
    the top and bottom of the braid; the spine is preserved because the
    added words exactly compensate the re-pairing."""
    validate_plat(p)
    if p.mode == "standard":
        return p
    n = p.strands
    half = n // 2
    # w_top sends nested cap legs onto adjacent cap legs:
    # nested pair (k, n-1-k) must map onto adjacent pair (2k, 2k+1)
    top_perm = [0] * n
    for k in range(half):
        top_perm[k] = 2 * k
        top_perm[n - 1 - k] = 2 * k + 1
    # w_bot sends adjacent cup legs onto nested cup legs, fixing cone legs
    lo = 4 * p.genus
    extra = n - lo
    bottom_perm = list(range(n))
    for k in range(extra // 2):
        bottom_perm[lo + 2 * k] = lo + k
        bottom_perm[lo + 2 * k + 1] = n - 1 - k
    letters = (tuple(_permutation_word(top_perm)) + p.braid.letters
               + tuple(_permutation_word(bottom_perm)))
    out = PlatPresentation(p.genus, p.extra, BraidWord(n, letters),
                           "standard", p.curls)
    return validate_plat(out)


def _circles_by_cap(p: PlatPresentation) -> dict[int, int]:
    """Wedge-circle index of each cap (cap indexed by its position in
    cap_pairs); circles numbered by first cone leg, left to right."""
    perm = p.braid.permutation()
    top_of_bottom = {perm[k]: k for k in range(p.strands)}
    cap_of_top = {}
    for idx, (a, b) in enumerate(p.cap_pairs()):
        cap_of_top[a] = (idx, b)
        cap_of_top[b] = (idx, a)
    cup_mate = {}
    for a, b in p.cup_pairs():
        cup_mate[a] = b
        cup_mate[b] = a
    circle_of_cap: dict[int, int] = {}
    circle = 0
    done_legs: set[int] = set()
    for leg in range(4 * p.genus):
        if leg in done_legs:
            continue
        done_legs.add(leg)
        bottom = leg
        while True:
            top = top_of_bottom[bottom]
            cap_idx, mate_top = cap_of_top[top]
            circle_of_cap[cap_idx] = circle
            bottom = perm[mate_top]
            if bottom < 4 * p.genus:
                done_legs.add(bottom)
                break
            bottom = cup_mate[bottom]
        circle += 1
    return circle_of_cap


def spine_boundary_knot(p: PlatPresentation) -> Diagram:
    """Boundary of the banded wedge spine, as an oriented knot diagram.

    Requires standard mode.  Each circle's framing integer inserts that
    many full twists between its doubled cap and the rest of the band.
    The spine is connected but the banded surface's boundary need not be
    one circle; a multi-circle boundary raises DisconnectedBoundary.
    """
    if p.mode != "standard":
        raise NotStandardized("widen only standard presentations")
    validate_plat(p)
    n = p.strands
    doubled = tangle_parallel_double(braid_to_tangle(p.braid))

    # framing twists on the doubled strand pair below each circle's cap
    circle_of_cap = _circles_by_cap(p)
    twist_letters = []
    seen: set[int] = set()
    for cap_idx, (a, _) in enumerate(p.cap_pairs()):
        c = circle_of_cap[cap_idx]
        if c in seen:
            continue
        seen.add(c)
        k = p.curls[c]
        gen = 2 * a + 1          # doubled positions (2a+1, 2a+2), 1-based
        # the band sides run antiparallel, so a positive curl needs the
        # negative braid letter to contribute +2 to the boundary writhe
        twist_letters.extend([-gen if k > 0 else gen] * (2 * abs(k)))
    if twist_letters:
        twists = braid_to_tangle(BraidWord(2 * n, tuple(twist_letters)))
        doubled = tangle_compose(twists, doubled)

    boundary = {"t": list(doubled.top), "b": list(doubled.bottom)}
    fuse = []
    for a, b in p.cap_pairs():
        fuse.append((("t", 2 * a), ("t", 2 * b + 1)))
        fuse.append((("t", 2 * a + 1), ("t", 2 * b)))
    for a, b in p.cup_pairs():
        fuse.append((("b", 2 * a), ("b", 2 * b + 1)))
        fuse.append((("b", 2 * a + 1), ("b", 2 * b)))
    legs = 8 * p.genus
    for point in range(1, legs - 1, 2):
        fuse.append((("b", point), ("b", point + 1)))
    fuse.append((("b", legs - 1), ("b", 0)))
    records, _, closed = _fuse(list(doubled.records), boundary, fuse, {})
    out = Diagram.from_pd(records, doubled.free_loops + closed,
                          under_in_known=False)
    if out.n_components != 1:
        raise DisconnectedBoundary(
            f"banded spine boundary has {out.n_components} circles")
    return out
