"""Oriented planar link diagrams as PD codes.

A crossing record ``(a, b, c, d)`` lists the four incident arc labels
counterclockwise starting from the incoming under-strand, the convention of
the standard knot tables.  The over-strand runs ``d -> b`` at a positive
crossing and ``b -> d`` at a negative one.  Circles with no crossings cannot
be expressed by PD records and are tracked in a separate ``free_loops``
counter.

Text grammar: whitespace-separated terms ``X[a,b,c,d]`` with positive
integer arc labels, plus optional ``O`` terms, one per crossing-free circle.
A JSON mirror ``{"crossings": [[a,b,c,d], ...], "free_loops": n}`` carries
the same structure for tooling.

Orientation is not an input: the under-strand direction is fixed by the
record convention and the over-strand directions are recovered by parity
propagation (each arc must be entered exactly once and left exactly once).
Components that never pass under anything have a free orientation; the
lowest-numbered pass of each such component is oriented by a fixed rule so
that parsing is deterministic.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Sequence

from .errors import (
    DanglingArc,
    DiagramSyntaxError,
    InconsistentOrientation,
    SameComponent,
    UnknownComponent,
)

__all__ = ["Diagram", "pd_parse"]

Crossing = tuple[int, int, int, int]

# head-making variable value for each slot of a pass (see orientation solver)
_H0 = {0: 0, 2: 1, 3: 0, 1: 1}


def _rotate(t: Crossing, r: int) -> Crossing:
    return (t[r % 4], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4])


class Diagram:
    """Immutable oriented link diagram.

    ``crossings[i]`` is the i-th PD record with slot 0 the incoming
    under-strand; ``over_in[i]`` is 3 when the over-strand enters at slot 3
    (positive crossing) and 1 otherwise (negative crossing).
    """

    __slots__ = ("crossings", "over_in", "free_loops", "_cache")

    def __init__(self, crossings, over_in, free_loops=0, _validated=False):
        crossings = tuple(tuple(int(x) for x in c) for c in crossings)
        over_in = tuple(int(s) for s in over_in)
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "over_in", over_in)
        object.__setattr__(self, "free_loops", int(free_loops))
        object.__setattr__(self, "_cache", {})
        if not _validated:
            self._validate()

    def __setattr__(self, *args):
        raise AttributeError("Diagram is immutable")

    # ------------------------------------------------------------ construction

    @classmethod
    def from_pd(cls, crossings: Iterable[Sequence[int]], free_loops: int = 0,
                under_in_known: bool | Sequence[bool] = True) -> "Diagram":
        """Build a diagram from raw PD records, resolving orientations.

        With ``under_in_known`` each record's slot 0 is trusted to be the
        incoming under-strand; otherwise only the under *diagonal* (slots
        0 and 2) is trusted and both strand directions are solved for.
        A sequence of booleans pins the convention record by record.
        """
        recs = [tuple(int(x) for x in c) for c in crossings]
        for c in recs:
            if len(c) != 4:
                raise DiagramSyntaxError(f"crossing record {c} must have 4 arcs")
        _check_occurrences(recs)
        solution = _solve_orientations(recs, under_in_known)
        normalized = []
        over_in = []
        for i, rec in enumerate(recs):
            u, o = solution[(i, "u")], solution[(i, "o")]
            rec = _rotate(rec, 2) if u == 1 else rec
            # rotating by 2 moves the over entry slot by 2 as well
            o_slot = 3 if o == 0 else 1
            if u == 1:
                o_slot = 3 if o_slot == 1 else 1
            normalized.append(rec)
            over_in.append(o_slot)
        return cls(normalized, over_in, free_loops, _validated=False)

    @classmethod
    def unknot(cls, circles: int = 1) -> "Diagram":
        return cls((), (), circles)

    def _validate(self):
        if self.free_loops < 0:
            raise DiagramSyntaxError("negative free loop count")
        if len(self.over_in) != len(self.crossings):
            raise DiagramSyntaxError("over_in length mismatch")
        for s in self.over_in:
            if s not in (1, 3):
                raise DiagramSyntaxError(f"bad over_in slot {s}")
        _check_occurrences(self.crossings)
        # successor structure must decompose into cycles: guaranteed when
        # every arc is entered once and left once
        heads: dict[int, int] = {}
        tails: dict[int, int] = {}
        for i, rec in enumerate(self.crossings):
            for s in (0, self.over_in[i]):
                a = rec[s]
                if a in heads:
                    raise InconsistentOrientation(f"arc {a} entered twice")
                heads[a] = i
            for s in (2, (self.over_in[i] + 2) % 4):
                a = rec[s]
                if a in tails:
                    raise InconsistentOrientation(f"arc {a} left twice")
                tails[a] = i
        if set(heads) != set(tails):
            raise InconsistentOrientation("unbalanced arc ends")

    # -------------------------------------------------------------- inspection

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> frozenset[int]:
        got = self._cache.get("arcs")
        if got is None:
            got = frozenset(a for rec in self.crossings for a in rec)
            self._cache["arcs"] = got
        return got

    def successor(self) -> dict[int, int]:
        """Next arc along the orientation, across one crossing."""
        got = self._cache.get("succ")
        if got is None:
            got = {}
            for i, rec in enumerate(self.crossings):
                got[rec[0]] = rec[2]
                o = self.over_in[i]
                got[rec[o]] = rec[(o + 2) % 4]
            self._cache["succ"] = got
        return got

    def sign(self, i: int) -> int:
        return 1 if self.over_in[i] == 3 else -1

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if s == 3 else -1 for s in self.over_in)

    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Oriented arc cycles, each starting at its minimal arc label,
        ordered by that label.  Crossing-free circles are not included."""
        got = self._cache.get("components")
        if got is None:
            succ = self.successor()
            seen: set[int] = set()
            comps = []
            for start in sorted(succ):
                if start in seen:
                    continue
                cyc = [start]
                seen.add(start)
                a = succ[start]
                while a != start:
                    cyc.append(a)
                    seen.add(a)
                    a = succ[a]
                comps.append(tuple(cyc))
            got = tuple(comps)
            self._cache["components"] = got
        return got

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    def component_of(self, arc: int) -> int:
        got = self._cache.get("arc_comp")
        if got is None:
            got = {}
            for ci, comp in enumerate(self.components):
                for a in comp:
                    got[a] = ci
            self._cache["arc_comp"] = got
        try:
            return got[arc]
        except KeyError:
            raise UnknownComponent(f"no arc {arc} in diagram") from None

    def crossing_components(self, i: int) -> tuple[int, int]:
        """(under strand component, over strand component) of crossing i."""
        rec = self.crossings[i]
        return self.component_of(rec[0]), self.component_of(rec[self.over_in[i]])

    def linking_number(self, c1: int, c2: int) -> int:
        if c1 == c2:
            raise SameComponent("linking number needs two distinct components")
        if not (0 <= c1 < self.n_components and 0 <= c2 < self.n_components):
            raise UnknownComponent(f"component out of range: {c1}, {c2}")
        n = len(self.components)
        if c1 >= n or c2 >= n:
            return 0  # crossing-free circles link nothing
        pair = {c1, c2}
        total = 0
        for i in range(self.n_crossings):
            u, o = self.crossing_components(i)
            if {u, o} == pair:
                total += self.sign(i)
        if total % 2:
            raise InconsistentOrientation("odd inter-component crossing sum")
        return total // 2

    def self_writhe(self, c: int) -> int:
        """Sum of signs of the crossings where component c crosses itself."""
        return sum(self.sign(i) for i in range(self.n_crossings)
                   if self.crossing_components(i) == (c, c))

    # ------------------------------------------------------------- operations

    def mirror(self) -> "Diagram":
        """Switch every crossing's over/under strand."""
        new_recs = []
        new_over = []
        for i, rec in enumerate(self.crossings):
            o = self.over_in[i]
            new_recs.append(_rotate(rec, o))
            # the old under-in lands at slot (0 - o) mod 4 and is the new over-in
            new_over.append((0 - o) % 4)
        return Diagram(new_recs, new_over, self.free_loops, _validated=True)

    def switch_crossing(self, i: int) -> "Diagram":
        """Mirror a single crossing (used by skein engines)."""
        recs = list(self.crossings)
        over = list(self.over_in)
        o = over[i]
        recs[i] = _rotate(recs[i], o)
        over[i] = (0 - o) % 4
        return Diagram(recs, over, self.free_loops, _validated=True)

    def reverse_component(self, c: int) -> "Diagram":
        comps = self.components
        if not (0 <= c < len(comps)):
            raise UnknownComponent(f"component {c} out of range")
        arcs = set(comps[c])
        recs = list(self.crossings)
        over = list(self.over_in)
        for i, rec in enumerate(recs):
            o = over[i]
            under_in_comp = rec[0] in arcs
            over_in_comp = rec[o] in arcs
            if under_in_comp:
                rec = _rotate(rec, 2)
                o = (o + 2) % 4
            if over_in_comp:
                o = (o + 2) % 4
            recs[i], over[i] = rec, o
        return Diagram(recs, over, self.free_loops, _validated=True)

    def disjoint_union(self, other: "Diagram") -> "Diagram":
        offset = max(self.arcs, default=0)
        recs = list(self.crossings)
        for rec in other.crossings:
            recs.append(tuple(a + offset for a in rec))
        return Diagram(recs, self.over_in + other.over_in,
                       self.free_loops + other.free_loops, _validated=True)

    def relabeled(self) -> "Diagram":
        """Same diagram with arcs renumbered densely from 1."""
        mapping = {a: k + 1 for k, a in enumerate(sorted(self.arcs))}
        recs = [tuple(mapping[a] for a in rec) for rec in self.crossings]
        return Diagram(recs, self.over_in, self.free_loops, _validated=True)

    def add_free_loops(self, k: int) -> "Diagram":
        return Diagram(self.crossings, self.over_in, self.free_loops + k,
                       _validated=True)

    def rewire(self, removed: set[int], glues: Iterable[tuple[int, int]]) -> "Diagram":
        """Delete the crossings in ``removed``, splicing strands together.

        Each glue pair ``(u, w)`` states that the strand entering arc u's
        head continues into arc w; every slot of a removed crossing must be
        covered by exactly one glue end.  Chains of glued arcs become single
        arcs named after the chain start; closed chains become free loops.
        """
        nxt = {}
        prev = {}
        for u, w in glues:
            if u in nxt or w in prev:
                raise ValueError("conflicting glue pairs")
            nxt[u] = w
            prev[w] = u
        loops = 0
        rename: dict[int, int] = {}
        seen: set[int] = set()
        for u in list(nxt):
            if u in seen:
                continue
            # walk back to the chain start (or detect a cycle)
            start = u
            steps = 0
            while start in prev:
                start = prev[start]
                steps += 1
                if start == u and steps > 0:
                    break
            if start == u and u in prev:
                # closed cycle of glued arcs
                a = u
                while True:
                    seen.add(a)
                    a = nxt[a]
                    if a == u:
                        break
                loops += 1
                continue
            a = start
            while True:
                seen.add(a)
                rename[a] = start
                if a not in nxt:
                    break
                a = nxt[a]
        recs = []
        over = []
        for i, rec in enumerate(self.crossings):
            if i in removed:
                continue
            recs.append(tuple(rename.get(a, a) for a in rec))
            over.append(self.over_in[i])
        return Diagram(recs, over, self.free_loops + loops, _validated=False)

    # ------------------------------------------------------------------ faces

    def incidences(self) -> dict[int, list[tuple[int, int]]]:
        got = self._cache.get("incid")
        if got is None:
            got = {}
            for i, rec in enumerate(self.crossings):
                for s, a in enumerate(rec):
                    got.setdefault(a, []).append((i, s))
            self._cache["incid"] = got
        return got

    def head_of(self, arc: int) -> tuple[int, int]:
        """(crossing, slot) where the arc terminates."""
        got = self._cache.get("heads")
        if got is None:
            got = {}
            tails = {}
            for i, rec in enumerate(self.crossings):
                o = self.over_in[i]
                got[rec[0]] = (i, 0)
                got[rec[o]] = (i, o)
                tails[rec[2]] = (i, 2)
                tails[rec[(o + 2) % 4]] = (i, (o + 2) % 4)
            self._cache["heads"] = got
            self._cache["tails"] = tails
        return got[arc]

    def tail_of(self, arc: int) -> tuple[int, int]:
        self.head_of(arc)
        return self._cache["tails"][arc]

    def faces(self) -> tuple[tuple[tuple[int, bool], ...], ...]:
        """Faces of the 4-valent projection, from the rotation system.

        Each face is a cyclic tuple of darts ``(arc, along_orientation)``;
        the walk turns to the counterclockwise-next slot at every crossing.
        """
        got = self._cache.get("faces")
        if got is not None:
            return got
        darts = [(a, d) for a in sorted(self.arcs) for d in (True, False)]
        remaining = set(darts)
        faces = []
        while remaining:
            d0 = min(remaining)
            walk = []
            d = d0
            while True:
                walk.append(d)
                remaining.discard(d)
                arc, along = d
                ci, s = self.head_of(arc) if along else self.tail_of(arc)
                nxt_arc = self.crossings[ci][(s + 1) % 4]
                # leave the crossing along nxt_arc, away from this end of it
                away = self.tail_of(nxt_arc) == (ci, (s + 1) % 4)
                d = (nxt_arc, away)
                if d == d0:
                    break
            faces.append(tuple(walk))
        got = tuple(faces)
        self._cache["faces"] = got
        return got

    def connected_pieces(self) -> int:
        """Connected components of the underlying 4-valent graph."""
        n = self.n_crossings
        if n == 0:
            return 0
        incid = self.incidences()
        seen = set()
        pieces = 0
        for c0 in range(n):
            if c0 in seen:
                continue
            pieces += 1
            stack = [c0]
            seen.add(c0)
            while stack:
                ci = stack.pop()
                for a in self.crossings[ci]:
                    for cj, _ in incid[a]:
                        if cj not in seen:
                            seen.add(cj)
                            stack.append(cj)
        return pieces

    def is_planar(self) -> bool:
        """Euler test of the rotation system: every connected piece of
        the projection must satisfy V - E + F = 2."""
        if self.n_crossings == 0:
            return True
        v = self.n_crossings
        return v - 2 * v + len(self.faces()) == 2 * self.connected_pieces()

    # ------------------------------------------------------------- canonics

    def canonical_key(self):
        """Opaque key equal for diagrams identical up to arc relabeling and
        crossing reordering; distinct for mirrors.  BFS relabeling from every
        crossing, lexicographic minimum."""
        got = self._cache.get("key")
        if got is not None:
            return got
        n = self.n_crossings
        if n == 0:
            got = ("U", self.free_loops)
            self._cache["key"] = got
            return got
        incid = self.incidences()
        # connected pieces of the crossing graph, each keyed independently
        piece_of = {}
        pieces = []
        for c0 in range(n):
            if c0 in piece_of:
                continue
            piece = [c0]
            piece_of[c0] = len(pieces)
            qi = 0
            while qi < len(piece):
                ci = piece[qi]
                qi += 1
                for a in self.crossings[ci]:
                    for cj, _ in incid[a]:
                        if cj not in piece_of:
                            piece_of[cj] = len(pieces)
                            piece.append(cj)
            pieces.append(piece)
        keys = sorted(
            min(self._bfs_encoding(start, incid) for start in piece)
            for piece in pieces
        )
        got = (self.free_loops, tuple(keys))
        self._cache["key"] = got
        return got

    def _bfs_encoding(self, start: int, incid) -> tuple:
        arc_ids: dict[int, int] = {}
        cross_seen = {start}
        queue = [start]
        out = []
        qi = 0
        while qi < len(queue):
            ci = queue[qi]
            qi += 1
            rec = self.crossings[ci]
            entry = [0, 0, 0, 0, 1 if self.over_in[ci] == 3 else 0]
            for s in range(4):
                a = rec[s]
                k = arc_ids.get(a)
                if k is None:
                    k = len(arc_ids)
                    arc_ids[a] = k
                    for cj, _ in incid[a]:
                        if cj not in cross_seen:
                            cross_seen.add(cj)
                            queue.append(cj)
                entry[s] = k
            out.extend(entry)
        return tuple(out)

    # ---------------------------------------------------------------- protocol

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.crossings == other.crossings
                and self.over_in == other.over_in
                and self.free_loops == other.free_loops)

    def __hash__(self):
        return hash((self.crossings, self.over_in, self.free_loops))

    def __repr__(self):
        return f"<Diagram {self.n_crossings} crossings, {self.n_components} components>"

    # ------------------------------------------------------------ serialization

    def pd_text(self) -> str:
        parts = ["X[{},{},{},{}]".format(*rec) for rec in self.crossings]
        parts.extend("O" for _ in range(self.free_loops))
        return " ".join(parts)

    def to_json(self) -> str:
        return json.dumps({
            "crossings": [list(rec) for rec in self.crossings],
            "free_loops": self.free_loops,
        })

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        try:
            data = json.loads(text)
            crossings = data["crossings"]
            free_loops = data.get("free_loops", 0)
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise DiagramSyntaxError(f"bad diagram JSON: {e}") from e
        return cls.from_pd(crossings, free_loops)


def _check_occurrences(recs):
    counts: dict[int, int] = {}
    for rec in recs:
        for a in rec:
            if a <= 0:
                raise DiagramSyntaxError(f"arc labels must be positive, got {a}")
            counts[a] = counts.get(a, 0) + 1
    bad = {a: k for a, k in counts.items() if k != 2}
    if bad:
        a, k = sorted(bad.items())[0]
        raise DanglingArc(f"arc {a} occurs {k} times (every arc must occur twice)")


def _solve_orientations(recs, under_in_known) -> dict:
    """Assign a direction to every strand pass by parity propagation."""
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i, rec in enumerate(recs):
        for s, a in enumerate(rec):
            occurrences.setdefault(a, []).append((i, s))

    adj: dict[tuple, list[tuple[tuple, int]]] = {}
    for a, occ in occurrences.items():
        (i1, s1), (i2, s2) = occ
        p1 = (i1, "u" if s1 in (0, 2) else "o")
        p2 = (i2, "u" if s2 in (0, 2) else "o")
        if p1 == p2:
            continue  # both ends on one pass: automatically consistent
        parity = 1 ^ _H0[s1] ^ _H0[s2]
        adj.setdefault(p1, []).append((p2, parity))
        adj.setdefault(p2, []).append((p1, parity))

    all_passes = [(i, t) for i in range(len(recs)) for t in ("u", "o")]
    value: dict[tuple, int] = {}
    if isinstance(under_in_known, bool):
        flags = [under_in_known] * len(recs)
    else:
        flags = list(under_in_known)
        if len(flags) != len(recs):
            raise DiagramSyntaxError("one under_in_known flag per crossing")
    pinned = {(i, "u"): 0 for i in range(len(recs)) if flags[i]}

    for root in all_passes:
        if root in value:
            continue
        # collect the whole constraint component first, then seed it
        comp = [root]
        seen = {root}
        qi = 0
        while qi < len(comp):
            p = comp[qi]
            qi += 1
            for q, _ in adj.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    comp.append(q)
        seeds = [p for p in comp if p in pinned]
        assign = {}
        if seeds:
            stack = list(seeds)
            for p in seeds:
                assign[p] = pinned[p]
        else:
            start = min(comp)
            assign[start] = 0
            stack = [start]
        while stack:
            p = stack.pop()
            for q, parity in adj.get(p, ()):
                want = assign[p] ^ parity
                if q in assign:
                    if assign[q] != want:
                        raise InconsistentOrientation(
                            "no consistent strand orientation exists")
                else:
                    assign[q] = want
                    stack.append(q)
        for p in comp:
            if p in pinned and assign[p] != pinned[p]:
                raise InconsistentOrientation(
                    "declared under-strand directions are contradictory")
            value[p] = assign[p]
    return value


_PD_TERM = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")


def pd_parse(text: str) -> Diagram:
    """Parse the PD text grammar into a validated oriented diagram."""
    crossings = []
    free_loops = 0
    for token in text.split():
        if token == "O":
            free_loops += 1
            continue
        m = _PD_TERM.match(token)
        if not m:
            raise DiagramSyntaxError(f"bad PD term {token!r}")
        crossings.append(tuple(int(g) for g in m.groups()))
    return Diagram.from_pd(crossings, free_loops)
