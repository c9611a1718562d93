"""Polynomial engines: Kauffman bracket, Jones, Kauffman F, Conway.

Two evaluation paths exist for the Jones polynomial:

* ``bracket_state_sum`` -- the brute-force oracle summing all ``2^n``
  smoothings (capped, exponential, used for cross-checks);
* ``jones_memoized`` -- a smoothing recursion that removes kinks and bigons
  between steps, factors split pieces, and memoizes values in a shared
  table keyed by canonical diagram keys.

Conventions, fixed once: ``<unknot> = 1``, an extra circle multiplies by
``-A^2 - A^-2``, the A-smoothing of ``(a,b,c,d)`` joins ``a~b`` and ``c~d``,
and ``V = (-A)^{-3w} <D>`` with ``t = A^-4``.

The two-variable Kauffman polynomial uses the regular-isotopy ``L`` with
``L(unknot) = 1``, ``L(curl+) = a L``, ``L(s+) + L(s-) = z(L(s0) + L(soo))``
and ``F = a^{-w} L``, computed by switching toward descending diagrams.
The Conway polynomial uses ``del(L+) - del(L-) = z del(L0)`` with the same
descent strategy on oriented diagrams.

Internally, unoriented diagram states are bare tuples of PD records (under
diagonal in slots 0 and 2); free circles never live inside states, they are
factored into coefficients as they appear.  An empty child state stands for
the last circle of its piece, so it contributes one delta less than the
circles closed while reaching it.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import Diagram, _rotate
from .errors import BadSite, ResourceLimit, TooLarge
from .moves import simplify as _simplify_diagram
from .polyring import LaurentPoly, TwoVarPoly

__all__ = [
    "SkeinMemo",
    "bracket_state_sum",
    "bracket_memoized",
    "jones",
    "jones_memoized",
    "kauffman_F",
    "conway",
    "alexander_from_conway",
    "skein_triple",
    "verify_jones_skein",
    "shared_memos",
    "reset_memos",
    "DEFAULT_ORACLE_CAP",
    "DEFAULT_ENGINE_CAP",
]

DEFAULT_ORACLE_CAP = 26
DEFAULT_ENGINE_CAP = 32

_DELTA = LaurentPoly.a_pow(2, -1) + LaurentPoly.a_pow(-2, -1)   # -A^2 - A^-2
_A = LaurentPoly.a_pow(1)
_A_INV = LaurentPoly.a_pow(-1)
_MINUS_A3 = LaurentPoly.a_pow(3, -1)
_MINUS_A3_INV = LaurentPoly.a_pow(-3, -1)

_ZVAR = TwoVarPoly.z_pow(1)
_AVAR = TwoVarPoly.a_pow(1)
_AVAR_INV = TwoVarPoly.a_pow(-1)
_DELTA_F = TwoVarPoly({(1, -1): 1, (-1, -1): 1, (0, 0): -1})  # (a+a^-1)z^-1 - 1


class SkeinMemo:
    """Write-once table from canonical diagram keys to polynomial values.

    Values are pure functions of the key, so concurrent fills can only
    race to write the same value; the overwrite check asserts exactly that.
    """

    def __init__(self, max_entries: int | None = None):
        self.table = {}
        self.hits = 0
        self.misses = 0
        self.max_entries = max_entries

    def get(self, key):
        value = self.table.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key, value):
        if self.max_entries and len(self.table) >= self.max_entries:
            self.table.clear()  # eviction changes speed, never values
        old = self.table.setdefault(key, value)
        if old != value:
            raise AssertionError("memo determinism violated: one key, two values")

    def stats(self) -> dict:
        return {"entries": len(self.table), "hits": self.hits,
                "misses": self.misses}


_bracket_memo = SkeinMemo()
_kauffman_memo = SkeinMemo()
_conway_memo = SkeinMemo()


def shared_memos() -> dict[str, SkeinMemo]:
    return {"bracket": _bracket_memo, "kauffman": _kauffman_memo,
            "conway": _conway_memo}


def reset_memos():
    for memo in shared_memos().values():
        memo.table.clear()
        memo.hits = memo.misses = 0


# =====================================================================
# unoriented states
# =====================================================================

def _glue_pairs(work: list, removed: int, pairs) -> int:
    """Identify arcs across slot pairs of record ``removed``; relabels the
    other records in place and returns the number of circles closed."""
    labels = list(work[removed])
    loops = 0
    for s1, s2 in pairs:
        x, y = labels[s1], labels[s2]
        if x == y:
            loops += 1
            continue
        for k in range(4):
            if labels[k] == y:
                labels[k] = x
        for j, other in enumerate(work):
            if j != removed and y in other:
                work[j] = tuple(x if a == y else a for a in other)
    return loops


def _smooth(state: tuple, i: int, mode: str) -> tuple[tuple, int]:
    work = list(state)
    pairs = ((0, 1), (2, 3)) if mode == "A" else ((0, 3), (1, 2))
    loops = _glue_pairs(work, i, pairs)
    del work[i]
    return tuple(work), loops


def _remove_through(state: tuple, i: int) -> tuple[tuple, int]:
    work = list(state)
    loops = _glue_pairs(work, i, ((0, 2), (1, 3)))
    del work[i]
    return tuple(work), loops


def _find_kink(state: tuple):
    for i, rec in enumerate(state):
        for s in range(4):
            if rec[s] == rec[(s + 1) % 4]:
                return i, s
    return None


def _occurrences(state: tuple) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, rec in enumerate(state):
        for s, a in enumerate(rec):
            occ.setdefault(a, []).append((i, s))
    return occ


def _find_bigon(state: tuple):
    """Two crossings joined by an over-over arc and an under-under arc."""
    occ = _occurrences(state)
    for x, ends in occ.items():
        (i1, s1), (i2, s2) = ends
        if i1 == i2 or s1 % 2 == 0 or s2 % 2 == 0:
            continue
        under1 = {state[i1][0], state[i1][2]}
        under2 = {state[i2][0], state[i2][2]}
        for y in under1 & under2:
            if y != x:
                return i1, i2
    return None


def _split_pieces(state: tuple) -> list[tuple]:
    n = len(state)
    if n <= 1:
        return [state] if state else []
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_home: dict[int, int] = {}
    for i, rec in enumerate(state):
        for a in rec:
            j = first_home.setdefault(a, i)
            if j != i:
                rj, ri = find(j), find(i)
                if rj != ri:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    if len(groups) == 1:
        return [state]
    return [tuple(state[i] for i in members) for members in groups.values()]


def _canonical_state(state: tuple):
    """Key invariant under arc relabeling, crossing reordering, and the
    two-slot rotation of each record (which preserves over/under roles).
    Disconnected states are keyed piece by piece, sorted."""
    n = len(state)
    if n == 0:
        return ()
    pieces = _split_pieces(state)
    if len(pieces) > 1:
        return tuple(sorted(_canonical_state(piece) for piece in pieces))
    occ = _occurrences(state)
    arc_to_crossings: dict[int, tuple[int, ...]] = {
        a: tuple(i for i, _ in ends) for a, ends in occ.items()}
    best = None
    for start in range(n):
        for rot in (0, 2):
            enc = _state_encoding(state, arc_to_crossings, start, rot, best)
            if enc is not None and (best is None or enc < best):
                best = enc
    return best


def _state_encoding(state, arc_to_crossings, start, rot, best):
    arc_ids: dict[int, int] = {}
    entry_rot = {start: rot}
    seen = {start}
    queue = [start]
    out = []
    qi = 0
    behind = best is not None  # still tied with best prefix
    pos = 0
    while qi < len(queue):
        ci = queue[qi]
        qi += 1
        rec = _rotate(state[ci], entry_rot[ci])
        for a in rec:
            k = arc_ids.get(a)
            if k is None:
                k = len(arc_ids)
                arc_ids[a] = k
                for cj in arc_to_crossings[a]:
                    if cj not in seen:
                        seen.add(cj)
                        pos_j = state[cj].index(a)
                        entry_rot[cj] = 0 if pos_j < 2 else 2
                        queue.append(cj)
            out.append(k)
            if behind:
                b = best[pos]
                if k > b:
                    return None
                if k < b:
                    behind = False
            pos += 1
    return tuple(out)


# =====================================================================
# bracket and Jones
# =====================================================================

def bracket_state_sum(d: Diagram, max_crossings: int = DEFAULT_ORACLE_CAP) -> LaurentPoly:
    """Kauffman bracket by full state enumeration (the oracle path)."""
    n = d.n_crossings
    if n > max_crossings:
        raise TooLarge(f"{n} crossings exceeds the state-sum cap {max_crossings}")
    if n == 0:
        if d.n_components == 0:
            return LaurentPoly.one()
        return _DELTA ** (d.n_components - 1)
    arcs = sorted(d.arcs)
    index = {a: k for k, a in enumerate(arcs)}
    recs = [tuple(index[a] for a in rec) for rec in d.crossings]
    m = len(arcs)
    total = LaurentPoly.zero()
    for mask in range(1 << n):
        parent = list(range(m))
        circles = 0
        a_count = 0
        for i, rec in enumerate(recs):
            if (mask >> i) & 1:
                a_count += 1
                pairs = ((rec[0], rec[1]), (rec[2], rec[3]))
            else:
                pairs = ((rec[0], rec[3]), (rec[1], rec[2]))
            for x, y in pairs:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x == y:
                    circles += 1
                else:
                    parent[x] = y
        weight = LaurentPoly.a_pow(2 * a_count - n)
        total = total + weight * _DELTA ** (circles - 1 + d.free_loops)
    return total


def _pick_crossing(state: tuple) -> int:
    """Prefer a crossing doubly adjacent to a neighbor: smoothing it tends
    to create a kink or bigon immediately."""
    n = len(state)
    if n == 1:
        return 0
    owner: dict[int, int] = {}
    scores = [0] * n
    for i, rec in enumerate(state):
        neigh: dict[int, int] = {}
        for a in rec:
            j = owner.setdefault(a, i)
            if j != i:
                neigh[j] = neigh.get(j, 0) + 1
        for j, mult in neigh.items():
            if mult > scores[i]:
                scores[i] = mult
            if mult > scores[j]:
                scores[j] = mult
    best = max(range(n), key=lambda i: scores[i])
    return best


def _finish(child: tuple, loops: int, memo: SkeinMemo) -> LaurentPoly:
    if child:
        return _DELTA ** loops * _bracket_rec(child, memo)
    return _DELTA ** (loops - 1)


def _bracket_rec(state: tuple, memo: SkeinMemo) -> LaurentPoly:
    key = _canonical_state(state)
    cached = memo.get(key)
    if cached is not None:
        return cached

    kink = _find_kink(state)
    if kink is not None:
        i, s = kink
        factor = _MINUS_A3 if s in (0, 2) else _MINUS_A3_INV
        child, loops = _remove_through(state, i)
        value = factor * _finish(child, loops, memo)
    else:
        bigon = _find_bigon(state)
        if bigon is not None:
            i1, i2 = bigon
            work = list(state)
            loops = _glue_pairs(work, i1, ((0, 2), (1, 3)))
            loops += _glue_pairs(work, i2, ((0, 2), (1, 3)))
            child = tuple(r for j, r in enumerate(work) if j not in (i1, i2))
            value = _finish(child, loops, memo)
        else:
            pieces = _split_pieces(state)
            if len(pieces) > 1:
                value = _DELTA ** (len(pieces) - 1)
                for piece in pieces:
                    value = value * _bracket_rec(piece, memo)
            else:
                i = _pick_crossing(state)
                child_a, loops_a = _smooth(state, i, "A")
                child_b, loops_b = _smooth(state, i, "B")
                value = (_A * _finish(child_a, loops_a, memo)
                         + _A_INV * _finish(child_b, loops_b, memo))
    memo.put(key, value)
    return value


def bracket_memoized(d: Diagram, max_crossings: int = DEFAULT_ENGINE_CAP,
                     memo: SkeinMemo | None = None) -> LaurentPoly:
    n = d.n_crossings
    if n > max_crossings:
        raise ResourceLimit(f"{n} crossings exceeds the engine cap {max_crossings}")
    memo = memo if memo is not None else _bracket_memo
    if n == 0:
        if d.n_components == 0:
            return LaurentPoly.one()
        return _DELTA ** (d.n_components - 1)
    return _bracket_rec(d.crossings, memo) * _DELTA ** d.free_loops


def _normalize_bracket(d: Diagram, bracket: LaurentPoly) -> LaurentPoly:
    w = d.writhe()
    return bracket * LaurentPoly.t_pow(Fraction(3 * w, 4), 1 if w % 2 == 0 else -1)


def jones(d: Diagram, max_crossings: int = DEFAULT_ORACLE_CAP) -> LaurentPoly:
    """Jones polynomial from the state-sum bracket: ``(-A)^{-3w} <D>``
    with ``t = A^-4``."""
    return _normalize_bracket(d, bracket_state_sum(d, max_crossings))


def jones_memoized(d: Diagram, max_crossings: int = DEFAULT_ENGINE_CAP,
                   memo: SkeinMemo | None = None) -> LaurentPoly:
    """Jones polynomial via the simplifying, memoized bracket recursion."""
    return _normalize_bracket(d, bracket_memoized(d, max_crossings, memo))


# =====================================================================
# deterministic traversal of unoriented states
# =====================================================================

def _orient_state(state: tuple):
    """Walk every strand circle once, choosing directions deterministically.

    Returns (components, entries): components lists the (crossing, entry
    slot) visits of each circle in traversal order; entries maps
    ``(crossing, "u"/"o")`` to the chosen entry slot of that pass.
    """
    occ = _occurrences(state)
    used_arcs: set[int] = set()
    components = []
    entries: dict[tuple[int, str], int] = {}
    for a0 in sorted(occ):
        if a0 in used_arcs:
            continue
        comp = []
        arc = a0
        end = min(occ[a0])  # a0 flows into this end
        while True:
            used_arcs.add(arc)
            i, s = end
            comp.append((i, s))
            entries[(i, "u" if s in (0, 2) else "o")] = s
            out_slot = (s + 2) % 4
            arc = state[i][out_slot]
            (end,) = [e for e in occ[arc] if e != (i, out_slot)]
            if arc == a0:
                break
        components.append(comp)
    return components, entries


def _state_sign(entries, i: int) -> int:
    u = entries[(i, "u")]
    o = entries[(i, "o")]
    return 1 if (o - u) % 4 == 3 else -1


def _descending_base(state: tuple):
    """(first bad crossing or None, component count, self-writhe sum)."""
    components, entries = _orient_state(state)
    comp_of_pass: dict[tuple[int, str], int] = {}
    for k, comp in enumerate(components):
        for (i, s) in comp:
            comp_of_pass[(i, "u" if s in (0, 2) else "o")] = k
    bad = None
    seen: set[int] = set()
    for comp in components:
        for (i, s) in comp:
            if i in seen:
                continue
            seen.add(i)
            if s in (0, 2):
                bad = i
                break
        if bad is not None:
            break
    self_writhe = sum(
        _state_sign(entries, i)
        for i in range(len(state))
        if comp_of_pass[(i, "u")] == comp_of_pass[(i, "o")]
    )
    return bad, len(components), self_writhe


# =====================================================================
# Kauffman two-variable polynomial
# =====================================================================

def _kauffman_finish(child: tuple, loops: int, memo: SkeinMemo) -> TwoVarPoly:
    if child:
        return _DELTA_F ** loops * _kauffman_rec(child, memo)
    return _DELTA_F ** (loops - 1)


def _kauffman_rec(state: tuple, memo: SkeinMemo) -> TwoVarPoly:
    key = _canonical_state(state)
    cached = memo.get(key)
    if cached is not None:
        return cached

    kink = _find_kink(state)
    if kink is not None:
        i, s = kink
        factor = _AVAR if s in (0, 2) else _AVAR_INV
        child, loops = _remove_through(state, i)
        value = factor * _kauffman_finish(child, loops, memo)
    else:
        bigon = _find_bigon(state)
        if bigon is not None:
            i1, i2 = bigon
            work = list(state)
            loops = _glue_pairs(work, i1, ((0, 2), (1, 3)))
            loops += _glue_pairs(work, i2, ((0, 2), (1, 3)))
            child = tuple(r for j, r in enumerate(work) if j not in (i1, i2))
            value = _kauffman_finish(child, loops, memo)
        else:
            pieces = _split_pieces(state)
            if len(pieces) > 1:
                value = _DELTA_F ** (len(pieces) - 1)
                for piece in pieces:
                    value = value * _kauffman_rec(piece, memo)
            else:
                bad, circles, self_writhe = _descending_base(state)
                if bad is None:
                    # stacked unknotted circles with curls
                    value = (TwoVarPoly.a_pow(self_writhe)
                             * _DELTA_F ** (circles - 1))
                else:
                    switched = _switch_state(state, bad)
                    child_a, loops_a = _smooth(state, bad, "A")
                    child_b, loops_b = _smooth(state, bad, "B")
                    value = (-_kauffman_rec(switched, memo)
                             + _ZVAR * _kauffman_finish(child_a, loops_a, memo)
                             + _ZVAR * _kauffman_finish(child_b, loops_b, memo))
    memo.put(key, value)
    return value


def _switch_state(state: tuple, i: int) -> tuple:
    work = list(state)
    work[i] = _rotate(work[i], 1)
    return tuple(work)


def kauffman_F(d: Diagram, max_crossings: int = DEFAULT_ENGINE_CAP,
               memo: SkeinMemo | None = None) -> TwoVarPoly:
    """Two-variable Kauffman polynomial ``F = a^{-w} L``; the orientation
    of D enters only through the writhe."""
    n = d.n_crossings
    if n > max_crossings:
        raise ResourceLimit(f"{n} crossings exceeds the engine cap {max_crossings}")
    memo = memo if memo is not None else _kauffman_memo
    if n == 0:
        if d.n_components == 0:
            return TwoVarPoly.one()
        return _DELTA_F ** (d.n_components - 1)
    lam = _kauffman_rec(d.crossings, memo) * _DELTA_F ** d.free_loops
    return TwoVarPoly.a_pow(-d.writhe()) * lam


# =====================================================================
# Conway / Alexander
# =====================================================================

def _first_bad_oriented(d: Diagram):
    seen = set()
    for comp in d.components:
        for arc in comp:
            ci, s = d.head_of(arc)
            if ci in seen:
                continue
            seen.add(ci)
            if s == 0:
                return ci
    return None


def _conway_rec(d: Diagram, memo: SkeinMemo) -> LaurentPoly:
    if d.n_crossings == 0:
        return (LaurentPoly.one() if d.n_components == 1
                else LaurentPoly.zero())
    if d.free_loops:
        return LaurentPoly.zero()  # split link
    key = d.canonical_key()
    cached = memo.get(key)
    if cached is not None:
        return cached
    simplified, log = _simplify_diagram(d)
    if log:
        value = _conway_rec(simplified, memo)
    elif len(_split_pieces(d.crossings)) > 1:
        value = LaurentPoly.zero()
    else:
        bad = _first_bad_oriented(d)
        if bad is None:
            value = (LaurentPoly.one() if d.n_components == 1
                     else LaurentPoly.zero())
        else:
            switched = d.switch_crossing(bad)
            rec = d.crossings[bad]
            o = d.over_in[bad]
            smoothed = d.rewire({bad}, [(rec[0], rec[(o + 2) % 4]),
                                        (rec[o], rec[2])])
            z_term = LaurentPoly.t_pow(1) * _conway_rec(smoothed, memo)
            if d.sign(bad) == 1:
                value = _conway_rec(switched, memo) + z_term
            else:
                value = _conway_rec(switched, memo) - z_term
    memo.put(key, value)
    return value


def conway(d: Diagram, max_crossings: int = DEFAULT_ENGINE_CAP,
           memo: SkeinMemo | None = None) -> LaurentPoly:
    """Conway polynomial; the variable z occupies the t-exponent slots."""
    if d.n_crossings > max_crossings:
        raise ResourceLimit(
            f"{d.n_crossings} crossings exceeds the engine cap {max_crossings}")
    memo = memo if memo is not None else _conway_memo
    return _conway_rec(d, memo)


def alexander_from_conway(nabla: LaurentPoly) -> LaurentPoly:
    """Alexander polynomial: substitute ``z -> t^{1/2} - t^{-1/2}``."""
    z_img = (LaurentPoly.t_pow(Fraction(1, 2))
             - LaurentPoly.t_pow(Fraction(-1, 2)))
    total = LaurentPoly.zero()
    for q, c in sorted(nabla.terms.items()):
        if q % 4 or q < 0:
            raise ValueError("Conway polynomial must be polynomial in z")
        total = total + z_img ** (q // 4) * c
    return total


# =====================================================================
# skein sites
# =====================================================================

def skein_triple(d: Diagram, site: int) -> tuple[Diagram, Diagram, Diagram]:
    """The diagrams (L+, L-, L0) agreeing with D away from the site."""
    if not (0 <= site < d.n_crossings):
        raise BadSite(f"no crossing {site}")
    plus = d if d.sign(site) == 1 else d.switch_crossing(site)
    minus = d if d.sign(site) == -1 else d.switch_crossing(site)
    rec = d.crossings[site]
    o = d.over_in[site]
    zero = d.rewire({site}, [(rec[0], rec[(o + 2) % 4]), (rec[o], rec[2])])
    return plus, minus, zero


def verify_jones_skein(d: Diagram, site: int,
                       max_crossings: int = DEFAULT_ENGINE_CAP,
                       memo: SkeinMemo | None = None) -> bool:
    """Check ``t^-1 V(L+) - t V(L-) + (t^-1/2 - t^1/2) V(L0) = 0`` exactly."""
    plus, minus, zero = skein_triple(d, site)
    lhs = (LaurentPoly.t_pow(-1) * jones_memoized(plus, max_crossings, memo)
           - LaurentPoly.t_pow(1) * jones_memoized(minus, max_crossings, memo)
           + (LaurentPoly.t_pow(Fraction(-1, 2))
              - LaurentPoly.t_pow(Fraction(1, 2)))
           * jones_memoized(zero, max_crossings, memo))
    return lhs.is_zero()
