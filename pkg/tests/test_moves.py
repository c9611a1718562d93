import pytest

from knotcalc.diagram import Diagram, pd_parse
from knotcalc.errors import PatternNotFound
from knotcalc.moves import (
    apply_reidemeister,
    find_r1_sites,
    find_r2_sites,
    find_r3_sites,
    reidemeister_r1_add,
    reidemeister_r1_remove,
    reidemeister_r2_add,
    reidemeister_r2_remove,
    reidemeister_r3,
    simplify,
)

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
KINKED = "X[1,2,2,1]"  # one-crossing unknot


class TestR1:
    def test_detect_kink(self):
        assert find_r1_sites(pd_parse(KINKED)) == [0]
        assert find_r1_sites(pd_parse(TREFOIL)) == []

    def test_remove_kink(self):
        res = reidemeister_r1_remove(pd_parse(KINKED), 0)
        assert res.diagram.n_crossings == 0
        assert res.diagram.free_loops == 1
        assert not res.regular

    def test_add_then_remove_roundtrip(self):
        d = pd_parse(TREFOIL)
        for sign in (1, -1):
            for arc in sorted(d.arcs):
                added = reidemeister_r1_add(d, arc, sign).diagram
                assert added.writhe() == d.writhe() + sign
                assert added.n_crossings == 4
                (site,) = find_r1_sites(added)
                back = reidemeister_r1_remove(added, site).diagram
                assert back.canonical_key() == d.canonical_key()

    def test_add_on_free_loop(self):
        d = Diagram.unknot()
        added = reidemeister_r1_add(d, None, -1).diagram
        assert added.n_crossings == 1
        assert added.writhe() == -1
        assert added.free_loops == 0

    def test_remove_rejects_non_kink(self):
        with pytest.raises(PatternNotFound):
            reidemeister_r1_remove(pd_parse(TREFOIL), 0)


class TestR2:
    def test_add_then_remove(self):
        d = pd_parse(TREFOIL)
        face = max(d.faces(), key=len)
        darts = [dart for dart in face]
        pairs = [(a, b) for a in darts for b in darts if a[0] != b[0]]
        for dart_x, dart_y in pairs[:6]:
            for x_over in (True, False):
                added = reidemeister_r2_add(d, dart_x, dart_y, x_over).diagram
                assert added.n_crossings == d.n_crossings + 2
                assert added.writhe() == d.writhe()
                sites = find_r2_sites(added)
                assert sites
                back = reidemeister_r2_remove(added, sites[0]).diagram
                assert back.canonical_key() == d.canonical_key()

    def test_add_preserves_planarity(self):
        d = pd_parse(TREFOIL)
        face = d.faces()[0]
        dart_x, dart_y = face[0], next(x for x in face if x[0] != face[0][0])
        added = reidemeister_r2_add(d, dart_x, dart_y).diagram
        v = added.n_crossings
        assert v - 2 * v + len(added.faces()) == 2

    def test_remove_rejects_bad_site(self):
        with pytest.raises(PatternNotFound):
            reidemeister_r2_remove(pd_parse(TREFOIL), (0, 1, 1, 4))

    def test_poke_needs_shared_face(self):
        d = pd_parse(TREFOIL)
        with pytest.raises(PatternNotFound):
            reidemeister_r2_add(d, (1, True), (1, False))


class TestR3:
    # trace closure of the braid s1 s2 s1: a trefoil drawn with a triangle
    BRAID_TREFOIL = "X[2,1,4,5] X[3,5,6,3] X[6,4,1,2]"

    @classmethod
    def _diagram_with_triangle(cls):
        d = pd_parse(cls.BRAID_TREFOIL)
        sites = find_r3_sites(d)
        assert sites, "the braid closure must expose an R3 triangle"
        return d, sites

    def test_r3_preserves_regular_invariants(self):
        d, sites = self._diagram_with_triangle()
        for site in sites:
            moved = reidemeister_r3(d, site).diagram
            assert moved.n_crossings == d.n_crossings
            assert moved.writhe() == d.writhe()
            v = moved.n_crossings
            assert v - 2 * v + len(moved.faces()) == 2

    def test_r3_changes_key_but_is_reversible_in_spirit(self):
        d, sites = self._diagram_with_triangle()
        moved = reidemeister_r3(d, sites[0]).diagram
        # a second R3 at the matching new site restores the diagram
        back_keys = {
            reidemeister_r3(moved, s).diagram.canonical_key()
            for s in find_r3_sites(moved)
        }
        assert d.canonical_key() in back_keys


class TestSimplify:
    def test_kink_chain(self):
        d = Diagram.unknot()
        for sign in (1, -1, 1, 1):
            d = reidemeister_r1_add(d, None if d.n_crossings == 0 else min(d.arcs), sign).diagram
        out, log = simplify(d)
        assert out.n_crossings == 0
        assert out.free_loops == 1
        assert len(log) == 4

    def test_poked_trefoil_recovers(self):
        d = pd_parse(TREFOIL)
        face = max(d.faces(), key=len)
        dart_x = face[0]
        dart_y = next(x for x in face if x[0] != dart_x[0])
        poked = reidemeister_r2_add(d, dart_x, dart_y).diagram
        out, log = simplify(poked)
        assert out.canonical_key() == d.canonical_key()
        assert log == ["R2-"]


class TestDispatcher:
    def test_apply_reidemeister(self):
        d = pd_parse(KINKED)
        res = apply_reidemeister(d, "R1-", 0)
        assert res.diagram.n_crossings == 0
        res2 = apply_reidemeister(res.diagram, "R1+", (None, 1))
        assert res2.diagram.writhe() == 1
        with pytest.raises(PatternNotFound):
            apply_reidemeister(d, "R9", 0)
