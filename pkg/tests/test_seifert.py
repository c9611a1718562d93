import random

import pytest

from knotcalc.diagram import Diagram, pd_parse
from knotcalc.errors import DimensionMismatch, MultiComponent
from knotcalc.polyring import LaurentPoly
from knotcalc.seifert import (
    SeifertMatrix,
    alexander_from_seifert,
    braid_word_from_diagram,
    determinant,
    elementary_enlarge,
    is_monic,
    normalize_alexander,
    seifert_circles,
    seifert_matrix,
    seifert_surface_genus,
    signature,
)
from knotcalc.skein import alexander_from_conway, conway, jones_memoized
from knotcalc.presentations import BraidWord, braid_to_tangle, trace_closure

TREFOIL = pd_parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
FIG8 = pd_parse("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
SIX_ONE = pd_parse("X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]")
HOPF = pd_parse("X[4,1,3,2] X[2,3,1,4]")


def _unit_multiple(p, q):
    if p.is_zero() or q.is_zero():
        return p == q
    shifted = q.shift(p.min_exponent() - q.min_exponent())
    return p == shifted or p == -shifted


class TestCirclesAndGenus:
    def test_unknot(self):
        assert seifert_surface_genus(Diagram.unknot()) == 0

    def test_trefoil(self):
        assert len(seifert_circles(TREFOIL)) == 2
        assert seifert_surface_genus(TREFOIL) == 1

    def test_six_one(self):
        assert seifert_surface_genus(SIX_ONE) == 1

    def test_multicomponent_rejected(self):
        with pytest.raises(MultiComponent):
            seifert_surface_genus(HOPF)
        with pytest.raises(MultiComponent):
            seifert_matrix(HOPF)


class TestSeifertMatrix:
    def test_unknot_empty(self):
        s = seifert_matrix(Diagram.unknot())
        assert s.size == 0
        assert alexander_from_seifert(s) == 1

    def test_trefoil(self):
        s = seifert_matrix(TREFOIL)
        assert s.size == 2
        assert alexander_from_seifert(s) == LaurentPoly.from_terms(
            [(-1, 1), (0, -1), (1, 1)])
        assert determinant(s) == 3
        assert signature(s) == -2

    def test_figure_eight(self):
        s = seifert_matrix(FIG8)
        assert alexander_from_seifert(s) == LaurentPoly.from_terms(
            [(-1, 1), (0, -3), (1, 1)])
        assert determinant(s) == 5
        assert signature(s) == 0

    def test_six_one(self):
        s = seifert_matrix(SIX_ONE)
        assert alexander_from_seifert(s) == LaurentPoly.from_terms(
            [(-1, 2), (0, -5), (1, 2)])
        assert determinant(s) == 9
        assert signature(s) == 0

    def test_intersection_form_unimodular(self, table_diagrams):
        from knotcalc.seifert import _int_det
        for name in ("3_1", "4_1", "6_1", "7_3", "8_5"):
            s = seifert_matrix(table_diagrams[name])
            n = s.size
            form = [[s.matrix[i][j] - s.matrix[j][i] for j in range(n)]
                    for i in range(n)]
            assert abs(_int_det(form)) == 1

    def test_positive_trefoil_signature(self):
        pos = trace_closure(braid_to_tangle(BraidWord(2, (1, 1, 1))))
        assert signature(seifert_matrix(pos)) == 2

    def test_braid_extraction_preserves_the_knot(self):
        strands, letters = braid_word_from_diagram(SIX_ONE)
        closure = trace_closure(braid_to_tangle(BraidWord(strands, tuple(letters))))
        assert jones_memoized(closure) == jones_memoized(SIX_ONE)


class TestAlexanderProperties:
    def test_symmetry_and_unit_value_tablewide(self, table_diagrams):
        for name, d in table_diagrams.items():
            delta = alexander_from_seifert(seifert_matrix(d))
            assert delta.invert_t() == delta, name
            assert delta.eval_at(1).re in (1, -1), name

    def test_cross_path_agreement(self, table_diagrams):
        for name in ("3_1", "4_1", "5_1", "5_2", "6_2", "7_4", "8_13"):
            d = table_diagrams[name]
            seifert_path = alexander_from_seifert(seifert_matrix(d))
            conway_path = alexander_from_conway(conway(d))
            assert _unit_multiple(seifert_path, conway_path), name


class TestMonicity:
    def test_examples(self):
        trefoil = LaurentPoly.from_terms([(-1, 1), (0, -1), (1, 1)])
        stevedore = LaurentPoly.from_terms([(-1, 2), (0, -5), (1, 2)])
        assert is_monic(trefoil)
        assert not is_monic(stevedore)
        assert is_monic(LaurentPoly.one())


def random_unimodular(rng, n):
    # product of elementary integer row operations stays unimodular
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for k in range(n):
            m[i][k] += c * m[j][k]
    return m


def congruent(s, p):
    n = len(s)
    pt_s = [[sum(p[k][i] * s[k][l] for k in range(n)) for l in range(n)]
            for i in range(n)]
    return [[sum(pt_s[i][k] * p[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


class TestSEquivalenceInvariance:
    def test_congruence_invariance(self):
        rng = random.Random(23)
        s = seifert_matrix(SIX_ONE).matrix
        base = (alexander_from_seifert(s), determinant(s), signature(s))
        for _ in range(10):
            p = random_unimodular(rng, len(s))
            moved = congruent([list(r) for r in s], p)
            assert alexander_from_seifert(moved) == base[0]
            assert determinant(moved) == base[1]
            assert signature(moved) == base[2]

    def test_enlargement_empty(self):
        grown = elementary_enlarge(SeifertMatrix((), ()), "row", [])
        assert grown.size == 2
        assert alexander_from_seifert(grown) == 1

    def test_enlargement_invariance(self):
        rng = random.Random(31)
        s = seifert_matrix(TREFOIL)
        base = (alexander_from_seifert(s), determinant(s), signature(s))
        for mode in ("row", "column"):
            grown = s
            for _ in range(2):
                x = [rng.randint(-3, 3) for _ in range(grown.size)]
                grown = elementary_enlarge(grown, mode, x)
            assert grown.size == s.size + 4
            assert alexander_from_seifert(grown) == base[0]
            assert determinant(grown) == base[1]
            assert signature(grown) == base[2]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            elementary_enlarge(seifert_matrix(TREFOIL), "row", [1])
        with pytest.raises(DimensionMismatch):
            elementary_enlarge(seifert_matrix(TREFOIL), "diag", [1, 2])
