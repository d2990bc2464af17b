"""Single-face vertex/face operator commutation, enumerated exactly."""

import pytest

from gtoric.commutation import (
    FaceVertexSpace,
    check_corner_commutation,
    check_summed_commutation,
)
from gtoric.groupoids import (
    AlgebraElement,
    make_isotropy_z2_groupoid,
    make_sis_groupoid,
)

GROUPOIDS = {
    "pair-2": make_sis_groupoid(2),
    "pair-3": make_sis_groupoid(3),
    "isotropy-z2": make_isotropy_z2_groupoid(),
}


class TestFaceOperator:
    def test_identity_holonomy_kept(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        one = g.by_label("x11")
        state = (one, one, one, one)
        assert space.apply_face(one, state) == 1

    def test_mixed_holonomy_kept(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        x11, x21, x22 = g.by_label("x11"), g.by_label("x21"), g.by_label("x22")
        x12 = g.by_label("x12")
        # holonomy x11 . x11 . x21^-1 . x22^-1 = x12
        state = (x11, x11, x21, x22)
        assert space.apply_face(x12, state) == 1
        assert space.apply_face(x11, state) == 0

    def test_incomposable_killed(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        a = g.by_label("x12")
        state = (a, a, a, a)
        assert space.apply_face(g.by_label("x11"), state) == 0


class TestVertexOperator:
    def test_identity_fixes_states(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        for corner in ("NW", "NE", "SE", "SW"):
            for state in space.basis():
                obj_constraints = space.apply_vertex(g.by_label("x11"), corner, state)
                if obj_constraints is not None:
                    assert obj_constraints == state or any(
                        g.source(s) != 1 and g.target(s) != 1 for s in state
                    )

    def test_delta_failure_annihilates(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        x22 = g.by_label("x22")
        x11 = g.by_label("x11")
        # NW corner: slot 0 incoming must compose with the inverse of g
        assert space.apply_vertex(x22, "NW", (x11, x11, x11, x11)) is None

    def test_transformation_example(self):
        g = make_sis_groupoid(2)
        space = FaceVertexSpace(g)
        x12, x11, x21, x22 = (g.by_label(l) for l in ("x12", "x11", "x21", "x22"))
        # NW with morphism x12: g1 -> g1 . x21, g2 -> x12 . g2
        out = space.apply_vertex(x12, "NW", (x12, x22, x22, x12))
        assert out == (x11, x12, x22, x12)


class TestCornerTheorem:
    @pytest.mark.parametrize("name", sorted(GROUPOIDS))
    @pytest.mark.parametrize("corner", ["NW", "NE", "SE"])
    def test_three_corners_commute(self, name, corner):
        rep = check_corner_commutation(GROUPOIDS[name], corner)
        assert rep.violations == []
        assert rep.max_deviation == 0

    @pytest.mark.parametrize("name", sorted(GROUPOIDS))
    def test_sw_violated_for_noncentral_h(self, name):
        g = GROUPOIDS[name]
        rep = check_corner_commutation(g, "SW")
        assert rep.violations

        def central(label):
            elem = AlgebraElement(g, {g.by_label(label): 1})
            return all(
                elem.convolve(AlgebraElement(g, {m: 1}))
                == AlgebraElement(g, {m: 1}).convolve(elem)
                for m in range(len(g))
            )

        violating_h = {h for _, h, _ in rep.violations}
        assert violating_h  # at least one h fails to commute with some vertex op
        assert all(not central(h) for h in violating_h)

    def test_sw_pair2_single_identity_violates(self):
        # one identity morphism alone is not central; only their sum is
        rep = check_corner_commutation(GROUPOIDS["pair-2"], "SW")
        assert {"x11", "x22"} <= {h for _, h, _ in rep.violations}

    @pytest.mark.parametrize("name", sorted(GROUPOIDS))
    def test_sw_central_sum_commutes(self, name):
        assert check_summed_commutation(GROUPOIDS[name], "SW") == 0

    @pytest.mark.parametrize("name", sorted(GROUPOIDS))
    @pytest.mark.parametrize("corner", ["NW", "NE", "SE", "SW"])
    def test_summed_model_commutes_everywhere(self, name, corner):
        assert check_summed_commutation(GROUPOIDS[name], corner) == 0

    def test_sw_single_identity_fails_where_sum_passes(self):
        g = GROUPOIDS["pair-3"]
        rep = check_corner_commutation(g, "SW")
        # each identity morphism individually clashes with some vertex op ...
        assert {"x11", "x22", "x33"} <= {h for _, h, _ in rep.violations}
        # ... yet their sum commutes
        assert check_summed_commutation(g, "SW") == 0

    def test_report_shape(self):
        g = GROUPOIDS["pair-2"]
        rep = check_corner_commutation(g, "NW")
        data = rep.to_json_dict()
        assert data["corner"] == "NW"
        assert data["pairs_checked"] == 16
        assert data["violations"] == []
