import random
from fractions import Fraction

import pytest

from crchern.chern import ring_matrix_determinant, tractor_determinant_check
from crchern.chern.tractor import _build_matrix
from crchern.cohomology import RATIONALS, RingError, make_ring


class TestDeterminant:
    def test_two_by_two(self):
        ring = make_ring([("a", 2, 5), ("b", 2, 5), ("c", 2, 5), ("d", 2, 5)], RATIONALS)
        a, b, c, d = (ring.gen(x) for x in "abcd")
        det = ring_matrix_determinant([[a, b], [c, d]])
        assert det == a * d - b * c

    def test_three_by_three_against_rule_of_sarrus(self):
        ring = make_ring([(f"x{i}", 2, 3) for i in range(9)], RATIONALS)
        x = [ring.gen(f"x{i}") for i in range(9)]
        m = [x[0:3], x[3:6], x[6:9]]
        det = ring_matrix_determinant(m)
        sarrus = (
            x[0] * x[4] * x[8]
            + x[1] * x[5] * x[6]
            + x[2] * x[3] * x[7]
            - x[2] * x[4] * x[6]
            - x[0] * x[5] * x[7]
            - x[1] * x[3] * x[8]
        )
        assert det == sarrus

    def test_scalar_matrix(self):
        ring = make_ring([("w", 2, 6)], RATIONALS)
        w = ring.gen("w")
        det = ring_matrix_determinant(
            [[w, ring.zero()], [ring.zero(), w]]
        )
        assert det == w * w

    def test_non_square_rejected(self):
        ring = make_ring([("w", 2, 6)], RATIONALS)
        with pytest.raises(RingError):
            ring_matrix_determinant([[ring.one(), ring.one()]])


class TestTractorIdentity:
    def test_family(self):
        for n in range(1, 7):
            report = tractor_determinant_check(n)
            assert report.passed, f"n={n}"

    def test_identity_shape(self):
        report = tractor_determinant_check(2)
        names = [name for name, ok in report.assertions]
        assert "det(I + s*Omega) == (1 + s*w)^(n+2) symbolically" in names
        assert report.residuals == [{"det_minus_rhs": "0"}]
        assert report.witnesses[0]["free_indeterminates"] == 5

    def test_control_depends_on_inserted_entry(self):
        report = tractor_determinant_check(3)
        flags = dict(report.assertions)
        assert flags["control with nonzero middle block fails"]
        assert flags["control failure depends on the inserted entry"]

    def test_starred_entries_cancel_in_symbolic_determinant(self):
        ring, s, w, matrix = _build_matrix(2, xi_diagonal=False)
        det = ring_matrix_determinant(matrix)
        star_indices = [ring.gen_index(f"x{i}") for i in range(1, 6)]
        for exps in det.terms:
            assert all(exps[i] == 0 for i in star_indices)

    def test_identity_is_not_a_truncation_artifact(self):
        # the top monomial s^(n+2) w^(n+2) must survive on both sides;
        # if the working truncations ever clipped it, the symbolic
        # comparison would be vacuous
        n = 3
        ring, s, w, matrix = _build_matrix(n, xi_diagonal=False)
        det = ring_matrix_determinant(matrix)
        top = [0] * len(ring.generators)
        top[ring.gen_index("s")] = n + 2
        top[ring.gen_index("w")] = n + 2
        assert det.coefficient(tuple(top)) == 1

    def test_random_point_invariance_with_seeds(self):
        # the identity evaluates equal regardless of the sampled values
        for seed in (0, 1, 2):
            assert tractor_determinant_check(2, sample_points=10, seed=seed).passed

    def test_direct_evaluation_at_arbitrary_point(self):
        ring, s, w, matrix = _build_matrix(1, xi_diagonal=False)
        det = ring_matrix_determinant(matrix)
        rng = random.Random(5)
        values = {
            g.name: Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            for g in ring.generators
        }
        lhs = det.evaluate(values)
        rhs = (1 + values["s"] * values["w"]) ** 3
        assert lhs == rhs

    def test_bad_n_rejected(self):
        with pytest.raises(RingError):
            tractor_determinant_check(0)
