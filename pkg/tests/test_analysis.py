"""Exact verdicts: composition defect, quintic identities, polar axioms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coneforge.algebra import Algebra, Subspace
from coneforge.analysis import (
    degeneracy_check,
    full_report,
    killing_metrized_check,
    nonradial_hsiang_check,
    normalize_theta,
    pseudocomposition_check,
    quasicomposition_check,
    radial_hsiang_check,
    verify_polar,
)
from coneforge.catalog import (
    cartan_cubic,
    clifford_system,
    construct,
    polar_from_clifford,
    polar_zero_block,
    triple,
)
from coneforge.cubic import algebra_from_cubic
from coneforge.polynomials import parse_polynomial
from coneforge.scalars import Scalar, scalar_format

FOUR_THIRDS = Scalar(4) / Scalar(3)


def componentwise_plane() -> Algebra:
    return Algebra(2, [(0, 0, 0, 1), (1, 1, 1, 1)], commutative=True, name="RxR")


def e_and_w(alg, x):
    """Trace-adjusted quintic and its radial companion, from first principles."""
    x = [Scalar(c) for c in x]
    x2 = alg.multiply(x, x)
    x3 = alg.multiply(x2, x)
    trace = sum(
        (alg.trace_of_left(i) * c for i, c in enumerate(x)),
        Scalar(0),
    )
    e = alg.h(x2, x3) - alg.h(x2, x2) * trace
    return e, alg.h(x, x) * alg.h(x, x2)


class TestQuasicomposition:
    @pytest.mark.parametrize(
        "name, defect",
        [
            ("R", 0),
            ("C", 0),
            ("H", 0),
            ("O", 0),
            ("paraC", 0),
            ("paraH(2)", 0),
            ("cross3", 1),
            ("cross7", 1),
            ("color", 2),
        ],
    )
    def test_defect_table(self, name, defect):
        report = quasicomposition_check(construct(name))
        assert report.is_quasicomposition
        assert report.defect == defect
        assert report.kernel_dim_samples == [defect] * 3

    @pytest.mark.parametrize("d", [4, 8])
    def test_para_hurwitz_large_is_not_metrized(self, d):
        report = quasicomposition_check(construct(f"paraH({d})"))
        assert not report.is_quasicomposition
        assert report.defect is None
        assert "not metrized" in report.reason

    def test_failure_carries_a_checkable_witness(self):
        alg = construct("triple(R)")
        report = quasicomposition_check(alg)
        assert not report.is_quasicomposition
        x, y = report.witness
        xy = alg.multiply(x, y)
        lhs = alg.multiply(x, alg.multiply(alg.sigma(x), xy))
        rhs = [alg.h(x, x) * c for c in xy]
        assert lhs != rhs

    def test_sampling_path_on_large_cubic(self):
        # dim 26 exceeds the symbolic threshold, so this runs the
        # point-sampling branch and the candidate witness search
        alg = cartan_cubic(8)[1]
        report = quasicomposition_check(alg)
        assert not report.is_quasicomposition
        assert report.witness is not None

    def test_exhaustive_flag_agrees(self):
        report = quasicomposition_check(construct("color"), exhaustive=True)
        assert report.is_quasicomposition and report.defect == 2


class TestRadial:
    @pytest.mark.parametrize(
        "source",
        ["R", "C", "H", "O", "paraC", "paraH(2)", "cross3", "cross7", "color"],
    )
    def test_tripled_catalog_sources_give_four_thirds(self, source):
        report = radial_hsiang_check(construct(f"triple({source})"))
        assert report.radial == FOUR_THIRDS
        assert report.exact and not report.degenerate

    @pytest.mark.parametrize("d", [0, 1, 2])
    def test_cartan_cubics_give_thirty_six(self, d):
        report = radial_hsiang_check(cartan_cubic(d)[1])
        assert report.radial == Scalar(36)

    def test_componentwise_triple_is_not_radial(self):
        tri = triple(componentwise_plane())
        report = radial_hsiang_check(tri)
        assert report.radial is None
        # leading monomial of the first nonvanishing gradient component
        assert report.witness is not None and len(report.witness) == 4
        assert all(0 <= i < tri.dim for i in report.witness)

    def test_componentwise_ratios_disagree_at_two_points(self):
        # one point confined to the first summand gives E/W = 4/3, the
        # diagonal point gives 2/3, so no single constant can work
        tri = triple(componentwise_plane())
        e1, w1 = e_and_w(tri, [1, 0, 1, 0, 1, 0])
        e2, w2 = e_and_w(tri, [1, 1, 1, 1, 1, 1])
        assert (e1, w1) == (Scalar(24), Scalar(18))
        assert (e2, w2) == (Scalar(48), Scalar(72))
        assert e1 * w2 != e2 * w1

    def test_zero_product_reports_degenerate_zero(self):
        alg = Algebra(2, [(0, 0, 0, 0)], commutative=True)
        report = radial_hsiang_check(alg)
        assert report.radial == Scalar(0)
        assert report.degenerate

    def test_noncommutative_rejected(self):
        with pytest.raises(ValueError, match="commutative"):
            radial_hsiang_check(construct("H"))

    @given(st.fractions(min_value=Fraction(1, 4), max_value=4))
    @settings(max_examples=12, deadline=None)
    def test_product_rescaling_scales_theta_quadratically(self, s):
        base = construct("triple(R)")
        report = radial_hsiang_check(base.rescaled(Scalar(s)))
        assert report.radial == FOUR_THIRDS * Scalar(s) * Scalar(s)


class TestNonradial:
    def test_radial_shortcut_returns_theta_times_metric(self):
        alg = construct("triple(C)")
        report = nonradial_hsiang_check(alg)
        assert report.radial == FOUR_THIRDS
        for i in range(alg.dim):
            for j in range(alg.dim):
                expected = FOUR_THIRDS * alg.metric[i][j]
                assert report.nonradial_b[i][j] == expected

    def test_genuinely_nonradial_cubic(self):
        u = parse_polynomial("1*x1^2*x2+1*x1*x2^2+1*x1*x2*x3", 3)
        alg = algebra_from_cubic(u)
        report = nonradial_hsiang_check(alg)
        assert report.radial is None
        b = report.nonradial_b
        assert b is not None
        for i in range(3):
            for j in range(3):
                assert b[i][j] == b[j][i]
        # the claimed identity E = b(x,x) h(x,x^2), re-evaluated directly
        for point in ([1, 2, 3], [2, -1, 5], [-3, 1, 1]):
            x = [Scalar(c) for c in point]
            e, _ = e_and_w(alg, point)
            bxx = sum(
                (b[i][j] * x[i] * x[j] for i in range(3) for j in range(3)),
                Scalar(0),
            )
            assert e == bxx * alg.h(x, alg.multiply(x, x))

    def test_componentwise_triple_fails_with_blocking_monomial(self):
        # mixing terms |x_a|^2 (b-triple) obstruct the division; the
        # graded-lex leading one is x0^2 x1 x3 x5
        tri = triple(componentwise_plane())
        report = nonradial_hsiang_check(tri)
        assert report.radial is None and report.nonradial_b is None
        assert report.witness == (0, 0, 1, 3, 5)


class TestDegeneracy:
    def test_nondegenerate_triple(self):
        details = degeneracy_check(construct("triple(R)")).details
        assert details == {
            "exact": True,
            "product_rank": 3,
            "cube": False,
            "degenerate": False,
            "omega": None,
        }

    @pytest.mark.parametrize(
        "text, omega",
        [
            ("1*x1^3", ["1", "0"]),
            ("8*x1^3", ["2", "0"]),
            ("1*x1^3+3*x1^2*x2+3*x1*x2^2+1*x2^3", ["1", "1"]),
        ],
    )
    def test_perfect_cubes_recover_the_linear_form(self, text, omega):
        details = degeneracy_check(algebra_from_cubic(parse_polynomial(text, 2))).details
        assert details["cube"] and details["degenerate"]
        assert details["omega"] == omega

    def test_cube_with_irrational_scale_has_no_omega(self):
        details = degeneracy_check(algebra_from_cubic(parse_polynomial("2*x1^3", 2))).details
        assert details["cube"]
        assert details["omega"] is None

    def test_harmonic_cubic_agrees_on_all_three_conditions(self):
        details = degeneracy_check(cartan_cubic(0)[1]).details
        assert details["exact"]
        assert details["product_rank"] == 2
        assert not details["cube"] and not details["degenerate"]

    def test_disagreeing_conditions_raise(self):
        # x1^2 x2 is not radial: it has a nonzero trace form yet is
        # neither a cube nor single-line, so the equivalence breaks
        alg = algebra_from_cubic(parse_polynomial("1*x1^2*x2", 2))
        with pytest.raises(RuntimeError, match="disagree"):
            degeneracy_check(alg)

    def test_zero_cubic_is_trivially_degenerate(self):
        details = degeneracy_check(Algebra(2, [(0, 0, 0, 0)], commutative=True)).details
        assert details["degenerate"] and details["cube"]
        assert details["omega"] == ["0", "0"]


class TestVerifyPolar:
    @pytest.mark.parametrize("p, q", [(1, 2), (2, 3)])
    def test_catalog_polars_pass(self, p, q):
        alg = polar_from_clifford(clifford_system(p, q))
        report = verify_polar(alg, polar_zero_block(alg))
        assert report.passed
        assert report.details["dim_zero_block"] == q
        assert report.details["dim_complement"] == 2 * p
        assert report.details["pairs"] == (p, q)
        assert report.details["mutant"] == (p == q)

    def test_subspace_argument_matches_indices(self):
        alg = polar_from_clifford(clifford_system(1, 2))
        indices = polar_zero_block(alg)
        block = Subspace(alg.dim, [alg.basis_vector(i) for i in indices])
        assert verify_polar(alg, block).passed

    def test_line_block_checks_the_trace_condition(self):
        alg = polar_from_clifford(clifford_system(1, 1))
        report = verify_polar(alg, polar_zero_block(alg))
        assert report.passed
        assert report.details["dim_zero_block"] == 1
        assert report.details["mutant"]

    def test_full_block_rejected_as_improper(self):
        alg = polar_from_clifford(clifford_system(1, 2))
        with pytest.raises(ValueError, match="proper"):
            verify_polar(alg, list(range(alg.dim)))

    @pytest.mark.parametrize("third", [0, 1, 2])
    def test_each_component_of_a_hurwitz_triple_is_a_mutant_block(self, third):
        # the three square-zero summands give three distinct splittings
        alg = construct("triple(H)")
        report = verify_polar(alg, list(range(4 * third, 4 * third + 4)))
        assert report.passed
        assert report.details["mutant"]

    def test_wrong_block_fails_on_squares(self):
        alg = polar_from_clifford(clifford_system(1, 2))
        report = verify_polar(alg, [0, 1])
        assert not report.passed
        assert report.witness[0] == "zero-block-square"

    def test_partial_block_fails_on_complement_products(self):
        alg = polar_from_clifford(clifford_system(1, 2))
        report = verify_polar(alg, [2])
        assert not report.passed
        assert report.witness[0] == "complement-product"

    def test_index_validation(self):
        alg = polar_from_clifford(clifford_system(1, 2))
        with pytest.raises(ValueError, match="out of range"):
            verify_polar(alg, [2, 9])
        with pytest.raises(ValueError, match="distinct"):
            verify_polar(alg, [2, 2])


class TestKilling:
    def test_polar_killing_is_not_invariant(self):
        report = killing_metrized_check(polar_from_clifford(clifford_system(1, 2)))
        assert not report.passed
        assert report.details == {
            "invariant": False,
            "nondegenerate": True,
            "ratio": None,
        }
        assert report.witness is not None

    @pytest.mark.parametrize(
        "source, source_dim, defect",
        [("cross3", 3, 1), ("cross7", 7, 1), ("color", 6, 2), ("O", 8, 0)],
    )
    def test_tripled_sources_match_the_trace_constant(self, source, source_dim, defect):
        report = killing_metrized_check(construct(f"triple({source})"))
        assert report.passed
        assert report.details["ratio"] == scalar_format(Scalar(2 * (source_dim - defect)))

    @pytest.mark.parametrize(
        "name, label", [("triple(cross3)", "exceptional"), ("triple(R)", "mutant")]
    )
    def test_peirce_data_annotates_the_verdict(self, name, label):
        from coneforge.numeric import peirce

        alg = construct(name)
        report = killing_metrized_check(alg, peirce(alg))
        assert report.details["classification"] == label


class TestPseudocomposition:
    def test_para_complex(self):
        theta, eikonal = pseudocomposition_check(construct("paraC"))
        assert theta == Scalar(1) and eikonal

    def test_harmonic_cubic(self):
        theta, eikonal = pseudocomposition_check(cartan_cubic(0)[1])
        assert theta == Scalar(36) and eikonal

    def test_triple_has_no_common_quotient(self):
        assert pseudocomposition_check(construct("triple(R)")) is None

    @staticmethod
    def remetrized_para_complex(diagonal: Scalar) -> Algebra:
        base = construct("paraC")
        entries = [
            (i, j, k, c)
            for (i, j), col in base.table.items()
            if i <= j
            for k, c in col.items()
        ]
        metric = [[diagonal, Scalar(0)], [Scalar(0), diagonal]]
        return Algebra(2, entries, metric=metric, commutative=True)

    def test_indefinite_metric_is_not_eikonal(self):
        theta, eikonal = pseudocomposition_check(self.remetrized_para_complex(Scalar(-1)))
        assert theta == Scalar(-1)
        assert not eikonal

    @given(st.fractions(min_value=Fraction(1, 3), max_value=5))
    @settings(max_examples=10, deadline=None)
    def test_metric_rescaling_inverts_theta_prime(self, lam):
        theta, _ = pseudocomposition_check(self.remetrized_para_complex(Scalar(lam)))
        assert theta == Scalar(1) / Scalar(lam)


class TestNormalize:
    def test_harmonic_cubic_lands_on_four_thirds(self):
        rescaled = normalize_theta(cartan_cubic(0)[1])
        assert rescaled.name == "normalized(cartan(0))"
        assert radial_hsiang_check(rescaled).radial == FOUR_THIRDS

    def test_already_normalized_is_fixed(self):
        alg = construct("triple(R)")
        assert radial_hsiang_check(normalize_theta(alg)).radial == FOUR_THIRDS

    @given(st.fractions(min_value=Fraction(1, 3), max_value=3))
    @settings(max_examples=10, deadline=None)
    def test_any_quadratic_rescale_normalizes_back(self, s):
        alg = construct("triple(R)").rescaled(Scalar(s))
        report = radial_hsiang_check(normalize_theta(alg))
        assert report.radial == FOUR_THIRDS

    def test_unrepresentable_square_root_is_explained(self):
        with pytest.raises(ValueError, match="not representable"):
            normalize_theta(construct("triple(R)"), theta=Scalar(2))

    def test_nonpositive_theta_rejected(self):
        with pytest.raises(ValueError, match="positive theta"):
            normalize_theta(construct("triple(R)"), theta=Scalar(Fraction(-4, 3)))

    def test_nonradial_input_rejected(self):
        with pytest.raises(ValueError, match="radial"):
            normalize_theta(triple(componentwise_plane()))


class TestFullReport:
    def test_tripled_cross3_summary(self):
        report = full_report(construct("triple(cross3)"))
        assert report["dim"] == 9 and report["exact"]
        assert report["metrized"]["pass"] and report["killing"]["pass"]
        assert not report["quasicomposition"]["pass"]
        assert report["hsiang"]["radial"] == "4/3"
        assert report["pseudocomposition"] is None
        spectral = report["spectral"]
        assert (spectral["n1"], spectral["n2"], spectral["d"]) == (0, 5, 1)
        assert spectral["source_defect"] == 1
        assert spectral["defect_matches_d"]
        assert report["killing"]["classification"] == "exceptional"

    def test_octonions_skip_commutative_sections(self):
        report = full_report(construct("O"))
        assert report["quasicomposition"]["pass"]
        assert report["quasicomposition"]["defect"] == 0
        assert "hsiang" not in report
        assert "spectral" not in report

    def test_spectral_can_be_disabled(self):
        report = full_report(construct("triple(R)"), spectral=False)
        assert "spectral" not in report
