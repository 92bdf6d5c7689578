import pytest
from pydantic import ValidationError

from critgroup.core.exceptions import InfiniteCriticalGroupError, PreconditionError, UnsupportedTableError
from critgroup.services.brauer import (
    BrauerTable,
    brauer_tensor_rich,
    cartan_from_projective,
    chi_of_class,
    consistency_report,
    eigen_check,
    eigenvalue_polynomial_check,
    fusion_from_brauer,
    gaetz_cardinality,
    nullity_via_characters,
    projective_characters,
    richness_bound_check,
    sylow_gcd_check,
)
from critgroup.services.catalog import catalog_service
from critgroup.services.exact_linalg import rank
from critgroup.services.rep_data import laplacian, mckay_matrix, unit_class
from tests.conftest import S4P0_D31_MCKAY, matrix, module

TRIVIAL_TABLE = BrauerTable(p=0, group_order=1, sylow_order=1, class_labels=("e",), chi_simple=[[1]])


def test_chi_of_class(s4p2, s4p3):
    assert chi_of_class(s4p2.brauer, module(s4p2, "D31")) == (2, -1)
    assert chi_of_class(s4p2.brauer, module(s4p2, "D4")) == (1, 1)
    assert chi_of_class(s4p3.brauer, module(s4p3, "D31")) == (3, 1, -1, -1)


def test_character_at_identity_is_dimension(s5p3):
    v = module(s5p3, "P4")
    assert chi_of_class(s5p3.brauer, v)[s5p3.brauer.identity_class] == v.dimension(s5p3.datum) == 9


class TestFusionFromBrauer:
    def test_s4p2_square_of_d31(self, s4p2):
        # D31 ⊗ D31 = 2 D4 + D31
        fusion = fusion_from_brauer(s4p2.brauer)
        assert fusion[1].column(1) == (2, 1)
        assert fusion[1].to_rows() == [[0, 2], [1, 1]]

    def test_trivial_is_the_unit(self, group_algebras):
        for entry in group_algebras:
            fusion = fusion_from_brauer(entry.brauer)
            assert fusion[entry.datum.trivial_index].to_rows() == [
                [1 if i == j else 0 for j in range(entry.brauer.size)] for i in range(entry.brauer.size)
            ]

    def test_s4p0_reproduces_ordinary_mckay_matrix(self, s4p0):
        assert fusion_from_brauer(s4p0.brauer)[1] == matrix(S4P0_D31_MCKAY)

    def test_all_multiplicities_are_nonnegative_integers(self, group_algebras):
        for entry in group_algebras:
            for m in fusion_from_brauer(entry.brauer):
                assert m.is_nonnegative()
                assert all(isinstance(x, int) for x in m.entries)

    def test_s5_square_of_s3(self, s5p3):
        # S3 ⊗ S3 = S1 + S2 + 2 S3 + S5
        assert fusion_from_brauer(s5p3.brauer)[2].column(2) == (1, 1, 2, 0, 1)


class TestBrauerTable:
    def test_rejects_irrational_values(self):
        with pytest.raises(UnsupportedTableError):
            BrauerTable(p=0, group_order=3, sylow_order=1, class_labels=("e", "g", "h"),
                        chi_simple=[[1, 1, 1], [1, "z3", "z3^2"], [1, "z3^2", "z3"]])
        with pytest.raises(UnsupportedTableError):
            BrauerTable(p=0, group_order=2, sylow_order=1, class_labels=("e", "g"), chi_simple=[[1, 1], [1, -0.5]])

    def test_rejects_wrong_sylow_order(self):
        with pytest.raises(ValidationError):
            BrauerTable(p=2, group_order=24, sylow_order=4, class_labels=("e", "(ijk)"), chi_simple=[[1, 1], [2, -1]])

    @pytest.mark.parametrize("group_order, sylow_order", [(24, 0), (0, 8), (24, -8)])
    def test_rejects_non_positive_orders(self, group_order, sylow_order):
        with pytest.raises(ValidationError):
            BrauerTable(p=2, group_order=group_order, sylow_order=sylow_order, class_labels=("e", "(ijk)"),
                        chi_simple=[[1, 1], [2, -1]])

    def test_rejects_singular_table(self):
        with pytest.raises(ValidationError):
            BrauerTable(p=0, group_order=2, sylow_order=1, class_labels=("e", "g"), chi_simple=[[1, 1], [1, 1]])

    def test_identity_column_is_s(self, group_algebras):
        for entry in group_algebras:
            assert entry.brauer.dimensions() == entry.datum.s


class TestEigenvectors:
    def test_s4p2_d31_right_eigenvector(self, s4p2):
        rep, v = s4p2.datum, module(s4p2, "D31")
        p_star = projective_characters(s4p2.brauer, rep.cartan).column(1)
        assert p_star == (2, -1)
        assert mckay_matrix(rep, v).apply(p_star) == (-2, 1)

    def test_s4p3_d31_left_eigenvector(self, s4p3):
        s_g = s4p3.brauer.chi_simple.column(1)
        assert s_g == (1, 1, -1, -1)
        assert mckay_matrix(s4p3.datum, module(s4p3, "D31")).left_apply(s_g) == s_g

    def test_every_class_of_every_simple(self, group_algebras):
        for entry in group_algebras:
            rep = entry.datum
            for i in range(rep.num_simples):
                v = unit_class(rep, i)
                report = eigen_check(entry.brauer, rep, v)
                assert report.ok, report.failures
                assert not any(check.status == "skip" for check in report.checks)
                assert eigenvalue_polynomial_check(entry.brauer, rep, v)

    def test_s5_p4_eigenvalues(self, s5p3):
        assert eigenvalue_polynomial_check(s5p3.brauer, s5p3.datum, module(s5p3, "P4"))


class TestGaetz:
    def test_s4p2_d31(self, s4p2):
        assert gaetz_cardinality(s4p2.brauer, module(s4p2, "D31")) == 1

    def test_s4p3_d31(self, s4p3):
        assert gaetz_cardinality(s4p3.brauer, module(s4p3, "D31")) == 4

    def test_s5p3_p4(self, s5p3):
        assert gaetz_cardinality(s5p3.brauer, module(s5p3, "P4")) == 192

    def test_trivial_module_is_infinite(self, s4p2):
        with pytest.raises(InfiniteCriticalGroupError):
            gaetz_cardinality(s4p2.brauer, module(s4p2, "D4"))


def test_brauer_tensor_rich(s5p3, s4p3, s4p2):
    assert not brauer_tensor_rich(s5p3.brauer, module(s5p3, "S2"))
    assert brauer_tensor_rich(s4p3.brauer, module(s4p3, "D31"))
    assert not brauer_tensor_rich(s4p2.brauer, module(s4p2, "D4"))
    assert not brauer_tensor_rich(s4p3.brauer, module(s4p3, "D22"))


class TestRichnessBound:
    def test_s4p2_d31(self, s4p2):
        assert richness_bound_check(s4p2.brauer, s4p2.datum, module(s4p2, "D31"))

    def test_s4p0_d31(self, s4p0):
        v = module(s4p0, "D31")
        assert len(set(chi_of_class(s4p0.brauer, v))) == 4
        assert richness_bound_check(s4p0.brauer, s4p0.datum, v)

    def test_one_simple_table(self):
        rep = catalog_service.taft(1, 1).datum
        assert richness_bound_check(TRIVIAL_TABLE, rep, unit_class(rep, 0))

    def test_requires_tensor_rich_module(self, s5p3):
        with pytest.raises(PreconditionError):
            richness_bound_check(s5p3.brauer, s5p3.datum, module(s5p3, "S2"))


def test_sylow_gcd(s4p2, s4p3, s4p0, s5p3):
    for entry, expected in ((s4p2, 8), (s4p3, 3), (s4p0, 1), (s5p3, 3)):
        assert entry.brauer.sylow_order == expected
        assert sylow_gcd_check(entry.brauer, entry.datum)


def test_cartan_recovered_from_projective_characters(s5p3):
    assert cartan_from_projective(s5p3.brauer) == s5p3.datum.cartan
    assert projective_characters(s5p3.brauer, s5p3.datum.cartan) == s5p3.brauer.chi_projective


def test_cartan_recovery_needs_projective_characters(s4p2):
    with pytest.raises(PreconditionError):
        cartan_from_projective(s4p2.brauer)


def test_nullity_via_characters(s5p3, group_algebras):
    assert nullity_via_characters(s5p3.brauer, module(s5p3, "S2")) == 3
    for entry in group_algebras:
        rep = entry.datum
        for i in range(rep.num_simples):
            v = unit_class(rep, i)
            assert nullity_via_characters(entry.brauer, v) == rep.num_simples - rank(laplacian(rep, v))


def test_consistency_report(group_algebras):
    for entry in group_algebras:
        assert consistency_report(entry.brauer, entry.datum).ok
