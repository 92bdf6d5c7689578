import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st
from pydantic import ValidationError

from critgroup.core.exceptions import MalformedInputError, PreconditionError, ShapeMismatchError
from critgroup.services.catalog import catalog_service
from critgroup.services.exact_linalg import IntMatrix, outer_product
from critgroup.services.rep_data import (
    ModuleClass,
    RepDatum,
    is_rich,
    laplacian,
    mckay_matrix,
    module_from_label,
    projective_class,
    regular_class,
    regular_mckay,
    tensor_power_sum,
    unit_class,
    validate,
)
from tests.conftest import S4P0_D31_MCKAY, matrix, module


class TestMcKayMatrix:
    def test_s4p2_d31(self, s4p2):
        assert mckay_matrix(s4p2.datum, module(s4p2, "D31")).to_rows() == [[0, 2], [1, 1]]

    def test_trivial_module_acts_as_identity(self, group_algebras):
        for entry in group_algebras:
            rep = entry.datum
            assert mckay_matrix(rep, unit_class(rep, rep.trivial_index)) == IntMatrix.identity(rep.num_simples)

    def test_taft_simple_is_cyclic_shift(self):
        rep = catalog_service.taft(3, 3).datum
        assert mckay_matrix(rep, unit_class(rep, 1)).to_rows() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]

    def test_s4p3_d31(self, s4p3):
        assert mckay_matrix(s4p3.datum, module(s4p3, "D31")).to_rows() == [
            [0, 2, 0, 1],
            [1, 1, 0, 1],
            [0, 1, 0, 2],
            [0, 1, 1, 1],
        ]

    def test_length_mismatch(self, s4p2):
        with pytest.raises(ShapeMismatchError):
            mckay_matrix(s4p2.datum, ModuleClass(c=(1, 0, 0)))


class TestLaplacian:
    def test_s4p2_d31(self, s4p2):
        assert laplacian(s4p2.datum, module(s4p2, "D31")).to_rows() == [[2, -2], [-1, 1]]

    def test_one_simple_trivial(self):
        rep = catalog_service.taft(1, 1).datum
        assert laplacian(rep, unit_class(rep, 0)).to_rows() == [[0]]

    def test_s4p0_d31(self, s4p0):
        expected = IntMatrix.identity(5).scale(3) - matrix(S4P0_D31_MCKAY)
        assert laplacian(s4p0.datum, module(s4p0, "D31")) == expected
        assert expected.to_rows() == [
            [3, -1, 0, 0, 0],
            [-1, 2, -1, -1, 0],
            [0, -1, 3, -1, 0],
            [0, -1, -1, 2, -1],
            [0, 0, 0, -1, 3],
        ]


def test_regular_class_dimension(s4p3):
    taft = catalog_service.taft(2, 2).datum
    assert regular_class(taft).c == (2, 2)
    assert regular_class(taft).dimension(taft) == 4
    assert regular_class(s4p3.datum).c == (3, 3, 3, 3)
    assert regular_class(s4p3.datum).dimension(s4p3.datum) == 24


def test_regular_class_of_one_simple_datum():
    rep = catalog_service.taft(1, 1).datum
    assert regular_class(rep).c == (1,)
    assert regular_class(rep).dimension(rep) == 1


def test_regular_mckay(s4p2):
    assert regular_mckay(s4p2.datum).to_rows() == [[8, 16], [8, 16]]
    assert regular_mckay(catalog_service.taft(1, 1).datum).to_rows() == [[1]]
    assert regular_mckay(catalog_service.radford(4, 1).datum) == IntMatrix.from_rows([[2] * 4] * 4)


def test_regular_mckay_three_ways(group_algebras):
    for entry in group_algebras:
        rep = entry.datum
        c_s = rep.cartan.apply(rep.s)
        assert outer_product(c_s, rep.s) == regular_mckay(rep)
        assert mckay_matrix(rep, regular_class(rep)) == regular_mckay(rep)


class TestValidate:
    def test_bundled_s4p3_passes(self, s4p3):
        report = validate(s4p3.datum)
        assert report.ok
        assert {check.name for check in report.checks} >= {"s^T p = d", "p^T = s^T C", "C s = p", "fusion[trivial] = I"}

    def test_perturbed_p_fails_dimension_check(self, s4p3):
        p = list(s4p3.datum.p)
        p[2] += 1
        report = validate(s4p3.datum.model_copy(update={"p": tuple(p)}))
        assert "s^T p = d" in {check.name for check in report.failures}

    def test_radford_with_cartan_passes(self):
        rep = catalog_service.radford(4, 1).datum
        assert rep.cartan.to_rows() == [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]
        assert validate(rep).ok

    def test_missing_cartan_and_dimension_are_skipped(self):
        rep = catalog_service.taft(3, 1).datum.model_copy(update={"dimension": None})
        report = validate(rep)
        assert report.ok
        skipped = {check.name for check in report.checks if check.status == "skip"}
        assert {"s^T p = d", "C s = p"} <= skipped

    def test_broken_fusion_is_reported(self, s4p2):
        fusion = list(s4p2.datum.fusion)
        fusion[1] = matrix([[0, 2], [1, 2]])
        report = validate(s4p2.datum.model_copy(update={"fusion": tuple(fusion)}))
        names = {check.name for check in report.failures}
        assert "s^T fusion[1] = s_t s^T" in names


def test_rep_datum_structure_is_checked():
    with pytest.raises(ValidationError):
        RepDatum(label="x", num_simples=2, trivial_index=0, s=(1, 1), p=(1, 1), fusion=(IntMatrix.identity(2),))
    with pytest.raises(ValidationError):
        RepDatum(label="x", num_simples=1, trivial_index=1, s=(1,), p=(1,), fusion=(IntMatrix.identity(1),))


def test_module_class_rejects_negative_entries():
    with pytest.raises(ValidationError):
        ModuleClass(c=(1, -1))


@st.composite
def module_pairs(draw, size):
    entries = st.lists(st.integers(0, 3), min_size=size, max_size=size)
    return ModuleClass(c=tuple(draw(entries))), ModuleClass(c=tuple(draw(entries)))


@given(module_pairs(4))
def test_mckay_matrix_is_linear(pair):
    rep = catalog_service.group_algebra("s4p3").datum
    v, w = pair
    assert mckay_matrix(rep, v + w) == mckay_matrix(rep, v) + mckay_matrix(rep, w)


@pytest.mark.parametrize("key", ["s4p2", "s4p3", "s4p0", "s5p3"])
@given(data=st.data())
@hypothesis_settings(max_examples=40, deadline=None)
def test_s_and_p_are_null_vectors_of_laplacian(key, data):
    rep = catalog_service.group_algebra(key).datum
    c = data.draw(st.lists(st.integers(0, 3), min_size=rep.num_simples, max_size=rep.num_simples))
    lap = laplacian(rep, ModuleClass(c=tuple(c)))
    assert lap.left_apply(rep.s) == (0,) * rep.num_simples
    assert lap.apply(rep.p) == (0,) * rep.num_simples


class TestModuleFromLabel:
    def test_labels(self, s4p3, s5p3):
        rep = s4p3.datum
        assert module_from_label(rep, "D31").c == (0, 1, 0, 0)
        assert module_from_label(rep, "P(D4)").c == (2, 0, 1, 0)
        assert module_from_label(rep, "regular").c == (3, 3, 3, 3)
        assert module_from_label(rep, "0, 1, 0, 2").c == (0, 1, 0, 2)
        assert module_from_label(s5p3.datum, "P4").c == (1, 0, 0, 2, 0)

    def test_bad_tokens(self, s4p3):
        with pytest.raises(MalformedInputError):
            module_from_label(s4p3.datum, "D5")
        with pytest.raises(MalformedInputError):
            module_from_label(s4p3.datum, "1,-1,0,0")
        with pytest.raises(ShapeMismatchError):
            module_from_label(s4p3.datum, "1,0")

    def test_projective_needs_cartan(self):
        with pytest.raises(PreconditionError):
            projective_class(catalog_service.taft(2, 2).datum, 0)


def test_is_rich(s4p3, s5p3):
    assert is_rich(s4p3.datum, module(s4p3, "regular"))
    assert not is_rich(s4p3.datum, module(s4p3, "D31"))
    assert is_rich(s5p3.datum, ModuleClass(c=(1, 1, 1, 1, 1)))


def test_tensor_power_sum(s4p2):
    rep = s4p2.datum
    v = module(s4p2, "D31")
    assert tensor_power_sum(rep, v, 0) == IntMatrix.identity(2)
    assert tensor_power_sum(rep, v, 1).to_rows() == [[1, 2], [1, 2]]
    assert tensor_power_sum(rep, v, 2).to_rows() == [[3, 4], [2, 5]]
