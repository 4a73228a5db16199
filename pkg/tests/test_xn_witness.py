"""The explicit zig-zag on X_n and what it does and does not prove.

The chain relations hold for every n, but (w_2 - w_1) ^ dx_3 ^ ... ^ dx_n is
a del-bar closed primitive of dx_1 ^ ... ^ dx_n, so the target class dies on
E_2 and the full check reports failure.
"""

from pathlib import Path

import pytest

from src.exceptions import AmbientMismatchError, FamilyParameterError
from src.services.differential import del_, del_bar
from src.services.examples import family_xn, iwasawa
from src.services.xn_witness import (
    chain_relations,
    top_form,
    top_primitive,
    verify_xn,
    witness_chain,
)
from src.storage import read_structure_file

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def x2_result():
    return verify_xn(2)


@pytest.fixture(scope="module")
def x3_result():
    return verify_xn(3)


class TestChain:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_bidegrees(self, n):
        chain = witness_chain(n)
        assert len(chain) == n
        assert [beta.bidegree() for beta in chain] == [(k, n - 1 - k) for k in range(n)]

    def test_x2_chain(self):
        assert [str(beta) for beta in witness_chain(2)] == ["~f3", "f4"]
        assert str(top_form(2)) == "f1^f2"

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_relations_hold(self, n):
        relations = chain_relations(family_xn(n), n)
        assert relations
        assert all(relations.values()), relations

    def test_relation_labels_on_x3(self):
        relations = chain_relations(family_xn(3), 3)
        assert relations["dbar beta_3 = (-1)^2 dx_2^dx_1^~dx_2"]

    def test_relation_labels_on_x4(self):
        relations = chain_relations(family_xn(4), 4)
        assert relations["dbar beta_3 = (-1)^2 dx_2^dx_1^~dx_2^~dx_3"]
        assert relations["dbar beta_4 = (-1)^3 dx_2^dx_3^dx_1^~dx_3"]
        assert not [label for label in relations if "dx_2^...^dx_2" in label]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_top_form_has_a_del_bar_closed_primitive(self, n):
        eq = family_xn(n)
        primitive = top_primitive(n)
        assert primitive.bidegree() == (n - 1, 0)
        assert not del_bar(eq, primitive)
        assert del_(eq, primitive) == top_form(n)

    def test_needs_n_at_least_two(self):
        with pytest.raises(FamilyParameterError):
            witness_chain(1)


class TestVerifyXn:
    def test_chain_is_valid(self, x2_result, x3_result):
        for result in (x2_result, x3_result):
            assert result.chain_valid
            assert result.violated_index is None
            assert result.terminal_matches

    def test_start_class_survives_to_page_n(self, x2_result, x3_result):
        assert x2_result.start_class_nonzero
        assert x3_result.start_class_nonzero

    def test_target_class_dies_on_second_page(self, x2_result, x3_result):
        for result in (x2_result, x3_result):
            assert not result.image_class_nonzero
            assert result.top_dies_at == 2

    def test_zigzag_extends_one_more_step(self, x2_result, x3_result):
        assert x2_result.lives_to == 3
        assert x3_result.lives_to == 4
        assert not x2_result.not_extendable

    def test_check_fails(self, x2_result, x3_result):
        assert not x2_result.ok
        assert not x3_result.ok

    def test_dimensions_are_reported(self, x2_result):
        assert x2_result.source_dim >= 1
        assert x2_result.target_dim >= 0

    def test_broken_equations_fail_at_first_relation(self):
        eq = read_structure_file((FIXTURES / "broken_x2.lie").read_text()).equations
        result = verify_xn(2, eq)
        assert not result.chain_valid
        assert result.violated_index == 1
        assert not result.relations["del beta_1 = -dbar beta_2"]
        assert not result.ok

    def test_wrong_ambient(self):
        with pytest.raises(AmbientMismatchError):
            verify_xn(2, iwasawa())

    def test_bad_n(self):
        with pytest.raises(FamilyParameterError):
            verify_xn(1)


@pytest.mark.slow
def test_x4():
    result = verify_xn(4)
    assert result.chain_valid
    assert result.start_class_nonzero
    assert result.top_dies_at == 2
    assert result.lives_to == 5
    assert not result.ok
