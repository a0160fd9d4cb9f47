import pytest

from forbconf.family_spec import SpecError, normalize_spec, parse_family, parse_terms
from forbconf.matrix import RMatrix, concat_copies, product
from forbconf.patterns import (
    all_columns,
    config_equal,
    family_minus,
    gen_Fabcd,
    gen_H,
    gen_I,
    gen_K2,
    gen_T,
    gen_T3,
    gen_Tfam,
)


def test_terms():
    assert parse_terms("I(2,1,0)") == [gen_I(2, 1, 0)]
    assert parse_terms("T(3,0,1)") == [gen_T(3, 0, 1)]
    assert parse_terms("T3(3,0,2,1)") == [gen_T3(3, 0, 2, 1)]
    assert parse_terms("Fabcd(1,2,2,1)") == [gen_Fabcd(1, 2, 2, 1)]
    assert parse_terms("H") == [gen_H()]
    assert parse_terms("K2") == [gen_K2()]
    assert parse_terms("allcols(3,2,1)") == [all_columns(3, 2, 1)]
    assert parse_terms("[[0,1],[1,0]]") == [RMatrix.from_rows([[0, 1], [1, 0]])]
    assert parse_terms("times(2, H)") == [concat_copies(gen_H(), 2)]
    K = parse_terms("prod([[0,1]],[[0,1]])")[0]
    assert K == gen_K2() == product(RMatrix.from_rows([[0, 1]]), RMatrix.from_rows([[0, 1]]))


def test_set_operators():
    fam = parse_family("Tfam(2,3) - Tfam(2,2)")
    expected = family_minus(gen_Tfam(2, 3), gen_Tfam(2, 2))
    assert {M.rows for M in fam} == {M.rows for M in expected}
    assert len(parse_family("Tfam(2,3) ∖ Tfam(2,2) ∪ H", 3)) == len(expected) + 1
    # left to right: (A + B) - B drops B again
    assert len(parse_family("H + K2 - H")) == 1


def test_whitespace_and_empty():
    assert parse_family(" I ( 2 , 1 , 0 ) ").members == parse_family("I(2,1,0)").members
    assert len(parse_family("")) == 0
    assert normalize_spec(" Tfam(2,3) ∖ Tfam(2,2) ∪ H ") == "Tfam(2,3)-Tfam(2,2)+H"


def test_dedup_by_config():
    fam = parse_family("I(2,1,0)+I(2,0,1)+Fabcd(0,1,1,0)")
    assert len(fam) == 1
    assert config_equal(fam.members[0], gen_I(2, 1, 0))


@pytest.mark.parametrize("bad", ["Q(1)", "I(2,1)", "I(2,1,1)", "prod(H)", "[[0,1]", "H)", "times(H,2)", "Tfam(2,3)-"])
def test_errors(bad):
    with pytest.raises(SpecError):
        parse_family(bad)


def test_alphabet_bound():
    assert parse_family("H", 3).r == 3
    with pytest.raises(SpecError):
        parse_family("I(2,2,1)", 2)
