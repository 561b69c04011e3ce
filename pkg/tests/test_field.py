import pytest

from dgql.field import PrimeField, RationalField, field_from_spec

from corpus import F3, F5, QQ


def test_field_from_spec():
    assert field_from_spec("rational") == RationalField()
    assert field_from_spec("prime 7") == PrimeField(7)

    with pytest.raises(ValueError):
        field_from_spec("prime 4")

    with pytest.raises(ValueError):
        field_from_spec("complex")


def test_parse_coefficients():
    assert QQ.parse("-3/4") == QQ(-3) / QQ(4)
    assert QQ.parse("+2") == QQ(2)
    assert F5.parse("1/2") == F5(3)

    with pytest.raises(ZeroDivisionError):
        F5.parse("1/5")

    with pytest.raises(ValueError):
        QQ.parse("x")


def test_format_keeps_prime_residues_nonnegative():
    assert F5.format(F5(-1)) == "4"
    assert QQ.format(QQ.parse("-3/4")) == "-3/4"


def test_sign_and_elements():
    assert F3.sign(3) == -F3.one
    assert QQ.sign(-2) == QQ.one
    assert len(list(F3.elements())) == 3

    with pytest.raises(TypeError):
        list(QQ.elements())


def test_spec_round_trip():
    for field in (QQ, F5):
        assert field_from_spec(field.spec) == field
