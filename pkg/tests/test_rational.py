from fractions import Fraction as F

import pytest

from mgt.errors import InfArithmeticError, InputError
from mgt.rational import INF, format_float, format_scalar, is_inf, parse_scalar


def test_parse_scalar_forms():
    assert parse_scalar("3") == 3
    assert parse_scalar("7/4") == F(7, 4)
    assert parse_scalar("0.25") == F(1, 4)
    assert parse_scalar(" 2/6 ") == F(1, 3)
    with pytest.raises(InputError):
        parse_scalar("1/0")
    with pytest.raises(InputError):
        parse_scalar("abc")


def test_format_scalar_canonical():
    assert format_scalar(F(10, 4)) == "5/2"
    assert format_scalar(F(6, 2)) == "3"
    assert format_scalar(INF) == "inf"
    assert format_float(F(1, 3)) == format(1 / 3, ".15g")


def test_inf_supported_forms():
    assert INF + F(3, 2) is INF
    assert F(3, 2) + INF is INF
    assert F(1, 2) / INF == 0
    assert INF / (INF + F(5)) == 1
    assert is_inf(INF) and not is_inf(F(1))
    assert INF > F(10**9) and not INF < F(1)


def test_inf_undefined_forms_raise():
    with pytest.raises(InfArithmeticError):
        INF * F(2)
    with pytest.raises(InfArithmeticError):
        INF - F(1)
    with pytest.raises(InfArithmeticError):
        F(1) - INF
    with pytest.raises(InfArithmeticError):
        INF / F(2)
