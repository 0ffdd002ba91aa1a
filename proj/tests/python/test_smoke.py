from fractions import Fraction

import pytest

import ratinterp


def x_plus_1_over_x_minus_1(point):
    (x,) = point
    return Fraction(x + 1, x - 1)


def test_one_point():
    r = ratinterp.urfunsi1(x_plus_1_over_x_minus_1, T=2, C=1)
    assert r["text"] == "(1*x1^0+1*x1^1)/(-1*x1^0+1*x1^1)"
    assert r["queries"] == 1
    assert r["mu"] == 2


@pytest.mark.parametrize("algo", ["urfunsi2", "urfunsip"])
def test_two_point(algo):
    fn = getattr(ratinterp, algo)
    bound = {"T": 2} if algo == "urfunsi2" else {"D": 1}
    r = fn(x_plus_1_over_x_minus_1, C=1, **bound)
    assert r["numerator"] == [(1, (0,)), (1, (1,))]
    assert r["denominator"] == [(-1, (0,)), (1, (1,))]
    assert r["queries"] == 2


def test_multivariate():
    def f(p):
        x1, x2 = p
        return Fraction(x1 + x2, x1 - x2)

    expected = "(-1*x1^1*x2^0-1*x1^0*x2^1)/(-1*x1^1*x2^0+1*x1^0*x2^1)"
    assert ratinterp.mrfunsi1(f, n=2, T=2, D=1, C=1, seed=3, validation_points=4)["text"] == expected
    assert ratinterp.mrfunsi2(f, n=2, D=1, Dn=1, C=1, seed=3)["text"] == expected


def test_big_coefficients_round_trip():
    c = 10**30 + 7
    r = ratinterp.urfunsi2(lambda p: Fraction(c * p[0] ** 5 - 1, 1), T=2, C=c)
    assert r["numerator"] == [(-1, (0,)), (c, (5,))]


def test_random_instance_recovered():
    text = ratinterp.random_instance(n=1, T=4, D=12, C=9, seed=5)
    r = ratinterp.urfunsi1(lambda p: ratinterp.evaluate(text, p), T=4, C=9)
    assert r["text"] == text


def test_decode():
    assert ratinterp.upoly_decode(245, 5, 2) == [(-1, 1), (2, 3)]
    assert ratinterp.upoly_decode(3, 5, 1) is None


def test_errors():
    with pytest.raises(ratinterp.Error) as e:
        ratinterp.urfunsi1(lambda p: Fraction(5 * p[0] + 1), T=1, C=1, max_iter=50)
    assert "mu-search-exhausted" in str(e.value)
    with pytest.raises(ratinterp.Error):
        ratinterp.canonical("x1/")
    with pytest.raises(TypeError):
        ratinterp.urfunsi1(lambda p: "nope", T=1, C=1)
