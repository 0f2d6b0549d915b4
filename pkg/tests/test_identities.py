import pytest

from su3bethe.errors import CardinalityError, SizeError
from su3bethe.field import to_float
from su3bethe.identities import highest_coeff, lemma1_pair, lemma2_pair, lemma3_lhs, lemma3_pair


@pytest.mark.parametrize("a,b", [(a, b) for a in range(4) for b in range(4)])
def test_highest_coeff_representations_agree(sampler, c, a, b):
    t_, x, s, y = sampler.sets(a, a, b, b)
    assert highest_coeff(t_, x, s, y, c, "first") == highest_coeff(t_, x, s, y, c, "second")


def test_highest_coeff_empty(c):
    assert highest_coeff((), (), (), (), c) == 1


def test_highest_coeff_errors(sampler, c):
    t_, x = sampler.sets(2, 1)
    with pytest.raises(SizeError):
        highest_coeff(t_, x, (), (), c)
    with pytest.raises(ValueError):
        highest_coeff((), (), (), (), c, "third")


@pytest.mark.parametrize("m1,m2", [(0, 0), (1, 0), (0, 2), (2, 1), (2, 2), (1, 3)])
@pytest.mark.parametrize("variant", ["old1", "old2"])
def test_lemma1(sampler, c, m1, m2, variant):
    xi, al, be = sampler.sets(m1 + m2, m1, m2)
    lhs, rhs = lemma1_pair(xi, al, be, c, variant)
    assert lhs == rhs


@pytest.mark.parametrize("m", range(5))
@pytest.mark.parametrize("variant", ["det1", "det2"])
def test_lemma2(sampler, c, m, variant):
    w, xi = sampler.sets(m, m)
    C1 = [sampler.rational() for _ in range(m)]
    C2 = [sampler.rational() for _ in range(m)]
    lhs, rhs = lemma2_pair(w, xi, C1, C2, c, variant)
    assert lhs == rhs


def test_lemma2_is_multilinear(sampler, c):
    # doubling one C1 value changes both sides by the same affine map
    m = 3
    w, xi = sampler.sets(m, m)
    C1 = [sampler.rational() for _ in range(m)]
    C2 = [sampler.rational() for _ in range(m)]
    base = lemma2_pair(w, xi, C1, C2, c)[1]
    zero = lemma2_pair(w, xi, [0] + C1[1:], C2, c)[1]
    dbl = lemma2_pair(w, xi, [2 * C1[0]] + C1[1:], C2, c)[1]
    assert dbl - base == base - zero


@pytest.mark.parametrize("m", range(5))
def test_lemma3(sampler, c, m):
    al, be = sampler.sets(m, m)
    lhs, rhs = lemma3_pair(al, be, c)
    assert lhs == rhs


def test_lemma3_float(sampler, c):
    al, be = sampler.sets(3, 3)
    ex = float(lemma3_lhs(al, be, c))
    fl = lemma3_lhs([to_float(x) for x in al], [to_float(x) for x in be], 1.0)
    assert abs(fl - ex) <= 1e-10 * abs(ex)


def test_cardinality_errors(sampler, c):
    xi, al = sampler.sets(2, 2)
    with pytest.raises(CardinalityError):
        lemma1_pair(xi, al, al, c)
    with pytest.raises(CardinalityError):
        lemma3_pair(xi, al[:1], c)
    with pytest.raises(CardinalityError):
        lemma2_pair(xi, al, [1], [1, 2], c)
