import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahacm.symgroup import (
    Permutation,
    coxeter_length,
    enumerate_sn,
    reduced_word,
    reduced_words,
    word_to_perm,
)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(
    lambda p: Permutation(tuple(p)))


def test_enumerate_examples():
    assert enumerate_sn(1) == (Permutation((1,)),)
    assert enumerate_sn(2) == (Permutation((1, 2)), Permutation((2, 1)))
    s3 = enumerate_sn(3)
    assert len(s3) == 6 and s3[0] == Permutation((1, 2, 3)) and s3[-1] == Permutation((3, 2, 1))
    with pytest.raises(ValueError):
        enumerate_sn(0)
    with pytest.raises(ValueError):
        enumerate_sn(9)


def test_enumerate_is_lexicographic():
    for n in range(1, 6):
        imgs = [w.images for w in enumerate_sn(n)]
        assert imgs == sorted(imgs) and len(set(imgs)) == len(imgs)


def test_length_examples():
    assert coxeter_length(Permutation.identity(3)) == 0
    assert coxeter_length(Permutation((3, 2, 1))) == 3
    assert coxeter_length(Permutation((2, 1, 3))) == 1


def test_reduced_word_examples():
    assert reduced_word(Permutation.identity(3)) == []
    assert reduced_word(Permutation.simple(3, 1)) == [1]
    # the transposition (1 3) = s_1 s_2 s_1
    assert reduced_word(Permutation.transposition(3, 1, 3)) == [1, 2, 1]


def test_reflection_s1i_words():
    for n in range(2, 6):
        for i in range(2, n + 1):
            word = list(range(1, i)) + list(range(i - 2, 0, -1))
            assert word_to_perm(word, n) == Permutation.transposition(n, 1, i)


def test_words_for_all_small_perms():
    for n in range(1, 6):
        for w in enumerate_sn(n):
            word = reduced_word(w)
            assert word_to_perm(word, n) == w
            assert len(word) == coxeter_length(w)


@given(perms)
def test_inverse_and_length(w):
    assert (w * w.inverse()).is_identity()
    assert coxeter_length(w) == coxeter_length(w.inverse())


@given(perms)
def test_alternative_words_are_reduced(w):
    for word in reduced_words(w, limit=8):
        assert word_to_perm(word, w.n) == w and len(word) == coxeter_length(w)


def test_braid_and_quadratic():
    for n in range(2, 7):
        for i in range(1, n):
            s = Permutation.simple(n, i)
            assert (s * s).is_identity()
            if i < n - 1:
                t = Permutation.simple(n, i + 1)
                assert s * t * s == t * s * t


def test_cycle():
    c = Permutation.cycle(4)
    assert [c(i) for i in range(1, 5)] == [2, 3, 4, 1]
