"""Shared fixtures and a reference rewriter used as an oracle.

The reference rewriter resolves the *leftmost* out-of-order pair by plain
recursion with no caching, unlike the library's rightmost-first stack
with layered caches.  Confluence of the rewriting rules means both must
produce identical normal forms on every input.
"""

import random
from fractions import Fraction

import pytest

from qdet import MatrixShape, NCPoly, normal_form
from qdet.scalars import LaurentScalar, ONE, Q_INV, QHAT


def naive_normal_form(shape, word):
    """Normal form as dict exps -> LaurentScalar, by leftmost rewriting."""
    result = {}

    def settle(word, coeff):
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a <= b:
                continue
            head, tail = word[:k], word[k + 2:]
            if a[0] == b[0] or a[1] == b[1]:
                settle(head + (b, a) + tail, coeff * Q_INV)
            elif a[1] < b[1]:
                settle(head + (b, a) + tail, coeff)
            else:
                settle(head + (b, a) + tail, coeff)
                settle(head + ((b[0], a[1]), (a[0], b[1])) + tail,
                       coeff * (-QHAT))
            return
        exps = [0] * shape.ngens
        for (i, j) in word:
            exps[shape.gen_index(i, j)] += 1
        key = tuple(exps)
        acc = result.get(key)
        acc = coeff if acc is None else acc + coeff
        if acc.is_zero:
            result.pop(key, None)
        else:
            result[key] = acc

    settle(tuple(word), ONE)
    return result


def random_word(rng, shape, max_len):
    length = rng.randint(0, max_len)
    return tuple((rng.randint(1, shape.m), rng.randint(1, shape.n))
                 for _ in range(length))


def random_scalar(rng, max_terms=2, exp_range=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randint(-exp_range, exp_range)] = Fraction(
            rng.randint(-4, 4), rng.randint(1, 3))
    return LaurentScalar(terms)


def random_poly(rng, shape, max_terms=3, max_degree=3):
    p = NCPoly.zero(shape)
    for _ in range(rng.randint(1, max_terms)):
        word = random_word(rng, shape, max_degree)
        p = p + normal_form(shape, word).scale(random_scalar(rng))
    return p


@pytest.fixture
def rng():
    return random.Random(987123554)


@pytest.fixture
def shape22():
    return MatrixShape(2, 2)


@pytest.fixture
def shape33():
    return MatrixShape(3, 3)


@pytest.fixture
def shape34():
    return MatrixShape(3, 4)
