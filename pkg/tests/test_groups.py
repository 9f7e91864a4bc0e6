"""Word normal forms, Smith normal form, abelianization, class identification."""

import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from orbitrace.abelian import FgAbelianGroup, quotient_by_relations
from orbitrace.groups import (
    ClassId,
    FiniteCyclicOracle,
    FreeAbelianOracle,
    SeifertOracle,
    UnknownGenerator,
    UnrecognizedWord,
    Word,
)
from orbitrace.snf import determinant, smith_normal_form, solve_integer

from conftest import random_word, sample_oracles


def bounded23():
    return SeifertOracle(closed=False, genus=0, fibers=(2, 3), boundary=1)


# -- word_normalize ---------------------------------------------------------

def test_free_abelian_commutes():
    o = FreeAbelianOracle(2)
    w = Word.of((0, 1), (1, 1), (0, -1))
    assert o.normalize(w) == Word.of((1, 1))


def test_finite_cyclic_mod():
    o = FiniteCyclicOracle(5)
    assert o.normalize(Word.of((0, 7))) == Word.of((0, 2))
    assert o.normalize(Word.of((0, -1))) == Word.of((0, 4))
    assert o.normalize(Word.of((0, 5))).is_empty


def test_seifert_fiber_fold():
    o = bounded23()
    g1 = o.fiber_gen(1)
    assert o.power(g1, 3) == Word.of((0, 1), (o.fiber_ids[0], 1))  # gamma0 * g1
    assert o.power(g1, 2) == o.gamma0
    assert o.power(g1, -1) == Word.of((0, -1), (o.fiber_ids[0], 1))


def test_unknown_generator_rejected():
    o = FreeAbelianOracle(1)
    with pytest.raises(UnknownGenerator):
        o.normalize(Word.of((3, 1)))


@pytest.mark.parametrize("oracle", sample_oracles(), ids=str)
def test_normalize_idempotent_and_multiplicative(oracle):
    rng = random.Random(11)
    for _ in range(200):
        u = random_word(oracle, rng)
        v = random_word(oracle, rng)
        nu, nv = oracle.normalize(u), oracle.normalize(v)
        assert oracle.normalize(nu) == nu
        assert oracle.mul(u, v) == oracle.mul(nu, nv)
        assert oracle.mul(u, oracle.inverse(u)).is_empty


# -- smith normal form ------------------------------------------------------

def test_snf_diag_2_3():
    s, _u, _v = smith_normal_form([[2, 0], [0, 3]])
    assert [s[0][0], s[1][1]] == [1, 6]


def test_snf_zero_matrix():
    s, u, v = smith_normal_form([[0, 0], [0, 0]])
    assert s == [[0, 0], [0, 0]]
    assert u == [[1, 0], [0, 1]] and v == [[1, 0], [0, 1]]


def test_snf_2x2_example():
    # gcd of entries 2 and |det| = 8 force diag(2, 4)
    m = [[2, 4], [6, 8]]
    assert gcd(2, gcd(4, gcd(6, 8))) == 2 and abs(determinant(m)) == 8
    s, _u, _v = smith_normal_form(m)
    assert [s[0][0], s[1][1]] == [2, 4]


@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4),
        min_size=1,
        max_size=4,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
@settings(max_examples=60, deadline=None)
def test_snf_random_verified(rows):
    # the decomposition self-verifies U M V = S, divisibility, unimodularity
    smith_normal_form(rows)


def test_solve_integer():
    assert solve_integer([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_integer([[2]], [3]) is None
    x = solve_integer([[1, 1]], [5])
    assert x is not None and x[0] + x[1] == 5


# -- abelianization ---------------------------------------------------------

def test_poincare_homology_trivial():
    o = SeifertOracle(closed=True, genus=0, fibers=((2, 1), (3, 1), (5, 1)), b=1)
    group, _ = o.abelianization()
    assert group.is_trivial


def test_torus_times_circle_homology():
    o = SeifertOracle(closed=True, genus=1, fibers=(), b=0)
    group, images = o.abelianization()
    assert group == FgAbelianGroup(3)
    gam = o.abelianize_word(o.gamma0)
    assert sorted(abs(x) for x in gam.free) == [0, 0, 1]  # a basis vector


def test_finite_cyclic_homology():
    group, images = FiniteCyclicOracle(6).abelianization()
    assert group == FgAbelianGroup(0, (6,))
    assert images[0].torsion == (1,)


@pytest.mark.parametrize(
    "oracle",
    [
        bounded23(),
        SeifertOracle(closed=True, genus=1, fibers=((2, 1), (3, 1)), b=0),
        SeifertOracle(closed=True, genus=0, fibers=((2, 1), (3, 1), (5, 1)), b=1),
        SeifertOracle(closed=False, genus=1, fibers=(3, 4), boundary=2),
    ],
    ids=str,
)
def test_fiber_relation_in_homology(oracle):
    gam = oracle.abelianize_word(oracle.gamma0)
    for j, mu in enumerate(oracle.mus, start=1):
        assert oracle.abelianize_word(oracle.fiber_gen(j)).scaled(mu) == gam


def test_quotient_no_relations():
    group, images = quotient_by_relations(3, [])
    assert group == FgAbelianGroup(3)
    assert [e.free for e in images] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


# -- class_id ----------------------------------------------------------------

def test_class_exceptional_negative_power():
    o = SeifertOracle(closed=False, genus=0, fibers=(5,), boundary=1)
    cid = o.class_id(o.power(o.fiber_gen(1), -2))
    assert cid == ClassId.exceptional(1, 3, -1)


def test_class_central():
    o = bounded23()
    assert o.class_id(o.power(o.gamma0, 3)) == ClassId.central(3)
    assert o.class_id(Word()) == ClassId.central(0)


def test_class_free_abelian():
    o = FreeAbelianOracle(1)
    assert o.class_id(Word.of((0, 4))) == ClassId.abelian((4,))


def test_central_exceptional_never_collide():
    o = bounded23()
    seen = set()
    for k in range(-2, 3):
        seen.add(o.class_id(o.power(o.gamma0, k)))
        for j, mu in enumerate(o.mus, start=1):
            for i in range(1, mu):
                w = o.mul(o.power(o.gamma0, k), o.power(o.fiber_gen(j), i))
                seen.add(o.class_id(w))
    kinds = [c.kind for c in seen]
    assert len(seen) == 5 + 5 * 3  # 5 central + (1 + 2) exceptional per offset
    assert kinds.count("central") == 5


def test_closed_oracle_rejects_mixed_words():
    o = SeifertOracle(closed=True, genus=1, fibers=((2, 1), (3, 1)), b=0)
    mixed = o.mul(o.fiber_gen(1), o.fiber_gen(2))
    with pytest.raises(UnrecognizedWord):
        o.class_id(mixed)


def test_conjugation_preserves_class_bounded():
    o = SeifertOracle(closed=False, genus=1, fibers=(2, 3), boundary=2)
    rng = random.Random(5)
    targets = [
        o.fiber_gen(1),
        o.power(o.fiber_gen(2), 2),
        o.mul(o.gamma0, o.fiber_gen(1)),
        o.mul(o.fiber_gen(1), o.fiber_gen(2)),
        o.mul(o.fiber_gen(1), o.generator(o.gen_id("d1")), o.fiber_gen(2)),
    ]
    for w in targets:
        cid, h = o.class_with_conjugator(w)
        assert o.mul(h, o.class_representative(cid), o.inverse(h)) == o.normalize(w)
        for _ in range(8):
            c = random_word(o, rng, max_len=4, max_exp=2)
            conj = o.conjugate(c, w)
            cid2, h2 = o.class_with_conjugator(conj)
            assert cid2 == cid
            assert o.mul(h2, o.class_representative(cid2), o.inverse(h2)) == o.normalize(conj)


# -- the bounded word problem against an independent oracle ------------------

def _quotient_normal_form(oracle, word):
    """Normal form in the free product (group mod its central fiber class)."""
    mus = oracle._mu_of_gen
    stack = []
    for g, e in word.syllables:
        if g == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
        if g in mus:
            e %= mus[g]
        if e:
            stack.append((g, e))
    return tuple(stack)


def _gamma_weight(oracle, word):
    """The homomorphism gamma0 -> 1, g_j -> 1/mu_j, free generators -> 0."""
    from fractions import Fraction

    total = Fraction(0)
    for g, e in word.syllables:
        if g == 0:
            total += e
        elif g in oracle._mu_of_gen:
            total += Fraction(e, oracle._mu_of_gen[g])
    return total


def _independent_equal(oracle, a, b):
    w = a.concat(b.raw_inverse())
    return not _quotient_normal_form(oracle, w) and _gamma_weight(oracle, w) == 0


@pytest.mark.parametrize(
    "oracle",
    [bounded23(), SeifertOracle(closed=False, genus=0, fibers=(2, 2, 3), boundary=2)],
    ids=str,
)
def test_bounded_word_problem(oracle):
    rng = random.Random(23)
    for _ in range(400):
        a = random_word(oracle, rng, max_len=8, max_exp=3)
        b = random_word(oracle, rng, max_len=8, max_exp=3)
        assert oracle.equal(a, b) == _independent_equal(oracle, a, b)
        nf = oracle.normalize(a)
        assert _independent_equal(oracle, a, nf)


def test_exactness_flag():
    assert bounded23().exact
    # zero Euler number: 1 - 1/2 - 1/2 = 0
    flat = SeifertOracle(closed=True, genus=1, fibers=((2, 1), (2, 1)), b=1)
    assert flat.exact
    poincare = SeifertOracle(closed=True, genus=0, fibers=((2, 1), (3, 1), (5, 1)), b=1)
    assert not poincare.exact
