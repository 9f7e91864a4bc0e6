"""Boundaries, traces, the class decomposition, and the component reduction."""

import random

import pytest

from orbitrace.groups import ClassId, FreeAbelianOracle, SeifertOracle, Word
from orbitrace.groupring import GroupRingElement, GroupRingMatrix
from orbitrace.hochschild import (
    Chain1,
    Chain2,
    IrreducibleTerm,
    NotACycle,
    NotCentral,
    NotInverse,
    boundary,
    canonical_decompose,
    central_action,
    dennis_trace,
    epsilon_star,
    is_cycle,
    reduce_class,
    split_components,
    trace_T1,
)

from conftest import random_word, sample_oracles


def elt(o, w, n=1):
    return GroupRingElement.from_word(o, w, n)


def chain1(o, *terms):
    return Chain1.from_terms(o, terms)


def bounded23():
    return SeifertOracle(closed=False, genus=0, fibers=(2, 3), boundary=1)


# -- boundary ----------------------------------------------------------------

def test_boundary_abelian_cycles():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    assert boundary(chain1(o, (x, o.power(x, 2), 1))).is_zero


def test_boundary_degree_two():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    c = Chain2.from_terms(o, [(x, x, Word(), 1)])
    assert boundary(c) == chain1(o, (x, x, 2), (o.power(x, 2), Word(), -1))


def test_boundary_noncommuting():
    o = bounded23()
    g1, g2 = o.fiber_gen(1), o.fiber_gen(2)
    d = boundary(chain1(o, (g1, g2, 1)))
    assert d == elt(o, o.mul(g2, g1)) - elt(o, o.mul(g1, g2))
    assert not d.is_zero


@pytest.mark.parametrize("oracle", sample_oracles(), ids=str)
def test_boundary_squared_zero(oracle):
    rng = random.Random(31)
    for _ in range(60):
        c = Chain2.from_terms(
            oracle,
            [
                (
                    random_word(oracle, rng, 3, 2),
                    random_word(oracle, rng, 3, 2),
                    random_word(oracle, rng, 3, 2),
                    rng.randint(-2, 2),
                )
                for _ in range(3)
            ],
        )
        assert boundary(boundary(c)).is_zero


# -- trace_T1 and the Dennis trace -------------------------------------------

def test_trace_T1_scalar():
    o = FreeAbelianOracle(1)
    g = o.generator(0)
    a = GroupRingMatrix(o, ((elt(o, g),),))
    b = GroupRingMatrix(o, ((elt(o, o.inverse(g)),),))
    assert trace_T1(a, b) == chain1(o, (g, o.inverse(g), 1))


def test_trace_T1_diagonal():
    o = FreeAbelianOracle(2)
    x, y = o.generator(0), o.generator(1)
    a = GroupRingMatrix.diagonal(o, (elt(o, x), elt(o, y)))
    b = GroupRingMatrix.diagonal(o, (elt(o, o.inverse(x)), elt(o, o.inverse(y))))
    t = trace_T1(a, b)
    assert t == chain1(o, (x, o.inverse(x), 1), (y, o.inverse(y), 1))
    assert is_cycle(t)


def test_trace_T1_rejects_noncycle():
    o = bounded23()
    a = GroupRingMatrix(o, ((elt(o, o.fiber_gen(1)),),))
    b = GroupRingMatrix(o, ((elt(o, o.fiber_gen(2)),),))
    with pytest.raises(NotACycle):
        trace_T1(a, b)


def test_trace_cycle_flag_matches_boundary():
    # whenever trace_T1 accepts, the emitted chain has zero boundary
    o = bounded23()
    rng = random.Random(13)
    accepted = 0
    for _ in range(100):
        a = GroupRingMatrix(o, ((elt(o, random_word(o, rng, 3, 2), rng.choice((-1, 1))),),))
        b = GroupRingMatrix(o, ((elt(o, random_word(o, rng, 3, 2), rng.choice((-1, 1))),),))
        try:
            t = trace_T1(a, b)
        except NotACycle:
            continue
        accepted += 1
        assert is_cycle(t)
    assert accepted > 0


def test_dennis_trace_single_word():
    o = FreeAbelianOracle(1)
    g = o.generator(0)
    u = GroupRingMatrix(o, ((elt(o, g),),))
    ui = GroupRingMatrix(o, ((elt(o, o.inverse(g)),),))
    assert dennis_trace(u, ui) == chain1(o, (g, o.inverse(g), 1))


def test_dennis_trace_minus_one():
    o = FreeAbelianOracle(1)
    u = GroupRingMatrix(o, ((GroupRingElement.one(o, -1),),))
    t = dennis_trace(u, u)
    assert t == chain1(o, (Word(), Word(), 1))
    assert reduce_class(t).is_zero


def test_dennis_trace_elementary_matrix():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    one, z = GroupRingElement.one(o), GroupRingElement.zero(o)
    u = GroupRingMatrix(o, ((one, elt(o, x)), (z, one)))
    ui = GroupRingMatrix(o, ((one, elt(o, x, -1)), (z, one)))
    t = dennis_trace(u, ui)
    assert t == chain1(o, (Word(), Word(), 2))
    assert reduce_class(t).is_zero


def test_dennis_trace_not_inverse():
    o = FreeAbelianOracle(1)
    u = GroupRingMatrix(o, ((elt(o, o.generator(0)),),))
    with pytest.raises(NotInverse):
        dennis_trace(u, u)


def test_dennis_trace_diagonal_lands_in_trivial_component():
    rng = random.Random(41)
    for oracle in sample_oracles():
        words = [random_word(oracle, rng, 3, 2) for _ in range(3)]
        signs = [rng.choice((1, -1)) for _ in range(3)]
        u = GroupRingMatrix.diagonal(
            oracle, tuple(elt(oracle, w, s) for w, s in zip(words, signs))
        )
        ui = GroupRingMatrix.diagonal(
            oracle,
            tuple(elt(oracle, oracle.inverse(w), s) for w, s in zip(words, signs)),
        )
        cc = reduce_class(dennis_trace(u, ui))
        for comp in cc.components:
            kind = comp.class_id.kind
            assert kind in ("central", "abelian")
            if kind == "central":
                assert comp.class_id.data[0] == 0
            else:
                assert not any(comp.class_id.data)


# -- central action -----------------------------------------------------------

def test_central_action_formula():
    o = bounded23()
    g1 = o.fiber_gen(1)
    c = chain1(o, (g1, g1, 1))
    acted = central_action(o.gamma0, c)
    assert acted == chain1(o, (g1, o.mul(g1, o.inverse(o.gamma0)), 1))


def test_central_action_identity_and_composition():
    o = bounded23()
    g2 = o.fiber_gen(2)
    c = chain1(o, (g2, o.power(g2, -4), 2))
    assert central_action(Word(), c) == c
    twice = central_action(o.gamma0, central_action(o.gamma0, c))
    assert twice == central_action(o.power(o.gamma0, 2), c)


def test_central_action_requires_central():
    o = bounded23()
    with pytest.raises(NotCentral):
        central_action(o.fiber_gen(1), chain1(o, (o.gamma0, o.gamma0, 1)))


def test_central_action_shifts_component_index():
    o = bounded23()
    g1 = o.fiber_gen(1)
    for k in range(-2, 3):
        c = chain1(o, (g1, o.mul(o.inverse(g1), o.power(o.gamma0, k)), 1))
        decomposed = canonical_decompose(c)
        assert set(decomposed) == {ClassId.central(k)}
        shifted = canonical_decompose(central_action(o.gamma0, c))
        assert set(shifted) == {ClassId.central(k - 1)}


# -- canonical decomposition ---------------------------------------------------

def test_canonical_decompose_markers():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    c = chain1(o, (x, o.power(x, -2), 1))
    parts = canonical_decompose(c)
    assert set(parts) == {ClassId.abelian((-1,))}


def test_canonical_decompose_partition():
    o = bounded23()
    g1 = o.fiber_gen(1)
    c = chain1(
        o,
        (g1, o.mul(o.inverse(g1), o.inverse(o.gamma0)), 1),
        (g1, o.power(g1, -2), 1),
    )
    parts = canonical_decompose(c)
    assert set(parts) == {ClassId.central(-1), ClassId.exceptional(1, 1, -1)}
    total = Chain1.zero(o)
    for part in parts.values():
        total = total + part
    assert total == c


# -- reduce_class --------------------------------------------------------------

def test_reduce_class_abelian_example():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    c = chain1(o, (x, x, 3), (o.power(x, 2), Word(), 1))
    cc = reduce_class(c)
    comp = cc.get(ClassId.abelian((2,)))
    assert comp is not None and comp.h1_value.free == (5,)


def test_reduce_class_inverse_marker():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    cc = reduce_class(chain1(o, (x, o.power(x, -2), -1)))
    comp = cc.get(ClassId.abelian((-1,)))
    assert comp is not None and comp.h1_value.free == (-1,)


def test_reduce_class_kills_identity_slot():
    o = FreeAbelianOracle(1)
    assert reduce_class(chain1(o, (Word(), o.generator(0), 1))).is_zero


def test_reduce_class_rewrites_inverse_first_slot():
    # g^{-1} (x) g g^{-i} carries the same class value as -g (x) g^{-1} g^{-i}
    o = bounded23()
    g2 = o.fiber_gen(2)
    direct = reduce_class(chain1(o, (g2, o.power(g2, -3), -1)))
    rewritten = reduce_class(chain1(o, (o.inverse(g2), o.power(g2, -1), 1)))
    assert direct == rewritten


def test_reduce_class_transports_conjugated_markers():
    o = SeifertOracle(closed=False, genus=0, fibers=(2, 3), boundary=2)
    g1, g2 = o.fiber_gen(1), o.fiber_gen(2)
    base = chain1(o, (g1, o.power(g1, -2), 1))
    conj = chain1(
        o,
        (o.conjugate(g2, g1), o.conjugate(g2, o.power(g1, -2)), 1),
    )
    assert reduce_class(base) == reduce_class(conj)


def test_reduce_class_irreducible():
    o = bounded23()
    g1, g2 = o.fiber_gen(1), o.fiber_gen(2)
    # marker g2^2, first slot g1: g1 is not in the centralizer of g2^2
    c = chain1(o, (g1, o.mul(o.inverse(g1), o.power(g2, 2)), 1))
    with pytest.raises(IrreducibleTerm):
        reduce_class(c)


# the independent route: canonicalize an abelian 1-cycle by explicit
# degree-2 boundary moves, producing the boundary witness as it goes

def _abelian_canonical_with_witness(oracle, chain):
    witness = []
    canonical = {}
    work = [((u, v), n) for (u, v), n in chain.items()]
    while work:
        (u, v), n = work.pop()
        if n == 0:
            continue
        syll = u.syllables
        if not syll:
            # 1 (x) v  =  d(1 (x) 1 (x) v)
            witness.append((Word(), Word(), v, n))
            continue
        g, e = syll[0]
        if len(syll) == 1 and e == -1:
            # x^{-1} (x) v = d(x^{-1} (x) x (x) m) - x (x) x^{-1} m + 1 (x) m
            # where m = x^{-1} v is the marker
            x = Word.of((g, 1))
            xi = Word.of((g, -1))
            m = oracle.mul(u, v)
            witness.append((xi, x, m, n))
            work.append(((x, oracle.mul(xi, m)), -n))
            work.append(((Word(), m), n))
            continue
        if len(syll) > 1 or abs(e) > 1:
            # u = h t:  h t (x) v = -d(h (x) t (x) v) + h (x) tv + t (x) vh
            head = Word.of((g, 1)) if e > 0 else Word.of((g, -1))
            tail = oracle.mul(oracle.inverse(head), u)
            witness.append((head, tail, v, -n))
            work.append(((head, oracle.mul(tail, v)), n))
            work.append(((tail, oracle.mul(v, head)), n))
            continue
        marker = oracle.exponent_vector(oracle.mul(u, v))
        key = (marker, g)
        canonical[key] = canonical.get(key, 0) + n
    canonical = {k: n for k, n in canonical.items() if n}
    return canonical, Chain2.from_terms(oracle, witness)


def test_reduce_class_complete_invariant_abelian():
    o = FreeAbelianOracle(2)
    rng = random.Random(17)
    for _ in range(40):
        terms = [
            (random_word(o, rng, 2, 2), random_word(o, rng, 2, 2), rng.randint(-2, 2))
            for _ in range(rng.randint(1, 3))
        ]
        z = Chain1.from_terms(o, terms)
        canon, witness = _abelian_canonical_with_witness(o, z)
        # the witness certifies membership of the difference in the boundary span
        residue = Chain1.from_terms(
            o,
            [
                (Word.of((g, 1)),
                 o.mul(Word.of((g, -1)), Word.of(*enumerate(marker))), n)
                for (marker, g), n in canon.items()
            ],
        )
        assert z - residue == boundary(witness)
        # and the canonical values agree with the reduction
        cc = reduce_class(z)
        values = {}
        for (marker, g), n in canon.items():
            vec = [0, 0]
            vec[g] = n
            if any(vec):
                prev = values.get(marker, (0, 0))
                values[marker] = (prev[0] + vec[0], prev[1] + vec[1])
        values = {m: v for m, v in values.items() if any(v)}
        got = {
            comp.class_id.data: comp.h1_value.free for comp in cc.components
        }
        assert got == values


def test_reduce_equal_iff_boundary_difference():
    o = FreeAbelianOracle(1)
    rng = random.Random(29)
    for _ in range(40):
        terms = [
            (random_word(o, rng, 2, 2), random_word(o, rng, 2, 2), rng.randint(-2, 2))
            for _ in range(2)
        ]
        z1 = Chain1.from_terms(o, terms)
        bnd = boundary(
            Chain2.from_terms(
                o,
                [
                    (
                        random_word(o, rng, 2, 2),
                        random_word(o, rng, 2, 2),
                        random_word(o, rng, 2, 2),
                        rng.randint(-2, 2),
                    )
                    for _ in range(2)
                ],
            )
        )
        z2 = z1 + bnd
        assert reduce_class(z1) == reduce_class(z2)
        z3 = z1 + chain1(o, (o.generator(0), Word(), 1))
        assert reduce_class(z1) != reduce_class(z3)


# -- epsilon_star ---------------------------------------------------------------

def test_epsilon_star_values():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    assert epsilon_star(chain1(o, (x, o.power(x, -2), -1))).free == (-1,)


def test_epsilon_star_kills_boundaries():
    rng = random.Random(37)
    for oracle in sample_oracles():
        for _ in range(20):
            c = Chain2.from_terms(
                oracle,
                [
                    (
                        random_word(oracle, rng, 2, 2),
                        random_word(oracle, rng, 2, 2),
                        random_word(oracle, rng, 2, 2),
                        rng.randint(-2, 2),
                    )
                ],
            )
            assert epsilon_star(boundary(c)).is_zero


def test_epsilon_star_requires_cycle():
    o = bounded23()
    with pytest.raises(NotACycle):
        epsilon_star(chain1(o, (o.fiber_gen(1), o.fiber_gen(2), 1)))


def test_epsilon_star_seifert_central_value():
    # (r - chi) copies of gamma0 (x) gamma0^{-2} minus the fiber terms push to
    # -chi(Sigma) {gamma0}
    o = bounded23()
    gam = o.gamma0
    chi, r = 1, 2
    terms = [(gam, o.power(gam, -2), r - chi)]
    for j, mu in enumerate(o.mus, start=1):
        g = o.fiber_gen(j)
        for i in range(1, mu + 1):
            terms.append((g, o.power(g, -1 - i), -1))
    total = epsilon_star(Chain1.from_terms(o, terms))
    assert total == o.abelianize_word(gam).scaled(-chi)


# -- split ------------------------------------------------------------------------

def test_split_components_seifert():
    o = bounded23()
    g1 = o.fiber_gen(1)
    c = chain1(
        o,
        (o.inverse(o.gamma0), Word(), 1),
        (g1, o.mul(o.inverse(g1), o.inverse(o.gamma0)), 1),
        (g1, o.power(g1, -2), 1),
    )
    cc = reduce_class(c)
    prime, double = split_components(cc)
    assert all(comp.class_id.kind == "central" for comp in prime.components)
    assert all(comp.class_id.kind == "exceptional" for comp in double.components)
    assert len(prime.components) + len(double.components) == len(cc.components)


def test_split_components_explicit_sets():
    o = FreeAbelianOracle(1)
    x = o.generator(0)
    cc = reduce_class(chain1(o, (x, x, 1)))
    prime, double = split_components(cc, gottlieb=())
    assert prime.is_zero and not double.is_zero
    prime, double = split_components(cc, gottlieb=lambda cid: True)
    assert not prime.is_zero and double.is_zero
