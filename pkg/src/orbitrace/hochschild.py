"""Hochschild chains over a group ring in degrees <= 2.

A 1-chain is an integer combination of tensors u (x) v with u, v group
elements; its boundary is the ring element sum n (vu - uv), so 1-cycles are
exactly the chains whose two products cancel.  The first homology splits
over conjugacy classes: rewriting u (x) v as u (x) u^{-1} m with marker
m = uv, the class of the marker indexes the summand, and within the summand
the chain u (x) u^{-1} m (for u commuting with m) carries the value {u} in
the abelianized centralizer of m.  ``reduce_class`` computes that split
value; for abelian oracles it is a complete invariant of the homology class.
"""

from dataclasses import dataclass

from .abelian import AbelianElement
from .groups import ClassId, IDENTITY, OracleMismatch, SeifertOracle, UnrecognizedWord, Word
from .groupring import GroupRingElement, GroupRingMatrix, mat_trace_product


class HochschildError(Exception):
    pass


class NotACycle(HochschildError):
    pass


class NotInverse(HochschildError):
    pass


class NotCentral(HochschildError):
    pass


class IrreducibleTerm(HochschildError):
    """A term resisted reduction to centralizer form u (x) u^{-1} m."""


@dataclass(frozen=True)
class Chain1:
    oracle: object
    terms: tuple[tuple[tuple[Word, Word], int], ...]  # sorted, no zeros

    @staticmethod
    def from_terms(oracle, terms):
        """terms: iterable of (u, v, coefficient)."""
        acc = {}
        for u, v, n in terms:
            key = (oracle.normalize(u), oracle.normalize(v))
            acc[key] = acc.get(key, 0) + int(n)
        return Chain1(oracle, tuple(sorted((k, n) for k, n in acc.items() if n)))

    @staticmethod
    def zero(oracle):
        return Chain1(oracle, ())

    def _check(self, other):
        if self.oracle != other.oracle:
            raise OracleMismatch("chains over different oracles")

    @property
    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, n in other.terms:
            acc[k] = acc.get(k, 0) + n
        return Chain1(self.oracle, tuple(sorted((k, n) for k, n in acc.items() if n)))

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, n):
        n = int(n)
        if n == 0:
            return Chain1.zero(self.oracle)
        return Chain1(self.oracle, tuple((k, n * c) for k, c in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (u, v), n in self.terms:
            t = f"{self.oracle.word_str(u)} (x) {self.oracle.word_str(v)}"
            bits.append(t if n == 1 else f"{n}*[{t}]")
        return " + ".join(bits)


@dataclass(frozen=True)
class Chain2:
    oracle: object
    terms: tuple[tuple[tuple[Word, Word, Word], int], ...]

    @staticmethod
    def from_terms(oracle, terms):
        acc = {}
        for s1, s2, m, n in terms:
            key = (oracle.normalize(s1), oracle.normalize(s2), oracle.normalize(m))
            acc[key] = acc.get(key, 0) + int(n)
        return Chain2(oracle, tuple(sorted((k, n) for k, n in acc.items() if n)))

    def items(self):
        return self.terms


def boundary(chain):
    """Hochschild boundary: degree 2 -> 1 or degree 1 -> 0 (a ring element)."""
    oracle = chain.oracle
    if isinstance(chain, Chain2):
        # d(s1 (x) s2 (x) m) = s2 (x) m s1  -  s1 s2 (x) m  +  s1 (x) s2 m
        out = []
        for (s1, s2, m), n in chain.items():
            out.append((s2, oracle.mul(m, s1), n))
            out.append((oracle.mul(s1, s2), m, -n))
            out.append((s1, oracle.mul(s2, m), n))
        return Chain1.from_terms(oracle, out)
    acc = {}
    for (u, v), n in chain.items():
        for w, c in ((oracle.mul(v, u), n), (oracle.mul(u, v), -n)):
            acc[w] = acc.get(w, 0) + c
    return GroupRingElement.from_dict(oracle, acc)


def is_cycle(chain):
    return boundary(chain).is_zero


def trace_T1(a, b):
    """The 1-chain sum_{i,j} A_ij (x) B_ji, expanded monomially.

    Verifies the cycle criterion trace(AB) = trace(BA) first and refuses to
    emit a non-cycle.
    """
    if a.ncols != b.nrows or a.nrows != b.ncols:
        raise ValueError("dimension mismatch in trace")
    if mat_trace_product(a, b) != mat_trace_product(b, a):
        raise NotACycle("trace(AB) != trace(BA)")
    terms = []
    for i in range(a.nrows):
        for j in range(a.ncols):
            for wa, na in a.rows[i][j].items():
                for wb, nb in b.rows[j][i].items():
                    terms.append((wa, wb, na * nb))
    return Chain1.from_terms(a.oracle, terms)


def dennis_trace(u, uinv):
    """Trace of an invertible matrix against its inverse."""
    if u.nrows != u.ncols or uinv.nrows != uinv.ncols or u.nrows != uinv.nrows:
        raise NotInverse("square matrices of equal size required")
    ident = GroupRingMatrix.identity(u.oracle, u.nrows)
    if (u @ uinv) != ident or (uinv @ u) != ident:
        raise NotInverse("matrices are not mutually inverse")
    return trace_T1(u, uinv)


def central_action(omega, chain):
    """Left action of a central word: u (x) v -> u (x) v*omega^{-1}.

    Shifts the component indexed by a class C to the one indexed by
    C*omega^{-1}; for omega = gamma0 this is Central(k) -> Central(k-1).
    """
    oracle = chain.oracle
    if oracle.is_central(omega) is not True:
        raise NotCentral(oracle.word_str(omega))
    winv = oracle.inverse(omega)
    return Chain1.from_terms(
        oracle, ((u, oracle.mul(v, winv), n) for (u, v), n in chain.items())
    )


def canonical_decompose(chain):
    """Partition a 1-chain by the conjugacy class of the markers uv."""
    oracle = chain.oracle
    parts = {}
    for (u, v), n in chain.items():
        cid = oracle.class_id(oracle.mul(u, v))
        parts.setdefault(cid, []).append((u, v, n))
    return {
        cid: Chain1.from_terms(oracle, terms) for cid, terms in sorted(parts.items())
    }


@dataclass(frozen=True)
class Component:
    """One conjugacy-class summand of a reduced 1-cycle.

    ``entries`` lists (centralizer element, coefficient) pairs; the collapsed
    value is ``h1_value`` (image in H_1 of the full group) for central and
    abelian classes, or ``fiber_multiple`` (an integer multiple of {g_j}) for
    exceptional classes.
    """

    class_id: ClassId
    entries: tuple[tuple[Word, int], ...]
    h1_value: AbelianElement | None = None
    fiber_multiple: int | None = None

    def collapsed(self):
        if self.class_id.kind == "exceptional":
            return ("fiber", self.fiber_multiple)
        if self.h1_value is not None:
            return ("h1", self.h1_value)
        return ("raw", self.entries)

    @property
    def is_zero(self):
        kind, value = self.collapsed()
        if kind == "fiber":
            return value == 0
        if kind == "h1":
            return value.is_zero
        return not value


@dataclass(frozen=True)
class ComponentClass:
    oracle: object
    components: tuple[Component, ...]

    @staticmethod
    def from_components(oracle, components):
        kept = tuple(sorted(
            (c for c in components if not c.is_zero), key=lambda c: c.class_id
        ))
        return ComponentClass(oracle, kept)

    def __eq__(self, other):
        if not isinstance(other, ComponentClass):
            return NotImplemented
        if self.oracle != other.oracle:
            return False
        mine = {c.class_id: c.collapsed() for c in self.components}
        theirs = {c.class_id: c.collapsed() for c in other.components}
        return mine == theirs

    def __hash__(self):
        return hash((self.oracle, tuple(c.class_id for c in self.components)))

    @property
    def is_zero(self):
        return not self.components

    def class_ids(self):
        return tuple(c.class_id for c in self.components)

    def get(self, cid):
        for c in self.components:
            if c.class_id == cid:
                return c
        return None

    def h1_image(self):
        """Sum of the components' images in H_1 of the whole group."""
        group, _ = self.oracle.abelianization()
        acc = group.zero()
        for c in self.components:
            kind, value = c.collapsed()
            if kind == "h1":
                acc = acc + value
            elif kind == "fiber":
                j = c.class_id.data[0]
                gj = self.oracle.fiber_gen(j)
                acc = acc + self.oracle.abelianize_word(gj).scaled(value)
            else:
                for w, n in c.entries:
                    acc = acc + self.oracle.abelianize_word(w).scaled(n)
        return acc

    def split(self, gottlieb=None):
        """Partition into (prime, doubleprime) by evaluation-subgroup classes.

        ``gottlieb`` is a predicate on ClassId or a collection of ClassIds;
        by default the oracle's own evaluation subgroup is used.
        """
        if gottlieb is None:
            test = self.oracle.is_gottlieb
        elif callable(gottlieb):
            test = gottlieb
        else:
            members = set(gottlieb)
            test = lambda cid: cid in members
        prime = [c for c in self.components if test(c.class_id)]
        double = [c for c in self.components if not test(c.class_id)]
        return (
            ComponentClass(self.oracle, tuple(prime)),
            ComponentClass(self.oracle, tuple(double)),
        )

    def __str__(self):
        if not self.components:
            return "0"
        bits = []
        for c in self.components:
            kind, value = c.collapsed()
            label = self.oracle.class_str(c.class_id)
            if kind == "fiber":
                j = c.class_id.data[0]
                bits.append(f"{label}: {value}*{{g{j}}}")
            elif kind == "h1":
                bits.append(f"{label}: {value}")
            else:
                raw = " + ".join(
                    f"{n}*{{{self.oracle.word_str(w)}}}" for w, n in c.entries
                )
                bits.append(f"{label}: {raw}")
        return " | ".join(bits)


def split_components(component_class, gottlieb=None):
    return component_class.split(gottlieb)


def _fiber_exponent(oracle, word, j):
    """Write a word of <g_j> (and gamma0 = g_j^{mu_j}) as a power of g_j."""
    k = 0
    e = 0
    for g, exp in oracle.normalize(word).syllables:
        if g == 0:
            k += exp
        elif g == oracle.fiber_ids[j - 1]:
            e += exp
        else:
            raise IrreducibleTerm(
                f"centralizer entry {oracle.word_str(word)} is not a power of g{j}"
            )
    return e + k * oracle.mus[j - 1]


def reduce_class(chain):
    """Reduce a 1-cycle to its conjugacy-class component values.

    Per term u (x) v with marker m = uv: terms with u = 1 are homologically
    trivial and dropped; if u fails to commute with m the term is first
    rewritten u (x) v -> -u^{-1} (x) (uv)u (same class, conjugated marker);
    terms whose first slot still does not centralize the marker raise
    IrreducibleTerm.  Values are transported to the canonical class
    representative along the conjugator returned by the oracle.
    """
    oracle = chain.oracle
    buckets = {}
    for (u, v), n in chain.items():
        if u.is_empty:
            continue  # 1 (x) g bounds
        m = oracle.mul(u, v)
        cid, h = oracle.class_with_conjugator(m)
        com = True if cid.kind == "central" else oracle.commutes(u, m)
        if com is False:
            u, v, n = oracle.inverse(u), oracle.mul(m, u), -n
            m = oracle.mul(u, v)
            cid, h = oracle.class_with_conjugator(m)
            com = True if cid.kind == "central" else oracle.commutes(u, m)
        if com is not True:
            raise IrreducibleTerm(
                f"{oracle.word_str(u)} does not centralize marker {oracle.word_str(m)}"
            )
        uc = oracle.mul(oracle.inverse(h), u, h)
        bucket = buckets.setdefault(cid, {})
        bucket[uc] = bucket.get(uc, 0) + n
    components = []
    abelian = not isinstance(oracle, SeifertOracle)
    for cid, bucket in buckets.items():
        entries = tuple(sorted((w, n) for w, n in bucket.items() if n))
        h1_value = None
        fiber_multiple = None
        if cid.kind == "exceptional":
            j = cid.data[0]
            fiber_multiple = sum(
                n * _fiber_exponent(oracle, w, j) for w, n in entries
            )
        elif abelian or cid.kind == "central":
            group, _ = oracle.abelianization()
            h1_value = group.zero()
            for w, n in entries:
                h1_value = h1_value + oracle.abelianize_word(w).scaled(n)
        components.append(Component(cid, entries, h1_value, fiber_multiple))
    return ComponentClass.from_components(oracle, components)


def epsilon_star(chain, check=True):
    """Image in H_1(G): send sum n_i u_i (x) v_i to sum n_i {u_i}.

    Kills boundaries, so it is well defined on homology; ``check`` insists
    the input is a 1-cycle first.
    """
    oracle = chain.oracle
    if check and not is_cycle(chain):
        raise NotACycle("epsilon_star applied to a non-cycle")
    group, _ = oracle.abelianization()
    acc = group.zero()
    for (u, _v), n in chain.items():
        acc = acc + oracle.abelianize_word(u).scaled(n)
    return acc
