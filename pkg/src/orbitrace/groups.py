"""Group words, normal forms, and decision oracles.

Four families of fundamental groups are supported:

* free abelian groups of finite rank,
* finite cyclic groups,
* groups presented with a central generator ``gamma0``, fiber generators
  ``g_j`` satisfying ``g_j^{mu_j} = gamma0``, optional surface generators
  ``a_i, b_i`` and free generators ``d_i``, and (closed variant only) one
  long surface relation.

For the bounded variant the group is an amalgamated free product of the
cyclic subgroups <g_j> and of Z x F(a_i, b_i, d_i) over the central copy
of Z generated by gamma0, and the normal form computed here solves the
word problem outright.  For the closed variant the long relation is not
used for rewriting: only the sublanguage {gamma0^k, gamma0^k g_j^a} comes
with an exactness guarantee, and even that is "formal" when gamma0 has
finite order in homology (see the ``exact`` flag).
"""

from dataclasses import dataclass
from functools import cached_property

from .abelian import FgAbelianGroup, AbelianElement, quotient_by_relations


class GroupError(Exception):
    pass


class UnknownGenerator(GroupError):
    pass


class UnrecognizedWord(GroupError):
    """The word lies outside the oracle's recognized sublanguage."""


class OracleMismatch(GroupError):
    pass


@dataclass(frozen=True, order=True)
class Word:
    """A formal product of generator powers; zero exponents are dropped."""

    syllables: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(*pairs):
        return Word(tuple((int(g), int(e)) for g, e in pairs if int(e) != 0))

    @property
    def is_empty(self):
        return not self.syllables

    def concat(self, other):
        return Word(self.syllables + other.syllables)

    def raw_inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))


IDENTITY = Word()


@dataclass(frozen=True, order=True)
class ClassId:
    """Canonical tag for a conjugacy class.

    kind "central":      data = (k,), the class of gamma0^k
    kind "exceptional":  data = (j, i, k), the class of gamma0^k g_j^i, 0 < i < mu_j
    kind "abelian":      data = the exponent vector (classes are elements)
    kind "opaque":       data = syllables of a cyclically reduced representative
    """

    kind: str
    data: tuple

    @staticmethod
    def central(k):
        return ClassId("central", (int(k),))

    @staticmethod
    def exceptional(j, i, k):
        return ClassId("exceptional", (int(j), int(i), int(k)))

    @staticmethod
    def abelian(vector):
        return ClassId("abelian", tuple(int(x) for x in vector))

    @staticmethod
    def opaque(word):
        return ClassId("opaque", word.syllables)


class GroupOracle:
    """Shared word calculus; subclasses fix the normal form."""

    names: tuple[str, ...] = ()

    @property
    def ngens(self):
        return len(self.names)

    def generator(self, i):
        self._check_gen(i)
        return Word(((i, 1),))

    def gen_id(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator(name) from None

    def _check_gen(self, g):
        if not 0 <= g < self.ngens:
            raise UnknownGenerator(f"generator id {g} out of range for {self}")

    def _check_word(self, w):
        for g, _e in w.syllables:
            self._check_gen(g)

    def normalize(self, w):
        self._check_word(w)
        return self._normalize(w)

    def mul(self, *words):
        acc = []
        for w in words:
            acc.extend(w.syllables)
        return self.normalize(Word(tuple(acc)))

    def inverse(self, w):
        return self.normalize(w.raw_inverse())

    def power(self, w, k):
        k = int(k)
        if k == 0:
            return IDENTITY
        base = w if k > 0 else w.raw_inverse()
        return self.normalize(Word(base.syllables * abs(k)))

    def conjugate(self, h, w):
        return self.mul(h, w, self.inverse(h))

    def equal(self, a, b):
        return self.normalize(a) == self.normalize(b)

    def is_identity(self, w):
        return self.normalize(w).is_empty

    def is_recognized(self, w):
        return True

    def commutes(self, a, b):
        """True/False when decidable, None when the oracle cannot tell."""
        if self.normalize(self.mul(a, b)) == self.normalize(self.mul(b, a)):
            return True
        return False if self.word_problem_exact else None

    def is_central(self, w):
        if self.is_identity(w):
            return True
        results = [self.commutes(w, self.generator(i)) for i in range(self.ngens)]
        if all(r is True for r in results):
            return True
        if any(r is False for r in results):
            return False
        return None

    @property
    def word_problem_exact(self):
        return True

    @property
    def exact(self):
        """False when distinct normal forms may coincide in the group."""
        return True

    def class_id(self, w):
        return self.class_with_conjugator(w)[0]

    def class_with_conjugator(self, w):
        """(class id, h) with w = h * representative * h^{-1}."""
        raise NotImplementedError

    def class_representative(self, cid):
        raise NotImplementedError

    @cached_property
    def _abelianization(self):
        return self._compute_abelianization()

    def abelianization(self):
        """(H_1 of the group, images of the generators)."""
        return self._abelianization

    def abelianize_word(self, w):
        group, images = self._abelianization
        acc = group.zero()
        for g, e in self.normalize(w).syllables:
            acc = acc + images[g].scaled(e)
        return acc

    def _compute_abelianization(self):
        raise NotImplementedError

    def is_gottlieb(self, cid):
        """Default evaluation-subgroup membership used for the '/'' split."""
        raise NotImplementedError

    # -- formatting ---------------------------------------------------

    def word_str(self, w):
        w = self.normalize(w)
        if w.is_empty:
            return "1"
        parts = []
        for g, e in w.syllables:
            parts.append(self.names[g] if e == 1 else f"{self.names[g]}^{e}")
        return "*".join(parts)

    def class_str(self, cid):
        if cid.kind == "central":
            k = cid.data[0]
            if k == 0:
                return "C(1)"
            return "C(gamma0)" if k == 1 else f"C(gamma0^{k})"
        if cid.kind == "exceptional":
            return "C(" + self.word_str(self.class_representative(cid)) + ")"
        if cid.kind == "abelian":
            return "C(" + self.word_str(self.class_representative(cid)) + ")"
        return "C(" + self.word_str(Word(cid.data)) + ")"


@dataclass(frozen=True)
class FreeAbelianOracle(GroupOracle):
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")

    @cached_property
    def names(self):
        return tuple(f"x{i + 1}" for i in range(self.rank))

    def _normalize(self, w):
        exps = {}
        for g, e in w.syllables:
            exps[g] = exps.get(g, 0) + e
        return Word(tuple((g, e) for g, e in sorted(exps.items()) if e))

    def commutes(self, a, b):
        return True

    def is_central(self, w):
        return True

    def exponent_vector(self, w):
        vec = [0] * self.rank
        for g, e in self.normalize(w).syllables:
            vec[g] += e
        return tuple(vec)

    def class_with_conjugator(self, w):
        return ClassId.abelian(self.exponent_vector(w)), IDENTITY

    def class_representative(self, cid):
        return Word.of(*enumerate(cid.data))

    def _compute_abelianization(self):
        group = FgAbelianGroup(self.rank)
        images = [
            group.element(tuple(1 if j == i else 0 for j in range(self.rank)), ())
            for i in range(self.rank)
        ]
        return group, tuple(images)

    def is_gottlieb(self, cid):
        return True

    def __str__(self):
        return f"FreeAbelian({self.rank})"


@dataclass(frozen=True)
class FiniteCyclicOracle(GroupOracle):
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")

    @cached_property
    def names(self):
        return ("x",)

    def _normalize(self, w):
        e = sum(e for _g, e in w.syllables) % self.order
        return Word(((0, e),)) if e else IDENTITY

    def commutes(self, a, b):
        return True

    def is_central(self, w):
        return True

    def class_with_conjugator(self, w):
        nf = self.normalize(w)
        e = nf.syllables[0][1] if nf.syllables else 0
        return ClassId.abelian((e,)), IDENTITY

    def class_representative(self, cid):
        return Word.of((0, cid.data[0]))

    def _compute_abelianization(self):
        if self.order == 1:
            group = FgAbelianGroup(0)
            return group, (group.zero(),)
        group = FgAbelianGroup(0, (self.order,))
        return group, (group.element((), (1,)),)

    def is_gottlieb(self, cid):
        return True

    def __str__(self):
        return f"FiniteCyclic({self.order})"


GAMMA = 0  # generator id of the central fiber class in Seifert oracles


@dataclass(frozen=True)
class SeifertOracle(GroupOracle):
    """Fundamental group of a Seifert fibering, via the gamma0-central presentation.

    closed:  generators gamma0, a_1, b_1, ..., a_g, b_g, g_1, ..., g_r with
             relations [gamma0 central], g_j^{mu_j} = gamma0, and
             prod [a_i, b_i] prod g_j^{-beta_j} gamma0^b = 1.
    bounded: generators gamma0, a_i, b_i, g_j, d_1, ..., d_{m-1} with only
             the centrality and g_j^{mu_j} = gamma0 relations.
    """

    closed: bool
    genus: int
    fibers: tuple  # closed: ((mu, beta), ...); bounded: (mu, ...)
    b: int | None = None
    boundary: int | None = None

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("negative genus")
        if self.closed:
            if self.b is None or self.boundary is not None:
                raise ValueError("closed variant takes b and no boundary count")
        else:
            if self.boundary is None or self.boundary < 1 or self.b is not None:
                raise ValueError("bounded variant takes boundary count >= 1 and no b")

    @cached_property
    def mus(self):
        if self.closed:
            return tuple(mu for mu, _beta in self.fibers)
        return tuple(self.fibers)

    @cached_property
    def betas(self):
        return tuple(beta for _mu, beta in self.fibers) if self.closed else ()

    @property
    def r(self):
        return len(self.mus)

    @cached_property
    def names(self):
        names = ["gamma0"]
        for i in range(self.genus):
            names += [f"a{i + 1}", f"b{i + 1}"]
        names += [f"g{j + 1}" for j in range(self.r)]
        if not self.closed:
            names += [f"d{i + 1}" for i in range(self.boundary - 1)]
        return tuple(names)

    @cached_property
    def fiber_ids(self):
        start = 1 + 2 * self.genus
        return tuple(range(start, start + self.r))

    @cached_property
    def _mu_of_gen(self):
        return {gid: self.mus[j] for j, gid in enumerate(self.fiber_ids)}

    def fiber_gen(self, j):
        """Generator word g_j for 1-based fiber index j."""
        return Word(((self.fiber_ids[j - 1], 1),))

    @property
    def gamma0(self):
        return Word(((GAMMA, 1),))

    # -- normal form ----------------------------------------------------

    def _normalize(self, w):
        central = 0
        stack = []
        for g, e in w.syllables:
            if e == 0:
                continue
            if g == GAMMA:
                central += e
                continue
            if stack and stack[-1][0] == g:
                e += stack.pop()[1]
            mu = self._mu_of_gen.get(g)
            if mu is not None:
                central += e // mu
                e %= mu
            if e:
                stack.append([g, e])
        syll = tuple((g, e) for g, e in stack)
        if central:
            syll = ((GAMMA, central),) + syll
        return Word(syll)

    def _split_central(self, nf):
        syll = nf.syllables
        if syll and syll[0][0] == GAMMA:
            return syll[0][1], syll[1:]
        return 0, syll

    def _blocks(self, nf):
        """Group a normal form into amalgam syllables.

        Returns (central exponent, blocks); each block is
        ("fiber", gen id, exponent) or ("free", syllable tuple).
        """
        k, syll = self._split_central(nf)
        blocks = []
        for g, e in syll:
            if g in self._mu_of_gen:
                blocks.append(("fiber", g, e))
            elif blocks and blocks[-1][0] == "free":
                blocks[-1] = ("free", blocks[-1][1] + ((g, e),))
            else:
                blocks.append(("free", ((g, e),)))
        return k, blocks

    def _block_word(self, block):
        if block[0] == "fiber":
            return Word(((block[1], block[2]),))
        return Word(block[1])

    def is_recognized(self, w):
        _k, blocks = self._blocks(self.normalize(w))
        if not blocks:
            return True
        return len(blocks) == 1 and blocks[0][0] == "fiber"

    @property
    def word_problem_exact(self):
        return not self.closed

    @cached_property
    def exact(self):
        """True when gamma0 has infinite order in H_1 (class arithmetic is sharp)."""
        return self.abelianize_word(self.gamma0).order() is None

    def is_central(self, w):
        _k, blocks = self._blocks(self.normalize(w))
        if not blocks:
            return True
        if self.closed:
            return None
        return super().is_central(w)

    # -- conjugacy ------------------------------------------------------

    def class_with_conjugator(self, w):
        nf = self.normalize(w)
        k, blocks = self._blocks(nf)
        conj = IDENTITY
        if len(blocks) > 1:
            if self.closed:
                raise UnrecognizedWord(self.word_str(nf))
            k, blocks, conj = self._cyclic_reduce(k, blocks, conj)
        if not blocks:
            return ClassId.central(k), conj
        if len(blocks) == 1:
            kind = blocks[0][0]
            if kind == "fiber":
                g, e = blocks[0][1], blocks[0][2]
                j = self.fiber_ids.index(g) + 1
                return ClassId.exceptional(j, e, k), conj
            if self.closed:
                raise UnrecognizedWord(self.word_str(nf))
            syll, conj = self._free_cyclic_form(blocks[0][1], conj)
            word = Word((((GAMMA, k),) if k else ()) + syll)
            return ClassId.opaque(word), conj
        # cyclically reduced, length >= 2: canonicalize by block rotation
        words = [self._block_word(bl) for bl in blocks]
        rotations = []
        for t in range(len(words)):
            rotated = words[t:] + words[:t]
            syll = sum((wd.syllables for wd in rotated), ())
            rotations.append((syll, t))
        syll, t = min(rotations)
        conj = self.mul(conj, *words[:t])
        word = Word((((GAMMA, k),) if k else ()) + syll)
        return ClassId.opaque(word), conj

    def _cyclic_reduce(self, k, blocks, conj):
        def same_factor(b1, b2):
            if b1[0] == "fiber" and b2[0] == "fiber":
                return b1[1] == b2[1]
            return b1[0] == "free" and b2[0] == "free"

        while len(blocks) >= 2 and same_factor(blocks[0], blocks[-1]):
            first = blocks.pop(0)
            conj = self.mul(conj, self._block_word(first))
            # rotate: w ~ first^{-1} w first; renormalizing absorbs the merge
            # of the old last block with the rotated-in first block.
            syll = ((GAMMA, k),) if k else ()
            for bl in blocks:
                syll += self._block_word(bl).syllables
            syll += self._block_word(first).syllables
            k, blocks = self._blocks(self._normalize(Word(syll)))
            blocks = list(blocks)
        return k, blocks, conj

    def _free_cyclic_form(self, syll, conj):
        """Cyclically reduce a free-group block and rotate it to canonical form."""
        syll = list(syll)
        while len(syll) >= 2 and syll[0][0] == syll[-1][0]:
            g, e = syll.pop(0)
            conj = self.mul(conj, Word(((g, e),)))
            g2, e2 = syll.pop()
            if e2 + e:
                syll.append((g2, e2 + e))
        rotations = []
        for t in range(len(syll)):
            rotated = tuple(syll[t:] + syll[:t])
            rotations.append((rotated, t))
        if rotations:
            rotated, t = min(rotations)
            conj = self.mul(conj, Word(tuple(syll[:t])))
            syll = list(rotated)
        return tuple(syll), conj

    def class_representative(self, cid):
        if cid.kind == "central":
            return self.normalize(Word(((GAMMA, cid.data[0]),)))
        if cid.kind == "exceptional":
            j, i, k = cid.data
            return self.normalize(Word(((GAMMA, k), (self.fiber_ids[j - 1], i))))
        if cid.kind == "opaque":
            return Word(cid.data)
        raise ValueError(f"not a class of this oracle: {cid}")

    def theorem_class_str(self, cid):
        """Label the class of gamma0^k g_j^i by the inverse power of g_j.

        The marker gamma0^k g_j^i equals g_j^n with n = i + k*mu_j; the
        component is conventionally cited as C(g_j^{-n}), e.g. the class of
        g_j^{-1} is cited as C(g_j^1).
        """
        if cid.kind != "exceptional":
            return self.class_str(cid)
        j, i, k = cid.data
        n = i + k * self.mus[j - 1]
        return f"C(g{j}^{-n})"

    # -- homology -------------------------------------------------------

    def _compute_abelianization(self):
        n = self.ngens
        rows = []
        for j, gid in enumerate(self.fiber_ids):
            row = [0] * n
            row[GAMMA] = -1
            row[gid] = self.mus[j]
            rows.append(row)
        if self.closed:
            row = [0] * n
            row[GAMMA] = self.b
            for j, gid in enumerate(self.fiber_ids):
                row[gid] = -self.betas[j]
            rows.append(row)
        group, images = quotient_by_relations(n, rows)
        return group, tuple(images)

    def is_gottlieb(self, cid):
        return cid.kind == "central"

    def __str__(self):
        kind = "SeifertClosed" if self.closed else "SeifertBounded"
        return f"{kind}(genus={self.genus}, fibers={self.fibers})"


# -- JSON descriptors ----------------------------------------------------

def oracle_to_json(oracle):
    if isinstance(oracle, FreeAbelianOracle):
        return {"type": "free_abelian", "rank": oracle.rank}
    if isinstance(oracle, FiniteCyclicOracle):
        return {"type": "finite_cyclic", "order": oracle.order}
    if isinstance(oracle, SeifertOracle):
        if oracle.closed:
            return {
                "type": "seifert_closed",
                "genus": oracle.genus,
                "b": oracle.b,
                "fibers": [list(f) for f in oracle.fibers],
            }
        return {
            "type": "seifert_bounded",
            "genus": oracle.genus,
            "boundary": oracle.boundary,
            "fibers": list(oracle.fibers),
        }
    raise ValueError(f"unserializable oracle {oracle}")


def oracle_from_json(data):
    kind = data.get("type")
    if kind == "free_abelian":
        return FreeAbelianOracle(int(data["rank"]))
    if kind == "finite_cyclic":
        return FiniteCyclicOracle(int(data["order"]))
    if kind == "seifert_closed":
        return SeifertOracle(
            closed=True,
            genus=int(data["genus"]),
            b=int(data["b"]),
            fibers=tuple((int(mu), int(beta)) for mu, beta in data["fibers"]),
        )
    if kind == "seifert_bounded":
        return SeifertOracle(
            closed=False,
            genus=int(data["genus"]),
            boundary=int(data["boundary"]),
            fibers=tuple(int(mu) for mu in data["fibers"]),
        )
    raise ValueError(f"unknown oracle type {kind!r}")


def word_to_json(word):
    return [[g, e] for g, e in word.syllables]


def word_from_json(data, oracle=None):
    pairs = []
    for item in data:
        g, e = item
        if isinstance(g, str):
            if oracle is None:
                raise ValueError("generator names need an oracle")
            g = oracle.gen_id(g)
        pairs.append((int(g), int(e)))
    word = Word.of(*pairs)
    return oracle.normalize(word) if oracle is not None else word
