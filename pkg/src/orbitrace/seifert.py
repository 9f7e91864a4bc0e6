"""Seifert invariants and the closed-form component computations.

Closed data is (genus, b, [(mu_j, beta_j)]); bounded data is
(genus, boundary count m, [mu_j]).  Derived quantities: the fiber-sum
presentation of the fundamental group, its homology via Smith normal form,
the Euler number b - sum beta_j/mu_j of a closed fibering, the orbifold
Euler characteristic of the quotient, and the closed-form component class
of the circle trace invariant:

* central component, keyed by the class of gamma0^{-1}:
  (r - chi(Sigma)) {gamma0} - sum_j {g_j}  in H_1 of the group;
* one component per class of g_j^{-i}, 0 < i < mu_j, with value -{g_j};
* everything else zero.

These closed forms hold for admissible data (quotient surface oriented and
not a sphere with fewer than three exceptional fibers, nor a disk with one).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .groups import ClassId, SeifertOracle, Word
from .hochschild import Component, ComponentClass
from .snf import xgcd


class SeifertError(Exception):
    pass


class BoundedVariant(SeifertError):
    pass


class NotAdmissible(SeifertError):
    pass


@dataclass(frozen=True)
class SeifertData:
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
                raise ValueError("closed data carries b and no boundary count")
            for mu, beta in self.fibers:
                if mu < 2 or not 0 < beta < mu or gcd(mu, beta) != 1:
                    raise ValueError(f"bad fiber pair ({mu}, {beta})")
        else:
            if self.boundary is None or self.boundary < 1 or self.b is not None:
                raise ValueError("bounded data carries a boundary count >= 1 and no b")
            for mu in self.fibers:
                if mu < 2:
                    raise ValueError(f"bad fiber order {mu}")

    @staticmethod
    def closed_data(genus, b, fibers):
        return SeifertData(
            True, int(genus), tuple((int(m), int(bt)) for m, bt in fibers), b=int(b)
        )

    @staticmethod
    def bounded_data(genus, boundary, fibers):
        return SeifertData(
            False, int(genus), tuple(int(m) for m in fibers), boundary=int(boundary)
        )

    @property
    def mus(self):
        if self.closed:
            return tuple(mu for mu, _ in self.fibers)
        return tuple(self.fibers)

    @property
    def r(self):
        return len(self.mus)

    @property
    def chi_surface(self):
        """Euler characteristic of the quotient surface."""
        if self.closed:
            return 2 - 2 * self.genus
        return 2 - 2 * self.genus - self.boundary

    def oracle(self):
        return _oracle_for(self)


@lru_cache(maxsize=None)
def _oracle_for(data):
    if data.closed:
        return SeifertOracle(closed=True, genus=data.genus, fibers=data.fibers, b=data.b)
    return SeifertOracle(
        closed=False, genus=data.genus, fibers=data.fibers, boundary=data.boundary
    )


def admissible(data):
    """Oriented base with enough exceptional fibers for the class separation.

    False exactly for a sphere base with at most two exceptional fibers and
    for a disk base with exactly one.
    """
    if data.closed:
        return not (data.genus == 0 and data.r <= 2)
    return not (data.genus == 0 and data.boundary == 1 and data.r == 1)


def tietze_convert(mu, nu):
    """Solve alpha*mu + beta*nu = 1 with 0 < beta < mu.

    (mu, nu) are the order and twist of a fibered solid torus; (alpha, beta)
    are the exponents rewriting its core as g = c^{-nu} gamma0^{alpha}.
    """
    mu, nu = int(mu), int(nu)
    if not 0 < nu < mu:
        raise ValueError("need 0 < nu < mu")
    x, y, g = xgcd(mu, nu)
    if g != 1:
        raise ValueError("mu and nu are not coprime")
    beta = y % mu
    alpha = (1 - beta * nu) // mu
    return alpha, beta


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    central: tuple[str, ...]

    def relator_strings(self):
        out = []
        for rel in self.relators:
            parts = []
            for g, e in rel.syllables:
                name = self.generators[g]
                parts.append(name if e == 1 else f"{name}^{e}")
            out.append("*".join(parts) if parts else "1")
        return out


def presentation(data):
    """The fiber-sum presentation with generators gamma0, a_i, b_i, g_j (, d_i)."""
    oracle = data.oracle()
    relators = []
    for j, mu in enumerate(data.mus, start=1):
        gid = oracle.fiber_ids[j - 1]
        relators.append(Word.of((gid, mu), (0, -1)))
    if data.closed:
        # prod [a_i, b_i] prod g_j^{-beta_j} gamma0^b
        syll = []
        for i in range(data.genus):
            a, bgen = 1 + 2 * i, 2 + 2 * i
            syll += [(a, 1), (bgen, 1), (a, -1), (bgen, -1)]
        for j, (_mu, beta) in enumerate(data.fibers, start=1):
            syll.append((oracle.fiber_ids[j - 1], -beta))
        syll.append((0, data.b))
        relators.append(Word.of(*syll))
    return Presentation(oracle.names, tuple(relators), ("gamma0",))


@dataclass(frozen=True)
class H1Data:
    group: object
    gamma0: object
    fibers: tuple


def h1(data):
    """Homology of the group with the classes of gamma0 and each g_j."""
    oracle = data.oracle()
    group, _ = oracle.abelianization()
    return H1Data(
        group,
        oracle.abelianize_word(oracle.gamma0),
        tuple(
            oracle.abelianize_word(oracle.fiber_gen(j)) for j in range(1, data.r + 1)
        ),
    )


def euler_number(data):
    """b - sum beta_j / mu_j, for closed data."""
    if not data.closed:
        raise BoundedVariant("Euler number is defined for closed fiberings")
    return Fraction(data.b) - sum(
        (Fraction(beta, mu) for mu, beta in data.fibers), Fraction(0)
    )


def orbifold_chi(data):
    """chi(Sigma) + sum (1/mu_j - 1) of the quotient orbifold."""
    return Fraction(data.chi_surface) + sum(
        (Fraction(1, mu) - 1 for mu in data.mus), Fraction(0)
    )


def components_closed_form(data):
    """The component class of the circle trace invariant, in closed form.

    Central component (class of gamma0^{-1}):
    (r - chi(Sigma)) {gamma0} - sum {g_j}; one component per class of
    g_j^{-i} with value -{g_j} for 0 < i < mu_j; all others zero.
    """
    if not admissible(data):
        raise NotAdmissible(f"{data} is not admissible")
    oracle = data.oracle()
    group, _ = oracle.abelianization()
    r, chi = data.r, data.chi_surface
    central_entries = [(oracle.gamma0, r - chi)]
    central_value = oracle.abelianize_word(oracle.gamma0).scaled(r - chi)
    for j in range(1, r + 1):
        gj = oracle.fiber_gen(j)
        central_entries.append((gj, -1))
        central_value = central_value - oracle.abelianize_word(gj)
    components = [
        Component(
            ClassId.central(-1),
            tuple(sorted(central_entries)),
            h1_value=central_value,
        )
    ]
    for j, mu in enumerate(data.mus, start=1):
        gj = oracle.fiber_gen(j)
        for i in range(1, mu):
            # marker g_j^{-i} normalizes to gamma0^{-1} g_j^{mu - i}
            cid = ClassId.exceptional(j, mu - i, -1)
            components.append(
                Component(cid, ((gj, -1),), fiber_multiple=-1)
            )
    return ComponentClass.from_components(oracle, components)


def pd_euler_seifert(data):
    """Poincare dual of the normal Euler class: (chi(Sigma) - r){gamma0} + sum {g_j}.

    Its rational image is chi_orb * {gamma0}_Q, i.e. the negative of the
    rational image of the central trace component.
    """
    if not admissible(data):
        raise NotAdmissible(f"{data} is not admissible")
    oracle = data.oracle()
    acc = oracle.abelianize_word(oracle.gamma0).scaled(data.chi_surface - data.r)
    for j in range(1, data.r + 1):
        acc = acc + oracle.abelianize_word(oracle.fiber_gen(j))
    return acc


def gamma0_order(data):
    """(order of {gamma0} in H_1 (None = infinite), criterion agreement).

    The boolean confirms the computed order against the criterion: infinite
    iff the space has boundary or its Euler number vanishes.
    """
    order = data.oracle().abelianize_word(data.oracle().gamma0).order()
    criterion = (not data.closed) or euler_number(data) == 0
    return order, (order is None) == criterion


def dt_obstruction(data):
    """True when the trace invariant provably misses the Dennis trace image.

    Detected when some exceptional component has nonzero image in H_1 of
    the group, i.e. r > 0 with {gamma0} of infinite order; matrix traces
    land in the trivial-marker component only, so a nonzero non-central
    component obstructs.  False means no obstruction detected.
    """
    if not admissible(data):
        raise NotAdmissible(f"{data} is not admissible")
    order, _ = gamma0_order(data)
    return data.r > 0 and order is None


def normalize_derivation(values, group=None):
    """Concentrate a component map of a derivation at index zero.

    ``values`` maps an integer k to the component of the derivation's value
    over the k-th central power; the normalized derivation has everything
    summed at k = 0, and the returned witnesses express the difference as
    (1 - shift) of their sum:

        witness for k > 0:  the value repeated at indices k, k-1, ..., 1
        witness for k < 0:  minus the value at indices k+1, ..., 0

    The reconstruction identity is verified before returning.
    """
    values = {int(k): v for k, v in values.items() if not v.is_zero}
    if group is None:
        if not values:
            raise ValueError("empty map needs an explicit group")
        group = next(iter(values.values())).group
    zero = group.zero()
    normalized = sum(values.values(), zero)
    witnesses = {}
    for k, v in values.items():
        if k > 0:
            witnesses[k] = {i: v for i in range(1, k + 1)}
        elif k < 0:
            witnesses[k] = {i: -v for i in range(k + 1, 1)}
        else:
            witnesses[k] = {}
    total = {}
    for wit in witnesses.values():
        for i, v in wit.items():
            total[i] = total.get(i, zero) + v
    # (1 - shift) applied to the witness sum: index k picks u(k) - u(k+1)
    for k in range(min([0, *values, *total]) - 1, max([0, *values, *total]) + 2):
        delta = values.get(k, zero) - (normalized if k == 0 else zero)
        reconstructed = total.get(k, zero) - total.get(k + 1, zero)
        if delta != reconstructed:
            raise SeifertError("witness reconstruction failed")
    return normalized, witnesses


# -- JSON -----------------------------------------------------------------

def to_json(data):
    if data.closed:
        return {
            "closed": {
                "genus": data.genus,
                "b": data.b,
                "fibers": [list(f) for f in data.fibers],
            }
        }
    return {
        "bounded": {
            "genus": data.genus,
            "boundary": data.boundary,
            "fibers": list(data.fibers),
        }
    }


def from_json(payload):
    if "closed" in payload:
        d = payload["closed"]
        return SeifertData.closed_data(d["genus"], d["b"], d["fibers"])
    if "bounded" in payload:
        d = payload["bounded"]
        return SeifertData.bounded_data(d["genus"], d["boundary"], d["fibers"])
    raise ValueError("expected a 'closed' or 'bounded' key")
