"""Finite circle-equivariant cell inventories and their trace invariants.

An S1-cell of dimension n records the order of its finite isotropy group
(0 encodes a fixed cell, i.e. full-circle stabilizer) and the orbit word:
the fundamental-group element traced by one traversal of an orbit in the
cell interior.  The two pipelines computed here are

* the orbit-cycle formula: the 1-cycle
  sum_n (-1)^{n+1} sum_j sum_{i=1..mu_j} g_{j,n} (x) g_{j,n}^{-1-i}, and
* the chain-level route: per skeleton level a two-degree complex with
  boundary  d(d~^{n+1}_j) = (-1)^n e~^n_j (g^{-1} - 1)  and homotopy row
  D_n(e~^n_j) = (-1)^{n+1} d~^{n+1}_j (1 + g^{-1} + ... + g^{-(mu-1)}),

and the package's central cross-check is that both reduce to the same
component class.
"""

import warnings
from dataclasses import dataclass

from .chaincx import BasedComplex, Homotopy
from .groups import (
    IDENTITY,
    Word,
    oracle_from_json,
    oracle_to_json,
    word_from_json,
    word_to_json,
)
from .groupring import GroupRingElement, GroupRingMatrix, x_bracket
from .hochschild import Chain1, NotACycle, epsilon_star, is_cycle


class S1CWError(Exception):
    pass


class ValidationError(S1CWError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class FixedPointPresent(S1CWError):
    pass


@dataclass(frozen=True)
class S1Cell:
    dim: int
    isotropy: int  # order of the finite stabilizer; 0 encodes the full circle
    word: Word


@dataclass(frozen=True)
class S1CWComplex:
    oracle: object
    gamma0: Word
    cells: tuple[S1Cell, ...]

    @staticmethod
    def build(oracle, gamma0, cells):
        gamma0 = oracle.normalize(gamma0)
        cells = tuple(
            S1Cell(int(c.dim), int(c.isotropy), oracle.normalize(c.word)) for c in cells
        )
        return S1CWComplex(oracle, gamma0, cells)

    def dims(self):
        return sorted({c.dim for c in self.cells})

    def cells_of_dim(self, n):
        return [c for c in self.cells if c.dim == n]

    @property
    def has_fixed_cell(self):
        return any(c.isotropy == 0 for c in self.cells)

    def cell_count_alternating(self):
        """Euler characteristic of the orbit inventory, sum (-1)^n #cells_n."""
        return sum((-1) ** c.dim for c in self.cells)


def validate(complex_):
    """Check the cell-pair invariants; raises with a full violation report."""
    oracle = complex_.oracle
    violations = []
    for idx, cell in enumerate(complex_.cells):
        tag = f"cell {idx} (dim {cell.dim})"
        if cell.dim < 0:
            violations.append(f"{tag}: negative dimension")
        if cell.isotropy < 0:
            violations.append(f"{tag}: negative isotropy order")
        try:
            oracle.normalize(cell.word)
        except Exception as exc:  # unknown generator ids
            violations.append(f"{tag}: bad orbit word ({exc})")
            continue
        if cell.isotropy == 0:
            if not oracle.is_identity(cell.word):
                violations.append(f"{tag}: fixed cell with nontrivial orbit word")
        else:
            power = oracle.power(cell.word, cell.isotropy)
            if power != complex_.gamma0:
                violations.append(
                    f"{tag}: word^{cell.isotropy} = {oracle.word_str(power)}"
                    f" differs from gamma0 = {oracle.word_str(complex_.gamma0)}"
                )
    if complex_.has_fixed_cell and not oracle.is_identity(complex_.gamma0):
        violations.append("fixed cell present but gamma0 is nontrivial")
    if violations:
        raise ValidationError(violations)
    return True


def chi_s1(complex_, check=True):
    """The orbit-cycle representative of the circle Euler characteristic."""
    validate(complex_)
    oracle = complex_.oracle
    terms = []
    for cell in complex_.cells:
        sign = (-1) ** (cell.dim + 1)
        for i in range(1, cell.isotropy + 1):
            terms.append((cell.word, oracle.power(cell.word, -1 - i), sign))
    chain = Chain1.from_terms(oracle, terms)
    if check and not is_cycle(chain):
        raise NotACycle("orbit-cycle formula produced a non-cycle")
    return chain


def to_chain_data(complex_):
    """Per-skeleton chain data: one (complex, homotopy) pair per dimension.

    Level n has one degree-n basis element per cell and one degree-(n+1)
    element per cell of positive isotropy; fixed cells contribute a single
    basis element and a zero homotopy row.
    """
    validate(complex_)
    oracle = complex_.oracle
    levels = []
    for n in complex_.dims():
        cells = complex_.cells_of_dim(n)
        moving = [i for i, c in enumerate(cells) if c.isotropy > 0]
        ranks = {n: len(cells)}
        boundaries = {}
        maps = {}
        if moving:
            ranks[n + 1] = len(moving)
            sign = (-1) ** n
            z = GroupRingElement.zero(oracle)

            def bnd_entry(i, j, cells=cells, moving=moving, sign=sign, z=z):
                if i != moving[j]:
                    return z
                w = cells[i].word
                ginv = GroupRingElement.from_word(oracle, oracle.inverse(w))
                return (ginv - GroupRingElement.one(oracle)).scaled(sign)

            boundaries[n + 1] = GroupRingMatrix.build(
                oracle, len(cells), len(moving), bnd_entry
            )

            def hom_entry(i, j, cells=cells, moving=moving, n=n, z=z):
                if moving[i] != j:
                    return z
                cell = cells[j]
                tele = x_bracket(oracle, oracle.inverse(cell.word), cell.isotropy)
                return tele.scaled((-1) ** (n + 1))

            maps[n] = GroupRingMatrix.build(oracle, len(moving), len(cells), hom_entry)
        cx = BasedComplex.build(oracle, ranks, boundaries)
        h = Homotopy.build(oracle, maps, complex_.gamma0)
        levels.append((cx, h))
    return levels


def chi1_closed_form(complex_):
    """H_1-valued Euler characteristic of the circle action.

    Zero when a fixed cell is present; otherwise -chi(quotient)*{gamma0}.
    The value is asserted against epsilon_star of the orbit cycle.
    """
    validate(complex_)
    oracle = complex_.oracle
    group, _ = oracle.abelianization()
    if complex_.has_fixed_cell:
        value = group.zero()
    else:
        chi = complex_.cell_count_alternating()
        value = oracle.abelianize_word(complex_.gamma0).scaled(-chi)
    direct = epsilon_star(chi_s1(complex_))
    if direct != value:
        raise S1CWError("closed form disagrees with epsilon_star of the orbit cycle")
    return value


def pd_euler(complex_):
    """Poincare dual of the Euler class of the normal bundle to the orbits.

    Defined for fixed-point-free inventories; validity as an Euler-class
    computation additionally assumes the inventory models a closed oriented
    manifold, which is the caller's claim and is not checkable here.
    """
    validate(complex_)
    if complex_.has_fixed_cell:
        raise FixedPointPresent("Euler class formula needs a fixed-point-free action")
    oracle = complex_.oracle
    group, _ = oracle.abelianization()
    acc = group.zero()
    for cell in complex_.cells:
        acc = acc + oracle.abelianize_word(cell.word).scaled((-1) ** cell.dim)
    return acc


def from_seifert(data):
    """S1-CW inventory of a Seifert fibering.

    Quotient-surface cell structure: one ordinary vertex plus one vertex per
    exceptional fiber, 2*genus + r edges (plus one per boundary circle in
    the bounded case), and one face; every ordinary cell carries the fiber
    word gamma0 with isotropy 1, the exceptional vertices carry g_j with
    isotropy mu_j.
    """
    from .seifert import admissible  # local import to keep modules acyclic

    if not admissible(data):
        warnings.warn(
            "inadmissible Seifert data: component formulas downstream assume "
            "admissibility",
            stacklevel=2,
        )
    oracle = data.oracle()
    gamma0 = oracle.gamma0
    cells = [S1Cell(0, 1, gamma0)]
    for j, mu in enumerate(data.mus, start=1):
        cells.append(S1Cell(0, mu, oracle.fiber_gen(j)))
    edges = 2 * data.genus + len(data.mus)
    if not data.closed:
        edges += data.boundary
    for _ in range(edges):
        cells.append(S1Cell(1, 1, gamma0))
    cells.append(S1Cell(2, 1, gamma0))
    complex_ = S1CWComplex.build(oracle, gamma0, cells)
    if complex_.cell_count_alternating() != data.chi_surface:
        raise S1CWError("cell inventory does not match the surface Euler characteristic")
    return complex_


# -- JSON -----------------------------------------------------------------

def to_json(complex_):
    return {
        "oracle": oracle_to_json(complex_.oracle),
        "gamma0": word_to_json(complex_.gamma0),
        "cells": [
            {"dim": c.dim, "isotropy": c.isotropy, "word": word_to_json(c.word)}
            for c in complex_.cells
        ],
    }


def from_json(data):
    oracle = oracle_from_json(data["oracle"])
    gamma0 = word_from_json(data["gamma0"], oracle)
    cells = [
        S1Cell(int(c["dim"]), int(c["isotropy"]), word_from_json(c["word"], oracle))
        for c in data["cells"]
    ]
    return S1CWComplex.build(oracle, gamma0, cells)
