"""Exact trace invariants of circle actions on finite equivariant complexes.

The package computes the circle Euler characteristic of a finite
S1-equivariant cell inventory two independent ways -- the orbit-cycle
formula and the filtered chain-level trace -- reduces both to canonical
conjugacy-class components over the integral group ring, and reproduces
the closed-form Seifert-fibered-space component formulas along with the
torus-action vanishing results.
"""

from .abelian import AbelianElement, FgAbelianGroup, quotient_by_relations
from .chaincx import (
    BasedComplex,
    Homotopy,
    concat_homotopies,
    rebase,
    torsion_rep,
    verify_homotopy,
    x1_filtered,
    x1_trace,
)
from .groups import (
    ClassId,
    FiniteCyclicOracle,
    FreeAbelianOracle,
    SeifertOracle,
    UnrecognizedWord,
    Word,
)
from .groupring import (
    GroupRingElement,
    GroupRingMatrix,
    mat_trace_product,
    x_bracket,
)
from .hochschild import (
    Chain1,
    Chain2,
    Component,
    ComponentClass,
    IrreducibleTerm,
    NotACycle,
    boundary,
    canonical_decompose,
    central_action,
    dennis_trace,
    epsilon_star,
    reduce_class,
    split_components,
    trace_T1,
)
from .s1cw import S1Cell, S1CWComplex, chi1_closed_form, chi_s1, from_seifert, pd_euler, to_chain_data
from .seifert import (
    SeifertData,
    admissible,
    components_closed_form,
    dt_obstruction,
    euler_number,
    gamma0_order,
    h1,
    normalize_derivation,
    orbifold_chi,
    pd_euler_seifert,
    presentation,
    tietze_convert,
)
from .snf import smith_normal_form, solve_integer
from .t2cw import T2Cell, T2CWComplex, t2_chain_data, torus_matrices, verify_vanishing

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
