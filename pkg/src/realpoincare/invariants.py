"""Real semigroup generators M_sigma, m_rho, per-vertex M-values, recipe.

Two independent routes compute every M-value:

* the closed form  M_{sigma_i} = m_{sigma_i} + N_{q+1}...N_{i-1} m_rho
  for i > q (empty product for i = q+1), M_{sigma_i} = m_{sigma_i} for
  i <= q;
* the curvette pairing  M_delta = m_delta + e_rho(phi_delta) * m_rho,
  where e_rho(phi_delta) is the multiplicity of a curvette at E_delta at
  the center p_rho (an entry of the inverse proximity matrix).

Both must agree exactly; a mismatch is an internal bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .branch import BranchParam, CharExponents
from .errors import InvariantViolation
from .exact import GR_ONE
from .resolution import (
    MultiplicityTable,
    ResolutionData,
    SplittingData,
    VertexClassification,
)
from .semigroup import CheckReport, SemigroupStructure, build_structure


@dataclass(frozen=True)
class RealInvariants:
    """Generators of the real semigroup of values and the splitting weight."""

    M_sigma: tuple[int, ...]
    M_tau: tuple[int, ...]
    m_rho: int
    rho: int
    q: int
    figure2: bool
    structure: SemigroupStructure

    @property
    def conductor(self) -> int:
        return self.structure.conductor

    @property
    def N(self) -> tuple[int, ...]:
        return self.structure.N

    def as_json(self) -> dict:
        return {
            "M_sigma": list(self.M_sigma),
            "M_tau": list(self.M_tau),
            "m_rho": self.m_rho,
            "rho": self.rho,
            "q": self.q,
            "figure2": self.figure2,
            "semigroup": self.structure.as_json(),
        }


@dataclass(frozen=True)
class ConjugateBranchRecipe:
    """Complex branch whose ordinary semigroup equals the real one."""

    b: tuple[int, ...]
    parametrization: BranchParam

    def as_json(self) -> dict:
        return {
            "b": list(self.b),
            "parametrization": self.parametrization.emit().strip(),
        }


def m_rho_value(table: MultiplicityTable, splitting: SplittingData) -> int:
    """m_rho read from the multiplicity table.

    Figure-2 case: the diagonal entry at delta_C plus one per extra real
    blow-up the minimal real resolution needs before the conjugate pair
    separates (each such blow-up adds a multiplicity-one point to both
    curvettes in the pairing).
    """
    if splitting.figure2:
        return table.entry(table.delta_C, table.delta_C) + splitting.extra_blowups
    return table.entry(splitting.rho, table.delta_C)


def M_of_vertex(
    table: MultiplicityTable,
    resolution: ResolutionData,
    splitting: SplittingData,
    delta: int,
) -> int:
    """M_delta = m_delta for conjugation-fixed E_delta (delta <= rho),
    else m_delta + e_rho(phi_delta) * m_rho.

    Values refer to the materialized divisors of the minimal resolution
    of C (all conjugation-fixed in the figure-2 regime, where m_delta is
    the delta_C-column of the real resolution and is unaffected by the
    extra separating blow-ups).  The true splitting vertex of a figure-2
    branch that needs extra blow-ups lies past the materialized graph;
    its M equals m_rho by definition.
    """
    m_delta = table.m_of(delta)
    if delta <= splitting.rho:
        return m_delta
    e_rho = resolution.curvette_multiplicities(delta)[splitting.rho - 1]
    return m_delta + e_rho * m_rho_value(table, splitting)


def real_generators(
    table: MultiplicityTable,
    classification: VertexClassification,
    char: CharExponents,
    resolution: ResolutionData,
    splitting: SplittingData,
    bound: int = 0,
) -> RealInvariants:
    """The minimal generators M_sigma_0..M_sigma_g of the real semigroup."""
    q = splitting.q
    N = char.N
    m_rho = m_rho_value(table, splitting)
    M: list[int] = []
    for i, s in enumerate(classification.sigma):
        m_s = table.m_of(s)
        if i <= q:
            closed = m_s
        else:
            factor = 1
            for j in range(q + 1, i):
                factor *= N[j - 1]
            closed = m_s + factor * m_rho
        via_curvette = M_of_vertex(table, resolution, splitting, s)
        if closed != via_curvette:
            raise InvariantViolation(
                f"M_sigma_{i}: closed form {closed} != curvette route {via_curvette}"
            )
        M.append(closed)
    M_tau: list[int] = []
    for i, t in enumerate(classification.tau, start=1):
        via_curvette = M_of_vertex(table, resolution, splitting, t)
        expected = N[i - 1] * M[i]
        if via_curvette != expected:
            raise InvariantViolation(
                f"M_tau_{i}: curvette route {via_curvette} != N_{i} * M_sigma_{i} = {expected}"
            )
        M_tau.append(expected)
    e = [M[0]]
    for value in M[1:]:
        e.append(math.gcd(e[-1], value))
    expected_e = list(char.e)
    if e != expected_e:
        raise InvariantViolation(
            f"gcd chain of M {e} differs from the classical chain {expected_e}"
        )
    structure = build_structure(M, bound=bound)
    if not structure.contains(m_rho):
        raise InvariantViolation(f"m_rho = {m_rho} is not a value of the real semigroup")
    return RealInvariants(
        M_sigma=tuple(M),
        M_tau=tuple(M_tau),
        m_rho=m_rho,
        rho=splitting.rho,
        q=q,
        figure2=splitting.figure2,
        structure=structure,
    )


def geodesic_property_check(
    inv: RealInvariants,
    table: MultiplicityTable,
    resolution: ResolutionData,
    splitting: SplittingData,
) -> CheckReport:
    """M_delta - m_rho is a real value for every delta on [rho, delta_C].

    In the figure-2 regime rho and delta_C are the same vertex of the real
    resolution, so the geodesic is that single vertex with M = m_rho and
    the property holds trivially (0 is a value).
    """
    if splitting.figure2:
        return CheckReport("geodesic_property", inv.structure.contains(0))
    failures = []
    path = resolution.graph.geodesic(splitting.rho, resolution.delta_C)
    for delta in path:
        value = M_of_vertex(table, resolution, splitting, delta)
        if not inv.structure.contains(value - inv.m_rho):
            failures.append(
                f"delta={delta}: M_delta - m_rho = {value - inv.m_rho} is not in the semigroup"
            )
    return CheckReport("geodesic_property", not failures, tuple(failures))


def conjugate_branch_recipe(inv: RealInvariants) -> ConjugateBranchRecipe:
    """Exponents b_i with x = t^{b_0}, y = sum_{i>=1} t^{b_i} realizing <M>.

    b_0 = M_0, b_1 = M_1, b_{i+1} = M_{i+1} - N_i M_i + b_i: the inverse of
    the classical recursion from characteristic exponents to generators.
    """
    M = inv.M_sigma
    if len(M) == 1:
        return ConjugateBranchRecipe(
            b=(M[0],),
            parametrization=BranchParam(n=M[0], y_terms=(), source_text=""),
        )
    N = inv.N
    b = [M[0], M[1]]
    for i in range(1, len(M) - 1):
        nxt = M[i + 1] - N[i - 1] * M[i] + b[i]
        if nxt <= b[i]:
            raise InvariantViolation(
                f"recipe exponent b_{i + 1} = {nxt} does not increase past {b[i]}"
            )
        b.append(nxt)
    terms = tuple((j, GR_ONE) for j in b[1:])
    return ConjugateBranchRecipe(
        b=tuple(b),
        parametrization=BranchParam(n=b[0], y_terms=terms, source_text=""),
    )
