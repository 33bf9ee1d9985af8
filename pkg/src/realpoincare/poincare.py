"""The three series P^S, P, P^R as cyclotomic fractions, and expansions.

A fraction is held as two exponent multisets meaning

    prod_a (1 - t^a)  /  prod_b (1 - t^b),

normalized so no exponent appears on both sides.  Expansion multiplies
out the numerator binomials over the integers and divides by each
denominator binomial through the ascending recurrence; coefficients are
exact integers at every step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .exact import IntegerSeries
from .invariants import RealInvariants
from .semigroup import CheckReport, SemigroupStructure


@dataclass(frozen=True)
class CyclotomicFraction:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    @staticmethod
    def of(numerator, denominator, normalize: bool = True) -> "CyclotomicFraction":
        num = Counter(numerator)
        den = Counter(denominator)
        if any(a <= 0 for a in num) or any(b <= 0 for b in den):
            raise ValueError("binomial exponents must be positive")
        if normalize:
            for a in sorted(set(num) & set(den)):
                cancel = min(num[a], den[a])
                num[a] -= cancel
                den[a] -= cancel
        return CyclotomicFraction(
            numerator=tuple(sorted(a for a in num.elements())),
            denominator=tuple(sorted(b for b in den.elements())),
        )

    def times_binomial(self, exponent: int) -> "CyclotomicFraction":
        """Multiply by (1 - t^exponent)."""
        return CyclotomicFraction.of(self.numerator + (exponent,), self.denominator)

    def over_binomial(self, exponent: int) -> "CyclotomicFraction":
        """Divide by (1 - t^exponent)."""
        return CyclotomicFraction.of(self.numerator, self.denominator + (exponent,))

    def expand(self, order: int) -> IntegerSeries:
        series = IntegerSeries.one(order)
        for a in self.numerator:
            if a <= order:
                series = series.mul_one_minus_power(a)
        for b in self.denominator:
            series = series.div_one_minus_power(b) if b <= order else series
        return series

    def factored(self) -> str:
        def prod(exps):
            return "".join(f"(1-t^{a})" for a in exps) or "1"

        if not self.denominator:
            return prod(self.numerator)
        return f"{prod(self.numerator)} / ({prod(self.denominator)})"

    def as_json(self) -> dict:
        return {"num": list(self.numerator), "den": list(self.denominator)}


def semigroup_series(inv: RealInvariants) -> CyclotomicFraction:
    """P^S = prod(1 - t^{M_tau_i}) / prod(1 - t^{M_sigma_i})."""
    return CyclotomicFraction.of(inv.M_tau, inv.M_sigma)


def semigroup_series_from_generators(generators, N) -> CyclotomicFraction:
    """Same fraction from a raw generator list (real-branch path)."""
    gens = tuple(generators)
    taus = tuple(N[i] * gens[i + 1] for i in range(len(gens) - 1))
    return CyclotomicFraction.of(taus, gens)


def classical_and_real_series(
    ps: CyclotomicFraction, m_rho: int
) -> tuple[CyclotomicFraction, CyclotomicFraction]:
    """P = P^S (1 + t^{m_rho}) = P^S (1-t^{2 m_rho})/(1-t^{m_rho});
    P^R = P^S (1 - t^{m_rho})."""
    if m_rho <= 0:
        raise ValueError("m_rho must be positive")
    P = ps.times_binomial(2 * m_rho).over_binomial(m_rho)
    PR = ps.times_binomial(m_rho)
    return P, PR


def dimension_profile_closed_form(
    structure: SemigroupStructure, m_rho: int | None, bound: int
) -> list[int]:
    """dims(a) = [a in S] + [a - m_rho in S]; second term absent for a
    conjugation-invariant branch (no splitting, dims lie in {0, 1})."""
    out = []
    for a in range(bound + 1):
        d = 1 if structure.contains(a) else 0
        if m_rho is not None and structure.contains(a - m_rho):
            d += 1
        out.append(d)
    return out


def symmetry_check(dims: list[int], conductor: int, m_rho: int) -> CheckReport:
    """dims(a) + dims(c + m_rho - 1 - a) = 2 for 0 <= a <= c + m_rho - 1."""
    window = conductor + m_rho
    failures = []
    if len(dims) < window + 1:
        return CheckReport(
            "dimension_symmetry",
            False,
            (f"profile covers {len(dims) - 1} < c + m_rho = {window}",),
        )
    for a in range(window):
        total = dims[a] + dims[window - 1 - a]
        if total != 2:
            failures.append(f"a={a}: dims({a}) + dims({window - 1 - a}) = {total} != 2")
    return CheckReport("dimension_symmetry", not failures, tuple(failures))


@dataclass(frozen=True)
class SeriesBundle:
    """Everything the series commands emit for one branch."""

    PS: CyclotomicFraction
    P: CyclotomicFraction | None
    PR: CyclotomicFraction | None
    m_rho: int | None
    order: int
    expansions: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        out = {
            "PS": self.PS.as_json(),
            "P": self.P.as_json() if self.P else None,
            "PR": self.PR.as_json() if self.PR else None,
            "m_rho": self.m_rho,
            "factored": {
                "PS": self.PS.factored(),
                "P": self.P.factored() if self.P else None,
                "PR": self.PR.factored() if self.PR else None,
            },
            "expansion": {
                "order": self.order,
                "coefficients": {k: v.coeffs for k, v in self.expansions.items()},
            },
        }
        return out


def build_series_bundle(
    structure: SemigroupStructure,
    ps: CyclotomicFraction,
    m_rho: int | None,
    order: int | None = None,
) -> SeriesBundle:
    """Expand P^S (and P, P^R when a splitting exists) to the default order
    c + 2 m_rho + 16."""
    c = structure.conductor
    if order is None:
        order = c + 2 * (m_rho or 0) + 16
    expansions = {"PS": ps.expand(order)}
    P = PR = None
    if m_rho is not None:
        P, PR = classical_and_real_series(ps, m_rho)
        expansions["P"] = P.expand(order)
        expansions["PR"] = PR.expand(order)
    return SeriesBundle(PS=ps, P=P, PR=PR, m_rho=m_rho, order=order, expansions=expansions)
