"""Numerical semigroup machinery: membership sieve, conductor, Apery sets.

Generators are kept in the order handed in (the sigma-order of the
resolution): the gcd chain e_i and the ratios N_i = e_{i-1}/e_i are
order-dependent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


def membership_sieve(generators, bound: int) -> list[bool]:
    """Coin-problem DP table: table[a] iff a is a non-negative combination."""
    table = [False] * (bound + 1)
    table[0] = True
    gens = sorted(set(g for g in generators if g > 0))
    for a in range(1, bound + 1):
        for g in gens:
            if g > a:
                break
            if table[a - g]:
                table[a] = True
                break
    return table


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a structural check; failures name clause and witness."""

    name: str
    passed: bool
    failures: tuple[str, ...] = ()

    def as_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failures": list(self.failures)}


class SemigroupStructure:
    """Membership table, conductor, gcd chain of a numerical semigroup."""

    def __init__(self, generators, bound: int = 0):
        self.generators = tuple(int(g) for g in generators)
        if not self.generators or any(g <= 0 for g in self.generators):
            raise ValidationError("generators must be positive integers")
        e = []
        acc = 0
        for g in self.generators:
            acc = math.gcd(acc, g)
            e.append(acc)
        if e[-1] != 1:
            raise ValidationError(
                f"gcd of generators is {e[-1]} != 1: not a numerical semigroup"
            )
        self.e = tuple(e)
        self.N = tuple(e[i - 1] // e[i] for i in range(1, len(e)))
        self.conductor = self._find_conductor()
        self.bound = max(bound, 2 * self.conductor + max(self.generators), 2 * max(self.generators))
        self.membership = membership_sieve(self.generators, self.bound)

    def _find_conductor(self) -> int:
        top = max(self.generators)
        size = max(4 * top, 64)
        while True:
            table = membership_sieve(self.generators, size)
            run = 0
            for a in range(size + 1):
                run = run + 1 if table[a] else 0
                if run == top:
                    return a - top + 1
            size *= 2  # no run of length max(gens) yet: sieve further

    def contains(self, a: int) -> bool:
        if a < 0:
            return False
        if a >= self.conductor:
            return True
        return self.membership[a]

    def gaps(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.conductor) if not self.membership[a])

    def members_up_to(self, bound: int) -> tuple[int, ...]:
        return tuple(a for a in range(bound + 1) if self.contains(a))

    def apery_set(self, m: int) -> tuple[int, ...]:
        """Least member in each residue class mod m; requires m in S."""
        if not self.contains(m):
            raise ValidationError(f"{m} is not a member of the semigroup")
        out: list[int | None] = [None] * m
        a = 0
        found = 0
        while found < m:
            if self.contains(a) and out[a % m] is None:
                out[a % m] = a
                found += 1
            a += 1
        return tuple(out)  # type: ignore[arg-type]

    def check_conductor_symmetry(self) -> CheckReport:
        """a in S <=> c-1-a not in S for 0 <= a < c (symmetric semigroups)."""
        failures = []
        c = self.conductor
        for a in range(c):
            if self.contains(a) == self.contains(c - 1 - a):
                failures.append(f"a={a}: membership({a})={self.contains(a)} equals membership({c - 1 - a})")
        return CheckReport("conductor_symmetry", not failures, tuple(failures))

    def check_closure(self) -> CheckReport:
        """Membership table closed under adding generators, within the bound."""
        failures = []
        for a in range(self.bound + 1):
            if not self.membership[a]:
                continue
            for g in self.generators:
                if a + g <= self.bound and not self.membership[a + g]:
                    failures.append(f"{a} in S but {a}+{g} not")
        return CheckReport("closure", not failures, tuple(failures))

    def unique_representation_counts(self, a: int) -> int:
        """Number of tuples (k_0..k_g), k_i >= 0, k_i < N_i for i >= 1,
        with sum k_i * generators[i] = a."""
        count = 0
        gens = self.generators
        caps = self.N

        def rec(idx: int, remaining: int):
            nonlocal count
            if idx == 0:
                if remaining % gens[0] == 0:
                    count += 1
                return
            step = gens[idx]
            for k in range(caps[idx - 1]):
                rest = remaining - k * step
                if rest < 0:
                    break
                rec(idx - 1, rest)

        rec(len(gens) - 1, a)
        return count

    def as_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "e": list(self.e),
            "N": list(self.N),
            "conductor": self.conductor,
        }


def build_structure(generators, bound: int = 0) -> SemigroupStructure:
    return SemigroupStructure(generators, bound)


def lemma_structure_check(M, N) -> CheckReport:
    """Structural clauses satisfied by the minimal generators M_sigma_i.

    For each i >= 1, with the prior subsemigroup <M_0..M_{i-1}>:
      (a) (N_i - 1) * M_i is not in it;
      (b) N_i * M_i is in it;
      (c) N_i * M_i < M_{i+1} (when i < g);
      (d) gcd(M_0..M_i) follows the N-chain;
    plus minimal generation: no M_i lies in the semigroup of the others.
    """
    M = tuple(M)
    N = tuple(N)
    failures = []
    if len(N) != len(M) - 1:
        return CheckReport("lemma_structure", False, (f"length mismatch: {len(M)} generators, {len(N)} ratios",))
    e = [M[0]]
    for i in range(1, len(M)):
        e.append(math.gcd(e[-1], M[i]))
    for i in range(1, len(M)):
        prior = M[:i]
        bound = N[i - 1] * M[i] + 1
        table = membership_sieve(prior, bound)
        a_val = (N[i - 1] - 1) * M[i]
        if a_val <= bound and table[a_val]:
            failures.append(f"clause (a) i={i}: {a_val} is in <{', '.join(map(str, prior))}>")
        b_val = N[i - 1] * M[i]
        if not table[b_val]:
            failures.append(f"clause (b) i={i}: {b_val} not in <{', '.join(map(str, prior))}>")
        if i < len(M) - 1 and not N[i - 1] * M[i] < M[i + 1]:
            failures.append(f"clause (c) i={i}: {N[i - 1] * M[i]} >= {M[i + 1]}")
        if e[i - 1] // e[i] != N[i - 1]:
            failures.append(f"clause (d) i={i}: gcd chain gives {e[i - 1] // e[i]}, expected N_{i}={N[i - 1]}")
    for i in range(len(M)):
        others = M[:i] + M[i + 1 :]
        if not others:
            continue
        table = membership_sieve(others, M[i])
        if table[M[i]]:
            failures.append(f"minimality: M_{i}={M[i]} lies in the semigroup of the others")
    return CheckReport("lemma_structure", not failures, tuple(failures))
