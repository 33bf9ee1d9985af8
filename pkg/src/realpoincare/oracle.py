"""Definition-faithful verification: jet-matrix ranks and a second sieve.

``dims_bruteforce`` computes dim J(a)/J(a+1) straight from the filtration
J(a) = {real polynomials f : ord_t f(t^n, y(t)) >= a}: one block of two
rows per t-order (real and imaginary part of the order-a coefficient),
one column per monomial x^i y^j of total degree <= D; the dimension at a
is the rank increase contributed by block a.  Elimination is exact
(integer rows, fraction-free reduction, gcd-normalized) and the pivot
order is deterministic: first nonzero column, rows in matrix order.

Nothing here consults the resolution, rho, or the M-generators:
agreement with the closed form is genuine evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .branch import BranchParam, validate
from .errors import ResourceError
from .exact import GR_ZERO, GaussianRational

DEFAULT_SIZE_CAP = 4096


@dataclass(frozen=True)
class OracleProfile:
    """Brute-force dimension profile dims[0..a_max] with matrix metadata."""

    dims: tuple[int, ...]
    a_max: int
    degree_used: int
    rows: int
    columns_total: int
    columns_active: int

    def as_json(self) -> dict:
        return {
            "a_max": self.a_max,
            "D_used": self.degree_used,
            "matrix_shape": [self.rows, self.columns_total],
            "columns_active": self.columns_active,
            "dims": list(self.dims),
        }


def semigroup_enumerate(generators, bound: int) -> list[bool]:
    """Independent membership table: worklist closure instead of the DP scan.

    Kept deliberately different from semigroup.membership_sieve; the two
    implementations cross-validate each other.
    """
    table = [False] * (bound + 1)
    table[0] = True
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for g in generators:
            b = a + g
            if b <= bound and not table[b]:
                table[b] = True
                frontier.append(b)
    return table


def _composition_coefficients(branch: BranchParam, a_max: int, degree: int):
    """Per-monomial t-coefficients of x^i y^j up to order a_max.

    Yields ((i, j), {order: coefficient}) for monomials of total degree
    <= degree whose composition order does not exceed a_max; monomials of
    higher order vanish in every considered row block and are skipped.
    """
    n = branch.n
    y = branch.y_dict
    ord_y = branch.y_order
    mult = branch.multiplicity
    y_pows: list[dict[int, GaussianRational]] = [{0: GaussianRational.of(1)}]
    max_j = degree if ord_y * 1 <= a_max else 0
    for _ in range(max_j):
        prev = y_pows[-1]
        nxt: dict[int, GaussianRational] = {}
        for k, c in prev.items():
            for e, d in y.items():
                ke = k + e
                if ke > a_max:
                    continue
                acc = nxt.get(ke, GR_ZERO) + c * d
                if acc.is_zero():
                    nxt.pop(ke, None)
                else:
                    nxt[ke] = acc
        y_pows.append(nxt)
    for i in range(degree + 1):
        base = n * i
        if base > a_max:
            break
        for j in range(degree + 1 - i):
            order = base + (ord_y * j if j else 0)
            if order > a_max:
                break
            if order < mult * (i + j):
                raise ValueError(
                    f"composition order {order} below multiplicity bound for x^{i} y^{j}"
                )
            if j < len(y_pows):
                coeffs = {base + k: c for k, c in y_pows[j].items() if base + k <= a_max}
                yield (i, j), coeffs


def _integer_row(fractions_row: list[Fraction]) -> list[int]:
    lcm = 1
    for f in fractions_row:
        if f:
            lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    row = [int(f * lcm) for f in fractions_row]
    g = 0
    for v in row:
        g = math.gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


class _Eliminator:
    """Incremental fraction-free row echelon with deterministic pivots.

    Pivot rows have zeros strictly before their pivot column, so reducing
    a new row at its leading column strictly advances that column; the
    loop terminates and every pivot column stays unique.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_by_col: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_by_col)

    def add_row(self, row: list[int]) -> bool:
        """Reduce against current pivots; returns True if the rank grew."""
        start = 0
        while True:
            lead = next((c for c in range(start, self.ncols) if row[c]), None)
            if lead is None:
                return False
            piv = self.pivot_by_col.get(lead)
            if piv is None:
                g = 0
                for v in row:
                    g = math.gcd(g, v)
                if g > 1:
                    row = [v // g for v in row]
                if row[lead] < 0:
                    row = [-v for v in row]
                self.pivot_by_col[lead] = row
                return True
            factor = row[lead]
            pl = piv[lead]
            row = [pl * a - factor * b for a, b in zip(row, piv)]
            g = 0
            for v in row:
                g = math.gcd(g, v)
            if g > 1:
                row = [v // g for v in row]
            start = lead + 1


def dims_bruteforce(
    branch: BranchParam,
    a_max: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    degree: int | None = None,
) -> OracleProfile:
    """Rank-difference dimensions of J(a)/J(a+1) for 0 <= a <= a_max.

    D = floor(a_max / multiplicity) + 1 bounds the monomial degree: the
    valuation of a degree-d monomial is at least mult*d, so higher-degree
    monomials cannot realize any order <= a_max.  ``degree`` overrides D
    (used by the D-doubling soundness spot check).
    """
    validate(branch).raise_if_invalid()
    rows = 2 * (a_max + 1)
    if rows > size_cap:
        raise ResourceError(
            f"jet matrix needs {rows} rows for a_max={a_max}, above the size cap "
            f"{size_cap}; lower --max-order or raise --size-cap"
        )
    mult = branch.multiplicity
    if degree is None:
        degree = a_max // mult + 1
    columns_total = (degree + 1) * (degree + 2) // 2
    monomials = list(_composition_coefficients(branch, a_max, degree))
    ncols = len(monomials)
    # per-order blocks: block[a] has one (re, im) coefficient pair per column
    blocks: list[list[tuple[Fraction, Fraction]]] = [
        [(Fraction(0), Fraction(0))] * ncols for _ in range(a_max + 1)
    ]
    for cidx, (_, coeffs) in enumerate(monomials):
        for order, value in coeffs.items():
            blocks[order][cidx] = (value.re, value.im)
    elim = _Eliminator(ncols)
    dims: list[int] = []
    for a in range(a_max + 1):
        before = elim.rank
        re_row = _integer_row([pair[0] for pair in blocks[a]])
        im_row = _integer_row([pair[1] for pair in blocks[a]])
        elim.add_row(re_row)
        elim.add_row(im_row)
        grown = elim.rank - before
        if grown not in (0, 1, 2):
            raise ValueError(f"rank grew by {grown} at order {a}")
        dims.append(grown)
    return OracleProfile(
        dims=tuple(dims),
        a_max=a_max,
        degree_used=degree,
        rows=rows,
        columns_total=columns_total,
        columns_active=ncols,
    )


@dataclass(frozen=True)
class Mismatch:
    position: int
    quantity: str
    expected: int
    got: int

    def as_json(self) -> dict:
        return {
            "a": self.position,
            "quantity": self.quantity,
            "expected": self.expected,
            "got": self.got,
        }


def compare_profiles(
    reference: list[int], candidate: list[int], quantity: str
) -> list[Mismatch]:
    """Elementwise diff over the common range (reference first)."""
    out = []
    for a in range(min(len(reference), len(candidate))):
        if reference[a] != candidate[a]:
            out.append(Mismatch(a, quantity, reference[a], candidate[a]))
    return out
