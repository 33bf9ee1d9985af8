"""Branch input: parsing, validation, conjugation, reality, valuation.

A branch is an exact parametrization x = t^n, y = sum a_j t^j with
coefficients a_j in Q(i).  The input grammar (UTF-8, '#' comments,
whitespace insignificant inside expressions):

    n = <positive integer>
    y = <term> ( ('+'|'-') <term> )*
    term  := [coeff '*'] 't' '^' <positive integer>
    coeff := rat | 'i' | rat '*' 'i' | '(' rat (('+'|'-') (rat '*')? 'i') ')'
    rat   := integer | integer '/' positive-integer

``y = 0`` denotes the smooth axis.  Duplicate exponents are summed and
zero coefficients dropped.  Statements may also be separated by '/' as
in ``n = 4 / y = i*t^6 + t^7`` (a '/' immediately followed by ``n =`` or
``y =`` is a separator, never a fraction bar).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .exact import GR_ZERO, GaussianRational, TruncatedSeries

Polynomial2 = dict[tuple[int, int], Fraction]
"""A real bivariate polynomial as {(deg_x, deg_y): coefficient}."""


@dataclass(frozen=True)
class BranchParam:
    """Exact parametrization x = t^n, y(t) = sum of y_terms."""

    n: int
    y_terms: tuple[tuple[int, GaussianRational], ...]
    source_text: str = ""

    @property
    def y_dict(self) -> dict[int, GaussianRational]:
        return dict(self.y_terms)

    @property
    def y_order(self):
        """ord_t y(t); +inf for y = 0."""
        return self.y_terms[0][0] if self.y_terms else math.inf

    @property
    def multiplicity(self) -> int:
        return min(self.n, self.y_order) if self.y_terms else self.n

    @property
    def is_smooth(self) -> bool:
        return self.multiplicity == 1

    def y_series(self, truncation=None) -> TruncatedSeries:
        return TruncatedSeries.from_terms(self.y_dict, truncation)

    def support(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.y_terms)

    def emit(self) -> str:
        """Render back into the input grammar (reparses to an equal branch)."""
        lines = [f"n = {self.n}"]
        if not self.y_terms:
            lines.append("y = 0")
            return "\n".join(lines) + "\n"
        parts: list[str] = []
        for j, c in self.y_terms:
            term, sign = _emit_term(j, c)
            if not parts:
                parts.append(term if sign > 0 else f"-{term}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {term}")
        lines.append("y = " + " ".join(parts))
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        if not self.y_terms:
            return f"(t^{self.n}, 0)"
        body = " + ".join(f"({c})*t^{j}" for j, c in self.y_terms)
        return f"(t^{self.n}, {body})"


def _emit_term(j: int, c: GaussianRational) -> tuple[str, int]:
    """A grammar term for c*t^j plus the sign to hoist into the term list."""
    mono = f"t^{j}"
    if c.is_real():
        mag = abs(c.re)
        sign = 1 if c.re > 0 else -1
        coeff = "" if mag == 1 else f"{mag}*"
        return coeff + mono, sign
    if c.re == 0:
        mag = abs(c.im)
        sign = 1 if c.im > 0 else -1
        coeff = "i*" if mag == 1 else f"{mag}*i*"
        return coeff + mono, sign
    re_part = str(c.re)
    mag = abs(c.im)
    im_part = "i" if mag == 1 else f"{mag}*i"
    op = "+" if c.im > 0 else "-"
    return f"({re_part}{op}{im_part})*{mono}", 1


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\d+|[A-Za-z]+|[-+*/^()=]|\S")
_STMT_SPLIT = re.compile(r"/(?=\s*[ny]\s*=)")


class _Tokens:
    def __init__(self, text: str, line: int, col_offset: int = 0):
        self.line = line
        self.items: list[tuple[str, int]] = []
        for m in _TOKEN_RE.finditer(text):
            self.items.append((m.group(0), m.start() + col_offset + 1))
        self.pos = 0

    def peek(self):
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    def column(self) -> int:
        if self.pos < len(self.items):
            return self.items[self.pos][1]
        return self.items[-1][1] + len(self.items[-1][0]) if self.items else 1

    def next(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, wanted: str):
        tok = self.peek()
        if tok != wanted:
            self.fail(f"expected {wanted!r}, found {tok!r}" if tok else f"expected {wanted!r}")
        return self.next()

    def fail(self, message: str):
        raise ParseError(message, self.line, self.column())


def _parse_int(tk: _Tokens) -> int:
    tok = tk.peek()
    if tok is None or not tok.isdigit():
        tk.fail(f"expected an integer, found {tok!r}")
    tk.next()
    return int(tok)


def _parse_rat(tk: _Tokens, sign: int = 1) -> Fraction:
    num = _parse_int(tk)
    if tk.peek() == "/":
        tk.next()
        den = _parse_int(tk)
        if den == 0:
            tk.fail("zero denominator")
        return Fraction(sign * num, den)
    return Fraction(sign * num)


def _parse_simple_coeff(tk: _Tokens, sign: int) -> GaussianRational:
    """rat, rat*i or i (no parentheses)."""
    if tk.peek() == "i":
        tk.next()
        return GaussianRational.of(0, sign)
    value = _parse_rat(tk, sign)
    if tk.peek() == "*":
        # lookahead: rat '*' i versus rat '*' t
        save = tk.pos
        tk.next()
        if tk.peek() == "i":
            tk.next()
            return GaussianRational.of(0, value)
        tk.pos = save
    return GaussianRational.of(value, 0)


def _parse_paren_coeff(tk: _Tokens) -> GaussianRational:
    tk.expect("(")
    total = GR_ZERO
    sign = 1
    if tk.peek() in ("+", "-"):
        sign = -1 if tk.next() == "-" else 1
    while True:
        total = total + _parse_simple_coeff(tk, sign)
        tok = tk.peek()
        if tok == ")":
            tk.next()
            return total
        if tok in ("+", "-"):
            sign = -1 if tk.next() == "-" else 1
            continue
        tk.fail(f"expected '+', '-' or ')' inside coefficient, found {tok!r}")


def _parse_term(tk: _Tokens, sign: int) -> tuple[int, GaussianRational]:
    """One term: returns (exponent, coefficient); exponent 0 for constants."""
    coeff = GaussianRational.of(sign, 0)
    has_coeff = False
    tok = tk.peek()
    if tok == "(":
        coeff = _scale(_parse_paren_coeff(tk), sign)
        has_coeff = True
    elif tok == "i" or (tok is not None and tok.isdigit()):
        coeff = _scale(_parse_simple_coeff(tk, 1), sign)
        has_coeff = True
    if has_coeff:
        if tk.peek() == "*":
            tk.next()
            tk.expect("t")
        elif tk.peek() == "t":
            tk.fail("missing '*' between coefficient and t")
        else:
            return 0, coeff  # bare constant; only 0 survives validation
    else:
        tk.expect("t")
    tk.expect("^")
    col = tk.column()
    exponent = _parse_int(tk)
    if exponent <= 0:
        raise ParseError("exponent must be positive", tk.line, col)
    return exponent, coeff


def _scale(c: GaussianRational, sign: int) -> GaussianRational:
    return c if sign == 1 else -c


def _parse_y_expr(tk: _Tokens) -> dict[int, GaussianRational]:
    terms: dict[int, GaussianRational] = {}
    sign = 1
    if tk.peek() in ("+", "-"):
        sign = -1 if tk.next() == "-" else 1
    while True:
        col = tk.column()
        exponent, coeff = _parse_term(tk, sign)
        if exponent == 0 and not coeff.is_zero():
            raise ParseError("constant term must be zero (germ through the origin)", tk.line, col)
        if exponent > 0:
            acc = terms.get(exponent, GR_ZERO) + coeff
            if acc.is_zero():
                terms.pop(exponent, None)
            else:
                terms[exponent] = acc
        tok = tk.peek()
        if tok is None:
            return terms
        if tok in ("+", "-"):
            sign = -1 if tk.next() == "-" else 1
            continue
        tk.fail(f"expected '+' or '-' between terms, found {tok!r}")


def parse_branch(text: str) -> BranchParam:
    """Parse branch input text into an exact :class:`BranchParam`."""
    n: int | None = None
    y: dict[int, GaussianRational] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        segments = []
        start = 0
        for sep in _STMT_SPLIT.finditer(line):
            segments.append((line[start:sep.start()], start))
            start = sep.end()
        segments.append((line[start:], start))
        for stmt, offset in segments:
            if not stmt.strip():
                continue
            tk = _Tokens(stmt, lineno, offset)
            head = tk.next()
            if head == "n":
                tk.expect("=")
                if n is not None:
                    tk.fail("duplicate 'n ='")
                col = tk.column()
                n = _parse_int(tk)
                if n <= 0:
                    raise ParseError("n must be a positive integer", lineno, col)
                if tk.peek() is not None:
                    tk.fail(f"unexpected trailing input {tk.peek()!r}")
            elif head == "y":
                tk.expect("=")
                if y is not None:
                    tk.fail("duplicate 'y ='")
                y = _parse_y_expr(tk)
            else:
                tk.pos = 0
                tk.fail(f"expected 'n =' or 'y =', found {head!r}")
    if n is None:
        raise ParseError("missing 'n =' statement")
    if y is None:
        raise ParseError("missing 'y =' statement")
    return BranchParam(n=n, y_terms=tuple(sorted(y.items())), source_text=text)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    multiplicity: int
    smooth: bool
    reasons: tuple[str, ...] = ()

    def raise_if_invalid(self):
        if not self.valid:
            raise ValidationError("; ".join(self.reasons))


def validate(b: BranchParam) -> ValidationReport:
    """Check primitivity and the standing normalization ord y >= n."""
    reasons: list[str] = []
    g = b.n
    for j in b.support():
        g = math.gcd(g, j)
    if b.y_terms:
        if g != 1:
            reasons.append(
                f"non-primitive parametrization: gcd(n, exponents) = {g} > 1"
            )
    elif b.n > 1:
        reasons.append(f"non-primitive parametrization: y = 0 needs n = 1, got n = {b.n}")
    mult = b.multiplicity
    if mult > 1 and b.y_order < b.n:
        reasons.append(
            f"ord y = {b.y_order} < n = {b.n}: write the branch with x carrying "
            "the multiplicity (exchange the axes)"
        )
    return ValidationReport(
        valid=not reasons,
        multiplicity=mult,
        smooth=mult == 1,
        reasons=tuple(reasons),
    )


# ---------------------------------------------------------------------------
# conjugation and reality
# ---------------------------------------------------------------------------

def conjugate(b: BranchParam) -> BranchParam:
    """The complex conjugate branch: same n, conjugated coefficients."""
    return BranchParam(
        n=b.n,
        y_terms=tuple((j, c.conjugate()) for j, c in b.y_terms),
        source_text=b.source_text,
    )


def _quarter_turns(r: GaussianRational) -> int | None:
    """m with r = i^m when r is a fourth root of unity, else None."""
    for m, value in enumerate((GaussianRational.of(1), GaussianRational.of(0, 1),
                               GaussianRational.of(-1), GaussianRational.of(0, -1))):
        if r == value:
            return m
    return None


def _unit_ratios(b: BranchParam) -> list[tuple[int, int]] | None:
    """(j, m_j) with a_j/conj(a_j) = i^{m_j}, or None when some ratio is not one."""
    out = []
    for j, a in b.y_terms:
        m = _quarter_turns(a / a.conjugate())
        if m is None:
            return None
        out.append((j, m))
    return out


def is_real_branch(b: BranchParam) -> tuple[bool, int | None]:
    """Does some substitution t -> zeta*t, zeta^n = 1, make all coefficients real?

    Returns (flag, witness k) with zeta = exp(2*pi*i*k/n).  The coefficient
    a_j * zeta^j is real iff 8*j*k = -m_j*n (mod 4n) where a_j/conj(a_j) = i^{m_j};
    if some ratio a_j/conj(a_j) is not a fourth root of unity no zeta works.
    """
    ratios = _unit_ratios(b)
    if ratios is None:
        return False, None
    n = b.n
    for k in range(n):
        if all((8 * j * k + m * n) % (4 * n) == 0 for j, m in ratios):
            return True, k
    return False, None


def is_conjugation_invariant(b: BranchParam) -> tuple[bool, int | None]:
    """Does the branch equal its conjugate as a germ (C = conj(C))?

    Equivalent to some zeta with zeta^n = 1 and conj(a_j)*zeta^j = a_j for
    all j, i.e. 4*j*k = m_j*n (mod 4n) for all j.  Strictly weaker than
    :func:`is_real_branch`: e.g. (t^2, i t^3) is invariant (it satisfies the
    real equation y^2 + x^3 = 0) yet no zeta makes its coefficients real.
    """
    ratios = _unit_ratios(b)
    if ratios is None:
        return False, None
    n = b.n
    for k in range(n):
        if all((4 * j * k - m * n) % (4 * n) == 0 for j, m in ratios):
            return True, k
    return False, None


# ---------------------------------------------------------------------------
# characteristic exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharExponents:
    """beta_0 = n < beta_1 < ... < beta_g with the gcd chain e_i."""

    beta: tuple[int, ...]
    e: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.beta) - 1

    @property
    def N(self) -> tuple[int, ...]:
        return tuple(self.e[i - 1] // self.e[i] for i in range(1, len(self.e)))

    def classical_generators(self) -> tuple[int, ...]:
        """Minimal generators of the value semigroup of C.

        mbar_0 = beta_0, mbar_1 = beta_1,
        mbar_{i+1} = N_i*mbar_i + beta_{i+1} - beta_i.
        """
        if self.genus == 0:
            return (1,)
        gens = [self.beta[0], self.beta[1]]
        for i in range(1, self.genus):
            gens.append(self.N[i - 1] * gens[i] + self.beta[i + 1] - self.beta[i])
        return tuple(gens)


def char_exponents(b: BranchParam) -> CharExponents:
    """Characteristic exponents: support exponents where the gcd drops.

    Support exponents divisible by the running gcd are not characteristic
    and are skipped (they are absorbed by coordinate changes).
    """
    report = validate(b)
    report.raise_if_invalid()
    if b.is_smooth:
        raise ValidationError("smooth branch has no characteristic exponents")
    beta = [b.n]
    e = [b.n]
    for j in b.support():
        g = math.gcd(e[-1], j)
        if g < e[-1]:
            beta.append(j)
            e.append(g)
        if g == 1 and len(e) > 1:
            break
    if e[-1] != 1:
        raise ValidationError("exponent gcd never reaches 1 (non-primitive)")
    return CharExponents(beta=tuple(beta), e=tuple(e))


def multiplicity_sequence_from_char(ce: CharExponents) -> tuple[int, ...]:
    """Multiplicity sequence predicted by the characteristic exponents.

    Subtractive Euclid on (n, beta_1 - 0...) stage by stage; used as an
    independent cross-check of the blow-up simulation.
    """
    mults: list[int] = []
    a = ce.beta[0]
    for i in range(1, len(ce.beta)):
        b = ce.beta[i] - (ce.beta[i - 1] if i > 1 else 0)
        while b > 0:
            m = min(a, b)
            mults.append(m)
            a, b = m, max(a, b) - m
        # stage ends when the remainder hits zero; a == e_i here
    return tuple(mults)


# ---------------------------------------------------------------------------
# the curve valuation on polynomials
# ---------------------------------------------------------------------------

def value_of(b: BranchParam, f: Polynomial2):
    """nu_C(f) = ord_t f(t^n, y(t)); INFINITE (math.inf) iff f vanishes on C.

    Exact polynomial composition, no truncation involved.
    """
    y = b.y_series()
    max_y_deg = max((dy for (_, dy) in f), default=0)
    y_pows: list[TruncatedSeries] = [TruncatedSeries.monomial(0)]
    for _ in range(max_y_deg):
        y_pows.append(y_pows[-1] * y)
    total = TruncatedSeries.zero()
    for (dx, dy), c in f.items():
        if c == 0:
            continue
        term = y_pows[dy].shift(b.n * dx).scale(GaussianRational.of(c, 0))
        total = total + term
    return total.order()
