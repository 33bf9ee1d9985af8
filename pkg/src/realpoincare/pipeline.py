"""Orchestration: one entry point per CLI/service command.

``analyze_text`` runs parsing, validation, resolution, splitting,
multiplicity table, classification and the real invariants, asserting
every cross-module identity on the way (classical generators versus the
characteristic-exponent recursion, the conductor versus the multiplicity
sequence, the two M-routes).  ``run_verification`` is the full compare
suite behind the ``verify`` command; it is the union of every module's
property checks on one input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import branch as branch_mod
from .branch import BranchParam, CharExponents, parse_branch, validate
from .errors import InvariantViolation, ValidationError
from .invariants import (
    ConjugateBranchRecipe,
    RealInvariants,
    conjugate_branch_recipe,
    geodesic_property_check,
)
from .invariants import real_generators as _real_generators
from .oracle import (
    DEFAULT_SIZE_CAP,
    OracleProfile,
    compare_profiles,
    dims_bruteforce,
    semigroup_enumerate,
)
from .poincare import (
    CyclotomicFraction,
    SeriesBundle,
    build_series_bundle,
    classical_and_real_series,
    dimension_profile_closed_form,
    semigroup_series,
    semigroup_series_from_generators,
    symmetry_check,
)
from .resolution import (
    MultiplicityTable,
    ResolutionData,
    SplittingData,
    VertexClassification,
    classify_vertices,
    mirror_graph_for_display,
    multiplicity_table,
    resolve,
    splitting_search,
)
from .semigroup import (
    CheckReport,
    SemigroupStructure,
    build_structure,
    lemma_structure_check,
    membership_sieve,
)


@dataclass
class BranchAnalysis:
    """Everything the pipeline derives from one branch."""

    branch: BranchParam
    multiplicity: int
    smooth: bool
    real_form: bool
    real_witness: int | None
    conjugation_invariant: bool
    degenerate: bool  # no splitting: smooth or C = conj(C)
    char: CharExponents | None = None
    resolution: ResolutionData | None = None
    table: MultiplicityTable | None = None
    classification: VertexClassification | None = None
    splitting: SplittingData | None = None
    classical_generators: tuple[int, ...] = (1,)
    classical_structure: SemigroupStructure | None = None
    invariants: RealInvariants | None = None
    recipe: ConjugateBranchRecipe | None = None

    @property
    def effective_structure(self) -> SemigroupStructure:
        """Real semigroup when a splitting exists, else the classical one."""
        if self.invariants is not None:
            return self.invariants.structure
        assert self.classical_structure is not None
        return self.classical_structure

    @property
    def m_rho(self) -> int | None:
        return self.invariants.m_rho if self.invariants is not None else None

    def semigroup_fraction(self) -> CyclotomicFraction:
        if self.invariants is not None:
            return semigroup_series(self.invariants)
        if self.smooth:
            return CyclotomicFraction.of((), (1,))
        assert self.classical_structure is not None
        return semigroup_series_from_generators(
            self.classical_structure.generators, self.classical_structure.N
        )

    def series_bundle(self, order: int | None = None) -> SeriesBundle:
        return build_series_bundle(
            self.effective_structure, self.semigroup_fraction(), self.m_rho, order
        )


def analyze_branch(b: BranchParam) -> BranchAnalysis:
    report = validate(b)
    report.raise_if_invalid()
    real_form, witness = branch_mod.is_real_branch(b)
    invariant, _ = branch_mod.is_conjugation_invariant(b)
    if real_form and not invariant:
        raise InvariantViolation("a real-parametrizable branch must be invariant")
    analysis = BranchAnalysis(
        branch=b,
        multiplicity=report.multiplicity,
        smooth=report.smooth,
        real_form=real_form,
        real_witness=witness,
        conjugation_invariant=invariant,
        degenerate=report.smooth or invariant,
    )
    if report.smooth:
        analysis.classical_structure = build_structure((1,))
        return analysis
    ce = branch_mod.char_exponents(b)
    analysis.char = ce
    resolution = resolve(b)
    analysis.resolution = resolution
    expected_mults = branch_mod.multiplicity_sequence_from_char(ce)
    if resolution.multiplicities != expected_mults:
        raise InvariantViolation(
            f"multiplicity sequence {resolution.multiplicities} does not match "
            f"the characteristic exponents' prediction {expected_mults}"
        )
    table = multiplicity_table(resolution)
    analysis.table = table
    classification = classify_vertices(resolution, ce.genus)
    m_sigma = tuple(table.m_of(s) for s in classification.sigma)
    if m_sigma != ce.classical_generators():
        raise InvariantViolation(
            f"classical generators {m_sigma} disagree with the recursion "
            f"{ce.classical_generators()}"
        )
    for i, t in enumerate(classification.tau, start=1):
        if table.m_of(t) != ce.N[i - 1] * m_sigma[i]:
            raise InvariantViolation(f"m_tau_{i} != N_{i} * m_sigma_{i}")
    analysis.classical_generators = m_sigma
    classical = build_structure(m_sigma)
    analysis.classical_structure = classical
    noether = sum(m * (m - 1) for m in resolution.multiplicities)
    if noether != classical.conductor:
        raise InvariantViolation(
            f"sum m(m-1) = {noether} differs from the classical conductor "
            f"{classical.conductor}"
        )
    if analysis.degenerate:
        analysis.classification = classification
        return analysis
    splitting = splitting_search(b, resolution, classification.tau)
    analysis.splitting = splitting
    analysis.classification = classify_vertices(resolution, ce.genus, splitting)
    inv = _real_generators(table, classification, ce, resolution, splitting)
    analysis.invariants = inv
    analysis.recipe = conjugate_branch_recipe(inv)
    return analysis


def analyze_text(text: str) -> BranchAnalysis:
    return analyze_branch(parse_branch(text))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def analysis_report(analysis: BranchAnalysis) -> dict:
    b = analysis.branch
    out: dict = {
        "branch": {
            "n": b.n,
            "y_terms": [[j, str(c)] for j, c in b.y_terms],
            "parametrization": b.emit().strip(),
            "multiplicity": analysis.multiplicity,
            "smooth": analysis.smooth,
        },
        "validation": {"valid": True, "multiplicity": analysis.multiplicity},
        "reality": {
            "real_form": analysis.real_form,
            "witness_k": analysis.real_witness,
            "conjugation_invariant": analysis.conjugation_invariant,
            "degenerate": analysis.degenerate,
        },
        "char_exponents": None,
        "resolution": None,
        "classification": None,
        "classical_semigroup": analysis.classical_structure.as_json()
        if analysis.classical_structure
        else None,
        "real": None,
        "real_graph_mirror": None,
    }
    if analysis.char is not None:
        out["char_exponents"] = {
            "beta": list(analysis.char.beta),
            "e": list(analysis.char.e),
            "genus": analysis.char.genus,
            "N": list(analysis.char.N),
        }
    if analysis.resolution is not None:
        out["resolution"] = analysis.resolution.as_json(
            analysis.classification, analysis.splitting
        )
        out["resolution"]["points"] = [p.as_json() for p in analysis.resolution.points]
        out["multiplicity_column"] = [
            analysis.table.m_of(v)
            for v in range(1, analysis.resolution.delta_C + 1)
        ]
    if analysis.classification is not None:
        c = analysis.classification
        out["classification"] = {
            "sigma": list(c.sigma),
            "tau": list(c.tau),
            "delta_C": c.delta_C,
            "rho": c.rho,
            "q": c.q,
            "figure2": c.figure2,
        }
    if analysis.invariants is not None:
        out["real"] = analysis.invariants.as_json()
        out["real"]["recipe_b"] = list(analysis.recipe.b)
        out["real"]["recipe_parametrization"] = analysis.recipe.parametrization.emit().strip()
        out["real_graph_mirror"] = mirror_graph_for_display(
            analysis.resolution, analysis.splitting
        )
    elif analysis.degenerate:
        out["real"] = None
        out["degenerate_note"] = (
            "C equals its complex conjugate; the splitting point and the "
            "series P, P^R are undefined"
            if not analysis.smooth
            else "smooth branch: trivial value semigroup <1>"
        )
    return out


def series_report(
    analysis: BranchAnalysis, which: str = "all", order: int | None = None
) -> dict:
    if which not in ("s", "classical", "real", "all"):
        raise ValidationError(f"unknown series selector {which!r}")
    needs_splitting = which in ("classical", "real", "all")
    if needs_splitting and analysis.degenerate and which != "all":
        raise ValidationError(
            "P and P^R are undefined for C = conj(C) (no splitting); "
            "only the semigroup series P^S is available"
        )
    bundle = analysis.series_bundle(order)
    out = bundle.as_json()
    keep = {
        "s": ("PS",),
        "classical": ("PS", "P"),
        "real": ("PS", "PR"),
        "all": ("PS", "P", "PR"),
    }[which]
    for key in ("PS", "P", "PR"):
        if key not in keep:
            out[key] = None
            out["factored"][key] = None
            out["expansion"]["coefficients"].pop(key, None)
    if analysis.degenerate:
        out["note"] = "P and P^R undefined: C equals its conjugate"
    return out


def conjugate_report(analysis: BranchAnalysis, check_depth: int | None = None) -> dict:
    if analysis.degenerate or analysis.recipe is None:
        raise ValidationError(
            "the conjugate-branch recipe requires a branch with C != conj(C)"
        )
    recipe = analysis.recipe
    verification = verify_recipe_roundtrip(analysis, bound=check_depth)
    return {
        "b": list(recipe.b),
        "parametrization": recipe.parametrization.emit().strip(),
        "M_sigma": list(analysis.invariants.M_sigma),
        "verification": verification.as_json(),
    }


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def verify_recipe_roundtrip(analysis: BranchAnalysis, bound: int | None = None) -> CheckReport:
    """Run the recipe branch through the full pipeline; its ordinary value
    semigroup must equal <M_sigma> membership-exactly up to 2c."""
    inv = analysis.invariants
    recipe = analysis.recipe
    failures = []
    sub = analyze_branch(recipe.parametrization)
    gens = sub.classical_generators
    if gens != inv.M_sigma:
        failures.append(
            f"recipe branch generators {gens} differ from M_sigma {inv.M_sigma}"
        )
    limit = bound if bound is not None else 2 * inv.conductor
    for a in range(limit + 1):
        if sub.classical_structure.contains(a) != inv.structure.contains(a):
            failures.append(f"membership differs at {a}")
            break
    return CheckReport("recipe_roundtrip", not failures, tuple(failures))


def _mismatch_report(name: str, mismatches) -> CheckReport:
    return CheckReport(
        name,
        not mismatches,
        tuple(
            f"a={m.position}: {m.quantity} expected {m.expected}, got {m.got}"
            for m in mismatches[:8]
        ),
    )


def check_matrix_invariants(analysis: BranchAnalysis) -> CheckReport:
    """E o E = -P^T P, -(E o E) m = I, positive integer entries,
    m_tau = N m_sigma, and the conductor identity sum m(m-1) = c."""
    failures = []
    res = analysis.resolution
    table = analysis.table
    P = res.proximity_matrix()
    E = res.graph.intersection_matrix()
    K = len(P)
    for i in range(K):
        for j in range(K):
            if E[i][j] != -sum(P[r][i] * P[r][j] for r in range(K)):
                failures.append(f"E o E != -P^T P at ({i + 1},{j + 1})")
    for i in range(K):
        for j in range(K):
            want = 1 if i == j else 0
            if -sum(E[i][r] * table.m[r][j] for r in range(K)) != want:
                failures.append(f"-(E o E) m != I at ({i + 1},{j + 1})")
            if table.m[i][j] <= 0:
                failures.append(f"m[{i + 1}][{j + 1}] <= 0")
    ce = analysis.char
    cls = analysis.classification
    for i, t in enumerate(cls.tau, start=1):
        if table.m_of(t) != ce.N[i - 1] * table.m_of(cls.sigma[i]):
            failures.append(f"m_tau_{i} != N_{i} m_sigma_{i}")
    noether = sum(m * (m - 1) for m in res.multiplicities)
    if noether != analysis.classical_structure.conductor:
        failures.append(
            f"sum m(m-1) = {noether} != classical conductor "
            f"{analysis.classical_structure.conductor}"
        )
    return CheckReport("matrix_invariants", not failures, tuple(failures[:8]))


def check_reality_decision(analysis: BranchAnalysis) -> CheckReport:
    """The congruence-based answers agree with exhausting every root of
    unity, and a real form implies conjugation invariance."""
    failures = []
    b = analysis.branch
    ratios = branch_mod._unit_ratios(b)
    if ratios is None:
        exhaustive_real = False
        exhaustive_invariant = False
    else:
        n = b.n
        exhaustive_real = any(
            all((8 * j * k + m * n) % (4 * n) == 0 for j, m in ratios) for k in range(n)
        )
        exhaustive_invariant = any(
            all((4 * j * k - m * n) % (4 * n) == 0 for j, m in ratios) for k in range(n)
        )
    if exhaustive_real != analysis.real_form:
        failures.append("real-form decision differs from the exhaustive scan")
    if exhaustive_invariant != analysis.conjugation_invariant:
        failures.append("invariance decision differs from the exhaustive scan")
    if analysis.real_form and not analysis.conjugation_invariant:
        failures.append("real form without conjugation invariance")
    if analysis.real_witness is not None:
        k = analysis.real_witness
        n = b.n
        for j, m in ratios or ():
            if (8 * j * k + m * n) % (4 * n) != 0:
                failures.append(f"witness k={k} fails at exponent {j}")
    return CheckReport("reality_decision", not failures, tuple(failures))


@dataclass
class VerificationReport:
    sections: list[CheckReport] = field(default_factory=list)
    skipped: dict[str, str] = field(default_factory=dict)
    range_max: int = 0
    oracle: OracleProfile | None = None
    expected_diffs: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return all(s.passed for s in self.sections) and not self.expected_diffs

    def as_json(self) -> dict:
        return {
            "agree": self.agree,
            "range": [0, self.range_max],
            "D_used": self.oracle.degree_used if self.oracle else None,
            "matrix_shape": [self.oracle.rows, self.oracle.columns_total]
            if self.oracle
            else None,
            "sections": [s.as_json() for s in self.sections],
            "skipped": self.skipped,
            "expected_diffs": self.expected_diffs,
            "mismatches": [
                f for s in self.sections if not s.passed for f in s.failures
            ],
        }


def run_verification(
    analysis: BranchAnalysis,
    max_order: int | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    expected: dict | None = None,
) -> VerificationReport:
    """The whole property suite on one branch; ``agree`` drives exit code 4."""
    report = VerificationReport()
    structure = analysis.effective_structure
    c = structure.conductor
    m_rho = analysis.m_rho
    a_max = max_order if max_order is not None else c + (m_rho or 0) + 10
    report.range_max = a_max

    report.sections.append(check_reality_decision(analysis))

    if analysis.resolution is not None:
        report.sections.append(check_matrix_invariants(analysis))
    else:
        report.skipped["matrix_invariants"] = "smooth branch: no resolution"

    # Theorem 1: the cyclotomic P^S expands to the membership indicator.
    ps = analysis.semigroup_fraction()
    t1_bound = 2 * c + 50
    sieve = semigroup_enumerate(structure.generators, t1_bound)
    indicator = [1 if v else 0 for v in sieve]
    report.sections.append(
        _mismatch_report(
            "theorem1_series_vs_enumeration",
            compare_profiles(indicator, ps.expand(t1_bound).coeffs, "PS coefficient"),
        )
    )

    # membership cross-validation: two independent sieves
    report.sections.append(
        _mismatch_report(
            "membership_two_sieves",
            compare_profiles(
                indicator,
                [1 if v else 0 for v in membership_sieve(structure.generators, t1_bound)],
                "membership",
            ),
        )
    )

    closed = dimension_profile_closed_form(structure, m_rho, a_max)

    if analysis.invariants is not None:
        inv = analysis.invariants
        order = c + 2 * inv.m_rho + 16
        P, PR = classical_and_real_series(ps, inv.m_rho)
        ps_exp = ps.expand(order)
        p_exp = P.expand(order)
        pr_exp = PR.expand(order)
        failures = []
        for a in range(order + 1):
            s = ps_exp.coeffs[a]
            shifted = ps_exp.coeffs[a - inv.m_rho] if a >= inv.m_rho else 0
            if p_exp.coeffs[a] != s + shifted:
                failures.append(f"P != P^S (1 + t^m_rho) at {a}")
            if pr_exp.coeffs[a] != s - shifted:
                failures.append(f"P^R != P^S (1 - t^m_rho) at {a}")
            if p_exp.coeffs[a] + pr_exp.coeffs[a] != 2 * s:
                failures.append(f"P + P^R != 2 P^S at {a}")
            if pr_exp.coeffs[a] not in (0, 1):
                failures.append(f"P^R coefficient {pr_exp.coeffs[a]} not in {{0,1}} at {a}")
        report.sections.append(
            CheckReport("theorem2_identities", not failures, tuple(failures[:8]))
        )
        # closed-form dims == expansion of P on the common window
        window = min(order, a_max)
        report.sections.append(
            _mismatch_report(
                "closed_dims_vs_P_expansion",
                compare_profiles(closed[: window + 1], p_exp.coeffs[: window + 1], "dim"),
            )
        )
        report.sections.append(lemma_structure_check(inv.M_sigma, inv.N))
        report.sections.append(
            geodesic_property_check(
                inv, analysis.table, analysis.resolution, analysis.splitting
            )
        )
        report.sections.append(verify_recipe_roundtrip(analysis))
        # the symmetry window is fixed at [0, c + m_rho) regardless of the
        # oracle range requested
        sym_dims = dimension_profile_closed_form(structure, inv.m_rho, c + inv.m_rho)
        report.sections.append(symmetry_check(sym_dims, c, inv.m_rho))
    else:
        for name in (
            "theorem2_identities",
            "lemma_structure",
            "geodesic_property",
            "recipe_roundtrip",
            "dimension_symmetry",
        ):
            report.skipped[name] = (
                "smooth branch" if analysis.smooth else "C = conj(C): no splitting"
            )

    report.sections.append(structure.check_conductor_symmetry())
    report.sections.append(structure.check_closure())

    # unique representation of members (strict bounds k_i < N_i)
    if len(structure.generators) > 1:
        failures = []
        for a in range(min(2 * c, t1_bound) + 1):
            count = structure.unique_representation_counts(a)
            member = structure.contains(a)
            if member and count != 1:
                failures.append(f"member {a} has {count} representations")
            if not member and count != 0:
                failures.append(f"non-member {a} has {count} representations")
        report.sections.append(
            CheckReport("unique_representation", not failures, tuple(failures[:8]))
        )

    # the brute-force oracle against the closed form
    oracle_profile = dims_bruteforce(analysis.branch, a_max, size_cap=size_cap)
    report.oracle = oracle_profile
    report.sections.append(
        _mismatch_report(
            "oracle_vs_closed_form",
            compare_profiles(closed, list(oracle_profile.dims), "dim J(a)/J(a+1)"),
        )
    )
    if m_rho is not None:
        failures = []
        for a in range(min(m_rho, a_max) + 1):
            if a < m_rho and structure.contains(a) and oracle_profile.dims[a] != 1:
                failures.append(f"a={a} in S below m_rho but oracle dim {oracle_profile.dims[a]}")
        if m_rho <= a_max and oracle_profile.dims[m_rho] != 2:
            failures.append(f"oracle dim at m_rho={m_rho} is {oracle_profile.dims[m_rho]}, not 2")
        report.sections.append(
            CheckReport("proposition_low_orders", not failures, tuple(failures[:8]))
        )

    if expected is not None:
        report.expected_diffs = compare_with_expected(analysis, expected)

    return report


def compare_with_expected(analysis: BranchAnalysis, expected: dict) -> list[str]:
    """Diff computed invariants against a fixture of expected values."""
    diffs = []

    def check(key, actual):
        if key in expected and expected[key] != actual:
            diffs.append(f"{key}: expected {expected[key]!r}, computed {actual!r}")

    check("multiplicity", analysis.multiplicity)
    check("smooth", analysis.smooth)
    check("real_form", analysis.real_form)
    check("conjugation_invariant", analysis.conjugation_invariant)
    if analysis.char is not None:
        check("beta", list(analysis.char.beta))
        check("genus", analysis.char.genus)
    check("classical_generators", list(analysis.classical_generators))
    if analysis.classical_structure is not None:
        check("classical_conductor", analysis.classical_structure.conductor)
    if analysis.invariants is not None:
        inv = analysis.invariants
        check("M_sigma", list(inv.M_sigma))
        check("M_tau", list(inv.M_tau))
        check("m_rho", inv.m_rho)
        check("rho", inv.rho)
        check("q", inv.q)
        check("figure2", inv.figure2)
        check("real_conductor", inv.conductor)
        check("recipe_b", list(analysis.recipe.b))
    for key in expected:
        known = {
            "multiplicity", "smooth", "real_form", "conjugation_invariant",
            "beta", "genus", "classical_generators", "classical_conductor",
            "M_sigma", "M_tau", "m_rho", "rho", "q", "figure2",
            "real_conductor", "recipe_b", "comment",
        }
        if key not in known:
            diffs.append(f"unknown fixture key {key!r}")
    return diffs
