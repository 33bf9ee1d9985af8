"""Blow-up simulation: infinitely near points, dual graph, splitting data.

The simulation keeps local coordinates (x(t), y(t)) of the strict
transform at the current center together with the ids dx/dy of the
exceptional divisors along {x=0}/{y=0} (or None).  One loop iteration
records the current center, arranges ord x <= ord y, blows up

    (x, y)  ->  (x, y/x),      dx <- new divisor id,

and, when y/x acquires a nonzero constant term c, translates the chart
to the free point at coordinate c (recording c) and clears dy.  The run
stops at the minimal resolution of C: strict transform smooth, on a
single divisor, transverse to it (ord x = 1).

Everything is exact; on precision exhaustion the driver doubles the
working truncation order and restarts (the input is polynomial, so the
run is reproducible at any truncation).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .branch import BranchParam, is_conjugation_invariant
from .errors import InvariantViolation, PrecisionExhausted, ResourceError, ValidationError
from .exact import GR_ZERO, GaussianRational, TruncatedSeries

_MAX_TRUNCATION = 1 << 16
_MAX_POINTS = 4096


@dataclass(frozen=True)
class InfinitelyNearPoint:
    """One center of the blow-up sequence (p_k is blown up into E_k)."""

    id: int
    multiplicity: int
    proximate_to: frozenset[int]
    kind: str  # "origin" | "free" | "satellite"
    center_real: bool
    translation: GaussianRational | None

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "multiplicity": self.multiplicity,
            "proximate_to": sorted(self.proximate_to),
            "kind": self.kind,
            "center_real": self.center_real,
            "translation": None if self.translation is None else str(self.translation),
        }


@dataclass
class DualGraph:
    """Tree of exceptional divisors E_1..E_K with self-intersections."""

    n_vertices: int
    edges: set[frozenset[int]]
    self_intersection: dict[int, int]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for e in self.edges:
            if v in e:
                (w,) = e - {v}
                out.append(w)
        return sorted(out)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def geodesic(self, a: int, b: int) -> list[int]:
        """Vertices on the tree path from a to b, endpoints included."""
        parent = {a: None}
        queue = [a]
        while queue:
            v = queue.pop(0)
            if v == b:
                break
            for w in self.neighbors(v):
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        if b not in parent:
            raise InvariantViolation(f"no path from E_{a} to E_{b}: graph not connected")
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return path[::-1]

    def intersection_matrix(self) -> list[list[int]]:
        K = self.n_vertices
        M = [[0] * K for _ in range(K)]
        for v in range(1, K + 1):
            M[v - 1][v - 1] = self.self_intersection[v]
        for e in self.edges:
            a, b = sorted(e)
            M[a - 1][b - 1] = 1
            M[b - 1][a - 1] = 1
        return M

    def as_json(self) -> dict:
        return {
            "edges": sorted(sorted(e) for e in self.edges),
            "self_intersection": {str(v): s for v, s in sorted(self.self_intersection.items())},
        }


@dataclass
class ResolutionData:
    """Output of the simulation for the minimal resolution of C."""

    branch: BranchParam
    points: list[InfinitelyNearPoint]
    graph: DualGraph
    delta_C: int
    truncation_used: int
    # coordinate of the next (not materialized) center on E_{delta_C}
    pending_translation: GaussianRational | None = None
    _inverse_proximity: list[list[int]] | None = field(default=None, repr=False)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(p.multiplicity for p in self.points)

    def proximity_matrix(self) -> list[list[int]]:
        """Lower unitriangular P: P[i][j] = -1 iff p_{i+1} proximate to E_{j+1}."""
        K = len(self.points)
        P = [[0] * K for _ in range(K)]
        for p in self.points:
            P[p.id - 1][p.id - 1] = 1
            for j in p.proximate_to:
                P[p.id - 1][j - 1] = -1
        return P

    def inverse_proximity(self) -> list[list[int]]:
        """R = P^{-1}; row delta = multiplicities of a curvette at E_delta.

        Forward substitution over the integers: row_k = e_k + sum of the
        rows p_k is proximate to.
        """
        if self._inverse_proximity is None:
            K = len(self.points)
            R: list[list[int]] = []
            for p in self.points:
                row = [0] * K
                row[p.id - 1] = 1
                for j in p.proximate_to:
                    prev = R[j - 1]
                    for c in range(K):
                        if prev[c]:
                            row[c] += prev[c]
                R.append(row)
            self._inverse_proximity = R
        return self._inverse_proximity

    def curvette_multiplicities(self, delta: int) -> tuple[int, ...]:
        """Multiplicity at each p_k of a curvette at E_delta (zero past delta)."""
        return tuple(self.inverse_proximity()[delta - 1])

    def as_json(self, classification=None, splitting=None) -> dict:
        classes = {}
        if classification is not None:
            for i, s in enumerate(classification.sigma):
                classes[s] = f"sigma_{i}"
            for i, t in enumerate(classification.tau, start=1):
                classes[t] = f"tau_{i}"
            classes[self.delta_C] = "delta_C"
        vertices = []
        for p in self.points:
            vertices.append(
                {
                    "id": p.id,
                    "class": classes.get(p.id, "ordinary"),
                    "self_intersection": self.graph.self_intersection[p.id],
                    "proximate_to": sorted(p.proximate_to),
                    "real": p.center_real,
                }
            )
        out = {
            "vertices": vertices,
            "edges": sorted(sorted(e) for e in self.graph.edges),
            "delta_C": self.delta_C,
        }
        if splitting is not None:
            out["splitting"] = splitting.as_json()
        return out


@dataclass(frozen=True)
class SplittingData:
    """Where the resolutions of C and of its conjugate part ways."""

    rho: int
    q: int
    figure2: bool
    # number of real blow-ups the minimal real resolution needs past the
    # minimal resolution of C before the conjugate pair separates
    extra_blowups: int
    first_nonreal_translation: GaussianRational

    def as_json(self) -> dict:
        return {
            "rho": self.rho,
            "q": self.q,
            "figure2": self.figure2,
            "extra_blowups": self.extra_blowups,
            "first_nonreal_translation": str(self.first_nonreal_translation),
        }


@dataclass(frozen=True)
class VertexClassification:
    """Dead ends sigma_0..sigma_g, rupture vertices tau_1..tau_g, delta_C."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    delta_C: int
    rho: int | None = None
    q: int | None = None
    figure2: bool | None = None

    @property
    def genus(self) -> int:
        return len(self.tau)


@dataclass
class MultiplicityTable:
    """m[s][d] = entry (s, d) of -(intersection matrix)^{-1}, 1-based access."""

    m: list[list[int]]
    delta_C: int

    def entry(self, s: int, d: int) -> int:
        return self.m[s - 1][d - 1]

    def m_sigma_column(self) -> tuple[int, ...]:
        return tuple(row[self.delta_C - 1] for row in self.m)

    def m_of(self, vertex: int) -> int:
        return self.entry(vertex, self.delta_C)


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------

class _Simulation:
    """One run at a fixed truncation; raises PrecisionExhausted when starved."""

    def __init__(self, branch: BranchParam, truncation: int):
        self.branch = branch
        self.truncation = truncation
        self.x = TruncatedSeries.monomial(branch.n).truncate(truncation)
        self.y = branch.y_series(truncation)
        self.dx: int | None = None
        self.dy: int | None = None
        self.points: list[InfinitelyNearPoint] = []
        self.edges: set[frozenset[int]] = set()
        self.self_int: dict[int, int] = {}
        self.pending_translation: GaussianRational | None = None
        self.real_so_far = True

    def _blow_up(self, new_id: int | None = None) -> None:
        """Blow up the current center; callers recorded it as point k."""
        k = new_id if new_id is not None else len(self.points)
        ox, oy = self.x.order(), self.y.order()
        if ox > oy:
            self.x, self.y = self.y, self.x
            self.dx, self.dy = self.dy, self.dx
        prox = frozenset(d for d in (self.dx, self.dy) if d is not None)
        self.self_int[k] = -1
        for d in prox:
            self.edges.add(frozenset((k, d)))
            self.self_int[d] -= 1
        if len(prox) == 2:
            self.edges.discard(prox)
        self.y = self.y / self.x
        self.dx = k
        if self.y.order() == 0:
            c = self.y.coefficient(0)
            self.pending_translation = c
            self.y = self.y - TruncatedSeries.monomial(0, c)
            self.dy = None
        else:
            self.pending_translation = GR_ZERO if self.dy is None else None

    def _record_point(self) -> None:
        ox = self.x.order()
        oy = self.y.order()
        prox = frozenset(d for d in (self.dx, self.dy) if d is not None)
        if len(prox) == 0:
            kind = "origin"
        elif len(prox) == 1:
            kind = "free"
        else:
            kind = "satellite"
        transl = self.pending_translation
        real_here = self.real_so_far and (transl is None or transl.is_real())
        self.real_so_far = real_here
        mult = int(min(ox, oy))
        self.points.append(
            InfinitelyNearPoint(
                id=len(self.points) + 1,
                multiplicity=mult,
                proximate_to=prox,
                kind=kind,
                center_real=real_here,
                translation=transl,
            )
        )

    def _stopped(self) -> bool:
        """Minimal resolution reached: smooth, free, transverse (ord x = 1)."""
        return (
            len(self.points) >= 1
            and self.dy is None
            and self.x.order() == 1
        )

    def run(self) -> ResolutionData:
        while not self._stopped():
            if len(self.points) >= _MAX_POINTS:
                raise InvariantViolation("blow-up sequence did not terminate")
            self._record_point()
            self._blow_up()
        delta = len(self.points)
        graph = DualGraph(
            n_vertices=delta,
            edges=set(self.edges),
            self_intersection=dict(self.self_int),
        )
        return ResolutionData(
            branch=self.branch,
            points=list(self.points),
            graph=graph,
            delta_C=delta,
            truncation_used=self.truncation,
            pending_translation=self.pending_translation,
        )

    def continue_until_nonreal(self) -> tuple[int, GaussianRational]:
        """Past the minimal resolution: blow real free points until the
        conjugate pair separates.  Returns (extra real blow-ups, witness).

        Callers must have ruled out conjugation-invariant branches.
        """
        extra = 0
        while True:
            c = self.pending_translation
            if c is not None and not c.is_real():
                return extra, c
            if extra >= _MAX_POINTS:
                raise InvariantViolation(
                    "no splitting found: branch appears conjugation-invariant"
                )
            self._blow_up(new_id=len(self.points) + extra + 1)
            extra += 1


def _initial_truncation(branch: BranchParam) -> int:
    top = max(branch.support(), default=1)
    return max(32, 2 * (branch.n + top) + 16)


def resolve(branch: BranchParam, min_truncation: int | None = None) -> ResolutionData:
    """Minimal resolution of the branch, retried at doubled truncation."""
    if branch.is_smooth:
        raise ValidationError("smooth branch: nothing to resolve")
    truncation = max(_initial_truncation(branch), min_truncation or 0)
    while truncation <= _MAX_TRUNCATION:
        try:
            return _Simulation(branch, truncation).run()
        except PrecisionExhausted:
            truncation *= 2
    raise ResourceError(f"truncation cap {_MAX_TRUNCATION} exceeded while resolving")


def _q_of(tau: tuple[int, ...], rho: int) -> int:
    q = 0
    for i, t in enumerate(tau, start=1):
        if t <= rho:
            q = i
    return q


def splitting_search(
    branch: BranchParam, resolution: ResolutionData, tau: tuple[int, ...]
) -> SplittingData:
    """Locate the splitting divisor rho of the real resolution.

    rho is the divisor created by the last real center.  If every center
    of the minimal resolution of C is real the simulation continues past
    delta_C (free points only) until the first non-real coordinate; those
    extra blow-ups belong to the minimal real resolution and are counted
    in ``extra_blowups`` (the reported rho stays delta_C, the figure-2
    vertex).
    """
    invariant, _ = is_conjugation_invariant(branch)
    if invariant:
        raise ValidationError(
            "splitting search is undefined for a conjugation-invariant branch"
        )
    for p in resolution.points:
        if p.translation is not None and not p.translation.is_real():
            rho = p.id - 1
            return SplittingData(
                rho=rho,
                q=_q_of(tau, rho),
                figure2=False,
                extra_blowups=0,
                first_nonreal_translation=p.translation,
            )
    # figure-2 regime: rerun with continuation (restart keeps determinism)
    truncation = resolution.truncation_used
    while truncation <= _MAX_TRUNCATION:
        try:
            sim = _Simulation(branch, truncation)
            rerun = sim.run()
            if rerun.multiplicities != resolution.multiplicities:
                raise InvariantViolation("non-deterministic resolution rerun")
            extra, witness = sim.continue_until_nonreal()
            rho = resolution.delta_C
            return SplittingData(
                rho=rho,
                q=_q_of(tau, rho),
                figure2=True,
                extra_blowups=extra,
                first_nonreal_translation=witness,
            )
        except PrecisionExhausted:
            truncation *= 2
    raise ResourceError(f"truncation cap {_MAX_TRUNCATION} exceeded in splitting search")


# ---------------------------------------------------------------------------
# derived combinatorics
# ---------------------------------------------------------------------------

def multiplicity_table(resolution: ResolutionData) -> MultiplicityTable:
    """-(E o E)^{-1} computed as R R^T with R the inverse proximity matrix.

    Verifies E o E = -P^T P against the edge bookkeeping and the defining
    identity -(E o E) m = I; any failure is an internal bug.
    """
    R = resolution.inverse_proximity()
    P = resolution.proximity_matrix()
    K = len(R)
    E = resolution.graph.intersection_matrix()
    for i in range(K):
        for j in range(K):
            ptp = sum(P[r][i] * P[r][j] for r in range(K))
            if E[i][j] != -ptp:
                raise InvariantViolation(
                    f"intersection matrix mismatch at ({i + 1},{j + 1}): "
                    f"E o E = {E[i][j]}, -P^T P = {-ptp}"
                )
    m = [[sum(R[i][k] * R[j][k] for k in range(K)) for j in range(K)] for i in range(K)]
    for i in range(K):
        for j in range(K):
            acc = -sum(E[i][r] * m[r][j] for r in range(K))
            if acc != (1 if i == j else 0):
                raise InvariantViolation("-(E o E) * m is not the identity")
            if m[i][j] <= 0:
                raise InvariantViolation("multiplicity table has a non-positive entry")
    table = MultiplicityTable(m=m, delta_C=resolution.delta_C)
    mults = resolution.multiplicities
    curvette = resolution.curvette_multiplicities(resolution.delta_C)
    if tuple(curvette) != mults:
        raise InvariantViolation(
            "curvette multiplicities at delta_C disagree with the recorded "
            f"multiplicity sequence: {curvette} vs {mults}"
        )
    return table


def classify_vertices(
    resolution: ResolutionData,
    genus: int,
    splitting: SplittingData | None = None,
) -> VertexClassification:
    """Dead ends and rupture vertices, in creation order.

    The arrow towards the strict transform of C counts one unit of degree
    at delta_C.
    """
    graph = resolution.graph
    delta = resolution.delta_C
    sigma = []
    tau = []
    for v in range(1, graph.n_vertices + 1):
        deg = graph.degree(v) + (1 if v == delta else 0)
        if deg == 1:
            sigma.append(v)
        elif deg >= 3:
            tau.append(v)
    if len(sigma) != genus + 1 or len(tau) != genus:
        raise InvariantViolation(
            f"vertex classification ({len(sigma)} dead ends, {len(tau)} ruptures) "
            f"does not match genus {genus} from the characteristic exponents"
        )
    if sigma[0] != 1:
        raise InvariantViolation("sigma_0 is not the first divisor")
    if tau and tau[-1] != delta:
        raise InvariantViolation("tau_g is not delta_C")
    rho = q = figure2 = None
    if splitting is not None:
        rho, q, figure2 = splitting.rho, splitting.q, splitting.figure2
        if q != _q_of(tuple(tau), rho):
            raise InvariantViolation("q disagrees with the rupture ordering")
        if figure2 and rho != delta:
            raise InvariantViolation("figure-2 splitting with rho != delta_C")
    return VertexClassification(
        sigma=tuple(sigma),
        tau=tuple(tau),
        delta_C=delta,
        rho=rho,
        q=q,
        figure2=figure2,
    )


def mirror_graph_for_display(
    resolution: ResolutionData, splitting: SplittingData
) -> dict:
    """Combinatorial conjugate half of the real resolution graph.

    Display only: vertices strictly after rho get mirrored copies labelled
    "<id>~"; no arithmetic consumes this.
    """
    rho = splitting.rho
    mirrored = [v for v in range(rho + 1, resolution.graph.n_vertices + 1)]
    edges = []
    for e in resolution.graph.edges:
        a, b = sorted(e)
        if b > rho:
            edges.append([a if a <= rho else f"{a}~", f"{b}~"])
    return {
        "vertices": [f"{v}~" for v in mirrored],
        "edges": sorted(edges, key=str),
        "conjugate_arrow_at": f"{resolution.delta_C}~" if mirrored else resolution.delta_C,
    }
