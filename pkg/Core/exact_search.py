"""Exact maximisation of (n, w)-arcs by depth-first branch and bound.

A node fixes the multiplicities of the points up to some index; children add a positive
multiplicity at a later point, largest first. Residual capacities of the r-subspaces give the
allowance f(p) of every later point, and three bounds on what the remaining points can still
add are checked before branching: the plain sum of allowances, the double count over
r-subspaces, and the count over the r-subspaces through a fixed (r-1)-subspace. The closed-form
bounds of ``bounds`` cap the whole search, so a warm start that meets them ends it at once.
"""

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import conf
from .bounds import BoundQuery, OptimalLengthOracle, best_upper_bound
from .exceptions import ArcError, DimensionMismatch, PrescriptionViolation
from .gf_linalg import null_space
from .point_multisets import Multiset
from .projective_geometry import ProjectiveSpace, Subspace, iter_subspace_equations

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
FEASIBLE_ONLY = "feasible-only"

# nodes counted locally before the shared counter and the clock are consulted
_FLUSH = 256
# the (r-1)-subspace bound is set up only when (#(r-1)-subspaces x #r-subspaces) stays below this
_T_BOUND_LIMIT = 2 * 10**7
# equation systems checked per numpy call in verify_witness
_EQUATION_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class SearchProblem:
    space: ProjectiveSpace
    r: int
    w: int
    point_cap: int | None = None
    prescribed: tuple[tuple[int, int], ...] = ()
    node_budget: int | None = None
    time_budget: float | None = None
    threads: int = 1
    warm_start: Multiset | None = None
    use_closed_form_bound: bool = True
    oracle: OptimalLengthOracle | None = None

    def __post_init__(self):
        if not 0 <= self.r < self.space.K:
            raise DimensionMismatch(f"r must lie in 0..{self.space.K - 1}, got {self.r}")
        if self.w < 1:
            raise DimensionMismatch(f"w must be positive, got {self.w}")
        if self.point_cap is not None and self.point_cap < 1:
            raise DimensionMismatch(f"point cap must be positive, got {self.point_cap}")
        seen = set()
        for point, m in self.prescribed:
            if point in seen:
                raise PrescriptionViolation(f"point {self.space.point(point)} is prescribed twice")
            if m < 1:
                raise PrescriptionViolation(f"prescribed multiplicity {m} is not positive")
            seen.add(point)

    def prescription(self) -> Multiset:
        return Multiset.of_points(self.space, dict(self.prescribed))


@dataclass
class SearchResult:
    best_n: int
    witness: Multiset
    status: str
    nodes: int
    seconds: float
    log: list[tuple[int, int, float]] = field(default_factory=list)
    relies_on_prescription: bool = False
    proved_by: str | None = None
    root_bound: int | None = None
    root_provenance: str | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def log_text(self) -> str:
        return "".join(f"{n} {nodes} {seconds:.3f}\n" for n, nodes, seconds in self.log)


# ----------------------------
# Certificados
# ----------------------------
def find_violation(ms: Multiset, r: int, w: int) -> tuple[Subspace, int] | None:
    """An r-subspace carrying more than w, found from subspace equations, or None."""
    space = ms.space
    if r >= space.K:
        return (space.span(np.eye(space.k, dtype=np.int64)), ms.n) if ms.n > w else None
    support = ms.support()
    if support.size == 0:
        return None
    points = space.points_matrix[support]
    weights = ms.mult[support]
    for batch in iter_subspace_equations(space, r):
        for lo in range(0, len(batch), _EQUATION_CHUNK):
            equations = batch[lo : lo + _EQUATION_CHUNK]
            values = np.einsum("bck,vk->bcv", equations, points) % space.q
            sums = (~values.any(axis=1)) @ weights
            worst = int(sums.argmax())
            if sums[worst] > w:
                basis = null_space(equations[worst], space.q)
                return space.span(basis), int(sums[worst])
    return None


def verify_witness(ms: Multiset, r: int, w: int) -> bool:
    return find_violation(ms, r, w) is None


def prescribe_unit_frame(problem: SearchProblem) -> SearchProblem:
    """Fix the K+1 unit points with multiplicity at least one."""
    space = problem.space
    prescribed = dict(problem.prescribed)
    for i in range(space.k):
        point = space.unit_point(i)
        prescribed[point] = max(prescribed.get(point, 0), 1)
    fixed = Multiset.of_points(space, prescribed)
    if fixed.w(problem.r) > problem.w:
        heavy = fixed.heaviest_subspace(problem.r)
        raise PrescriptionViolation(
            f"the unit frame puts {fixed.subspace_multiplicity(heavy)} points on the "
            f"{problem.r}-subspace {heavy}, above w={problem.w}"
        )
    return replace(problem, prescribed=tuple(sorted(prescribed.items())))


# ----------------------------
# Busqueda
# ----------------------------
class _Stop(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _Shared:
    """Incumbent and counters shared by every worker."""

    def __init__(self, problem: SearchProblem, root_bound: int, started: float):
        self.problem = problem
        self.root_bound = root_bound
        self.started = started
        self.lock = threading.Lock()
        self.best_n = -1
        self.best_mult = None
        self.nodes = 0
        self.log = []
        self.stop_reason = None

    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def offer(self, n: int, mult: np.ndarray, pending: int = 0) -> None:
        with self.lock:
            if n <= self.best_n:
                return
            self.best_n = n
            self.best_mult = mult.copy()
            nodes = self.nodes + pending
            self.log.append((n, nodes, self.elapsed()))
            logger.info("incumbent %d after %d nodes", n, nodes)
            if n >= self.root_bound and self.stop_reason is None:
                self.stop_reason = "bound"

    def flush(self, pending: int) -> None:
        with self.lock:
            self.nodes += pending
            if self.stop_reason is not None:
                return
            budget = self.problem.node_budget
            if budget is not None and self.nodes >= budget:
                self.stop_reason = "budget"
            limit = self.problem.time_budget
            if limit is not None and self.elapsed() >= limit:
                self.stop_reason = "budget"


class _Worker:
    def __init__(self, shared: _Shared, structure: "_Structure", mult: np.ndarray, cap: np.ndarray):
        self.shared = shared
        self.s = structure
        self.mult = mult.copy()
        self.cap = cap.copy()
        self.pending = 0

    def add(self, point: int, m: int) -> None:
        self.mult[point] += m
        self.cap[self.s.through[point]] -= m

    def count_node(self) -> None:
        self.pending += 1
        shared = self.shared
        budget = shared.problem.node_budget
        near_budget = budget is not None and shared.nodes + self.pending >= budget
        if self.pending >= _FLUSH or near_budget or shared.stop_reason is not None:
            shared.flush(self.pending)
            self.pending = 0
            if shared.stop_reason is not None:
                raise _Stop(shared.stop_reason)

    def allowance(self, last: int) -> np.ndarray:
        f = np.minimum(self.s.point_cap - self.mult, self.cap[self.s.through].min(axis=1))
        f[: last + 1] = 0
        return np.maximum(f, 0)

    def structure_bound(self, f: np.ndarray) -> int:
        s = self.s
        f_sub = f[s.point_ids].sum(axis=1)
        bound = int(np.minimum(self.cap, f_sub).sum()) // s.degree
        if s.t_points is not None:
            f_t = f[s.t_points].sum(axis=1)
            caps = self.cap[s.t_through]
            per_t = np.minimum(caps.min(axis=1), f_t) + np.minimum(
                caps, f_sub[s.t_through] - f_t[:, None]
            ).sum(axis=1)
            bound = min(bound, int(per_t.min()))
        return bound

    def children(self, last: int, n: int):
        """Candidate (point, multiplicity) pairs of a node, or an empty list when it is pruned."""
        f = self.allowance(last)
        best = self.shared.best_n
        total = int(f.sum())
        if total == 0 or n + total <= best:
            return []
        if n + self.structure_bound(f) <= best:
            return []
        suffix = np.cumsum(f[::-1])[::-1]
        return [(int(p), int(f[p]), int(suffix[p])) for p in np.flatnonzero(f)]

    def dfs(self, last: int, n: int) -> None:
        self.count_node()
        for point, top, rest in self.children(last, n):
            if n + rest <= self.shared.best_n:
                break
            for m in range(top, 0, -1):
                self.add(point, m)
                if n + m > self.shared.best_n:
                    self.shared.offer(n + m, self.mult, self.pending)
                try:
                    self.dfs(point, n + m)
                finally:
                    self.add(point, -m)

    def finish(self) -> None:
        if self.pending:
            self.shared.flush(self.pending)
            self.pending = 0


@dataclass(frozen=True, eq=False)
class _Structure:
    point_ids: np.ndarray
    through: np.ndarray
    degree: int
    point_cap: int
    t_points: np.ndarray | None
    t_through: np.ndarray | None


def _structure(space: ProjectiveSpace, r: int, point_cap: int) -> _Structure:
    family = space.subspaces(r)
    t_points = t_through = None
    if r >= 1 and space.subspace_count(r - 1) * len(family) <= _T_BOUND_LIMIT:
        lower = space.subspaces(r - 1)
        member = np.zeros((len(family), space.num_points), dtype=bool)
        member[np.arange(len(family))[:, None], family.point_ids] = True
        rows = []
        for lo in range(0, len(lower), 64):
            chunk = lower.point_ids[lo : lo + 64]
            contains = member[:, chunk].all(axis=2)
            t_idx, s_idx = np.nonzero(contains.T)
            rows.append(s_idx.reshape(len(chunk), -1))
        t_points = lower.point_ids
        t_through = np.vstack(rows)
    return _Structure(family.point_ids, family.through, family.degree, point_cap, t_points, t_through)


def _root_bound(problem: SearchProblem, point_cap: int) -> tuple[int, str]:
    space = problem.space
    bound, provenance = point_cap * space.num_points, "point-cap"
    if problem.use_closed_form_bound and problem.r >= 1:
        query = BoundQuery(space.q, space.K, problem.r, problem.w)
        closed = best_upper_bound(query, problem.oracle)
        if closed.value < bound:
            bound, provenance = closed.value, closed.provenance
    return bound, provenance


def max_arc_size(problem: SearchProblem) -> SearchResult:
    started = time.perf_counter()
    space, r, w = problem.space, problem.r, problem.w
    fixed = problem.prescription()
    sums = fixed.subspace_sums(r)
    if sums.max() > w:
        heavy = fixed.heaviest_subspace(r)
        raise PrescriptionViolation(
            f"the prescription puts {int(sums.max())} points on the {r}-subspace {heavy}, above w={w}"
        )
    point_cap = problem.point_cap
    if point_cap is None:
        point_cap = max(1, min(w, w - int(sums.min())))
    root_bound, provenance = _root_bound(problem, point_cap)
    structure = _structure(space, r, point_cap)
    shared = _Shared(problem, root_bound, started)

    shared.offer(fixed.n, fixed.mult)
    warm = problem.warm_start
    if warm is not None:
        if _warm_start_fits(problem, warm, point_cap):
            shared.offer(warm.n, warm.mult)
        else:
            logger.warning("ignoring a warm start of size %d: it breaks the problem's constraints", warm.n)

    cap = w - sums
    if shared.stop_reason is None:
        _run(problem, shared, structure, fixed.mult, cap)

    witness = Multiset(space, shared.best_mult)
    if not verify_witness(witness, r, w):
        raise ArcError(f"search returned a witness that is not an arc for r={r}, w={w}")
    status = FEASIBLE_ONLY if shared.stop_reason == "budget" else OPTIMAL
    if status == FEASIBLE_ONLY:
        logger.warning("budget exhausted after %d nodes with n=%d", shared.nodes, shared.best_n)
        proved_by = None
    elif shared.best_n >= root_bound:
        proved_by = "bound"
    else:
        proved_by = "exhaustion"
    return SearchResult(
        best_n=shared.best_n,
        witness=witness,
        status=status,
        nodes=shared.nodes,
        seconds=shared.elapsed(),
        log=list(shared.log),
        relies_on_prescription=bool(problem.prescribed),
        proved_by=proved_by,
        root_bound=root_bound,
        root_provenance=provenance,
    )


def _warm_start_fits(problem: SearchProblem, warm: Multiset, point_cap: int) -> bool:
    if warm.space != problem.space or warm.max_point_multiplicity() > point_cap:
        return False
    if any(warm.mult[p] < m for p, m in problem.prescribed):
        return False
    return verify_witness(warm, problem.r, problem.w)


def _run(problem, shared, structure, mult, cap) -> None:
    threads = problem.threads or conf.default_threads()
    root = _Worker(shared, structure, mult, cap)
    if threads <= 1:
        try:
            root.dfs(-1, int(mult.sum()))
        except _Stop:
            pass
        root.finish()
        return

    n0 = int(mult.sum())
    root.count_node()
    tasks = root.children(-1, n0)
    root.finish()

    def explore(task):
        point, m, rest = task
        if shared.stop_reason is not None or n0 + rest <= shared.best_n:
            return
        worker = _Worker(shared, structure, mult, cap)
        worker.add(point, m)
        try:
            if n0 + m > shared.best_n:
                shared.offer(n0 + m, worker.mult)
            worker.dfs(point, n0 + m)
        except _Stop:
            pass
        worker.finish()

    expanded = [(p, m, rest) for p, top, rest in tasks for m in range(top, 0, -1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(explore, expanded))
