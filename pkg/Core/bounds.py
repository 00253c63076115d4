"""Closed-form bounds: Griesmer functions, the sigma/epsilon decomposition and upper bounds for m.

``m_q^(r)(K, w)`` is the largest n for which PG(K, q) carries an (n, w)-arc with respect to
r-subspaces. Queries use the projective dimension K; the code dimension is k = K + 1 and an
r-subspace bound corresponds to the generalized weight of index K - r.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from . import conf
from .exceptions import DataFormatError, DimensionMismatch, TrivialQuery
from .projective_geometry import gaussian_v

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def griesmer_g(q: int, k: int, d: int) -> int:
    """Minimum length allowed by the Griesmer bound for an [n, k, d]_q code."""
    if k < 1 or d < 0:
        raise DimensionMismatch(f"griesmer_g needs k >= 1 and d >= 0, got k={k}, d={d}")
    return sum(_ceil_div(d, q**i) for i in range(k))


def griesmer_g_r(q: int, k: int, r: int, d_r: int) -> int:
    """Generalized Griesmer bound: minimum length of a code with r-th generalized weight d_r."""
    if not 1 <= r <= k or d_r < 0:
        raise DimensionMismatch(f"griesmer_g_r needs 1 <= r <= k and d_r >= 0, got r={r}, k={k}")
    v_r = gaussian_v(r, q)
    return d_r + sum(_ceil_div(d_r, q**i * v_r) for i in range(1, k - r + 1))


@dataclass(frozen=True)
class SigmaEps:
    q: int
    k: int
    sigma: int
    eps: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.sigma * self.q ** (self.k - 1) - sum(e * self.q**i for i, e in enumerate(self.eps))

    def nonzero(self) -> dict[int, int]:
        return {i: e for i, e in enumerate(self.eps) if e}


def sigma_eps_decompose(q: int, k: int, d: int) -> SigmaEps:
    if k < 1 or d < 1:
        raise DimensionMismatch(f"decomposition needs k >= 1 and d >= 1, got k={k}, d={d}")
    top = q ** (k - 1)
    sigma = _ceil_div(d, top)
    deficit = sigma * top - d
    eps = []
    for _ in range(k - 1):
        deficit, digit = divmod(deficit, q)
        eps.append(digit)
    return SigmaEps(q, k, sigma, tuple(eps))


def griesmer_code_w(q: int, k: int, d: int, t: int, j: int) -> int:
    """w_j of a multiset of size t + g_q(k, d) with at most n - d points on any hyperplane."""
    if not 0 <= j <= k - 1:
        raise DimensionMismatch(f"j must lie in 0..{k - 1}, got {j}")
    return t + sum(_ceil_div(d, q**i) for i in range(k - 1 - j, k))


def griesmer_code_dr(q: int, k: int, d: int, r: int) -> int:
    """r-th generalized weight of a Griesmer code with parameters [g_q(k, d), k, d]_q."""
    if not 1 <= r <= k:
        raise DimensionMismatch(f"r must lie in 1..{k}, got {r}")
    se = sigma_eps_decompose(q, k, d)
    eps = se.eps
    head = se.sigma * q ** (k - r) - sum(eps[i - 1] * q ** (i - r) for i in range(r, k))
    return gaussian_v(r, q) * head - sum(eps[i - 1] * gaussian_v(i, q) for i in range(1, r))


# ----------------------------
# Cotas superiores para m
# ----------------------------
@dataclass(frozen=True)
class BoundQuery:
    q: int
    K: int
    r: int
    w: int

    def __post_init__(self):
        if self.q < 2:
            raise DimensionMismatch(f"q must be at least 2, got {self.q}")
        if not 1 <= self.r <= self.K:
            raise DimensionMismatch(f"r must lie in 1..K={self.K}, got {self.r}")
        if self.w < 1:
            raise DimensionMismatch(f"w must be positive, got {self.w}")

    def __str__(self):
        return f"m_{self.q}^({self.r})({self.K},{self.w})"

    @property
    def k(self) -> int:
        return self.K + 1


@dataclass(frozen=True)
class GriesmerBound:
    """Largest n with n >= g_q^(index)(k, n - w), plus the first failing length."""

    value: int
    q: int
    k: int
    index: int
    w: int
    g_at_value: int
    g_at_next: int

    def explain(self) -> str:
        q, k, i, n, w = self.q, self.k, self.index, self.value, self.w
        return (
            f"{n} >= g_{q}^({i})({k},{n - w}) = {self.g_at_value}; "
            f"{n + 1} < g_{q}^({i})({k},{n + 1 - w}) = {self.g_at_next}"
        )


def griesmer_upper_bound_m(query: BoundQuery) -> GriesmerBound:
    if query.r >= query.K:
        raise TrivialQuery(f"{query}: r = K is a trivial query, the whole space is the only subspace")
    q, k, index, w = query.q, query.k, query.K - query.r, query.w
    ceiling = w * gaussian_v(k, q)

    def g_at(n):
        return griesmer_g_r(q, k, index, n - w)

    n = w
    while n < ceiling and n + 1 >= g_at(n + 1):
        n += 1
    if n == ceiling:
        logger.warning("%s: Griesmer scan stopped at the counting ceiling %d", query, ceiling)
    return GriesmerBound(n, q, k, index, w, g_at(n), g_at(n + 1))


def counting_bound_m(query: BoundQuery) -> int:
    return query.w * gaussian_v(query.k, query.q) // gaussian_v(query.r + 1, query.q)


# ----------------------------
# Oraculo de longitudes optimas
# ----------------------------
@dataclass(frozen=True)
class OracleEntry:
    q: int
    n: int
    k: int
    d: int
    exact: bool


class OptimalLengthOracle:
    """Largest known minimum distance of [n, k]_q codes, with an exactness flag per entry."""

    def __init__(self, entries=()):
        self._entries: dict[tuple[int, int, int], OracleEntry] = {}
        for entry in entries:
            self._entries[(entry.q, entry.n, entry.k)] = entry

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries.values(), key=lambda e: (e.q, e.k, e.n)))

    def lookup(self, q: int, n: int, k: int) -> OracleEntry | None:
        return self._entries.get((q, n, k))

    @classmethod
    def parse(cls, text: str, source: str = "<oracle>") -> "OptimalLengthOracle":
        entries = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 5 or parts[4] not in ("exact", "bkn"):
                raise DataFormatError("expected 'q n k d exact|bkn'", source, number)
            try:
                q, n, k, d = (int(x) for x in parts[:4])
            except ValueError as exc:
                raise DataFormatError("non-integer entry", source, number) from exc
            entries.append(OracleEntry(q, n, k, d, parts[4] == "exact"))
        oracle = cls(entries)
        logger.debug("loaded %d oracle entries from %s", len(oracle), source)
        return oracle

    @classmethod
    def from_file(cls, path=None) -> "OptimalLengthOracle":
        path = Path(path) if path else conf.data_dir() / "oracle.txt"
        return cls.parse(path.read_text(encoding="utf-8"), str(path))

    def inconsistencies(self) -> list[str]:
        """Adjacent exact entries breaking d(n) <= d(n+1) <= d(n) + 1."""
        problems = []
        for entry in self:
            nxt = self.lookup(entry.q, entry.n + 1, entry.k)
            if nxt is None or not (entry.exact and nxt.exact):
                continue
            if not entry.d <= nxt.d <= entry.d + 1:
                problems.append(
                    f"q={entry.q} k={entry.k}: d({entry.n})={entry.d} but d({nxt.n})={nxt.d}"
                )
        return problems


@dataclass(frozen=True)
class CodingBound:
    value: int | None
    chain: tuple[int, ...]
    missing: tuple[int, int, int] | None = None

    @property
    def known(self) -> bool:
        return self.value is not None

    def describe(self) -> str:
        chain = " -> ".join(str(s) for s in self.chain)
        if self.known:
            return f"{self.value} (chain {chain})"
        q, n, k = self.missing
        return f"unknown (chain {chain}; no exact oracle entry for [{n},{k}]_{q})"


def _largest_griesmer_length(q: int, k: int, s: int) -> int:
    n = s
    while griesmer_g(q, k, n + 1 - s) <= n + 1:
        n += 1
    return n


def _coding_step(q: int, dim: int, s: int, oracle: OptimalLengthOracle):
    """Largest n admitting an [n, dim, n - s]_q code, or the oracle key that is missing."""
    n = _largest_griesmer_length(q, dim, s)
    while n >= dim:
        needed = n - s
        if needed <= 1:
            return n, None
        entry = oracle.lookup(q, n, dim)
        if entry is not None and entry.d >= needed:
            return n, None
        if entry is None or not entry.exact:
            return None, (q, n, dim)
        n -= 1
    return None, (q, dim, dim)


def coding_upper_bound_m(
    query: BoundQuery, oracle: OptimalLengthOracle, as_printed: bool = False
) -> CodingBound:
    """Push w through optimal-length data one dimension at a time.

    s_r = w and s_{j+1} is the largest n with an [n, j+2, n - s_j]_q code. With ``as_printed``
    the code dimension never exceeds K.
    """
    s = query.w
    chain = [s]
    for j in range(query.r, query.K):
        dim = j + 2
        if as_printed:
            dim = min(dim, query.K)
        s, missing = _coding_step(query.q, dim, s, oracle)
        if s is None:
            logger.info("%s: coding bound unknown, missing %s", query, missing)
            return CodingBound(None, tuple(chain), missing)
        chain.append(s)
    return CodingBound(chain[-1], tuple(chain))


@dataclass(frozen=True)
class UpperBound:
    value: int
    provenance: str
    components: dict = field(default_factory=dict)


def best_upper_bound(
    query: BoundQuery, oracle: OptimalLengthOracle | None = None, as_printed: bool = False
) -> UpperBound:
    components = {}
    if query.r < query.K:
        components["griesmer"] = griesmer_upper_bound_m(query).value
    if oracle is not None:
        coding = coding_upper_bound_m(query, oracle, as_printed)
        if coding.known:
            components["coding"] = coding.value
    components["counting"] = counting_bound_m(query)
    # dict order is the tie order
    provenance = min(components, key=lambda name: components[name])
    return UpperBound(components[provenance], provenance, components)
