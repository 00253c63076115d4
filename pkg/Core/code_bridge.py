"""Linear codes and their point multisets.

The columns of a k x n generator matrix are n points of PG(k-1, q) (counted with repetition),
and the r-th generalized weight of the code is n minus the heaviest (k-r-1)-subspace.
``weight_hierarchy_direct`` computes the same numbers from subcode supports, without geometry.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import conf
from .exceptions import (
    ArcError,
    BudgetExceeded,
    DataFormatError,
    DimensionMismatch,
    NotFullLength,
    RankDeficient,
)
from .gf_linalg import as_matrix, prime_field, rank
from .point_multisets import Multiset, arc_profile
from .projective_geometry import ProjectiveSpace, gaussian_binomial, iter_rref_bases

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearCode:
    gen: np.ndarray
    q: int

    def __post_init__(self):
        gen = as_matrix(self.gen, self.q)
        rk = rank(gen, self.q)
        if rk < gen.shape[0]:
            raise RankDeficient(f"generator matrix has rank {rk} < k={gen.shape[0]}")
        gen.setflags(write=False)
        object.__setattr__(self, "gen", gen)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def zero_columns(self) -> list[int]:
        return np.flatnonzero(~self.gen.any(axis=0)).tolist()

    def to_matrix_text(self) -> str:
        return format_matrix(self.gen, self.q)

    def write_matrix(self, path) -> None:
        Path(path).write_text(self.to_matrix_text(), encoding="ascii")

    @classmethod
    def read_matrix(cls, path) -> "LinearCode":
        path = Path(path)
        q, rows = parse_matrix(path.read_text(encoding="ascii"), str(path))
        return cls(rows, q)


@dataclass(frozen=True)
class WeightHierarchy:
    d: tuple[int, ...]

    def __post_init__(self):
        if not self.d or self.d[0] < 1:
            raise ArcError(f"weight hierarchy must start at d_1 >= 1, got {self.d}")
        if any(a >= b for a, b in zip(self.d, self.d[1:])):
            raise ArcError(f"weight hierarchy must be strictly increasing, got {self.d}")

    def __getitem__(self, r: int) -> int:
        """d_r, counting r from 1."""
        if not 1 <= r <= len(self.d):
            raise IndexError(f"d_{r} outside 1..{len(self.d)}")
        return self.d[r - 1]

    def __len__(self):
        return len(self.d)


# ----------------------------
# Formato de matrices
# ----------------------------
def parse_matrix(text: str, source: str = "<matrix>") -> tuple[int, np.ndarray]:
    """Parse the ``q k n`` header and k digit rows; the rank is not checked here."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise DataFormatError("empty matrix file", source, 1)
    try:
        q, k, n = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise DataFormatError("header must be 'q k n'", source, 1) from exc
    prime_field(q)
    if len(lines) - 1 != k:
        raise DataFormatError(f"expected {k} rows, found {len(lines) - 1}", source)
    rows = []
    for number, line in enumerate(lines[1:], start=2):
        if len(line) != n or not line.isdigit():
            raise DataFormatError(f"expected {n} digits", source, number)
        row = [int(c) for c in line]
        if max(row) >= q:
            raise DataFormatError(f"digit outside 0..{q - 1}", source, number)
        rows.append(row)
    return q, np.array(rows, dtype=np.int64)


def format_matrix(gen, q: int) -> str:
    m = as_matrix(gen, q)
    lines = [f"{q} {m.shape[0]} {m.shape[1]}"]
    lines.extend("".join(str(int(c)) for c in row) for row in m)
    return "\n".join(lines) + "\n"


# ----------------------------
# Codigo <-> multiconjunto
# ----------------------------
def is_full_length(code: LinearCode) -> bool:
    return bool(code.gen.any(axis=0).all())


def matrix_to_multiset(code: LinearCode) -> Multiset:
    zeros = code.zero_columns()
    if zeros:
        raise NotFullLength(f"not full length: column {zeros[0]} is zero")
    space = ProjectiveSpace(code.k - 1, code.q)
    ids = space.indices_of(code.gen.T)
    return Multiset.of_points(space, ids)


def multiset_to_matrix(ms: Multiset) -> LinearCode:
    space = ms.space
    support = ms.support()
    rk = rank(space.points_matrix[support], space.q) if support.size else 0
    if rk < space.k:
        raise RankDeficient(
            f"the multiset spans a {rk - 1}-dimensional subspace of {space}, not the whole space"
        )
    columns = np.repeat(space.points_matrix, ms.mult, axis=0)
    return LinearCode(columns.T, space.q)


def weight_hierarchy_geometric(code: LinearCode, threads: int | None = None) -> WeightHierarchy:
    if not is_full_length(code):
        raise NotFullLength(f"not full length: column {code.zero_columns()[0]} is zero")
    n, k = code.n, code.k
    if k == 1:
        return WeightHierarchy((n,))
    profile = arc_profile(matrix_to_multiset(code), threads)
    # w_{-1} = 0: the whole code has support n
    heaviest = (0,) + profile.w
    return WeightHierarchy(tuple(n - heaviest[k - r] for r in range(1, k + 1)))


def weight_hierarchy_direct(code: LinearCode, r: int, threads: int | None = None) -> int:
    """Smallest support of an r-dimensional subcode, by enumerating all of them."""
    if not 1 <= r <= code.k:
        raise DimensionMismatch(f"subcode dimension {r} outside 1..{code.k}")
    count = gaussian_binomial(code.k, r, code.q)
    cap = conf.subspace_cap()
    if count > cap:
        raise BudgetExceeded(f"{count} subcodes of dimension {r} exceed the configured cap of {cap}")
    gen = code.gen
    q = code.q

    def smallest_support(batch):
        words = np.einsum("brk,kn->brn", batch, gen) % q
        return int(words.any(axis=1).sum(axis=1).min())

    batches = iter_rref_bases(r, code.k, q)
    workers = threads or conf.default_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return min(pool.map(smallest_support, batches))
    return min(smallest_support(batch) for batch in batches)


def weight_hierarchy(code: LinearCode, direct: bool = False, threads: int | None = None) -> WeightHierarchy:
    if not direct:
        return weight_hierarchy_geometric(code, threads)
    return WeightHierarchy(
        tuple(weight_hierarchy_direct(code, r, threads) for r in range(1, code.k + 1))
    )
