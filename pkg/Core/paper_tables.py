"""Stored table of exact values of m_q^(r)(K, w), the generator matrices behind it, and the checks.

The dataset directory (``PGARC_DATA``) holds ``tables.tsv``, ``claims.tsv``, ``oracle.txt`` and
``matrices/<id>.txt``. ``verify_entry`` rebuilds a row's construction and evaluates the bound it
cites; ``verify_matrix`` checks each stored matrix against its claims. Mismatches end up in the
reports, they are never raised.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import conf
from .bounds import (
    BoundQuery,
    OptimalLengthOracle,
    best_upper_bound,
    coding_upper_bound_m,
    griesmer_upper_bound_m,
)
from .code_bridge import LinearCode, matrix_to_multiset, parse_matrix
from .exceptions import ArcError, DataFormatError
from .point_multisets import Multiset, add_generic_point, parse_type, solomon_stiffler
from .projective_geometry import ProjectiveSpace

logger = logging.getLogger(__name__)

TABLES_FILE = "tables.tsv"
CLAIMS_FILE = "claims.tsv"
ORACLE_FILE = "oracle.txt"
MATRIX_DIR = "matrices"

CLOSED_FORM_SOURCES = ("griesmer", "coding")
CLAIM_STATUSES = ("ok", "known-discrepancy")


# ----------------------------
# Datos
# ----------------------------
@dataclass(frozen=True)
class TableEntry:
    q: int
    K: int
    r: int
    w: int
    lo: int
    hi: int
    construction: str
    bound_source: str
    note: str = ""

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.q, self.K, self.r, self.w)

    @property
    def table_key(self) -> tuple[int, int, int]:
        return (self.q, self.K, self.r)

    @property
    def value_kind(self) -> str:
        return "exact" if self.lo == self.hi else "range"

    @property
    def value(self) -> int | None:
        return self.lo if self.lo == self.hi else None

    @property
    def value_text(self) -> str:
        return str(self.lo) if self.lo == self.hi else f"{self.lo}:{self.hi}"

    @property
    def query(self) -> BoundQuery:
        return BoundQuery(self.q, self.K, self.r, self.w)

    def label(self) -> str:
        return f"m_{self.q}^({self.r})({self.K},{self.w})"


@dataclass(frozen=True)
class MatrixClaim:
    matrix_id: str
    r: int
    w: int
    n: int
    status: str = "ok"
    note: str = ""


@dataclass(frozen=True, eq=False)
class EmbeddedMatrix:
    id: str
    q: int
    digits: np.ndarray
    claims: tuple[MatrixClaim, ...] = ()

    @property
    def k(self) -> int:
        return self.digits.shape[0]

    @property
    def n(self) -> int:
        return self.digits.shape[1]

    def code(self) -> LinearCode:
        return LinearCode(self.digits, self.q)


@dataclass(eq=False)
class Dataset:
    entries: dict[tuple[int, int, int, int], TableEntry]
    matrices: dict[str, EmbeddedMatrix]
    oracle: OptimalLengthOracle
    source: str = ""
    _built: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _key_locks: dict = field(default_factory=dict, repr=False)

    def entry(self, q: int, K: int, r: int, w: int) -> TableEntry | None:
        return self.entries.get((q, K, r, w))

    def table(self, q: int, K: int, r: int) -> list[TableEntry]:
        return sorted(
            (e for e in self.entries.values() if e.table_key == (q, K, r)), key=lambda e: e.w
        )

    def table_keys(self) -> list[tuple[int, int, int]]:
        return sorted({e.table_key for e in self.entries.values()})

    def claims_for(self, matrix_id: str) -> tuple[MatrixClaim, ...]:
        matrix = self.matrices.get(matrix_id)
        return matrix.claims if matrix else ()


def parse_tables(text: str, source: str = TABLES_FILE) -> dict[tuple, TableEntry]:
    entries = {}
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 7:
            raise DataFormatError("expected 'q K r w value construction bound_source [note]'", source, number)
        try:
            q, K, r, w = (int(x) for x in parts[:4])
            lo, _, hi = parts[4].partition(":")
            lo, hi = int(lo), int(hi or lo)
        except ValueError as exc:
            raise DataFormatError("non-integer field", source, number) from exc
        if lo > hi:
            raise DataFormatError(f"empty range {parts[4]}", source, number)
        entry = TableEntry(q, K, r, w, lo, hi, parts[5], parts[6], parts[7] if len(parts) > 7 else "")
        if entry.key in entries:
            raise DataFormatError(f"{entry.label()} appears twice", source, number)
        entries[entry.key] = entry
    return entries


def parse_claims(text: str, source: str = CLAIMS_FILE) -> list[MatrixClaim]:
    claims = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 5 or parts[4] not in CLAIM_STATUSES:
            raise DataFormatError("expected 'matrix r w n ok|known-discrepancy [note]'", source, number)
        try:
            r, w, n = (int(x) for x in parts[1:4])
        except ValueError as exc:
            raise DataFormatError("non-integer field", source, number) from exc
        claims.append(MatrixClaim(parts[0], r, w, n, parts[4], parts[5] if len(parts) > 5 else ""))
    return claims


def load_dataset(path=None) -> Dataset:
    root = Path(path) if path else conf.data_dir()
    tables_path = root / TABLES_FILE
    entries = parse_tables(tables_path.read_text(encoding="utf-8"), str(tables_path))
    claims_path = root / CLAIMS_FILE
    claims = parse_claims(claims_path.read_text(encoding="utf-8"), str(claims_path))
    matrices = {}
    for matrix_path in sorted((root / MATRIX_DIR).glob("*.txt")):
        q, digits = parse_matrix(matrix_path.read_text(encoding="ascii"), str(matrix_path))
        matrix_id = matrix_path.stem
        own = tuple(c for c in claims if c.matrix_id == matrix_id)
        matrices[matrix_id] = EmbeddedMatrix(matrix_id, q, digits, own)
    unknown = {c.matrix_id for c in claims} - set(matrices)
    if unknown:
        raise DataFormatError(f"claims for missing matrices: {', '.join(sorted(unknown))}", str(claims_path))
    oracle = OptimalLengthOracle.from_file(root / ORACLE_FILE)
    logger.info("loaded %d table entries and %d matrices from %s", len(entries), len(matrices), root)
    return Dataset(entries, matrices, oracle, str(root))


# ----------------------------
# Construcciones
# ----------------------------
@dataclass(frozen=True, eq=False)
class Construction:
    """Result of rebuilding a table row: a multiset, or the reason there is none."""

    status: str  # built | cited | failed
    multiset: Multiset | None = None
    detail: str = ""


def projective_base(space: ProjectiveSpace) -> Multiset:
    """The K+1 unit points and the all-ones point."""
    points = [space.unit_point(i) for i in range(space.k)]
    points.append(space.point_index(np.ones(space.k, dtype=np.int64)))
    return Multiset.of_points(space, points)


def elliptic_quadric(space: ProjectiveSpace) -> Multiset:
    """Points of x0*x1 + x2^2 + x3^2 = 0, an ovoid of PG(3,3)."""
    if (space.K, space.q) != (3, 3):
        raise ArcError(f"the stored ovoid lives in PG(3,3), not in {space}")
    x = space.points_matrix
    on = (x[:, 0] * x[:, 1] + x[:, 2] ** 2 + x[:, 3] ** 2) % space.q == 0
    return Multiset.of_points(space, np.flatnonzero(on))


def matrix_multiset(matrix: EmbeddedMatrix) -> tuple[Multiset, list[int]]:
    """Multiset of the nonzero columns of a stored matrix, and the dropped zero columns."""
    code = matrix.code()
    zeros = code.zero_columns()
    if zeros:
        keep = np.flatnonzero(code.gen.any(axis=0))
        code = LinearCode(code.gen[:, keep], code.q)
    return matrix_to_multiset(code), zeros


def build_construction(entry: TableEntry, dataset: Dataset) -> Construction:
    # un lock por fila: las recursiones (+[0], sum:) van siempre a otras filas
    with dataset._lock:
        key_lock = dataset._key_locks.setdefault(entry.key, threading.Lock())
    with key_lock:
        done = dataset._built.get(entry.key)
        if done is not None:
            return done
        try:
            result = _build(entry, dataset)
        except ArcError as exc:
            result = Construction("failed", detail=str(exc))
        with dataset._lock:
            dataset._built[entry.key] = result
    return result


def _build(entry: TableEntry, dataset: Dataset) -> Construction:
    tag = entry.construction
    if tag == "cited":
        return Construction("cited", detail=entry.note or "external code")
    space = ProjectiveSpace(entry.K, entry.q)
    if tag == "+[0]":
        previous = dataset.entry(entry.q, entry.K, entry.r, entry.w - 1)
        if previous is None:
            return Construction("failed", detail=f"no row w={entry.w - 1} to add a point to")
        base = build_construction(previous, dataset)
        if base.status != "built":
            return Construction(base.status, detail=f"row w={entry.w - 1} plus a point: {base.detail}")
        return Construction("built", add_generic_point(base.multiset, entry.r), "previous row plus a point")
    if tag.startswith("sum:"):
        parts = []
        for w in tag[4:].split("+"):
            row = dataset.entry(entry.q, entry.K, entry.r, int(w))
            if row is None:
                return Construction("failed", detail=f"no row w={w} for {tag}")
            part = build_construction(row, dataset)
            if part.status != "built":
                return Construction(part.status, detail=f"row w={w}: {part.detail}")
            parts.append(part.multiset)
        total = parts[0]
        for part in parts[1:]:
            total = total + part
        return Construction("built", total, tag)
    if tag.startswith("matrix:"):
        matrix = dataset.matrices.get(tag[7:])
        if matrix is None:
            return Construction("failed", detail=f"no stored matrix {tag[7:]}")
        ms, zeros = matrix_multiset(matrix)
        detail = f"matrix {matrix.id}"
        if zeros:
            detail += f", zero columns {zeros} dropped"
        return Construction("built", ms, detail)
    if tag == "projective-base":
        return Construction("built", projective_base(space), tag)
    if tag == "ovoid":
        return Construction("built", elliptic_quadric(space), tag)
    sstype = parse_type(tag)
    return Construction("built", solomon_stiffler(space, sstype, entry.r), f"type {tag}")


# ----------------------------
# Verificacion
# ----------------------------
@dataclass
class EntryReport:
    entry: TableEntry
    construction_status: str = "not-checked"
    construction_detail: str = ""
    bound_status: str = "not-checked"
    bound_detail: str = ""
    certified_by: list[str] = field(default_factory=list)
    level: str = ""

    @property
    def key(self):
        return self.entry.key

    @property
    def ok(self) -> bool:
        return self.construction_status not in ("mismatch", "failed") and self.bound_status not in (
            "mismatch",
            "unknown",
        )

    def line(self) -> str:
        e = self.entry
        return "\t".join(
            [
                e.label(),
                e.value_text,
                e.construction,
                self.construction_status,
                e.bound_source,
                self.bound_status,
                ",".join(self.certified_by) or "-",
                self.level,
            ]
        )


def _explained_by_claims(entry: TableEntry, dataset: Dataset) -> str | None:
    if not entry.construction.startswith("matrix:"):
        return None
    for claim in dataset.claims_for(entry.construction[7:]):
        if claim.status == "known-discrepancy" and (claim.r, claim.w) == (entry.r, entry.w):
            return claim.note or "known discrepancy"
    return None


def _check_construction(report: EntryReport, dataset: Dataset) -> None:
    entry = report.entry
    built = build_construction(entry, dataset)
    if built.status != "built":
        report.construction_status = built.status
        report.construction_detail = built.detail
        return
    ms = built.multiset
    achieved = ms.w(entry.r)
    report.construction_detail = f"{built.detail}: n={ms.n}, w_{entry.r}={achieved}"
    if ms.n >= entry.lo and achieved <= entry.w and (entry.value is None or ms.n == entry.value):
        report.construction_status = "ok"
        return
    explanation = _explained_by_claims(entry, dataset)
    if explanation:
        report.construction_status = "explained"
        report.construction_detail += f" ({explanation})"
    else:
        report.construction_status = "mismatch"
        logger.warning("%s: construction gives %s", entry.label(), report.construction_detail)


def _check_bound(report: EntryReport, dataset: Dataset) -> int | None:
    """Evaluate the cited bound; returns the best computed upper bound."""
    entry = report.entry
    query = entry.query
    best = best_upper_bound(query, dataset.oracle)
    target = entry.hi
    source = entry.bound_source
    if source == "griesmer":
        value = griesmer_upper_bound_m(query).value
        report.bound_detail = f"griesmer {value}"
    elif source == "coding":
        coding = coding_upper_bound_m(query, dataset.oracle)
        value = coding.value
        report.bound_detail = f"coding {coding.describe()}"
        if value is None:
            report.bound_status = "unknown"
            return best.value
    else:
        # lemma-level arguments are not recomputed, only checked against the closed forms
        report.bound_detail = f"{source}; best closed form {best.value} ({best.provenance})"
        report.bound_status = "consistent" if best.value >= target else "mismatch"
        return best.value
    report.bound_status = "ok" if value == target else "mismatch"
    if report.bound_status == "mismatch":
        logger.warning("%s: %s, table says %d", entry.label(), report.bound_detail, target)
    return best.value


def verify_entry(
    entry: TableEntry,
    oracle: OptimalLengthOracle | None = None,
    dataset: Dataset | None = None,
    search_proved: frozenset = frozenset(),
) -> EntryReport:
    dataset = dataset or load_dataset()
    if oracle is not None and oracle is not dataset.oracle:
        dataset = Dataset(dataset.entries, dataset.matrices, oracle, dataset.source)
    report = EntryReport(entry)
    if entry.bound_source == "remark":
        report.construction_status = "cited"
        report.bound_status = "not-checked"
        report.level = "data-only"
        return report
    _check_construction(report, dataset)
    _check_bound(report, dataset)
    if entry.value_kind == "range":
        report.level = "open"
        return report
    if report.construction_status == "ok":
        report.certified_by.append(
            "matrix" if entry.construction.startswith("matrix:") else "construction"
        )
    if entry.key in search_proved:
        report.certified_by.append("search")
    if report.bound_status == "ok":
        report.certified_by.append("bound")
    if not report.ok:
        report.level = "mismatch"
    elif report.construction_status == "explained":
        report.level = "explained"
    elif report.bound_status == "ok" and report.construction_status == "ok":
        report.level = "certified"
    elif "search" in report.certified_by:
        report.level = "certified"
    elif report.construction_status == "ok":
        report.level = "construction+bounds"
    else:
        report.level = "cited+bound"
    return report


@dataclass
class ClaimCheck:
    claim: MatrixClaim
    status: str
    n: int | None = None
    w: int | None = None
    detail: str = ""
    violating: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


@dataclass
class MatrixReport:
    matrix_id: str
    checks: list[ClaimCheck] = field(default_factory=list)

    @property
    def key(self):
        return self.matrix_id

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            fields = [self.matrix_id, f"r={c.claim.r}", f"w={c.claim.w}", f"n={c.claim.n}", c.status]
            found = f"found n={c.n} w={c.w}" if c.n is not None else c.detail
            fields.append(found)
            if c.violating:
                fields.append(f"violating {c.violating}")
            out.append("\t".join(fields))
        return out


def verify_matrix(matrix: EmbeddedMatrix) -> MatrixReport:
    report = MatrixReport(matrix.id)
    try:
        ms, zeros = matrix_multiset(matrix)
    except ArcError as exc:
        for claim in matrix.claims:
            status = "explained" if claim.status == "known-discrepancy" else "mismatch"
            report.checks.append(ClaimCheck(claim, status, detail=str(exc)))
        return report
    for claim in matrix.claims:
        achieved = ms.w(claim.r)
        problems = []
        if zeros:
            problems.append(f"zero columns {zeros}")
        if ms.n != claim.n:
            problems.append(f"{ms.n} nonzero columns, {claim.n} claimed")
        violating = ""
        if achieved > claim.w:
            heavy = ms.heaviest_subspace(claim.r)
            violating = f"{heavy} holds {ms.subspace_multiplicity(heavy)}"
            problems.append(f"some {claim.r}-subspace holds {achieved}")
        elif achieved < claim.w:
            problems.append(f"w_{claim.r}={achieved} does not attain {claim.w}")
        if not problems:
            status = "ok"
        elif claim.status == "known-discrepancy":
            status = "explained"
        else:
            status = "mismatch"
            logger.warning("matrix %s: %s", matrix.id, "; ".join(problems))
        report.checks.append(
            ClaimCheck(claim, status, ms.n + len(zeros), achieved, "; ".join(problems), violating)
        )
    return report


@dataclass
class PaperReport:
    entries: list[EntryReport]
    matrices: list[MatrixReport]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries) and all(m.ok for m in self.matrices)

    def mismatches(self) -> list[str]:
        bad = [e.entry.label() for e in self.entries if not e.ok]
        bad.extend(m.matrix_id for m in self.matrices if not m.ok)
        return bad

    def text(self) -> str:
        lines = ["# entries: label value construction status bound_source status certified_by level"]
        lines.extend(e.line() for e in self.entries)
        lines.append("# matrices: id claim status details")
        for m in self.matrices:
            lines.extend(m.lines())
        return "\n".join(lines) + "\n"


def _selected(dataset: Dataset, only: str | None):
    if not only:
        return list(dataset.entries.values()), list(dataset.matrices.values())
    if only in dataset.matrices:
        return [], [dataset.matrices[only]]
    try:
        numbers = tuple(int(x) for x in only.split(","))
    except ValueError as exc:
        raise DataFormatError(f"--only expects 'q,K,r', 'q,K,r,w' or a matrix id, got {only!r}") from exc
    entries = [e for e in dataset.entries.values() if e.key[: len(numbers)] == numbers]
    if not entries:
        raise DataFormatError(f"no table entries match {only!r}")
    return entries, []


def verify_paper(
    dataset: Dataset | None = None,
    only: str | None = None,
    threads: int | None = None,
    search_proved: frozenset = frozenset(),
) -> PaperReport:
    dataset = dataset or load_dataset()
    entries, matrices = _selected(dataset, only)
    workers = threads or conf.default_threads()

    def check_entry(entry):
        return verify_entry(entry, dataset=dataset, search_proved=search_proved)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entry_reports = list(pool.map(check_entry, entries))
            matrix_reports = list(pool.map(verify_matrix, matrices))
    else:
        entry_reports = [check_entry(e) for e in entries]
        matrix_reports = [verify_matrix(m) for m in matrices]
    entry_reports.sort(key=lambda rep: rep.key)
    matrix_reports.sort(key=lambda rep: rep.key)
    return PaperReport(entry_reports, matrix_reports)


def emit_table(
    q: int, K: int, r: int, dataset: Dataset | None = None, computed: bool = False
) -> str:
    dataset = dataset or load_dataset()
    rows = dataset.table(q, K, r)
    if not rows:
        raise DataFormatError(f"no stored entries for q={q}, K={K}, r={r}")
    header = ["w", "value", "construction", "bound_source"]
    if computed:
        header += ["best_bound", "provenance"]
    lines = ["\t".join(header)]
    for e in rows:
        fields = [str(e.w), e.value_text, e.construction, e.bound_source]
        if computed:
            best = best_upper_bound(e.query, dataset.oracle)
            fields += [str(best.value), best.provenance]
        lines.append("\t".join(fields))
    return "\n".join(lines) + "\n"
