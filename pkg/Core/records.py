"""Database side of the dataset, search runs and verification reports."""

import logging

from django.db import transaction

from .models import (
    EmbeddedMatrix,
    MatrixClaim,
    OracleEntry,
    SearchRun,
    TableEntry,
    VerificationItem,
    VerificationRun,
)

logger = logging.getLogger(__name__)


@transaction.atomic
def sync_dataset(dataset) -> dict[str, int]:
    """Mirror a ``paper_tables.Dataset`` into the database; search flags on entries survive."""
    keep = set()
    for e in dataset.entries.values():
        obj, _ = TableEntry.objects.update_or_create(
            q=e.q,
            K=e.K,
            r=e.r,
            w=e.w,
            defaults={
                "value_lo": e.lo,
                "value_hi": e.hi,
                "construction": e.construction,
                "bound_source": e.bound_source,
                "note": e.note,
            },
        )
        keep.add(obj.pk)
    TableEntry.objects.exclude(pk__in=keep).delete()

    MatrixClaim.objects.all().delete()
    EmbeddedMatrix.objects.exclude(slug__in=list(dataset.matrices)).delete()
    claims = 0
    for m in dataset.matrices.values():
        digits = "\n".join("".join(str(int(c)) for c in row) for row in m.digits)
        obj, _ = EmbeddedMatrix.objects.update_or_create(
            slug=m.id, defaults={"q": m.q, "k": m.k, "n": m.n, "digits": digits}
        )
        for c in m.claims:
            MatrixClaim.objects.create(
                matrix=obj, r=c.r, w=c.w, n=c.n, status=c.status, note=c.note
            )
            claims += 1

    OracleEntry.objects.all().delete()
    OracleEntry.objects.bulk_create(
        OracleEntry(q=o.q, n=o.n, k=o.k, d=o.d, exact=o.exact) for o in dataset.oracle
    )
    counts = {
        "entries": len(dataset.entries),
        "matrices": len(dataset.matrices),
        "claims": claims,
        "oracle": len(dataset.oracle),
    }
    logger.info("dataset synced: %s", counts)
    return counts


def record_search(problem, result, frame: bool = False, user_cap: int | None = None) -> SearchRun:
    space = problem.space
    prescription = " ".join(f"{p}:{m}" for p, m in problem.prescribed)
    return SearchRun.objects.create(
        q=space.q,
        K=space.K,
        r=problem.r,
        w=problem.w,
        point_cap=user_cap,
        prescribed_frame=frame,
        prescription=prescription,
        best_n=result.best_n,
        status=result.status,
        proved_by=result.proved_by or "",
        root_bound=result.root_bound,
        nodes=result.nodes,
        seconds=result.seconds,
        witness=result.witness.to_arc_text(),
        log=result.log_text(),
    )


def search_proved_keys() -> frozenset:
    rows = TableEntry.objects.filter(search_proved=True).values_list("q", "K", "r", "w")
    return frozenset(tuple(row) for row in rows)


@transaction.atomic
def record_verification(report, only: str = "") -> VerificationRun:
    run = VerificationRun.objects.create(
        only=only or "",
        ok=report.ok,
        entries_checked=len(report.entries),
        matrices_checked=len(report.matrices),
    )
    items = [
        VerificationItem(
            run=run,
            kind="entry",
            label=e.entry.label(),
            status=e.level or e.construction_status,
            detail=f"{e.construction_detail} | {e.bound_detail}",
        )
        for e in report.entries
    ]
    for m in report.matrices:
        for c in m.checks:
            items.append(
                VerificationItem(
                    run=run,
                    kind="matrix",
                    label=f"{m.matrix_id} r={c.claim.r} w={c.claim.w}",
                    status=c.status,
                    detail=c.detail,
                )
            )
    VerificationItem.objects.bulk_create(items)
    return run
