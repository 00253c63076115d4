from pathlib import Path

from django.db import migrations

# Lector congelado: no importa codigo de la app, los datos sembrados no deben
# cambiar si el parser de la app cambia.
DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def _rows(path, width):
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < width:
            raise ValueError(f"{path.name}: short row {line!r}")
        yield parts


def read_tables(root=DATA_DIR):
    for parts in _rows(root / "tables.tsv", 7):
        lo, _, hi = parts[4].partition(":")
        yield {
            "q": int(parts[0]),
            "K": int(parts[1]),
            "r": int(parts[2]),
            "w": int(parts[3]),
            "value_lo": int(lo),
            "value_hi": int(hi or lo),
            "construction": parts[5],
            "bound_source": parts[6],
            "note": parts[7] if len(parts) > 7 else "",
        }


def read_claims(root=DATA_DIR):
    for parts in _rows(root / "claims.tsv", 5):
        yield {
            "matrix": parts[0],
            "r": int(parts[1]),
            "w": int(parts[2]),
            "n": int(parts[3]),
            "status": parts[4],
            "note": parts[5] if len(parts) > 5 else "",
        }


def read_matrices(root=DATA_DIR):
    for path in sorted((root / "matrices").glob("*.txt")):
        lines = [line.strip() for line in path.read_text(encoding="ascii").splitlines() if line.strip()]
        q, k, n = (int(x) for x in lines[0].split())
        yield {"slug": path.stem, "q": q, "k": k, "n": n, "digits": "\n".join(lines[1 : k + 1])}


def read_oracle(root=DATA_DIR):
    for line in (root / "oracle.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        q, n, k, d, kind = line.split()
        yield {"q": int(q), "n": int(n), "k": int(k), "d": int(d), "exact": kind == "exact"}


def seed_paper_data(apps, schema_editor):
    TableEntry = apps.get_model("Core", "TableEntry")
    EmbeddedMatrix = apps.get_model("Core", "EmbeddedMatrix")
    MatrixClaim = apps.get_model("Core", "MatrixClaim")
    OracleEntry = apps.get_model("Core", "OracleEntry")

    for row in read_tables():
        key = {name: row.pop(name) for name in ("q", "K", "r", "w")}
        TableEntry.objects.get_or_create(**key, defaults=row)

    matrices = {}
    for row in read_matrices():
        slug = row.pop("slug")
        matrices[slug], _ = EmbeddedMatrix.objects.get_or_create(slug=slug, defaults=row)

    for row in read_claims():
        matrix = matrices[row.pop("matrix")]
        MatrixClaim.objects.get_or_create(
            matrix=matrix,
            r=row.pop("r"),
            w=row.pop("w"),
            defaults=row,
        )

    for row in read_oracle():
        OracleEntry.objects.get_or_create(
            q=row["q"], n=row["n"], k=row["k"], defaults={"d": row["d"], "exact": row["exact"]}
        )


def unseed_paper_data(apps, schema_editor):
    # borra todo, las busquedas guardadas no dependen de estas tablas
    for name in ("MatrixClaim", "EmbeddedMatrix", "OracleEntry", "TableEntry"):
        apps.get_model("Core", name).objects.all().delete()


class Migration(migrations.Migration):

    dependencies = [
        ("Core", "0001_initial"),
    ]

    operations = [
        migrations.RunPython(seed_paper_data, reverse_code=unseed_paper_data),
    ]
