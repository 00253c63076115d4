from django.db import models


# ----------------------------
# Tabla de valores exactos
# ----------------------------
class TableEntry(models.Model):
    q = models.PositiveSmallIntegerField()
    K = models.PositiveSmallIntegerField()
    r = models.PositiveSmallIntegerField()
    w = models.PositiveIntegerField()
    value_lo = models.PositiveIntegerField()
    value_hi = models.PositiveIntegerField()
    construction = models.CharField(max_length=120)
    bound_source = models.CharField(max_length=60)
    note = models.CharField(max_length=255, blank=True)
    search_proved = models.BooleanField(default=False)
    search_relies_on_prescription = models.BooleanField(default=False)

    class Meta:
        ordering = ["q", "K", "r", "w"]
        unique_together = ("q", "K", "r", "w")

    def __str__(self):
        return f"m_{self.q}^({self.r})({self.K},{self.w}) = {self.value_text}"

    @property
    def value_kind(self) -> str:
        return "exact" if self.value_lo == self.value_hi else "range"

    @property
    def value_text(self) -> str:
        if self.value_lo == self.value_hi:
            return str(self.value_lo)
        return f"{self.value_lo}:{self.value_hi}"

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.q, self.K, self.r, self.w)


# ----------------------------
# Matrices generadoras
# ----------------------------
class EmbeddedMatrix(models.Model):
    slug = models.CharField(max_length=60, unique=True)
    q = models.PositiveSmallIntegerField()
    k = models.PositiveSmallIntegerField()
    n = models.PositiveIntegerField()
    digits = models.TextField(help_text="One line of n digits per row.")

    class Meta:
        ordering = ["slug"]

    def __str__(self):
        return f"{self.slug} [{self.n},{self.k}]_{self.q}"

    def as_text(self) -> str:
        return f"{self.q} {self.k} {self.n}\n{self.digits.strip()}\n"


class MatrixClaim(models.Model):
    STATUSES = (
        ("ok", "Holds"),
        ("known-discrepancy", "Known discrepancy"),
    )
    matrix = models.ForeignKey(EmbeddedMatrix, on_delete=models.CASCADE, related_name="claims")
    r = models.PositiveSmallIntegerField()
    w = models.PositiveIntegerField()
    n = models.PositiveIntegerField()
    status = models.CharField(max_length=20, choices=STATUSES, default="ok")
    note = models.TextField(blank=True)

    class Meta:
        ordering = ["matrix__slug", "r", "w"]
        unique_together = ("matrix", "r", "w")

    def __str__(self):
        return f"{self.matrix.slug}: ({self.n},{self.w}) for r={self.r} [{self.status}]"


class OracleEntry(models.Model):
    q = models.PositiveSmallIntegerField()
    n = models.PositiveIntegerField()
    k = models.PositiveSmallIntegerField()
    d = models.PositiveIntegerField()
    exact = models.BooleanField(default=True)

    class Meta:
        ordering = ["q", "k", "n"]
        unique_together = ("q", "n", "k")

    def __str__(self):
        flag = "exact" if self.exact else "bkn"
        return f"[{self.n},{self.k},{self.d}]_{self.q} ({flag})"


# ----------------------------
# Busquedas
# ----------------------------
class SearchRun(models.Model):
    STATUSES = (
        ("optimal", "Optimal"),
        ("feasible-only", "Feasible only"),
    )
    q = models.PositiveSmallIntegerField()
    K = models.PositiveSmallIntegerField()
    r = models.PositiveSmallIntegerField()
    w = models.PositiveIntegerField()
    point_cap = models.PositiveIntegerField(null=True, blank=True)  # None = derived default
    prescribed_frame = models.BooleanField(default=False)
    prescription = models.TextField(blank=True)
    best_n = models.PositiveIntegerField()
    status = models.CharField(max_length=20, choices=STATUSES)
    proved_by = models.CharField(max_length=20, blank=True)
    root_bound = models.PositiveIntegerField(null=True, blank=True)
    nodes = models.BigIntegerField(default=0)
    seconds = models.FloatField(default=0)
    witness = models.TextField(blank=True)
    log = models.TextField(blank=True)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created"]

    def __str__(self):
        return f"search m_{self.q}^({self.r})({self.K},{self.w}): {self.best_n} ({self.get_status_display()})"

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.q, self.K, self.r, self.w)

    @property
    def relies_on_prescription(self) -> bool:
        return self.prescribed_frame or bool(self.prescription.strip())


# ----------------------------
# Verificaciones
# ----------------------------
class VerificationRun(models.Model):
    only = models.CharField(max_length=60, blank=True)
    ok = models.BooleanField(default=False)
    entries_checked = models.PositiveIntegerField(default=0)
    matrices_checked = models.PositiveIntegerField(default=0)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created"]

    def __str__(self):
        estado = "ok" if self.ok else "mismatch"
        return f"verification {self.created:%Y-%m-%d %H:%M} ({estado})"


class VerificationItem(models.Model):
    KINDS = (
        ("entry", "Table entry"),
        ("matrix", "Matrix claim"),
    )
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name="items")
    kind = models.CharField(max_length=10, choices=KINDS)
    label = models.CharField(max_length=80)
    status = models.CharField(max_length=30)
    detail = models.TextField(blank=True)

    class Meta:
        ordering = ["run", "kind", "label"]

    def __str__(self):
        return f"{self.label}: {self.status}"
