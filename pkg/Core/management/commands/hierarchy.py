from django.core.management.base import CommandError

from Core.code_bridge import LinearCode, weight_hierarchy

from ._common import MISMATCH, ArcCommand


class Command(ArcCommand):
    help = "Weight hierarchy d_1 < ... < d_k of the code generated by a matrix file."

    def add_arguments(self, parser):
        parser.add_argument("--matrix", required=True, help="Matrix file: 'q k n' header, then k digit rows.")
        parser.add_argument(
            "--direct",
            action="store_true",
            help="Also enumerate the subcodes and compare with the geometric hierarchy.",
        )
        parser.add_argument("--threads", type=int, default=None)

    def handle(self, *args, **options):
        code = LinearCode.read_matrix(options["matrix"])
        geometric = weight_hierarchy(code, threads=options["threads"])
        self.emit(f"[{code.n},{code.k}]_{code.q}")
        for r in range(1, code.k + 1):
            self.emit(f"d_{r} = {geometric[r]}")
        if options["direct"]:
            direct = weight_hierarchy(code, direct=True, threads=options["threads"])
            if direct.d != geometric.d:
                raise CommandError(
                    f"direct hierarchy {list(direct.d)} differs from geometric {list(geometric.d)}",
                    returncode=MISMATCH,
                )
            self.emit("direct: agrees")
