from Core.paper_tables import emit_table

from ._common import ArcCommand


class Command(ArcCommand):
    help = "Print one stored table of m_q^(r)(K,w) as TSV."

    def add_arguments(self, parser):
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--K", type=int, required=True)
        parser.add_argument("--r", type=int, required=True)
        parser.add_argument("--computed", action="store_true", help="Append the recomputed best bound.")

    def handle(self, *args, **options):
        self.emit(emit_table(options["q"], options["K"], options["r"], computed=options["computed"]))
