from django.core.management.base import CommandError

from Core.paper_tables import load_dataset, verify_paper
from Core.records import record_verification, search_proved_keys

from ._common import MISMATCH, ArcCommand


class Command(ArcCommand):
    help = "Rebuild every stored table entry and check every stored matrix against its claims."

    def add_arguments(self, parser):
        parser.add_argument("--only", help="'q,K,r', 'q,K,r,w' or a matrix id.")
        parser.add_argument("--threads", type=int, default=None)
        parser.add_argument("--no-record", action="store_true", help="Do not read or write the database.")

    def handle(self, *args, **options):
        proved = frozenset() if options["no_record"] else search_proved_keys()
        report = verify_paper(load_dataset(), options["only"], options["threads"], proved)
        self.emit(report.text())
        if not options["no_record"]:
            record_verification(report, options["only"] or "")
        if not report.ok:
            raise CommandError(
                "unexplained mismatches: " + ", ".join(report.mismatches()), returncode=MISMATCH
            )
