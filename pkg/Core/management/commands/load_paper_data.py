from Core.paper_tables import load_dataset
from Core.records import sync_dataset

from ._common import ArcCommand


class Command(ArcCommand):
    help = "Copy the text dataset (PGARC_DATA) into the database."

    def add_arguments(self, parser):
        parser.add_argument("--data", help="Dataset directory (default: PGARC_DATA).")

    def handle(self, *args, **options):
        counts = sync_dataset(load_dataset(options["data"]))
        self.emit(" ".join(f"{name}={count}" for name, count in counts.items()))
