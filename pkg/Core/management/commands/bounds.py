from Core.bounds import (
    BoundQuery,
    OptimalLengthOracle,
    best_upper_bound,
    coding_upper_bound_m,
    counting_bound_m,
    griesmer_upper_bound_m,
)

from ._common import ArcCommand, add_query_arguments


class Command(ArcCommand):
    help = "Upper bounds on the size of an (n,w)-arc with respect to r-subspaces of PG(K,q)."

    def add_arguments(self, parser):
        add_query_arguments(parser)
        parser.add_argument("--oracle", help="Optimal code table (default: the dataset's oracle.txt).")
        parser.add_argument(
            "--as-printed",
            action="store_true",
            help="Use the capped-dimension coding chain for the final minimum.",
        )

    def handle(self, *args, **options):
        query = BoundQuery(options["q"], options["K"], options["r"], options["w"])
        oracle = OptimalLengthOracle.from_file(options["oracle"])

        lines = [str(query)]
        if query.r < query.K:
            g = griesmer_upper_bound_m(query)
            lines.append(f"griesmer: {g.value} ({g.explain()})")
        else:
            lines.append("griesmer: trivial (r = K)")
        lines.append(f"counting: {counting_bound_m(query)}")
        lines.append(f"coding: {coding_upper_bound_m(query, oracle).describe()}")
        lines.append(f"coding as printed: {coding_upper_bound_m(query, oracle, as_printed=True).describe()}")
        best = best_upper_bound(query, oracle, as_printed=options["as_printed"])
        lines.append(f"best: {best.value} ({best.provenance})")
        self.emit("\n".join(lines))
