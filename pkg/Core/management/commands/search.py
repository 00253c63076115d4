import logging
from pathlib import Path

from django.core.management.base import CommandError

from Core import conf
from Core.exact_search import SearchProblem, max_arc_size, prescribe_unit_frame
from Core.paper_tables import build_construction, load_dataset
from Core.projective_geometry import ProjectiveSpace
from Core.records import record_search

from ._common import BUDGET, USAGE, ArcCommand, add_query_arguments

logger = logging.getLogger("Core.search")


class Command(ArcCommand):
    help = "Exact branch-and-bound search for m_q^(r)(K,w)."

    def add_arguments(self, parser):
        add_query_arguments(parser, lower_r=0)
        parser.add_argument("--prescribe-frame", action="store_true", help="Fix the unit points with multiplicity >= 1.")
        parser.add_argument("--cap", type=int, default=None, help="Largest multiplicity of a single point.")
        parser.add_argument("--budget", type=int, default=None, help="Node budget.")
        parser.add_argument("--time-limit", type=float, default=None, help="Wall-clock budget in seconds.")
        parser.add_argument("--threads", type=int, default=None)
        parser.add_argument("--no-warm-start", action="store_true")
        parser.add_argument("--big", action="store_true", help="Allow spaces above PGARC_BIG_POINTS points.")
        parser.add_argument("--witness", help="Write the best arc here.")
        parser.add_argument("--log", help="Write the improvement log ('n nodes seconds') here.")
        parser.add_argument("--no-record", action="store_true", help="Do not store the run in the database.")

    def handle(self, *args, **options):
        space = ProjectiveSpace(options["K"], options["q"])
        if space.num_points > conf.big_point_limit() and not options["big"]:
            raise CommandError(
                f"{space} has {space.num_points} points, above {conf.big_point_limit()}; pass --big",
                returncode=USAGE,
            )
        r, w = options["r"], options["w"]
        dataset = load_dataset()
        warm = None
        entry = dataset.entry(space.q, space.K, r, w)
        if entry is not None and not options["no_warm_start"]:
            built = build_construction(entry, dataset)
            if built.status == "built":
                warm = built.multiset
                logger.info("warm start from %s: n=%d", entry.construction, warm.n)

        problem = SearchProblem(
            space,
            r,
            w,
            point_cap=options["cap"],
            node_budget=options["budget"],
            time_budget=options["time_limit"],
            threads=options["threads"] or conf.default_threads(),
            warm_start=warm,
            oracle=dataset.oracle,
        )
        if options["prescribe_frame"]:
            problem = prescribe_unit_frame(problem)
        result = max_arc_size(problem)

        if options["witness"]:
            result.witness.write_arc(options["witness"])
        if options["log"]:
            Path(options["log"]).write_text(result.log_text(), encoding="ascii")
        if not options["no_record"]:
            record_search(problem, result, frame=options["prescribe_frame"], user_cap=options["cap"])

        lines = [
            f"m_{space.q}^({r})({space.K},{w})",
            f"best: {result.best_n}",
            f"status: {result.status}",
        ]
        if result.optimal:
            lines.append(f"proved by: {result.proved_by}")
        lines.append(f"root bound: {result.root_bound} ({result.root_provenance})")
        lines.append(f"nodes: {result.nodes}")
        if result.relies_on_prescription:
            lines.append("prescription: unit frame" if options["prescribe_frame"] else "prescription: given")
        lines.append("witness:")
        lines.append(result.witness.to_arc_text().rstrip("\n"))
        self.emit("\n".join(lines))
        logger.info("search took %.3f s", result.seconds)

        if not result.optimal:
            raise CommandError(
                f"budget exhausted after {result.nodes} nodes, best found {result.best_n}",
                returncode=BUDGET,
            )
