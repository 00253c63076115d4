"""Helpers shared by the arc commands: exit codes, verbosity and argument parsing."""

import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from Core.exceptions import ArcError, BudgetExceeded, DataFormatError, SubspaceCapExceeded

USAGE = 1
MISMATCH = 2
BUDGET = 3


class ArcCommand(BaseCommand):
    """Base for the domain commands; library errors become exit codes."""

    requires_migrations_checks = False
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        # argparse sale con 2, aqui 2 significa discrepancia
        def error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=USAGE)

        parser.error = error
        return parser

    def execute(self, *args, **options):
        core = logging.getLogger("Core")
        level = core.level
        if options.get("verbosity", 1) >= 2:
            core.setLevel(logging.DEBUG)
        try:
            return super().execute(*args, **options)
        except (BudgetExceeded, SubspaceCapExceeded) as exc:
            raise CommandError(str(exc), returncode=BUDGET) from exc
        except ArcError as exc:
            raise CommandError(str(exc), returncode=USAGE) from exc
        finally:
            core.setLevel(level)

    def emit(self, text: str) -> None:
        self.stdout.write(text, ending="" if text.endswith("\n") else "\n")


def add_query_arguments(parser, lower_r: int = 1) -> None:
    parser.add_argument("--q", type=int, required=True, help="Field order (prime).")
    parser.add_argument("--K", type=int, required=True, help="Projective dimension of the space.")
    parser.add_argument("--r", type=int, required=True, help=f"Subspace dimension ({lower_r}..K).")
    parser.add_argument("--w", type=int, required=True, help="Largest multiplicity allowed on an r-subspace.")


def parse_rows(text: str) -> list[list[int]]:
    """``"1 0 0;0 1 0"`` -> rows of integers."""
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.replace(",", " ").strip()
        if not chunk:
            continue
        try:
            rows.append([int(x) for x in chunk.split()])
        except ValueError as exc:
            raise DataFormatError(f"not a row of integers: {chunk!r}") from exc
    if not rows:
        raise DataFormatError(f"no rows in {text!r}")
    return rows
