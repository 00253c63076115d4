from Core.point_multisets import PLACEMENTS, arc_profile, parse_type, solomon_stiffler, solomon_stiffler_w
from Core.projective_geometry import ProjectiveSpace

from ._common import ArcCommand


class Command(ArcCommand):
    help = "Build a Solomon-Stiffler multiset from a type string such as '2[5]-[4]-[3]'."

    def add_arguments(self, parser):
        parser.add_argument("--type", required=True, dest="sstype")
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--placement", choices=PLACEMENTS, default="auto")
        parser.add_argument("--r", type=int, default=None, help="Target r, needed for +[0] points.")
        parser.add_argument("--out", help="Write the arc file here instead of stdout.")
        parser.add_argument("--threads", type=int, default=None)

    def handle(self, *args, **options):
        t = parse_type(options["sstype"], options["placement"])
        space = ProjectiveSpace(t.K, options["q"])
        ms = solomon_stiffler(space, t, options["r"])
        if options["out"]:
            ms.write_arc(options["out"])
        else:
            self.emit(ms.to_arc_text())
        profile = arc_profile(ms, options["threads"])
        self.emit(f"type: {t} in {space}")
        self.emit(f"n: {profile.n}")
        self.emit("w_r: " + " ".join(str(x) for x in profile.w))
        self.emit("u_r: " + " ".join(str(x) for x in profile.u))
        if not t.plus_points:
            closed = [solomon_stiffler_w(t, r, space.q) for r in range(space.K + 1)]
            self.emit("closed form w_r: " + " ".join(str(x) for x in closed))
