from Core.point_multisets import Multiset, arc_profile, induced_projection

from ._common import ArcCommand, parse_rows


class Command(ArcCommand):
    help = "Project an arc from a centre subspace onto a complementary screen."

    def add_arguments(self, parser):
        parser.add_argument("--arc", required=True, help="Arc file: 'q K n' header, then 'coords mult' lines.")
        parser.add_argument("--center", required=True, help="Rows spanning the centre, e.g. '1 0 0 0'.")
        parser.add_argument("--screen", required=True, help="Rows spanning the screen, e.g. '0 1 0 0;0 0 1 0;0 0 0 1'.")
        parser.add_argument("--out", help="Write the projected arc here instead of stdout.")

    def handle(self, *args, **options):
        ms = Multiset.read_arc(options["arc"])
        delta = ms.space.span(parse_rows(options["center"]))
        pi = ms.space.span(parse_rows(options["screen"]))
        image = induced_projection(ms, delta, pi)
        if options["out"]:
            image.write_arc(options["out"])
        else:
            self.emit(image.to_arc_text())
        lost = ms.subspace_multiplicity(delta)
        profile = arc_profile(image)
        self.emit(f"centre {delta} carries {lost}; image has n={image.n} in {image.space}")
        self.emit("w_r: " + " ".join(str(x) for x in profile.w))
