from Core.bounds import griesmer_code_dr, griesmer_code_w, griesmer_g, sigma_eps_decompose

from ._common import ArcCommand


class Command(ArcCommand):
    help = "sigma/eps decomposition of d and the weights of a Griesmer code [g_q(k,d),k,d]_q."

    def add_arguments(self, parser):
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--d", type=int, required=True)

    def handle(self, *args, **options):
        q, k, d = options["q"], options["k"], options["d"]
        se = sigma_eps_decompose(q, k, d)
        eps = " ".join(f"eps_{i}={e}" for i, e in se.nonzero().items()) or "all zero"
        d_r = [griesmer_code_dr(q, k, d, r) for r in range(1, k + 1)]
        w_j = [griesmer_code_w(q, k, d, 0, j) for j in range(k)]
        self.emit(
            "\n".join(
                [
                    f"sigma: {se.sigma}",
                    f"eps: {eps}",
                    f"g: {griesmer_g(q, k, d)}",
                    "d_r: " + " ".join(str(x) for x in d_r),
                    "w_j: " + " ".join(str(x) for x in w_j),
                ]
            )
        )
