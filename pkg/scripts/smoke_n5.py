"""Single-character n = 5 run: relations, Z spectrum, CM map and commutant size."""

import argparse
import time
from fractions import Fraction

from dahacm import daha
from dahacm.exact import format_rational, parse_rational
from dahacm.rng import RationalStream


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--tau", default="2")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    tau = parse_rational(args.tau)
    s = RationalStream(args.seed)
    chi = daha.Character(tuple(s.rationals(args.n, nonzero=True)), tuple(s.chart_values(args.n, tau)))

    start = time.perf_counter()
    rep = daha.build_rep(daha.DahaParams(args.n, tau), chi)
    print(f"built {rep.dim}-dimensional module in {time.perf_counter() - start:.2f}s")

    start = time.perf_counter()
    rel = daha.verify_relations(rep)
    print(f"relations: {len(rel.entries) - len(rel.failures())}/{len(rel.entries)} pass "
          f"({time.perf_counter() - start:.2f}s)")

    z = daha.z_element(rep, strict=False)
    print("Z spectrum on invariants:", [format_rational(x) for x in z.spectrum],
          "expected", [format_rational(x) for x in z.expected])
    print("Y1X1Y1^-1X1^-1 = Z:", z.reversed_commutator_matches,
          " X1Y1X1^-1Y1^-1 = Z:", z.commutator_matches)

    res = daha.cm_map(rep)
    for name, ok in list(res.certificate.items()) + list(res.swapped.items()):
        print(f"{name}: {ok}")
    print("regular:", daha.regularity_check(rep))
    return 0 if rel.all_passed and z.spectrum_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
