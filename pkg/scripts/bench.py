"""Wall-clock timings of the main computations at desk scale."""

import argparse
import time

from qmatkit import catalog
from qmatkit.braidings import baxterize
from qmatkit.ncalg import ideal_slice, present
from qmatkit.qdet import cayley_hamilton, context, group_like_check, quantum_det
from qmatkit.symmetrizers import build_tower
from qmatkit.yangians import bethe_commutativity, current_elementary, yangian_relations


def timed(label, fn):
    t = time.perf_counter()
    out = fn()
    print(f"{label:<44} {time.perf_counter() - t:8.3f} s")
    return out


def bethe(R, F, K):
    Y = yangian_relations(R, F, K=2 * K)
    ctx = context(R, F)
    es = [current_elementary(Y, ctx.tower, ctx.C_F, k, K) for k in (1, 2)]
    return all(bethe_commutativity(Y, a, b, "box") for a in es for b in es)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--truncation", type=int, default=2)
    args = ap.parse_args()
    P, Rh = catalog.flip(), catalog.hecke_gl2()
    timed("skew tower k<=4 (hecke)", lambda: build_tower(Rh, "skew", 4))
    timed("parametric braid, trigonometric", lambda: baxterize(Rh, "trigonometric").check_braid_symbolic())
    pres = timed("RTT presentation", lambda: present(Rh, P))
    for d in (2, 3, 4):
        timed(f"ideal slice degree {d}", lambda d=d: ideal_slice(pres, d).rank)
    ctx = timed("RE context", lambda: context(Rh, Rh))
    timed("RE determinant report", lambda: quantum_det(ctx))
    timed("RE Cayley-Hamilton", lambda: cayley_hamilton(ctx, "RE"))
    timed("group-like (RTT hecke)", lambda: group_like_check(pres, quantum_det(context(Rh, P)).canonical))
    timed(f"Bethe, rational R=F=P, K={args.truncation}", lambda: bethe(P, P, args.truncation))
    timed("Bethe, trigonometric RE, K=1", lambda: bethe(Rh, Rh, 1))


if __name__ == "__main__":
    main()
