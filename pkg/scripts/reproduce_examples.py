"""Print the worked gl_2 examples: determinants, factors, M-matrices,
Cayley-Hamilton and Yangian checks, each with its verdict."""

import argparse

from qmatkit import catalog
from qmatkit.ncalg import equal_mod, parse_nc, present
from qmatkit.qdet import (cayley_hamilton, char_poly_expand, context, elementary_symmetric, inverse_expression,
                          newton_coefficients, quantum_det)
from qmatkit.scalars import emit
from qmatkit.symmetrizers import build_tower
from qmatkit.yangians import bethe_commutativity, current_elementary, specialized_ratio_check, yangian_relations

NAMES = ["a", "b", "c", "d"]
P, Ri, Rh = catalog.flip(), catalog.involutive_gl2(), catalog.hecke_gl2()
PAIRS = [("L(Ri,P)", Ri, P), ("L(Rh,P)", Rh, P), ("L(Ri,Ri)", Ri, Ri), ("L(Rh,Rh)", Rh, Rh)]
FORMS = {
    "L(Ri,P)": ["a*d-q^-1*b*c", "d*a-q*c*b"],
    "L(Rh,P)": ["a*d-q*b*c", "d*a-q^-1*c*b"],
    "L(Ri,Ri)": ["a*d-b*c"],
    "L(Rh,Rh)": ["a*d-q^2*c*b", "q^2*(a*d-b*c)-q*(q-q^-1)*a*a"],
}


def show_det(label, R, F):
    ctx = context(R, F)
    rep = quantum_det(ctx, FORMS[label])
    print(f"== {label}")
    print(f"  det           = {rep.canonical.to_str(NAMES)}")
    for f, ok in rep.reduced_forms:
        print(f"  = {f.to_str(NAMES):<32} {'proved' if ok else 'NOT derivable'}")
    print(f"  central       = {rep.central}" + (f" (witness {rep.central_witness})" if not rep.central else ""))
    print(f"  M             = {[[emit(x) for x in r] for r in rep.m_matrix.to_dense()]}")
    print(f"  (v.u)_F       = {emit(rep.factor_vFu)}; e_m = factor*det: {rep.e_m_factor_ok}")
    print(f"  e_1           = {elementary_symmetric(ctx, 1).to_str(NAMES)}")
    nc = newton_coefficients(ctx)
    if nc:
        print(f"  p_2 = x e_1 p_1 + y e_2 with x = {emit(nc['x'])}, y = {emit(nc['y'])}")
    print(f"  general CH    = {cayley_hamilton(ctx, 'general').ok}")
    if F == R:
        cp = char_poly_expand(ctx)
        print(f"  RE CH         = {cayley_hamilton(ctx, 'RE').ok}")
        print(f"  char poly     = {cp.ok}, alphas {[emit(a) for a in cp.alphas]}")
        inv = inverse_expression(ctx)
        print(f"  L^-1          = {inv.describe(NAMES)} (verified {inv.verified})")


def show_hqa():
    print("== half-quantum algebras")
    for label, R, F, system, forms in [("H(Ri,P)", Ri, P, "HQA", FORMS["L(Ri,P)"]),
                                       ("H(Rh,P)", Rh, P, "HQA", FORMS["L(Rh,P)"]),
                                       ("H(Ri,Ri)", Ri, Ri, "HQA2", ["a*d-c*b", "d*a-b*c"]),
                                       ("H(Rh,Rh)", Rh, Rh, "HQA2", FORMS["L(Rh,Rh)"])]:
        pres = present(R, F, system)
        rep = quantum_det(context(R, F, pres), forms)
        verdicts = ", ".join(f"{f.to_str(NAMES)}: {ok}" for f, ok in rep.reduced_forms)
        print(f"  {label} [{system}] central(deg cap)={rep.central}; {verdicts}")


def show_yangians(K):
    print("== Yangians")
    for label, R, F in [("rational R=F=P", P, P), ("trigonometric RE", Rh, Rh)]:
        Y = yangian_relations(R, F, K=2 * K)
        ctx = context(R, F)
        es = [current_elementary(Y, ctx.tower, ctx.C_F, k, K) for k in (1, 2)]
        ok = all(bethe_commutativity(Y, a, b, "box") for a in es for b in es)
        S = build_tower(R, "symmetric", 2).level(2)
        ratio = specialized_ratio_check(Y, K, S, ctx.tower.level(2))
        print(f"  {label}: {len(Y.pres.relations)} relations, Bethe {ok}, ratio {ratio.orders}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--truncation", type=int, default=2)
    args = ap.parse_args()
    for label, R, F in PAIRS:
        show_det(label, R, F)
    show_hqa()
    show_yangians(args.truncation)
    pres = present(Rh, Rh)
    print("== swapped trace weights give a non-central e_1:",
          not equal_mod(parse_nc("q^-1*a+q^-3*d", NAMES), elementary_symmetric(context(Rh, Rh), 1), pres))


if __name__ == "__main__":
    main()
