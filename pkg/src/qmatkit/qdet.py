"""Quantum determinants, elementary symmetric polynomials, power sums and
Cayley-Hamilton identities in quantum matrix algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .braidings import classify
from .linalg import SingularSystem, solve_unique
from .ncalg import (AlgebraPresentation, NCPolynomial, PresentationError, as_nc, coproduct, equal_mod,
                    f_copies, generating_matrix, is_central, lift, matrix_power, product_ops,
                    reduce, tensor, tensor_square)
from .scalars import ONE, ZERO, RationalFunction, emit, q_factorial
from .symmetrizers import EvennessCertificate, ProjectorTower, build_tower, even_certificate, pairing_vFu
from .tensorspace import TensorOperator, digits, partial_trace, place, scalar_of


@dataclass
class QMAContext:
    """Everything derived once from a compatible pair (R, F)."""

    R: TensorOperator
    F: TensorOperator
    pres: AlgebraPresentation
    cert: EvennessCertificate
    tower: ProjectorTower
    q: RationalFunction
    C_R: TensorOperator
    C_F: TensorOperator | None
    _copies: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return self.cert.m

    @property
    def N(self) -> int:
        return self.R.dim

    def L(self) -> TensorOperator:
        return generating_matrix(self.N)

    def copies(self, p: int) -> list[TensorOperator]:
        if p not in self._copies:
            self._copies[p] = f_copies(self.L(), self.F, p)
        return self._copies[p]


def context(R: TensorOperator, F: TensorOperator, pres: AlgebraPresentation | None = None) -> QMAContext:
    from .ncalg import present

    profile = classify(R, with_skew=True)
    pres = pres or present(R, F, "QMA", profile)
    cert = even_certificate(R, profile=profile)
    tower = build_tower(R, "skew", cert.m, profile)
    C_R = profile.c_matrix
    if C_R is None:
        raise PresentationError("R is not skew-invertible")
    if F == R:
        C_F = C_R
    else:
        fp = classify(F, with_skew=True)
        C_F = fp.c_matrix
    return QMAContext(R, F, pres, cert, tower, profile.q, C_R, C_F)


# ---------------------------------------------------------------------------
# contractions

def contract(cert: EvennessCertificate, X: TensorOperator) -> NCPolynomial:
    """<v| X |u> = sum_{I,J} v^I X[I][J] u_J."""
    out = NCPolynomial()
    for I, row in X.rows.items():
        vi = cert.v[I]
        if not vi:
            continue
        for J, x in row.items():
            uj = cert.u[J]
            if uj:
                out = out + as_nc(x) * (vi * uj)
    return out


def full_trace(X: TensorOperator, weight: TensorOperator) -> NCPolynomial:
    t = partial_trace(X, range(1, X.sites + 1), weight)
    return as_nc(scalar_of(t)) if t.rows else NCPolynomial()


def m_matrix(cert: EvennessCertificate) -> TensorOperator:
    """M_i^j = u_{i i2..im} v^{i2..im j}."""
    N, m = cert.dim, cert.m
    rows: dict = {}
    for I, ui in enumerate(cert.u):
        if not ui:
            continue
        di = digits(I, N, m)
        i, tail = di[0], di[1:]
        for j in range(N):
            J = 0
            for x in tail + (j,):
                J = J * N + x
            vj = cert.v[J]
            if vj:
                r = rows.setdefault(i, {})
                r[j] = r.get(j, ZERO) + ui * vj
    return TensorOperator(N, 1, {i: {j: x for j, x in r.items() if x} for i, r in rows.items()})


# ---------------------------------------------------------------------------
# determinant

@dataclass
class DeterminantReport:
    canonical: NCPolynomial
    reduced_forms: list[tuple[NCPolynomial, bool]]
    central: bool
    central_witness: str | None
    m_matrix: TensorOperator
    m_scalar: bool
    factor_vFu: RationalFunction | None
    e_m_factor_ok: bool | None = None

    def to_json(self, names) -> dict:
        return {
            "canonical": self.canonical.to_str(names),
            "reduced_forms": [{"form": f.to_str(names), "proved": ok} for f, ok in self.reduced_forms],
            "central": self.central,
            "central_witness": self.central_witness,
            "m_matrix": [[emit(x) for x in row] for row in self.m_matrix.to_dense()],
            "m_matrix_scalar": self.m_scalar,
            "factor_vFu": None if self.factor_vFu is None else emit(self.factor_vFu),
            "e_m_equals_factor_times_det": self.e_m_factor_ok,
        }


def canonical_det(ctx: QMAContext, cert: EvennessCertificate | None = None) -> NCPolynomial:
    cert = cert or ctx.cert
    return contract(cert, product_ops(ctx.copies(cert.m)))


def quantum_det(ctx: QMAContext, forms=(), cert: EvennessCertificate | None = None) -> DeterminantReport:
    cert = cert or ctx.cert
    det = canonical_det(ctx, cert)
    pres = ctx.pres
    proved = [(f, equal_mod(det, f, pres)) for f in (as_nc(f) if not isinstance(f, str) else pres.element(f)
                                                     for f in forms)]
    cv = is_central(det, pres)
    M = m_matrix(cert)
    factor = pairing_vFu(cert.v, cert.u, ctx.C_F) if ctx.C_F is not None else None
    em_ok = None
    if factor is not None:
        em_ok = equal_mod(elementary_symmetric(ctx, cert.m), det * factor, pres)
    return DeterminantReport(det, proved, cv.central, cv.witness, M, M.is_scalar() is not None, factor, em_ok)


def elementary_symmetric(ctx: QMAContext, k: int, trace: str = "F") -> NCPolynomial:
    """e_k = Tr_{F(1..k)} A^(k) L_ov1 ... L_ovk (trace="R" uses C_R)."""
    if k == 0:
        return NCPolynomial.scalar(1)
    if k > ctx.m:
        raise ValueError(f"k={k} exceeds m={ctx.m}")
    C = ctx.C_F if trace == "F" else ctx.C_R
    if C is None:
        raise PresentationError("F is not skew-invertible: no F-trace")
    X = lift(ctx.tower.level(k)) @ product_ops(ctx.copies(k))
    return full_trace(X, C)


def power_sum(ctx: QMAContext, k: int) -> NCPolynomial:
    """p_k = Tr_{F(1..k)} L_ov1 ... L_ovk R_{k-1,k} ... R_12."""
    if k < 1:
        raise ValueError("power sums start at k=1")
    if ctx.C_F is None:
        raise PresentationError("F is not skew-invertible: no F-trace")
    X = product_ops(ctx.copies(k))
    for j in range(k - 1, 0, -1):
        X = X @ lift(place(ctx.R, j, k))
    return full_trace(X, ctx.C_F)


def newton_coefficients(ctx: QMAContext) -> dict | None:
    """Scalars x, y with p_2 = x e_1 p_1 + y e_2 modulo the relations.

    Returns None when no such relation exists.
    """
    pres = ctx.pres
    p2, p1 = power_sum(ctx, 2), power_sum(ctx, 1)
    e1, e2 = elementary_symmetric(ctx, 1), elementary_symmetric(ctx, 2)
    r = reduce(p2, pres).residual
    basis = {"x": reduce(e1 * p1, pres).residual, "y": reduce(e2, pres).residual}
    words = set(r.terms)
    for b in basis.values():
        words |= set(b.terms)
    eqs = [({n: b.coefficient(w) for n, b in basis.items() if b.coefficient(w)}, r.coefficient(w)) for w in words]
    try:
        return solve_unique(eqs, ["x", "y"])
    except (SingularSystem, ValueError):
        return None


def group_like_check(pres: AlgebraPresentation, det: NCPolynomial) -> bool:
    """Delta(det) - det (x) det in the tensor square."""
    sq = tensor_square(pres)
    N = pres.meta["N"]
    diff = coproduct(det, N) - tensor(det, det, pres.ngens)
    return reduce(diff, sq).zero


# ---------------------------------------------------------------------------
# characteristic polynomial and Cayley-Hamilton

def alpha(k: int, m: int, q: RationalFunction) -> RationalFunction:
    return q ** (m * k) * comb(m, k) * q_factorial(k, q) * q_factorial(m - k, q) / q_factorial(m, q)


def check_trace_reduction(ctx: QMAContext, k: int) -> bool:
    """Tr_{R(k+1..m)} A^(m) = q^{-m(m-k)} k_q!(m-k)_q!/m_q! A^(k)."""
    m, q = ctx.m, ctx.q
    Am = ctx.tower.level(m)
    coef = q ** (-m * (m - k)) * q_factorial(k, q) * q_factorial(m - k, q) / q_factorial(m, q)
    if k == m:
        return coef == ONE
    lhs = partial_trace(Am, range(k + 1, m + 1), ctx.C_R)
    if k == 0:
        return scalar_of(lhs) == coef
    return lhs == coef * ctx.tower.level(k)


@dataclass
class CharPolyReport:
    coefficients: list[NCPolynomial]  # coefficient of (-t)^(m-k), k = 0..m
    alphas: list[RationalFunction]
    matches: list[bool]
    trace_reduction: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.matches) and all(self.trace_reduction)


def char_poly_expand(ctx: QMAContext) -> CharPolyReport:
    if ctx.F != ctx.R:
        raise PresentationError("the characteristic polynomial expansion needs F = R")
    m, cert = ctx.m, ctx.cert
    copies = ctx.copies(m)
    ident = lift(TensorOperator.identity(ctx.N, m))
    coeffs = []
    for k in range(m + 1):
        total = NCPolynomial()
        for S in combinations(range(m), k):
            X = product_ops([copies[i] for i in S]) if S else ident
            total = total + contract(cert, X)
        coeffs.append(total)
    alphas = [alpha(k, m, ctx.q) for k in range(m + 1)]
    matches = [equal_mod(c, elementary_symmetric(ctx, k) * a, ctx.pres)
               for k, (c, a) in enumerate(zip(coeffs, alphas))]
    tr = [check_trace_reduction(ctx, k) for k in range(m + 1)]
    return CharPolyReport(coeffs, alphas, matches, tr)


@dataclass
class CHReport:
    ok: bool
    residuals: dict  # (i, j) -> nonzero residual


def _ch_check(X: TensorOperator, pres) -> CHReport:
    bad = {}
    for i, j, x in X.items():
        r = reduce(as_nc(x), pres)
        if not r.zero:
            bad[(i, j)] = r.residual
    return CHReport(not bad, bad)


def ch_matrix_re(ctx: QMAContext) -> TensorOperator:
    """L^m - q e_1 L^{m-1} + ... + (-q)^m e_m I."""
    m, q, L = ctx.m, ctx.q, ctx.L()
    out = None
    for k in range(m + 1):
        term = matrix_power(L, m - k).map(lambda x, c=elementary_symmetric(ctx, k) * ((-q) ** k): c * as_nc(x))
        out = term if out is None else out + term
    return out


def l_bracket_2(ctx: QMAContext) -> TensorOperator:
    """L^[2] = Tr_{R(2)} L_1 L_ov2 R_12."""
    L1, L2 = ctx.copies(2)
    return partial_trace(L1 @ L2 @ lift(ctx.R), [2], ctx.C_R)


def ch_matrix_general(ctx: QMAContext, trace: str = "R") -> TensorOperator:
    """L^[2] - q L e_1 + q^2 e_2 I, for m = 2.

    The e_k here are R-traced; with F-traces the identity fails for F = P.
    """
    if ctx.m != 2:
        raise PresentationError("the general-QMA identity is implemented for m = 2")
    q, L = ctx.q, ctx.L()
    e1 = elementary_symmetric(ctx, 1, trace)
    e2 = elementary_symmetric(ctx, 2, trace)
    ident = lift(TensorOperator.identity(ctx.N, 1))
    return (l_bracket_2(ctx) - L.map(lambda x: as_nc(x) * e1 * q)
            + ident.map(lambda x: as_nc(x) * e2 * (q * q)))


def cayley_hamilton(ctx: QMAContext, kind: str = "RE") -> CHReport:
    if kind == "RE":
        if ctx.F != ctx.R:
            raise PresentationError("RE-type identity needs F = R")
        return _ch_check(ch_matrix_re(ctx), ctx.pres)
    if kind == "general":
        return _ch_check(ch_matrix_general(ctx), ctx.pres)
    raise ValueError(f"unknown Cayley-Hamilton kind {kind!r}")


@dataclass
class InverseExpression:
    """L^{-1} = e_m^{-1} * sum_j coeffs[j] * L^j, coeffs[j] an algebra element."""

    coeffs: list[NCPolynomial]
    verified: bool
    residuals: dict

    def describe(self, names) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c.to_str(names)}) e_m^-1 L^{j}")
        return " + ".join(parts)


def inverse_expression(ctx: QMAContext) -> InverseExpression:
    """Invert L using the RE Cayley-Hamilton identity and a central e_m^{-1}.

    From sum_k (-q)^k e_k L^{m-k} = 0,
    L^{-1} = -(-q)^{-m} e_m^{-1} sum_{k<m} (-q)^k e_k L^{m-1-k}.
    The check L X - I = 0 is multiplied through by the central e_m.
    """
    if ctx.F != ctx.R:
        raise PresentationError("inversion needs the RE algebra (central e_m)")
    m, q, pres = ctx.m, ctx.q, ctx.pres
    em = elementary_symmetric(ctx, m)
    if reduce(em, pres).zero:
        raise PresentationError("e_m vanishes modulo the relations; cannot adjoin its inverse")
    if not is_central(em, pres):
        raise PresentationError("e_m is not central; refusing to adjoin a central inverse")
    lead = -((-q) ** (-m))
    coeffs = [NCPolynomial() for _ in range(m)]
    for k in range(m):
        coeffs[m - 1 - k] = elementary_symmetric(ctx, k) * (lead * (-q) ** k)
    L = ctx.L()
    X_em = None
    for j, c in enumerate(coeffs):
        term = matrix_power(L, j).map(lambda x, c=c: c * as_nc(x))
        X_em = term if X_em is None else X_em + term
    ident = lift(TensorOperator.identity(ctx.N, 1))
    check = L @ X_em - ident.map(lambda x: as_nc(x) * em)
    rep = _ch_check(check, pres)
    return InverseExpression(coeffs, rep.ok, rep.residuals)


def symmetric_commute(ctx: QMAContext) -> bool:
    es = [elementary_symmetric(ctx, k) for k in range(1, ctx.m + 1)]
    return all(reduce(a * b - b * a, ctx.pres).zero for i, a in enumerate(es) for b in es[i + 1:])
