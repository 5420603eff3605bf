"""Truncated generalized Yangians.

L(u) = sum_k L[k] u^{-k}.  The defining relation

    R(u,v) L1(u) L2(v) = L1(v) L2(u) R(u,v)

is multiplied by (u - v), so with R(u,v) = (uX + vY + Z)/(u - v) the
coefficient of u^{-i} v^{-j} (i, j >= -1) reads

    X L1[i+1] L2[j] + Y L1[i] L2[j+1] + Z L1[i] L2[j]
      - L1[j] L2[i+1] X - L1[j+1] L2[i] Y - L1[j] L2[i] Z = 0.

A presentation with mode cap K keeps exactly the coefficients whose modes
are all <= K, i.e. -1 <= i, j <= K - 1.  These are genuine relations of the
full algebra, so every membership proof over them is a proof in the
Yangian.  Series identities are checked up to a separate truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .braidings import baxterize, classify
from .ncalg import (AlgebraPresentation, NCPolynomial, PresentationError, as_nc, dedupe, f_copies, lift,
                    matrix_entries, reduce)
from .qdet import contract, full_trace
from .scalars import ONE, RationalFunction, as_scalar
from .symmetrizers import EvennessCertificate, ProjectorTower
from .tensorspace import TensorOperator, place


FLAVOR_FOR_KIND = {"involutive": "rational", "hecke": "trigonometric"}


@dataclass
class ModeAlphabet:
    N: int
    K: int
    re_type: bool = True

    @property
    def first_mode(self) -> int:
        return 1 if self.re_type else 0

    def index(self, k: int, i: int, j: int) -> int:
        return (k - self.first_mode) * self.N ** 2 + i * self.N + j

    def names(self) -> list[str]:
        base = ["a", "b", "c", "d"] if self.N == 2 else [f"l{i + 1}{j + 1}" for i in range(self.N)
                                                         for j in range(self.N)]
        return [f"{x}[{k}]" for k in range(self.first_mode, self.K + 1) for x in base]

    def weights(self) -> list[int]:
        return [k for k in range(self.first_mode, self.K + 1) for _ in range(self.N ** 2)]

    def mode_matrix(self, k: int) -> TensorOperator:
        N = self.N
        if k == 0 and self.re_type:
            return lift(TensorOperator.identity(N, 1))
        if k < 0 or k > self.K:
            raise ValueError(f"mode {k} outside 0..{self.K}")
        return TensorOperator(N, 1, {i: {j: NCPolynomial.gen(self.index(k, i, j)) for j in range(N)}
                                     for i in range(N)})


@dataclass
class TruncatedSeries:
    """coeffs[n] is the coefficient of u^{-n}, n = 0..order."""

    coeffs: list
    flavor: str = "rational"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                t = _mul(self.coeffs[i], other.coeffs[k - i])
                acc = t if acc is None else acc + t
            out.append(acc)
        return TruncatedSeries(out, self.flavor)

    def map(self, f) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.flavor)

    def shifted(self, c: int, q: RationalFunction = ONE) -> "TruncatedSeries":
        """L(u - c) (rational) or L(q^{-2c} u) (trigonometric)."""
        if c == 0:
            return self
        K = self.order
        if self.flavor == "trigonometric":
            return TruncatedSeries([self.coeffs[n].scale(q ** (2 * c * n)) if isinstance(self.coeffs[n], TensorOperator)
                                    else self.coeffs[n] * q ** (2 * c * n) for n in range(K + 1)], self.flavor)
        # (u - c)^{-k} = sum_j C(k+j-1, j) c^j u^{-k-j}
        out = [self.coeffs[0]] + [None] * K
        for k in range(1, K + 1):
            for j in range(K - k + 1):
                coef = as_scalar(comb(k + j - 1, j) * c ** j)
                t = _scale(self.coeffs[k], coef)
                out[k + j] = t if out[k + j] is None else out[k + j] + t
        return TruncatedSeries(out, self.flavor)


def _mul(x, y):
    if isinstance(x, TensorOperator):
        return x @ y
    return as_nc(x) * as_nc(y)


def _scale(x, c):
    if isinstance(x, TensorOperator):
        return x.map(lambda e: as_nc(e) * c)
    return as_nc(x) * c


def series_product(series: list[TruncatedSeries]) -> TruncatedSeries:
    out = series[0]
    for s in series[1:]:
        out = out * s
    return out


# ---------------------------------------------------------------------------

@dataclass
class Yangian:
    R: TensorOperator
    F: TensorOperator
    flavor: str
    alphabet: ModeAlphabet
    pres: AlgebraPresentation
    q: RationalFunction
    _copies: dict = field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return self.R.dim

    @property
    def K(self) -> int:
        return self.alphabet.K

    def L(self, order: int) -> TruncatedSeries:
        return TruncatedSeries([self.alphabet.mode_matrix(k) for k in range(order + 1)], self.flavor)

    def copies(self, p: int, order: int) -> list[TruncatedSeries]:
        """F-copies L_ov1(u), ..., L_ovp(u) as series."""
        key = (p, order)
        if key not in self._copies:
            F_inv = self.F.inverse()
            per_mode = [f_copies(self.alphabet.mode_matrix(k), self.F, p, F_inv) for k in range(order + 1)]
            self._copies[key] = [TruncatedSeries([per_mode[k][i] for k in range(order + 1)], self.flavor)
                                 for i in range(p)]
        return self._copies[key]

    def reduce(self, x: NCPolynomial, **caps):
        return reduce(x, self.pres, **caps)


def yangian_relations(R: TensorOperator, F: TensorOperator, flavor: str | None = None, K: int = 1,
                      re_type: bool | None = None, degree_cap: int = 8) -> Yangian:
    from .braidings import check_compatible

    profile = classify(R, with_skew=False)
    if not profile.is_symmetry:
        raise PresentationError("R must be an involutive or Hecke symmetry")
    expected = FLAVOR_FOR_KIND[profile.kind]
    flavor = flavor or expected
    if flavor != expected:
        raise PresentationError(f"{flavor} flavor does not match a {profile.kind} symmetry")
    if K < 0:
        raise ValueError("mode cap must be >= 0")
    if not check_compatible(R, F):
        raise PresentationError("(R, F) is not a compatible pair")
    if re_type is None:
        re_type = F == R
    cb = baxterize(R, flavor, profile)
    alpha = ModeAlphabet(R.dim, K, re_type)
    X, Y, Z = lift(cb.X), lift(cb.Y), lift(cb.Z)
    F_inv = F.inverse()
    pairs = {k: f_copies(alpha.mode_matrix(k), F, 2, F_inv) for k in range(K + 1)}

    def L1(k):
        return pairs[k][0]

    def L2(k):
        return pairs[k][1]

    rels = []
    for i in range(-1, K):
        for j in range(-1, K):
            M = None
            terms = [(X, i + 1, j, True), (Y, i, j + 1, True), (Z, i, j, True),
                     (X, j, i + 1, False), (Y, j + 1, i, False), (Z, j, i, False)]
            for C, r, s, left in terms:
                if r < 0 or s < 0 or C.is_zero():
                    continue
                if left:
                    t = C @ L1(r) @ L2(s)
                else:
                    t = -(L1(r) @ L2(s) @ C)
                M = t if M is None else M + t
            if M is not None:
                rels.extend(matrix_entries(M))
    rels = dedupe(rels)
    pres = AlgebraPresentation(alpha.names(), rels, "yangian",
                               {"flavor": flavor, "N": R.dim, "K": K, "re_type": re_type,
                                "F_is_R": F == R, "kind": profile.kind},
                               weights=alpha.weights(), degree_cap=degree_cap,
                               max_length=4, weight_slack=1)
    return Yangian(R, F, flavor, alpha, pres, profile.q)


def yangian_det(Y: Yangian, cert: EvennessCertificate, order: int) -> TruncatedSeries:
    """<v| L_ov1(u) L_ov2(u-1) ... |u>, or with q^{-2} multiplicative shifts."""
    m = cert.m
    cs = Y.copies(m, order)
    prod = series_product([cs[i].shifted(i, Y.q) for i in range(m)])
    return prod.map(lambda X: contract(cert, X))


def current_elementary(Y: Yangian, tower: ProjectorTower, C_F: TensorOperator, k: int,
                       order: int) -> TruncatedSeries:
    if k == 0:
        return TruncatedSeries([NCPolynomial.scalar(1)] + [NCPolynomial()] * order, Y.flavor)
    if C_F is None:
        raise PresentationError("F is not skew-invertible: no F-trace")
    cs = Y.copies(k, order)
    prod = series_product([cs[i].shifted(i, Y.q) for i in range(k)])
    A = lift(tower.level(k))
    return prod.map(lambda X: full_trace(A @ X, C_F))


def current_power_sum(Y: Yangian, C_F: TensorOperator, k: int, order: int,
                      simplified: bool = False, C_R: TensorOperator | None = None) -> TruncatedSeries:
    """Tr_F L_ov1(u-k+1) ... L_ovk(u) R_{k-1,k} ... R_12.

    simplified=True gives the single-trace form Tr_R L(u-k+1)...L(u),
    valid when F = R.
    """
    if k < 1:
        raise ValueError("power sums start at k=1")
    if simplified:
        if Y.F != Y.R:
            raise PresentationError("the single-trace form needs F = R")
        C = C_R if C_R is not None else C_F
        L = Y.L(order)
        prod = series_product([L.shifted(k - 1 - i, Y.q) for i in range(k)])
        return prod.map(lambda X: full_trace(X, C))
    cs = Y.copies(k, order)
    prod = series_product([cs[i].shifted(k - 1 - i, Y.q) for i in range(k)])
    tail = None
    for j in range(k - 1, 0, -1):
        Rj = lift(place(Y.R, j, k))
        tail = Rj if tail is None else tail @ Rj
    if tail is not None:
        prod = prod.map(lambda X: X @ tail)
    return prod.map(lambda X: full_trace(X, C_F))


def series_equal(a: TruncatedSeries, b: TruncatedSeries, Y: Yangian) -> list[bool]:
    """Order-by-order equality modulo the Yangian relations."""
    return [Y.reduce(as_nc(x) - as_nc(y)).zero for x, y in zip(a.coeffs, b.coeffs)]


@dataclass
class BetheVerdict:
    ok: bool
    checked: list  # (r, s)
    witness: tuple | None = None  # (r, s, residual)
    pairs: str = "box"

    def __bool__(self):
        return self.ok


def coefficient_pairs(order: int, pairs: str) -> list[tuple[int, int]]:
    if pairs == "box":
        return [(r, s) for r in range(order + 1) for s in range(order + 1)]
    if pairs == "triangle":
        return [(r, s) for r in range(order + 1) for s in range(order + 1) if r + s <= order]
    raise ValueError(f"unknown pair set {pairs!r}")


def bethe_commutativity(Y: Yangian, a: TruncatedSeries, b: TruncatedSeries, pairs: str = "triangle",
                        order: int | None = None) -> BetheVerdict:
    """[a_r, b_s] = 0 modulo the mode relations for the chosen (r, s).

    pairs="triangle" checks r + s <= order, pairs="box" checks r, s <= order.
    Proving [a_r, b_s] generally needs modes up to r + s in the presentation.
    """
    order = min(a.order, b.order) if order is None else order
    checked = []
    for r, s in coefficient_pairs(order, pairs):
        x, y = as_nc(a.coeffs[r]), as_nc(b.coeffs[s])
        if x.degree() <= 0 or y.degree() <= 0:
            checked.append((r, s))
            continue
        res = Y.reduce(x * y - y * x)
        checked.append((r, s))
        if not res.zero:
            return BetheVerdict(False, checked, (r, s, res.residual), pairs)
    return BetheVerdict(True, checked, None, pairs)


@dataclass
class RatioVerdict:
    ok: bool
    orders: list[bool]
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def specialized_ratio_check(Y: Yangian, order: int, S: TensorOperator, A: TensorOperator,
                            pres: AlgebraPresentation | None = None) -> RatioVerdict:
    """A L_ov1(u) L_ov2(u-1) S = 0 (rational) or with L_ov2(q^{-2}u), order by order.

    ``pres`` overrides the presentation used for reduction (e.g. an empty one).
    """
    pres = pres or Y.pres
    c1, c2 = Y.copies(2, order)
    prod = c1 * c2.shifted(1, Y.q)
    An, Sn = lift(A), lift(S)
    verdicts = []
    witness = None
    for n, X in enumerate(prod.coeffs):
        Z = An @ X @ Sn
        ok = True
        for i, j, x in Z.items():
            r = reduce(as_nc(x), pres)
            if not r.zero:
                ok = False
                if witness is None:
                    witness = (n, (i, j), r.residual)
                break
        verdicts.append(ok)
    return RatioVerdict(all(verdicts), verdicts, witness)
