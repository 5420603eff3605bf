"""Braid relation, involutive/Hecke classification, compatibility,
skew-invertibility and the R-trace, and Baxterized current braidings."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .linalg import InconsistentSystem, SingularSystem, solve_unique
from .scalars import ONE, ZERO, PoleError, RationalFunction, as_scalar, check_generic, sqrt
from .tensorspace import TensorOperator, partial_trace, place, rank, specialize_op


class NotSkewInvertible(ValueError):
    pass


class NotABraiding(ValueError):
    pass


# ---------------------------------------------------------------------------
# braid relation

def braid_sides(op: TensorOperator):
    r12, r23 = place(op, 1, 3), place(op, 2, 3)
    return r12 @ r23 @ r12, r23 @ r12 @ r23


def braid_witness(op: TensorOperator):
    """First entry where the braid relation fails, or None."""
    if op.sites != 2:
        raise ValueError("braid relation needs a two-site operator")
    lhs, rhs = braid_sides(op)
    return lhs.first_difference(rhs)


def check_braid(op: TensorOperator) -> bool:
    return braid_witness(op) is None


def compatibility_witness(R: TensorOperator, F: TensorOperator):
    if R.dim != F.dim or R.sites != 2 or F.sites != 2:
        raise ValueError("compatibility needs two-site operators on the same space")
    r12, r23 = place(R, 1, 3), place(R, 2, 3)
    f12, f23 = place(F, 1, 3), place(F, 2, 3)
    d = (r12 @ f23 @ f12).first_difference(f23 @ f12 @ r23)
    if d is not None:
        return ("first", d)
    d = (r23 @ f12 @ f23).first_difference(f12 @ f23 @ r12)
    if d is not None:
        return ("second", d)
    return None


def check_compatible(R: TensorOperator, F: TensorOperator) -> bool:
    return compatibility_witness(R, F) is None


# ---------------------------------------------------------------------------
# classification

@dataclass
class SymmetryProfile:
    kind: str  # involutive | hecke | braiding-only | not-a-braiding
    hecke_parameter: Optional[RationalFunction] = None
    skew_invertible: bool = False
    psi: Optional[TensorOperator] = None
    c_matrix: Optional[TensorOperator] = None

    @property
    def is_symmetry(self) -> bool:
        return self.kind in ("involutive", "hecke")

    @property
    def q(self) -> RationalFunction:
        """Parameter entering the projector recursions (1 if involutive)."""
        if self.kind == "involutive":
            return ONE
        if self.kind == "hecke":
            return self.hecke_parameter
        raise NotABraiding(f"no Hecke parameter for kind {self.kind!r}")


def _quadratic_relation(R: TensorOperator):
    """(alpha, beta) with R^2 + alpha R + beta I = 0, or None."""
    R2 = R @ R
    n = R.size
    eqs = []
    for i in range(n):
        for j in range(n):
            a = R[i, j]
            b = ONE if i == j else ZERO
            c = R2[i, j]
            if a or b or c:
                eqs.append(({"alpha": a, "beta": b}, -c))
    try:
        sol = solve_unique(eqs, ["alpha", "beta"])
    except (InconsistentSystem, SingularSystem):
        return None
    return sol["alpha"], sol["beta"]


def hecke_parameter(R: TensorOperator):
    """Recover q from (R - q)(R + 1/q) = 0, or None if R is not Hecke.

    The two roots q and -1/q describe the same relation; the one whose
    skew projector (qI - R) has the smaller rank is returned, ties broken
    by a positive leading coefficient.
    """
    rel = _quadratic_relation(R)
    if rel is None:
        return None
    alpha, beta = rel
    if beta != -ONE:
        return None
    s = sqrt(alpha * alpha + 4)
    if s is None:
        return None
    roots = [(-alpha + s) / 2, (-alpha - s) / 2]
    roots = [x for x in roots if x and x != ONE and x != -ONE]
    if not roots:
        return None
    ident = TensorOperator.identity(R.dim, 2)

    def score(x):
        return (rank(x * ident - R), 0 if x.num[-1] > 0 else 1, str(x))

    return min(roots, key=score)


def classify(op: TensorOperator, with_skew: bool = True) -> SymmetryProfile:
    if op.sites != 2 or not check_braid(op):
        return SymmetryProfile("not-a-braiding")
    ident = TensorOperator.identity(op.dim, 2)
    if op @ op == ident:
        prof = SymmetryProfile("involutive", ONE)
    else:
        x = hecke_parameter(op)
        prof = SymmetryProfile("hecke", x) if x is not None else SymmetryProfile("braiding-only")
    if with_skew:
        try:
            psi = solve_skew_inverse(op)
        except NotSkewInvertible:
            pass
        else:
            prof.skew_invertible = True
            prof.psi = psi
            prof.c_matrix = partial_trace(psi, [2])
    return prof


def hecke_inverse(R: TensorOperator, q: RationalFunction) -> TensorOperator:
    """R^{-1} = R - (q - 1/q) I for a Hecke symmetry."""
    return R - (q - q.inverse()) * TensorOperator.identity(R.dim, 2)


def check_generic_parameter(q: RationalFunction, bound: int = 6) -> None:
    """Genericity guard for a numerically specialized Hecke parameter."""
    if q.is_constant():
        check_generic(q.constant_value(), bound)


# ---------------------------------------------------------------------------
# skew-invertibility and R-trace

def _skew_equations(R: TensorOperator):
    N = R.dim
    idx = lambda a, b: a * N + b
    eqs = []
    for i, k, m, n in product(range(N), repeat=4):
        rhs = ONE if (m == k and i == n) else ZERO
        # R_{ij}^{kl} Psi_{lm}^{jn}
        c1: dict = {}
        # Psi_{ij}^{kl} R_{lm}^{jn}
        c2: dict = {}
        for j, l in product(range(N), repeat=2):
            r = R[idx(i, j), idx(k, l)]
            if r:
                key = (idx(l, m), idx(j, n))
                c1[key] = c1.get(key, ZERO) + r
            r = R[idx(l, m), idx(j, n)]
            if r:
                key = (idx(i, j), idx(k, l))
                c2[key] = c2.get(key, ZERO) + r
        eqs.append((c1, rhs))
        eqs.append((c2, rhs))
    return eqs


def skew_defect(R: TensorOperator, psi: TensorOperator):
    """First violated contraction identity, or None."""
    for k, (coeffs, rhs) in enumerate(_skew_equations(R)):
        s = ZERO
        for (a, b), c in coeffs.items():
            s = s + c * psi[a, b]
        if s != rhs:
            return k
    return None


def solve_skew_inverse(R: TensorOperator) -> TensorOperator:
    """The unique Psi with Tr_(2) R_12 Psi_23 = P_13 = Tr_(2) Psi_12 R_23."""
    if R.sites != 2:
        raise ValueError("skew inverse needs a two-site operator")
    N = R.dim
    unknowns = [(a, b) for a in range(N * N) for b in range(N * N)]
    try:
        sol = solve_unique(_skew_equations(R), unknowns)
    except (InconsistentSystem, SingularSystem) as exc:
        raise NotSkewInvertible(str(exc)) from None
    rows: dict = {}
    for (a, b), v in sol.items():
        if v:
            rows.setdefault(a, {})[b] = v
    psi = TensorOperator(N, 2, rows)
    if skew_defect(R, psi) is not None:
        raise NotSkewInvertible("solution failed re-verification")
    return psi


def c_matrix(R: TensorOperator) -> TensorOperator:
    return partial_trace(solve_skew_inverse(R), [2])


def r_trace(X: TensorOperator, C: TensorOperator):
    """Tr(C X); X may carry noncommutative entries."""
    if X.dim != C.dim or X.sites != C.sites:
        raise ValueError("shape mismatch in r_trace")
    return (C @ X).trace()


def trace_identity_witness(R: TensorOperator, C: TensorOperator):
    N = R.dim
    cc = place(C, 1, 2) @ place(C, 2, 2)
    if R @ cc != cc @ R:
        return "R C1 C2 != C1 C2 R"
    Rinv = R.inverse()
    ident = TensorOperator.identity(N, 1)
    for a, b in product(range(N), repeat=2):
        E = TensorOperator(N, 1, {a: {b: ONE}})
        X1 = place(E, 1, 2)
        expect = r_trace(E, C) * ident
        for lhs, name in ((R @ X1 @ Rinv, "+"), (Rinv @ X1 @ R, "-")):
            if partial_trace(lhs, [2], weight=C) != expect:
                return f"Tr_R(2) R^{name}1 E_{a}{b} R^{name}-1 != I Tr_R E_{a}{b}"
    return None


def check_trace_identities(R: TensorOperator, C: TensorOperator) -> bool:
    """Both identities; the second is linear in X so elementary matrices suffice."""
    return trace_identity_witness(R, C) is None


# ---------------------------------------------------------------------------
# polynomials in spectral parameters over Q(q)

class MPoly:
    """Polynomial in a few commuting variables with Q(q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c, nvars: int = 3) -> "MPoly":
        return cls({(0,) * nvars: as_scalar(c)})

    @classmethod
    def var(cls, i: int, nvars: int = 3) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ONE})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, ZERO) + c
        return MPoly(t)

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return MPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, ZERO) + c1 * c2
        return MPoly(t)

    def __rmul__(self, other):
        if isinstance(other, RationalFunction):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"MPoly({self.terms})"


# ---------------------------------------------------------------------------
# Baxterization

@dataclass
class CurrentBraiding:
    """R(u, v) = (u X + v Y + Z) / (u - v)."""

    R: TensorOperator
    flavor: str
    X: TensorOperator
    Y: TensorOperator
    Z: TensorOperator
    q: RationalFunction = field(default=ONE)

    def numerator(self, u, v) -> TensorOperator:
        u, v = as_scalar(u), as_scalar(v)
        return u * self.X + v * self.Y + self.Z

    def __call__(self, u, v) -> TensorOperator:
        u, v = as_scalar(u), as_scalar(v)
        if u == v:
            raise PoleError("current braiding has a pole at u = v")
        return (u - v).inverse() * self.numerator(u, v)

    def symbolic_numerator(self, x: int, y: int, nvars: int = 3) -> TensorOperator:
        """u X + v Y + Z with u, v the MPoly variables number x and y."""
        vx, vy, one = MPoly.var(x, nvars), MPoly.var(y, nvars), MPoly.const(1, nvars)
        rows: dict = {}
        for op, mono in ((self.X, vx), (self.Y, vy), (self.Z, one)):
            for i, j, c in op.items():
                row = rows.setdefault(i, {})
                row[j] = row.get(j, MPoly()) + mono * c
        return TensorOperator(self.R.dim, 2, rows)

    def braid_sides_symbolic(self):
        u, v, w = 0, 1, 2
        R = self.symbolic_numerator
        lhs = place(R(u, v), 1, 3) @ place(R(u, w), 2, 3) @ place(R(v, w), 1, 3)
        rhs = place(R(v, w), 2, 3) @ place(R(u, w), 1, 3) @ place(R(u, v), 2, 3)
        return lhs, rhs

    def check_braid_symbolic(self) -> bool:
        """Parametric braid relation over Q(q)[u, v, w].

        Both sides share the denominator (u-v)(u-w)(v-w), so the
        polynomial numerators are compared.
        """
        lhs, rhs = self.braid_sides_symbolic()
        return lhs == rhs

    def check_braid_at(self, u, v, w, q0=None) -> bool:
        ops = [self(u, v), self(u, w), self(v, w), self(v, w), self(u, w), self(u, v)]
        if q0 is not None:
            ops = [specialize_op(o, q0) for o in ops]
        a, b, c, d, e, f = ops
        lhs = place(a, 1, 3) @ place(b, 2, 3) @ place(c, 1, 3)
        rhs = place(d, 2, 3) @ place(e, 1, 3) @ place(f, 2, 3)
        return lhs == rhs

    def screen(self, samples: int = 20, seed: int = 0, q0=None) -> bool:
        """Numeric spot checks at random distinct rational triples."""
        rng = random.Random(seed)
        if q0 is not None:
            check_generic(q0)
        done = 0
        while done < samples:
            u, v, w = (Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(3))
            if len({u, v, w}) < 3:
                continue
            if not self.check_braid_at(u, v, w, q0):
                return False
            done += 1
        return True

    def degenerate(self, a, b=0) -> TensorOperator:
        """R(u, a*u + b) as a constant operator, exactly.

        Raises if the result still depends on u.
        """
        a, b = as_scalar(a), as_scalar(b)
        # u X + (a u + b) Y + Z = M ((1 - a) u - b)
        lin = self.X + a * self.Y
        const = b * self.Y + self.Z
        if a != ONE:
            M = ((ONE - a).inverse()) * lin
            if (-b) * M != const:
                raise ValueError("R(u, a u + b) depends on u")
            return M
        if not lin.is_zero() or not b:
            raise ValueError("R(u, u + b) is not constant or has a pole")
        return (-b).inverse() * const


def baxterize(R: TensorOperator, flavor: str, profile: SymmetryProfile | None = None) -> CurrentBraiding:
    profile = profile or classify(R, with_skew=False)
    ident = TensorOperator.identity(R.dim, 2)
    if flavor == "rational":
        if profile.kind != "involutive":
            raise ValueError("rational Baxterization needs an involutive symmetry")
        return CurrentBraiding(R, flavor, R, -R, -ident, ONE)
    if flavor == "trigonometric":
        if profile.kind != "hecke":
            raise ValueError("trigonometric Baxterization needs a Hecke symmetry")
        q = profile.hecke_parameter
        lam = q - q.inverse()
        return CurrentBraiding(R, flavor, R - lam * ident, -R, TensorOperator.zero(R.dim, 2), q)
    raise ValueError(f"unknown flavor {flavor!r}")
