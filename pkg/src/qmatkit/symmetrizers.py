"""R-symmetrizer and R-skew-symmetrizer towers, evenness, and the u, v tensors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .braidings import SymmetryProfile, classify
from .scalars import ONE, ZERO, GenericityError, RationalFunction, q_number
from .tensorspace import TensorOperator, kron, place, rank


class NotEven(ValueError):
    def __init__(self, msg: str, profile: list[int]):
        super().__init__(f"{msg}; rank profile {profile}")
        self.profile = profile


@dataclass
class ProjectorTower:
    R: TensorOperator
    kind: str  # "symmetric" | "skew"
    q: RationalFunction
    levels: list[TensorOperator] = field(default_factory=list)

    def level(self, k: int) -> TensorOperator:
        return self.levels[k - 1]

    @property
    def k_max(self) -> int:
        return len(self.levels)


def build_tower(R: TensorOperator, kind: str, k_max: int,
                profile: SymmetryProfile | None = None, verify: bool = True) -> ProjectorTower:
    """Projectors on V^{(x)k}, k = 1..k_max, by the Hecke-algebra recursion.

    For an involutive R the recursion is used at q = 1.
    """
    if kind not in ("symmetric", "skew"):
        raise ValueError(f"unknown tower kind {kind!r}")
    profile = profile or classify(R, with_skew=False)
    q = profile.q
    N = R.dim
    tower = ProjectorTower(R, kind, q, [TensorOperator.identity(N, 1)])
    for k in range(2, k_max + 1):
        kq = q_number(k, q)
        if not kq:
            raise GenericityError(f"{k}_q vanishes")
        prev = kron(tower.levels[-1], TensorOperator.identity(N, 1))
        ident = TensorOperator.identity(N, k)
        rk = place(R, k - 1, k)
        c = q_number(k - 1, q)
        if kind == "symmetric":
            mid = q ** (-(k - 1)) * ident + c * rk
        else:
            mid = q ** (k - 1) * ident - c * rk
        level = kq.inverse() * (prev @ mid @ prev)
        if verify and level @ level != level:
            raise ArithmeticError(f"level {k} of the {kind} tower is not idempotent")
        tower.levels.append(level)
    return tower


def poincare_dims(tower: ProjectorTower) -> list[int]:
    return [rank(p) for p in tower.levels]


@dataclass
class EvennessCertificate:
    m: int
    u: list[RationalFunction]
    v: list[RationalFunction]
    pairing: RationalFunction
    dims: list[int]
    dim: int

    def index(self, digits) -> int:
        idx = 0
        for d in digits:
            idx = idx * self.dim + d
        return idx

    def rescaled(self, a: RationalFunction) -> "EvennessCertificate":
        """(u, v) -> (a u, v / a); the projector is unchanged."""
        ai = a.inverse()
        return EvennessCertificate(self.m, [a * x for x in self.u], [ai * x for x in self.v],
                                   self.pairing, self.dims, self.dim)


def rank_one_factor(A: TensorOperator):
    """u, v with A[I][J] = u_I v^J; v normalized to first nonzero entry 1."""
    if not A.rows:
        raise ValueError("zero operator has no rank-one factorization")
    n = A.size
    i0 = min(A.rows)
    row = A.rows[i0]
    j0 = min(row)
    pivot = row[j0]
    v = [row.get(j, ZERO) / pivot for j in range(n)]
    u = [A[i, j0] for i in range(n)]
    return u, v


def detect_even(tower: ProjectorTower) -> EvennessCertificate:
    if tower.kind != "skew":
        raise ValueError("evenness is read off the skew tower")
    dims = poincare_dims(tower)
    for k in range(1, len(dims)):
        if dims[k - 1] == 1 and dims[k] == 0:
            m = k
            break
    else:
        raise NotEven("no rank-1 level followed by a zero level", dims)
    if m < 2:
        raise NotEven("top component in degree < 2", dims)
    A = tower.level(m)
    u, v = rank_one_factor(A)
    pairing = ZERO
    for a, b in zip(u, v):
        pairing = pairing + a * b
    if pairing != ONE:
        # for an idempotent of rank one <v,u> = Tr A = 1; rescale defensively
        u = [x / pairing for x in u]
    cert = EvennessCertificate(m, u, v, ONE, dims, tower.R.dim)
    if outer(cert) != A:
        raise ArithmeticError("rank-one factorization does not reproduce A^(m)")
    return cert


def outer(cert: EvennessCertificate) -> TensorOperator:
    rows = {}
    for i, a in enumerate(cert.u):
        if a:
            r = {j: a * b for j, b in enumerate(cert.v) if b}
            if r:
                rows[i] = r
    return TensorOperator(cert.dim, cert.m, rows)


def even_certificate(R: TensorOperator, k_max: int | None = None,
                     profile: SymmetryProfile | None = None) -> EvennessCertificate:
    k_max = k_max if k_max is not None else R.dim + 2
    return detect_even(build_tower(R, "skew", k_max, profile))


def pairing_vFu(v, u, C_F: TensorOperator) -> RationalFunction:
    """v^{J} (C_F^{(x)m})_J^I u_I."""
    N = C_F.dim
    m = 0
    while N ** m < len(v):
        m += 1
    if len(u) != len(v) or N ** m != len(v):
        raise ValueError("u, v rank mismatch")
    Cm = C_F
    for _ in range(m - 1):
        Cm = kron(Cm, C_F)
    total = ZERO
    for J, vj in enumerate(v):
        if not vj:
            continue
        for I, c in Cm.rows.get(J, {}).items():
            if u[I]:
                total = total + vj * c * u[I]
    return total
