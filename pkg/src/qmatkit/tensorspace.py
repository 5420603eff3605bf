"""Operators on V^{(x)p} as sparse N^p x N^p matrices.

A multi-index (i1, ..., ip) with 0-based digits is flattened big-endian:
``i1*N**(p-1) + ... + ip``.  Row index is the lower (input) index, so for a
two-site operator ``R[(i,j),(k,l)] = R_{ij}^{kl}``.

Entries are normally :class:`~qmatkit.scalars.RationalFunction`, but any
ring element that supports ``+``, ``*`` and truthiness works; the
noncommutative engine reuses this class for matrices of algebra elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .linalg import Echelon, SingularSystem
from .scalars import ONE, ZERO, RationalFunction, as_scalar, emit, parse


class PlacementError(ValueError):
    pass


class TensorOperator:
    __slots__ = ("dim", "sites", "rows")

    def __init__(self, dim: int, sites: int, rows: dict[int, dict[int, object]] | None = None):
        self.dim = dim
        self.sites = sites
        self.rows = {i: r for i, r in (rows or {}).items() if r}

    # -- construction ------------------------------------------------------
    @property
    def size(self) -> int:
        return self.dim ** self.sites

    @classmethod
    def identity(cls, dim: int, sites: int = 1, one=ONE) -> "TensorOperator":
        return cls(dim, sites, {i: {i: one} for i in range(dim ** sites)})

    @classmethod
    def zero(cls, dim: int, sites: int = 1) -> "TensorOperator":
        return cls(dim, sites, {})

    @classmethod
    def flip(cls, dim: int) -> "TensorOperator":
        return cls(dim, 2, {i * dim + j: {j * dim + i: ONE} for i in range(dim) for j in range(dim)})

    @classmethod
    def from_dense(cls, entries, dim: int | None = None, sites: int | None = None) -> "TensorOperator":
        n = len(entries)
        if dim is None or sites is None:
            dim, sites = _infer_shape(n, dim, sites)
        if n != dim ** sites or any(len(r) != n for r in entries):
            raise ValueError(f"expected a {dim ** sites}x{dim ** sites} matrix")
        rows = {}
        for i, r in enumerate(entries):
            d = {}
            for j, x in enumerate(r):
                x = parse(x) if isinstance(x, str) else x
                if not isinstance(x, RationalFunction) and isinstance(x, int):
                    x = as_scalar(x)
                if x:
                    d[j] = x
            rows[i] = d
        return cls(dim, sites, rows)

    @classmethod
    def diagonal(cls, values) -> "TensorOperator":
        vals = [as_scalar(v) for v in values]
        return cls(len(vals), 1, {i: {i: v} for i, v in enumerate(vals) if v})

    # -- access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, ZERO)

    def to_dense(self, zero=ZERO) -> list[list]:
        n = self.size
        return [[self.rows.get(i, {}).get(j, zero) for j in range(n)] for i in range(n)]

    def items(self):
        for i in sorted(self.rows):
            r = self.rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def map(self, f) -> "TensorOperator":
        rows = {}
        for i, r in self.rows.items():
            d = {j: f(x) for j, x in r.items()}
            rows[i] = {j: x for j, x in d.items() if x}
        return TensorOperator(self.dim, self.sites, rows)

    # -- algebra -------------------------------------------------------------
    def _check(self, other: "TensorOperator") -> None:
        if (self.dim, self.sites) != (other.dim, other.sites):
            raise ValueError(f"shape mismatch: {self.dim}^{self.sites} vs {other.dim}^{other.sites}")

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            t = rows.setdefault(i, {})
            for j, x in r.items():
                y = t.get(j)
                y = x if y is None else y + x
                if y:
                    t[j] = y
                else:
                    t.pop(j, None)
        return TensorOperator(self.dim, self.sites, rows)

    def __neg__(self) -> "TensorOperator":
        return self.map(lambda x: -x)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + (-other)

    def scale(self, c, left: bool = True) -> "TensorOperator":
        c = as_scalar(c) if isinstance(c, int) else c
        return self.map((lambda x: c * x) if left else (lambda x: x * c))

    def __rmul__(self, c) -> "TensorOperator":
        return self.scale(c)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        rows = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc: dict = {}
            for k, x in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, y in ok.items():
                    z = x * y
                    w = acc.get(j)
                    acc[j] = z if w is None else w + z
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return TensorOperator(self.dim, self.sites, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self.dim, self.sites) == (other.dim, other.sites) and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.sites, tuple(self.items())))

    def is_zero(self) -> bool:
        return not self.rows

    def first_difference(self, other: "TensorOperator"):
        """First (row, col) where two operators differ, or None."""
        self._check(other)
        for i in sorted(set(self.rows) | set(other.rows)):
            a, b = self.rows.get(i, {}), other.rows.get(i, {})
            for j in sorted(set(a) | set(b)):
                if a.get(j, ZERO) != b.get(j, ZERO):
                    return (i, j)
        return None

    def transpose(self) -> "TensorOperator":
        rows: dict = {}
        for i, r in self.rows.items():
            for j, x in r.items():
                rows.setdefault(j, {})[i] = x
        return TensorOperator(self.dim, self.sites, rows)

    def is_scalar(self):
        """The scalar c if the operator is c*I, else None."""
        n = self.size
        if not self.rows:
            return ZERO
        c = self.rows.get(0, {}).get(0)
        if c is None:
            return None
        for i in range(n):
            r = self.rows.get(i, {})
            if r != {i: c}:
                return None
        return c

    def trace(self):
        total = None
        for i, r in self.rows.items():
            x = r.get(i)
            if x is not None:
                total = x if total is None else total + x
        return ZERO if total is None else total

    def inverse(self) -> "TensorOperator":
        """Exact inverse via Gauss-Jordan on [M | I]."""
        n = self.size
        key = lambda c: (-c[0], -c[1])  # M-part columns lead, lowest index first
        ech = Echelon(key=key)
        for i in range(n):
            row = {(0, j): x for j, x in self.rows.get(i, {}).items()}
            row[(1, i)] = ONE
            ech.add(row)
        if any(c[0] == 1 for c in ech.pivots) or len(ech.pivots) < n:
            raise SingularSystem("operator is not invertible")
        rref = ech.reduced_basis()
        rows = {}
        for j in range(n):
            r = rref[(0, j)]
            rows[j] = {c[1]: x for c, x in r.items() if c[0] == 1}
        return TensorOperator(self.dim, self.sites, rows)

    def __repr__(self) -> str:
        return f"TensorOperator(dim={self.dim}, sites={self.sites}, nnz={sum(len(r) for r in self.rows.values())})"

    def __str__(self) -> str:
        dense = self.to_dense()
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in dense)


def _infer_shape(n: int, dim, sites):
    if dim is not None:
        p, m = 0, 1
        while m < n:
            m *= dim
            p += 1
        return dim, p
    for d in range(2, n + 1):
        p, m = 1, d
        while m < n:
            m *= d
            p += 1
        if m == n:
            if sites is None or sites == p:
                return d, p
    raise ValueError(f"cannot infer tensor shape for size {n}")


# ---------------------------------------------------------------------------
# index helpers

def digits(idx: int, dim: int, sites: int) -> tuple[int, ...]:
    out = [0] * sites
    for s in range(sites - 1, -1, -1):
        idx, out[s] = divmod(idx, dim)
    return tuple(out)


def flatten(ds: Iterable[int], dim: int) -> int:
    idx = 0
    for d in ds:
        idx = idx * dim + d
    return idx


def kron(a: TensorOperator, b: TensorOperator) -> TensorOperator:
    if a.dim != b.dim:
        raise ValueError("kron of operators on different spaces")
    nb = b.size
    rows = {}
    for i, ra in a.rows.items():
        for k, rb in b.rows.items():
            row = {}
            for j, x in ra.items():
                for l, y in rb.items():
                    z = x * y
                    if z:
                        row[j * nb + l] = z
            if row:
                rows[i * nb + k] = row
    return TensorOperator(a.dim, a.sites + b.sites, rows)


def place(op: TensorOperator, k: int, p: int) -> TensorOperator:
    """Embed an operator acting on sites k..k+s-1 (1-based) of V^{(x)p}."""
    s = op.sites
    if not (1 <= k and k + s - 1 <= p):
        raise PlacementError(f"cannot place a {s}-site operator at position {k} in {p} sites")
    N = op.dim
    left = N ** (k - 1)
    right = N ** (p - k - s + 1)
    m = op.size
    rows = {}
    for a in range(left):
        for i, r in op.rows.items():
            for c in range(right):
                rows[(a * m + i) * right + c] = {(a * m + j) * right + c: x for j, x in r.items()}
    return TensorOperator(N, p, rows)


def partial_trace(op: TensorOperator, site_set, weight: TensorOperator | None = None) -> TensorOperator:
    """Trace out the given sites (1-based); with a weight C computes
    ``Tr_(s)(C_s X)``, the R-trace when C = C^R."""
    sites = list(site_set)
    if not sites:
        raise ValueError("partial_trace needs at least one site")
    if len(set(sites)) != len(sites):
        raise ValueError(f"duplicate sites in {sites}")
    p, N = op.sites, op.dim
    if any(not (1 <= s <= p) for s in sites):
        raise ValueError(f"sites {sites} out of range 1..{p}")
    if weight is not None and (weight.dim != N or weight.sites != 1):
        raise ValueError("weight must be an N x N operator")
    traced = sorted(s - 1 for s in sites)
    keep = [s for s in range(p) if s not in traced]
    rows: dict = {}
    for i, r in op.rows.items():
        di = digits(i, N, p)
        ri = flatten((di[s] for s in keep), N)
        for j, x in r.items():
            dj = digits(j, N, p)
            if weight is None:
                if any(di[s] != dj[s] for s in traced):
                    continue
                y = x
            else:
                w = ONE
                for s in traced:
                    w = w * weight[dj[s], di[s]]
                    if not w:
                        break
                if not w:
                    continue
                y = w * x
            rj = flatten((dj[s] for s in keep), N)
            row = rows.setdefault(ri, {})
            prev = row.get(rj)
            row[rj] = y if prev is None else prev + y
    for ri in list(rows):
        rows[ri] = {j: v for j, v in rows[ri].items() if v}
    if not keep:
        # full trace: a 1x1 "operator" is awkward, return on zero sites
        return TensorOperator(N, 0, rows)
    return TensorOperator(N, len(keep), rows)


def scalar_of(op: TensorOperator):
    """Value of a zero-site operator (a full trace)."""
    if op.sites != 0:
        raise ValueError("not a scalar")
    return op.rows.get(0, {}).get(0, ZERO)


@dataclass
class RankKernel:
    rank: int
    kernel_basis: list[list[RationalFunction]]
    image_basis: list[list[RationalFunction]]


def rank_kernel(op: TensorOperator) -> RankKernel:
    """Rank, left kernel and row space (the image in the x-basis).

    With the row = input convention, the operator maps ``x_I`` to
    ``sum_J M[I][J] x_J``, so its image is the row space of M and its
    kernel is ``{c : c M = 0}``.
    """
    n = op.size
    key = lambda c: (-c[0], -c[1])
    ech = Echelon(key=key)
    kernel_rows = []
    for i in range(n):
        row = {(0, j): x for j, x in op.rows.get(i, {}).items()}
        row[(1, i)] = ONE
        ech.add(row)
    rref = ech.reduced_basis()
    image, kernel = [], []
    for piv in sorted(rref, key=lambda c: (c[0], c[1])):
        row = rref[piv]
        if piv[0] == 0:
            image.append([row.get((0, j), ZERO) for j in range(n)])
        else:
            kernel_rows.append(row)
    for row in kernel_rows:
        kernel.append([row.get((1, i), ZERO) for i in range(n)])
    rank = len(image)
    assert rank + len(kernel) == n
    return RankKernel(rank, kernel, image)


def rank(op: TensorOperator) -> int:
    ech = Echelon(key=lambda j: -j)
    for r in op.rows.values():
        ech.add(r)
    return ech.rank


# ---------------------------------------------------------------------------
# JSON matrix format

def to_json_obj(op: TensorOperator) -> dict:
    return {"dim": op.dim, "sites": op.sites, "entries": [[emit(x) for x in r] for r in op.to_dense()]}


def from_json_obj(obj: dict) -> TensorOperator:
    try:
        dim, sites, entries = obj["dim"], obj["sites"], obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix object missing field: {exc}") from None
    entries = [[e if isinstance(e, str) else str(e) for e in r] for r in entries]
    return TensorOperator.from_dense(entries, dim, sites)


def load_matrix(path) -> TensorOperator:
    with open(path) as fh:
        return from_json_obj(json.load(fh))


def dump_matrix(op: TensorOperator, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_obj(op), fh, indent=1)
        fh.write("\n")


def multi_indices(dim: int, sites: int):
    return product(range(dim), repeat=sites)


def specialize_op(op: TensorOperator, q0) -> TensorOperator:
    """Numeric screen: every entry evaluated exactly at q = q0."""
    return op.map(lambda x: RationalFunction(x.evaluate(q0)))
