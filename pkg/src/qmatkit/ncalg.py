"""Free algebra over Q(q), quadratic presentations from (R, F), and an
ideal-membership oracle.

"Equal modulo the relations" means: the difference lies in the two-sided
ideal.  Membership is decided by linear algebra on the span of
``w1 * rel * w2`` inside a finite box of words (one degree for homogeneous
presentations, a length/weight box for filtered ones).  For a homogeneous
quadratic presentation the degree-d box gives an exact answer in degree d;
in a filtered box a positive answer is a proof and a negative answer is a
verdict relative to the box.

The spanning rows are generated lazily: starting from the words of the
element being tested, only rows that share a word with what has been seen
are materialized.  Rows outside that connected component cannot affect
membership.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .braidings import check_compatible, classify
from .linalg import Echelon
from .scalars import ONE, ZERO, RationalFunction, as_scalar, emit, parse
from .symmetrizers import build_tower
from .tensorspace import TensorOperator, place


class ResourceError(RuntimeError):
    """A degree or box cap was exceeded."""


class PresentationError(ValueError):
    pass


Word = tuple


# ---------------------------------------------------------------------------
# noncommutative polynomials

class NCPolynomial:
    """Finite Q(q)-combination of words (tuples of generator indices)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "NCPolynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def gen(cls, i: int) -> "NCPolynomial":
        return cls._raw({(i,): ONE})

    @classmethod
    def scalar(cls, c) -> "NCPolynomial":
        c = as_scalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def word(cls, w: Sequence[int], c=ONE) -> "NCPolynomial":
        return cls({tuple(w): as_scalar(c)})

    # -- structure ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "NCPolynomial"]:
        parts: dict[int, dict] = {}
        for w, c in self.terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {d: NCPolynomial._raw(t) for d, t in sorted(parts.items())}

    def weight(self, weights: Sequence[int]) -> int:
        return max((sum(weights[i] for i in w) for w in self.terms), default=0)

    def coefficient(self, w) -> RationalFunction:
        return self.terms.get(tuple(w), ZERO)

    def constant(self) -> RationalFunction:
        return self.terms.get((), ZERO)

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, NCPolynomial):
            return x
        if isinstance(x, RationalFunction) or (isinstance(x, int) and not isinstance(x, bool)):
            return NCPolynomial.scalar(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        t = dict(self.terms)
        for w, c in o.terms.items():
            x = t.get(w)
            if x is None:
                t[w] = c
            else:
                y = x + c
                if y:
                    t[w] = y
                else:
                    del t[w]
        return NCPolynomial._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            if not other:
                return NCPolynomial._raw({})
            return NCPolynomial._raw({w: c * other for w, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                z = c1 * c2
                x = t.get(w)
                t[w] = z if x is None else x + z
        return NCPolynomial._raw({w: c for w, c in t.items() if c})

    def __rmul__(self, other):
        if isinstance(other, RationalFunction):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        r = NCPolynomial.scalar(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def commutator(self, other) -> "NCPolynomial":
        return self * other - other * self

    def map_letters(self, f) -> "NCPolynomial":
        return NCPolynomial({tuple(f(i) for i in w): c for w, c in self.terms.items()})

    def substitute(self, images: Sequence["NCPolynomial"]) -> "NCPolynomial":
        """Algebra homomorphism sending generator i to images[i]."""
        out = NCPolynomial()
        for w, c in self.terms.items():
            t = NCPolynomial.scalar(c)
            for i in w:
                t = t * images[i]
            out = out + t
        return out

    # -- display ---------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def to_str(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(names[i] for i in w)
            if not mono:
                parts.append(f"({emit(c)})")
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({emit(c)})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self, names: Sequence[str]) -> dict:
        return {word_str(w, names): emit(c) for w, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, obj: dict, names: Sequence[str]) -> "NCPolynomial":
        index = {n: i for i, n in enumerate(names)}
        t = {}
        for ws, cs in obj.items():
            w = () if ws == "1" else tuple(index[x] for x in ws.split("*"))
            t[w] = parse(cs)
        return cls(t)

    def __repr__(self):
        return f"NCPolynomial({self.terms!r})"


def word_str(w: Word, names: Sequence[str]) -> str:
    return "*".join(names[i] for i in w) if w else "1"


def as_nc(x) -> NCPolynomial:
    if isinstance(x, NCPolynomial):
        return x
    return NCPolynomial.scalar(x)


def nc_sum(items: Iterable) -> NCPolynomial:
    out = NCPolynomial()
    for x in items:
        out = out + x
    return out


# ---------------------------------------------------------------------------
# matrices of algebra elements

def alphabet(N: int) -> list[str]:
    if N == 2:
        return ["a", "b", "c", "d"]
    return [f"l{i + 1}{j + 1}" for i in range(N) for j in range(N)]


def generating_matrix(N: int, offset: int = 0) -> TensorOperator:
    """L with L[i][j] = l^i_j, generator index offset + i*N + j."""
    return TensorOperator(N, 1, {i: {j: NCPolynomial.gen(offset + i * N + j) for j in range(N)}
                                 for i in range(N)})


def lift(op: TensorOperator) -> TensorOperator:
    """Scalar operator viewed as a matrix of (constant) algebra elements."""
    return op.map(as_nc)


def nc_trace(X: TensorOperator) -> NCPolynomial:
    return as_nc(X.trace())


def f_copies(L: TensorOperator, F: TensorOperator, p: int, F_inv: TensorOperator | None = None):
    """[L_ov1, ..., L_ovp] on V^{(x)p}: L_ov(k+1) = F_{k,k+1} L_ovk F_{k,k+1}^{-1}."""
    if p < 1:
        raise ValueError("need p >= 1")
    F_inv = F_inv if F_inv is not None else F.inverse()
    copies = [place(L, 1, p)]
    for k in range(1, p):
        Fk, Fk_inv = place(F, k, p), place(F_inv, k, p)
        copies.append(Fk @ copies[-1] @ Fk_inv)
    return copies


def product_ops(ops: Sequence[TensorOperator]) -> TensorOperator:
    out = ops[0]
    for o in ops[1:]:
        out = out @ o
    return out


def matrix_power(L: TensorOperator, k: int) -> TensorOperator:
    out = lift(TensorOperator.identity(L.dim, L.sites))
    for _ in range(k):
        out = out @ L
    return out


def nc_matrix_is_zero(X: TensorOperator) -> bool:
    return X.is_zero()


# ---------------------------------------------------------------------------
# ideal membership

@dataclass(frozen=True)
class Box:
    """Finite set of words: exact length, or bounded length and weight."""

    exact_length: int | None = None
    max_length: int | None = None
    max_weight: int | None = None

    def admits(self, length: int, weight: int) -> bool:
        if self.exact_length is not None and length != self.exact_length:
            return False
        if self.max_length is not None and length > self.max_length:
            return False
        if self.max_weight is not None and weight > self.max_weight:
            return False
        return True


class IdealOracle:
    """Lazily grown echelon basis of the ideal inside a box."""

    def __init__(self, relations: Sequence[NCPolynomial], box: Box, weights: Sequence[int] | None = None,
                 max_rows: int = 200_000):
        self.relations = [r.terms for r in relations]
        self.box = box
        self.weights = weights
        self.max_rows = max_rows
        wt = self._wword
        self.key = lambda w: (wt(w), len(w), w)
        self.echelon = Echelon(key=self.key)
        self.explored: set = set()
        self.used: set = set()
        self.rows_added = 0
        # term word -> [(relation index, max length, max weight)]
        self._by_word: dict[Word, list[int]] = {}
        self._shape = []
        for ri, rel in enumerate(self.relations):
            for w in rel:
                self._by_word.setdefault(w, []).append(ri)
            lens = [len(w) for w in rel]
            wts = [wt(w) for w in rel]
            self._shape.append((min(lens), max(lens), max(wts)))
        self._term_lengths = sorted({len(w) for w in self._by_word})

    def _wword(self, w: Word) -> int:
        if self.weights is None:
            return len(w)
        ws = self.weights
        return sum(ws[i] for i in w)

    def _row_fits(self, ri: int, w1: Word, w2: Word) -> bool:
        lo, hi, mw = self._shape[ri]
        extra = len(w1) + len(w2)
        box = self.box
        if box.exact_length is not None and not (lo + extra == hi + extra == box.exact_length):
            return False
        if box.max_length is not None and hi + extra > box.max_length:
            return False
        if box.max_weight is not None and mw + self._wword(w1) + self._wword(w2) > box.max_weight:
            return False
        return True

    def in_box(self, w: Word) -> bool:
        return self.box.admits(len(w), self._wword(w))

    def explore(self, words: Iterable[Word]) -> None:
        queue = deque(w for w in words if w not in self.explored and self.in_box(w))
        for w in queue:
            self.explored.add(w)
        while queue:
            w = queue.popleft()
            for L in self._term_lengths:
                for i in range(len(w) - L + 1):
                    t = w[i:i + L]
                    ris = self._by_word.get(t)
                    if not ris:
                        continue
                    w1, w2 = w[:i], w[i + L:]
                    for ri in ris:
                        tag = (ri, w1, w2)
                        if tag in self.used or not self._row_fits(ri, w1, w2):
                            continue
                        self.used.add(tag)
                        row = {w1 + tw + w2: c for tw, c in self.relations[ri].items()}
                        self.rows_added += 1
                        if self.rows_added > self.max_rows:
                            raise ResourceError(f"ideal slice exceeded {self.max_rows} spanning rows")
                        self.echelon.add(row)
                        for nw in row:
                            if nw not in self.explored:
                                self.explored.add(nw)
                                queue.append(nw)

    def residual(self, x: NCPolynomial) -> NCPolynomial:
        self.explore(x.terms)
        return NCPolynomial(self.echelon.reduce(x.terms, full=True))

    def contains(self, x: NCPolynomial) -> bool:
        self.explore(x.terms)
        return not self.echelon.reduce(x.terms, full=False)


@dataclass
class GradedIdealSlice:
    degree: int
    oracle: IdealOracle

    @property
    def rank(self) -> int:
        return self.oracle.echelon.rank

    @property
    def pivots(self) -> list[Word]:
        return sorted(self.oracle.echelon.pivots, key=self.oracle.key, reverse=True)

    def basis(self) -> list[NCPolynomial]:
        rref = self.oracle.echelon.reduced_basis()
        return [NCPolynomial(rref[p]) for p in self.pivots]


# ---------------------------------------------------------------------------
# presentations

@dataclass
class AlgebraPresentation:
    alphabet: list[str]
    relations: list[NCPolynomial]
    source: str = "custom"
    meta: dict = field(default_factory=dict)
    weights: list[int] | None = None
    degree_cap: int = 8
    max_length: int = 4
    weight_slack: int = 1
    _oracles: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def ngens(self) -> int:
        return len(self.alphabet)

    @property
    def homogeneous(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations) and self.weights is None

    def gens(self) -> list[NCPolynomial]:
        return [NCPolynomial.gen(i) for i in range(self.ngens)]

    def name(self, x: NCPolynomial) -> str:
        return x.to_str(self.alphabet)

    def element(self, text: str) -> NCPolynomial:
        """Parse a small expression like ``"a*d - q*b*c"`` over the alphabet."""
        return parse_nc(text, self.alphabet)

    def oracle_for_degree(self, d: int) -> IdealOracle:
        if d > self.degree_cap:
            raise ResourceError(f"degree {d} exceeds the cap {self.degree_cap}")
        key = ("deg", d)
        if key not in self._oracles:
            self._oracles[key] = IdealOracle(self.relations, Box(exact_length=d))
        return self._oracles[key]

    def oracle_for_box(self, max_length: int, max_weight: int) -> IdealOracle:
        if max_length > self.degree_cap:
            raise ResourceError(f"length {max_length} exceeds the cap {self.degree_cap}")
        key = ("box", max_length, max_weight)
        if key not in self._oracles:
            self._oracles[key] = IdealOracle(self.relations, Box(max_length=max_length, max_weight=max_weight),
                                             self.weights)
        return self._oracles[key]

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "alphabet": list(self.alphabet),
            "relations": [r.to_json(self.alphabet) for r in self.relations],
            "meta": {k: v for k, v in self.meta.items() if isinstance(v, (str, int, bool))},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraPresentation":
        names = obj["alphabet"]
        rels = [NCPolynomial.from_json(r, names) for r in obj["relations"]]
        return cls(names, rels, obj.get("source", "custom"), dict(obj.get("meta", {})))


def dedupe(polys: Iterable[NCPolynomial]) -> list[NCPolynomial]:
    """Keep the nonzero elements that are independent of the earlier ones."""
    ech = Echelon(key=lambda w: (len(w), w))
    out = []
    for p in polys:
        if p and ech.add(p.terms):
            out.append(p)
    return out


def matrix_entries(X: TensorOperator) -> list[NCPolynomial]:
    return [as_nc(x) for _, _, x in X.items()]


def _pair_data(R, F, profile=None):
    profile = profile or classify(R, with_skew=False)
    if not profile.is_symmetry:
        raise PresentationError("R must be an involutive or Hecke symmetry")
    if R.dim != F.dim:
        raise PresentationError("R and F act on different spaces")
    if not check_compatible(R, F):
        raise PresentationError("(R, F) is not a compatible pair")
    return profile


def present(R: TensorOperator, F: TensorOperator, system: str = "QMA", profile=None,
            degree_cap: int = 8) -> AlgebraPresentation:
    """QMA: R L1 L2 = L1 L2 R;  HQA: S L1 L2 A = 0;  HQA2: A L1 L2 S = 0."""
    profile = _pair_data(R, F, profile)
    N = R.dim
    L = generating_matrix(N)
    L1, L2 = f_copies(L, F, 2)
    LL = L1 @ L2
    Rn = lift(R)
    if system == "QMA":
        M = Rn @ LL - LL @ Rn
    elif system in ("HQA", "HQA2"):
        t = build_tower(R, "symmetric", 2, profile)
        S = lift(t.level(2))
        A = lift(build_tower(R, "skew", 2, profile).level(2))
        M = S @ LL @ A if system == "HQA" else A @ LL @ S
    else:
        raise PresentationError(f"unknown system {system!r}")
    rels = dedupe(matrix_entries(M))
    flip = TensorOperator.flip(N)
    meta = {"system": system, "N": N, "F_is_flip": F == flip, "F_is_R": F == R, "kind": profile.kind}
    return AlgebraPresentation(alphabet(N), rels, system, meta, degree_cap=degree_cap)


def relation_span_equal(a: Sequence[NCPolynomial], b: Sequence[NCPolynomial]) -> bool:
    """Exact equality of the linear spans of two relation lists."""
    ea = Echelon(key=lambda w: (len(w), w))
    ea.add_all(r.terms for r in a)
    eb = Echelon(key=lambda w: (len(w), w))
    eb.add_all(r.terms for r in b)
    return all(ea.contains(r.terms) for r in b) and all(eb.contains(r.terms) for r in a)


def ideal_slice(pres: AlgebraPresentation, d: int) -> GradedIdealSlice:
    """Full degree-d slice (every word of length d explored)."""
    if d < 2:
        raise ValueError("slices start in degree 2")
    if not pres.homogeneous:
        raise PresentationError("graded slices need a homogeneous presentation")
    oracle = pres.oracle_for_degree(d)
    oracle.explore(product(range(pres.ngens), repeat=d))
    return GradedIdealSlice(d, oracle)


@dataclass
class Reduction:
    zero: bool
    residual: NCPolynomial
    mode: str  # "graded" or "box"

    def __bool__(self):
        return self.zero


def reduce(x: NCPolynomial, pres: AlgebraPresentation, max_length: int | None = None,
           max_weight: int | None = None) -> Reduction:
    """Normal form of x modulo the ideal (the residual); zero iff x is in it."""
    x = as_nc(x)
    if not x:
        return Reduction(True, x, "graded")
    if pres.homogeneous:
        residual = NCPolynomial()
        min_rel = min((r.min_degree() for r in pres.relations), default=None)
        for d, part in x.homogeneous_parts().items():
            if min_rel is None or d < min_rel:
                residual = residual + part
                continue
            residual = residual + pres.oracle_for_degree(d).residual(part)
        return Reduction(not residual, residual, "graded")
    weights = pres.weights or [1] * pres.ngens
    ml = max_length if max_length is not None else max(pres.max_length, x.degree())
    mw = max_weight if max_weight is not None else x.weight(weights) + pres.weight_slack
    res = pres.oracle_for_box(ml, mw).residual(x)
    return Reduction(not res, res, "box")


def reduces_to_zero(x: NCPolynomial, pres: AlgebraPresentation, **caps) -> bool:
    return reduce(x, pres, **caps).zero


def equal_mod(x: NCPolynomial, y: NCPolynomial, pres: AlgebraPresentation, **caps) -> bool:
    return reduce(as_nc(x) - as_nc(y), pres, **caps).zero


@dataclass
class CentralityVerdict:
    central: bool
    witness: str | None = None
    residual: NCPolynomial | None = None

    def __bool__(self):
        return self.central


def is_central(x: NCPolynomial, pres: AlgebraPresentation, **caps) -> CentralityVerdict:
    for i, g in enumerate(pres.gens()):
        r = reduce(x * g - g * x, pres, **caps)
        if not r.zero:
            return CentralityVerdict(False, pres.alphabet[i], r.residual)
    return CentralityVerdict(True)


def tensor_square(pres: AlgebraPresentation) -> AlgebraPresentation:
    """Two commuting copies of an RTT presentation (target of the coproduct)."""
    if pres.source != "QMA" or not pres.meta.get("F_is_flip"):
        raise PresentationError("tensor square is only supported for RTT presentations (F = P)")
    n = pres.ngens
    names = [f"{x}(1)" for x in pres.alphabet] + [f"{x}(2)" for x in pres.alphabet]
    rels = list(pres.relations)
    rels += [r.map_letters(lambda i: i + n) for r in pres.relations]
    for i in range(n):
        for j in range(n):
            rels.append(NCPolynomial({(i, n + j): ONE, (n + j, i): -ONE}))
    meta = dict(pres.meta, system="tensor-square")
    return AlgebraPresentation(names, rels, "tensor-square", meta, degree_cap=pres.degree_cap)


def coproduct(x: NCPolynomial, N: int) -> NCPolynomial:
    """Delta(l^i_j) = sum_k l^i_k (x) l^k_j in the tensor-square alphabet."""
    n = N * N
    images = []
    for i in range(N):
        for j in range(N):
            images.append(nc_sum(NCPolynomial.gen(i * N + k) * NCPolynomial.gen(n + k * N + j)
                                 for k in range(N)))
    return x.substitute(images)


def tensor(x: NCPolynomial, y: NCPolynomial, n: int) -> NCPolynomial:
    """x (x) y as an element of the tensor square."""
    return x * y.map_letters(lambda i: i + n)


# ---------------------------------------------------------------------------
# small expression parser for algebra elements

def parse_nc(text: str, names: Sequence[str]) -> NCPolynomial:
    """Parse sums of products of scalars (scalar grammar) and generator names.

    Generator names must not collide with ``q``.
    """
    index = {n: i for i, n in enumerate(names)}
    toks = _nc_tokens(text, sorted(names, key=len, reverse=True))
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else "end"

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError(f"unexpected end of expression {text!r}")
        pos += 1
        return toks[pos - 1]

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()[0]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take()[0]
            w = unary()
            if op == "*":
                v = v * w
            else:
                if len(w.terms) != 1 or () not in w.terms:
                    raise ValueError("can only divide by scalars")
                v = v * w.terms[()].inverse()
        return v

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
        return power()

    def power():
        v = atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            kind, val = take()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            e = sign * val
            if e < 0:
                if len(v.terms) != 1 or () not in v.terms:
                    raise ValueError("negative powers only for scalars")
                return NCPolynomial.scalar(v.terms[()] ** e)
            return v ** e
        return v

    def atom():
        kind, val = take()
        if kind == "int":
            return NCPolynomial.scalar(val)
        if kind == "q":
            return NCPolynomial.scalar(parse("q"))
        if kind == "gen":
            return NCPolynomial.gen(index[val])
        if kind == "(":
            v = expr()
            if take()[0] != ")":
                raise ValueError("expected ')'")
            return v
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if peek() != "end":
        raise ValueError(f"trailing input in {text!r}")
    return out


def _nc_tokens(text: str, names: list[str]):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
            continue
        for n in names:
            if text.startswith(n, i):
                toks.append(("gen", n))
                i += len(n)
                break
        else:
            if ch == "q":
                toks.append(("q", "q"))
                i += 1
                continue
            raise ValueError(f"unknown symbol at {text[i:]!r}")
    return toks
