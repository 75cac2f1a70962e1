"""Symmetric Kac–Moody machinery: real roots, multiplicities, n⁻, modules.

Root-lattice vectors are handled internally as integer tuples in the order
of ``GCM.labels``; ``RootVector`` appears only at the API boundary.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .algebra import Q, AlgebraError, RootVector
from .freelie import _bracket_terms, bracketing_terms, lyndon_words_upto
from .linalg import EchelonBasis, axpy, matrix_rank

Content = tuple  # tuple[int, ...]


class KMError(AlgebraError):
    pass


class WindowOverflow(KMError):
    """Raised when an exact computation would need more depth than allowed."""


class GCM:
    """Symmetric generalized Cartan matrix with string labels."""

    def __init__(self, labels: Sequence[str], rows: Sequence[Sequence[int]]):
        self.labels = tuple(str(l) for l in labels)
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise KMError("GCM must be square and match its labels")
        for i in range(n):
            if self.rows[i][i] != 2:
                raise KMError(f"a_{{{self.labels[i]}{self.labels[i]}}} != 2")
            for j in range(n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise KMError(f"GCM not symmetric at ({self.labels[i]},{self.labels[j]})")
                if i != j and self.rows[i][j] > 0:
                    raise KMError(f"positive off-diagonal entry at ({self.labels[i]},{self.labels[j]})")
        self._pos = {l: i for i, l in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, GCM) and (self.labels, self.rows) == (other.labels, other.rows)

    def __hash__(self):
        return hash((self.labels, self.rows))

    def a(self, i: str, j: str) -> int:
        return self.rows[self._pos[str(i)]][self._pos[str(j)]]

    def index(self, label: str) -> int:
        return self._pos[str(label)]

    def form(self, x: Content, y: Content) -> int:
        return sum(x[i] * self.rows[i][j] * y[j]
                   for i in range(len(x)) if x[i] for j in range(len(y)) if y[j])

    def to_tuple(self, beta: RootVector) -> Content:
        c = beta.coords()
        extra = set(c) - set(self.labels)
        if extra:
            raise KMError(f"root uses indices outside the GCM: {sorted(extra)}")
        return tuple(c.get(l, 0) for l in self.labels)

    def to_root(self, c: Content) -> RootVector:
        return RootVector({l: x for l, x in zip(self.labels, c)})

    def simple(self, i: int) -> Content:
        return tuple(1 if k == i else 0 for k in range(len(self.labels)))

    def reflect(self, i: int, beta: Content) -> Content:
        s = sum(self.rows[i][j] * beta[j] for j in range(len(beta)))
        return tuple(b - (s if k == i else 0) for k, b in enumerate(beta))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, d: dict) -> "GCM":
        return cls(d["labels"], d["rows"])


def _height(c: Content) -> int:
    return sum(c)


def _add(x: Content, y: Content) -> Content:
    return tuple(a + b for a, b in zip(x, y))


def _sub(x: Content, y: Content) -> Content:
    return tuple(a - b for a, b in zip(x, y))


def _contents_upto(n: int, H: int):
    """All nonzero nonnegative integer vectors of length n and height <= H."""
    def rec(k, left):
        if k == n:
            yield ()
            return
        for a in range(left + 1):
            for rest in rec(k + 1, left - a):
                yield (a,) + rest
    return sorted((c for c in rec(0, H) if any(c)), key=lambda c: (_height(c), tuple(-x for x in c)))


# --- roots ----------------------------------------------------------------

def real_roots(A: GCM, H: int) -> set[RootVector]:
    """Positive real roots of height <= H (Weyl orbit of the simple roots)."""
    return {A.to_root(c) for c in _real_root_tuples(A, H)}


def _real_root_tuples(A: GCM, H: int) -> set[Content]:
    n = len(A)
    seen = {A.simple(i) for i in range(n)} if H >= 1 else set()
    todo = list(seen)
    while todo:
        b = todo.pop()
        for i in range(n):
            r = A.reflect(i, b)
            if all(x >= 0 for x in r) and any(r) and _height(r) <= H and r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def is_real_root(A: GCM, beta: RootVector) -> bool:
    c = A.to_tuple(beta)
    if all(x <= 0 for x in c):
        c = tuple(-x for x in c)
    if any(x < 0 for x in c) or not any(c):
        return False
    return c in _real_root_tuples(A, _height(c))


class RootDatum:
    """Positive roots of height <= H with multiplicities."""

    def __init__(self, A: GCM, H: int, mult: Mapping[Content, int], real: set[Content]):
        self.A = A
        self.H = H
        self._mult = dict(mult)
        self._real = frozenset(real)

    def mult(self, beta) -> int:
        c = beta if isinstance(beta, tuple) else self.A.to_tuple(beta)
        if _height(c) > self.H:
            raise KMError(f"root {c} outside the computed height window {self.H}")
        return self._mult.get(c, 0)

    def is_real(self, beta) -> bool:
        c = beta if isinstance(beta, tuple) else self.A.to_tuple(beta)
        return c in self._real

    def roots(self) -> list[Content]:
        return [c for c in _contents_upto(len(self.A), self.H) if self._mult.get(c)]

    def items(self):
        return [(self.A.to_root(c), self._mult[c]) for c in self.roots()]

    def to_json(self) -> dict:
        return {
            "gcm": self.A.to_json(),
            "H": self.H,
            "roots": [{"root": list(c), "mult": self._mult[c], "real": c in self._real}
                      for c in self.roots()],
        }


def _divisors_gt1(c: Content) -> list[int]:
    g = 0
    for x in c:
        g = _gcd(g, x)
    return [d for d in range(2, g + 1) if g % d == 0]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def peterson_mult(A: GCM, H: int) -> RootDatum:
    """Root multiplicities from the Peterson recursion.

    (β, β − 2ρ) c_β = Σ_{β'+β''=β} (β', β'') c_β' c_β'' with
    c_β = Σ_{n|β} mult(β/n)/n and (ρ, α_i) = 1.
    """
    n = len(A)
    cs = _contents_upto(n, H)
    c: dict[Content, Q] = {}
    mult: dict[Content, int] = {}
    for beta in cs:
        h = _height(beta)
        if h == 1:
            c[beta] = Q(1)
            mult[beta] = 1
            continue
        lhs = A.form(beta, beta) - 2 * h
        rhs = Q(0)
        for b1, v1 in c.items():
            if not v1 or _height(b1) >= h:
                continue
            b2 = _sub(beta, b1)
            if any(x < 0 for x in b2):
                continue
            v2 = c.get(b2)
            if v2:
                rhs += A.form(b1, b2) * v1 * v2
        if lhs == 0:
            if rhs:
                raise KMError(f"Peterson recursion degenerate at {beta}: (β,β−2ρ) = 0")
            val = Q(0)
        else:
            val = rhs / lhs
        c[beta] = val
        m = val
        for d in _divisors_gt1(beta):
            sub = tuple(x // d for x in beta)
            m -= Q(mult.get(sub, 0), d)
        if m.denominator != 1 or m < 0:
            raise KMError(f"non-integral multiplicity {m} at {beta}")
        if m:
            mult[beta] = int(m)
    real = _real_root_tuples(A, H)
    for r in real:
        if mult.get(r) != 1:
            raise KMError(f"real root {r} got multiplicity {mult.get(r)}")
    return RootDatum(A, H, mult, real)


# --- n⁻ as a Serre quotient of the free Lie algebra ----------------------

class NminusPresentation:
    """Per-root quotient of the free Lie algebra on the f_i by the Serre ideal.

    ``basis[β]`` lists Lyndon words (over GCM positions) whose bracketings
    are independent modulo the ideal; ``dim(β)`` is their number.
    """

    def __init__(self, A: GCM, H: int, basis: Mapping, ideal_rank: Mapping, lyndon_count: Mapping):
        self.A = A
        self.H = H
        self.basis = dict(basis)
        self.ideal_rank = dict(ideal_rank)
        self.lyndon_count = dict(lyndon_count)

    def dim(self, beta) -> int:
        c = beta if isinstance(beta, tuple) else self.A.to_tuple(beta)
        return len(self.basis.get(c, ()))

    def roots(self) -> list[Content]:
        return sorted((c for c, b in self.basis.items() if b), key=lambda c: (_height(c), c))

    def to_json(self) -> dict:
        return {
            "gcm": self.A.to_json(),
            "H": self.H,
            "spaces": [{"root": list(c), "dim": len(self.basis[c]),
                        "lyndon": [list(w) for w in self.basis[c]]} for c in self.roots()],
        }


def _content(w, n: int) -> Content:
    out = [0] * n
    for i in w:
        out[i] += 1
    return tuple(out)


def serre_elements(A: GCM) -> list[dict]:
    """(ad f_i)^{1 - a_ij} f_j for i != j, as associative term maps."""
    n = len(A)
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            x = {(j,): Q(1)}
            for _ in range(1 - A.rows[i][j]):
                x = _bracket_terms({(i,): Q(1)}, x)
            out.append(x)
    return out


def serre_quotient_nminus(A: GCM, H: int) -> NminusPresentation:
    n = len(A)
    ideal: dict[int, list[dict]] = {h: [] for h in range(1, H + 1)}
    for s in serre_elements(A):
        h = len(next(iter(s)))
        if h <= H:
            ideal[h].append(s)
    # close under ad f_k, keeping an echelon basis per root
    spaces: dict[Content, EchelonBasis] = {}
    for h in range(1, H + 1):
        for v in ideal[h]:
            c = _content(next(iter(v)), n)
            spaces.setdefault(c, EchelonBasis()).add(v)
        if h == H:
            break
        for c, eb in list(spaces.items()):
            if _height(c) != h:
                continue
            for row, _ in list(eb.rows.values()):
                for k in range(n):
                    y = _bracket_terms({(k,): Q(1)}, row)
                    if y:
                        ideal[h + 1].append(y)
    words = [w for w in lyndon_words_upto(n, H)]
    by_content: dict[Content, list] = {}
    for w in words:
        by_content.setdefault(_content(w, n), []).append(w)
    basis, ranks, counts = {}, {}, {}
    for c, ws in by_content.items():
        eb = EchelonBasis()
        ideal_eb = spaces.get(c)
        if ideal_eb is not None:
            for row, _ in ideal_eb.rows.values():
                eb.add(row)
        r0 = len(eb)
        chosen = []
        for w in sorted(ws):
            if eb.add(bracketing_terms(w)):
                chosen.append(w)
        basis[c] = tuple(chosen)
        ranks[c] = r0
        counts[c] = len(ws)
    return NminusPresentation(A, H, basis, ranks, counts)


# --- integrable highest weight modules -----------------------------------

class HighestWeightModule:
    """Irreducible highest-weight module L(λ), built lazily per weight space.

    A weight space is indexed by its content c (μ = λ − Σ c_i α_i). Basis
    vectors are f-words f_{j1} ... f_{jm}·v chosen greedily; at positive depth
    a vector of L(λ) is zero iff every e_i kills it, so the e-map decides
    linear dependence. ``max_depth`` guards exact computations.
    """

    def __init__(self, A: GCM, lam: Mapping[str, int] | Sequence[int], max_depth: int = 24):
        self.A = A
        if isinstance(lam, Mapping):
            self.lam = tuple(int(lam.get(l, 0)) for l in A.labels)
        else:
            self.lam = tuple(int(x) for x in lam)
        if any(x < 0 for x in self.lam):
            raise KMError("highest weight must be dominant integral")
        self.n = len(A)
        self.max_depth = max_depth
        zero = (0,) * self.n
        self._basis: dict[Content, list] = {zero: [()]}
        self._e: dict[Content, list] = {zero: [[{} for _ in range(self.n)]]}
        # _f[c][b][j] = coords of f_j b in V_{c+e_j}
        self._f: dict[Content, list] = {}

    def weight(self, c: Content) -> tuple[int, ...]:
        """μ(h_i) for μ = λ − Σ c_k α_k."""
        return tuple(self.lam[i] - sum(c[k] * self.A.rows[k][i] for k in range(self.n))
                     for i in range(self.n))

    def basis(self, c: Content) -> list:
        c = tuple(c)
        if c in self._basis:
            return self._basis[c]
        if any(x < 0 for x in c):
            return []
        if _height(c) > self.max_depth:
            raise WindowOverflow(f"weight space at depth {_height(c)} exceeds max_depth {self.max_depth}")
        self._build(c)
        return self._basis[c]

    def dim(self, c: Content) -> int:
        return len(self.basis(c))

    def _unit(self, i: int) -> Content:
        return self.A.simple(i)

    def _build(self, c: Content) -> None:
        n = self.n
        evec_parts = []
        cands = []
        for j in range(n):
            if not c[j]:
                continue
            cj = _sub(c, self._unit(j))
            for b in range(len(self.basis(cj))):
                cands.append((j, b))
        for i in range(n):
            if c[i]:
                self.basis(_sub(c, self._unit(i)))
        eb = EchelonBasis()
        chosen = []
        e_rows = []
        coords_of = {}
        for (j, b) in cands:
            cj = _sub(c, self._unit(j))
            mu = self.weight(cj)
            vec = {}
            for i in range(n):
                if not c[i]:
                    continue
                ci = _sub(c, self._unit(i))
                part: dict = {}
                # f_j (e_i b)
                eib = self._e[cj][b][i]
                if eib:
                    cji = _sub(cj, self._unit(i))
                    fm = self.f_column_map(cji, j)
                    for t, x in eib.items():
                        axpy(part, x, fm[t])
                if i == j and mu[i]:
                    part[b] = part.get(b, 0) + mu[i]
                    if not part[b]:
                        del part[b]
                for t, x in part.items():
                    vec[(i, t)] = x
            tag = len(chosen)
            if eb.add(vec, tag):
                chosen.append((j, b))
                e_rows.append(vec)
                coords_of[(j, b)] = {tag: Q(1)}
            else:
                coords_of[(j, b)] = eb.coordinates(vec)
        # a dependent candidate found before a later basis vector was added
        # keeps valid coordinates: tags only refer to earlier chosen vectors.
        self._basis[c] = [(j,) + self._basis[_sub(c, self._unit(j))][b] for (j, b) in chosen]
        self._e[c] = []
        for vec in e_rows:
            per = [{} for _ in range(n)]
            for (i, t), x in vec.items():
                per[i][t] = x
            self._e[c].append(per)
        for (j, b), co in coords_of.items():
            cj = _sub(c, self._unit(j))
            self._f.setdefault(cj, {}).setdefault(j, {})[b] = co

    def f_column_map(self, c: Content, j: int) -> dict:
        """b -> coords of f_j b in V_{c + α_j} for every basis index b of V_c."""
        c = tuple(c)
        dim = len(self.basis(c))
        target = _add(c, self._unit(j))
        cols = self._f.get(c, {}).get(j)
        if cols is None or len(cols) < dim:
            self.basis(target)
            cols = self._f.get(c, {}).get(j, {})
            if len(cols) < dim:
                # V_target is empty: every f_j b vanishes
                cols = {b: {} for b in range(dim)}
                self._f.setdefault(c, {})[j] = cols
        return cols

    def e_column_map(self, c: Content, i: int) -> dict:
        self.basis(c)
        return {b: self._e[tuple(c)][b][i] for b in range(len(self._basis[tuple(c)]))}

    # vectors are dicts {(content, index): Q}
    def apply(self, kind: str, i: int, vec: Mapping) -> dict:
        out: dict = {}
        for (c, b), x in vec.items():
            if kind == "e":
                if not c[i]:
                    continue
                tgt = _sub(c, self._unit(i))
                img = self.e_column_map(c, i)[b]
            elif kind == "f":
                tgt = _add(c, self._unit(i))
                if _height(tgt) > self.max_depth:
                    raise WindowOverflow(f"f_{self.A.labels[i]} would reach depth {_height(tgt)}")
                img = self.f_column_map(c, i)[b]
            else:
                w = self.weight(c)[i]
                if w:
                    k = (c, b)
                    out[k] = out.get(k, 0) + x * w
                    if not out[k]:
                        del out[k]
                continue
            for t, y in img.items():
                k = (tgt, t)
                v = out.get(k, 0) + x * y
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def contents(self, depth: int) -> list[Content]:
        """Contents of nonzero weight spaces at total depth <= ``depth``."""
        return [c for c in [(0,) * self.n] + _contents_upto(self.n, depth) if self.basis(c)]

    def gram(self, c: Content) -> list[list[Q]]:
        """Shapovalov form on the basis of V_c, with ⟨v, v⟩ = 1."""
        c = tuple(c)
        return [list(r) for r in self._gram(c)]

    def _gram(self, c: Content):
        if not hasattr(self, "_gram_cache"):
            self._gram_cache = {}
        hit = self._gram_cache.get(c)
        if hit is not None:
            return hit
        B = self.basis(c)
        if not any(c):
            G = ((Q(1),),)
        else:
            rows = []
            for a, word in enumerate(B):
                j = word[0]
                cj = _sub(c, self._unit(j))
                sub_idx = self._basis[cj].index(word[1:])
                Gs = self._gram(cj)
                ecols = self.e_column_map(c, j)
                row = []
                for y in range(len(B)):
                    ey = ecols[y]
                    row.append(sum((Gs[sub_idx][t] * x for t, x in ey.items()), Q(0)))
                rows.append(tuple(row))
            G = tuple(rows)
        self._gram_cache[c] = G
        return G

    def ladder_violations(self, depth: int) -> list:
        """Vectors whose f_i-ladder outruns the sl2 bound μ(h_i) + (e_i steps)."""
        bad = []
        for c in self.contents(depth):
            mu = self.weight(c)
            for b in range(self.dim(c)):
                for i in range(self.n):
                    p = _steps(self, "e", i, {(c, b): Q(1)})
                    try:
                        q = _steps(self, "f", i, {(c, b): Q(1)})
                    except WindowOverflow:
                        bad.append((c, b, self.A.labels[i], "overflow"))
                        continue
                    if q > mu[i] + p:
                        bad.append((c, b, self.A.labels[i], q))
        return bad


def _steps(M: HighestWeightModule, kind: str, i: int, v: dict) -> int:
    k = 0
    while True:
        v = M.apply(kind, i, v)
        if not v:
            return k
        k += 1


def build_irreducible(A: GCM, lam, d: int, max_depth: int | None = None) -> "IrreducibleModuleTruncation":
    return IrreducibleModuleTruncation(HighestWeightModule(A, lam, max_depth or max(24, d + 1)), d)


class IrreducibleModuleTruncation:
    """The weight spaces of depth <= d of an irreducible module."""

    def __init__(self, module: HighestWeightModule, d: int):
        self.module = module
        self.d = d
        self.contents = module.contents(d)

    @property
    def A(self) -> GCM:
        return self.module.A

    @property
    def lam(self):
        return self.module.lam

    def dims(self) -> dict[Content, int]:
        return {c: self.module.dim(c) for c in self.contents}

    def dims_by_depth(self) -> list[int]:
        out = [0] * (self.d + 1)
        for c in self.contents:
            out[_height(c)] += self.module.dim(c)
        return out

    def vectors(self) -> list[tuple[Content, int]]:
        return [(c, b) for c in self.contents for b in range(self.module.dim(c))]

    def to_json(self) -> dict:
        m = self.module
        return {
            "gcm": m.A.to_json(),
            "lambda": list(m.lam),
            "depth": self.d,
            "spaces": [{"content": list(c), "basis": [list(w) for w in m.basis(c)]}
                       for c in self.contents],
        }


# --- prenilpotent pairs (rank 2) -----------------------------------------

def is_prenilpotent(A: GCM, alpha: RootVector, beta: RootVector) -> bool:
    """Rank-2 criterion: α ≠ −β and both real roots lie on the same branch.

    For finite type every pair with α ≠ −β is prenilpotent. For symmetric
    hyperbolic rank 2 (a_12 <= −3) the real roots lie on the two branches of
    (x,x) = 2 separated by the line m = n; the branch of mα₁+nα₂ is
    sign(m − n).
    """
    if len(A) > 2:
        raise KMError("is_prenilpotent is implemented for rank <= 2 GCMs")
    a, b = A.to_tuple(alpha), A.to_tuple(beta)
    if len(A) == 1:
        return a != tuple(-x for x in b)
    for r, name in ((a, "alpha"), (b, "beta")):
        if not is_real_root(A, A.to_root(r)):
            raise KMError(f"{name} = {r} is not a real root")
    if a == tuple(-x for x in b):
        return False
    off = A.rows[0][1]
    if off * off < 4:
        return True
    if off * off == 4:
        raise KMError("affine rank 2: window too small to certify prenilpotency")

    def branch(r):
        return (r[0] > r[1]) - (r[0] < r[1])
    return branch(a) == branch(b)


def pair_real_roots(A: GCM, alpha: RootVector, beta: RootVector, bound: int) -> list[tuple[int, int]]:
    """(m, n) with 1 <= m, n <= bound and mα + nβ a real root."""
    a, b = A.to_tuple(alpha), A.to_tuple(beta)
    out = []
    for m, n in product(range(1, bound + 1), repeat=2):
        r = tuple(m * x + n * y for x, y in zip(a, b))
        if is_real_root(A, A.to_root(r)):
            out.append((m, n))
    return out
