"""Free Lie algebra in the Lyndon basis, and exp/log/BCH in the Magnus algebra.

Lie elements are stored by their coefficients on the right-standard
bracketings of Lyndon words.  Truncation degree is always explicit.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from math import factorial
from typing import Mapping

from .algebra import (
    Q,
    AlgebraError, Alphabet, NcPolynomial, Word, _check_same, as_scalar, poly_mul, scalar_str,
)


class NotLieError(AlgebraError):
    """Raised when a polynomial has a non-Lie homogeneous component."""

    def __init__(self, msg: str, degree: int | None = None):
        super().__init__(msg)
        self.degree = degree


# --- Lyndon words ---------------------------------------------------------

def is_lyndon(w: Word) -> bool:
    n = len(w)
    if n == 0:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, n))


def lyndon_words_upto(k: int, n: int) -> list[Word]:
    """All Lyndon words of length <= n over letters 0..k-1, lex order (Duval)."""
    out: list[Word] = []
    if k <= 0 or n <= 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def lyndon_words(alphabet: Alphabet | int, n: int) -> list[Word]:
    """Lyndon words of length exactly ``n`` in lexicographic order."""
    k = alphabet if isinstance(alphabet, int) else len(alphabet)
    return [w for w in lyndon_words_upto(k, n) if len(w) == n]


def mobius(n: int) -> int:
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt_dimension(k: int, n: int) -> int:
    s = sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return s // n


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise AlgebraError("words of length < 2 have no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AlgebraError(f"{w} is not a Lyndon word")  # pragma: no cover


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            v = out.get(w, 0) + c1 * c2
            if v:
                out[w] = v
            else:
                del out[w]
    return out


def _bracket_terms(a: Mapping, b: Mapping) -> dict:
    out = _mul_terms(a, b)
    for w, c in _mul_terms(b, a).items():
        v = out.get(w, 0) - c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


@lru_cache(maxsize=None)
def _bracketing_terms(w: Word) -> tuple:
    if len(w) == 1:
        return ((w, Q(1)),)
    u, v = standard_factorization(w)
    return tuple(sorted(_bracket_terms(dict(_bracketing_terms(u)), dict(_bracketing_terms(v))).items()))


def bracketing_terms(w: Word) -> dict:
    return dict(_bracketing_terms(tuple(w)))


def bracketing(alphabet: Alphabet, w: Word, truncation: int | None = None) -> NcPolynomial:
    """Expansion of the right-standard bracketing of a Lyndon word."""
    w = tuple(w)
    if not is_lyndon(w):
        raise AlgebraError(f"{w} is not a Lyndon word")
    n = len(w) if truncation is None else truncation
    return NcPolynomial(alphabet, bracketing_terms(w), n)


# --- Lie membership -------------------------------------------------------

def _left_normed(w: Word) -> dict:
    acc = {w[:1]: Q(1)}
    for x in w[1:]:
        acc = _bracket_terms(acc, {(x,): Q(1)})
    return acc


def dsw_project(p: NcPolynomial) -> NcPolynomial:
    """Dynkin–Specht–Wever map x1...xn -> [..[[x1,x2],x3],..,xn]."""
    if p.constant_term():
        raise AlgebraError("dsw_project needs a polynomial without constant term")
    acc: dict = {}
    for w, c in p.terms.items():
        for u, d in _left_normed(w).items():
            v = acc.get(u, 0) + c * d
            if v:
                acc[u] = v
            else:
                acc.pop(u, None)
    return NcPolynomial(p.alphabet, acc, p.truncation, _trusted=True)


def is_lie(p: NcPolynomial) -> bool:
    if p.constant_term():
        return False
    proj = dsw_project(p)
    for w, c in p.terms.items():
        if proj.terms.get(w, 0) != len(w) * c:
            return False
    for w, c in proj.terms.items():
        if p.terms.get(w, 0) * len(w) != c:
            return False
    return True


def lyndon_coordinates(p: NcPolynomial) -> dict:
    """Coefficients on Lyndon bracketings; raises NotLieError with a witness degree."""
    if p.constant_term():
        raise NotLieError("constant term present", 0)
    rest = dict(p.terms)
    coords: dict = {}
    heap = [(len(u), u) for u in rest]
    heapq.heapify(heap)
    while heap:
        _, w = heapq.heappop(heap)
        if w not in rest:
            continue
        if not is_lyndon(w):
            raise NotLieError(f"degree-{len(w)} component is not a Lie element (word {w})", len(w))
        c = rest[w]
        coords[w] = c
        for u, d in _bracketing_terms(w):
            if u not in rest:
                heapq.heappush(heap, (len(u), u))
            v = rest.get(u, 0) - c * d
            if v:
                rest[u] = v
            else:
                rest.pop(u, None)
        rest.pop(w, None)
    return coords


# --- Lie series -----------------------------------------------------------

class LieSeries:
    """Truncated element of the completed free Lie algebra, in Lyndon coordinates."""

    __slots__ = ("alphabet", "coords", "truncation", "_poly")

    def __init__(self, alphabet: Alphabet, coords: Mapping[Word, Q] | None = None,
                 truncation: int = 1, *, _trusted: bool = False):
        self.alphabet = alphabet
        self.truncation = truncation
        self._poly = None
        if _trusted:
            self.coords = coords
            return
        clean = {}
        for w, c in (coords or {}).items():
            w = tuple(w)
            c = as_scalar(c)
            if not is_lyndon(w):
                raise AlgebraError(f"{w} is not a Lyndon word")
            if any(not 0 <= i < len(alphabet) for i in w):
                raise AlgebraError(f"word {w} uses ids outside the alphabet")
            if c and len(w) <= truncation:
                clean[w] = clean.get(w, 0) + c
        self.coords = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls, alphabet: Alphabet, truncation: int) -> "LieSeries":
        return cls(alphabet, {}, truncation, _trusted=True)

    @classmethod
    def gen(cls, alphabet: Alphabet, i: int | str, truncation: int, coeff=1) -> "LieSeries":
        if isinstance(i, str):
            i = alphabet.by_label(i).id
        return cls(alphabet, {(i,): coeff}, truncation)

    @classmethod
    def from_poly(cls, p: NcPolynomial, truncation: int | None = None) -> "LieSeries":
        n = p.truncation if truncation is None else truncation
        coords = lyndon_coordinates(p.truncate(n) if n < p.truncation else p)
        return cls(p.alphabet, {w: c for w, c in coords.items() if len(w) <= n}, n,
                   _trusted=True)

    def to_poly(self, n: int | None = None) -> NcPolynomial:
        n = self.truncation if n is None else min(n, self.truncation)
        if self._poly is not None and n == self.truncation:
            return self._poly
        acc: dict = {}
        for w, c in self.coords.items():
            if len(w) > n:
                continue
            for u, d in _bracketing_terms(w):
                v = acc.get(u, 0) + c * d
                if v:
                    acc[u] = v
                else:
                    acc.pop(u, None)
        p = NcPolynomial(self.alphabet, acc, n, _trusted=True)
        if n == self.truncation:
            self._poly = p
        return p

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def degrees(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for w, c in self.coords.items():
            out.setdefault(len(w), {})[w] = c
        return out

    def homogeneous(self, n: int) -> "LieSeries":
        return LieSeries(self.alphabet, {w: c for w, c in self.coords.items() if len(w) == n},
                         self.truncation, _trusted=True)

    def truncate(self, n: int) -> "LieSeries":
        n = min(n, self.truncation)
        return LieSeries(self.alphabet, {w: c for w, c in self.coords.items() if len(w) <= n},
                         n, _trusted=True)

    def _combine(self, other: "LieSeries", sign: int) -> "LieSeries":
        _check_same(self.alphabet, other.alphabet)
        n = min(self.truncation, other.truncation)
        acc = {w: c for w, c in self.coords.items() if len(w) <= n}
        for w, c in other.coords.items():
            if len(w) > n:
                continue
            v = acc.get(w, 0) + sign * c
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
        return LieSeries(self.alphabet, acc, n, _trusted=True)

    def __add__(self, other: "LieSeries") -> "LieSeries":
        return self._combine(other, 1)

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        return self._combine(other, -1)

    def __neg__(self) -> "LieSeries":
        return self.scale(-1)

    def scale(self, c) -> "LieSeries":
        c = as_scalar(c)
        if not c:
            return LieSeries.zero(self.alphabet, self.truncation)
        return LieSeries(self.alphabet, {w: c * v for w, v in self.coords.items()},
                         self.truncation, _trusted=True)

    def bracket(self, other: "LieSeries", n: int | None = None) -> "LieSeries":
        if n is None:
            n = min(self.truncation, other.truncation)
        a, b = self.to_poly(n), other.to_poly(n)
        return LieSeries.from_poly(poly_mul(a, b, n) - poly_mul(b, a, n), n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.alphabet == other.alphabet and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self) -> str:
        parts = []
        for w, c in sorted(self.coords.items(), key=lambda t: (len(t[0]), t[0])):
            lab = "".join(self.alphabet[i].label if len(w) == 1 else f"[{self.alphabet[i].label}]"
                          for i in w)
            parts.append(f"{c}*{lab}")
        return f"LieSeries({' + '.join(parts) or '0'}, N={self.truncation})"

    def to_json(self) -> dict:
        degs = {}
        for n, d in sorted(self.degrees().items()):
            degs[str(n)] = [{"lyndon": list(w), "coeff": scalar_str(c)} for w, c in sorted(d.items())]
        return {"degrees": degs, "truncation": self.truncation}

    @classmethod
    def from_json(cls, alphabet: Alphabet, d: dict) -> "LieSeries":
        coords = {}
        for n, items in d["degrees"].items():
            for t in items:
                w = tuple(int(i) for i in t["lyndon"])
                if len(w) != int(n):
                    raise AlgebraError(f"Lyndon word {w} filed under degree {n}")
                if w in coords:
                    raise AlgebraError(f"duplicate Lyndon word {w}")
                coords[w] = as_scalar(t["coeff"])
        return cls(alphabet, coords, int(d["truncation"]))


# --- exp / log / BCH ------------------------------------------------------

def exp_poly(x: NcPolynomial, n: int) -> NcPolynomial:
    if x.constant_term():
        raise AlgebraError("exp needs a series without constant term")
    x = x.with_truncation(n) if x.truncation != n else x
    result = NcPolynomial.one(x.alphabet, n)
    power = NcPolynomial.one(x.alphabet, n)
    for k in range(1, n + 1):
        power = poly_mul(power, x, n)
        if power.is_zero():
            break
        result = result + power.scale(Q(1, factorial(k)))
    return result


def log_poly(u: NcPolynomial, n: int) -> NcPolynomial:
    if u.constant_term() != 1:
        raise AlgebraError("log needs constant term 1")
    u = u.with_truncation(n) if u.truncation != n else u
    y = u - NcPolynomial.one(u.alphabet, n)
    result = NcPolynomial.zero(u.alphabet, n)
    power = NcPolynomial.one(u.alphabet, n)
    for k in range(1, n + 1):
        power = poly_mul(power, y, n)
        if power.is_zero():
            break
        result = result + power.scale(Q((-1) ** (k + 1), k))
    return result


def exp(L: LieSeries, n: int | None = None) -> NcPolynomial:
    n = L.truncation if n is None else n
    if L.truncation < n:
        raise AlgebraError(f"Lie series known only to degree {L.truncation} < {n}")
    return exp_poly(L.to_poly(n), n)


def log(u: NcPolynomial, n: int | None = None) -> LieSeries:
    """Logarithm in Lyndon coordinates; NotLieError if the result is not Lie."""
    n = u.truncation if n is None else n
    return LieSeries.from_poly(log_poly(u, n), n)


@lru_cache(maxsize=None)
def bch_template(n: int) -> tuple:
    """Lyndon coordinates of log(exp X exp Y) over {X < Y} up to degree n."""
    xy = Alphabet.from_labels(["X", "Y"])
    u = poly_mul(exp_poly(NcPolynomial.gen(xy, 0, n), n), exp_poly(NcPolynomial.gen(xy, 1, n), n), n)
    coords = lyndon_coordinates(log_poly(u, n))
    return tuple(sorted(coords.items(), key=lambda t: (len(t[0]), t[0])))


def _low_degree(terms: Mapping) -> int:
    return min(len(w) for w in terms)


def bch(a: LieSeries, b: LieSeries, n: int | None = None) -> LieSeries:
    """log(exp a · exp b), evaluated as the two-letter BCH template in a and b."""
    _check_same(a.alphabet, b.alphabet)
    if n is None:
        n = min(a.truncation, b.truncation)
    if a.truncation < n or b.truncation < n:
        raise AlgebraError("inputs are truncated below the requested degree")
    if a.is_zero():
        return b.truncate(n)
    if b.is_zero():
        return a.truncate(n)
    letters = (a.to_poly(n).terms, b.to_poly(n).terms)
    memo: dict = {}

    def ev(w):
        hit = memo.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            out = letters[w[0]]
        else:
            u, v = standard_factorization(w)
            p, q = ev(u), ev(v)
            if not p or not q or _low_degree(p) + _low_degree(q) > n:
                out = {}
            else:
                out = _truncated_bracket(p, q, n)
        memo[w] = out
        return out

    acc: dict = {}
    for w, c in bch_template(n):
        t = ev(w)
        if t:
            axpy_terms(acc, c, t)
    return LieSeries(a.alphabet, lyndon_coordinates(NcPolynomial(a.alphabet, acc, n, _trusted=True)),
                     n, _trusted=True)


def _truncated_bracket(p: Mapping, q: Mapping, n: int) -> dict:
    out: dict = {}
    for x, y, sign in ((p, q, 1), (q, p, -1)):
        by_len: dict = {}
        for w, c in y.items():
            by_len.setdefault(len(w), []).append((w, c))
        for w1, c1 in x.items():
            room = n - len(w1)
            for ln, items in by_len.items():
                if ln > room:
                    continue
                for w2, c2 in items:
                    w = w1 + w2
                    v = out.get(w, 0) + sign * c1 * c2
                    if v:
                        out[w] = v
                    else:
                        del out[w]
    return out


def axpy_terms(acc: dict, c, terms: Mapping) -> None:
    for w, x in terms.items():
        v = acc.get(w, 0) + c * x
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def bch_series(a: LieSeries, b: LieSeries, n: int | None = None) -> LieSeries:
    """log(exp a · exp b) by direct series expansion (slower reference route)."""
    _check_same(a.alphabet, b.alphabet)
    if n is None:
        n = min(a.truncation, b.truncation)
    return log(poly_mul(exp(a, n), exp(b, n), n), n)
