"""Action of g_J by derivations on A(S') and of group words by automorphisms.

A ``GeneratorActionTable`` stores, for every Chevalley generator of g_J, its
image on each formal variable as a linear combination of formal variables.
Everything else (Leibniz extension, exponentials, torus elements, Ad of
words) is derived from those rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Union

from .algebra import (
    Q,
    AlgebraError, Alphabet, NcPolynomial, RootVector, ZERO_ROOT, _check_same, as_scalar,
    scalar_str, word_degree,
)
from .freelie import LieSeries, lyndon_coordinates
from .linalg import axpy

LinMap = dict  # gen id -> {gen id: Q}


class ActionError(AlgebraError):
    pass


class LadderOverflow(ActionError):
    pass


@dataclass(frozen=True)
class ActionRow:
    label: str
    kind: str  # "e", "f" or "h"
    index: str  # simple-root index in J
    images: Mapping[int, Mapping[int, Q]]

    @property
    def root(self) -> RootVector:
        if self.kind == "e":
            return RootVector({self.index: 1})
        if self.kind == "f":
            return RootVector({self.index: -1})
        return ZERO_ROOT


def e_label(i: str) -> str:
    return f"e_{{{i}}}"


def f_label(i: str) -> str:
    return f"f_{{{i}}}"


def h_label(i: str) -> str:
    return f"h_{{{i}}}"


class GeneratorActionTable:
    """Derivation rows of g_J on the formal variables of an alphabet.

    ``cartan[(i, j)]`` is a_ij of the generalized Cartan matrix on J.
    ``interior`` lists generators on which the truncated rows agree with the
    true module action (all generators for finite modules).
    """

    def __init__(self, alphabet: Alphabet, simple: Iterable[str], cartan: Mapping,
                 rows: Iterable[ActionRow], interior: Iterable[int] | None = None):
        self.alphabet = alphabet
        self.simple = tuple(str(i) for i in simple)
        self.cartan = {(str(i), str(j)): int(v) for (i, j), v in cartan.items()}
        self.rows: dict[str, ActionRow] = {}
        for r in rows:
            self.rows[r.label] = ActionRow(
                r.label, r.kind, str(r.index),
                {int(s): {int(t): as_scalar(c) for t, c in img.items() if as_scalar(c)}
                 for s, img in r.images.items()})
        self.interior = frozenset(range(len(alphabet)) if interior is None else interior)
        self._word_cache: dict = {}
        self._check_homogeneous()
        self.ladder = self._ladder_bounds()

    # -- validation ---------------------------------------------------------
    def _check_homogeneous(self) -> None:
        for r in self.rows.values():
            for s, img in r.images.items():
                want = self.alphabet[s].degree + r.root
                for t in img:
                    if self.alphabet[t].degree != want:
                        raise ActionError(
                            f"{r.label}∘{self.alphabet[s].label} contains "
                            f"{self.alphabet[t].label} of the wrong degree")
            if r.kind == "h":
                for s, img in r.images.items():
                    if set(img) - {s}:
                        raise ActionError(f"Cartan row {r.label} is not diagonal")

    def _ladder_bounds(self) -> dict:
        """Nilpotency length of each e/f row on each generator."""
        out = {}
        n = len(self.alphabet)
        for r in self.rows.values():
            if r.kind == "h":
                continue
            for s in range(n):
                v = {s: Q(1)}
                k = 0
                while v:
                    if k > n:
                        raise ActionError(f"{r.label} is not nilpotent on {self.alphabet[s].label}")
                    v = self._apply_lin(r.images, v)
                    k += 1
                out[(r.label, s)] = k - 1
        return out

    # -- basic access -------------------------------------------------------
    def row(self, label: str) -> ActionRow:
        try:
            return self.rows[label]
        except KeyError:
            raise ActionError(f"unknown g_J generator {label!r}") from None

    def cartan_labels(self) -> list[str]:
        return [r.label for r in self.rows.values() if r.kind == "h"]

    def weight(self, h: str, gen: int) -> Q:
        row = self.row(h)
        return row.images.get(gen, {}).get(gen, Q(0))

    @staticmethod
    def _apply_lin(images: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for s, c in v.items():
            img = images.get(s)
            if img:
                axpy(out, c, img)
        return out

    def row_matrix(self, label: str) -> LinMap:
        r = self.row(label)
        return {s: dict(img) for s, img in r.images.items() if img}

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        rows = {}
        for r in self.rows.values():
            entries = []
            for s in sorted(r.images):
                img = NcPolynomial(self.alphabet, {(t,): c for t, c in r.images[s].items()}, 1)
                if img:
                    entries.append({"generator": s, "image": img.to_json()})
            rows[r.label] = {"kind": r.kind, "index": r.index, "entries": entries}
        return {
            "simple": list(self.simple),
            "cartan": [[self.cartan[(i, j)] for j in self.simple] for i in self.simple],
            "rows": rows,
            "interior": sorted(self.interior),
        }

    @classmethod
    def from_json(cls, alphabet: Alphabet, d: dict) -> "GeneratorActionTable":
        simple = d["simple"]
        cartan = {(i, j): d["cartan"][a][b] for a, i in enumerate(simple) for b, j in enumerate(simple)}
        rows = []
        for label, r in d["rows"].items():
            images = {}
            for e in r["entries"]:
                p = NcPolynomial.from_json(alphabet, e["image"])
                if any(len(w) != 1 for w in p.terms):
                    raise ActionError(f"image of generator {e['generator']} under {label} is not linear")
                images[int(e["generator"])] = {w[0]: c for w, c in p.terms.items()}
            rows.append(ActionRow(label, r["kind"], r["index"], images))
        return cls(alphabet, simple, cartan, rows, d.get("interior"))


# --- derivations on polynomials ------------------------------------------

def _derive_terms(images: Mapping, terms: Mapping) -> dict:
    out: dict = {}
    for w, c in terms.items():
        for j, s in enumerate(w):
            img = images.get(s)
            if not img:
                continue
            head, tail = w[:j], w[j + 1:]
            for t, d in img.items():
                u = head + (t,) + tail
                v = out.get(u, 0) + c * d
                if v:
                    out[u] = v
                else:
                    del out[u]
    return out


def derive(table: GeneratorActionTable, x: str, p: NcPolynomial) -> NcPolynomial:
    """Leibniz extension of the row ``x`` to all words of ``p``."""
    _check_same(table.alphabet, p.alphabet)
    r = table.row(x)
    return NcPolynomial(p.alphabet, _derive_terms(r.images, p.terms), p.truncation, _trusted=True)


def act_enveloping(table: GeneratorActionTable, element, p: NcPolynomial) -> NcPolynomial:
    """Action of an element of U(g_J) given as [(coeff, [labels...]), ...].

    A monomial x1 x2 ... xk acts as x1∘(x2∘(...(xk∘p))).
    """
    acc = NcPolynomial.zero(p.alphabet, p.truncation)
    for coeff, labels in element:
        q = p
        for lab in reversed(list(labels)):
            q = derive(table, lab, q)
        acc = acc + q.scale(coeff)
    return acc


def exp_derivation(table: GeneratorActionTable, x: str, u, p: NcPolynomial) -> NcPolynomial:
    """Sum_k (u x)^k ∘ p / k!, which terminates by local nilpotency."""
    _check_same(table.alphabet, p.alphabet)
    r = table.row(x)
    if r.kind == "h":
        raise ActionError("Cartan exponentials are only available in torus form (torus_apply)")
    u = as_scalar(u)
    if not u or p.is_zero():
        return p
    bound = max(sum(table.ladder[(x, s)] for s in w) for w in p.terms)
    total = dict(p.terms)
    term = dict(p.terms)
    k = 0
    while term:
        k += 1
        term = _derive_terms(r.images, term)
        if term and k > bound:
            raise LadderOverflow(f"{x} exceeded its ladder bound {bound}; invalid action table")
        axpy(total, u ** k / factorial(k), term)
    return NcPolynomial(p.alphabet, total, p.truncation, _trusted=True)


def torus_apply(table: GeneratorActionTable, h: str, s, p: NcPolynomial) -> NcPolynomial:
    """Scale each word of weight mu by s**mu(h)."""
    _check_same(table.alphabet, p.alphabet)
    s = as_scalar(s)
    if not s:
        raise ActionError("torus parameter must be nonzero")
    table.row(h)
    out = {}
    for w, c in p.terms.items():
        mu = sum((table.weight(h, i) for i in w), Q(0))
        if mu.denominator != 1:
            raise ActionError(f"weight {mu} of {h} is not integral; s**mu may be irrational")
        out[w] = c * s ** int(mu)
    return NcPolynomial(p.alphabet, out, p.truncation, _trusted=True)


# --- group words ----------------------------------------------------------

@dataclass(frozen=True)
class ExpGen:
    gen: str
    u: Q

    def inverse(self) -> "ExpGen":
        return ExpGen(self.gen, -self.u)

    def to_json(self) -> dict:
        return {"kind": "exp", "gen": self.gen, "u": scalar_str(self.u)}


@dataclass(frozen=True)
class Torus:
    h: str
    s: Q

    def __post_init__(self):
        if not self.s:
            raise ActionError("torus parameter must be nonzero")

    def inverse(self) -> "Torus":
        return Torus(self.h, 1 / self.s)

    def to_json(self) -> dict:
        return {"kind": "torus", "h": self.h, "s": scalar_str(self.s)}


Letter = Union[ExpGen, Torus]


def exp_letter(gen: str, u) -> ExpGen:
    return ExpGen(gen, as_scalar(u))


def torus_letter(h: str, s) -> Torus:
    return Torus(h, as_scalar(s))


class KMGroupWord(tuple):
    """Finite word of elementary automorphisms; () is the identity."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        return super().__new__(cls, tuple(letters))

    def __mul__(self, other: "KMGroupWord") -> "KMGroupWord":
        return KMGroupWord(tuple(self) + tuple(other))

    def inverse(self) -> "KMGroupWord":
        return KMGroupWord(l.inverse() for l in reversed(self))

    def to_json(self) -> list:
        return [l.to_json() for l in self]

    @classmethod
    def from_json(cls, data: list) -> "KMGroupWord":
        letters = []
        for i, d in enumerate(data):
            kind = d.get("kind")
            if kind == "exp":
                letters.append(ExpGen(str(d["gen"]), as_scalar(d["u"])))
            elif kind == "torus":
                letters.append(Torus(str(d["h"]), as_scalar(d["s"])))
            else:
                raise ActionError(f"letter {i}: unknown kind {kind!r}")
        return cls(letters)

    def __repr__(self) -> str:
        parts = []
        for l in self:
            if isinstance(l, ExpGen):
                parts.append(f"exp({l.u}·{l.gen})")
            else:
                parts.append(f"{l.h}({l.s})")
        return "·".join(parts) or "1"


def letter_matrix(table: GeneratorActionTable, letter: Letter) -> LinMap:
    key = ("letter", letter)
    hit = table._word_cache.get(key)
    if hit is not None:
        return hit
    n = len(table.alphabet)
    m: LinMap = {}
    if isinstance(letter, Torus):
        table.row(letter.h)
        for s in range(n):
            mu = table.weight(letter.h, s)
            if mu.denominator != 1:
                raise ActionError(f"non-integral weight {mu} for torus {letter.h}")
            m[s] = {s: letter.s ** int(mu)}
    else:
        r = table.row(letter.gen)
        if r.kind == "h":
            raise ActionError("use a torus letter for Cartan generators")
        for s in range(n):
            total = {s: Q(1)}
            term = {s: Q(1)}
            k = 0
            while term:
                k += 1
                term = table._apply_lin(r.images, term)
                axpy(total, letter.u ** k / factorial(k), term)
            m[s] = total
    table._word_cache[key] = m
    return m


def compose(a: LinMap, b: LinMap) -> LinMap:
    """(a ∘ b)(s) = a(b(s))."""
    out = {}
    for s, img in b.items():
        acc: dict = {}
        for t, c in img.items():
            axpy(acc, c, a.get(t, {}))
        out[s] = acc
    return out


def word_matrix(table: GeneratorActionTable, g: KMGroupWord) -> LinMap:
    """Linear map on span(S') of Ad(g); the rightmost letter acts first."""
    key = ("word", tuple(g))
    hit = table._word_cache.get(key)
    if hit is not None:
        return hit
    n = len(table.alphabet)
    m: LinMap = {s: {s: Q(1)} for s in range(n)}
    for letter in g:
        m = compose(m, letter_matrix(table, letter))
    table._word_cache[key] = m
    if len(table._word_cache) > 20000:
        table._word_cache.clear()
    return m


def is_identity_map(m: LinMap, gens: Iterable[int]) -> bool:
    return all(m.get(s, {}) == {s: 1} for s in gens)


def words_equal(table: GeneratorActionTable, g1: KMGroupWord, g2: KMGroupWord,
                gens: Iterable[int] | None = None) -> bool:
    m1, m2 = word_matrix(table, g1), word_matrix(table, g2)
    gens = range(len(table.alphabet)) if gens is None else gens
    return all(m1.get(s, {}) == m2.get(s, {}) for s in gens)


def substitute(m: LinMap, p: NcPolynomial) -> NcPolynomial:
    """Algebra endomorphism determined by generator images ``m``."""
    out: dict = {}
    for w, c in p.terms.items():
        partial = {(): c}
        for s in w:
            img = m.get(s, {})
            nxt: dict = {}
            for u, a in partial.items():
                for t, b in img.items():
                    key = u + (t,)
                    v = nxt.get(key, 0) + a * b
                    if v:
                        nxt[key] = v
                    else:
                        del nxt[key]
            partial = nxt
            if not partial:
                break
        for u, a in partial.items():
            v = out.get(u, 0) + a
            if v:
                out[u] = v
            else:
                del out[u]
    return NcPolynomial(p.alphabet, out, p.truncation, _trusted=True)


def act_poly(table: GeneratorActionTable, g: KMGroupWord, p: NcPolynomial) -> NcPolynomial:
    _check_same(table.alphabet, p.alphabet)
    if not g:
        return p
    return substitute(word_matrix(table, g), p)


def ad_group(table: GeneratorActionTable, g: KMGroupWord, L: LieSeries) -> LieSeries:
    """Ad(g) on a Lie series; the image is Lie because letters are automorphisms."""
    _check_same(table.alphabet, L.alphabet)
    if not g or L.is_zero():
        return L
    m = word_matrix(table, g)
    if all(len(w) == 1 for w in L.coords):
        acc: dict = {}
        for w, c in L.coords.items():
            for t, d in m.get(w[0], {}).items():
                v = acc.get((t,), 0) + c * d
                if v:
                    acc[(t,)] = v
                else:
                    acc.pop((t,), None)
        return LieSeries(L.alphabet, acc, L.truncation, _trusted=True)
    image = substitute(m, L.to_poly())
    coords = lyndon_coordinates(image)
    return LieSeries(L.alphabet, coords, L.truncation, _trusted=True)


def support_roots(L: LieSeries | NcPolynomial) -> set[RootVector]:
    if isinstance(L, LieSeries):
        return {word_degree(L.alphabet, w) for w in L.coords}
    return L.root_degrees()


# --- table consistency ----------------------------------------------------

def _commutator_on(table, x: str, y: str, s: int) -> dict:
    rx, ry = table.row(x).images, table.row(y).images
    v = {s: Q(1)}
    a = table._apply_lin(rx, table._apply_lin(ry, v))
    b = table._apply_lin(ry, table._apply_lin(rx, v))
    axpy(a, Q(-1), b)
    return a


def check_commutation(table: GeneratorActionTable, gens: Iterable[int] | None = None) -> list:
    """Violations of [e_i,f_j] = δ h_i and [h_k, e_i] = ±a_ki e_i on the rows.

    Returns a list of (relation, generator label) witnesses.
    """
    gens = sorted(table.interior) if gens is None else list(gens)
    bad = []
    J = table.simple
    for i in J:
        for j in J:
            for s in gens:
                v = _commutator_on(table, e_label(i), f_label(j), s)
                if i == j:
                    axpy(v, Q(-1), table.row(h_label(i)).images.get(s, {}))
                if v:
                    bad.append((f"[{e_label(i)},{f_label(j)}]", table.alphabet[s].label))
        for k in J:
            a = table.cartan[(i, k)]  # alpha_k(h_i) = a_ik
            for kind, sign in (("e", 1), ("f", -1)):
                lab = e_label(k) if kind == "e" else f_label(k)
                for s in gens:
                    v = _commutator_on(table, h_label(i), lab, s)
                    axpy(v, Q(-sign * a), table.row(lab).images.get(s, {}))
                    if v:
                        bad.append((f"[{h_label(i)},{lab}]", table.alphabet[s].label))
    return bad
