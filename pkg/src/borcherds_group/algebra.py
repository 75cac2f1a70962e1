"""Exact sparse arithmetic in the free associative algebra on a graded alphabet.

Words are tuples of integer generator ids.  Polynomials map words to nonzero
exact rational coefficients and carry a word-length truncation bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq as Q
from typing import Iterable, Mapping

Word = tuple  # tuple[int, ...]


class AlgebraError(ValueError):
    pass


class AlphabetMismatch(AlgebraError):
    pass


def as_scalar(x) -> Q:
    """Exact rational scalar (GMP-backed ``mpq``); strings use the p/q form."""
    if isinstance(x, Q):
        return x
    if isinstance(x, str):
        return Q(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Q(x)


def scalar_str(c) -> str:
    return str(Q(c))


class RootVector:
    """Finitely supported integer vector on simple-root indices (strings)."""

    __slots__ = ("_items", "_hash")

    def __init__(self, coords: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(coords, Mapping):
            coords = coords.items()
        acc: dict[str, int] = {}
        for k, v in coords:
            v = int(v)
            if v:
                acc[str(k)] = acc.get(str(k), 0) + v
        self._items = tuple(sorted((k, v) for k, v in acc.items() if v))
        self._hash = hash(self._items)

    @classmethod
    def simple(cls, index: str, coeff: int = 1) -> "RootVector":
        return cls({index: coeff})

    def coords(self) -> dict[str, int]:
        return dict(self._items)

    def __getitem__(self, key: str) -> int:
        return dict(self._items).get(str(key), 0)

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self._items)

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(self._items + other._items)

    def __neg__(self) -> "RootVector":
        return RootVector((k, -v) for k, v in self._items)

    def __sub__(self, other: "RootVector") -> "RootVector":
        return self + (-other)

    def __mul__(self, n: int) -> "RootVector":
        return RootVector((k, n * v) for k, v in self._items)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, RootVector) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._items)

    def height(self) -> int:
        return sum(v for _, v in self._items)

    def __repr__(self) -> str:
        if not self._items:
            return "0"
        parts = []
        for k, v in self._items:
            parts.append(f"{v}·α[{k}]" if v != 1 else f"α[{k}]")
        return " + ".join(parts)

    def to_json(self) -> dict[str, int]:
        return dict(self._items)


ZERO_ROOT = RootVector()


@dataclass(frozen=True)
class Generator:
    id: int
    label: str
    degree: RootVector
    weights: Mapping[str, Q] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "degree": self.degree.to_json(),
            "weights": {h: scalar_str(w) for h, w in sorted(self.weights.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "Generator":
        return cls(
            int(d["id"]),
            d["label"],
            RootVector(d["degree"]),
            {h: as_scalar(w) for h, w in d["weights"].items()},
        )


class Alphabet:
    """Ordered generator set; the declaration order fixes the Lyndon order."""

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        for i, g in enumerate(gens):
            if g.id != i:
                raise AlgebraError(f"generator ids must be 0..n-1 in order, got {g.id} at {i}")
        labels = [g.label for g in gens]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate generator labels")
        self.generators = gens
        self._key = tuple(labels)
        self._by_label = {g.label: g for g in gens}

    @classmethod
    def from_labels(cls, labels: Iterable[str], degrees=None, weights=None) -> "Alphabet":
        labels = list(labels)
        gens = []
        for i, lab in enumerate(labels):
            deg = degrees[i] if degrees else RootVector({lab: -1})
            w = weights[i] if weights else {}
            gens.append(Generator(i, lab, deg, w))
        return cls(gens)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i: int) -> Generator:
        return self.generators[i]

    def by_label(self, label: str) -> Generator:
        try:
            return self._by_label[label]
        except KeyError:
            raise AlgebraError(f"unknown generator {label!r}") from None

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Alphabet) and self._key == other._key)

    def __hash__(self) -> int:
        return hash(self._key)

    def labels(self) -> tuple[str, ...]:
        return self._key

    def to_json(self) -> list:
        return [g.to_json() for g in self.generators]

    @classmethod
    def from_json(cls, data: list) -> "Alphabet":
        return cls(Generator.from_json(d) for d in data)


def word_degree(alphabet: Alphabet, w: Word) -> RootVector:
    acc: dict[str, int] = {}
    for i in w:
        for k, v in alphabet[i].degree._items:
            acc[k] = acc.get(k, 0) + v
    return RootVector(acc)


def _check_same(a: Alphabet, b: Alphabet) -> None:
    if a is not b and a != b:
        raise AlphabetMismatch("polynomials live over different alphabets")


class NcPolynomial:
    """Truncated element of the free associative algebra.

    ``terms`` must not be mutated after construction.
    """

    __slots__ = ("alphabet", "terms", "truncation")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Q] | None = None,
                 truncation: int = 0, *, _trusted: bool = False):
        if truncation < 0:
            raise AlgebraError("truncation must be >= 0")
        self.alphabet = alphabet
        self.truncation = truncation
        if _trusted:
            self.terms = terms
            return
        clean: dict[Word, Q] = {}
        n = len(alphabet)
        for w, c in (terms or {}).items():
            w = tuple(w)
            c = as_scalar(c)
            if len(w) > truncation or not c:
                continue
            if any(not 0 <= i < n for i in w):
                raise AlgebraError(f"word {w} uses ids outside the alphabet")
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    # construction helpers
    @classmethod
    def zero(cls, alphabet: Alphabet, truncation: int) -> "NcPolynomial":
        return cls(alphabet, {}, truncation, _trusted=True)

    @classmethod
    def one(cls, alphabet: Alphabet, truncation: int) -> "NcPolynomial":
        return cls(alphabet, {(): Q(1)}, truncation, _trusted=True)

    @classmethod
    def gen(cls, alphabet: Alphabet, i: int | str, truncation: int, coeff=1) -> "NcPolynomial":
        if isinstance(i, str):
            i = alphabet.by_label(i).id
        return cls(alphabet, {(i,): as_scalar(coeff)}, truncation)

    @classmethod
    def from_terms(cls, alphabet, terms, truncation) -> "NcPolynomial":
        return cls(alphabet, terms, truncation)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, w: Word) -> Q:
        return self.terms.get(tuple(w), Q(0))

    def constant_term(self) -> Q:
        return self.terms.get((), Q(0))

    def degree(self) -> int:
        if not self.terms:
            raise AlgebraError("degree of the zero polynomial is undefined")
        return max(len(w) for w in self.terms)

    def low_degree(self) -> int:
        if not self.terms:
            raise AlgebraError("degree of the zero polynomial is undefined")
        return min(len(w) for w in self.terms)

    def homogeneous(self, n: int) -> "NcPolynomial":
        return NcPolynomial(self.alphabet, {w: c for w, c in self.terms.items() if len(w) == n},
                            self.truncation, _trusted=True)

    def root_degrees(self) -> set[RootVector]:
        return {word_degree(self.alphabet, w) for w in self.terms}

    def truncate(self, m: int) -> "NcPolynomial":
        m = min(m, self.truncation)
        return NcPolynomial(self.alphabet, {w: c for w, c in self.terms.items() if len(w) <= m},
                            m, _trusted=True)

    def with_truncation(self, m: int) -> "NcPolynomial":
        """Re-declare the bound; words longer than ``m`` are dropped."""
        return NcPolynomial(self.alphabet, {w: c for w, c in self.terms.items() if len(w) <= m},
                            m, _trusted=True)

    # arithmetic
    def __add__(self, other: "NcPolynomial") -> "NcPolynomial":
        return poly_add(self, other)

    def __sub__(self, other: "NcPolynomial") -> "NcPolynomial":
        return poly_add(self, -other)

    def __neg__(self) -> "NcPolynomial":
        return NcPolynomial(self.alphabet, {w: -c for w, c in self.terms.items()},
                            self.truncation, _trusted=True)

    def scale(self, c) -> "NcPolynomial":
        c = as_scalar(c)
        if not c:
            return NcPolynomial.zero(self.alphabet, self.truncation)
        return NcPolynomial(self.alphabet, {w: c * v for w, v in self.terms.items()},
                            self.truncation, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return poly_mul(self, other, min(self.truncation, other.truncation))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def bracket(self, other: "NcPolynomial", n: int | None = None) -> "NcPolynomial":
        if n is None:
            n = min(self.truncation, other.truncation)
        return poly_mul(self, other, n) - poly_mul(other, self, n)

    # rendering
    def sorted_terms(self) -> list[tuple[Word, Q]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"NcPolynomial({render(self)!r}, N={self.truncation})"

    def to_json(self) -> dict:
        return {
            "terms": [{"word": list(w), "coeff": scalar_str(c)} for w, c in self.sorted_terms()],
            "truncation": self.truncation,
        }

    @classmethod
    def from_json(cls, alphabet: Alphabet, d: dict) -> "NcPolynomial":
        terms: dict[Word, Q] = {}
        for t in d["terms"]:
            w = tuple(int(i) for i in t["word"])
            if w in terms:
                raise AlgebraError(f"duplicate word {w} in polynomial JSON")
            terms[w] = as_scalar(t["coeff"])
        return cls(alphabet, terms, int(d["truncation"]))


def render(p: NcPolynomial) -> str:
    """Canonical text form, e.g. ``3/2·x·y − y·x``."""
    if not p.terms:
        return "0"
    out = []
    for k, (w, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = "·".join(p.alphabet[i].label for i in w)
        if not w:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}·{mono}"
        if k == 0:
            out.append(("−" if neg else "") + body)
        else:
            out.append((" − " if neg else " + ") + body)
    return "".join(out)


def poly_add(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    _check_same(p.alphabet, q.alphabet)
    n = min(p.truncation, q.truncation)
    acc = {w: c for w, c in p.terms.items() if len(w) <= n}
    for w, c in q.terms.items():
        if len(w) > n:
            continue
        v = acc.get(w, 0) + c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return NcPolynomial(p.alphabet, acc, n, _trusted=True)


def poly_mul(p: NcPolynomial, q: NcPolynomial, n: int) -> NcPolynomial:
    """Truncated concatenation product; words longer than ``n`` are dropped."""
    _check_same(p.alphabet, q.alphabet)
    by_len: dict[int, list] = {}
    for w, c in q.terms.items():
        by_len.setdefault(len(w), []).append((w, c))
    acc: dict[Word, Q] = {}
    for w1, c1 in p.terms.items():
        room = n - len(w1)
        if room < 0:
            continue
        for ln, items in by_len.items():
            if ln > room:
                continue
            for w2, c2 in items:
                w = w1 + w2
                v = acc.get(w, 0) + c1 * c2
                if v:
                    acc[w] = v
                else:
                    del acc[w]
    return NcPolynomial(p.alphabet, acc, n, _trusted=True)


# --- Borcherds Cartan matrices -------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)  # (condition, i, j)

    def __bool__(self) -> bool:
        return self.ok


class BorcherdsCartanMatrix:
    """Symmetric matrix on an ordered (materialized) index window."""

    def __init__(self, index: Iterable[str], entries):
        self.index = tuple(str(i) for i in index)
        self._pos = {k: n for n, k in enumerate(self.index)}
        if len(self._pos) != len(self.index):
            raise AlgebraError("duplicate indices")
        m = len(self.index)
        if isinstance(entries, Mapping):
            self.a = {(i, j): as_scalar(entries[(i, j)]) for i in self.index for j in self.index}
        else:
            rows = [list(r) for r in entries]
            if len(rows) != m or any(len(r) != m for r in rows):
                raise AlgebraError("matrix shape does not match index window")
            self.a = {(self.index[r], self.index[c]): as_scalar(rows[r][c])
                      for r in range(m) for c in range(m)}

    def __getitem__(self, ij) -> Q:
        i, j = ij
        try:
            return self.a[(str(i), str(j))]
        except KeyError:
            raise AlgebraError(f"index pair {ij} outside the materialized window") from None

    @property
    def real_indices(self) -> tuple[str, ...]:
        return tuple(i for i in self.index if self.a[(i, i)] > 0)

    @property
    def imaginary_indices(self) -> tuple[str, ...]:
        return tuple(i for i in self.index if self.a[(i, i)] <= 0)

    def rows(self) -> list[list[Q]]:
        return [[self.a[(i, j)] for j in self.index] for i in self.index]

    def to_json(self) -> dict:
        return {"index": list(self.index),
                "entries": [[scalar_str(x) for x in r] for r in self.rows()]}

    @classmethod
    def from_json(cls, d: dict) -> "BorcherdsCartanMatrix":
        return cls(d["index"], [[as_scalar(x) for x in r] for r in d["entries"]])


def validate_bcm(A: BorcherdsCartanMatrix) -> ValidationReport:
    """Check B1-B3 and the no-orthogonal-imaginary-simples hypothesis."""
    bad = []
    idx = A.index
    for i in idx:
        for j in idx:
            aij = A.a[(i, j)]
            if aij != A.a[(j, i)] and i < j:
                bad.append(("B1", i, j))
            if i != j and aij > 0:
                bad.append(("B2", i, j))
            aii = A.a[(i, i)]
            if aii > 0 and (2 * aij / aii).denominator != 1:
                bad.append(("B3", i, j))
            if i != j and aii <= 0 and A.a[(j, j)] <= 0 and aij >= 0 and i < j:
                bad.append(("imaginary-orthogonal", i, j))
    return ValidationReport(not bad, bad)


def pairing(A: BorcherdsCartanMatrix, alpha: RootVector, beta: RootVector) -> Q:
    total = Q(0)
    for i, x in alpha._items:
        for j, y in beta._items:
            total += x * y * A[i, j]
    return total
