"""The group G = G(S') ⋊ G_J: multiplication, inverses, conjugation, basis change."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .action import (
    ActionError, KMGroupWord, LinMap, ad_group, is_identity_map, substitute, word_matrix, words_equal,
)
from .algebra import Q, AlgebraError, as_scalar
from .freelie import LieSeries, lyndon_coordinates
from .linalg import rank
from .magnus import MagnusElement, m_exp, m_id, m_mul
from .models import SCHEMA_VERSION, ModelSpec


class ModelMismatch(AlgebraError):
    pass


class NormalityError(AlgebraError):
    pass


class EquivarianceError(AlgebraError):
    def __init__(self, msg: str, generator: str | None = None, x: str | None = None):
        super().__init__(msg)
        self.generator = generator
        self.x = x


@dataclass(frozen=True)
class GroupElement:
    n: MagnusElement
    g: KMGroupWord
    model: ModelSpec

    @property
    def truncation(self) -> int:
        return self.n.truncation

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return g_mul(self, other)

    def inverse(self) -> "GroupElement":
        return g_inv(self)

    def equals(self, other: "GroupElement") -> bool:
        """Equal Magnus parts and equal action of the words on the window."""
        _same_model(self, other)
        return self.n == other.n and words_equal(self.model.table, self.g, other.g)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.model is other.model and self.equals(other)

    __hash__ = None

    def is_identity(self) -> bool:
        return self.n.is_identity() and is_identity_map(
            word_matrix(self.model.table, self.g), range(len(self.model.alphabet)))

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n.to_json(),
            "g": self.g.to_json(),
            "model": self.model.model_id,
            "truncation": self.truncation,
        }

    @classmethod
    def from_json(cls, model: ModelSpec, d: dict) -> "GroupElement":
        for key in ("n", "g", "model", "truncation"):
            if key not in d:
                raise AlgebraError(f"group element JSON lacks field {key!r}")
        if d["model"] != model.model_id:
            raise ModelMismatch(f"element built for {d['model']}, not {model.model_id}")
        n = MagnusElement.from_json(model.alphabet, d["n"])
        if n.truncation != int(d["truncation"]):
            raise AlgebraError("truncation field disagrees with the Magnus part")
        g = KMGroupWord.from_json(d["g"])
        for letter in g:
            model.table.row(getattr(letter, "gen", None) or letter.h)
        return cls(n, g, model)


def identity(model: ModelSpec, truncation: int | None = None) -> GroupElement:
    N = model.truncation if truncation is None else truncation
    return GroupElement(m_id(model.alphabet, N), KMGroupWord(), model)


def from_magnus(model: ModelSpec, n: MagnusElement) -> GroupElement:
    return GroupElement(n, KMGroupWord(), model)


def from_word(model: ModelSpec, g: KMGroupWord, truncation: int | None = None) -> GroupElement:
    N = model.truncation if truncation is None else truncation
    return GroupElement(m_id(model.alphabet, N), KMGroupWord(g), model)


def _same_model(a: GroupElement, b: GroupElement) -> None:
    if a.model is not b.model and a.model.model_id != b.model.model_id:
        raise ModelMismatch(f"{a.model.model_id} vs {b.model.model_id}")
    if a.truncation != b.truncation:
        raise ModelMismatch(f"truncation mismatch: {a.truncation} vs {b.truncation}")


def g_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    """(n1, g1)(n2, g2) = (n1 · exp(Ad(g1) log n2), g1 g2)."""
    _same_model(a, b)
    L = ad_group(a.model.table, a.g, b.n.log)
    return GroupElement(m_mul(a.n, m_exp(L)), a.g * b.g, a.model)


def g_inv(a: GroupElement) -> GroupElement:
    gi = a.g.inverse()
    return GroupElement(MagnusElement(ad_group(a.model.table, gi, -a.n.log)), gi, a.model)


def conjugate(a: GroupElement, m: MagnusElement) -> MagnusElement:
    """G(S')-part of a·(m,1)·a⁻¹; errors if the G_J-part is not trivial."""
    c = g_mul(g_mul(a, from_magnus(a.model, m)), g_inv(a))
    M = word_matrix(a.model.table, c.g)
    if not is_identity_map(M, range(len(a.model.alphabet))):
        raise NormalityError("conjugate left G(S'): the G_J part acts nontrivially")
    return c.n


# --- basis change -------------------------------------------------------------

def _apply_linear(rho: LinMap, v: Mapping) -> dict:
    out: dict = {}
    for s, c in v.items():
        for t, d in rho.get(s, {}).items():
            x = out.get(t, 0) + c * d
            if x:
                out[t] = x
            else:
                out.pop(t, None)
    return out


def check_equivariance(model: ModelSpec, rho: LinMap) -> list[tuple[str, str]]:
    """Witnesses (generator label, g_J label) where ρ(x∘s) != x∘ρ(s)."""
    table = model.table
    bad = []
    for x, row in table.rows.items():
        for s in range(len(model.alphabet)):
            lhs = _apply_linear(rho, row.images.get(s, {}))
            rhs = _apply_linear(row.images, rho.get(s, {}))
            if lhs != rhs:
                bad.append((model.alphabet[s].label, x))
    return bad


class BasisChange:
    """Ψ(n, g) = (exp(φ(log n)), g) for an equivariant invertible ρ on span(S')."""

    def __init__(self, model: ModelSpec, rho: Mapping[int, Mapping[int, object]]):
        self.model = model
        n = len(model.alphabet)
        self.rho: LinMap = {}
        for s in range(n):
            img = {int(t): as_scalar(c) for t, c in rho.get(s, {s: 1}).items() if as_scalar(c)}
            if any(not 0 <= t < n for t in img):
                raise AlgebraError(f"rho maps generator {s} outside the window")
            self.rho[s] = img
        if rank(self.rho[s] for s in range(n)) != n:
            raise AlgebraError("rho is not invertible on the materialized window")
        bad = check_equivariance(model, self.rho)
        if bad:
            gen, x = bad[0]
            raise EquivarianceError(f"rho does not commute with {x} on {gen}", gen, x)

    def phi(self, L: LieSeries) -> LieSeries:
        if all(len(w) == 1 for w in L.coords):
            acc: dict = {}
            for w, c in L.coords.items():
                for t, d in self.rho[w[0]].items():
                    v = acc.get((t,), 0) + c * d
                    if v:
                        acc[(t,)] = v
                    else:
                        acc.pop((t,), None)
            return LieSeries(L.alphabet, acc, L.truncation, _trusted=True)
        return LieSeries(L.alphabet, lyndon_coordinates(substitute(self.rho, L.to_poly())),
                         L.truncation, _trusted=True)

    def __call__(self, a: GroupElement) -> GroupElement:
        if a.model is not self.model and a.model.model_id != self.model.model_id:
            raise ModelMismatch("element from another model")
        return GroupElement(MagnusElement(self.phi(a.n.log)), a.g, a.model)


def change_basis(model: ModelSpec, rho) -> BasisChange:
    return BasisChange(model, rho)


def quotient(a: GroupElement) -> KMGroupWord:
    """The projection (n, g) -> g onto G_J."""
    return a.g
