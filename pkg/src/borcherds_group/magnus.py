"""The Magnus group exp(L^(X)) stored in logarithmic coordinates."""

from __future__ import annotations

from .algebra import AlgebraError, Alphabet, NcPolynomial, _check_same
from .freelie import LieSeries, NotLieError, bch, exp, log


class MagnusElement:
    __slots__ = ("log",)

    def __init__(self, log_coords: LieSeries):
        self.log = log_coords

    @property
    def alphabet(self) -> Alphabet:
        return self.log.alphabet

    @property
    def truncation(self) -> int:
        return self.log.truncation

    def is_identity(self) -> bool:
        return self.log.is_zero()

    def __mul__(self, other: "MagnusElement") -> "MagnusElement":
        return m_mul(self, other)

    def inverse(self) -> "MagnusElement":
        return m_inv(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, MagnusElement) and self.log == other.log

    def __hash__(self):
        return hash(self.log)

    def __repr__(self) -> str:
        return f"exp({self.log!r})"

    def to_json(self) -> dict:
        return {"log": self.log.to_json(), "truncation": self.truncation}

    @classmethod
    def from_json(cls, alphabet: Alphabet, d: dict) -> "MagnusElement":
        L = LieSeries.from_json(alphabet, d["log"])
        if L.truncation != int(d["truncation"]):
            raise AlgebraError("truncation of element and its log disagree")
        return cls(L)


def m_id(alphabet: Alphabet, truncation: int) -> MagnusElement:
    return MagnusElement(LieSeries.zero(alphabet, truncation))


def m_exp(L: LieSeries) -> MagnusElement:
    return MagnusElement(L)


def m_mul(a: MagnusElement, b: MagnusElement) -> MagnusElement:
    _check_same(a.alphabet, b.alphabet)
    if a.truncation != b.truncation:
        raise AlgebraError(f"truncation mismatch: {a.truncation} vs {b.truncation}")
    return MagnusElement(bch(a.log, b.log, a.truncation))


def m_inv(a: MagnusElement) -> MagnusElement:
    return MagnusElement(-a.log)


def to_series(a: MagnusElement, n: int | None = None) -> NcPolynomial:
    return exp(a.log, a.truncation if n is None else n)


def from_series(u: NcPolynomial) -> MagnusElement:
    """Inverse of ``to_series``; rejects series outside exp of the Lie series.

    Raises ``NotLieError`` (with ``degree``) for a non-Lie logarithm and
    ``AlgebraError`` for a constant term other than 1.
    """
    if u.constant_term() != 1:
        raise NotLieError(f"constant term {u.constant_term()} != 1", 0)
    return MagnusElement(log(u, u.truncation))
