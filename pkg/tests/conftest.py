import pytest

from borcherds_group.algebra import Alphabet, NcPolynomial


@pytest.fixture
def xy():
    return Alphabet.from_labels(["x", "y"])


@pytest.fixture
def xyz():
    return Alphabet.from_labels(["x", "y", "z"])


def poly(alphabet, terms, n=6):
    """Polynomial from {"xy": c} using one-letter labels."""
    ids = {g.label: g.id for g in alphabet}
    return NcPolynomial(alphabet, {tuple(ids[ch] for ch in w): c for w, c in terms.items()}, n)
