"""Seeded random elements for property checks."""

from __future__ import annotations

import random

from .action import ExpGen, KMGroupWord, Torus
from .algebra import Q, Alphabet
from .freelie import LieSeries, is_lyndon
from .magnus import MagnusElement
from .models import ModelSpec
from .semidirect import GroupElement


def random_scalar(rng: random.Random, nonzero: bool = False, span: int = 3) -> Q:
    while True:
        x = Q(rng.randint(-span, span), rng.randint(1, 2))
        if x or not nonzero:
            return x


def random_lyndon(rng: random.Random, k: int, n: int) -> tuple:
    while True:
        w = tuple(rng.randrange(k) for _ in range(n))
        rots = [w[i:] + w[:i] for i in range(n)]
        m = min(rots)
        if rots.count(m) == 1 and is_lyndon(m):
            return m


def random_lie(rng: random.Random, alphabet: Alphabet, N: int, terms: int = 3,
               max_degree: int | None = None, gens: list[int] | None = None) -> LieSeries:
    """Sparse random Lie series: ``terms`` Lyndon coordinates per degree."""
    k = len(alphabet)
    top = N if max_degree is None else min(N, max_degree)
    coords = {}
    for d in range(1, top + 1):
        for _ in range(terms):
            if gens is not None and d == 1:
                w = (rng.choice(gens),)
            else:
                w = random_lyndon(rng, k, d)
            coords[w] = coords.get(w, 0) + random_scalar(rng)
    return LieSeries(alphabet, coords, N)


def random_word(rng: random.Random, model: ModelSpec, length: int | None = None) -> KMGroupWord:
    table = model.table
    exps = [lab for lab, r in table.rows.items() if r.kind in ("e", "f")]
    tori = [lab for lab, r in table.rows.items() if r.kind == "h"]
    n = rng.randint(1, 3) if length is None else length
    letters = []
    for _ in range(n):
        if tori and rng.random() < 0.25:
            letters.append(Torus(rng.choice(tori), random_scalar(rng, nonzero=True)))
        else:
            letters.append(ExpGen(rng.choice(exps), random_scalar(rng, nonzero=True)))
    return KMGroupWord(letters)


def random_element(rng: random.Random, model: ModelSpec, N: int | None = None,
                   terms: int = 2, max_degree: int = 2) -> GroupElement:
    N = model.truncation if N is None else N
    L = random_lie(rng, model.alphabet, N, terms=terms, max_degree=max_degree)
    return GroupElement(MagnusElement(L), random_word(rng, model), model)
