"""Seeded random generators for polynomials, forms and multivector fields."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .exterior import Form, MultiVec
from .polynomial import Chart, Polynomial


def rand_scalar(rng: random.Random, lo: int = -3, hi: int = 3, frac: bool = True):
    num = 0
    while num == 0:
        num = rng.randint(lo, hi)
    if frac and rng.random() < 0.2:
        return Fraction(num, rng.choice([2, 3]))
    return num


def rand_poly(rng: random.Random, nvars: int, max_deg: int = 2, n_terms: Optional[int] = None,
              frac: bool = True) -> Polynomial:
    if n_terms is None:
        n_terms = rng.randint(1, 3)
    terms = {}
    for _ in range(n_terms):
        deg = rng.randint(0, max_deg)
        exp = [0] * nvars
        for _ in range(deg):
            exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = rand_scalar(rng, frac=frac)
    return Polynomial(nvars, terms)


def _rand_graded(cls, rng, chart: Chart, degree: int, max_deg: int, n_comps: Optional[int]):
    n = chart.dim
    idxs = list(itertools.combinations(range(n), degree))
    if n_comps is None:
        n_comps = rng.randint(1, min(3, len(idxs)))
    chosen = rng.sample(idxs, min(n_comps, len(idxs)))
    return cls(chart, degree, {i: rand_poly(rng, n, max_deg) for i in chosen})


def rand_form(rng: random.Random, chart: Chart, degree: int, max_deg: int = 2,
              n_comps: Optional[int] = None) -> Form:
    return _rand_graded(Form, rng, chart, degree, max_deg, n_comps)


def rand_multivec(rng: random.Random, chart: Chart, degree: int, max_deg: int = 2,
                  n_comps: Optional[int] = None) -> MultiVec:
    return _rand_graded(MultiVec, rng, chart, degree, max_deg, n_comps)


def rand_chart(rng: random.Random, lo: int = 2, hi: int = 5) -> Chart:
    n = rng.randint(lo, hi)
    return Chart([f"x{i + 1}" for i in range(n)])
