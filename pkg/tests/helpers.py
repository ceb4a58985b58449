"""Seeded random generators and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from star_reduce import poly as P
from star_reduce import weyl as W
from star_reduce.scalars import GaussianRational, ONE, ZERO


def rand_rational(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_gr(rng: random.Random, nonzero: bool = True) -> GaussianRational:
    while True:
        re = rand_rational(rng)
        im = rand_rational(rng) if rng.random() < 0.5 else Fraction(0)
        c = GaussianRational(re, im)
        if c or not nonzero:
            return c


def _split(rng: random.Random, total: int, parts: int) -> List[int]:
    out = [0] * parts
    for _ in range(total):
        out[rng.randrange(parts)] += 1
    return out


def rand_weyl(rng, dim: int, max_deg: int = 4, max_terms: int = 4, invariant: bool = False) -> W.WeylElement:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_deg)
        exps = _split(rng, deg, 2 * dim)
        k, l = exps[:dim], exps[dim:]
        if invariant and l[0]:
            k[0] += l[0]
            l[0] = 0
        terms.append(((tuple(k), tuple(l)), rand_gr(rng)))
    return W.WeylElement(dim, terms)


def rand_poly(rng, n: int, max_deg: int = 3, max_terms: int = 4, invariant: bool = False) -> P.PolyElement:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        if invariant:
            d = rng.randint(0, max_deg // 2 if max_deg > 1 else 1)
            a, b = _split(rng, d, n + 1), _split(rng, d, n + 1)
        else:
            a = _split(rng, rng.randint(0, max_deg), n + 1)
            b = _split(rng, rng.randint(0, max_deg - sum(a)), n + 1)
        terms.append(((tuple(a), tuple(b)), rand_gr(rng)))
    return P.PolyElement(n, terms)


def rand_hermitian_invariant(rng, n: int, max_deg: int = 4, max_terms: int = 3) -> P.PolyElement:
    f = rand_poly(rng, n, max_deg, max_terms, invariant=True)
    return f + f.star()


def rand_charged(rng, n: int, charge: int, max_extra: int = 1, max_terms: int = 2) -> P.PolyElement:
    """Polynomial whose monomials all satisfy |a| - |b| = charge, so a^* a is invariant."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        extra = rng.randint(0, max_extra)
        a = _split(rng, extra + max(charge, 0), n + 1)
        b = _split(rng, extra + max(-charge, 0), n + 1)
        terms.append(((tuple(a), tuple(b)), rand_gr(rng)))
    return P.PolyElement(n, terms)


def rand_point(rng, n: int) -> Tuple[GaussianRational, ...]:
    while True:
        w = tuple(rand_gr(rng, nonzero=False) for _ in range(n + 1))
        if any(w):
            return w


def rand_point_nonzero_j(rng, sig: P.Signature) -> Tuple[GaussianRational, ...]:
    while True:
        w = rand_point(rng, sig.n)
        if P.momentum_value(w, sig):
            return w


# exact rational points on the levelset J = 1 --------------------------------------------------


def _rational_unit_real(rng, dim: int) -> List[Fraction]:
    """Inverse stereographic projection of a random rational point of R^{dim-1}."""
    if dim == 1:
        return [Fraction(rng.choice((-1, 1)))]
    t = [rand_rational(rng, 4, 4) for _ in range(dim - 1)]
    r2 = sum(x * x for x in t)
    return [2 * x / (r2 + 1) for x in t] + [(r2 - 1) / (r2 + 1)]


def rational_unit_complex(rng, size: int) -> List[GaussianRational]:
    x = _rational_unit_real(rng, 2 * size)
    return [GaussianRational(x[2 * j], x[2 * j + 1]) for j in range(size)]


def rational_levelset_point(rng, sig: P.Signature) -> Tuple[GaussianRational, ...]:
    """Exact point with J(w) = 1: sphere for s = 1+n, cosh/sinh blocks otherwise."""
    size = sig.n + 1
    if sig.s == size:
        return tuple(rational_unit_complex(rng, size))
    t = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    ch, sh = (1 + t * t) / (2 * t), (1 - t * t) / (2 * t)  # ch^2 - sh^2 = 1
    pos = [x * ch for x in rational_unit_complex(rng, sig.s)]
    neg = [x * sh for x in rational_unit_complex(rng, size - sig.s)]
    return tuple(pos + neg)


# one-swap rewriting oracle for the Weyl product ------------------------------------------------

Word = Tuple[Tuple[str, int], ...]


def _normal_order_words(words: Dict[Word, GaussianRational]) -> Dict[Word, GaussianRational]:
    """Rewrite words with ``q_j p_j -> p_j q_j + i`` and sort commuting letters, one swap at a time."""
    done: Dict[Word, GaussianRational] = {}
    todo = dict(words)
    while todo:
        word, c = todo.popitem()
        for pos in range(len(word) - 1):
            (x, i), (y, j) = word[pos], word[pos + 1]
            if (x, i, y, j) == ("q", i, "p", i):
                swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
                shorter = word[:pos] + word[pos + 2:]
                todo[swapped] = todo.get(swapped, ZERO) + c
                todo[shorter] = todo.get(shorter, ZERO) + c * GaussianRational(0, 1)
                break
            if i != j and (i > j):
                swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
                todo[swapped] = todo.get(swapped, ZERO) + c
                break
        else:
            done[word] = done.get(word, ZERO) + c
        todo = {w: v for w, v in todo.items() if v}
    return {w: v for w, v in done.items() if v}


def _element_to_words(a: W.WeylElement) -> Dict[Word, GaussianRational]:
    out = {}
    for mono, c in a.terms.items():
        word = []
        for j in range(a.dim):
            word += [("p", j)] * mono.k[j] + [("q", j)] * mono.l[j]
        out[tuple(word)] = c
    return out


def _words_to_element(words, dim: int) -> W.WeylElement:
    terms = []
    for word, c in words.items():
        k, l = [0] * dim, [0] * dim
        for letter, j in word:
            (k if letter == "p" else l)[j] += 1
        terms.append(((tuple(k), tuple(l)), c))
    return W.WeylElement(dim, terms)


def oracle_weyl_mul(a: W.WeylElement, b: W.WeylElement) -> W.WeylElement:
    wa, wb = _element_to_words(a), _element_to_words(b)
    words = {}
    for (x, c), (y, d) in product(wa.items(), wb.items()):
        words[x + y] = words.get(x + y, ZERO) + c * d
    return _words_to_element(_normal_order_words(words), a.dim)


def oracle_weyl_star(a: W.WeylElement) -> W.WeylElement:
    words = {}
    for word, c in _element_to_words(a).items():
        rev = tuple(reversed(word))
        words[rev] = words.get(rev, ZERO) + c.conj()
    return _words_to_element(_normal_order_words(words), a.dim)


__all__ = [
    "rand_gr", "rand_rational", "rand_weyl", "rand_poly", "rand_hermitian_invariant", "rand_charged",
    "rand_point", "rand_point_nonzero_j", "rational_levelset_point", "rational_unit_complex",
    "oracle_weyl_mul", "oracle_weyl_star", "ONE",
]
