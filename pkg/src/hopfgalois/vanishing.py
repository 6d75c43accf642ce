"""Exact vanishing test for Q(P^n) by evaluation at the characters of <g_i>.

Q(P^n) = prod_{k<n} sigma^k(Q_P) with sigma(h) = mu(h) h, so at a character
beta of G' = <g_1..g_theta> it evaluates to prod_k Q_P(beta mu^k).  kG' embeds
into a product of copies of k by evaluation, so Q(P^n) = 0 exactly when every
coset beta <mu> meets the zero set of Q_P.  The evaluations are integer vectors
in Z[x]/(x^M - 1) reduced modulo Phi_M, so the test stays exact.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import CycloScalar, _power_table, euler_phi
from .group import subgroup_generated
from .group_algebra import GroupAlgebraElement

__all__ = ["power_vanishes"]

_MAX_CELLS = 4_000_000


@lru_cache(maxsize=None)
def _reduction_matrix(M: int) -> np.ndarray:
    R = np.zeros((M, euler_phi(M)), dtype=np.int64)
    for k, row in enumerate(_power_table(M)):
        for i, c in row:
            R[k, i] = c
    return R


@lru_cache(maxsize=None)
def _root_exponents(M: int) -> dict:
    return {CycloScalar.root(M, e): e for e in range(M)}


def _dense(c: CycloScalar, M: int) -> list:
    out = [0] * M
    for vec in c.lift(M).drop_unused_symbols()._terms.values():
        for p, v in vec.items():
            out[p] = v
    return out


def _span_coordinates(d, emb, sub) -> dict:
    """Ambient exponent tuple -> subgroup coordinates, for every element of <g_i>."""
    out = {}
    for u in itertools.product(*(range(m) for m in sub.factor_orders)):
        out[emb.to_ambient(sub.element(*u)).exponents] = u
    return out


def power_vanishes(d, Q_P: GroupAlgebraElement, mu_values, n: int) -> bool | None:
    """Whether prod_{k<n} sigma^k(Q_P) is zero; None if the test does not apply.

    ``mu_values[i]`` is mu(g_i).  Requires concrete (symbol-free) data.
    """
    if Q_P.is_zero():
        return True
    if any(c.free_symbols() for c in Q_P.terms.values()) or any(v.free_symbols() for v in mu_values):
        return None
    sub, emb = subgroup_generated(d.group, d.g)
    orders = sub.factor_orders
    size = math.prod(orders)
    M = math.lcm(d.conductor, sub.exponent, *(c.conductor for c in Q_P.terms.values()))
    if size * len(Q_P.terms) * M > 50 * _MAX_CELLS:
        return None
    coords = _span_coordinates(d, emb, sub)
    roots = _root_exponents(M)
    try:
        mu_exp = [roots[v.lift(M)] for v in mu_values]
    except KeyError:
        return None
    scale = [M // m for m in orders]
    gen_coords = [c.exponents for c in emb.coordinates]

    chars = list(itertools.product(*(range(m) for m in orders)))

    def pairing(u, h):
        return sum(a * b * s for a, b, s in zip(u, h, scale)) % M

    mu = next(
        (u for u in chars if all(pairing(u, gc) == e for gc, e in zip(gen_coords, mu_exp))),
        None,
    )
    if mu is None:
        return None

    support = [coords[h] for h in Q_P.terms]
    rows = [_dense(Q_P.terms[h], M) for h in Q_P.terms]
    den = math.lcm(*(v.denominator for r in rows for v in r if isinstance(v, Fraction)), 1)
    A = np.array([[int(v * den) for v in r] for r in rows], dtype=np.int64)
    if np.abs(A).max() > 2**30:
        return None
    U = np.array(chars, dtype=np.int64).reshape(len(chars), len(orders))
    Hc = np.array(support, dtype=np.int64).reshape(len(support), len(orders))
    E = ((U * np.array(scale, dtype=np.int64)) @ Hc.T) % M
    R = _reduction_matrix(M)
    ar = np.arange(M)
    hidx = np.arange(len(support))[None, :, None]
    step = max(1, _MAX_CELLS // max(1, len(support) * M))
    zero = np.zeros(len(chars), dtype=bool)
    for start in range(0, len(chars), step):
        block = E[start : start + step]
        idx = (ar[None, None, :] - block[:, :, None]) % M
        V = A[hidx, idx].sum(axis=1)
        zero[start : start + step] = ~(V @ R).any(axis=1)

    zset = {chars[b] for b in np.flatnonzero(zero)}
    for u in chars:
        cur = u
        for _ in range(n):
            if cur in zset:
                break
            cur = tuple((a + b) % m for a, b, m in zip(cur, mu, orders))
        else:
            return False
    return True
