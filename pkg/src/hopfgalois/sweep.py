"""Exhaustive rank-two sweeps comparing the structural and computational verdicts.

Data are enumerated with integer exponents and deduplicated by an invariant
key: the relation lattice of (g1, g2) together with the braiding exponents.
Two data with equal keys have the same minimal Hopf subalgebra, hence the
same verdict, so one representative per key is classified.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .classifier import Status, check_graded, classify_rank2, structural_rank2
from .cyclotomic import CycloScalar
from .errors import ClassificationMismatch, HopfGaloisError
from .group import Character, FiniteAbelianGroup
from .hopf_datum import HopfDatum, cartan_tag

__all__ = ["SweepInstance", "SweepReport", "enumerate_rank2", "sweep_rank2"]

# q12 q21 = q11^{a12} = q22^{a21}, encoded as (a12, a21)
_CONFIGS = {
    "A2": (-1, -1),
    "B2": (-2, -1),
    "B2'": (-1, -2),
    "G2": (-1, -3),
    "G2'": (-3, -1),
}


@dataclass(frozen=True)
class SweepInstance:
    group: tuple[int, ...]
    g: tuple[tuple[int, ...], tuple[int, ...]]
    chi: tuple[tuple[int, ...], tuple[int, ...]]  # exponents of zeta_{m_k} on each factor
    key: tuple

    def datum(self) -> HopfDatum:
        G = FiniteAbelianGroup(self.group)
        chars = tuple(
            Character(G, tuple(CycloScalar.root(m, e) for m, e in zip(self.group, c))) for c in self.chi
        )
        return HopfDatum(G, (G.element(*self.g[0]), G.element(*self.g[1])), chars)


def _relation_lattice(order_of, n1: int) -> tuple[int, int, int]:
    """Hermite form (h11, h12, h22) of {(x, y) : g1^x g2^y = 1}.

    ``order_of(x, y)`` tells whether g1^x g2^y is trivial.
    """
    h22 = next(y for y in range(1, n1 + 1) if order_of(0, y))
    for x in range(1, n1 + 1):
        for y in range(h22):
            if order_of(x, y):
                return (x, y, h22)
    raise AssertionError("g1 has finite order")


def _elem_order(t: int, N: int) -> int:
    return N // math.gcd(t, N)


def _matches(t11, t12, t21, t22, N) -> bool:
    s = (t12 + t21) % N
    for a12, a21 in _CONFIGS.values():
        if s == (a12 * t11) % N and s == (a21 * t22) % N:
            return True
    return False


def _key(lattice, ts, N):
    return (lattice, tuple(Fraction(t % N, N) for t in ts))


def _cyclic_instances(n: int, k: int, seen: dict):
    N = n * k
    divisors = [a for a in range(1, N) if N % a == 0]
    for a1 in divisors:
        for a2 in range(N):
            lattice = _relation_lattice(lambda x, y: (a1 * x + a2 * y) % N == 0, N)
            for c1 in range(N):
                t11 = a1 * c1 % N
                if _elem_order(t11, N) != n:
                    continue
                t21 = a2 * c1 % N
                for c2 in range(N):
                    t22 = a2 * c2 % N
                    if _elem_order(t22, N) != n:
                        continue
                    t12 = a1 * c2 % N
                    if not _matches(t11, t12, t21, t22, N):
                        continue
                    key = _key(lattice, (t11, t12, t21, t22), N)
                    if key not in seen:
                        seen[key] = SweepInstance((N,), ((a1,), (a2,)), ((c1,), (c2,)), key)


def _square_instances(n: int, seen: dict):
    # up to automorphisms of Z_n x Z_n (n prime) we may take g1 = (1,0)
    # and g2 in {(b,0)} or (0,1)
    g1 = (1, 0)
    choices = [(b, 0) for b in range(n)] + [(0, 1)]
    for g2 in choices:
        lattice = _relation_lattice(
            lambda x, y: (g1[0] * x + g2[0] * y) % n == 0 and (g1[1] * x + g2[1] * y) % n == 0, n
        )
        for c1 in range(n):
            for d1 in range(n):
                t11 = (g1[0] * c1 + g1[1] * d1) % n
                if _elem_order(t11, n) != n:
                    continue
                t21 = (g2[0] * c1 + g2[1] * d1) % n
                for c2 in range(n):
                    for d2 in range(n):
                        t22 = (g2[0] * c2 + g2[1] * d2) % n
                        if _elem_order(t22, n) != n:
                            continue
                        t12 = (g1[0] * c2 + g1[1] * d2) % n
                        if not _matches(t11, t12, t21, t22, n):
                            continue
                        key = _key(lattice, (t11, t12, t21, t22), n)
                        if key not in seen:
                            seen[key] = SweepInstance((n, n), (g1, g2), ((c1, d1), (c2, d2)), key)


def enumerate_rank2(orders=(3, 5, 7)) -> list[SweepInstance]:
    """One representative per invariant key, in a deterministic order.

    Only prime n is supported by the Z_n x Z_n reduction.
    """
    seen: dict = {}
    for n in orders:
        for k in range(1, n + 1):
            _cyclic_instances(n, k, seen)
        _square_instances(n, seen)
    return list(seen.values())


@dataclass
class SweepOutcome:
    instance: SweepInstance
    letter: str
    structural: Status | None
    computed: Status | None
    case: str = ""
    error: str = ""

    @property
    def agrees(self) -> bool:
        return not self.error and self.structural is self.computed


def _classify_one(inst: SweepInstance) -> SweepOutcome:
    d = inst.datum()
    try:
        tag = cartan_tag(d)
    except HopfGaloisError as exc:
        return SweepOutcome(inst, "?", None, None, error=f"{type(exc).__name__}: {exc}")
    letter = tag.label()
    try:
        # classify_rank2 cross-checks against check_graded and raises on disagreement
        v = classify_rank2(d, strict=True)
        return SweepOutcome(inst, letter, v.status, v.status, v.case)
    except ClassificationMismatch:
        structural, case, _ = structural_rank2(d, tag)
        computed = check_graded(d, cartan=tag.matrix).status
        return SweepOutcome(inst, letter, structural, computed, case, error="mismatch")
    except HopfGaloisError as exc:
        return SweepOutcome(inst, letter, None, None, error=f"{type(exc).__name__}: {exc}")


@dataclass
class SweepReport:
    outcomes: list[SweepOutcome]
    skipped: list[SweepInstance] = field(default_factory=list)

    @property
    def disagreements(self) -> list[SweepOutcome]:
        return [o for o in self.outcomes if not o.agrees]

    def counts(self) -> Counter:
        return Counter((o.letter, o.computed.value if o.computed else "ERROR") for o in self.outcomes)


def _eligible(inst: SweepInstance) -> bool:
    # odd orders are required; type G2 also needs the order prime to 3
    t11 = inst.key[1][0]
    n = t11.denominator
    if n % 2 == 0:
        return False
    t12, t21, t22 = inst.key[1][1:]
    is_g2 = (t12 + t21) % 1 in ((-3 * t11) % 1, (-3 * t22) % 1)
    return not (is_g2 and n % 3 == 0)


def sweep_rank2(orders=(3, 5, 7), workers: int = 1) -> SweepReport:
    """Classify every representative both ways; results keep enumeration order."""
    instances = enumerate_rank2(orders)
    todo = [i for i in instances if _eligible(i)]
    skipped = [i for i in instances if not _eligible(i)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_classify_one, todo, chunksize=16))
    else:
        outcomes = [_classify_one(i) for i in todo]
    return SweepReport(outcomes, skipped)
