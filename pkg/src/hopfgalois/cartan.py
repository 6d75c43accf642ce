"""Cartan matrices of finite type: Dynkin identification and edge data.

Convention: for a double or triple bond between i and j, ``a_ij < -1`` marks
i as the short node.  So ``[[2,-2],[-1,2]]`` is B2 with node 1 short and
``[[2,-1],[-3,2]]`` is G2 with node 2 short.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDynkin, NotFiniteCartanType

__all__ = [
    "CartanComponent",
    "CartanTypeTag",
    "cartan_matrix",
    "classify_cartan",
    "components",
]


@dataclass(frozen=True)
class CartanComponent:
    letter: str
    rank: int
    nodes: tuple[int, ...]  # 0-based indices into the datum
    order: int | None = None  # n_I, the common order of q_ii on the component

    def label(self) -> str:
        return f"{self.letter}{self.rank}"


@dataclass(frozen=True)
class CartanTypeTag:
    matrix: tuple[tuple[int, ...], ...]
    components: tuple[CartanComponent, ...]

    def label(self) -> str:
        return " x ".join(c.label() for c in self.components)

    def is_A1_theta(self) -> bool:
        return all(c.letter == "A" and c.rank == 1 for c in self.components)


def components(A) -> list[list[int]]:
    n = len(A)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w != v and w not in seen and (A[v][w] or A[w][v]):
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _check_entries(A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise NotFiniteCartanType("Cartan matrix must be square")
    for i in range(n):
        if A[i][i] != 2:
            raise NotFiniteCartanType("diagonal entries must equal 2")
        for j in range(n):
            if i == j:
                continue
            a, b = A[i][j], A[j][i]
            if a > 0 or a < -3:
                raise NotFiniteCartanType(f"entry a[{i + 1}][{j + 1}]={a} outside finite range")
            if (a == 0) != (b == 0):
                raise NotFiniteCartanType("a_ij = 0 must imply a_ji = 0")
            if a * b > 3 or (a * b in (2, 3) and -1 not in (a, b)):
                raise NotFiniteCartanType("bond is not of finite type")


def _identify(A, nodes) -> CartanComponent:
    r = len(nodes)
    if r == 1:
        return CartanComponent("A", 1, tuple(nodes))
    edges = [(i, j) for k, i in enumerate(nodes) for j in nodes[k + 1 :] if A[i][j]]
    if len(edges) != r - 1:
        raise NotFiniteCartanType("Dynkin diagram contains a cycle")
    deg = {v: 0 for v in nodes}
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    mult = {(i, j): A[i][j] * A[j][i] for i, j in edges}
    multi = [e for e in edges if mult[e] > 1]
    if any(mult[e] == 3 for e in edges):
        if r != 2:
            raise NotFiniteCartanType("triple bond in a diagram of rank > 2")
        return CartanComponent("G", 2, tuple(nodes))
    if len(multi) > 1:
        raise NotFiniteCartanType("more than one double bond")
    if max(deg.values()) > 3:
        raise NotFiniteCartanType("vertex of degree > 3")
    if multi:
        if max(deg.values()) > 2:
            raise NotFiniteCartanType("branch point together with a double bond")
        i, j = multi[0]
        short = i if A[i][j] < -1 else j
        long_ = j if short == i else i
        if r == 2:
            return CartanComponent("B", 2, tuple(nodes))
        if deg[short] == 1:
            return CartanComponent("B", r, tuple(nodes))
        if deg[long_] == 1:
            return CartanComponent("C", r, tuple(nodes))
        if r == 4:
            return CartanComponent("F", 4, tuple(nodes))
        raise NotFiniteCartanType("double bond in the interior of a long chain")
    branch = [v for v in nodes if deg[v] == 3]
    if not branch:
        return CartanComponent("A", r, tuple(nodes))
    if len(branch) > 1:
        raise NotFiniteCartanType("more than one branch point")
    b = branch[0]
    adj = {v: [w for w in nodes if w != v and A[v][w]] for v in nodes}
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return CartanComponent("D", r, tuple(nodes))
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return CartanComponent("E", r, tuple(nodes))
    raise NotFiniteCartanType("branched diagram is not of type D or E")


def classify_cartan(A) -> CartanTypeTag:
    A = tuple(tuple(int(x) for x in row) for row in A)
    _check_entries(A)
    comps = tuple(_identify(A, nodes) for nodes in components(A))
    return CartanTypeTag(A, comps)


def _path_matrix(r):
    A = [[0] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = 2
        if i + 1 < r:
            A[i][i + 1] = A[i + 1][i] = -1
    return A


def cartan_matrix(letter: str, rank: int) -> list[list[int]]:
    """Standard Cartan matrix of a connected finite type, in the module convention."""
    letter = letter.upper()
    if rank < 1:
        raise InvalidDynkin("rank must be positive")
    if letter == "A":
        return _path_matrix(rank)
    if letter == "B" and rank >= 2:
        # the last node is short
        A = _path_matrix(rank)
        A[rank - 1][rank - 2] = -2
        if rank == 2:
            return [[2, -2], [-1, 2]]
        return A
    if letter == "C" and rank >= 2:
        if rank == 2:
            return [[2, -2], [-1, 2]]
        A = _path_matrix(rank)
        A[rank - 2][rank - 1] = -2
        return A
    if letter == "D" and rank >= 4:
        A = _path_matrix(rank)
        A[rank - 1][rank - 2] = A[rank - 2][rank - 1] = 0
        A[rank - 1][rank - 3] = A[rank - 3][rank - 1] = -1
        return A
    if letter == "E" and rank in (6, 7, 8):
        # chain 0-1-...-(rank-2) with the extra node attached to node 2
        A = _path_matrix(rank - 1)
        A = [row + [0] for row in A] + [[0] * (rank - 1) + [2]]
        A[rank - 1][2] = A[2][rank - 1] = -1
        return A
    if letter == "F" and rank == 4:
        A = _path_matrix(4)
        A[2][1] = -2
        return A
    if letter == "G" and rank == 2:
        return [[2, -1], [-3, 2]]
    raise InvalidDynkin(f"no finite Dynkin diagram {letter}{rank}")
