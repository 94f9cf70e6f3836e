"""Quivers with frozen vertices, Fomin-Zelevinsky mutation, canonical forms.

Vertices are numbered 1..n throughout the public API.  Arrows between two
frozen vertices are stored but ignored by mutation and by canonical keys.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Iterable, Sequence

from .errors import BadInput, FrozenVertex


class Quiver:
    """Loop-free, 2-cycle-free multidigraph with a frozen-vertex subset."""

    __slots__ = ("n", "frozen", "mult")

    def __init__(self, n: int, frozen: Iterable[int] = (), mult: Sequence[Sequence[int]] | None = None):
        frozen = frozenset(int(v) for v in frozen)
        if mult is None:
            mult = [[0] * n for _ in range(n)]
        rows = tuple(tuple(int(x) for x in row) for row in mult)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise BadInput("mult must be an n x n matrix")
        if any(v < 1 or v > n for v in frozen):
            raise BadInput("frozen vertex out of range")
        for i in range(n):
            if rows[i][i] != 0:
                raise BadInput("loops are not allowed")
            for j in range(n):
                if rows[i][j] < 0:
                    raise BadInput("arrow multiplicities must be nonnegative")
                if i < j and rows[i][j] and rows[j][i]:
                    raise BadInput(f"2-cycle between {i + 1} and {j + 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "frozen", frozen)
        object.__setattr__(self, "mult", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Quiver is immutable")

    # ---- access ----

    def arrows(self, i: int, j: int) -> int:
        """Number of arrows i -> j."""
        return self.mult[i - 1][j - 1]

    def mutable(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if v not in self.frozen]

    def arrow_list(self) -> list[tuple[int, int, int]]:
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.mult[i][j]:
                    out.append((i + 1, j + 1, self.mult[i][j]))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quiver)
            and self.n == other.n
            and self.frozen == other.frozen
            and self.mult == other.mult
        )

    def __hash__(self) -> int:
        return hash((self.n, self.frozen, self.mult))

    def __repr__(self) -> str:
        return f"Quiver(n={self.n}, frozen={sorted(self.frozen)}, arrows={self.arrow_list()})"

    # ---- serialization ----

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "frozen": sorted(self.frozen),
            "arrows": [list(a) for a in self.arrow_list()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        try:
            n = int(data["n"])
            frozen = [int(v) for v in data.get("frozen", [])]
            mult = [[0] * n for _ in range(n)]
            for src, dst, m in data.get("arrows", []):
                if not (1 <= int(src) <= n and 1 <= int(dst) <= n):
                    raise BadInput(f"arrow endpoint out of range: {[src, dst, m]}")
                mult[int(src) - 1][int(dst) - 1] += int(m)
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"bad quiver JSON: {exc}") from exc
        return cls(n, frozen, mult)


def mutate_quiver(Q: Quiver, k: int) -> Quiver:
    """Fomin-Zelevinsky mutation at a mutable vertex k.

    (a) adds an arrow i -> j for every pair of arrows i -> k and k -> j,
    (b) reverses every arrow with source or target k,
    (c) erases pairs of opposite arrows.
    Arrows between two frozen vertices are never touched.
    """
    if not 1 <= k <= Q.n:
        raise BadInput(f"vertex {k} out of range 1..{Q.n}")
    if k in Q.frozen:
        raise FrozenVertex(f"vertex {k} is frozen")
    k0 = k - 1
    new = [list(row) for row in Q.mult]
    for i in range(Q.n):
        for j in range(Q.n):
            if i == j or i == k0 or j == k0:
                continue
            if (i + 1) in Q.frozen and (j + 1) in Q.frozen:
                continue
            new[i][j] += Q.mult[i][k0] * Q.mult[k0][j]
    for i in range(Q.n):
        if i != k0:
            new[i][k0] = Q.mult[k0][i]
            new[k0][i] = Q.mult[i][k0]
    for i in range(Q.n):
        for j in range(i + 1, Q.n):
            c = min(new[i][j], new[j][i])
            if c:
                new[i][j] -= c
                new[j][i] -= c
    return Quiver(Q.n, Q.frozen, new)


def exchange_matrix(Q: Quiver) -> list[list[int]]:
    """b[i][j] = #(arrows j->i) - #(arrows i->j), skew-symmetric."""
    return [
        [Q.mult[j][i] - Q.mult[i][j] for j in range(Q.n)]
        for i in range(Q.n)
    ]


def quiver_from_exchange(b: Sequence[Sequence[int]], frozen: Iterable[int] = ()) -> Quiver:
    """Inverse of exchange_matrix (frozen-to-frozen arrows cannot round-trip)."""
    n = len(b)
    mult = [[max(0, b[j][i]) for j in range(n)] for i in range(n)]
    return Quiver(n, frozen, mult)


def matrix_mutation(b: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Standard skew-symmetric matrix mutation at vertex k (1-based)."""
    n = len(b)
    k0 = k - 1
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k0 or j == k0:
                out[i][j] = -b[i][j]
            elif b[i][k0] * b[k0][j] > 0:
                sign = 1 if b[i][k0] > 0 else -1
                out[i][j] = b[i][j] + sign * b[i][k0] * b[k0][j]
            else:
                out[i][j] = b[i][j]
    return out


# ---- canonical form ----

def _refine_classes(Q: Quiver) -> list[list[int]]:
    """Partition mutable vertices by iterated neighborhood color refinement.

    Frozen vertices keep their labels, so arrow patterns towards them seed
    the initial coloring.  Only vertices in the same class can possibly be
    exchanged by an isomorphism that fixes the frozen part.
    """
    mut = Q.mutable()
    frz = sorted(Q.frozen)
    init = {
        v: (
            tuple(Q.arrows(v, f) for f in frz),
            tuple(Q.arrows(f, v) for f in frz),
        )
        for v in mut
    }
    ranks = {c: i for i, c in enumerate(sorted(set(init.values())))}
    color = {v: ranks[init[v]] for v in mut}
    while True:
        sig = {
            v: (
                color[v],
                tuple(sorted((color[w], Q.arrows(v, w)) for w in mut if Q.arrows(v, w))),
                tuple(sorted((color[w], Q.arrows(w, v)) for w in mut if Q.arrows(w, v))),
            )
            for v in mut
        }
        ranks = {c: i for i, c in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in mut}
        if new == color:
            break
        color = new
    classes: dict[int, list[int]] = {}
    for v in mut:
        classes.setdefault(color[v], []).append(v)
    return [sorted(classes[c]) for c in sorted(classes)]


def _serialize(Q: Quiver, order: list[int]) -> tuple:
    """Arrow matrix under the relabeling order + fixed frozen labels.

    Frozen-to-frozen arrows are zeroed out: they are invisible to mutation
    and must not affect mutation-class counting.
    """
    frz = sorted(Q.frozen)
    verts = order + frz
    fset = Q.frozen
    return tuple(
        tuple(0 if (a in fset and b in fset) else Q.arrows(a, b) for b in verts)
        for a in verts
    )


def canonical_key(Q: Quiver) -> tuple:
    """Isomorphism key: equal iff quivers differ by a mutable-vertex bijection.

    Frozen vertices are fixed pointwise; arrows between two frozen vertices
    are excluded.  Searches permutations compatible with a refinement
    partition, falling back to the partition order alone when the search
    space is too large.
    """
    classes = _refine_classes(Q)
    total = 1
    for c in classes:
        total *= factorial(len(c))
    header = (Q.n, tuple(sorted(Q.frozen)))
    if total > 500_000:
        # heuristic: refinement order only
        order = [v for c in classes for v in sorted(c)]
        return header + ("heuristic",) + _serialize(Q, order)
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for p in perms for v in p]
        s = _serialize(Q, order)
        if best is None or s < best:
            best = s
    if best is None:
        best = _serialize(Q, [])
    return header + best


# ---- Dynkin recognition ----

def dynkin_type(Q: Quiver) -> str | None:
    """Type of the mutable part's underlying graph, if simply-laced Dynkin."""
    mut = Q.mutable()
    n = len(mut)
    if n == 0:
        return None
    edges = []
    for a, b in itertools.combinations(mut, 2):
        m = Q.arrows(a, b) + Q.arrows(b, a)
        if m > 1:
            return None
        if m:
            edges.append((a, b))
    if len(edges) != n - 1:
        return None
    adj = {v: set() for v in mut}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    # connectivity
    seen = {mut[0]}
    stack = [mut[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return None
    degs = sorted(len(adj[v]) for v in mut)
    if degs[-1] <= 2:
        return f"A{n}"
    if degs[-1] > 3 or degs.count(3) > 1:
        return None
    branch = next(v for v in mut if len(adj[v]) == 3)
    lengths = []
    for start in adj[branch]:
        ln = 1
        prev, cur = branch, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None  # second branch point
            prev, cur = cur, nxt[0]
            ln += 1
        lengths.append(ln)
    a, b, c = sorted(lengths)
    if a == 1 and b == 1:
        return f"D{n}"
    if (a, b) == (1, 2) and c in (2, 3, 4):
        return {2: "E6", 3: "E7", 4: "E8"}[c]
    return None
