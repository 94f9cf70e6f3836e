"""Symmetric generalized Cartan matrices and Weyl word combinatorics.

Weyl group elements are handled purely through reduced words acting on the
root and weight lattices; no group-element normal forms are ever built, so
everything works uniformly for infinite (Kac-Moody) Weyl groups.

Convention: a word w = s_{i_r}...s_{i_1} is stored as its letter sequence
(i_1, ..., i_r), numbering the factors from right to left.  A product
s_{i_1}...s_{i_k} applied to a vector therefore applies s_{i_k} first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadInput, NotReduced


class CartanMatrix:
    """Symmetric generalized Cartan matrix with connected diagram."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise BadInput("Cartan matrix must be square")
        for i in range(n):
            if rows[i][i] != 2:
                raise BadInput("diagonal entries must equal 2")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise BadInput("matrix must be symmetric")
                if rows[i][j] > 0:
                    raise BadInput("off-diagonal entries must be nonpositive")
        if n > 1 and not _connected(rows):
            raise BadInput("Cartan diagram must be connected")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("CartanMatrix is immutable")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"CartanMatrix({[list(r) for r in self.entries]})"


def _connected(rows) -> bool:
    n = len(rows)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and rows[i][j] != 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def type_a_cartan(n: int) -> CartanMatrix:
    """The A_n Cartan matrix."""
    rows = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]
    return CartanMatrix(rows)


def type_d_cartan(n: int) -> CartanMatrix:
    """The D_n Cartan matrix (node n attached to node n-2)."""
    if n < 3:
        raise BadInput("D_n needs n >= 3")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
    for i in range(n - 2):
        rows[i][i + 1] = rows[i + 1][i] = -1
    rows[n - 3][n - 1] = rows[n - 1][n - 3] = -1
    return CartanMatrix(rows)


def affine_sl2_cartan() -> CartanMatrix:
    """The affine sl2 Cartan matrix [[2,-2],[-2,2]]."""
    return CartanMatrix([[2, -2], [-2, 2]])


@dataclass(frozen=True)
class RootVector:
    """Integer vector in the simple-root basis (alpha_i)."""

    coords: tuple[int, ...]

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def is_positive(self) -> bool:
        return any(self.coords) and all(c >= 0 for c in self.coords)

    def to_text(self, prefix: str = "a") -> str:
        parts = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            head = "" if c == 1 else ("-" if c == -1 else str(c))
            parts.append(f"{head}{prefix}{i}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


@dataclass(frozen=True)
class WeightVector:
    """Integer vector in the fundamental-weight basis (varpi_i)."""

    coords: tuple[int, ...]


def simple_root(n: int, i: int) -> RootVector:
    coords = [0] * n
    coords[i - 1] = 1
    return RootVector(tuple(coords))


def reflect(C: CartanMatrix, i: int, v: RootVector | WeightVector):
    """Apply the simple reflection s_i: s_i(v) = v - v(h_i) * alpha_i."""
    if not 1 <= i <= C.n:
        raise IndexError(f"reflection index {i} out of range 1..{C.n}")
    if isinstance(v, RootVector):
        pairing = sum(v.coords[j] * C.entries[j][i - 1] for j in range(C.n))
        coords = list(v.coords)
        coords[i - 1] -= pairing
        return RootVector(tuple(coords))
    if isinstance(v, WeightVector):
        # alpha_i = sum_j c_{ji} varpi_j, so subtracting v(h_i)*alpha_i stays
        # inside the weight lattice
        pairing = v.coords[i - 1]
        coords = list(v.coords)
        for j in range(C.n):
            coords[j] -= pairing * C.entries[j][i - 1]
        return WeightVector(tuple(coords))
    raise TypeError("expected RootVector or WeightVector")


@dataclass(frozen=True)
class WeylWord:
    """Letters (i_1, ..., i_r) of w = s_{i_r}...s_{i_1}."""

    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def validate(self, C: CartanMatrix) -> None:
        for i in self.letters:
            if not 1 <= i <= C.n:
                raise BadInput(f"letter {i} out of range 1..{C.n}")


def inversion_roots_unchecked(C: CartanMatrix, w: WeylWord) -> list[RootVector]:
    """All beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}), without reducedness checks."""
    w.validate(C)
    out = []
    for k in range(1, len(w) + 1):
        beta = simple_root(C.n, w.letters[k - 1])
        # rightmost factor acts first: apply s_{i_{k-1}}, ..., s_{i_1}
        for s in range(k - 1, 0, -1):
            beta = reflect(C, w.letters[s - 1], beta)
        out.append(beta)
    return out


def is_reduced(C: CartanMatrix, w: WeylWord) -> bool:
    """True iff the word has length ell(w), by the positive-inversion criterion."""
    return all(b.is_positive() for b in inversion_roots_unchecked(C, w))


def inversion_roots(C: CartanMatrix, w: WeylWord) -> list[RootVector]:
    betas = inversion_roots_unchecked(C, w)
    if not all(b.is_positive() for b in betas):
        raise NotReduced(f"word {w.letters} is not reduced")
    return betas


def gamma_weights(C: CartanMatrix, w: WeylWord) -> list[RootVector]:
    """The weights gamma_k = varpi_{i_k} - s_{i_1}...s_{i_k}(varpi_{i_k}).

    Each difference lies in the root lattice and is returned in the
    simple-root basis.  The fundamental weight is carried implicitly (as a
    fixed delta-vector) while only the accumulating root-lattice correction
    is stored, so singular affine Cartan matrices need never be inverted.
    """
    if not is_reduced(C, w):
        raise NotReduced(f"word {w.letters} is not reduced")
    n = C.n
    out = []
    for k in range(1, len(w) + 1):
        ik = w.letters[k - 1]
        r = [0] * n  # root-basis part of varpi_{i_k} + sum r_j alpha_j
        for s in range(k, 0, -1):
            i = w.letters[s - 1]
            pairing = (1 if i == ik else 0) + sum(
                r[j] * C.entries[j][i - 1] for j in range(n)
            )
            r[i - 1] -= pairing
        out.append(RootVector(tuple(-x for x in r)))
    return out


@dataclass(frozen=True)
class PositionTables:
    """All position bookkeeping for a word, with sentinels 0 and r+1.

    Tables indexed by position k (1..r) are plain dicts; the row tables
    kminus_row/kplus_row take (k, j) and t/kcount take a letter j.
    """

    letters: tuple[int, ...]
    r: int
    kminus: dict[int, int] = field(repr=False)
    kplus: dict[int, int] = field(repr=False)
    kmin: dict[int, int] = field(repr=False)
    kmax: dict[int, int] = field(repr=False)

    def kminus_j(self, k: int, j: int) -> int:
        """max({0} u {s < k : i_s = j})."""
        return max([0] + [s for s in range(1, k) if self.letters[s - 1] == j])

    def kplus_j(self, k: int, j: int) -> int:
        """min({r+1} u {s > k : i_s = j})."""
        return min([self.r + 1] + [s for s in range(k + 1, self.r + 1)
                                   if self.letters[s - 1] == j])

    def kcount(self, k: int, j: int) -> int:
        """k[j] = number of s < k with i_s = j."""
        return sum(1 for s in range(1, k) if self.letters[s - 1] == j)

    def t(self, j: int) -> int:
        """t_j = total occurrences of j in the word."""
        return sum(1 for x in self.letters if x == j)

    def row_positions(self, j: int) -> list[int]:
        """Positions carrying letter j, in increasing order."""
        return [s for s in range(1, self.r + 1) if self.letters[s - 1] == j]


def word_positions(w: WeylWord) -> PositionTables:
    letters = w.letters
    r = len(letters)
    kminus = {}
    kplus = {}
    kmin = {}
    kmax = {}
    for k in range(1, r + 1):
        same = [s for s in range(1, r + 1) if letters[s - 1] == letters[k - 1]]
        kminus[k] = max([0] + [s for s in same if s < k])
        kplus[k] = min([s for s in same if s > k] + [r + 1])
        kmin[k] = min(same)
        kmax[k] = max(same)
    return PositionTables(letters=letters, r=r, kminus=kminus, kplus=kplus,
                          kmin=kmin, kmax=kmax)


def cartan_from_json(data) -> CartanMatrix:
    try:
        return CartanMatrix(data)
    except (TypeError, ValueError) as exc:
        raise BadInput(f"bad cartan matrix: {exc}") from exc


def word_from_json(data) -> WeylWord:
    try:
        return WeylWord(tuple(int(x) for x in data))
    except (TypeError, ValueError) as exc:
        raise BadInput(f"bad word: {exc}") from exc
