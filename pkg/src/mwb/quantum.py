"""Quantum torus elements, normalized monomials, quantum seed mutation.

All expansions live in one ambient quantum torus attached to the initial
cluster: generators Y_1..Y_r with Y_i Y_j = q^{lambda_ij} Y_j Y_i, where
lambda is the skew-symmetrization of a fixed hom-dimension matrix.  A
quantum seed carries the hom matrix of its current cluster and propagates
it through mutations, so every exchange relation is pinned to an exact
power of q with no square roots.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .cartanweyl import WeylWord, affine_sl2_cartan
from .errors import ArityMismatch, BadInput, FrozenVertex, Incompatible, NotDivisible
from .exactalg import LaurentPoly, _grlex_lead, exact_div
from .lieseeds import build_gamma_quiver
from .quiver import Quiver, mutate_quiver

QNAMES = ("q",)


def q_power(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(QNAMES, (k,))


def _as_matrix(rows) -> tuple[tuple[int, ...], ...]:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise BadInput("matrix must be square")
    return m


def skew_from_homdims(homdims) -> tuple[tuple[int, ...], ...]:
    """lambda_ij = [V_i, V_j] - [V_j, V_i]."""
    h = _as_matrix(homdims)
    if any(x < 0 for row in h for x in row):
        raise BadInput("hom dimensions must be nonnegative")
    n = len(h)
    return tuple(tuple(h[i][j] - h[j][i] for j in range(n)) for i in range(n))


def check_skew(lam) -> tuple[tuple[int, ...], ...]:
    m = _as_matrix(lam)
    n = len(m)
    if any(m[i][j] != -m[j][i] for i in range(n) for j in range(n)):
        raise BadInput("commutation matrix must be skew-symmetric")
    return m


def hom_pairing(a: Sequence[int], b: Sequence[int], homdims) -> int:
    """[A, B] = sum_ij a_i [V_i, V_j] b_j, extended bilinearly."""
    h = _as_matrix(homdims)
    return sum(a[i] * h[i][j] * b[j] for i in range(len(h)) for j in range(len(h)))


class QuantumTorusElement:
    """Linear combination of torus monomials Y^a with ZZ[q^{+-1}] coefficients."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple, LaurentPoly] | None = None):
        names = tuple(names)
        clean = {}
        for exps, c in (terms or {}).items():
            if c.names != QNAMES:
                raise BadInput("coefficients must be Laurent polynomials in q")
            if not c.is_zero():
                clean[tuple(exps)] = c
        for exps in clean:
            if len(exps) != len(names):
                raise ArityMismatch("exponent vector length mismatch")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("QuantumTorusElement is immutable")

    @classmethod
    def zero(cls, names) -> "QuantumTorusElement":
        return cls(names, {})

    @classmethod
    def one(cls, names) -> "QuantumTorusElement":
        return cls(names, {(0,) * len(tuple(names)): LaurentPoly.one(QNAMES)})

    @classmethod
    def generator(cls, names, i: int) -> "QuantumTorusElement":
        """Y_i (1-based)."""
        names = tuple(names)
        exps = tuple(1 if j == i - 1 else 0 for j in range(len(names)))
        return cls(names, {exps: LaurentPoly.one(QNAMES)})

    @classmethod
    def monomial(cls, names, exps, coeff: LaurentPoly | None = None) -> "QuantumTorusElement":
        return cls(names, {tuple(exps): coeff if coeff is not None else LaurentPoly.one(QNAMES)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _check(self, other: "QuantumTorusElement") -> None:
        if self.names != other.names:
            raise ArityMismatch("torus rank mismatch")

    def __add__(self, other: "QuantumTorusElement") -> "QuantumTorusElement":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return QuantumTorusElement(self.names, terms)

    def __neg__(self) -> "QuantumTorusElement":
        return QuantumTorusElement(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "QuantumTorusElement") -> "QuantumTorusElement":
        return self + (-other)

    def scale(self, c: LaurentPoly) -> "QuantumTorusElement":
        return QuantumTorusElement(self.names, {e: cc * c for e, cc in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuantumTorusElement)
            and self.names == other.names
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.names, frozenset((e, c) for e, c in self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{nm}^{e}" if e != 1 else nm
                for nm, e in zip(self.names, exps)
                if e
            )
            ct = c.to_text()
            if not mono:
                parts.append(ct)
            elif ct == "1":
                parts.append(mono)
            elif ct == "-1":
                parts.append(f"-{mono}")
            elif len(c.terms) == 1 and not ct.startswith("-"):
                parts.append(f"{ct}*{mono}")
            else:
                parts.append(f"({ct})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"QuantumTorusElement({self.to_text()!r})"

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(e), "coeff": c.to_text()}
            for e, c in self.sorted_terms()
        ]

    def specialize_q1(self) -> LaurentPoly:
        """Commutative shadow at q = 1."""
        terms = {}
        for e, c in self.terms.items():
            v = c.evaluate({"q": 1})
            if v.denominator != 1:
                raise BadInput("non-integer coefficient at q = 1")
            terms[e] = int(v)
        return LaurentPoly(self.names, terms)


def _reorder_power(a: Sequence[int], b: Sequence[int], lam) -> int:
    # Y^a Y^b = q^e Y^{a+b} for ordered monomials: moving each Y_i^{b_i}
    # left past the tail Y_j^{a_j} with j > i picks up q^{a_j b_i lam_ji}
    return sum(
        a[j] * b[i] * lam[j][i]
        for i in range(len(a))
        for j in range(i + 1, len(a))
    )


def torus_mul(x: QuantumTorusElement, y: QuantumTorusElement, lam) -> QuantumTorusElement:
    """Product in the quantum torus with commutation matrix lam."""
    x._check(y)
    lam = check_skew(lam)
    if len(lam) != len(x.names):
        raise ArityMismatch("commutation matrix size mismatch")
    terms: dict[tuple, LaurentPoly] = {}
    for ea, ca in x.terms.items():
        for eb, cb in y.terms.items():
            e = tuple(p + r for p, r in zip(ea, eb))
            c = ca * cb * q_power(_reorder_power(ea, eb, lam))
            terms[e] = terms[e] + c if e in terms else c
    return QuantumTorusElement(x.names, terms)


def _alpha(a: Sequence[int], homdims) -> int:
    h = _as_matrix(homdims)
    n = len(h)
    return sum(
        a[i] * a[j] * h[i][j] for i in range(n) for j in range(i + 1, n)
    ) + sum(a[i] * (a[i] - 1) // 2 * h[i][i] for i in range(n))


def normalized_monomial(a: Sequence[int], homdims, names: Sequence[str] | None = None) -> QuantumTorusElement:
    """Y_A = q^{-alpha(A)} Y_1^{a_1} ... Y_r^{a_r}."""
    h = _as_matrix(homdims)
    if any(x < 0 for row in h for x in row):
        raise BadInput("hom dimensions must be nonnegative")
    if names is None:
        names = tuple(f"Y{i}" for i in range(1, len(h) + 1))
    return QuantumTorusElement.monomial(names, a, q_power(-_alpha(a, h)))


def left_divide(a: QuantumTorusElement, b: QuantumTorusElement, lam) -> QuantumTorusElement:
    """The unique z with a * z = b, by leading-term peeling.

    Raises NotDivisible when no such torus element with ZZ[q^{+-1}]
    coefficients exists.
    """
    a._check(b)
    lam = check_skew(lam)
    if a.is_zero():
        raise NotDivisible("left division by zero")
    lead_a = _grlex_lead(a.terms)
    ca = a.terms[lead_a]
    quotient: dict[tuple, LaurentPoly] = {}
    rem = b
    # a true quotient never has more terms than peeling steps; anything past
    # this bound is an infinite-series division
    cap = 8 * (len(a.terms) + len(b.terms)) + 64
    for _ in range(cap):
        if rem.is_zero():
            return QuantumTorusElement(a.names, quotient)
        lead_b = _grlex_lead(rem.terms)
        e = tuple(p - r for p, r in zip(lead_b, lead_a))
        coeff = exact_div(rem.terms[lead_b], ca * q_power(_reorder_power(lead_a, e, lam)))
        quotient[e] = quotient[e] + coeff if e in quotient else coeff
        rem = rem - torus_mul(a, QuantumTorusElement.monomial(a.names, e, coeff), lam)
    raise NotDivisible("left division did not terminate")


class QuantumSeed:
    """A quiver, the hom matrix of its current cluster, and the cluster's
    expansions in the initial quantum torus."""

    __slots__ = ("quiver", "homdims", "lam", "vars")

    def __init__(self, quiver: Quiver, homdims, lam, vars: Sequence[QuantumTorusElement]):
        homdims = _as_matrix(homdims)
        lam = check_skew(lam)
        vars = tuple(vars)
        if not (len(homdims) == len(lam) == quiver.n == len(vars)):
            raise BadInput("rank mismatch between quiver, hom matrix and cluster")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "homdims", homdims)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "vars", vars)

    def __setattr__(self, name, value):
        raise AttributeError("QuantumSeed is immutable")

    @classmethod
    def initial(cls, quiver: Quiver, homdims) -> "QuantumSeed":
        homdims = _as_matrix(homdims)
        lam = skew_from_homdims(homdims)
        names = tuple(f"Y{i}" for i in range(1, quiver.n + 1))
        vars = [QuantumTorusElement.generator(names, i) for i in range(1, quiver.n + 1)]
        seed = cls(quiver, homdims, lam, vars)
        _check_cluster_commutation(seed)
        return seed

    @property
    def names(self) -> tuple[str, ...]:
        return self.vars[0].names

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuantumSeed)
            and self.quiver == other.quiver
            and self.homdims == other.homdims
            and self.lam == other.lam
            and self.vars == other.vars
        )

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "homdims": [list(row) for row in self.homdims],
            "lambda": [list(row) for row in self.lam],
            "variables": [v.to_json() for v in self.vars],
        }


def _check_cluster_commutation(seed: QuantumSeed) -> None:
    # the current cluster must pairwise q-commute with exponents read from
    # the skew-symmetrization of the current hom matrix
    h = seed.homdims
    for i in range(seed.quiver.n):
        for j in range(i + 1, seed.quiver.n):
            want = h[i][j] - h[j][i]
            lhs = torus_mul(seed.vars[i], seed.vars[j], seed.lam)
            rhs = torus_mul(seed.vars[j], seed.vars[i], seed.lam).scale(q_power(want))
            if lhs != rhs:
                raise Incompatible(
                    f"cluster variables {i + 1} and {j + 1} do not q-commute "
                    f"with exponent {want}"
                )


def quantum_mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Quantum exchange at a mutable vertex.

    The new variable is the unique torus element Z with

        Z_k * Z = q^{[old, new]} (q^{-1} Y_out + Y_in),

    where Y_in, Y_out are the normalized monomials on the in- and out-arrow
    multisets at k and [old, new] = sum_l in_l [T_k, T_l] - [T_k, T_k].
    The hom matrix is propagated by additivity over the two exchange
    sequences.  Raises Incompatible if the resulting cluster fails the
    pairwise q-commutation postcondition.
    """
    n = seed.quiver.n
    if not 1 <= k <= n:
        raise BadInput(f"vertex {k} out of range 1..{n}")
    if k in seed.quiver.frozen:
        raise FrozenVertex(f"vertex {k} is frozen")
    h = seed.homdims
    kk = k - 1
    e_in = [seed.quiver.arrows(j, k) for j in range(1, n + 1)]
    e_out = [seed.quiver.arrows(k, j) for j in range(1, n + 1)]

    def cluster_monomial(exps):
        acc = QuantumTorusElement.one(seed.names)
        for idx, m in enumerate(exps):
            for _ in range(m):
                acc = torus_mul(acc, seed.vars[idx], seed.lam)
        return acc.scale(q_power(-_alpha(exps, h)))

    bracket = sum(e_in[l] * h[kk][l] for l in range(n)) - h[kk][kk]
    rhs = (
        cluster_monomial(e_out).scale(q_power(bracket - 1))
        + cluster_monomial(e_in).scale(q_power(bracket))
    )
    try:
        new_var = left_divide(seed.vars[kk], rhs, seed.lam)
    except NotDivisible as exc:
        raise Incompatible(f"exchange at vertex {k} has no torus solution: {exc}") from exc

    # hom matrix update by additivity over 0 -> old -> E_in -> new -> 0
    new_h = [list(row) for row in h]
    for j in range(n):
        if j == kk:
            continue
        new_h[j][kk] = sum(e_in[l] * h[j][l] for l in range(n)) - h[j][kk]
        new_h[kk][j] = sum(e_in[l] * h[l][j] for l in range(n)) - h[kk][j]
    new_h[kk][kk] = sum(e_in[l] * new_h[l][kk] for l in range(n)) - bracket
    if any(x < 0 for row in new_h for x in row):
        raise Incompatible("hom matrix update produced a negative dimension")

    vars = list(seed.vars)
    vars[kk] = new_var
    out = QuantumSeed(mutate_quiver(seed.quiver, k), new_h, seed.lam, vars)
    _check_cluster_commutation(out)
    return out


def specialize_q1(x: QuantumTorusElement) -> LaurentPoly:
    return x.specialize_q1()


# hom-dimension matrix [V_i, V_j] of the initial cluster for the affine
# sl2 word (1, 2, 1, 2); its skew-symmetrization is the commutation matrix
# of that example, and it satisfies [V_i,V_j] + [V_j,V_i] = gamma_i^T C gamma_j
AFFINE_W4_HOMDIMS = (
    (1, 0, 1, 0),
    (2, 1, 2, 1),
    (3, 2, 4, 2),
    (4, 3, 6, 4),
)


def affine_w4_quantum_seed() -> QuantumSeed:
    """Initial quantum seed on the word quiver of (1, 2, 1, 2)."""
    quiver = build_gamma_quiver(affine_sl2_cartan(), WeylWord((1, 2, 1, 2)))
    return QuantumSeed.initial(quiver, AFFINE_W4_HOMDIMS)
