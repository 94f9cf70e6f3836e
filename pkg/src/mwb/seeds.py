"""Seeds, exchange-relation mutation, mutation-class exploration.

A seed pairs a quiver with a cluster of rational functions in the ambient
initial variables.  Exploration walks the mutation class breadth-first,
identifying clusters by the canonical Laurent expansions of their variables.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadInput, FrozenVertex
from .exactalg import LaurentPoly, RationalFunction
from .quiver import Quiver, canonical_key, mutate_quiver

log = logging.getLogger(__name__)


class Seed:
    """A cluster of rational functions attached to the vertices of a quiver."""

    __slots__ = ("vars", "quiver")

    def __init__(self, vars: Sequence[RationalFunction], quiver: Quiver):
        vars = tuple(vars)
        if len(vars) != quiver.n:
            raise BadInput(f"need {quiver.n} variables, got {len(vars)}")
        names = vars[0].names
        for v in vars:
            if v.names != names:
                raise BadInput("all seed variables must share one ambient variable set")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "quiver", quiver)

    def __setattr__(self, name, value):
        raise AttributeError("Seed is immutable")

    @property
    def names(self) -> tuple[str, ...]:
        return self.vars[0].names

    @classmethod
    def initial(cls, quiver: Quiver, names: Sequence[str] | None = None) -> "Seed":
        names = tuple(names) if names else tuple(f"x{i}" for i in range(1, quiver.n + 1))
        if len(names) != quiver.n:
            raise BadInput("one name per vertex required")
        return cls([RationalFunction.variable(names, nm) for nm in names], quiver)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Seed)
            and self.quiver == other.quiver
            and all(a == b for a, b in zip(self.vars, other.vars))
        )

    def __repr__(self) -> str:
        return f"Seed({[v.to_text() for v in self.vars]}, {self.quiver!r})"

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "quiver": self.quiver.to_json(),
            "variables": [
                {"num": v.num.to_text(), "den": v.den.to_text(), "text": v.to_text()}
                for v in self.vars
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        try:
            quiver = Quiver.from_json(data["quiver"])
            names = tuple(data["names"])
            vars = [
                RationalFunction(
                    LaurentPoly.from_text(names, d["num"]),
                    LaurentPoly.from_text(names, d["den"]),
                )
                for d in data["variables"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"bad seed JSON: {exc}") from exc
        return cls(vars, quiver)


def mutate_seed(S: Seed, k: int) -> Seed:
    """Exchange-relation mutation: y_k -> (prod_{i->k} y_i + prod_{k->j} y_j)/y_k."""
    if not 1 <= k <= S.quiver.n:
        raise BadInput(f"vertex {k} out of range 1..{S.quiver.n}")
    if k in S.quiver.frozen:
        raise FrozenVertex(f"vertex {k} is frozen")
    # build both arrow products at the Laurent level so that only one
    # rational reduction happens, at the very end
    one = LaurentPoly.one(S.names)
    num_in = num_out = den_in = den_out = one
    for i in range(1, S.quiver.n + 1):
        v = S.vars[i - 1]
        m_in = S.quiver.arrows(i, k)
        if m_in:
            num_in = num_in * v.num ** m_in
            den_in = den_in * v.den ** m_in
        m_out = S.quiver.arrows(k, i)
        if m_out:
            num_out = num_out * v.num ** m_out
            den_out = den_out * v.den ** m_out
    vk = S.vars[k - 1]
    new_var = RationalFunction(
        (num_in * den_out + num_out * den_in) * vk.den,
        den_in * den_out * vk.num,
    )
    vars = list(S.vars)
    vars[k - 1] = new_var
    return Seed(vars, mutate_quiver(S.quiver, k))


def certify_laurent(v: RationalFunction) -> LaurentPoly:
    """Exact Laurent expansion of a cluster variable in the initial cluster.

    Raises NotDivisible when none exists, falsifying a Laurent claim.
    """
    return v.as_laurent()


@dataclass(frozen=True)
class MutationClassReport:
    clusters: frozenset  # frozensets of canonical variable strings
    variables: frozenset  # all distinct variables, frozen included
    mutable_variables: frozenset
    verdict: str  # "finite" | "exceeded-budget"
    depth: int
    seeds_seen: int

    def to_json(self) -> dict:
        return {
            "clusters": len(self.clusters),
            "variables": len(self.variables),
            "mutable_variables": len(self.mutable_variables),
            "verdict": self.verdict,
            "depth": self.depth,
            "seeds_seen": self.seeds_seen,
        }


def _render_seed(S: Seed) -> list[str]:
    return [certify_laurent(v).to_text() for v in S.vars]


def seed_identity(S: Seed) -> tuple:
    return (frozenset(_render_seed(S)), canonical_key(S.quiver))


def explore(S0: Seed, max_seeds: int = 10_000, max_depth: int | None = None) -> MutationClassReport:
    """Deterministic breadth-first census of the mutation class of S0."""
    frozen_idx = S0.quiver.frozen
    clusters = set()
    variables: set[str] = set()
    mutable_variables: set[str] = set()
    seen = set()
    rendered0 = _render_seed(S0)
    seen.add((frozenset(rendered0), canonical_key(S0.quiver)))
    queue: deque[tuple[Seed, int, list[str]]] = deque([(S0, 0, rendered0)])
    depth_reached = 0
    verdict = "finite"
    negative_seen = False
    while queue:
        seed, depth, rendered = queue.popleft()
        depth_reached = max(depth_reached, depth)
        clusters.add(frozenset(rendered))
        for idx, text in enumerate(rendered, start=1):
            variables.add(text)
            if idx not in frozen_idx:
                mutable_variables.add(text)
            if not negative_seen and "-" in text:
                negative_seen = True
                log.info("negative coefficient observed in %s (record only)", text)
        if max_depth is not None and depth >= max_depth:
            if any(
                seed_identity(mutate_seed(seed, k)) not in seen
                for k in seed.quiver.mutable()
            ):
                verdict = "exceeded-budget"
            continue
        for k in seed.quiver.mutable():
            nxt = mutate_seed(seed, k)
            nxt_rendered = _render_seed(nxt)
            ident = (frozenset(nxt_rendered), canonical_key(nxt.quiver))
            if ident in seen:
                continue
            if len(seen) >= max_seeds:
                verdict = "exceeded-budget"
                queue.clear()
                break
            seen.add(ident)
            queue.append((nxt, depth + 1, nxt_rendered))
    return MutationClassReport(
        clusters=frozenset(clusters),
        variables=frozenset(variables),
        mutable_variables=frozenset(mutable_variables),
        verdict=verdict,
        depth=depth_reached,
        seeds_seen=len(seen),
    )


def rank2_quiver(a: int, frozen: Iterable[int] = ()) -> Quiver:
    """Two mutable vertices joined by a arrows 1 -> 2."""
    return Quiver(2, frozen, [[0, a], [0, 0]])


def rank2_sequence(a: int, count: int) -> list[RationalFunction]:
    """x_3, ..., x_{count+2} from the recurrence x_{k+1} x_{k-1} = 1 + x_k^a."""
    if count < 1:
        raise BadInput("count must be >= 1")
    names = ("x1", "x2")
    one = RationalFunction.constant(names, 1)
    prev = RationalFunction.variable(names, "x1")
    cur = RationalFunction.variable(names, "x2")
    out = []
    for _ in range(count):
        nxt = (one + cur ** a) / prev
        out.append(nxt)
        prev, cur = cur, nxt
    return out
