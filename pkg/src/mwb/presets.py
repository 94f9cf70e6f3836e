"""Bundled example seeds shared by the CLI, the server and the tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cartanweyl import WeylWord, affine_sl2_cartan
from .errors import BadInput, NotDivisible
from .exactalg import RationalFunction, exact_div
from .lieseeds import build_gamma_quiver
from .matrixreal import generic_unitriangular, minor
from .quiver import Quiver
from .seeds import Seed, rank2_quiver

# triangular quiver on the flag-minor seed of the upper unitriangular 4x4
# matrices; vertices carry x1..x6 = D_{1,2}, D_{1,3}, D_{12,23}, D_{1,4},
# D_{12,34}, D_{123,234} with the last three frozen
_TRIANGLE = Quiver.from_json({
    "n": 6,
    "frozen": [4, 5, 6],
    "arrows": [
        [1, 2, 1], [2, 3, 1], [2, 4, 1], [3, 1, 1], [3, 5, 1],
        [4, 5, 1], [5, 2, 1], [5, 6, 1], [6, 3, 1],
    ],
})

_TRIANGLE_MINORS = (
    ([1], [2]), ([1], [3]), ([1, 2], [2, 3]),
    ([1], [4]), ([1, 2], [3, 4]), ([1, 2, 3], [2, 3, 4]),
)


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    seed: Seed
    rows: tuple[int, ...] | None = None  # row hint per vertex, for layouts
    aliases: tuple[str, ...] | None = None  # display names of the variables
    minor_size: int | None = None  # rank of the minor model, if any

    def to_json(self) -> dict:
        out = {"name": self.name, "description": self.description,
               "seed": self.seed.to_json()}
        if self.rows:
            out["rows"] = list(self.rows)
        if self.aliases:
            out["aliases"] = list(self.aliases)
        return out


def _triangle_preset() -> Preset:
    names = tuple(f"x{i}" for i in range(1, 7))
    m = generic_unitriangular(4)
    aliases = tuple(
        "D_{%s,%s}" % ("".join(map(str, r)), "".join(map(str, c)))
        for r, c in _TRIANGLE_MINORS
    )
    return Preset(
        name="a3-bfz",
        description="flag-minor seed on the triangular quiver for SL4",
        seed=Seed.initial(_TRIANGLE, names),
        aliases=aliases,
        minor_size=4,
    )


def _affine_preset() -> Preset:
    word = WeylWord((1, 2, 1, 2))
    quiver = build_gamma_quiver(affine_sl2_cartan(), word)
    return Preset(
        name="affine-a1-w4",
        description="two-row word quiver for the length-4 affine sl2 word",
        seed=Seed.initial(quiver),
        rows=tuple(word.letters),
    )


def _kronecker_preset(a: int) -> Preset:
    return Preset(
        name=f"kronecker-a{a}",
        description=f"two mutable vertices joined by {a} arrow(s)",
        seed=Seed.initial(rank2_quiver(a)),
    )


def preset_names() -> list[str]:
    return ["a3-bfz", "affine-a1-w4", "kronecker-a1", "kronecker-a2"]


def get_preset(name: str) -> Preset:
    if name == "a3-bfz":
        return _triangle_preset()
    if name == "affine-a1-w4":
        return _affine_preset()
    if name == "kronecker-a1":
        return _kronecker_preset(1)
    if name == "kronecker-a2":
        return _kronecker_preset(2)
    raise BadInput(f"unknown preset {name!r}; choose one of {preset_names()}")


def minor_alias(preset: Preset, var: RationalFunction) -> str | None:
    """Flag-minor name of a cluster variable under the preset's minor model.

    Substitutes the preset's minors for the ambient variables and searches
    the full set of solid flag minors for an exact match.
    """
    if preset.minor_size is None:
        return None
    m = generic_unitriangular(preset.minor_size)
    env = {
        nm: minor(m, rows, cols)
        for nm, (rows, cols) in zip(preset.seed.names, _TRIANGLE_MINORS)
    }
    try:
        value = exact_div(var.num.substitute(env), var.den.substitute(env))
    except NotDivisible:
        return None
    for name, poly in _minor_table(preset.minor_size):
        if poly == value:
            return name
    return None


@lru_cache(maxsize=None)
def _minor_table(size: int) -> tuple:
    m = generic_unitriangular(size)
    out = []
    for k in range(1, size):
        for rows in itertools.combinations(range(1, size + 1), k):
            for cols in itertools.combinations(range(1, size + 1), k):
                name = "D_{%s,%s}" % ("".join(map(str, rows)), "".join(map(str, cols)))
                out.append((name, minor(m, rows, cols)))
    return tuple(out)
