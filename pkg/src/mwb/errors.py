"""Error types shared across the workbench."""


class MwbError(Exception):
    """Base class for workbench errors."""


class ArityMismatch(MwbError):
    """Operands live over different variable sets."""


class NotDivisible(MwbError):
    """No exact Laurent quotient exists.

    Informative on the cluster side: it falsifies a Laurent-phenomenon claim.
    """


class NotReduced(MwbError):
    """The given Weyl word is not reduced."""


class FrozenVertex(MwbError):
    """Mutation requested at a frozen vertex."""


class SequenceMismatch(MwbError):
    """Quiver-predicted exchange partners disagree with the interval prediction."""


class Incompatible(MwbError):
    """Quantum seed data fails a q-commutation consistency check."""


class BadInput(MwbError):
    """Malformed user-facing input (CLI/JSON)."""


class VerificationFailed(MwbError):
    """A verification battery check did not hold."""
