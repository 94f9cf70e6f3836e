"""Quivers and seeds attached to reduced words.

Builds the word quiver with its ordinary and horizontal arrows, runs the
distinguished mutation sequence with interval-label bookkeeping (verifying
at every step that the quiver-predicted exchange partners match the
interval-combinatorics prediction), and constructs type-A initial seeds
whose variables are flag minors of a generic unitriangular matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartanweyl import CartanMatrix, WeylWord, is_reduced, type_a_cartan, word_positions
from .errors import NotReduced, SequenceMismatch
from .exactalg import RationalFunction
from .matrixreal import generic_unitriangular, minor
from .quiver import Quiver, mutate_quiver
from .seeds import Seed

# An interval label is a pair (l, k) standing for the module M[l,k] = V_l/V_{k^-};
# by convention M[l,k] = 0 when k > l.


def label_text(label: tuple[int, int]) -> str:
    return f"M[{label[0]},{label[1]}]"


def build_gamma_quiver(C: CartanMatrix, w: WeylWord) -> Quiver:
    """The quiver on positions 1..r attached to a reduced word.

    Ordinary arrows: |c_{i_s,i_t}| arrows s -> t when t^+ >= s^+ > t > s.
    Horizontal arrows: s -> s^- when s^- > 0.
    Frozen vertices: positions k with k^+ = r+1 (last occurrence of a letter).
    """
    if not is_reduced(C, w):
        raise NotReduced(f"word {w.letters} is not reduced")
    tables = word_positions(w)
    r = len(w)
    mult = [[0] * r for _ in range(r)]
    for s in range(1, r + 1):
        for t in range(1, r + 1):
            if w.letters[s - 1] == w.letters[t - 1]:
                continue
            if tables.kplus[t] >= tables.kplus[s] > t > s:
                mult[s - 1][t - 1] += abs(C[w.letters[s - 1], w.letters[t - 1]])
    for s in range(1, r + 1):
        if tables.kminus[s] > 0:
            mult[s - 1][tables.kminus[s] - 1] += 1
    frozen = [k for k in range(1, r + 1) if tables.kplus[k] == r + 1]
    return Quiver(r, frozen, mult)


def distinguished_sequence(C: CartanMatrix, w: WeylWord) -> list[dict]:
    """The explicit mutation sequence from the initial to the final labels.

    Grouped into r steps; at step k it mutates t_{i_k} - 1 - k[i_k]
    consecutive vertices on row i_k, starting from the rightmost one
    (row labels increase from right to left, so the rightmost vertex is
    the smallest position).  Total length: sum_j t_j(t_j-1)/2.
    """
    if not is_reduced(C, w):
        raise NotReduced(f"word {w.letters} is not reduced")
    tables = word_positions(w)
    out = []
    for k in range(1, len(w) + 1):
        row = w.letters[k - 1]
        count = tables.t(row) - 1 - tables.kcount(k, row)
        positions = tables.row_positions(row)
        for a in range(count):
            out.append({"vertex": positions[a], "step": k, "row": row, "substep": a + 1})
    return out


@dataclass(frozen=True)
class LabeledSeedState:
    quiver: Quiver
    labels: dict[int, tuple[int, int]]  # vertex -> (l, k) for M[l,k]


def _interval_partners(C, tables, row, dminus, b, d, bplus):
    """Exchange partners predicted by the interval combinatorics.

    Returns the two multisets (as sorted lists of labels) from the short
    exact sequences around the mutation M[d^-,b] -> M[d,b^+], dropping
    zero modules M[l,k] with k > l or out-of-range endpoints.
    """
    first = []
    if bplus <= dminus:
        first.append((dminus, bplus))
    if b <= d <= tables.r:
        first.append((d, b))
    second = []
    for j in range(1, C.n + 1):
        if j == row:
            continue
        m = abs(C[row, j])
        if m == 0:
            continue
        dmj = tables.kminus_j(d, j)
        bpj = tables.kplus_j(b, j)
        if dmj == 0 or bpj > dmj:
            continue
        second.extend([(dmj, bpj)] * m)
    return sorted(first), sorted(second)


def _quiver_partners(quiver: Quiver, labels, v):
    """Exchange partners read from the current quiver's arrows at v."""
    first = []
    second = []
    for j in range(1, quiver.n + 1):
        m_in = quiver.arrows(j, v)
        if m_in:
            first.extend([labels[j]] * m_in)
        m_out = quiver.arrows(v, j)
        if m_out:
            second.extend([labels[j]] * m_out)
    return sorted(first), sorted(second)


def run_labeled_sequence(C: CartanMatrix, w: WeylWord):
    """Run the distinguished sequence with double-entry verification.

    Returns (final LabeledSeedState, trace).  Each trace record holds the
    mutated vertex, old and new labels and the verified exchange partners.
    Raises SequenceMismatch if the quiver-predicted partners ever disagree
    with the interval prediction, if a final label differs from its T_k
    form, or if the interval coverage property fails.
    """
    tables = word_positions(w)
    quiver = build_gamma_quiver(C, w)
    r = len(w)
    labels: dict[int, tuple[int, int]] = {
        k: (k, tables.kmin[k]) for k in range(1, r + 1)
    }
    seen_labels = set(labels.values())
    trace = []
    for move in distinguished_sequence(C, w):
        v = move["vertex"]
        dminus, b = labels[v]
        row = w.letters[v - 1]
        d = tables.kplus[dminus]
        bplus = tables.kplus[b]
        if d > r:
            raise SequenceMismatch(
                f"mutation at {v} would advance label {label_text((dminus, b))} past the word"
            )
        iv_first, iv_second = _interval_partners(C, tables, row, dminus, b, d, bplus)
        qv_first, qv_second = _quiver_partners(quiver, labels, v)
        if iv_first != qv_first or iv_second != qv_second:
            raise SequenceMismatch(
                f"at vertex {v}: interval prediction {iv_first}/{iv_second} "
                f"!= quiver prediction {qv_first}/{qv_second}"
            )
        new_label = (d, bplus)
        trace.append({
            "vertex": v,
            "step": move["step"],
            "old": label_text((dminus, b)),
            "new": label_text(new_label),
            "partners_first": [label_text(p) for p in iv_first],
            "partners_second": [label_text(p) for p in iv_second],
        })
        labels[v] = new_label
        seen_labels.add(new_label)
        quiver = mutate_quiver(quiver, v)
    # final labels must be the T_k, as an unordered collection
    expected = set()
    for k in range(1, r + 1):
        if tables.kplus[k] == r + 1:
            expected.add((k, tables.kmin[k]))
        else:
            expected.add((tables.kmax[k], tables.kplus[k]))
    if set(labels.values()) != expected:
        raise SequenceMismatch(
            f"final labels {sorted(labels.values())} != T-labels {sorted(expected)}"
        )
    # interval coverage: every M[l,k] with i_k = i_l and k <= l must occur
    full = {
        (l, k)
        for l in range(1, r + 1)
        for k in range(1, l + 1)
        if w.letters[l - 1] == w.letters[k - 1]
    }
    if seen_labels != full:
        raise SequenceMismatch(
            f"interval coverage failed: saw {sorted(seen_labels)}, wanted {sorted(full)}"
        )
    return LabeledSeedState(quiver=quiver, labels=labels), trace


def t_label(tables, k: int) -> tuple[int, int]:
    """The interval label of T_k."""
    if tables.kplus[k] == tables.r + 1:
        return (k, tables.kmin[k])
    return (tables.kmax[k], tables.kplus[k])


# ---- type A flag-minor seeds ----

def _apply_word_to_set(word: Sequence[int], k: int, base: set[int]) -> set[int]:
    """Image of base under s_{i_1}...s_{i_k} (rightmost factor acts first)."""
    cur = set(base)
    for s in range(k, 0, -1):
        i = word[s - 1]
        swapped = set()
        for x in cur:
            if x == i:
                swapped.add(i + 1)
            elif x == i + 1:
                swapped.add(i)
            else:
                swapped.add(x)
        cur = swapped
    return cur


def minor_name(rows: Sequence[int], cols: Sequence[int]) -> str:
    return "D_{%s,%s}" % ("".join(map(str, sorted(rows))), "".join(map(str, sorted(cols))))


def seed_from_word_typeA(word: WeylWord) -> tuple[Seed, list[str]]:
    """Initial seed for a reduced word in the symmetric group S_{n+1}.

    The k-th cluster variable is the flag minor with row set {1..i_k} and
    column set (s_{i_1}...s_{i_k})({1..i_k}), expanded as a polynomial in
    the entries of a generic unitriangular matrix.  Returns the seed and
    the list of minor names, position by position.
    """
    n = max(word.letters, default=1)
    C = type_a_cartan(n) if n > 1 else CartanMatrix([[2]])
    quiver = build_gamma_quiver(C, word)  # raises NotReduced if needed
    m = generic_unitriangular(n + 1)
    vars = []
    names = []
    for k in range(1, len(word) + 1):
        ik = word.letters[k - 1]
        rows = list(range(1, ik + 1))
        cols = sorted(_apply_word_to_set(word.letters, k, set(rows)))
        vars.append(RationalFunction(minor(m, rows, cols)))
        names.append(minor_name(rows, cols))
    return Seed(vars, quiver), names
