"""Named verification battery over the bundled golden examples.

Every check recomputes a documented golden fact from scratch and raises
VerificationFailed when it does not hold; verify_all collects the results
into a report that the CLI can render.
"""

from __future__ import annotations

from .cartanweyl import (
    RootVector,
    WeylWord,
    affine_sl2_cartan,
    gamma_weights,
    inversion_roots,
    type_a_cartan,
)
from .errors import MwbError, VerificationFailed
from .exactalg import RationalFunction
from .lieseeds import build_gamma_quiver, run_labeled_sequence, seed_from_word_typeA
from .matrixreal import (
    chamber_ansatz,
    coordinate_functions,
    product_word,
    verify_eqnotCA,
    verify_nprime_invariance,
    verify_phi_identities,
)
from .presets import get_preset, minor_alias
from .quantum import (
    QuantumTorusElement,
    affine_w4_quantum_seed,
    q_power,
    quantum_mutate,
    specialize_q1,
    torus_mul,
)
from .quiver import Quiver, dynkin_type, mutate_quiver
from .seeds import (
    Seed,
    certify_laurent,
    explore,
    mutate_seed,
    rank2_quiver,
    rank2_sequence,
)

AFF = affine_sl2_cartan()
W2121 = WeylWord((1, 2, 1, 2))
WA3 = WeylWord((1, 2, 1, 3, 2, 1))


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationFailed(msg)


def _check_rank2_single_arrow() -> str:
    names = ("x1", "x2")
    x1 = RationalFunction.variable(names, "x1")
    x2 = RationalFunction.variable(names, "x2")
    seq = rank2_sequence(1, 7)  # x3 .. x9
    _expect(seq[3] == x1 and seq[4] == x2, "sequence does not return to x1, x2")
    _expect(seq[5] == seq[0] and seq[6] == seq[1], "period is not 5")
    _expect(len({v.to_text() for v in [x1, x2] + seq[:3]}) == 5,
            "x1..x5 are not pairwise distinct")
    rep = explore(Seed.initial(rank2_quiver(1)))
    _expect(rep.to_json()["clusters"] == 5 and rep.to_json()["variables"] == 5,
            f"census {rep.to_json()} != 5 clusters / 5 variables")
    return "x_{k+5} = x_k; census: 5 clusters, 5 variables, finite"


def _check_rank2_double_arrow() -> str:
    names = ("x1", "x2")
    xs = [RationalFunction.variable(names, nm) for nm in names] + rank2_sequence(2, 10)
    _expect(len({v.to_text() for v in xs}) == 12, "x1..x12 are not pairwise distinct")
    return "x1..x12 pairwise distinct, no periodicity"


def _check_triangle_minor_census() -> str:
    preset = get_preset("a3-bfz")
    # the mutable part is a 3-cycle; one mutation exposes the A3 path
    _expect(dynkin_type(mutate_quiver(preset.seed.quiver, 1)) == "A3",
            "mutation class is not Dynkin A3")
    rep = explore(preset.seed).to_json()
    _expect(rep["clusters"] == 14, f"{rep['clusters']} clusters != 14")
    _expect(rep["variables"] == 12, f"{rep['variables']} variables != 12")
    _expect(rep["mutable_variables"] == 9, f"{rep['mutable_variables']} mutable != 9")
    _expect(rep["verdict"] == "finite", "census did not close up")
    m1 = mutate_seed(preset.seed, 1)
    _expect(m1.vars[0].to_text() == "(x2 + x3)/x1",
            f"exchange at vertex 1 gave {m1.vars[0].to_text()}")
    _expect(minor_alias(preset, m1.vars[0]) == "D_{2,3}",
            "mutated variable is not the flag minor D_{2,3}")
    return "A3; 14 clusters, 12 variables (3 frozen); mu_1(x1) = D_{2,3}"


def _check_affine_inversions() -> str:
    roots = inversion_roots(AFF, W2121)
    want = [RootVector((k, k - 1)) for k in range(1, 5)]
    _expect(roots == want, f"inversion roots {roots} != {want}")
    gs = gamma_weights(AFF, W2121)
    want_g = [RootVector(c) for c in ((1, 0), (2, 1), (4, 2), (6, 4))]
    _expect(gs == want_g, f"gamma weights {gs} != {want_g}")
    return "beta_k = k a1 + (k-1) a2; gamma = a1, 2a1+a2, 4a1+2a2, 6a1+4a2"


def _check_affine_word_quiver() -> str:
    got = build_gamma_quiver(AFF, W2121)
    want = Quiver.from_json({
        "n": 4, "frozen": [3, 4],
        "arrows": [[1, 2, 2], [2, 3, 2], [3, 4, 2], [3, 1, 1], [4, 2, 1]],
    })
    _expect(got == want, f"word quiver {got!r} != {want!r}")
    return "two-row word quiver with doubled arrows and frozen last occurrences"


def _check_distinguished_sequence() -> str:
    state, trace = run_labeled_sequence(AFF, W2121)
    _expect([t["vertex"] for t in trace] == [1, 2], "sequence is not (1, 2)")
    _expect(trace[0]["old"] == "M[1,1]" and trace[0]["new"] == "M[3,3]",
            "step 1 labels wrong")
    _expect(trace[0]["partners_second"] == ["M[2,2]", "M[2,2]"],
            "step 1 partners wrong")
    _expect(trace[1]["old"] == "M[2,2]" and trace[1]["new"] == "M[4,4]",
            "step 2 labels wrong")
    _expect(trace[1]["partners_second"] == ["M[3,3]", "M[3,3]"],
            "step 2 partners wrong")
    return "labels advance M[1,1]->M[3,3], M[2,2]->M[4,4] with verified partners"


def _check_a3_word_seed() -> str:
    seed, names = seed_from_word_typeA(WA3)
    displayed = {"D_{1,2}", "D_{1,3}", "D_{12,23}", "D_{1,4}",
                 "D_{12,34}", "D_{123,234}"}
    _expect(set(names) == displayed, f"minor names {sorted(names)} unexpected")
    _expect(seed.quiver == build_gamma_quiver(type_a_cartan(3), WA3),
            "flag-minor seed quiver disagrees with the word quiver")
    mutated = mutate_seed(seed, 1)
    certify_laurent(mutated.vars[0])  # must be a Laurent polynomial
    return "flag-minor seed carries the six displayed minors on the word quiver"


def _check_matrix_coordinates() -> str:
    co = coordinate_functions(product_word("affine_sl2", (1, 2, 1, 2)))
    want = {
        "a1": "t2*t3", "b0": "t1 + t3", "b1": "t1*t2*t3",
        "c1": "t2 + t4", "c2": "t2*t3*t4",
        "d1": "t1*t2 + t1*t4 + t3*t4", "d2": "t1*t2*t3*t4",
    }
    for key, text in want.items():
        _expect(co[key].to_text() == text,
                f"{key} = {co[key].to_text()}, expected {text}")
    rep = verify_eqnotCA()
    _expect(rep["all_hold"], "parameter-recovery identities failed")
    return "one-parameter product coordinates and t_k recovery identities hold"


def _check_minor_forms() -> str:
    rep = verify_phi_identities()
    bad = [k for k, v in rep.items() if k != "all_hold" and not v["holds"]]
    _expect(rep["all_hold"], f"failing identities: {bad}")
    return "exchange relations, generalized minors and d-specializations hold"


def _check_unipotent_invariance() -> str:
    rep = verify_nprime_invariance()
    bad = [k for k, v in rep.items() if k != "all_hold" and not v["holds"]]
    _expect(rep["all_hold"], f"non-invariant forms: {bad}")
    return "all eight matrix forms are invariant under the generic right factor"


def _check_chamber_ansatz() -> str:
    rep = chamber_ansatz()
    _expect(rep["all_hold"], f"failing identities: {rep['identities']}")
    _expect(rep["phi_w"]["W1"] == "t1^8*t2^6*t3^3", f"W1 = {rep['phi_w']['W1']}")
    _expect(rep["phi_w"]["W2"] == "t1^4*t2^3*t3^2", f"W2 = {rep['phi_w']['W2']}")
    return "all four parameters recovered as monomials in the W evaluations"


def _check_quantum_exchange() -> str:
    s = affine_w4_quantum_seed()
    _expect(s.lam[0] == (0, -2, -2, -4), f"commutation row {s.lam[0]} unexpected")
    names = s.names
    m1 = quantum_mutate(s, 1)
    prod1 = torus_mul(s.vars[0], m1.vars[0], s.lam)
    want1 = (QuantumTorusElement.monomial(names, (0, 2, 0, 0), q_power(-2))
             + QuantumTorusElement.generator(names, 3))
    _expect(prod1 == want1, f"first exchange gave {prod1.to_text()}")
    m2 = quantum_mutate(m1, 2)
    prod2 = torus_mul(s.vars[1], m2.vars[1], s.lam)
    want2 = (torus_mul(m1.vars[0], m1.vars[0], s.lam).scale(q_power(-2))
             + QuantumTorusElement.generator(names, 4))
    _expect(prod2 == want2, f"second exchange gave {prod2.to_text()}")
    _expect(quantum_mutate(m1, 1) == s, "quantum mutation is not involutive")
    classical = mutate_seed(mutate_seed(Seed.initial(s.quiver, names), 1), 2)
    for qv, cv in zip(m2.vars, classical.vars):
        _expect(specialize_q1(qv) == certify_laurent(cv),
                "q = 1 specialization disagrees with the classical seed")
    return "both exchange products match; q = 1 agrees with classical mutation"


_CHECKS = (
    ("rank2-single-arrow-period-five", _check_rank2_single_arrow),
    ("rank2-double-arrow-aperiodic", _check_rank2_double_arrow),
    ("triangle-minor-census", _check_triangle_minor_census),
    ("affine-inversion-roots", _check_affine_inversions),
    ("affine-word-quiver", _check_affine_word_quiver),
    ("distinguished-sequence", _check_distinguished_sequence),
    ("a3-flag-minor-seed", _check_a3_word_seed),
    ("matrix-coordinates", _check_matrix_coordinates),
    ("minor-form-identities", _check_minor_forms),
    ("unipotent-invariance", _check_unipotent_invariance),
    ("chamber-ansatz", _check_chamber_ansatz),
    ("quantum-exchange", _check_quantum_exchange),
)


def check_names() -> list[str]:
    return [name for name, _ in _CHECKS]


def run_check(name: str) -> dict:
    for check_name, fn in _CHECKS:
        if check_name == name:
            try:
                return {"name": name, "ok": True, "detail": fn()}
            except MwbError as exc:
                return {"name": name, "ok": False,
                        "detail": f"{type(exc).__name__}: {exc}"}
    raise VerificationFailed(f"unknown check {name!r}; known: {check_names()}")


def verify_all() -> dict:
    """Run every check; never raises, failures are reported in the result."""
    checks = {}
    for name, fn in _CHECKS:
        try:
            checks[name] = {"ok": True, "detail": fn()}
        except MwbError as exc:
            checks[name] = {"ok": False, "detail": f"{type(exc).__name__}: {exc}"}
    return {"all_ok": all(c["ok"] for c in checks.values()), "checks": checks}
