"""Command-line interface for the mutation workbench.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cartanweyl import CartanMatrix, WeylWord, affine_sl2_cartan, type_a_cartan, type_d_cartan
from .errors import (
    BadInput,
    FrozenVertex,
    Incompatible,
    MwbError,
    NotDivisible,
    NotReduced,
    SequenceMismatch,
    VerificationFailed,
)
from .lieseeds import build_gamma_quiver, distinguished_sequence, run_labeled_sequence, seed_from_word_typeA
from .matrixreal import chamber_ansatz
from .presets import get_preset, minor_alias, preset_names
from .seeds import Seed, explore, mutate_seed
from .verify import run_check, verify_all

OK, FAILED, BAD_INPUT = 0, 1, 2


def parse_word(text: str) -> WeylWord:
    """Accept comma- or space-separated letters, e.g. '1,2,1,2'."""
    try:
        letters = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise BadInput(f"bad word {text!r}: {exc}") from exc
    if not letters:
        raise BadInput("empty word")
    return WeylWord(letters)


def parse_cartan(text: str) -> CartanMatrix:
    """Named Cartan matrices: a<n>, d<n> or affine-a1."""
    if text == "affine-a1":
        return affine_sl2_cartan()
    kind, num = text[:1], text[1:]
    if kind in ("a", "d") and num.isdigit() and int(num) >= 1:
        n = int(num)
        if kind == "a":
            return type_a_cartan(n) if n > 1 else CartanMatrix([[2]])
        return type_d_cartan(n)
    raise BadInput(f"unknown cartan {text!r}; use a<n>, d<n> or affine-a1")


def _load_seed(args) -> tuple[Seed, object]:
    """Seed from --preset or --seed (file path or '-' for stdin)."""
    if getattr(args, "preset", None):
        preset = get_preset(args.preset)
        return preset.seed, preset
    if getattr(args, "seed", None):
        raw = sys.stdin.read() if args.seed == "-" else Path(args.seed).read_text()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise BadInput(f"bad seed JSON: {exc}") from exc
        return Seed.from_json(data), None
    raise BadInput("need --preset or --seed")


def _text_lines(data, prefix=""):
    if isinstance(data, dict):
        for key in data:
            yield from _text_lines(data[key], f"{prefix}{key}.")
    elif isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            yield f"{prefix[:-1]}\t{','.join(str(x) for x in data)}"
        else:
            for i, item in enumerate(data):
                yield from _text_lines(item, f"{prefix}{i}.")
    else:
        yield f"{prefix[:-1]}\t{data}"


def emit(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in _text_lines(data):
            print(line)


def _variable_block(seed: Seed, preset) -> list[dict]:
    out = []
    for idx, v in enumerate(seed.vars, start=1):
        entry = {
            "vertex": idx,
            "text": v.to_text(),
            "frozen": idx in seed.quiver.frozen,
        }
        if preset is not None and preset.minor_size:
            entry["alias"] = minor_alias(preset, v)
        out.append(entry)
    return out


# ---- subcommands ----

def cmd_mutate(args) -> tuple[int, dict]:
    seed, preset = _load_seed(args)
    for k in args.vertices:
        seed = mutate_seed(seed, k)
    return OK, {
        "applied": list(args.vertices),
        "seed": seed.to_json(),
        "variables": _variable_block(seed, preset),
    }


def cmd_explore(args) -> tuple[int, dict]:
    seed, preset = _load_seed(args)
    report = explore(seed, max_seeds=args.max_seeds, max_depth=args.max_depth)
    data = report.to_json()
    if args.figures:
        data["figures"] = _write_figures(args.figures, seed, report,
                                         rows=preset.rows if preset else None)
    return OK, data


def cmd_seed_from_word(args) -> tuple[int, dict]:
    word = parse_word(args.word)
    cartan = parse_cartan(args.cartan) if args.cartan else None
    n = max(word.letters)
    type_a = type_a_cartan(n) if n > 1 else CartanMatrix([[2]])
    minors = None
    if cartan is None or cartan == type_a:
        seed, minors = seed_from_word_typeA(word)
    else:
        seed = Seed.initial(build_gamma_quiver(cartan, word))
    data = {"word": list(word.letters), "seed": seed.to_json()}
    if minors is not None:
        data["minors"] = minors
    if args.figures:
        data["figures"] = _write_figures(args.figures, seed, None,
                                         rows=word.letters, labels=minors)
    return OK, data


def cmd_distinguished_seq(args) -> tuple[int, dict]:
    word = parse_word(args.word)
    cartan = parse_cartan(args.cartan)
    moves = distinguished_sequence(cartan, word)
    state, trace = run_labeled_sequence(cartan, word)  # SequenceMismatch -> exit 1
    return OK, {
        "word": list(word.letters),
        "sequence": [m["vertex"] for m in moves],
        "trace": trace,
        "final_labels": {str(v): f"M[{l},{k}]" for v, (l, k) in sorted(state.labels.items())},
        "final_quiver": state.quiver.to_json(),
    }


def cmd_chamber_ansatz(args) -> tuple[int, dict]:
    report = chamber_ansatz(tuple(parse_word(args.word).letters))
    return (OK if report["all_hold"] else FAILED), report


def cmd_quantum_check(args) -> tuple[int, dict]:
    result = run_check("quantum-exchange")
    return (OK if result["ok"] else FAILED), result


def cmd_verify_all(args) -> tuple[int, dict]:
    report = verify_all()
    return (OK if report["all_ok"] else FAILED), report


def cmd_serve(args) -> tuple[int, dict]:
    from .server import run_server

    run_server(port=args.port, state_dir=args.state_dir)
    return OK, {}


def _write_figures(outdir, seed, report, rows=None, labels=None) -> dict:
    from .figures import render_quiver_png, write_census_csv

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = {"quiver": render_quiver_png(seed.quiver, outdir / "quiver.png",
                                           rows=rows, labels=labels)}
    if report is not None:
        written["census"] = write_census_csv(report, outdir / "census.csv")
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_input=False, figures=False):
        p.add_argument("--format", choices=("json", "text"), default="json")
        if seed_input:
            grp = p.add_mutually_exclusive_group(required=True)
            grp.add_argument("--preset", choices=preset_names())
            grp.add_argument("--seed", help="seed JSON file, or - for stdin")
        if figures:
            p.add_argument("--figures", metavar="DIR",
                           help="also render quiver PNG (and census CSV) into DIR")

    p = sub.add_parser("mutate", help="mutate a seed at one or more vertices")
    common(p, seed_input=True)
    p.add_argument("vertices", type=int, nargs="+")
    p.set_defaults(handler=cmd_mutate)

    p = sub.add_parser("explore", help="breadth-first census of a mutation class")
    common(p, seed_input=True, figures=True)
    p.add_argument("--max-seeds", type=int, default=10_000)
    p.add_argument("--max-depth", type=int, default=None)
    p.set_defaults(handler=cmd_explore)

    p = sub.add_parser("seed-from-word", help="initial seed attached to a reduced word")
    common(p, figures=True)
    p.add_argument("--word", required=True, help="letters, e.g. 1,2,1,3,2,1")
    p.add_argument("--cartan", help="a<n>, d<n> or affine-a1 (default: type A)")
    p.set_defaults(handler=cmd_seed_from_word)

    p = sub.add_parser("distinguished-seq",
                       help="run the distinguished mutation sequence with verification")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--cartan", required=True)
    p.set_defaults(handler=cmd_distinguished_seq)

    p = sub.add_parser("chamber-ansatz",
                       help="verify the parameter-recovery identities")
    common(p)
    p.add_argument("--word", default="1,2,1,2")
    p.set_defaults(handler=cmd_chamber_ansatz)

    p = sub.add_parser("quantum-check", help="verify the quantum exchange goldens")
    common(p)
    p.set_defaults(handler=cmd_quantum_check)

    p = sub.add_parser("verify-all", help="run the whole verification battery")
    common(p)
    p.set_defaults(handler=cmd_verify_all)

    p = sub.add_parser("serve", help="start the HTTP session server")
    p.add_argument("--port", type=int, default=None,
                   help="default: MWB_PORT environment variable or 7373")
    p.add_argument("--state-dir", default=None,
                   help="persist sessions as JSON files in this directory")
    p.set_defaults(handler=cmd_serve, format="json")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, data = args.handler(args)
    except (BadInput, NotReduced, FrozenVertex, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (SequenceMismatch, NotDivisible, Incompatible, VerificationFailed) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return FAILED
    except MwbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    if data:
        emit(data, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
