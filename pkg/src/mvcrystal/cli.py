"""Command-line entry point: ``mvcrystal <command> ...`` with JSON or text output.

Exit codes: 0 success or pass, 1 verification failed, 2 input error.  Every error carries a stable
machine-readable code.  Colors, element numbers and word letters are 1-based on the command line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Sequence

from . import __version__
from .crystal import b_lambda, decompose, invariant_elements, rotate_satake, tensor
from .errors import CrystalAxiomError, MVCrystalError, VerificationError
from .mv_cycles import STARRED, UNSTARRED, cycle_label
from .path_model import Path, e_op, f_op
from .rational import parse_weight, q, render
from .root_data import (
    CartanDatum,
    build_root_system,
    chamber_word_from_line,
    condition_A_check,
    rho_eval,
    weyl_dimension,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class UsageError(MVCrystalError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ----- canonical JSON ----------------------------------------------------------------------------

def canonical(obj):
    """Plain JSON values with every rational rendered as ``p/q`` and tuples as lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return render(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not part of the output contract")
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename; nothing is left on failure."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mvcrystal-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ----- input helpers -----------------------------------------------------------------------------

def _tables(spec: str):
    return build_root_system(CartanDatum.parse(spec))


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from exc


def _color(text: str, rank: int) -> int:
    try:
        i = int(text)
    except ValueError as exc:
        raise UsageError(f"color must be an integer, got {text!r}") from exc
    if not 1 <= i <= rank:
        raise UsageError(f"color {i} out of range 1..{rank}")
    return i - 1


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad list {text!r}") from exc
    elif "," in text or " " in text:
        vals = [t for t in text.replace(",", " ").split() if t]
    else:
        vals = list(text)
    try:
        return [int(v) for v in vals]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def parse_word(text: str, rank: int) -> tuple[int, ...]:
    """``1,2,1``, ``"1 2 1"``, ``[1,2,1]`` or (rank < 10) ``121``; returns a 0-based word."""
    word = _int_list(text) if text.strip() else []
    for i in word:
        if not 1 <= i <= rank:
            raise UsageError(f"letter {i} out of range 1..{rank}")
    return tuple(i - 1 for i in word)


def parse_vector(text: str, rank: int) -> tuple:
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad vector {text!r}") from exc
    else:
        vals = [t for t in text.replace(",", " ").split() if t]
    if len(vals) != rank:
        raise UsageError(f"vector {text!r} has length {len(vals)}, expected {rank}")
    return tuple(q(v if not isinstance(v, float) else str(v)) for v in vals)


def _load_path(data, rank: int | None) -> Path:
    return Path.from_json(data, rank)


# ----- commands ----------------------------------------------------------------------------------

def cmd_roots(args):
    t = _tables(args.type)
    out = {
        "name": t.datum.name,
        "rank": t.rank,
        "cartan": [list(r) for r in t.cartan],
        "positive_roots": [list(b) for b in t.root_coords],
        "positive_root_count": len(t.root_coords),
        "rho": t.rho.to_json(),
        "longest_word": [i + 1 for i in t.longest_word],
        "simply_laced": t.is_simply_laced(),
    }
    text = [f"type {out['name'] or 'custom'} rank {t.rank}", f"positive roots ({len(t.root_coords)}):"]
    text += ["  " + " ".join(str(c) for c in b) for b in t.root_coords]
    text.append("longest word: " + " ".join(str(i) for i in out["longest_word"]))
    return out, "\n".join(text), EXIT_OK


def cmd_crystal_gen(args):
    t = _tables(args.type)
    lam = parse_weight(args.weight, t.rank)
    c = b_lambda(t, lam)
    out = c.to_json()
    out.update({"highest_weight": lam.to_json(), "size": c.n, "weyl_dimension": weyl_dimension(t, lam)})
    text = [f"B({lam.label()}): {c.n} elements"]
    for b in range(c.n):
        addr = " ".join(str(i + 1) for i in c.addresses[b]) or "-"
        text.append(f"  {b + 1}: weight {c.weight(b).label()}  f-word {addr}")
    return out, "\n".join(text), EXIT_OK


def _factor_crystals(t, weights: Sequence[str]):
    lams = [parse_weight(w, t.rank) for w in weights]
    return lams, [b_lambda(t, lam) for lam in lams]


def cmd_crystal_tensor(args):
    t = _tables(args.type)
    lams, factors = _factor_crystals(t, args.weights)
    c = tensor(*factors)
    out = {"factors": [lam.to_json() for lam in lams], "factor_sizes": [f.n for f in factors], "size": c.n}
    text = [f"tensor of {len(factors)} factors: {c.n} elements"]
    if args.decompose:
        dec = decompose(c)
        comps = sorted(dec.items(), key=lambda kv: (rho_eval(t, kv[0]), kv[0]), reverse=True)
        out["decomposition"] = [{"highest_weight": w.to_json(), "multiplicity": m} for w, m in comps]
        text.append("decomposition:")
        text += [f"  B({w.label()}) x {m}" for w, m in comps]
    if args.invariants:
        invs = [[i + 1 for i in idx] for idx in invariant_elements(c)]
        out["invariants"] = invs
        text.append(f"invariant elements ({len(invs)}):")
        text += ["  (" + ",".join(str(i) for i in idx) + ")" for idx in invs]
    return out, "\n".join(text), EXIT_OK


def cmd_path_apply(args):
    data = _read_json(args.path)
    type_spec = args.type
    if isinstance(data, dict):
        unknown = set(data) - {"type", "path"}
        if unknown or "path" not in data:
            raise UsageError("path file must be a segment list or an object with 'path' and optional 'type'")
        type_spec = type_spec or data.get("type")
        data = data["path"]
    if type_spec is None:
        raise UsageError("root datum missing: pass --type or add a 'type' field to the path file")
    t = _tables(type_spec if isinstance(type_spec, str) else json.dumps(type_spec))
    p = _load_path(data, t.rank)
    i = _color(args.color, t.rank)
    res = (e_op if args.op == "e" else f_op)(p, i, t)
    out = {"op": args.op, "color": i + 1, "input": p.to_json(), "result": None if res is None else res.to_json()}
    if res is not None:
        out["weight"] = res.weight.to_json()
    text = f"{args.op}_{i + 1}: " + ("0 (undefined)" if res is None else f"{res!r}")
    return out, text, EXIT_OK


def cmd_mv_label(args):
    t = _tables(args.type)
    data = _read_json(args.paths)
    if isinstance(data, dict):
        if set(data) != {"paths"}:
            raise UsageError("paths file must be a list of paths or an object with a single 'paths' field")
        data = data["paths"]
    if not isinstance(data, list) or not data:
        raise UsageError("paths file must hold a non-empty list of paths")
    paths = [_load_path(p, t.rank) for p in data]
    label = cycle_label(paths, t)
    out = label.to_json()
    out["family"] = args.family
    text = [
        f"generator word: {label.word_text()}",
        f"mu = {label.mu.label()}  lambda = {label.lam_total.label()}",
        f"dim (starred) = {render(label.dim_starred)}  dim (unstarred) = {render(label.dim_unstarred)}",
        f"parameters: {label.parameter_count}",
    ]
    return out, "\n".join(text), EXIT_OK


def cmd_satake_rotate(args):
    t = _tables(args.type)
    lams, factors = _factor_crystals(t, args.weights)
    idx = [i - 1 for i in _int_list(args.index)]
    if len(idx) != len(factors):
        raise UsageError(f"index has {len(idx)} entries for {len(factors)} factors")
    for k, (i, f) in enumerate(zip(idx, factors)):
        if not 0 <= i < f.n:
            raise UsageError(f"index entry {i + 1} out of range for factor {k + 1} (size {f.n})")
    if args.times < 1:
        raise UsageError("--times must be positive")
    cur_factors, cur_idx, sign, steps = tuple(factors), tuple(idx), 1, []
    for _ in range(args.times):
        r = rotate_satake(cur_factors, cur_idx)
        cur_factors, cur_idx, sign = r.factors, r.index, sign * r.sign
        steps.append({"index": [i + 1 for i in cur_idx], "sign": r.sign})
    order = [lam.to_json() for lam in lams]
    shift = args.times % len(lams)
    out = {
        "factors": order[shift:] + order[:shift],
        "index": [i + 1 for i in cur_idx],
        "sign": sign,
        "steps": steps,
    }
    text = f"rotated index ({','.join(str(i + 1) for i in cur_idx)}) with sign {sign:+d}"
    return out, text, EXIT_OK


def _conda_out(t, res, extra=None):
    out = {
        "word": [i + 1 for i in res.word],
        "feasible": res.feasible,
        "slack": None if res.slack is None else res.slack,
        "witnesses": None if res.witnesses is None else [list(w) for w in res.witnesses],
    }
    out.update(extra or {})
    word = " ".join(str(i + 1) for i in res.word)
    text = f"word {word}: condition (A) {'holds' if res.feasible else 'fails'}"
    return out, text, EXIT_OK if res.feasible else EXIT_FAILED


def cmd_conda_check(args):
    t = _tables(args.type)
    return _conda_out(t, condition_A_check(t, parse_word(args.word, t.rank)))


def cmd_conda_from_line(args):
    t = _tables(args.type)
    x = parse_vector(args.x, t.rank)
    y = parse_vector(args.y, t.rank)
    word = chamber_word_from_line(t, x, y)
    return _conda_out(t, condition_A_check(t, word), {"x": list(x), "y": list(y)})


def cmd_verify(args):
    if args.example == "sl3":
        from .worked_examples import verify_sl3 as run
    else:
        from .worked_examples import verify_d4 as run
    rep = run()
    return rep.to_json(), rep.to_text(), EXIT_OK if rep.passed else EXIT_FAILED


# ----- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("-o", "--output", help="write output to this file (atomically)")

    p = _Parser(prog="mvcrystal", description="Path crystals, MV-cycle labels and worked-example certificates.")
    p.add_argument("--version", action="version", version=f"mvcrystal {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("roots", parents=[common], help="root system tables")
    s.add_argument("type", help="A1..D4 style name, JSON Cartan matrix, or JSON file")
    s.set_defaults(func=cmd_roots)

    cr = sub.add_parser("crystal", help="crystal graphs").add_subparsers(dest="action", required=True,
                                                                         parser_class=_Parser)
    s = cr.add_parser("gen", parents=[common], help="the crystal B(lambda)")
    s.add_argument("type")
    s.add_argument("weight", help="e.g. w1+2*w2 or [1,2]")
    s.set_defaults(func=cmd_crystal_gen)
    s = cr.add_parser("tensor", parents=[common], help="tensor products of B(lambda)")
    s.add_argument("type")
    s.add_argument("weights", nargs="+")
    s.add_argument("--decompose", action="store_true")
    s.add_argument("--invariants", action="store_true")
    s.set_defaults(func=cmd_crystal_tensor)

    pa = sub.add_parser("path", help="path operators").add_subparsers(dest="action", required=True,
                                                                       parser_class=_Parser)
    s = pa.add_parser("apply", parents=[common], help="apply e_i or f_i to a path")
    s.add_argument("op", choices=["e", "f"])
    s.add_argument("color", help="1-based color")
    s.add_argument("path", help="JSON file with a segment list or {'type':..., 'path':[...]}")
    s.add_argument("--type", help="root datum when the file does not name one")
    s.set_defaults(func=cmd_path_apply)

    mv = sub.add_parser("mv", help="MV-cycle labels").add_subparsers(dest="action", required=True,
                                                                     parser_class=_Parser)
    s = mv.add_parser("label", parents=[common], help="label of a path tuple")
    s.add_argument("type")
    s.add_argument("paths", help="JSON file with a list of paths")
    s.add_argument("--family", choices=[STARRED, UNSTARRED], default=STARRED)
    s.set_defaults(func=cmd_mv_label)

    sa = sub.add_parser("satake", help="Satake invariant indices").add_subparsers(dest="action", required=True,
                                                                                  parser_class=_Parser)
    s = sa.add_parser("rotate", parents=[common], help="rotate an invariant index")
    s.add_argument("type")
    s.add_argument("weights", nargs="+")
    s.add_argument("index", help="1-based element numbers, one per factor, e.g. 1,3")
    s.add_argument("--times", type=int, default=1)
    s.set_defaults(func=cmd_satake_rotate)

    ca = sub.add_parser("conda", help="condition (A)").add_subparsers(dest="action", required=True,
                                                                      parser_class=_Parser)
    s = ca.add_parser("check", parents=[common], help="decide condition (A) for a reduced word of w0")
    s.add_argument("type")
    s.add_argument("word", help="1-based letters, e.g. 1,2,1")
    s.set_defaults(func=cmd_conda_check)
    s = ca.add_parser("from-line", parents=[common], help="chamber word of a generic line, then check it")
    s.add_argument("type")
    s.add_argument("x", help="coweight pairings, e.g. 1,1/2")
    s.add_argument("y")
    s.set_defaults(func=cmd_conda_from_line)

    s = sub.add_parser("verify", parents=[common], help="worked-example certificates")
    s.add_argument("example", choices=["sl3", "d4"])
    s.set_defaults(func=cmd_verify)
    return p


def _exit_code(err: MVCrystalError) -> int:
    if isinstance(err, (VerificationError, CrystalAxiomError)):
        return EXIT_FAILED
    return EXIT_INPUT


def _emit(text: str, output: str | None, stream) -> None:
    if output:
        write_atomic(output, text)
    else:
        stream.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    output = None
    try:
        args = build_parser().parse_args(argv)
        want_json, output = args.json, args.output
        data, text, code = args.func(args)
        _emit(dumps(data) if want_json else text + "\n", output, sys.stdout)
        return code
    except MVCrystalError as err:
        code = _exit_code(err)
        if want_json:
            sys.stdout.write(dumps({"error": err.to_dict(), "exit_code": code}))
        else:
            sys.stderr.write(f"error [{err.code}]: {err}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
