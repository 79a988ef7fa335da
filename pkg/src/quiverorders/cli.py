"""Command-line interface.  Every command prints one JSON report on stdout.

Exit status: 0 on success, 1 on invalid input, 2 when a resource bound is hit.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import warnings
from typing import Optional, Sequence

from . import io
from .classification import detect_isolated, enumerate_zero_settings, known_singularity, smooth_local_type
from .errors import QuiverError, ResourceError
from .invariants import block_order_generators, default_max_len, enumerate_cycles, verify_relation
from .linalg import format_fraction
from .mckay import (
    CharacterTable,
    abelian_skew_relations,
    abelian_table,
    character_from_weights,
    mckay_quiver,
)
from .paths import LabeledQuiver
from .quiver_core import central_dimension
from .reduction import random_simple_setting, reduce_to_zero, verify_confluence
from .stability import (
    det_L,
    extend_representation,
    localization_presentation,
    thin_stability_oracle,
)


class UsageError(QuiverError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _strategy(text: str) -> str:
    if text in ("det", "random"):
        return text
    head, _, tail = text.partition(":")
    if head == "seed" and tail.lstrip("-").isdigit():
        return text
    raise argparse.ArgumentTypeError(f"strategy must be det, random or seed:N, got {text!r}")


def _names(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, text.replace(" ", "").split(",")):
        key, sep, word = part.partition("=")
        if not sep or not key or not word:
            raise argparse.ArgumentTypeError(f"expected name=word pairs, got {part!r}")
        out[key] = word
    return out


def _moves(trace) -> list[dict]:
    return [{"kind": m.kind.value, "vertex": m.vertex + 1, "player": m.player.value, "marked": m.loop_marked}
            for m in trace.moves]


def cmd_reduce(args) -> dict:
    s = io.setting_from_doc(io.load_json(args.inp))
    strategy = {"det": "det", "random": f"seed:{args.seed}"}.get(args.strategy, args.strategy)
    final, trace = reduce_to_zero(s, strategy)
    return {
        "final": io.setting_to_doc(final),
        "z": trace.z,
        "moves": _moves(trace),
        "central_dimension": central_dimension(s),
    }


def cmd_classify(args) -> dict:
    s = io.setting_from_doc(io.load_json(args.inp))
    local = smooth_local_type(s)
    out = {
        "verdict": local.verdict,
        "dimension": central_dimension(s),
        "zero_setting": io.setting_to_doc(local.zero_setting),
        "z": local.trace.z,
    }
    if local.entry:
        out["smooth_entry"] = local.entry
    rec = known_singularity(s)
    if rec is not None:
        out["name"] = rec.name
        out["presentation"] = rec.invariant_presentation
    iso = detect_isolated(s)
    if iso is not None:
        out["isolated_type"] = str(iso)
    return out


def cmd_enumerate(args) -> dict:
    found = enumerate_zero_settings(args.dim, args.kmax)
    types = sorted({str(t) for t in (detect_isolated(s) for s in found) if t is not None})
    out = {"dim": args.dim, "count": len(found), "settings": [io.setting_to_doc(s) for s in found],
           "isolated_types": types}
    if args.dim >= 5:
        warnings.warn("raw count of zero settings up to isomorphism; settings with isomorphic "
                      "invariant rings are not identified")
    return out


def cmd_mckay(args) -> dict:
    if args.table:
        table = CharacterTable.from_doc(io.load_json(args.table))
    elif args.orders:
        table = abelian_table(args.orders)
    else:
        raise UsageError("mckay needs --table or --orders")
    if args.orders:
        index = {e: i for i, e in enumerate(table.elements)}
        n = len(args.orders)
        if n != 1 and len(args.v) % n:
            raise UsageError("weights must come in groups matching --orders")
        vecs = [tuple(args.v[i:i + n]) for i in range(0, len(args.v), n)]
        try:
            idx = [index[tuple(x % m for x, m in zip(vec, args.orders))] for vec in vecs]
        except KeyError:
            raise UsageError("weight outside the group") from None
        weights = vecs if n > 1 else [v[0] for v in vecs]
    else:
        idx = list(args.v)
        weights = None
    s = mckay_quiver(table, character_from_weights(table, idx))
    out = {"setting": io.setting_to_doc(s), "central_dimension": central_dimension(s)}
    if table.is_abelian:
        pres = (abelian_skew_relations(weights, args.orders) if weights is not None
                else abelian_skew_relations(idx, table=table))
        out["presentation"] = io.presentation_to_doc(pres)
        out["relations"] = pres.strings()
    return out


def cmd_stability(args) -> dict:
    rep = io.rep_from_doc(io.load_json(args.rep))
    out = {"verdict": thin_stability_oracle(rep, args.theta).value}
    if args.scheme:
        scheme = io.scheme_from_doc(io.load_json(args.scheme), rep.quiver)
        d = det_L(scheme, rep)
        out["det_L"] = format_fraction(d)
        out["in_chart"] = d != 0
    return out


def cmd_localize(args) -> dict:
    base = io.presentation_from_doc(io.load_json(args.relations))
    scheme = io.scheme_from_doc(io.load_json(args.scheme), base.quiver)
    pres = localization_presentation(base, scheme)
    out = {"presentation": io.presentation_to_doc(pres),
           "I": pres.strings("I"), "I1": pres.strings("I1"), "I2": pres.strings("I2")}
    if args.rep:
        ext = extend_representation(scheme, io.rep_from_doc(io.load_json(args.rep)))
        out["extension"] = io.rep_to_doc(ext)
    return out


def _quiver(path: str) -> LabeledQuiver:
    return io.quiver_from_doc(io.load_json(path))


def cmd_invariants(args) -> dict:
    q = _quiver(args.inp)
    max_len = args.maxlen or default_max_len(q)
    cycles = enumerate_cycles(q, max_len)
    out = {"max_len": max_len, "count": len(cycles), "cycles": [str(c) for c in cycles],
           "arrows": io.quiver_to_doc(q)["arrows"]}
    if args.relation:
        res = verify_relation(q, args.relation, args.names, trials=args.trials, seed=args.seed)
        out["relation"] = {"text": args.relation, "holds": res.holds, "trials": res.trials,
                           "counterexample": res.counterexample}
    return out


def cmd_blockgen(args) -> dict:
    q = _quiver(args.inp)
    gens = block_order_generators(q, args.beta, args.maxlen)
    return {"beta": list(gens.beta), "max_len": gens.max_len, "table": gens.strings(),
            "note": "representatives up to the length bound"}


def cmd_confluence(args) -> dict:
    if args.inp:
        settings = [io.setting_from_doc(io.load_json(args.inp))]
    else:
        rng = random.Random(args.seed)
        settings = [random_simple_setting(rng, max_k=args.kmax or 5) for _ in range(args.random)]
    failures = []
    for i, s in enumerate(settings):
        d = central_dimension(s, warn=False)
        ok = verify_confluence(s, args.trials, args.seed + i)
        rng = random.Random(args.seed + i)
        for _ in range(args.trials):
            final, trace = reduce_to_zero(s, random.Random(rng.getrandbits(64)))
            ok = ok and d == central_dimension(final, warn=False) + trace.z
        if not ok:
            failures.append(io.setting_to_doc(s))
    return {"settings": len(settings), "trials": args.trials, "failures": failures, "confluent": not failures}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quiverorders", description="marked quiver settings and smooth orders")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = add("reduce", cmd_reduce, "play the reduction game to a zero setting")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--strategy", type=_strategy, default="det", help="det, random (uses --seed) or seed:N")

    sp = add("classify", cmd_classify, "smooth or singular, with the local type")
    sp.add_argument("--in", dest="inp", required=True)

    sp = add("enumerate", cmd_enumerate, "singular zero settings of a given dimension")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--kmax", type=int)

    sp = add("mckay", cmd_mckay, "McKay quiver and skew-group relations")
    sp.add_argument("--table")
    sp.add_argument("--orders", type=_ints, help="abelian group Z_n1 x ... as 'n1,n2'")
    sp.add_argument("--v", type=_ints, required=True,
                    help="weights (with --orders) or 0-based character indices (with --table)")

    sp = add("stability", cmd_stability, "stability of a thin representation")
    sp.add_argument("action", choices=["check"])
    sp.add_argument("--rep", required=True)
    sp.add_argument("--theta", type=_ints, required=True)
    sp.add_argument("--scheme")

    sp = add("localize", cmd_localize, "presentation of the localization at det L")
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--relations", required=True)
    sp.add_argument("--rep")

    sp = add("invariants", cmd_invariants, "oriented cycles and relation checks")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--maxlen", type=int)
    sp.add_argument("--relation")
    sp.add_argument("--names", type=_names, default={})
    sp.add_argument("--trials", type=int, default=100)

    sp = add("blockgen", cmd_blockgen, "path generators of the block order")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--beta", type=_ints, required=True)
    sp.add_argument("--maxlen", type=int, default=2)

    sp = add("confluence", cmd_confluence, "random reduction orders agree")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="inp")
    src.add_argument("--random", type=int)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--kmax", type=int)
    return p


def _digest(args: argparse.Namespace) -> str:
    h = hashlib.sha256()
    fields = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    h.update(json.dumps(fields, sort_keys=True, default=str).encode())
    for key in ("inp", "table", "rep", "scheme", "relations"):
        path = getattr(args, key, None)
        if path:
            try:
                with open(path, "rb") as fh:
                    h.update(fh.read())
            except OSError:
                pass
    return h.hexdigest()


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else None
    out_path = None
    try:
        args = build_parser().parse_args(argv)
        out_path = args.out
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = args.func(args)
        report = {"command": args.command, "inputs_digest": _digest(args),
                  "warnings": sorted({str(w.message) for w in caught})}
        report.update(result)
        status = 0
    except ResourceError as exc:
        report, status = _error(command, exc), 2
    except (QuiverError, ValueError, TypeError, KeyError) as exc:
        report, status = _error(command, exc), 1
    text = io.dumps(report)
    if out_path and status == 0:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def _error(command, exc: Exception) -> dict:
    return {"command": command, "error": {"type": type(exc).__name__, "message": str(exc)}}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
