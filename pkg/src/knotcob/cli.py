"""Command-line front end.

Subcommands: validate, invariants, matrix, genus, cobordant, cover,
slice-check, alpha, fuzz, isomorphic.  Exit codes: 0 success, 1 domain
error (a JSON error object under --format json), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gauss
from .errors import KnotcobError
from .fatgraph import build_carter, diagram_to_code, faces_and_genus
from .fuzz import run_rmove_fuzz
from .graded import (
    CobordismVerdict,
    canonical_form,
    filling_matrix,
    find_isomorphism,
    from_json,
    genus as matrix_genus,
    is_cobordant,
    mod_p,
    reduce_with_witness,
    to_json,
    u_pm_of_matrix,
)
from .invariants import graded_matrix_of, halves, iterated_cover, u_polynomials
from .sliceness import Config, obstruction_report


def _read_code(args) -> gauss.GaussCode:
    if getattr(args, "code", None) is not None:
        return gauss.parse(args.code)
    if getattr(args, "file", None) is not None:
        with open(args.file) as fh:
            return gauss.parse(fh.read())
    raise KnotcobError("need --code or --file")


def _read_matrix(path: str):
    with open(path) as fh:
        return from_json(fh.read())


def _emit(args, obj: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _parse_covers(text: str) -> tuple[tuple[int, ...], ...]:
    data = json.loads(text)
    if isinstance(data, list) and all(isinstance(x, int) for x in data):
        data = [data]
    return tuple(tuple(int(m) for m in seq) for seq in data)


def _config_from(args) -> Config:
    kwargs = {}
    if getattr(args, "primes", None):
        kwargs["primes"] = tuple(int(p) for p in args.primes.split(","))
    if getattr(args, "covers", None):
        kwargs["covers"] = _parse_covers(args.covers)
    if getattr(args, "bound", None) is not None:
        kwargs["coeff_bound"] = args.bound
    if getattr(args, "max_crossings", None) is not None:
        kwargs["max_crossings"] = args.max_crossings
    return Config(**kwargs)


def cmd_validate(args) -> int:
    code = _read_code(args)
    canon = gauss.canonical(code)
    _emit(
        args,
        {"ok": True, "crossings": code.crossings, "canonical": gauss.serialize(canon)},
        f"ok: {code.crossings} crossings\ncanonical: {gauss.serialize(canon)}",
    )
    return 0


def cmd_invariants(args) -> int:
    code = _read_code(args)
    d = build_carter(code)
    up, um = u_polynomials(d)
    hs = halves(d)
    g = faces_and_genus(d.fg)[1]
    text = [
        f"code: {gauss.serialize(code)}",
        f"crossings: {code.crossings}",
        f"carter genus: {g}",
        f"u+ = {up}",
        f"u- = {um}",
        f"u  = {up - um}",
        "halves: "
        + ("; ".join(f"{h.label}: sign={h.sign:+d} n={h.n:+d}" for h in hs) or "(none)"),
    ]
    _emit(
        args,
        {
            "code": gauss.serialize(code),
            "crossings": code.crossings,
            "carter_genus": g,
            "u_plus": str(up),
            "u_minus": str(um),
            "u": str(up - um),
            "halves": [{"label": h.label, "sign": h.sign, "n": h.n} for h in hs],
        },
        "\n".join(text),
    )
    return 0


def cmd_matrix(args) -> int:
    code = _read_code(args)
    t = graded_matrix_of(build_carter(code))
    tb, witness = reduce_with_witness(t)
    text = [
        "T(D):",
        t.pretty(),
        "reduction: "
        + ("; ".join(f"{kind} {','.join(el)}" for kind, el in witness) or "(primitive)"),
        "T_bullet:",
        tb.pretty(),
        f"crossing number >= {tb.size - 1}",
    ]
    _emit(
        args,
        {
            "T": json.loads(to_json(t)),
            "T_bullet": json.loads(to_json(tb)),
            "witness": [[kind, list(el)] for kind, el in witness],
            "crossing_lower_bound": tb.size - 1,
        },
        "\n".join(text),
    )
    return 0


def cmd_genus(args) -> int:
    if getattr(args, "file", None) and not getattr(args, "code", None):
        t = _read_matrix(args.file)
    else:
        code = _read_code(args)
        t = reduce_with_witness(graded_matrix_of(build_carter(code)))[0]
    sigma = matrix_genus(t)
    out = {"sigma": str(sigma), "hyperbolic": sigma == 0}
    text = [f"sigma = {sigma}", f"hyperbolic: {sigma == 0}"]
    if getattr(args, "primes", None):
        for p in (int(x) for x in args.primes.split(",")):
            sp = matrix_genus(mod_p(t, p))
            out[f"sigma_{p}"] = str(sp)
            text.append(f"sigma_{p} = {sp}")
    _emit(args, out, "\n".join(text))
    return 0


def _verdict_text(v: CobordismVerdict) -> list[str]:
    lines = [v.status, f"reason: {v.reason}"]
    if v.certificate is not None:
        lines.append("certificate vectors:")
        for vec in v.certificate.vectors:
            parts = []
            for (t, i), c in vec:
                name = v.family[t].names[i] if v.family else f"({t},{i})"
                tag = f"{name}[{t}]"
                parts.append(tag if c == 1 else f"{c}*{tag}")
            lines.append("  " + " + ".join(parts))
    return lines


def cmd_cobordant(args) -> int:
    t1 = _read_matrix(args.left)
    t2 = _read_matrix(args.right)
    v = is_cobordant(t1, t2, args.bound if args.bound is not None else 2)
    obj = {"status": v.status, "reason": v.reason}
    if v.certificate is not None and v.family is not None:
        obj["certificate"] = [
            [[[t, i], c] for (t, i), c in vec] for vec in v.certificate.vectors
        ]
        obj["certificate_zero"] = all(
            x == 0 for row in filling_matrix(v.family, v.certificate) for x in row
        )
    _emit(args, obj, "\n".join(_verdict_text(v)))
    return 0


def cmd_cover(args) -> int:
    code = _read_code(args)
    seq = [m for s in _parse_covers(args.covers or "[[2]]") for m in s]
    d = iterated_cover(build_carter(code), seq, args.max_crossings or 512)
    lifted = diagram_to_code(d)
    up, um = u_polynomials(d)
    _emit(
        args,
        {
            "cover": seq,
            "code": gauss.serialize(lifted),
            "crossings": lifted.crossings,
            "genus": faces_and_genus(d.fg)[1],
            "u_plus": str(up),
            "u_minus": str(um),
        },
        f"cover {seq} of {gauss.serialize(code)}:\n"
        f"code: {gauss.serialize(lifted) or '(embedded circle)'}\n"
        f"crossings: {lifted.crossings}\ngenus: {faces_and_genus(d.fg)[1]}\n"
        f"u+ = {up}\nu- = {um}",
    )
    return 0


def cmd_slice_check(args) -> int:
    code = _read_code(args)
    rep = obstruction_report(build_carter(code), _config_from(args))
    if args.format == "json":
        print(rep.to_json())
    else:
        lines = [f"verdict: {rep.verdict}", f"sg lower bound: {rep.sg_lower_bound}"]
        for r in rep.reasons:
            lines.append("  reason: " + json.dumps(r, sort_keys=True))
        if rep.partial:
            lines.append("(partial: some obstructions hit resource caps)")
        print("\n".join(lines))
    return 0


def cmd_alpha(args) -> int:
    n = args.p + args.q
    signs_text = args.signs or "+" * n
    if len(signs_text) != n or any(c not in "+-" for c in signs_text):
        raise KnotcobError(f"--signs must be {n} characters of +/-")
    signs = {f"x{i+1}": (1 if c == "+" else -1) for i, c in enumerate(signs_text)}
    code = gauss.alpha_pq(args.p, args.q, signs)
    _emit(
        args,
        {"code": gauss.serialize(code), "crossings": code.crossings},
        gauss.serialize(code),
    )
    return 0


def cmd_fuzz(args) -> int:
    rep = run_rmove_fuzz(
        args.seed, args.cases, args.max_crossings or 6
    )
    obj = {
        "cases": rep.cases,
        "moves": rep.moves_applied,
        "violations": [
            {
                "case": v.case,
                "start": v.start,
                "moves": [[m.kind, list(m.site), list(m.params)] for m in v.moves],
                "message": v.message,
            }
            for v in rep.violations
        ],
    }
    text = f"cases: {rep.cases} moves: {rep.moves_applied} violations: {len(rep.violations)}"
    for v in rep.violations:
        text += f"\ncase {v.case}: {v.message}\n  start: {v.start}\n  moves: {v.moves}"
    _emit(args, obj, text)
    return 0 if rep.ok else 1


def cmd_isomorphic(args) -> int:
    t1 = _read_matrix(args.left)
    t2 = _read_matrix(args.right)
    mapping = find_isomorphism(t1, t2)
    _emit(
        args,
        {"isomorphic": mapping is not None, "witness": mapping},
        f"isomorphic: {mapping is not None}"
        + (f"\nwitness: {json.dumps(mapping, sort_keys=True)}" if mapping else ""),
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="knotcob",
        description="Cobordism invariants of knots on surfaces from signed Gauss codes",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    for name, fn, needs_code in (
        ("validate", cmd_validate, True),
        ("invariants", cmd_invariants, True),
        ("matrix", cmd_matrix, True),
        ("cover", cmd_cover, True),
        ("slice-check", cmd_slice_check, True),
    ):
        p = add(name, fn)
        p.add_argument("--code")
        p.add_argument("--file")
        if name == "cover":
            p.add_argument("--covers", help='JSON like "[2]" or "[[2,3]]"')
            p.add_argument("--max-crossings", type=int)
        if name == "slice-check":
            p.add_argument("--primes", help="comma separated, e.g. 2,3,5")
            p.add_argument("--covers", help='JSON list of covering sequences')
            p.add_argument("--bound", type=int)
            p.add_argument("--max-crossings", type=int)

    p = add("genus", cmd_genus)
    p.add_argument("--code")
    p.add_argument("--file", help="matrix JSON file (or a code via --code)")
    p.add_argument("--primes")

    p = add("cobordant", cmd_cobordant)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--bound", type=int)

    p = add("alpha", cmd_alpha)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--signs")

    p = add("fuzz", cmd_fuzz)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--max-crossings", type=int)

    p = add("isomorphic", cmd_isomorphic)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except KnotcobError as exc:
        if args.format == "json":
            print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
