"""Command-line interface: build models, compute in G, run verification suites.

Exit codes: 0 success, 1 domain error (or a failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .action import KMGroupWord, ad_group
from .algebra import AlgebraError
from .freelie import LieSeries
from .models import (
    BUILDERS, CoefficientTable, ModelError, ModelSpec, build_e10, build_fricke, build_gnome,
    build_h3, build_monster,
)
from .qseries import j_coefficients, partitions_upto
from .sampling import random_element
from .semidirect import GroupElement, g_inv, g_mul, identity
from .verify import SUITES, UnknownSuite, run_suite


class UsageError(Exception):
    pass


class SchemaError(AlgebraError):
    pass


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _parse(path: str, what: str, fn):
    data = _read_json(path)
    try:
        return fn(data)
    except KeyError as exc:
        raise SchemaError(f"{path}: {what} lacks field {exc.args[0]!r}") from None
    except (TypeError, AttributeError, ValueError) as exc:
        raise SchemaError(f"{path}: malformed {what}: {exc}") from None


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_spec(path: str) -> ModelSpec:
    return _parse(path, "model spec", ModelSpec.from_json)


def _element(spec: ModelSpec, path: str) -> GroupElement:
    return _parse(path, "group element", lambda d: GroupElement.from_json(spec, d))


def _build(args) -> ModelSpec:
    kind = args.model
    if kind == "monster":
        return build_monster(args.max_block, args.kcap, args.trunc)
    if kind == "fricke":
        if args.N is None or not args.table:
            raise UsageError("build fricke needs --N and --table (JSON or CSV coefficient table)")
        table = CoefficientTable.load(args.table, args.N)
        return build_fricke(args.N, table, args.max_block, args.kcap, args.trunc)
    if kind == "h3":
        return build_h3(args.depth if args.depth is not None else 3, args.trunc, args.copies)
    if kind == "e10":
        return build_e10(args.kmax, args.depth if args.depth is not None else 2,
                         args.trunc if args.trunc != 4 else 3, args.copies)
    if kind == "gnome":
        return build_gnome(args.lmax, args.nmax, args.kcap if args.kcap != 2 else 1, args.trunc)
    raise UsageError(f"unknown model {kind!r}")


def _summary(spec: ModelSpec) -> dict:
    return {
        "model": spec.model_id,
        "generators": len(spec.alphabet),
        "block_dims": spec.block_dims(),
        "caps": spec.caps,
    }


def cmd_build(args) -> int:
    spec = _build(args)
    if args.out:
        Path(args.out).write_text(spec.dumps() + "\n")
        s = _summary(spec)
        if args.format == "json":
            print(json.dumps(s, sort_keys=True))
        else:
            print(f"{s['model']}: {s['generators']} generators")
            for k, d in s["block_dims"].items():
                print(f"  block {k}: dim {d}")
            print(f"wrote {args.out}")
    else:
        print(spec.dumps())
    return 0


def cmd_mul(args) -> int:
    spec = _load_spec(args.spec)
    a, b = _element(spec, args.a), _element(spec, args.b)
    _emit(g_mul(a, b).to_json(), args.out)
    return 0


def cmd_inv(args) -> int:
    spec = _load_spec(args.spec)
    _emit(g_inv(_element(spec, args.a)).to_json(), args.out)
    return 0


def cmd_act(args) -> int:
    spec = _load_spec(args.spec)
    g = _parse(args.word, "group word", KMGroupWord.from_json)
    for letter in g:
        spec.table.row(getattr(letter, "gen", None) or letter.h)
    L = _parse(args.lie, "Lie series", lambda d: LieSeries.from_json(spec.alphabet, d))
    _emit(ad_group(spec.table, g, L).to_json(), args.out)
    return 0


def cmd_identity(args) -> int:
    spec = _load_spec(args.spec)
    _emit(identity(spec).to_json(), args.out)
    return 0


def cmd_random(args) -> int:
    spec = _load_spec(args.spec)
    _emit(random_element(random.Random(args.seed), spec).to_json(), args.out)
    return 0


def cmd_coeffs(args) -> int:
    if args.n < 0:
        raise UsageError("n must be >= 0")
    vals = j_coefficients(args.n) if args.kind == "j" else partitions_upto(args.n)
    print(", ".join(str(v) for v in vals))
    return 0


def _verify_model(args) -> ModelSpec:
    target = args.model
    if target in BUILDERS:
        if target == "fricke":
            if args.N is None or not args.table:
                raise UsageError("verify fricke needs --N and --table, or a spec file")
            return build_fricke(args.N, CoefficientTable.load(args.table, args.N))
        return BUILDERS[target]()
    if Path(target).exists():
        return _load_spec(target)
    raise UsageError(f"{target!r} is neither a built-in model ({', '.join(BUILDERS)}) nor a file")


def cmd_verify(args) -> int:
    spec = _verify_model(args)
    kw = {}
    if args.samples is not None:
        kw["samples"] = args.samples
    try:
        rep = run_suite(spec, args.suite, args.seed, **kw)
    except TypeError:
        raise UsageError(f"suite {args.suite!r} takes no --samples") from None
    if args.format == "json" or args.out:
        _emit(rep.to_json(), args.out)
    if args.format == "text":
        n_ok = sum(c["passed"] for c in rep.checks)
        extra = f", {len(rep.skipped)} unverified" if rep.skipped else ""
        print(f"{rep.suite} on {spec.model_id} (seed {args.seed}): "
              f"{'PASS' if rep.passed else 'FAIL'} ({n_ok}/{len(rep.checks)} checks{extra})")
        for c in rep.checks:
            if not c["passed"]:
                print(f"  FAIL {c['name']}")
        for s in rep.skipped:
            print(f"  skipped {s['check']}: {s['reason']}")
    return 0 if rep.passed else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borcherds-group", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build a model and write its ModelSpec JSON")
    b.add_argument("model", choices=sorted(BUILDERS))
    b.add_argument("--max-block", type=int, default=3, help="largest block index j (monster, fricke)")
    b.add_argument("--kcap", type=int, default=2, help="copies per block (gnome default 1)")
    b.add_argument("--trunc", type=int, default=4, help="Magnus truncation N (e10 default 3)")
    b.add_argument("--N", type=int, help="Fricke level")
    b.add_argument("--table", help="Fricke coefficient table (JSON or CSV)")
    b.add_argument("--lmax", type=int, default=2)
    b.add_argument("--nmax", type=int, default=3)
    b.add_argument("--depth", type=int, help="module depth d (h3 default 3, e10 default 2)")
    b.add_argument("--kmax", type=int, default=1)
    b.add_argument("--copies", type=int, default=1, help="isomorphic copies per family (h3, e10)")
    b.add_argument("--out", help="output path; JSON goes to stdout if omitted")
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.set_defaults(fn=cmd_build)

    m = sub.add_parser("mul", help="multiply two group elements")
    m.add_argument("spec")
    m.add_argument("a")
    m.add_argument("b")
    m.add_argument("--out")
    m.set_defaults(fn=cmd_mul)

    i = sub.add_parser("inv", help="invert a group element")
    i.add_argument("spec")
    i.add_argument("a")
    i.add_argument("--out")
    i.set_defaults(fn=cmd_inv)

    a = sub.add_parser("act", help="apply Ad(g) for a G_J word to a Lie series")
    a.add_argument("spec")
    a.add_argument("word")
    a.add_argument("lie")
    a.add_argument("--out")
    a.set_defaults(fn=cmd_act)

    e = sub.add_parser("identity", help="write the identity element of a model")
    e.add_argument("spec")
    e.add_argument("--out")
    e.set_defaults(fn=cmd_identity)

    r = sub.add_parser("random", help="write a seeded random group element")
    r.add_argument("spec")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(fn=cmd_random)

    c = sub.add_parser("coeffs", help="exact q-series coefficients")
    c.add_argument("kind", choices=["j", "partition"])
    c.add_argument("n", type=int)
    c.set_defaults(fn=cmd_coeffs)

    v = sub.add_parser("verify", help="run a named invariant suite")
    v.add_argument("model", help=f"built-in model ({', '.join(BUILDERS)}) or ModelSpec JSON path")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int)
    v.add_argument("--N", type=int)
    v.add_argument("--table")
    v.add_argument("--out")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, UnknownSuite) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc.filename}: no such file", file=sys.stderr)
        return 1
    except (AlgebraError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
