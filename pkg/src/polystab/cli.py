"""Command-line interface; every command reads and writes JSON.

Exit codes: 0 success, 2 input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import amplikit, census, polytope, stab
from .chow import ChowVector, InvariantViolation, chow_vector, evaluate
from .exactla import rat_str, transpose
from .grassmann import index_label, subsets
from .jsonio import InputError, dumps, polytope_from_json, subspace_from_json, subspace_to_json
from .signvec import canonical

GENERATORS = {
    "simplex": (polytope.simplex, 1),
    "cross": (polytope.cross_polytope, 1),
    "cube": (polytope.hypercube, 1),
    "cyclic": (polytope.cyclic, 2),
}


def generate(spec: str, nodes: Sequence[str] | None = None) -> polytope.Polytope:
    """Build a polytope from ``name:arg[:arg]`` or ``name arg [arg]``."""
    parts = spec.replace(":", " ").split()
    if not parts or parts[0] not in GENERATORS:
        raise InputError(f"unknown generator {spec!r}; choose from {', '.join(GENERATORS)}")
    fn, arity = GENERATORS[parts[0]]
    try:
        args = [int(x) for x in parts[1:]]
    except ValueError:
        raise InputError(f"generator parameters must be integers: {spec!r}") from None
    if len(args) != arity:
        raise InputError(f"{parts[0]} takes {arity} integer parameter(s)")
    try:
        if parts[0] == "cyclic":
            return fn(*args, nodes=nodes)
        return fn(*args)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _polytope(args) -> polytope.Polytope:
    if args.gen:
        return generate(args.gen, args.nodes)
    return polytope_from_json(_read_json(args.polytope))


def _subspace(args):
    return subspace_from_json(_read_json(args.subspace))


def _face_order(p: polytope.Polytope, data: Any) -> list[list[int]]:
    if not isinstance(data, dict) or not isinstance(data.get("faces"), list):
        raise InputError("order file: expected an object with a 'faces' array")
    lookup = {label: i for i, label in enumerate(p.labels)}
    out = []
    for entry in data["faces"]:
        row = []
        for item in entry:
            if isinstance(item, str) and item in lookup:
                row.append(lookup[item])
            elif isinstance(item, int) and 1 <= item <= p.m:
                row.append(item - 1)
            else:
                raise InputError(f"order file: unknown vertex {item!r}")
        out.append(row)
    return out


def bundled_order_data() -> Any:
    text = resources.files("polystab").joinpath("data/octahedron_edge_order.json").read_text(encoding="utf-8")
    return json.loads(text)


def _chow_vector(args, p: polytope.Polytope, k: int) -> ChowVector:
    data = None
    if getattr(args, "paper_order", False):
        data = bundled_order_data()
    elif getattr(args, "order", None):
        data = _read_json(args.order)
    if data is None:
        return stab.default_chow_vector(p, k)
    try:
        return chow_vector(p, k, _face_order(p, data))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _check_k(p: polytope.Polytope, k: int) -> None:
    if not 1 <= k <= p.n - 1:
        raise InputError(f"k must lie in [1, {p.n - 1}] for a polytope in P^{p.n - 1}")


def _check_subspace(p: polytope.Polytope, v, k: int | None) -> int:
    if v.n != p.n:
        raise InputError(f"subspace lives in Q^{v.n} but the polytope in Q^{p.n}")
    if k is not None and k != v.k:
        raise InputError(f"--k {k} disagrees with the subspace dimension {v.k}")
    _check_k(p, v.k)
    return v.k


def _faces_json(faces) -> list[list[int]]:
    return [[i + 1 for i in f.vertices] for f in faces]


def chow_vector_json(cv: ChowVector) -> dict:
    n, k = cv.polytope.n, cv.k
    idx = subsets(n, n - k)
    faces = []
    for f, form in zip(cv.faces, cv.forms):
        faces.append({
            "vertices": [i + 1 for i in f.vertices],
            "rank": f.linear_rank,
            "rows": [i + 1 for i in form.rows],
            "coeffs": [{"I": index_label(s, n), "c": rat_str(c)} for s, c in zip(idx, form.coeffs) if c],
        })
    return {"n": n, "k": k, "faces": faces}


def eval_json(cv: ChowVector, v) -> dict:
    ev = evaluate(cv, v)
    return {
        "values": [rat_str(x) for x in ev.values],
        "signs": str(canonical(ev.signs)),
        "raw_signs": str(ev.signs),
    }


# --------------------------------------------------------------------------
# commands


def cmd_gen(args) -> dict:
    return generate(" ".join([args.generator] + args.params), args.nodes).to_json()


def cmd_faces(args) -> dict:
    p = _polytope(args)
    if args.rank is not None:
        if not 1 <= args.rank <= p.n - 1:
            raise InputError(f"--rank must lie in [1, {p.n - 1}]")
        faces = polytope.faces_of_rank(p, args.rank)
    else:
        faces = polytope.all_faces(p)
    return {"n": p.n, "faces": [f.to_json() for f in faces]}


def cmd_chow(args) -> dict:
    p = _polytope(args)
    _check_k(p, args.k)
    return chow_vector_json(_chow_vector(args, p, args.k))


def _chamber_json(p, k, v, cv) -> dict | None:
    if not stab.is_maximally_stabbing(p, k, v):
        return None
    ch = stab.chamber(p, k, v, cv)
    return {
        "faces": _faces_json(ch.determining_faces),
        "positions": [i + 1 for i in ch.positions],
        "signs": str(canonical(ch.restricted_signs)),
    }


def cmd_stab(args) -> dict:
    p = _polytope(args)
    v = _subspace(args)
    k = _check_subspace(p, v, args.k)
    cv = _chow_vector(args, p, k)
    res = stab.member(p, k, v, cv)
    out = {
        "inside": res.inside,
        "faces_hit": _faces_json(res.faces_hit),
        "face_order": _faces_json(cv.faces),
        "chamber": _chamber_json(p, k, v, cv),
        "chow": eval_json(cv, v),
    }
    if args.oracle_check:
        out["oracle_agreement"] = polytope.intersects(p, v) == res.inside
    return out


def cmd_chamber(args) -> dict:
    p = _polytope(args)
    v = _subspace(args)
    k = _check_subspace(p, v, args.k)
    cv = _chow_vector(args, p, k)
    ch = _chamber_json(p, k, v, cv)
    if ch is None:
        raise InputError("the subspace is not maximally stabbing; chambers are undefined")
    return {"chamber": ch, "face_order": _faces_json(cv.faces)}


def cmd_slicing(args) -> dict:
    p = _polytope(args)
    v = _subspace(args)
    if v.k != p.n - 1 or v.n != p.n:
        raise InputError(f"slicing needs a hyperplane of Q^{p.n} (k = {p.n - 1})")
    cv = stab.default_chow_vector(p, p.n - 1)
    out = {"inside": stab.slicing_member(p, v), "chow": eval_json(cv, v)}
    if args.oracle_check:
        out["oracle_agreement"] = polytope.intersects(p, v) == out["inside"]
    return out


def cmd_ampli(args) -> dict:
    v = _subspace(args)
    k = v.k if args.k is None else args.k
    if k != v.k:
        raise InputError(f"--k {k} disagrees with the subspace dimension {v.k}")
    if v.n != k + args.m:
        raise InputError(f"subspace must live in Q^{k + args.m} for k={k}, m={args.m}")
    try:
        cyc = polytope.cyclic(args.n, k + args.m, args.nodes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = amplikit.ampl_sign_membership(v, cyc, args.m)
    out = {
        "member": res.member,
        "flips": res.flip_count,
        "boundary": res.boundary,
        "failed_condition": res.failed_condition,
        "description": "proven" if res.proven else "conjectural description",
        "conditions": [
            {"idx": "".join(str(i + 1) for i in c.idx), "sign": "+" if c.value > 0 else "-" if c.value < 0 else "0"}
            for c in res.conditions
        ],
    }
    if args.m == 2:
        rep = amplikit.stab_faces_m2(v, cyc)
        out["faces_hit"] = _faces_json(rep.faces_hit)
        out["fan_faces"] = _faces_json(rep.fan_faces)
        out["expected_fan_faces"] = rep.expected
    else:
        out["faces_hit"] = _faces_json(stab.member(cyc, k, v).faces_hit)
    return out


def cmd_census(args) -> dict:
    p = _polytope(args)
    _check_k(p, args.k)
    ident = args.gen or args.polytope
    rep = census.run_census(p, args.k, args.samples, args.seed, args.inside_only, args.workers, ident)
    return rep.to_json()


def cmd_oracle(args) -> dict:
    p = _polytope(args)
    _check_k(p, args.k)
    cv = stab.default_chow_vector(p, args.k)
    disagreements = []
    inside = 0
    for i in range(args.samples):
        v = census.sample_subspace(p.n, args.k, args.seed, i) if i % 2 == 0 else census.sample_near(p, args.k, args.seed, i)
        a = stab.member(p, args.k, v, cv).inside
        b = polytope.intersects(p, v)
        inside += b
        if a != b:
            disagreements.append({"index": i, "subspace": subspace_to_json(v), "sign": a, "oracle": b})
    return {"samples": args.samples, "seed": args.seed, "inside": inside,
            "disagreements": disagreements, "oracle_agreement": not disagreements}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polystab", description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_polytope(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--polytope", help="polytope JSON file ('-' for stdin)")
        src.add_argument("--gen", help="generator spec such as cross:4 or cyclic:6:4")
        sp.add_argument("--nodes", nargs="+", help="moment-curve nodes for cyclic generators")

    def with_order(sp):
        grp = sp.add_mutually_exclusive_group()
        grp.add_argument("--order", help="JSON file listing the faces (vertex labels, row order)")
        grp.add_argument("--paper-order", action="store_true", help="bundled octahedron edge order")

    g = sub.add_parser("gen", help="emit a generated polytope")
    g.add_argument("generator", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="+")
    g.add_argument("--nodes", nargs="+")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("faces", help="list faces (optionally of one linear rank)")
    with_polytope(f)
    f.add_argument("--rank", type=int)
    f.set_defaults(func=cmd_faces)

    c = sub.add_parser("chow", help="vector of Chow forms")
    with_polytope(c)
    with_order(c)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_chow)

    for name, func, helptext in (
        ("stab", cmd_stab, "sign-based membership in the k-stabbing set"),
        ("chamber", cmd_chamber, "stabbing chamber of a maximally stabbing subspace"),
    ):
        s = sub.add_parser(name, help=helptext)
        with_polytope(s)
        with_order(s)
        s.add_argument("--k", type=int)
        s.add_argument("--subspace", required=True)
        s.add_argument("--oracle-check", action="store_true")
        s.set_defaults(func=func)

    sl = sub.add_parser("slicing", help="hyperplane slicing test (k = n - 1)")
    with_polytope(sl)
    sl.add_argument("--subspace", required=True)
    sl.add_argument("--oracle-check", action="store_true")
    sl.set_defaults(func=cmd_slicing)

    a = sub.add_parser("ampli", help="sign-flip test for the amplituhedron A_{n,k,m}")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--k", type=int)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--subspace", required=True)
    a.add_argument("--nodes", nargs="+")
    a.set_defaults(func=cmd_ampli)

    ce = sub.add_parser("census", help="Monte-Carlo census of realized sign classes")
    with_polytope(ce)
    ce.add_argument("--k", type=int, required=True)
    ce.add_argument("--samples", type=int, default=10000)
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--inside-only", action="store_true")
    ce.add_argument("--workers", type=int, default=1)
    ce.set_defaults(func=cmd_census)

    o = sub.add_parser("oracle", help="compare sign membership with the LP oracle on random samples")
    with_polytope(o)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--samples", type=int, default=1000)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"polystab: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, stab.WitnessError) as exc:
        print(f"polystab: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    text = dumps(result)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
