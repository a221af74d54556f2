"""Command-line front end.

Terms are evaluated in the free object on ``--generators n`` generators by
default, in the countably generated free object with ``--lazy``, or in a
user-supplied lattice with ``--input file.json`` of the form
``{"atoms": k, "generators": [element-json, ...]}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

from . import checks
from .boolean import BoolHom, make_algebra
from .errors import UhaError
from .free import FreeElement, free_uha
from .functors import (
    SpeckerLattice,
    epsilon,
    eta,
    eta_square_commutes,
    functor_B_mor,
    functor_H_mor,
    preserves_structure,
)
from .spectra import dual_map, max_spectrum
from .specker import (
    SpeckerElement,
    booleanize,
    format_rational,
    from_values,
    hyperarchimedean_witness,
    is_boolean_element,
    minimal_decomposition,
)
from .structure import direct_factor_decomposition, principal_polar
from .terms import OMEGA, NamedLattice, TermSyntaxError, eval_term, generators_used, parse_term


def _ints(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


def _context(args: argparse.Namespace, term) -> Any:
    if args.lazy:
        return OMEGA
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        algebra = make_algebra(int(data["atoms"]))
        gens = tuple(SpeckerElement.from_json(g) for g in data.get("generators", []))
        for g in gens:
            if g.algebra != algebra:
                raise UhaError("generator lives over a different algebra")
        return NamedLattice(SpeckerLattice(algebra), gens)
    if args.atoms is not None:
        return NamedLattice(SpeckerLattice(make_algebra(args.atoms)), ())
    n = args.generators
    if n is None:
        n = max(generators_used(term), default=-1) + 1
    return free_uha(n)


def _evaluate(args: argparse.Namespace):
    term = parse_term(args.expr)
    return eval_term(term, _context(args, term))


def _show(v) -> str:
    if isinstance(v, FreeElement):
        return f"support {list(v.support)}: {_show(v.body)}"
    return "; ".join(f"{b!r} -> {format_rational(x)}" for b, x in zip(v.partition, v.values)) or "(empty)"


def _body(v) -> SpeckerElement:
    return v.body if isinstance(v, FreeElement) else v


def _emit(args: argparse.Namespace, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def cmd_eval(args) -> int:
    v = _evaluate(args)
    _emit(args, {"element": v.to_json()}, _show(v))
    return 0


def cmd_decompose(args) -> int:
    v = _evaluate(args)
    terms = minimal_decomposition(_body(v))
    data = {
        "k": len(terms),
        "terms": [
            {"coefficient": format_rational(r), "indicator": {"atoms": _atoms(sum(m for m, x in chi.items() if x == 1))}}
            for r, chi in terms
        ],
    }
    lines = [f"k = {len(terms)}"] + [
        f"{t['coefficient']} * {{{','.join(map(str, t['indicator']['atoms']))}}}" for t in data["terms"]
    ]
    _emit(args, data, "\n".join(lines))
    return 0


def _atoms(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def cmd_witness(args) -> int:
    v = _body(_evaluate(args))
    n = hyperarchimedean_witness(v)
    w = booleanize(v, n)
    _emit(args, {"witness": n, "booleanized": w.to_json()}, f"n = {n}\nn|v| /\\ u = {_show(w)}")
    return 0


def cmd_boolean(args) -> int:
    v = _body(_evaluate(args))
    b = is_boolean_element(v)
    _emit(args, {"boolean": b}, "true" if b else "false")
    return 0


def cmd_polar(args) -> int:
    v = _body(_evaluate(args))
    P = principal_polar(v)
    gen = P.to_json()["generator"]["atoms"]
    _emit(args, P.to_json(), f"P(v) generated by {{{','.join(map(str, gen))}}}")
    return 0


def cmd_factor(args) -> int:
    v = _body(_evaluate(args))
    V = SpeckerLattice(v.algebra)
    atoms = set(_ints(args.u1))
    if any(not 0 <= a < V.base.atom_count for a in atoms):
        raise UhaError(f"--u1 names atoms outside 0..{V.base.atom_count - 1}")
    u1 = from_values(V.base, [int(a in atoms) for a in range(V.base.atom_count)])
    iso = direct_factor_decomposition(V, u1, V.unit - u1)
    image = iso(v)
    left, right = iso.target.split(image)
    data = {"first": left.to_json(), "second": right.to_json()}
    _emit(args, data, f"first: {_show(left)}\nsecond: {_show(right)}")
    return 0


def cmd_free(args) -> int:
    n = args.generators if args.generators is not None else 0
    F = free_uha(n)
    data = {"generators": n, "atoms": F.lattice.base.atom_count, "dimension": F.dimension}
    _emit(args, data, f"free object on {n} generators: {F.lattice.base.atom_count} atoms, dimension {F.dimension}")
    return 0


def cmd_dual(args) -> int:
    f = BoolHom(make_algebra(args.source), make_algebra(args.target), tuple(_ints(args.point_map)))
    g = functor_H_mor(f)
    d = dual_map(g)
    pairs = [(m.atom, d(m).atom) for m in max_spectrum(g.target)]
    data = {
        "dual": [{"from": m.to_json(), "to": d(m).to_json()} for m in max_spectrum(g.target)],
        "morphism_injective": f.is_injective(),
        "morphism_surjective": f.is_surjective(),
    }
    lines = [f"m{a} -> m{b}" for a, b in pairs]
    lines.append(f"morphism injective: {str(f.is_injective()).lower()}")
    lines.append(f"morphism surjective: {str(f.is_surjective()).lower()}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_roundtrip(args) -> int:
    k = args.atoms if args.atoms is not None else 2
    B = make_algebra(k)
    V = SpeckerLattice(B)
    e, eps = eta(B), epsilon(V)
    bools = V.boolean_elements()
    eta_images = [e(v) for v in bools]
    eta_ok = len(set(eta_images)) == len(B) and all(e.inverse(b) == v for b, v in zip(eta_images, bools))
    eta_hom = all(
        e(x & y) == e(x) & e(y) and e(x | y) == e(x) | e(y) and e(V.unit - x) == ~e(x)
        for x in bools for y in bools
    )
    grid = list(V.grid((Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2))))
    eps_ok = all(eps.inverse(eps(w)) == w for w in grid) and len({eps(w) for w in grid}) == len(grid)
    eps_hom = preserves_structure(eps, V, V, grid[:: max(1, len(grid) // 16)])
    f = BoolHom.identity(B)
    nat = eta_square_commutes(f) and functor_B_mor(functor_H_mor(f)) == f
    results = {
        "atoms": k,
        "boolean_elements": len(bools),
        "eta_bijective": eta_ok,
        "eta_boolean_hom": eta_hom,
        "epsilon_grid_size": len(grid),
        "epsilon_bijective_on_grid": eps_ok,
        "epsilon_lattice_hom": eps_hom,
        "identity_naturality": nat,
    }
    lines = [f"{key}: {str(val).lower() if isinstance(val, bool) else val}" for key, val in results.items()]
    _emit(args, results, "\n".join(lines))
    return 0 if all(v for v in results.values() if isinstance(v, bool)) else 1


def cmd_check(args) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    if args.workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(checks.run_suite, names, [args.seed] * len(names), [args.cases] * len(names)))
    else:
        results = [checks.run_suite(name, args.seed, args.cases) for name in names]
    data = {"results": [{"suite": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    _emit(args, data, "\n".join(r.line() for r in results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uhalat", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--atoms", type=int, help="atom count of the base algebra")
    common.add_argument("--generators", type=int, help="generator count of the free object")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=200)
    common.add_argument("--input", help="JSON file describing a lattice and its generators")
    common.add_argument("--lazy", action="store_true", help="evaluate in the countably generated free object")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [
        ("eval", cmd_eval, "evaluate a term"),
        ("decompose", cmd_decompose, "minimal decomposition into Boolean elements"),
        ("witness", cmd_witness, "least n with n|v| /\\ u Boolean"),
        ("boolean", cmd_boolean, "whether a term denotes a Boolean element"),
        ("polar", cmd_polar, "Boolean generator of the principal polar"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("expr")
        p.set_defaults(func=fn)

    p = sub.add_parser("factor", parents=[common], help="split along complementary Boolean elements")
    p.add_argument("expr")
    p.add_argument("--u1", required=True, help="comma-separated atoms of the first Boolean element")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("roundtrip", parents=[common], help="check eta and epsilon on H of a finite algebra")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("free", parents=[common], help="build a free object and report its dimension")
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("dual", parents=[common], help="dual map on maximal spectra")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--point-map", required=True, help="comma-separated source atoms, one per target atom")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("check", parents=[common], help="run a named property suite")
    p.add_argument("suite", choices=["all", *checks.SUITES])
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TermSyntaxError, UhaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
