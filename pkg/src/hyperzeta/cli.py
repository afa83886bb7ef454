"""Command-line front end: zeta, cover, lfun, verify, series.

All I/O is JSON; polynomials are emitted both as canonical text and as
coefficient maps.  Reports are deterministic for fixed inputs and seed:
wall-clock timing is printed on stderr, never embedded in the payload.

Exit codes: 0 success, 2 parse error, 3 precondition failure, 4 bad
voltage, 5 route disagreement, 6 bad representation, 7 explosion guard.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time

from . import __version__
from .algebra import BiPoly, series_inverse
from .covering import (
    VoltageAssignment,
    check_kronecker_identity,
    complete_voltage,
    derived_graph,
    covering_hypergraph,
    group_closure,
    identity_perm,
    perm_order,
    voltage_from_dict,
)
from .cycles import enumerate_prime_cycles, euler_product_series
from .errors import (
    BadPermutation,
    BadVoltageKey,
    CatalogIncomplete,
    ConflictingVoltage,
    CoverInvalid,
    ExplosionGuard,
    GroupMismatch,
    GroupTooLarge,
    HyperzetaError,
    NonIntegerMultiplicity,
    NotUnitary,
    ParseError,
    PreconditionFailed,
)
from .hypergraph import (
    Hypergraph,
    bipartite_graph,
    component_count,
    symmetric_digraph,
    validate_hypergraph,
)
from .reptheory import (
    builtin_irreps,
    catalog_from_dict,
    check_catalog,
    multiplicities,
    permutation_representation,
)
from .zeta import (
    bartholdi_zeta,
    check_factor_identity,
    collapse_to_t,
    edge_matrices,
    eval_complex,
    graph_zeta_reciprocal,
    lfunction_edge,
    lfunction_edge_at,
    lfunction_vertex,
    lfunction_vertex_at,
    relative_residual,
    sample_points,
    verify_decomposition,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VOLTAGE = 4
EXIT_DISAGREEMENT = 5
EXIT_REPRESENTATION = 6
EXIT_EXPLOSION = 7

_ERROR_EXIT = (
    (ParseError, EXIT_PARSE),
    (PreconditionFailed, EXIT_PRECONDITION),
    (CoverInvalid, EXIT_PRECONDITION),
    (BadVoltageKey, EXIT_VOLTAGE),
    (BadPermutation, EXIT_VOLTAGE),
    (ConflictingVoltage, EXIT_VOLTAGE),
    (GroupTooLarge, EXIT_VOLTAGE),
    (NotUnitary, EXIT_REPRESENTATION),
    (GroupMismatch, EXIT_REPRESENTATION),
    (NonIntegerMultiplicity, EXIT_REPRESENTATION),
    (CatalogIncomplete, EXIT_REPRESENTATION),
    (ExplosionGuard, EXIT_EXPLOSION),
)


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load_json(path: str):
    text = _read_file(path)
    try:
        return json.loads(text), _digest(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc


def poly_payload(p: BiPoly, var: str) -> dict:
    return {"variables": ["u", var],
            "text": p.to_text(var),
            "coefficients": p.to_coeff_map()}


def _maybe_ihara(p: BiPoly, args) -> BiPoly:
    return p.subs_u_zero() if args.ihara else p


def _base_report(args, digests: dict) -> dict:
    return {"tool": "hyperzeta",
            "version": __version__,
            "command": args.command,
            "inputs": digests,
            "seed": args.seed,
            "ihara": bool(args.ihara)}


def _emit(report: dict, args, start: float) -> None:
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json or not args.out:
        print(text)
    print(f"[{args.command}] {time.perf_counter() - start:.3f}s",
          file=sys.stderr)


def _load_hypergraph(path: str):
    data, digest = _load_json(path)
    return Hypergraph.from_dict(data), digest


def _require_valid(H: Hypergraph):
    diag = validate_hypergraph(H)
    if not diag.ok:
        raise PreconditionFailed("; ".join(diag.failures()))
    return diag


def _load_voltage(path: str, B):
    data, digest = _load_json(path)
    return voltage_from_dict(B, data), digest


def _resolve_catalog(spec: str | None, group):
    """'builtin:NAME', a file path, or None (auto-detect a builtin)."""
    if spec is None:
        if any(perm_order(g) == group.order for g in group.elements):
            name = "S2" if group.order == 2 else f"cyclic-{group.order}"
            return builtin_irreps(name, group), f"builtin:{name}"
        if group.element_orders() == (1, 2, 2, 2, 3, 3):
            return builtin_irreps("S3", group), "builtin:S3"
        raise CatalogIncomplete(
            "no builtin irrep catalog matches this voltage group; "
            "supply one with --rep FILE")
    if spec.startswith("builtin:"):
        return builtin_irreps(spec[len("builtin:"):], group), spec
    data, _ = _load_json(spec)
    catalog = catalog_from_dict(data, group)
    diag = check_catalog(catalog, group)
    if not diag.ok:
        raise CatalogIncomplete(
            f"representation file failed validation: hom residual "
            f"{diag.hom_residual:.2e}, unitarity {diag.unitarity_residual:.2e}, "
            f"orthonormality {diag.orthonormality_residual:.2e}, "
            f"sum f_i^2 = {diag.sum_f_squared} vs |G| = {diag.group_order}")
    return catalog, spec


# -- random instances (for `verify --random` and the test corpus) ----------

def random_instance(rng: random.Random, flavor: str):
    """A valid random hypergraph plus voltages whose group is S2 (flavor
    'S2', k=2) or cyclic of order 3 (flavor 'cyclic3', k=3)."""
    while True:
        nv = rng.randint(3, 4)
        ne = rng.randint(3, 4)
        vertices = tuple(f"v{i + 1}" for i in range(nv))
        edges = tuple((f"e{j + 1}",
                       tuple(sorted(rng.sample(vertices, rng.randint(2, min(3, nv))))))
                      for j in range(ne))
        try:
            H = Hypergraph(vertices, edges)
        except ParseError:
            continue
        if not validate_hypergraph(H).ok:
            continue
        B = bipartite_graph(H)
        if flavor == "S2":
            k, gen = 2, (1, 0)
        elif flavor == "cyclic3":
            k, gen = 3, (1, 2, 0)
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
        powers = [identity_perm(k), gen]
        while len(powers) < k:
            from .covering import compose
            powers.append(compose(powers[-1], gen))
        draws = [rng.randrange(k) for _ in range(B.n_edges)]
        if all(d == 0 for d in draws):
            draws[rng.randrange(B.n_edges)] = 1 + rng.randrange(k - 1)
        partial = {i: powers[d] for i, d in enumerate(draws) if d}
        return H, complete_voltage(B, k, partial)


# -- commands ---------------------------------------------------------------

def cmd_zeta(args) -> int:
    H, digest = _load_hypergraph(args.hypergraph)
    report_digests = {"hypergraph": digest}
    zr = bartholdi_zeta(H)
    report = _base_report(args, report_digests)
    report["mode"] = zr.mode
    report["route"] = zr.route
    report["reciprocal"] = poly_payload(_maybe_ihara(zr.reciprocal, args), "t")
    _emit(report, args, args.start)
    return EXIT_OK


def cmd_cover(args) -> int:
    H, hd = _load_hypergraph(args.hypergraph)
    B = bipartite_graph(H)
    assignment, vd = _load_voltage(args.voltage, B)
    group = group_closure(assignment, cap=args.group_cap)
    derived = derived_graph(B, assignment)
    Hbar = covering_hypergraph(derived)
    kron_ok = check_kronecker_identity(B, assignment, group)
    report = _base_report(args, {"hypergraph": hd, "voltage": vd})
    report["mode"] = "exact"
    report["fold"] = assignment.k
    report["group_order"] = group.order
    report["cover"] = Hbar.to_dict()
    report["cover_components"] = component_count(bipartite_graph(Hbar))
    report["kronecker_identity"] = kron_ok
    _emit(report, args, args.start)
    return EXIT_OK if kron_ok else EXIT_DISAGREEMENT


def cmd_lfun(args) -> int:
    H, hd = _load_hypergraph(args.hypergraph)
    _require_valid(H)
    B = bipartite_graph(H)
    assignment, vd = _load_voltage(args.voltage, B)
    group = group_closure(assignment, cap=args.group_cap)
    catalog, cat_name = _resolve_catalog(args.rep, group)
    idx = args.irrep - 1
    if not 0 <= idx < len(catalog.reps):
        raise CatalogIncomplete(
            f"--irrep {args.irrep} out of range 1..{len(catalog.reps)}")
    rho = catalog.reps[idx]
    rho.require_unitary()
    report = _base_report(args, {"hypergraph": hd, "voltage": vd})
    report["catalog"] = cat_name
    report["irrep"] = {"index": args.irrep, "name": rho.name,
                       "degree": rho.degree, "field": rho.field}
    if rho.exact:
        edge = lfunction_edge(B, assignment, rho, group)
        vertex = lfunction_vertex(B, assignment, rho, group)
        agree = edge == vertex
        report["mode"] = "exact"
        report["routes_agree"] = agree
        report["reciprocal"] = poly_payload(
            _maybe_ihara(collapse_to_t(edge), args), "t")
    else:
        rng = random.Random(args.seed)
        em = edge_matrices(B, assignment, rho, group)
        worst = 0.0
        for u_val, s_val in sample_points(args.samples, rng):
            if args.ihara:
                u_val = 0j
            a = lfunction_edge_at(em, u_val, s_val)
            b = lfunction_vertex_at(B, assignment, rho, group, u_val, s_val)
            worst = max(worst, relative_residual(a, b))
        agree = worst < args.tol
        report["mode"] = "sampled"
        report["samples"] = args.samples
        report["routes_agree"] = agree
        report["max_residual"] = worst
    _emit(report, args, args.start)
    return EXIT_OK if agree else EXIT_DISAGREEMENT


def _verify_one(H, assignment, catalog, group, args):
    dr = verify_decomposition(H, assignment, catalog, group,
                              samples=args.samples, tol=args.tol,
                              seed=args.seed)
    B = bipartite_graph(H)
    kron_ok = check_kronecker_identity(B, assignment, group)
    entry = {"fold": assignment.k,
             "group_order": dr.group_order,
             "multiplicities": list(dr.mults),
             "mode": dr.mode,
             "factors": [{"index": f.index + 1, "name": f.name,
                          "degree": f.degree, "multiplicity": f.multiplicity,
                          "mode": f.mode} for f in dr.factors],
             "kronecker_identity": kron_ok,
             "decomposition_ok": dr.ok}
    if dr.mode == "sampled":
        entry["samples"] = dr.samples
        entry["max_residual"] = dr.max_residual
    else:
        mults = list(dr.mults)
        entry["factored_identity_ok"] = check_factor_identity(
            H, assignment, catalog, group, mults)
    return dr, entry, kron_ok


def cmd_verify(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        results = []
        all_ok = True
        for i in range(args.random):
            flavor = rng.choice(("S2", "cyclic3"))
            H, assignment = random_instance(rng, flavor)
            group = group_closure(assignment, cap=args.group_cap)
            catalog, _ = _resolve_catalog(None, group)
            dr, entry, kron_ok = _verify_one(H, assignment, catalog, group, args)
            entry["instance"] = i
            entry["flavor"] = flavor
            ok = dr.ok and kron_ok and entry.get("factored_identity_ok", True)
            entry["ok"] = ok
            all_ok = all_ok and ok
            results.append(entry)
        report = _base_report(args, {})
        report["random_instances"] = args.random
        report["results"] = results
        report["ok"] = all_ok
        _emit(report, args, args.start)
        return EXIT_OK if all_ok else EXIT_DISAGREEMENT

    H, hd = _load_hypergraph(args.hypergraph)
    B = bipartite_graph(H)
    assignment, vd = _load_voltage(args.voltage, B)
    group = group_closure(assignment, cap=args.group_cap)
    catalog, cat_name = _resolve_catalog(args.rep, group)
    dr, entry, kron_ok = _verify_one(H, assignment, catalog, group, args)
    report = _base_report(args, {"hypergraph": hd, "voltage": vd})
    report["catalog"] = cat_name
    report.update(entry)
    report["cover"] = dr.cover.to_dict()
    report["cover_reciprocal"] = poly_payload(_maybe_ihara(dr.lhs, args), "t")
    if dr.rhs is not None:
        report["product_reciprocal"] = poly_payload(
            _maybe_ihara(dr.rhs, args), "t")
    ok = dr.ok and kron_ok and entry.get("factored_identity_ok", True)
    report["ok"] = ok
    _emit(report, args, args.start)
    return EXIT_OK if ok else EXIT_DISAGREEMENT


def cmd_series(args) -> int:
    H, hd = _load_hypergraph(args.hypergraph)
    _require_valid(H)
    B = bipartite_graph(H)
    R = symmetric_digraph(B)
    recip = graph_zeta_reciprocal(B)
    order = args.order
    partial = False
    while True:
        try:
            classes = enumerate_prime_cycles(R, order, cap=args.class_cap)
            break
        except ExplosionGuard:
            partial = True
            order -= 1
            if order < 1:
                raise
    det_side = series_inverse(recip, order)
    euler_side = euler_product_series(classes, order)
    rows = []
    match = True
    for j in range(order + 1):
        a, b = det_side.coeffs[j], euler_side.coeffs[j]
        ok = a == b
        match = match and ok
        rows.append({"s_power": j,
                     "determinant": a.to_text(),
                     "euler_product": b.to_text(),
                     "match": ok})
    report = _base_report(args, {"hypergraph": hd})
    report["mode"] = "exact"
    report["order_requested"] = args.order
    report["order_completed"] = order
    report["classes"] = len(classes.items)
    report["table"] = rows
    report["match"] = match
    _emit(report, args, args.start)
    if partial:
        return EXIT_EXPLOSION
    return EXIT_OK if match else EXIT_DISAGREEMENT


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperzeta",
        description="Exact Bartholdi and Ihara zeta functions and "
                    "L-functions of finite hypergraphs and their "
                    "permutation-voltage covers.")
    parser.add_argument("--version", action="version",
                        version=f"hyperzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, voltage=False, rep=False):
        p.add_argument("hypergraph", nargs="?" if p.prog.endswith("verify")
                       else None, help="hypergraph JSON file")
        if voltage:
            p.add_argument("voltage", nargs="?" if p.prog.endswith("verify")
                           else None, help="voltage JSON file")
        if rep:
            p.add_argument("--rep", default=None,
                           help="builtin:NAME or a representation JSON file")
            p.add_argument("--irrep", type=int, default=1,
                           help="1-based irreducible index (lfun only)")
        p.add_argument("--order", type=int, default=8,
                       help="series truncation order")
        p.add_argument("--samples", type=int, default=25,
                       help="sample points in numeric mode")
        p.add_argument("--tol", type=float, default=1e-8,
                       help="relative residual tolerance in numeric mode")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling and random suites")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--ihara", action="store_true",
                       help="substitute u=0 before reporting")
        p.add_argument("--json", action="store_true",
                       help="print the JSON report to stdout")
        p.add_argument("--group-cap", type=int, default=10080,
                       help="voltage group order cap")
        p.add_argument("--class-cap", type=int, default=10**6,
                       help="prime cycle class cap")

    common(sub.add_parser("zeta", help="hypergraph zeta reciprocal"))
    common(sub.add_parser("cover", help="derived cover and its checks"),
           voltage=True)
    common(sub.add_parser("lfun", help="L-function by both routes"),
           voltage=True, rep=True)
    pv = sub.add_parser("verify", help="cover decomposition verification")
    common(pv, voltage=True, rep=True)
    pv.add_argument("--random", type=int, default=0,
                    help="verify this many random seeded instances instead")
    common(sub.add_parser("series", help="Euler product vs determinant"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.start = time.perf_counter()
    if args.command == "verify" and not args.random:
        if not args.hypergraph or not args.voltage:
            print("error: verify needs a hypergraph and a voltage file "
                  "(or --random N)", file=sys.stderr)
            return EXIT_PARSE
    if getattr(args, "tol", 1e-8) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_PARSE
    handler = {"zeta": cmd_zeta, "cover": cmd_cover, "lfun": cmd_lfun,
               "verify": cmd_verify, "series": cmd_series}[args.command]
    try:
        return handler(args)
    except HyperzetaError as exc:
        for etype, code in _ERROR_EXIT:
            if isinstance(exc, etype):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
