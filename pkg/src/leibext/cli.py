"""Command-line interface: ``leibext SUBCOMMAND ...``.

Exit status is 0 when the command succeeds or the checked property holds,
1 when the property fails, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import registry
from .algebra import (
    check_leibniz,
    delta_subspace,
    derivations,
    left_center,
    pair_matrices,
    pi_subspace,
    right_center,
    semidirect_der_algebra,
    xi_subspace,
)
from .dgla import NotMC, is_mc, mc_defect, mc_equivalent, pack_cocycle, phi_element, gauge_transform, unpack_cocycle
from .documents import (
    LeibnizViolation,
    ParseError,
    algebra_to_document,
    cocycle_to_document,
    dumps,
    format_vector,
    load_algebra,
    load_cocycle,
    matrix_to_document,
    morphism_to_document,
    parse_matrix,
    parse_morphism,
    parse_two_algebra,
    two_algebra_to_document,
)
from .extensions import (
    COCYCLE_CONDITIONS,
    WitnessInvalid,
    build_extension,
    cocycles_equivalent,
    is_cocycle,
    isomorphism_from_witness,
)
from .fields import QQ, format_scalar, parse_field, parse_scalar
from .leibniz2 import (
    CenterConditionFailed,
    NotInXi,
    as_two_algebra,
    check_axioms,
    check_two_morphism,
    cocycle_to_morphism,
    morphism_to_cocycle,
    strict_two_algebra,
)

__all__ = ["main", "build_parser", "EXAMPLE_BUNDLES"]

# name -> (g, h, extension algebra) registry names
EXAMPLE_BUNDLES = {
    "ex310": ("g", "ex310_h", "ex310_ghat"),
    "ex311": ("g", "ex311_h", "ex311_ghat"),
    "ex312_g1": ("g", "ex312_h", "ex312_ghat1"),
    "ex312_g2": ("g", "ex312_h", "ex312_ghat2"),
}


class UsageError(Exception):
    pass


class Context:
    """Parsed global options plus the output sink."""

    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.field = parse_field(args.field)
        self.gamma = args.gamma
        self.verify = not args.no_verify
        self.color = os.environ.get("LEIBEXT_COLOR", "0") == "1"

    def algebra(self, ref):
        return load_algebra(ref, self.field, self.verify, self.gamma)

    def cocycle(self, ref):
        g = self.algebra(self.args.g) if getattr(self.args, "g", None) else None
        h = self.algebra(self.args.h) if getattr(self.args, "h", None) else None
        return load_cocycle(ref, self.field, self.verify, g, h, self.gamma)

    def verdict(self, label, ok, yes="yes", no="no"):
        word = yes if ok else no
        if self.color:
            word = f"\033[{32 if ok else 31}m{word}\033[0m"
        return f"{label}: {word}" if label else word

    def emit(self, ok, lines, payload):
        if self.args.json:
            self.out.write(dumps({"ok": bool(ok), **payload}))
        else:
            for line in lines:
                self.out.write(line + "\n")
        return 0 if ok else 1


def _basis_text(space, basis):
    return "{" + ", ".join(format_vector(v, basis) for v in space.rows) + "}"


def _vectors(space):
    return [[format_scalar(x) for x in v] for v in space.rows]


def _matrix_lines(M, indent="  "):
    return [indent + "[" + ", ".join(format_scalar(x) for x in row) + "]" for row in np.asarray(M, dtype=object)]


def _load_phi(path, m, n, field):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path) from None
    if isinstance(doc, dict):
        doc = doc.get("phi")
    return parse_matrix(doc, (m, n), field, f"{path}.phi")


# -- subcommands -----------------------------------------------------------


def cmd_check(ctx):
    A = load_algebra(ctx.args.algebra, ctx.field, False, ctx.gamma)
    report = check_leibniz(A)
    lines = [f"algebra: {A.name} (dim {A.dim})", ctx.verdict("LEIBNIZ", report.ok)]
    b = A.basis
    for i, j, k, _ in report.violations:
        lines.append(f"  identity fails on ({b[i]}, {b[j]}, {b[k]})")
    payload = {"algebra": A.name, "violations": [[b[i], b[j], b[k]] for i, j, k, _ in report.violations]}
    return ctx.emit(report.ok, lines, payload)


def cmd_center(ctx):
    A = ctx.algebra(ctx.args.algebra)
    Z = left_center(A) if ctx.args.side == "left" else right_center(A)
    lines = [f"{ctx.args.side} center of {A.name}: dim {Z.dim}", _basis_text(Z, A.basis)]
    return ctx.emit(True, lines, {"side": ctx.args.side, "dim": Z.dim, "basis": _vectors(Z)})


def cmd_delta(ctx):
    A = ctx.algebra(ctx.args.algebra)
    D = delta_subspace(A)
    lines = [f"span of squares [a, a] in {A.name}: dim {D.dim}", _basis_text(D, A.basis)]
    return ctx.emit(True, lines, {"dim": D.dim, "basis": _vectors(D)})


def cmd_derivations(ctx):
    A = ctx.algebra(ctx.args.algebra)
    S = derivations(A, ctx.args.side)
    n = A.dim
    mats = [np.array(r, dtype=object).reshape(n, n) for r in S.rows]
    lines = [f"{ctx.args.side} derivations of {A.name}: dim {S.dim}"]
    for k, M in enumerate(mats):
        lines.append(f"D{k + 1} =")
        lines.extend(_matrix_lines(M))
    return ctx.emit(True, lines, {"side": ctx.args.side, "dim": S.dim, "basis": [matrix_to_document(M) for M in mats]})


def cmd_subalg(ctx):
    A = ctx.algebra(ctx.args.algebra)
    S = pi_subspace(A) if ctx.args.kind == "pi" else xi_subspace(A)
    lines = [f"{ctx.args.kind} subalgebra of {A.name}: dim {S.dim}"]
    pairs = []
    for k, row in enumerate(S.rows):
        DL, DR = pair_matrices(row, A.dim)
        pairs.append({"left": matrix_to_document(DL), "right": matrix_to_document(DR)})
        lines.append(f"P{k + 1}: left =")
        lines.extend(_matrix_lines(DL))
        lines.append("    right =")
        lines.extend(_matrix_lines(DR))
    return ctx.emit(True, lines, {"kind": ctx.args.kind, "dim": S.dim, "basis": pairs})


def cmd_semidirect(ctx):
    A = ctx.algebra(ctx.args.algebra)
    D = semidirect_der_algebra(A)
    doc = algebra_to_document(D)
    report = check_leibniz(D)
    lines = [f"left + right derivations of {A.name}: dim {D.dim}", ctx.verdict("LEIBNIZ", report.ok), dumps(doc).rstrip()]
    return ctx.emit(report.ok, lines, {"algebra": doc})


def _cocycle_report_lines(ctx, c, report):
    lines = [ctx.verdict("COCYCLE", report.ok)]
    for name in report.violated:
        lines.append(f"  {name} fails at {report.witnesses[name]}")
    return lines


def cmd_extend(ctx):
    c = ctx.cocycle(ctx.args.cocycle)
    if ctx.verify:
        report = is_cocycle(c)
        if not report.ok:
            return ctx.emit(False, _cocycle_report_lines(ctx, c, report), {"violated": list(report.violated)})
    E = build_extension(c, verify=False)
    doc = algebra_to_document(E.total)
    return ctx.emit(True, [dumps(doc).rstrip()], {"algebra": doc})


def cmd_cocycle_check(ctx):
    c = ctx.cocycle(ctx.args.cocycle)
    report = is_cocycle(c)
    payload = {
        "violated": list(report.violated),
        "witnesses": {k: list(v) for k, v in report.witnesses.items()},
        "conditions": list(COCYCLE_CONDITIONS),
    }
    return ctx.emit(report.ok, _cocycle_report_lines(ctx, c, report), payload)


def _two_cocycles(ctx):
    c1 = ctx.cocycle(ctx.args.first)
    c2 = ctx.cocycle(ctx.args.second)
    if c1.g != c2.g or c1.h != c2.h:
        raise UsageError("the two cocycles must be over the same algebras")
    return c1, c2


def _phi_lines(phi, c):
    lines = []
    for x in range(c.g.dim):
        lines.append(f"  phi({c.g.basis[x]}) = {format_vector(phi[:, x], c.h.basis)}")
    return lines


def cmd_equiv(ctx):
    c1, c2 = _two_cocycles(ctx)
    bad = [k for k, c in (("first", c1), ("second", c2)) if not is_cocycle(c).ok]
    if bad:
        return ctx.emit(False, [f"not a cocycle: {', '.join(bad)}", "NOT EQUIVALENT"], {"equivalent": False, "invalid": bad})
    phi = cocycles_equivalent(c1, c2)
    if phi is None:
        return ctx.emit(False, ["NOT EQUIVALENT"], {"equivalent": False})
    lines = ["EQUIVALENT", "witness phi (carries the second cocycle to the first):"] + _phi_lines(phi, c1)
    return ctx.emit(True, lines, {"equivalent": True, "phi": matrix_to_document(phi)})


def cmd_iso_verify(ctx):
    c1, c2 = _two_cocycles(ctx)
    phi = _load_phi(ctx.args.phi, c1.h.dim, c1.g.dim, ctx.field)
    try:
        theta = isomorphism_from_witness(c1, c2, phi)
    except WitnessInvalid as exc:
        return ctx.emit(False, [ctx.verdict("ISOMORPHISM", False), f"  {exc}"], {"reason": str(exc)})
    lines = [ctx.verdict("ISOMORPHISM", True), "theta ="] + _matrix_lines(theta)
    return ctx.emit(True, lines, {"theta": matrix_to_document(theta)})


def _axiom_lines(ctx, report):
    lines = [ctx.verdict("AXIOMS", report.ok, "ok", "failed")]
    for name in report.failed:
        lines.append(f"  ({name}) fails at {report.witnesses[name]}")
    return lines


def cmd_two_alg(ctx):
    h = ctx.algebra(ctx.args.algebra)
    L = strict_two_algebra(ctx.args.kind, h)
    report = check_axioms(L)
    doc = two_algebra_to_document(L)
    if ctx.args.out:
        with open(ctx.args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    lines = [f"strict 2-algebra {L.name}: V1 dim {L.V1_dim}, V0 dim {L.V0_dim}"] + _axiom_lines(ctx, report)
    return ctx.emit(report.ok, lines, {"two_algebra": doc, "failed": list(report.failed)})


def cmd_two_check(ctx):
    with open(ctx.args.file, encoding="utf-8") as fh:
        text = fh.read()
    L = parse_two_algebra(text, ctx.field, ctx.args.file)
    report = check_axioms(L)
    payload = {"failed": list(report.failed), "witnesses": {k: list(v) for k, v in report.witnesses.items()}}
    return ctx.emit(report.ok, _axiom_lines(ctx, report), payload)


def cmd_morphism_check(ctx):
    c = ctx.cocycle(ctx.args.cocycle)
    if ctx.args.morphism:
        target = strict_two_algebra("xi", c.h)
        source = as_two_algebra(c.g)
        with open(ctx.args.morphism, encoding="utf-8") as fh:
            F = parse_morphism(fh.read(), source, target, ctx.field, ctx.args.morphism)
    else:
        try:
            source, target, F = cocycle_to_morphism(c)
        except CenterConditionFailed as exc:
            hb = c.h.basis
            lines = [
                ctx.verdict("MORPHISM", False),
                f"  center condition fails: Z(h) = {_basis_text(exc.center_h, hb)}, "
                f"Z(ext) & h = {_basis_text(exc.center_ext_h, hb)}",
            ]
            if exc.not_in_xi:
                lines.append(f"  (l_x, r_x) outside Xi(h) for x in {{{', '.join(c.g.basis[i] for i in exc.not_in_xi)}}}")
            payload = {"reason": "center condition", "center_h": _vectors(exc.center_h),
                       "center_ext_h": _vectors(exc.center_ext_h)}
            return ctx.emit(False, lines, payload)
        except NotInXi as exc:
            return ctx.emit(False, [ctx.verdict("MORPHISM", False), f"  {exc}"], {"reason": str(exc)})
    report = check_two_morphism(F, source, target)
    lines = [ctx.verdict("MORPHISM", report.ok)]
    for name in report.failed:
        lines.append(f"  {name} fails at {report.witnesses[name]}")
    payload = {"failed": list(report.failed), "morphism": morphism_to_document(F)}
    if report.ok:
        back = morphism_to_cocycle(F, c.g, target)
        same = back == c
        lines.append(ctx.verdict("ROUND TRIP", same))
        payload["round_trip"] = same
    return ctx.emit(report.ok, lines, payload)


def cmd_mc_check(ctx):
    c = ctx.cocycle(ctx.args.cocycle)
    e = pack_cocycle(c)
    defect = mc_defect(e)
    ok = defect.is_zero()
    support = [list(map(int, idx)) for idx in np.argwhere(defect.h_part() != 0)]
    lines = [ctx.verdict("MAURER-CARTAN", ok)]
    if not ok:
        lines.append(f"  defect nonzero at {len(support)} entries, first {tuple(support[0])}")
    return ctx.emit(ok, lines, {"support": support})


def cmd_gauge(ctx):
    c = ctx.cocycle(ctx.args.cocycle)
    phi = _load_phi(ctx.args.phi, c.h.dim, c.g.dim, ctx.field)
    e2 = gauge_transform(pack_cocycle(c), phi_element(c.g, c.h, phi))
    doc = cocycle_to_document(unpack_cocycle(e2))
    return ctx.emit(True, [dumps(doc).rstrip()], {"cocycle": doc, "mc": is_mc(e2)})


def cmd_mc_equiv(ctx):
    c1, c2 = _two_cocycles(ctx)
    try:
        w = mc_equivalent(pack_cocycle(c1), pack_cocycle(c2))
    except NotMC as exc:
        return ctx.emit(False, [f"{exc}", "NOT GAUGE EQUIVALENT"], {"equivalent": False, "reason": str(exc)})
    if w is None:
        return ctx.emit(False, ["NOT GAUGE EQUIVALENT"], {"equivalent": False})
    n = c1.g.dim
    phi = w.cochain.t[:n, n:].T
    lines = ["GAUGE EQUIVALENT", "gauge element phi (acts on the first, yields the second):"] + _phi_lines(phi, c1)
    return ctx.emit(True, lines, {"equivalent": True, "phi": matrix_to_document(phi)})


def example_bundle(name, gamma=Fraction(1), field=QQ) -> dict:
    """Algebra and cocycle documents of a worked example."""
    try:
        g_name, h_name, ghat_name = EXAMPLE_BUNDLES[name]
    except KeyError:
        raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_BUNDLES)}") from None
    c = registry.cocycle(name, gamma, field)
    ghat = registry.algebra(ghat_name, gamma, field)
    if build_extension(c).total != ghat:
        raise AssertionError(f"registry extension for {name} does not match its cocycle")
    return {
        "name": name,
        "g": algebra_to_document(c.g),
        "h": algebra_to_document(c.h),
        "ghat": algebra_to_document(ghat),
        "cocycle": cocycle_to_document(c, f"examples:{g_name}", f"examples:{h_name}"),
    }


def cmd_example(ctx):
    bundle = example_bundle(ctx.args.name, ctx.gamma, ctx.field)
    if ctx.args.out:
        os.makedirs(ctx.args.out, exist_ok=True)
        for key, suffix in (("g", "g.leib.json"), ("h", "h.leib.json"), ("ghat", "ghat.leib.json"), ("cocycle", "cocycle.json")):
            with open(os.path.join(ctx.args.out, f"{ctx.args.name}.{suffix}"), "w", encoding="utf-8") as fh:
                fh.write(dumps(bundle[key]))
    ctx.out.write(dumps(bundle))
    return 0


# -- parser ----------------------------------------------------------------


def _gamma(text):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _field(text):
    try:
        parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _normalize_side(args) -> bool:
    """Allow ``center ALGEBRA`` as shorthand for ``center left ALGEBRA``."""
    if args.algebra is None:
        args.side, args.algebra = "left", args.side
    return args.side in ("left", "right")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", type=_field, default="q", help="q (rationals, default) or p:PRIME")
    common.add_argument("--no-verify", action="store_true", help="skip Leibniz checks on parsed algebras")
    common.add_argument("--gamma", type=_gamma, default=Fraction(1), help="parameter of the ex310 family")

    parser = argparse.ArgumentParser(prog="leibext", description="Leibniz algebras, extensions and 2-cocycles.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def add_cocycle_pair(p):
        p.add_argument("first")
        p.add_argument("second")
        p.add_argument("--g", help="override the g reference of both documents")
        p.add_argument("--h", help="override the h reference of both documents")

    def add_cocycle(p):
        p.add_argument("cocycle", help="cocycle file or examples:NAME")
        p.add_argument("--g", help="override the g reference")
        p.add_argument("--h", help="override the h reference")

    add(
        "check", cmd_check, "check the Leibniz identity"
    ).add_argument("algebra", help="algebra file or examples:NAME")
    p = add("center", cmd_center, "left (default) or right center")
    p.add_argument("side", metavar="[left|right] algebra")
    p.add_argument("algebra", nargs="?", help=argparse.SUPPRESS)
    add("delta", cmd_delta, "span of the squares [a, a]").add_argument("algebra")
    p = add("derivations", cmd_derivations, "left (default) or right derivations")
    p.add_argument("side", metavar="[left|right] algebra")
    p.add_argument("algebra", nargs="?", help=argparse.SUPPRESS)
    p = add("subalg", cmd_subalg, "the pi or xi subalgebra of derivation pairs")
    p.add_argument("kind", choices=("pi", "xi"))
    p.add_argument("algebra")
    add("semidirect", cmd_semidirect, "the algebra of left + right derivation pairs").add_argument("algebra")
    add_cocycle(add("extend", cmd_extend, "extension algebra of a cocycle"))
    add_cocycle(add("cocycle-check", cmd_cocycle_check, "check the cocycle conditions"))
    add_cocycle_pair(add("equiv", cmd_equiv, "decide equivalence of two cocycles"))
    p = add("iso-verify", cmd_iso_verify, "verify a witness and print the extension isomorphism")
    add_cocycle_pair(p)
    p.add_argument("--phi", required=True, help="JSON file holding the h x g matrix phi")
    p = add("two-alg", cmd_two_alg, "strict 2-algebra on the pi or xi subalgebra")
    p.add_argument("kind", choices=("pi", "xi"))
    p.add_argument("algebra")
    p.add_argument("--out", help="write the tensor dump to this file")
    add("two-check", cmd_two_check, "check the 2-algebra axioms of a tensor dump").add_argument("file")
    p = add("morphism-check", cmd_morphism_check, "2-algebra morphism of a cocycle")
    add_cocycle(p)
    p.add_argument("--morphism", help="morphism tensor dump to check instead of the derived one")
    add_cocycle(add("mc-check", cmd_mc_check, "Maurer-Cartan check of a packed cocycle"))
    p = add("gauge", cmd_gauge, "gauge-transform a cocycle by phi")
    add_cocycle(p)
    p.add_argument("--phi", required=True, help="JSON file holding the h x g matrix phi")
    add_cocycle_pair(add("mc-equiv", cmd_mc_equiv, "decide gauge equivalence of two MC elements"))
    p = add("example", cmd_example, "emit the documents of a worked example")
    p.add_argument("name")
    p.add_argument("--out", help="also write the documents into this directory")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("center", "derivations") and not _normalize_side(args):
        sys.stderr.write(f"leibext: error: {args.command}: side must be 'left' or 'right'\n")
        return 2
    try:
        return args.func(Context(args, out))
    except (UsageError, ParseError, LeibnizViolation, ValueError, OSError) as exc:
        sys.stderr.write(f"leibext: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
