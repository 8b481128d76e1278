"""Command-line front end.

    mfkit [--order grevlex|lex] [--field q|fp:<p>] [--json] [--max-steps N] SESSION COMMAND ARGS...

Exit status: 0 when the answer is yes, 1 when it is a mathematical no,
2 on any error (bad input, undefined names, engine failures).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .correspondence import (ModulePresentation, eisenbud_factorization, faithfulness_nullhomotopy,
                             fullness_reconstruct, roundtrip_check)
from .errors import (AxiomFailed, IsoCheckFailed, MfkitError, NotAcyclic, NotDivisible, PdTooLarge,
                     RegularityFailed)
from .factorization import (MfMorphism, check_homotopy, homotopic,
                            validate_factorization, zero_morphism)
from .groebner import GREVLEX, LEX, GroebnerBasis, step_budget
from .homological import ext_dimension, rees_check_i, rees_check_ii
from .matrix import PolyMatrix, reduce_matrix_mod
from .periodic import (apply_T, apply_T_morphism, check_periodic_homotopy, coker_presentation,
                       verify_total_acyclicity)
from .ring import field_from_tag
from .session import parse_session

YES, NO, ERROR = 0, 1, 2
_VERDICT = {YES: "yes", NO: "no", ERROR: "error"}


@dataclass
class Report:
    command: str
    obj: str
    code: int = YES
    fields: dict = field(default_factory=dict)     # verdict-bearing values, shown in both outputs
    witnesses: dict = field(default_factory=dict)  # matrices and certificates, as strings
    timings: dict = field(default_factory=dict)
    message: str = ""

    def to_json(self):
        return {"command": self.command, "object": self.obj, "verdict": _VERDICT[self.code],
                "witnesses": {**self.fields, **self.witnesses, **({"message": self.message}
                                                                   if self.message else {})},
                "timings": self.timings}

    def to_text(self):
        lines = [f"{self.command} {self.obj}: {_VERDICT[self.code]}"]
        if self.message:
            lines.append(self.message)
        for k, v in self.fields.items():
            lines.append(f"{k}: {_show(v)}")
        for k, v in self.witnesses.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _show(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "not finite length"
    return str(v)


def _mat(m: PolyMatrix):
    return "[]" if m.nrows == 0 else str(m)


class _Ctx:
    def __init__(self, session, order):
        self.s = session
        self.order = order

    @property
    def f(self):
        if self.s.f is None:
            raise MfkitError("the session declares no f")
        return self.s.f

    def factorization(self, name):
        b = self.s.get(name, ("factorization",))
        return validate_factorization(self.f, b.matrices["d1"], b.matrices["d0"])

    def morphism(self, name):
        b = self.s.get(name, ("morphism",))
        return MfMorphism(self.factorization(b.source), self.factorization(b.target),
                          b.matrices["a0"], b.matrices["a1"])

    def module(self, name):
        b = self.s.get(name, ("module",))
        f = self.s.f if b.over == "R" else None
        return ModulePresentation(b.matrices["relations"], b.over, f)


def _cmd_validate(ctx, rep, name):
    try:
        p = ctx.factorization(name)
    except AxiomFailed as e:
        rep.code = NO
        rep.fields["valid"] = False
        rep.message = str(e)
        return
    rep.fields["valid"] = True
    rep.fields["rank"] = p.rank
    rep.witnesses["d1*d0"] = _mat(p.d1 @ p.d0)
    rep.witnesses["d0*d1"] = _mat(p.d0 @ p.d1)


def _invalid(rep, e):
    rep.code = NO
    rep.fields["valid"] = False
    rep.message = str(e)


def _cmd_coker(ctx, rep, name):
    try:
        p = ctx.factorization(name)
    except AxiomFailed as e:
        return _invalid(rep, e)
    pres = coker_presentation(p, "d1")
    gb = GroebnerBasis(p.ring, p.rank, pres.columns(), ctx.order, p.f) if p.rank else None
    zero = p.rank == 0 or all(gb.contains(c) for c in PolyMatrix.identity(p.ring, p.rank).columns())
    rep.fields["generators"] = p.rank
    rep.fields["zero module"] = zero
    rep.witnesses["presentation mod f"] = _mat(pres)


def _check_cert(c, cert):
    a = c.a_bar if cert.tag == "plain" else c.transpose().a_bar
    b = c.b_bar if cert.tag == "plain" else c.transpose().b_bar
    f = c.f
    for img, entries in ((a, cert.at_m0), (b, cert.at_m1)):
        for z, coeffs in entries:
            if not coeffs:
                continue
            v = img @ PolyMatrix.from_columns(img.ring, [coeffs], img.ncols)
            if reduce_matrix_mod(v - PolyMatrix.from_columns(img.ring, [z], img.nrows), f).is_zero():
                continue
            raise MfkitError("acyclicity certificate failed to re-verify")


def _cmd_totalize(ctx, rep, name):
    try:
        p = ctx.factorization(name)
    except AxiomFailed as e:
        return _invalid(rep, e)
    c = apply_T(p)
    try:
        certs = verify_total_acyclicity(c, ctx.order)
    except NotAcyclic as e:
        rep.code = NO
        rep.fields["totally acyclic"] = False
        rep.message = str(e)
        return
    for cert in certs:
        _check_cert(c, cert)
    rep.fields["totally acyclic"] = True
    for cert in certs:
        rep.fields[f"{cert.tag} kernel generators"] = cert.size
        for pos, entries in (("M0", cert.at_m0), ("M1", cert.at_m1)):
            for j, (z, coeffs) in enumerate(entries):
                rep.witnesses[f"{cert.tag} {pos} kernel {j}"] = (
                    f"{[str(a) for a in z]} = image of {[str(a) for a in coeffs]}")


def _cmd_homotopic(ctx, rep, n1, n2):
    m1, m2 = ctx.morphism(n1), ctx.morphism(n2)
    h = homotopic(m1, m2, ctx.order)
    if h is None:
        rep.code = NO
        rep.fields["homotopic"] = False
        return
    if not check_homotopy(m1, m2, h):
        raise MfkitError("homotopy witness failed to re-verify")
    rep.fields["homotopic"] = True
    rep.witnesses["h0"] = _mat(h.h0)
    rep.witnesses["h1"] = _mat(h.h1)


def _cmd_eisenbud(ctx, rep, name):
    m = ctx.module(name)
    if m.over != "R":
        raise MfkitError(f"{name} is a module over S; the construction needs an R-module")
    try:
        p = eisenbud_factorization(m, ctx.order)
    except PdTooLarge as e:
        rep.code = NO
        rep.fields["relation module free"] = False
        rep.message = f"PdTooLarge: {e}"
        return
    validate_factorization(p.f, p.d1, p.d0)
    rep.fields["relation module free"] = True
    rep.fields["rank"] = p.rank
    rep.witnesses["d1"] = _mat(p.d1)
    rep.witnesses["d0"] = _mat(p.d0)


def _cmd_roundtrip(ctx, rep, name):
    try:
        p = ctx.factorization(name)
        r = roundtrip_check(p, ctx.order)
    except (AxiomFailed, IsoCheckFailed, PdTooLarge) as e:
        rep.code = NO
        rep.fields["roundtrip"] = False
        rep.message = f"{type(e).__name__}: {e}"
        return
    rep.fields["roundtrip"] = True
    rep.fields["contractible"] = r.contractible
    rep.fields["rank"] = r.result.rank
    rep.witnesses["d1"] = _mat(r.result.d1)
    rep.witnesses["d0"] = _mat(r.result.d0)
    for note in r.notes:
        rep.witnesses.setdefault("notes", note)


def _cmd_reconstruct(ctx, rep, name):
    b = ctx.s.get(name, ("chainmap",))
    p, q = ctx.factorization(b.source), ctx.factorization(b.target)
    mats = b.matrices
    try:
        r = fullness_reconstruct(p, q, mats["a2"], mats["a1"], mats["a0"], ctx.order)
    except NotDivisible as e:
        rep.code = NO
        rep.fields["chain map mod f"] = False
        rep.message = str(e)
        return
    rep.fields["chain map mod f"] = True
    rep.fields["strict morphism"] = True
    rep.witnesses["gamma0"] = _mat(r.gamma.alpha0)
    rep.witnesses["gamma1"] = _mat(r.gamma.alpha1)
    rep.witnesses["sigma0"] = _mat(r.sigma0)
    rep.witnesses["sigma1"] = _mat(r.sigma1)
    w = r.periodic_witness
    ok = w is not None and check_periodic_homotopy(apply_T_morphism(r.gamma), r.input_map, w)
    rep.fields["periodic homotopy to input"] = ok
    if ok:
        rep.witnesses["s0"] = _mat(w.s0)
        rep.witnesses["s1"] = _mat(w.s1)
    else:
        rep.code = NO


def _cmd_nullhomotopy(ctx, rep, mname, sname):
    m = ctx.morphism(mname)
    sb = ctx.s.get(sname, ("homotopy",))
    if (sb.source, sb.target) != (ctx.s.get(mname).source, ctx.s.get(mname).target):
        raise MfkitError(f"{sname} and {mname} have different endpoints")
    sig = sb.matrices
    sigma = (sig["s0"], sig["s1"], sig.get("s2", sig["s0"]))
    try:
        h = faithfulness_nullhomotopy(m, sigma)
    except NotDivisible as e:
        rep.code = NO
        rep.fields["null-homotopic"] = False
        rep.message = f"sigma is not a homotopy mod f: {e}"
        return
    if not check_homotopy(m, zero_morphism(m.source, m.target), h):
        raise MfkitError("null-homotopy failed to re-verify")
    rep.fields["null-homotopic"] = True
    rep.witnesses["h0"] = _mat(h.h0)
    rep.witnesses["h1"] = _mat(h.h1)


def _index(text):
    try:
        i = int(text)
    except ValueError:
        raise MfkitError(f"index must be a non-negative integer, got {text!r}") from None
    if i < 0:
        raise MfkitError("index must be non-negative")
    return i


def _cmd_rees(ctx, rep, i, nname, mname):
    i = _index(i)
    n, m = ctx.module(nname), ctx.module(mname)
    if m.over != "S":
        raise MfkitError(f"{mname} must be a module over S")
    f = ctx.f
    try:
        v1 = rees_check_i(i, n, m, f, ctx.order)
        v2 = rees_check_ii(i, m, n, f, ctx.order)
    except RegularityFailed as e:
        rep.code = NO
        rep.fields["f regular on M"] = False
        rep.message = str(e)
        return
    rep.fields["f regular on M"] = True
    rep.fields["(i) dim Ext_S^(i+1)(N,M)"] = v1.lhs.dimension
    rep.fields["(i) dim Ext_R^i(N,M/fM)"] = v1.rhs.dimension
    rep.fields["(ii) dim Ext_S^i(M,N)"] = v2.lhs.dimension
    rep.fields["(ii) dim Ext_R^i(M/fM,N)"] = v2.rhs.dimension
    ok = v1.equal is True and v2.equal is True
    rep.fields["equal"] = ok
    if not ok:
        rep.code = NO


def _cmd_ext(ctx, rep, i, nname, mname):
    i = _index(i)
    n, m = ctx.module(nname), ctx.module(mname)
    if n.over != m.over:
        raise MfkitError("both modules must be over the same ring")
    r = ext_dimension(i, n, m, ctx.order)
    rep.fields["ring"] = n.over
    rep.fields["dimension"] = r.dimension
    rep.witnesses["presentation"] = _mat(r.presentation)
    if r.dimension is None:
        rep.code = NO


COMMANDS = {
    "validate": (_cmd_validate, 1),
    "coker": (_cmd_coker, 1),
    "totalize": (_cmd_totalize, 1),
    "homotopic": (_cmd_homotopic, 2),
    "eisenbud": (_cmd_eisenbud, 1),
    "roundtrip": (_cmd_roundtrip, 1),
    "reconstruct-full": (_cmd_reconstruct, 1),
    "nullhomotopy": (_cmd_nullhomotopy, 2),
    "rees": (_cmd_rees, 3),
    "ext": (_cmd_ext, 3),
}


def run_command(cmd, args, session, order=GREVLEX, max_steps=None) -> Report:
    """Run one subcommand; errors become a Report with code 2."""
    rep = Report(cmd, " ".join(args))
    t0 = time.perf_counter()
    try:
        if cmd not in COMMANDS:
            raise MfkitError(f"unknown command {cmd!r}; choose from {', '.join(COMMANDS)}")
        fn, nargs = COMMANDS[cmd]
        if len(args) != nargs:
            raise MfkitError(f"{cmd} takes {nargs} argument(s), got {len(args)}")
        ctx = _Ctx(session, order)
        if max_steps is None:
            fn(ctx, rep, *args)
        else:
            with step_budget(max_steps):
                fn(ctx, rep, *args)
    except MfkitError as e:
        rep.code = ERROR
        rep.fields.clear()
        rep.witnesses.clear()
        rep.message = f"{type(e).__name__} in {rep.obj or cmd}: {e}"
    rep.timings["seconds"] = round(time.perf_counter() - t0, 6)
    return rep


def build_parser():
    ap = argparse.ArgumentParser(prog="mfkit", description="Matrix factorization checks over S and S/(f).")
    ap.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    ap.add_argument("--field", default=None, help="q or fp:<prime>; overrides the session's field line")
    ap.add_argument("--json", action="store_true", help="print a JSON report")
    ap.add_argument("--max-steps", type=int, default=None, help="cap on S-pair reductions per basis")
    ap.add_argument("session", help="session file path, or - for stdin")
    ap.add_argument("command", help=", ".join(COMMANDS))
    ap.add_argument("args", nargs="*")
    return ap


def main(argv=None):
    ap = build_parser()
    ns = ap.parse_args(argv)
    order = LEX if ns.order == "lex" else GREVLEX
    try:
        fld = field_from_tag(ns.field) if ns.field else None
        text = sys.stdin.read() if ns.session == "-" else open(ns.session, encoding="utf-8").read()
        session = parse_session(text, fld)
    except (MfkitError, OSError, ValueError) as e:
        rep = Report(ns.command, " ".join(ns.args), ERROR, message=f"{type(e).__name__}: {e}")
    else:
        rep = run_command(ns.command, ns.args, session, order, ns.max_steps)
    if ns.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        print(rep.to_text())
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
