"""``knot-aug`` command line front end.

Every subcommand builds a report dictionary and writes it as JSON (sorted
keys, stable across runs) or as indented text.  Exit status: 0 on success,
1 when a verification fails, 2 on usage, domain, resource or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import DomainError, KnotAugError, ResourceError, UsageError, VerificationError

SCHEMA = "knot-aug/1"


class _Failed(Exception):
    """A report whose checks did not all pass; carries the report for emission."""

    def __init__(self, results):
        super().__init__("verification failed")
        self.results = results


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_h0(args) -> dict:
    from .braid import parse_braid
    from .h0 import presentation

    return presentation(parse_braid(args.word, args.strands)).to_json()


def cmd_pm(args) -> dict:
    from .families import P_m

    if args.m < 0:
        raise DomainError(f"m must be nonnegative, got {args.m}")
    P = P_m(args.m)
    out = {"m": args.m, "P": str(P), "P_terms": P.to_json()}
    assign = {}
    if args.y0 is not None:
        assign["mu"] = args.y0
    if args.U is not None:
        if args.U == 0:
            raise DomainError("U must be a unit, got 0")
        assign["U"] = args.U
    if assign:
        spec = P.specialize(assign)
        out["specialized_at"] = {k: str(v) for k, v in assign.items()}
        out["specialized"] = str(spec.to_uni("T")) if set(assign) == {"mu", "U"} else str(spec)
    return out


def cmd_fig8(args) -> dict:
    from .families import figure_eight_derivation
    from .obstruct import figure_eight_certificate, reverify

    rep = figure_eight_derivation()
    out = {"derivation": rep.to_json()}
    for source in ("published", "derived"):
        cert = figure_eight_certificate(source)
        out[f"certificate_{source}"] = dict(cert.to_json(), reverified=reverify(cert))
    if not rep.ok:
        raise _Failed(out)
    return out


def cmd_aug(args) -> dict:
    from .augvar import enumerate_variety
    from .braid import parse_braid
    from .h0 import presentation

    pres = presentation(parse_braid(args.word, args.strands))
    V = enumerate_variety(pres, args.p, witnesses=args.witnesses, budget=args.budget, backend=args.backend)
    out = V.to_json()
    out.update(strands=args.strands, word=list(pres.braid.letters), count=len(V))
    return out


def cmd_obstruct(args) -> dict:
    from .obstruct import certificate_search, figure_eight_certificate, parse_range, reverify

    if args.family == "fig8":
        cert = figure_eight_certificate(args.source)
        return {"family": "fig8", "certificate": dict(cert.to_json(), reverified=reverify(cert))}
    if args.m is None:
        raise UsageError("--m is required for --family torus")
    rep = certificate_search(args.m, args.y0, parse_range(args.z_range))
    out = rep.to_json()
    out["family"] = "torus"
    if rep.certificate is not None:
        out["certificate"]["reverified"] = reverify(rep.certificate)
    if rep.exhausted:
        raise _Failed(out)
    return out


def _checks() -> list:
    """(name, thunk) pairs replayed by ``verify``; each thunk returns (ok, detail)."""
    from .augvar import enumerate_variety, unknot_variety
    from .braid import parse_braid
    from .families import (
        P_m,
        figure_eight_derivation,
        specialized_family,
        torus_cross_check,
        trefoil_identity,
        verify_torus_identities,
    )
    from .h0 import presentation
    from .obstruct import figure_eight_certificate, reverify, torus_certificate

    def p1():
        s = str(P_m(1))
        return s == "-mu*T^2 + (3*mu - mu^2 - U)*T + (-mu + mu^2 + U - mu*U)", s

    def torus():
        bad = [m for m in range(21) if not verify_torus_identities(m).ok]
        return not bad, {"m_range": "0..20", "failed": bad}

    def cross():
        bad = [m for m in range(7) if not torus_cross_check(m).ok]
        return not bad, {"m_range": "0..6", "failed": bad}

    def trefoil():
        lhs, rhs = trefoil_identity()
        return lhs == rhs, str(lhs - rhs)

    def fig8():
        rep = figure_eight_derivation()
        return rep.ok, rep.to_json()

    def unknot():
        pres = presentation(parse_braid("", 1))
        gens = [str(g) for g in pres.generators]
        same = {p: enumerate_variety(pres, p).points == unknot_variety(p).points for p in (3, 5, 7)}
        return gens == ["-lambda - mu + lambda*mu + U"] and all(same.values()), {
            "generators": gens,
            "variety_matches_closed_form": {str(p): v for p, v in same.items()},
        }

    def fig8_values():
        try:
            cert = figure_eight_certificate("published")
        except VerificationError as exc:
            return False, str(exc)
        return reverify(cert), cert.to_json()

    def degrees():
        bad = []
        for y0 in (2, 3):
            for m in range(1, 21):
                d = specialized_family(m, y0)
                lead = Fraction((-1) ** m)
                if not (d.h.degree == d.k.degree == m and d.h.lead == d.k.lead == lead and d.gcd_h_Tk.degree == 0):
                    bad.append([y0, m])
        return not bad, {"failed": bad}

    def torus_cert():
        cert = torus_certificate(1, 2, 3)
        return reverify(cert), cert.to_json()

    return [
        ("P_1 closed form", p1),
        ("torus identities", torus),
        ("braid/family cross-check", cross),
        ("trefoil identity", trefoil),
        ("figure-eight derivation", fig8),
        ("unknot presentation and variety", unknot),
        ("figure-eight specialization values", fig8_values),
        ("specialized degrees and gcd", degrees),
        ("torus certificate m=1 y0=2 Z0=3", torus_cert),
    ]


def cmd_verify(args) -> dict:
    checks = {}
    for name, fn in _checks():
        ok, detail = fn()
        checks[name] = {"ok": bool(ok), "detail": detail}
    out = {"checks": checks, "passed": sum(c["ok"] for c in checks.values()), "total": len(checks)}
    if out["passed"] != out["total"]:
        raise _Failed(out)
    return out


COMMANDS = {
    "h0": cmd_h0,
    "pm": cmd_pm,
    "fig8": cmd_fig8,
    "aug": cmd_aug,
    "obstruct": cmd_obstruct,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# parsing and emission
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="add wall-clock duration (breaks byte stability)")

    parser = argparse.ArgumentParser(prog="knot-aug", description="Augmentation varieties of knot contact homology.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("h0", parents=[common], help="matrices and presentation of HC_0^ab for a braid")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True, help='signed generator indices, e.g. "1 -2 1"')

    p = sub.add_parser("pm", parents=[common], help="torus family polynomial P_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--y0", type=_rational, help="specialize mu")
    p.add_argument("--U", type=_rational, help="specialize U")

    sub.add_parser("fig8", parents=[common], help="figure-eight polynomial derivation and certificates")

    p = sub.add_parser("aug", parents=[common], help="augmentation variety over F_p")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--witnesses", action="store_true", help="include one augmentation per point")
    p.add_argument("--budget", type=int, help="max evaluated assignments (default: $KNOTAUG_BUDGET or 1e8)")
    p.add_argument("--backend", choices=("dfs", "bfs"), help="search kernel (default: dfs if numba is enabled)")

    p = sub.add_parser("obstruct", parents=[common], help="rational obstruction certificates")
    p.add_argument("--family", choices=("torus", "fig8"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--y0", type=_rational, default=Fraction(2))
    p.add_argument("--z-range", default="2..50", help='"a..b" or a list of rationals')
    p.add_argument("--source", choices=("published", "derived"), default="published", help="figure-eight polynomial to use")

    sub.add_parser("verify", parents=[common], help="replay every explicit identity")
    return parser


def _inputs(args) -> dict:
    skip = {"command", "format", "output", "timing"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = str(v) if isinstance(v, Fraction) else v
    return out


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def _text_lines(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_scalar(v)}"
    else:
        yield f"{pad}{_scalar(obj)}"


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(report)) + "\n"


def emit(report: dict, fmt: str = "json", path: str | None = None) -> None:
    """Write the report; raises OSError on an unwritable destination."""
    data = render_json(report) if fmt == "json" else render_text(report)
    if path is None:
        sys.stdout.write(data)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(data)


def run(argv=None) -> tuple[dict | None, int]:
    """Parse, execute and emit; returns ``(report, exit status)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)

    start = time.perf_counter()
    status, ok = 0, True
    try:
        results = COMMANDS[args.command](args)
    except _Failed as exc:
        results, status, ok = exc.results, 1, False
    except VerificationError as exc:
        results = {"error": str(exc), "difference": None if exc.difference is None else str(exc.difference)}
        status, ok = 1, False
    except ResourceError as exc:
        print(f"knot-aug: error: {exc}", file=sys.stderr)
        return None, 2
    except (UsageError, DomainError, KnotAugError) as exc:
        print(f"knot-aug: error: {exc}", file=sys.stderr)
        return None, 2

    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": _inputs(args),
        "results": results,
        "summary": {"ok": ok, "exit_status": status},
    }
    if args.timing:
        report["duration_seconds"] = round(time.perf_counter() - start, 6)
    try:
        emit(report, args.format, args.output)
    except OSError as exc:
        print(f"knot-aug: error: cannot write report: {exc}", file=sys.stderr)
        return report, 2
    return report, status


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
