"""Command-line surface.

Every engine operation is exposed as a subcommand taking canonical
expression text (see exprs) plus flags.  Output is a human-readable
table by default or JSON with ``--json``; exact rationals are carried in
JSON as strings like ``"3/4"`` so nothing is rounded through doubles.
Errors print a machine-readable record to stderr and exit with code 2.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import approx, ideals, l2sim
from .algebra import (
    AlgebraId,
    AutomorphismSpec,
    Axis,
    Element,
    adjoint,
    apply_automorphism,
    check_flip_contradiction,
    coeff_map,
    mul,
    support_predicate,
)
from .characters import (
    APPoint,
    DiscPoint,
    HalfPlanePoint,
    TripleCharacter,
    eval_character,
)
from .config import GROUP_R, RunConfig, load_config
from .errors import EngineError, ParseError, UntrustedCharacterWarning
from .exactnum import BohrCharacter, FrequencyAtom, scalar_numeric
from .exprs import (
    dil_text,
    element_text,
    freq_text,
    parse_dilation,
    parse_element,
    parse_frequency,
    scalar_text,
)
from .l2sim import GaussianPacket, PacketSum

__all__ = ["main", "run"]


# ------------------------------------------------------------ serialization


def _rat(q) -> str:
    return str(Fraction(q))


def _cnum(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _element_payload(x: Element, cfg: RunConfig) -> dict:
    terms = []
    for (lam, mu, t), coeff in x.sorted_terms():
        val = scalar_numeric(coeff, cfg.table)
        terms.append(
            {
                "coeff": scalar_text(coeff, atomic=True),
                "coeff_value": _cnum(val),
                "m": freq_text(lam),
                "d": freq_text(mu),
                "v": dil_text(t),
            }
        )
    return {"element": element_text(x), "terms": terms}


# ------------------------------------------------------------- arg parsing


def _freq(text: str):
    return parse_frequency(text)


def _dil(text: str):
    return parse_dilation(text)


def _int_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p.strip()]


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _freq_list(text: str) -> list:
    return [parse_frequency(p) for p in text.split(",") if p.strip()]


def _angles(text: str | None) -> BohrCharacter:
    """Parse ``atom=p/q,atom=p/q`` into a character with exact angles."""
    if not text:
        return BohrCharacter.trivial()
    pairs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, eq, raw = part.partition("=")
        if not eq:
            raise ParseError(f"angle {part!r} is not of the form atom=value")
        try:
            angle = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"angle value {raw!r} is not a rational") from None
        pairs.append((FrequencyAtom(name.strip()), angle))
    return BohrCharacter(pairs)


def _ap_point(y: str | None, angles: str | None) -> APPoint:
    if y is not None and y.strip().lower() in ("inf", "infinity"):
        return APPoint.infinity()
    try:
        decay = Fraction(y) if y is not None else Fraction(0)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"decay {y!r} is not a rational") from None
    return APPoint.finite(_angles(angles), decay)


def _disc_w(text: str) -> complex:
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"disc point {text!r} is not re or re,im")


def _build_character(args, cfg: RunConfig) -> TripleCharacter:
    fam = args.family
    if fam in ("d1", "d2"):
        point = _ap_point(args.y, args.angles)
        return TripleCharacter.d1(point) if fam == "d1" else TripleCharacter.d2(point)
    if fam in ("d3", "d4", "chi0"):
        if args.w is None:
            from .characters import vanishing_point

            v = vanishing_point(cfg.group)
        elif cfg.group == GROUP_R:
            v = HalfPlanePoint(_ap_point(args.w, args.angles))
        else:
            v = DiscPoint(_disc_w(args.w))
        return getattr(TripleCharacter, fam)(v)
    if fam == "chi_inf":
        return TripleCharacter.chi_inf(cfg.group)
    raise ParseError(f"unknown character family {fam!r}")


# ---------------------------------------------------------------- handlers


def _cmd_normalize(args, cfg):
    return _element_payload(parse_element(args.expr), cfg)


def _cmd_mul(args, cfg):
    x = parse_element(args.left)
    y = parse_element(args.right)
    return _element_payload(mul(x, y), cfg)


def _cmd_adjoint(args, cfg):
    return _element_payload(adjoint(parse_element(args.expr)), cfg)


def _cmd_coeff(args, cfg):
    x = parse_element(args.expr)
    axis = Axis.parse(args.axis)
    index = _dil(args.index) if axis is Axis.DILATION else _freq(args.index)
    out = _element_payload(coeff_map(x, axis, index), cfg)
    out["axis"] = axis.value
    out["index"] = args.index
    return out


def _cmd_support(args, cfg):
    x = parse_element(args.expr)
    rows = [
        {"m": freq_text(lam), "d": freq_text(mu), "v": dil_text(t)}
        for (lam, mu, t) in sorted(x.support(), key=lambda k: (k[0].key(), k[1].key(), k[2].key()))
    ]
    out = {"rows": rows}
    if args.algebra:
        algebra = AlgebraId.parse(args.algebra)
        out["algebra"] = algebra.value
        out["member"] = support_predicate(x, algebra, cfg.table, args.guard)
    return out


def _cmd_bf(args, cfg):
    x = parse_element(args.expr)
    report = approx.bf_report(x, args.grading, args.m, cfg.table)
    rows = []
    for entry in report:
        weights = {freq_text(idx) if hasattr(idx, "pairs") else dil_text(idx): _rat(w)
                   for idx, w in entry["weights"].items()}
        rows.append({"m": entry["m"], "weights": weights, "l1_error": entry["l1_error"]})
    return {"grading": approx.normalize_grading(args.grading), "rows": rows}


def _cmd_gauge(args, cfg):
    x = parse_element(args.expr)
    out = _element_payload(approx.gauge(x, args.grading, args.theta, cfg.table), cfg)
    out["grading"] = approx.normalize_grading(args.grading)
    return out


def _cmd_cesaro(args, cfg):
    x = parse_element(args.expr)
    grading = approx.normalize_grading(args.grading)
    index = _dil(args.index) if grading == "dilation" else _freq(args.index)
    mean = approx.cesaro_mean(x, grading, index, args.T, args.steps, cfg.table)
    out = _element_payload(mean, cfg)
    out.update({"grading": grading, "index": args.index, "T": args.T, "steps": args.steps})
    return out


def _cmd_kernel(args, cfg):
    basis = approx.rational_basis(args.freqs)
    values = approx.bf_kernel_many(basis, args.m, args.t, cfg.table)
    rows = [{"t": t, "K": float(v)} for t, v in zip(args.t, values)]
    return {
        "basis": [freq_text(b) for b in basis.basis],
        "m": args.m,
        "rows": rows,
    }


def _cmd_recurrence(args, cfg):
    numeric = [f.numeric(cfg.table) for f in args.freqs]
    out = {
        "freqs": [freq_text(f) for f in args.freqs],
        "eps": args.eps,
        "limit": args.limit,
    }
    if args.schedule:
        out["schedule"] = approx.recurrence_schedule(numeric, args.eps, args.limit)
    else:
        out["n"] = approx.recurrence_search(numeric, args.eps, args.limit)
    return out


def _cmd_char_eval(args, cfg):
    chi = _build_character(args, cfg)
    x = parse_element(args.expr)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = eval_character(chi, x, cfg.table, args.guard)
    out = {"character": chi.describe(), "value": _cnum(value)}
    if any(issubclass(w.category, UntrustedCharacterWarning) for w in caught):
        out["warning"] = "untrusted character family"
    return out


def _cmd_ideal_test(args, cfg):
    x = parse_element(args.expr)
    kind = args.ideal
    if kind == "cp":
        ideal = ideals.IdealId.cp()
    elif kind == "cph":
        ideal = ideals.IdealId.cph_g()
    elif kind == "i0":
        ideal = ideals.IdealId.i0()
    elif kind == "jt":
        if args.t is None:
            raise ParseError("ideal jt needs --t")
        ideal = ideals.IdealId.jt(args.t)
    else:
        raise ParseError(f"unknown ideal {kind!r}")
    member = ideals.in_ideal(x, ideal, cfg.table, args.guard)
    out = {"ideal": kind, "member": member}
    if args.t is not None:
        out["t"] = dil_text(args.t)
    return out


def _cmd_cert_commutator(args, cfg):
    cert = ideals.commutator_certificate(args.lam, args.s)
    return ideals.certificate_dict(cert)


def _cmd_cert_jt(args, cfg):
    cert = ideals.jt_reduce(args.lam, args.t)
    return ideals.certificate_dict(cert)


def _cmd_auto_apply(args, cfg):
    spec = AutomorphismSpec(
        dil=args.t,
        mod_char=_angles(args.angles),
        shift_char=_angles(args.shift_angles),
        v_angle=args.theta,
    )
    x = parse_element(args.expr)
    out = _element_payload(apply_automorphism(x, spec, cfg.table), cfg)
    out["t"] = dil_text(args.t)
    out["theta"] = _rat(args.theta)
    return out


def _cmd_flip_check(args, cfg):
    report = check_flip_contradiction(args.k1, args.k2)
    return {
        "k1": report.k1,
        "k2": report.k2,
        "gap_at_1_1": _rat(report.gap_at_1_1),
        "gap_at_1_2": _rat(report.gap_at_1_2),
        "contradiction": report.contradiction,
    }


def _cmd_sim_residuals(args, cfg):
    f = PacketSum.single(GaussianPacket(1.0, 0.8, 0.3, -0.4))
    rows = [
        {"relation": "weyl", "params": [args.lam, args.mu],
         "residual": l2sim.relation_residual("weyl", (args.lam, args.mu), f)},
        {"relation": "dilM", "params": [args.t, args.lam],
         "residual": l2sim.relation_residual("dilM", (args.t, args.lam), f)},
        {"relation": "dilD", "params": [args.t, args.mu],
         "residual": l2sim.relation_residual("dilD", (args.t, args.mu), f)},
    ]
    return {"rows": rows}


def _cmd_sim_norm_bound(args, cfg):
    x = parse_element(args.expr)
    seed = cfg.seed if args.seed is None else args.seed
    bound = l2sim.norm_lower_bound(x, args.trials, seed, cfg.table)
    return {
        "bound": bound,
        "l1": x.l1_norm(cfg.table),
        "trials": args.trials,
        "seed": seed,
    }


def _cmd_sim_wot(args, cfg):
    x = parse_element(args.expr)
    f = PacketSum.single()
    g = PacketSum.single(GaussianPacket(1.0, 0.6, 0.2, 0.1))
    report = l2sim.wot_compression_demo(x, f, g, args.mode, args.schedule, cfg.table)
    out = report.to_dict()
    out["limit_element"] = element_text(l2sim.wot_limit(x, args.mode))
    return out


def _cmd_sim_column_identity(args, cfg):
    x = parse_element(args.expr)
    xi = PacketSum.single(GaussianPacket(1.0, 0.9, 0.2, -0.5))
    lhs, rhs = l2sim.column_norms(x, xi, args.grading, cfg.table)
    return {"grading": args.grading, "lhs": lhs, "rhs": rhs, "gap": abs(lhs - rhs)}


def _cmd_sim_fourier(args, cfg):
    f = PacketSum.single()
    g = PacketSum.single(GaussianPacket(1.0, 0.7, 0.4, -0.3))
    residual = l2sim.fourier_conjugation_check(args.lam, f, g, dual=args.dual)
    return {"lam": args.lam, "dual": args.dual, "residual": residual}


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="trisemi",
        description="Exact engine for the multiplication-translation-dilation algebra.",
    )
    top.add_argument("--config", help="INI file with atoms, dilation symbols, options")
    top.add_argument("--json", action="store_true", help="emit JSON instead of tables")
    top.add_argument("--guard", type=float, default=None,
                     help="sign guard override (default from config, 1e-9)")
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = cmd("normalize", _cmd_normalize, "parse and print the canonical form")
    p.add_argument("expr")

    p = cmd("mul", _cmd_mul, "product of two elements")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("adjoint", _cmd_adjoint, "adjoint of an element")
    p.add_argument("expr")

    p = cmd("coeff", _cmd_coeff, "Fourier coefficient along one axis")
    p.add_argument("--axis", required=True, choices=["E", "Z", "H"])
    p.add_argument("--index", required=True)
    p.add_argument("expr")

    p = cmd("support", _cmd_support, "support triples, optionally membership")
    p.add_argument("--algebra", help="bp, ap, aph_g_plus, or aph_g_plus_adjoint")
    p.add_argument("expr")

    p = cmd("bf", _cmd_bf, "Bochner-Fejer convergence table")
    p.add_argument("--m", type=_int_list, required=True, help="comma list of orders")
    p.add_argument("--grading", default="translation")
    p.add_argument("expr")

    p = cmd("gauge", _cmd_gauge, "point evaluation of the gauge action")
    p.add_argument("--grading", default="translation")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("expr")

    p = cmd("cesaro", _cmd_cesaro, "Cesaro mean extracting one grading fiber")
    p.add_argument("--grading", default="translation")
    p.add_argument("--index", required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--steps", type=int, default=4096)
    p.add_argument("expr")

    p = cmd("kernel", _cmd_kernel, "Bochner-Fejer kernel values")
    p.add_argument("--freqs", type=_freq_list, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=_float_list, required=True)

    p = cmd("recurrence", _cmd_recurrence, "almost-period search by scan")
    p.add_argument("--freqs", type=_freq_list, default=[parse_frequency("1")])
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--schedule", action="store_true",
                   help="emit all successive minima instead of the first hit")

    p = cmd("char-eval", _cmd_char_eval, "evaluate a character on an element")
    p.add_argument("--family", required=True,
                   choices=["d1", "d2", "d3", "d4", "chi0", "chi_inf"])
    p.add_argument("--y", help="decay, a rational or 'inf' (d1/d2)")
    p.add_argument("--angles", help="atom=p/q,... exact character angles")
    p.add_argument("--w", help="dilation point: re[,im] for Z, decay or 'inf' for R")
    p.add_argument("expr")

    p = cmd("ideal-test", _cmd_ideal_test, "polynomial ideal membership")
    p.add_argument("--ideal", required=True, choices=["cp", "cph", "i0", "jt"])
    p.add_argument("--t", type=_dil, help="dilation step for jt")
    p.add_argument("expr")

    p = cmd("cert-commutator", _cmd_cert_commutator,
            "exact f with f*D(s) - D(s)*f = M(lam)*D(s)")
    p.add_argument("--lam", type=_freq, required=True)
    p.add_argument("--s", type=_freq, required=True)

    p = cmd("cert-jt", _cmd_cert_jt, "telescoped J_t certificate for e^{i lam x} - e^{ix}")
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--t", type=float, required=True)

    p = cmd("auto-apply", _cmd_auto_apply, "apply a twisted dilation automorphism")
    p.add_argument("--t", type=_dil, default=parse_dilation("0"))
    p.add_argument("--theta", type=Fraction, default=Fraction(0),
                   help="rational V-twist angle")
    p.add_argument("--angles", help="atom=p/q,... modulation twist")
    p.add_argument("--shift-angles", help="atom=p/q,... translation twist")
    p.add_argument("expr")

    p = cmd("flip-check", _cmd_flip_check, "generator-exchange contradiction gaps")
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--k2", type=float, required=True)

    p = cmd("sim-residuals", _cmd_sim_residuals, "relation residuals on a packet")
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.7)
    p.add_argument("--t", type=float, default=0.3)

    p = cmd("sim-norm-bound", _cmd_sim_norm_bound, "sampled lower bound for the norm")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("expr")

    p = cmd("sim-wot", _cmd_sim_wot, "compression convergence toward the WOT limit")
    p.add_argument("--mode", required=True,
                   choices=["translation", "dilation-in", "dilation-out"])
    p.add_argument("--schedule", type=_int_list, required=True)
    p.add_argument("expr")

    p = cmd("sim-column-identity", _cmd_sim_column_identity,
            "column norm identity for the left regular picture")
    p.add_argument("--grading", default="translation",
                   choices=["translation", "dilation"])
    p.add_argument("expr")

    p = cmd("sim-fourier", _cmd_sim_fourier, "Fourier conjugation residual")
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--dual", action="store_true",
                   help="check the shift-to-modulation direction")

    return top


# ------------------------------------------------------------------ output


def _human_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            return f"{value['re']:.12g}{value['im']:+.12g}i"
        return json.dumps(value, default=str)
    if isinstance(value, list):
        return json.dumps(value, default=str)
    return str(value)


def _render_rows(rows, out) -> None:
    if not rows:
        print("(empty)", file=out)
        return
    headers = list(rows[0].keys())
    table = [[_human_value(r.get(h, "")) for h in headers] for r in rows]
    widths = [max(len(h), *(len(row[i]) for row in table)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)), file=out)
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)), file=out)


def _render_human(payload: dict, out) -> None:
    # a bare element result prints as its expression, nothing else
    if set(payload) <= {"element", "terms"}:
        print(payload["element"], file=out)
        return
    for key, value in payload.items():
        if key == "rows":
            continue
        if key == "terms":
            continue
        print(f"{key}: {_human_value(value)}", file=out)
    if "rows" in payload:
        _render_rows(payload["rows"], out)


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.guard is None:
            args.guard = cfg.guard
        payload = args.handler(args, cfg)
    except EngineError as exc:
        record = {"error": {"code": exc.code, "message": str(exc)}}
        span = getattr(exc, "span", None)
        if span is not None:
            record["error"]["span"] = list(span)
        print(json.dumps(record), file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        _render_human(payload, sys.stdout)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
