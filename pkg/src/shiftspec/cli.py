"""Command-line surface: family construction, checks, spectra, moments, oracle runs.

All configuration is by flags plus an optional --config JSON file (flags win),
so every invocation is reproducible.  Output is deterministic byte-for-byte:
JSON keys are sorted and floats are fixed to six decimal places.

Exit codes: 0 success / PASS, 1 mathematical FAIL (e.g. not hyponormal),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import oracle, positivity, spectra
from .errors import ShiftspecError
from .lattice import (
    diagram_from_json,
    diagram_to_json,
    important_column,
    make_example_bergman,
    make_example_exof1atom,
    make_example_stair,
    make_thm_important,
    make_thm_khypo,
)
from .measures import two_atom_measure
from .report import reproduce_figures, weight_table_csv, weight_table_text
from .svgplot import render_svg
from .weights import make_bergman_like, make_two_atom_shift, shift, unweighted_shift

FAMILIES = {
    "example-bergman": "arcsine row 0 over Bergman rows (no parameters)",
    "exof1atom": "one-atom slices; needs --alpha, --beta with 0 < alpha < beta <= 1",
    "stair": "staircase of a's and 1's; needs --a in (0, 1)",
    "thm-khypo": "two-atom row 0, unit rows above; needs --kappa > 1, --y0 in (0, 1]",
    "thm-important": "Bergman-like rows; needs --ells i,j,k and --c (column cap); "
    "optional --col-a, --col-g",
}


def _round_floats(obj, places: int = 6):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != 0.0 and abs(x) < 1e-4:
            return float(f"{x:.{places}e}")  # keep significant digits of tolerances
        return float(f"{x:.{places}f}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, places) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, places) for v in obj]
    return obj


def emit_json(data, stream, rounded: bool = True) -> None:
    if rounded:
        data = _round_floats(data)
    json.dump(data, stream, sort_keys=True, indent=2)
    stream.write("\n")


def build_diagram(args):
    family = args.family
    if family == "example-bergman":
        return make_example_bergman()
    if family == "exof1atom":
        _need(args, "alpha", "beta")
        return make_example_exof1atom(args.alpha, args.beta)
    if family == "stair":
        _need(args, "a")
        return make_example_stair(args.a)
    if family == "thm-khypo":
        _need(args, "kappa", "y0")
        return make_thm_khypo(args.kappa, args.y0)
    if family == "thm-important":
        _need(args, "ells", "c")
        ells = tuple(int(t) for t in args.ells.split(","))
        d = make_thm_important(ells, important_column(args.c, args.col_a, args.col_g))
        d.family.params.update({"c": args.c, "col_a": args.col_a, "col_g": args.col_g})
        return d
    raise UsageError(f"unknown family {family!r}; see `shiftspec families list`")


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        raise UsageError(
            f"family {args.family!r} requires " + ", ".join(f"--{n}" for n in missing)
        )


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--kappa", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--ells", type=str)
    p.add_argument("--c", type=float)
    p.add_argument("--col-a", dest="col_a", type=float, default=8.0)
    p.add_argument("--col-g", dest="col_g", type=float, default=2.5)
    p.add_argument("--config", type=str, help="JSON file of defaults; flags take precedence")


def _apply_config(args) -> None:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            defaults = json.load(fh)
        for key, val in defaults.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) is None:
                setattr(args, attr, val)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="shiftspec", description=__doc__)
    sub = top.add_subparsers(dest="verb", required=True)

    fam = sub.add_parser("families", help="list registered families")
    fam.add_argument("action", choices=["list"])
    fam.add_argument("--emit", choices=["text", "json"], default="text")

    dia = sub.add_parser("diagram", help="show weight diagrams")
    dia.add_argument("action", choices=["show"])
    _add_family_flags(dia)
    dia.add_argument("--region", type=int, default=6)
    dia.add_argument("--emit", choices=["text", "json", "csv"], default="text")

    chk = sub.add_parser("check", help="positivity and necessary-condition checks")
    chk.add_argument("kind", choices=["hypo", "khypo", "subnec"])
    _add_family_flags(chk)
    chk.add_argument("--region", type=int, default=10)
    chk.add_argument("--k", type=int, default=1)

    spec = sub.add_parser("spectrum", help="closed-form spectral pictures")
    _add_family_flags(spec)
    spec.add_argument("--emit", choices=["json", "svg", "text"], default="json")

    mom = sub.add_parser("moments", help="lattice moment at a point")
    _add_family_flags(mom)
    mom.add_argument("--m1", type=int, required=True)
    mom.add_argument("--m2", type=int, required=True)

    orc = sub.add_parser("oracle", help="independent numerical cross-checks")
    orc.add_argument("action", choices=["compare"])
    orc.add_argument("--suite", choices=["psd", "gamma", "sections", "measures", "all"], default="all")

    fig = sub.add_parser("figures", help="reproduce the spectral-picture figures and weight tables")
    fig.add_argument("--out", type=str, required=True)
    return top


def cmd_families(args, out) -> int:
    if args.emit == "json":
        emit_json({"families": FAMILIES}, out)
    else:
        for tag in sorted(FAMILIES):
            out.write(f"{tag}: {FAMILIES[tag]}\n")
    return 0


def cmd_diagram(args, out) -> int:
    d = build_diagram(args)
    if args.emit == "json":
        # full-precision params so the JSON loader reconstructs the diagram exactly
        emit_json(diagram_to_json(d), out, rounded=False)
    elif args.emit == "csv":
        out.write(weight_table_csv(d, args.region))
    else:
        out.write(weight_table_text(d, args.region))
    return 0


def cmd_check(args, out) -> int:
    d = build_diagram(args)
    if args.kind == "subnec":
        v = spectra.slice_norm_necessary_check(d, max(2, args.region))
        emit_json(
            {
                "check": "subnormality-necessary",
                "status": "PASS" if v.passed else "FAIL",
                "row_norms": list(v.row_norms),
                "col_norms": list(v.col_norms),
                "tol": v.tol,
            },
            out,
        )
        return 0 if v.passed else 1
    k = 1 if args.kind == "hypo" else args.k
    verdict = positivity.is_k_hyponormal(d, k, args.region)
    emit_json(verdict.to_json(), out)
    return 0 if verdict.passed else 1


def _pictures_for_args(args):
    # pictures depend on fewer parameters than diagrams (e.g. y0 never enters)
    family = args.family
    if family == "thm-khypo":
        _need(args, "kappa")
        return spectra.picture_thm_khypo(args.kappa)
    if family == "thm-important":
        _need(args, "ells", "c")
        ells = tuple(int(t) for t in args.ells.split(","))
        return spectra.picture_thm_important(ells, args.c)
    if family == "exof1atom":
        _need(args, "alpha", "beta")
        return spectra.picture_example_exof1atom(args.alpha, args.beta)
    if family == "example-bergman":
        return spectra.picture_for(make_example_bergman())
    raise UsageError(f"no closed-form spectrum for family {family!r}")


def cmd_spectrum(args, out) -> int:
    pics = _pictures_for_args(args)
    if args.emit == "svg":
        out.write(render_svg(pics, f"family {args.family}"))
    elif args.emit == "text":
        for pic in pics.all_pictures():
            out.write(f"{pic.label}:\n")
            for z1, z2 in pic.normal_form().primitives:
                out.write(f"  {_radial_text(z1)} x {_radial_text(z2)}\n")
    else:
        emit_json({"family": args.family, "pictures": pics.to_json()}, out)
    return 0


def _radial_text(r) -> str:
    if isinstance(r, spectra.Interval):
        return f"[{r.lo:.6f}, {r.hi:.6f}]"
    if isinstance(r, spectra.Point):
        return f"{{{r.r:.6f}}}"
    return f"geom({r.r0:.6f}, ratio {r.q:.6f})"


def cmd_moments(args, out) -> int:
    d = build_diagram(args)
    emit_json({"m": [args.m1, args.m2], "gamma": d.gamma((args.m1, args.m2))}, out)
    return 0


def _suite_psd() -> dict:
    rng = np.random.default_rng(20240813)
    agree = 0
    boundary = 0
    total = 200
    for _ in range(total):
        kappa = 1.2 + 2.0 * rng.random()
        k = int(rng.integers(1, 4))
        m1 = int(rng.integers(0, 6))
        h = positivity.hankel_matrix(make_two_atom_shift(kappa), m1, k).entries
        eps = rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-6, -1)
        mat = h + eps * np.eye(h.shape[0])
        chol = positivity.is_psd(mat)
        jac = oracle.psd_bruteforce(mat)
        if abs(jac) <= 1e-9:
            boundary += 1
            agree += 1
        else:
            agree += int(chol.is_psd == (jac >= -chol.threshold))
    return {"cases": total, "agree": agree, "boundary_band": boundary, "pass": agree == total}


def _suite_gamma() -> dict:
    diagrams = {
        "example-bergman": make_example_bergman(),
        "exof1atom": make_example_exof1atom(0.5, 0.8),
        "stair": make_example_stair(0.5),
        "thm-khypo": make_thm_khypo(2.0, 0.7),
        "thm-important": make_thm_important((5, 2), important_column(1.0)),
    }
    worst = 0.0
    for d in diagrams.values():
        for m1 in range(20):
            for m2 in range(20):
                a = d.gamma((m1, m2))
                b = oracle.gamma_bruteforce(d, (m1, m2))
                worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return {"families": sorted(diagrams), "max_rel_defect": worst, "pass": worst <= 1e-12}


def _suite_sections() -> dict:
    cases = []
    ok = True
    for label, s, lam in [
        ("unweighted", unweighted_shift(), 0.0),
        ("unweighted-0.9", unweighted_shift(), 0.9),
        ("half-head", shift(0.5, 1.0), 0.0),
        ("bergman-2", make_bergman_like(2), 0.5),
    ]:
        prev = None
        mono = True
        for n in (4, 8, 16, 32, 64):
            sv = oracle.min_singular(oracle.build_section(s, lam, n))
            if prev is not None and sv > prev + 1e-10:
                mono = False
            prev = sv
        direct = 1.0 / spectra.canonical_left_inverse_norm(s, lam, 64)
        match = abs(direct - prev) <= 1e-9 * max(1.0, prev)
        ok = ok and mono and match
        cases.append({"shift": label, "lambda": lam, "monotone": mono, "sigma_min": prev, "match": match})
    return {"cases": cases, "pass": ok}


def _suite_measures() -> dict:
    results = []
    ok = True
    for kappa in (1.5, 2.0, 3.0):
        v = oracle.measure_moment_match(make_two_atom_shift(kappa), two_atom_measure(kappa), 30)
        results.append({"kappa": kappa, "pass": v.passed, "max_defect": v.max_abs_defect})
        ok = ok and v.passed
    return {"cases": results, "pass": ok}


def cmd_oracle(args, out) -> int:
    suites = {
        "psd": _suite_psd,
        "gamma": _suite_gamma,
        "sections": _suite_sections,
        "measures": _suite_measures,
    }
    names = sorted(suites) if args.suite == "all" else [args.suite]
    report = {name: suites[name]() for name in names}
    report["all_pass"] = all(report[name]["pass"] for name in names)
    emit_json(report, out)
    return 0 if report["all_pass"] else 1


def cmd_figures(args, out) -> int:
    written = reproduce_figures(args.out)
    for path in written:
        out.write(f"{path}\n")
    return 0


def run(argv, out=None) -> int:
    """Dispatch a command line; returns the exit code instead of raising SystemExit."""
    out = out if out is not None else sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        if args.verb in ("diagram", "check", "spectrum", "moments"):
            _apply_config(args)
        handler = {
            "families": cmd_families,
            "diagram": cmd_diagram,
            "check": cmd_check,
            "spectrum": cmd_spectrum,
            "moments": cmd_moments,
            "oracle": cmd_oracle,
            "figures": cmd_figures,
        }[args.verb]
        return handler(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, ShiftspecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
