"""Command-line front end.

Subcommands: spectrum, rep, cohomology, zeta, predict, torsion, verify-paper.
All outputs are schema-versioned JSON (CSV for spectrum tables); the only
run-dependent field is "generated_at".  Exit status: 0 success, 1
verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .cohomology import cohomology_dims, m_from_cohomology
from .errors import (IllConditioned, InputError, NotAcyclic, NotApplicable,
                     OutsideConvergence, TwistedZetaError)
from .fuchsian import EnumerationOptions
from .predictions import (adjoint_dims, generic_prediction, tau_jordan_dims,
                          torsion, trivial_rep_dims)
from .representation import (adjoint_rep, classify, sl2_lift_rep, trivial_rep,
                             unitary_generic_rep)
from .spectrumio import (SCHEMA_VERSION, cached_spectrum, default_cache_dir,
                         group_from_spec, presentation_from_name,
                         read_representation, read_spectrum, write_representation,
                         write_spectrum, write_spectrum_csv)
from .zeta import (dynamical_determinant, factoring_holonomy, ruelle_zeta,
                   selberg_zeta, sl2_lift_tensor_holonomy, verify_identities)


def _json_default(obj):
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(doc: dict, out=None) -> None:
    doc = dict(doc)
    doc["schema_version"] = SCHEMA_VERSION
    doc["generated_at"] = datetime.now(timezone.utc).isoformat()
    text = json.dumps(doc, sort_keys=True, indent=1, default=_json_default)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _complex_pair(z):
    if z is None:
        return None
    z = complex(z)
    return [z.real, z.imag]


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InputError(f"cannot parse complex number {text!r}; use RE or RE,IM")


def _enum_opts(args, cutoff) -> EnumerationOptions:
    return EnumerationOptions(
        max_word_length=getattr(args, "max_word_len", None),
        conj_radius=getattr(args, "conj_radius", 4),
        node_budget=getattr(args, "node_budget", 5_000_000),
        prune_slack=getattr(args, "prune_slack", None),
        threads=getattr(args, "threads", 1),
    )


def _figures_dir(args):
    fig = getattr(args, "figures", None)
    if fig is None:
        return None
    return Path(fig)


# ---------------------------------------------------------------------------
# subcommands

def cmd_spectrum(args) -> int:
    group = group_from_spec(args.group, exact=args.exact)
    if args.max_length <= 0:
        raise InputError("--max-length must be positive")
    opts = _enum_opts(args, args.max_length)
    sp, cached = cached_spectrum(group, args.max_length, opts,
                                 cache_dir=args.cache_dir)
    doc = {
        "kind": "spectrum-summary",
        "group": group.name,
        "mode": group.mode,
        "cutoff": sp.cutoff,
        "classes": len(sp.classes),
        "primitive_classes": len(sp.primitives()),
        "attestation": sp.attestation,
        "params": sp.params,
        "from_cache": cached,
        "lengths": sorted({round(c.length, 9) for c in sp.classes}),
    }
    if args.out:
        out = Path(args.out)
        if out.suffix == ".csv":
            write_spectrum_csv(sp, out)
        else:
            write_spectrum(sp, out)
        doc["out"] = str(out)
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import spectrum_figure

        fig = spectrum_figure(sp, figdir / f"spectrum_{group.name.replace(':', '-')}.png")
        doc["figure"] = str(fig)
    _emit(doc, getattr(args, "report", None))
    return 0


def _make_rep(args):
    if args.what == "unitary-generic":
        if args.genus is None or args.dim is None or args.j is None:
            raise InputError("unitary-generic needs --genus, --dim and --j")
        return unitary_generic_rep(args.genus, args.dim, args.j)
    if args.what == "sl2-lift":
        return sl2_lift_rep(group_from_spec(args.group, exact=args.group == "bolza"))
    if args.what == "adjoint":
        return adjoint_rep(group_from_spec(args.group, exact=args.group == "bolza"))
    if args.what == "trivial":
        if args.genus is None:
            raise InputError("trivial needs --genus")
        return trivial_rep(args.genus, args.dim or 1)
    raise InputError(f"unknown construction {args.what!r}")


def cmd_rep(args) -> int:
    if args.action == "make":
        rep = _make_rep(args)
        if args.out:
            write_representation(rep, args.out)
        _emit({
            "kind": "representation-summary",
            "name": rep.name,
            "r": rep.r,
            "presentation": rep.target.name,
            "relator_residual": rep.relator_residual,
            "exactly_validated": rep.exactly_validated,
            "out": str(args.out) if args.out else None,
        })
        return 0
    rep = read_representation(args.file)
    if args.action == "validate":
        _emit({
            "kind": "representation-validation",
            "name": rep.name,
            "r": rep.r,
            "relator_residual": rep.relator_residual,
            "tolerance": rep.tolerance,
            "max_condition": rep.max_condition,
            "valid": True,
        })
        return 0
    if args.action == "classify":
        cls = classify(rep)
        _emit({
            "kind": "representation-classification",
            "name": rep.name,
            "r": cls.r,
            "factoring": cls.factoring,
            "c_scalar": _complex_pair(cls.c_scalar),
            "irreducible": cls.irreducible,
            "invariant_dim": cls.invariant_dim,
            "generic_member": cls.generic_member,
            "witness": cls.witness,
            "notes": list(cls.notes),
        })
        return 0
    raise InputError(f"unknown rep action {args.action!r}")


def cmd_cohomology(args) -> int:
    p = presentation_from_name(args.presentation)
    rep = read_representation(args.rep)
    dims = cohomology_dims(p, rep, tol=args.tol)
    _emit({
        "kind": "cohomology",
        "presentation": p.name,
        "rep": rep.name,
        "h0": dims.h0, "h1": dims.h1, "h2": dims.h2, "h3": dims.h3,
        "m": m_from_cohomology(dims),
        "euler_characteristic": dims.euler_characteristic,
        "gap_report": dims.gap_report,
        "method": dims.method,
    }, args.out)
    return 0


def _holonomy_from_args(args, rep):
    try:
        if args.holonomy == "factoring":
            return factoring_holonomy(rep)
        if args.holonomy == "sl2-lift":
            if rep.r != 2:
                raise InputError("sl2-lift holonomy needs a rank-2 lift representation")
            return sl2_lift_tensor_holonomy(rep)
    except ValueError as ex:
        raise InputError(
            f"--holonomy {args.holonomy}: {ex} (a twist with nontrivial fiber "
            "scalar has no geodesic-word holonomy; use the sl2-lift kind for "
            "rank-2 lifts)") from ex
    raise InputError(f"unknown holonomy kind {args.holonomy!r}")


def _zeta_value_doc(zv) -> dict:
    return {
        "s": _complex_pair(zv.s),
        "log_value": _complex_pair(zv.log_value),
        "value": _complex_pair(zv.value),
        "kind": zv.kind,
        "truncation": zv.truncation,
        "tail_estimate": zv.tail_estimate,
        "tail_components": zv.tail_components,
        "convergence_margin": zv.convergence_margin,
        "abscissa_estimate": zv.abscissa,
        "abscissa_note": "estimated from the enumerated spectrum; empirical "
                         "for non-unitary twists",
    }


def cmd_zeta(args) -> int:
    sp = read_spectrum(args.spectrum)
    rep = read_representation(args.rep)
    h = _holonomy_from_args(args, rep)
    if args.action == "eval":
        s = _parse_complex(args.s)
        kind = args.kind
        if kind == "ruelle":
            zv = ruelle_zeta(sp, h, s, j_max=args.j_max)
        elif kind == "selberg":
            zv = selberg_zeta(sp, h, s, k_max=args.k_max, j_max=args.j_max)
        elif kind in ("det0", "det1", "det2"):
            zv = dynamical_determinant(sp, h, int(kind[-1]), s, j_max=args.j_max)
        else:
            raise InputError(f"unknown zeta kind {kind!r}")
        _emit({"kind": "zeta-value", "zeta": _zeta_value_doc(zv),
               "spectrum": str(args.spectrum), "rep": rep.name}, args.out)
        return 0
    if args.action == "verify":
        points = [_parse_complex(p) for p in args.points.split(",") if p.strip()] \
            if isinstance(args.points, str) else [complex(p) for p in args.points]
        report = verify_identities(sp, h, points, j_max=args.j_max, k_max=args.k_max)
        doc = {
            "kind": "zeta-identity-report",
            "rep": rep.name,
            "spectrum": str(args.spectrum),
            "pass": report.passed,
            "checks": [
                {
                    "identity": c.identity,
                    "s": _complex_pair(c.s),
                    "log_gap": c.log_gap,
                    "relative_gap": c.rel_gap,
                    "budget": c.budget,
                    "pass": c.passed,
                }
                for c in report.checks
            ],
            "skipped": [
                {"identity": name, "s": _complex_pair(s), "reason": reason}
                for name, s, reason in report.skipped
            ],
        }
        figdir = _figures_dir(args)
        if figdir is not None:
            from .figures import identity_figure

            fig = identity_figure(report, figdir / "zeta_identities.png",
                                  title=f"identities: {rep.name}")
            doc["figure"] = str(fig)
        _emit(doc, args.out)
        return 0 if report.passed else 1
    raise InputError(f"unknown zeta action {args.action!r}")


def _prediction_doc(report) -> dict:
    return {
        "m_order": report.m_order,
        "res_dims": {
            str(k): {"simple": report.res_dims[k][0],
                     "generalized": report.res_dims[k][1]}
            for k in sorted(report.res_dims)
        },
        "torsion": _complex_pair(report.torsion),
        "sources": report.sources,
        "labels": list(report.labels),
        "consistency": [{"check": name, "pass": ok} for name, ok in report.consistency],
    }


def cmd_predict(args) -> int:
    rep = read_representation(args.rep)
    genus = args.genus
    if genus < 2:
        raise InputError("--genus must be >= 2")
    family = args.family
    cls = classify(rep)
    if family == "auto":
        if rep.name.startswith("adjoint"):
            family = "adjoint"
        elif rep.name.startswith("sl2-lift") and args.n_quarter is not None:
            family = "tau-jordan"
        elif cls.factoring and cls.invariant_dim == cls.r:
            family = "trivial"
        else:
            family = "generic"
    if family == "trivial":
        report = trivial_rep_dims(genus)
    elif family == "adjoint":
        report = adjoint_dims(genus)
    elif family == "tau-jordan":
        if args.n_quarter is None:
            raise InputError("tau-jordan needs --n-quarter (dim ker(Laplacian - 1/4))")
        report = tau_jordan_dims(genus, args.n_quarter)
    else:
        report = generic_prediction(cls, genus)
    _emit({"kind": "prediction", "rep": rep.name, "genus": genus,
           "family": family, "prediction": _prediction_doc(report)}, args.out)
    return 0


def cmd_torsion(args) -> int:
    rep = read_representation(args.rep)
    if args.genus < 2:
        raise InputError("--genus must be >= 2")
    try:
        value = torsion(rep, args.genus)
        doc = {"kind": "torsion", "rep": rep.name, "genus": args.genus,
               "torsion": _complex_pair(value), "flag": None,
               "source": "zeta(0)^(-1) = +-det(Id - rho(c))^(2G-2)"}
    except NotAcyclic as ex:
        doc = {"kind": "torsion", "rep": rep.name, "genus": args.genus,
               "torsion": None, "flag": "not-acyclic", "detail": str(ex)}
    _emit(doc, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify-paper

def _suite_core(threads: int, cache_dir=None):
    from .cohomology import cohomology_dims
    from .fuchsian import bolza_group
    from .predictions import torsion_of_fiber_image
    from .words import (fox_identity_defect, surface_presentation,
                        unit_tangent_presentation)

    checks = []

    def section(name, fn):
        t0 = time.time()
        try:
            detail = fn()
            ok = True
        except AssertionError as ex:
            detail, ok = str(ex) or "assertion failed", False
        except TwistedZetaError as ex:
            detail, ok = f"{type(ex).__name__}: {ex}", False
        print(f"  [{'PASS' if ok else 'FAIL'}] {name} ({time.time() - t0:.1f}s)",
              file=sys.stderr)
        checks.append({"name": name, "pass": ok, "detail": detail})

    def fox():
        for genus in (2, 3, 4):
            for p in (surface_presentation(genus), unit_tangent_presentation(genus)):
                for rel in p.relators:
                    assert fox_identity_defect(p, rel).is_zero(), (p.name, rel)
        return "fundamental identity exact for all relators, genus 2..4"

    section("fox_identity", fox)

    def constructions():
        from .representation import clock_shift_pair

        for r in (1, 2, 3, 4, 5):
            A, B = clock_shift_pair(r)
            w = cmath.exp(2j * cmath.pi / r)
            res = np.abs(A @ B @ np.linalg.inv(A) @ np.linalg.inv(B) -
                         w * np.eye(r)).max()
            assert res <= 1e-14, f"clock-shift r={r}: {res}"
        count = 0
        for genus in (2, 3):
            for r in (2, 3):
                for j in range(1, r * (2 * genus - 2) + 1):
                    rep = unitary_generic_rep(genus, r, j)
                    assert rep.relator_residual <= 1e-12
                    cls = classify(rep)
                    assert cls.generic_member, (genus, r, j)
                    count += 1
        b = bolza_group()
        tau = sl2_lift_rep(b)
        assert np.abs(tau.images["c"] + np.eye(2)).max() == 0
        assert tau.exactly_validated
        ad = adjoint_rep(b)
        assert ad.exactly_validated
        return f"{count} generic constructions validated; lift and adjoint exact"

    section("constructions", constructions)

    def cohomology_section():
        p = unit_tangent_presentation(2)
        b = bolza_group()
        cases = [
            (trivial_rep(2), (1, 4, 4, 1)),
            (unitary_generic_rep(2, 2, 1), (0, 0, 0, 0)),
            (unitary_generic_rep(2, 2, 4), (0, 4, 4, 0)),
            (sl2_lift_rep(b), (0, 0, 0, 0)),
        ]
        for rep, expect in cases:
            dims = cohomology_dims(p, rep)
            assert dims.as_tuple() == expect, (rep.name, dims.as_tuple(), expect)
            assert min(dims.gap_report.values()) >= 1e3
        return "four conformance cases with singular-value gaps >= 1e3"

    section("cohomology_conformance", cohomology_section)

    def predictions_section():
        for genus in range(2, 11):
            rep = adjoint_dims(genus)
            assert rep.generalized == (2 * genus + 1, 10 * genus - 4, 2 * genus + 1)
            assert all(ok for _, ok in rep.consistency)
            assert trivial_rep_dims(genus).m_order == 2 * genus - 2
        for N in range(0, 5):
            r = tau_jordan_dims(2, N)
            assert r.generalized == (2 * N, 4 * N, 2 * N) and r.m_order == 0
        return "adjoint audit genus 2..10; Jordan table linear"

    section("prediction_arithmetic", predictions_section)

    def torsion_section():
        assert abs(torsion_of_fiber_image(-np.eye(2), 2) - 16) <= 1e-14
        assert abs(torsion_of_fiber_image(1j * np.eye(1), 2) - (-2j)) <= 1e-14
        try:
            torsion_of_fiber_image(np.eye(2), 2)
            raise AssertionError("expected NotAcyclic for the identity fiber image")
        except NotAcyclic:
            pass
        return "three worked torsion values exact to 1e-14"

    section("torsion_values", torsion_section)

    spectra = {}

    def spectrum_section():
        from .fuchsian import bolza_group, enumerate_spectrum

        opts = EnumerationOptions(max_word_length=8, threads=threads)
        exact, _ = cached_spectrum(bolza_group(), 4.0, opts, cache_dir=cache_dir)
        fl = enumerate_spectrum(bolza_group(exact=False), 4.0, opts)
        assert len(exact) == len(fl)
        for a, b2 in zip(exact.classes, fl.classes):
            assert abs(a.length - b2.length) <= 1e-9
        assert all(c.primitive for c in exact.classes)
        spectra["bolza4"] = exact
        return f"{len(exact)} oriented classes; exact and float modes agree"

    section("spectrum_modes_agree", spectrum_section)

    reports = {}

    def zeta_section():
        b = bolza_group()
        opts = EnumerationOptions(max_word_length=8, threads=threads)
        sp, _ = cached_spectrum(b, 5.0, opts, cache_dir=cache_dir)
        spectra["bolza5"] = sp
        triv = factoring_holonomy(trivial_rep(2))
        ad = factoring_holonomy(adjoint_rep(b))
        tau = sl2_lift_tensor_holonomy(sl2_lift_rep(b))
        for name, h, pts in (("trivial", triv, [2.0, 2.5, 3.0]),
                             ("adjoint", ad, [2.5, 3.0]),
                             ("tau", tau, [2.0, 2.5, 3.0])):
            rep = verify_identities(sp, h, pts)
            reports[name] = rep
            assert rep.passed, f"{name}: identity check failed"
            worst = max(c.budget for c in rep.checks if c.s.real == 3.0)
            assert worst < 1e-3, f"{name}: budget {worst} too large at s=3"
        return "identity suite passes for trivial, adjoint and lift twists"

    section("zeta_identities", zeta_section)

    return checks, spectra, reports


def cmd_verify_paper(args) -> int:
    if args.suite != "core":
        raise InputError(f"unknown suite {args.suite!r} (available: core)")
    checks, spectra, reports = _suite_core(args.threads, cache_dir=args.cache_dir)
    passed = all(c["pass"] for c in checks)
    # thread count is a run parameter, not a result; leaving it out keeps
    # reports byte-identical across schedules
    doc = {
        "kind": "verification-report",
        "suite": args.suite,
        "pass": passed,
        "checks": checks,
    }
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import identity_figure, spectrum_figure, suite_figure

        figs = [str(suite_figure(checks, figdir / "suite_core.png",
                                 title="core verification suite"))]
        if "bolza5" in spectra:
            figs.append(str(spectrum_figure(spectra["bolza5"],
                                            figdir / "bolza_spectrum.png")))
        for name, rep in reports.items():
            figs.append(str(identity_figure(rep, figdir / f"identities_{name}.png",
                                            title=f"identities: {name}")))
        doc["figures"] = figs
    _emit(doc, args.out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twistedzeta",
        description="Twisted Ruelle/Selberg zeta functions, Fox-calculus "
                    "cohomology and torsion predictions for hyperbolic surfaces.")
    ap.add_argument("--cache-dir", default=None,
                    help=f"spectrum cache directory (default {default_cache_dir()})")
    ap.add_argument("--config", default=None, metavar="FILE",
                    help="JSON object of option defaults; explicit flags win")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="enumerate a geodesic length spectrum")
    sp.add_argument("--group", required=True, help="bolza or polygon:G")
    sp.add_argument("--max-length", type=float, required=True)
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--max-word-len", type=int, default=None)
    sp.add_argument("--conj-radius", type=int, default=4)
    sp.add_argument("--node-budget", type=int, default=5_000_000)
    sp.add_argument("--prune-slack", type=float, default=None)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", default=None, help=".jsonl cache copy or .csv table")
    sp.add_argument("--figures", nargs="?", const=".", default=None)
    sp.set_defaults(func=cmd_spectrum)

    rp = sub.add_parser("rep", help="make, validate or classify representations")
    rsub = rp.add_subparsers(dest="action", required=True)
    rmake = rsub.add_parser("make")
    rmake.add_argument("what",
                       choices=["unitary-generic", "sl2-lift", "adjoint", "trivial"])
    rmake.add_argument("--genus", type=int, default=None)
    rmake.add_argument("--dim", type=int, default=None)
    rmake.add_argument("--j", type=int, default=None)
    rmake.add_argument("--group", default="bolza")
    rmake.add_argument("--out", default=None)
    rmake.set_defaults(func=cmd_rep)
    for act in ("validate", "classify"):
        rx = rsub.add_parser(act)
        rx.add_argument("file")
        rx.set_defaults(func=cmd_rep)

    ch = sub.add_parser("cohomology", help="twisted cohomology dimensions")
    ch.add_argument("--presentation", required=True, help="unit-tangent:G")
    ch.add_argument("--rep", required=True)
    ch.add_argument("--tol", type=float, default=1e-8)
    ch.add_argument("--out", default=None)
    ch.set_defaults(func=cmd_cohomology)

    zt = sub.add_parser("zeta", help="evaluate or verify zeta products")
    zsub = zt.add_subparsers(dest="action", required=True)
    zeval = zsub.add_parser("eval")
    zeval.add_argument("--spectrum", required=True)
    zeval.add_argument("--rep", required=True)
    zeval.add_argument("--holonomy", default="factoring",
                       choices=["factoring", "sl2-lift"])
    zeval.add_argument("--s", required=True, help="RE or RE,IM")
    zeval.add_argument("--kind", default="ruelle",
                       choices=["ruelle", "selberg", "det0", "det1", "det2"])
    zeval.add_argument("--j-max", type=int, default=64)
    zeval.add_argument("--k-max", type=int, default=None)
    zeval.add_argument("--out", default=None)
    zeval.set_defaults(func=cmd_zeta)
    zver = zsub.add_parser("verify")
    zver.add_argument("--spectrum", required=True)
    zver.add_argument("--rep", required=True)
    zver.add_argument("--holonomy", default="factoring",
                      choices=["factoring", "sl2-lift"])
    zver.add_argument("--points", required=True, help="comma-separated, e.g. 2,2.5,3")
    zver.add_argument("--j-max", type=int, default=64)
    zver.add_argument("--k-max", type=int, default=None)
    zver.add_argument("--out", default=None)
    zver.add_argument("--figures", nargs="?", const=".", default=None)
    zver.set_defaults(func=cmd_zeta)

    pr = sub.add_parser("predict", help="formula predictions for a representation")
    pr.add_argument("--rep", required=True)
    pr.add_argument("--genus", type=int, required=True)
    pr.add_argument("--n-quarter", type=int, default=None,
                    help="dim ker(Laplacian - 1/4), for the lift-twist table")
    pr.add_argument("--family", default="auto",
                    choices=["auto", "generic", "trivial", "adjoint", "tau-jordan"])
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=cmd_predict)

    tr = sub.add_parser("torsion", help="det(Id - rho(c))^(2G-2)")
    tr.add_argument("--rep", required=True)
    tr.add_argument("--genus", type=int, required=True)
    tr.add_argument("--out", default=None)
    tr.set_defaults(func=cmd_torsion)

    vp = sub.add_parser("verify-paper", help="run the composed verification suite")
    vp.add_argument("--suite", default="core")
    vp.add_argument("--threads", type=int, default=1)
    vp.add_argument("--out", default=None)
    vp.add_argument("--figures", nargs="?", const=".", default=None)
    vp.set_defaults(func=cmd_verify_paper)

    return ap


def _set_defaults_recursive(parser, defaults):
    here = {}
    for action in parser._actions:
        if action.dest in defaults:
            here[action.dest] = defaults[action.dest]
            action.required = False
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                _set_defaults_recursive(sub, defaults)
    if here:
        parser.set_defaults(**here)


def _apply_config(ap, argv):
    """Merge a JSON config file under the command-line flags; flags win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        with open(known.config) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise InputError(f"--config {known.config}: {ex}") from ex
    if not isinstance(config, dict):
        raise InputError("--config must hold a JSON object of option defaults")
    defaults = {k.replace("-", "_"): v for k, v in config.items()}
    _set_defaults_recursive(ap, defaults)
    # strip the --config flag itself
    out = []
    skip = False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--config":
            skip = True
            continue
        if a.startswith("--config="):
            continue
        out.append(a)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    try:
        argv = _apply_config(ap, argv if argv is not None else sys.argv[1:])
        args = ap.parse_args(argv)
        return args.func(args)
    except InputError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 2
    except (NotApplicable, OutsideConvergence, IllConditioned, NotAcyclic) as ex:
        print(f"{type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    except FileNotFoundError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
