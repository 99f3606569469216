"""File formats: spectrum caches (JSON lines) and representation files (JSON).

A spectrum cache holds one JSON record per class with fields word, trace,
length, primitive, power_index (plus multiplicity), preceded by one metadata
record; the cache key encodes group id, cutoff, word-length bound,
conjugation radius and arithmetic mode.  Exact traces are stored as integer
coordinates [a, b, c, d, den] in the quartic power basis.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .exactfield import ExactReal
from .fuchsian import (EnumerationOptions, GeodesicClass, LengthSpectrum,
                       SurfaceGroup, bolza_group, enumerate_spectrum,
                       surface_group_regular_polygon)
from .representation import Representation
from .words import (Presentation, surface_presentation, unit_tangent_presentation,
                    word_from_string, word_to_string)

SCHEMA_VERSION = 1

_CACHE_ENV = "TWISTEDZETA_CACHE_DIR"


def group_from_spec(spec: str, exact: bool = False) -> SurfaceGroup:
    """Build a group from a CLI-style spec: "bolza" or "polygon:G"."""
    from .errors import InputError

    if spec == "bolza":
        return bolza_group(exact=exact)
    if spec.startswith("polygon:"):
        try:
            genus = int(spec.split(":", 1)[1])
        except ValueError as ex:
            raise InputError(f"bad group spec {spec!r}") from ex
        if genus < 2:
            raise InputError(f"group {spec!r}: genus must be >= 2")
        if exact:
            raise InputError("exact mode is only available for the bolza group")
        return surface_group_regular_polygon(genus)
    raise InputError(f"unknown group spec {spec!r} (expected bolza or polygon:G)")


def default_cache_dir() -> Path:
    env = os.environ.get(_CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "twistedzeta"


def cache_key(group: SurfaceGroup, cutoff: float, opts: EnumerationOptions) -> str:
    from .fuchsian import _default_slack, _default_word_length

    n = opts.max_word_length or _default_word_length(cutoff)
    slack = opts.prune_slack if opts.prune_slack is not None else _default_slack(group)
    # every parameter that can affect the class set is part of the key
    return (f"{group.name.replace(':', '-')}_{group.mode}"
            f"_L{cutoff:g}_N{n}_R{opts.conj_radius}_S{slack:.3g}")


def _trace_payload(trace):
    if isinstance(trace, ExactReal):
        return {"exact": [trace.a, trace.b, trace.c, trace.d, trace.den]}
    return {"float": float(trace)}


def _trace_from_payload(payload):
    if "exact" in payload:
        a, b, c, d, den = payload["exact"]
        return ExactReal(a, b, c, d, den=den)
    return float(payload["float"])


def write_spectrum(sp: LengthSpectrum, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "schema_version": SCHEMA_VERSION,
        "kind": "spectrum",
        "group": sp.group.name,
        "mode": sp.group.mode,
        "cutoff": sp.cutoff,
        "params": sp.params,
        "attestation": sp.attestation,
        "count": len(sp.classes),
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(meta, sort_keys=True) + "\n")
        for c in sp.classes:
            rec = {
                "word": word_to_string(c.word),
                "trace": _trace_payload(c.trace),
                "length": c.length,
                "primitive": c.primitive,
                "power_index": c.power_index,
                "multiplicity": c.multiplicity,
            }
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_spectrum(path) -> LengthSpectrum:
    """Load a cache file; class matrices are rebuilt from the words."""
    path = Path(path)
    with open(path) as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    if not lines or lines[0].get("kind") != "spectrum":
        raise ValueError(f"{path} is not a spectrum cache file")
    meta = lines[0]
    group = group_from_spec(meta["group"], exact=meta["mode"] == "exact")
    classes = []
    for rec in lines[1:]:
        w = word_from_string(rec["word"])
        iso = group.word_isometry(w)
        classes.append(GeodesicClass(
            word=w,
            matrix=iso,
            trace=_trace_from_payload(rec["trace"]),
            length=rec["length"],
            primitive=rec["primitive"],
            power_index=rec["power_index"],
            multiplicity=rec.get("multiplicity", 1),
        ))
    return LengthSpectrum(
        group=group,
        cutoff=meta["cutoff"],
        classes=tuple(classes),
        params=meta["params"],
        attestation=meta["attestation"],
    )


def cached_spectrum(group: SurfaceGroup, cutoff: float,
                    opts: EnumerationOptions = EnumerationOptions(),
                    cache_dir=None) -> tuple[LengthSpectrum, bool]:
    """(spectrum, was_cached); computes and fills the cache on a miss."""
    cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
    path = cache_dir / (cache_key(group, cutoff, opts) + ".jsonl")
    if path.exists():
        return read_spectrum(path), True
    sp = enumerate_spectrum(group, cutoff, opts)
    write_spectrum(sp, path)
    return sp, False


def write_spectrum_csv(sp: LengthSpectrum, path) -> None:
    import csv

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word", "trace", "length", "primitive", "power_index",
                         "multiplicity"])
        for c in sp.classes:
            writer.writerow([
                word_to_string(c.word),
                float(c.trace) if isinstance(c.trace, ExactReal) else c.trace,
                f"{c.length:.12f}", c.primitive, c.power_index, c.multiplicity,
            ])


# ---------------------------------------------------------------------------
# representation files

def presentation_from_name(name: str) -> Presentation:
    from .errors import InputError

    kind, _, genus_s = name.partition(":")
    try:
        genus = int(genus_s)
    except ValueError as ex:
        raise InputError(f"bad presentation id {name!r}") from ex
    if genus < 2:
        raise InputError(f"presentation {name!r}: genus must be >= 2")
    if kind == "unit-tangent":
        return unit_tangent_presentation(genus)
    if kind == "surface":
        return surface_presentation(genus)
    raise InputError(f"unknown presentation kind {kind!r}")


def write_representation(rep: Representation, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    images = {
        g: [[[float(z.real), float(z.imag)] for z in row] for row in m]
        for g, m in rep.images.items()
    }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "representation",
        "r": rep.r,
        "presentation": rep.target.name,
        "tolerance": rep.tolerance,
        "name": rep.name,
        "images": images,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_representation(path) -> Representation:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("kind") != "representation":
        raise ValueError(f"{path} is not a representation file")
    target = presentation_from_name(doc["presentation"])
    images = {
        g: [[complex(re, im) for re, im in row] for row in m]
        for g, m in doc["images"].items()
    }
    return Representation(target, images, tolerance=doc.get("tolerance", 1e-10),
                          name=doc.get("name", ""))
