"""Versioned JSON file formats and canonical serialization.

Complexes are canonicalized on write: facets in lexicographic order with the
orientation signs carried along, keys sorted, no whitespace variance.  All
numbers are decimal integers; rationals are "p/q" strings.  Nothing here is
time- or path-dependent, so equal inputs serialize to equal bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import __version__
from .complexes import OrientedComplex, SimplicialComplex, as_complex
from .constructions import CertifiedConstruction, FVectorReport
from .maps import SimplicialMap
from .realization import PolytopeRealization

FORMAT_VERSION = 1

DETERMINISM_STATEMENT = ("this file is a pure function of the construction parameters; "
                         "the tool uses no randomness, timestamps, or machine state")


class FileFormatError(ValueError):
    pass


def fraction_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# object <-> dict

def complex_to_obj(K, construction=None) -> dict:
    KC = as_complex(K)
    order = KC.lex_order()
    obj = {
        "format_version": FORMAT_VERSION,
        "kind": "complex",
        "dimension": KC.dim,
        "num_vertices": KC.num_vertices,
        "vertex_labels": list(KC.labels) if KC.labels is not None else None,
        "facets": KC.facets[order].tolist(),
        "orientation": K.signs[order].tolist() if isinstance(K, OrientedComplex) else None,
        "construction": construction,
    }
    return obj


def obj_to_complex(obj):
    _expect(obj, "complex")
    base = SimplicialComplex(int(obj["num_vertices"]), obj["facets"],
                             labels=obj.get("vertex_labels"))
    if obj.get("orientation") is not None:
        return OrientedComplex(base, np.asarray(obj["orientation"], dtype=np.int8))
    return base


def map_to_obj(f: SimplicialMap, source_construction=None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "map",
        "source": complex_to_obj(f.source, construction=source_construction),
        "target": complex_to_obj(f.target),
        "assignment": f.assignment.tolist(),
    }


def obj_to_map(obj) -> SimplicialMap:
    """Reconstruct a map without validating it: files may describe invalid
    maps, and `verify` is the place that reports on them."""
    _expect(obj, "map")
    source = obj_to_complex(obj["source"])
    target = obj_to_complex(obj["target"])
    return SimplicialMap(source, target, obj["assignment"], validate=False)


def certificate_to_obj(c: CertifiedConstruction, map_file: str | None = None) -> dict:
    ev = c.checks
    return {
        "format_version": FORMAT_VERSION,
        "kind": "certificate",
        "tool_version": __version__,
        "determinism": DETERMINISM_STATEMENT,
        "map_file": map_file,
        "dimension": c.n,
        "degree": c.d,
        "vertex_count": c.vertex_count,
        "guaranteed_bound": c.guaranteed_bound,
        "ratio": fraction_str(c.ratio) if c.ratio is not None else None,
        "degree_signed": c.degree_signed,
        "degree_homology": c.degree_homology,
        "checks": {
            "pseudomanifold": ev.pseudomanifold,
            "orientable": ev.orientable,
            "homology_sphere": ev.homology_is_sphere,
            "homology": ev.homology,
            "links_checked": ev.links_checked,
            "link_classes": ev.link_classes,
            "link_failures": [list(x) for x in ev.link_failures],
            "skipped": list(ev.skipped),
        },
        "construction_log": list(c.construction_log),
        "construction": c.tree,
        "notes": list(c.notes),
    }


def fvector_report_to_obj(rep: FVectorReport) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "fvector_report",
        "tool_version": __version__,
        "determinism": DETERMINISM_STATEMENT,
        "dimension": rep.n,
        "ratio_threshold": fraction_str(rep.C),
        "h": rep.h,
        "k": rep.k,
        "even_pad": rep.even_pad,
        "f_vector": [int(x) for x in rep.fvec],
        "facet_count": rep.facet_count,
        "materialized": rep.materialized,
        "min_ratio": fraction_str(rep.min_ratio),
        "ratios": [{"i": i, "j": j, "ratio": fraction_str(r)} for i, j, r in rep.ratios],
        "construction": rep.tree,
    }


def realization_to_obj(R: PolytopeRealization) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "realization",
        "ambient_dim": R.ambient_dim,
        "coordinates": [[fraction_str(x) for x in p] for p in R.coordinates],
    }


def obj_to_realization(obj) -> PolytopeRealization:
    _expect(obj, "realization")
    pts = tuple(tuple(parse_fraction(x) for x in p) for p in obj["coordinates"])
    return PolytopeRealization(int(obj["ambient_dim"]), pts)


def _expect(obj, kind: str):
    if not isinstance(obj, dict) or obj.get("kind") != kind:
        raise FileFormatError(f"expected a {kind} object")
    if obj.get("format_version") != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {obj.get('format_version')!r}")


# ---------------------------------------------------------------------------
# files

def write_file(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))


def read_file(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise FileFormatError(f"{path}: not valid JSON ({e})") from None


def load_any(path):
    """Load a complex, map, or realization file by its self-described kind."""
    obj = read_file(path)
    kind = obj.get("kind")
    if kind == "complex":
        return obj_to_complex(obj), obj
    if kind == "map":
        return obj_to_map(obj), obj
    if kind == "realization":
        return obj_to_realization(obj), obj
    raise FileFormatError(f"{path}: unknown kind {kind!r}")


def export_facets(K) -> str:
    """Plain-text interchange: one facet per line, vertices space-separated,
    lexicographic order."""
    KC = as_complex(K)
    order = KC.lex_order()
    return "\n".join(" ".join(str(int(v)) for v in row) for row in KC.facets[order]) + "\n"
