"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error (argparse),
3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .complexes import (
    OrientedComplex,
    SphereMapError,
    as_complex,
    is_closed_pseudomanifold,
    orient,
)
from .constructions import CertificationError, construct, fvector_sphere
from .homology import degree_via_homology, verify_sphere_evidence
from .io import (
    FileFormatError,
    certificate_to_obj,
    complex_to_obj,
    export_facets,
    fraction_str,
    fvector_report_to_obj,
    load_any,
    map_to_obj,
    obj_to_complex,
    obj_to_realization,
    parse_fraction,
    read_file,
    realization_to_obj,
    write_file,
)
from .maps import degree, validate_map
from .realization import RealizationError, realize_construction, verify_polytope

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spheremap",
                                description="economical sphere triangulations with certified degree maps")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a certified degree-d map to the standard n-sphere")
    c.add_argument("--dim", type=int, required=True, help="target sphere dimension n >= 1")
    c.add_argument("--degree", type=int, required=True, help="prescribed degree d")
    c.add_argument("--out", help="write the map here (certificate goes to <out>.cert.json)")
    c.add_argument("--realize", action="store_true",
                   help="also compute and verify exact polytope coordinates")

    f = sub.add_parser("fvector", help="sphere triangulation with all f-vector ratios above C")
    f.add_argument("--dim", type=int, required=True, help="sphere dimension n >= 3")
    f.add_argument("--ratio", required=True, help="threshold C > 0 (integer or p/q)")
    f.add_argument("--out", help="write the report here (+ <out>.complex.json when materialized)")

    v = sub.add_parser("verify", help="re-run the checks on a map or complex file")
    v.add_argument("file", help="map.json or complex.json")
    v.add_argument("--homology", action="store_true", help="also verify the degree through homology")
    v.add_argument("--links", type=int, metavar="DEPTH", default=None,
                   help="sphere evidence with vertex-link recursion to DEPTH")
    v.add_argument("--realization", metavar="COORDS", default=None,
                   help="check exact polytope coordinates against the complex")

    e = sub.add_parser("export", help="plain-text facet list")
    e.add_argument("--format", choices=["facets"], default="facets")
    e.add_argument("file")
    return p


def _cmd_construct(args) -> int:
    try:
        cert = construct(args.dim, args.degree)
    except ValueError as e:  # out-of-domain parameters
        print(f"FAIL usage: {e}")
        return EXIT_USAGE
    except (CertificationError, SphereMapError) as e:
        print(f"FAIL construction: {e}")
        return EXIT_VERIFICATION
    ratio = fraction_str(cert.ratio) if cert.ratio is not None else "n/a"
    print(f"dimension      {cert.n}")
    print(f"degree         {cert.d} (signed {cert.degree_signed}, "
          f"homology {cert.degree_homology if cert.degree_homology is not None else 'skipped'})")
    print(f"vertices       {cert.vertex_count}")
    print(f"bound          {cert.guaranteed_bound} (guaranteed by the construction scheme)")
    print(f"ratio          {ratio}")
    print(f"checks         {cert.checks.summary()}")
    R = None
    if args.realize:
        try:
            R = realize_construction(cert.tree)
            verify_polytope(R, cert.map.source)
        except RealizationError as e:
            print(f"FAIL realization: {e}")
            return EXIT_VERIFICATION
        print(f"realization    {R.num_points} exact rational points in R^{R.ambient_dim}, all facets supported")
    if args.out:
        try:
            write_file(args.out, map_to_obj(cert.map, source_construction=cert.tree))
            cert_path = args.out + ".cert.json"
            write_file(cert_path, certificate_to_obj(cert, map_file=args.out))
            print(f"wrote          {args.out}, {cert_path}")
            if R is not None:
                coords_path = args.out + ".coords.json"
                write_file(coords_path, realization_to_obj(R))
                print(f"wrote          {coords_path}")
        except OSError as e:
            print(f"FAIL i/o: {e}")
            return EXIT_IO
    return EXIT_OK


def _cmd_fvector(args) -> int:
    try:
        C = parse_fraction(args.ratio)
    except (ValueError, ZeroDivisionError):
        print(f"FAIL usage: cannot parse ratio {args.ratio!r}")
        return EXIT_USAGE
    try:
        K, rep = fvector_sphere(args.dim, C)
    except ValueError as e:
        print(f"FAIL usage: {e}")
        return EXIT_USAGE
    except SphereMapError as e:
        print(f"FAIL construction: {e}")
        return EXIT_VERIFICATION
    print(f"dimension      {rep.n}")
    print(f"threshold      {fraction_str(rep.C)}")
    print(f"circles        h = {rep.h}, size k = {rep.k}" + (" (+ S^0 pad)" if rep.even_pad else ""))
    print(f"f-vector       {tuple(rep.fvec)}")
    print(f"facets         {rep.facet_count} ({'materialized' if rep.materialized else 'construction tree only'})")
    print(f"min ratio      {fraction_str(rep.min_ratio)}")
    if args.out:
        try:
            write_file(args.out, fvector_report_to_obj(rep))
            print(f"wrote          {args.out}")
            if K is not None:
                cpath = args.out + ".complex.json"
                write_file(cpath, complex_to_obj(K, construction=rep.tree))
                print(f"wrote          {cpath}")
        except OSError as e:
            print(f"FAIL i/o: {e}")
            return EXIT_IO
    return EXIT_OK


def _check(name: str, ok: bool, detail: str = "") -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f": {detail}" if detail else ""))
    return ok


def _cmd_verify(args) -> int:
    try:
        loaded, obj = load_any(args.file)
    except FileFormatError as e:
        print(f"FAIL usage: {e}")
        return EXIT_USAGE
    except OSError as e:
        print(f"FAIL i/o: {e}")
        return EXIT_IO
    if obj["kind"] == "realization":
        print("FAIL usage: verify takes a map or complex file; pass coordinates "
              "via --realization alongside the complex they realize")
        return EXIT_USAGE

    all_ok = True
    if obj["kind"] == "map":
        f = loaded
        chk = validate_map(f)
        all_ok &= _check("simplicial map", chk.ok, chk.message)
        if chk.ok:
            try:
                src = f.source if isinstance(f.source, OrientedComplex) else orient(f.source)
                tgt = f.target if isinstance(f.target, OrientedComplex) else orient(f.target)
                from .maps import SimplicialMap

                fo = SimplicialMap(src, tgt, f.assignment, validate=False)
                rep = degree(fo)
                all_ok &= _check("signed degree", rep.consistent,
                                 f"degree {rep.degree}, identical over all {len(rep.per_target_facet)} target facets"
                                 if rep.consistent else "per-facet counts differ")
                cert_path = args.file + ".cert.json"
                if rep.consistent and os.path.exists(cert_path):
                    cert = read_file(cert_path)
                    match = (cert.get("degree") == rep.degree
                             and cert.get("vertex_count") == src.num_vertices)
                    all_ok &= _check("certificate match", match,
                                     f"stored degree {cert.get('degree')}, recomputed {rep.degree}")
                if args.homology:
                    hd = degree_via_homology(fo)
                    all_ok &= _check("homology degree", hd == rep.degree,
                                     f"degree {hd} vs signed {rep.degree}")
                if args.links is not None:
                    ev = verify_sphere_evidence(src, depth=args.links)
                    all_ok &= _check("sphere evidence", ev.ok, ev.summary())
            except SphereMapError as e:
                all_ok &= _check("degree", False, str(e))
        K_for_coords = as_complex(f.source)
    else:
        K = loaded
        pm = is_closed_pseudomanifold(K)
        all_ok &= _check("closed pseudomanifold", pm.ok, pm.message)
        if pm.ok:
            try:
                orient(K)
                all_ok &= _check("orientable", True)
            except SphereMapError as e:
                all_ok &= _check("orientable", False, str(e))
        if args.homology or args.links is not None:
            ev = verify_sphere_evidence(K, depth=args.links if args.links is not None else 1)
            all_ok &= _check("sphere evidence", ev.ok, ev.summary())
        K_for_coords = as_complex(K)

    if args.realization:
        try:
            R = obj_to_realization(read_file(args.realization))
            verify_polytope(R, K_for_coords)
            all_ok &= _check("polytope realization", True,
                             f"{K_for_coords.num_facets} facets supported, strict inequalities")
        except (FileFormatError, RealizationError) as e:
            all_ok &= _check("polytope realization", False, str(e))
        except OSError as e:
            print(f"FAIL i/o: {e}")
            return EXIT_IO

    return EXIT_OK if all_ok else EXIT_VERIFICATION


def _cmd_export(args) -> int:
    try:
        obj = read_file(args.file)
        if obj.get("kind") == "map":
            K = obj_to_complex(obj["source"])
        else:
            K = obj_to_complex(obj)
    except FileFormatError as e:
        print(f"FAIL usage: {e}")
        return EXIT_USAGE
    except OSError as e:
        print(f"FAIL i/o: {e}")
        return EXIT_IO
    sys.stdout.write(export_facets(K))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "construct":
        return _cmd_construct(args)
    if args.command == "fvector":
        return _cmd_fvector(args)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_export(args)


if __name__ == "__main__":
    sys.exit(main())
