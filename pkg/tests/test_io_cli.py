import json

import numpy as np
import pytest

import spheremap as sm
from spheremap.cli import main
from spheremap.io import (
    complex_to_obj,
    dumps_canonical,
    export_facets,
    fraction_str,
    map_to_obj,
    obj_to_complex,
    obj_to_map,
    parse_fraction,
    read_file,
    write_file,
)


class TestFractions:
    def test_roundtrip(self):
        from fractions import Fraction

        for s in ("3", "-2", "7/2", "-11/3"):
            assert fraction_str(parse_fraction(s)) == s
        assert parse_fraction(5) == Fraction(5)


class TestComplexRoundTrip:
    @pytest.mark.parametrize("K", [
        sm.simplex_boundary(3),
        sm.cycle(7),
        sm.join(sm.cycle(3), sm.cycle(4)),
        sm.join(sm.cycle(3), sm.simplex_boundary(0)),
    ])
    def test_oriented_roundtrip(self, K):
        obj = complex_to_obj(K)
        K2 = obj_to_complex(obj)
        assert isinstance(K2, sm.OrientedComplex)
        assert K2.base == K.base
        assert K2.sign_map() == K.sign_map()

    def test_bytes_stable(self):
        K = sm.join(sm.cycle(3), sm.cycle(3))
        s1 = dumps_canonical(complex_to_obj(K))
        s2 = dumps_canonical(complex_to_obj(obj_to_complex(json.loads(s1))))
        assert s1 == s2

    def test_plain_complex(self, rp2):
        obj = complex_to_obj(rp2)
        assert obj["orientation"] is None
        assert obj_to_complex(obj) == rp2

    def test_labels_preserved(self):
        K = sm.simplex_boundary(1, labels=("c0", "c1", "c2"))
        assert obj_to_complex(complex_to_obj(K)).base.labels == ("c0", "c1", "c2")


class TestMapRoundTrip:
    def test_map_roundtrip(self):
        f = sm.join_maps(sm.wrap_map(6, 3), sm.reflect(sm.cycle(4)))
        f2 = obj_to_map(map_to_obj(f))
        assert np.array_equal(f2.assignment, f.assignment)
        assert f2.source_complex == f.source_complex
        assert sm.degree(f2).degree == sm.degree(f).degree

    def test_assignment_length_checked(self):
        f = sm.wrap_map(6, 3)
        obj = map_to_obj(f)
        obj["assignment"] = obj["assignment"][:-1]
        with pytest.raises(ValueError):
            obj_to_map(obj)


class TestExport:
    def test_simplex_boundary_lines(self):
        out = export_facets(sm.simplex_boundary(2))
        assert out.splitlines() == ["0 1 2", "0 1 3", "0 2 3", "1 2 3"]

    def test_join_lines_sorted(self):
        out = export_facets(sm.join(sm.cycle(3), sm.cycle(3)))
        lines = out.splitlines()
        assert len(lines) == 9
        assert lines == sorted(lines, key=lambda s: [int(x) for x in s.split()])


class TestCLI:
    def test_construct_writes_verifiable_files(self, tmp_path, capsys):
        out = str(tmp_path / "map.json")
        assert main(["construct", "--dim", "3", "--degree", "12", "--out", out]) == 0
        text = capsys.readouterr().out
        assert "vertices       21" in text
        assert main(["verify", out, "--homology", "--links", "1"]) == 0
        assert (tmp_path / "map.json.cert.json").exists()
        cert = read_file(out + ".cert.json")
        assert cert["degree"] == 12 and cert["vertex_count"] <= 21

    def test_construct_dim1(self, capsys):
        assert main(["construct", "--dim", "1", "--degree", "5"]) == 0
        assert "vertices       15" in capsys.readouterr().out

    def test_construct_degree_zero(self, capsys):
        assert main(["construct", "--dim", "4", "--degree", "0"]) == 0
        out = capsys.readouterr().out
        assert "vertices       6" in out and "degree         0" in out

    def test_construct_realize(self, tmp_path, capsys):
        out = str(tmp_path / "m.json")
        assert main(["construct", "--dim", "3", "--degree", "2", "--out", out,
                     "--realize"]) == 0
        assert (tmp_path / "m.json.coords.json").exists()
        assert main(["verify", out, "--realization", out + ".coords.json"]) == 0
        text = capsys.readouterr().out
        assert "PASS  polytope realization" in text

    def test_fvector_cli(self, tmp_path, capsys):
        out = str(tmp_path / "fv.json")
        assert main(["fvector", "--dim", "3", "--ratio", "1", "--out", out]) == 0
        text = capsys.readouterr().out
        assert "size k = 3" in text
        rep = read_file(out)
        assert rep["f_vector"] == [6, 15, 18, 9]
        assert (tmp_path / "fv.json.complex.json").exists()

    def test_fvector_even_dim_mentions_pad(self, capsys):
        assert main(["fvector", "--dim", "4", "--ratio", "10"]) == 0
        assert "S^0 pad" in capsys.readouterr().out

    def test_verify_corrupted_assignment_fails_validation(self, tmp_path, capsys):
        # an edge of cycle(8) lands on a diagonal of cycle(4): not a face
        path = str(tmp_path / "wrap.json")
        write_file(path, map_to_obj(sm.wrap_map(8, 4)))
        obj = read_file(path)
        obj["assignment"][4] = 1
        write_file(path, obj)
        code = main(["verify", path])
        text = capsys.readouterr().out
        assert code == 1
        assert "FAIL  simplicial map" in text
        assert "facet" in text

    def test_verify_corruption_against_certificate(self, tmp_path, capsys):
        out = str(tmp_path / "map.json")
        main(["construct", "--dim", "3", "--degree", "2", "--out", out])
        obj = read_file(out)
        obj["assignment"][0] = (obj["assignment"][0] + 1) % 5
        write_file(out, obj)
        capsys.readouterr()
        code = main(["verify", out])
        text = capsys.readouterr().out
        assert code == 1
        assert "FAIL" in text

    def test_verify_missing_facet_names_ridge(self, tmp_path, capsys):
        K = sm.join(sm.cycle(3), sm.cycle(3))
        obj = complex_to_obj(K)
        obj["facets"] = obj["facets"][1:]  # drop one facet
        obj["orientation"] = obj["orientation"][1:]
        path = str(tmp_path / "broken.json")
        write_file(path, obj)
        code = main(["verify", path])
        text = capsys.readouterr().out
        assert code == 1
        assert "ridge" in text

    def test_export_cli(self, tmp_path, capsys):
        out = str(tmp_path / "map.json")
        main(["construct", "--dim", "1", "--degree", "2", "--out", out])
        capsys.readouterr()
        assert main(["export", "--format", "facets", out]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 6  # cycle(6)
        assert lines[0] == "0 1"

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as e:
            main(["construct", "--dim", "x", "--degree", "1"])
        assert e.value.code == 2

    def test_out_of_domain_parameters_are_usage_errors(self, capsys):
        assert main(["construct", "--dim", "0", "--degree", "3"]) == 2
        assert main(["fvector", "--dim", "2", "--ratio", "1"]) == 2
        assert main(["fvector", "--dim", "3", "--ratio", "0"]) == 2
        assert main(["fvector", "--dim", "3", "--ratio", "x/y"]) == 2
        capsys.readouterr()

    def test_unknown_file_kind_is_usage_error(self, tmp_path, capsys):
        path = str(tmp_path / "junk.json")
        write_file(path, {"format_version": 1, "kind": "banana"})
        assert main(["verify", path]) == 2
        assert main(["export", "--format", "facets", path]) == 2
        capsys.readouterr()

    def test_io_error_exit_code(self, capsys):
        assert main(["verify", "/nonexistent/nope.json"]) == 3

    def test_verify_rejects_realization_file_directly(self, tmp_path, capsys):
        from spheremap.io import realization_to_obj
        from spheremap.realization import realize_cycle

        path = str(tmp_path / "coords.json")
        write_file(path, realization_to_obj(realize_cycle(4)))
        assert main(["verify", path]) == 2

    def test_verify_complex_file_passes(self, tmp_path):
        K = sm.join(sm.cycle(4), sm.cycle(3))
        path = str(tmp_path / "c.json")
        write_file(path, complex_to_obj(K))
        assert main(["verify", path, "--homology", "--links", "1"]) == 0

    def test_determinism_across_runs(self, tmp_path):
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        main(["construct", "--dim", "3", "--degree", "9", "--out", a])
        main(["construct", "--dim", "3", "--degree", "9", "--out", b])
        pa = (tmp_path / "a.json").read_bytes().replace(b"a.json", b"x.json")
        pb = (tmp_path / "b.json").read_bytes().replace(b"b.json", b"x.json")
        assert pa == pb
        ca = (tmp_path / "a.json.cert.json").read_bytes().replace(b"a.json", b"x.json")
        cb = (tmp_path / "b.json.cert.json").read_bytes().replace(b"b.json", b"x.json")
        assert ca == cb

    def test_determinism_across_processes_and_hash_seeds(self, tmp_path):
        import os
        import subprocess
        import sys

        def run(name, seed):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            subprocess.run(
                [sys.executable, "-m", "spheremap.cli", "construct",
                 "--dim", "3", "--degree", "11", "--out", name],
                cwd=tmp_path, env=env, check=True, capture_output=True)

        run("a.json", "1")
        run("b.json", "99")
        ca = (tmp_path / "a.json.cert.json").read_bytes().replace(b"a.json", b"x.json")
        cb = (tmp_path / "b.json.cert.json").read_bytes().replace(b"b.json", b"x.json")
        assert ca == cb
