import csv
import io
import json

import pytest

from cli import run
from spectral.eigenbasis import predicted_spectrum


@pytest.fixture
def example(files_dir):
    def path(name: str) -> str:
        return str(files_dir / name)

    return path


def read_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_spectrum_matches_prediction(example, capsys):
    code = run(["spectrum", "--complex", example("seq2.json"), "--weights", example("ind.json"),
                "--dims", "0..2", "-q"])
    assert code == 0
    header, *rows = read_csv(capsys.readouterr().out)
    assert header == ["dim", "eigenvalue", "multiplicity", "attribution"]
    for n in range(3):
        observed = [(round(float(r[1])), int(r[2])) for r in rows if r[0] == str(n)]
        assert observed == predicted_spectrum(n, 3)


def test_verify_sequence_spectrum(example, capsys):
    code = run(["verify", "--theorem", "seq-spectrum", "--complex", example("seq2.json"),
                "--weights", example("ind.json"), "-q"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["passed"] is True
    assert [r["values"]["dim"] for r in document["reports"]] == [0, 1, 2]


def test_verify_product_identity(example, capsys):
    code = run(["verify", "--theorem", "simp-identity", "--complex", example("simplex3.json"),
                "--weights", example("prod.json"), "--tol", "1e-11", "-q"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["passed"] is True
    assert document["reports"][0]["values"]["alpha"] == pytest.approx(4.0)


def test_verify_moment_identity(example, capsys):
    code = run(["verify", "--theorem", "simp-identity", "--complex", example("simplex3.json"),
                "--weights", example("moment3.json"), "-q"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)["reports"][0]
    assert report["values"]["alpha"] == pytest.approx(1.1)
    assert any(c["name"] == "alpha" and c["passed"] for c in report["checks"])


def test_failed_verification_exits_one(example, tmp_path, capsys):
    weights = tmp_path / "bent.json"
    weights.write_text(json.dumps({"model": "raw", "weights": {
        "()": 1.0, "{x}": 1.0, "{y}": 1.0, "{z}": 1.0,
        "{x,y}": 2.0, "{x,z}": 1.0, "{y,z}": 1.0, "{x,y,z}": 1.0,
    }}))
    code = run(["verify", "--theorem", "simp-identity", "--complex", example("simplex3.json"),
                "--weights", str(weights), "-q"])
    captured = capsys.readouterr()
    assert code == 1
    assert json.loads(captured.out)["passed"] is False
    assert captured.err.strip().splitlines()[-1].startswith("spectral-analysis: ")


def test_ingest_corpus(example, tmp_path, capsys):
    out = tmp_path / "fit.json"
    code = run(["ingest", example("corpus.txt"), "--max-dim", "1", "--out", str(out), "-q"])
    assert code == 0
    document = json.loads(out.read_text())
    assert document["model"] == "conditional"
    assert document["complex"]["vertices"] == ["a", "b", "c"]
    for length, slice_ in document["lengths"].items():
        assert sum(slice_.values()) == pytest.approx(1.0)
    assert document["lengths"]["1"] == {"c": pytest.approx(1.0)}
    assert sum(document["probabilities"].values()) == pytest.approx(1.0)


def test_ingested_fit_feeds_spectrum(example, tmp_path, capsys):
    out = tmp_path / "fit.json"
    assert run(["ingest", example("corpus.txt"), "--max-dim", "1", "--smoothing", "1",
                "--out", str(out), "-q"]) == 0
    code = run(["spectrum", "--complex", str(out), "--weights", str(out), "--dims", "0..1",
                "--format", "json", "-q"])
    assert code == 0
    spectra = json.loads(capsys.readouterr().out)["spectra"]
    assert [s["dim"] for s in spectra] == [0, 1]
    assert all(s["betti"] == 0 for s in spectra)


def test_build_output_reloads(example, tmp_path, capsys):
    first = tmp_path / "triangle.json"
    assert run(["build", "--complex", example("triangle.json"), "--out", str(first), "-q"]) == 0
    built = json.loads(first.read_text())
    assert built["counts"] == {"-1": 1, "0": 3, "1": 3}
    assert built["euler_characteristic"] == -1
    assert built["cells"]["1"] == ["{x,y}", "{x,z}", "{y,z}"]
    second = tmp_path / "again.json"
    assert run(["build", "--complex", str(first), "--out", str(second), "-q"]) == 0
    assert json.loads(second.read_text())["cells"] == built["cells"]


def test_output_is_deterministic(example, tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / f"spectrum-{k}.json"
        assert run(["spectrum", "--complex", example("seq2.json"), "--weights", example("ind.json"),
                    "--format", "json", "--out", str(out), "-q"]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_laplacian_csv(example, capsys):
    code = run(["laplacian", "--complex", example("seq2.json"), "--weights", example("ind.json"),
                "--dim", "0", "-q"])
    assert code == 0
    header, *rows = read_csv(capsys.readouterr().out)
    assert header == ["cell", "a", "b", "c"]
    assert rows[0][0] == "a"
    assert [float(x) for x in rows[0][1:]] == pytest.approx([1.5, -0.3, -0.2])


def test_decompose_harmonic_cycle(example, capsys):
    code = run(["decompose", "--complex", example("triangle.json"),
                "--weights", example("triangle-unit.json"), "--cochain", example("cycle.json"),
                "--dim", "1", "--format", "json", "-q"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["harmonic"] == pytest.approx({"{x,y}": 1.0, "{x,z}": -1.0, "{y,z}": 1.0})
    assert max(abs(v) for v in document["exact"].values()) < 1e-12
    assert max(abs(v) for v in document["coexact"].values()) < 1e-12
    assert document["harmonic_residual"] < 1e-10


def test_embed_csv(example, capsys):
    code = run(["embed", "--complex", example("triangle.json"),
                "--weights", example("triangle-unit.json"), "--dim", "1", "--components", "2", "-q"])
    assert code == 0
    header, *rows = read_csv(capsys.readouterr().out)
    assert header == ["cell", "c1", "c2"]
    assert [r[0] for r in rows] == ["{x,y}", "{x,z}", "{y,z}"]


def test_unknown_flag_exits_two(example, capsys):
    assert run(["spectrum", "--complex", example("seq2.json"), "--frobnicate"]) == 2


def test_missing_file_exits_two(example, capsys):
    code = run(["spectrum", "--complex", "no-such-complex.json", "--weights", example("ind.json")])
    assert code == 2
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("cli: ")


def test_missing_required_input_exits_two(example, capsys):
    code = run(["decompose", "--complex", example("triangle.json"),
                "--weights", example("triangle-unit.json"), "--dim", "0..1",
                "--cochain", example("cycle.json")])
    assert code == 2
    assert "exactly one dimension" in capsys.readouterr().err


def test_truncated_dimension_exits_two(example, capsys):
    code = run(["laplacian", "--complex", example("seq2.json"), "--weights", example("ind.json"),
                "--dim", "3"])
    assert code == 2
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("cell-complex: ")


def test_default_dims_start_at_empty_cell_for_spectrum(example, capsys):
    code = run(["spectrum", "--complex", example("seq2.json"), "--weights", example("ind.json"),
                "--format", "json", "-q"])
    assert code == 0
    spectra = json.loads(capsys.readouterr().out)["spectra"]
    assert [s["dim"] for s in spectra] == [-1, 0, 1, 2]


def test_tol_covers_weight_normalization(example, tmp_path, capsys):
    weights = tmp_path / "nearly.json"
    weights.write_text(json.dumps({"model": "independent",
                                   "vertex_weights": {"a": 0.5, "b": 0.3, "c": 0.2 - 5e-11}}))
    args = ["spectrum", "--complex", example("seq2.json"), "--weights", str(weights), "-q"]
    assert run(args) == 2
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("weights: ")
    assert run([*args, "--tol", "1e-9"]) == 0


def test_moment_weights_respect_cell_budget(tmp_path, capsys):
    complex_path = tmp_path / "points.json"
    complex_path.write_text(json.dumps({"kind": "simplicial", "vertices": ["w", "x", "y", "z"],
                                        "facets": [["w"], ["x"], ["y"], ["z"]]}))
    weights = tmp_path / "moment4.json"
    weights.write_text(json.dumps({"model": "moment", "vertex_probabilities": [0.1, 0.2, 0.3, 0.4]}))
    args = ["spectrum", "--complex", str(complex_path), "--weights", str(weights), "--dims", "0", "-q"]
    assert run(args) == 0
    capsys.readouterr()
    # 2^[4] holds 6 edges
    assert run([*args, "--cell-budget", "5"]) == 2
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("cell-complex: ")


def test_sequence_complex_of_single_vertices(tmp_path, capsys):
    complex_path = tmp_path / "letters.json"
    complex_path.write_text(json.dumps({"kind": "sequence", "vertices": ["a", "b"], "max_dim": -1}))
    assert run(["build", "--complex", str(complex_path), "-q"]) == 0
    built = json.loads(capsys.readouterr().out)
    assert built["counts"] == {"-1": 1, "0": 2}
