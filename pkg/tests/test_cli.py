"""Command line driver: verbs, exit codes, serialization, determinism.

Expected outputs are frozen from hand-checked runs against the bundled
fixture files (the abelian line, the idempotent line on the identity
differential, and the two-letter cone) and against the canonical double
of the idempotent line built in process.  Commands run in process
through main(); one test drives the installed console script.
"""

import contextlib
import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

import twoterm.graded as graded
from fixtures import abelian, assoc_point, dual_numbers_tower, prelie_point
from twoterm.bialg import (
    Tau,
    canonical_solution,
    coboundary_cobracket,
    dual_from_cobracket,
)
from twoterm.cli import CliError, generate, main, _algebra_from_obj, _algebra_obj, _dumps
from twoterm.exact_core import Mat
from twoterm.lie2 import verify_lie2
from twoterm.prelie2 import verify_prelie2

FIXDIR = Path(__file__).resolve().parents[1] / "fixtures"
FIX_A = str(FIXDIR / "fix_a.json")
FIX_B = str(FIXDIR / "fix_b.json")
FIX_C = str(FIXDIR / "fix_c.json")


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


def write(path, obj):
    path.write_text(_dumps(obj), encoding="utf-8")
    return str(path)


def canonical_double_files(tmp_path):
    """Serialize the canonical double pair (algebra, dual, cobracket)."""
    amb, r = canonical_solution(prelie_point())
    cb = coboundary_cobracket(amb, r, Tau.zeros(2))
    astar = dual_from_cobracket(amb, cb)
    return (
        write(tmp_path / "amb.json", _algebra_obj("prelie2", amb)),
        write(tmp_path / "astar.json", _algebra_obj("prelie2", astar)),
        write(tmp_path / "cb.json", cb.to_json()),
    )


# verify


def test_verify_accepts_the_bundled_fixture_files():
    for path in (FIX_A, FIX_B, FIX_C):
        code, report = run_json(["verify", "prelie2", path])
        assert code == 0
        assert report["status"] == "pass"
        assert report["violations"] == []


def test_verify_reports_the_flipped_sign_product(tmp_path):
    obj = json.loads(Path(FIX_B).read_text())
    obj["M01"] = [{"i": 0, "j": 0, "k": 0, "v": "-1"}]
    path = write(tmp_path / "flipped.json", obj)
    code, report = run_json(["verify", "prelie2", path])
    assert code == 1
    assert report["status"] == "fail"
    laws = {v["law"] for v in report["violations"]}
    assert laws == {"product-chain-balance", "product-chain-right"}
    for v in report["violations"]:
        assert v["residual"] != "0"


def test_verify_rejects_a_kind_mismatch():
    code, out = run_json(["verify", "lie2", FIX_B])
    assert code == 2
    assert out["error"] == "file is tagged 'prelie2', not 'lie2'"


def test_verify_rejects_missing_and_malformed_files(tmp_path):
    code, out = run_json(["verify", "prelie2", str(tmp_path / "absent.json")])
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, out = run_json(["verify", "prelie2", str(bad)])
    assert code == 2
    # well-formed JSON with a broken tensor entry is still a schema error
    obj = json.loads(Path(FIX_B).read_text())
    obj["M00"] = [[0, 0, 0, "1"]]
    path = write(tmp_path / "badentry.json", obj)
    code, out = run_json(["verify", "prelie2", path])
    assert code == 2


def test_algebra_files_round_trip_for_all_three_kinds(tmp_path):
    amb, _ = canonical_solution(prelie_point())
    cases = [
        ("lie2", amb.subadjacent() if hasattr(amb, "subadjacent") else None),
        ("prelie2", amb),
        ("assoc2", assoc_point()),
    ]
    from twoterm.prelie2 import subadjacent

    cases[0] = ("lie2", subadjacent(amb))
    for kind, algebra in cases:
        obj = _algebra_obj(kind, algebra)
        assert obj == json.loads(_dumps(obj))
        reparsed_kind, reparsed = _algebra_from_obj(json.loads(_dumps(obj)))
        assert reparsed_kind == kind
        assert _algebra_obj(kind, reparsed) == obj
        path = write(tmp_path / f"{kind}.json", obj)
        code, _ = run(["verify", kind, path])
        assert code == 0


# construct


def test_construct_subadjacent_gives_the_commutator_bracket(tmp_path):
    out_path = str(tmp_path / "sub.json")
    code, _ = run(["construct", "subadjacent", FIX_B, "--output", out_path])
    obj = json.loads(Path(out_path).read_text())
    assert code == 0
    assert obj["kind"] == "lie2"
    # the idempotent tower is commutative, so the bracket vanishes
    assert obj["L00"] == [] and obj["L01"] == []
    assert obj["metadata"]["provenance"]["verb"] == "subadjacent"
    code, _ = run(["verify", "lie2", out_path])
    assert code == 0


def test_construct_canonical_r_emits_a_checkable_solution(tmp_path):
    code, sol = run_json(["construct", "canonical-r", FIX_A])
    assert code == 0
    assert sol["kind"] == "solution"
    assert sorted(sol) == ["algebra", "kind", "metadata", "r"]
    assert sol["algebra"]["complex"]["n0"] == 2
    # the element swaps the summand with its mirrored dual
    assert sol["r"]["r01"] == [["0", "1"], ["1", "0"]]
    assert sol["r"]["r10"] == [["0", "1"], ["1", "0"]]
    path = write(tmp_path / "sol.json", sol)
    code, report = run_json(["check", "cybe", path])
    assert code == 0 and report["status"] == "pass"
    code, report = run_json(["check", "cybe-oop-equiv", path])
    assert code == 0 and report["agree"] is True


def test_construct_manin_with_one_input_matches_the_semidirect_double():
    code_m, manin = run_json(["construct", "manin", FIX_B])
    code_s, semi = run_json(["construct", "semidirect", FIX_B])
    assert code_m == 0 and code_s == 0
    for key in ("kind", "complex", "M00", "M01", "M10"):
        assert manin[key] == semi[key]
    assert manin["metadata"]["provenance"]["verb"] == "manin"


def test_construct_semidirect_extends_by_the_coregular_representation(tmp_path):
    out_path = str(tmp_path / "semi.json")
    code, _ = run(["construct", "semidirect", FIX_B, "--output", out_path])
    assert code == 0
    obj = json.loads(Path(out_path).read_text())
    assert obj["complex"]["n0"] == 2 and obj["complex"]["n1"] == 2
    code, _ = run(["verify", "prelie2", out_path])
    assert code == 0


def test_construct_dual_reproduces_the_dual_structure_tensors(tmp_path):
    amb_path, astar_path, cb_path = canonical_double_files(tmp_path)
    code, dual = run_json(["construct", "dual", amb_path, cb_path])
    assert code == 0
    astar = json.loads(Path(astar_path).read_text())
    for key in ("complex", "M00", "M01", "M10"):
        assert dual[key] == astar[key]


def test_construct_dual_rejects_a_non_closed_cobracket(tmp_path):
    amb_path, _, cb_path = canonical_double_files(tmp_path)
    cb = json.loads(Path(cb_path).read_text())
    cb["alpha1"] = [[["1", "0"], ["0", "0"]], cb["alpha1"][1]]
    bad_path = write(tmp_path / "badcb.json", cb)
    code, out = run_json(["construct", "dual", amb_path, bad_path])
    assert code == 1
    assert "closure" in out["error"]
    assert out["report"]["status"] == "fail"


def test_construct_collapse_flattens_to_one_grade():
    code, flat = run_json(["construct", "collapse", FIX_C])
    assert code == 0
    assert flat["kind"] == "prelie"
    assert flat["n"] == 4


def test_construct_matched_assemble_doubles_the_pair(tmp_path):
    amb_path, astar_path, _ = canonical_double_files(tmp_path)
    out_path = str(tmp_path / "double.json")
    code, _ = run(
        ["construct", "matched-assemble", amb_path, astar_path, "--output", out_path]
    )
    assert code == 0
    obj = json.loads(Path(out_path).read_text())
    assert obj["complex"]["n0"] == 4 and obj["complex"]["n1"] == 4
    code, _ = run(["verify", "prelie2", out_path])
    assert code == 0


def test_construct_prelie_from_symplectic(tmp_path):
    g_path = write(tmp_path / "g.json", _algebra_obj("lie2", abelian(2, 2)))
    form = {
        "omega1": Mat([[0, 2], [-2, 0]]).to_lists(),
        "omega2": Mat([[1, 0], [3, 1]]).to_lists(),
    }
    form_path = write(tmp_path / "form.json", form)
    code, obj = run_json(["construct", "prelie-from-symplectic", g_path, form_path])
    assert code == 0
    assert obj["kind"] == "prelie2"
    # an abelian bracket induces the zero product whatever the form
    assert obj["M00"] == [] and obj["M01"] == [] and obj["M10"] == []


def test_construct_prelie_from_rb_weight_zero(tmp_path):
    a_path = write(tmp_path / "a.json", _algebra_obj("assoc2", dual_numbers_tower()))
    nil = [["0", "0"], ["1", "0"]]
    op_path = write(tmp_path / "op.json", {"P0": nil, "P1": nil})
    code, _ = run(["check", "rb-weight", a_path, op_path, "--weight", "0"])
    assert code == 0
    out_path = str(tmp_path / "rb0.json")
    code, _ = run(["construct", "prelie-from-rb0", a_path, op_path, "--output", out_path])
    assert code == 0
    code, _ = run(["verify", "prelie2", out_path])
    assert code == 0


def test_construct_prelie_from_rb_weight_one(tmp_path):
    a_path = write(tmp_path / "a.json", _algebra_obj("assoc2", assoc_point()))
    op_path = write(tmp_path / "op.json", {"P0": [["0"]], "P1": [["0"]]})
    code, _ = run(["check", "rb-weight", a_path, op_path, "--weight", "1"])
    assert code == 0
    code, obj = run_json(["construct", "prelie-from-rb1", a_path, op_path])
    assert code == 0
    # zero operator at weight one negates the associative product
    assert obj["M00"] == [{"i": 0, "j": 0, "k": 0, "v": "-1"}]


def test_construct_prelie_from_rb_weight_one_rejects_a_non_operator(tmp_path):
    a_path = write(tmp_path / "a.json", _algebra_obj("assoc2", assoc_point()))
    op_path = write(tmp_path / "op.json", {"P0": [["-1"]], "P1": [["-1"]]})
    code, _ = run(["check", "rb-weight", a_path, op_path, "--weight", "1"])
    assert code == 1
    code, out = run_json(["construct", "prelie-from-rb1", a_path, op_path])
    assert code == 1
    laws = {v["law"] for v in out["report"]["violations"]}
    assert laws == {"rb-weight-00", "rb-weight-01", "rb-weight-10"}
    assert all(v["residual"] == ["2"] for v in out["report"]["violations"])


def test_construct_prelie_from_derivation_scales_the_product(tmp_path):
    a_path = write(tmp_path / "a.json", _algebra_obj("assoc2", dual_numbers_tower()))
    zero = Mat.zeros(2, 2).to_lists()
    op_path = write(tmp_path / "op.json", {"P0": zero, "P1": zero})
    code, _ = run(["check", "derivation", a_path, op_path])
    assert code == 0
    code, obj = run_json(
        ["construct", "prelie-from-derivation", a_path, op_path, "--scalar", "2"]
    )
    assert code == 0
    assert obj["M00"] == [
        {"i": 0, "j": 0, "k": 0, "v": "2"},
        {"i": 0, "j": 1, "k": 1, "v": "2"},
        {"i": 1, "j": 0, "k": 1, "v": "2"},
    ]


def test_construct_prelie_from_oop_and_solution(tmp_path):
    g_path = write(tmp_path / "g.json", _algebra_obj("lie2", abelian(2, 2)))
    ident = Mat.identity(2).to_lists()
    t_path = write(tmp_path / "t.json", {"f0": ident, "f1": ident})
    code, obj = run_json(["construct", "prelie-from-oop", g_path, t_path])
    assert code == 0
    assert obj["kind"] == "prelie2" and obj["M00"] == []
    code, sol = run_json(["construct", "solution-from-oop", g_path, t_path])
    assert code == 0
    assert sol["kind"] == "solution"
    assert sol["algebra"]["complex"]["n0"] == 4
    sol_path = write(tmp_path / "sol.json", sol)
    code, _ = run(["check", "cybe", sol_path])
    assert code == 0


# check


def test_check_oop_accepts_the_zero_operator(tmp_path):
    g_path = write(tmp_path / "g.json", _algebra_obj("lie2", abelian(2, 2)))
    zero = Mat.zeros(2, 2).to_lists()
    t_path = write(tmp_path / "t.json", {"f0": zero, "f1": zero})
    code, report = run_json(["check", "oop", g_path, t_path])
    assert code == 0
    assert report["status"] == "pass"


def test_check_parakahler_splits_the_abelian_pair(tmp_path):
    g_path = write(tmp_path / "g.json", _algebra_obj("lie2", abelian(2, 2)))
    form = {
        "omega1": Mat.zeros(2, 2).to_lists(),
        "omega2": Mat([[0, 1], [1, 0]]).to_lists(),
    }
    form_path = write(tmp_path / "form.json", form)
    hp_path = write(tmp_path / "hp.json", {"span0": [["1", "0"]], "span1": [["1", "0"]]})
    hm_path = write(tmp_path / "hm.json", {"span0": [["0", "1"]], "span1": [["0", "1"]]})
    code, report = run_json(["check", "parakahler", g_path, form_path, hp_path, hm_path])
    assert code == 0
    assert report["status"] == "pass"


def test_check_pair_verbs_accept_the_canonical_double(tmp_path):
    amb_path, astar_path, cb_path = canonical_double_files(tmp_path)
    for verb in ("bialgebra", "matched-pair", "manin-triple", "equivalences"):
        code, report = run_json(["check", verb, amb_path, astar_path])
        assert code == 0, verb
        assert report["status"] == "pass", verb
    code, report = run_json(["check", "equivalences", amb_path, astar_path])
    assert report["agree"] is True
    for key in ("bialgebra", "lie2-matched-pair", "parakahler", "prelie2-matched-pair"):
        assert report[key] is True
    code, report = run_json(["check", "cocycle", amb_path, cb_path])
    assert code == 0 and report["status"] == "pass"


def test_check_bialgebra_reports_a_mismatched_pair(tmp_path):
    amb_path, _, _ = canonical_double_files(tmp_path)
    code, report = run_json(["check", "bialgebra", amb_path, amb_path])
    assert code == 1
    assert report["status"] == "fail"
    # the pairing against itself breaks the two cocycle legs only
    assert report["algebra"] is True and report["dual-algebra"] is True
    assert report["cocycle-on-algebra"] is False
    assert report["cocycle-on-dual"] is False


def test_check_cybe_accepts_algebra_and_element_inputs(tmp_path):
    code, sol = run_json(["construct", "canonical-r", FIX_B])
    assert code == 0
    alg_path = write(tmp_path / "alg.json", dict(sol["algebra"], kind="prelie2"))
    r_path = write(tmp_path / "r.json", sol["r"])
    code, report = run_json(["check", "cybe", alg_path, r_path])
    assert code == 0 and report["status"] == "pass"
    bad = dict(sol["r"])
    bad["r01"] = [["1", "0"], ["0", "0"]]
    bad["r10"] = [["0", "0"], ["0", "0"]]
    bad_path = write(tmp_path / "badr.json", bad)
    code, report = run_json(["check", "cybe", alg_path, bad_path])
    assert code == 1
    laws = {v["law"] for v in report["violations"]}
    assert laws == {"cybe-chain", "cybe-symmetry"}


# random


def test_random_families_emit_valid_deterministic_instances(tmp_path):
    for family in ("abelian", "cone", "semidirect", "matched", "oop-induced"):
        code, first = run(["random", family, "--seed", "3"])
        assert code == 0, family
        code, second = run(["random", family, "--seed", "3"])
        assert first == second, family
        obj = json.loads(first)
        assert obj["kind"] == "prelie2"
        path = write(tmp_path / "draw.json", obj)
        code, _ = run(["verify", "prelie2", path])
        assert code == 0, family
        code, other = run(["random", family, "--seed", "4"])
        assert code == 0


def test_random_metadata_records_the_recipe():
    code, obj = run_json(["random", "semidirect", "--seed", "9"])
    assert code == 0
    assert obj["metadata"]["name"] == "semidirect-s9"
    prov = obj["metadata"]["provenance"]
    assert prov["family"] == "semidirect" and prov["seed"] == 9


def test_random_abelian_honours_dims():
    code, obj = run_json(["random", "abelian", "--dims", "3,2"])
    assert code == 0
    assert obj["complex"]["n0"] == 3 and obj["complex"]["n1"] == 2
    assert obj["M00"] == [] and obj["M01"] == [] and obj["M10"] == []


def test_random_cone_matches_its_frozen_seed():
    code, obj = run_json(["random", "cone", "--dims", "2", "--seed", "1"])
    assert code == 0
    assert obj["complex"]["n0"] == 2
    assert obj["complex"]["d"] == [["1", "0"], ["0", "1"]]
    assert obj["M00"] == [{"i": 1, "j": 1, "k": 0, "v": "-2"}]
    assert obj["M00"] == obj["M01"] == obj["M10"]


def test_random_cone_rejects_unsupported_dims():
    code, out = run_json(["random", "cone", "--dims", "3"])
    assert code == 2
    assert "cone" in out["error"]


def test_generator_pool_yields_valid_instances_across_seeds():
    # 500 draws across all families; every draw must pass the verifier
    plan = [
        ("abelian", 150),
        ("cone", 150),
        ("semidirect", 100),
        ("oop-induced", 60),
        ("matched", 40),
    ]
    assert sum(n for _, n in plan) == 500
    for family, count in plan:
        for seed in range(count):
            algebra = generate(family, None, seed)
            assert verify_prelie2(algebra).ok, (family, seed)


def test_generator_rejects_an_unknown_family():
    with pytest.raises(CliError):
        generate("spiral", None, 0)


# flags and entry points


def test_output_flag_writes_the_same_bytes_as_stdout(tmp_path):
    code, streamed = run(["construct", "subadjacent", FIX_C])
    assert code == 0
    out_path = tmp_path / "sub.json"
    code, silent = run(["construct", "subadjacent", FIX_C, "--output", str(out_path)])
    assert code == 0 and silent == ""
    assert out_path.read_text(encoding="utf-8") == streamed


def test_convention_flip_flag_is_scoped_to_the_command():
    assert graded.DTENSOR_FLIP is False
    code, _ = run(["verify", "prelie2", FIX_A, "--convention-flip-dtensor"])
    assert code == 0
    assert graded.DTENSOR_FLIP is False


def test_console_script_runs_the_verifier():
    exe = shutil.which("twoterm")
    assert exe is not None
    done = subprocess.run(
        [exe, "verify", "prelie2", FIX_B], capture_output=True, text=True
    )
    assert done.returncode == 0
    assert json.loads(done.stdout)["status"] == "pass"
