import io
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from helpers import diamond, random_plane_graphs, random_trinities, theta
from trinities import formats
from trinities.cli import run
from trinities.errors import FormatError
from trinities.plane_structures import bidirect, build_trinity_from_plane_graph
from trinities.sandpile_core import ChipConfig, enumerate_arborescences

DATA = Path(__file__).resolve().parent.parent / "data"


def strip_comments(text):
    return "".join(line + "\n" for line in text.splitlines() if line and not line.startswith("#"))


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


# --- parsing and round trips ---------------------------------------------------------

@pytest.mark.parametrize("name", sorted(p.name for p in DATA.iterdir()))
def test_data_files_round_trip(name):
    text = strip_comments((DATA / name).read_text())
    kind = formats.detect_kind(text)
    parse, dump = {
        "planegraph": (formats.parse_plane_graph, formats.serialize_plane_graph),
        "planedigraph": (formats.parse_plane_digraph, formats.serialize_plane_digraph),
        "trinity": (formats.parse_trinity, formats.serialize_trinity),
        "chips": (formats.parse_chips, formats.serialize_chips),
    }[kind]
    assert dump(parse(text)) == text


def test_generated_structures_round_trip():
    for g in random_plane_graphs(15, seed=4):
        text = formats.serialize_plane_graph(g)
        assert formats.serialize_plane_graph(formats.parse_plane_graph(text)) == text
        d = bidirect(g)
        text = formats.serialize_plane_digraph(d)
        assert formats.serialize_plane_digraph(formats.parse_plane_digraph(text)) == text
    for _, t in random_trinities(15, seed=4):
        text = formats.serialize_trinity(t)
        assert formats.serialize_trinity(formats.parse_trinity(text)) == text


def test_records_round_trip():
    for text in ("hypertree side=E: e1=0 e2=2\n", "arborescence root=v1 dir=in: a b\n", "chips: v1=2 v2=-2\n"):
        kind = formats.detect_kind(text)
        if kind == "hypertree":
            side, f = formats.parse_hypertree(text)
            assert formats.serialize_hypertree(side, f) == text
        elif kind == "arborescence":
            assert formats.serialize_arborescence(formats.parse_arborescence(text)) == text
        else:
            assert formats.serialize_chips(formats.parse_chips(text)) == text


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True), st.integers(-50, 50), min_size=1))
def test_chips_round_trip_property(vals):
    text = formats.serialize_chips(ChipConfig(vals))
    assert formats.serialize_chips(formats.parse_chips(text)) == text
    assert formats.parse_chips(text).degree == sum(vals.values())


def test_k2_planedigraph():
    d = formats.parse_plane_digraph((DATA / "k2.planedigraph").read_text())
    assert len(d.vertices) == 2 and len(d.arcs) == 2


def test_chips_degree_zero():
    assert formats.parse_chips("chips: v1=2 v2=-2").degree == 0


def test_dangling_triangle_edge_is_a_semantic_error():
    text = "trinity v1\nnode a R\nnode b E\nedge x: a b\ntriangle: x y x W\n"
    with pytest.raises(FormatError) as exc:
        formats.parse_trinity(text)
    assert exc.value.line == 5 and exc.value.column == 13
    assert "unknown edge 'y'" in str(exc.value)


def test_invalid_trinity_names_the_invariant():
    text = "trinity v1\nnode a R\nnode b E\nedge x: a b\n"
    with pytest.raises(FormatError, match="invalid trinity"):
        formats.parse_trinity(text)
    assert formats.parse_trinity(text, validate=False).validate()


@pytest.mark.parametrize("text, line, column", [
    ("planegraph v2\n", 1, 1),
    ("planegraph v1\nvertex v1 a\n", 2, 8),
    ("planegraph v1\nvertex v1: a\nvertex v2: a\n", 3, 12),
    ("planegraph v1\nvertex v1: a\nedge e: a b\n", 3, 11),
    ("planegraph v1\nvertex v1: a b\nedge e: a\n", 3, 10),
    ("planegraph v1\nvertex v1: a b\nvertx e: a b\n", 3, 1),
    ("trinity v1\nnode a Q\n", 2, 8),
    ("trinity v1\nnode a R\nedge x: a zz\n", 3, 11),
    ("chips: v1=x\n", 1, 8),
    ("hypertree side=E: e1=-1\n", 1, 19),
])
def test_syntax_errors_carry_positions(text, line, column):
    kind = formats.detect_kind(text) if not text.startswith("planegraph v2") else "planegraph"
    parser = {"planegraph": formats.parse_plane_graph, "trinity": formats.parse_trinity,
              "chips": formats.parse_chips, "hypertree": formats.parse_hypertree}[kind]
    with pytest.raises(FormatError) as exc:
        parser(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_unplaced_dart_is_reported():
    with pytest.raises(FormatError, match="belongs to no edge"):
        formats.parse_plane_graph("planegraph v1\nvertex v1: a b\nedge e: a a2\nvertex v2: a2 c\n")


def test_load_trinity_accepts_all_structure_formats():
    for name in ("theta.planegraph", "theta.trinity", "k2.planedigraph"):
        t = formats.load_trinity((DATA / name).read_text())
        assert not t.validate()
    with pytest.raises(FormatError):
        formats.load_trinity("chips: v1=0\n")


def test_dot_export_is_deterministic():
    t = build_trinity_from_plane_graph(theta())
    dot = formats.trinity_to_dot(t)
    assert dot == formats.trinity_to_dot(build_trinity_from_plane_graph(theta()))
    assert dot.startswith("graph trinity {") and "style=dashed" in dot and "fillcolor=violet" in dot


# --- command line ------------------------------------------------------------------

def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_cli_group():
    assert cli("group", "--color", "V", DATA / "theta.trinity") == (0, "order=3 factors=[3]\n", "")
    for color in "VER":
        code, out, _ = cli("group", "--color", color, DATA / "diamond.planegraph")
        assert code == 0 and out == "order=8 factors=[8]\n"  # C4 plus a chord


def test_cli_hypertrees_bip7():
    code, out, _ = cli("hypertrees", "--class", "E", "--host", "R", DATA / "bip7.trinity")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7 and len(set(lines)) == 7
    assert all(line.startswith("hypertree side=E:") for line in lines)
    assert cli("hypertrees", "--class", "E", "--host", "E", DATA / "bip7.trinity")[0] == 1


def test_cli_jaeger_bip7():
    code, out, _ = cli("jaeger", "--base", "v1:e1:x6", DATA / "bip7.trinity")
    assert code == 0 and len(out.splitlines()) == 7
    assert "x2 x3 x4 x5 x7 x8 | hypertree side=E: e1=0 e2=2 e3=0 e4=0" in out.splitlines()


def test_cli_tour_diamond():
    code, out, _ = cli("tour", "--tree", "e1,e3,e5", "--base", "v1:v2:e1", DATA / "diamond.planegraph")
    assert code == 0
    assert out == ("v1e1, v2e2, v2e5, v4e3, v3e2, v3e3, v4e4, v4e5, v2e1, v1e4\n"
                   "chips: v1=0 v2=1 v3=0 v4=1\n")


def test_cli_trinity_build_and_validate(tmp_path):
    code, out, _ = cli("trinity", "build", "--from", "planegraph", DATA / "theta.planegraph")
    assert code == 0 and out == strip_comments((DATA / "theta.trinity").read_text())
    code, out, _ = cli("trinity", "build", "--from", "bipartite", "--violet", "v1,v2,v3", DATA / "bip7.planegraph")
    assert code == 0 and out == strip_comments((DATA / "bip7.trinity").read_text())
    code, out, _ = cli("trinity", "build", "--from", "digraph", DATA / "k2.planedigraph")
    assert code == 0 and formats.parse_trinity(out)
    assert cli("trinity", "build", "--from", "bipartite", DATA / "bip7.planegraph")[0] == 1

    code, out, _ = cli("trinity", "validate", DATA / "diamond.trinity")
    assert code == 0 and out.startswith("valid: ")
    bad = write(tmp_path, "bad.trinity", "trinity v1\nnode a R\nnode b E\nedge x: a b\n")
    code, out, _ = cli("trinity", "validate", bad)
    assert code == 1 and out.startswith("invalid: ")


def test_cli_bernardi_act(tmp_path):
    tri = DATA / "diamond.trinity"
    f = write(tmp_path, "f.hypertree", "hypertree side=E: e1=1 e2=0 e3=1 e4=0 e5=1\n")
    zero = write(tmp_path, "zero.chips", "chips: v1=0\n")
    assert cli("bernardi", "act", "--chips", zero, "--hypertree", f, tri)[1] == f.read_text()
    canonical = cli("bernardi", "act", "--chips", DATA / "diamond.chips", "--hypertree", f, tri)
    assert canonical[0] == 0 and canonical[1] != f.read_text()
    for base in ("v1:e1:e1+", "v4:e5:e5-"):
        assert cli("bernardi", "act", "--chips", DATA / "diamond.chips", "--hypertree", f, "--base", base, tri) \
            == canonical
    wrong = write(tmp_path, "v.hypertree", "hypertree side=V: v1=1\n")
    assert cli("bernardi", "act", "--chips", zero, "--hypertree", wrong, tri)[0] == 1
    odd = write(tmp_path, "odd.chips", "chips: v1=1\n")
    code, _, err = cli("bernardi", "act", "--chips", odd, "--hypertree", f, tri)
    assert code == 1 and "DegreeNonzero" in err


def test_cli_rotor_act(tmp_path):
    d = formats.parse_plane_digraph((DATA / "k2.planedigraph").read_text())
    (a,) = enumerate_arborescences(d, "v1")
    arb = write(tmp_path, "a.arb", formats.serialize_arborescence(a))
    chips = write(tmp_path, "x.chips", "chips: v1=-1 v2=1\n")
    assert cli("rotor", "act", "--root", "v1", "--chips", chips, "--arb", arb, DATA / "k2.planedigraph") \
        == (0, arb.read_text(), "")
    g = diamond()
    dv = bidirect(g)
    arbs = enumerate_arborescences(dv, "v1")
    arb = write(tmp_path, "b.arb", formats.serialize_arborescence(arbs[0]))
    planar = write(tmp_path, "diamond.planedigraph", formats.serialize_plane_digraph(dv))
    code, out, _ = cli("rotor", "act", "--root", "v1", "--chips", DATA / "diamond.chips", "--arb", arb, planar)
    assert code == 0 and formats.parse_arborescence(out) in arbs
    code, _, err = cli("rotor", "act", "--root", "v2", "--chips", chips, "--arb", arb, planar)
    assert code == 1 and "InvalidArborescence" in err


def test_cli_export_dot():
    code, out, _ = cli("export", "dot", DATA / "theta.trinity")
    assert code == 0 and out == formats.trinity_to_dot(formats.load_trinity((DATA / "theta.trinity").read_text()))


def test_cli_errors(tmp_path):
    code, _, err = cli("group", tmp_path / "missing.trinity")
    assert code == 1 and "cannot read" in err
    bad = write(tmp_path, "bad.trinity", "trinity v1\nnode a R\nedge x: a zz\n")
    code, _, err = cli("group", bad)
    assert code == 1 and f"{bad}: line 3, column 11" in err
    assert cli("frobnicate")[0] == 1
    assert cli("group", "--color", "Q", DATA / "theta.trinity")[0] == 1


def test_cli_output_is_deterministic():
    argv = ("jaeger", "--base", "v1:e1:x6", DATA / "bip7.trinity")
    assert cli(*argv) == cli(*argv)
    argv = ("verify", "--seed", "3", "--instances", "4", "--max-vertices", "4", "--max-edges", "6")
    first, second = cli(*argv), cli(*argv)
    assert first[0] == 0 and first[1] == second[1]


def test_cli_verify_small_run_and_seed_variable(monkeypatch):
    code, out, _ = cli("verify", "--seed", "5", "--instances", "6", "--max-vertices", "5",
                       "--check", "A_W structure", "--check", "representative theorem")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "seed=5 instances=6 max-vertices=5 max-edges=12"
    assert len(lines) == 5 and lines[-1] == "all checks passed"
    monkeypatch.setenv("TRINITY_SEED", "5")
    assert cli("verify", "--instances", "6", "--max-vertices", "5",
               "--check", "A_W structure", "--check", "representative theorem") == (code, out, "")
    monkeypatch.setenv("TRINITY_SEED", "x")
    assert cli("verify", "--instances", "1")[0] == 1
    assert cli("verify", "--seed", "1", "--check", "no such check")[0] == 1


def test_cli_verify_reports_failures_with_exit_2(monkeypatch, tmp_path):
    from trinities import verification
    from trinities.verification import CheckFailed

    def broken(c):
        raise CheckFailed("forced")

    monkeypatch.setitem(verification.CHECKS, "A_W structure", broken)
    code, out, _ = cli("verify", "--seed", "1", "--instances", "3", "--max-vertices", "4", "--check", "A_W structure")
    assert code == 2 and "FAIL" in out and "# counterexample from seed 1 instance" in out
    block = out[out.index("# counterexample"):]
    rerun = write(tmp_path, "ce.txt", block)
    code, out, _ = cli("verify", "--check", "A_W structure", rerun)
    assert code == 2
    monkeypatch.undo()
    assert cli("verify", "--check", "A_W structure", rerun)[0] == 0


def test_cli_verify_file_and_acceptance_run():
    assert cli("verify", DATA / "diamond.planegraph")[0] == 0
    code, out, _ = cli("verify", "--seed", "7", "--instances", "50", "--max-vertices", "6")
    assert code == 0 and out.endswith("all checks passed\n")
    assert " FAIL " not in out
