import json

import pytest

import finitetop as ft
from finitetop import formats
from finitetop.cli import main
from finitetop.errors import FormatError

DIV6_POSET = """\
# divisibility on the divisors of 6
points: 1 2 3 6
le: 1 2
le: 1 3
le: 2 6
le: 3 6
"""

DIV6_SPACE = """\
points: 1 2 3 6
open: 6
open: 2 6
open: 3 6
open: 2 3 6
open: 2 3 6   # duplicates are dropped silently
"""

UNFIXABLE_FAMILY = """\
points: 0 1 2
member: 0 1 2
member: 0 1
member: 1 2
member:
"""

WEB5 = """\
0, 1, 0, 0, 0
1/2, 0, 1/2, 0, 0
1/3, 1/3, 0, 0, 1/3
1, 0, 0, 0, 0
0, 1/3, 1/3, 1/3, 0
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- loaders ------------------------------------------------------------------


def test_load_space_dedupes_and_validates(divisors):
    sp = formats.load_space(DIV6_SPACE)
    assert sp.opens == divisors.opens


def test_space_round_trip(divisors):
    assert formats.load_space(formats.dump_space(divisors)) == divisors


def test_load_space_rejects_duplicate_points():
    with pytest.raises(FormatError):
        formats.load_space("points: a a\n")


def test_load_poset_closure_and_antisymmetry():
    order = formats.load_poset(DIV6_POSET)
    assert order.is_poset
    assert order.le(0, 3)  # 1 <= 6 through transitive closure
    loop = formats.load_poset("points: a b\nle: a b\nle: b a\n")
    assert not loop.is_poset


def test_load_closure_table_requires_all_entries():
    with pytest.raises(FormatError) as err:
        formats.load_closure_table("points: a b\ncl: -> \ncl: a -> a\ncl: b -> b\n")
    assert "missing" in str(err.value)


def test_load_map_errors():
    with pytest.raises(FormatError):
        formats.load_map("a b\n")
    with pytest.raises(FormatError):
        formats.load_map("a -> b\na -> c\n")


def test_load_matrix_fractions():
    rows = formats.load_matrix("0, 1/2, 1/2\n1/3, 1/3, 1/3\n1, 0, 0\n")
    assert rows[0][1] == 0.5
    assert abs(rows[1][0] - 1 / 3) < 1e-15


def test_load_theory():
    theory = formats.load_theory("p -> q\n# a comment\n~q\n")
    assert theory.vars == ("p", "q")
    assert len(theory.formulas) == 2


# -- CLI: exit codes ------------------------------------------------------------


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "space", "report", "--in", "/nonexistent.top")
    assert code == 2 and "cannot read" in err


def test_bad_syntax_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.top"
    bad.write_text("points: a\nnonsense line\n")
    code, _, err = run(capsys, "space", "report", "--in", str(bad))
    assert code == 2


def test_base_rejection_is_validation_failure(tmp_path, capsys):
    fam = tmp_path / "overlap.fam"
    fam.write_text(UNFIXABLE_FAMILY)
    code, _, err = run(capsys, "check", "base", "--in", str(fam))
    assert code == 1
    assert "'x': '1'" in err


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["space", "explode"]) == 2


# -- CLI: reports ------------------------------------------------------------------


@pytest.fixture()
def div6_file(tmp_path):
    p = tmp_path / "div6.top"
    p.write_text(DIV6_SPACE)
    return str(p)


def test_report_is_deterministic(div6_file, capsys):
    code1, out1, _ = run(capsys, "space", "report", "--in", div6_file)
    code2, out2, _ = run(capsys, "space", "report", "--in", div6_file)
    assert code1 == code2 == 0
    assert out1 == out2


def test_report_json_parses(div6_file, capsys):
    code, out, _ = run(capsys, "space", "report", "--in", div6_file, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["points"] == ["1", "2", "3", "6"]
    assert data["t0"] is True and data["t2"] is False
    assert len(data["subsets"]) == 15


def test_emit_round_trip(tmp_path, capsys, divisors):
    poset_file = tmp_path / "div6.pos"
    poset_file.write_text(DIV6_POSET)
    code, out, _ = run(capsys, "build", "from-poset", "--in", str(poset_file))
    assert code == 0
    built = tmp_path / "built.top"
    built.write_text(out)
    code, emitted, _ = run(capsys, "space", "report", "--in", str(built), "--emit")
    assert code == 0
    assert formats.load_space(emitted) == divisors


def test_check_subbase_emits_topology(tmp_path, capsys, divisors):
    fam = tmp_path / "sub.fam"
    fam.write_text("points: 1 2 3 6\nmember: 2 6\nmember: 3 6\n")
    code, out, _ = run(capsys, "check", "subbase", "--in", str(fam))
    assert code == 0
    assert formats.load_space(out).opens == divisors.opens


def test_map_commands(tmp_path, capsys, div6_file):
    sierp = tmp_path / "s.top"
    sierp.write_text("points: 0 1\nopen: 1\n")
    good = tmp_path / "f.map"
    good.write_text("1 -> 0\n2 -> 0\n3 -> 0\n6 -> 1\n")
    code, out, _ = run(capsys, "map", "continuity", "--src", div6_file, "--dst", str(sierp), "--map", str(good))
    assert code == 0 and "yes" in out
    bad = tmp_path / "g.map"
    bad.write_text("1 -> 1\n2 -> 0\n3 -> 0\n6 -> 0\n")
    code, out, _ = run(capsys, "map", "continuity", "--src", div6_file, "--dst", str(sierp), "--map", str(bad))
    assert code == 1 and "witness open {1}" in out
    code, out, _ = run(capsys, "map", "homeo", "--src", div6_file, "--dst", div6_file, "--map", str(bad))
    assert code == 2  # map is not total on the divisors carrier... labels mismatch
    ident = tmp_path / "id.map"
    ident.write_text("1 -> 1\n2 -> 2\n3 -> 3\n6 -> 6\n")
    code, out, _ = run(capsys, "map", "homeo", "--src", div6_file, "--dst", div6_file, "--map", str(ident))
    assert code == 0 and "yes" in out


def test_build_commands(tmp_path, capsys, div6_file):
    code, out, _ = run(capsys, "build", "subspace", "--in", div6_file, "--keep", "2 3 6")
    assert code == 0 and out.startswith("points: 2 3 6")
    eq = tmp_path / "eq.eq"
    eq.write_text("block: 1\nblock: 2 3\nblock: 6\n")
    code, out, _ = run(capsys, "build", "quotient", "--in", div6_file, "--classes", str(eq))
    assert code == 0 and "points: 1 23 6" in out
    sierp = tmp_path / "s.top"
    sierp.write_text("points: 0 1\nopen: 1\n")
    code, out, _ = run(capsys, "build", "product", "--in", str(sierp), "--with", str(sierp))
    assert code == 0
    assert len(formats.load_space(out).opens) == 6
    code, _, err = run(capsys, "build", "onepoint", "--in", str(sierp))
    assert code == 1 and "Hausdorff" in err
    disc = tmp_path / "d.top"
    disc.write_text("points: a b\nopen: a\nopen: b\n")
    code, out, _ = run(capsys, "build", "onepoint", "--in", str(disc), "--label", "w")
    assert code == 0
    assert len(formats.load_space(out).opens) == 8
    scott_in = tmp_path / "chain.pos"
    scott_in.write_text("points: a b c\nle: a b\nle: b c\n")
    code, out, _ = run(capsys, "build", "scott", "--in", str(scott_in))
    assert code == 0 and len(formats.load_space(out).opens) == 4
    clo = tmp_path / "ident.clo"
    clo.write_text("points: a b\ncl: -> \ncl: a -> a\ncl: b -> b\ncl: a b -> a b\n")
    code, out, _ = run(capsys, "build", "from-closure", "--in", str(clo))
    assert code == 0 and len(formats.load_space(out).opens) == 4
    two = tmp_path / "two.top"
    two.write_text("points: x\nopen: x\n")
    code, out, _ = run(capsys, "build", "sum", "--in", str(disc), "--with", str(two))
    assert code == 0 and "points: a b x" in out


def test_locale_commands(div6_file, capsys):
    code, out, _ = run(capsys, "locale", "points", "--in", div6_file, "--json")
    assert code == 0 and json.loads(out)["count"] == 4
    code, out, _ = run(capsys, "locale", "sober", "--in", div6_file, "--json")
    assert code == 0 and json.loads(out)["sober"] is True
    code, out, _ = run(capsys, "locale", "hofmann-mislove", "--in", div6_file, "--json")
    data = json.loads(out)
    assert code == 0 and data["bijection_holds"] and data["filter_count"] == 5
    code, out, _ = run(capsys, "locale", "implication", "--in", div6_file, "--a", "2 6", "--b", "3 6")
    assert code == 0 and "implication: {3 6}" in out


def test_metric_commands(tmp_path, capsys):
    m = tmp_path / "line.csv"
    m.write_text("0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n")
    code, out, _ = run(capsys, "metric", "net", "--in", str(m), "--labels", "0 1 2 3", "--eps", "1.5")
    assert code == 0 and "centers: 0 2" in out
    code, out, _ = run(capsys, "metric", "hausdorff", "--in", str(m), "--labels", "0 1 2 3", "--a", "0 1", "--b", "0 2")
    assert code == 0 and "hausdorff: 1" in out
    code, out, _ = run(capsys, "metric", "quotient", "--in", str(m))
    assert code == 0
    chain = tmp_path / "c.chn"
    chain.write_text("points: a b c\nrelation 1:\npair: a b\n")
    code, out, _ = run(capsys, "metric", "chain", "--in", str(chain), "--json")
    assert code == 0 and json.loads(out)["squeeze_verified"] is True
    ranks = tmp_path / "r.rnk"
    ranks.write_text("rank: w1 1\nrank: w2 2\n")
    code, out, _ = run(capsys, "metric", "ultrarank", "--in", str(ranks), "--a", "w1", "--b", "w2")
    assert code == 0 and "distance: 0.5" in out


def test_solve_commands(tmp_path, capsys):
    web = tmp_path / "web5.csv"
    web.write_text(WEB5)
    code, out, _ = run(capsys, "solve", "pagerank", "--in", web.as_posix(), "--tol", "1e-9")
    assert code == 0
    vals = [float(v) for v in out.split(":")[1].split()]
    assert abs(vals[0] - 0.293) < 0.002
    code, out, _ = run(capsys, "solve", "fixpoint", "--fn", "cos", "--x0", "0", "--tol", "1e-9")
    assert code == 0 and "0.739085" in out
    perm = tmp_path / "perm.csv"
    perm.write_text("0,1\n1,0\n")
    code, out, _ = run(capsys, "solve", "pagerank", "--in", perm.as_posix())
    assert code == 0  # uniform start is stationary for permutations


def test_approx_commands(capsys):
    code, out, _ = run(capsys, "approx", "sqrt", "--n", "2", "--grid", "0,0.25,1")
    assert code == 0 and "0.875" in out
    code, out, _ = run(capsys, "approx", "kernel-ratio", "--n", "20", "--delta", "0.5", "--json")
    data = json.loads(out)
    assert code == 0 and data["ratio_below_bound"] is True
    code, out, _ = run(capsys, "approx", "weierstrass", "--fn", "abs-half", "--n", "4", "--grid", "0.5")
    assert code == 0


def test_logic_commands(tmp_path, capsys):
    thy = tmp_path / "t.thy"
    thy.write_text("p | q\n~p\n")
    code, out, _ = run(capsys, "logic", "consistent", "--in", str(thy))
    assert code == 0 and "True" in out
    code, out, _ = run(capsys, "logic", "model", "--in", str(thy))
    assert code == 0 and "p=bot" in out and "q=top" in out
    code, out, _ = run(capsys, "logic", "algebra", "--in", str(thy), "--json")
    assert code == 0 and json.loads(out)["elements"] == 2
    code, out, _ = run(capsys, "logic", "stone", "--in", str(thy), "--json")
    assert code == 0 and json.loads(out)["ultrafilters"] == 1
    bad = tmp_path / "bad.thy"
    bad.write_text("p\n~p\n")
    code, out, _ = run(capsys, "logic", "consistent", "--in", str(bad))
    assert code == 1
