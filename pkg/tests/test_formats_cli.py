import json

import numpy as np
import pytest

from tripatch import cli
from tripatch.blossom import PolySurface
from tripatch.core import ControlNet
from tripatch.demos import ENNEPER, MONKEY_SADDLE
from tripatch.formats import (
    FormatError,
    dumps_obj,
    dumps_poly,
    loads_net,
    loads_poly,
    parse_net,
    write_net,
)
from tripatch.tessellate import TriangleMesh, assemble_mesh, subdivide_recursive

from conftest import ENNEPER_TABLE, MONKNET_LISTING, random_net

CUBIC_FILE = """\
degree 3 dim 3
0 0 0
2 0 2
4 0 2
6 0 0
1 2 2
3 2 5
5 2 2
2 4 2
4 4 2
3 6 0
"""

MONKNET_FILE = """\
degree 3 dim 3   # monkey saddle over the standard frame
0 0 0
0 1/3 0
0 2/3 0
0 1 0
1/3 0 0
1/3 1/3 0
1/3 2/3 -1
2/3 0 0
2/3 1/3 0
1 0 1
"""

ENNEPER_POLY = """\
dim 3
1 1 0 1
1 3 0 -1/3
1 1 2 1
2 0 1 1
2 0 3 -1/3
2 2 1 1
3 2 0 1
3 0 2 -1
"""

MONKEY_POLY = """\
dim 3
1 1 0 1
2 0 1 1
3 3 0 1
3 1 2 -3
"""


@pytest.fixture
def cubic_path(tmp_path):
    path = tmp_path / "cubic.net"
    path.write_text(CUBIC_FILE)
    return path


def test_parse_cubic(cubic_path):
    net = parse_net(cubic_path)
    assert (net.degree, net.dim, len(net)) == (3, 3, 10)
    np.testing.assert_array_equal(net.points[0], (0, 0, 0))
    np.testing.assert_array_equal(net.points[-1], (3, 6, 0))


def test_parse_monknet_row_two():
    net = loads_net(MONKNET_FILE)
    row2 = net.rows()[2]
    np.testing.assert_allclose(row2, [(2 / 3, 0, 0), (2 / 3, 1 / 3, 0)], atol=1e-15)


def test_count_mismatch():
    text = CUBIC_FILE.replace("degree 3", "degree 2")
    with pytest.raises(FormatError, match="= 6 points, found 10"):
        loads_net(text)


def test_ragged_dimension():
    text = CUBIC_FILE.replace("1 2 2\n", "1 2\n")
    with pytest.raises(FormatError, match=r"line 6 \(row 1, point 0\): expected 3 coordinates"):
        loads_net(text)


@pytest.mark.parametrize("text", ["", "degree x dim 3\n", "deg 1 dim 2\n0 0\n1 1\n2 2\n"])
def test_bad_headers(text):
    with pytest.raises(FormatError):
        loads_net(text)


def test_net_round_trip_is_bitwise(tmp_path, rng):
    for m in range(5):
        net = random_net(rng, m, dim=4)
        write_net(net, tmp_path / "n.net")
        again = parse_net(tmp_path / "n.net")
        assert again.degree == m
        np.testing.assert_array_equal(again.points, net.points)


def test_poly_round_trip():
    surf = loads_poly(ENNEPER_POLY)
    assert surf.degree == 3 and surf.dim == 3
    again = loads_poly(dumps_poly(surf))
    assert again.coords == surf.coords == ENNEPER.coords


def test_poly_duplicate_term():
    with pytest.raises(FormatError, match="duplicate"):
        loads_poly("dim 1\n1 1 0 2\n1 1 0 3\n")
    with pytest.raises(FormatError, match="outside"):
        loads_poly("dim 1\n2 1 0 2\n")


def test_obj_counts(cubic):
    mesh = assemble_mesh(subdivide_recursive(cubic, "regular", 0))
    text = dumps_obj(mesh)
    lines = text.splitlines()
    assert sum(line.startswith("v ") for line in lines) == 10
    assert sum(line.startswith("f ") for line in lines) == 9
    assert lines[0] == "v 0 0 0"
    assert "f 1 2 5" in lines


def test_obj_depth_one(cubic):
    text = dumps_obj(assemble_mesh(subdivide_recursive(cubic, "regular", 1)))
    assert sum(line.startswith("f ") for line in text.splitlines()) == 36


def test_obj_empty_and_bad_dim():
    assert dumps_obj(TriangleMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int))) == ""
    mesh2d = assemble_mesh(subdivide_recursive(ControlNet(1, [(0, 0), (1, 0), (0, 1)]), "regular", 0))
    with pytest.raises(ValueError, match="JSON"):
        dumps_obj(mesh2d)


def test_obj_twelve_significant_digits():
    mesh = TriangleMesh(np.array([[1 / 3, -2 / 3, -0.0]]), np.zeros((0, 3), dtype=int))
    assert dumps_obj(mesh) == "v 0.333333333333 -0.666666666667 0\n"


# -- commands ----------------------------------------------------------------

def test_eval_enneper(tmp_path):
    path = tmp_path / "enneper.net"
    write_net(cli.cmd_from_poly(_write(tmp_path, "e.poly", ENNEPER_POLY)), path)
    assert cli.cmd_eval(path, (1, 0, 0)) == "0.666666666667 0 1"


def test_eval_corner_and_centroid(cubic_path, cubic):
    from oracles import bernstein_eval

    assert cli.cmd_eval(cubic_path, (0, 0, 1)) == "0 0 0"
    expected = bernstein_eval(cubic, (1 / 3, 1 / 3, 1 / 3))
    got = [float(x) for x in cli.cmd_eval(cubic_path, (1 / 3, 1 / 3, 1 / 3)).split()]
    np.testing.assert_allclose(got, expected, rtol=1e-11)


def test_eval_requires_normalized(cubic_path):
    with pytest.raises(ValueError, match="renormalize"):
        cli.cmd_eval(cubic_path, (1, 1, 1))
    assert cli.cmd_eval(cubic_path, (0, 0, 2), renormalize=True) == "0 0 0"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_from_poly_enneper(tmp_path):
    out = tmp_path / "e.net"
    cli.cmd_from_poly(_write(tmp_path, "e.poly", ENNEPER_POLY), out=out)
    net = parse_net(out)
    for (i, j, k), expected in ENNEPER_TABLE.items():
        np.testing.assert_allclose(net[i, j], [float(x) for x in expected], atol=1e-12)


def test_from_poly_monkey(tmp_path):
    net = cli.cmd_from_poly(_write(tmp_path, "m.poly", MONKEY_POLY))
    np.testing.assert_allclose(net.points, np.array(MONKNET_LISTING, dtype=float), atol=1e-12)


def test_from_poly_constant(tmp_path):
    net = cli.cmd_from_poly(_write(tmp_path, "c.poly", "dim 2\n1 0 0 4\n2 0 0 -1\n"))
    assert np.all(net.points == net.points[0])


def test_from_poly_flat_frame(tmp_path):
    with pytest.raises(ValueError, match="flat"):
        cli.cmd_from_poly(_write(tmp_path, "m.poly", MONKEY_POLY), frame=[(0, 0), (1, 1), (2, 2)])


@pytest.mark.parametrize(
    "scheme, depth, leaves, sweeps", [("regular", 3, 64, 84), ("diamond", 1, 4, 3), ("spiderweb", 1, 6, 4)]
)
def test_subdivide_stats(cubic_path, tmp_path, scheme, depth, leaves, sweeps):
    out = tmp_path / "mesh.obj"
    stats = cli.cmd_subdivide(cubic_path, scheme, depth, out=out)
    assert stats["leaves"] == leaves
    assert stats["sweeps"] == sweeps
    assert out.exists()


def test_subdivide_json_provenance(cubic_path, tmp_path):
    out = tmp_path / "mesh.json"
    cli.cmd_subdivide(cubic_path, "regular", 1, out=out, fmt="json")
    data = json.loads(out.read_text())
    assert list(data)[:4] == ["format", "version", "dim", "vertices"]
    assert [leaf["label"] for leaf in data["leaves"]] == ["abt", "bac", "crb", "sca"]
    assert data["stats"]["sweeps"] == 4
    assert len(data["triangle_leaf"]) == len(data["triangles"]) == 36


def test_outputs_are_deterministic(cubic_path, tmp_path):
    for fmt in ("obj", "json"):
        a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
        cli.cmd_subdivide(cubic_path, "spiderweb", 2, out=a, fmt=fmt)
        cli.cmd_subdivide(cubic_path, "spiderweb", 2, out=b, fmt=fmt, threads=3)
        assert a.read_bytes() == b.read_bytes()


def test_main_subdivide(cubic_path, tmp_path, capsys):
    assert cli.main(["subdivide", str(cubic_path), "--depth", "2", "-o", str(tmp_path / "x.obj")]) == 0
    assert "leaves=16 sweeps=20" in capsys.readouterr().out


def test_main_omit_center_usage_error(cubic_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(["subdivide", str(cubic_path), "--scheme", "diamond", "--omit-center"])
    assert exc.value.code == 2


def test_main_eval(cubic_path, capsys):
    assert cli.main(["eval", str(cubic_path), "0", "0", "1"]) == 0
    assert capsys.readouterr().out == "0 0 0\n"
    assert cli.main(["eval", str(cubic_path), "1", "1", "1"]) == 1


def test_main_info(cubic_path, capsys):
    assert cli.main(["info", str(cubic_path)]) == 0
    out = capsys.readouterr().out
    assert "degree 3" in out and "corner r 3 6 0" in out


def test_main_from_poly_stdout(tmp_path, capsys):
    assert cli.main(["from-poly", str(_write(tmp_path, "m.poly", MONKEY_POLY))]) == 0
    net = loads_net(capsys.readouterr().out)
    np.testing.assert_allclose(net.points, np.array(MONKNET_LISTING, dtype=float), atol=1e-12)


def test_main_bad_file(tmp_path, capsys):
    path = _write(tmp_path, "bad.net", "degree 1 dim 2\n0 0\n")
    assert cli.main(["info", str(path)]) == 1
    assert "needs (m+1)(m+2)/2 = 3 points" in capsys.readouterr().err


def test_demo_enneper(tmp_path):
    report = cli.cmd_demo("enneper", tmp_path)
    net = parse_net(tmp_path / "enneper.net")
    for (i, j, k), expected in ENNEPER_TABLE.items():
        np.testing.assert_allclose(net[i, j], [float(x) for x in expected], atol=1e-12)
    assert (tmp_path / "enneper.obj").exists()
    assert any("leaves=64" in line for line in report)


def test_demo_cubic(tmp_path):
    report = cli.cmd_demo("cubic", tmp_path)
    assert report[0].startswith("depth 1: leaves=4 sweeps=4")
    assert report[1].startswith("depth 2: leaves=16 sweeps=20")
    assert report[2].startswith("depth 3: leaves=64 sweeps=84")


def test_demo_monkey(tmp_path):
    cli.cmd_demo("monkey", tmp_path, fmt="json")
    data = json.loads((tmp_path / "monkey.json").read_text())
    assert len(data["leaves"]) == 2 * 64
    assert data["stats"]["corner_z_error"] <= 1e-9
    verts = np.array(data["vertices"])
    # x = u and y = v are linear, so every vertex lies in the square
    assert verts[:, :2].min() == -1 and verts[:, :2].max() == 1
    # the two triangles meet along the diagonal without a crack
    boundary = TriangleMesh(verts, np.array(data["triangles"])).boundary_edges()
    assert len(boundary) == 4 * 3 * 2**3


def test_demo_monkey_corners_on_saddle():
    nets = cli.monkey_nets()
    for net in nets:
        for leaf in subdivide_recursive(net, "regular", 3):
            for x, y, z in leaf.net.corners():
                assert abs(z - (x**3 - 3 * x * y**2)) <= 1e-9


def test_demo_unknown():
    with pytest.raises(ValueError, match="unknown demo"):
        cli.cmd_demo("dome")
