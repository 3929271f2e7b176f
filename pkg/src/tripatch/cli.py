"""Command-line front end: ``tripatch {eval,subdivide,from-poly,demo,info}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import demos
from .blossom import net_from_polynomial
from .core import ControlNet
from .decasteljau import eval_point
from .formats import (
    FormatError,
    dumps_net,
    parse_net,
    parse_number,
    parse_poly,
    write_mesh_json,
    write_net,
    write_obj,
)
from .strategies import SCHEMES
from .tessellate import Refinement, approximation_error, assemble_mesh, refine

FORMATS = ("obj", "json")
DEMOS = ("enneper", "monkey", "cubic")
BARY_SUM_TOL = 1e-9


def _fmt_point(p, precision: int) -> str:
    out = []
    for x in p:
        s = f"{float(x):.{precision}g}"
        out.append("0" if s == "-0" else s)
    return " ".join(out)


def cmd_eval(net_path, bary, precision: int = 12, renormalize: bool = False) -> str:
    net = parse_net(net_path)
    a = np.array([float(x) for x in bary])
    if a.shape != (3,):
        raise ValueError("need exactly three barycentric coordinates")
    total = a.sum()
    if abs(total - 1.0) > BARY_SUM_TOL:
        if not renormalize:
            raise ValueError(f"barycentric coordinates sum to {total!r}, not 1 (use --renormalize)")
        if total == 0:
            raise ValueError("cannot renormalize coordinates that sum to 0")
    a = a / total
    return _fmt_point(eval_point(net, a), precision)


def _write_mesh(mesh, path, fmt, leaves, stats):
    if fmt == "obj":
        write_obj(mesh, path)
    elif fmt == "json":
        write_mesh_json(mesh, path, leaves, stats)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _stats(ref: Refinement, mesh, nets) -> dict:
    error = 0.0
    for net, leaves in nets:
        error = max(error, approximation_error(leaves, net))
    return {
        "leaves": len(ref.leaves),
        "sweeps": ref.decas_calls,
        "nonconvex_sweeps": ref.nonconvex_steps,
        "max_error": error,
        "vertices": len(mesh.vertices),
        "triangles": len(mesh.triangles),
    }


def format_stats(stats: dict) -> str:
    parts = []
    for key, value in stats.items():
        parts.append(f"{key}={value:.6g}" if isinstance(value, float) else f"{key}={value}")
    return " ".join(parts)


def cmd_subdivide(
    net_path,
    scheme: str = "regular",
    depth: int = 1,
    omit_center: bool = False,
    out=None,
    fmt: str = "obj",
    weld_eps: float | None = None,
    threads: int = 1,
) -> dict:
    net = parse_net(net_path)
    ref = refine(net, scheme, depth, omit_center, threads)
    mesh = assemble_mesh(ref.leaves, weld_eps)
    stats = _stats(ref, mesh, [(net, ref.leaves)])
    if out is not None:
        _write_mesh(mesh, out, fmt, ref.leaves, stats)
    return stats


def cmd_from_poly(poly_path, frame=demos.STANDARD_FRAME, out=None) -> ControlNet:
    surface = parse_poly(poly_path)
    pts = np.asarray(frame, dtype=float).reshape(3, 2)
    net = net_from_polynomial(surface, pts)
    if out is not None:
        write_net(net, out)
    return net


def cmd_info(net_path) -> str:
    net = parse_net(net_path)
    lo, hi = net.points.min(axis=0), net.points.max(axis=0)
    lines = [
        f"degree {net.degree}",
        f"dim {net.dim}",
        f"points {len(net)}",
        f"corner r {_fmt_point(net.corners()[0], 12)}",
        f"corner s {_fmt_point(net.corners()[1], 12)}",
        f"corner t {_fmt_point(net.corners()[2], 12)}",
        f"bbox min {_fmt_point(lo, 12)}",
        f"bbox max {_fmt_point(hi, 12)}",
    ]
    return "\n".join(lines)


def _refine_many(nets, scheme, depth, threads=1):
    leaves, calls, nonconvex, pairs = [], 0, 0, []
    for tag, net in nets:
        ref = refine(net, scheme, depth, threads=threads)
        for leaf in ref.leaves:
            leaves.append(type(leaf)(leaf.net, leaf.domain, leaf.depth, f"{tag}:{leaf.label}"))
        calls += ref.decas_calls
        nonconvex += ref.nonconvex_steps
        pairs.append((net, ref.leaves))
    return Refinement(leaves, calls, nonconvex), pairs


def monkey_nets() -> list[ControlNet]:
    return [net_from_polynomial(demos.MONKEY_SADDLE, f) for f in demos.SQUARE_FRAMES]


def corner_deviation(mesh, leaves, surface) -> float:
    """Largest |z - F_z(x, y)| over mesh vertices that sit at leaf corners.

    Only meaningful for graphs ``x = u, y = v``; the control points at leaf
    corners interpolate the surface, the other grid points do not.
    """
    corner_pts = np.vstack([leaf.net.corners() for leaf in leaves])
    worst = 0.0
    for p in corner_pts:
        dist = np.linalg.norm(mesh.vertices - p, axis=1)
        v = mesh.vertices[int(np.argmin(dist))]
        worst = max(worst, abs(v[2] - surface(v[0], v[1])[2]))
    return worst


def cmd_demo(name: str, out_dir=".", fmt: str = "obj", threads: int = 1) -> list[str]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = []
    if name == "enneper":
        net = net_from_polynomial(demos.ENNEPER, demos.STANDARD_FRAME)
        report.append("Enneper control net over the standard frame:")
        for i, row in enumerate(net.rows()):
            report.append(f"  row {i}: " + "  ".join(f"({_fmt_point(p, 6)})" for p in row))
        write_net(net, out_dir / "enneper.net")
        ref = refine(net, "regular", 3, threads=threads)
        mesh = assemble_mesh(ref.leaves)
        stats = _stats(ref, mesh, [(net, ref.leaves)])
    elif name == "monkey":
        nets = monkey_nets()
        ref, pairs = _refine_many(list(zip(("lower", "upper"), nets)), "regular", 3, threads)
        mesh = assemble_mesh(ref.leaves)
        stats = _stats(ref, mesh, pairs)
        stats["corner_z_error"] = corner_deviation(mesh, ref.leaves, demos.MONKEY_SADDLE)
    elif name == "cubic":
        net = demos.CUBIC_NET
        for depth in (1, 2):
            r = refine(net, "regular", depth, threads=threads)
            m = assemble_mesh(r.leaves)
            report.append(f"depth {depth}: " + format_stats(_stats(r, m, [(net, r.leaves)])))
        ref = refine(net, "regular", 3, threads=threads)
        mesh = assemble_mesh(ref.leaves)
        stats = _stats(ref, mesh, [(net, ref.leaves)])
        report.append("depth 3: " + format_stats(stats))
    else:
        raise ValueError(f"unknown demo {name!r}; expected one of {DEMOS}")
    path = out_dir / f"{name}.{fmt}"
    _write_mesh(mesh, path, fmt, ref.leaves, stats)
    if name != "cubic":
        report.append(format_stats(stats))
    report.append(f"wrote {path}")
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripatch", description="Triangular Bezier patch subdivision and tessellation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a net at a barycentric point")
    p.add_argument("net")
    p.add_argument("bary", nargs=3, type=parse_number, metavar="W")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--renormalize", action="store_true")

    p = sub.add_parser("subdivide", help="subdivide recursively and write a mesh")
    p.add_argument("net")
    p.add_argument("--scheme", choices=SCHEMES, default="regular")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--omit-center", action="store_true")
    p.add_argument("-o", "--out")
    p.add_argument("--format", choices=FORMATS, default="obj")
    p.add_argument("--weld-eps", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("from-poly", help="control net of a polynomial surface")
    p.add_argument("poly")
    p.add_argument(
        "--frame", nargs=6, type=parse_number, metavar=("U1", "V1", "U2", "V2", "U3", "V3"),
        default=[c for pt in demos.STANDARD_FRAME for c in pt],
    )
    p.add_argument("-o", "--out")

    p = sub.add_parser("demo", help="run a bundled example end to end")
    p.add_argument("name", choices=DEMOS)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--format", choices=FORMATS, default="obj")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("info", help="summarize a net file")
    p.add_argument("net")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            print(cmd_eval(args.net, args.bary, args.precision, args.renormalize))
        elif args.command == "subdivide":
            if args.omit_center and args.scheme != "regular":
                parser.error("--omit-center requires --scheme regular")
            if args.depth < 0:
                parser.error("--depth must be >= 0")
            stats = cmd_subdivide(
                args.net, args.scheme, args.depth, args.omit_center,
                args.out, args.format, args.weld_eps, args.threads,
            )
            print(format_stats(stats))
        elif args.command == "from-poly":
            net = cmd_from_poly(args.poly, np.reshape(args.frame, (3, 2)), args.out)
            if args.out is None:
                sys.stdout.write(dumps_net(net))
        elif args.command == "demo":
            print("\n".join(cmd_demo(args.name, args.out_dir, args.format, args.threads)))
        elif args.command == "info":
            print(cmd_info(args.net))
    except (FormatError, ValueError, OSError) as exc:
        print(f"tripatch: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
