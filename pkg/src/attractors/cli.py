"""Command-line front end.

    attractors attractor --tree tfs-example --depth 14 --out out/
    attractors subdivide --scheme chaikin --levels 6 --out out/
    attractors compare   --scheme chaikin --levels 12 --out out/
    attractors certify   --scheme upfn --levels 12 --out out/

Every command writes CSV files (full-precision floats, so equal inputs give
byte-identical files) and prints a short summary.  ``--config FILE`` reads
a JSON object with the same keys as the long flags; flags given on the
command line win.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np
from scipy import sparse

from .geometry import FlatSpec, as_pointset, hausdorff, read_csv, sample_flat, write_csv
from .maps import FunctionSystem
from .staircase import certify_sfs, staircase_sfs_trajectory
from .subdivision import (SubdivisionError, bridge_trajectory, builtin_scheme,
                          convergence_report, nonuniform_tree, scheme_from_dict,
                          scheme_to_staircase_sfs, subdivide, unit_base)
from .tree import (EnumerationBudgetError, all_codes, attractor_error_bound, cantor_tree,
                   code_str, constant_tree, example_tfs_tree, tree_attractor)

DEFAULTS = {
    "tree": "tfs-example",
    "scheme": "chaikin",
    "depth": 10,
    "levels": 6,
    "min_depth": 4,
    "tol": 1e-6,
    "seed": 0,
    "out": "out",
    "polygon": None,
    "base": "random",
    "C": 4.0,
}


# ---------------------------------------------------------------- inputs

def load_tree(name: str):
    if name == "tfs-example":
        return example_tfs_tree()
    if name == "cantor":
        return cantor_tree()
    if name.startswith("file:"):
        d = json.loads(Path(name[5:]).read_text())
        return constant_tree(FunctionSystem.from_dict(d.get("system", d)))
    raise ValueError(f"unknown tree {name!r}")


def load_scheme(name: str):
    if name.startswith("file:"):
        return scheme_from_dict(json.loads(Path(name[5:]).read_text()))
    return builtin_scheme(name)


def square_polygon() -> np.ndarray:
    """Closed unit square with its first two corners repeated, so the
    quadratic B-spline of the data is a closed loop."""
    return np.array([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (1, 0)], dtype=float)


def delta_polygon(pad: int) -> np.ndarray:
    p = np.zeros((2 * pad + 1, 1))
    p[pad] = 1.0
    return p


def _final_window(scheme, levels: int, n0: int) -> int:
    # window sizes of the slanted-pair chain: n_k = ceil(m / 2)
    n = n0
    for k in range(1, levels + 1):
        m = 2 * n - scheme.mask_at(k).support_size + 2
        if m < 2:
            return 0
        n = (m + 1) // 2
    return n


def default_polygon(scheme, levels: int) -> np.ndarray:
    if scheme.fixed_size:
        return square_polygon()
    # smallest delta whose tracked windows keep at least `levels` samples;
    # wider windows need more levels before grouped products contract
    pad = 4
    while _final_window(scheme, levels, 2 * pad + 1) < max(levels, 4):
        pad += 1
    return delta_polygon(pad)


def load_polygon(cfg, scheme) -> np.ndarray:
    if cfg["polygon"] is None:
        return default_polygon(scheme, cfg["levels"])
    return read_csv(Path(cfg["polygon"]))


# ---------------------------------------------------------------- outputs

def write_rows(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                        for v in row])


def write_svg(points, path: Path, size: int = 600, radius: float = 1.0):
    """Plain scatter plot; one-dimensional data is drawn on a line."""
    P = as_pointset(points)
    if P.shape[1] == 1:
        P = np.hstack([P, np.zeros_like(P)])
    P = P[:, :2]
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    margin = 10
    scale = (size - 2 * margin) / span
    xs = margin + (P[:, 0] - lo[0]) * scale
    ys = size - margin - (P[:, 1] - lo[1]) * scale
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    lines += [f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius}" fill="black"/>'
              for x, y in zip(xs, ys)]
    lines.append("</svg>\n")
    path.write_text("\n".join(lines))


# ---------------------------------------------------------------- commands

def cmd_attractor(cfg) -> int:
    tree = load_tree(cfg["tree"])
    depth = cfg["depth"]
    x = np.zeros(tree.dim)
    U = tree_attractor(tree, x, depth)
    out = Path(cfg["out"])
    cols = ["x", "y", "z"][:U.shape[1]] if U.shape[1] <= 3 else \
        [f"x{i}" for i in range(U.shape[1])]
    write_rows(out / "attractor.csv", ["code"] + cols,
               ([code_str(c)] + list(p) for c, p in zip(all_codes(depth), U)))
    write_svg(U, out / "attractor.svg")
    bound = attractor_error_bound(tree, x, depth)
    print(f"{U.shape[0]} points at depth {depth}; error bound E*e_m = {bound.bound:.6g} "
          f"(E = {bound.diameter:.6g}, e_m = {bound.e_m:.6g}, empirical diameter)")
    return 0


def cmd_subdivide(cfg) -> int:
    scheme = load_scheme(cfg["scheme"])
    levels = cfg["levels"]
    p0 = load_polygon(cfg, scheme)
    polys = subdivide(scheme, p0, levels, history=True)
    out = Path(cfg["out"])
    for poly in polys[1:]:
        write_csv(poly.points, out / f"level_{poly.level:02d}.csv")
    report = convergence_report(scheme, p0, levels) if levels >= 2 else None
    if report is not None:
        write_rows(out / "report.csv", ["k", "hausdorff", "displacement"], report.rows)
        for k, h, d in report.rows:
            print(f"{k:3d}  {h:.6e}  {d:.6e}")
        print(f"verdict: {report.verdict}")
    return 0


def _compare_rows(cfg, scheme, p0):
    """Per-depth distances between a bridge pipeline and direct subdivision."""
    lo, hi = cfg["min_depth"], cfg["levels"]
    seed, C = cfg["seed"], cfg["C"]
    rows = []
    if cfg["base"] == "identity":
        for k in range(lo, hi + 1):
            pk = subdivide(scheme, p0, k).points
            rows.append((k, hausdorff(bridge_trajectory(scheme, p0, k, sparse.identity(len(pk), format="csr")), pk)))
        return "identity base", rows
    if scheme.kind == "non-uniform":
        tree = nonuniform_tree(scheme, p0)
        A = sample_flat(FlatSpec(len(p0), C), 1, seed)[0]
        for k in range(lo, hi + 1):
            rows.append((k, hausdorff(tree_attractor(tree, A, k),
                                      subdivide(scheme, p0, k).points)))
        return "tree", rows
    sfs = scheme_to_staircase_sfs(scheme, p0, C)
    if scheme.fixed_size:
        A = sample_flat(FlatSpec(len(p0), C), 4, seed)
        for k in range(lo, hi + 1):
            rows.append((k, hausdorff(staircase_sfs_trajectory(sfs, lambda j: A, k),
                                      subdivide(scheme, p0, k).points)))
        return "staircase SFS", rows
    # growing masks: windows lose boundary samples, so compare with the
    # points the windows track (identity rows as base sets)
    for k in range(lo, hi + 1):
        windows = staircase_sfs_trajectory(sfs, lambda j: np.eye(sfs.dim(j)), k)
        rows.append((k, hausdorff(staircase_sfs_trajectory(sfs, unit_base(sfs), k), windows)))
    return "staircase SFS vs tracked windows", rows


def cmd_compare(cfg) -> int:
    scheme = load_scheme(cfg["scheme"])
    p0 = load_polygon(cfg, scheme)
    try:
        label, rows = _compare_rows(cfg, scheme, p0)
    except SubdivisionError as exc:
        print(f"verdict: inconclusive ({exc})")
        write_rows(Path(cfg["out"]) / "compare.csv", ["k", "hausdorff"], [])
        return 0
    write_rows(Path(cfg["out"]) / "compare.csv", ["k", "hausdorff"], rows)
    for k, h in rows:
        print(f"{k:3d}  {h:.6e}")
    h = np.array([r[1] for r in rows])
    if cfg["base"] == "identity":
        ok = bool(np.all(h <= cfg["tol"]))
    else:
        ok = bool(np.all(np.diff(h) < 0))
    print(f"{label}: {'pass' if ok else 'fail'} "
          f"({'zero column' if cfg['base'] == 'identity' else 'strictly decreasing'})")
    return 0


def cmd_certify(cfg) -> int:
    scheme = load_scheme(cfg["scheme"])
    p0 = load_polygon(cfg, scheme)
    try:
        sfs = scheme_to_staircase_sfs(scheme, p0, cfg["C"])
        cert = certify_sfs(sfs, cfg["levels"])
    except SubdivisionError as exc:
        print(f"no certificate: {exc}")
        write_rows(Path(cfg["out"]) / "certify.csv",
                   ["grouping", "k", "s_k", "product", "tail_bound"], [])
        return 0
    rows = list(cert.rows())
    write_rows(Path(cfg["out"]) / "certify.csv",
               ["grouping", "k", "s_k", "product", "tail_bound"], rows)
    print(f"{'l':>2} {'k':>3} {'s_k':>12} {'prod':>12} {'tail':>12}")
    for ell, k, s, prod, tail in rows:
        print(f"{ell:2d} {k:3d} {s:12.6g} {prod:12.6g} {tail:12.6g}")
    if cert.certified:
        a = cert.attempt(cert.grouping)
        kind = "extrapolated tail" if a.extrapolated else "negligible tail"
        print(f"certified with grouping l={cert.grouping} ({kind}), "
              f"tail bound {a.tail_bound:.6g}")
        k_tol = next((k for g, k, _, _, t in rows if g == cert.grouping and t <= cfg["tol"]),
                     None)
        if k_tol is not None:
            print(f"tail below tol {cfg['tol']:g} from grouped step {k_tol}")
    else:
        print("not certified: grouped products do not contract over the measured levels")
    return 0


COMMANDS = {
    "attractor": cmd_attractor,
    "subdivide": cmd_subdivide,
    "compare": cmd_compare,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="attractors", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON file with default values for the flags")
    parser.add_argument("--tree", help="tfs-example | cantor | file:PATH")
    parser.add_argument("--scheme",
                        help="chaikin | bspline:D | upfn | lazy | chaikin-nu | divergent | file:PATH")
    parser.add_argument("--depth", type=int, help="tree depth (attractor)")
    parser.add_argument("--levels", type=int, help="subdivision levels / deepest compared depth")
    parser.add_argument("--min-depth", dest="min_depth", type=int,
                        help="first compared depth (compare)")
    parser.add_argument("--tol", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--polygon", help="initial control points as CSV")
    parser.add_argument("--base", choices=["random", "identity"],
                        help="base matrices for compare")
    parser.add_argument("-C", dest="C", type=float, help="entry bound of the sampled flats")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        loaded = json.loads(Path(args.config).read_text())
        unknown = set(loaded) - set(DEFAULTS) - {"command"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update({k.replace("-", "_"): v for k, v in loaded.items() if k != "command"})
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        Path(cfg["out"]).mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg)
    except (EnumerationBudgetError, SubdivisionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
