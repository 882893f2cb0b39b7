"""Command line interface: boundary, diagram, transform, oracle, dist, mds."""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .boundary import traced_boundary
from .diagram import dumps_json
from .extended import xph_from_boundary
from .image import ImageFormatError, load_image
from .mds import classical_mds
from .metric import parse_p, xpht_distance
from .oracle import compute_xpht_reduction
from .transform import Xpht, compute_xpht, directions


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("XPHT_THREADS", "1")))
    except ValueError:
        return 1


def _map_inputs(fn, items):
    n = _threads()
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _write_text(path: str | None, text: str, created: list[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    created.append(path)
    with open(path, "w") as fh:
        fh.write(text)


def _load(args) -> "BinaryImage":
    return load_image(args.input, fmt=args.format)


def cmd_boundary(args, created) -> int:
    img = _load(args)
    curves = traced_boundary(img)
    payload = {"curves": [
        {"kind": c.kind, "component": c.component_id,
         "vertices": [[float(r), float(col)] for r, col in c.vertices]}
        for c in curves
    ]}
    _write_text(args.output, dumps_json(payload) + "\n", created)
    if args.plot:
        from .plotting import plot_curves

        created.append(args.plot)
        plot_curves(curves, args.plot, title=os.path.basename(args.input))
    return 0


def cmd_diagram(args, created) -> int:
    img = _load(args)
    dirs = directions(args.directions)
    if not 0 <= args.index < len(dirs):
        raise ValueError(f"direction index {args.index} out of range for K={args.directions}")
    diag = xph_from_boundary(traced_boundary(img), dirs[args.index])
    _write_text(args.output, dumps_json(diag.to_json_dict(dirs[args.index])) + "\n", created)
    return 0


def _compute(args, path: str) -> Xpht:
    img = load_image(path, fmt=args.format)
    if getattr(args, "engine", "fast") == "reduction":
        return compute_xpht_reduction(img, args.directions, centered=args.center,
                                      source=os.path.basename(path))
    return compute_xpht(img, args.directions, centered=args.center,
                        source=os.path.basename(path))


def cmd_transform(args, created) -> int:
    xp = _compute(args, args.input)
    _write_text(args.output, dumps_json(xp.to_json_dict()) + "\n", created)
    return 0


def cmd_oracle(args, created) -> int:
    img = _load(args)
    name = os.path.basename(args.input)
    fast = compute_xpht(img, args.directions, centered=args.center, source=name)
    slow = compute_xpht_reduction(img, args.directions, centered=args.center, source=name)
    bad = [i for i in range(fast.k) if not fast.diagrams[i].allclose(slow.diagrams[i])]
    if args.output:
        _write_text(args.output, dumps_json(slow.to_json_dict()) + "\n", created)
    if bad:
        print(f"mismatch between engines at direction indices {bad}", file=sys.stderr)
        return 1
    print(f"{name}: {fast.k} directions agree between engines")
    return 0


def _load_xpht(args, path: str) -> Xpht:
    if path.endswith(".json"):
        import json

        with open(path) as fh:
            xp = Xpht.from_json_dict(json.load(fh))
        xp.source = os.path.basename(path)
        return xp
    xp = _compute(args, path)
    return xp


def _format_cell(x: float) -> str:
    return f"{x:.9g}"


def cmd_dist(args, created) -> int:
    if len(args.inputs) < 2:
        raise ValueError("dist needs at least two inputs")
    xps = _map_inputs(lambda p: _load_xpht(args, p), args.inputs)
    names = [os.path.basename(p) for p in args.inputs]
    p = parse_p(args.p)
    n = len(xps)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i, j] = matrix[j, i] = xpht_distance(xps[i], xps[j], p)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", *names])
    for i in range(n):
        writer.writerow([names[i], *[_format_cell(matrix[i, j]) for j in range(n)]])
    _write_text(args.output, buf.getvalue(), created)
    return 0


def read_distance_csv(path: str) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "name":
        raise ValueError(f"{path} is not a distance matrix CSV")
    names = rows[0][1:]
    n = len(names)
    matrix = np.zeros((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ValueError(f"distance CSV row {i + 1} has wrong width")
        matrix[i] = [float(x) for x in row[1:]]
    return names, matrix


def cmd_mds(args, created) -> int:
    names, matrix = read_distance_csv(args.input)
    coords = classical_mds(matrix)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "x", "y"])
    for name, (x, y) in zip(names, coords):
        writer.writerow([name, _format_cell(x), _format_cell(y)])
    _write_text(args.output, buf.getvalue(), created)
    plot_path = args.plot
    if plot_path is None and args.output:
        plot_path = os.path.splitext(args.output)[0] + ".png"
    if plot_path:
        from .plotting import plot_embedding

        created.append(plot_path)
        plot_embedding(names, coords, plot_path)
    return 0


def _add_common(sub, with_transform=False):
    sub.add_argument("--format", choices=("pbm", "png", "txt"), default=None,
                     help="input format (default: sniffed)")
    sub.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    if with_transform:
        sub.add_argument("--directions", "-K", type=int, default=8,
                         help="number of sweep directions (even; default 8)")
        sub.add_argument("--center", action="store_true",
                         help="translate the shape centroid to the origin")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xpht",
        description="Extended persistent homology transform of binary images")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("boundary", help="trace oriented boundary curves to JSON")
    b.add_argument("input")
    _add_common(b)
    b.add_argument("--plot", default=None, help="also render the curves to this file")
    b.set_defaults(func=cmd_boundary)

    d = subs.add_parser("diagram", help="extended diagram for one direction")
    d.add_argument("input")
    _add_common(d, with_transform=True)
    d.add_argument("--index", type=int, default=0, help="direction index (default 0)")
    d.set_defaults(func=cmd_diagram)

    t = subs.add_parser("transform", help="full transform over a direction grid")
    t.add_argument("input")
    _add_common(t, with_transform=True)
    t.add_argument("--engine", choices=("fast", "reduction"), default="fast",
                   help="boundary-curve engine or matrix-reduction engine")
    t.set_defaults(func=cmd_transform)

    o = subs.add_parser("oracle", help="A/B compare both engines; nonzero on mismatch")
    o.add_argument("input")
    _add_common(o, with_transform=True)
    o.set_defaults(func=cmd_oracle)

    di = subs.add_parser("dist", help="pairwise transform distance matrix as CSV")
    di.add_argument("inputs", nargs="+", help="images or transform JSON files")
    _add_common(di, with_transform=True)
    di.add_argument("--engine", choices=("fast", "reduction"), default="fast")
    di.add_argument("--p", default="2", help="exponent: a real >= 1 or 'inf'")
    di.set_defaults(func=cmd_dist)

    m = subs.add_parser("mds", help="2-d embedding of a distance CSV (plus figure)")
    m.add_argument("input", help="distance matrix CSV from the dist subcommand")
    m.add_argument("-o", "--output", default=None)
    m.add_argument("--plot", default=None, help="figure path (default: output stem + .png)")
    m.set_defaults(func=cmd_mds)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    created: list[str] = []
    try:
        return args.func(args, created)
    except (ImageFormatError, ValueError, OSError) as exc:
        for path in created:
            if path and os.path.exists(path):
                os.remove(path)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
