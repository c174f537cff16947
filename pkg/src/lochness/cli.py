"""Command-line front end.

Exit codes: 0 success (and every verification passed), 1 a verification
found a mismatch, 2 usage or I/O error. Reports go to stdout; errors to
stderr. Any flag may also come from a ``--config`` file of ``key = value``
lines (``#`` starts a comment); flags on the command line win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .group import (
    GroupError,
    Variant,
    probe_fixed_points,
    reduce_to_domain,
    region_exchange_report,
    verify_side_pairings,
)
from .mobius import Circle, VerticalLine
from .render import curve_points, render_curve_svg, render_domain_svg, render_flat_svg, render_tessellation_svg
from .slit import (
    Crossing,
    FlatPoint,
    SingularityHit,
    SlitError,
    StepLimit,
    build_cylinder_slits,
    build_monster_slits,
    cone_angle,
    trace_geodesic,
)
from .topology import FlatTruncation, HyperbolicTruncation, NotStabilized, count_ends, truncation_topology

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_config(path: str | Path) -> dict[str, str]:
    values = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}") from None


def _bool(text: str) -> bool:
    if isinstance(text, bool):
        return text
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _circle_json(c) -> dict:
    if isinstance(c, Circle):
        return {"type": "circle", "center": c.center, "radius": c.radius}
    return {"type": "line", "x0": c.x0}


def _circle_text(c) -> str:
    if isinstance(c, VerticalLine):
        return f"line Re z = {c.x0:g}"
    return f"C({c.center:g}, r={c.radius:g})"


# --- handlers: each returns (exit code, report dict, text lines) ---------


def cmd_hyp_verify(a):
    t0 = time.perf_counter()
    rep = verify_side_pairings(a.window, Variant(a.variant), a.tol)
    elapsed = time.perf_counter() - t0
    rows = [
        {
            "generator": str(r.letter),
            "source": _circle_json(r.source),
            "target": _circle_json(r.target),
            "image": _circle_json(r.image),
            "match": r.match,
        }
        for r in rep.records
    ]
    lines = [
        f"{'ok ' if r.match else 'BAD'} {r.letter}: {_circle_text(r.source)} -> {_circle_text(r.image)}"
        + ("" if r.match else f" (expected {_circle_text(r.target)})")
        for r in rep.records
    ]
    lines.append(f"pairings: {rep.matches}/{len(rep.records)} match ({a.variant}, {elapsed:.3f}s)")
    report = {"variant": a.variant, "window": a.window, "matches": rep.matches, "total": len(rep.records), "records": rows}
    return (OK if rep.ok else MISMATCH), report, lines


def cmd_hyp_exchange(a):
    rows = region_exchange_report(a.window, a.samples, a.tol)
    ok = all(r["ok"] for r in rows)
    lines = [
        f"{'ok ' if r['ok'] else 'BAD'} {r['letter']}: inside {r['inside_ok']}/{r['inside_samples']}, "
        f"outside {r['outside_ok']}/{r['outside_samples']}"
        for r in rows
    ]
    lines.append(f"region exchange: {'all samples conform' if ok else 'violations found'}")
    return (OK if ok else MISMATCH), {"window": a.window, "samples": a.samples, "ok": ok, "records": rows}, lines


def cmd_hyp_reduce(a):
    if a.point is None:
        raise UsageError("--point RE,IM is required")
    re_, im = a.point
    if not im > 0:
        raise UsageError(f"point {re_},{im} is not in the upper half-plane")
    word, z = reduce_to_domain(complex(re_, im), a.window)
    report = {"input": [re_, im], "word": [str(x) for x in word], "point": [z.re, z.im]}
    return OK, report, [f"word: {word}", f"reduced point: {z.re:.12g} + {z.im:.12g}i"]


def cmd_hyp_tessellate(a):
    out = _need_out(a)
    stats = render_tessellation_svg(a.window, a.depth, out, clip=a.clip)
    report = {
        "out": str(out),
        "base_circles": stats.base_circles,
        "words": stats.words,
        "arcs_before_clip": stats.arcs_before_clip,
        "arcs_drawn": stats.arcs_drawn,
    }
    return OK, report, [f"wrote {out}: {stats.arcs_drawn} of {stats.arcs_before_clip} arcs drawn"]


def cmd_hyp_domain(a):
    out = _need_out(a)
    render_domain_svg(a.window, out)
    return OK, {"out": str(out), "circles": 2 * a.window + 1}, [f"wrote {out}"]


def cmd_hyp_probe(a):
    t0 = time.perf_counter()
    rep = probe_fixed_points(a.window, a.depth)
    elapsed = time.perf_counter() - t0
    report = rep.as_dict()
    report["seconds"] = round(elapsed, 3)
    lines = [
        f"words probed: {rep.words} (plus identity)",
        f"distinct matrices: {rep.distinct_matrices}",
        f"hyperbolic {rep.counts['hyperbolic']}, parabolic {rep.counts['parabolic']}, "
        f"elliptic {rep.counts['elliptic']}, identity {len(rep.identity_words)}",
        f"free at this scale: {rep.free}; no fixed points in H: {rep.fixed_point_free}",
    ]
    return (OK if rep.free and rep.fixed_point_free else MISMATCH), report, lines


def _surface(a):
    if a.k is None or a.k < 1:
        raise UsageError("--k must be a positive integer")
    return build_monster_slits(a.k)


def _event_json(e) -> dict:
    if isinstance(e, Crossing):
        return {"type": "crossing", "slit": e.slit, "entry": list(e.entry), "exit": list(e.exit)}
    if isinstance(e, SingularityHit):
        return {"type": "singularity", "point": list(e.point)}
    return {"type": "step_limit", "events": e.events}


def _trace(a, s):
    if a.start is None or a.dir is None:
        raise UsageError("--start X,Y and --dir DX,DY are required")
    return trace_geodesic(s, FlatPoint(*a.start), a.dir, a.max_events, a.max_length)


def cmd_flat_trace(a):
    s = _surface(a)
    tr = _trace(a, s)
    if a.out:
        render_flat_svg(s, a.out, tr)
    report = {
        "start": list(a.start),
        "direction": list(a.dir),
        "events": [_event_json(e) for e in tr.events],
        "polyline": [[list(p), list(q)] for p, q in tr.polyline],
        "length": tr.length,
        "end": [tr.end.x, tr.end.y],
    }
    lines = [f"start ({a.start[0]:g}, {a.start[1]:g}) direction ({a.dir[0]:g}, {a.dir[1]:g})"]
    for e in tr.events:
        if isinstance(e, Crossing):
            lines.append(f"crossing l{e.slit} at ({e.entry[0]:g}, 0) -> ({e.exit[0]:g}, 0)")
        elif isinstance(e, SingularityHit):
            lines.append(f"singularity hit at ({e.point[0]:g}, {e.point[1]:g})")
        elif isinstance(e, StepLimit):
            lines.append(f"stopped after {e.events} events")
    lines.append(f"end ({tr.end.x:.12g}, {tr.end.y:.12g}) after length {tr.length:g}")
    return OK, report, lines


def cmd_flat_cone(a):
    s = _surface(a)
    if a.point is None:
        raise UsageError("--point X,Y is required")
    angle = cone_angle(s, FlatPoint(*a.point))
    multiple = angle / math.pi
    report = {"point": list(a.point), "angle": angle, "angle_over_pi": multiple}
    return OK, report, [f"cone angle at ({a.point[0]:g}, {a.point[1]:g}): {multiple:.9f} pi"]


def cmd_flat_render(a):
    s = _surface(a)
    out = _need_out(a)
    tr = _trace(a, s) if a.start is not None or a.dir is not None else None
    render_flat_svg(s, out, tr)
    return OK, {"out": str(out), "slits": s.i_max}, [f"wrote {out}"]


def cmd_topo_truncation(a):
    if a.model == "flat":
        if a.k is None or a.k < 0:
            raise UsageError("--k is required for the flat model")
        summary = truncation_topology(FlatTruncation(a.k))
    else:
        if a.m is None:
            raise UsageError("--m is required for the hyp model")
        summary = truncation_topology(HyperbolicTruncation(a.m))
    d = summary.as_dict()
    line = f"genus={d['genus']} boundary={d['boundary']} chi={d['chi']} orientable={str(d['orientable']).lower()}"
    return OK, dict(d, model=a.model), [line]


def cmd_topo_ends(a):
    if a.k is None or a.k < 0:
        raise UsageError("--k must be a non-negative integer")
    circ = None
    if a.base == "cylinder":
        circ = a.circumference if a.circumference is not None else 8.0 * a.k + 8.0
        build_cylinder_slits(a.k, circ)
    ends = count_ends(a.k, a.levels, circ)
    report = {"base": a.base, "k": a.k, "levels": a.levels, "ends": ends}
    if circ is not None:
        report["circumference"] = circ
    return OK, report, [f"ends={ends}"]


def cmd_curve(a):
    if a.n is None or a.n < 1:
        raise UsageError("--n must be a positive integer")
    pts = curve_points(a.n)
    report = {
        "n": a.n,
        "last": [float(pts[-1].real), float(pts[-1].imag)],
        "sums": [[float(z.real), float(z.imag)] for z in pts],
    }
    lines = [f"{a.n} partial sums, s_N = {pts[-1].real:.9f} + {pts[-1].imag:.9f}i"]
    if a.out:
        render_curve_svg(a.n, a.out)
        report["out"] = str(a.out)
        lines.append(f"wrote {a.out}")
    return OK, report, lines


def _need_out(a) -> Path:
    if not a.out:
        raise UsageError("--out is required")
    return Path(a.out)


# --- parser --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", type=_bool, nargs="?", const=True, default=False, help="machine-readable report")
    common.add_argument("--config", help="key = value file supplying defaults for any flag")

    parser = _Parser(prog="lochness", description="Build and check the Infinite Loch Ness Monster.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    leaves: list[argparse.ArgumentParser] = []

    def leaf(sub, name, handler, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(handler=handler)
        leaves.append(p)
        return p

    hyp = top.add_parser("hyp", help="hyperbolic model").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(hyp, "verify", cmd_hyp_verify, "check the side pairings")
    p.add_argument("--window", type=_nonneg, default=2)
    p.add_argument("--variant", choices=[v.value for v in Variant], default="corrected")
    p.add_argument("--tol", type=float, default=1e-9)
    p = leaf(hyp, "exchange", cmd_hyp_exchange, "sample the inside/outside exchange")
    p.add_argument("--window", type=_nonneg, default=2)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p = leaf(hyp, "reduce", cmd_hyp_reduce, "move a point into the fundamental domain")
    p.add_argument("--point", type=_pair)
    p.add_argument("--window", type=_nonneg, default=15)
    p = leaf(hyp, "tessellate", cmd_hyp_tessellate, "draw the orbit of the boundary circles")
    p.add_argument("--window", type=_nonneg, default=1)
    p.add_argument("--depth", type=_nonneg, default=2)
    p.add_argument("--clip", type=float, default=1e-3)
    p.add_argument("--out")
    p = leaf(hyp, "domain", cmd_hyp_domain, "draw the fundamental domain")
    p.add_argument("--window", type=_nonneg, default=2)
    p.add_argument("--out")
    p = leaf(hyp, "probe", cmd_hyp_probe, "search short words for fixed points in H")
    p.add_argument("--window", type=_nonneg, default=1)
    p.add_argument("--depth", type=_nonneg, default=4)

    flat = top.add_parser("flat", help="flat slit model").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, help_ in (
        ("trace", cmd_flat_trace, "follow a straight line through the gluings"),
        ("render", cmd_flat_render, "draw the slits, optionally with a trace"),
    ):
        p = leaf(flat, name, handler, help_)
        p.add_argument("--k", type=int)
        p.add_argument("--start", type=_pair)
        p.add_argument("--dir", type=_pair)
        p.add_argument("--max-events", type=int, default=50)
        p.add_argument("--max-length", type=float, default=20.0)
        p.add_argument("--out")
    p = leaf(flat, "cone", cmd_flat_cone, "total angle around a point")
    p.add_argument("--k", type=int)
    p.add_argument("--point", type=_pair)

    topo = top.add_parser("topo", help="topology of truncations").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(topo, "truncation", cmd_topo_truncation, "genus, boundary and chi of a truncation")
    p.add_argument("--model", choices=["flat", "hyp"], default="flat")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p = leaf(topo, "ends", cmd_topo_ends, "count ends by exhaustion")
    p.add_argument("--base", choices=["plane", "cylinder"], default="plane")
    p.add_argument("--k", type=int)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--circumference", type=float)

    p = leaf(top, "curve", cmd_curve, "partial sums of exp(2 pi i (ln n)^4)")
    p.add_argument("--n", type=int, default=6000)
    p.add_argument("--out")
    return parser, leaves


def _apply_config(argv: list[str], leaves) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for p in leaves:
        dests = {a.dest for a in p._actions}
        p.set_defaults(**{k: v for k, v in values.items() if k in dests})
    all_dests = {a.dest for p in leaves for a in p._actions}
    unknown = sorted(set(values) - all_dests)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, leaves = build_parser()
    try:
        _apply_config(argv, leaves)
        args = parser.parse_args(argv)
        code, report, lines = args.handler(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, ValueError, OSError, GroupError, SlitError, NotStabilized) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
