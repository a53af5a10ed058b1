"""Command-line interface.

Exit codes: 0 success, 1 a FAIL verdict, 2 bad input or violated hypothesis,
3 an UNKNOWN verdict from ``check``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import TraptileError
from .field import FieldContext, parse_qnum, parse_rational

CONFIG_ENV = "TRAPTILE_CONFIG"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class Config:
    d: Fraction | None = None
    precision_cap: int = 4096
    e_max: int = 64
    output_dir: str = "."

    def __post_init__(self):
        if self.precision_cap < 128:
            raise ValueError("precision_cap must be at least 128")
        if self.e_max < 1:
            raise ValueError("E_max must be at least 1")

    @classmethod
    def load(cls, path: str | None = None) -> "Config":
        """Read a JSON config from ``path`` or from the file named by $TRAPTILE_CONFIG."""
        path = path or os.environ.get(CONFIG_ENV)
        if not path:
            return cls()
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        d = raw.get("d")
        return cls(
            d=parse_rational(str(d)) if d is not None else None,
            precision_cap=int(raw.get("precision_cap", 4096)),
            e_max=int(raw.get("E_max", raw.get("e_max", 64))),
            output_dir=str(raw.get("output_dir", ".")),
        )


class InputError(Exception):
    pass


def _context(args, cfg: Config) -> FieldContext | None:
    d = args.d if getattr(args, "d", None) is not None else cfg.d
    return FieldContext(parse_rational(str(d))) if d is not None else None


def _num(text: str, ctx):
    return parse_qnum(text, ctx)


def _out_path(cfg: Config, name: str) -> Path:
    p = Path(name)
    return p if p.is_absolute() else Path(cfg.output_dir) / p


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _load_tiling(path: str):
    from .geometry import Tiling

    try:
        return Tiling.loads(Path(path).read_text(encoding="utf-8"))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: malformed tiling file ({exc})") from exc


# ---------------------------------------------------------------------------


def cmd_tile(args, cfg: Config) -> int:
    from .geometry import SvgOptions, realize, to_svg, verify_exact
    from .synth import tile_quadratic, tile_rational

    ctx = _context(args, cfg)
    a = _num(args.a, ctx)
    b = _num(args.b, ctx)
    started = time.perf_counter()
    if args.c is not None:
        c = _num(args.c, ctx or a.ctx or b.ctx)
        tree = tile_quadratic(a, b, c)
    else:
        if not (a.is_rational() and b.is_rational()):
            raise InputError("irrational midlines need --c (target) together with --a and --b")
        tree = tile_rational(a, b)
    tiling = realize(tree)
    report = verify_exact(tiling)
    elapsed = time.perf_counter() - started

    stem = _out_path(cfg, args.out)
    _write(stem.with_suffix(".json"), tiling.dumps())
    if not args.no_svg:
        _write(stem.with_suffix(".svg"), to_svg(tiling, SvgOptions(title=f"t({tiling.target.param})")))
    if args.tree:
        from .figures import tree_to_json

        _write(stem.with_name(stem.name + ".tree.json"), json.dumps(tree_to_json(tree), indent=1))
    print(f"target t({tiling.target.param}); pieces {len(tiling.placements)}; "
          f"verify {report.verdict}; {elapsed:.3f}s")
    print(f"wrote {stem.with_suffix('.json')}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _verify_one(path: str, trivial: bool):
    from .geometry import is_trivial, verify_exact

    tiling = _load_tiling(path)
    report = verify_exact(tiling)
    line = f"{path}: {report.verdict} ({report.n_pieces} pieces)"
    if not report.ok:
        line += f": {report.reason}"
        if report.residue is not None:
            line += f"; residue {report.residue.describe()}"
    elif trivial:
        ok, _ = is_trivial(tiling, check=False)
        line += f"; trivial {'TRUE' if ok else 'FALSE'}"
    return report.ok, line


def cmd_verify(args, cfg: Config) -> int:
    jobs = max(1, args.jobs)
    if jobs == 1 or len(args.files) == 1:
        results = [_verify_one(p, args.trivial) for p in args.files]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda p: _verify_one(p, args.trivial), args.files))
    for _, line in results:
        print(line)
    return EXIT_OK if all(ok for ok, _ in results) else EXIT_FAIL


def cmd_circuit(args, cfg: Config) -> int:
    from .circuit import build_circuit, solve_potential, verify_kenyon
    from .geometry import verify_exact

    tiling = _load_tiling(args.file)
    report = verify_exact(tiling)
    if not report.ok:
        print(f"{args.file}: verify FAIL: {report.reason}")
        return EXIT_FAIL
    circuit = build_circuit(tiling)
    potential = solve_potential(circuit)
    kenyon = verify_kenyon(tiling, circuit, potential)
    print(f"vertices {len(circuit.cuts)}; edges {len(circuit.edges)}; field {kenyon.field}")
    for name, ok in kenyon.checks.items():
        print(f"  {name}: {'PASS' if ok else 'FAIL'}")
    for line in kenyon.details[:20]:
        print(f"  {line}")
    if args.json:
        payload = circuit.to_json(potential)
        payload["kenyon"] = kenyon.to_json()
        _write(_out_path(cfg, args.json), json.dumps(payload, indent=1))
    if args.dot:
        _write(_out_path(cfg, args.dot), circuit.to_dot(potential))
    return EXIT_OK if kenyon.ok else EXIT_FAIL


def _verdict_exit(report) -> int:
    from .analysis import Verdict

    if report.any_fails():
        return EXIT_FAIL
    if report.cond_iii is Verdict.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_check(args, cfg: Config) -> int:
    from .analysis import check_conditions

    ctx = _context(args, cfg)
    a = _num(args.a, ctx)
    b = _num(args.b, ctx or a.ctx)
    cap = args.precision_cap or cfg.precision_cap
    e_max = args.e_max or cfg.e_max
    report = check_conditions(a, b, precision_cap=cap, e_max=e_max)
    print(f"cond_i: {report.cond_i}  cond_ii: {report.cond_ii}  cond_iii: {report.cond_iii}")
    print(json.dumps(report.to_json(), indent=1))
    return _verdict_exit(report)


def cmd_sequence(args, cfg: Config) -> int:
    from .analysis import Verdict, check_conditions
    from .synth import proposition_last_sequence

    ctx = _context(args, cfg)
    a = _num(args.a, ctx)
    if args.n < 1:
        raise InputError("n must be positive")
    worst = EXIT_OK
    for n, (b, _) in enumerate(proposition_last_sequence(a, args.n), start=1):
        report = check_conditions(a, b, precision_cap=cfg.precision_cap, e_max=max(cfg.e_max, n))
        cert = report.evidence.get("iii", {}).get("relation")
        print(f"b_{n} = {b}  cond_iii {report.cond_iii}" + (f"  (p, q) = ({cert[0]}, {cert[1]})" if cert else ""))
        if report.cond_iii is not Verdict.EQUALITY:
            worst = max(worst, _verdict_exit(report) or EXIT_FAIL)
    return worst


def cmd_plot(args, cfg: Config) -> int:
    from .analysis import plot_plane
    from .figures import INFINITY

    ctx = _context(args, cfg)
    a = _num(args.a, ctx)
    levels = []
    for item in args.levels.split(",") if args.levels else []:
        item = item.strip()
        if item.lower() in ("inf", "infinity", "oo"):
            levels.append(INFINITY)
        elif item:
            levels.append(parse_rational(item))
    path = _out_path(cfg, args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    plot_plane(a, levels, str(path), sequence_points=args.points)
    print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="traptile", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_d(p):
        p.add_argument("--d", help="square-free d of Q[sqrt(d)]; inferred from sqrt(...) when omitted")
        return p

    p = with_d(sub.add_parser("tile", help="construct, realize and verify a tiling"))
    p.add_argument("--a", required=True, help="midline of the first prototile")
    p.add_argument("--b", required=True, help="target midline (rational case) or second prototile")
    p.add_argument("--c", help="target midline for the quadratic case")
    p.add_argument("--out", default="tiling", help="output stem; writes STEM.json and STEM.svg")
    p.add_argument("--no-svg", action="store_true")
    p.add_argument("--tree", action="store_true", help="also write the composition tree")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("verify", help="exactly verify tiling files")
    p.add_argument("files", nargs="+")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for several files")
    p.add_argument("--trivial", action="store_true", help="also report triviality")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("circuit", help="build and solve the circuit of a tiling")
    p.add_argument("file")
    p.add_argument("--json", help="write circuit JSON with the potential")
    p.add_argument("--dot", help="write a Graphviz DOT file")
    p.set_defaults(func=cmd_circuit)

    p = with_d(sub.add_parser("check", help="necessary conditions for a trivial tiling"))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--precision-cap", type=int)
    p.add_argument("--e-max", type=int)
    p.set_defaults(func=cmd_check)

    p = with_d(sub.add_parser("sequence", help="midlines b_n with G(b_n) = G(a)^n"))
    p.add_argument("--a", required=True)
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_sequence)

    p = with_d(sub.add_parser("plot", help="SVG of the (conj y, y) plane"))
    p.add_argument("--a", required=True)
    p.add_argument("--levels", default="-3,0,3,inf", help="comma-separated rationals or inf")
    p.add_argument("--points", type=int, default=3, help="how many sequence points to mark")
    p.add_argument("--out", default="plane.svg")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.load(args.config)
        return args.func(args, cfg)
    except (TraptileError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
