"""Experiment harness and command-line interface.

Subcommands: sample, find-minor, fill-pi1, sweep, giant, surface, enumerate,
bound.  Sweeps are deterministic given the base seed and write a fixed CSV
schema; in coupled mode (the default) the per-face uniforms are shared
across the c grid, so each trial's success is a monotone step in c.

The environment variable MINCPLX_THREADS caps the worker count used for the
trials of a sweep cell.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence

from .complex_core import (ParseError, deserialize_complex, serialize_complex)
from .link_graphs import largest_component
from .minor_finder import (FinderConfig, default_delta, find_topological_minor,
                           preset_c, serialize_witness)
from .oracles import exhaustive_structured_minor_search
from .pi1_filler import all_three_cycles_fillable
from .random_gen import (RandomParams, derive_trial_seed, p_from_c,
                         sample_complex, sample_graph)
from .surface_census import (BoundParams, enumerate_sphere_triangulations,
                             surface_check, union_bound_closed_form,
                             union_bound_direct_sum, DEFAULT_K)

CSV_HEADER = "n,k,t,c,p,trials,successes,success_rate,mean_lcc_frac,mean_min_good_set,wall_ms"


@dataclass(frozen=True)
class SweepConfig:
    mode: str  # minor | pi1 | giant
    n_values: tuple
    k: int
    t: int
    c_grid: tuple
    trials: int
    base_seed: int
    out_path: Optional[str] = None
    coupled: bool = True
    repro: bool = False
    finder: Optional[FinderConfig] = None

    def __post_init__(self):
        if self.mode not in ("minor", "pi1", "giant"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(b <= a for a, b in zip(self.c_grid, self.c_grid[1:])):
            raise ValueError("c grid must be strictly increasing")


@dataclass
class SweepRow:
    n: int
    k: int
    t: int
    c: float
    p: float
    trials: int
    successes: int
    success_rate: float
    mean_lcc_frac: Optional[float]
    mean_min_good_set: Optional[float]
    wall_ms: float
    outcomes: list = field(default_factory=list)  # per-trial, not in the CSV

    def csv_line(self, repro: bool) -> str:
        wall = 0.0 if repro else self.wall_ms

        def fmt(x):
            return "" if x is None else (f"{x:.6g}" if isinstance(x, float) else str(x))

        return ",".join([
            str(self.n), str(self.k), str(self.t), fmt(self.c), fmt(self.p),
            str(self.trials), str(self.successes), fmt(self.success_rate),
            fmt(self.mean_lcc_frac), fmt(self.mean_min_good_set),
            fmt(round(wall, 3)),
        ])


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MINCPLX_THREADS", "1")))
    except ValueError:
        return 1


def _run_trials(fn, n_trials: int):
    """Run trial fn(i) for i in range(n_trials); results in trial order."""
    workers = _worker_count()
    if workers == 1:
        return [fn(i) for i in range(n_trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n_trials)))


def _trial_seed(config: SweepConfig, n_index: int, trial: int,
                c_index: int) -> int:
    seed = derive_trial_seed(config.base_seed, n_index * 1_000_003 + trial)
    if not config.coupled:
        seed = derive_trial_seed(seed, c_index + 1)
    return seed


def chernoff_upper(n: int, p: float, dev: float) -> float:
    """Upper-tail bound exp(-dev^2 / (2 (np + dev/3))) for Bin(n, p)."""
    if dev < 0:
        raise ValueError("dev must be >= 0")
    if dev == 0:
        return 1.0
    return math.exp(-dev * dev / (2.0 * (n * p + dev / 3.0)))


def chernoff_lower(n: int, p: float, dev: float) -> float:
    """Lower-tail bound exp(-dev^2 / (2np)) for Bin(n, p)."""
    if dev < 0:
        raise ValueError("dev must be >= 0")
    if dev == 0:
        return 1.0
    if n * p == 0:
        raise ValueError("lower-tail bound undefined for np = 0 with dev > 0")
    return math.exp(-dev * dev / (2.0 * n * p))


def giant_component_sweep(n: int, c_grid: Sequence[float], trials: int,
                          seed: int) -> List[SweepRow]:
    """Largest-component fraction of G(n, c/n) per grid point."""
    rows = []
    for ci, c in enumerate(c_grid):
        p = min(1.0, c / n)
        t0 = time.perf_counter()
        fracs = _run_trials(
            lambda i, p=p, ci=ci: _giant_trial(n, p, derive_trial_seed(seed, ci * 100_003 + i)),
            trials)
        wall = (time.perf_counter() - t0) * 1000.0
        rows.append(SweepRow(
            n=n, k=1, t=0, c=c, p=p, trials=trials,
            successes=sum(f >= 0.25 for f in fracs),
            success_rate=sum(f >= 0.25 for f in fracs) / trials,
            mean_lcc_frac=sum(fracs) / trials,
            mean_min_good_set=None, wall_ms=wall, outcomes=list(fracs)))
    return rows


def _giant_trial(n: int, p: float, seed: int) -> float:
    G = sample_graph(n, p, seed)
    return len(largest_component(G, G.vertices)) / n


def threshold_sweep(config: SweepConfig) -> List[SweepRow]:
    """Seeded (n, c) grid of minor-finding or cycle-filling trials; writes
    the CSV when an output path is configured."""
    rows = []
    for ni, n in enumerate(config.n_values):
        for ci, c in enumerate(config.c_grid):
            rows.append(_sweep_cell(config, ni, n, ci, c))
    if config.out_path:
        write_csv(rows, config.out_path, config.repro)
    return rows


def _sweep_cell(config: SweepConfig, ni: int, n: int, ci: int, c: float) -> SweepRow:
    p = p_from_c(c, n, config.k)
    t0 = time.perf_counter()

    def run(i: int):
        seed = _trial_seed(config, ni, i, ci)
        if config.mode == "giant":
            return (_giant_trial(n, min(1.0, c / n), seed), None)
        X = sample_complex(RandomParams(n=n, k=config.k, seed=seed, p=p))
        if config.mode == "minor":
            finder = config.finder or FinderConfig(t=config.t)
            finder = replace(finder, t=config.t, seed=derive_trial_seed(seed, 0))
            return (find_topological_minor(X, config.t, finder) is not None, None)
        report = all_three_cycles_fillable(X)
        return (report.fillable, report.min_good_set)

    results = _run_trials(run, config.trials)
    wall = (time.perf_counter() - t0) * 1000.0
    outcomes = [r[0] for r in results]
    goods = [r[1] for r in results if r[1] is not None]
    if config.mode == "giant":
        successes = sum(f >= 0.25 for f in outcomes)
        mean_lcc = sum(outcomes) / config.trials
    else:
        successes = sum(bool(o) for o in outcomes)
        mean_lcc = None
    return SweepRow(
        n=n, k=config.k, t=config.t, c=c, p=p, trials=config.trials,
        successes=successes, success_rate=successes / config.trials,
        mean_lcc_frac=mean_lcc,
        mean_min_good_set=(sum(goods) / len(goods)) if goods else None,
        wall_ms=wall, outcomes=outcomes)


def write_csv(rows: List[SweepRow], path: str, repro: bool):
    try:
        with open(path, "w") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(row.csv_line(repro) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc


def render_csv(rows: List[SweepRow], repro: bool) -> str:
    return CSV_HEADER + "\n" + "".join(row.csv_line(repro) + "\n" for row in rows)


# -- argument parsing ----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _float_list(text: str):
    return tuple(float(x) for x in text.split(","))


def _int_list(text: str):
    return tuple(int(x) for x in text.split(","))


def _build_parser() -> _Parser:
    parser = _Parser(prog="mincplx")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a random complex to a file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("find-minor", help="search for a complete-complex subdivision")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-random-tuples", type=int, default=200)
    p.add_argument("--scan-budget", type=int, default=10_000)
    p.add_argument("--out", help="write the witness here on success")
    p.add_argument("--oracle", action="store_true",
                   help="also run the exhaustive small-instance oracle")

    p = sub.add_parser("fill-pi1", help="check that all 3-cycles are fillable")
    p.add_argument("--in", dest="infile")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("sweep", help="threshold sweep over an (n, c) grid")
    p.add_argument("--mode", choices=["minor", "pi1", "giant"], default="minor")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--c", type=_float_list, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--independent", action="store_true",
                   help="fresh draws per c instead of coupled sampling")
    p.add_argument("--repro", action="store_true", help="zero wall_ms in the CSV")
    p.add_argument("--config", help="flat key = value file overriding flags")

    p = sub.add_parser("giant", help="giant-component sweep for G(n, c/n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=_float_list, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--repro", action="store_true")

    p = sub.add_parser("surface", help="closed-surface check of a 2-complex file")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("enumerate", help="enumerate labeled sphere triangulations")
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("bound", help="evaluate the genus-2 union bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--K", type=float, default=DEFAULT_K)

    return parser


def _apply_config_file(args, path: str):
    with open(path) as fh:
        for i, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{i}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if not hasattr(args, key):
                raise _UsageError(f"{path}:{i}: unknown key {key!r}")
            current = getattr(args, key)
            if isinstance(current, tuple):
                caster = _float_list if isinstance(current[0], float) else _int_list
                setattr(args, key, caster(value))
            elif isinstance(current, bool):
                setattr(args, key, value.lower() in ("1", "true", "yes"))
            elif isinstance(current, int):
                setattr(args, key, int(value))
            elif isinstance(current, float):
                setattr(args, key, float(value))
            else:
                setattr(args, key, value)


def _cmd_sample(args) -> int:
    params = RandomParams(n=args.n, k=args.k, seed=args.seed, p=args.p, c=args.c)
    X = sample_complex(params)
    with open(args.out, "w") as fh:
        fh.write(serialize_complex(X))
    print(f"n={X.n} k={X.k} faces={X.face_count} p={params.probability:.6g} "
          f"seed={args.seed} out={args.out}")
    return 0


def _cmd_find_minor(args) -> int:
    with open(args.infile) as fh:
        X = deserialize_complex(fh.read())
    config = FinderConfig(t=args.t, seed=args.seed,
                          max_random_tuples=args.max_random_tuples,
                          deterministic_scan_budget=args.scan_budget)
    witness = find_topological_minor(X, args.t, config)
    if args.oracle:
        print(f"oracle={exhaustive_structured_minor_search(X, args.t)}")
    if witness is None:
        print("not-found")
        return 1
    text = serialize_witness(witness, X.n)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(f"found branch={' '.join(str(a) for a in witness.branch)}")
    return 0


def _cmd_fill_pi1(args) -> int:
    if args.infile:
        with open(args.infile) as fh:
            X = deserialize_complex(fh.read())
        p = None
    else:
        if args.n is None or (args.c is None and args.p is None):
            raise _UsageError("fill-pi1 needs --in or --n with --c/--p")
        params = RandomParams(n=args.n, k=2, seed=args.seed, p=args.p, c=args.c)
        X = sample_complex(params)
        p = params.probability
    report = all_three_cycles_fillable(X)
    if args.verbose and report.failing_cycle:
        print(f"cycle {report.failing_cycle}: unfillable")
    print(f"fillable={report.fillable} min_good_set={report.min_good_set} "
          f"n={X.n} p={'' if p is None else format(p, '.6g')} seed={args.seed}")
    return 0 if report.fillable else 1


def _cmd_sweep(args) -> int:
    if args.config:
        _apply_config_file(args, args.config)
    config = SweepConfig(mode=args.mode, n_values=tuple(args.n), k=args.k,
                         t=args.t, c_grid=tuple(args.c), trials=args.trials,
                         base_seed=args.seed, out_path=args.out,
                         coupled=not args.independent, repro=args.repro)
    rows = threshold_sweep(config)
    if not args.out:
        sys.stdout.write(render_csv(rows, args.repro))
    return 0


def _cmd_giant(args) -> int:
    rows = giant_component_sweep(args.n, args.c, args.trials, args.seed)
    if args.out:
        write_csv(rows, args.out, args.repro)
    else:
        sys.stdout.write(render_csv(rows, args.repro))
    return 0


def _cmd_surface(args) -> int:
    with open(args.infile) as fh:
        X = deserialize_complex(fh.read())
    if X.k != 2:
        raise _UsageError("surface check requires a 2-complex")
    tris = list(X.top_faces())
    res = surface_check(tris)
    genus = res.genus if res.genus is not None else "NA"
    print(f"closed={res.is_closed_surface} chi={res.euler_characteristic} "
          f"orientable={res.orientable} genus={genus} f2={len(tris)}")
    return 0


def _cmd_enumerate(args) -> int:
    for tri_set in enumerate_sphere_triangulations(args.l):
        print(" ".join("-".join(str(v) for v in tri) for tri in sorted(tri_set)))
    return 0


def _cmd_bound(args) -> int:
    params = BoundParams(n=args.n, c=args.c, K=args.K)
    closed = union_bound_closed_form(params)
    direct = union_bound_direct_sum(params)
    print(f"closed_form={closed:.12e}")
    print(f"direct_sum={direct:.12e}")
    return 0


_COMMANDS = {
    "sample": _cmd_sample,
    "find-minor": _cmd_find_minor,
    "fill-pi1": _cmd_fill_pi1,
    "sweep": _cmd_sweep,
    "giant": _cmd_giant,
    "surface": _cmd_surface,
    "enumerate": _cmd_enumerate,
    "bound": _cmd_bound,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())
