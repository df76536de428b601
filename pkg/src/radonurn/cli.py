"""Command-line front end: ``radonurn <subcommand> [flags]``.

Every subcommand except ``gen`` writes a JSON envelope
``{"schema": 1, "tool": ..., "version": ..., "command": ..., "config": ...,
"result": ..., "verification": ...}`` to ``--output`` (``-`` is stdout).
Output is byte-identical for identical arguments and inputs; wall time is
added only with ``--timing``. Exit codes: 0 success, 1 domain error,
2 verification failure, 64 usage error.
"""
import argparse
from concurrent.futures import ThreadPoolExecutor
import json
import math
import os
import sys
import time
import warnings

import numpy as np

from . import __version__
from ._rng import trial_seed
from .bodies import parse_body
from .centernet import (
    CenterNetParams,
    DEDUP_TOL,
    build_weak_eps_net,
    draw_weak_net_sample,
    universal_centerpoints,
    verify_center_net,
)
from .centerpoint import SampleSizeWarning, approx_centerpoint
from .convex_opt import ZOO, lower_bound_min, success_cap
from .datasets import DISTRIBUTIONS, generate
from .depth import tukey_depth, tukey_depth_exact, tukey_depth_sampled
from .errors import BoundViolation, IterationBudgetExceeded, RadonUrnError
from .funcnet import HEAVY, FuncNet, build_funcnet, query_funcnet
from .geometry import as_point, load_points, points_to_csv, radon_point
from .urn import UrnConfig, gamblers_ruin_top, simulate_urn, simulate_walk, urn_min_n, visits_bound

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64

THREADS_ENV = "APP_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# --- argument types: domain checks happen at parse time, before dispatch ---

def _real(lo=None, hi=None, lo_open=True, hi_open=True):
    def parse(text):
        try:
            x = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not math.isfinite(x):
            raise argparse.ArgumentTypeError("must be finite")
        if lo is not None and (x < lo or (lo_open and x == lo)):
            raise argparse.ArgumentTypeError(f"{x} is out of range")
        if hi is not None and (x > hi or (hi_open and x == hi)):
            raise argparse.ArgumentTypeError(f"{x} is out of range")
        return x

    return parse


def _int(lo):
    def parse(text):
        try:
            k = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if k < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}")
        return k

    return parse


def _seed(text):
    try:
        k = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not 0 <= k < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return k


def _vector(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from None


unit = _real(0.0, 1.0)
positive = _real(0.0)


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_trials(fn, seeds):
    """``[fn(s) for s in seeds]``, spread over ``APP_THREADS`` threads, in input order."""
    threads = _threads()
    if threads == 1 or len(seeds) == 1:
        return [fn(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, seeds))


def _trial_seeds(seed, trials):
    return [trial_seed(seed, i) for i in range(trials)]


# --- subcommands ------------------------------------------------------------
# each returns (result, verification or None, verification passed)

def cmd_radon(args):
    part = radon_point(load_points(args.input))
    return part.to_dict(), None, True


def cmd_depth(args):
    P = load_points(args.input)
    q = as_point(args.query, P.shape[1])
    if args.method == "exact":
        res = tukey_depth_exact(P, q)
    elif args.method == "sampled":
        res = tukey_depth_sampled(P, q, args.directions, args.seed)
    else:
        res = tukey_depth(P, q, args.directions, args.seed)
    out = res.to_dict()
    out["n"] = int(P.shape[0])
    return out, None, True


def cmd_centerpoint(args):
    P = load_points(args.input)
    n, d = P.shape

    def one(seed):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SampleSizeWarning)
            r = approx_centerpoint(P, args.eps_b, args.phi, seed, c_s=args.c_s, c_t=args.c_t)
        out = r.to_dict()
        out["seed"] = seed
        if args.verify:
            dr = tukey_depth(P, r.point, args.directions, seed)
            out["depth"] = dr.to_dict()
        return out

    runs = run_trials(one, _trial_seeds(args.seed, args.trials))
    verification, ok = None, True
    if args.verify:
        target = (1.0 - args.eps_b) * n / (d + 2) ** 2
        depths = [r["depth"]["depth"] for r in runs]
        ok = all(x >= target for x in depths)
        verification = {
            "target_depth": target,
            "depths": depths,
            "method": runs[0]["depth"]["method"],
            "passed": ok,
        }
    result = runs[0] if args.trials == 1 else {"trials": runs}
    return result, verification, ok


def cmd_urn_sim(args):
    phi = args.phi
    n = args.n if args.n is not None else urn_min_n(args.t, args.eps_w, args.eps_a, phi)
    base = UrnConfig.sized(args.t, args.eps_w, args.eps_a, phi, n=n)
    if args.r0 is not None:
        base = UrnConfig(n, args.t, args.r0, args.eps_w, args.eps_a)

    def one(seed):
        return simulate_urn(base.with_seed(seed), args.max_iterations)

    seeds = _trial_seeds(args.seed, args.trials)
    traces = run_trials(one, seeds)
    records = []
    for i, (s, tr) in enumerate(zip(seeds, traces)):
        rec = tr.to_dict()
        rec.update(trial=i, seed=s)
        records.append(rec)
    if args.csv:
        size = max(tr.dwell.shape[0] for tr in traces)
        dwell = np.zeros(size, dtype=np.int64)
        visits = np.zeros(size, dtype=np.int64)
        for tr in traces:
            dwell[: tr.dwell.shape[0]] += tr.dwell
            visits[: tr.visits.shape[0]] += tr.visits
        with open(args.csv, "w") as fh:
            fh.write("level,dwell,visits\n")
            for level in range(size):
                fh.write(f"{level},{dwell[level]},{visits[level]}\n")
    all_blue = sum(r["outcome"] == "AllBlue" for r in records)
    result = {
        "config": {"n": base.n, "t": base.t, "r0": base.r0, "eps_w": base.eps_w, "eps_a": base.eps_a,
                   "r_max": base.r_max, "red_cap": base.red_cap},
        "trials": records,
        "all_blue_fraction": all_blue / len(records),
    }
    return result, None, True


def cmd_walk_sim(args):
    p_down = 0.5 + args.eps_w

    def one(seed):
        return simulate_walk(args.start, args.r_max, args.eps_w, seed, args.max_steps)

    seeds = _trial_seeds(args.seed, args.trials)
    traces = run_trials(one, seeds)
    records = []
    for i, (s, tr) in enumerate(zip(seeds, traces)):
        rec = tr.to_dict()
        rec.update(trial=i, seed=s, max_visits=int(tr.visits[1:].max()) if tr.visits.shape[0] > 1 else 0)
        records.append(rec)
    top = sum(r["outcome"] == "ReachedRmax" for r in records)
    result = {
        "trials": records,
        "top_fraction": top / len(records),
        "top_probability_exact": gamblers_ruin_top(args.start, args.r_max, p_down),
        "visits_bound": visits_bound(args.eps_w, args.phi),
    }
    return result, None, True


def _make_function(args, d):
    name = args.function
    params = {}
    if args.params:
        with open(args.params) as fh:
            params = json.load(fh)
    if name in ("quadratic", "l1", "l2"):
        center = args.center if args.center is not None else params.get("center", [0.0] * d)
        if len(center) != d:
            raise UsageError(f"--center needs {d} coordinates")
        if name == "quadratic":
            return ZOO[name](center, params.get("A"))
        return ZOO[name](center)
    if name == "linear":
        a = args.center if args.center is not None else params.get("a")
        if a is None or len(a) != d:
            raise UsageError(f"linear needs {d} coefficients via --center or params 'a'")
        return ZOO[name](a, params.get("b", 0.0))
    if "A" not in params or "b" not in params:
        raise UsageError(f"{name} needs --params with 'A' and 'b'")
    return ZOO[name](params["A"], params["b"])


def cmd_lower_bound(args):
    P = load_points(args.input)
    n, d = P.shape
    f = _make_function(args, d)
    res = lower_bound_min(P, f, c_quality=args.c_quality, seed=args.seed, stop_size=args.stop_size)
    out = res.to_dict()
    out["success_cap"] = success_cap(n, d, args.c_quality, args.stop_size)
    verification, ok = None, True
    if args.verify:
        exact = min(f(p)[0] for p in P)
        ok = res.value <= exact + 1e-12
        verification = {"exact_min": exact, "passed": ok}
    return out, verification, ok


def cmd_funcnet_build(args):
    P = load_points(args.input)
    net = build_funcnet(P, args.eps, args.phi, args.seed, c_s=args.c_s, c_tau=args.c_tau)
    return json.loads(net.to_json()), None, True


def _load_net(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    if "result" in data and "schema" in data:
        data = data["result"]
    return FuncNet.from_json(json.dumps(data))


def cmd_funcnet_query(args):
    net = _load_net(args.net)
    body = parse_body(args.body)
    if body.dim != net.dim:
        raise UsageError(f"body has dimension {body.dim}, net {net.dim}")
    tr = query_funcnet(net, body, seed=args.seed)
    out = tr.to_dict()
    out["tau"] = net.params.tau
    out["stop_threshold"] = net.params.stop_threshold
    verification, ok = None, True
    if args.verify and args.input:
        P = load_points(args.input)
        count = body.count(P)
        heavy = count >= net.params.eps * P.shape[0]
        # a Light verdict on a heavy body is the only unsound outcome
        ok = not (heavy and tr.verdict != HEAVY)
        verification = {"count": count, "n": int(P.shape[0]), "heavy": bool(heavy), "passed": ok}
    return out, verification, ok


def cmd_weak_net(args):
    P = load_points(args.input)
    net = build_weak_eps_net(P, args.eps, args.phi, args.seed, c_s=args.c_s)
    if args.points_out:
        with open(args.points_out, "w") as fh:
            fh.write(points_to_csv(net))
    out = {"size": int(net.shape[0]), "sample_size": CenterNetParams.create(2, args.eps, args.phi, args.c_s).sample_size}
    if not args.points_out:
        out["points"] = net.tolist()
    return out, None, True


def cmd_center_net_verify(args):
    P = load_points(args.input)
    if args.sample:
        N = load_points(args.sample)
    else:
        N = draw_weak_net_sample(P, args.eps, args.phi, args.seed, c_s=args.c_s)
    body = parse_body(args.body)
    members = P[body.contains(P)]
    params = CenterNetParams.create(2, args.eps, args.phi, args.c_s, log_base=args.log_base)
    try:
        res = verify_center_net(N, P, members, args.eps, log_base=args.log_base)
    except BoundViolation as exc:
        return {"error": str(exc), "tau": params.tau}, {"passed": False, "reason": "iteration bound"}, False
    depth = tukey_depth_exact(members, res.point).depth
    cands = universal_centerpoints(N).candidates
    scale = max(1.0, float(np.max(np.abs(N))))
    in_net = bool(np.any(np.all(np.abs(cands - res.point) <= 2 * DEDUP_TOL * scale, axis=1)))
    ok = depth >= params.beta * members.shape[0] and res.iterations <= params.tau and in_net
    out = {
        "point": res.point.tolist(),
        "iterations": res.iterations,
        "tau": params.tau,
        "beta": params.beta,
        "members": int(members.shape[0]),
        "sample_size": int(N.shape[0]),
    }
    verification = {"depth": depth, "required": params.beta * members.shape[0], "in_net": in_net, "passed": ok}
    return out, verification, ok


# --- parser -----------------------------------------------------------------

def _common(p, stochastic=True, output=True, needs_input=True):
    if needs_input:
        p.add_argument("--input", default="-", help="point CSV/JSON ('-' for stdin)")
    if stochastic:
        p.add_argument("--seed", type=_seed, required=True)
    if output:
        p.add_argument("--output", default="-", help="envelope path ('-' for stdout)")
        p.add_argument("--timing", action="store_true", help="add wall time (breaks byte-identity)")


def build_parser():
    parser = _Parser(prog="radonurn", description="Approximate centerpoints and their applications.")
    parser.add_argument("--version", action="version", version=f"radonurn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("radon", help="Radon point of d+2 points")
    _common(p, stochastic=False)
    p.set_defaults(func=cmd_radon)

    p = sub.add_parser("depth", help="Tukey depth of a query point")
    _common(p, stochastic=False)
    p.add_argument("--query", type=_vector, required=True)
    p.add_argument("--method", choices=["auto", "exact", "sampled"], default="auto")
    p.add_argument("--directions", type=_int(1), default=10_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("centerpoint", help="approximate centerpoint")
    _common(p)
    p.add_argument("--eps-b", type=unit, default=0.5)
    p.add_argument("--phi", type=unit, default=0.1)
    p.add_argument("--c-s", type=positive, default=1.0)
    p.add_argument("--c-t", type=positive, default=2.0)
    p.add_argument("--trials", type=_int(1), default=1)
    p.add_argument("--verify", action="store_true", help="compute the depth of the output")
    p.add_argument("--directions", type=_int(1), default=100_000)
    p.set_defaults(func=cmd_centerpoint)

    p = sub.add_parser("urn-sim", help="play Radon's urn")
    _common(p, needs_input=False)
    p.add_argument("--n", type=_int(1))
    p.add_argument("--t", type=_int(2), default=4)
    p.add_argument("--r0", type=_int(0))
    p.add_argument("--eps-w", type=_real(0.0, 0.25), default=1.0 / 6.0)
    p.add_argument("--eps-a", type=unit, default=0.5)
    p.add_argument("--phi", type=unit, default=0.1)
    p.add_argument("--trials", type=_int(1), default=1)
    p.add_argument("--max-iterations", type=_int(1), default=10**9)
    p.add_argument("--csv", help="aggregate per-level dwell/visits CSV")
    p.set_defaults(func=cmd_urn_sim)

    p = sub.add_parser("walk-sim", help="biased +-1 walk absorbed at 0 and r_max")
    _common(p, needs_input=False)
    p.add_argument("--start", type=_int(1), required=True)
    p.add_argument("--r-max", type=_int(2), required=True)
    p.add_argument("--eps-w", type=_real(0.0, 0.25), default=1.0 / 6.0)
    p.add_argument("--phi", type=unit, default=0.1)
    p.add_argument("--trials", type=_int(1), default=1)
    p.add_argument("--max-steps", type=_int(1), default=10**8)
    p.set_defaults(func=cmd_walk_sim)

    p = sub.add_parser("lower-bound", help="certified lower bound on min_P f")
    _common(p)
    p.add_argument("--function", choices=sorted(ZOO), required=True)
    p.add_argument("--center", type=_vector, help="centre (quadratic, l1, l2) or coefficients (linear)")
    p.add_argument("--params", help="JSON with A, b (max-affine, logsumexp), A (quadratic) or a, b (linear)")
    p.add_argument("--c-quality", type=positive)
    p.add_argument("--stop-size", type=_int(1))
    p.add_argument("--verify", action="store_true", help="compare with the exact minimum over P")
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("funcnet", help="functional nets")
    fsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = fsub.add_parser("build", help="draw and store the net sample")
    _common(b)
    b.add_argument("--eps", type=unit, required=True)
    b.add_argument("--phi", type=unit, default=0.1)
    b.add_argument("--c-s", type=positive, default=1.0)
    b.add_argument("--c-tau", type=positive, default=32.0)
    b.set_defaults(func=cmd_funcnet_build)
    q = fsub.add_parser("query", help="query a stored net with a separation oracle")
    _common(q, needs_input=False)
    q.add_argument("--net", required=True, help="net JSON (or a build envelope)")
    q.add_argument("--body", required=True, help="ball:x,..,r | slab:a,..,lo,hi | polytope:f.json | polygon:f.json | ellipsoid:f.json")
    q.add_argument("--input", help="point set, for --verify")
    q.add_argument("--verify", action="store_true")
    q.set_defaults(func=cmd_funcnet_query)

    p = sub.add_parser("weak-net", help="weak eps-net of a planar point set")
    _common(p)
    p.add_argument("--eps", type=positive, required=True)
    p.add_argument("--phi", type=unit, default=0.1)
    p.add_argument("--c-s", type=positive, default=1.0)
    p.add_argument("--points-out", help="write the net as point CSV here")
    p.set_defaults(func=cmd_weak_net)

    p = sub.add_parser("center-net", help="center nets")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = csub.add_parser("verify", help="replay the center-net search for one heavy body")
    _common(v)
    v.add_argument("--body", required=True)
    v.add_argument("--sample", help="sample N (default: drawn with --eps/--phi/--seed)")
    v.add_argument("--eps", type=positive, required=True)
    v.add_argument("--phi", type=unit, default=0.1)
    v.add_argument("--c-s", type=positive, default=1.0)
    v.add_argument("--log-base", choices=["e", "2"], default="e")
    v.set_defaults(func=cmd_center_net_verify)

    p = sub.add_parser("gen", help="synthesize a point set (CSV)")
    p.add_argument("--dist", choices=sorted(DISTRIBUTIONS), required=True)
    p.add_argument("--n", type=_int(1), required=True)
    p.add_argument("--d", type=_int(1), required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=None)
    return parser


_NOT_CONFIG = {"func", "output", "timing"}


def _config(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_CONFIG}


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fail(code, message):
    print(f"radonurn: {message}", file=sys.stderr)
    return code


def run(argv=None):
    """Parse ``argv``, dispatch, write the envelope; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.command == "gen":
        try:
            X = generate(args.dist, args.n, args.d, args.seed)
        except RadonUrnError as exc:
            return _fail(EXIT_DOMAIN, exc)
        _write(args.output, points_to_csv(X))
        return EXIT_OK
    start = time.perf_counter()
    try:
        result, verification, ok = args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except IterationBudgetExceeded as exc:
        return _fail(EXIT_DOMAIN, f"iteration budget exceeded: {exc}")
    except (RadonUrnError, OSError, ValueError, KeyError) as exc:
        return _fail(EXIT_DOMAIN, f"{type(exc).__name__}: {exc}")
    env = {
        "schema": 1,
        "tool": "radonurn",
        "version": __version__,
        "command": args.command + (f" {args.action}" if getattr(args, "action", None) else ""),
        "config": _config(args),
        "result": result,
    }
    if verification is not None:
        env["verification"] = verification
    if args.timing:
        env["wall_time_ms"] = (time.perf_counter() - start) * 1e3
    _write(args.output, json.dumps(env, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
