"""Command-line front end.

Exit status is 0 on success, 2 for bad arguments and 1 when a computation
rejects its inputs.  Floats are written with 17 significant digits and
outcomes in lexicographic order, so identical invocations give identical
output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import altstates, bell, detection, ghz, hardy, validation
from .engine import distribution, double_integral_polynomial, evaluate_setting_poly, lossy_distribution, probability
from .model import AngleSettings, FockBellError, Geometry, LossSpec, OutcomeCounts, Placement, SourceSpec, build_network, compositions

_PLACEMENT = {Geometry.SOURCE_LOSS: Placement.AT_SOURCES, Geometry.DETECTOR_LOSS: Placement.AT_DETECTORS}


class UsageError(Exception):
    """Bad invocation; maps to exit status 2."""


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format(float(v), ".17g")
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, (Fraction, float)):
        return float(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _exact(v) -> str:
    return str(v) if isinstance(v, (int, Fraction)) else ""


class Table:
    def __init__(self, columns: Sequence[str]):
        self.columns = list(columns)
        self.rows: list[list] = []

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError("row width mismatch")
        self.rows.append(list(values))

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps([{c: _jsonable(v) for c, v in zip(self.columns, r)} for r in self.rows], indent=2) + "\n"
        lines = [",".join(self.columns)]
        lines += [",".join(_fmt(v) for v in r) for r in self.rows]
        return "\n".join(lines) + "\n"


class Report:
    def __init__(self, data: dict):
        self.data = data

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(_jsonable(self.data), indent=2, sort_keys=False) + "\n"
        lines = ["key,value"]
        for k, v in self.data.items():
            if isinstance(v, (list, tuple, dict)):
                v = json.dumps(_jsonable(v), separators=(",", ":"))
                v = '"' + v.replace('"', '""') + '"'
            else:
                v = _fmt(v)
            lines.append(f"{k},{v}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _angle(s: str) -> float:
    """Float, optionally with a ``pi`` factor: ``pi/2``, ``0.25pi``, ``-pi``."""
    t = s.strip().lower().replace(" ", "")
    try:
        if "pi" not in t:
            return float(t)
        head, _, tail = t.partition("pi")
        head = head.rstrip("*")
        if head in ("", "+"):
            num = 1.0
        elif head == "-":
            num = -1.0
        else:
            num = float(head)
        den = 1.0
        if tail:
            if not tail.startswith("/"):
                raise ValueError
            den = float(tail[1:])
        return num * math.pi / den
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad angle {s!r}") from None


def _fraction(s: str):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad number {s!r}") from None


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {s!r}") from None


def _grid(s: str) -> list[float]:
    """``start:stop:num`` (inclusive), a comma list, or one value."""
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"bad grid {s!r}; use start:stop:num")
        a, b = _angle(parts[0]), _angle(parts[1])
        try:
            n = int(parts[2])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad grid size in {s!r}") from None
        if n < 1:
            raise argparse.ArgumentTypeError("grid needs at least one point")
        if n == 1:
            return [a]
        return [a + (b - a) * k / (n - 1) for k in range(n)]
    return [_angle(x) for x in s.split(",") if x.strip()]


def _get(args, name, default):
    v = getattr(args, name, None)
    return default if v is None else v


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("FOCKBELL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"FOCKBELL_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _angles(args, chi_needed: bool = False) -> AngleSettings:
    chi = getattr(args, "chi", None)
    if chi_needed and chi is None:
        chi = 0.0
    return AngleSettings(_get(args, "zeta", 0.0), _get(args, "theta", 0.0), chi if chi_needed else None)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_prob(args):
    kind = Geometry(_get(args, "geometry", "fig1"))
    na, nb = _get(args, "n_alpha", 1), _get(args, "n_beta", 1)
    if kind is Geometry.GHZ:
        source = SourceSpec(na, nb, _get(args, "n_gamma", 1))
    else:
        if args.n_gamma is not None:
            raise UsageError("--n-gamma only applies to fig3-ghz")
        source = SourceSpec(na, nb)
    angles = _angles(args, kind is Geometry.GHZ)
    include_zeros = bool(args.include_zeros)

    if kind.is_lossy:
        t = _get(args, "t", Fraction(1))
        loss = LossSpec(t, _PLACEMENT[kind])
        dist = lossy_distribution(source, loss, angles, args.detected)
    else:
        if args.t is not None or args.detected is not None:
            raise UsageError("--t and --detected apply to the lossy geometries only")
        omap = build_network(kind, angles)
        if args.regions:
            dist = distribution(omap, source, support="regions", region_counts=tuple(args.regions), normalize=True)
        else:
            dist = distribution(omap, source)

    n_cols = len(next(iter(dist.entries))) if dist.entries else 0
    table = Table([f"m{j + 1}" for j in range(n_cols)] + ["probability", "exact"])
    for m, p in dist.sorted_items():
        if p == 0 and not include_zeros:
            continue
        table.add(*m, p, _exact(p))
    return table


def cmd_bell(args):
    n = _get(args, "n", 2)
    detected = args.detected
    conditioned = not args.unconditioned
    res = bell.maximize_q(n, detected, conditioned, full_search=bool(args.full_search))
    e = bell.correlator_function(n, detected, conditioned)
    w = bell.optimal_omega(n)
    return Report(
        {
            "n": n,
            "detected": n if detected is None else detected,
            "conditioned": conditioned,
            "q_max": res.q_max,
            "omega_star": res.omega_star,
            "phi_a": res.settings[0],
            "phi_a_prime": res.settings[1],
            "phi_b": res.settings[2],
            "phi_b_prime": res.settings[3],
            "omega_ln3": w,
            "q_at_omega_ln3": float(3 * e(w) - e(3 * w)),
            "violates": res.q_max > 2,
        }
    )


def cmd_ghz(args):
    n = _get(args, "n", 3)
    if args.contradiction:
        rep = ghz.ghz_contradiction(n)
        return Report({"n": n, "quantum": rep.quantum, "local_realism": rep.local_realism, "contradiction": rep.contradiction})
    angles = _angles(args, True)
    dist = ghz.ghz_distribution(n, angles)
    if args.distribution:
        table = Table([f"m{j + 1}" for j in range(6)] + ["probability", "exact"])
        for m, p in dist.sorted_items():
            if p == 0 and not args.include_zeros:
                continue
            table.add(*m, p, _exact(p))
        return table
    return Report(
        {
            "n": n,
            "zeta": angles.zeta,
            "theta": angles.theta,
            "chi": angles.chi,
            "abc_closed_form": ghz.abc_correlator(n, angles.zeta, angles.theta, angles.chi),
            "abc_from_distribution": float(ghz.abc_from_distribution(dist)),
        }
    )


def cmd_hardy(args):
    n = _get(args, "n", 6)
    if args.report:
        return Report(hardy.hardy_report(n).as_dict())
    config = _get(args, "arrangement", "DD")
    if config not in hardy.CONFIGS:
        raise UsageError(f"--arrangement must be one of {', '.join(hardy.CONFIGS)}")
    dist = hardy.hardy_distribution(config, n)
    table = Table(["m1", "m2", "m3", "m4", "amplitude_re", "amplitude_im", "probability", "exact"])
    for m, p in dist.sorted_items():
        if p == 0 and not args.include_zeros:
            continue
        amp = hardy.hardy_amplitude(config, n, m)
        table.add(*m, amp.real, amp.imag, p, _exact(p))
    return table


def cmd_altstate(args):
    state = _get(args, "state", "phase")
    angles = _angles(args)
    if args.bchsh:
        if state != "coherent-avg":
            raise UsageError("--bchsh is available for --state coherent-avg")
        m = _get(args, "detected", 2)
        res = altstates.classical_bchsh_search(m)
        return Report({"state": state, "detected": m, "q_max": res.q_max, "settings": list(res.settings)})
    rows = []
    if state == "phase":
        n = _get(args, "n", 2)
        phi0 = _get(args, "phi0", 0.0)
        st = altstates.GeneralTwoModeState.phase(n, phi0)
        dist = altstates.general_state_distribution(st, angles)
        for m, p in dist.sorted_items():
            rows.append((m, p, altstates.phase_state_probability(n, phi0, m, angles)))
        cols = ["probability", "closed_form"]
    elif state == "fock":
        na, nb = _get(args, "n_alpha", 1), _get(args, "n_beta", 1)
        st = altstates.GeneralTwoModeState.fock(na, nb)
        dist = altstates.general_state_distribution(st, angles)
        omap = build_network(Geometry.FIG1, angles)
        for m, p in dist.sorted_items():
            rows.append((m, p, probability(omap, SourceSpec(na, nb), m)))
        cols = ["probability", "fock_engine"]
    elif state == "coherent":
        m_tot = _get(args, "detected", 2)
        pa, pb = _get(args, "phi_alpha", 0.0), _get(args, "phi_beta", 0.0)
        for c in compositions(m_tot, 4):
            rows.append((OutcomeCounts(c), altstates.coherent_probability(pa, pb, c, angles), ""))
        cols = ["probability", "note"]
    elif state == "coherent-avg":
        m_tot = _get(args, "detected", 2)
        dist = altstates.coherent_averaged_distribution(m_tot, angles)
        for m, p in dist.sorted_items():
            rows.append((m, p, _exact(p)))
        cols = ["probability", "exact"]
    else:
        raise UsageError("--state must be phase, fock, coherent or coherent-avg")
    table = Table(["m1", "m2", "m3", "m4"] + cols)
    for m, p, extra in rows:
        table.add(*m, p, extra)
    return table


def cmd_detection(args):
    na, nb = _get(args, "n_alpha", 1), _get(args, "n_beta", 1)
    source = SourceSpec(na, nb)
    angles = _angles(args)
    if args.counting:
        q, m1, m2 = args.counting
        return Report(
            {
                "q_pix": q,
                "m1": m1,
                "m2": m2,
                "log_exact": detection.counting_factor(q, m1, m2, "exact"),
                "log_stirling": detection.counting_factor(q, m1, m2, "stirling"),
            }
        )
    if args.sigmas:
        table = Table(["sigma", "ab"])
        for s, e in detection.mismatch_sweep(source, angles, args.sigmas, pattern=_get(args, "pattern", "alternating")):
            table.add(s, e)
        return table
    model = detection.PixelModel.aligned(source.total, angles, pixel_count=_get(args, "pixel_count", 10_000))
    dev = detection.aligned_limit_check(model, source, angles)
    return Report({"n_alpha": na, "n_beta": nb, "aligned_max_deviation": dev, "ok": dev < 1e-12})


def _sweep_point(quantity: str, args, n: int, zeta: float, theta: float, chi: float):
    if quantity == "probability":
        if args.outcome is None:
            raise UsageError("sweep of probability needs --outcome")
        kind = Geometry(_get(args, "geometry", "fig1"))
        if kind is Geometry.GHZ:
            k = n // 3
            omap = build_network(kind, AngleSettings(zeta, theta, chi))
            return float(probability(omap, SourceSpec(k, k, n - 2 * k), args.outcome))
        na = n - n // 2
        source = SourceSpec(na, n - na)
        if kind.is_lossy:
            t = _get(args, "t", Fraction(1))
            poly = double_integral_polynomial(source, args.outcome, t, _PLACEMENT[kind])
            return float(evaluate_setting_poly(poly, AngleSettings(zeta, theta)))
        omap = build_network(kind, AngleSettings(zeta, theta))
        return float(probability(omap, source, args.outcome))
    if quantity == "ab":
        source = SourceSpec(n - n // 2, n // 2)
        return bell.ab_correlator(source, zeta, theta, None, args.detected, not args.unconditioned)
    if quantity == "q":
        return bell.maximize_q(n, args.detected, not args.unconditioned).q_max
    if quantity == "abc":
        return ghz.abc_correlator(n, zeta, theta, chi)
    raise UsageError(f"unknown quantity {quantity!r}")


def cmd_sweep(args):
    quantity = _get(args, "quantity", "ab")
    ns = _get(args, "n", [2])
    zetas = _get(args, "zeta", [0.0])
    thetas = _get(args, "theta", [0.0])
    chis = _get(args, "chi", [0.0])
    grid = [(n, z, t, c) for n in ns for z in zetas for t in thetas for c in chis]
    # validate once up front so argument errors surface before the pool starts
    if grid:
        _sweep_point(quantity, args, *grid[0])
    with ThreadPoolExecutor(max_workers=_threads(args)) as pool:
        values = list(pool.map(lambda p: _sweep_point(quantity, args, *p), grid))
    table = Table(["n", "zeta", "theta", "chi", quantity])
    for (n, z, t, c), v in zip(grid, values):
        table.add(n, z, t, c, v)
    return table


def _validate_checks():
    from .oracle import oracle_distribution

    yield "wallis_k", all(validation.wallis_k(n) == validation.norm_j(n, 0) for n in range(12))
    for n in range(0, 7):
        ok = all(validation.check_ideal_chain(SourceSpec(a, n - a)).ok for a in range(n + 1))
        yield f"ideal_chain_N{n}", ok
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        yield f"lossy_chain_T{t}", validation.check_lossy_chain(SourceSpec(2, 2), t).ok and validation.check_lossy_chain(
            SourceSpec(2, 2), t, Placement.AT_DETECTORS
        ).ok
    for kind in (Geometry.FIG1, Geometry.HARDY_DD, Geometry.HARDY_DPDP):
        omap = build_network(kind, AngleSettings(math.pi / 2, -math.pi / 2))
        ok = True
        for source in (SourceSpec(1, 1), SourceSpec(2, 1), SourceSpec(2, 2)):
            a = distribution(omap, source)
            b = oracle_distribution(omap, source)
            ok = ok and all(a.polynomials[m] == b.polynomials[m] for m in a.entries) and a.total() == 1
        yield f"oracle_{kind.value}", ok
    omap = build_network(Geometry.GHZ, AngleSettings(0.0, math.pi / 2, 0.0))
    a = distribution(omap, SourceSpec(1, 1, 1))
    b = oracle_distribution(omap, SourceSpec(1, 1, 1))
    yield "oracle_fig3-ghz", all(a.polynomials[m] == b.polynomials[m] for m in a.entries)


def cmd_validate(args):
    table = Table(["check", "ok"])
    all_ok = True
    for name, ok in _validate_checks():
        table.add(name, bool(ok))
        all_ok = all_ok and bool(ok)
    args._failed = not all_ok
    return table


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="file of 'key = value' lines; flags override it")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="output format (default csv)")
    p.add_argument("--out", help="write output to this file instead of stdout")


def _settings(p, chi: bool = False) -> None:
    p.add_argument("--zeta", type=_angle, help="Alice's phase setting (radians, 'pi' allowed)")
    p.add_argument("--theta", type=_angle, help="Bob's phase setting")
    if chi:
        p.add_argument("--chi", type=_angle, help="third setting (fig3-ghz)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockbell", description="Fock-state interferometry: outcome distributions, Bell/GHZ/Hardy tests.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="outcome distribution", description="Columns: m1..mJ, probability, exact (rational when available).")
    _common(p)
    p.add_argument("--geometry", choices=[g.value for g in Geometry])
    p.add_argument("--n-alpha", type=int)
    p.add_argument("--n-beta", type=int)
    p.add_argument("--n-gamma", type=int)
    _settings(p, chi=True)
    p.add_argument("--t", type=_fraction, help="transmission for the lossy geometries (e.g. 1/2)")
    p.add_argument("--detected", type=int, help="keep only outcomes with this many detections")
    p.add_argument("--regions", type=_int_list, help="per-region counts, renormalized (e.g. 3,3)")
    p.add_argument("--include-zeros", action="store_true")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("bell", help="BCHSH maximum", description="Report keys: q_max, omega_star, four angles, q_at_omega_ln3.")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--detected", type=int)
    p.add_argument("--unconditioned", action="store_true")
    p.add_argument("--full-search", action="store_true", help="search all four angles")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("ghz", help="three-source correlator and sign argument", description="Report keys: abc_closed_form, abc_from_distribution; or the contradiction report.")
    _common(p)
    p.add_argument("--n", type=int)
    _settings(p, chi=True)
    p.add_argument("--contradiction", action="store_true")
    p.add_argument("--distribution", action="store_true")
    p.add_argument("--include-zeros", action="store_true")
    p.set_defaults(func=cmd_ghz)

    p = sub.add_parser("hardy", help="Hardy configurations", description="Columns: m1..m4, amplitude_re, amplitude_im (unnormalized overlap), probability (renormalized), exact.")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--arrangement", help="detector sets: DD, DD', D'D or D'D'")
    p.add_argument("--report", action="store_true")
    p.add_argument("--include-zeros", action="store_true")
    p.set_defaults(func=cmd_hardy)

    p = sub.add_parser("altstate", help="coherent, phase and general two-mode inputs", description="Columns: m1..m4, probability, comparison column.")
    _common(p)
    p.add_argument("--state", choices=("phase", "fock", "coherent", "coherent-avg"))
    p.add_argument("--n", type=int)
    p.add_argument("--n-alpha", type=int)
    p.add_argument("--n-beta", type=int)
    p.add_argument("--phi0", type=_angle)
    p.add_argument("--phi-alpha", type=_angle)
    p.add_argument("--phi-beta", type=_angle)
    p.add_argument("--detected", type=int)
    p.add_argument("--bchsh", action="store_true")
    _settings(p)
    p.set_defaults(func=cmd_altstate)

    p = sub.add_parser("detection", help="pixel detection model", description="Aligned-limit check, mismatch sweep (columns sigma, ab) or counting factors.")
    _common(p)
    p.add_argument("--n-alpha", type=int)
    p.add_argument("--n-beta", type=int)
    _settings(p)
    p.add_argument("--pixel-count", type=int)
    p.add_argument("--sigmas", type=_grid, help="jitter amplitudes, start:stop:num or list")
    p.add_argument("--pattern", choices=("alternating", "grid", "random"))
    p.add_argument("--counting", type=int, nargs=3, metavar=("Q", "M1", "M2"))
    p.set_defaults(func=cmd_detection)

    p = sub.add_parser("sweep", help="parallel grid evaluation", description="Columns: n, zeta, theta, chi, <quantity>; rows in grid order.")
    _common(p)
    p.add_argument("--quantity", choices=("probability", "ab", "q", "abc"))
    p.add_argument("--n", type=_int_list, help="particle numbers, e.g. 2,4,8")
    p.add_argument("--zeta", type=_grid)
    p.add_argument("--theta", type=_grid)
    p.add_argument("--chi", type=_grid)
    p.add_argument("--geometry", choices=[g.value for g in Geometry])
    p.add_argument("--outcome", type=_int_list)
    p.add_argument("--t", type=_fraction)
    p.add_argument("--detected", type=int)
    p.add_argument("--unconditioned", action="store_true")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="closed-form, normalization and oracle checks", description="Columns: check, ok.")
    _common(p)
    p.set_defaults(func=cmd_validate)
    return parser


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

def read_config(path: str) -> list[tuple[str, str]]:
    pairs = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep or not key.strip():
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                pairs.append((key.strip().replace("_", "-"), value.strip()))
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return pairs


def _config_tokens(pairs, subparser: argparse.ArgumentParser) -> list[str]:
    flags = {}
    for action in subparser._actions:
        for opt in action.option_strings:
            flags[opt] = action
    tokens = []
    for key, value in pairs:
        opt = "--" + key
        if opt in ("--config", "--help"):
            continue
        action = flags.get(opt)
        if action is None:
            raise UsageError(f"unknown config key {key!r}")
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(opt)
            elif value.lower() not in ("0", "false", "no", "off"):
                raise UsageError(f"config key {key!r} expects true/false")
        elif action.nargs is not None and action.nargs not in ("?",):
            tokens.append(opt)
            tokens.extend(value.split())
        else:
            tokens.append(f"{opt}={value}")
    return tokens


def _parse(argv: list[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = getattr(args, "config", None)
    if cfg:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        tokens = _config_tokens(read_config(cfg), sub)
        # flags after the config tokens win
        args = parser.parse_args([args.command] + tokens + argv[1:])
    return args


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    except UsageError as exc:
        print(f"fockbell: error: {exc}", file=sys.stderr)
        return 2
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"fockbell: error: {exc}", file=sys.stderr)
        return 2
    except (FockBellError, ArithmeticError) as exc:
        print(f"fockbell: {exc}", file=sys.stderr)
        return 1
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.command == "ghz" and args.contradiction else "csv"
    text = result.render(fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if getattr(args, "_failed", False) else 0


def main() -> None:
    sys.exit(run())
