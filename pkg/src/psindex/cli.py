"""Command-line entry point.

Every subcommand prints ``key=value`` machine lines; human-oriented lines
start with ``#`` (suppressed with ``--format kv``).  Exit status: 0 on
success or agreement, 1 on a computational failure or disagreement, 2 on
usage, configuration or parse errors.
"""

import argparse
import sys

from . import __version__
from .errors import ConfigError, ParseError, PsIndexError
from .config import load_config
from .generate import SUITE_MODES, index_suite, random_symbol, rng_from
from .index import index_report, parametrix_residual
from .oracle import defect, exact_shift_index, find_plateau, shift_exponents
from .radul import LogQ, cyclic_check_antisym, cyclic_check_b, radul
from .residue import wres
from .symbol import sym_commutator, sym_max_diff, sym_parametrix, sym_star
from .symbol_io import parse_symbol, read_symbol, render_symbol
from .wick.todd import random_rational_matrix, verify_todd

GRAMMAR = """symbol file grammar:
  order <real>
  depth <int>
  [matrix <int>]
  component <j>            (degree = order - j)
  plus: <matrix-expr>
  minus: <matrix-expr>
matrix-expr: [ e , e ; e , e ] or a bare expression for scalars
expr: + - * ( ) numbers i exp(i*k*x) exp(-i*k*x) cos(k*x) sin(k*x)"""

ROUND_TRIP_TOL = 1e-14


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Output:
    def __init__(self, fmt="full", stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def kv(self, key, value):
        print(f"{key}={value}", file=self.stream)

    def note(self, text):
        if self.fmt == "full":
            for line in str(text).rstrip("\n").splitlines():
                print(f"# {line}", file=self.stream)


def _cx(z):
    z = complex(z)
    return f"{z.real + 0.0:.12g},{z.imag + 0.0:.12g}"


def load_symbol(path):
    """Read a symbol file and check that it survives a render/parse round trip."""
    try:
        a = read_symbol(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    back = parse_symbol(render_symbol(a))
    if back.order != a.order or back.depth != a.depth:
        raise PsIndexError("symbol header does not round-trip", path=path)
    drift = sym_max_diff(a, back)
    if drift > ROUND_TRIP_TOL:
        raise PsIndexError("symbol values drift on round trip", path=path, drift=drift)
    return a


def _modes(text):
    try:
        modes = tuple(int(k) for k in text.split(","))
    except ValueError:
        raise UsageError(f"bad mode list {text!r}") from None
    if not modes or any(k < 1 for k in modes):
        raise UsageError(f"bad mode list {text!r}")
    return modes


def _logq(choice, depth):
    if choice in (None, "canonical"):
        return LogQ.canonical(depth)
    q = load_symbol(choice)
    return LogQ.general(q, min(depth, q.depth))


# -- subcommands ---------------------------------------------------------------

def cmd_star(args, cfg, out):
    a, b = load_symbol(args.a), load_symbol(args.b)
    prod = sym_star(a, b)
    if args.depth:
        prod = prod.truncate(min(args.depth, prod.depth))
    out.note("star product")
    out.note(render_symbol(prod))
    out.kv("order", prod.order)
    out.kv("depth", prod.depth)
    out.kv("max_coeff", f"{prod.max_abs():.6e}")
    return 0


def cmd_residue(args, cfg, out):
    a = load_symbol(args.file)
    val = wres(a)
    out.note(f"trusted degrees {a.order} down to {a.floor} (exclusive)")
    out.kv("wres", _cx(val))
    out.kv("window", f"{a.order},{a.floor}")
    return 0


def cmd_radul(args, cfg, out):
    a0, a1 = load_symbol(args.a0), load_symbol(args.a1)
    depth = args.depth or min(a0.depth, a1.depth)
    L = _logq(args.q or cfg.q, depth)
    c = radul(L, a0, a1)
    budget = max(f.residual for s in (a0, a1) for comp in s.components
                 for f in (comp.plus, comp.minus))
    if L.mode == "general":
        P = L.qinv_power(1)
        budget = max(budget, *parametrix_residual(L.q, P))
    out.note(f"q mode: {L.mode}, depth {L.depth}")
    out.kv("c", _cx(c))
    out.kv("budget", f"{budget:.3e}")
    return 0


def cmd_parametrix(args, cfg, out):
    Q = load_symbol(args.file)
    depth = args.depth or Q.depth
    P = sym_parametrix(Q, depth, band_cap=cfg.band_cap, tol=cfg.inverse_tol,
                       floor=cfg.inverse_floor, cond_max=cfg.cond_max)
    out.note(render_symbol(P))
    out.kv("order", P.order)
    out.kv("depth", P.depth)
    if P.order + Q.order == 0:
        left, right = parametrix_residual(Q, P)
        out.kv("residual_left", f"{left:.3e}")
        out.kv("residual_right", f"{right:.3e}")
    return 0


def cmd_index(args, cfg, out):
    Q = load_symbol(args.file)
    methods = ("analytic", "topological", "oracle") if args.method == "all" else (args.method,)
    qchoice = args.q or cfg.q
    q = None if qchoice == "canonical" else load_symbol(qchoice)
    modes = _modes(args.modes) if args.modes else cfg.oracle_modes
    rep = index_report(Q, methods, q=q, depth=args.depth or None, modes=modes, tol=cfg.oracle_tol)
    out.note(f"methods: {', '.join(methods)}; index = -c(P,Q) = w_minus - w_plus")
    for line in rep.lines():
        print(line, file=out.stream)
    return 0 if rep.agree else 1


def cmd_oracle(args, cfg, out):
    Q = load_symbol(args.file)
    modes = _modes(args.modes) if args.modes else cfg.oracle_modes
    tol = args.tol if args.tol is not None else cfg.oracle_tol
    if args.exact:
        sh = shift_exponents(Q)
        if sh is None:
            raise UsageError("--exact needs a pure shift symbol (e^{iax}; e^{ibx})")
        out.kv("oracle", exact_shift_index(*sh))
        out.kv("method", "exact")
        return 0
    values = []
    for K in sorted(modes):
        d = defect(Q, K, tol)
        values.append(d)
        out.kv(f"d_{K}", d)
    value = find_plateau(values)
    if value is None:
        out.kv("plateau", "none")
        out.note("NoPlateau: d(K) did not stabilize over the requested modes")
        return 1
    out.kv("oracle", value)
    out.kv("plateau", "true")
    return 0


def cmd_verify_todd(args, cfg, out):
    seed = args.seed if args.seed is not None else cfg.seed
    rng = rng_from(seed)
    worst = 0.0
    for t in range(args.trials):
        R0 = random_rational_matrix(rng, args.dim)
        rep = verify_todd(R0, args.order)
        worst = max(worst, rep.max_discrepancy)
        out.kv(f"trial_{t}_exp", f"{rep.exp:.3e}")
        out.kv(f"trial_{t}_dx", f"{rep.dx:.3e}")
        out.kv(f"trial_{t}_iden", f"{rep.iden:.3e}")
    ok = worst <= args.tol
    out.kv("max_discrepancy", f"{worst:.3e}")
    out.kv("pass", "true" if ok else "false")
    return 0 if ok else 1


def _check_cocycle(rng, trials, L):
    worst = 0.0
    for _ in range(trials):
        a0, a1, a2 = (random_symbol(rng, 0, 4, 2) for _ in range(3))
        worst = max(worst, abs(cyclic_check_antisym(L, a0, a1)),
                    abs(cyclic_check_b(L, a0, a1, a2)))
    return worst


def cmd_check(args, cfg, out):
    seed = args.seed if args.seed is not None else cfg.seed
    rng = rng_from(seed)
    suite = args.suite
    if suite == "cocycle":
        worst = _check_cocycle(rng, args.trials, _logq(args.q or cfg.q, cfg.depth))
        tol = 1e-10
    elif suite == "trace":
        worst = 0.0
        for _ in range(args.trials):
            a = random_symbol(rng, int(rng.integers(-1, 2)), 4, 3)
            b = random_symbol(rng, int(rng.integers(-1, 2)), 4, 3)
            comm = sym_commutator(a, b)
            if comm.floor < -1:
                worst = max(worst, abs(wres(comm)))
        tol = 1e-10
    elif suite == "index":
        worst = 0.0
        for case in index_suite(seed)[: args.trials]:
            rep = index_report(case.symbol, modes=SUITE_MODES)
            bad = not rep.agree or rep.analytic_rounded != case.expected
            worst = max(worst, 1.0 if bad else rep.residuals.get("analytic", 0.0))
        tol = 1e-6
    elif suite == "parametrix":
        worst = 0.0
        for case in index_suite(seed)[: args.trials]:
            P = sym_parametrix(case.symbol)
            worst = max(worst, *parametrix_residual(case.symbol, P))
        tol = 1e-11
    elif suite == "todd":
        worst = 0.0
        for _ in range(args.trials):
            n = int(rng.integers(1, 3))
            worst = max(worst, verify_todd(random_rational_matrix(rng, n), 6).max_discrepancy)
        tol = 1e-9
    else:
        raise UsageError(f"unknown suite {suite!r}")
    ok = worst <= tol
    out.note(f"suite {suite}: {args.trials} trials, seed {seed}")
    out.kv("suite", suite)
    out.kv("max_defect", f"{worst:.3e}")
    out.kv("pass", "true" if ok else "false")
    return 0 if ok else 1


# -- dispatcher ----------------------------------------------------------------

def build_parser():
    p = _Parser(prog="psindex", description="Symbol calculus and index checks on the circle.",
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"psindex {__version__}")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--format", choices=("full", "kv"), help="kv: machine lines only")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("full", "kv"), default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("star", help="star product of two symbols")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("residue", help="Wodzicki residue")
    s.add_argument("file")
    s.set_defaults(func=cmd_residue)

    s = sub.add_parser("radul", help="Radul cocycle c(a0, a1)")
    s.add_argument("a0")
    s.add_argument("a1")
    s.add_argument("--q", help="'canonical' or a q symbol file")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_radul)

    s = sub.add_parser("parametrix", help="parametrix and its residuals")
    s.add_argument("file")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_parametrix)

    s = sub.add_parser("index", help="index report")
    s.add_argument("file")
    s.add_argument("--method", choices=("analytic", "topological", "oracle", "all"), default="all")
    s.add_argument("--q", help="'canonical' or a q symbol file")
    s.add_argument("--modes", help="comma-separated oracle windows, e.g. 8,12,16,20")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("oracle", help="operator-level index by mode counting")
    s.add_argument("file")
    s.add_argument("--modes", help="comma-separated windows (default 8,12,16,20)")
    s.add_argument("--tol", type=float)
    s.add_argument("--exact", action="store_true", help="exact count for shift symbols")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify-todd", help="contraction engine against the Todd determinant")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--order", type=int, default=6)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--seed", type=int)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_verify_todd)

    s = sub.add_parser("check", help="randomized invariant suites")
    s.add_argument("--suite", choices=("cocycle", "trace", "index", "parametrix", "todd"),
                   required=True)
    s.add_argument("--q", help="q for the cocycle suite: 'canonical' or a q symbol file")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand")
        cfg = load_config(args.config)
        out = Output(args.format or cfg.format, stream)
        return args.func(args, cfg, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(GRAMMAR, file=sys.stderr)
        return 2
    except (ParseError, ConfigError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except PsIndexError as exc:
        print(f"error={exc.kind}", file=stream)
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        print("error=ValueError", file=stream)
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
