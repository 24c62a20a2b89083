"""Command-line front end for generation, embedding, solving and bounds.

Subcommands
-----------
gen
    Materialize the exact degree sequence for (alpha, beta) or a
    functional exponent as a graph file plus a ``degree,count`` CSV.
bounds
    Classify an exponent and print its hardness factor or upper ratio;
    ``--table2`` emits one row per regime at the given size.
embed
    Embed a core graph into a power-law host and trace the parameter
    certificates end to end.
solve
    Run a dominating-set solver on a graph file and emit a report row.
ratio-curve
    CSV of the structured upper ratio against the comparison bound of
    Shen et al. over a beta range.
thresholds
    The k-interval beta thresholds and the zeta(beta - 1) = 2 crossover.

All outputs are byte-deterministic for a fixed (flags, seed) pair: floats
print with ``%.12g``, files use LF line endings, and every random choice
derives from one ``--seed`` (default from ``PLGDS_SEED``) via per-stage
substreams.

Exit codes: 0 success (including budget-exceeded bound rows), 1 usage or
parse errors, 2 infeasible embeddings, 3 infeasible scales.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .bounds import (
    RegimeKind,
    beta_threshold,
    bound_report,
    case_i_crossover,
    case_i_ratio,
    classify_regime,
    hardness_prefactor,
    lemma3_bound,
    shen_ratio,
)
from .degree_model import (
    BetaFunction,
    GrowthClass,
    PlgParams,
    build_sequence,
)
from .embed import (
    certify_parameters,
    choose_parameters,
    construct_plg,
    functional_fixed_point,
    generate_plg,
    params_comment,
    parse_params_comment,
    scale_instance,
    verify_embedding,
)
from .errors import (
    BudgetExceeded,
    DegreeZeroError,
    DomainError,
    InfeasibleEmbedding,
    InfeasibleScale,
    NotDominating,
    ParityError,
    PlgdsError,
    RegimeViolation,
    ScaleError,
    WheelStall,
)
from .graph_core import read_graph, write_graph
from .setcover import degree_window
from .solvers import (
    Algo,
    LbKind,
    SolveReport,
    exact_min_ds,
    greedy_min_ds,
    lemma2_lower_bound,
    structured_min_ds,
)

__all__ = [
    "BETA_FUNCTIONS",
    "build_parser",
    "cmd_bounds",
    "cmd_embed",
    "cmd_gen",
    "cmd_ratio_curve",
    "cmd_solve",
    "cmd_thresholds",
    "main",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE_EMBEDDING = 2
EXIT_INFEASIBLE_SCALE = 3


def _f_log_squared(n: int) -> int:
    return max(1, math.ceil(math.log(max(n, 2)) ** 2))


def _f_log_over_loglog(n: int) -> int:
    # ln(n)/ln(ln(n)) decreases below n = e^e, so clamp there to keep the
    # declared monotone-increasing contract of BetaFunction.
    nn = max(n, 16)
    return max(1, math.ceil(math.log(nn) / math.log(math.log(nn))))


BETA_FUNCTIONS: dict[str, BetaFunction] = {
    "log2": BetaFunction(
        f=_f_log_squared,
        growth_class=GrowthClass.OMEGA_LOG_N,
        label="ceil(ln(n)^2)",
    ),
    "log-over-loglog": BetaFunction(
        f=_f_log_over_loglog,
        growth_class=GrowthClass.LITTLE_O_LOG_N,
        label="ceil(ln(n)/ln(ln(n)))",
    ),
}


def _fmt(value: float) -> str:
    return f"{value:.12g}"


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_exponent_flags(sub: argparse.ArgumentParser, required: bool) -> None:
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--beta", type=float, help="fixed exponent beta > 0")
    group.add_argument(
        "--beta-fn",
        choices=sorted(BETA_FUNCTIONS),
        help="functional exponent beta_f(n) = 2 + 1/f(n)",
    )


def _add_seed_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--seed",
        type=int,
        default=None,
        help="64-bit master seed (default: PLGDS_SEED env var, else 0)",
    )


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get("PLGDS_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"PLGDS_SEED must be an integer, got {raw!r}")


def _chosen_exponent(args: argparse.Namespace):
    if args.beta_fn is not None:
        return BETA_FUNCTIONS[args.beta_fn]
    return args.beta


def _open_out(path):
    return open(path, "w", encoding="ascii", newline="\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="plgds",
        description="Dominating sets in combinatorial power-law graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="materialize an exact degree sequence")
    p_gen.add_argument("--alpha", type=float, required=True, help="scale, e^alpha nodes of degree 1")
    _add_exponent_flags(p_gen, required=True)
    p_gen.add_argument(
        "--parity",
        choices=("total_degree", "node_count"),
        default="total_degree",
        help="which sum the degree-1 correction keeps even",
    )
    _add_seed_flag(p_gen)
    p_gen.add_argument("--out", required=True, help="output graph path")
    p_gen.set_defaults(func=cmd_gen)

    p_bounds = sub.add_parser("bounds", help="hardness factors and upper ratios")
    _add_exponent_flags(p_bounds, required=False)
    p_bounds.add_argument("--n", type=int, default=10**6, help="instance size")
    p_bounds.add_argument("--eps", type=float, default=0.2, help="hardness parameter")
    p_bounds.add_argument("--d", type=int, default=None, help="scaling depth override")
    p_bounds.add_argument("--b-exp", type=float, default=None, help="window exponent b override")
    p_bounds.add_argument(
        "--table2",
        action="store_true",
        help="emit the full regime table at size n as CSV",
    )
    p_bounds.set_defaults(func=cmd_bounds)

    p_embed = sub.add_parser("embed", help="embed a core graph into a power-law host")
    p_embed.add_argument("core", help="core graph file")
    _add_exponent_flags(p_embed, required=True)
    p_embed.add_argument("--eps", type=float, default=0.2, help="hardness parameter")
    p_embed.add_argument(
        "--relax-window",
        action="store_true",
        help="admit cores whose target degrees leave the window; report certificates",
    )
    p_embed.add_argument("--d", type=int, default=None, help="scaling depth override")
    p_embed.add_argument("--alpha", type=float, default=None, help="alpha override")
    _add_seed_flag(p_embed)
    p_embed.add_argument("--out", required=True, help="output graph path")
    p_embed.set_defaults(func=cmd_embed)

    p_solve = sub.add_parser("solve", help="run a dominating-set solver")
    p_solve.add_argument("graph", help="graph file")
    p_solve.add_argument(
        "--algo",
        choices=tuple(a.value for a in Algo),
        required=True,
        help="solver to run",
    )
    p_solve.add_argument(
        "--budget",
        type=int,
        default=None,
        help="node budget for the exact search (bounds row on exhaustion)",
    )
    p_solve.add_argument("--out", default=None, help="CSV path (default stdout)")
    p_solve.set_defaults(func=cmd_solve)

    p_curve = sub.add_parser("ratio-curve", help="approximation-ratio curves CSV")
    p_curve.add_argument("--beta-from", type=float, default=2.75)
    p_curve.add_argument("--beta-to", type=float, default=6.0)
    p_curve.add_argument("--step", type=float, default=0.01)
    p_curve.add_argument("--out", default=None, help="CSV path (default stdout)")
    p_curve.set_defaults(func=cmd_ratio_curve)

    p_thr = sub.add_parser("thresholds", help="beta thresholds and the crossover")
    p_thr.set_defaults(func=cmd_thresholds)

    return parser


# -- commands -------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    """Materialize the exact degree sequence as a graph plus histogram CSV."""
    exponent = _chosen_exponent(args)
    seed = _resolve_seed(args)
    if isinstance(exponent, BetaFunction):
        p = PlgParams(alpha=args.alpha, beta_fn=exponent, parity=args.parity)
        nfn, beta_at = functional_fixed_point(exponent, args.alpha)
        print(f"functional exponent frozen at n={nfn}: beta_f = {_fmt(beta_at)}")
    else:
        p = PlgParams(alpha=args.alpha, beta=exponent, parity=args.parity)
        nfn = None
    result = generate_plg(p, rng_seed=seed, n_for_functional=nfn)
    g = result.graph
    write_graph(g, args.out, roles=result.roles, comments=[params_comment(result.params)])
    seq = build_sequence(p, n_for_functional=nfn)
    degree_csv = f"{args.out}.degree.csv"
    seq.to_csv(degree_csv)
    layout = "stars" if result.stats.get("star_mode") else "interval"
    print(f"wrote {args.out}: n={g.n} m={g.m} delta={seq.delta} layout={layout}")
    print(f"wrote {degree_csv}")
    return EXIT_OK


def _bounds_single(exponent, args: argparse.Namespace) -> None:
    report = bound_report(
        exponent, args.n, eps=args.eps, d_scale=args.d, b_exp=args.b_exp
    )
    regime = report.regime
    if regime.beta_fn is not None:
        label = f"beta_f(n) = 2 + 1/{regime.beta_fn.label}"
    else:
        label = f"beta = {_fmt(regime.beta)}"
    print(f"regime: {regime.kind.value} ({label})")
    if report.hardness_factor is not None:
        print(
            f"hardness factor at n={report.n}: {_fmt(report.hardness_factor)}"
            f" (eps={_fmt(report.eps)}, d={report.d_scale}, b={_fmt(report.b_exp)})"
        )
        print(f"prefactor: {_fmt(hardness_prefactor(args.eps))}")
        if report.min_n_above_one is not None:
            print(f"min n with factor > 1: {report.min_n_above_one:.6g}")
    else:
        if regime.kind is RegimeKind.FUNCTIONAL_APX:
            print("APX; lower-bound certificate c*n computed")
        print(f"upper ratio: {_fmt(report.upper_ratio)}")
        if regime.beta is not None and regime.beta > 2.0:
            print(f"shen ratio: {_fmt(shen_ratio(regime.beta))}")
            for k in (2, 3, 4):
                if regime.beta >= beta_threshold(k):
                    print(f"lemma3 k={k}: {_fmt(lemma3_bound(regime.beta, k))}")
                else:
                    print(f"lemma3 k={k}: NA (below beta_threshold({k}))")
    for note in report.notes:
        print(f"note: {note}")


_TABLE2_BETAS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def _bounds_table(args: argparse.Namespace) -> None:
    rows = ["regime,beta,bound,value"]
    for beta in _TABLE2_BETAS:
        report = bound_report(beta, args.n, eps=args.eps, d_scale=args.d, b_exp=args.b_exp)
        if report.hardness_factor is not None:
            rows.append(
                f"{report.regime.kind.value},{_fmt(beta)},lower,"
                f"{_fmt(report.hardness_factor)}"
            )
        else:
            rows.append(
                f"{report.regime.kind.value},{_fmt(beta)},upper,"
                f"{_fmt(report.upper_ratio)}"
            )
    for name in sorted(BETA_FUNCTIONS):
        bf = BETA_FUNCTIONS[name]
        report = bound_report(bf, args.n, eps=args.eps, d_scale=args.d, b_exp=args.b_exp)
        kind = "lower" if report.hardness_factor is not None else "upper"
        value = (
            report.hardness_factor
            if report.hardness_factor is not None
            else report.upper_ratio
        )
        rows.append(f"{report.regime.kind.value},2+1/{bf.label},{kind},{_fmt(value)}")
    print("\n".join(rows))


def cmd_bounds(args: argparse.Namespace) -> int:
    """Print regime classification with its bound value, or the full table."""
    if args.table2:
        _bounds_table(args)
        return EXIT_OK
    exponent = _chosen_exponent(args)
    if exponent is None:
        raise DomainError("one of --beta / --beta-fn is required without --table2")
    _bounds_single(exponent, args)
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    """Choose parameters, scale the core, construct and verify the host."""
    exponent = _chosen_exponent(args)
    seed = _resolve_seed(args)
    loaded = read_graph(args.core)
    core = loaded.graph
    degree_window(core)  # validates size >= 2 and positive degrees
    log_n = math.log(core.n)
    # Every embedded core vertex gains one gamma edge, so the window must
    # hold the target degrees deg+1, not the raw core degrees.
    a_exp = math.log(int(core.degrees.min()) + 1) / log_n
    b_exp = math.log(int(core.degrees.max()) + 1) / log_n
    regime = classify_regime(exponent, core.n)
    params = choose_parameters(
        regime,
        core.n,
        a_exp,
        b_exp,
        args.eps,
        relax_window=args.relax_window,
        alpha_override=args.alpha,
        d_override=args.d,
    )
    print(
        f"parameters: alpha={_fmt(params.alpha)} d={params.d_scale} "
        f"x={_fmt(params.x)} y={_fmt(params.y)} a={_fmt(params.a_exp)} "
        f"b={_fmt(params.b_exp)} n_scaled={params.n_scaled}"
    )
    for note in params.notes:
        print(f"note: {note}")
    cert = certify_parameters(params)
    for line in cert.lines():
        print(line)
    scaled = scale_instance(core, params.d_scale)
    result = construct_plg(scaled, params, rng_seed=seed)
    verification = verify_embedding(result)
    for line in verification.lines():
        print(line)
    comments = [params_comment(params)]
    comments.extend(cert.lines())
    comments.extend(verification.lines())
    write_graph(result.graph, args.out, roles=result.roles, comments=comments)
    stats = result.stats
    print(
        f"wrote {args.out}: n={result.graph.n} m={result.graph.m} "
        f"core={stats['core']} x={stats['x']} gamma={stats['gamma']}"
    )
    if not verification.all_pass:
        failing = [c.name for c in verification.checks if not c.passed]
        print(f"verification failed: {', '.join(failing)}", file=sys.stderr)
        return EXIT_INFEASIBLE_EMBEDDING
    return EXIT_OK


_SOLVE_HEADER = "algorithm,n,m,beta,size,lower_bound,lb_kind,ratio_vs_lb"


def _embedded_params(comments) -> dict[str, str] | None:
    for comment in comments:
        try:
            return parse_params_comment(comment)
        except DomainError:
            continue
    return None


def cmd_solve(args: argparse.Namespace) -> int:
    """Run one solver on a graph file and emit a CSV report row."""
    loaded = read_graph(args.graph)
    g = loaded.graph
    meta = _embedded_params(loaded.comments)
    beta = None
    alpha = None
    if meta is not None and "beta" in meta:
        beta = float(meta["beta"])
        alpha = float(meta["alpha"])
    algo = Algo(args.algo)
    if algo is Algo.EXACT:
        try:
            report = exact_min_ds(g, budget=args.budget, beta=beta)
        except BudgetExceeded as exc:
            print(f"budget exceeded: {exc}; emitting bounds row", file=sys.stderr)
            report = SolveReport(
                solution=exc.incumbent,
                algorithm=Algo.EXACT,
                n=g.n,
                m=g.m,
                beta=beta,
                lower_bound=exc.lower_bound,
                lb_kind=LbKind.TRIVIAL,
            )
    elif algo is Algo.GREEDY:
        report = greedy_min_ds(g, beta=beta)
    else:
        report = structured_min_ds(g, beta=beta)
    if beta is not None and alpha is not None and beta > 2.0:
        p = PlgParams(alpha=alpha, beta=beta)
        _, bound = lemma2_lower_bound(p, variant="a")
        report = report.with_lower_bound(bound, LbKind.LEMMA2A)
    text = f"{_SOLVE_HEADER}\n{report.csv_row()}\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with _open_out(args.out) as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_ratio_curve(args: argparse.Namespace) -> int:
    """Emit ``beta,ours,shen`` rows; NA below each formula's domain."""
    if args.step <= 0.0:
        raise DomainError(f"step must be positive, got {args.step}")
    if args.beta_to < args.beta_from:
        raise DomainError("beta range is empty: --beta-to < --beta-from")
    lines = ["beta,ours,shen"]
    steps = int(math.floor((args.beta_to - args.beta_from) / args.step + 1e-9))
    for i in range(steps + 1):
        beta = args.beta_from + i * args.step
        try:
            ours = _fmt(case_i_ratio(beta))
        except (RegimeViolation, DomainError):
            ours = "NA"
        try:
            shen = _fmt(shen_ratio(beta))
        except (RegimeViolation, DomainError):
            shen = "NA"
        lines.append(f"{_fmt(beta)},{ours},{shen}")
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with _open_out(args.out) as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_thresholds(args: argparse.Namespace) -> int:
    """Print the k-interval thresholds and the case I crossover."""
    for k in (2, 3, 4):
        print(f"beta_{k} = {_fmt(beta_threshold(k))}")
    print(f"case_i_crossover = {_fmt(case_i_crossover())}")
    return EXIT_OK


# -- entry point ----------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InfeasibleScale, ScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, InfeasibleScale) and exc.min_feasible_n is not None:
            print(f"minimum feasible core size: {exc.min_feasible_n}", file=sys.stderr)
        return EXIT_INFEASIBLE_SCALE
    except (
        InfeasibleEmbedding,
        ParityError,
        WheelStall,
        NotDominating,
        DegreeZeroError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE_EMBEDDING
    except (DomainError, RegimeViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PlgdsError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        raise
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
