#!/usr/bin/env python3
"""CLI entry point: norms, constants, certificates, series sums, demos and verify runs."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Callable, Dict, Optional, Sequence, Tuple

from core.embeddings import (
    certificate_tail_norm,
    certify_theorem1,
    certify_theorem1b,
    certify_theorem2,
    classify_order_pair,
    corollary_chains,
    series_enclosure,
    tail_rank_theorem1,
    tail_rank_theorem2,
    theorem2_constant,
    theorem2_report,
)
from core.errors import HypothesisFailure, InvalidSequenceData, SobolevError
from core.logging.events import EventLogger
from core.settings_loader import Settings, load_settings
from core.spaces import SpaceParams, inner_product, norm, norm_power, read_jsonl, sphere_sample, trial_rng
from core.weights import IndexDomain, WeightFamily, load_weight_table
from verification.report import CommandReport, error_document, render_csv, render_json
from verification.runner import SUITES, VerificationRunner, VerifyConfig
from verification.scenarios import gibbs_demo, pitt_demo

logger = logging.getLogger(__name__)

CSV_COMMANDS = {"series-sum", "t2-constant", "tail-rank"}
COUNT_FLAGS = ("window", "trials", "workers", "probes")


@dataclass
class Streams:
    stdin: IO[str] = field(default_factory=lambda: sys.stdin)
    stdout: IO[str] = field(default_factory=lambda: sys.stdout)


@dataclass
class RunConfig:
    """A parsed command: subcommand name, its flags, seed and output format."""

    command: str
    params: Dict[str, Any]
    seed: int = 0
    output: str = "json"
    indent: Optional[int] = 2
    settings: Settings = field(default_factory=Settings)


def parse_weight(spec: str, domain: Optional[IndexDomain]) -> WeightFamily:
    """constant:C | polynomial:ALPHA | gibbs:BETA | table:PATH."""
    kind, _, value = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "gibbs":
        w = WeightFamily.gibbs(float(value or 1.0))
        return w if domain is None else w.on(domain)
    domain = domain or IndexDomain.FULL_LINE
    if kind == "constant":
        return WeightFamily.constant(float(value or 1.0), domain)
    if kind == "polynomial":
        return WeightFamily.polynomial(float(value), domain)
    if kind == "table":
        return load_weight_table(Path(value), domain)
    raise HypothesisFailure(f"unknown weight spec {spec!r}")


def _domain(params: Dict[str, Any]) -> Optional[IndexDomain]:
    value = params.get("domain")
    return IndexDomain(value) if value else None


def _given(params: Dict[str, Any], key: str, default: Any) -> Any:
    value = params.get(key)
    return default if value is None else value


def _window(params: Dict[str, Any], domain: IndexDomain, settings: Settings) -> Tuple[int, int]:
    half_width = _given(params, "window", settings.sampling.probe_window)
    return (0, half_width) if domain is IndexDomain.HALF_LINE else (-half_width, half_width)


def _read_vector(path: str, streams: Streams):
    if path == "-":
        return read_jsonl(streams.stdin)
    try:
        return read_jsonl(Path(path))
    except OSError as exc:
        raise InvalidSequenceData(f"cannot read sequence file {path!r}: {exc.strerror or exc}") from exc


def validate_params(params: Dict[str, Any]) -> None:
    """Reject count flags below 1 before any computation starts."""
    for key in COUNT_FLAGS:
        value = params.get(key)
        if value is not None and value < 1:
            raise HypothesisFailure(f"--{key} must be >= 1, got {value}")
    if params.get("check_samples", 0) < 0:
        raise HypothesisFailure(f"--check-samples must be >= 0, got {params['check_samples']}")


# ---------------------------------------------------------------------- commands


def cmd_norm(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    w = parse_weight(p["weight"], _domain(p))
    sp = SpaceParams.create(p["k"], p["s"], w)
    vector = _read_vector(p["input"], streams)
    return CommandReport(
        {
            "command": "norm",
            "space": sp.to_dict(),
            "support_size": len(vector),
            "norm": norm(sp, vector),
            "norm_power": norm_power(sp, vector),
        }
    )


def cmd_inner(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    w = parse_weight(p["weight"], _domain(p))
    sp = SpaceParams.create(p["k"], p["s"], w)
    value = inner_product(sp, _read_vector(p["left"], streams), _read_vector(p["right"], streams))
    return CommandReport({"command": "inner", "space": sp.to_dict(), "re": value.real, "im": value.imag})


def cmd_embed_classify(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    report = classify_order_pair(p["k_src"], p["k_tgt"])
    document: Dict[str, Any] = {"command": "embed-classify", "k_src": p["k_src"], "k_tgt": p["k_tgt"], **report.to_dict()}
    if p["k_tgt"] < p["k_src"]:
        document["chains"] = [chain.to_dict() for chain in corollary_chains(p["k_tgt"], p["k_src"])]
    return CommandReport(document)


def cmd_tail_rank(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    if p["theorem"] == "T2":
        if p["t"] is None or p["c1"] is None:
            raise HypothesisFailure("tail-rank --theorem T2 needs --t and --c1")
        domain = _domain(p) or IndexDomain.FULL_LINE
        numerics = config.settings.numerics
        m_star = tail_rank_theorem2(
            p["k"], p["s"], p["t"], p["c1"], p["epsilon"], p["kappa"], domain,
            _given(p, "tol", numerics.series_tol), numerics.max_series_terms,
        )
    else:
        if p["k_prime"] is None:
            raise HypothesisFailure("tail-rank --theorem T1a needs --k-prime")
        m_star = tail_rank_theorem1(p["k"], p["k_prime"], p["s"], p["epsilon"], p["kappa"])
    row = {
        "theorem": p["theorem"],
        "k": p["k"],
        "k_prime": p["k_prime"],
        "s": p["s"],
        "t": p["t"],
        "epsilon": p["epsilon"],
        "kappa": p["kappa"],
        "m_star": m_star,
    }
    return CommandReport({"command": "tail-rank", **row}, rows=[row])


def cmd_certify(config: RunConfig, streams: Streams, events: EventLogger) -> CommandReport:
    p = config.params
    settings = config.settings
    w = parse_weight(p["weight"], _domain(p))
    theorem = p["theorem"]
    if theorem in ("T1a", "T1b") and p["k_prime"] is None:
        raise HypothesisFailure(f"certify --theorem {theorem} needs --k-prime")
    max_terms = settings.numerics.max_series_terms
    tol = _given(p, "tol", settings.numerics.series_tol)
    if theorem == "T1a":
        cert = certify_theorem1(p["k"], p["k_prime"], p["s"], w, p["epsilon"], p["kappa"])
        source = SpaceParams.create(p["k_prime"], p["s"], w)
        target = SpaceParams.create(p["k"], p["s"], w)
    elif theorem == "T1b":
        if p["t"] is None:
            raise HypothesisFailure("certify --theorem T1b needs --t")
        cert = certify_theorem1b(p["k"], p["k_prime"], p["s"], p["t"], w, p["epsilon"], p["kappa"])
        source = SpaceParams.create(p["k_prime"], p["t"], w)
        target = SpaceParams.create(p["k"], p["s"], w)
    else:
        if p["t"] is None or p["weight_hat"] is None:
            raise HypothesisFailure("certify --theorem T2 needs --t and --weight-hat")
        w_hat = parse_weight(p["weight_hat"], w.domain)
        window = _window(p, w.domain, settings)
        cert = certify_theorem2(p["k"], p["s"], p["t"], w, w_hat, p["epsilon"], p["kappa"], window, tol, max_terms)
        source = SpaceParams.create(p["k"], p["s"], w)
        target = SpaceParams.create(0.0, p["t"], w_hat)
    events.log_certificate(cert.theorem.value, cert.m_star, cert.subspace_dim, cert.epsilon, cert.rigorous)

    document: Dict[str, Any] = {"command": "certify", "source": source.to_dict(), "target": target.to_dict(), **cert.to_dict()}
    samples = _given(p, "check_samples", 0)
    if samples:
        half_width = max(_given(p, "window", settings.sampling.probe_window), 2 * cert.m_star)
        lo = 0 if w.domain is IndexDomain.HALF_LINE else -half_width
        worst = max(
            certificate_tail_norm(
                cert,
                target,
                sphere_sample(source, cert.kappa, trial_rng(config.seed, trial), (lo, half_width), settings.sampling.support_size),
            )
            for trial in range(samples)
        )
        document["sampled"] = {"samples": samples, "seed": config.seed, "max_tail": worst, "within_guarantee": worst <= cert.guaranteed_tail * (1 + settings.numerics.rel_tol)}
    return CommandReport(document)


def cmd_series_sum(config: RunConfig, streams: Streams, events: EventLogger) -> CommandReport:
    p = config.params
    domain = _domain(p) or IndexDomain.FULL_LINE
    result = series_enclosure(
        p["k"], p["s"], p["t"], domain, _given(p, "tol", config.settings.numerics.series_tol), config.settings.numerics.max_series_terms
    )
    events.log_series(result.k, result.s, result.t, domain.value, result.value, result.error_bound, result.terms)
    row = result.to_dict()
    return CommandReport({"command": "series-sum", **row}, rows=[row])


def cmd_t2_constant(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    tol = _given(p, "tol", config.settings.numerics.series_tol)
    max_terms = config.settings.numerics.max_series_terms
    if p["c1"] is not None:
        domain = _domain(p) or IndexDomain.FULL_LINE
        constant = theorem2_constant(p["k"], p["s"], p["t"], p["c1"], domain, tol, max_terms)
        row = {"k": p["k"], "s": p["s"], "t": p["t"], "c1": p["c1"], "domain": domain.value, "constant": constant}
        return CommandReport({"command": "t2-constant", **row}, rows=[row])
    if p["weight_hat"] is None:
        raise HypothesisFailure("t2-constant needs either --c1 or --weight and --weight-hat")
    w = parse_weight(p["weight"], _domain(p))
    w_hat = parse_weight(p["weight_hat"], w.domain)
    reports = theorem2_report(w, w_hat, p["k"], p["s"], p["t"], _window(p, w.domain, config.settings), tol, max_terms)
    row = {
        "k": p["k"],
        "s": p["s"],
        "t": p["t"],
        "c1": reports.ratio.c1,
        "c2": reports.ratio.c2,
        "domain": w.domain.value,
        "constant": reports.first.constant,
        "second_constant": reports.second.constant,
        "rigorous": reports.first.rigorous,
    }
    return CommandReport({"command": "t2-constant", **reports.to_dict()}, rows=[row])


def cmd_pitt_demo(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    w = parse_weight(p["weight"], _domain(p))
    document = pitt_demo(
        k=p["k"],
        s=p["s"],
        t=p["t"],
        gamma=p["gamma"],
        w=w,
        window=_given(p, "window", 20),
        epsilon=p["epsilon"],
        probes=p["probes"],
        seed=config.seed,
    )
    return CommandReport({"command": "pitt-demo", **document})


def cmd_gibbs_demo(config: RunConfig, streams: Streams) -> CommandReport:
    p = config.params
    document = gibbs_demo(
        beta=p["beta"],
        k=p["k"],
        s=p["s"],
        t=p["t"],
        epsilon=p["epsilon"],
        kappa=p["kappa"],
        trials=_given(p, "trials", config.settings.sampling.trials),
        seed=config.seed,
        window=_given(p, "window", config.settings.sampling.probe_window),
        tol=_given(p, "tol", config.settings.numerics.series_tol),
        max_terms=config.settings.numerics.max_series_terms,
    )
    return CommandReport({"command": "gibbs-demo", **document})


def cmd_verify(config: RunConfig, streams: Streams, events: EventLogger) -> CommandReport:
    p = config.params
    sampling = config.settings.sampling
    numerics = config.settings.numerics
    runner = VerificationRunner(
        VerifyConfig(
            suite=p["suite"],
            trials=_given(p, "trials", sampling.trials),
            seed=config.seed,
            workers=_given(p, "workers", sampling.workers),
            window=_given(p, "window", sampling.probe_window),
            support_size=sampling.support_size,
            rel_tol=numerics.rel_tol,
            series_tol=numerics.series_tol,
            max_series_terms=numerics.max_series_terms,
        ),
        event_logger=events,
    )
    results = runner.run()
    return CommandReport(results.to_dict(), exit_code=0 if results.passed else 1)


COMMANDS: Dict[str, Callable[..., CommandReport]] = {
    "norm": cmd_norm,
    "inner": cmd_inner,
    "embed-classify": cmd_embed_classify,
    "tail-rank": cmd_tail_rank,
    "certify": cmd_certify,
    "series-sum": cmd_series_sum,
    "t2-constant": cmd_t2_constant,
    "pitt-demo": cmd_pitt_demo,
    "gibbs-demo": cmd_gibbs_demo,
    "verify": cmd_verify,
}
EVENT_COMMANDS = {"certify", "series-sum", "verify"}


def run(config: RunConfig, streams: Optional[Streams] = None) -> int:
    """Dispatch one command, write its report to stdout and return the exit status."""
    streams = streams or Streams()
    events = EventLogger(config.settings.app.event_log_file)
    handler = COMMANDS[config.command]
    try:
        validate_params(config.params)
        if config.command in EVENT_COMMANDS:
            report = handler(config, streams, events)
        else:
            report = handler(config, streams)
    except (SobolevError, ValueError) as exc:
        exit_code = getattr(exc, "exit_code", 1)
        logger.warning(f"[CLI] {config.command} failed: {type(exc).__name__}: {exc}")
        events.log_hypothesis_failure(config.command, type(exc).__name__, str(exc), exit_code)
        streams.stdout.write(render_json(error_document(config.command, exc), config.indent))
        return exit_code

    if config.output == "csv" and report.rows is not None:
        streams.stdout.write(render_csv(report.rows))
    else:
        streams.stdout.write(render_json(report.document, config.indent))
    return report.exit_code


# ---------------------------------------------------------------------- argparse


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Random seed (default from settings, 0)")
    common.add_argument("--output", choices=["json", "csv"], default=None, help="Report format")
    common.add_argument("--log-level", type=str, default=None, help="Logging level for stderr diagnostics")
    common.add_argument("--settings", type=Path, default=None, help="Path to a settings YAML file")
    return common


def _space_flags(parser: argparse.ArgumentParser, with_s: bool = True) -> None:
    parser.add_argument("--k", type=float, required=True, help="Order of smoothness k")
    if with_s:
        parser.add_argument("--s", type=float, required=True, help="Degree of summability s >= 1")
    parser.add_argument("--weight", type=str, default="constant:1", help="constant:C | polynomial:A | gibbs:B | table:PATH")
    parser.add_argument("--domain", choices=[d.value for d in IndexDomain], default=None, help="Index domain")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(description="Weighted Sobolev sequence spaces h^{k,s}_w")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="||p||_{k,s,w} of a JSONL sequence")
    _space_flags(p)
    p.add_argument("--input", type=str, default="-", help="JSONL file, '-' for stdin")

    p = sub.add_parser("inner", parents=[common], help="(p, q)_{k,2,w}")
    _space_flags(p)
    p.add_argument("--left", type=str, required=True)
    p.add_argument("--right", type=str, required=True)

    p = sub.add_parser("embed-classify", parents=[common], help="Relation between two orders k")
    p.add_argument("--k-src", type=float, required=True)
    p.add_argument("--k-tgt", type=float, required=True)

    p = sub.add_parser("tail-rank", parents=[common], help="Tail rank m*")
    p.add_argument("--theorem", choices=["T1a", "T2"], default="T1a")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--k-prime", type=float, default=None)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--domain", choices=[d.value for d in IndexDomain], default=None)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("certify", parents=[common], help="Compactness certificate")
    p.add_argument("--theorem", choices=["T1a", "T1b", "T2"], default="T1a")
    _space_flags(p)
    p.add_argument("--k-prime", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--weight-hat", type=str, default=None)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--window", type=int, default=None, help="Half-width of the ratio/sampling window")
    p.add_argument("--check-samples", type=int, default=0, help="Sphere samples used to check the guarantee")

    p = sub.add_parser("series-sum", parents=[common], help="Certified sum of (1+|m|^s)^(-kr/s)")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--domain", choices=[d.value for d in IndexDomain], default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("t2-constant", parents=[common], help="Two-weight embedding constants")
    _space_flags(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--weight-hat", type=str, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--window", type=int, default=None)

    p = sub.add_parser("pitt-demo", parents=[common], help="Pitt factorization of a diagonal operator")
    _space_flags(p, with_s=False)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--probes", type=int, default=200)

    p = sub.add_parser("gibbs-demo", parents=[common], help="Gibbs-weight embedding chain")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.2)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify", parents=[common], help="Randomised invariant suites")
    p.add_argument("--suite", choices=list(SUITES), required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--window", type=int, default=None)
    return parser


def config_from_args(args: argparse.Namespace, settings: Settings) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "seed", "output", "log_level", "settings"}
    }
    return RunConfig(
        command=args.command,
        params=params,
        seed=settings.sampling.seed if args.seed is None else args.seed,
        output=args.output or settings.output.format,
        indent=settings.output.indent,
        settings=settings,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = load_settings(args.settings)
    logging.basicConfig(
        level=(args.log_level or settings.app.log_level).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    if args.output == "csv" and args.command not in CSV_COMMANDS:
        parser.error(f"--output csv is available for {', '.join(sorted(CSV_COMMANDS))} only")
    return run(config_from_args(args, settings))


if __name__ == "__main__":
    sys.exit(main())
