"""Command-line surface for batch queries.

Every subcommand writes one JSON document (default) or aligned text
(``--format text``) to stdout.  Exit codes: 0 for success (a NotBound
verdict is a successful answer), 1 for domain errors, 2 for usage and
parse errors.  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import bound, breaking, coupling, grammar, registry
from .expr import BundleError, normalize, rank_info

REGISTRY_ENV_VAR = "BUNDLECALC_REGISTRY"

_INTERACTIONS = {
    "electromagnetic": registry.Interaction.ELECTROMAGNETIC,
    "strong": registry.Interaction.STRONG,
    "electroweak": registry.Interaction.ELECTROWEAK,
}

_GAUGES = {
    "U1": registry.U1_GAUGE,
    "U2": registry.U2_GAUGE,
    "SU3": registry.SU3_GAUGE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # do not sys.exit from run()
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bundlecalc", description=__doc__)
    parser.add_argument(
        "--format", choices=("json", "text"), default="json", dest="out_format"
    )
    parser.add_argument(
        "--registry",
        default=None,
        help=f"registry document path (default: ${REGISTRY_ENV_VAR} or built-in)",
    )
    parser.add_argument(
        "--model",
        choices=("massive-neutrinos",),
        default=None,
        help="toggle the built-in catalog variant",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="canonical form of an expression")
    p.add_argument("expr")

    p = sub.add_parser("dim", help="fibre dimension of an expression")
    p.add_argument("expr")

    p = sub.add_parser("conj", help="conjugate of an expression, normalized")
    p.add_argument("expr")

    p = sub.add_parser("bind", help="bound-state verdict for a composite")
    p.add_argument(
        "composite",
        nargs="?",
        default=None,
        help='JSON list like [{"symbol": "u", "count": 1}]; default: stdin',
    )

    p = sub.add_parser("break", help="apply symmetry breaking")
    p.add_argument("--mode", choices=("formal", "spontaneous"), required=True)
    p.add_argument("--gauge", choices=tuple(_GAUGES), default=None)
    p.add_argument("target", help="an expression, or the word 'registry'")

    p = sub.add_parser("carriers", help="carrier slots for an interaction")
    p.add_argument("kind", choices=tuple(_INTERACTIONS))

    p = sub.add_parser("coupling", help="invariant-metric queries")
    p.add_argument("query", choices=("check", "angle", "family"))
    p.add_argument("--config", default=None, help="coupling config JSON path")
    p.add_argument("--g", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--gram", default=None, help="4x4 matrix as JSON")

    p = sub.add_parser("list", help="list catalog entries")
    p.add_argument("what", choices=("particles", "carriers"))

    return parser


def _load_catalog(args: argparse.Namespace) -> registry.Catalog:
    path = args.registry or os.environ.get(REGISTRY_ENV_VAR)
    if path:
        return registry.load_registry(path)
    return registry.default_registry(
        massive_neutrinos=args.model == "massive-neutrinos"
    )


def _species_record(s: registry.Species) -> dict:
    return {
        "name": s.name,
        "symbol": s.symbol,
        "statistics": s.statistics.value,
        "charge_thirds": s.charge_thirds,
        "color": s.color.value if s.color else None,
        "generation": s.generation,
        "free_bundle": grammar.format_normal(normalize(s.free_bundle)),
        "interacting_bundle": (
            None
            if s.interacting_bundle is None
            else grammar.format_normal(normalize(s.interacting_bundle))
        ),
        "is_carrier": s.is_carrier,
    }


def _metric_from_args(args: argparse.Namespace) -> tuple[np.ndarray, dict]:
    if args.gram is not None:
        gram = np.array(json.loads(args.gram), dtype=float)
        return gram, {}
    config = coupling.load_coupling_config(args.config)
    g = args.g if args.g is not None else config["weak_g"]
    theta = args.theta if args.theta is not None else config["weinberg_angle"]
    metric = coupling.ad_invariant_metric(g, theta)
    return metric.gram, {"g": g, "theta_w": theta}


def _dispatch(args: argparse.Namespace, stdin: str | None) -> dict:
    command = args.command

    if command == "normalize":
        expr = grammar.parse(args.expr)
        return {
            "input": args.expr,
            "normal_form": grammar.format_normal(normalize(expr)),
        }

    if command == "dim":
        info = rank_info(grammar.parse(args.expr))
        return {"input": args.expr, "rank": info.rank, "real": info.real}

    if command == "conj":
        from .expr import Conj

        conjugated = normalize(Conj(grammar.parse(args.expr)))
        return {"input": args.expr, "conjugate": grammar.format_normal(conjugated)}

    if command == "bind":
        text = args.composite if args.composite is not None else stdin
        if text is None:
            raise UsageError("bind needs a composite argument or stdin")
        catalog = _load_catalog(args)
        composite = bound.composite_from_json(catalog, json.loads(text))
        verdict = bound.bound_state_target(composite)
        return bound.verdict_to_json(composite, verdict)

    if command == "break":
        return _dispatch_break(args)

    if command == "carriers":
        return breaking.carriers(_INTERACTIONS[args.kind]).to_json_dict()

    if command == "coupling":
        return _dispatch_coupling(args)

    if command == "list":
        catalog = _load_catalog(args)
        species = catalog.carriers() if args.what == "carriers" else catalog.species
        return {"species": [_species_record(s) for s in species]}

    raise UsageError(f"unknown command {command!r}")


def _dispatch_break(args: argparse.Namespace) -> dict:
    if args.mode == "formal":
        if args.gauge is None:
            raise UsageError("formal breaking needs --gauge")
        gauge = _GAUGES[args.gauge]
        if args.target == "registry":
            catalog = breaking.break_registry(
                breaking.FormalBreaking(gauge), _load_catalog(args)
            )
            return {
                "mode": "formal",
                "gauge": args.gauge,
                "species": [_species_record(s) for s in catalog],
            }
        broken = breaking.formal_break(gauge, grammar.parse(args.target))
        return {
            "input": args.target,
            "mode": "formal",
            "gauge": args.gauge,
            "result": grammar.format_normal(normalize(broken)),
        }

    # Spontaneous breaking exists for the electroweak structure only; the
    # other two interactions are too strong for it.
    if args.gauge == "U1":
        raise breaking.NotApplicableError(breaking.REFUSAL_SPONTANEOUS_EM)
    if args.gauge == "SU3":
        raise breaking.NotApplicableError(breaking.REFUSAL_SPONTANEOUS_STRONG)
    if args.target == "registry":
        catalog = breaking.break_registry(breaking.SpontaneousEW(), _load_catalog(args))
        return {
            "mode": "spontaneous",
            "gauge": "U2",
            "species": [_species_record(s) for s in catalog],
        }
    broken = breaking.ew_break(grammar.parse(args.target))
    return {
        "input": args.target,
        "mode": "spontaneous",
        "gauge": "U2",
        "result": grammar.format_normal(normalize(broken)),
    }


def _dispatch_coupling(args: argparse.Namespace) -> dict:
    if args.query == "family":
        return {"family_dimension": coupling.invariant_metric_family_dimension()}

    gram, params = _metric_from_args(args)
    if args.query == "check":
        residual = coupling.ad_invariance_residual(gram)
        payload = {
            "gram": gram.tolist(),
            "ad_invariant": bool(residual < coupling.INVARIANCE_TOL),
            "max_residual": float(residual),
        }
        payload.update(params)
        return payload

    # angle
    angle = coupling.weinberg_angle(gram)
    directions = coupling.ew_directions(gram)
    payload = {
        "gram": gram.tolist(),
        "weinberg_angle": float(angle),
        "photon": directions.photon.tolist(),
        "w_plane": [w.tolist() for w in directions.w_plane],
        "z": directions.z.tolist(),
    }
    payload.update(params)
    return payload


# --------------------------------------------------------------------------
# Text rendering


def _text_lines(payload: dict) -> list[str]:
    if "normal_form" in payload:
        return [payload["normal_form"]]
    if "conjugate" in payload:
        return [payload["conjugate"]]
    if "result" in payload:
        return [payload["result"]]
    if "rank" in payload:
        return [f"{payload['rank']} ({'real' if payload['real'] else 'complex'})"]
    if "classification" in payload:
        lines = [
            f"classification: {payload['classification']}",
            f"em_ok: {payload['em_ok']}",
            f"color_ok: {payload['color_ok']}",
            f"statistics_ok: {payload['statistics_ok']}",
            f"target: {payload['target']}",
        ]
        for step in payload["cancellation_trace"]:
            lines.append(f"cancel: {step['rule']} x{step['count']}")
        return lines
    if "entries" in payload:
        lines = []
        for e in payload["entries"]:
            flags = []
            if e["charged"]:
                flags.append("charged")
            if e["matterlike"]:
                flags.append("matterlike")
            suffix = f" [{', '.join(flags)}]" if flags else ""
            lines.append(f"{e['name']}: {e['bundle_slot']}{suffix}")
        lines.append(f"total slot rank: {payload['total_slot_rank']}")
        return lines
    if "species" in payload:
        lines = []
        for s in payload["species"]:
            alpha = s["interacting_bundle"] or "-"
            lines.append(
                f"{s['symbol']}: charge {s['charge_thirds']}/3, "
                f"{s['statistics']}, alpha {alpha}"
            )
        return lines
    return [f"{key}: {payload[key]}" for key in sorted(payload)]


def render(payload: dict, out_format: str) -> str:
    if out_format == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return "\n".join(_text_lines(payload)) + "\n"


def run(argv: Sequence[str], stdin: str | None = None) -> tuple[int, str]:
    """Execute one invocation; returns (exit code, stdout document)."""
    parser = _build_parser()
    out_format = "json"
    try:
        args = parser.parse_args(argv)
        out_format = args.out_format
        payload = _dispatch(args, stdin)
        return 0, render(payload, out_format)
    except UsageError as err:
        return 2, render({"error": str(err)}, out_format)
    except (grammar.ExprSyntaxError, json.JSONDecodeError, ValueError) as err:
        return 2, render({"error": str(err)}, out_format)
    except BundleError as err:
        return 1, render({"error": str(err)}, out_format)


def main() -> None:
    stdin = None if sys.stdin.isatty() else sys.stdin.read()
    code, output = run(sys.argv[1:], stdin)
    sys.stdout.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
