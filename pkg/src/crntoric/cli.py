"""Command-line entry point: ``crntoric {analyze,translate,basis,verify,oracle}``.

Exit status is 0 on success, 1 when an analysis check fails (hypothesis
violated, improper translation, verification or oracle mismatch) and 2 on
unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .core import CRNError, Network, TranslationScheme
from .dsl import bundled, parse_network, parse_scheme
from .graph import deficiency, node_enumeration
from .numeric import verify_basis
from .toric import HypothesisError, NotWeaklyReversible, steady_state_basis, tree_constants, tree_constants_bruteforce
from .translation import GeneralizedNetwork, MissingKineticComplex, apply_scheme, check_proper

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

NEEDS_SCHEME = {"translate", "basis", "verify"}
ANALYSIS_ERRORS = (HypothesisError, NotWeaklyReversible, MissingKineticComplex, ArithmeticError)


class InputError(CRNError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    network_path: str
    scheme_path: str | None = None
    output: str | None = None
    format: str = "text"
    seed: int = 0
    trials: int = 20
    tol: float = 1e-6

    def __post_init__(self):
        if self.command in NEEDS_SCHEME and self.scheme_path is None:
            raise InputError(f"{self.command} requires a scheme file")
        if self.trials < 0:
            raise InputError("--trials must be non-negative")
        if not self.tol > 0:
            raise InputError("--tol must be positive")


def _read(path: str) -> tuple[str, str]:
    """File text, falling back to the bundled data files (``net1.crn`` ...)."""
    p = Path(path)
    if p.is_file():
        try:
            return p.read_text(encoding="utf-8"), str(p)
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"{path}: cannot read: {exc}") from None
    if p.name == path:
        try:
            return bundled(path), path
        except (FileNotFoundError, OSError):
            pass
    raise InputError(f"{path}: no such file")


def _load(cfg: RunConfig) -> tuple[Network, TranslationScheme | None]:
    text, src = _read(cfg.network_path)
    net = parse_network(text, source=src)
    scheme = None
    if cfg.scheme_path is not None:
        text, src = _read(cfg.scheme_path)
        scheme = parse_scheme(text, net, source=src)
    return net, scheme


def _structure(report) -> dict:
    return report.to_dict()


def _structure_lines(title: str, rep: dict) -> list[str]:
    keys = ["m", "n", "r", "l", "s", "deficiency", "weakly_reversible", "s_kinetic", "kinetic_deficiency"]
    return [f"{title}:"] + [f"  {k} = {json.dumps(rep[k])}" for k in keys if rep.get(k) is not None]


def _analyze(cfg, net, scheme):
    out = {"command": "analyze", "network": _structure(deficiency(net))}
    lines = _structure_lines("network", out["network"])
    if scheme is not None:
        g = apply_scheme(net, scheme)
        prop = check_proper(g)
        out["translated"] = _structure(deficiency(g)) if g.has_all_kinetic else _structure(deficiency(g.base))
        out["translated"]["proper"] = prop.proper
        lines += _structure_lines("translated", out["translated"]) + [f"  proper = {json.dumps(prop.proper)}"]
    return EXIT_OK, out, lines


def _translate(cfg, net, scheme):
    g = apply_scheme(net, scheme)
    prop = check_proper(g)
    dump = g.to_dict()
    out = {
        "command": "translate",
        "proper": prop.proper,
        "conflicts": prop.describe(g),
        **dump,
    }
    lines = [dump["network"].rstrip("\n"), "", "nodes:"]
    for node in dump["nodes"]:
        lines.append(f"  [{node['index']}] {node['complex']}  kinetic: {node['kinetic']}  from: {', '.join(node['origin'])}")
    lines.append(f"proper = {json.dumps(prop.proper)}")
    for c in out["conflicts"]:
        lines.append(f"  conflict at {c['node']}: sources {', '.join(c['sources'])}")
    return (EXIT_OK if prop.proper else EXIT_FAIL), out, lines


def _basis_or_fail(g: GeneralizedNetwork, command: str):
    try:
        return steady_state_basis(g), None
    except HypothesisError as exc:
        out = {"command": command, "hypotheses": list(exc.failures), "pass": False}
        return None, (EXIT_FAIL, out, [f"hypothesis violated: {f}" for f in exc.failures])


def _basis(cfg, net, scheme):
    g = apply_scheme(net, scheme)
    basis, failed = _basis_or_fail(g, "basis")
    if failed:
        return failed
    out = {"command": "basis", "count": len(basis), "binomials": [b.to_dict(g.base) for b in basis]}
    return EXIT_OK, out, [b.format(g.base) for b in basis]


def _verify(cfg, net, scheme):
    g = apply_scheme(net, scheme)
    basis, failed = _basis_or_fail(g, "verify")
    if failed:
        return failed
    rep = verify_basis(net, g, basis, trials=cfg.trials, tol=cfg.tol, seed=cfg.seed)
    out = {"command": "verify", "binomials": [b.format(g.base) for b in basis], **rep.to_dict()}
    lines = [
        f"trials = {rep.trials}, seed = {rep.seed}, tol = {rep.tol!r}",
        f"converged = {rep.converged}/{rep.trials} (need {rep.min_converged_fraction:.0%})",
    ]
    for i, t in enumerate(rep.per_trial):
        if t.converged:
            lines.append(
                f"  trial {i}: ode residual {t.residual_ode:.3e}, worst binomial {t.residual_basis_max:.3e}"
                + (f", failing {t.failing}" if t.failing else "")
            )
        else:
            lines.append(f"  trial {i}: not converged")
    if rep.failing_binomials:
        lines.append("failing binomials:")
        lines += [f"  [{i}] {out['binomials'][i]}" for i in rep.failing_binomials]
    if rep.no_evidence:
        lines.append("no converged trials: pass is vacuous")
    lines.append("PASS" if rep.passed else "FAIL")
    return (EXIT_OK if rep.passed else EXIT_FAIL), out, lines


def _oracle(cfg, net, scheme):
    g = apply_scheme(net, scheme) if scheme is not None else None
    target = g.base if g is not None else net
    sym = tree_constants(target).as_dict()
    brute = tree_constants_bruteforce(target).as_dict()
    order = target.label_order()
    rows = []
    for pos, node in enumerate(node_enumeration(target), start=1):
        rows.append(
            {
                "number": pos,
                "node": node,
                "complex": target.format_complex(node),
                "symbolic": sym[node].format(order),
                "bruteforce": brute[node].format(order),
                "match": sym[node] == brute[node],
            }
        )
    ok = all(r["match"] for r in rows)
    out = {"command": "oracle", "tree_constants": rows, "pass": ok}
    lines = [
        f"K{r['number']} [{r['complex']}] = {r['symbolic']}" + ("" if r["match"] else f"  MISMATCH brute force: {r['bruteforce']}")
        for r in rows
    ]
    lines.append("PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_FAIL), out, lines


HANDLERS = {
    "analyze": _analyze,
    "translate": _translate,
    "basis": _basis,
    "verify": _verify,
    "oracle": _oracle,
}


def render(cfg: RunConfig, out: dict, lines: list[str]) -> str:
    if cfg.format == "json":
        return json.dumps(out, indent=2, allow_nan=False) + "\n"
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns the exit status and the rendered report."""
    net, scheme = _load(cfg)
    status, out, lines = HANDLERS[cfg.command](cfg, net, scheme)
    return status, render(cfg, out, lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-6)

    parser = argparse.ArgumentParser(prog="crntoric", description="Toric steady states of translated reaction networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "deficiency and weak reversibility, optionally of the translation too",
        "translate": "apply a scheme and dump the generalized network",
        "basis": "binomial steady-state basis of the translation",
        "verify": "check the basis against sampled ODE steady states",
        "oracle": "compare tree constants with spanning-tree enumeration",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("network")
        p.add_argument("scheme", nargs=None if name in NEEDS_SCHEME else "?")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            network_path=args.network,
            scheme_path=args.scheme,
            output=args.output,
            format=args.format,
            seed=args.seed,
            trials=args.trials,
            tol=args.tol,
        )
        status, text = run(cfg)
    except ANALYSIS_ERRORS as exc:
        print(f"crntoric: analysis failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CRNError as exc:
        print(f"crntoric: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
        print(f"crntoric: analysis failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.output:
        try:
            Path(cfg.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"crntoric: error: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
