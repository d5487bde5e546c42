"""
Command-line front end.

Every subcommand writes one report (JSON by default, or flat ``key: value``
text) to ``--output`` or stdout, including when it fails.  Exit codes:
0 all checks passed, 1 a check failed (the report carries the witness),
2 usage or window error, 3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from w1coh import properties
from w1coh.bimodules import element_from_json
from w1coh.cochains import (
    Cochain1,
    ExtensionError,
    coboundary_cochain,
    extend_to_hom,
    k_compatibility_check,
    kmap_from_json,
    make_delta0,
    make_delta_k,
    make_delta_k_left,
    make_delta_k_right,
    residual_pairs,
    residual_scan,
)
from w1coh.errors import GenusError, ParseError, WindowError
from w1coh.lattice_poisson import format_fraction, parse_fraction, parse_monomial
from w1coh.solver import (
    classification_report,
    is_coboundary,
    pin_generators,
    project_to_interior,
    verify_certificate,
    verify_row_certificate,
)
from w1coh.turaev import nontriviality_scan

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    genus: int = 1
    domain_radius: int = 2
    value_radius: int = 4
    coboundary_radius: int | None = None
    flavor: str = "tensor"
    seed: int = 0
    format: str = "json"
    output: str | None = None

    def validate(self, command: str) -> None:
        min_genus = 2 if command == "turaev" else 1
        if self.genus < min_genus:
            raise GenusError(f"{command} needs genus >= {min_genus}, got {self.genus}")
        for name in ("domain_radius", "value_radius", "coboundary_radius"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise WindowError(f"{name.replace('_', '-')} must be positive, got {v}")

    @property
    def m_radius(self) -> int:
        return self.coboundary_radius if self.coboundary_radius is not None else self.value_radius

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("output")
        out.pop("format")
        return out


# -- input helpers ---------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_cochain(path: str) -> Cochain1:
    data = _load_json(path)
    if isinstance(data, dict) and "cochain" in data:
        data = data["cochain"]
    return Cochain1.from_json(data)


def _load_kmap(path: str):
    return kmap_from_json(_load_json(path))


def _load_assignments(path: str, genus: int, flavor: str) -> dict:
    data = _load_json(path)
    try:
        entries = data["assignments"]
        out = {}
        for e in entries:
            Z = parse_monomial(e["Z"], genus)
            m = element_from_json(e["value"])
            if m.kind != flavor or m.genus != genus:
                raise ParseError(f"assignment at {list(Z)} does not match genus/flavor")
            out[Z] = m
    except (KeyError, TypeError):
        raise ParseError("assignments file needs {'assignments': [{'Z', 'value'}]}") from None
    return out


def _residual_json(Z1, Z2, r) -> dict:
    return {"Z1": list(Z1), "Z2": list(Z2), "residual": r.to_json()}


# -- subcommands -------------------------------------------------------------------

def cmd_verify_axioms(cfg: RunConfig, args) -> tuple:
    checks = properties.poisson_axioms(exhaustive_radius=2, samples=args.samples,
                                       seed=cfg.seed, sample_genus=max(2, cfg.genus))
    checks += properties.module_axioms(samples=args.samples, seed=cfg.seed)
    checks.append(properties.unit_is_invariant(cfg.genus, cfg.domain_radius))
    ok = all(c.passed for c in checks)
    return ok, {"checks": [c.to_json() for c in checks]}


def cmd_residual_scan(cfg: RunConfig, args) -> tuple:
    if args.input:
        delta = _load_cochain(args.input)
    elif args.kmap:
        delta = make_delta_k(_load_kmap(args.kmap), cfg.domain_radius)
    else:
        raise UsageError("residual-scan needs --input or --kmap")
    wit = residual_scan(delta)
    return not wit, {
        "genus": delta.genus,
        "flavor": delta.flavor,
        "domain_radius": delta.domain_radius,
        "pairs_checked": len(residual_pairs(delta.genus, delta.domain_radius)),
        "witnesses": [_residual_json(*w) for w in wit],
    }


def cmd_check_k(cfg: RunConfig, args) -> tuple:
    if not args.kmap:
        raise UsageError("check-k needs --kmap")
    k = _load_kmap(args.kmap)
    chk = k_compatibility_check(k, cfg.domain_radius)
    result = {
        "genus": k.genus,
        "box_radius": cfg.domain_radius,
        "origin_value": format_fraction(chk.origin_value),
        "witnesses": [{"u": list(u), "v": list(v), "defect": format_fraction(d)}
                      for u, v, d in chk.witnesses],
        "compatible": chk.ok,
    }
    extended = False
    try:
        hom = extend_to_hom(k, cfg.domain_radius)
        result["extension"] = hom.to_json()
        extended = True
    except ExtensionError as exc:
        result["extension_failure"] = {"at": list(exc.monomial),
                                       "expected": format_fraction(exc.expected),
                                       "actual": format_fraction(exc.actual)}
    # a compatible k must extend; a non-compatible one is a failed check
    return chk.ok and extended, result


def cmd_classify(cfg: RunConfig, args) -> tuple:
    rep = classification_report(cfg.genus, cfg.domain_radius, cfg.value_radius, cfg.flavor,
                                cfg.m_radius)
    rep.pop("command", None)
    return rep.pop("passed"), rep


def cmd_coboundary_test(cfg: RunConfig, args) -> tuple:
    if not args.input:
        raise UsageError("coboundary-test needs --input")
    delta = _load_cochain(args.input)
    res = is_coboundary(delta, cfg.m_radius)
    result = res.to_json()
    result["coboundary_radius"] = cfg.m_radius
    if res.feasible:
        certified = coboundary_cochain(res.m, delta.domain_radius) == delta
    else:
        certified = verify_certificate(delta, cfg.m_radius, res.certificate)
    result["certified"] = certified
    ok = certified
    if args.expect is not None:
        ok = ok and res.feasible == (args.expect == "coboundary")
        result["expected"] = args.expect
    return ok, result


def cmd_propagate(cfg: RunConfig, args) -> tuple:
    assignments = (_load_assignments(args.assignments, cfg.genus, cfg.flavor)
                   if args.assignments else {})
    known = pin_generators(cfg.genus, cfg.flavor, assignments, cfg.value_radius, args.part)
    rep = project_to_interior(cfg.genus, cfg.domain_radius, cfg.value_radius, cfg.flavor,
                              part=args.part, known=known, value_margin=args.value_margin,
                              boundary=args.boundary)
    result = rep.to_json()
    if not rep.feasible:
        result["certificate_verified"] = verify_row_certificate(
            cfg.genus, cfg.domain_radius, cfg.value_radius, cfg.flavor, rep.certificate,
            part=args.part, known=known, boundary=args.boundary)
    return rep.unique, result


def cmd_turaev(cfg: RunConfig, args) -> tuple:
    rep = nontriviality_scan(cfg.genus, cfg.value_radius)
    return rep.all_zero, rep.to_json()


def cmd_make_cochain(cfg: RunConfig, args) -> tuple:
    kind = args.kind
    if kind in ("delta_k", "delta_l", "delta_r"):
        if not args.kmap:
            raise UsageError(f"{kind} needs --kmap")
        k = _load_kmap(args.kmap)
        maker = {"delta_k": make_delta_k, "delta_l": make_delta_k_left,
                 "delta_r": make_delta_k_right}[kind]
        c = maker(k, cfg.domain_radius)
    elif kind == "delta0":
        c = make_delta0(parse_fraction(args.scalar), cfg.domain_radius, cfg.genus)
    else:
        if not args.element:
            raise UsageError("coboundary needs --element")
        c = coboundary_cochain(element_from_json(_load_json(args.element)), cfg.domain_radius)
    return True, {"cochain": c.to_json()}


COMMANDS = {
    "verify-axioms": cmd_verify_axioms,
    "residual-scan": cmd_residual_scan,
    "check-k": cmd_check_k,
    "classify": cmd_classify,
    "coboundary-test": cmd_coboundary_test,
    "propagate": cmd_propagate,
    "turaev": cmd_turaev,
    "make-cochain": cmd_make_cochain,
}


# -- argument parsing ----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--domain-radius", type=int, default=2)
    p.add_argument("--value-radius", type=int, default=4)
    p.add_argument("--coboundary-radius", type=int, default=None,
                   help="radius of the box for m (default: value radius)")
    p.add_argument("--flavor", choices=("tensor", "wedge"), default="tensor")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None, help="report path (default: stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="w1coh", description="Exact windowed cohomology computations for W_1(g).")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    p = sub.add_parser("verify-axioms", parents=[common],
                       help="Poisson and module axioms, exhaustive and sampled")
    p.add_argument("--samples", type=int, default=500)
    p = sub.add_parser("residual-scan", parents=[common], help="cocycle residuals of a cochain")
    p.add_argument("--input", help="serialized cochain")
    p.add_argument("--kmap", help="functional k; scans Delta_k on the domain window")
    p = sub.add_parser("check-k", parents=[common],
                       help="additivity of k on pairs with non-zero pairing")
    p.add_argument("--kmap", help="serialized HomFunctional or FiniteKMap")
    sub.add_parser("classify", parents=[common], help="rank of the predicted classes")
    p = sub.add_parser("coboundary-test", parents=[common], help="solve d(m) = cochain")
    p.add_argument("--input", help="serialized cochain")
    p.add_argument("--expect", choices=("coboundary", "not-coboundary"), default=None)
    p = sub.add_parser("propagate", parents=[common],
                       help="solve from values at 1 and the generators")
    p.add_argument("--assignments", help="JSON {'assignments': [{'Z', 'value'}]}")
    p.add_argument("--part", default=None,
                   help="module component (one_one, left, right, prime)")
    p.add_argument("--value-margin", type=int, default=0,
                   help="also require ||u||, ||v|| <= value radius - margin for interior unknowns")
    p.add_argument("--boundary", choices=("support", "drop"), default="support",
                   help="support: values vanish outside the value box; drop: keep only "
                        "rows whose unknowns all lie in the box")
    sub.add_parser("turaev", parents=[common],
                   help="gamma-coefficient scan; --value-radius is the pair radius")
    p = sub.add_parser("make-cochain", parents=[common], help="write a standard cochain")
    p.add_argument("--kind", required=True,
                   choices=("delta_k", "delta_l", "delta_r", "delta0", "coboundary"))
    p.add_argument("--kmap")
    p.add_argument("--element", help="serialized tensor/wedge element (for coboundary)")
    p.add_argument("--scalar", default="1")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(args.genus, args.domain_radius, args.value_radius,
                     args.coboundary_radius, args.flavor, args.seed, args.format, args.output)


def _flatten(prefix: str, obj, out: list) -> None:
    if isinstance(obj, dict):
        for k in obj:
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for n, v in enumerate(obj):
            _flatten(f"{prefix}[{n}]", v, out)
    else:
        out.append(f"{prefix}: {json.dumps(obj, sort_keys=True)}")


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        lines: list = []
        _flatten("", report, lines)
        return "\n".join(lines) + "\n"
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run(command: str, cfg: RunConfig, args) -> tuple:
    """Execute one subcommand; returns (exit code, report dict)."""
    report = {"command": command, "config": cfg.to_json()}
    try:
        cfg.validate(command)
        passed, result = COMMANDS[command](cfg, args)
        report["result"] = result
        report["passed"] = bool(passed)
        code = EXIT_OK if passed else EXIT_FAILED
    except ParseError as exc:
        report["error"] = {"kind": "parse", "message": str(exc)}
        code = EXIT_PARSE
    except (WindowError, GenusError, UsageError, ValueError) as exc:
        kind = "window" if isinstance(exc, WindowError) else "usage"
        report["error"] = {"kind": kind, "message": str(exc)}
        code = EXIT_USAGE
    if "error" in report:
        report["passed"] = False
    report["exit_code"] = code
    return code, report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    code, report = run(args.command, cfg, args)
    if args.command == "make-cochain" and code == EXIT_OK:
        text = json.dumps(report["result"]["cochain"], indent=2, sort_keys=True) + "\n"
    else:
        text = render(report, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
