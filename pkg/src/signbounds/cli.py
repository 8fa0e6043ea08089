"""Command-line front end.

    signbounds --cmd bounds --s 1..4 --k 2 --kprime 1 --d 2..6 --d0 1
    signbounds --cmd verify --input instance.json
    signbounds --cmd tightness --s 1..3 --d 1..3 --d0 1..3 --format json

Exit codes: 0 success / everything passed, 1 a verification failed,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Optional, Sequence

from signbounds.bounds import (
    BoundParams,
    bound_report,
    bpr8_bound,
    counterexample_degrees_product,
    grassmannian_application_bound,
    main_bound_per_degree,
    main_bound_uniform,
    tightness_lower_bound,
)
from signbounds.oracle import (
    count_counterexample_instance,
    count_grid_2d,
    count_tightness_instance,
    count_univariate,
)
from signbounds.polyalg import SparsePolynomial

COMMANDS = ("bounds", "compare", "verify", "tightness", "grassmannian", "counterexample")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class InstanceError(ValueError):
    pass


# -- instance files -------------------------------------------------------------


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_poly(obj, nvars: int, where: str) -> SparsePolynomial:
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise InstanceError(f"{where}: expected an object with a 'terms' list")
    terms = []
    for t, term in enumerate(obj["terms"]):
        tw = f"{where}.terms[{t}]"
        if not isinstance(term, dict) or "exps" not in term or "coef" not in term:
            raise InstanceError(f"{tw}: expected an object with 'exps' and 'coef'")
        exps = term["exps"]
        if not isinstance(exps, list) or any(
            isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps
        ):
            raise InstanceError(f"{tw}.exps: expected a list of non-negative integers")
        if len(exps) != nvars:
            raise InstanceError(f"{tw}.exps: length {len(exps)} does not match nvars={nvars}")
        coef = term["coef"]
        if isinstance(coef, bool) or not isinstance(coef, (str, int)):
            raise InstanceError(f"{tw}.coef: expected an exact rational string like '3/4'")
        try:
            value = Fraction(str(coef).strip())
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"{tw}.coef: {coef!r} is not an exact rational") from None
        terms.append((tuple(exps), value))
    poly = SparsePolynomial(nvars, terms)
    if poly.is_zero():
        raise InstanceError(f"{where}: zero polynomial")
    return poly


def parse_instance_text(text: str):
    """Parse the JSON instance format into ``(family, variety)``; variety may be None."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InstanceError("top level must be a JSON object")
    nvars = data.get("nvars")
    if isinstance(nvars, bool) or not isinstance(nvars, int) or nvars < 1:
        raise InstanceError("'nvars' must be a positive integer")
    family_data = data.get("family")
    if not isinstance(family_data, list):
        raise InstanceError("'family' must be a list of polynomials")
    family = [_parse_poly(p, nvars, f"family[{i}]") for i, p in enumerate(family_data)]
    variety = None
    if data.get("variety") is not None:
        variety = _parse_poly(data["variety"], nvars, "variety")
    return family, variety


def parse_instance(path) -> tuple[list[SparsePolynomial], Optional[SparsePolynomial]]:
    return parse_instance_text(Path(path).read_text())


def _render_poly(p: SparsePolynomial) -> dict:
    return {"terms": [{"exps": list(e), "coef": _fraction_str(c)} for e, c in p.sorted_terms()]}


def render_instance(family: Sequence[SparsePolynomial], variety: Optional[SparsePolynomial] = None) -> str:
    polys = list(family) + ([variety] if variety is not None else [])
    if not polys:
        raise InstanceError("nothing to render")
    nvars = polys[0].nvars
    data = {"nvars": nvars, "family": [_render_poly(p) for p in family]}
    if variety is not None:
        data["variety"] = _render_poly(variety)
    return json.dumps(data, indent=2)


# -- configuration ----------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"5"`` -> [5]; ``"2..4"`` -> [2, 3, 4]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise UsageError(f"bad integer or range {text!r}") from None
    if not values:
        raise UsageError(f"empty range {text!r}")
    return values


@dataclass
class RunConfig:
    command: str
    ranges: dict[str, list[int]] = field(default_factory=dict)
    input: Optional[Path] = None
    output: Optional[Path] = None
    format: str = "csv"
    seed: int = 0
    resolution: int = 64
    bpr8_from_zero: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.resolution < 2:
            raise UsageError("resolution must be >= 2")
        for name, values in self.ranges.items():
            if not values:
                raise UsageError(f"empty sweep for --{name}")

    def sweep(self, *names: str) -> list[dict[str, int]]:
        missing = [n for n in names if n not in self.ranges]
        if missing:
            raise UsageError(f"{self.command} needs " + ", ".join(f"--{n}" for n in missing))
        return [dict(zip(names, combo)) for combo in product(*(self.ranges[n] for n in names))]


def _decimal(q: Fraction, digits: int = 6) -> str:
    """Round half up to ``digits`` places without passing through a float."""
    scaled = math.floor(abs(q) * 10**digits + Fraction(1, 2))
    whole, frac = divmod(scaled, 10**digits)
    sign = "-" if q < 0 and scaled else ""
    return f"{sign}{whole}.{frac:0{digits}d}"


def _params_sweep(config: RunConfig) -> list[BoundParams]:
    out = []
    for p in config.sweep("s", "k", "kprime", "d", "d0"):
        try:
            out.append(BoundParams(**p))
        except (ValueError, TypeError):
            continue
    if not out:
        raise UsageError("no valid parameter tuple in the sweep (need k >= 1, 0 <= kprime <= k, d, d0 >= 1)")
    return out


# -- commands -------------------------------------------------------------------


def cmd_bounds(config: RunConfig) -> list[dict]:
    rows = []
    for params in _params_sweep(config):
        rep = bound_report(params)
        bpr8 = bpr8_bound(params.s, params.d, params.k, params.kprime, include_zero=config.bpr8_from_zero)
        rows.append(
            {
                "s": params.s,
                "k": params.k,
                "kprime": params.kprime,
                "d": params.d,
                "d0": params.d0,
                "main_uniform": rep.main_uniform,
                "bpr8": bpr8,
                "tightness_lower": rep.tightness_lower,
                "ratio": _decimal(Fraction(rep.main_uniform, bpr8)) if bpr8 else "inf",
            }
        )
    return rows


def cmd_compare(config: RunConfig) -> list[dict]:
    rows = []
    for params in _params_sweep(config):
        rep = bound_report(params)
        bpr8 = bpr8_bound(params.s, params.d, params.k, params.kprime, include_zero=config.bpr8_from_zero)
        if rep.main_uniform < bpr8:
            smaller = "main"
        elif rep.main_uniform > bpr8:
            smaller = "bpr8"
        else:
            smaller = "tie"
        rows.append(
            {
                "s": params.s,
                "k": params.k,
                "kprime": params.kprime,
                "d": params.d,
                "d0": params.d0,
                "main_uniform": rep.main_uniform,
                "bpr8": bpr8,
                "bpr_tight_leading": _fraction_str(rep.bpr_tight_leading),
                "ratio": _decimal(Fraction(rep.main_uniform, bpr8)) if bpr8 else "inf",
                "smaller": smaller,
            }
        )
    return rows


@dataclass
class VerifyEntry:
    instance: str
    oracle_total: int
    bound: int
    exact: bool

    @property
    def passed(self) -> bool:
        return self.oracle_total <= self.bound


def verification_rows(entries: Sequence[VerifyEntry]) -> tuple[list[dict], bool]:
    rows = [
        {
            "instance": e.instance,
            "oracle_total": e.oracle_total,
            "bound": e.bound,
            "exact": "yes" if e.exact else "heuristic",
            "status": "pass" if e.passed else "FAIL",
        }
        for e in entries
    ]
    return rows, all(e.passed for e in entries)


def verify_instance(name: str, family, variety, resolution: int = 64) -> VerifyEntry:
    """Run the applicable oracle on one instance and pair it with the main bound."""
    nvars = family[0].nvars if family else (variety.nvars if variety is not None else 1)
    degrees = [p.degree() for p in family]
    if any(d < 1 for d in degrees):
        raise InstanceError(f"{name}: constant polynomials are not supported in the family")
    if nvars == 1:
        if variety is not None:
            total = count_univariate(family, variety).total
            bound = main_bound_per_degree(degrees, max(variety.degree(), 1), 1, 0)
        else:
            total = count_univariate(family).total
            bound = main_bound_uniform(BoundParams(len(family), 1, 1, max(degrees, default=1), 1))
        return VerifyEntry(name, total, bound, True)
    if nvars == 2 and variety is None:
        if not family:
            raise InstanceError(f"{name}: the grid oracle needs a nonempty family")
        total = count_grid_2d(family, resolution=resolution).strict().total
        bound = main_bound_uniform(BoundParams(len(family), 2, 2, max(degrees), 1))
        return VerifyEntry(name, total, bound, False)
    raise InstanceError(f"{name}: no oracle for {nvars} variables" + (" with a variety" if variety else ""))


def random_univariate_instance(rng: random.Random):
    """Family of <= 4 polynomials of degree <= 4 and a variety of degree <= 3, integer coefficients in [-5, 5]."""

    def poly(max_deg):
        deg = rng.randint(1, max_deg)
        coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])]
        return SparsePolynomial.univariate(coeffs)

    family = [poly(4) for _ in range(rng.randint(1, 4))]
    variety = poly(3) if rng.random() < 0.5 else None
    return family, variety


def builtin_corpus(seed: int, n_random: int = 50):
    rng = random.Random(seed)
    for i in range(n_random):
        family, variety = random_univariate_instance(rng)
        yield f"univariate-{i}", family, variety


def cmd_verify(config: RunConfig) -> tuple[list[dict], bool]:
    entries = []
    if config.input is not None:
        family, variety = parse_instance(config.input)
        entries.append(verify_instance(config.input.name, family, variety, config.resolution))
    else:
        for name, family, variety in builtin_corpus(config.seed):
            entries.append(verify_instance(name, family, variety, config.resolution))
        for s, d, d0 in product((1, 2), (1, 2), (1, 2, 3)):
            total = count_tightness_instance(s, d, d0, seed=config.seed).strict().total
            bound = main_bound_uniform(BoundParams(s, 2, 1, d, d0))
            entries.append(VerifyEntry(f"tightness-s{s}-d{d}-d0{d0}", total, bound, True))
    return verification_rows(entries)


def cmd_tightness(config: RunConfig) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for p in config.sweep("s", "d", "d0"):
        s, d, d0 = p["s"], p["d"], p["d0"]
        if min(s, d, d0) < 1:
            raise UsageError("tightness needs s, d, d0 >= 1")
        report = count_tightness_instance(s, d, d0, seed=config.seed)
        strict = report.strict().total
        lower = tightness_lower_bound(s, d, d0, 2)
        main = main_bound_uniform(BoundParams(s, 2, 1, d, d0))
        match = strict == lower and strict <= main
        ok &= match
        rows.append(
            {
                "s": s,
                "d": d,
                "d0": d0,
                "oracle_strict": strict,
                "oracle_all": report.total,
                "lower_bound": lower,
                "main_uniform": main,
                "status": "pass" if match else "FAIL",
            }
        )
    return rows, ok


def cmd_grassmannian(config: RunConfig) -> list[dict]:
    rows = []
    for p in config.sweep("n", "k", "d"):
        try:
            bound = grassmannian_application_bound(p["n"], p["k"], p["d"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append({**p, "main_uniform": bound})
    return rows


def cmd_counterexample(config: RunConfig) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for p in config.sweep("d", "k", "m"):
        try:
            formula, degree_product = counterexample_degrees_product(p["d"], p["k"], p["m"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        count = count_counterexample_instance(p["d"], p["k"], p["m"])
        ok &= count == formula
        rows.append(
            {
                **p,
                "oracle_count": count,
                "formula_count": formula,
                "degree_product": degree_product,
                "exceeds_product": "yes" if count > degree_product else "no",
                "status": "pass" if count == formula else "FAIL",
            }
        )
    return rows, ok


# -- output & entry point ---------------------------------------------------------


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="signbounds", description=__doc__.split("\n")[0])
    ap.add_argument("--cmd", required=True, choices=COMMANDS)
    for name in ("s", "k", "kprime", "d", "d0", "n", "m"):
        ap.add_argument(f"--{name}", metavar="N|LO..HI")
    ap.add_argument("--input", type=Path)
    ap.add_argument("--output", type=Path)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--resolution", type=int, default=64)
    ap.add_argument(
        "--bpr8-range",
        choices=("full", "positive"),
        default="full",
        help="sum the earlier bound over 0 <= j (full) or 1 <= j (positive)",
    )
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ranges = {}
    for name in ("s", "k", "kprime", "d", "d0", "n", "m"):
        value = getattr(args, name)
        if value is not None:
            ranges[name] = parse_range(value)
    return RunConfig(
        command=args.cmd,
        ranges=ranges,
        input=args.input,
        output=args.output,
        format=args.format,
        seed=args.seed,
        resolution=args.resolution,
        bpr8_from_zero=args.bpr8_range == "full",
    )


def run(config: RunConfig) -> tuple[list[dict], bool]:
    handler = {
        "bounds": lambda c: (cmd_bounds(c), True),
        "compare": lambda c: (cmd_compare(c), True),
        "verify": cmd_verify,
        "tightness": cmd_tightness,
        "grassmannian": lambda c: (cmd_grassmannian(c), True),
        "counterexample": cmd_counterexample,
    }[config.command]
    return handler(config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        rows, ok = run(config)
    except (UsageError, InstanceError) as exc:
        print(f"signbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"signbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_rows(rows, config.format)
    if config.output is not None:
        config.output.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
