import argparse
import csv
import fractions
import json
import logging
import pathlib
import pydantic
import random
import sys
import typing

from src.endpoints.schemas import ElementModel
from src.endpoints.schemas import ElementReport
from src.endpoints.schemas import FarleyReport
from src.endpoints.schemas import PhiReport
from src.endpoints.schemas import PolynomialModel
from src.errors import ContractViolation
from src.errors import InvariantError
from src.errors import ParseError
from src.forest.parsing import parse_forest
from src.groups.action import eval_pl
from src.groups.action import parse_dyadic
from src.groups.element import VElement
from src.groups.element import classify
from src.groups.element import inverse
from src.groups.element import multiply
from src.groups.element import refine
from src.groups.families import random_element
from src.groups.notation import parse_element
from src.kazhdan.coefficients import almost_invariance
from src.kazhdan.coefficients import almost_invariance_report
from src.kazhdan.coefficients import invariance_threshold
from src.kazhdan.coefficients import kn_report
from src.kazhdan.shift import zeta_height
from src.oracles.lemmas import check_cyclic_forest_lemma
from src.oracles.lemmas import check_term_parity
from src.oracles.lemmas import check_word_injectivity
from src.oracles.reduction import check_reduction_soundness
from src.representations.haagerup import affine_rows
from src.representations.haagerup import alpha_sweep
from src.representations.haagerup import check_alpha
from src.representations.haagerup import phi_alpha
from src.representations.haagerup import vanishing_scan
from src.representations.positive import agrees_with_farley
from src.representations.positive import farley_norm
from src.representations.positive import farley_phi
from src.representations.positive import gram_psd_check

logger = logging.getLogger(__name__)


def parse_rational(text: str) -> fractions.Fraction:
    try:
        return fractions.Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Expected a rational p/q ({e})", text, 0) from e


def load_element(text: str) -> VElement:
    """An element literal, a builtin name, or @path to a file holding either a literal or an ElementModel JSON."""
    if not text.startswith("@"):
        return parse_element(text)
    content = pathlib.Path(text[1:]).read_text().strip()
    if content.startswith("{"):
        try:
            return ElementModel.model_validate_json(content).to_element()
        except pydantic.ValidationError as e:
            raise ParseError(f"Invalid element JSON ({e.error_count()} errors)", content, 0) from e
    return parse_element(content)


def load_elements(path: str) -> list[VElement]:
    """One literal per line (blank lines and # comments skipped), or a JSON list of ElementModel objects."""
    content = pathlib.Path(path).read_text()
    if content.lstrip().startswith("["):
        try:
            models = pydantic.TypeAdapter(list[ElementModel]).validate_json(content)
        except pydantic.ValidationError as e:
            raise ParseError(f"Invalid element list JSON ({e.error_count()} errors)", path, 0) from e
        return [model.to_element() for model in models]
    lines = (line.split("#", 1)[0].strip() for line in content.splitlines())
    return [parse_element(line) for line in lines if line]


def _emit(args: argparse.Namespace, rows: typing.Sequence[pydantic.BaseModel]):
    if args.json:
        print(json.dumps([row.model_dump() for row in rows], indent=2))
        return
    for row in rows:
        print("  ".join(f"{key}={value}" for key, value in row.model_dump().items()))


def _write_csv(path: str, rows: typing.Iterable[pydantic.BaseModel]) -> int:
    count = 0
    with open(path, "w", newline="") as fp:
        writer = None
        for row in rows:
            record = row.model_dump()
            if writer is None:
                writer = csv.DictWriter(fp, fieldnames=list(record))
                writer.writeheader()
            writer.writerow(record)
            count += 1
    logger.debug(f"Wrote {count} rows to {path}.")
    return count


def _show_value(value: fractions.Fraction, as_float: bool) -> str:
    return repr(float(value)) if as_float else str(value)


def run_element(args: argparse.Namespace):
    if args.action == "multiply":
        elements = [load_element(text) for text in args.elements]
        result = elements[0]
        for element in elements[1:]:
            result = multiply(result, element)
    else:
        if len(args.elements) != 1:
            raise ContractViolation("arity", f"'element {args.action}' takes exactly one element.")
        result = load_element(args.elements[0])
        if args.action == "inverse":
            result = inverse(result)
        elif args.action == "classify":
            print(classify(result))
            return
        elif args.action == "eval":
            if args.at is None:
                raise ContractViolation("arity", "'element eval' needs --at.")
            print(eval_pl(result, parse_dyadic(args.at)))
            return
        elif args.action == "refine":
            if args.forest is None:
                raise ContractViolation("arity", "'element refine' needs --forest.")
            result = refine(result, parse_forest(args.forest))
    if args.json:
        print(ElementReport.of(result).model_dump_json(indent=2))
    else:
        print(result)


def run_phi(args: argparse.Namespace):
    g = load_element(args.element)
    polynomial = phi_alpha(g)
    report = PhiReport(element=ElementModel.from_element(g), polynomial=PolynomialModel.of(polynomial))
    if args.alpha is not None and not args.symbolic:
        alpha = check_alpha(parse_rational(args.alpha))
        value = polynomial.evaluate(alpha)
        report.alpha, report.value = str(alpha), _show_value(value, args.float)
    if args.json:
        print(report.model_dump_json(indent=2))
    elif report.value is not None:
        print(report.value)
    else:
        print(report.polynomial.expression)


def run_scan(args: argparse.Namespace):
    alpha = parse_rational(args.alpha)
    rows = vanishing_scan(alpha, args.max_leaves)
    if args.csv:
        _write_csv(args.csv, affine_rows(alpha, args.max_leaves))
    _emit(args, rows)


def run_gram(args: argparse.Namespace):
    if args.elements:
        elements = load_elements(args.elements)
    else:
        rng = random.Random(args.seed)
        elements = [random_element(rng, rng.randint(0, args.length)) for _ in range(args.random)]
    report = gram_psd_check(elements, parse_rational(args.alpha))
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        verdict = "PSD" if report.is_psd else f"not PSD (witness {report.witness_index}: {report.witness_value})"
        print(f"{verdict}; rank {report.rank} of {report.size}; pivots {', '.join(report.pivots)}")


def run_farley(args: argparse.Namespace):
    g = load_element(args.element)
    report = FarleyReport(
        element=ElementModel.from_element(g),
        norm=farley_norm(g),
        phi=PolynomialModel.of(phi_alpha(g)),
        agrees=agrees_with_farley(g),
    )
    if args.beta is not None:
        value = farley_phi(g, parse_rational(args.beta))
        report.beta, report.farley_value, report.farley_float = str(value.beta), str(value), value.to_float()
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        verdict = "agrees with" if report.agrees else "differs from"
        print(f"norm {report.norm}; phi_alpha = {report.phi.expression} {verdict} alpha^{report.norm}")
        if report.farley_value is not None:
            print(f"farley = {report.farley_value} = {report.farley_float}")


def run_kazhdan(args: argparse.Namespace):
    if args.action == "kn":
        row = kn_report(args.n, args.m)
        if args.json:
            print(row.model_dump_json(indent=2))
        else:
            print(f"n={row.n} m={row.m} coefficient={row.coefficient} "
                  f"bound={'exact-match' if row.matches else 'MISMATCH'}")
    elif args.action == "almost-invariant":
        g = load_element(args.element)
        if args.strict:
            almost_invariance(g, args.m, strict=True)
        row = almost_invariance_report(g, args.m)
        _emit(args, [row])
    else:
        threshold = invariance_threshold(args.m)
        if args.json:
            print(json.dumps({"m": args.m, "threshold": threshold, "zeta_height": zeta_height(args.m)}))
        else:
            print(threshold)


def run_oracle(args: argparse.Namespace):
    if args.check == "word-injectivity":
        report = check_word_injectivity(args.bound)
    elif args.check == "cyclic-forest":
        report = check_cyclic_forest_lemma(args.bound)
    elif args.check == "parity":
        report = check_term_parity(max_leaves=args.bound or 5)
    else:
        report = check_reduction_soundness(samples=args.samples, seed=args.seed)
    print(report.model_dump_json(indent=2 if args.json else None))
    if not report.passed:
        raise InvariantError(f"Oracle {report.check} found {report.violations} violations.")


def run_sweep(args: argparse.Namespace):
    g = load_element(args.element)
    alphas = [parse_rational(part) for part in args.alphas.split(",") if part.strip()]
    rows = alpha_sweep(g, alphas)
    if args.csv:
        _write_csv(args.csv, rows)
    _emit(args, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thompson-reps", description="Exact coefficients for Thompson's groups.")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    parser.add_argument("--json", action="store_true", help="Emit JSON instead of text.")
    commands = parser.add_subparsers(dest="command", required=True)

    element = commands.add_parser("element", help="Group arithmetic on element literals RANGE/DOMAIN~[perm].")
    element.add_argument("action", choices=["reduce", "multiply", "inverse", "classify", "eval", "refine"])
    element.add_argument("elements", nargs="+")
    element.add_argument("--at", help="Dyadic point for 'eval', e.g. 3/2^3.")
    element.add_argument("--forest", help="Forest hung under the domain leaves for 'refine', e.g. '(. .); .'.")
    element.set_defaults(handler=run_element)

    phi = commands.add_parser("phi", help="The Haagerup coefficient phi_alpha of an element.")
    phi.add_argument("--element", required=True, help="Literal, builtin name, or @file.")
    phi.add_argument("--alpha", help="Rational alpha in [0, 1].")
    phi.add_argument("--symbolic", action="store_true", help="Print the polynomial in alpha (default without --alpha).")
    phi.add_argument("--float", action="store_true", help="Print the value as a float.")
    phi.set_defaults(handler=run_phi)

    scan = commands.add_parser("scan-vanishing", help="phi_alpha == alpha^(2n-2) over all reduced elements of T.")
    scan.add_argument("--alpha", required=True)
    scan.add_argument("--max-leaves", type=int, default=4)
    scan.add_argument("--csv", help="Write one row per element to this file.")
    scan.set_defaults(handler=run_scan)

    gram = commands.add_parser("gram", help="Exact positive-semidefiniteness of a Gram matrix of phi_alpha.")
    sources = gram.add_mutually_exclusive_group(required=True)
    sources.add_argument("--elements", help="File with one literal per line, or a JSON list of elements.")
    sources.add_argument("--random", type=int, help="Use this many random products of generators instead.")
    gram.add_argument("--seed", type=int, default=0)
    gram.add_argument("--length", type=int, default=6, help="Longest random word.")
    gram.add_argument("--alpha", required=True)
    gram.set_defaults(handler=run_gram)

    farley = commands.add_parser("farley", help="Compare phi_alpha with alpha^(2n-2).")
    farley.add_argument("--element", required=True)
    farley.add_argument("--beta", help="Also report exp(-beta)^(2n-2).")
    farley.set_defaults(handler=run_farley)

    kazhdan = commands.add_parser("kazhdan", help="Shift-representation coefficients.")
    kazhdan.add_argument("action", choices=["kn", "almost-invariant", "threshold"])
    kazhdan.add_argument("--n", type=int, default=0)
    kazhdan.add_argument("--m", type=int, default=1)
    kazhdan.add_argument("--element")
    kazhdan.add_argument("--strict", action="store_true", help="Reject elements outside the depth hypotheses.")
    kazhdan.set_defaults(handler=run_kazhdan)

    oracle = commands.add_parser("oracle", help="Exhaustive and randomized consistency checks.")
    oracle.add_argument("check", choices=["word-injectivity", "cyclic-forest", "parity", "reduction"])
    oracle.add_argument("--bound", type=int)
    oracle.add_argument("--seed", type=int, default=42)
    oracle.add_argument("--samples", type=int, default=500)
    oracle.set_defaults(handler=run_oracle)

    sweep = commands.add_parser("sweep", help="phi_alpha(g) along a list of alphas.")
    sweep.add_argument("--element", required=True)
    sweep.add_argument("--alphas", required=True, help="Comma-separated rationals, e.g. 1/4,1/2,3/4.")
    sweep.add_argument("--csv")
    sweep.set_defaults(handler=run_sweep)
    return parser


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "kazhdan" and args.action == "almost-invariant" and args.element is None:
        print("error: 'kazhdan almost-invariant' needs --element", file=sys.stderr)
        return 2
    try:
        args.handler(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (ContractViolation, InvariantError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: cannot access {e.filename or 'file'}: {e.strerror or e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
