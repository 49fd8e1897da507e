"""
MIT License

Copyright (c) 2025-present tom-jm69

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in all
copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
SOFTWARE.
"""

import argparse
import asyncio
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import pydantic

from .bodies import Body
from .client import Client
from .constants import DEFAULT_SAMPLES, DEFAULT_SEED
from .enums import BodyKind, FacetMethod, OutputFormat
from .exceptions import (
    CapacityError,
    CheckFailed,
    ConsistencyError,
    InvalidArgument,
    ParseError,
)
from .grassmann import ball_constants, measure_constant_exact
from .models import CliConfig, EvalResult, MeasureSpec, MonteCarloConfig
from .testfunctions import Const, parse_test_function

__all__ = ("build_parser", "run", "main")

_log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagmeas",
        description="Flag area measures of convex polytopes and ellipsoids",
    )
    parser.add_argument("command", choices=["constants", "bodies", "eval", "verify"])
    parser.add_argument("--n", type=int, help="Ambient dimension")
    parser.add_argument("--k", type=int, help="Degree of the measure")
    parser.add_argument("--p", type=int, help="Flag parameter, planes have dimension p+1")
    spec = parser.add_mutually_exclusive_group()
    spec.add_argument("--i", type=int, help="Index of the sigma measure")
    spec.add_argument("--exceptional", action="store_true", help="Exceptional measure, odd n only")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--body", choices=[str(kind) for kind in BodyKind], help="Built-in body")
    source.add_argument("--body-file", help="Polytope or ellipsoid JSON document")
    parser.add_argument("--points", type=int, default=20, help="Points of a random hull")
    parser.add_argument("--f", help="Test function as JSON, a JSON file, or 'const'")
    parser.add_argument(
        "--samples", type=int, default=DEFAULT_SAMPLES, help="Draws per face, or in total"
    )
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="Root seed")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads")
    parser.add_argument("--out", help="Write results here instead of stdout")
    parser.add_argument("--format", choices=[str(fmt) for fmt in OutputFormat], default="json")
    parser.add_argument("--suite", default="default", help="Verification suite: default or quick")
    parser.add_argument("--n-max", type=int, default=4, help="Largest dimension the suite visits")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> CliConfig:
    args = build_parser().parse_args(argv)
    return CliConfig(**{key: value for key, value in vars(args).items() if value is not None})


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def constants_table(n: int) -> Dict[str, Any]:
    """Every c_{n,k,p,i} as an exact fraction and a float, with kappa_n and omega_n."""
    rows = []
    for k in range(n):
        for p in range(n):
            m = max(0, min(k, n - k - 1, p, n - p - 1))
            for i in range(m + 1):
                c = measure_constant_exact(MeasureSpec.sigma(n, k, p, i))
                rows.append({"k": k, "p": p, "i": i, "m": m, "exact": str(c), "value": float(c)})
    kappa, omega = ball_constants(n)
    return {"n": n, "kappa": kappa, "omega": omega, "constants": rows}


def _body(client: Client, config: CliConfig) -> Body:
    if config.body_file is not None:
        return client.load_body(config.body_file)
    if config.body is None:
        raise InvalidArgument("Either --body or --body-file is required", "body")
    if config.n is None:
        raise InvalidArgument("--n is required with --body", "n")
    method = FacetMethod.QHULL if config.points > 64 else FacetMethod.BRUTE_FORCE
    return client.body(config.body, config.n, points=config.points, method=method)


def _render_results(results: List[EvalResult], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(EvalResult.csv_header())
        writer.writerows(result.csv_row() for result in results)
        return buffer.getvalue()
    payload = [result.model_dump(mode="json") for result in results]
    return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"


def _dump(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


async def execute(config: CliConfig) -> tuple[str, int]:
    """
    Run one sub-command.

    Returns:
        tuple[str, int]: Rendered output and exit code.

    Raises:
        InvalidArgument: Missing or out-of-range parameters.
        ParseError: Malformed body or test function documents.
    """
    if config.command == "constants":
        if config.n is None or config.n < 1:
            raise InvalidArgument("constants needs --n >= 1", "n", config.n)
        return _dump(constants_table(config.n)), EXIT_OK

    mc = MonteCarloConfig(samples=config.samples)
    async with Client(threads=config.threads, mc=mc, seed=config.seed) as client:
        if config.command == "bodies":
            return _dump(_body(client, config).to_json()), EXIT_OK

        if config.command == "eval":
            spec = config.spec()
            f = parse_test_function(config.f) if config.f is not None else Const()
            result = await client.evaluate(spec, _body(client, config), f)
            return _render_results([result], config.format), EXIT_OK

        report = await client.verify(config.suite, n_max=config.n_max, samples=config.samples)
        for failure in report.failures:
            _log.warning(f"Check {failure.check_id} failed: {failure.params}")
        payload = [entry.model_dump(mode="json") for entry in report.reports]
        return _dump(payload), EXIT_OK if report.passed else EXIT_CHECK_FAILED


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Command line entry point; returns the process exit code.

    0 on success or when every check passed, 1 when a check failed or a computed value broke
    an invariant, 2 on a usage error.
    """
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except pydantic.ValidationError as e:
        print(f"flagmeas: {e}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(config.verbose)
    try:
        output, code = asyncio.run(execute(config))
    except (InvalidArgument, ParseError, CapacityError, pydantic.ValidationError) as e:
        print(f"flagmeas: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, CheckFailed) as e:
        print(f"flagmeas: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED

    if config.out is not None:
        config.out.write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return code


def main() -> None:
    sys.exit(run())
