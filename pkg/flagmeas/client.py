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

import asyncio
import logging
from pathlib import Path
from typing import List, Optional, Sequence

from .bodies import Body, load_body, standard_body
from .constants import DEFAULT_SEED
from .enums import BodyKind, FacetMethod
from .grassmann import RngStream
from .measures import plan_evaluation, to_result
from .models import CheckReport, EvalResult, MeasureSpec, MonteCarloConfig, VerificationReport
from .state import EngineState
from .testfunctions import Const, TestFunction
from .verification import Check, suite_checks

__all__ = ("Client",)


_log = logging.getLogger(__name__)


class Client:
    """
    Async front end to the evaluation engines.

    Face and block jobs of an evaluation run on a thread pool; their results are
    reduced in job order, so estimates do not depend on ``threads``.
    """

    def __init__(
        self,
        threads: int = 1,
        mc: Optional[MonteCarloConfig] = None,
        seed: Optional[int] = None,
    ) -> None:
        """
        Initialize the client and its worker pool.

        Args:
            threads: Number of worker threads (default: `1`).
            mc: Sampling budget used when a call doesn't pass its own.
            seed: Root seed of the default random stream (default: `0xF1A6`).
        """
        self._state = EngineState(threads, mc)
        self.rng = RngStream(seed=DEFAULT_SEED if seed is None else seed)

    async def __aenter__(self):
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None:
            _log.error(f"Exception occurred: {exc_val}")
        await self.close()
        return False

    @property
    def threads(self) -> int:
        return self._state.threads

    async def close(self) -> None:
        """*coroutine*
        Shuts down the worker pool.
        """
        await asyncio.get_running_loop().run_in_executor(None, self._state.shutdown)

    def body(
        self,
        kind: BodyKind | str,
        n: int,
        points: int = 20,
        method: FacetMethod = FacetMethod.BRUTE_FORCE,
    ) -> Body:
        """
        Built-in body, cached per (kind, n, points, method).

        Random hulls draw from the client stream.

        Raises:
            InvalidArgument: Unknown kind or dimension.
        """
        key = f"{kind}:{n}:{points}:{method}"
        body = self._state.get_from_cache(key)
        if body is None:
            body = standard_body(kind, n, points=points, rng=self.rng.child(n), method=method)
            self._state.add_to_cache(key, body)
        return body

    def load_body(self, path: str | Path) -> Body:
        """
        Body read from a JSON document, cached per path.

        Raises:
            BodyParseError: On an unreadable or invalid document.
        """
        key = f"file:{Path(path).resolve()}"
        body = self._state.get_from_cache(key)
        if body is None:
            body = load_body(path)
            self._state.add_to_cache(key, body)
        return body

    async def evaluate(
        self,
        spec: MeasureSpec,
        body: Body,
        f: Optional[TestFunction] = None,
        mc: Optional[MonteCarloConfig] = None,
        rng: Optional[RngStream] = None,
    ) -> EvalResult:
        """*coroutine*
        Estimate a flag area measure of ``body`` applied to ``f``.

        Args:
            spec: The measure.
            body: A polytope or an ellipsoid of dimension ``spec.n``.
            f: Test function on F(n, p+1) (default: the constant 1).
            mc: Sampling budget (default: the client's).
            rng: Random stream (default: the client's).

        Returns:
            EvalResult: Estimate, standard error, samples per face or in total, seed.

        Raises:
            InvalidArgument: Dimension mismatch or a test function of the wrong dimension.
        """
        rng = rng or self.rng
        plan = plan_evaluation(spec, body, f or Const(), mc or self._state.mc, rng)
        loop = asyncio.get_running_loop()
        results = await asyncio.gather(
            *(loop.run_in_executor(self._state.executor, job) for job in plan.jobs)
        )
        result = to_result(spec, body, plan.finish(results), rng)
        _log.info(f"{spec.label} on {body.label}: {result.estimate:.6g} +- {result.std_error:.2g}")
        return result

    async def evaluate_many(
        self,
        specs: Sequence[MeasureSpec],
        body: Body,
        f: Optional[TestFunction] = None,
        mc: Optional[MonteCarloConfig] = None,
    ) -> List[EvalResult]:
        """*coroutine*
        Several measures of one body; measure j draws from ``rng.child(j)``.
        """
        pending = [
            self.evaluate(spec, body, f, mc, self.rng.child(j)) for j, spec in enumerate(specs)
        ]
        return list(await asyncio.gather(*pending))

    async def verify(
        self,
        suite: str = "default",
        n_max: int = 4,
        samples: int = 20_000,
        checks: Optional[Sequence[Check]] = None,
    ) -> VerificationReport:
        """*coroutine*
        Run a verification suite, one check per worker.

        Args:
            suite: Suite name, `"default"` or `"quick"`.
            n_max: Largest ambient dimension the suite visits.
            samples: Base sample budget of each check.
            checks: Explicit zero-argument checks replacing the suite's.

        Returns:
            VerificationReport: Reports in suite order.

        Raises:
            InvalidArgument: Unknown suite name.
        """
        if checks is None:
            checks = suite_checks(suite, n_max, samples, self.rng.seed)
        checks = list(checks)
        _log.info(f"Running {len(checks)} checks on {self.threads} thread(s)")
        loop = asyncio.get_running_loop()
        reports: List[CheckReport] = await asyncio.gather(
            *(loop.run_in_executor(self._state.executor, check) for check in checks)
        )
        return VerificationReport(suite=suite, reports=list(reports))
