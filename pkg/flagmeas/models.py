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

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constants import DEFAULT_BLOCK_SIZE, DEFAULT_SAMPLES, DEFAULT_SEED, INCIDENCE_TOL
from .enums import OutputFormat, ToleranceRule, Variant
from .exceptions import CheckFailed, SpecError


class MeasureSpec(BaseModel):
    """Identifies one flag area measure: S_k^{(p),i} or the exceptional S~."""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    p: int
    variant: Variant = Variant.SIGMA
    i: Optional[int] = None

    @model_validator(mode="after")
    def check_ranges(self) -> "MeasureSpec":
        label = self.label
        if self.n < 1:
            raise SpecError("Ambient dimension must be positive", "n", self.n, spec=label)
        if not 0 <= self.k <= self.n - 1:
            raise SpecError("Degree k must lie in 0..n-1", "k", self.k, spec=label)
        if not 0 <= self.p <= self.n - 1:
            raise SpecError("Flag parameter p must lie in 0..n-1", "p", self.p, spec=label)

        if self.variant is Variant.EXCEPTIONAL:
            if self.n % 2 == 0 or self.n < 3:
                raise SpecError("Exceptional measure needs odd n >= 3", "n", self.n, spec=label)
            half = (self.n - 1) // 2
            if self.k != half or self.p != half:
                raise SpecError(
                    "Exceptional measure needs p = k = (n-1)/2", "k", self.k, spec=label
                )
            if self.i is not None:
                raise SpecError("Exceptional measure takes no index i", "i", self.i, spec=label)
        else:
            if self.i is None:
                raise SpecError("Sigma variant needs an index i", "i", None, spec=label)
            if not 0 <= self.i <= self.m:
                raise SpecError("Index i must lie in 0..m", "i", self.i, spec=label)
        return self

    @classmethod
    def sigma(cls, n: int, k: int, p: int, i: int) -> "MeasureSpec":
        return cls(n=n, k=k, p=p, i=i)

    @classmethod
    def exceptional(cls, n: int) -> "MeasureSpec":
        half = (n - 1) // 2
        return cls(n=n, k=half, p=half, variant=Variant.EXCEPTIONAL)

    @property
    def m(self) -> int:
        """Number of Jordan angles in W = v^perp, min{k, n-k-1, p, n-p-1}."""
        return max(0, min(self.k, self.n - self.k - 1, self.p, self.n - self.p - 1))

    @property
    def is_exceptional(self) -> bool:
        return self.variant is Variant.EXCEPTIONAL

    @property
    def label(self) -> str:
        if self.variant is Variant.EXCEPTIONAL:
            return f"S~_{self.k}^({self.p}) n={self.n}"
        return f"S_{self.k}^({self.p}),{self.i} n={self.n}"


class MonteCarloConfig(BaseModel):
    """Sampling budget shared by all engines."""

    model_config = ConfigDict(frozen=True)

    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)
    block_size: int = Field(default=DEFAULT_BLOCK_SIZE, ge=1)
    incidence_tol: float = Field(default=INCIDENCE_TOL, gt=0)


class EvalResult(BaseModel):
    """Monte Carlo estimate of a measure applied to a test function."""

    spec: MeasureSpec
    body: str
    estimate: float
    std_error: float = Field(ge=0)
    samples: int = Field(ge=0)
    seed: int

    @property
    def exact(self) -> bool:
        return self.samples == 0

    @staticmethod
    def csv_header() -> List[str]:
        return ["n", "k", "p", "variant", "i", "body", "estimate", "std_error", "samples", "seed"]

    def csv_row(self) -> List[Any]:
        return [
            self.spec.n,
            self.spec.k,
            self.spec.p,
            str(self.spec.variant),
            "" if self.spec.i is None else self.spec.i,
            self.body,
            repr(self.estimate),
            repr(self.std_error),
            self.samples,
            self.seed,
        ]


class CheckReport(BaseModel):
    """Outcome of a single verification check."""

    check_id: str
    params: Dict[str, Any] = Field(default_factory=dict)
    observed: List[float]
    expected: List[float]
    tolerance_rule: ToleranceRule
    tolerance: float
    passed: bool
    samples: int = 0
    seed: int = DEFAULT_SEED
    runtime_ms: float = 0.0


class VerificationReport(BaseModel):
    """Reports of one suite run, in execution order."""

    suite: str
    reports: List[CheckReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def failures(self) -> List[CheckReport]:
        return [report for report in self.reports if not report.passed]

    def raise_for_failures(self) -> None:
        """
        Raises:
            CheckFailed: At least one check did not pass.
        """
        if self.failures:
            ids = [report.check_id for report in self.failures]
            raise CheckFailed(f"{len(ids)} of {len(self.reports)} checks failed", check_ids=ids)


class PolytopeFile(BaseModel):
    """Polytope JSON document: {"vertices": [[x, ...], ...]}"""

    model_config = ConfigDict(extra="ignore")

    kind: Literal["polytope"] = "polytope"
    vertices: List[List[float]]


class EllipsoidFile(BaseModel):
    """Ellipsoid JSON document: {"shape": [[...]], "center": [...]}"""

    model_config = ConfigDict(extra="ignore")

    kind: Literal["ellipsoid"] = "ellipsoid"
    shape: List[List[float]]
    center: Optional[List[float]] = None


class CliConfig(BaseModel):
    """Validated command line invocation"""

    command: Literal["constants", "bodies", "eval", "verify"]
    n: Optional[int] = None
    k: Optional[int] = None
    p: Optional[int] = None
    i: Optional[int] = None
    exceptional: bool = False
    body: Optional[str] = None
    body_file: Optional[Path] = None
    points: int = 20
    f: Optional[str] = None
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    threads: int = Field(default=1, ge=1)
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON
    suite: str = "default"
    n_max: int = Field(default=4, ge=3)
    verbose: int = 0

    def spec(self) -> MeasureSpec:
        if self.n is None or self.k is None or self.p is None:
            raise SpecError("--n, --k and --p are required", "n", self.n)
        if self.exceptional:
            return MeasureSpec(n=self.n, k=self.k, p=self.p, variant=Variant.EXCEPTIONAL)
        return MeasureSpec(n=self.n, k=self.k, p=self.p, i=self.i)
