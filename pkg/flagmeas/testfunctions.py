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

import json
import logging
from abc import abstractmethod
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

import numpy as np
import pydantic
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from .constants import SYMMETRY_TOL, UNIT_TOL
from .exceptions import InvalidArgument, TestFunctionParseError

__all__ = (
    "Const",
    "DirPoly",
    "ProjTrace",
    "Product",
    "Sum",
    "TestFunction",
    "parse_test_function",
)

_log = logging.getLogger(__name__)


class _Node(BaseModel):
    """Common interface of test-function expression nodes."""

    model_config = ConfigDict(frozen=True)

    @abstractmethod
    def evaluate(self, directions: np.ndarray, frames: Optional[np.ndarray] = None) -> np.ndarray:
        """Values at stacked flags: directions (N, n) and plane frames (N, n, p+1)."""

    @property
    @abstractmethod
    def depends_on_plane(self) -> bool: ...

    @abstractmethod
    def transform(self, g: np.ndarray) -> "TestFunction":
        """f composed with g^-1, so that integrals over gK of the result match those over K."""

    @abstractmethod
    def check_dim(self, n: int) -> None: ...

    def __call__(self, directions: np.ndarray, frames: Optional[np.ndarray] = None) -> np.ndarray:
        return self.evaluate(directions, frames)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class Const(_Node):
    type: Literal["const"] = "const"
    c: float = 1.0

    def evaluate(self, directions, frames=None):
        return np.full(len(directions), self.c)

    @property
    def depends_on_plane(self) -> bool:
        return False

    def transform(self, g):
        return self

    def check_dim(self, n):
        return None


class DirPoly(_Node):
    """<v, u>^d"""

    type: Literal["dir_poly"] = "dir_poly"
    u: List[float]
    d: int = Field(ge=0)

    @field_validator("u")
    @classmethod
    def check_unit(cls, u: List[float]) -> List[float]:
        if abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
            raise InvalidArgument("dir_poly needs a unit vector u", "u", u)
        return u

    def evaluate(self, directions, frames=None):
        return (np.asarray(directions) @ np.asarray(self.u)) ** self.d

    @property
    def depends_on_plane(self) -> bool:
        return False

    def transform(self, g):
        return DirPoly(u=(np.asarray(g) @ np.asarray(self.u)).tolist(), d=self.d)

    def check_dim(self, n):
        if len(self.u) != n:
            raise InvalidArgument("dir_poly vector has the wrong dimension", "u", len(self.u))


class ProjTrace(_Node):
    """tr(Pi_E A)^e"""

    type: Literal["proj_trace"] = "proj_trace"
    A: List[List[float]]
    e: int = Field(ge=0)

    @field_validator("A")
    @classmethod
    def check_symmetric(cls, A: List[List[float]]) -> List[List[float]]:
        matrix = np.asarray(A, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidArgument("proj_trace needs a square matrix", "A", matrix.shape)
        if not np.allclose(matrix, matrix.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise InvalidArgument("proj_trace needs a symmetric matrix", "A")
        return A

    def evaluate(self, directions, frames=None):
        if frames is None:
            raise InvalidArgument("proj_trace needs the flag's plane", "frames")
        trace = np.einsum("nij,ik,nkj->n", frames, np.asarray(self.A), frames)
        return trace**self.e

    @property
    def depends_on_plane(self) -> bool:
        return self.e > 0

    def transform(self, g):
        g = np.asarray(g)
        return ProjTrace(A=(g @ np.asarray(self.A) @ g.T).tolist(), e=self.e)

    def check_dim(self, n):
        if len(self.A) != n:
            raise InvalidArgument("proj_trace matrix has the wrong dimension", "A", len(self.A))


class Product(_Node):
    type: Literal["product"] = "product"
    factors: List["TestFunction"]

    def evaluate(self, directions, frames=None):
        values = np.ones(len(directions))
        for factor in self.factors:
            values = values * factor.evaluate(directions, frames)
        return values

    @property
    def depends_on_plane(self) -> bool:
        return any(factor.depends_on_plane for factor in self.factors)

    def transform(self, g):
        return Product(factors=[factor.transform(g) for factor in self.factors])

    def check_dim(self, n):
        for factor in self.factors:
            factor.check_dim(n)


class Sum(_Node):
    type: Literal["sum"] = "sum"
    terms: List["TestFunction"]

    def evaluate(self, directions, frames=None):
        values = np.zeros(len(directions))
        for term in self.terms:
            values = values + term.evaluate(directions, frames)
        return values

    @property
    def depends_on_plane(self) -> bool:
        return any(term.depends_on_plane for term in self.terms)

    def transform(self, g):
        return Sum(terms=[term.transform(g) for term in self.terms])

    def check_dim(self, n):
        for term in self.terms:
            term.check_dim(n)


TestFunction = Annotated[
    Union[Const, DirPoly, ProjTrace, Product, Sum], Field(discriminator="type")
]

Product.model_rebuild()
Sum.model_rebuild()

_adapter: TypeAdapter = TypeAdapter(TestFunction)


def parse_test_function(raw: Union[str, Path, Dict[str, Any]]) -> "TestFunction":
    """
    Test function from a JSON document, a JSON string, a file path, or the shorthand ``const``.

    Raises:
        TestFunctionParseError: Unreadable input or a document outside the schema.
    """
    path = None
    data: Any = raw
    if isinstance(raw, Path) or (isinstance(raw, str) and Path(raw).is_file()):
        path = str(raw)
        try:
            data = json.loads(Path(raw).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise TestFunctionParseError(f"Reading test function failed: {e}", path=path) from e
    elif isinstance(raw, str):
        if raw.strip() == "const":
            return Const()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as e:
            raise TestFunctionParseError(f"Malformed JSON: {e}", raw_data=raw) from e

    try:
        return _adapter.validate_python(data)
    except pydantic.ValidationError as e:
        raise TestFunctionParseError(f"Parsing failed: {e}", raw_data=data, path=path) from e
