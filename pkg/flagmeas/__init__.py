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

import logging

__version__ = "0.1.0"

from .bodies import (
    Ellipsoid,
    Face,
    Facet,
    Polytope,
    build_polytope,
    load_body,
    standard_body,
    transform_body,
)
from .client import Client
from .enums import (
    BodyKind,
    EquivarianceMode,
    FacetMethod,
    OutputFormat,
    SmoothForm,
    ToleranceRule,
    Variant,
)
from .exceptions import (
    CapacityError,
    CheckFailed,
    ConsistencyError,
    FlagMeasureException,
    InvalidArgument,
    BodyParseError,
    ParseError,
    SpecError,
    TestFunctionParseError,
)
from .grassmann import RngStream, aomoto_expectation, ball_constants, measure_constant
from .measures import (
    classical_area_measure,
    eval_polytope,
    eval_smooth,
    evaluate,
    hinderer_measure,
)
from .models import CheckReport, EvalResult, MeasureSpec, MonteCarloConfig, VerificationReport
from .testfunctions import Const, DirPoly, Product, ProjTrace, Sum, parse_test_function
from .verification import run_suite

__all__ = [
    "Client",
    "MeasureSpec",
    "MonteCarloConfig",
    "EvalResult",
    "CheckReport",
    "VerificationReport",
    "RngStream",
    "Polytope",
    "Ellipsoid",
    "Face",
    "Facet",
    "build_polytope",
    "standard_body",
    "transform_body",
    "load_body",
    "Const",
    "DirPoly",
    "ProjTrace",
    "Product",
    "Sum",
    "parse_test_function",
    "eval_polytope",
    "eval_smooth",
    "evaluate",
    "classical_area_measure",
    "hinderer_measure",
    "measure_constant",
    "aomoto_expectation",
    "ball_constants",
    "run_suite",
    "Variant",
    "BodyKind",
    "FacetMethod",
    "SmoothForm",
    "EquivarianceMode",
    "ToleranceRule",
    "OutputFormat",
    "FlagMeasureException",
    "InvalidArgument",
    "SpecError",
    "CapacityError",
    "ConsistencyError",
    "ParseError",
    "BodyParseError",
    "TestFunctionParseError",
    "CheckFailed",
]
logging.getLogger(__name__).addHandler(logging.NullHandler())
