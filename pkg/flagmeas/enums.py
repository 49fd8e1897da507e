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

from enum import Enum


class Variant(Enum):
    SIGMA = "sigma"
    EXCEPTIONAL = "exceptional"

    def __str__(self) -> str:
        return self.value


class BodyKind(Enum):
    SIMPLEX = "simplex"
    CUBE = "cube"
    CROSS = "cross"
    RANDOM_HULL = "random-hull"
    BALL = "ball"
    ELLIPSOID = "ellipsoid"

    @property
    def smooth(self) -> bool:
        return self in (BodyKind.BALL, BodyKind.ELLIPSOID)

    def __str__(self) -> str:
        return self.value


class FacetMethod(Enum):
    BRUTE_FORCE = "brute-force"
    QHULL = "qhull"

    def __str__(self) -> str:
        return self.value


class SmoothForm(Enum):
    AUTO = "auto"
    GENERAL = "general"
    SIMPLIFIED = "simplified"

    def __str__(self) -> str:
        return self.value


class EquivarianceMode(Enum):
    ROTATE = "rotate"
    REFLECT = "reflect"
    TRANSLATE = "translate"
    SCALE = "scale"

    def __str__(self) -> str:
        return self.value


class ToleranceRule(Enum):
    ABSOLUTE = "absolute"
    STD_ERROR = "std_error"
    RELATIVE = "relative"
    EXACT = "exact"
    RANK = "rank"

    def __str__(self) -> str:
        return self.value


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"

    def __str__(self) -> str:
        return self.value
