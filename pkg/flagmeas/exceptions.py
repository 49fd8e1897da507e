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

from typing import Any, Optional


class FlagMeasureException(Exception):
    """Base exception class for all flagmeas errors"""

    def __init__(self, message: str, **kwargs: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = {k: v for k, v in kwargs.items() if v is not None}

    def __str__(self) -> str:
        if self.details:
            details_str = ", ".join(f"{k}={v!r}" for k, v in self.details.items())
            return f"{self.message} ({details_str})"
        return self.message


class InvalidArgument(FlagMeasureException):
    """Raised when an operation receives arguments outside its domain"""

    def __init__(
        self,
        message: str,
        parameter: Optional[str] = None,
        value: Optional[Any] = None,
    ) -> None:
        super().__init__(message, parameter=parameter, value=value)
        self.parameter = parameter
        self.value = value


class SpecError(InvalidArgument):
    """Raised when (n, k, p, i) does not name a flag area measure"""

    def __init__(
        self,
        message: str = "Invalid measure specification",
        parameter: Optional[str] = None,
        value: Optional[Any] = None,
        spec: Optional[str] = None,
    ) -> None:
        super().__init__(message, parameter=parameter, value=value)
        self.spec = spec
        if spec:
            self.details["spec"] = spec


class CapacityError(FlagMeasureException):
    """Raised when an input exceeds a documented size limit"""

    def __init__(
        self,
        message: str,
        limit: Optional[int] = None,
        size: Optional[int] = None,
    ) -> None:
        super().__init__(message, limit=limit, size=size)
        self.limit = limit
        self.size = size


class ConsistencyError(FlagMeasureException):
    """Raised when a computed quantity violates an invariant it must satisfy"""

    def __init__(
        self,
        message: str,
        observed: Optional[Any] = None,
        expected: Optional[Any] = None,
    ) -> None:
        super().__init__(message, observed=observed, expected=expected)
        self.observed = observed
        self.expected = expected


class ParseError(FlagMeasureException):
    """Base exception class for parse errors"""

    def __init__(
        self,
        message: str,
        raw_data: Optional[Any] = None,
        path: Optional[str] = None,
    ) -> None:
        super().__init__(message, path=path)
        self.raw_data = raw_data
        self.path = path


class BodyParseError(ParseError):
    """Raised when a body JSON document can't be parsed"""

    def __init__(
        self,
        message: str = "Parsing body failed",
        raw_data: Optional[Any] = None,
        path: Optional[str] = None,
    ) -> None:
        super().__init__(message, raw_data=raw_data, path=path)


class TestFunctionParseError(ParseError):
    """Raised when a test function JSON document can't be parsed"""

    __test__ = False

    def __init__(
        self,
        message: str = "Parsing test function failed",
        raw_data: Optional[Any] = None,
        path: Optional[str] = None,
    ) -> None:
        super().__init__(message, raw_data=raw_data, path=path)


class CheckFailed(FlagMeasureException):
    """Raised when one or more verification checks did not pass"""

    def __init__(
        self,
        message: str = "Verification failed",
        check_ids: Optional[list[str]] = None,
    ) -> None:
        super().__init__(message, check_ids=check_ids)
        self.check_ids = check_ids or []
