"""Base exceptions"""

from typing import Any, Dict, Optional


class MsfError(Exception):
    """Base error of the solver, mapped to a process exit status"""

    exit_code = 1

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = {
            key: value for key, value in detail.items() if value is not None
        }

    def to_dict(self) -> dict:
        """Structured representation written to stderr"""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "detail": self.detail,
        }


class ModelDomainError(MsfError):
    """Physical model evaluated outside its domain"""

    exit_code = 1

    def __init__(
        self, message: str, frequency: Optional[float] = None, **detail: Any
    ) -> None:
        super().__init__(message, frequency=frequency, **detail)
        self.frequency = frequency


class ConfigError(MsfError):
    """Invalid run configuration, anchored to a key and a line"""

    exit_code = 2

    def __init__(
        self, message: str, key: Optional[str] = None, line: Optional[int] = None
    ) -> None:
        super().__init__(message, key=key, line=line)
        self.key = key
        self.line = line

    def __str__(self) -> str:
        where = []
        if self.key:
            where.append(f"key '{self.key}'")
        if self.line:
            where.append(f"line {self.line}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message


class SolverError(MsfError):
    """Solver or validation did not reach its goal"""

    exit_code = 3


class BracketError(SolverError):
    """Target frequency is not bracketed by the chemical potential bounds"""

    def __init__(
        self,
        message: str,
        lower_peak: float,
        upper_peak: float,
        f_target: float,
    ) -> None:
        super().__init__(
            message,
            lower_peak_hz=lower_peak,
            upper_peak_hz=upper_peak,
            f_target_hz=f_target,
        )
        self.lower_peak = lower_peak
        self.upper_peak = upper_peak


class ValidationFailure(SolverError):
    """Circuit model and transfer-matrix oracle disagree"""
