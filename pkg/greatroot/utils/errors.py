# greatroot/utils/errors.py
from typing import Any, Dict, Optional


class GreatRootError(Exception):
    """Base error; carries a human-readable detail and the CLI exit code."""

    exit_code: int = 1

    def __init__(self, detail: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


# ================================
# PARAMETER ERRORS (exit code 2)
# ================================

class ParameterError(GreatRootError, ValueError):
    exit_code = 2


class HardEdgeError(ParameterError):
    """alpha = 0 puts the upper turning point at x = 1; no soft-edge scaling exists."""


class DomainError(ParameterError):
    pass


# ================================
# NUMERICAL ERRORS (exit code 3)
# ================================

class NumericalError(GreatRootError, ArithmeticError):
    exit_code = 3


class ConvergenceError(NumericalError):
    pass


class PainleveDivergenceError(NumericalError):
    pass


class FactorizationError(NumericalError):
    pass
