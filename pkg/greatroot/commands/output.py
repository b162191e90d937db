# greatroot/commands/output.py
"""Emission of command results and mapping of package errors to exit codes."""
import functools
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console

from greatroot.cache import FLOAT_FORMAT, write_frame
from greatroot.models.enums import CAVEAT_MESSAGES, Caveat
from greatroot.schemas.cli import CommandOutput
from greatroot.utils.errors import GreatRootError, ParameterError

logger = logging.getLogger(__name__)

err_console = Console(stderr=True)


def emit_json(command: str, inputs: Dict[str, Any], results: Dict[str, Any], caveats: Optional[List[Caveat]] = None) -> CommandOutput:
    output = CommandOutput(command=command, inputs=inputs, results=results, caveats=list(caveats or []))
    for caveat in output.caveats:
        logger.warning("%s: %s", caveat.value, CAVEAT_MESSAGES[caveat])
    typer.echo(output.model_dump_json(indent=2))
    return output


def emit_frame(frame: pd.DataFrame, out: Optional[Path] = None) -> None:
    """CSV to out, or to standard output when out is None."""
    if out is not None:
        write_frame(frame, out)
        return
    typer.echo(frame.to_csv(index=False, float_format=FLOAT_FORMAT), nl=False)


def _fail(exit_code: int, kind: str, detail: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
    payload = {"error": kind, "detail": detail}
    if diagnostics:
        payload["diagnostics"] = diagnostics
    err_console.print(json.dumps(payload, default=str), markup=False, highlight=False, soft_wrap=True)
    raise typer.Exit(code=exit_code)


def handle_errors(func: Callable) -> Callable:
    """Exit 2 on invalid parameters, 3 on numerical failure, with the detail on stderr."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GreatRootError as e:
            _fail(e.exit_code, type(e).__name__, e.detail, e.diagnostics)
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            _fail(ParameterError.exit_code, "ValidationError", messages)

    return wrapper
