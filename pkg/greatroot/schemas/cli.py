# greatroot/schemas/cli.py
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field

from greatroot.config import settings
from greatroot.models.enums import Caveat


class CommandOutput(BaseModel):
    """JSON envelope of every scalar-answer command: the parsed inputs are echoed back."""

    model_config = ConfigDict(frozen=True)

    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    caveats: List[Caveat] = []
