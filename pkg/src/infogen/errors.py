"""Engine error taxonomy.

Every pipeline-facing error carries the stage it arose in and a stable
code, so the CLI and HTTP layers can report machine-readable diagnostics.
"""

from __future__ import annotations


class EngineError(Exception):
    stage = "engine"

    def __init__(self, message: str, code: str = "invalid"):
        super().__init__(message)
        self.code = code

    @property
    def message(self) -> str:
        return str(self)


class ContentError(EngineError):
    stage = "content"


class LayoutError(EngineError):
    stage = "layout"


class VgIndexError(EngineError):
    stage = "vg"


class ComposeError(EngineError):
    stage = "compose"


class DatasetError(EngineError):
    stage = "dataset"

    def __init__(self, message: str, code: str = "invalid", diagnostics=None):
        super().__init__(message, code)
        self.diagnostics = list(diagnostics or [])
