from __future__ import annotations

from typing import Any


class VerificationFailure(RuntimeError):
    """A checked statement was violated; ``instance`` holds a replayable dump."""

    def __init__(self, message: str, instance: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.instance = instance or {}
