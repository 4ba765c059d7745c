"""Run reports shared by every CLI command."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    """Outcome of one CLI invocation.

    ``timing`` stays ``None`` unless explicitly requested so that repeated
    runs serialise to identical bytes.
    """

    command: str
    input_digest: str
    result: dict[str, Any] = field(default_factory=dict)
    provenance: dict[str, Any] = field(default_factory=dict)
    exit_status: int = EXIT_YES
    timing: Optional[dict[str, float]] = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"input: {self.input_digest}"]
        lines += _flatten("result", self.result)
        lines += _flatten("provenance", self.provenance)
        if self.timing is not None:
            lines += _flatten("timing", self.timing)
        lines.append(f"exit_status: {self.exit_status}")
        return "\n".join(lines)


def _flatten(prefix: str, value: Any) -> list[str]:
    if isinstance(value, dict):
        if not value:
            return [f"{prefix}: {{}}"]
        out = []
        for key in sorted(value):
            out += _flatten(f"{prefix}.{key}", value[key])
        return out
    return [f"{prefix}: {json.dumps(value, sort_keys=True)}"]
