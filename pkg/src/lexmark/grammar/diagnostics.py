from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    source_name: str = ""
    line: int = 0
    column: int = 0
    path: str = ""
    expected: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def to_record(self) -> dict:
        """The stable JSON record shape used by the command line."""
        return {
            "file": self.source_name,
            "line": self.line,
            "column": self.column,
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "expected": self.expected,
        }

    def format(self) -> str:
        where = f"{self.source_name or '<input>'}:{self.line}:{self.column}"
        text = f"{where}: {self.severity}: {self.message} [{self.code}]"
        if self.path:
            text += f" at {self.path}"
        if self.expected:
            text += f"; expected {self.expected}"
        return text
