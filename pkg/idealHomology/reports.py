"""
Tools for ideal-theoretic homology in finite additive categories. Human and machine
readable command reports.
    Copyright (C) 2024 Chris Liatas - cris@liatas.com

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU General Public License for more details.

    You should have received a copy of the GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""

import json
import logging
from dataclasses import dataclass, field

import pandas as pd

from idealHomology.printColors import Pcolors

lgr = logging.getLogger(__name__)


@dataclass
class Section:
    title: str
    frame: pd.DataFrame
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        records = json.loads(self.frame.to_json(orient="records"))
        return {"title": self.title, "rows": records, **self.extra}


@dataclass
class Report:
    command: str
    digest: str
    sections: list[Section] = field(default_factory=list)
    status: str = "ok"
    exit_code: int = 0

    def add(self, title: str, frame: pd.DataFrame, **extra) -> Section:
        section = Section(title, frame, extra)
        self.sections.append(section)
        return section

    def to_dict(self):
        return {
            "command": self.command,
            "inputs digest": self.digest,
            "sections": [s.to_dict() for s in self.sections],
            "status": self.status,
            "exit code": self.exit_code,
        }

    def __repr__(self):
        return f"Report({self.command}: {self.status}, {len(self.sections)} sections)"

    def render_machine(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def render_human(self, color: bool = False) -> str:
        lines = [
            Pcolors.paint(f"$ {self.command}", Pcolors.CBOLD, enabled=color),
            Pcolors.paint(f"inputs {self.digest}", Pcolors.CGREY, enabled=color),
            "",
        ]
        for s in self.sections:
            lines.append(Pcolors.paint(s.title, Pcolors.CBOLD, Pcolors.CURL, enabled=color))
            if s.frame.empty:
                lines.append("(none)")
            else:
                lines.append(s.frame.to_string(index=False))
            for key, value in s.extra.items():
                lines.append(f"{key}: {value}")
            lines.append("")
        lines.append(f"status: {Pcolors.status(self.status, enabled=color)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "human", color: bool = False) -> str:
        return self.render_machine() if fmt == "machine" else self.render_human(color)
