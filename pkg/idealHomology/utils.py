"""
Tools for ideal-theoretic homology in finite additive categories. Utils functions.
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

import hashlib
import logging
from datetime import timedelta
from pathlib import Path
from timeit import default_timer as timer

lgr = logging.getLogger(__name__)


def save_report(text: str, out: str) -> Path:
    filepath = Path(out)
    if not filepath.parent.exists():
        filepath.parent.mkdir(parents=True)
    with open(filepath, "w") as outfile:
        outfile.write(text)
    lgr.debug(f"save_report - Saved {len(text)} chars to {filepath}")
    return filepath


def inputs_digest(*texts: str) -> str:
    """SHA-256 over the given input texts, each prefixed with its length."""
    h = hashlib.sha256()
    for text in texts:
        data = text.encode()
        h.update(str(len(data)).encode() + b":")
        h.update(data)
    return h.hexdigest()


def elapsed(start: float) -> timedelta:
    """Time since `start`, a `timeit.default_timer` reading."""
    return timedelta(seconds=timer() - start)
