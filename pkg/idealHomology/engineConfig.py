"""
Tools for ideal-theoretic homology in finite additive categories. Engine constants.
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

import logging

lgr = logging.getLogger(__name__)


class EngineConstants:
    """Class level defaults, overridable per instance."""

    ENUM_CAP = 4096
    DEFAULT_SEED = 20000
    SAMPLE_SIZE = 500
    MAX_PATH_LENGTH = 16
    MAX_MODULUS = 2**31
    CHECK_INVARIANTS = True
    MORPHISM_CAP = 20000

    def __init__(
        self,
        enum_cap: int | None = None,
        seed: int | None = None,
        sample_size: int | None = None,
        max_path_length: int | None = None,
        check_invariants: bool | None = None,
        morphism_cap: int | None = None,
        quiet: bool = False,
    ) -> None:
        if enum_cap is not None:
            if enum_cap < 1:
                raise ValueError(f"enum_cap must be positive, got {enum_cap}")
            self.ENUM_CAP = enum_cap
        if seed is not None:
            self.DEFAULT_SEED = seed
        if sample_size is not None:
            self.SAMPLE_SIZE = sample_size
        if max_path_length is not None:
            self.MAX_PATH_LENGTH = max_path_length
        if check_invariants is not None:
            self.CHECK_INVARIANTS = check_invariants
        if morphism_cap is not None:
            self.MORPHISM_CAP = morphism_cap
        if not quiet:
            lgr.info(
                f"{self.__class__.__name__} - Using enum cap {self.ENUM_CAP}, "
                f"seed {self.DEFAULT_SEED}, sample size {self.SAMPLE_SIZE}"
            )

    def to_dict(self) -> dict:
        return {
            "enum_cap": self.ENUM_CAP,
            "seed": self.DEFAULT_SEED,
            "sample_size": self.SAMPLE_SIZE,
            "max_path_length": self.MAX_PATH_LENGTH,
            "check_invariants": self.CHECK_INVARIANTS,
            "morphism_cap": self.MORPHISM_CAP,
        }


DEFAULT_CONFIG = EngineConstants(quiet=True)
