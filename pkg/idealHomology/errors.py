"""
Tools for ideal-theoretic homology in finite additive categories. Error hierarchy.
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


Three families of failures are distinguished. `InputError` means the caller handed us
something malformed or mismatched, `EnumerationCapExceeded` means an exhaustive
search was refused, and `InvariantViolation` means the engine caught a mathematical
post-condition failing. The CLI maps them to exit codes 2, 3 and 4.
"""


class IdealHomologyError(Exception):
    """Base class of every error raised by the package."""

    exit_code = 1


class InputError(IdealHomologyError):
    exit_code = 2


class LinalgInputError(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class ModulusTooLarge(InputError):
    pass


class UnknownObject(InputError):
    pass


class ComposabilityError(InputError):
    pass


class SideMismatch(InputError):
    pass


class CategoryMismatch(InputError):
    pass


class EmptyClassError(InputError):
    pass


class BuilderError(InputError):
    pass


class BasisNotTerminating(BuilderError):
    pass


class DegreeOutOfRange(InputError):
    pass


class NotShortExact(InputError):
    pass


class NotAComplex(InputError):
    pass


class NotProjective(InputError):
    pass


class NotAModuleModel(InputError):
    pass


class MissingDirectSum(InputError):
    pass


class GeneratorMissing(InputError):
    pass


class DocumentError(InputError):
    """Malformed document. `line` is 1-based, 0 when the whole document is at fault."""

    def __init__(self, message: str, line: int = 0, source: str = "") -> None:
        self.line = line
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {message}" if line else message)


class CategoryValidationError(InputError):
    def __init__(self, message: str, violations: list | None = None) -> None:
        self.violations = violations or []
        super().__init__(message)


class EnumerationCapExceeded(IdealHomologyError):
    exit_code = 3

    def __init__(self, order: int, cap: int, what: str = "") -> None:
        self.order = order
        self.cap = cap
        super().__init__(
            f"refusing to enumerate {what or 'group'} of order {order} (cap {cap})"
        )


class InvariantViolation(IdealHomologyError):
    exit_code = 4


class WellDefinednessViolation(InvariantViolation):
    pass


class ContainmentViolation(InvariantViolation):
    pass
