"""
Tools for ideal-theoretic homology in finite additive categories. Axiom suite for
kernel and cokernel ideals, closedness and normality.
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

import asyncio
import logging
import random
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cache
from itertools import product as cartesian
from timeit import default_timer as timer

import pandas as pd

from idealHomology.engineConfig import DEFAULT_CONFIG, EngineConstants
from idealHomology.errors import EnumerationCapExceeded, InvariantViolation
from idealHomology.homology import ComplexConditions, left_homology, make_complex, right_homology
from idealHomology.ideals import (
    Ideal,
    Side,
    coim_ideal,
    coimage_of,
    coker_ideal,
    cokernel_of,
    composite_ideal_check,
    im_ideal,
    image_of,
    is_closed,
    is_epi,
    is_mono,
    ker_ideal,
    kernel_of,
    principal_left,
    principal_right,
    saturate,
    zero_ideal,
)
from idealHomology.linCat import FiniteLinearCategory, Morphism
from idealHomology.utils import elapsed

lgr = logging.getLogger(__name__)


class Status(StrEnum):
    HOLDS = "holds"
    FAILS = "fails"
    VACUOUS = "vacuous"


@dataclass
class AxiomReport:
    axiom: str
    checked: int = 0
    witnesses: list[str] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)
    fatal: bool = False

    @property
    def status(self) -> Status:
        if self.witnesses:
            return Status.FAILS
        return Status.HOLDS if self.checked else Status.VACUOUS

    def fail(self, witness: str) -> None:
        self.witnesses.append(witness)

    def to_dict(self):
        return {
            "axiom": self.axiom,
            "status": str(self.status),
            "checked": self.checked,
            "witnesses": list(self.witnesses),
            "stats": dict(sorted(self.stats.items())),
        }

    def __repr__(self):
        return f"AxiomReport({self.axiom}: {self.status}, checked={self.checked})"


def _total_morphisms(cat: FiniteLinearCategory) -> int:
    return sum(cat.hom_order(a, b) for a, b in cartesian(range(cat.n_objects), repeat=2))


def all_morphisms(
    cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG
) -> Iterator[Morphism]:
    total = _total_morphisms(cat)
    if total > config.MORPHISM_CAP:
        raise EnumerationCapExceeded(total, config.MORPHISM_CAP, f"morphisms of {cat.name}")
    for a, b in cartesian(range(cat.n_objects), repeat=2):
        yield from cat.morphisms(a, b)


def basis_morphisms(cat: FiniteLinearCategory) -> Iterator[Morphism]:
    for a, b in cartesian(range(cat.n_objects), repeat=2):
        yield from cat.basis(a, b)


def _morphisms_or_basis(
    cat: FiniteLinearCategory, config: EngineConstants, report: AxiomReport
) -> Iterator[Morphism]:
    if _total_morphisms(cat) > config.MORPHISM_CAP:
        report.stats["basis sample"] = 1
        return basis_morphisms(cat)
    return all_morphisms(cat, config)


def _ideal_size(I: Ideal) -> int:
    return sum(sub.order for sub in I.components.values())


def check_K(cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG) -> AxiomReport:
    """Every morphism has a kernel and a cokernel ideal."""
    report = AxiomReport("'K and 'K°")
    ker_sizes = coker_sizes = 0
    for f in _morphisms_or_basis(cat, config, report):
        ker_sizes += _ideal_size(kernel_of(cat, f))
        coker_sizes += _ideal_size(cokernel_of(cat, f))
        report.checked += 1
    report.stats.update({"kernel elements": ker_sizes, "cokernel elements": coker_sizes})
    return report


def _left_cancellable(cat: FiniteLinearCategory, f: Morphism) -> bool:
    for x in range(cat.n_objects):
        for phi in cat.morphisms(x, f.source):
            if not phi.is_zero() and cat.compose(f, phi).is_zero():
                return False
    return True


def _right_cancellable(cat: FiniteLinearCategory, f: Morphism) -> bool:
    for z in range(cat.n_objects):
        for psi in cat.morphisms(f.target, z):
            if not psi.is_zero() and cat.compose(psi, f).is_zero():
                return False
    return True


def check_mono_epi(
    cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG
) -> AxiomReport:
    """Ker(f) = 0 against left cancellation and Coker(f) = 0 against right
    cancellation, for every morphism."""
    report = AxiomReport("mono/epi", fatal=True)
    monos = epis = 0
    for f in all_morphisms(cat, config):
        mono, epi = is_mono(cat, f), is_epi(cat, f)
        if mono != _left_cancellable(cat, f):
            report.fail(f"mono: Ker says {mono} for {cat.describe(f)}")
        if epi != _right_cancellable(cat, f):
            report.fail(f"epi: Coker says {epi} for {cat.describe(f)}")
        monos += mono
        epis += epi
        report.checked += 1
    report.stats.update({"monos": monos, "epis": epis})
    return report


CLOSED_OPERATIONS = (
    ("Ker", ker_ideal),
    ("Coker", coker_ideal),
    ("Im", im_ideal),
    ("Coim", coim_ideal),
)


def check_closedness(cat: FiniteLinearCategory, sample: Sequence[Ideal]) -> AxiomReport:
    """Kernels, cokernels, images and coimages of the sampled ideals are closed."""
    report = AxiomReport("closedness", fatal=True)
    seen: dict[tuple[Ideal, frozenset[int]], list[str]] = {}
    for I in sample:
        key = (I, I.anchor)
        if key not in seen:
            seen[key] = [name for name, op in CLOSED_OPERATIONS if not is_closed(op(I))]
        for name in seen[key]:
            report.fail(f"{name}({I.label}) is not closed")
        report.checked += 1
    report.stats["distinct ideals"] = len(seen)
    return report


def _normality(
    cat: FiniteLinearCategory,
    config: EngineConstants,
    name: str,
    selects: Callable[[FiniteLinearCategory, Morphism], bool],
    principal: Callable[[FiniteLinearCategory, Morphism], Ideal],
    closure: Callable[[FiniteLinearCategory, Morphism], Ideal],
) -> AxiomReport:
    report = AxiomReport(name)
    for f in all_morphisms(cat, config):
        if f.source == f.target and f == cat.identity(f.source):
            continue
        if not selects(cat, f):
            continue
        report.checked += 1
        if principal(cat, f) != closure(cat, f):
            report.fail(cat.describe(f))
    return report


def check_N(cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG) -> AxiomReport:
    """Every non-identity monomorphism f generates its image: |f> = Im(f)."""
    return _normality(cat, config, "'N", is_mono, principal_right, image_of)


def check_N_op(
    cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG
) -> AxiomReport:
    """Every non-identity epimorphism g generates its coimage: <g| = Coim(g)."""
    return _normality(cat, config, "'N°", is_epi, principal_left, coimage_of)


def check_exact_rows(
    cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG
) -> AxiomReport:
    """Ker(Coim(f)) = Im(Ker(f)) and Ker(Coker(f)) = Im(Im(f))."""
    report = AxiomReport("exact rows", fatal=True)
    for f in _morphisms_or_basis(cat, config, report):
        if ker_ideal(coimage_of(cat, f)) != im_ideal(kernel_of(cat, f)):
            report.fail(f"Ker(Coim) != Im(Ker) at {cat.describe(f)}")
        if ker_ideal(cokernel_of(cat, f)) != im_ideal(image_of(cat, f)):
            report.fail(f"Ker(Coker) != Im(Im) at {cat.describe(f)}")
        report.checked += 1
    return report


def _random_morphism(cat: FiniteLinearCategory, rng: random.Random) -> Morphism | None:
    pairs = [
        (a, b) for a, b in cartesian(range(cat.n_objects), repeat=2) if cat.hom_order(a, b) > 1
    ]
    if not pairs:
        return None
    a, b = rng.choice(pairs)
    orders = cat.hom(a, b).orders
    return cat.morphism(a, b, [rng.randrange(d) for d in orders])


def sample_ideals(
    cat: FiniteLinearCategory,
    size: int | None = None,
    seed: int | None = None,
    config: EngineConstants = DEFAULT_CONFIG,
) -> list[Ideal]:
    """Seeded sample: the zero ideals, principal ideals of random morphisms and
    saturations of random two-generator families."""
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    size = config.SAMPLE_SIZE if size is None else size
    sample: list[Ideal] = [
        zero_ideal(cat, Side.RIGHT, [0]),
        zero_ideal(cat, Side.LEFT, [0]),
    ]
    while len(sample) < size:
        f = _random_morphism(cat, rng)
        if f is None:
            break
        side = rng.choice((Side.LEFT, Side.RIGHT))
        if rng.random() < 0.5:
            principal = principal_left if side == Side.LEFT else principal_right
            sample.append(principal(cat, f))
        else:
            g = _random_morphism(cat, rng)
            sample.append(saturate(cat, side, [f, g], label=f"<{len(sample)}>"))
    return sample[:size]


def check_composite_ideals(cat: FiniteLinearCategory) -> AxiomReport:
    """<g|f> = <g|.|f> = A(g o f)A on every composable pair of basis morphisms."""
    report = AxiomReport("composite ideal", fatal=True)
    meets = 0
    for f in basis_morphisms(cat):
        for c in range(cat.n_objects):
            for g in cat.basis(f.target, c):
                result = composite_ideal_check(cat, f, g)
                report.checked += 1
                meets += result.meet_agrees
                for witness in result.witnesses:
                    report.fail(f"{cat.describe(g)} o {cat.describe(f)}: {witness}")
    report.stats["meet agrees"] = meets
    return report


def _composable_pairs(
    cat: FiniteLinearCategory, config: EngineConstants, report: AxiomReport
) -> list[tuple[Morphism, Morphism]]:
    """Every composable (f, g), or the basis pairs once their count passes the cap."""
    n = cat.n_objects
    into = [sum(cat.hom_order(a, b) for a in range(n)) for b in range(n)]
    out = [sum(cat.hom_order(b, c) for c in range(n)) for b in range(n)]
    if sum(i * o for i, o in zip(into, out)) > config.MORPHISM_CAP:
        report.stats["basis sample"] = 1
        return [
            (f, g)
            for f in basis_morphisms(cat)
            for c in range(n)
            for g in cat.basis(f.target, c)
        ]
    morphisms = list(all_morphisms(cat, config))
    return [(f, g) for f in morphisms for g in morphisms if g.source == f.target]


def check_complex_conditions(
    cat: FiniteLinearCategory, config: EngineConstants = DEFAULT_CONFIG
) -> AxiomReport:
    """g o f = 0, Im(f) <= Ker(g) and Coim(g) <= Coker(f) agree on composable pairs."""
    report = AxiomReport("complex conditions", fatal=True)

    @cache
    def ideals(f: Morphism) -> tuple[Ideal, Ideal, Ideal, Ideal]:
        return image_of(cat, f), kernel_of(cat, f), coimage_of(cat, f), cokernel_of(cat, f)

    composites = 0
    for f, g in _composable_pairs(cat, config, report):
        im_f, _, _, coker_f = ideals(f)
        _, ker_g, coim_g, _ = ideals(g)
        cond = ComplexConditions(
            cat.compose(g, f).is_zero(), im_f.is_subideal(ker_g), coim_g.is_subideal(coker_f)
        )
        report.checked += 1
        composites += cond.composite_zero
        if not cond.agree:
            report.fail(f"{cat.describe(g)} o {cat.describe(f)}: {cond.to_dict()}")
    report.stats["zero composites"] = composites
    return report


def check_homology_functoriality(
    cat: FiniteLinearCategory, seed: int, config: EngineConstants = DEFAULT_CONFIG
) -> AxiomReport:
    """Right and left homology of seeded three-term complexes act functorially."""
    report = AxiomReport("homology functoriality", fatal=True)
    rng = random.Random(seed)
    pairs = [
        (f, g)
        for f in basis_morphisms(cat)
        for c in range(cat.n_objects)
        for g in cat.basis(f.target, c)
        if cat.compose(g, f).is_zero()
    ]
    for f, g in rng.sample(pairs, min(len(pairs), max(1, config.SAMPLE_SIZE // 50))):
        C = make_complex(
            cat, {2: f.source, 1: f.target, 0: g.target}, {2: f.coords, 1: g.coords}, "C"
        )
        for n in C.degrees:
            for fam in (right_homology(C, n), left_homology(C, n)):
                for problem in fam.family.check_functoriality():
                    report.fail(f"{fam.family.label} on {C!r}: {problem}")
            report.checked += 1
    return report


@dataclass
class SuiteReport:
    category: str
    seed: int
    reports: list[AxiomReport]

    def to_dict(self):
        return {
            "category": self.category,
            "seed": self.seed,
            "axioms": [r.to_dict() for r in self.reports],
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "axiom": r.axiom,
                "status": str(r.status),
                "checked": r.checked,
                "witnesses": "; ".join(r.witnesses),
            }
            for r in self.reports
        ]
        return pd.DataFrame(rows, columns=["axiom", "status", "checked", "witnesses"])

    def get(self, axiom: str) -> AxiomReport:
        return next(r for r in self.reports if r.axiom == axiom)


async def _run_checks(jobs: list[Callable[[], AxiomReport]]) -> list[AxiomReport]:
    tasks = [asyncio.create_task(asyncio.to_thread(job)) for job in jobs]
    return list(await asyncio.gather(*tasks))


async def run_suite_async(
    cat: FiniteLinearCategory,
    config: EngineConstants = DEFAULT_CONFIG,
    seed: int | None = None,
) -> SuiteReport:
    """All axiom checks plus the ideal and homology batteries, each check in a worker
    thread. Failures of checks that are identities of the theory raise
    InvariantViolation."""
    seed = config.DEFAULT_SEED if seed is None else seed
    start = timer()
    sample = sample_ideals(cat, config.SAMPLE_SIZE, seed, config)
    jobs = [
        lambda: check_K(cat, config),
        lambda: check_mono_epi(cat, config),
        lambda: check_closedness(cat, sample),
        lambda: check_N(cat, config),
        lambda: check_N_op(cat, config),
        lambda: check_exact_rows(cat, config),
        lambda: check_composite_ideals(cat),
        lambda: check_complex_conditions(cat, config),
        lambda: check_homology_functoriality(cat, seed, config),
    ]
    reports = await _run_checks(jobs)
    lgr.info(f"run_suite - {cat.name} ({len(sample)} sampled ideals) took: {elapsed(start)}")
    for r in reports:
        if r.fatal and r.witnesses:
            raise InvariantViolation(f"{r.axiom} failed on {cat.name}: {r.witnesses[0]}")
    return SuiteReport(cat.name, seed, reports)


def run_suite(
    cat: FiniteLinearCategory,
    config: EngineConstants = DEFAULT_CONFIG,
    seed: int | None = None,
) -> SuiteReport:
    """Blocking form of run_suite_async. It starts its own event loop, so code already
    running inside one awaits run_suite_async instead."""
    return asyncio.run(run_suite_async(cat, config, seed))
