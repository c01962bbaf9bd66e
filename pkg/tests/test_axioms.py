"""
Tools for ideal-theoretic homology in finite additive categories. Tests for the axiom
checks and the suite runner.
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

import pytest

from idealHomology.axioms import (
    AxiomReport,
    Status,
    SuiteReport,
    all_morphisms,
    check_closedness,
    check_complex_conditions,
    check_composite_ideals,
    check_exact_rows,
    check_homology_functoriality,
    check_K,
    check_mono_epi,
    check_N,
    check_N_op,
    run_suite,
    run_suite_async,
    sample_ideals,
)
from idealHomology.engineConfig import EngineConstants
from idealHomology.errors import EnumerationCapExceeded


def test_normality_holds_in_module_models(module_z4, matrix_f2, config):
    for cat in (module_z4, matrix_f2):
        assert check_N(cat, config).status == Status.HOLDS
        assert check_N_op(cat, config).status == Status.HOLDS


def test_normality_fails_in_free_xab(free_xab, config):
    report = check_N(free_xab, config)
    assert report.status == Status.FAILS
    assert "j: a->b" in report.witnesses
    assert check_N_op(free_xab, config).status == Status.FAILS


def test_kernels_and_cokernels_exist(module_z4, config):
    report = check_K(module_z4, config)
    assert report.checked == 10
    assert report.status == Status.HOLDS


def test_large_categories_fall_back_to_basis(module_z4):
    small = EngineConstants(morphism_cap=5, quiet=True)
    report = check_K(module_z4, small)
    assert report.stats["basis sample"] == 1
    assert report.checked == 4
    with pytest.raises(EnumerationCapExceeded):
        list(all_morphisms(module_z4, small))


@pytest.mark.parametrize("name", ["module_z4", "matrix_f2", "free_xab"])
def test_theorems_hold_everywhere(name, request, config):
    cat = request.getfixturevalue(name)
    sample = sample_ideals(cat, 8, seed=1, config=config)
    for report in (
        check_mono_epi(cat, config),
        check_closedness(cat, sample),
        check_exact_rows(cat, config),
        check_complex_conditions(cat),
    ):
        assert report.status == Status.HOLDS, report.witnesses


def test_sample_is_seeded(module_z4, config):
    first = sample_ideals(module_z4, 6, seed=4, config=config)
    second = sample_ideals(module_z4, 6, seed=4, config=config)
    assert len(first) == 6
    assert [I.components for I in first] == [I.components for I in second]


def test_homology_functoriality(module_z4, config):
    report = check_homology_functoriality(module_z4, 3, config)
    assert report.status == Status.HOLDS
    assert report.checked == 3


def test_empty_report_is_vacuous():
    assert AxiomReport("nothing").status == Status.VACUOUS


def test_suite_report(module_z4, config):
    suite = run_suite(module_z4, config, seed=5)
    assert suite.get("'N").status == Status.HOLDS
    assert suite.get("'K and 'K°").checked == 10
    frame = suite.to_frame()
    assert list(frame.columns) == ["axiom", "status", "checked", "witnesses"]
    assert len(frame) == 9
    assert run_suite(module_z4, config, seed=5).to_dict() == suite.to_dict()


@pytest.mark.parametrize(
    "name, pairs", [("module_z4", 8), ("matrix_f2", 45), ("free_xab", 12)]
)
def test_composite_ideals_hold_on_basis_pairs(name, pairs, request):
    report = check_composite_ideals(request.getfixturevalue(name))
    assert report.fatal
    assert report.checked == pairs
    assert report.status == Status.HOLDS, report.witnesses


def test_complex_conditions_cover_every_composable_pair(module_z4):
    report = check_complex_conditions(module_z4)
    assert report.fatal
    assert report.checked == 52
    assert report.stats["zero composites"] == 36
    assert "basis sample" not in report.stats


def test_complex_conditions_fall_back_to_basis_pairs(module_z4):
    report = check_complex_conditions(module_z4, EngineConstants(morphism_cap=40, quiet=True))
    assert report.stats["basis sample"] == 1
    assert report.checked == 8
    assert report.status == Status.HOLDS


@pytest.mark.parametrize("name", ["module_z4", "matrix_f2", "free_xab"])
def test_closedness_over_five_hundred_sampled_ideals(name, request, config):
    cat = request.getfixturevalue(name)
    report = check_closedness(cat, sample_ideals(cat, 500, seed=17, config=config))
    assert report.checked == 500
    assert report.status == Status.HOLDS, report.witnesses
    assert 2 <= report.stats["distinct ideals"] <= 500


def test_suite_runs_inside_an_event_loop(module_z4, config):
    async def inside() -> SuiteReport:
        return await run_suite_async(module_z4, config, seed=5)

    suite = asyncio.run(inside())
    assert suite.to_dict() == run_suite(module_z4, config, seed=5).to_dict()
