"""
Tools for ideal-theoretic homology in finite additive categories. Command line front
end.
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

import argparse
import logging
import sys
from collections.abc import Sequence

import pandas as pd

from idealHomology.abelianBridge import (
    classical_homology,
    generator_corollary_check,
    representability_table,
)
from idealHomology.axioms import Status, run_suite
from idealHomology.documents import load_category, load_complexes, parse_morphism, read_source
from idealHomology.engineConfig import EngineConstants
from idealHomology.errors import (
    CategoryValidationError,
    DocumentError,
    IdealHomologyError,
    InputError,
    NotShortExact,
)
from idealHomology.homology import (
    ChainComplex,
    hom_left_sequences,
    homology_frame,
    im_vs_pointwise_image,
)
from idealHomology.ideals import (
    Side,
    coim_ideal,
    coker_ideal,
    cokernel_exists,
    im_ideal,
    is_closed,
    is_principal,
    ker_ideal,
    kernel_exists,
    saturate,
)
from idealHomology.kTheory import bo_counterexample, complexes_category, homotopy_category
from idealHomology.linCat import FiniteLinearCategory
from idealHomology.reports import Report
from idealHomology.utils import inputs_digest, save_report

lgr = logging.getLogger("idealHomology")

PROG = "ideal-homology"
ACTIONS = ("saturate", "ker", "coker", "im", "coim", "closed", "principal", "kernel-exists")
VARIANTS = ("right", "left", "classical", "compare")
DERIVED = {"ker": ker_ideal, "coker": coker_ideal, "im": im_ideal, "coim": coim_ideal}


def _hom_table(cat: FiniteLinearCategory) -> pd.DataFrame:
    return cat.hom_frame().rename_axis("from").reset_index()


def cmd_validate(ref: str, config: EngineConstants, echo: str = "") -> Report:
    text, _ = read_source(ref)
    report = Report(echo or f"{PROG} validate {ref}", inputs_digest(text))
    try:
        cat, _ = load_category(ref, config)
    except CategoryValidationError as exc:
        report.add(
            "violations", pd.DataFrame([v.to_dict() for v in exc.violations])
        )
        report.status = "invalid"
        report.exit_code = 2
        return report
    report.add("objects", pd.DataFrame({"object": list(cat.labels)}), category=cat.name)
    report.add("Hom orders", _hom_table(cat))
    report.status = "valid"
    return report


def cmd_ideal(
    ref: str,
    side: str,
    generators: Sequence[str],
    action: str,
    config: EngineConstants,
    echo: str = "",
) -> Report:
    cat, text = load_category(ref, config)
    report = Report(
        echo or f"{PROG} ideal {ref} --side {side} --action {action}",
        inputs_digest(text, *generators),
    )
    gens = [parse_morphism(cat, g) for g in generators]
    I = saturate(cat, Side(side), gens, label="I")
    report.add("I", I.to_frame(), side=str(I.side))
    if action in DERIVED:
        result = DERIVED[action](I)
        report.add(result.label, result.to_frame(), side=str(result.side))
    elif action == "closed":
        closed = is_closed(I)
        report.add("closedness", pd.DataFrame([{"ideal": "I", "closed": closed}]))
        report.status = "closed" if closed else "not closed"
    elif action == "principal":
        g = is_principal(I, config)
        found = cat.describe(g) if g is not None else None
        report.add("principal generator", pd.DataFrame([{"generator": found}]))
        report.status = "principal" if g is not None else "not principal"
    elif action == "kernel-exists":
        if len(gens) != 1:
            raise InputError("kernel-exists takes exactly one generator")
        f = gens[0]
        k, c = kernel_exists(cat, f, config), cokernel_exists(cat, f, config)
        report.add(
            "classical kernel and cokernel",
            pd.DataFrame(
                [
                    {
                        "morphism": cat.describe(f),
                        "kernel": cat.describe(k) if k is not None else None,
                        "cokernel": cat.describe(c) if c is not None else None,
                    }
                ]
            ),
        )
        report.status = "kernel exists" if k is not None else "no kernel"
    return report


def _add_hom_sequences(report: Report, C: ChainComplex) -> None:
    """Hom(X, -) and Hom(-, X) rows plus Im(f) against {f o phi} when C is short exact."""
    cat = C.cat
    try:
        rows = [hom_left_sequences(C, x).to_dict() for x in range(cat.n_objects)]
    except NotShortExact as e:
        lgr.debug(f"_add_hom_sequences - {e}")
        return
    report.add(f"Hom sequences of {C.name}", pd.DataFrame(rows))
    f = C.d(C.hi)
    images = []
    for x in range(cat.n_objects):
        ideal, pointwise = im_vs_pointwise_image(cat, f, x)
        images.append(
            {"X": cat.label(x), "Im(f)(X)": ideal.order, "f o Hom(X, A)": pointwise.order}
        )
    report.add(f"image of {cat.describe(f)}", pd.DataFrame(images))


def cmd_homology(
    cat_ref: str,
    cx_ref: str,
    variant: str,
    config: EngineConstants,
    name: str | None = None,
    echo: str = "",
) -> Report:
    cat, cat_text = load_category(cat_ref, config)
    _, complexes, cx_text = load_complexes(cx_ref, cat)
    report = Report(
        echo or f"{PROG} homology {cat_ref} {cx_ref} --variant {variant}",
        inputs_digest(cat_text, cx_text),
    )
    chosen = [C for C in complexes if name is None or C.name == name]
    if not chosen:
        raise InputError(f"no complex named {name!r} in {cx_ref}")
    mismatches = 0
    for C in chosen:
        report.add(f"complex {C.name}", C.to_frame())
        if variant in ("right", "left"):
            report.add(f"{variant} homology of {C.name}", homology_frame(C, variant))
            if variant == "right":
                _add_hom_sequences(report, C)
        elif variant == "classical":
            rows = [
                {
                    "degree": n,
                    "invariants": " ".join(map(str, classical_homology(C, n).invariants)) or "0",
                }
                for n in reversed(C.degrees)
            ]
            report.add(f"classical homology of {C.name}", pd.DataFrame(rows))
        else:
            table = pd.DataFrame([r.to_dict() for r in representability_table(C)])
            if not table.empty:
                mismatches += int((~table["match"]).sum())
                for label in dict.fromkeys(table["P"]):
                    report.add(
                        f"{C.name} at P = {label}",
                        table[table["P"] == label].reset_index(drop=True),
                    )
            generator_rows = generator_corollary_check(C)
            mismatches += sum(r.ideal_trivial != r.classical_trivial for r in generator_rows)
            report.add(
                f"exactness of {C.name}",
                pd.DataFrame([r.to_dict() for r in generator_rows]),
            )
    if variant == "compare":
        report.status = "all match" if not mismatches else f"{mismatches} mismatches"
    return report


def cmd_axioms(ref: str, config: EngineConstants, echo: str = "") -> Report:
    cat, text = load_category(ref, config)
    report = Report(echo or f"{PROG} axioms {ref}", inputs_digest(text))
    suite = run_suite(cat, config, config.DEFAULT_SEED)
    report.add("axioms", suite.to_frame(), category=cat.name, seed=suite.seed)
    for r in suite.reports:
        if r.stats:
            report.add(f"{r.axiom} statistics", pd.DataFrame([r.stats]))
    failed = any(r.status == Status.FAILS for r in suite.reports)
    report.status = str(Status.FAILS if failed else Status.HOLDS)
    return report


def cmd_khomotopy(
    cat_ref: str,
    cx_ref: str,
    config: EngineConstants,
    u: str | None = None,
    echo: str = "",
) -> Report:
    cat, cat_text = load_category(cat_ref, config)
    doc, complexes, cx_text = load_complexes(cx_ref, cat)
    report = Report(
        echo or f"{PROG} khomotopy {cat_ref} {cx_ref}" + (f" --u {u}" if u else ""),
        inputs_digest(cat_text, cx_text),
    )
    if complexes:
        cc = complexes_category(cat, complexes)
        K = homotopy_category(cc, config)
        report.add("chain map groups", _hom_table(cc.category))
        report.add("homotopy classes", _hom_table(K))
    if u is not None:
        f = doc.morphism(cat, u)
        if f is None:
            raise InputError(f"no morphism named {u!r} in {cx_ref}")
        bo = bo_counterexample(cat, f, config)
        details = bo.to_dict()
        details.pop("cokernel")
        report.add("Coker([u]) in K", bo.cokernel, **details)
        report.status = "counterexample" if bo.counterexample else "no counterexample"
    return report


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for sampled ideals")
    common.add_argument(
        "--enum-cap", type=int, default=None, help="max component order for searches"
    )
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--out", default=None, help="write the report to this path")
    common.add_argument("--color", action="store_true", help="colour human output")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog=PROG, description="Ideal-theoretic homology in finite additive categories."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a category")
    p.add_argument("category")

    p = sub.add_parser("ideal", parents=[common], help="ideal operations")
    p.add_argument("category")
    p.add_argument("--side", choices=[str(s) for s in Side], default="right")
    p.add_argument(
        "--gen", action="append", default=[], help="generator `A -> B: c1 c2 ...`"
    )
    p.add_argument("--action", choices=ACTIONS, default="saturate")

    p = sub.add_parser("homology", parents=[common], help="homology of complexes")
    p.add_argument("category")
    p.add_argument("complexes")
    p.add_argument("--variant", choices=VARIANTS, default="right")
    p.add_argument("--complex", dest="name", default=None)

    p = sub.add_parser("axioms", parents=[common], help="run the axiom suite")
    p.add_argument("category")

    p = sub.add_parser("khomotopy", parents=[common], help="homotopy category")
    p.add_argument("category")
    p.add_argument("complexes")
    p.add_argument("--u", default=None, help="declared morphism for the cokernel contrast")
    return parser


def _echo(argv: Sequence[str]) -> str:
    """The command line without the output-only flags."""
    kept, skip = [], False
    for arg in argv:
        if skip:
            skip = False
        elif arg in ("--out", "--format"):
            skip = True
        elif arg in ("--color", "-v", "--verbose") or arg.startswith(("--out=", "--format=")):
            continue
        else:
            kept.append(arg)
    return " ".join([PROG, *kept])


def _configure_logging(verbose: bool) -> None:
    if not lgr.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        lgr.addHandler(handler)
    lgr.setLevel(logging.INFO if verbose else logging.WARNING)


def run(args: argparse.Namespace, echo: str) -> Report:
    config = EngineConstants(enum_cap=args.enum_cap, seed=args.seed)
    if args.command == "validate":
        return cmd_validate(args.category, config, echo)
    if args.command == "ideal":
        return cmd_ideal(args.category, args.side, args.gen, args.action, config, echo)
    if args.command == "homology":
        return cmd_homology(args.category, args.complexes, args.variant, config, args.name, echo)
    if args.command == "axioms":
        return cmd_axioms(args.category, config, echo)
    return cmd_khomotopy(args.category, args.complexes, config, args.u, echo)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        report = run(args, _echo(argv))
    except DocumentError as exc:
        print(f"{PROG}: {exc.source or '-'}: {exc}", file=sys.stderr)
        return exc.exit_code
    except IdealHomologyError as exc:
        print(f"{PROG}: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    text = report.render(args.format, args.color)
    if args.out:
        save_report(text, args.out)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
