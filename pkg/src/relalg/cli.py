"""Command-line interface.

Exit codes: 0 for success or a positive answer, 2 for a definite negative
answer (invalid structure, rejected decision, no isomorphism, failing
axiom), 1 for errors such as unreadable files, parse failures, violated
preconditions, or an exhausted search budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .atoms import AxiomReport, check_z2_axioms
from .concrete import extract_atom_structure
from .decision import (DEFAULT_BUDGET, check_action_represents, decide_z2,
                       find_isomorphism, verify_decision)
from .errors import InternalError, RelalgError
from .formats import (format_atom_structure, format_concrete_algebra,
                      format_group_action, parse_atom_structure,
                      parse_concrete_algebra, parse_group_action)
from .pairdense import classify_atoms, derive_points_twins
from .actions import rel_algebra


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _axiom_line(axiom: int, condition: str, witness: str | None) -> str:
    if witness is None:
        return f"axiom {axiom} holds ({condition})"
    return f"axiom {axiom} fails at atom {witness} ({condition})"


def _axiom_lines(report: AxiomReport) -> list[str]:
    return [
        _axiom_line(1, "simplicity", report.simple_witness),
        _axiom_line(2, "pair-density", report.pair_dense_witness),
        _axiom_line(3, "functionality", report.functional_witness),
    ]


def _cmd_validate(args) -> tuple[int, list[str]]:
    s = parse_atom_structure(_read(args.file), source=args.file)
    report = s.validation
    if report.ok:
        return 0, ["valid"]
    return 2, ["invalid"] + list(report.lines())


def _cmd_rel(args) -> tuple[int, list[str]]:
    action = parse_group_action(_read(args.file), source=args.file)
    algebra = rel_algebra(action)
    structure = extract_atom_structure(algebra)
    lines = format_concrete_algebra(algebra).splitlines()
    lines.append("")
    lines.extend(format_atom_structure(structure).splitlines())
    return 0, lines


def _cmd_decide_z2(args) -> tuple[int, list[str]]:
    s = parse_atom_structure(_read(args.file), source=args.file)
    decision = decide_z2(s, budget=args.budget)
    if not decision.accepted:
        lines = ["rejected"]
        lines.extend(_axiom_line(f.axiom, f.condition, f.witness)
                     for f in decision.failures)
        return 2, lines
    lines = ["accepted"]
    if args.verify:
        report = verify_decision(decision)
        if not report.ok:
            raise InternalError("verification failed: "
                                + "; ".join(report.problems))
        lines.append("verified")
    lines.append("")
    lines.extend(format_group_action(decision.action).splitlines())
    lines.append("")
    lines.extend(format_concrete_algebra(decision.algebra).splitlines())
    lines.append("")
    lines.extend(decision.witness.map_lines())
    return 0, lines


def _cmd_iso(args) -> tuple[int, list[str]]:
    s1 = parse_atom_structure(_read(args.file), source=args.file)
    s2 = parse_atom_structure(_read(args.other), source=args.other)
    witness = find_isomorphism(s1, s2, budget=args.budget)
    if witness is None:
        return 2, ["none"]
    return 0, witness.map_lines()


def _cmd_classify(args) -> tuple[int, list[str]]:
    c = parse_concrete_algebra(_read(args.file), source=args.file)
    c.require_invariants()
    base = derive_points_twins(c)
    classification = classify_atoms(c, base)
    return 0, classification.report_lines()


def _cmd_check_action(args) -> tuple[int, list[str]]:
    s = parse_atom_structure(_read(args.file), source=args.file)
    action = parse_group_action(_read(args.action_file),
                                source=args.action_file)
    witness = check_action_represents(s, action, budget=args.budget)
    if witness is None:
        return 2, ["none"]
    return 0, witness.map_lines()


def _cmd_axioms(args) -> tuple[int, list[str]]:
    s = parse_atom_structure(_read(args.file), source=args.file)
    s.require_valid()
    report = check_z2_axioms(s)
    return (0 if report.all_hold else 2), _axiom_lines(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relalg",
        description="Finite relation algebras of group actions: validate "
                    "atom structures, compute compatible-relation algebras, "
                    "and decide representability over order-two actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--output", metavar="PATH",
                       help="write the report to a file instead of stdout")
        return p

    p = add("validate", _cmd_validate, "check an atom structure file")
    p.add_argument("file")

    p = add("rel", _cmd_rel,
            "compute the compatible-relation algebra of a group action")
    p.add_argument("file")

    p = add("decide-z2", _cmd_decide_z2,
            "decide representability over an order-two group action")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="isomorphism search node budget")
    p.add_argument("--verify", action="store_true",
                   help="independently re-check an accepted decision")

    p = add("iso", _cmd_iso, "search for an isomorphism between two "
                             "atom structures")
    p.add_argument("file")
    p.add_argument("other")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("classify", _cmd_classify,
            "classify the atoms of a concrete algebra over points and twins")
    p.add_argument("file")

    p = add("check-action", _cmd_check_action,
            "test whether a given action's algebra realizes a structure")
    p.add_argument("file")
    p.add_argument("action_file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("axioms", _cmd_axioms,
            "report the three representability axioms with witnesses")
    p.add_argument("file")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, lines = args.handler(args)
    except (RelalgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
