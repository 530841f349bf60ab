"""Command-line surface: check, paragons, quotient, localise.

Reports carry a human-readable section, then a ``---`` separator, then a
line-oriented ``key=value`` machine section that is byte-stable for a given
input, flags and seed (timing stays in the human section).  Exit codes:
0 pass, 1 axiom or verdict failure, 2 input error, 3 size-guard refusal.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .domains import is_completely_prime
from .errors import (
    AxiomError,
    NotLeftRegularError,
    SizeGuardError,
    StructureError,
    TrussKitError,
)
from .instances import oddgauss_ops, oddint_ops, oddmatrix_ops, oddpoly_ops
from .localisation import (
    DEFAULT_SEED,
    LocalisedTruss,
    brace_retract_of_fractions,
    localise,
)
from .paragons import (
    brace_type_quotient_criterion,
    enumerate_paragons,
    is_ideal,
    is_maximal_paragon,
    is_normal_subheap,
    is_paragon,
    is_subheap,
    quotient,
)
from .structfile import build_structure, load_structure, serialize_pretruss
from .trusses import FinitePreTruss, classify, find_absorbers, multiplication_group

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

PARAGON_SIZE_GUARD = 12
LOCALISE_FINITE_GUARD = 5


@dataclass
class Report:
    command: str
    human: list[str] = field(default_factory=list)
    machine: list[tuple[str, str]] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def say(self, line: str) -> None:
        self.human.append(line)

    def put(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.machine.append((key, str(value)))

    def render(self) -> str:
        out = list(self.human)
        out.append("---")
        out.extend(f"{k}={v}" for k, v in self.machine)
        return "\n".join(out) + "\n"


def _members_repr(elements, members) -> str:
    return "{" + ",".join(elements[i] for i in sorted(members)) + "}"


def _load_pretruss(path, report: Report) -> FinitePreTruss:
    loaded = build_structure(load_structure(path))
    if not isinstance(loaded.structure, FinitePreTruss):
        raise StructureError(
            f"kind {loaded.kind!r} does not describe a pre-truss; "
            "use a pretruss/ring/nearring/brace file"
        )
    report.put("kind", loaded.kind)
    return loaded.structure


def cmd_check(args) -> Report:
    report = Report("check")
    report.put("command", "check")
    report.put("input", args.file)
    report.put("seed", args.seed)
    started = time.perf_counter()
    try:
        loaded = build_structure(load_structure(args.file))
    except AxiomError as exc:
        report.say(f"axiom failure: {exc}")
        report.put("verdict", "fail")
        if exc.report is not None:
            for v in exc.report.violations:
                report.put(f"violation.{v.identity}", ",".join(map(str, v.witness)))
        elif exc.witness is not None:
            report.put("violation.witness", ",".join(map(str, exc.witness)))
        report.exit_code = EXIT_FAIL
        return report
    report.say(f"{loaded.kind} with {_order(loaded)} elements passes all axiom checks")
    report.put("kind", loaded.kind)
    report.put("order", _order(loaded))
    if isinstance(loaded.structure, FinitePreTruss):
        cls = classify(loaded.structure)
        report.say(f"classification: {cls}")
        report.put("classification", cls.kind)
        report.put("unital", cls.unital)
        absorbers = find_absorbers(loaded.structure)
        report.put("left_absorbers", _members_repr(loaded.structure.elements,
                                                   absorbers.left_absorbers))
        report.put("right_absorbers", _members_repr(loaded.structure.elements,
                                                    absorbers.right_absorbers))
    report.put("verdict", "pass")
    report.say(f"elapsed {time.perf_counter() - started:.3f}s")
    return report


def _order(loaded) -> int:
    s = loaded.structure
    return s.size if hasattr(s, "size") else s.order


def cmd_paragons(args) -> Report:
    report = Report("paragons")
    report.put("command", "paragons")
    report.put("input", args.file)
    report.put("seed", args.seed)
    started = time.perf_counter()
    t = _load_pretruss(args.file, report)
    if t.size > PARAGON_SIZE_GUARD:
        raise SizeGuardError(
            f"paragon enumeration is guarded to order {PARAGON_SIZE_GUARD}, "
            f"the file has {t.size} elements"
        )
    markers = enumerate_paragons(t)
    report.say(f"{len(markers)} paragons in a {classify(t)} of order {t.size}")
    report.put("order", t.size)
    report.put("paragon.count", len(markers))
    unital_near = t.unit is not None and t.flags.is_near
    for i, marker in enumerate(markers):
        label = _members_repr(t.elements, marker.members)
        ideal = is_ideal(t, marker.members)
        prime = is_completely_prime(t, marker.members).is_completely_prime
        maximal = is_maximal_paragon(t, marker.members, side="both")
        flags = [name for name, on in
                 (("ideal", ideal), ("completely-prime", prime), ("maximal", maximal))
                 if on]
        report.say(f"  {label}" + (f"  [{', '.join(flags)}]" if flags else ""))
        report.put(f"paragon.{i}.members", label)
        report.put(f"paragon.{i}.ideal", ideal)
        report.put(f"paragon.{i}.completely_prime", prime)
        report.put(f"paragon.{i}.maximal", maximal)
    report.put("verdict", "pass")
    report.say(f"elapsed {time.perf_counter() - started:.3f}s")
    return report


def _parse_subset(t: FinitePreTruss, spec: str) -> frozenset[int]:
    labels = [tok for tok in spec.split(",") if tok]
    lut = {e: i for i, e in enumerate(t.elements)}
    missing = [tok for tok in labels if tok not in lut]
    if missing:
        raise StructureError(f"unknown element labels in subset: {', '.join(missing)}")
    return frozenset(lut[tok] for tok in labels)


def cmd_quotient(args) -> Report:
    report = Report("quotient")
    report.put("command", "quotient")
    report.put("input", args.file)
    report.put("subset", args.subset)
    report.put("seed", args.seed)
    started = time.perf_counter()
    t = _load_pretruss(args.file, report)
    members = _parse_subset(t, args.subset)
    if not is_subheap(t.heap, members) or not members:
        report.say(f"subset {args.subset} is not a nonempty sub-heap")
        report.put("verdict", "not-a-subheap")
        report.exit_code = EXIT_FAIL
        return report
    if not is_normal_subheap(t.heap, members):
        report.say(f"subset {args.subset} is not a normal sub-heap")
        report.put("verdict", "not-normal")
        report.exit_code = EXIT_FAIL
        return report
    if not is_paragon(t, members):
        report.say(f"subset {args.subset} is not a paragon")
        report.put("verdict", "not-a-paragon")
        report.exit_code = EXIT_FAIL
        return report
    q = quotient(t, members)
    report.say(f"quotient has {q.size} classes")
    report.put("classes", q.size)
    for i, cls in enumerate(q.classes.classes):
        report.put(f"class.{i}", _members_repr(t.elements, cls))

    if t.unit is not None and t.flags.is_near:
        verdict = brace_type_quotient_criterion(t, members)
        brace = verdict.is_brace_type
        report.put("criterion.certificate", str(verdict.certificate))
    else:
        try:
            multiplication_group(q.structure)
            brace = True
        except (AxiomError, TrussKitError):
            brace = False
    q_cls = classify(q.structure)
    has_absorber = find_absorbers(q.structure).two_sided is not None
    if brace:
        label = "brace-type"
    elif q_cls.kind == "truss" and has_absorber:
        label = "ring-type"
    else:
        label = "neither"
    report.say(f"quotient classification: {label} ({q_cls})")
    report.put("classification", label)
    report.put("quotient_kind", q_cls.kind)
    if args.output:
        text = serialize_pretruss(q.structure, name="quotient")
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.say(f"wrote quotient structure to {args.output}")
    report.put("verdict", "pass")
    report.say(f"elapsed {time.perf_counter() - started:.3f}s")
    return report


_INSTANCES = {
    "odd-int": oddint_ops,
    "odd-poly": oddpoly_ops,
    "odd-gauss": oddgauss_ops,
}


def _resolve_localise_target(target: str, report: Report):
    if target in _INSTANCES:
        return _INSTANCES[target]()
    if target.startswith("odd-matrix:"):
        n = int(target.split(":", 1)[1])
        if not (1 <= n <= 4):
            raise SizeGuardError("odd-matrix dimension must be within 1..4")
        return oddmatrix_ops(n)
    t = _load_pretruss(target, report)
    if t.size > LOCALISE_FINITE_GUARD:
        raise SizeGuardError(
            f"finite localisation is guarded to order {LOCALISE_FINITE_GUARD}, "
            f"the file has {t.size} elements"
        )
    return t


def cmd_localise(args) -> Report:
    report = Report("localise")
    report.put("command", "localise")
    report.put("input", args.target)
    report.put("seed", args.seed)
    report.put("samples", args.samples)
    started = time.perf_counter()
    source = _resolve_localise_target(args.target, report)
    try:
        handle = localise(source)
    except NotLeftRegularError as exc:
        report.say(f"refused: {exc}")
        report.put("verdict", "not-left-regular")
        report.put("reason", exc.reason)
        if exc.witness is not None:
            report.put("witness", ",".join(map(str, exc.witness)))
        report.exit_code = EXIT_FAIL
        return report

    laws = handle.verify_inherited_laws(rounds=args.samples, seed=args.seed)
    mode = "exhaustive" if laws.exhaustive else f"{laws.rounds} samples"
    report.say(f"inherited-law suite ({mode}):")
    for name, ok in laws.items():
        report.say(f"  {name}: {'ok' if ok else 'FAIL'}")
        report.put(f"law.{name}", ok)
    base = handle.source.unit
    if base is None:
        base = handle.source.sample_nonabsorber(random.Random(args.seed))
    fb = brace_retract_of_fractions(handle, base)
    if fb.near_field_case:
        report.say("source has an absorber: near-field case, not a skew brace")
        report.put("brace", "near-field-case")
    else:
        fb.verify_brace_law(rounds=max(10, args.samples // 2), seed=args.seed)
        fb.verify_no_absorber(rounds=6, seed=args.seed)
        report.say("skew brace law a(x+y) = ax - a + ay holds on all samples")
        report.put("brace", "verified")

    rng = random.Random(args.seed)
    report.say("sample computations:")
    for i in range(3):
        f = handle.sample_fraction(rng)
        g = handle.sample_fraction(rng)
        prod, w = handle.mul_with_witness(f, g)
        report.say(f"  ({f}) * ({g}) = {prod}")
        report.put(f"sample.{i}.lhs", str(f))
        report.put(f"sample.{i}.rhs", str(g))
        report.put(f"sample.{i}.product", str(prod))
        if w is not None:
            report.put(f"sample.{i}.witness.r", handle.source.describe(w.r))
            report.put(f"sample.{i}.witness.s", handle.source.describe(w.s))
    if not laws.ok:
        report.put("verdict", "fail")
        report.exit_code = EXIT_FAIL
    else:
        report.put("verdict", "pass")
    report.say(f"elapsed {time.perf_counter() - started:.3f}s")
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trusskit",
        description="verify, enumerate, quotient and localise truss structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the axioms declared by a structure file")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("paragons", help="enumerate all paragons with their flags")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_paragons)

    p = sub.add_parser("quotient", help="quotient a structure by a paragon")
    p.add_argument("file")
    p.add_argument("--subset", required=True,
                   help="comma-separated element labels of the paragon")
    p.add_argument("--output", default=None, help="write the quotient structure here")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("localise", help="build and verify the truss of fractions")
    p.add_argument("target",
                   help="odd-int | odd-poly | odd-gauss | odd-matrix:N | structure file")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_localise)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except SizeGuardError as exc:
        print(f"refused: {exc}")
        return EXIT_GUARD
    except StructureError as exc:
        print(f"input error: {exc}")
        return EXIT_INPUT
    except AxiomError as exc:
        print(f"axiom failure: {exc}")
        return EXIT_FAIL
    sys.stdout.write(report.render())
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
