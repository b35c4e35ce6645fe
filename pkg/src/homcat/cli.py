"""Command line surface: one session file in, one command, one report out.

Usage: ``homcat COMMAND SESSION-FILE [ARGS...]``.  Verdict commands print
a small JSON report; constructive commands print a complete session
fragment that parses on its own, so outputs can be piped into files and
fed straight back in.  Exit codes: 0 for success or a true verdict, 1
for a well-formed false or "none" verdict, 2 for any input error.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .chainmaps import find_homotopy, is_quasi_iso
from .complexes import cohomology, shift
from .cones import check_les_exact, cone_triangle, mapping_cone
from .errors import HomcatError, UnknownReferenceError, UsageError
from .roofs import Cospan, RoofEquivalenceWitness, compose_roofs, flip_cospan, lift_map_to_roof, verify_roof_equivalence
from .session import (
    HomotopyEntry,
    MapEntry,
    RoofEntry,
    SessionFile,
    emit_session,
    matrix_payload,
    parse_session,
)

__all__ = ["run_command", "CommandResult", "main"]

USAGE = """usage: homcat COMMAND SESSION-FILE [ARGS...]

commands:
  validate FILE                       parse and validate, report ok
  cohomology FILE OBJECT              degreewise cohomology dimensions and representatives
  shift FILE OBJECT N                 emit the complex shifted by N
  cone FILE MAP                       emit the mapping cone with its structural maps
  les FILE MAP                        exactness of the long sequence of the cone triangle
  homotopic FILE MAP MAP              find a homotopy witness between two parallel maps
  qis FILE MAP                        is the map a quasi-isomorphism
  flip FILE ALPHA BETA                flip the cospan (alpha, beta) into a span
  compose FILE ROOF ROOF              compose two roofs
  roof-equiv FILE ROOF ROOF --witness APEX3 DENOM3 NUMER3 UP DOWN
                                      verify a roof equivalence witness
  lift FILE MAP                       present a plain map as a roof

exit codes: 0 success or true, 1 well-formed false or none, 2 input error
"""


@dataclass(frozen=True)
class CommandResult:
    output: str
    exit_code: int


def _report(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _need(args: Sequence[str], count: int, command: str, shape: str) -> None:
    if len(args) != count:
        raise UsageError(f"usage: homcat {command} SESSION-FILE {shape}".rstrip())


def _get_object(session: SessionFile, name: str):
    if name not in session.objects:
        raise UnknownReferenceError(f"unknown object {name!r}")
    return session.objects[name]


def _get_map(session: SessionFile, name: str) -> MapEntry:
    if name not in session.maps:
        raise UnknownReferenceError(f"unknown map {name!r}")
    return session.maps[name]


def _get_roof(session: SessionFile, name: str) -> RoofEntry:
    if name not in session.roofs:
        raise UnknownReferenceError(f"unknown roof {name!r}")
    return session.roofs[name]


def _fresh(name: str, taken) -> str:
    while name in taken:
        name = name + "_"
    return name


def _cmd_validate(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 0, "validate", "")
    return CommandResult(_report({"command": "validate", "ok": True}), 0)


def _cmd_cohomology(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 1, "cohomology", "OBJECT")
    name = args[0]
    c = _get_object(session, name)
    table = {}
    for i in c.degrees():
        space = cohomology(c, i)
        entry = {"dim": space.dim}
        if space.dim > 0:
            entry["representatives"] = matrix_payload(space.representatives())
        table[str(i)] = entry
    return CommandResult(
        _report({"command": "cohomology", "object": name, "cohomology": table}), 0
    )


def _cmd_shift(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 2, "shift", "OBJECT N")
    c = _get_object(session, args[0])
    try:
        n = int(args[1])
    except ValueError:
        raise UsageError(f"shift amount must be an integer, got {args[1]!r}") from None
    fragment = SessionFile(session.field, objects={"shifted": shift(c, n)})
    return CommandResult(emit_session(fragment), 0)


def _cmd_cone(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 1, "cone", "MAP")
    name = args[0]
    entry = _get_map(session, name)
    mc = mapping_cone(entry.value)
    objects = {entry.source: entry.value.source, entry.target: entry.value.target}
    cone_name = _fresh("cone", objects)
    objects[cone_name] = mc.cone
    shift_name = _fresh("source_shift", objects)
    objects[shift_name] = mc.proj.target
    maps = {name: entry}
    incl_name = _fresh("incl", maps)
    maps[incl_name] = MapEntry(entry.target, cone_name, mc.incl)
    proj_name = _fresh("proj", maps)
    maps[proj_name] = MapEntry(cone_name, shift_name, mc.proj)
    fragment = SessionFile(session.field, objects=objects, maps=maps)
    return CommandResult(emit_session(fragment), 0)


def _cmd_les(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 1, "les", "MAP")
    entry = _get_map(session, args[0])
    exact = check_les_exact(cone_triangle(entry.value))
    return CommandResult(
        _report({"command": "les", "map": args[0], "exact": exact}),
        0 if exact else 1,
    )


def _cmd_homotopic(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 2, "homotopic", "MAP MAP")
    e1 = _get_map(session, args[0])
    e2 = _get_map(session, args[1])
    witness = find_homotopy(e1.value, e2.value)
    if witness is None:
        return CommandResult(
            _report({"command": "homotopic", "maps": [args[0], args[1]], "result": "none"}),
            1,
        )
    objects = {e1.source: e1.value.source, e1.target: e1.value.target}
    fragment = SessionFile(
        session.field,
        objects=objects,
        homotopies={"witness": HomotopyEntry(e1.source, e1.target, witness)},
    )
    return CommandResult(emit_session(fragment), 0)


def _cmd_qis(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 1, "qis", "MAP")
    entry = _get_map(session, args[0])
    verdict = is_quasi_iso(entry.value)
    return CommandResult(
        _report({"command": "qis", "map": args[0], "result": verdict}),
        0 if verdict else 1,
    )


def _cmd_flip(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 2, "flip", "ALPHA BETA")
    alpha = _get_map(session, args[0])
    beta = _get_map(session, args[1])
    flip = flip_cospan(Cospan(alpha=alpha.value, beta=beta.value))
    objects = {
        alpha.source: alpha.value.source,
        beta.source: beta.value.source,
        alpha.target: alpha.value.target,
    }
    k_name = _fresh("K", objects)
    objects[k_name] = flip.k_complex
    maps = {}
    gamma2_name = _fresh("gamma2", maps)
    maps[gamma2_name] = MapEntry(k_name, alpha.source, flip.gamma2)
    gamma1_name = _fresh("gamma1", maps)
    maps[gamma1_name] = MapEntry(k_name, beta.source, flip.gamma1)
    fragment = SessionFile(
        session.field,
        objects=objects,
        maps=maps,
        homotopies={"h": HomotopyEntry(k_name, alpha.target, flip.witness)},
    )
    return CommandResult(emit_session(fragment), 0)


def _cmd_compose(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 2, "compose", "ROOF ROOF")
    r1 = _get_roof(session, args[0])
    r2 = _get_roof(session, args[1])
    composite = compose_roofs(r1.value, r2.value)
    left_name = session.maps[r1.denom].target
    right_name = session.maps[r2.numer].target
    objects = {
        left_name: composite.denom.target,
        right_name: composite.numer.target,
    }
    apex_name = _fresh("apex", objects)
    objects[apex_name] = composite.apex
    maps = {}
    denom_name = _fresh("denom", maps)
    maps[denom_name] = MapEntry(apex_name, left_name, composite.denom)
    numer_name = _fresh("numer", maps)
    maps[numer_name] = MapEntry(apex_name, right_name, composite.numer)
    fragment = SessionFile(
        session.field,
        objects=objects,
        maps=maps,
        roofs={"composite": RoofEntry(denom_name, numer_name, composite)},
    )
    return CommandResult(emit_session(fragment), 0)


def _cmd_roof_equiv(session: SessionFile, args: Sequence[str]) -> CommandResult:
    if len(args) != 8 or args[2] != "--witness":
        raise UsageError(
            "usage: homcat roof-equiv SESSION-FILE ROOF ROOF --witness APEX3 DENOM3 NUMER3 UP DOWN"
        )
    r1 = _get_roof(session, args[0])
    r2 = _get_roof(session, args[1])
    witness = RoofEquivalenceWitness(
        apex3=_get_object(session, args[3]),
        denom3=_get_map(session, args[4]).value,
        numer3=_get_map(session, args[5]).value,
        up=_get_map(session, args[6]).value,
        down=_get_map(session, args[7]).value,
    )
    verdict = verify_roof_equivalence(r1.value, r2.value, witness)
    return CommandResult(
        _report({"command": "roof-equiv", "roofs": [args[0], args[1]], "result": verdict}),
        0 if verdict else 1,
    )


def _cmd_lift(session: SessionFile, args: Sequence[str]) -> CommandResult:
    _need(args, 1, "lift", "MAP")
    entry = _get_map(session, args[0])
    roof = lift_map_to_roof(entry.value)
    objects = {entry.source: entry.value.source, entry.target: entry.value.target}
    maps = {}
    denom_name = _fresh("denom", maps)
    maps[denom_name] = MapEntry(entry.source, entry.source, roof.denom)
    numer_name = _fresh("numer", maps)
    maps[numer_name] = MapEntry(entry.source, entry.target, roof.numer)
    fragment = SessionFile(
        session.field,
        objects=objects,
        maps=maps,
        roofs={"lifted": RoofEntry(denom_name, numer_name, roof)},
    )
    return CommandResult(emit_session(fragment), 0)


_COMMANDS: dict[str, Callable[[SessionFile, Sequence[str]], CommandResult]] = {
    "validate": _cmd_validate,
    "cohomology": _cmd_cohomology,
    "shift": _cmd_shift,
    "cone": _cmd_cone,
    "les": _cmd_les,
    "homotopic": _cmd_homotopic,
    "qis": _cmd_qis,
    "flip": _cmd_flip,
    "compose": _cmd_compose,
    "roof-equiv": _cmd_roof_equiv,
    "lift": _cmd_lift,
}


def run_command(session: SessionFile, command: str, args: Sequence[str]) -> CommandResult:
    """Execute one command against a parsed session."""
    handler = _COMMANDS.get(command)
    if handler is None:
        raise UsageError(f"unknown command {command!r}")
    return handler(session, list(args))


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args:
        sys.stderr.write(USAGE)
        return 2
    if args[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return 0
    command = args[0]
    if command not in _COMMANDS:
        sys.stderr.write(f"unknown command {command!r}\n{USAGE}")
        return 2
    if len(args) < 2:
        sys.stderr.write(f"missing session file\n{USAGE}")
        return 2
    try:
        text = Path(args[1]).read_text(encoding="utf-8")
    except OSError as e:
        sys.stderr.write(f"cannot read session file: {e}\n")
        return 2
    try:
        session = parse_session(text)
        result = run_command(session, command, args[2:])
    except HomcatError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return 2
    sys.stdout.write(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
