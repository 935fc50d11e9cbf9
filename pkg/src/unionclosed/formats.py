"""Read and write families in the line-oriented text format and its JSON twin.

Text format: first line ``n=<int>``, then one set per line as space-separated
ascending element indices, with a literal ``-`` for the empty set.  Duplicate
lines are rejected.  JSON format: ``{"n": int, "sets": [[int, ...], ...]}``.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .family import SetFamily, mask_of

_TOKEN = re.compile(r"\S+")


class FamilyParseError(ValueError):
    """Malformed family input; carries the offending line (and column if known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def family_to_text(family: SetFamily) -> str:
    lines = [f"n={family.n}"]
    for mask in family.members:
        if mask == 0:
            lines.append("-")
        else:
            elems = []
            e = 1
            while mask:
                if mask & 1:
                    elems.append(str(e))
                mask >>= 1
                e += 1
            lines.append(" ".join(elems))
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SetFamily:
    lines = text.splitlines()
    if not lines:
        raise FamilyParseError("empty input, expected a header line n=<int>")
    header = lines[0].strip()
    m = re.fullmatch(r"n\s*=\s*(\d+)", header)
    if not m:
        raise FamilyParseError(f"expected header n=<int>, got {header!r}", line=1)
    n = int(m.group(1))

    masks: list[int] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        tokens = list(_TOKEN.finditer(raw))
        if len(tokens) == 1 and tokens[0].group() == "-":
            mask = 0
        else:
            prev = 0
            mask = 0
            for tok in tokens:
                col = tok.start() + 1
                word = tok.group()
                if not word.isdigit():
                    raise FamilyParseError(f"expected element index, got {word!r}",
                                           line=lineno, column=col)
                e = int(word)
                if e < 1 or e > n:
                    raise FamilyParseError(f"element {e} outside ground set [{n}]",
                                           line=lineno, column=col)
                if e <= prev:
                    raise FamilyParseError(f"elements must be strictly ascending, got {e} after {prev}",
                                           line=lineno, column=col)
                prev = e
                mask |= 1 << (e - 1)
        if mask in seen:
            raise FamilyParseError("duplicate set", line=lineno)
        seen.add(mask)
        masks.append(mask)
    if not masks:
        raise FamilyParseError("family must contain at least one set")
    try:
        return SetFamily.from_masks(masks, n)
    except ValueError as exc:
        raise FamilyParseError(str(exc)) from exc


def family_to_json_obj(family: SetFamily) -> dict[str, Any]:
    sets = []
    for mask in family.members:
        elems = []
        e = 1
        while mask:
            if mask & 1:
                elems.append(e)
            mask >>= 1
            e += 1
        sets.append(elems)
    return {"n": family.n, "sets": sets}


def family_from_json_obj(obj: Any) -> SetFamily:
    if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
        raise FamilyParseError('expected an object {"n": int, "sets": [[int, ...], ...]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise FamilyParseError(f"n must be a nonnegative integer, got {n!r}")
    sets = obj["sets"]
    if not isinstance(sets, list) or not sets:
        raise FamilyParseError("sets must be a nonempty list of element lists")
    masks: list[int] = []
    seen: set[int] = set()
    for idx, elems in enumerate(sets):
        if not isinstance(elems, list) or not all(isinstance(e, int) for e in elems):
            raise FamilyParseError(f"sets[{idx}] must be a list of integers")
        for e in elems:
            if e < 1 or e > n:
                raise FamilyParseError(f"sets[{idx}]: element {e} outside ground set [{n}]")
        mask = mask_of(elems)
        if mask in seen:
            raise FamilyParseError(f"sets[{idx}]: duplicate set")
        seen.add(mask)
        masks.append(mask)
    return SetFamily.from_masks(masks, n)


def family_from_string(text: str) -> SetFamily:
    """Parse either format; JSON is recognized by a leading '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FamilyParseError(f"invalid JSON: {exc}") from exc
        return family_from_json_obj(obj)
    return family_from_text(text)


def load_family(path: str) -> SetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_string(fh.read())
