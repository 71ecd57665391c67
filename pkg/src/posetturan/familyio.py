"""Reading and writing set families.

Text format: first line ``n=<int>``; each subsequent line is either a
whitespace-separated element list ("1 3 4"), "{}" for the empty set, or a
level shorthand "L<k>" / "L<k>+L<j>". The JSON alternative is
``{"n": int, "masks": [int, ...]}``.
"""
from __future__ import annotations

import json

from .lattice import SetFamily, format_mask, level_family


class FamilyFormatError(ValueError):
    pass


def parse_family(text: str) -> SetFamily:
    text = text.strip()
    if not text:
        raise FamilyFormatError("empty family input")
    if text.startswith("{"):
        return _parse_json(text)
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise FamilyFormatError('first line must be "n=<int>"')
    try:
        n = int(head[2:])
    except ValueError:
        raise FamilyFormatError(f"bad dimension {head[2:]!r}") from None
    masks = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "{}":
            masks.append(0)
        elif line[0] in "Ll":
            for part in line.replace(" ", "").split("+"):
                if not part or part[0] not in "Ll":
                    raise FamilyFormatError(f"line {lineno}: bad level shorthand {line!r}")
                try:
                    k = int(part[1:])
                except ValueError:
                    raise FamilyFormatError(
                        f"line {lineno}: bad level shorthand {line!r}"
                    ) from None
                masks.extend(level_family(n, [k]).members)
        else:
            mask = 0
            for tok in line.split():
                try:
                    el = int(tok)
                except ValueError:
                    raise FamilyFormatError(f"line {lineno}: bad element {tok!r}") from None
                if not 1 <= el <= n:
                    raise FamilyFormatError(f"line {lineno}: element {el} outside 1..{n}")
                mask |= 1 << (el - 1)
            masks.append(mask)
    return SetFamily(n, masks)


def _parse_json(text: str) -> SetFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"bad JSON family: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "masks" not in data:
        raise FamilyFormatError('JSON family needs keys "n" and "masks"')
    return SetFamily(int(data["n"]), [int(m) for m in data["masks"]])


def format_family(family: SetFamily) -> str:
    lines = [f"n={family.n}"]
    lines.extend(format_mask(m) for m in family.members)
    return "\n".join(lines) + "\n"


def family_to_json(family: SetFamily) -> str:
    return json.dumps({"n": family.n, "masks": list(family.members)})


def read_family(path: str) -> SetFamily:
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh.read())
