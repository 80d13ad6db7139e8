"""Atom identifier grammar.

Plain identifiers are non-empty strings free of the reserved characters
``| & ( )``.  Compound identifiers name tuples of atoms: ``a|b`` for tensor /
coproduct atoms and ``a&b`` for relative-product atoms.  A part that is itself
compound is parenthesised, so ``(a|b)|c`` and ``a|(b|c)`` stay distinct.
``+`` joins the members of a block (an orbit, a generated atom); it is an
ordinary character in plain identifiers and a separator after a
parenthesised part, as in ``(a|b)+(c|d)``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidAtomName

RESERVED = frozenset("|&()")
SEPARATORS = ("|", "&", "+")
UNIT_ATOM = "*"


def _parse(name: str, pos: int) -> int:
    """Parse ``term (sep term)*`` starting at ``pos``; return the end position."""
    pos = _parse_term(name, pos)
    sep = None
    while pos < len(name) and name[pos] in SEPARATORS:
        if sep is not None and name[pos] != sep:
            raise InvalidAtomName(f"mixed separators in {name!r}; parenthesise")
        sep = name[pos]
        pos = _parse_term(name, pos + 1)
    return pos


def _parse_term(name: str, pos: int) -> int:
    if pos < len(name) and name[pos] == "(":
        pos = _parse(name, pos + 1)
        if pos >= len(name) or name[pos] != ")":
            raise InvalidAtomName(f"unbalanced parenthesis in {name!r} at {pos}")
        return pos + 1
    start = pos
    while pos < len(name) and name[pos] not in RESERVED:
        pos += 1
    if pos == start:
        raise InvalidAtomName(f"empty identifier component in {name!r} at {pos}")
    return pos


def check_atom_id(name) -> str:
    if not isinstance(name, str):
        raise InvalidAtomName(f"atom identifiers must be strings, got {name!r}")
    if _parse(name, 0) != len(name):
        raise InvalidAtomName(f"malformed atom identifier {name!r}")
    return name


def is_compound(name: str) -> bool:
    return any(c in RESERVED for c in name)


def join_ids(parts: Sequence[str], sep: str = "|") -> str:
    if len(parts) == 0:
        return UNIT_ATOM
    if len(parts) == 1:
        return parts[0]
    return sep.join(f"({p})" if is_compound(p) else p for p in parts)


def split_id(name: str, sep: str = "|") -> list[str]:
    """Inverse of :func:`join_ids` for a top-level separator."""
    parts, depth, start = [], 0, 0
    for i, c in enumerate(name):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == sep and depth == 0:
            parts.append(name[start:i])
            start = i + 1
    parts.append(name[start:])
    return [p[1:-1] if p.startswith("(") and _parse_term(p, 0) == len(p) and p.endswith(")") else p
            for p in parts]
