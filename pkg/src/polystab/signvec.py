"""Sign vectors over {+, 0, -}, compared modulo a single global flip."""

from __future__ import annotations

from typing import Iterable, Sequence

_CHARS = {1: "+", 0: "0", -1: "-"}
_VALUES = {"+": 1, "0": 0, "-": -1}


class SignVec(tuple):
    """Tuple of -1/0/+1 entries; ``str()`` gives the ``"+0-"`` form."""

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(entries)
        if any(e not in (-1, 0, 1) for e in entries):
            raise ValueError(f"sign entries must be -1, 0 or 1: {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "SignVec":
        try:
            return cls(_VALUES[ch] for ch in text)
        except KeyError as exc:
            raise ValueError(f"invalid sign character {exc.args[0]!r}") from None

    def __str__(self) -> str:
        return "".join(_CHARS[e] for e in self)

    def __neg__(self) -> "SignVec":
        return SignVec(-e for e in self)

    def restrict(self, positions: Sequence[int]) -> "SignVec":
        return SignVec(self[i] for i in positions)

    def is_zero(self) -> bool:
        return not any(self)


def sign_of(values: Iterable) -> SignVec:
    return SignVec((x > 0) - (x < 0) for x in values)


def canonical(s: SignVec) -> SignVec:
    """Representative whose first nonzero entry is +."""
    for e in s:
        if e:
            return SignVec(s) if e > 0 else -SignVec(s)
    return SignVec(s)


def _same_length(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ValueError(f"sign vectors of different lengths {len(a)} and {len(b)}")


def equiv(a: SignVec, b: SignVec) -> bool:
    _same_length(a, b)
    return canonical(SignVec(a)) == canonical(SignVec(b))


def _leq_exact(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x == 0 or x == y for x, y in zip(a, b))


def leq(a: SignVec, b: SignVec) -> bool:
    """``a`` is obtained from ``b`` or from ``-b`` by replacing entries with zeros."""
    _same_length(a, b)
    return _leq_exact(a, b) or _leq_exact(a, [-y for y in b])


def var(s: Sequence[int]) -> int:
    changes, last = 0, 0
    for e in s:
        if e:
            if last and e != last:
                changes += 1
            last = e
    return changes


def var_bar(s: Sequence[int]) -> int:
    """Maximal number of sign changes over all ways of filling the zeros with +/-."""
    nz = [i for i, e in enumerate(s) if e]
    if not nz:
        return max(len(s) - 1, 0)
    total = nz[0] + (len(s) - 1 - nz[-1])
    for a, b in zip(nz, nz[1:]):
        gap = b - a - 1
        # gap zeros give gap + 1 slots; parity is fixed by whether the ends agree
        same = s[a] == s[b]
        if (gap + 1) % 2 == (0 if same else 1):
            total += gap + 1
        else:
            total += gap
    return total
