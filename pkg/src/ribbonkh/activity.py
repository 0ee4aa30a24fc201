"""Activity words: one letter per edge, L/l for live, D/d for dead.

Capitals mark edges inside the tree or quasi-tree; a bar marks a negative
edge.  ASCII output renders the bar as a trailing apostrophe (``D'``) and the
lowercase live letter as ``l``; pretty output uses ``ℓ`` and a combining
macron.
"""

from __future__ import annotations

from dataclasses import dataclass

_BAR = "̄"  # combining macron
_BAR_MARKS = ("'", "̄", "̅")


@dataclass(frozen=True)
class ActivityWord:
    live: tuple[bool, ...]
    member: tuple[bool, ...]
    negative: tuple[bool, ...] | None = None

    def letters(self) -> list[tuple[str, bool]]:
        neg = self.negative or (False,) * len(self.live)
        out = []
        for live, member, bar in zip(self.live, self.member, neg):
            ch = "L" if live else "D"
            out.append((ch if member else ch.lower(), bar))
        return out

    def ascii(self) -> str:
        return "".join(ch + ("'" if bar else "") for ch, bar in self.letters())

    def pretty(self) -> str:
        return "".join(
            (("ℓ" if ch == "l" else ch) + (_BAR if bar else "")) for ch, bar in self.letters()
        )

    def __str__(self) -> str:
        return self.ascii()

    @classmethod
    def parse(cls, text: str) -> ActivityWord:
        """Inverse of :meth:`ascii` and :meth:`pretty`."""
        live, member, neg = [], [], []
        for ch in text:
            if ch in _BAR_MARKS:
                if not neg:
                    raise ValueError(f"bar before any letter in {text!r}")
                neg[-1] = True
                continue
            ch = "l" if ch == "ℓ" else ch
            if ch not in "LlDd":
                raise ValueError(f"bad activity letter {ch!r} in {text!r}")
            live.append(ch in "Ll")
            member.append(ch.isupper())
            neg.append(False)
        return cls(tuple(live), tuple(member), tuple(neg) if any(neg) else None)

    def unsigned(self) -> ActivityWord:
        return ActivityWord(self.live, self.member, None)
