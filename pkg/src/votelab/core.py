"""Shared vocabulary: alphabets, profiles, tallies, permutations, count signatures.

Everything here is an immutable value; all operations are pure functions, so
concurrent evaluation needs no coordination.  The canonical symbol ordering is
fixed when an :class:`Alphabet` is constructed and every enumeration or report
ordering in the toolkit derives from it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator


class VoteLabError(Exception):
    """Base class for toolkit errors."""


class RuleDomainError(VoteLabError):
    """A rule was applied to an alphabet or configuration it does not accept."""


class HorizonError(VoteLabError):
    """A tabulated family was evaluated beyond its stored horizon."""


class BoundError(VoteLabError):
    """An enumeration or search was requested beyond its configured bounds."""


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of alternatives with a distinguished tie symbol.

    ``bot`` is the tie/abstain alternative: on a ballot it reads as an
    abstention, as an outcome it reads as an inconclusive (tied) vote.
    """

    alternatives: tuple[str, ...]
    bot: str

    def __post_init__(self) -> None:
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValueError("alphabet symbols must be pairwise distinct")
        if self.bot not in self.alternatives:
            raise ValueError("tie symbol must be a member of the alphabet")
        if len(self.alternatives) < 2:
            raise ValueError("alphabet needs at least one non-tie alternative")

    @property
    def non_bot(self) -> tuple[str, ...]:
        return tuple(s for s in self.alternatives if s != self.bot)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.alternatives

    def index(self, symbol: str) -> int:
        return self.alternatives.index(symbol)

    @staticmethod
    def make(num_alternatives: int, bot: str = "_") -> "Alphabet":
        """Alphabet with ``num_alternatives`` non-tie symbols a, b, c, ... plus ``bot``."""
        if not 1 <= num_alternatives <= 26:
            raise ValueError("num_alternatives must be between 1 and 26")
        symbols = tuple(chr(ord("a") + i) for i in range(num_alternatives))
        if bot in symbols:
            raise ValueError("tie symbol collides with a generated alternative")
        return Alphabet(symbols + (bot,), bot)

    @staticmethod
    def may() -> "Alphabet":
        """The two-option alphabet {-1, 0, 1} with 0 as the tie symbol."""
        return Alphabet(("-1", "0", "1"), "0")


@dataclass(frozen=True)
class Profile:
    """One ballot per anonymous voter; the empty profile is legal."""

    alphabet: Alphabet
    ballots: tuple[str, ...]

    def __post_init__(self) -> None:
        for b in self.ballots:
            if b not in self.alphabet:
                raise ValueError(f"ballot symbol {b!r} not in alphabet")

    def __len__(self) -> int:
        return len(self.ballots)


@dataclass(frozen=True)
class Tally:
    """Ballot counts for every alphabet symbol (zero for absent ones)."""

    alphabet: Alphabet
    counts: tuple[int, ...]  # aligned with alphabet.alternatives

    def count(self, symbol: str) -> int:
        return self.counts[self.alphabet.index(symbol)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alphabet.alternatives, self.counts))


@dataclass(frozen=True)
class CountSignature:
    """Non-tie ballot counts: the profile modulo voter order and tie ballots."""

    alphabet: Alphabet
    counts: tuple[int, ...]  # aligned with alphabet.non_bot

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alphabet.non_bot, self.counts))


@dataclass(frozen=True)
class AltPermutation:
    """Bijection on the alternatives that fixes the tie symbol."""

    alphabet: Alphabet
    mapping: tuple[str, ...]  # image of alphabet.alternatives, positionwise

    def __post_init__(self) -> None:
        if sorted(self.mapping) != sorted(self.alphabet.alternatives):
            raise ValueError("mapping is not a bijection on the alphabet")
        if self.apply(self.alphabet.bot) != self.alphabet.bot:
            raise ValueError("permutation must fix the tie symbol")

    def apply(self, symbol: str) -> str:
        return self.mapping[self.alphabet.index(symbol)]

    @staticmethod
    def identity(alphabet: Alphabet) -> "AltPermutation":
        return AltPermutation(alphabet, alphabet.alternatives)

    @staticmethod
    def swap(alphabet: Alphabet, a: str, b: str) -> "AltPermutation":
        image = {a: b, b: a}
        return AltPermutation(
            alphabet, tuple(image.get(s, s) for s in alphabet.alternatives)
        )

    @staticmethod
    def from_non_bot_images(alphabet: Alphabet, images: tuple[str, ...]) -> "AltPermutation":
        """Permutation sending alphabet.non_bot positionwise onto ``images``."""
        image = dict(zip(alphabet.non_bot, images))
        image[alphabet.bot] = alphabet.bot
        return AltPermutation(alphabet, tuple(image[s] for s in alphabet.alternatives))


@dataclass(frozen=True)
class VoterPermutation:
    """Bijection on voter indices 0..n-1, stored as the image tuple."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a permutation of the voter indices")

    def apply(self, index: int) -> int:
        return self.mapping[index]

    @staticmethod
    def identity(n: int) -> "VoterPermutation":
        return VoterPermutation(tuple(range(n)))


def tally(profile: Profile) -> Tally:
    """Count ballots per alternative."""
    c = Counter(profile.ballots)
    return Tally(profile.alphabet, tuple(c[s] for s in profile.alphabet.alternatives))


def apply_alt_permutation(profile: Profile, perm: AltPermutation) -> Profile:
    """Relabel every ballot through a tie-fixing alternative permutation."""
    if perm.alphabet != profile.alphabet:
        raise ValueError("permutation alphabet differs from profile alphabet")
    return Profile(profile.alphabet, tuple(perm.apply(b) for b in profile.ballots))


def apply_voter_permutation(profile: Profile, perm: VoterPermutation) -> Profile:
    """Reorder ballots: result ballot i is the profile's ballot perm(i)."""
    if len(perm.mapping) != len(profile.ballots):
        raise ValueError("permutation length differs from profile size")
    return Profile(
        profile.alphabet, tuple(profile.ballots[perm.apply(i)] for i in range(len(profile)))
    )


def extend(profile: Profile, symbol: str) -> Profile:
    """Append one ballot for ``symbol`` (a new voter joins with that choice)."""
    if symbol not in profile.alphabet:
        raise ValueError(f"symbol {symbol!r} not in alphabet")
    return Profile(profile.alphabet, profile.ballots + (symbol,))


def signature(profile: Profile) -> CountSignature:
    """Non-tie counts; invariant under voter reordering and tie-ballot insertion."""
    c = Counter(profile.ballots)
    return CountSignature(profile.alphabet, tuple(c[s] for s in profile.alphabet.non_bot))


def strict_plurality(t: Tally) -> str | None:
    """The unique non-tie alternative whose count strictly beats every other.

    Returns None when the top non-tie count is shared or zero.  Tie ballots are
    never compared: they can neither win nor block a strict winner.
    """
    best: str | None = None
    best_count = 0
    tied = False
    for s in t.alphabet.non_bot:
        n = t.count(s)
        if n > best_count:
            best, best_count, tied = s, n, False
        elif n == best_count:
            tied = True
    if best is None or best_count == 0 or tied:
        return None
    return best


def profiles_of_size(alphabet: Alphabet, size: int) -> Iterator[Profile]:
    """All profiles of exactly ``size`` ballots, lexicographic in alphabet order."""
    for ballots in itertools.product(alphabet.alternatives, repeat=size):
        yield Profile(alphabet, ballots)


def profiles_up_to(alphabet: Alphabet, n_max: int) -> Iterator[Profile]:
    """All profiles with at most ``n_max`` ballots, by size then lexicographic."""
    for size in range(n_max + 1):
        yield from profiles_of_size(alphabet, size)


def signatures_up_to(alphabet: Alphabet, horizon: int) -> list[CountSignature]:
    """All count signatures with total at most ``horizon``, by total then lex."""
    k = len(alphabet.non_bot)
    out = []
    for total in range(horizon + 1):
        for counts in itertools.product(range(total + 1), repeat=k):
            if sum(counts) == total:
                out.append(CountSignature(alphabet, counts))
    return out


def profile_for_signature(sig: CountSignature) -> Profile:
    """Lexicographically least tie-free profile with the given signature."""
    ballots: list[str] = []
    for sym, n in zip(sig.alphabet.non_bot, sig.counts):
        ballots.extend([sym] * n)
    ballots.sort(key=sig.alphabet.index)
    return Profile(sig.alphabet, tuple(ballots))
