"""Concrete voting rules behind one uniform evaluator interface.

A rule family maps profiles of any size over a fixed alphabet to a single
alternative, deterministically.  Rules never use floating point: supermajority
thresholds are exact rationals, so equality at the threshold is meaningful.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .core import (
    Alphabet,
    CountSignature,
    HorizonError,
    Profile,
    RuleDomainError,
    Tally,
    signature,
    signatures_up_to,
    strict_plurality,
    tally,
)


class RuleFamily:
    """Deterministic total evaluator from profiles to one alternative."""

    def __init__(self, alphabet: Alphabet, descriptor: str):
        self.alphabet = alphabet
        self.descriptor = descriptor

    def evaluate(self, profile: Profile) -> str:
        raise NotImplementedError

    def _check_profile(self, profile: Profile) -> None:
        if profile.alphabet != self.alphabet:
            raise RuleDomainError(
                f"rule {self.descriptor!r} expects alphabet {self.alphabet.alternatives}"
            )

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"


def pure_majority(profile: Profile) -> str:
    """Strict plurality winner among non-tie alternatives, or the tie symbol."""
    winner = strict_plurality(tally(profile))
    return winner if winner is not None else profile.alphabet.bot


def may_sign_rule(profile: Profile) -> str:
    """Sign of the ballot sum over the {-1, 0, 1} alphabet."""
    if set(profile.alphabet.alternatives) != {"-1", "0", "1"} or profile.alphabet.bot != "0":
        raise RuleDomainError("may-sign requires the {-1, 0, 1} alphabet with tie 0")
    total = sum(int(b) for b in profile.ballots)
    if total > 0:
        return "1"
    if total < 0:
        return "-1"
    return "0"


def quorum_rule(profile: Profile, threshold: int, mode: str) -> str:
    """Tie below a turnout threshold, pure majority at or above it.

    ``literal`` counts every ballot toward the threshold, abstentions included;
    ``participation`` counts only non-tie ballots.  The literal variant is the
    naive reading of a quorum and is not tie-insertion invariant (the audit
    engine exhibits the witness); the participation variant is.
    """
    if threshold < 1:
        raise RuleDomainError("quorum threshold must be at least 1")
    if mode == "literal":
        turnout = len(profile)
    elif mode == "participation":
        turnout = len(profile) - tally(profile).count(profile.alphabet.bot)
    else:
        raise RuleDomainError(f"unknown quorum mode {mode!r}")
    if turnout < threshold:
        return profile.alphabet.bot
    return pure_majority(profile)


def supermajority(profile: Profile, quota: Fraction, denom: str) -> str:
    """Alternative exceeding ``quota`` of the denominator, else the tie symbol.

    ``denom`` is "all" (every ballot counts toward the denominator) or "nonbot"
    (tie ballots excluded).  Comparison is exact; for quota >= 1/2 at most one
    alternative can qualify.  A profile where two alternatives qualify marks the
    configuration ill-formed and is rejected rather than tie-broken.
    """
    if not 0 < quota < 1:
        raise RuleDomainError("supermajority quota must lie strictly between 0 and 1")
    t = tally(profile)
    if denom == "all":
        base = len(profile)
    elif denom == "nonbot":
        base = len(profile) - t.count(profile.alphabet.bot)
    else:
        raise RuleDomainError(f"unknown supermajority denominator {denom!r}")
    qualified = [s for s in profile.alphabet.non_bot if t.count(s) > quota * base]
    if len(qualified) > 1:
        raise RuleDomainError(
            f"quota {quota} with denominator {denom!r} admits two qualifiers: ill-formed"
        )
    return qualified[0] if qualified else profile.alphabet.bot


@dataclass(frozen=True)
class TabulatedFamily:
    """Explicit signature -> alternative table, defined up to a horizon.

    The table must cover every signature with total <= horizon; values are the
    tie symbol or a non-tie alternative.  Evaluating a profile whose signature
    total exceeds the horizon is a hard error, never a silent default.
    """

    alphabet: Alphabet
    horizon: int
    table: Mapping[tuple[int, ...], str]

    def __post_init__(self) -> None:
        expected = {sig.counts for sig in signatures_up_to(self.alphabet, self.horizon)}
        if set(self.table) != expected:
            raise ValueError("table must cover exactly the signatures within the horizon")
        for value in self.table.values():
            if value not in self.alphabet:
                raise ValueError(f"table value {value!r} not in alphabet")

    def value_tuple(self) -> tuple[str, ...]:
        """Values in canonical signature order; the family's identity for sorting."""
        return tuple(
            self.table[sig.counts] for sig in signatures_up_to(self.alphabet, self.horizon)
        )

    def content_id(self) -> str:
        payload = "|".join(self.value_tuple()).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


def tabulated_evaluate(family: TabulatedFamily, profile: Profile) -> str:
    """Table lookup on the profile's count signature."""
    sig = signature(profile)
    if sig.total > family.horizon:
        raise HorizonError(
            f"signature total {sig.total} exceeds family horizon {family.horizon}"
        )
    return family.table[sig.counts]


def signature_tally(sig: CountSignature) -> Tally:
    """Tally with the signature's non-tie counts and zero tie ballots."""
    by_symbol = dict(zip(sig.alphabet.non_bot, sig.counts))
    return Tally(
        sig.alphabet, tuple(by_symbol.get(s, 0) for s in sig.alphabet.alternatives)
    )


def pure_majority_table(alphabet: Alphabet, horizon: int) -> TabulatedFamily:
    """Pure majority restricted to signatures within the horizon."""
    table = {}
    for sig in signatures_up_to(alphabet, horizon):
        winner = strict_plurality(signature_tally(sig))
        table[sig.counts] = winner if winner is not None else alphabet.bot
    return TabulatedFamily(alphabet, horizon, table)


class PureMajorityRule(RuleFamily):
    def __init__(self, alphabet: Alphabet):
        super().__init__(alphabet, "pure-majority")

    def evaluate(self, profile: Profile) -> str:
        self._check_profile(profile)
        return pure_majority(profile)


class MaySignRule(RuleFamily):
    def __init__(self):
        super().__init__(Alphabet.may(), "may-sign")

    def evaluate(self, profile: Profile) -> str:
        return may_sign_rule(profile)


class QuorumRule(RuleFamily):
    def __init__(self, alphabet: Alphabet, threshold: int, mode: str):
        if mode not in ("literal", "participation"):
            raise RuleDomainError(f"unknown quorum mode {mode!r}")
        if threshold < 1:
            raise RuleDomainError("quorum threshold must be at least 1")
        super().__init__(alphabet, f"quorum:{mode}:{threshold}")
        self.threshold = threshold
        self.mode = mode

    def evaluate(self, profile: Profile) -> str:
        self._check_profile(profile)
        return quorum_rule(profile, self.threshold, self.mode)


class SupermajorityRule(RuleFamily):
    def __init__(self, alphabet: Alphabet, quota: Fraction, denom: str):
        if denom not in ("all", "nonbot"):
            raise RuleDomainError(f"unknown supermajority denominator {denom!r}")
        if not 0 < quota < 1:
            raise RuleDomainError("supermajority quota must lie strictly between 0 and 1")
        super().__init__(
            alphabet, f"supermajority:{denom}:{quota.numerator}/{quota.denominator}"
        )
        self.quota = quota
        self.denom = denom

    def evaluate(self, profile: Profile) -> str:
        self._check_profile(profile)
        return supermajority(profile, self.quota, self.denom)


class TabulatedRule(RuleFamily):
    def __init__(self, family: TabulatedFamily, descriptor: str | None = None):
        if descriptor is None:
            descriptor = f"tabulated:sha256:{family.content_id()}"
        super().__init__(family.alphabet, descriptor)
        self.family = family

    def evaluate(self, profile: Profile) -> str:
        self._check_profile(profile)
        return tabulated_evaluate(self.family, profile)


class FunctionRule(RuleFamily):
    """Wrap an arbitrary evaluator; used for ad-hoc and counterexample rules."""

    def __init__(self, alphabet: Alphabet, fn: Callable[[Profile], str], descriptor: str):
        super().__init__(alphabet, descriptor)
        self._fn = fn

    def evaluate(self, profile: Profile) -> str:
        self._check_profile(profile)
        return self._fn(profile)
