"""Exhaustive enumeration of rule families satisfying axiom sets, and the
conclusiveness order among rules with maximality checks.

Both enumerators are backtrackers over canonical domains (count triples for
the two-option setting, count signatures for the general one) and emit
canonically sorted, deterministic family sets.  Enumerator output is meant to
be cross-checked against the raw-profile checkers in :mod:`votelab.axioms`,
which are implemented independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    Alphabet,
    BoundError,
    Profile,
    VoteLabError,
    profiles_up_to,
    signatures_up_to,
    strict_plurality,
)
from .rules import FunctionRule, RuleFamily, TabulatedFamily, signature_tally
from . import axioms

MAY_VALUES = (-1, 0, 1)


@dataclass(frozen=True)
class MayFunctionTable:
    """Group decision function for exactly n voters, on ballot-count triples.

    Keys are (count of -1, count of 0, count of 1) with the counts summing to
    n; symmetry holds structurally because the domain forgets voter order.
    """

    n: int
    table: dict[tuple[int, int, int], int]

    def __post_init__(self) -> None:
        expected = set(_count_triples(self.n))
        if set(self.table) != expected:
            raise ValueError("table must cover every count triple")
        for v in self.table.values():
            if v not in MAY_VALUES:
                raise ValueError(f"table value {v!r} not in {MAY_VALUES}")

    def value_tuple(self) -> tuple[int, ...]:
        return tuple(self.table[t] for t in _count_triples(self.n))

    def as_rule(self) -> RuleFamily:
        alphabet = Alphabet.may()

        def run(profile: Profile) -> str:
            if len(profile) != self.n:
                raise VoteLabError(
                    f"table is for exactly {self.n} voters, got {len(profile)}"
                )
            counts = (
                profile.ballots.count("-1"),
                profile.ballots.count("0"),
                profile.ballots.count("1"),
            )
            return str(self.table[counts])

        return FunctionRule(alphabet, run, f"may-table:n{self.n}:{self.value_tuple()}")

    @staticmethod
    def sign_table(n: int) -> "MayFunctionTable":
        """The majority-by-sign rule: compare the +1 and -1 counts."""
        table = {}
        for m, z, p in _count_triples(n):
            table[(m, z, p)] = (p > m) - (p < m)
        return MayFunctionTable(n, table)


def _count_triples(n: int) -> list[tuple[int, int, int]]:
    return [
        (m, z, n - m - z) for m in range(n + 1) for z in range(n - m + 1)
    ]


def _may_moves(n: int, semantics: str) -> list[tuple[tuple[int, int, int], tuple[int, int, int], int]]:
    """Single-voter moves (source triple, target triple, move direction)."""
    if semantics == "flip":
        transitions = [(-1, 1), (1, -1)]
    elif semantics == "in_favor":
        transitions = [(u, w) for u in MAY_VALUES for w in MAY_VALUES if u != w]
    else:
        raise VoteLabError(f"unknown Ma4 semantics {semantics!r}")
    slot = {-1: 0, 0: 1, 1: 2}
    moves = []
    for t in _count_triples(n):
        for u, w in transitions:
            if t[slot[u]] == 0:
                continue
            target = list(t)
            target[slot[u]] -= 1
            target[slot[w]] += 1
            direction = 1 if w > u else -1
            moves.append((t, tuple(target), direction))
    return moves


def enumerate_may_functions(
    n: int, semantics: str = "in_favor", max_n: int = 4
) -> tuple[MayFunctionTable, ...]:
    """All n-voter tables satisfying symmetry, neutrality and positive
    responsiveness under the chosen responsiveness semantics.

    Symmetry is structural (count-triple domain).  Neutrality pins the
    self-negating triples to 0 and mirrors the rest, so the search branches
    only on the positive side; responsiveness constraints prune as soon as
    both endpoints of a move are determined.  Every emitted table is
    re-checked against the raw-profile checkers.
    """
    if not 1 <= n <= max_n:
        raise BoundError(f"voter count {n} outside enumeration bound 1..{max_n}")
    triples = _count_triples(n)
    mirror = {t: (t[2], t[1], t[0]) for t in triples}
    free = [t for t in triples if t[2] > t[0]]  # positive side; rest follows
    moves = _may_moves(n, semantics)

    assignment: dict[tuple[int, int, int], int] = {
        t: 0 for t in triples if t[0] == t[2]
    }
    found: list[MayFunctionTable] = []

    def consistent(t: tuple[int, int, int]) -> bool:
        for src, dst, direction in moves:
            if src != t and dst != t:
                continue
            if src not in assignment or dst not in assignment:
                continue
            if assignment[src] in (0, direction) and assignment[dst] != direction:
                return False
        return True

    def assign(t: tuple[int, int, int], value: int) -> bool:
        assignment[t] = value
        assignment[mirror[t]] = -value
        if consistent(t) and consistent(mirror[t]):
            return True
        return False

    def undo(t: tuple[int, int, int]) -> None:
        del assignment[t]
        if mirror[t] in assignment:
            del assignment[mirror[t]]

    def backtrack(idx: int) -> None:
        if idx == len(free):
            found.append(MayFunctionTable(n, dict(assignment)))
            return
        t = free[idx]
        for value in MAY_VALUES:
            if assign(t, value):
                backtrack(idx + 1)
            undo(t)

    backtrack(0)
    found.sort(key=MayFunctionTable.value_tuple)
    for table in found:
        _cross_check_may(table, semantics)
    return tuple(found)


def _cross_check_may(table: MayFunctionTable, semantics: str) -> None:
    """Independent route: the raw-profile checkers must agree with the
    table-level enumeration constraints."""
    rule = table.as_rule()
    for res in (
        axioms.check_ma2(rule, table.n),
        axioms.check_ma3(rule, table.n),
        axioms.check_ma4(rule, table.n, semantics),
    ):
        if not res.passed:
            raise VoteLabError(
                f"enumerated table {table.value_tuple()} fails {res.axiom}: "
                "enumerator and checker disagree"
            )


@dataclass(frozen=True)
class FamilySet:
    """Canonically ordered, pairwise distinct tabulated families."""

    alphabet: Alphabet
    horizon: int
    families: tuple[TabulatedFamily, ...]

    def __post_init__(self) -> None:
        values = [f.value_tuple() for f in self.families]
        if sorted(values) != values or len(set(values)) != len(values):
            raise ValueError("families must be sorted and pairwise distinct")


def _coordinate_permutations(k: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(k)))


def _permute_counts(counts: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    # perm sends coordinate i to coordinate perm[i]
    out = [0] * len(counts)
    for i, c in enumerate(counts):
        out[perm[i]] = c
    return tuple(out)


def enumerate_c_families(
    alphabet: Alphabet,
    horizon: int,
    with_c6: bool = False,
    max_horizon: int = 8,
) -> FamilySet:
    """All tabulated families within the horizon satisfying the consistency
    axioms structurally.

    Anonymity and tie-ballot invariance hold by the signature domain.
    Neutrality constrains the table along orbits of the non-tie coordinate
    permutations (values relabel along); in particular any signature fixed by
    a swap can only map to the tie symbol or an alternative that swap fixes,
    which forces the empty signature to the tie outcome.  Consistency is the
    forward closure f(s) = x != tie  =>  f(s + one x) = x whenever the target
    stays within the horizon.  With ``with_c6``, every tie-valued signature
    with total <= horizon - 1 must have a conclusive one-step extension.

    Signatures are visited in nondecreasing total order so the consistency
    constraint propagates forward only and prunes early.
    """
    k = len(alphabet.non_bot)
    if not 2 <= k <= 3:
        raise BoundError("family enumeration supports 2 or 3 non-tie alternatives")
    if not 0 <= horizon <= max_horizon:
        raise BoundError(f"horizon {horizon} outside bound 0..{max_horizon}")

    sigs = [s.counts for s in signatures_up_to(alphabet, horizon)]
    position = {s: i for i, s in enumerate(sigs)}
    perms = _coordinate_permutations(k)
    non_bot = alphabet.non_bot
    bot = alphabet.bot

    def permute_value(value: str, perm: tuple[int, ...]) -> str:
        if value == bot:
            return bot
        return non_bot[perm[non_bot.index(value)]]

    orbit_rep: dict[tuple[int, ...], tuple[int, ...]] = {}
    stabilizer_allowed: dict[tuple[int, ...], list[str]] = {}
    rep_map_perm: dict[tuple[int, ...], tuple[int, ...]] = {}
    for s in sigs:
        images = [_permute_counts(s, p) for p in perms]
        rep = min(images)
        orbit_rep[s] = rep
        if rep == s:
            stab = [p for p in perms if _permute_counts(s, p) == s]
            allowed = [bot] + [
                v for v in non_bot if all(permute_value(v, p) == v for p in stab)
            ]
            stabilizer_allowed[s] = allowed
        else:
            for p in perms:
                if _permute_counts(rep, p) == s:
                    rep_map_perm[s] = p
                    break

    assignment: list[str | None] = [None] * len(sigs)
    families: list[TabulatedFamily] = []

    def forced_value(s: tuple[int, ...]) -> str | None:
        forced: str | None = None
        for j, sym in enumerate(non_bot):
            if s[j] == 0:
                continue
            pred = s[:j] + (s[j] - 1,) + s[j + 1:]
            pv = assignment[position[pred]]
            if pv == sym:
                if forced is None:
                    forced = sym
                elif forced != sym:
                    return "__conflict__"
        return forced

    def passes_c6(table: dict[tuple[int, ...], str]) -> bool:
        for s in sigs:
            if sum(s) > horizon - 1 or table[s] != bot:
                continue
            if not any(
                table[s[:j] + (s[j] + 1,) + s[j + 1:]] != bot for j in range(k)
            ):
                return False
        return True

    def backtrack(idx: int) -> None:
        if idx == len(sigs):
            table = {s: assignment[position[s]] for s in sigs}
            if with_c6 and not passes_c6(table):
                return
            families.append(TabulatedFamily(alphabet, horizon, table))
            return
        s = sigs[idx]
        forced = forced_value(s)
        if forced == "__conflict__":
            return
        if orbit_rep[s] == s:
            candidates = stabilizer_allowed[s]
            if forced is not None:
                candidates = [forced] if forced in candidates else []
        else:
            rep_value = assignment[position[orbit_rep[s]]]
            determined = permute_value(rep_value, rep_map_perm[s])
            candidates = [determined] if forced in (None, determined) else []
        for value in candidates:
            assignment[idx] = value
            backtrack(idx + 1)
            assignment[idx] = None

    backtrack(0)
    families.sort(key=TabulatedFamily.value_tuple)
    return FamilySet(alphabet, horizon, tuple(families))


def rule_leq(f: RuleFamily, g: RuleFamily, n_max: int) -> tuple[bool, Profile | None]:
    """Whether f is at most g: wherever f is conclusive, g agrees.

    On failure returns the minimal profile (smallest size, lexicographically
    first) where f is conclusive and differs from g.
    """
    if f.alphabet != g.alphabet:
        raise VoteLabError("rules must share an alphabet to be compared")
    bot = f.alphabet.bot
    for p in profiles_up_to(f.alphabet, n_max):
        fv = f.evaluate(p)
        if fv == bot:
            continue
        if fv != g.evaluate(p):
            return False, p
    return True, None


def _table_leq(f: TabulatedFamily, g: TabulatedFamily) -> bool:
    bot = f.alphabet.bot
    return all(v == bot or v == g.table[s] for s, v in f.table.items())


def maximal_elements(family_set: FamilySet) -> tuple[TabulatedFamily, ...]:
    """Families with nothing strictly above them in the set.

    f is strictly below g when f is at most g and the tables differ; the
    comparison runs over the set's common horizon.
    """
    values = [f.value_tuple() for f in family_set.families]
    out = []
    for i, f in enumerate(family_set.families):
        dominated = any(
            values[j] != values[i] and _table_leq(f, g)
            for j, g in enumerate(family_set.families)
        )
        if not dominated:
            out.append(f)
    return tuple(out)


def plurality_artifacts(
    family_set: FamilySet,
) -> list[tuple[TabulatedFamily, tuple[int, ...]]]:
    """Families conclusive against the strict count winner, with the first
    offending signature.

    The equalize-then-swap argument pins conclusive values only while the
    equalized signature stays within the horizon, i.e. for totals up to half
    the horizon; offenders above that boundary are horizon artifacts of the
    truncation, not counterexamples, and are reported separately.
    """
    out = []
    for fam in family_set.families:
        for sig in signatures_up_to(family_set.alphabet, family_set.horizon):
            value = fam.table[sig.counts]
            if value == family_set.alphabet.bot:
                continue
            if strict_plurality(signature_tally(sig)) != value:
                out.append((fam, sig.counts))
                break
    return out
