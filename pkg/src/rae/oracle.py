"""Exhaustive reference enumeration for small frameworks.

Scans every subset of arguments (no pruning, no candidate generation) and
keeps those satisfying the defining predicate of the requested semantics.
The set-attack relation is taken from the framework primitive; the predicate
checks below re-state the acceptability definitions directly on top of it,
independently of the optimized enumerator's search.
"""

from __future__ import annotations

from .errors import CapacityError
from .framework import AAF, BAF, Argument, attacked_from
from .semantics import ExtensionSet, Semantics, _bits

ORACLE_MAX_ARGUMENTS = 16


class _Relation:
    """Set-attack closure and supports of a BAF as bitmask rows."""

    def __init__(self, f: BAF):
        self.order: list[Argument] = sorted(f.arguments, key=f.name_of)
        pos = {a: k for k, a in enumerate(self.order)}
        self.n = len(self.order)
        self.attacks_of = [0] * self.n
        for k, a in enumerate(self.order):
            for b in attacked_from(f, a):
                self.attacks_of[k] |= 1 << pos[b]
        self.attackers_of = [0] * self.n
        for k in range(self.n):
            for t in _bits(self.attacks_of[k]):
                self.attackers_of[t] |= 1 << k
        self.supporters_of = [0] * self.n
        for a, b in f.supports:
            self.supporters_of[pos[b]] |= 1 << pos[a]
        self.support_targets_of = [0] * self.n
        for a, b in f.supports:
            self.support_targets_of[pos[a]] |= 1 << pos[b]

    def conflict_free(self, x: int) -> bool:
        return not any(self.attacks_of[a] & x for a in _bits(x))

    def defends_all(self, x: int) -> bool:
        for a in _bits(x):
            for attacker in _bits(self.attackers_of[a]):
                if not x & self.attackers_of[attacker]:
                    return False
        return True

    def safe(self, x: int) -> bool:
        for victim in range(self.n):
            if self.attackers_of[victim] & x:  # x set-attacks victim
                if (x >> victim) & 1 or self.supporters_of[victim] & x:
                    return False
        return True

    def closed(self, x: int) -> bool:
        return all(not (self.support_targets_of[a] & ~x) for a in _bits(x))

    def stable(self, x: int) -> bool:
        if not self.conflict_free(x):
            return False
        outside = ((1 << self.n) - 1) & ~x
        return all(self.attackers_of[y] & x for y in _bits(outside))


def _keep_maximal(masks: list[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in masks:
        if not any(k | m == k for k in kept):
            kept.append(m)
    return kept


def brute_force_extensions(f: BAF, sem: Semantics) -> ExtensionSet:
    """Every extension under `sem`, by scanning all 2^n argument subsets."""
    if len(f.arguments) > ORACLE_MAX_ARGUMENTS:
        raise CapacityError(
            f"oracle limit is {ORACLE_MAX_ARGUMENTS} arguments, got {len(f.arguments)}"
        )
    rel = _Relation(f)

    if sem is Semantics.STABLE:
        accepted = [x for x in range(1 << rel.n) if rel.stable(x)]
    else:
        if sem is Semantics.D_PREFERRED:
            admissible = lambda x: rel.conflict_free(x) and rel.defends_all(x)
        elif sem is Semantics.S_PREFERRED:
            admissible = lambda x: rel.safe(x) and rel.defends_all(x)
        else:
            admissible = lambda x: (
                rel.conflict_free(x) and rel.closed(x) and rel.defends_all(x)
            )
        accepted = _keep_maximal([x for x in range(1 << rel.n) if admissible(x)])

    extensions = [frozenset(rel.order[k] for k in _bits(x)) for x in accepted]
    keyed = sorted(extensions, key=lambda e: (-len(e), tuple(sorted(f.name_of(a) for a in e))))
    return ExtensionSet(extensions=tuple(keyed))


def brute_force_preferred_aaf(f: AAF) -> ExtensionSet:
    """Every preferred extension of an abstract framework, by subset scan."""
    if len(f.arguments) > ORACLE_MAX_ARGUMENTS:
        raise CapacityError(
            f"oracle limit is {ORACLE_MAX_ARGUMENTS} arguments, got {len(f.arguments)}"
        )
    order = sorted(f.arguments, key=repr)
    pos = {a: k for k, a in enumerate(order)}
    n = len(order)
    attacks_of = [0] * n
    attackers_of = [0] * n
    for a, b in f.attacks:
        attacks_of[pos[a]] |= 1 << pos[b]
        attackers_of[pos[b]] |= 1 << pos[a]

    def admissible(x: int) -> bool:
        if any(attacks_of[a] & x for a in _bits(x)):
            return False
        for a in _bits(x):
            for attacker in _bits(attackers_of[a]):
                if not x & attackers_of[attacker]:
                    return False
        return True

    accepted = _keep_maximal([x for x in range(1 << n) if admissible(x)])
    extensions = [frozenset(order[k] for k in _bits(x)) for x in accepted]
    keyed = sorted(extensions, key=lambda e: (-len(e), tuple(sorted(repr(a) for a in e))))
    return ExtensionSet(extensions=tuple(keyed))
