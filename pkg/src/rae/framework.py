"""Argument graphs and their relational primitives.

A scenario maps to a bipolar framework whose arguments are the models and
their counterfactuals. Attacks encode prediction disagreement and validity
conflicts, directed by the model preference; supports tie each model to its
own counterfactual (and back). An equivalent abstract framework pairs each
model with its counterfactual into a single argument.

The set-attack primitive traverses support chains generically (BFS over the
support relation on both sides of each attack edge) rather than exploiting
the pair shape, so it stays correct for any bipolar graph:

* direct attack:    one attack edge,
* indirect attack:  one attack edge followed by one or more support edges,
* supported attack: one or more support edges followed by one attack edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .scenario import PreferenceRanking, Scenario


class ArgKind(Enum):
    MODEL = "model"
    COUNTERFACTUAL = "counterfactual"


@dataclass(frozen=True)
class Argument:
    kind: ArgKind
    index: int


Edge = tuple[Argument, Argument]


@dataclass(frozen=True)
class BAF:
    arguments: frozenset[Argument]
    attacks: frozenset[Edge]
    supports: frozenset[Edge]
    model_ids: tuple[str, ...]
    counterfactual_ids: tuple[str, ...]

    def name_of(self, a: Argument) -> str:
        if a.kind is ArgKind.MODEL:
            return self.model_ids[a.index]
        return self.counterfactual_ids[a.index]

    def names(self, args: Iterable[Argument]) -> frozenset[str]:
        return frozenset(self.name_of(a) for a in args)


@dataclass(frozen=True)
class AAF:
    """Plain attack graph over hashable arguments (pair tuples in our use)."""

    arguments: frozenset
    attacks: frozenset


def model_arg(i: int) -> Argument:
    return Argument(ArgKind.MODEL, i)


def ce_arg(i: int) -> Argument:
    return Argument(ArgKind.COUNTERFACTUAL, i)


def build_baf(s: Scenario, pref: PreferenceRanking) -> BAF:
    """Bipolar framework for a scenario under a model preference.

    Attack rules (rank(i) is the preference rank of model i):
      * (M_i, M_j) iff predictions on x differ and rank(i) >= rank(j);
      * where M_i(c_j) = M_i(x): (M_i, c_j) iff rank(i) >= rank(j) and
        (c_j, M_i) iff rank(j) >= rank(i).
    Supports are exactly the reciprocal (M_i, c_i) pairs.
    """
    n = len(s.models)
    args = frozenset(model_arg(i) for i in range(n)) | frozenset(ce_arg(i) for i in range(n))
    rank = [pref.rank[m.id] for m in s.models]
    preds = [m.prediction for m in s.models]

    attacks: set[Edge] = set()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if preds[i] != preds[j] and rank[i] >= rank[j]:
                attacks.add((model_arg(i), model_arg(j)))
    for i in range(n):
        mid = s.models[i].id
        for j in range(n):
            if s.counterfactuals[j].predictions[mid] == preds[i]:
                if rank[i] >= rank[j]:
                    attacks.add((model_arg(i), ce_arg(j)))
                if rank[j] >= rank[i]:
                    attacks.add((ce_arg(j), model_arg(i)))

    supports: set[Edge] = set()
    for i in range(n):
        supports.add((model_arg(i), ce_arg(i)))
        supports.add((ce_arg(i), model_arg(i)))

    return BAF(
        arguments=args,
        attacks=frozenset(attacks),
        supports=frozenset(supports),
        model_ids=s.model_ids(),
        counterfactual_ids=s.counterfactual_ids(),
    )


def build_aaf(s: Scenario, pref: PreferenceRanking) -> AAF:
    """Abstract framework over (model, counterfactual) pair arguments.

    Pair i attacks pair j iff rank(i) >= rank(j) and at least one of:
    predictions on x differ, M_i(c_j) = M_i(x), or M_j(c_i) = M_j(x).
    """
    n = len(s.models)
    pairs = [(s.models[i].id, s.counterfactuals[i].id) for i in range(n)]
    rank = [pref.rank[m.id] for m in s.models]
    preds = [m.prediction for m in s.models]

    attacks = set()
    for i in range(n):
        for j in range(n):
            if i == j or rank[i] < rank[j]:
                continue
            disagree = preds[i] != preds[j]
            i_rejects_cj = s.counterfactuals[j].predictions[s.models[i].id] == preds[i]
            j_rejects_ci = s.counterfactuals[i].predictions[s.models[j].id] == preds[j]
            if disagree or i_rejects_cj or j_rejects_ci:
                attacks.add((pairs[i], pairs[j]))

    return AAF(arguments=frozenset(pairs), attacks=frozenset(attacks))


# ---------------------------------------------------------------------------
# relational primitives


@lru_cache(maxsize=256)
def _adjacency(f: BAF):
    att: dict[Argument, tuple[Argument, ...]] = {}
    sup: dict[Argument, tuple[Argument, ...]] = {}
    for a, b in f.attacks:
        att.setdefault(a, ())
        att[a] = att[a] + (b,)
    for a, b in f.supports:
        sup.setdefault(a, ())
        sup[a] = sup[a] + (b,)
    return att, sup


def _support_closure(sup: dict, start: Argument) -> set[Argument]:
    """Arguments reachable from `start` via one or more support edges."""
    out: set[Argument] = set()
    queue = deque(sup.get(start, ()))
    while queue:
        v = queue.popleft()
        if v in out:
            continue
        out.add(v)
        queue.extend(sup.get(v, ()))
    return out


@lru_cache(maxsize=65536)
def attacked_from(f: BAF, a: Argument) -> frozenset[Argument]:
    """All arguments reached from `a` by a direct, indirect or supported attack."""
    att, sup = _adjacency(f)
    out: set[Argument] = set()
    for target in att.get(a, ()):
        out.add(target)
        out |= _support_closure(sup, target)  # indirect: attack then supports
    for via in _support_closure(sup, a):  # supported: supports then attack
        out.update(att.get(via, ()))
    return frozenset(out)


def set_attacks(f: BAF, attackers: Iterable[Argument], target: Argument) -> bool:
    return any(target in attacked_from(f, a) for a in attackers)


def set_supports(f: BAF, supporters: Iterable[Argument], target: Argument) -> bool:
    """Direct supports only; support chains deliberately do not count."""
    return any((a, target) in f.supports for a in supporters)


def is_conflict_free(f: BAF, args: Iterable[Argument]) -> bool:
    members = set(args)
    return not any(b in attacked_from(f, a) for a in members for b in members)


def is_safe(f: BAF, args: Iterable[Argument]) -> bool:
    """No argument is both set-attacked by X and supported by X or inside X."""
    members = set(args)
    attacked: set[Argument] = set()
    for a in members:
        attacked |= attacked_from(f, a)
    for victim in attacked:
        if victim in members or set_supports(f, members, victim):
            return False
    return True


def is_closed_for_support(f: BAF, args: Iterable[Argument]) -> bool:
    members = set(args)
    return all(b in members for a, b in f.supports if a in members)


def defends(f: BAF, args: Iterable[Argument], target: Argument) -> bool:
    members = set(args)
    for attacker in f.arguments:
        if target in attacked_from(f, attacker):
            if not any(attacker in attacked_from(f, d) for d in members):
                return False
    return True


def to_dot(f: BAF) -> str:
    """Debug rendering; attack edges are labelled "-", supports "+"."""
    lines = ["digraph baf {"]
    for a in sorted(f.arguments, key=f.name_of):
        shape = "box" if a.kind is ArgKind.MODEL else "ellipse"
        lines.append(f'  "{f.name_of(a)}" [shape={shape}];')
    for a, b in sorted(f.attacks, key=lambda e: (f.name_of(e[0]), f.name_of(e[1]))):
        lines.append(f'  "{f.name_of(a)}" -> "{f.name_of(b)}" [label="-" color=red];')
    for a, b in sorted(f.supports, key=lambda e: (f.name_of(e[0]), f.name_of(e[1]))):
        lines.append(f'  "{f.name_of(a)}" -> "{f.name_of(b)}" [label="+" color=green];')
    lines.append("}")
    return "\n".join(lines)
