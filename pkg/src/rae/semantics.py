"""Extension enumeration for bipolar and abstract frameworks.

The enumerator works from the single-argument set-attack closure (computed
with the framework primitive `attacked_from`). Every candidate extension must
be conflict-free, i.e. an independent set of the symmetrised conflict graph,
so candidates are generated by Bron-Kerbosch enumeration of maximal
independent sets. Within one conflict-free set the admissible subsets are
closed under union, hence each maximal independent set T carries a unique
largest admissible subset, obtained by repeatedly discarding undefended
members (a greatest-fixpoint shrink). Every subset-maximal admissible set is
the fixpoint of some maximal independent superset, so collecting the
fixpoints and keeping the subset-maximal ones yields exactly the preferred
family. Stable extensions are conflict-free sets attacking everything
outside; such sets are always subset-maximal admissible, so they are found by
filtering the d-preferred family.

For the safe/closed semantics the same search runs over model/counterfactual
pairs: maximal extensions under those semantics contain a model iff they
contain its counterfactual, and for pair-complete sets conflict at pair level
coincides with conflict at argument level. Results are verified against the
framework predicates before being returned, and certified by the brute-force
oracle at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CapacityError
from .framework import AAF, BAF, ArgKind, Argument, attacked_from
from . import framework

DEFAULT_MAX_ARGUMENTS = 64


class Semantics(Enum):
    STABLE = "stable"
    D_PREFERRED = "d-preferred"
    S_PREFERRED = "s-preferred"
    C_PREFERRED = "c-preferred"


def parse_semantics(text: str) -> Semantics:
    for sem in Semantics:
        if sem.value == text:
            return sem
    raise ValueError(f"unknown semantics {text!r}; expected one of "
                     f"{', '.join(s.value for s in Semantics)}")


@dataclass(frozen=True)
class ExtensionSet:
    """Canonically ordered family of extensions (size desc, then member ids)."""

    extensions: tuple[frozenset, ...]

    def as_sets(self) -> set[frozenset]:
        return set(self.extensions)

    def __len__(self) -> int:
        return len(self.extensions)


# ---------------------------------------------------------------------------
# predicate layer (full definitions, via the framework primitives)


def is_d_admissible(f: BAF, ext) -> bool:
    members = set(ext)
    return framework.is_conflict_free(f, members) and all(
        framework.defends(f, members, a) for a in members
    )


def is_s_admissible(f: BAF, ext) -> bool:
    members = set(ext)
    return framework.is_safe(f, members) and all(
        framework.defends(f, members, a) for a in members
    )


def is_c_admissible(f: BAF, ext) -> bool:
    members = set(ext)
    return (
        framework.is_conflict_free(f, members)
        and framework.is_closed_for_support(f, members)
        and all(framework.defends(f, members, a) for a in members)
    )


def is_stable(f: BAF, ext) -> bool:
    members = set(ext)
    return framework.is_conflict_free(f, members) and all(
        framework.set_attacks(f, members, outside)
        for outside in f.arguments
        if outside not in members
    )


# ---------------------------------------------------------------------------
# bitmask machinery


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Index:
    """Bitmask view of a BAF: closure matrix, supports, pair structure."""

    def __init__(self, f: BAF):
        models = sorted((a for a in f.arguments if a.kind is ArgKind.MODEL), key=lambda a: a.index)
        ces = sorted((a for a in f.arguments if a.kind is ArgKind.COUNTERFACTUAL), key=lambda a: a.index)
        self.f = f
        self.order: list[Argument] = models + ces
        self.pos = {a: k for k, a in enumerate(self.order)}
        self.n = len(self.order)
        self.n_models = len(models)

        self.attacked = [0] * self.n  # attacked[k]: closure targets of argument k
        for k, a in enumerate(self.order):
            mask = 0
            for b in attacked_from(f, a):
                mask |= 1 << self.pos[b]
            self.attacked[k] = mask
        self.attackers = [0] * self.n  # attackers[t]: arguments whose closure hits t
        for k in range(self.n):
            for t in _bits(self.attacked[k]):
                self.attackers[t] |= 1 << k

        self.support_out = [0] * self.n
        self.support_in = [0] * self.n
        for a, b in f.supports:
            self.support_out[self.pos[a]] |= 1 << self.pos[b]
            self.support_in[self.pos[b]] |= 1 << self.pos[a]

    def pair_partner(self) -> list[int]:
        """partner[k] for the reciprocal model/counterfactual pair shape."""
        partner = [-1] * self.n
        for a, b in self.f.supports:
            pa, pb = self.pos[a], self.pos[b]
            if partner[pa] not in (-1, pb):
                raise ValueError("support relation is not a reciprocal pairing")
            partner[pa] = pb
        for k, p in enumerate(partner):
            if p == -1 or partner[p] != k:
                raise ValueError("support relation is not a reciprocal pairing")
        return partner

    def to_argument_set(self, mask: int) -> frozenset[Argument]:
        return frozenset(self.order[k] for k in _bits(mask))


def _maximal_independent_sets(conflict: list[int], n: int) -> list[int]:
    """Bron-Kerbosch with pivoting, run on the complement graph."""
    if n == 0:
        return [0]
    full = (1 << n) - 1
    comp = [full & ~conflict[i] & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda v: (p & comp[v]).bit_count())
        for v in _bits(p & ~comp[pivot]):
            vbit = 1 << v
            expand(r | vbit, p & comp[v], x & comp[v])
            p &= ~vbit
            x |= vbit

    expand(0, full, 0)
    return out


def _greatest_admissible_subset(start: int, attackers: list[int]) -> int:
    """Shrink a conflict-free mask to its largest self-defending subset."""
    current = start
    while True:
        kept = 0
        for a in _bits(current):
            if all(current & attackers[b] for b in _bits(attackers[a])):
                kept |= 1 << a
        if kept == current:
            return current
        current = kept


def _subset_maximal(masks: list[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(k | m == k for k in kept):
            kept.append(m)
    return kept


# mask-level checks used to verify candidates before returning them


def _mask_conflict_free(idx: _Index, x: int) -> bool:
    return not any(idx.attacked[a] & x for a in _bits(x))


def _mask_defends_all(idx: _Index, x: int) -> bool:
    return all(
        all(x & idx.attackers[b] for b in _bits(idx.attackers[a]))
        for a in _bits(x)
    )


def _mask_safe(idx: _Index, x: int) -> bool:
    for y in range(idx.n):
        if idx.attackers[y] & x:  # X set-attacks y
            if (x >> y) & 1 or (idx.support_in[y] & x):
                return False
    return True


def _mask_closed(idx: _Index, x: int) -> bool:
    return all(not (idx.support_out[a] & ~x) for a in _bits(x))


def _mask_stable(idx: _Index, x: int) -> bool:
    if not _mask_conflict_free(idx, x):
        return False
    outside = ((1 << idx.n) - 1) & ~x
    return all(idx.attackers[y] & x for y in _bits(outside))


# ---------------------------------------------------------------------------
# enumeration


def _d_preferred_masks(idx: _Index) -> list[int]:
    conflict = [
        (idx.attacked[k] | idx.attackers[k]) & ~(1 << k) for k in range(idx.n)
    ]
    candidates = [
        _greatest_admissible_subset(mis, idx.attackers)
        for mis in _maximal_independent_sets(conflict, idx.n)
    ]
    verified = [
        c for c in set(candidates) if _mask_conflict_free(idx, c) and _mask_defends_all(idx, c)
    ]
    return _subset_maximal(verified)


def _pair_candidate_masks(idx: _Index) -> list[int]:
    partner = idx.pair_partner()
    m = idx.n_models
    member_mask = [(1 << p) | (1 << partner[p]) for p in range(m)]

    # pair q attacks pair p iff the closure of either member of q hits a member of p
    pair_attackers = [0] * m
    pair_conflict = [0] * m
    outgoing = [idx.attacked[p] | idx.attacked[partner[p]] for p in range(m)]
    for q in range(m):
        for p in range(m):
            if p == q:
                continue
            if outgoing[q] & member_mask[p]:
                pair_attackers[p] |= 1 << q
                pair_conflict[p] |= 1 << q
                pair_conflict[q] |= 1 << p

    candidates = {
        _greatest_admissible_subset(mis, pair_attackers)
        for mis in _maximal_independent_sets(pair_conflict, m)
    }
    out = []
    for pairs in candidates:
        mask = 0
        for p in _bits(pairs):
            mask |= member_mask[p]
        out.append(mask)
    return out


def enumerate_extensions(f: BAF, sem: Semantics, max_arguments: int | None = None) -> ExtensionSet:
    """All extensions of the framework under the given semantics.

    Deterministic: identical input yields the identical canonical ordering.
    Raises CapacityError above the configured argument budget.
    """
    limit = DEFAULT_MAX_ARGUMENTS if max_arguments is None else max_arguments
    if len(f.arguments) > limit:
        raise CapacityError(
            f"framework has {len(f.arguments)} arguments, enumeration limit is {limit}"
        )
    idx = _Index(f)

    if sem in (Semantics.D_PREFERRED, Semantics.STABLE):
        masks = _d_preferred_masks(idx)
        if sem is Semantics.STABLE:
            masks = [x for x in masks if _mask_stable(idx, x)]
    else:
        candidates = _pair_candidate_masks(idx)
        if sem is Semantics.S_PREFERRED:
            ok = lambda x: _mask_safe(idx, x) and _mask_defends_all(idx, x)
        else:
            ok = lambda x: (
                _mask_conflict_free(idx, x)
                and _mask_closed(idx, x)
                and _mask_defends_all(idx, x)
            )
        masks = _subset_maximal([x for x in set(candidates) if ok(x)])

    extensions = [idx.to_argument_set(x) for x in masks]
    return _canonical(f, extensions)


def _canonical(f: BAF, extensions: list[frozenset[Argument]]) -> ExtensionSet:
    keyed = sorted(extensions, key=lambda e: (-len(e), tuple(sorted(f.name_of(a) for a in e))))
    return ExtensionSet(extensions=tuple(keyed))


# ---------------------------------------------------------------------------
# abstract frameworks


def enumerate_preferred_aaf(f: AAF, max_arguments: int | None = None) -> ExtensionSet:
    """All subset-maximal admissible sets of an abstract framework."""
    limit = DEFAULT_MAX_ARGUMENTS if max_arguments is None else max_arguments
    if len(f.arguments) > limit:
        raise CapacityError(
            f"framework has {len(f.arguments)} arguments, enumeration limit is {limit}"
        )
    order = sorted(f.arguments, key=repr)
    pos = {a: k for k, a in enumerate(order)}
    n = len(order)
    attackers = [0] * n
    attacked = [0] * n
    for a, b in f.attacks:
        attacked[pos[a]] |= 1 << pos[b]
        attackers[pos[b]] |= 1 << pos[a]

    conflict = [(attacked[k] | attackers[k]) & ~(1 << k) for k in range(n)]
    candidates = {
        _greatest_admissible_subset(mis, attackers)
        for mis in _maximal_independent_sets(conflict, n)
    }
    verified = []
    for x in candidates:
        if any(attacked[a] & x for a in _bits(x)):
            continue
        if all(all(x & attackers[b] for b in _bits(attackers[a])) for a in _bits(x)):
            verified.append(x)
    masks = _subset_maximal(verified)
    extensions = [frozenset(order[k] for k in _bits(x)) for x in masks]
    keyed = sorted(extensions, key=lambda e: (-len(e), tuple(sorted(repr(a) for a in e))))
    return ExtensionSet(extensions=tuple(keyed))


def map_aaf_extension_to_baf(ext: frozenset) -> frozenset[str]:
    """Flatten pair arguments {(M_i, c_i)} into the id set {M_i, c_i}."""
    out: set[str] = set()
    for pair in ext:
        model_id, ce_id = pair
        out.add(model_id)
        out.add(ce_id)
    return frozenset(out)


def map_baf_extension_to_aaf(ext: frozenset[Argument], f: BAF) -> frozenset:
    """Pair up matched model/counterfactual members; unmatched members drop."""
    model_idx = {a.index for a in ext if a.kind is ArgKind.MODEL}
    ce_idx = {a.index for a in ext if a.kind is ArgKind.COUNTERFACTUAL}
    return frozenset(
        (f.model_ids[i], f.counterfactual_ids[i]) for i in model_idx & ce_idx
    )
