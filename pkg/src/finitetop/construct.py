"""Maps between finite spaces and the topologies they induce."""

from dataclasses import dataclass

from .bitsets import bits, subsets
from .errors import FormatError, ValidationError
from .spaces import (
    FiniteSpace,
    _check_labels,
    _space_from_kernels,
    separation_profile,
)


@dataclass(frozen=True)
class PointMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple  # assignment[i] = target index of the i-th source point

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.source.n:
            raise FormatError("map must be total on the source carrier")
        for j in self.assignment:
            if not 0 <= j < self.target.n:
                raise FormatError("map image is not a target point")

    @classmethod
    def from_dict(cls, source, target, mapping):
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise FormatError(f"map is not total, missing {missing[0]!r}")
        return cls(source, target, tuple(target.index(mapping[p]) for p in source.points))

    def __call__(self, label):
        return self.target.points[self.assignment[self.source.index(label)]]

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.assignment):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def is_bijective(self):
        return (
            self.source.n == self.target.n
            and len(set(self.assignment)) == self.source.n
        )

    def inverse(self):
        if not self.is_bijective():
            raise ValidationError("only bijections can be inverted")
        inv = [0] * self.target.n
        for i, j in enumerate(self.assignment):
            inv[j] = i
        return PointMap(self.target, self.source, tuple(inv))


@dataclass(frozen=True)
class EquivalenceRelation:
    points: tuple
    blocks: tuple  # masks, pairwise disjoint, nonempty, covering the carrier

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        _check_labels(self.points)
        full = (1 << len(self.points)) - 1
        seen = 0
        for b in self.blocks:
            if b == 0:
                raise ValidationError("partition blocks must be nonempty")
            if b & seen:
                raise ValidationError("partition blocks must be disjoint")
            seen |= b
        if seen != full:
            raise ValidationError("partition must cover the carrier")


@dataclass(frozen=True)
class ContinuityCheck:
    ok: bool
    witness_open: int | None = None  # target open with a non-open preimage


def is_continuous(f: PointMap) -> ContinuityCheck:
    result = ContinuityCheck(True)
    for h in sorted(f.target.opens):
        if f.preimage(h) not in f.source.opens:
            result = ContinuityCheck(False, h)
            break
    # Continuity may be tested on any subbase; the minimal open
    # neighborhoods of the target form one. Both routes must agree.
    shortcut = all(
        f.preimage(k) in f.source.opens for k in set(f.target.min_nbhd)
    )
    assert shortcut == result.ok
    return result


def is_homeomorphism(f: PointMap) -> bool:
    if not f.is_bijective():
        return False
    return is_continuous(f).ok and is_continuous(f.inverse()).ok


def initial_topology(points, factors) -> FiniteSpace:
    """Smallest topology making every map of `factors` continuous.

    `factors` is a list of (assignment, target) pairs where assignment maps
    each carrier label to a target label. Generated by the subbase of all
    preimages of target opens; on a finite carrier that topology is the one
    whose minimal open at x is the intersection of the pulled-back minimal
    opens at the images of x.
    """
    points = tuple(points)
    _check_labels(points)
    full = (1 << len(points)) - 1
    kernels = [full] * len(points)
    resolved = []
    for mapping, target in factors:
        try:
            idx = tuple(target.index(mapping[p]) for p in points)
        except KeyError as e:
            raise FormatError(f"map is not total, missing {e.args[0]!r}") from None
        resolved.append((idx, target))
        for i, j in enumerate(idx):
            ker = target.min_nbhd[j]
            pre = 0
            for i2, j2 in enumerate(idx):
                if ker >> j2 & 1:
                    pre |= 1 << i2
            kernels[i] &= pre
    space = _space_from_kernels(points, kernels)
    for idx, target in resolved:
        pm = PointMap(space, target, idx)
        assert is_continuous(pm).ok
    return space


def final_topology(points, factors) -> FiniteSpace:
    """Largest topology making every map of `factors` continuous.

    `factors` is a list of (source, assignment) pairs, assignment mapping
    source labels to carrier labels. A set is open iff its preimage under
    every map is open upstairs.
    """
    points = tuple(points)
    _check_labels(points)
    full = (1 << len(points)) - 1
    idx_maps = []
    for source, mapping in factors:
        try:
            idx_maps.append(
                (source, tuple(points.index(mapping[p]) for p in source.points))
            )
        except KeyError as e:
            raise FormatError(f"map is not total, missing {e.args[0]!r}") from None
        except ValueError:
            raise FormatError("map image is not a carrier point") from None
    opens = set()
    for h in subsets(full):
        ok = True
        for source, idx in idx_maps:
            pre = 0
            for i, j in enumerate(idx):
                if h >> j & 1:
                    pre |= 1 << i
            if pre not in source.opens:
                ok = False
                break
        if ok:
            opens.add(h)
    return FiniteSpace(points, frozenset(opens), _trusted=True)


PAIR_SEP = ","


def product_label(a, b):
    return f"⟨{a}{PAIR_SEP}{b}⟩"


def product(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
    """Product topology, points labelled ⟨x,y⟩, via the two projections."""
    pts = tuple(product_label(x, y) for x in a.points for y in b.points)
    if len(set(pts)) != len(pts):
        raise ValidationError("product labels collide; rename the factor points")
    proj_a = {product_label(x, y): x for x in a.points for y in b.points}
    proj_b = {product_label(x, y): y for x in a.points for y in b.points}
    return initial_topology(pts, [(proj_a, a), (proj_b, b)])


def subspace(space: FiniteSpace, keep_mask: int) -> FiniteSpace:
    """Trace of the topology on a subset, via the embedding map."""
    space._require_subset(keep_mask)
    pts = tuple(space.points[i] for i in bits(keep_mask))
    embed = {p: p for p in pts}
    return initial_topology(pts, [(embed, space)])


def topological_sum(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
    """Disjoint sum via the two injections; labels must not clash."""
    if set(a.points) & set(b.points):
        clash = sorted(set(a.points) & set(b.points))[0]
        raise ValidationError("sum carriers share a label", {"label": clash})
    pts = a.points + b.points
    return final_topology(pts, [(a, {p: p for p in a.points}), (b, {p: p for p in b.points})])


def block_label(space, mask):
    return "".join(sorted(space.points[i] for i in bits(mask)))


def quotient(space: FiniteSpace, eq: EquivalenceRelation):
    """Factor space; a block set is open iff its union is open upstairs."""
    if eq.points != space.points:
        raise ValidationError("equivalence relation lives on a different carrier")
    labels = tuple(block_label(space, b) for b in eq.blocks)
    if len(set(labels)) != len(labels):
        raise ValidationError("quotient block labels collide")
    mapping = {}
    for lab, b in zip(labels, eq.blocks):
        for i in bits(b):
            mapping[space.points[i]] = lab
    out = final_topology(labels, [(space, mapping)])
    return out, mapping


def one_point_extension(space: FiniteSpace, infinity_label: str) -> FiniteSpace:
    """Adjoin a point whose neighborhoods are the complements of compact sets.

    Requires a Hausdorff input; every subset of a finite space is compact,
    which collapses the construction to an explicit membership test.
    """
    if infinity_label in space.points:
        raise ValidationError("extension label already names a point", {"label": infinity_label})
    profile = separation_profile(space)
    if not profile.t2:
        pair = next(
            (space.points[x], space.points[y])
            for x in range(space.n)
            for y in range(space.n)
            if x < y and space.min_nbhd[x] & space.min_nbhd[y]
        )
        raise ValidationError(
            "input space is not Hausdorff", {"x": pair[0], "y": pair[1]}
        )
    pts = space.points + (infinity_label,)
    inf_bit = 1 << space.n
    opens = set()
    for u in subsets((1 << len(pts)) - 1):
        if u & inf_bit:
            opens.add(u)  # the complement in the old carrier is finite, so compact
        elif u in space.opens:
            opens.add(u)
    return FiniteSpace(pts, frozenset(opens), _trusted=True)
