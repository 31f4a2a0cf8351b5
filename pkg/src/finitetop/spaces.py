"""Finite topological spaces and the generators that produce them.

A space is a labelled carrier of at most 16 points together with its full
family of open sets, each open stored as a bitmask over the point order.
Every finite topology has minimal open neighborhoods (the intersection of
finitely many opens is open), so closure and interior reduce to O(n)
bitmask scans once those kernels are known; the definitional routes are
kept alongside as test oracles.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .bitsets import bits, is_subset, subsets
from .errors import FormatError, ValidationError

MAX_POINTS = 16


def _check_labels(points, cap=True):
    if cap and len(points) > MAX_POINTS:
        raise ValidationError(f"carrier has {len(points)} points, limit is {MAX_POINTS}")
    if len(set(points)) != len(points):
        dup = next(p for p in points if points.count(p) > 1)
        raise FormatError(f"duplicate point label {dup!r}")


@dataclass(frozen=True)
class FiniteSpace:
    """A finite carrier with its set of opens (bitmask-encoded subsets)."""

    points: tuple
    opens: frozenset
    _trusted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "opens", frozenset(self.opens))
        _check_labels(self.points)
        full = self.full
        for u in self.opens:
            if not 0 <= u <= full:
                raise FormatError(f"open {u:#x} is not a subset of the carrier")
        if 0 not in self.opens or full not in self.opens:
            raise ValidationError("a topology must contain the empty set and the carrier")
        if not self._trusted:
            ops = sorted(self.opens)
            for a in ops:
                for b in ops:
                    if a | b not in self.opens:
                        raise ValidationError(
                            "not closed under union",
                            {"U": self.labels(a), "V": self.labels(b)},
                        )
                    if a & b not in self.opens:
                        raise ValidationError(
                            "not closed under intersection",
                            {"U": self.labels(a), "V": self.labels(b)},
                        )

    # -- carrier helpers

    @property
    def n(self):
        return len(self.points)

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def index(self, label):
        try:
            return self.points.index(label)
        except ValueError:
            raise FormatError(f"unknown point {label!r}") from None

    def mask(self, labels):
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels(self, mask):
        return tuple(self.points[i] for i in bits(mask))

    # -- kernels and the basic operators

    @cached_property
    def min_nbhd(self):
        """Minimal open neighborhood of every point (tuple indexed by point)."""
        ker = [self.full] * self.n
        for u in self.opens:
            for i in bits(u):
                ker[i] &= u
        return tuple(ker)

    @cached_property
    def closed_sets(self):
        return frozenset(self.full & ~u for u in self.opens)

    def is_open(self, mask):
        return mask in self.opens

    def closure(self, mask):
        """Smallest closed superset: x is close to A iff its every open meets A."""
        return sum(1 << i for i in range(self.n) if self.min_nbhd[i] & mask)

    def interior(self, mask):
        return self.full & ~self.closure(self.full & ~mask)

    def _require_subset(self, mask):
        if not 0 <= mask <= self.full:
            raise FormatError("argument is not a subset of the carrier")


@dataclass(frozen=True)
class SetFamily:
    """A named family of subsets (base or subbase candidate)."""

    points: tuple
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "members", tuple(self.members))
        _check_labels(self.points)
        full = (1 << len(self.points)) - 1
        for m in self.members:
            if not 0 <= m <= full:
                raise FormatError(f"family member {m:#x} is not a subset of the carrier")

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def labels(self, mask):
        return tuple(self.points[i] for i in bits(mask))


@dataclass(frozen=True)
class ClosureTable:
    """A total map subset -> subset, candidate for the closure axioms.

    table[mask] is the image of the subset `mask`; length must be 2^n.
    """

    points: tuple
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "table", tuple(self.table))
        _check_labels(self.points)
        if len(self.table) != 1 << len(self.points):
            raise FormatError("closure table must have one entry per subset")

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def labels(self, mask):
        return tuple(self.points[i] for i in bits(mask))

    def validate(self):
        """Raise with the offending axiom and witness subsets, if any."""
        t = self.table
        if t[0] != 0:
            raise ValidationError("closure axiom cl(empty)=empty fails", {"value": self.labels(t[0])})
        if t[self.full] != self.full:
            raise ValidationError("closure axiom cl(X)=X fails", {"value": self.labels(t[self.full])})
        for a in subsets(self.full):
            if not is_subset(a, t[a]):
                raise ValidationError("closure axiom A <= cl(A) fails", {"A": self.labels(a)})
            if t[t[a]] != t[a]:
                raise ValidationError("closure axiom cl(cl(A))=cl(A) fails", {"A": self.labels(a)})
        for a in subsets(self.full):
            for b in subsets(self.full):
                if t[a | b] != t[a] | t[b]:
                    raise ValidationError(
                        "closure axiom cl(A|B)=cl(A)|cl(B) fails",
                        {"A": self.labels(a), "B": self.labels(b)},
                    )

    @classmethod
    def from_function(cls, points, fn):
        return cls(tuple(points), tuple(fn(a) for a in range(1 << len(points))))

    @classmethod
    def down_sets(cls, order):
        """Closure operator of a preorder: A |-> all points below A."""
        down = [0] * len(order.points)
        for i in range(len(order.points)):
            for j in range(len(order.points)):
                if order.rel[i] >> j & 1:  # i <= j, so i is below j
                    down[j] |= 1 << i
        return cls.from_function(
            order.points, lambda a: 0 if a == 0 else _union(down[i] | (1 << i) for i in bits(a))
        )


def _union(masks):
    m = 0
    for x in masks:
        m |= x
    return m


@dataclass(frozen=True)
class Preorder:
    """Reflexive-transitive relation; rel[i] is the bitmask of {j : i <= j}."""

    points: tuple
    rel: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "rel", tuple(self.rel))
        _check_labels(self.points)
        n = len(self.points)
        if len(self.rel) != n:
            raise FormatError("relation must have one row per point")
        for i in range(n):
            if not self.rel[i] >> i & 1:
                raise ValidationError("relation is not reflexive", {"x": self.points[i]})
        for i in range(n):
            for j in bits(self.rel[i]):
                if self.rel[j] & ~self.rel[i]:
                    k = next(bits(self.rel[j] & ~self.rel[i]))
                    raise ValidationError(
                        "relation is not transitive",
                        {"x": self.points[i], "y": self.points[j], "z": self.points[k]},
                    )

    @property
    def n(self):
        return len(self.points)

    def le(self, i, j):
        return bool(self.rel[i] >> j & 1)

    @cached_property
    def is_poset(self):
        return all(
            not (self.le(i, j) and self.le(j, i))
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    @classmethod
    def from_pairs(cls, points, pairs):
        """Reflexive-transitive closure of the given `a <= b` pairs."""
        n = len(points)
        idx = {p: i for i, p in enumerate(points)}
        rel = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in idx or b not in idx:
                raise FormatError(f"unknown point in pair ({a!r}, {b!r})")
            rel[idx[a]] |= 1 << idx[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = rel[i]
                for j in bits(rel[i]):
                    acc |= rel[j]
                if acc != rel[i]:
                    rel[i] = acc
                    changed = True
        return cls(tuple(points), tuple(rel))


@dataclass(frozen=True)
class NeighborhoodSystem:
    """One kernel set per point: the intersection of its assigned filter."""

    points: tuple
    kernels: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "kernels", tuple(self.kernels))
        _check_labels(self.points)
        if len(self.kernels) != len(self.points):
            raise FormatError("need exactly one kernel per point")
        for i, k in enumerate(self.kernels):
            if not k >> i & 1:
                raise ValidationError(
                    "invalid system: point not in its own kernel", {"x": self.points[i]}
                )


@dataclass(frozen=True)
class SeparationProfile:
    t0: bool
    t1: bool
    t2: bool
    t3: bool
    t4: bool
    regular: bool
    normal: bool


@dataclass(frozen=True)
class BaseCheck:
    ok: bool
    witness: dict | None = None


# ---------------------------------------------------------------------------
# operations


def validate_base(fam: SetFamily) -> BaseCheck:
    """A family is a base iff it covers the carrier and interpolates on overlaps."""
    cover = _union(fam.members)
    if cover != fam.full:
        missing = next(bits(fam.full & ~cover))
        return BaseCheck(False, {"uncovered": fam.points[missing]})
    for u in fam.members:
        for v in fam.members:
            both = u & v
            for x in bits(both):
                if not any(w >> x & 1 and is_subset(w, both) for w in fam.members):
                    return BaseCheck(
                        False,
                        {"x": fam.points[x], "U": fam.labels(u), "V": fam.labels(v)},
                    )
    return BaseCheck(True)


def _space_from_kernels(points, kernels):
    """All unions of the given minimal opens, built by saturation."""
    distinct = sorted(set(kernels))
    opens = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for k in distinct:
            v = u | k
            if v not in opens:
                opens.add(v)
                frontier.append(v)
    full = (1 << len(points)) - 1
    opens.add(full)
    return FiniteSpace(tuple(points), frozenset(opens), _trusted=True)


def generate_topology(fam: SetFamily, mode: str = "base") -> FiniteSpace:
    """Topology generated by a base (all unions) or a subbase (intersections first)."""
    if mode not in ("base", "subbase"):
        raise FormatError(f"unknown generation mode {mode!r}")
    if mode == "base":
        check = validate_base(fam)
        if not check.ok:
            raise ValidationError("family is not a base", check.witness)
    # On a finite carrier the generated topology is determined by the minimal
    # open neighborhoods: the intersection of all members containing a point
    # (empty intersection = carrier, which covers the subbase convention).
    kernels = []
    for i in range(len(fam.points)):
        k = fam.full
        for m in fam.members:
            if m >> i & 1:
                k &= m
        kernels.append(k)
    space = _space_from_kernels(fam.points, kernels)
    if mode == "base":
        assert all(m in space.opens for m in fam.members)
    return space


def closure_interior(space: FiniteSpace, mask: int) -> dict:
    space._require_subset(mask)
    cl = space.closure(mask)
    inte = space.interior(mask)
    return {"closure": cl, "interior": inte, "boundary": cl & ~inte}


def topology_from_closure(table: ClosureTable) -> FiniteSpace:
    """Opens are the complements of the table's fixed points."""
    table.validate()
    opens = frozenset(
        table.full & ~a for a in subsets(table.full) if table.table[a] == a
    )
    return FiniteSpace(table.points, opens, _trusted=True)


def induced_closure_table(space: FiniteSpace) -> ClosureTable:
    return ClosureTable.from_function(space.points, space.closure)


def topology_from_poset(order: Preorder) -> FiniteSpace:
    """Opens are the up-sets; the down-set operator gives the closed sets."""
    return _space_from_kernels(order.points, order.rel)


def minimal_neighborhood(space: FiniteSpace, label) -> int:
    return space.min_nbhd[space.index(label)]


def open_neighborhoods(space: FiniteSpace, label) -> list:
    """All opens containing the point, smallest first; a base of its filter."""
    i = space.index(label)
    return sorted(
        (u for u in space.opens if u >> i & 1), key=lambda u: (u.bit_count(), u)
    )


def topology_from_neighborhoods(system: NeighborhoodSystem):
    """Space whose opens are the sets containing every member's kernel.

    Returns the space together with a flag telling whether the recomputed
    neighborhood kernels coincide with the given ones.
    """
    full = (1 << len(system.points)) - 1
    opens = frozenset(
        u for u in subsets(full) if all(is_subset(system.kernels[i], u) for i in bits(u))
    )
    space = FiniteSpace(system.points, opens, _trusted=True)
    coincides = space.min_nbhd == system.kernels
    return space, coincides


def _min_open_superset(space, mask):
    # Union of the point kernels: the smallest open containing the set.
    return _union(space.min_nbhd[i] for i in bits(mask))


def separation_profile(space: FiniteSpace) -> SeparationProfile:
    """Evaluate the separation axioms by enumeration.

    The existential "disjoint open neighborhoods of ... exist" is decided on
    minimal open neighborhoods: shrinking either open only helps, so the
    smallest ones witness the quantifier exactly.
    """
    n = space.n
    pts = range(n)
    t0 = all(
        any((u >> x & 1) != (u >> y & 1) for u in space.opens)
        for x in pts
        for y in pts
        if x < y
    )
    t1 = all(
        any(u >> x & 1 and not u >> y & 1 for u in space.opens)
        for x in pts
        for y in pts
        if x != y
    )
    t2 = all(
        space.min_nbhd[x] & space.min_nbhd[y] == 0 for x in pts for y in pts if x < y
    )
    t3 = all(
        space.min_nbhd[x] & _min_open_superset(space, f) == 0
        for x in pts
        for f in space.closed_sets
        if not f >> x & 1
    )
    t4 = all(
        _min_open_superset(space, f) & _min_open_superset(space, g) == 0
        for f in space.closed_sets
        for g in space.closed_sets
        if f & g == 0
    )
    return SeparationProfile(t0, t1, t2, t3, t4, regular=t1 and t3, normal=t1 and t4)


def specialization_order(space: FiniteSpace) -> Preorder:
    """x <= y iff every open containing x contains y (y is in x's kernel)."""
    return Preorder(space.points, tuple(space.min_nbhd))


def is_dense(space: FiniteSpace, mask: int) -> bool:
    space._require_subset(mask)
    return space.closure(mask) == space.full


def discrete_space(points) -> FiniteSpace:
    full = (1 << len(points)) - 1
    return FiniteSpace(tuple(points), frozenset(subsets(full)), _trusted=True)


def indiscrete_space(points) -> FiniteSpace:
    full = (1 << len(points)) - 1
    return FiniteSpace(tuple(points), frozenset({0, full}), _trusted=True)


def all_topologies(n, labels=None):
    """Every topology on an n-point carrier, by brute force over families."""
    if n > 5:
        raise ValidationError("exhaustive enumeration is limited to 5 points")
    labels = tuple(labels) if labels else tuple(chr(ord("a") + i) for i in range(n))
    full = (1 << n) - 1
    mids = [m for m in range(1, full)]
    out = []
    for pick in range(1 << len(mids)):
        fam = {0, full}
        for i, m in enumerate(mids):
            if pick >> i & 1:
                fam.add(m)
        ok = True
        for a in fam:
            if not ok:
                break
            for b in fam:
                if a | b not in fam or a & b not in fam:
                    ok = False
                    break
        if ok:
            out.append(FiniteSpace(labels, frozenset(fam), _trusted=True))
    return out
