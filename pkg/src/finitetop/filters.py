"""Filters on finite carriers.

Every filter on a finite set is principal: the family is finite, so the
intersection of all members is itself a member. A filter is therefore
stored by its kernel, and "all filters on X" is just "all nonempty
subsets of X" — which is what makes the exhaustive convergence checks
in the test suite possible.
"""

from dataclasses import dataclass

from .bitsets import bits, is_subset, subsets
from .errors import FormatError, ValidationError
from .spaces import FiniteSpace, _check_labels


@dataclass(frozen=True)
class PrincipalFilter:
    points: tuple
    kernel: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        _check_labels(self.points)
        full = (1 << len(self.points)) - 1
        if not 0 < self.kernel <= full:
            raise ValidationError("filter kernel must be a nonempty subset of the carrier")

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def contains(self, mask: int) -> bool:
        return is_subset(self.kernel, mask)

    def members(self):
        """Every member set; exponential, meant for small-carrier checks."""
        return [m for m in subsets(self.full) if self.contains(m)]

    def labels(self, mask):
        return tuple(self.points[i] for i in bits(mask))


def filter_from_base(points, base) -> PrincipalFilter:
    base = list(base)
    if not base:
        raise ValidationError("a filter base must be nonempty")
    kernel = (1 << len(points)) - 1
    for m in base:
        kernel &= m
    if kernel == 0:
        raise ValidationError("improper filter: the base members have empty intersection")
    return PrincipalFilter(tuple(points), kernel)


def is_ultrafilter(f: PrincipalFilter) -> bool:
    return f.kernel.bit_count() == 1


def ultrafilter_at(points, label) -> PrincipalFilter:
    points = tuple(points)
    return PrincipalFilter(points, 1 << points.index(label))


def decides_every_set(f: PrincipalFilter) -> bool:
    """Definitional ultrafilter test: every subset or its complement belongs."""
    return all(f.contains(a) or f.contains(f.full & ~a) for a in subsets(f.full))


def image_filter(point_map, f: PrincipalFilter) -> PrincipalFilter:
    if f.points != point_map.source.points:
        raise ValidationError("filter does not live on the map's source carrier")
    return PrincipalFilter(point_map.target.points, point_map.image(f.kernel))


def neighborhood_filter(space: FiniteSpace, label) -> PrincipalFilter:
    """Filter of all neighborhoods of a point; kernel = its minimal open."""
    return PrincipalFilter(space.points, space.min_nbhd[space.index(label)])


def limits(space: FiniteSpace, f: PrincipalFilter) -> int:
    """Points whose neighborhood filter the given filter refines."""
    _same_carrier(space, f)
    return sum(
        1 << i for i in range(space.n) if is_subset(f.kernel, space.min_nbhd[i])
    )


def accumulation_points(space: FiniteSpace, f: PrincipalFilter) -> int:
    """Intersection of the closures of all members = closure of the kernel."""
    _same_carrier(space, f)
    return space.closure(f.kernel)


def trace_filter(f: PrincipalFilter, mask: int) -> PrincipalFilter:
    """Restriction of the filter to a subset, as a filter on that subset."""
    if not 0 <= mask <= f.full:
        raise FormatError("trace set is not a subset of the carrier")
    if f.kernel & mask == 0:
        raise ValidationError(
            "trace is not a filter: the kernel misses the set",
            {"kernel": f.labels(f.kernel), "A": f.labels(mask)},
        )
    sub_points = tuple(f.points[i] for i in bits(mask))
    new_kernel = 0
    for pos, i in enumerate(bits(mask)):
        if f.kernel >> i & 1:
            new_kernel |= 1 << pos
    return PrincipalFilter(sub_points, new_kernel)


def all_filters(points):
    full = (1 << len(points)) - 1
    return [PrincipalFilter(tuple(points), k) for k in range(1, full + 1)]


def _same_carrier(space, f):
    if space.points != f.points:
        raise ValidationError("filter and space live on different carriers")
