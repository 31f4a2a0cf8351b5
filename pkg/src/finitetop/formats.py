"""Line-oriented text formats for the CLI.

Every format is UTF-8, one record per line, with `#` starting a comment.
Canonical emitters are deterministic: reload of an emitted file compares
equal to the original value.
"""

from fractions import Fraction

from .bitsets import bits
from .construct import EquivalenceRelation
from .errors import FormatError
from .logic import Theory, parse_formula
from .pmetric import RankedSets, RelationChain
from .spaces import ClosureTable, FiniteSpace, Preorder, SetFamily


def _records(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected '<keyword>: ...', got {raw.strip()!r}")
        key, rest = line.split(":", 1)
        yield lineno, key.strip(), rest.strip()


def _points_first(records, what):
    try:
        lineno, key, rest = next(records)
    except StopIteration:
        raise FormatError(f"empty {what} file") from None
    if key != "points":
        raise FormatError(f"line {lineno}: {what} file must start with a 'points:' line")
    pts = tuple(rest.split())
    if not pts:
        raise FormatError(f"line {lineno}: empty carrier")
    return pts


def _mask(points, labels, lineno):
    m = 0
    for lab in labels:
        if lab not in points:
            raise FormatError(f"line {lineno}: unknown point {lab!r}")
        m |= 1 << points.index(lab)
    return m


def load_space(text: str) -> FiniteSpace:
    records = _records(text)
    pts = _points_first(records, "space")
    opens = {0, (1 << len(pts)) - 1}
    for lineno, key, rest in records:
        if key != "open":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in space file")
        opens.add(_mask(pts, rest.split(), lineno))
    return FiniteSpace(pts, frozenset(opens))


def dump_space(space: FiniteSpace) -> str:
    lines = ["points: " + " ".join(space.points)]
    for u in sorted(space.opens, key=lambda m: (m.bit_count(), m)):
        lines.append("open: " + " ".join(space.labels(u)))
    return "\n".join(lines) + "\n"


def load_family(text: str) -> SetFamily:
    records = _records(text)
    pts = _points_first(records, "family")
    members = []
    for lineno, key, rest in records:
        if key != "member":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in family file")
        members.append(_mask(pts, rest.split(), lineno))
    return SetFamily(pts, tuple(members))


def load_poset(text: str) -> Preorder:
    records = _records(text)
    pts = _points_first(records, "poset")
    pairs = []
    for lineno, key, rest in records:
        if key != "le":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in poset file")
        parts = rest.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: 'le:' wants exactly two labels")
        pairs.append((parts[0], parts[1]))
    try:
        return Preorder.from_pairs(pts, pairs)
    except FormatError as e:
        raise FormatError(str(e)) from None


def load_closure_table(text: str) -> ClosureTable:
    records = _records(text)
    pts = _points_first(records, "closure table")
    n = len(pts)
    table = [None] * (1 << n)
    for lineno, key, rest in records:
        if key != "cl":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in closure file")
        if "->" not in rest:
            raise FormatError(f"line {lineno}: 'cl:' wants '<subset> -> <closure>'")
        left, right = rest.split("->", 1)
        table[_mask(pts, left.split(), lineno)] = _mask(pts, right.split(), lineno)
    for m, v in enumerate(table):
        if v is None:
            miss = " ".join(pts[i] for i in bits(m)) or "(empty set)"
            raise FormatError(f"closure table is missing the entry for {{{miss}}}")
    return ClosureTable(pts, tuple(table))


def load_map(text: str) -> dict:
    mapping = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise FormatError(f"line {lineno}: expected '<source> -> <target>'")
        src, dst = (part.strip() for part in line.split("->", 1))
        if not src or not dst:
            raise FormatError(f"line {lineno}: expected '<source> -> <target>'")
        if src in mapping:
            raise FormatError(f"line {lineno}: point {src!r} mapped twice")
        mapping[src] = dst
    if not mapping:
        raise FormatError("empty map file")
    return mapping


def load_equivalence(text: str, space: FiniteSpace) -> EquivalenceRelation:
    blocks = []
    for lineno, key, rest in _records(text):
        if key != "block":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in equivalence file")
        blocks.append(space.mask(rest.split()))
    return EquivalenceRelation(space.points, tuple(blocks))


def load_matrix(text: str):
    """CSV matrix; entries may be decimals or fractions like 1/3."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(Fraction(cell.strip())) for cell in line.split(",")])
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"line {lineno}: bad matrix entry") from None
    if not rows:
        raise FormatError("empty matrix file")
    return rows


def load_chain(text: str) -> RelationChain:
    records = _records(text)
    pts = _points_first(records, "chain")
    n = len(pts)
    relations = []
    current = None
    expect = 1
    for lineno, key, rest in records:
        if key.startswith("relation"):
            parts = key.split()
            try:
                level = int(parts[1]) if len(parts) == 2 else int(rest)
            except (ValueError, IndexError):
                raise FormatError(f"line {lineno}: 'relation <k>:' wants an integer level") from None
            if level != expect:
                raise FormatError(f"line {lineno}: expected 'relation {expect}:'")
            expect += 1
            current = [1 << i for i in range(n)]
            relations.append(current)
        elif key == "pair":
            if current is None:
                raise FormatError(f"line {lineno}: 'pair:' before any 'relation:' header")
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: 'pair:' wants exactly two labels")
            a, b = (_mask(pts, [p], lineno) for p in parts)
            i, j = a.bit_length() - 1, b.bit_length() - 1
            current[i] |= 1 << j
            current[j] |= 1 << i
        else:
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in chain file")
    return RelationChain(pts, tuple(tuple(rel) for rel in relations))


def load_ranks(text: str) -> RankedSets:
    pts = []
    ranks = []
    for lineno, key, rest in _records(text):
        if key != "rank":
            raise FormatError(f"line {lineno}: unexpected keyword {key!r} in rank file")
        parts = rest.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: 'rank:' wants '<label> <positive int>'")
        try:
            r = int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: rank must be an integer") from None
        pts.append(parts[0])
        ranks.append(r)
    return RankedSets(tuple(pts), tuple(ranks))


def load_theory(text: str) -> Theory:
    formulas = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        formulas.append(parse_formula(line))
    return Theory.of(formulas)
