"""Text formats: DIGIMG images, DIGMAP maps, and point-set files.

DIGIMG::

    digimg 1
    dim 2
    adjacency c2
    point 0 0
    ...

A normal-product image writes ``adjacency np <u_1> ... <u_v>`` and then one
``factor <n_i>`` block per factor, each followed by that factor's ``point``
lines; the product's points are the Cartesian product of the blocks.

DIGMAP::

    digimap 1
    dim 1
    map 0 -> 1

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import DigitopError
from .image import CU, DigitalImage, ImageError, NormalProduct, Point, product
from .maps import SelfMap


class FormatError(DigitopError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        self.line = line
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{msg}")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(tokens: Sequence[str], no: int, source) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no, source) from None


def _cu(token: str, no: int, source) -> CU:
    if not token.startswith("c"):
        raise FormatError(f"bad adjacency {token!r}", no, source)
    try:
        return CU(int(token[1:]))
    except ValueError:
        raise FormatError(f"bad adjacency {token!r}", no, source) from None


def _header(it, magic: str, source):
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError("empty file", None, source) from None
    if toks != [magic, "1"]:
        raise FormatError(f"expected header '{magic} 1'", no, source)
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError("missing 'dim' line", None, source) from None
    if len(toks) != 2 or toks[0] != "dim":
        raise FormatError("expected 'dim <n>'", no, source)
    (dim,) = _ints(toks[1:], no, source)
    return dim


def _points(block, dim: int, source) -> list[Point]:
    pts, seen = [], set()
    for no, toks in block:
        if toks[0] != "point":
            raise FormatError(f"unexpected keyword {toks[0]!r}", no, source)
        p = _ints(toks[1:], no, source)
        if len(p) != dim:
            raise FormatError(f"point has {len(p)} coordinates, expected {dim}", no, source)
        if p in seen:
            raise FormatError(f"duplicate point {p}", no, source)
        seen.add(p)
        pts.append(p)
    return pts


def parse_image(text: str, source: str | None = None) -> DigitalImage:
    it = _lines(text)
    dim = _header(it, "digimg", source)
    try:
        no, toks = next(it)
    except StopIteration:
        raise FormatError("missing 'adjacency' line", None, source) from None
    if toks[0] != "adjacency" or len(toks) < 2:
        raise FormatError("expected 'adjacency c<u>' or 'adjacency np ...'", no, source)
    rest = list(it)
    try:
        if toks[1] != "np":
            if len(toks) != 2:
                raise FormatError("expected 'adjacency c<u>'", no, source)
            adj = _cu(toks[1], no, source)
            if not 1 <= adj.u <= dim:
                raise FormatError(f"c{adj.u} exceeds dimension {dim}", no, source)
            return DigitalImage.from_points(_points(rest, dim, source), adj, dimension=dim)
        us = _ints(toks[2:], no, source)
        if len(us) < 2:
            raise FormatError("a normal product needs at least two factors", no, source)
        blocks: list[tuple[int, int, list]] = []
        for lno, ltoks in rest:
            if ltoks[0] == "factor":
                if len(ltoks) != 2:
                    raise FormatError("expected 'factor <n>'", lno, source)
                (fd,) = _ints(ltoks[1:], lno, source)
                blocks.append((lno, fd, []))
            elif not blocks:
                raise FormatError("point before the first 'factor' block", lno, source)
            else:
                blocks[-1][2].append((lno, ltoks))
        if len(blocks) != len(us):
            raise FormatError(f"{len(us)} factor adjacencies but {len(blocks)} factor blocks", no, source)
        if sum(fd for _, fd, _ in blocks) != dim:
            raise FormatError("factor dimensions do not sum to 'dim'", no, source)
        factors = []
        for u, (lno, fd, body) in zip(us, blocks):
            if not 1 <= u <= fd:
                raise FormatError(f"c{u} exceeds factor dimension {fd}", lno, source)
            pts = _points(body, fd, source)
            if not pts:
                raise FormatError("empty factor", lno, source)
            factors.append(DigitalImage.from_points(pts, CU(u), dimension=fd))
        return product(factors)
    except ImageError as exc:
        raise FormatError(str(exc), no, source) from None


def _coords(p: Point) -> str:
    return " ".join(map(str, p))


def format_image(X: DigitalImage) -> str:
    out = ["digimg 1", f"dim {X.dimension}"]
    if isinstance(X.adjacency, NormalProduct):
        if X.factors is None or not all(isinstance(f.adjacency, CU) for f in X.factors):
            raise FormatError("only products of c_u factors can be written")
        out.append("adjacency np " + " ".join(str(f.adjacency.u) for f in X.factors))
        for f in X.factors:
            out.append(f"factor {f.dimension}")
            out.extend(f"point {_coords(p)}" for p in f.points)
    else:
        out.append(f"adjacency c{X.adjacency.u}")
        out.extend(f"point {_coords(p)}" for p in X.points)
    return "\n".join(out) + "\n"


def parse_map(text: str, domain: DigitalImage, source: str | None = None) -> SelfMap:
    it = _lines(text)
    dim = _header(it, "digimap", source)
    if dim != domain.dimension:
        raise FormatError(f"map dimension {dim} differs from image dimension {domain.dimension}", None, source)
    table: dict[Point, Point] = {}
    for no, toks in it:
        if toks[0] != "map" or "->" not in toks:
            raise FormatError("expected 'map <x..> -> <y..>'", no, source)
        k = toks.index("->")
        x, y = _ints(toks[1:k], no, source), _ints(toks[k + 1:], no, source)
        if len(x) != dim or len(y) != dim:
            raise FormatError(f"map entries need {dim} coordinates on each side", no, source)
        if x in table:
            raise FormatError(f"{x} is mapped twice", no, source)
        if x not in domain.index:
            raise FormatError(f"{x} is not a point of the image", no, source)
        if y not in domain.index:
            raise FormatError(f"image {y} is not a point of the image", no, source)
        table[x] = y
    missing = [p for p in domain.points if p not in table]
    if missing:
        raise FormatError(f"map is not total: {missing[0]} has no image", None, source)
    return SelfMap.from_table(domain, table)


def format_map(f: SelfMap) -> str:
    out = ["digimap 1", f"dim {f.source.dimension}"]
    out.extend(f"map {_coords(p)} -> {_coords(q)}" for p, q in f.table.items())
    return "\n".join(out) + "\n"


def parse_points(text: str, dim: int | None = None, source: str | None = None) -> list[Point]:
    pts, seen = [], set()
    for no, toks in _lines(text):
        if toks[0] != "point":
            raise FormatError(f"unexpected keyword {toks[0]!r}", no, source)
        p = _ints(toks[1:], no, source)
        if dim is not None and len(p) != dim:
            raise FormatError(f"point has {len(p)} coordinates, expected {dim}", no, source)
        if p in seen:
            raise FormatError(f"duplicate point {p}", no, source)
        seen.add(p)
        pts.append(p)
    return pts


def format_points(pts: Iterable[Sequence[int]]) -> str:
    return "".join(f"point {_coords(tuple(p))}\n" for p in sorted(tuple(p) for p in pts))


def load_image(path) -> DigitalImage:
    return parse_image(Path(path).read_text(encoding="utf-8"), str(path))


def load_map(path, domain: DigitalImage) -> SelfMap:
    return parse_map(Path(path).read_text(encoding="utf-8"), domain, str(path))


def load_points(path, dim: int | None = None) -> list[Point]:
    return parse_points(Path(path).read_text(encoding="utf-8"), dim, str(path))
