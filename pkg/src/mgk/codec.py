"""Reader and writer for the line-oriented ``mgd`` diagram text format.

A document is ASCII text.  The first meaningful line is the version header
``mgd v1``.  Every following line is one statement:

    loop E           closed curve with no vertices, edge id E
    x E1 E2 E3 E4    crossing; edge ids of the four darts, counterclockwise;
                     the strand through slots 2 and 4 is the over-strand
    m E1 E2 E3 E4    marked vertex; darts counterclockwise; the marker
                     occupies the corners (E1,E2) and (E3,E4)
    place C TOKEN    put connected component C (0-based, in discovery order)
                     into the face named by TOKEN of the rest of the diagram

``#`` starts a comment that runs to the end of the line.  Edge ids are
arbitrary positive integers.  Every edge id used by x/m statements must
occur exactly twice among them; a loop id occurs exactly once and nowhere
else.  Face tokens look like ``7a``/``7b`` (the face traced from the first
or second occurrence of edge 7) or ``7s0``/``7s1`` (a side of loop 7).

Input accepts CRLF line endings; output is LF-terminated with single
spaces.  ``parse_mgd(emit_mgd(doc)) == doc`` for every valid document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

FORMAT_NAME = "mgd"
FORMAT_VERSION = 1

_TOKEN_RE = re.compile(r"^[0-9]+(a|b|s0|s1)$")


class MgdError(ValueError):
    """Malformed document; ``line`` is the 1-based offending source line."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Loop:
    edge: int


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]


@dataclass(frozen=True)
class Marked:
    edges: tuple[int, int, int, int]


@dataclass(frozen=True)
class Place:
    component: int
    face: str


Statement = Union[Loop, Crossing, Marked, Place]


@dataclass(frozen=True)
class MgdDocument:
    """Parsed diagram file: a version plus an ordered statement list."""

    version: int
    statements: tuple[Statement, ...]

    def vertex_statements(self) -> tuple[Union[Crossing, Marked], ...]:
        return tuple(s for s in self.statements if isinstance(s, (Crossing, Marked)))

    def loops(self) -> tuple[Loop, ...]:
        return tuple(s for s in self.statements if isinstance(s, Loop))

    def places(self) -> tuple[Place, ...]:
        return tuple(s for s in self.statements if isinstance(s, Place))


def _decode(text: Union[bytes, str]) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("ascii")
    except UnicodeDecodeError as exc:
        line = text[: exc.start].count(b"\n") + 1
        raise MgdError(line, "non-ASCII byte in input") from None


def _parse_edge_id(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise MgdError(lineno, f"expected a positive integer edge id, got {tok!r}")
    value = int(tok)
    if value <= 0:
        raise MgdError(lineno, f"edge id must be positive, got {value}")
    return value


def parse_mgd(text: Union[bytes, str]) -> MgdDocument:
    """Parse an mgd document, checking structure and edge multiplicities."""
    src = _decode(text)
    statements: list[Statement] = []
    # (edge id -> lines it appears on) for the multiplicity checks.
    xm_uses: dict[int, list[int]] = {}
    loop_uses: dict[int, list[int]] = {}
    saw_header = False

    for lineno, raw in enumerate(src.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip().rstrip("\r").strip()
        if not line:
            continue
        toks = line.split()
        if not saw_header:
            if toks[0] != FORMAT_NAME or len(toks) != 2 or toks[1] != f"v{FORMAT_VERSION}":
                raise MgdError(lineno, f"expected version header '{FORMAT_NAME} v{FORMAT_VERSION}'")
            saw_header = True
            continue
        kind, args = toks[0], toks[1:]
        if kind == "loop":
            if len(args) != 1:
                raise MgdError(lineno, f"loop takes 1 edge id, got {len(args)}")
            e = _parse_edge_id(args[0], lineno)
            loop_uses.setdefault(e, []).append(lineno)
            statements.append(Loop(e))
        elif kind in ("x", "m"):
            if len(args) != 4:
                raise MgdError(lineno, f"{kind} takes 4 edge ids, got {len(args)}")
            edges = tuple(_parse_edge_id(a, lineno) for a in args)
            for e in edges:
                xm_uses.setdefault(e, []).append(lineno)
            statements.append(Crossing(edges) if kind == "x" else Marked(edges))
        elif kind == "place":
            if len(args) != 2:
                raise MgdError(lineno, f"place takes 2 arguments, got {len(args)}")
            if not args[0].isdigit():
                raise MgdError(lineno, f"component index must be a nonnegative integer, got {args[0]!r}")
            if not _TOKEN_RE.match(args[1]):
                raise MgdError(lineno, f"bad face token {args[1]!r}")
            statements.append(Place(int(args[0]), args[1]))
        else:
            raise MgdError(lineno, f"unknown statement {kind!r}")

    if not saw_header:
        raise MgdError(1, f"missing version header '{FORMAT_NAME} v{FORMAT_VERSION}'")

    for e, lines in xm_uses.items():
        if e in loop_uses:
            raise MgdError(loop_uses[e][0], f"edge {e} used by both loop and x/m statements")
        if len(lines) != 2:
            raise MgdError(lines[-1], f"edge {e} appears {len(lines)} time(s) in x/m statements, expected 2")
    for e, lines in loop_uses.items():
        if len(lines) != 1:
            raise MgdError(lines[-1], f"loop edge {e} appears {len(lines)} times, expected 1")

    return MgdDocument(FORMAT_VERSION, tuple(statements))


def parse_link(text: Union[bytes, str]) -> MgdDocument:
    """Parse a classical link diagram: as ``parse_mgd`` but m statements are rejected."""
    src = _decode(text)
    for lineno, raw in enumerate(src.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line.split()[:1] == ["m"]:
            raise MgdError(lineno, "marked vertex not allowed in a link diagram")
    return parse_mgd(src)


def emit_mgd(doc: MgdDocument) -> bytes:
    """Serialize a document: statements in stored order, LF-terminated ASCII."""
    out = [f"{FORMAT_NAME} v{doc.version}"]
    for s in doc.statements:
        if isinstance(s, Loop):
            out.append(f"loop {s.edge}")
        elif isinstance(s, Crossing):
            out.append("x " + " ".join(map(str, s.edges)))
        elif isinstance(s, Marked):
            out.append("m " + " ".join(map(str, s.edges)))
        elif isinstance(s, Place):
            out.append(f"place {s.component} {s.face}")
        else:  # pragma: no cover - statement union is closed
            raise TypeError(f"unknown statement {s!r}")
    return ("\n".join(out) + "\n").encode("ascii")
