"""Combinatorial-map model of marked graph diagrams.

A diagram is a 4-regular map on the 2-sphere (one sphere per connected
component) with two vertex kinds plus vertex-free closed curves:

* darts are numbered ``4*v + slot`` for vertex ``v`` and slot ``0..3``;
  slots list the darts counterclockwise around the vertex;
* ``theta`` is the fixed-point-free involution pairing darts into edges;
* at a crossing the strand through slots (1, 3) passes over the strand
  through slots (0, 2);
* at a marked vertex the marker occupies the corners (0, 1) and (2, 3).

Faces are the orbits of ``sigma ∘ theta`` where ``sigma`` rotates one slot
counterclockwise.  Each connected component must satisfy V - E + F = 2.

Free loops carry no darts; each splits a face in two.  Split components
are assigned to faces of the rest of the diagram by a placement forest;
the default places every component in the shared outer region.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .codec import Crossing, Loop, Marked, MgdDocument, Place

CROSSING = "x"
MARKED = "m"


class DiagramError(ValueError):
    """Structural failure while assembling or rewriting a diagram."""


class NonPlanarError(DiagramError):
    """A connected component fails the V - E + F = 2 check."""


class DanglingDartError(DiagramError):
    """Edge pairing is not a fixed-point-free involution on all darts."""


class EmptyDiagramError(DiagramError):
    """The empty diagram is rejected."""


class PlacementError(DiagramError):
    """A place statement names a missing component or face."""


def sigma(dart: int) -> int:
    """Next dart counterclockwise around the same vertex."""
    return (dart & ~3) | ((dart + 1) & 3)


@dataclass(frozen=True)
class MarkedGraphDiagram:
    """Immutable marked graph diagram (or classical link diagram).

    ``kinds[v]`` is ``'x'`` or ``'m'``; ``theta`` pairs the ``4*len(kinds)``
    darts into edges; ``n_loops`` counts vertex-free closed curves.
    ``placement`` holds (component, parent_face) pairs; an absent component
    sits in the shared outer region.  Face and component numbering is
    defined by :func:`faces` and :func:`component_partition`.
    """

    kinds: tuple[str, ...]
    theta: tuple[int, ...]
    n_loops: int = 0
    placement: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = 4 * len(self.kinds)
        if len(self.theta) != n:
            raise DanglingDartError(f"theta has {len(self.theta)} entries for {n} darts")
        for d, e in enumerate(self.theta):
            if not 0 <= e < n or e == d or self.theta[e] != d:
                raise DanglingDartError(f"theta is not a fixed-point-free involution at dart {d}")
        if not self.kinds and self.n_loops == 0:
            raise EmptyDiagramError("diagram has no vertices and no loops")
        for k in self.kinds:
            if k not in (CROSSING, MARKED):
                raise DiagramError(f"unknown vertex kind {k!r}")

    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    @property
    def n_darts(self) -> int:
        return 4 * len(self.kinds)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.kinds)

    def crossings(self) -> tuple[int, ...]:
        return tuple(v for v, k in enumerate(self.kinds) if k == CROSSING)

    def marked_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, k in enumerate(self.kinds) if k == MARKED)

    @property
    def is_link_diagram(self) -> bool:
        return MARKED not in self.kinds

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (dart, dart) with the smaller dart first, sorted."""
        return [(d, e) for d, e in enumerate(self.theta) if d < e]


LinkDiagram = MarkedGraphDiagram


def ch_index(d: MarkedGraphDiagram) -> int:
    """Crossing count plus marked-vertex count."""
    return len(d.kinds)


# ---------------------------------------------------------------------------
# Faces, components, Euler checks


@lru_cache(maxsize=4096)
def faces(d: MarkedGraphDiagram) -> tuple[tuple[int, ...], ...]:
    """Dart-face orbits of sigma∘theta, each rotated to start at its
    smallest dart, sorted by that dart.  Loop sides are not included."""
    seen = [False] * d.n_darts
    out = []
    for start in range(d.n_darts):
        if seen[start]:
            continue
        walk = []
        x = start
        while not seen[x]:
            seen[x] = True
            walk.append(x)
            x = sigma(d.theta[x])
        m = walk.index(min(walk))
        out.append(tuple(walk[m:] + walk[:m]))
    out.sort(key=lambda w: w[0])
    return tuple(out)


def face_of_dart(d: MarkedGraphDiagram, dart: int) -> int:
    """Index (into :func:`faces`) of the face traced from ``dart``."""
    for i, w in enumerate(faces(d)):
        if dart in w:
            return i
    raise DiagramError(f"dart {dart} out of range")


def n_faces(d: MarkedGraphDiagram) -> int:
    """Total face count including the two sides of every free loop."""
    return len(faces(d)) + 2 * d.n_loops


@lru_cache(maxsize=4096)
def component_partition(d: MarkedGraphDiagram) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Connected components of the underlying 4-valent graph plus loops.

    Each entry is (vertex ids, loop ids); components are ordered by their
    smallest vertex id, with single-loop components after all vertex
    components, in loop order.
    """
    n = d.n_vertices
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for dart, e in enumerate(d.theta):
        ra, rb = find(dart >> 2), find(e >> 2)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    comps = [(tuple(sorted(vs)), ()) for vs in groups.values()]
    comps.sort(key=lambda c: c[0][0])
    for li in range(d.n_loops):
        comps.append(((), (li,)))
    return tuple(comps)


def check_planarity(d: MarkedGraphDiagram) -> None:
    """Raise NonPlanarError unless every component satisfies V - E + F = 2."""
    fs = faces(d)
    for vs, ls in component_partition(d):
        if not vs:
            continue  # a free loop alone is a circle on its own sphere
        vset = set(vs)
        e = sum(1 for dart, p in enumerate(d.theta) if dart < p and (dart >> 2) in vset)
        f = sum(1 for w in fs if (w[0] >> 2) in vset)
        if len(vs) - e + f != 2:
            raise NonPlanarError(
                f"component with vertices {vs} has V-E+F = {len(vs)}-{e}+{f} != 2"
            )


# ---------------------------------------------------------------------------
# Building from documents and emitting back


def build(doc: MgdDocument) -> MarkedGraphDiagram:
    """Assemble the combinatorial map from a structurally valid document."""
    vstmts = doc.vertex_statements()
    loops = doc.loops()
    if not vstmts and not loops:
        raise EmptyDiagramError("document has no loop or vertex statements")

    kinds = tuple(CROSSING if isinstance(s, Crossing) else MARKED for s in vstmts)
    occurrences: dict[int, list[int]] = {}
    for v, s in enumerate(vstmts):
        for slot, e in enumerate(s.edges):
            occurrences.setdefault(e, []).append(4 * v + slot)
    theta = [0] * (4 * len(vstmts))
    for e, ds in occurrences.items():
        if len(ds) != 2:
            raise DanglingDartError(f"edge {e} has {len(ds)} ends")
        theta[ds[0]], theta[ds[1]] = ds[1], ds[0]

    d = MarkedGraphDiagram(kinds, tuple(theta), n_loops=len(loops))
    check_planarity(d)
    if doc.places():
        d = MarkedGraphDiagram(
            kinds, tuple(theta), n_loops=len(loops),
            placement=_resolve_places(d, doc, occurrences, loops),
        )
    return d


def _resolve_places(d, doc, occurrences, loops) -> tuple[tuple[int, int], ...]:
    loop_ids = [s.edge for s in loops]
    comps = component_partition(d)
    comp_of_vertex = {v: i for i, (vs, _) in enumerate(comps) for v in vs}
    comp_of_loop = {li: i for i, (_, ls) in enumerate(comps) for li in ls}
    nf = len(faces(d))
    entries = []
    for s in doc.places():
        if s.component >= len(comps):
            raise PlacementError(f"place names component {s.component}, diagram has {len(comps)}")
        tok = s.face
        if tok.endswith(("s0", "s1")):
            eid, side = int(tok[:-2]), int(tok[-1])
            if eid not in loop_ids:
                raise PlacementError(f"face token {tok!r}: no loop with edge id {eid}")
            li = loop_ids.index(eid)
            fidx = nf + 2 * li + side
            owner = comp_of_loop[li]
        else:
            eid, which = int(tok[:-1]), tok[-1]
            if eid not in occurrences:
                raise PlacementError(f"face token {tok!r}: no edge with id {eid}")
            dart = occurrences[eid][0 if which == "a" else 1]
            fidx = face_of_dart(d, dart)
            owner = comp_of_vertex[dart >> 2]
        if owner == s.component:
            raise PlacementError(f"component {s.component} cannot be placed in its own face")
        entries.append((s.component, fidx))
    # forest check: child -> owning component of the parent face
    children = [c for c, _ in entries]
    if len(set(children)) != len(children):
        raise PlacementError("component placed twice")
    parent_comp = {}
    for c, f in entries:
        parent_comp[c] = _face_owner(d, f)
    for c in children:
        seen = {c}
        p = parent_comp.get(c)
        while p is not None:
            if p in seen:
                raise PlacementError("placement forest has a cycle")
            seen.add(p)
            p = parent_comp.get(p)
    return tuple(sorted(entries))


def _face_owner(d: MarkedGraphDiagram, fidx: int) -> int:
    comps = component_partition(d)
    fs = faces(d)
    if fidx < len(fs):
        v = fs[fidx][0] >> 2
        for i, (vs, _) in enumerate(comps):
            if v in vs:
                return i
    else:
        li = (fidx - len(fs)) // 2
        for i, (_, ls) in enumerate(comps):
            if li in ls:
                return i
    raise PlacementError(f"face {fidx} out of range")


def to_document(d: MarkedGraphDiagram) -> MgdDocument:
    """Re-serialize a diagram; edges are numbered 1..E by smallest dart,
    then loops, with statements in vertex order."""
    edge_id = {}
    next_id = 1
    for dart, e in sorted(d.edges()):
        edge_id[dart] = edge_id[e] = next_id
        next_id += 1
    stmts: list = []
    for v, kind in enumerate(d.kinds):
        ids = tuple(edge_id[4 * v + s] for s in range(4))
        stmts.append(Crossing(ids) if kind == CROSSING else Marked(ids))
    for li in range(d.n_loops):
        stmts.append(Loop(next_id + li))
    for comp, fidx in d.placement:
        stmts.append(Place(comp, _face_token(d, fidx, edge_id, next_id)))
    return MgdDocument(1, tuple(stmts))


def _face_token(d, fidx, edge_id, first_loop_id) -> str:
    fs = faces(d)
    if fidx < len(fs):
        dart = fs[fidx][0]
        eid = edge_id[dart]
        which = "a" if dart < d.theta[dart] else "b"
        return f"{eid}{which}"
    li, side = divmod(fidx - len(fs), 2)
    return f"{first_loop_id + li}s{side}"


# ---------------------------------------------------------------------------
# Regions: global face structure with placement merging


@dataclass(frozen=True)
class Region:
    """One region of the diagram on the sphere.

    ``walks`` holds one dart walk per boundary piece coming from vertices;
    ``loop_sides`` the (loop, side) pieces; ``contained_components`` the
    components placed inside this region.  ``boundary`` is the primary walk.
    """

    id: int
    walks: tuple[tuple[int, ...], ...]
    loop_sides: tuple[tuple[int, int], ...]
    contained_components: tuple[int, ...]

    @property
    def boundary(self) -> tuple[int, ...]:
        return self.walks[0] if self.walks else ()


def _outer_face(d: MarkedGraphDiagram, comp: int) -> int:
    """The face a component shows to the rest of the diagram: the face
    containing its smallest dart, or side 0 of its loop."""
    vs, ls = component_partition(d)[comp]
    if vs:
        return face_of_dart(d, 4 * vs[0])
    return len(faces(d)) + 2 * ls[0]


def regions(d: MarkedGraphDiagram) -> tuple[Region, ...]:
    """Complete region list, smallest-dart walks first, deterministic.

    Faces of split components merge: every root component shows its outer
    face to the shared outer region; a placed component's outer face merges
    into the face it was placed in.
    """
    fs = faces(d)
    nf = len(fs)
    total = nf + 2 * d.n_loops
    parent = list(range(total))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    comps = component_partition(d)
    placed = dict(d.placement)
    roots = [c for c in range(len(comps)) if c not in placed]
    for c, f in placed.items():
        union(_outer_face(d, c), f)
    for c in roots[1:]:
        union(_outer_face(d, roots[0]), _outer_face(d, c))

    # a region "contains" the components whose outer face it absorbed,
    # other than the component owning the region's own boundary
    contained: dict[int, set[int]] = {}
    if len(comps) > 1:
        for c, f in placed.items():
            contained.setdefault(find(f), set()).add(c)
        shared = find(_outer_face(d, roots[0]))
        for c in roots:
            contained.setdefault(shared, set()).add(c)

    groups: dict[int, list[int]] = {}
    for f in range(total):
        groups.setdefault(find(f), []).append(f)
    out = []
    for rep in sorted(groups):
        members = groups[rep]
        walks = tuple(fs[f] for f in members if f < nf)
        loop_sides = tuple(divmod(f - nf, 2) for f in members if f >= nf)
        out.append(Region(
            id=len(out),
            walks=walks,
            loop_sides=loop_sides,
            contained_components=tuple(sorted(contained.get(rep, ()))),
        ))
    return tuple(out)


# ---------------------------------------------------------------------------
# Canonical codes


def _traverse(kinds, theta, start):
    """Deterministic breadth-first relabeling from one starting dart.

    Returns (code bytes, dart -> new id).  The code lists, per visited
    vertex, a kind/parity symbol and the relabeled edge partner of each of
    its darts taken in rotation order from the entry dart.
    """
    new_id: dict[int, int] = {}
    entry: dict[int, int] = {}
    order: list[int] = []
    queue = deque([start])
    while queue:
        dart = queue.popleft()
        v = dart >> 2
        if v in entry:
            continue
        entry[v] = dart
        order.append(v)
        base = 4 * (len(order) - 1)
        s0 = dart & 3
        for k in range(4):
            x = (v << 2) | ((s0 + k) & 3)
            new_id[x] = base + k
            queue.append(theta[x])
    parts = []
    for v in order:
        s0 = entry[v] & 3
        sym = ("X", "Y")[s0 & 1] if kinds[v] == CROSSING else ("M", "N")[s0 & 1]
        targets = ",".join(
            str(new_id[theta[(v << 2) | ((s0 + k) & 3)]]) for k in range(4)
        )
        parts.append(sym + targets)
    return ";".join(parts).encode("ascii"), new_id


@lru_cache(maxsize=16384)
def canonical_code(d: MarkedGraphDiagram) -> bytes:
    """Relabeling-invariant key: per component, the minimum traversal code
    over all starting darts; components sorted; placement appended."""
    comps = component_partition(d)
    results = []
    for vs, ls in comps:
        if not vs:
            results.append((b"O", None))
            continue
        best = None
        best_map = None
        for v in vs:
            for s in range(4):
                code, idmap = _traverse(d.kinds, d.theta, 4 * v + s)
                if best is None or code < best:
                    best, best_map = code, idmap
        results.append((best, best_map))
    ranked = sorted(range(len(results)), key=lambda i: results[i][0])
    body = b"|".join(results[i][0] for i in ranked)
    if not d.placement:
        return body
    # canonical face rank: faces of the owner sorted by min relabeled dart
    rank_of = {c: r for r, c in enumerate(ranked)}
    fs = faces(d)
    suffix = []
    for comp, fidx in sorted(d.placement):
        owner = _face_owner(d, fidx)
        if fidx < len(fs):
            idmap = results[owner][1]
            owner_faces = sorted(
                (min(idmap[x] for x in w) for w in fs if w[0] in idmap),
            )
            frank = owner_faces.index(min(results[owner][1][x] for x in fs[fidx]))
        else:
            frank = (fidx - len(fs)) % 2
        suffix.append(f"{rank_of[comp]}<{rank_of[owner]}.{frank}")
    return body + b"!" + ";".join(suffix).encode("ascii")


def components(d: MarkedGraphDiagram) -> tuple[MarkedGraphDiagram, ...]:
    """Each connected component as a standalone diagram, placement dropped."""
    out = []
    for vs, ls in component_partition(d):
        if not vs:
            out.append(MarkedGraphDiagram((), (), n_loops=1))
            continue
        remap = {v: i for i, v in enumerate(vs)}
        kinds = tuple(d.kinds[v] for v in vs)
        theta = [0] * (4 * len(vs))
        for v in vs:
            for s in range(4):
                dart = 4 * v + s
                e = d.theta[dart]
                theta[4 * remap[v] + s] = 4 * remap[e >> 2] + (e & 3)
        out.append(MarkedGraphDiagram(kinds, tuple(theta)))
    return tuple(out)


# ---------------------------------------------------------------------------
# The rewrite engine: splices, cuts, vertex surgery
#
# Ports name the loose ends produced by a surgery:
#   ("d", dart)      a dart of a removed vertex; wiring says where its
#                    attachment goes (unwired: the attachment dies, legal
#                    only if the whole chain dies with it)
#   ("c", dart)      a surviving dart whose edge was cut mid-span
#   ("n", vi, slot)  slot of the vi-th appended vertex
#   ("l", li, end)   an end of cut-open free loop li

Port = tuple


def rewrite(
    d: MarkedGraphDiagram,
    *,
    remove_vertices: Sequence[int] = (),
    cut_darts: Sequence[int] = (),
    cut_loops: Sequence[int] = (),
    new_vertices: Sequence[str] = (),
    wiring: Sequence[tuple[Port, Port]] = (),
) -> tuple[MarkedGraphDiagram, dict]:
    """Apply a local surgery and return (diagram, bookkeeping).

    ``cut_darts`` cuts the edge containing each named dart (one dart per
    edge suffices; both stubs become ports).  Chains of pass-through nodes
    are contracted into single edges; closed chains become free loops.

    The bookkeeping dict maps old surviving vertex -> new vertex index,
    ("n", vi) -> new vertex index, and "new_loops" -> number of free loops
    created by closed chains.
    """
    removed = set(remove_vertices)
    for v in removed:
        if not 0 <= v < d.n_vertices:
            raise DiagramError(f"no vertex {v}")

    cut = set()
    for dart in cut_darts:
        cut.add(dart)
        cut.add(d.theta[dart])
    for dart in cut:
        if (dart >> 2) in removed:
            raise DiagramError("cannot cut an edge at a removed vertex")

    cut_loop_set = set(cut_loops)

    # node space: old darts, new slots, loop-cut ends
    def nkey(port):
        tag = port[0]
        if tag == "d":
            if (port[1] >> 2) not in removed:
                raise DiagramError(f"port {port} is not a removed-vertex dart")
            return ("o", port[1])
        if tag == "c":
            if port[1] not in cut:
                raise DiagramError(f"port {port} is not a cut stub")
            return ("o", port[1])
        if tag == "n":
            return ("n", port[1], port[2])
        if tag == "l":
            if port[1] not in cut_loop_set:
                raise DiagramError(f"port {port} names an uncut loop")
            return ("l", port[1], port[2])
        raise DiagramError(f"bad port {port}")

    theta_link: dict = {}
    for dart, e in enumerate(d.theta):
        if dart not in cut:
            theta_link[("o", dart)] = ("o", e)
    for li in cut_loop_set:
        theta_link[("l", li, 0)] = ("l", li, 1)
        theta_link[("l", li, 1)] = ("l", li, 0)

    wire_link: dict = {}
    for a, b in wiring:
        ka, kb = nkey(a), nkey(b)
        for k in (ka, kb):
            if k in wire_link:
                raise DiagramError(f"port {k} wired twice")
        wire_link[ka] = kb
        wire_link[kb] = ka

    def is_terminal(node):
        if node[0] == "o":
            return (node[1] >> 2) not in removed
        if node[0] == "n":
            return True
        return False  # loop-cut ends are pass-through

    def links_of(node):
        out = []
        if node[0] == "o":
            dart = node[1]
            if (dart >> 2) in removed:
                out.append(theta_link[node])  # removed darts keep their edge
                if node in wire_link:
                    out.append(wire_link[node])
            elif dart in cut:
                if node not in wire_link:
                    raise DanglingDartError(f"cut stub {dart} left unwired")
                out.append(wire_link[node])
            else:
                out.append(theta_link[node])
        elif node[0] == "n":
            if node not in wire_link:
                raise DanglingDartError(f"new slot {node[1:]} left unwired")
            out.append(wire_link[node])
        else:
            out.append(theta_link[node])
            if node not in wire_link:
                raise DanglingDartError(f"cut loop end {node[1:]} left unwired")
            out.append(wire_link[node])
        return out

    # walk maximal alternating chains from every terminal
    pairs: list[tuple] = []
    visited: set = set()

    def walk(start):
        prev = start
        nxt = links_of(start)[0]
        while not is_terminal(nxt):
            visited.add(nxt)
            options = [x for x in links_of(nxt) if x != prev]
            if len(options) != 1:
                # a degree-1 pass-through: the chain dies here
                return None
            prev, nxt = nxt, options[0]
        return nxt

    n_survive = d.n_vertices - len(removed)
    old2new = {}
    i = 0
    for v in range(d.n_vertices):
        if v not in removed:
            old2new[v] = i
            i += 1
    new_index = {("n", vi): n_survive + vi for vi in range(len(new_vertices))}

    def final_dart(node):
        if node[0] == "o":
            return 4 * old2new[node[1] >> 2] + (node[1] & 3)
        return 4 * new_index[("n", node[1])] + node[2]

    kinds = tuple(d.kinds[v] for v in range(d.n_vertices) if v not in removed) + tuple(new_vertices)
    theta = [-1] * (4 * len(kinds))
    for v in range(d.n_vertices):
        if v in removed:
            continue
        for s in range(4):
            node = ("o", 4 * v + s)
            if node in visited:
                continue
            end = walk(node)
            if end is None:
                raise DanglingDartError(f"dart {4 * v + s} leads into a dying chain")
            a, b = final_dart(node), final_dart(end)
            theta[a], theta[b] = b, a
            visited.add(node)
            visited.add(end)
    for vi in range(len(new_vertices)):
        for s in range(4):
            node = ("n", vi, s)
            if node in visited:
                continue
            end = walk(node)
            if end is None:
                raise DanglingDartError(f"new slot ({vi},{s}) leads into a dying chain")
            a, b = final_dart(node), final_dart(end)
            theta[a], theta[b] = b, a
            visited.add(node)
            visited.add(end)

    # closed chains among pass-through nodes -> new free loops
    new_loops = 0
    for node in list(theta_link) + list(wire_link):
        if node in visited or is_terminal(node):
            continue
        if node[0] == "o" and (node[1] >> 2) not in removed:
            continue
        # trace the cycle (or dying open chain) through this node
        cycle = True
        chain = [node]
        prev, cur = node, links_of(node)[0]
        while cur != node:
            if is_terminal(cur):
                cycle = False
                break
            opts = [x for x in links_of(cur) if x != prev]
            if not opts:
                cycle = False
                break
            chain.append(cur)
            prev, cur = cur, opts[0]
        for x in chain:
            visited.add(x)
        if cycle:
            # wired cycles become loops; bare old edges between removed darts die
            if any(x in wire_link or x[0] == "l" for x in chain):
                new_loops += 1

    surviving_loops = d.n_loops - len(cut_loop_set)
    result = MarkedGraphDiagram(
        kinds, tuple(theta), n_loops=surviving_loops + new_loops, placement=()
    )
    info = dict(old2new)
    info.update(new_index)
    info["new_loops"] = new_loops
    return result, info


def relabel_vertex_start(d: MarkedGraphDiagram, v: int, shift: int) -> MarkedGraphDiagram:
    """Rotate the slot numbering of vertex ``v`` by ``shift`` positions.

    A shift of 2 yields the identical diagram; a shift of 1 swaps the
    over/under strands of a crossing or the marker corners of a marked
    vertex.  Used by the move engine for marker rotations.
    """
    perm = list(range(d.n_darts))
    for s in range(4):
        perm[4 * v + ((s + shift) & 3)] = 4 * v + s
    inv = [0] * d.n_darts
    for i, p in enumerate(perm):
        inv[p] = i
    theta = [0] * d.n_darts
    for dart in range(d.n_darts):
        theta[inv[dart]] = inv[d.theta[dart]]
    return MarkedGraphDiagram(d.kinds, tuple(theta), n_loops=d.n_loops, placement=d.placement)
