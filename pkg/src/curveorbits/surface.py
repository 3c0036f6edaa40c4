"""Surfaces, pants decompositions, and the oriented hexagon-edge alphabet.

A compact oriented surface of genus ``g`` with ``n`` boundary components
(negative Euler characteristic) is cut by ``m = 3g - 3 + 2n`` simple closed
curves (boundary curves included) into ``2g - 2 + n`` pairs of pants.  Each
pair of pants is further cut along three seams into two hexagons whose
corners match up across the cuffs, so that the union of the cuff curves and
seams is a 4-valent graph on the interior of the surface.  Words describing
closed curves are spelled in the oriented edges of that graph.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SurfaceSig:
    """Topological type (genus, number of boundary components)."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary count must be nonnegative")
        if 2 * self.genus - 2 + self.boundary <= 0:
            raise ValueError(
                f"surface ({self.genus},{self.boundary}) admits no pants "
                "decomposition (need 2g - 2 + n > 0)"
            )

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def num_curves(self) -> int:
        """m = 3g - 3 + 2n, boundary curves included."""
        return 3 * self.genus - 3 + 2 * self.boundary

    @property
    def num_pants(self) -> int:
        return 2 * self.genus - 2 + self.boundary

    @property
    def pi1_rank(self) -> int:
        """Rank of the fundamental group when the surface has boundary."""
        return 2 * self.genus + self.boundary - 1 if self.boundary else 2 * self.genus


@dataclass(frozen=True)
class Curve:
    """One pants curve.  ``sides`` lists the (pants, slot) pairs glued to it.

    Interior curves have two sides, boundary curves one.  The first listed
    side is the conventional positive side.
    """

    index: int
    sides: tuple[tuple[int, int], ...]

    @property
    def is_boundary(self) -> bool:
        return len(self.sides) == 1

    @property
    def positive_side(self) -> tuple[int, int]:
        return self.sides[0]


class PantsDecomposition:
    """Pants decomposition given by slot-level gluing data.

    ``pants[p][j]`` is the curve index sitting in slot ``j`` of pants ``p``.
    """

    def __init__(self, sig: SurfaceSig, pants_slots: list[tuple[int, int, int]]):
        self.sig = sig
        self.pants = [tuple(s) for s in pants_slots]
        sides: dict[int, list[tuple[int, int]]] = {}
        for p, slots in enumerate(self.pants):
            for j, c in enumerate(slots):
                sides.setdefault(c, []).append((p, j))
        self.curves = [
            Curve(c, tuple(sorted(sides[c]))) for c in sorted(sides)
        ]
        self._check()

    def _check(self):
        sig = self.sig
        if len(self.pants) != sig.num_pants:
            raise ValueError("wrong number of pants")
        if len(self.curves) != sig.num_curves:
            raise ValueError("wrong number of curves")
        if [c.index for c in self.curves] != list(range(len(self.curves))):
            raise ValueError("curve indices must be 0..m-1")
        n_bdry = sum(1 for c in self.curves if c.is_boundary)
        if n_bdry != sig.boundary:
            raise ValueError("boundary curve count does not match signature")
        for c in self.curves:
            if len(c.sides) not in (1, 2):
                raise ValueError(f"curve {c.index} glued to {len(c.sides)} slots")
        if not self._connected():
            raise ValueError("pants decomposition is not connected")

    def _connected(self) -> bool:
        if not self.pants:
            return False
        seen = {0}
        stack = [0]
        adj: dict[int, set[int]] = {p: set() for p in range(len(self.pants))}
        for c in self.curves:
            if len(c.sides) == 2:
                (p, _), (q, _) = c.sides
                adj[p].add(q)
                adj[q].add(p)
        while stack:
            p = stack.pop()
            for q in adj[p]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return len(seen) == len(self.pants)

    @property
    def interior_curves(self) -> list[Curve]:
        return [c for c in self.curves if not c.is_boundary]

    @property
    def boundary_curves(self) -> list[Curve]:
        return [c for c in self.curves if c.is_boundary]

    def curve(self, index: int) -> Curve:
        return self.curves[index]

    # -- dual graph ---------------------------------------------------------

    def dual_graph(self) -> "DualGraph":
        edges = []
        legs = [0] * len(self.pants)
        for c in self.curves:
            if c.is_boundary:
                legs[c.sides[0][0]] += 1
            else:
                edges.append((c.sides[0][0], c.sides[1][0]))
        return DualGraph(len(self.pants), edges, legs)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "genus": self.sig.genus,
            "boundary": self.sig.boundary,
            "pants": [list(s) for s in self.pants],
            "curves": [
                {"index": c.index, "sides": [list(s) for s in c.sides]}
                for c in self.curves
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PantsDecomposition":
        sig = SurfaceSig(d["genus"], d["boundary"])
        return cls(sig, [tuple(s) for s in d["pants"]])

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def __repr__(self):
        return (f"PantsDecomposition(g={self.sig.genus}, n={self.sig.boundary}, "
                f"pants={self.pants})")


class DualGraph:
    """Trivalent multigraph dual to a pants decomposition, with legs.

    Vertices are pants; interior curves are edges (loops allowed); boundary
    curves are unlabeled legs.
    """

    def __init__(self, n: int, edges: list[tuple[int, int]], legs: list[int]):
        self.n = n
        self.edges = sorted(tuple(sorted(e)) for e in edges)
        self.legs = list(legs)
        for v in range(n):
            deg = self.legs[v] + sum(
                (2 if e == (v, v) else 1) for e in self.edges if v in e
            )
            if deg != 3:
                raise ValueError(f"vertex {v} has degree {deg}, expected 3")

    def canonical_key(self) -> tuple:
        """Canonical form under vertex relabeling (legs unlabeled)."""
        best = None
        for perm in itertools.permutations(range(self.n)):
            edges = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in self.edges)
            legs = [0] * self.n
            for v, k in enumerate(self.legs):
                legs[perm[v]] = k
            key = (tuple(edges), tuple(legs))
            if best is None or key < best:
                best = key
        return best

    def is_isomorphic(self, other: "DualGraph") -> bool:
        return self.n == other.n and self.canonical_key() == other.canonical_key()

    @property
    def first_betti(self) -> int:
        return len(self.edges) - self.n + 1


def _chain_slots(nn: int) -> tuple[list[list], int]:
    """Slot table for the linear-chain decomposition of a genus-0 surface
    with ``nn >= 3`` boundary components.  Returns (slots, number of legs).

    Slot entries are ``("leg", k)`` or ``("link", i)`` placeholders; links
    join pants i and i+1.
    """
    p = nn - 2
    slots: list[list] = []
    if p == 1:
        slots.append([("leg", 0), ("leg", 1), ("leg", 2)])
        return slots, 3
    leg = 0
    for i in range(p):
        row: list = []
        if i == 0:
            row = [("leg", 0), ("leg", 1), ("link", 0)]
            leg = 2
        elif i == p - 1:
            row = [("link", i - 1), ("leg", leg), ("leg", leg + 1)]
            leg += 2
        else:
            row = [("link", i - 1), ("leg", leg), ("link", i)]
            leg += 1
        slots.append(row)
    return slots, leg


def standard_pants_decomposition(sig: SurfaceSig) -> PantsDecomposition:
    """Deterministic pants decomposition of the (g, n) surface.

    Built from the linear chain for the (0, n + 2g) surface by gluing the
    trailing 2g legs in consecutive pairs, adding one handle per pair.
    """
    nn = sig.boundary + 2 * sig.genus
    slots, nlegs = _chain_slots(nn)
    assert nlegs == nn
    # legs 0..n-1 stay boundary; legs n, n+1 glue together, etc.
    glue: dict[int, int] = {}
    for k in range(sig.genus):
        a, b = sig.boundary + 2 * k, sig.boundary + 2 * k + 1
        glue[a] = b
        glue[b] = a

    # Assign curve indices: boundary legs first is not required; keep the
    # discovery order over slots so indices are stable.
    curve_of: dict = {}
    next_id = 0
    pants_slots = []
    for row in slots:
        out = []
        for kind, k in row:
            key = (kind, k) if kind == "link" else ("leg", min(k, glue.get(k, k)))
            if key not in curve_of:
                curve_of[key] = next_id
                next_id += 1
            out.append(curve_of[key])
        pants_slots.append(tuple(out))
    return PantsDecomposition(sig, pants_slots)


def pants_from_dual_graph(sig: SurfaceSig, graph: DualGraph) -> PantsDecomposition:
    """Realize a trivalent dual graph (with legs) as a pants decomposition."""
    pants_slots = [[None, None, None] for _ in range(graph.n)]

    def fill(v: int, c: int):
        j = pants_slots[v].index(None)
        pants_slots[v][j] = c

    next_id = 0
    for u, v in graph.edges:
        fill(u, next_id)
        if u == v:
            fill(v, next_id)
        else:
            fill(v, next_id)
        next_id += 1
    for v, k in enumerate(graph.legs):
        for _ in range(k):
            fill(v, next_id)
            next_id += 1
    return PantsDecomposition(sig, [tuple(s) for s in pants_slots])


def _trivalent_graphs(n_vertices: int, n_legs: int):
    """All connected trivalent multigraphs on ``n_vertices`` with ``n_legs``
    unlabeled legs, one representative per isomorphism class."""
    found: dict[tuple, DualGraph] = {}
    # leg distribution over vertices, then a symmetric adjacency with loops
    for legdist in _compositions(n_legs, n_vertices):
        degs = [3 - k for k in legdist]
        if any(d < 0 for d in degs):
            continue
        for adj in _symmetric_fill(degs):
            edges = []
            for v in range(n_vertices):
                edges.extend([(v, v)] * adj[v][v])
            for u in range(n_vertices):
                for v in range(u + 1, n_vertices):
                    edges.extend([(u, v)] * adj[u][v])
            try:
                g = DualGraph(n_vertices, edges, list(legdist))
            except ValueError:
                continue
            if not _graph_connected(g):
                continue
            key = g.canonical_key()
            if key not in found:
                found[key] = g
    return [found[k] for k in sorted(found)]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _symmetric_fill(degs: list[int]):
    """Symmetric nonnegative integer matrices with prescribed row sums,
    diagonal entries counting twice (loop ends)."""
    n = len(degs)
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    mat = [[0] * n for _ in range(n)]
    rem = list(degs)

    def rec(k: int):
        if k == len(cells):
            if all(r == 0 for r in rem):
                yield [row[:] for row in mat]
            return
        i, j = cells[k]
        if i == j:
            cap = rem[i] // 2
            step = 2
        else:
            cap = min(rem[i], rem[j])
            step = 1
        for val in range(cap + 1):
            mat[i][j] = mat[j][i] = val
            rem[i] -= val * (2 if i == j else 1)
            if i != j:
                rem[j] -= val
            if rem[i] >= 0 and rem[j] >= 0:
                yield from rec(k + 1)
            rem[i] += val * (2 if i == j else 1)
            if i != j:
                rem[j] += val
        mat[i][j] = mat[j][i] = 0

    yield from rec(0)


def _graph_connected(g: DualGraph) -> bool:
    if g.n == 1:
        return True
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def enumerate_pants_orbit_reps(sig: SurfaceSig) -> list[PantsDecomposition]:
    """One pants decomposition per mapping-class-group orbit.

    Orbits of pants decompositions correspond to isomorphism classes of
    connected trivalent dual multigraphs with the right first Betti number
    and number of (unlabeled) legs.
    """
    graphs = [
        g
        for g in _trivalent_graphs(sig.num_pants, sig.boundary)
        if g.first_betti == sig.genus
    ]
    return [pants_from_dual_graph(sig, g) for g in graphs]


# ---------------------------------------------------------------------------
# Hexagon alphabet
# ---------------------------------------------------------------------------

# Edge ids are ("arc", curve, 0|1) or ("seam", pants, j); arc 0 runs from
# vertex R(c) to Q(c), arc 1 from Q(c) back to R(c).  Seam j of a pants joins
# Q(curve in slot j) to R(curve in slot j+1).  Oriented edges ("darts") are
# (edge id, +1|-1).

EdgeId = tuple
Dart = tuple


def reverse(dart: Dart) -> Dart:
    e, s = dart
    return (e, -s)


@dataclass(frozen=True)
class Wall:
    """One side of one hexagon: an oriented edge in the hexagon's boundary."""

    dart: Dart
    tail: tuple
    head: tuple


class HexagonAlphabet:
    """Oriented-edge alphabet of the matched hexagon decomposition.

    Carries the full incidence combinatorics: hexagon boundary cycles,
    vertex/dart structure, the face map used to recover vertex rotations,
    and sided seam data for interior/bridging classification.
    """

    def __init__(self, pd: PantsDecomposition):
        self.pd = pd
        sig = pd.sig
        self.vertices: list[tuple] = []
        for c in pd.curves:
            self.vertices.append(("Q", c.index))
            self.vertices.append(("R", c.index))

        self.edges: dict[EdgeId, tuple] = {}  # edge -> (tail, head)
        for c in pd.curves:
            self.edges[("arc", c.index, 0)] = (("R", c.index), ("Q", c.index))
            self.edges[("arc", c.index, 1)] = (("Q", c.index), ("R", c.index))
        for p, slots in enumerate(pd.pants):
            for j in range(3):
                cj, cn = slots[j], slots[(j + 1) % 3]
                self.edges[("seam", p, j)] = (("Q", cj), ("R", cn))

        # side of each slot: +1 if it is the positive side of its curve
        self.slot_sign: dict[tuple[int, int], int] = {}
        for c in pd.curves:
            for k, side in enumerate(c.sides):
                self.slot_sign[side] = 1 if k == 0 else -1

        self.hexagons: dict[tuple, list[Dart]] = {}
        for p, slots in enumerate(pd.pants):
            front = []
            for j in range(3):
                front.append(self._slot_arc_dart(p, j, front_side=True))
                front.append((("seam", p, j), 1))
            back = []
            for j in (0, 2, 1):
                back.append(self._slot_arc_dart(p, j, front_side=False))
                back.append((("seam", p, (j - 1) % 3), -1))
            self.hexagons[("hex", p, 0)] = front
            self.hexagons[("hex", p, 1)] = back

        self._index()

    def _slot_arc_dart(self, p: int, j: int, front_side: bool) -> Dart:
        """Arc dart used by the front/back hexagon of pants p at slot j.

        The positive side's front hexagon uses arc 0 forward; the negative
        side sees the opposite arc, so matching across the curve is fixed by
        gluing Q to Q and R to R.
        """
        c = self.pd.pants[p][j]
        pos = self.slot_sign[(p, j)] == 1
        if front_side:
            return (("arc", c, 0), 1) if pos else (("arc", c, 1), -1)
        return (("arc", c, 1), 1) if pos else (("arc", c, 0), -1)

    def _index(self):
        self.dart_hexagon: dict[Dart, tuple] = {}
        self.dart_pos: dict[Dart, int] = {}
        for h, cycle in self.hexagons.items():
            # validate head-to-tail closure
            for k, d in enumerate(cycle):
                if self.dart_head(d) != self.dart_tail(cycle[(k + 1) % 6]):
                    raise AssertionError(f"hexagon {h} does not close at {k}")
                if d in self.dart_hexagon:
                    raise AssertionError(f"dart {d} on two hexagons")
                self.dart_hexagon[d] = h
                self.dart_pos[d] = k

        # boundary faces: darts missing from all hexagons run along the
        # boundary of the surface
        self.boundary_faces: dict[int, list[Dart]] = {}
        for c in self.pd.boundary_curves:
            cyc = [(("arc", c.index, 0), -1), (("arc", c.index, 1), -1)]
            for d in cyc:
                if d in self.dart_hexagon:
                    raise AssertionError("boundary dart claimed by a hexagon")
            self.boundary_faces[c.index] = cyc

        all_darts = set()
        for e in self.edges:
            all_darts.add((e, 1))
            all_darts.add((e, -1))
        covered = set(self.dart_hexagon)
        for cyc in self.boundary_faces.values():
            covered.update(cyc)
        if covered != all_darts:
            raise AssertionError("face cycles do not cover every dart exactly once")

        # face-successor permutation over darts
        self._face_next: dict[Dart, Dart] = {}
        for cycle in itertools.chain(
            self.hexagons.values(), self.boundary_faces.values()
        ):
            for k, d in enumerate(cycle):
                self._face_next[d] = cycle[(k + 1) % len(cycle)]

        self.darts_at: dict[tuple, list[Dart]] = {v: [] for v in self.vertices}
        for e, (t, h) in self.edges.items():
            self.darts_at[t].append((e, 1))
            self.darts_at[h].append((e, -1))

        # seam endpoint sides, used for interior/bridging classification:
        # the Q-end of seam (p, j) approaches its curve from the side (p, j);
        # the R-end approaches slot (p, j+1)'s curve from side (p, j+1).
        self.seam_end_side: dict[tuple[Dart, tuple], int] = {}
        for p, slots in enumerate(self.pd.pants):
            for j in range(3):
                e = ("seam", p, j)
                q_v, r_v = self.edges[e]
                self.seam_end_side[((e, 1), q_v)] = self.slot_sign[(p, j)]
                self.seam_end_side[((e, 1), r_v)] = self.slot_sign[(p, (j + 1) % 3)]
                self.seam_end_side[((e, -1), q_v)] = self.slot_sign[(p, j)]
                self.seam_end_side[((e, -1), r_v)] = self.slot_sign[(p, (j + 1) % 3)]

        self._check_counts()

    # -- basic queries ------------------------------------------------------

    def dart_tail(self, d: Dart) -> tuple:
        e, s = d
        t, h = self.edges[e]
        return t if s == 1 else h

    def dart_head(self, d: Dart) -> tuple:
        e, s = d
        t, h = self.edges[e]
        return h if s == 1 else t

    def edge_kind(self, e: EdgeId) -> str:
        return e[0]

    def is_seam(self, d: Dart) -> bool:
        return d[0][0] == "seam"

    def is_arc(self, d: Dart) -> bool:
        return d[0][0] == "arc"

    def arc_curve(self, d: Dart) -> int:
        return d[0][1]

    def face_next(self, d: Dart) -> Dart:
        return self._face_next[d]

    def vertex_rotation(self, v: tuple) -> list[Dart]:
        """Cyclic order of outgoing darts around ``v`` induced by the faces."""
        outs = [d for d in self.darts_at[v]]
        rot = []
        d = outs[0]
        for _ in range(len(outs)):
            rot.append(d)
            d = self.face_next(reverse(d))
            if self.dart_tail(d) != v:
                raise AssertionError("rotation left the vertex")
        if set(rot) != set(outs) or len(rot) != len(outs):
            raise AssertionError(f"rotation at {v} is not a single cycle")
        return rot

    def hexagons_of_edge(self, e: EdgeId) -> list[tuple]:
        out = []
        for s in (1, -1):
            h = self.dart_hexagon.get((e, s))
            if h is not None:
                out.append(h)
        return out

    def seam_side_at(self, seam_dart: Dart, v: tuple) -> int:
        """Side (+1/-1) of the curve through ``v`` from which this seam meets it."""
        return self.seam_end_side[(seam_dart, v)]

    # -- invariants ---------------------------------------------------------

    def _check_counts(self):
        sig = self.pd.sig
        m = sig.num_curves
        n_arc_oriented = sum(2 for e in self.edges if e[0] == "arc")
        if n_arc_oriented != 4 * m:
            raise AssertionError("expected 4m oriented boundary edges")
        n_seam = sum(1 for e in self.edges if e[0] == "seam")
        if n_seam != 3 * sig.num_pants:
            raise AssertionError("expected 3 seams per pants")
        for h, cyc in self.hexagons.items():
            kinds = [d[0][0] for d in cyc]
            if kinds != ["arc", "seam"] * 3:
                raise AssertionError(f"hexagon {h} does not alternate arc/seam")
        # Euler characteristic of the closed-up complex
        V = len(self.vertices)
        E = len(self.edges)
        F = len(self.hexagons)
        if V - E + F != sig.euler:
            raise AssertionError("hexagon complex has wrong Euler characteristic")

    @property
    def num_oriented_boundary_edges(self) -> int:
        return 4 * self.pd.sig.num_curves

    @property
    def num_oriented_seam_edges(self) -> int:
        return 6 * self.pd.sig.num_pants

    def all_darts(self) -> list[Dart]:
        out = []
        for e in sorted(self.edges, key=edge_sort_key):
            out.append((e, 1))
            out.append((e, -1))
        return out

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        def enc_edge(e):
            return list(e)

        return {
            "pants_decomposition": self.pd.to_json_dict(),
            "vertices": [list(v) for v in self.vertices],
            "edges": {
                _edge_str(e): [list(t), list(h)] for e, (t, h) in self.edges.items()
            },
            "hexagons": {
                _hex_str(h): [[_edge_str(d[0]), d[1]] for d in cyc]
                for h, cyc in self.hexagons.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def edge_sort_key(e: EdgeId):
    return (e[0], e[1], e[2])


def dart_sort_key(d: Dart):
    return (edge_sort_key(d[0]), -d[1])


def _edge_str(e: EdgeId) -> str:
    return f"{e[0]}:{e[1]}:{e[2]}"


def _hex_str(h: tuple) -> str:
    return f"hex:{h[1]}:{h[2]}"


def dart_str(d: Dart) -> str:
    e, s = d
    return _edge_str(e) + ("+" if s == 1 else "-")


def parse_dart(s: str) -> Dart:
    body, sign = s[:-1], s[-1]
    kind, a, b = body.split(":")
    return ((kind, int(a), int(b)), 1 if sign == "+" else -1)


def hexagon_alphabet(pd: PantsDecomposition) -> HexagonAlphabet:
    return HexagonAlphabet(pd)
