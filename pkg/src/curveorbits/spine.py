"""Free-group model of the fundamental group for surfaces with boundary.

The hexagon complex collapses through free faces (every collapse removes
one hexagon together with an edge lying on no other hexagon) down to a
spine graph embedded in the surface.  Contracting a spanning tree of the
spine gives a one-vertex fat graph: a free basis together with the cyclic
order of the 2r letter-directions induced by the surface's orientation.
That cyclic order is what drives the combinatorial self-intersection
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import Dart, HexagonAlphabet, edge_sort_key, reverse


@dataclass
class SpineGroup:
    """One-vertex fat graph presenting pi_1 of a surface with boundary.

    Letters are nonzero integers ``+-1..+-rank``; ``rotation`` lists all
    ``2 * rank`` letters in their cyclic order around the vertex.
    """

    rank: int
    rotation: tuple[int, ...]
    genus: int
    boundary: int

    def __post_init__(self):
        expect = {i for i in range(-self.rank, self.rank + 1) if i != 0}
        if set(self.rotation) != expect or len(self.rotation) != 2 * self.rank:
            raise ValueError("rotation must list every letter direction once")

    def boundary_cycles(self) -> int:
        nxt = {}
        n = len(self.rotation)
        for k, a in enumerate(self.rotation):
            nxt[a] = self.rotation[(k + 1) % n]
        seen = set()
        cycles = 0
        for a in self.rotation:
            if a in seen:
                continue
            cycles += 1
            d = a
            while d not in seen:
                seen.add(d)
                d = nxt[-d]
        return cycles


def cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    w = list(word)
    # free reduction
    out = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    # cyclic reduction
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def invert(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(word))


def primitive_root(word: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Smallest u and k >= 1 with word = u^k (word assumed cyclically reduced)."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p:
            continue
        if all(word[i] == word[i % p] for i in range(n)):
            return tuple(word[:p]), n // p
    raise AssertionError("unreachable")


def conjugacy_key(word: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical representative of the conjugacy classes of w and w^{-1}."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for cand in (w, invert(w)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            if best is None or rot < best:
                best = rot
    return best


class Spine:
    """Collapse data for one hexagon alphabet."""

    def __init__(self, alph: HexagonAlphabet):
        self.alph = alph
        sig = alph.pd.sig
        if sig.boundary == 0:
            raise ValueError("closed surface: fundamental group is not free")
        self._collapse()
        self._contract_tree()
        self._check_topology()

    # -- collapsing through free faces --------------------------------------

    def _collapse(self):
        alph = self.alph
        faces = {h: list(cyc) for h, cyc in alph.hexagons.items()}
        mult: dict = {}
        for cyc in faces.values():
            for d in cyc:
                mult[d[0]] = mult.get(d[0], 0) + 1
        self.rules: list[tuple[Dart, list[Dart]]] = []
        while faces:
            free_edge = None
            for h, cyc in sorted(faces.items()):
                for d in cyc:
                    if mult[d[0]] == 1:
                        free_edge = (h, d)
                        break
                if free_edge:
                    break
            if free_edge is None:
                raise AssertionError("no free face: complex is not collapsible")
            h, d = free_edge
            cyc = faces.pop(h)
            k = cyc.index(d)
            rest = cyc[k + 1:] + cyc[:k]
            # boundary of h is d . rest ~ trivial, so d rewrites to rest^{-1}
            self.rules.append((d, [reverse(x) for x in reversed(rest)]))
            for x in cyc:
                mult[x[0]] -= 1
        self.collapsed = {d[0] for d, _ in self.rules}
        self.spine_edges = sorted(
            (e for e in alph.edges if e not in self.collapsed), key=edge_sort_key
        )

    def expand(self, darts) -> list[Dart]:
        """Rewrite a dart path over the spine edges only."""
        out = list(darts)
        for d, repl in self.rules:
            new = []
            for x in out:
                if x == d:
                    new.extend(repl)
                elif x == reverse(d):
                    new.extend(reverse(y) for y in reversed(repl))
                else:
                    new.append(x)
            out = new
        assert all(x[0] not in self.collapsed for x in out)
        return out

    # -- spanning tree and fat rose ------------------------------------------

    def _contract_tree(self):
        alph = self.alph
        verts = set()
        for e in self.spine_edges:
            t, h = alph.edges[e]
            verts.add(t)
            verts.add(h)
        # spanning tree by BFS over spine edges
        root = min(verts)
        tree: set = set()
        parent = {root: None}
        frontier = [root]
        adj: dict = {v: [] for v in verts}
        for e in self.spine_edges:
            t, h = alph.edges[e]
            adj[t].append((e, h))
            adj[h].append((e, t))
        while frontier:
            v = frontier.pop(0)
            for e, w in sorted(adj[v], key=lambda p: edge_sort_key(p[0])):
                if w not in parent:
                    parent[w] = (e, v)
                    tree.add(e)
                    frontier.append(w)
        if len(parent) != len(verts):
            raise AssertionError("spine is disconnected")
        self.tree = tree
        gens = [e for e in self.spine_edges if e not in tree]
        self.generator_of = {e: i + 1 for i, e in enumerate(gens)}
        self.rank = len(gens)

        # vertex rotations restricted to the spine
        spine_set = set(self.spine_edges)
        rot: dict = {}
        for v in verts:
            full = self.alph.vertex_rotation(v)
            rot[v] = [d for d in full if d[0] in spine_set]
        # contract tree edges by splicing rotations
        vert_of = {v: v for v in verts}

        def find(v):
            while vert_of[v] != v:
                vert_of[v] = vert_of[vert_of[v]]
                v = vert_of[v]
            return v

        for e in sorted(tree, key=edge_sort_key):
            t, h = alph.edges[e]
            u, w = find(t), find(h)
            if u == w:
                raise AssertionError("tree edge joins merged vertices")
            ru, rw = rot[u], rot[w]
            iu = ru.index((e, 1)) if (e, 1) in ru else ru.index((e, -1))
            du = ru[iu]
            dw = reverse(du)
            iw = rw.index(dw)
            spliced = (
                ru[:iu]
                + rw[iw + 1:]
                + rw[:iw]
                + ru[iu + 1:]
            )
            rot[u] = spliced
            del rot[w]
            vert_of[w] = u
        (final,) = rot.values()
        self.rose_rotation = tuple(
            self._dart_letter(d) for d in final
        )
        self.group = SpineGroup(
            rank=self.rank,
            rotation=self.rose_rotation,
            genus=self.alph.pd.sig.genus,
            boundary=self.alph.pd.sig.boundary,
        )

    def _dart_letter(self, d: Dart) -> int:
        return self.generator_of[d[0]] * d[1]

    def _check_topology(self):
        sig = self.alph.pd.sig
        if self.rank != sig.pi1_rank:
            raise AssertionError(
                f"spine rank {self.rank} != expected {sig.pi1_rank}"
            )
        faces = self.group.boundary_cycles()
        genus = (self.rank + 1 - faces) // 2
        if faces != sig.boundary or genus != sig.genus:
            raise AssertionError(
                f"fat rose thickens to ({genus},{faces}), expected "
                f"({sig.genus},{sig.boundary})"
            )

    # -- conversion ----------------------------------------------------------

    def word_to_class(self, darts) -> tuple[int, ...]:
        """Free-group conjugacy class of a closed dart path (cyclically
        reduced, not canonicalized)."""
        path = self.expand(darts)
        letters = []
        for d in path:
            if d[0] in self.tree:
                continue
            letters.append(self._dart_letter(d))
        return cyclic_reduce(tuple(letters))
