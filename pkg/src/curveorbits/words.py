"""Cyclic words over the hexagon-edge alphabet.

A word is a cyclic sequence of oriented hexagon edges.  It is *allowable*
when it concatenates to a closed non-backtracking path, every interior
boundary subword has length at least two, and no more than three
consecutive edges lie on the boundary of one hexagon.  Parsing splits the
word at its seam edges into boundary subwords, each classified as interior
(stays on one side of its pants curve) or bridging (crosses it).
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import Dart, HexagonAlphabet, dart_sort_key, dart_str, reverse


class WordError(ValueError):
    """Validation failure with a machine-readable error code."""

    def __init__(self, code: str, message: str, position: int | None = None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.position = position


class CyclicWord:
    """Cyclic sequence of darts over a fixed alphabet."""

    __slots__ = ("alphabet", "darts")

    def __init__(self, alphabet: HexagonAlphabet, darts):
        self.alphabet = alphabet
        self.darts = tuple(darts)
        if not self.darts:
            raise WordError("empty-word", "a cyclic word must have at least one edge")

    def __len__(self):
        return len(self.darts)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.darts == other.darts

    def __hash__(self):
        return hash(self.darts)

    def __repr__(self):
        return "CyclicWord(" + ",".join(dart_str(d) for d in self.darts) + ")"

    def rotate(self, k: int) -> "CyclicWord":
        n = len(self.darts)
        k %= n
        return CyclicWord(self.alphabet, self.darts[k:] + self.darts[:k])

    def reversed(self) -> "CyclicWord":
        return CyclicWord(self.alphabet, [reverse(d) for d in self.darts[::-1]])

    def key(self):
        return tuple(dart_sort_key(d) for d in self.darts)

    def to_text(self) -> str:
        """Stable text form: alphabet hash prefix, then comma-separated edges."""
        h = alphabet_hash(self.alphabet)
        return h + "|" + ",".join(dart_str(d) for d in self.darts)

    @classmethod
    def from_text(cls, alphabet: HexagonAlphabet, text: str) -> "CyclicWord":
        from .surface import parse_dart

        h, _, body = text.partition("|")
        if h != alphabet_hash(alphabet):
            raise WordError("alphabet-mismatch", "word belongs to a different alphabet")
        return cls(alphabet, [parse_dart(s) for s in body.split(",")])


def alphabet_hash(alphabet: HexagonAlphabet) -> str:
    import hashlib

    return hashlib.sha256(alphabet.to_json().encode()).hexdigest()[:12]


def canonical_form(w: CyclicWord) -> CyclicWord:
    """Minimal representative over all rotations and orientation reversal."""
    best = None
    for cand in (w, w.reversed()):
        n = len(cand)
        for k in range(n):
            rot = cand.rotate(k)
            key = rot.key()
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


@dataclass
class Subword:
    """One boundary subword ``b_i`` with its flanking seam ``s_i``.

    ``arcs`` may be empty.  ``seam`` is None only for the seamless n=1 word.
    For bridging subwords ``twist_param`` is the signed word-level twisting
    parameter (sign positive in the fixed handedness convention); interior
    subwords carry their side of the pants curve instead.
    """

    index: int
    curve: int
    arcs: list
    seam: Dart | None
    kind: str  # "interior" | "bridging" | "plain" (seamless n=1 word)
    side: int | None = None
    side_in: int | None = None
    side_out: int | None = None
    entry_vertex: tuple | None = None
    direction: int = 0
    twist_param: int | None = None

    @property
    def length(self) -> int:
        return len(self.arcs)


@dataclass
class ParsedWord:
    word: CyclicWord
    subwords: list[Subword]

    @property
    def n(self) -> int:
        return len(self.subwords)

    @property
    def alphabet(self) -> HexagonAlphabet:
        return self.word.alphabet

    def bridging(self) -> list[Subword]:
        return [s for s in self.subwords if s.kind == "bridging"]

    def interior(self) -> list[Subword]:
        return [s for s in self.subwords if s.kind == "interior"]

    def bridging_on(self, curve: int) -> list[Subword]:
        return [s for s in self.bridging() if s.curve == curve]

    def reassemble(self) -> CyclicWord:
        darts = []
        for s in self.subwords:
            darts.extend(s.arcs)
            if s.seam is not None:
                darts.append(s.seam)
        return CyclicWord(self.word.alphabet, darts)


def _check_path(w: CyclicWord):
    alph = w.alphabet
    n = len(w.darts)
    for k, d in enumerate(w.darts):
        nxt = w.darts[(k + 1) % n]
        if alph.dart_head(d) != alph.dart_tail(nxt):
            raise WordError("path-not-closed", f"edge {k} does not meet edge {k + 1}",
                            position=k)
        if nxt == reverse(d) and not (n == 1):
            raise WordError("back-tracking", f"edge {k + 1} reverses edge {k}",
                            position=k)


def _check_hexagon_runs(w: CyclicWord):
    """No more than three consecutive edges on the boundary of one hexagon."""
    alph = w.alphabet
    n = len(w.darts)
    if n < 4:
        return
    for k in range(n):
        run = [w.darts[(k + t) % n] for t in range(4)]
        edges = {d[0] for d in run}
        for h, cyc in alph.hexagons.items():
            boundary = {d[0] for d in cyc}
            if edges <= boundary:
                raise WordError(
                    "four-consecutive",
                    f"edges {k}..{k + 3} all lie on hexagon {h}",
                    position=k,
                )


def _split_at_seams(w: CyclicWord):
    """Rotate so the word starts right after a seam; return smoothed pieces.

    Yields (arcs, seam_dart) pairs in cyclic order, or None when the word
    has no seam at all.
    """
    alph = w.alphabet
    seam_pos = [k for k, d in enumerate(w.darts) if alph.is_seam(d)]
    if not seam_pos:
        return None
    pieces = []
    n = len(w.darts)
    for idx, k in enumerate(seam_pos):
        nxt = seam_pos[(idx + 1) % len(seam_pos)]
        arcs = []
        t = (k + 1) % n
        while t != nxt:
            arcs.append(w.darts[t])
            t = (t + 1) % n
        pieces.append((arcs, w.darts[nxt]))
    return pieces


def _arc_direction(dart: Dart) -> int:
    """Direction of travel along the pants curve carrying this arc edge."""
    return dart[1]


def validate_allowable(w: CyclicWord) -> ParsedWord:
    """Parse and validate a cyclic word, or raise :class:`WordError`.

    Classification notes: a boundary subword with flanking seams meeting its
    pants curve from opposite sides is bridging, otherwise interior.  The
    word-level twisting parameter of a bridging subword is
    ``-side_in * direction * length``, which increases by exactly 2 under a
    single positive twist about the curve.
    """
    alph = w.alphabet
    _check_path(w)
    _check_hexagon_runs(w)

    pieces = _split_at_seams(w)
    if pieces is None:
        # seamless word: a power of a single pants curve
        curves = {alph.arc_curve(d) for d in w.darts}
        if len(curves) != 1:
            raise WordError("path-not-closed", "seamless word visits several curves")
        sub = Subword(
            index=0,
            curve=curves.pop(),
            arcs=list(w.darts),
            seam=None,
            kind="plain",
            direction=_arc_direction(w.darts[0]),
        )
        return ParsedWord(w, [sub])

    subwords = []
    n_pieces = len(pieces)
    for i, (arcs, seam) in enumerate(pieces):
        prev_seam = pieces[i - 1][1]
        for d in arcs:
            if not alph.is_arc(d):
                raise WordError("path-not-closed", "two seams without a vertex between")
        if arcs:
            curves = {alph.arc_curve(d) for d in arcs}
            if len(curves) != 1:
                raise WordError("path-not-closed", "boundary subword changes curve")
            curve = curves.pop()
            v_in = alph.dart_tail(arcs[0])
            v_out = alph.dart_head(arcs[-1])
            direction = _arc_direction(arcs[0])
        else:
            v_in = v_out = alph.dart_head(prev_seam)
            curve = v_in[1]
            direction = 0
        side_in = alph.seam_side_at(prev_seam, v_in)
        side_out = alph.seam_side_at(seam, v_out)
        kind = "interior" if side_in == side_out else "bridging"
        sub = Subword(
            index=i,
            curve=curve,
            arcs=list(arcs),
            seam=seam,
            kind=kind,
            side=side_in if kind == "interior" else None,
            side_in=side_in,
            side_out=side_out,
            entry_vertex=v_in,
            direction=direction,
        )
        if kind == "bridging":
            sub.twist_param = -side_in * direction * len(arcs)
        if kind == "interior" and len(arcs) < 2:
            raise WordError(
                "interior-subword-too-short",
                f"interior boundary subword {i} has length {len(arcs)}",
            )
        subwords.append(sub)

    parsed = ParsedWord(w, subwords)
    if parsed.reassemble().key() != _aligned_key(w, parsed):
        raise AssertionError("subword reassembly does not reproduce the word")
    return parsed


def _aligned_key(w: CyclicWord, parsed: ParsedWord):
    """Key of w rotated to start at the first boundary subword."""
    alph = w.alphabet
    seam_pos = [k for k, d in enumerate(w.darts) if alph.is_seam(d)]
    if not seam_pos:
        return w.key()
    return w.rotate((seam_pos[0] + 1) % len(w.darts)).key()


def is_pants_curve_power(w: CyclicWord) -> int | None:
    """Return the pants-curve index if the word is a power of a pants curve."""
    alph = w.alphabet
    if any(alph.is_seam(d) for d in w.darts):
        return None
    return alph.arc_curve(w.darts[0])


# ---------------------------------------------------------------------------
# Geodesic-to-word construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """One maximal subarc of a geodesic inside a single hexagon.

    ``entry_wall`` and ``exit_wall`` index the hexagon's 6-wall boundary
    cycle; ``entry_point``/``exit_point`` are optional positions along those
    walls (used for diagnostics only).
    """

    hexagon: tuple
    entry_wall: int
    exit_wall: int
    entry_point: float | None = None
    exit_point: float | None = None


def _segment_replacement(alph: HexagonAlphabet, seg: Segment):
    """Step-1 replacement of a segment by a hexagon-boundary arc.

    Returns (full_darts, first_vertex, last_vertex).  The arc with fewer
    full edges wins; a 2-2 tie goes to the side containing the smallest
    edge id.
    """
    cyc = alph.hexagons[seg.hexagon]
    a, b = seg.entry_wall, seg.exit_wall
    if a == b:
        raise WordError("segment-degenerate", "segment enters and exits one wall")

    def vertex(k):  # tail vertex of wall k
        return alph.dart_tail(cyc[k % 6])

    fwd_count = (b - a - 1) % 6
    bwd_count = (a - b - 1) % 6
    if fwd_count < bwd_count:
        side = "fwd"
    elif bwd_count < fwd_count:
        side = "bwd"
    else:
        fwd_edges = [cyc[(a + 1 + t) % 6][0] for t in range(fwd_count)]
        bwd_edges = [cyc[(b + 1 + t) % 6][0] for t in range(bwd_count)]
        side = "fwd" if min(fwd_edges) <= min(bwd_edges) else "bwd"
    if side == "fwd":
        darts = [cyc[(a + 1 + t) % 6] for t in range(fwd_count)]
        return darts, vertex(a + 1), vertex(b)
    darts = [reverse(cyc[(a - 1 - t) % 6]) for t in range(bwd_count)]
    return darts, vertex(a), vertex(b + 1)


def _cyclic_reduce(alph: HexagonAlphabet, darts: list) -> list:
    out = list(darts)
    changed = True
    while changed and out:
        changed = False
        k = 0
        while k < len(out) and len(out) > 1:
            nxt = (k + 1) % len(out)
            if out[nxt] == reverse(out[k]):
                for idx in sorted({k, nxt}, reverse=True):
                    del out[idx]
                changed = True
                k = 0
            else:
                k += 1
    return out


def _short_interior_positions(alph: HexagonAlphabet, darts: list):
    """Positions (index of first arc, length) of interior subwords of
    length at most one."""
    n = len(darts)
    seam_pos = [k for k, d in enumerate(darts) if alph.is_seam(d)]
    if not seam_pos:
        return []
    out = []
    for idx, k in enumerate(seam_pos):
        nxt = seam_pos[(idx + 1) % len(seam_pos)]
        blen = (nxt - k - 1) % n
        if blen > 1:
            continue
        if blen == 0:
            v = alph.dart_head(darts[k])
        else:
            v = alph.dart_tail(darts[(k + 1) % n])
        side_in = alph.seam_side_at(darts[k], v)
        v_out = alph.dart_tail(darts[nxt]) if blen == 0 else alph.dart_head(
            darts[(k + 1) % n])
        side_out = alph.seam_side_at(darts[nxt], v_out)
        if side_in == side_out:
            out.append(((k + 1) % n, blen))
    return out


def _rewrite_short_interior(alph: HexagonAlphabet, darts: list, pos: int, blen: int):
    """Step-3 homotopy: push ``s b s`` across its hexagon to ``x s x``.

    ``pos`` indexes the first arc of the length-1 interior subword (the word
    is rotated so the three edges are contiguous).  Returns the rewritten
    dart list, cyclically reduced.
    """
    n = len(darts)
    if blen != 1:
        raise WordError("empty-interior", "empty interior subword cannot be rewritten")
    trip = [darts[(pos - 1) % n], darts[pos % n], darts[(pos + 1) % n]]
    # locate the hexagon whose boundary carries the three edges consecutively
    for h, cyc in alph.hexagons.items():
        for k in range(6):
            fwd = [cyc[k], cyc[(k + 1) % 6], cyc[(k + 2) % 6]]
            if trip == fwd:
                repl = [reverse(cyc[(k - 1) % 6]),
                        reverse(cyc[(k - 2) % 6]),
                        reverse(cyc[(k - 3) % 6])]
                break
            bwd = [reverse(cyc[(k + 2) % 6]), reverse(cyc[(k + 1) % 6]),
                   reverse(cyc[k])]
            if trip == bwd:
                repl = [cyc[(k + 3) % 6], cyc[(k + 4) % 6], cyc[(k + 5) % 6]]
                break
        else:
            continue
        break
    else:
        raise WordError("step3-no-hexagon",
                        "short interior subword does not sit on one hexagon")
    out = []
    skip = {(pos - 1) % n, pos % n, (pos + 1) % n}
    out.extend(repl)
    t = (pos + 2) % n
    while t not in skip:
        out.append(darts[t])
        t = (t + 1) % n
    return _cyclic_reduce(alph, out)


def word_from_crossing_sequence(alph: HexagonAlphabet,
                                itinerary: list[Segment]) -> CyclicWord:
    """Build the cyclic word of a closed geodesic from its hexagon itinerary.

    Implements the three homotopy steps: replace each segment by the shorter
    boundary arc of its hexagon, cancel seam back-tracking, then push away
    interior boundary subwords of length one.  Among the finitely many
    orders for the last step, the result with the fewest boundary subwords
    (ties by canonical form) is returned.
    """
    if not itinerary:
        raise WordError("empty-itinerary", "itinerary has no segments")
    n = len(itinerary)
    for i, seg in enumerate(itinerary):
        nxt = itinerary[(i + 1) % n]
        if seg.hexagon == nxt.hexagon and n > 1:
            raise WordError("consecutive-hexagon",
                            f"segments {i},{i + 1} share hexagon {seg.hexagon}")
        exit_dart = alph.hexagons[seg.hexagon][seg.exit_wall]
        entry_dart = alph.hexagons[nxt.hexagon][nxt.entry_wall]
        if exit_dart[0] != entry_dart[0]:
            raise WordError("itinerary-mismatch",
                            f"segments {i},{i + 1} cross different walls")

    darts = []
    reps = [_segment_replacement(alph, seg) for seg in itinerary]
    for i in range(n):
        full_i, _, last_i = reps[i]
        _, first_next, _ = reps[(i + 1) % n]
        darts.extend(full_i)
        wall_edge = alph.hexagons[itinerary[i].hexagon][itinerary[i].exit_wall][0]
        if last_i != first_next:
            t, h = alph.edges[wall_edge]
            if (last_i, first_next) == (t, h):
                darts.append((wall_edge, 1))
            elif (last_i, first_next) == (h, t):
                darts.append((wall_edge, -1))
            else:
                raise AssertionError("stub vertices are not endpoints of the wall")

    darts = _cyclic_reduce(alph, darts)
    if not darts:
        raise WordError("trivial-class", "itinerary reduced to the empty word")

    # Step 3, exploring all rewrite orders
    best = None
    seen = set()
    stack = [tuple(darts)]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        shorts = _short_interior_positions(alph, list(state))
        if not shorts:
            w = CyclicWord(alph, state)
            parsed = validate_allowable(w)
            key = (parsed.n, canonical_form(w).key())
            if best is None or key < best[0]:
                best = (key, canonical_form(w))
            continue
        for pos, blen in shorts:
            stack.append(tuple(_rewrite_short_interior(alph, list(state), pos, blen)))
    if best is None:
        raise WordError("step3-stuck", "no rewrite order yields an allowable word")
    return best[1]
