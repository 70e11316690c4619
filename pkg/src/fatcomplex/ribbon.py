"""Ribbon graphs (fat graphs) as labelled combinatorial maps.

A ribbon graph is a finite set of integer half-edge labels together with
a partition into cyclically ordered vertices and a fixed-point-free
pairing of half-edges into edges.  Orientations follow the
Conant-Vogtmann convention: an orientation is an ordering of the set of
vertices and half-edges, stored as a sign relative to a fixed reference
ordering (vertices sorted by their minimum half-edge label, each vertex
followed by its cycle read from its minimum label).

The same low-level machinery (orientation words, edge collapse with
induced sign, corner tracking) also drives planar trees, where some
half-edges are unpaired leaves.
"""

from itertools import combinations


class GraphError(ValueError):
    pass


class NotInvolution(GraphError):
    pass


class FixedPoint(GraphError):
    pass


class ValenceTooLow(GraphError):
    pass


class Disconnected(GraphError):
    pass


class DanglingHalfEdge(GraphError):
    pass


class LoopCollapse(GraphError):
    pass


class NotAForest(GraphError):
    pass


class VertexTooSmall(GraphError):
    pass


class BadSplit(GraphError):
    pass


class BadMorphism(GraphError):
    pass


# ---------------------------------------------------------------------------
# permutation parity and orientation words
# ---------------------------------------------------------------------------

def perm_parity(perm):
    """Sign of a permutation given as a list with entries 0..n-1."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def word_parity(word_a, word_b):
    """Sign of the permutation carrying ordering `word_a` to `word_b`.

    Both words must list the same distinct symbols.  As orientations,
    [word_a] == word_parity(word_a, word_b) * [word_b].
    """
    pos = {x: i for i, x in enumerate(word_b)}
    if len(pos) != len(word_a) or len(word_a) != len(word_b):
        raise ValueError("words must list the same distinct symbols")
    return perm_parity([pos[x] for x in word_a])


def _rotate_min(cycle):
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def _normalize_cycles(cycles):
    return tuple(sorted((_rotate_min(tuple(c)) for c in cycles), key=lambda c: c[0]))


def _vsym(cycle):
    # vertex symbol, stable across rewordings of the same graph
    return ("v", min(cycle))


def reference_word(cycles):
    """The reference ordering of vertices-and-half-edges for `cycles`.

    `cycles` must already be normalized (min label first, sorted).
    """
    word = []
    for c in cycles:
        word.append(_vsym(c))
        word.extend(c)
    return word


def _edge_list(pairing):
    return sorted({(min(a, b), max(a, b)) for a, b in pairing.items()})


def collapse_cycles(cycles, pairing, half_edge):
    """Collapse the edge containing `half_edge`, no orientation tracking.

    Returns (new_cycles, new_pairing, merged_cycle).  The merged vertex
    cycle is (h_1..h_n, k_1..k_m) when the endpoints are (e-, h_1..h_n)
    and (e+, k_1..k_m).
    """
    h = half_edge
    hbar = pairing[h]
    u = w = None
    for c in cycles:
        if h in c:
            u = tuple(c)
        if hbar in c:
            w = tuple(c)
    if u == w:
        raise LoopCollapse("cannot collapse a loop")
    iu, iw = u.index(h), w.index(hbar)
    merged = u[iu + 1:] + u[:iu] + w[iw + 1:] + w[:iw]
    new_cycles = [merged] + [tuple(c) for c in cycles if h not in c and hbar not in c]
    new_pairing = {a: b for a, b in pairing.items() if a not in (h, hbar)}
    return _normalize_cycles(new_cycles), new_pairing, merged


def collapse_oriented(cycles, pairing, sign, half_edge):
    """Collapse a non-loop edge with the induced orientation sign.

    `cycles` normalized, `sign` relative to reference_word(cycles).
    Orient the edge from the vertex of `half_edge` to its mate, put
    source first and target second; the coalesced vertex replaces them
    in front and the remaining vertices and edges keep their order.
    """
    h = half_edge
    hbar = pairing[h]
    u = w = None
    for c in cycles:
        if h in c:
            u = c
        if hbar in c:
            w = c
    if u is None or w is None:
        raise GraphError("half-edge not in graph")
    if u == w:
        raise LoopCollapse("cannot collapse a loop")

    others = [c for c in cycles if c is not u and c is not w]
    other_edges = [e for e in _edge_list(pairing) if h not in e and hbar not in e]
    paired = set(pairing)
    legs = sorted(x for c in cycles for x in c if x not in paired)

    word = [_vsym(u), _vsym(w)] + [_vsym(c) for c in others] + [h, hbar]
    for a, b in other_edges:
        word.extend((a, b))
    word.extend(legs)
    s = sign * word_parity(reference_word(cycles), word)

    new_cycles, new_pairing, merged = collapse_cycles(cycles, pairing, h)
    word2 = [_vsym(merged)] + [_vsym(c) for c in others]
    for a, b in other_edges:
        word2.extend((a, b))
    word2.extend(legs)
    s *= word_parity(word2, reference_word(new_cycles))
    return new_cycles, new_pairing, s


def corner_collapse_map(cycles, pairing, half_edge):
    """Corner tracking for one edge collapse.

    Corners are named by the half-edge they follow in the vertex cycle.
    Every corner persists under the collapse except the two corners
    following the collapsing half-edges, which are absorbed into the
    corners following the cyclic predecessors on the opposite side.
    """
    h = half_edge
    hbar = pairing[h]
    pred = {}
    for c in cycles:
        if h in c:
            i = c.index(h)
            pred[h] = c[i - 1]
        if hbar in c:
            i = c.index(hbar)
            pred[hbar] = c[i - 1]
    # corner after h lands after pred(hbar), and vice versa
    return {h: pred[hbar], hbar: pred[h]}


# ---------------------------------------------------------------------------
# ribbon graphs
# ---------------------------------------------------------------------------

class RibbonGraph:
    """An immutable connected ribbon graph with valences >= 3."""

    __slots__ = ("vertices", "pairing", "half_edges", "_sigma", "_vertex_of")

    def __init__(self, vertex_cycles, edge_pairs, min_valence=3):
        cycles = [tuple(c) for c in vertex_cycles]
        labels = [x for c in cycles for x in c]
        if len(labels) != len(set(labels)):
            raise DanglingHalfEdge("duplicate half-edge label in vertex cycles")
        label_set = set(labels)
        pairing = {}
        for pair in edge_pairs:
            a, b = pair
            if a == b:
                raise FixedPoint("edge pairing has a fixed point: %r" % (a,))
            if a in pairing or b in pairing:
                raise NotInvolution("half-edge paired twice")
            pairing[a] = b
            pairing[b] = a
        if set(pairing) != label_set:
            raise DanglingHalfEdge("pairing and vertex cycles use different half-edges")
        for c in cycles:
            if len(c) < min_valence:
                raise ValenceTooLow("vertex %r has valence %d < %d" % (c, len(c), min_valence))
        self.vertices = _normalize_cycles(cycles)
        self.pairing = pairing
        self.half_edges = tuple(sorted(label_set))
        self._sigma = None
        self._vertex_of = None
        if not self._connected():
            raise Disconnected("graph is not connected")

    def _connected(self):
        if not self.vertices:
            return False
        sigma = self.sigma()
        seen = {self.half_edges[0]}
        stack = [self.half_edges[0]]
        while stack:
            h = stack.pop()
            for nxt in (sigma[h], self.pairing[h]):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(self.half_edges)

    def sigma(self):
        """Next half-edge counterclockwise at the same vertex."""
        if self._sigma is None:
            nxt = {}
            for c in self.vertices:
                for i, h in enumerate(c):
                    nxt[h] = c[(i + 1) % len(c)]
            self._sigma = nxt
        return self._sigma

    def vertex_of(self, h):
        if self._vertex_of is None:
            self._vertex_of = {x: c for c in self.vertices for x in c}
        return self._vertex_of[h]

    def edges(self):
        return _edge_list(self.pairing)

    def is_loop(self, edge):
        a, b = edge
        return self.vertex_of(a) is self.vertex_of(b)

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.half_edges) // 2

    @property
    def euler_characteristic(self):
        return self.num_vertices - self.num_edges

    @property
    def codimension(self):
        return sum(len(c) - 3 for c in self.vertices)

    def valences(self):
        return tuple(sorted((len(c) for c in self.vertices), reverse=True))

    def boundary_cycles(self):
        """Face orbits of the map, plus (genus, punctures).

        The face permutation sends h to sigma(pairing(h)); its orbits
        are the boundary components of the thickened surface, and the
        genus comes from chi = 2 - 2g - s.
        """
        sigma = self.sigma()
        seen = set()
        faces = []
        for h in self.half_edges:
            if h in seen:
                continue
            orbit = []
            x = h
            while x not in seen:
                seen.add(x)
                orbit.append(x)
                x = sigma[self.pairing[x]]
            faces.append(_rotate_min(orbit))
        s = len(faces)
        chi = self.euler_characteristic
        genus2 = 2 - s - chi
        if genus2 % 2 != 0 or genus2 < 0:
            raise GraphError("impossible Euler characteristic")
        return faces, genus2 // 2, s

    def literal(self):
        """Canonical-comparison form: (vertex cycles, edge pairs)."""
        return (self.vertices, tuple(self.edges()))

    def relabel(self, mapping):
        cycles = [tuple(mapping[x] for x in c) for c in self.vertices]
        pairs = [(mapping[a], mapping[b]) for a, b in self.edges()]
        return RibbonGraph(cycles, pairs)

    def __eq__(self, other):
        return isinstance(other, RibbonGraph) and self.literal() == other.literal()

    def __hash__(self):
        return hash(self.literal())

    def __repr__(self):
        return "RibbonGraph(%r, %r)" % (list(self.vertices), self.edges())


def build_graph(vertex_cycles, edge_pairs):
    """Validate and build a ribbon graph from cycles and an edge pairing."""
    return RibbonGraph(vertex_cycles, edge_pairs)


def graph_to_literal(g):
    return {"vertices": [list(c) for c in g.vertices],
            "edges": [list(e) for e in g.edges()]}


def graph_from_literal(data):
    return build_graph(data["vertices"], data["edges"])


class OrientedRibbonGraph:
    """A ribbon graph with a sign relative to the reference ordering."""

    __slots__ = ("graph", "sign")

    def __init__(self, graph, sign=1):
        if sign not in (1, -1):
            raise GraphError("orientation sign must be +1 or -1")
        self.graph = graph
        self.sign = sign

    def reversed(self):
        return OrientedRibbonGraph(self.graph, -self.sign)

    def __eq__(self, other):
        return (isinstance(other, OrientedRibbonGraph)
                and self.graph == other.graph and self.sign == other.sign)

    def __hash__(self):
        return hash((self.graph.literal(), self.sign))

    def __repr__(self):
        return "OrientedRibbonGraph(%r, sign=%+d)" % (self.graph, self.sign)


def natural_orientation(g):
    """The natural orientation of an odd-valent ribbon graph.

    Any word listing each vertex followed by its half-edges in cyclic
    order is an even permutation of the reference word when all
    valences are odd, so the natural orientation has sign +1.
    """
    if any(len(c) % 2 == 0 for c in g.vertices):
        raise GraphError("natural orientation needs all valences odd")
    return OrientedRibbonGraph(g, 1)


def orientation_from_word(g, word):
    """Orientation determined by an explicit vertices-and-half-edges word.

    Vertices are named in the word by ('v', min half-edge of the cycle).
    """
    return OrientedRibbonGraph(g, word_parity(word, reference_word(g.vertices)))


def orientation_word_sign(cycles, word):
    """Sign of the ordering `word` relative to the reference ordering."""
    return word_parity(word, reference_word(cycles))


def collapse_edge(og, edge):
    """Collapse a non-loop edge of an oriented graph, with induced sign."""
    a, _ = edge
    cycles, pairing, sign = collapse_oriented(
        og.graph.vertices, og.graph.pairing, og.sign, a)
    return OrientedRibbonGraph(RibbonGraph(cycles, [tuple(e) for e in _edge_list(pairing)]), sign)


def collapse_forest(og, forest_edges):
    """Collapse a set of edges forming a forest, in sorted-label order."""
    edges = sorted((min(e), max(e)) for e in forest_edges)
    if len(edges) != len(set(edges)):
        raise NotAForest("repeated edge in forest")
    out = og
    for e in edges:
        if e[0] not in out.graph.pairing:
            raise NotAForest("edge %r gone before its collapse" % (e,))
        if out.graph.is_loop(e):
            raise NotAForest("edges contain a cycle")
        out = collapse_edge(out, e)
    return out


# ---------------------------------------------------------------------------
# isomorphisms, automorphisms, canonical forms
# ---------------------------------------------------------------------------

def _grow_iso(g1, g2, seed_pairs):
    """Extend seed half-edge assignments to a full isomorphism, or None."""
    s1, s2 = g1.sigma(), g2.sigma()
    p1, p2 = g1.pairing, g2.pairing
    m = {}
    used = set()
    stack = []
    for a, b in seed_pairs:
        if a in m:
            if m[a] != b:
                return None
            continue
        if b in used:
            return None
        m[a] = b
        used.add(b)
        stack.append(a)
    while stack:
        h = stack.pop()
        for f1, f2 in ((s1, s2), (p1, p2)):
            a, b = f1[h], f2[m[h]]
            if a in m:
                if m[a] != b:
                    return None
            else:
                if b in used:
                    return None
                m[a] = b
                used.add(b)
                stack.append(a)
    if len(m) != len(g1.half_edges):
        return None
    # vertex cycles must correspond (sigma-closure guarantees it) and so
    # does the pairing; lengths were matched by construction
    return m


def isomorphisms_between(g1, g2):
    """All cyclic-order-preserving half-edge bijections g1 -> g2."""
    if len(g1.half_edges) != len(g2.half_edges):
        return []
    if g1.valences() != g2.valences():
        return []
    anchor = g1.half_edges[0]
    out = []
    for b in g2.half_edges:
        m = _grow_iso(g1, g2, [(anchor, b)])
        if m is not None:
            out.append(m)
    return out


def automorphisms(g):
    return isomorphisms_between(g, g)


def transport_sign(g1, g2, iso):
    """Sign picked up by an orientation transported along `iso`."""
    word = []
    for c in g1.vertices:
        image = [iso[x] for x in c]
        word.append(_vsym(image))
        word.extend(image)
    return word_parity(word, reference_word(g2.vertices))


def orientation_sign_of(g, aut):
    """Parity of the permutation an automorphism induces on the reference
    ordering of vertices-and-half-edges."""
    return transport_sign(g, g, aut)


def has_orientation_reversing_automorphism(g):
    return any(orientation_sign_of(g, a) == -1 for a in automorphisms(g))


def _traversal_labeling(g, seed):
    """Deterministic relabeling 0..H-1 grown from `seed` along sigma/pairing."""
    sigma = g.sigma()
    new = {seed: 0}
    pending = [seed]
    i = 0
    while i < len(pending):
        h = pending[i]
        i += 1
        for nxt in (sigma[h], g.pairing[h]):
            if nxt not in new:
                new[nxt] = len(new)
                pending.append(nxt)
    return new


def _relabeled_literal(g, relabel):
    cycles = _normalize_cycles([tuple(relabel[x] for x in c) for c in g.vertices])
    pairs = tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
                         for a, b in g.edges()))
    return cycles, pairs


def canonical_form(g):
    """Lexicographically least relabeled literal, with all relabelings
    achieving it (one per automorphism)."""
    best = None
    best_maps = []
    for seed in g.half_edges:
        relabel = _traversal_labeling(g, seed)
        lit = _relabeled_literal(g, relabel)
        if best is None or lit < best:
            best = lit
            best_maps = [relabel]
        elif lit == best:
            best_maps.append(relabel)
    return best, best_maps


def canonical_oriented(og):
    """Canonical key of an oriented isomorphism class.

    Returns (literal, sign), with sign None when the class carries an
    orientation-reversing automorphism (so <Gamma> = 0).
    """
    lit, maps = canonical_form(og.graph)
    canon = RibbonGraph(lit[0], lit[1])
    signs = {og.sign * transport_sign(og.graph, canon, m) for m in maps}
    if len(signs) == 2:
        return lit, None
    return lit, signs.pop()


def graph_from_key(lit):
    return RibbonGraph(lit[0], lit[1])


# ---------------------------------------------------------------------------
# vertex expansions
# ---------------------------------------------------------------------------

def expand_vertex(og, cycle, split):
    """Split one vertex into two joined by a fresh edge.

    `split` is a pair of cut positions (i, j) in the cyclic order; the
    blocks cycle[i:j] and cycle[j:]+cycle[:i] become the new vertices,
    each of size >= 2.  The result carries the unique orientation that
    collapses back to `og`.
    """
    cycle = tuple(cycle)
    p = len(cycle)
    if p < 4:
        raise VertexTooSmall("cannot expand a vertex of valence %d" % p)
    i, j = split
    if not (0 <= i < j < p):
        raise BadSplit("cut positions must satisfy 0 <= i < j < valence")
    block1 = cycle[i:j]
    block2 = cycle[j:] + cycle[:i]
    if len(block1) < 2 or len(block2) < 2:
        raise BadSplit("both blocks must have size >= 2")
    top = max(og.graph.half_edges)
    eminus, eplus = top + 1, top + 2
    new_cycles = [c for c in og.graph.vertices if c != cycle]
    new_cycles.append((eminus,) + block1)
    new_cycles.append((eplus,) + block2)
    pairs = og.graph.edges() + [(eminus, eplus)]
    expanded = RibbonGraph(new_cycles, pairs)
    back = collapse_edge(OrientedRibbonGraph(expanded, 1), (eminus, eplus))
    if back.graph != og.graph:
        raise GraphError("expansion failed to collapse back")
    return OrientedRibbonGraph(expanded, og.sign * back.sign), (eminus, eplus)


def enumerate_expansions(og, cycle, up_to_isomorphism_over=False):
    """All (p^2-3p)/2 expansions of one vertex, with induced orientations.

    With `up_to_isomorphism_over`, expansions giving the same object
    over `og` (same collapse map up to iso commuting with it) are
    deduplicated; by rigidity of splits this should change nothing.
    """
    cycle = tuple(cycle)
    p = len(cycle)
    out = []
    for i, j in combinations(range(p), 2):
        d = j - i
        if d < 2 or p - d < 2:
            continue
        out.append(expand_vertex(og, cycle, (i, j)))
    if up_to_isomorphism_over:
        seen = []
        kept = []
        for exp, edge in out:
            if any(_over_isomorphic(exp.graph, edge, g2, e2) for g2, e2 in seen):
                continue
            seen.append((exp.graph, edge))
            kept.append((exp, edge))
        out = kept
    return out


def _over_isomorphic(g1, e1, g2, e2):
    """Isomorphism g1 -> g2 sending e1 to e2 and fixing all other labels."""
    for seeds in ([(e1[0], e2[0]), (e1[1], e2[1])], [(e1[0], e2[1]), (e1[1], e2[0])]):
        fixed = [(h, h) for h in g1.half_edges if h not in e1]
        m = _grow_iso(g1, g2, seeds + fixed)
        if m is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# morphisms by forest collapse
# ---------------------------------------------------------------------------

class GraphMorphism:
    """A morphism of ribbon graphs: collapse a spanning forest, relabel.

    Determined by `preimage`, the injection of the target's half-edges
    into the source's (the inverse-image assignment); the forest is the
    complement of its image.
    """

    __slots__ = ("source", "target", "preimage", "forest")

    def __init__(self, source, target, preimage, _checked=False):
        self.source = source
        self.target = target
        self.preimage = dict(preimage)
        image = set(self.preimage.values())
        if len(image) != len(self.preimage):
            raise BadMorphism("preimage assignment is not injective")
        forest_halves = [h for h in source.half_edges if h not in image]
        forest = set()
        for h in forest_halves:
            mate = source.pairing[h]
            if mate in image:
                raise BadMorphism("forest half-edges must pair among themselves")
            forest.add((min(h, mate), max(h, mate)))
        self.forest = tuple(sorted(forest))
        if not _checked:
            self._check()

    def _check(self):
        cycles, pairing = self.source.vertices, self.source.pairing
        for e in self.forest:
            if pairing.get(e[0]) != e[1]:
                raise BadMorphism("forest edge missing")
            try:
                cycles, pairing, _ = collapse_cycles(cycles, pairing, e[0])
            except LoopCollapse:
                raise BadMorphism("forest contains a cycle") from None
        relabel = {v: k for k, v in self.preimage.items()}
        got = _normalize_cycles([tuple(relabel[x] for x in c) for c in cycles])
        want = self.target.vertices
        if got != want:
            raise BadMorphism("collapsing the forest does not give the target")

    @classmethod
    def identity(cls, g):
        return cls(g, g, {h: h for h in g.half_edges}, _checked=True)

    @classmethod
    def collapse(cls, g, forest_edges):
        """Collapse the given forest; the target keeps surviving labels."""
        og = collapse_forest(OrientedRibbonGraph(g, 1), forest_edges)
        target = og.graph
        return cls(g, target, {h: h for h in target.half_edges}, _checked=True), og.sign

    def is_identity_like(self):
        return not self.forest and all(k == v for k, v in self.preimage.items())

    def corner_map(self):
        """Total map from source half-edges to target half-edges sending
        the corner after h to the corner after its image."""
        cycles, pairing = self.source.vertices, self.source.pairing
        m = {h: h for h in self.source.half_edges}
        for e in self.forest:
            step = corner_collapse_map(cycles, pairing, e[0])
            cycles, pairing, _ = collapse_cycles(cycles, pairing, e[0])
            for h in m:
                x = m[h]
                while x in step:
                    x = step[x]
                m[h] = x
        relabel = {v: k for k, v in self.preimage.items()}
        return {h: relabel[x] for h, x in m.items()}

    def image_vertex(self, cycle):
        """Cycle of the target vertex the given source vertex maps into."""
        cm = self.corner_map()
        return self.target.vertex_of(cm[cycle[0]])

    def __eq__(self, other):
        return (isinstance(other, GraphMorphism)
                and self.source == other.source
                and self.target == other.target
                and self.preimage == other.preimage)

    def __hash__(self):
        return hash((self.source.literal(), self.target.literal(),
                     tuple(sorted(self.preimage.items()))))


def compose(first, second):
    """Composite of composable morphisms (first: A->B, second: B->C)."""
    if second.source != first.target:
        raise BadMorphism("morphisms not composable")
    pre = {h: first.preimage[second.preimage[h]] for h in second.preimage}
    return GraphMorphism(first.source, second.target, pre, _checked=True)


def single_collapse_morphisms(g1, g2):
    """All morphisms g1 -> g2 collapsing exactly one edge, with the sign
    relating the pushed-forward natural-reference orientation of g1 to
    the reference orientation of g2.

    Returns a list of (GraphMorphism, sign).
    """
    out = []
    for e in g1.edges():
        if g1.is_loop(e):
            continue
        collapsed = collapse_edge(OrientedRibbonGraph(g1, 1), e)
        for iso in isomorphisms_between(collapsed.graph, g2):
            pre = {iso[h]: h for h in collapsed.graph.half_edges}
            mor = GraphMorphism(g1, g2, pre, _checked=True)
            out.append((mor, collapsed.sign * transport_sign(collapsed.graph, g2, iso)))
    return out


def corner_chain(simplex, cycle):
    """Corner chain of a vertex along composable morphisms.

    `simplex` is a list of composable GraphMorphism (possibly empty for
    a graph alone is not expressible; pass [] with care) and `cycle` a
    vertex of the first source.  Returns (ambient, images, sizes):
    the final image vertex's cyclic order, and for each step i the set
    of corners of C_i inside the ambient, as frozensets, via corner
    containment.
    """
    if not simplex:
        raise GraphError("corner_chain needs at least one morphism")
    for a, b in zip(simplex, simplex[1:]):
        if a.target != b.source:
            raise BadMorphism("simplex morphisms are not composable")
    graphs = [simplex[0].source] + [m.target for m in simplex]
    maps = [m.corner_map() for m in simplex]

    # image vertex cycle in each graph
    vertex_cycles = [tuple(cycle)]
    current = cycle[0]
    for i, m in enumerate(maps):
        current = m[current]
        vertex_cycles.append(graphs[i + 1].vertex_of(current))

    ambient = vertex_cycles[-1]
    images = []
    for i, vc in enumerate(vertex_cycles):
        xs = list(vc)
        for m in maps[i:]:
            xs = [m[x] for x in xs]
        if len(set(xs)) != len(vc):
            raise GraphError("corner monomorphism failed")
        images.append(frozenset(xs))
    sizes = [len(vc) for vc in vertex_cycles]
    return ambient, images, sizes
