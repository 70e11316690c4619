"""Planar trees and the face structure of the Stasheff associahedron.

A face of K^n is a planar tree with n+3 leaves in fixed counterclockwise
order and internal vertices of valence >= 3; a tree with n-k internal
edges is a k-face.  Trees are stored like ribbon graphs whose pairing is
partial: leaves are unpaired half-edge labels 0..n+2, internal
half-edges are labels >= n+3.

Chains T_0 -> ... -> T_m collapse one internal edge at a time.  Signs
follow the same Conant-Vogtmann bookkeeping as for graphs; the
designated orientation of the terminal corolla is the natural one for
even n and the leaf-0 counterclockwise word for odd n, which in both
cases is the reference ordering.
"""

from itertools import permutations

from fatcomplex.ribbon import (
    GraphError,
    _normalize_cycles,
    collapse_oriented,
    perm_parity,
)


class ConfigurationMismatch(GraphError):
    pass


class PlanarTree:
    """A planar tree with labelled leaves in counterclockwise order."""

    __slots__ = ("leaf_count", "vertices", "pairing", "_vertex_of")

    def __init__(self, leaf_count, vertex_cycles, edge_pairs, check=True):
        self.leaf_count = leaf_count
        self.vertices = _normalize_cycles([tuple(c) for c in vertex_cycles])
        pairing = {}
        for a, b in edge_pairs:
            pairing[a] = b
            pairing[b] = a
        self.pairing = pairing
        self._vertex_of = {x: c for c in self.vertices for x in c}
        if check:
            self._validate()

    def _validate(self):
        labels = [x for c in self.vertices for x in c]
        if len(labels) != len(set(labels)):
            raise GraphError("duplicate half-edge label")
        leaves = [x for x in labels if x not in self.pairing]
        if sorted(leaves) != list(range(self.leaf_count)):
            raise GraphError("leaves must be exactly 0..leaf_count-1")
        if any(len(c) < 3 for c in self.vertices):
            raise GraphError("internal vertex of valence < 3")
        if len(self.vertices) != len(self.pairing) // 2 + 1:
            raise GraphError("not a tree: vertices != internal edges + 1")
        if self.contour_leaves() != tuple(range(self.leaf_count)):
            raise GraphError("leaves are not in counterclockwise order")

    def sigma(self):
        nxt = {}
        for c in self.vertices:
            for i, h in enumerate(c):
                nxt[h] = c[(i + 1) % len(c)]
        return nxt

    def vertex_of(self, h):
        return self._vertex_of[h]

    def contour_leaves(self):
        """Leaves in the order the contour walk from leaf 0 meets them."""
        sigma = self.sigma()
        out = []
        cur = 0
        for _ in range(2 * len(sigma)):
            if cur not in self.pairing:
                out.append(cur)
                cur = sigma[cur]
            else:
                cur = sigma[self.pairing[cur]]
            if cur == 0:
                break
        return tuple(out)

    def internal_edges(self):
        return sorted({(min(a, b), max(a, b)) for a, b in self.pairing.items()})

    @property
    def codimension_in_polytope(self):
        # number of internal edges: a k-face of K^n has n-k of them
        return len(self.pairing) // 2

    def literal(self):
        return (self.leaf_count, self.vertices, tuple(self.internal_edges()))

    def canonical_relabel(self):
        """Relabeling of internal half-edges by traversal from leaf 0."""
        sigma = self.sigma()
        new = {0: 0}
        pending = [0]
        i = 0
        while i < len(pending):
            h = pending[i]
            i += 1
            nbrs = [sigma[h]]
            if h in self.pairing:
                nbrs.append(self.pairing[h])
            for nxt in nbrs:
                if nxt not in new:
                    new[nxt] = len(new)
                    pending.append(nxt)
        # leaves keep their labels; internals renumbered in visit order
        internal_order = [h for h in sorted(new, key=new.get) if h in self.pairing]
        relabel = {h: h for h in range(self.leaf_count)}
        nxt_label = self.leaf_count
        for h in internal_order:
            relabel[h] = nxt_label
            nxt_label += 1
        return relabel

    def canonical(self):
        relabel = self.canonical_relabel()
        cycles = [tuple(relabel[x] for x in c) for c in self.vertices]
        pairs = [(relabel[a], relabel[b]) for a, b in self.internal_edges()]
        return PlanarTree(self.leaf_count, cycles, pairs, check=False)

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self.literal() == other.literal()

    def __hash__(self):
        return hash(self.literal())

    def __repr__(self):
        return "PlanarTree(%d, %r, %r)" % (self.leaf_count, list(self.vertices),
                                           self.internal_edges())


def tree_to_literal(t):
    def show(x):
        return "L%d" % x if x not in t.pairing else x
    return {"leaves": t.leaf_count,
            "vertices": [[show(x) for x in c] for c in t.vertices],
            "edges": [list(e) for e in t.internal_edges()]}


def tree_from_literal(data):
    leaves = data["leaves"]
    def read(x):
        if isinstance(x, str):
            if not x.startswith("L"):
                raise GraphError("bad leaf label %r" % x)
            return int(x[1:])
        return x
    cycles = [[read(x) for x in c] for c in data["vertices"]]
    return PlanarTree(leaves, cycles, [tuple(e) for e in data["edges"]])


# ---------------------------------------------------------------------------
# enumeration of faces
# ---------------------------------------------------------------------------

def _compositions(lo, hi, binary_only):
    """Split the leaf interval [lo..hi] into >= 2 consecutive blocks."""
    size = hi - lo + 1
    if binary_only:
        for cut in range(lo + 1, hi + 1):
            yield [(lo, cut - 1), (cut, hi)]
        return
    # all compositions into >= 2 blocks
    def rec(start):
        if start > hi:
            yield []
            return
        for end in range(start, hi + 1):
            for rest in rec(end + 1):
                yield [(start, end)] + rest
    for blocks in rec(lo):
        if len(blocks) >= 2:
            yield blocks


def _count_vertices(struct):
    if isinstance(struct, int):
        return 0
    return 1 + sum(_count_vertices(kid) for kid in struct)


def _structures(lo, hi, binary_only, budget=None):
    """Subtree shapes over the leaf interval [lo..hi].

    `budget` bounds the number of internal vertices in the subtree.
    """
    if lo == hi:
        yield lo
        return
    if budget is not None and budget < 1:
        return
    kid_budget = None if budget is None else budget - 1
    for blocks in _compositions(lo, hi, binary_only):
        def rec(i, rem):
            if i == len(blocks):
                yield []
                return
            a, b = blocks[i]
            for sub in _structures(a, b, binary_only, rem):
                used = _count_vertices(sub)
                nxt = None if rem is None else rem - used
                if nxt is not None and nxt < 0:
                    continue
                for rest in rec(i + 1, nxt):
                    yield [sub] + rest
        for kids in rec(0, kid_budget):
            yield tuple(kids)


def _tree_from_structure(leaf_count, root_kids):
    cycles = []
    pairs = []
    counter = [leaf_count]

    def build(node, up_half):
        # returns nothing; appends the vertex for `node` whose first
        # entry is the half-edge toward the parent
        cycle = [up_half]
        for kid in node:
            if isinstance(kid, int):
                cycle.append(kid)
            else:
                down = counter[0]
                up = counter[0] + 1
                counter[0] += 2
                pairs.append((down, up))
                cycle.append(down)
                build(kid, up)
        cycles.append(tuple(cycle))

    build(root_kids, 0)
    return PlanarTree(leaf_count, cycles, pairs)


def _all_trees(leaf_count, binary_only, max_vertices=None):
    if leaf_count < 3:
        raise GraphError("need at least 3 leaves")
    for kids in _structures(1, leaf_count - 1, binary_only, max_vertices):
        if isinstance(kids, int):
            continue
        yield _tree_from_structure(leaf_count, kids)


def enumerate_trivalent_trees(leaf_count):
    """All trivalent planar trees with the given leaves, Catalan-many."""
    return list(_all_trees(leaf_count, binary_only=True))


def enumerate_faces(n, k):
    """All k-faces of K^n: trees with n+3 leaves and n-k internal edges."""
    if not 0 <= k <= n:
        raise GraphError("need 0 <= k <= n")
    want = n - k
    return [t for t in _all_trees(n + 3, binary_only=False, max_vertices=want + 1)
            if len(t.pairing) // 2 == want]


def trees_with_edge_count(leaf_count, edge_count):
    """All planar trees with the given leaves and internal edge count."""
    return [t for t in _all_trees(leaf_count, binary_only=False,
                                  max_vertices=edge_count + 1)
            if len(t.pairing) // 2 == edge_count]


def corolla(n):
    return PlanarTree(n + 3, [tuple(range(n + 3))], [])


# ---------------------------------------------------------------------------
# collapses and chains
# ---------------------------------------------------------------------------

def collapse_tree_edge(tree, sign, edge):
    """Collapse an internal edge, returning (tree, induced sign)."""
    cycles, pairing, s = collapse_oriented(tree.vertices, tree.pairing, sign, edge[0])
    pairs = sorted({(min(a, b), max(a, b)) for a, b in pairing.items()})
    return PlanarTree(tree.leaf_count, cycles, pairs, check=False), s


def canonical_oriented_tree(tree, sign):
    """Canonical representative with the sign transported along the
    relabeling of internal half-edges."""
    from fatcomplex.ribbon import reference_word, word_parity

    relabel = tree.canonical_relabel()
    canon = PlanarTree(
        tree.leaf_count,
        [tuple(relabel[x] for x in c) for c in tree.vertices],
        [(relabel[a], relabel[b]) for a, b in tree.internal_edges()],
        check=False)
    word = []
    for c in tree.vertices:
        image = [relabel[x] for x in c]
        word.append(("v", min(image)))
        word.extend(image)
    return canon, sign * word_parity(word, reference_word(canon.vertices))


class TreeChain:
    """A chain T_0 -> ... -> T_m of single-edge collapses with its sign.

    The sign compares the orientation induced from the natural
    orientation of T_0 with the designated orientation of T_m.
    """

    __slots__ = ("trees", "edges", "sign")

    def __init__(self, trees, edges, sign):
        self.trees = trees
        self.edges = tuple(edges)
        self.sign = sign

    def key(self):
        return tuple(t.canonical().literal() for t in self.trees)

    def __repr__(self):
        return "TreeChain(len=%d, sign=%+d)" % (len(self.edges), self.sign)


def chain_from_order(seed, edge_order):
    """Collapse the given edges of `seed` in order, tracking the sign."""
    trees = [seed]
    sign = 1
    t = seed
    for e in edge_order:
        t, sign = collapse_tree_edge(t, sign, e)
        trees.append(t)
    return TreeChain(trees, edge_order, sign)


def maximal_chains(n):
    """All maximal chains of K^n, ending at the corolla.

    Catalan(n+1) * n! chains; the sign is the induced-orientation
    bookkeeping against the designated orientation of the corolla.
    """
    out = []
    for seed in enumerate_trivalent_trees(n + 3):
        edges = seed.internal_edges()
        for order in permutations(edges):
            out.append(chain_from_order(seed, list(order)))
    return out


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

def _vertex_index(tree):
    return {c: i for i, c in enumerate(tree.vertices)}


def _adjacency(tree):
    vi = _vertex_index(tree)
    adj = {i: [] for i in range(len(tree.vertices))}
    for a, b in tree.internal_edges():
        u, w = vi[tree.vertex_of(a)], vi[tree.vertex_of(b)]
        adj[u].append(w)
        adj[w].append(u)
    return adj


def _vertex_path(tree, start, goal):
    if start == goal:
        return {start}
    adj = _adjacency(tree)
    prev = {start: None}
    queue = [start]
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = {goal}
    v = goal
    while prev[v] is not None:
        v = prev[v]
        path.add(v)
    return path


def regions_touching(tree, cycle):
    """Regions around a vertex, cyclically ordered by its corners.

    Region j is the gap between leaf j and leaf j+1; it touches the
    vertices on the tree path between those leaves.  The corner after
    half-edge h belongs to the region closing off the branch through h.
    """
    return tuple(corner_region(tree, h) for h in cycle)


def corner_region(tree, h):
    """Region of the corner following half-edge h at its vertex."""
    L = tree.leaf_count
    branch = branch_leaves(tree, h)
    for leaf in branch:
        if (leaf + 1) % L not in branch:
            return leaf
    raise GraphError("branch through %r has no boundary leaf" % (h,))


def branch_leaves(tree, h):
    """Leaves of the subtree hanging off half-edge h (h itself if a leaf)."""
    if h not in tree.pairing:
        return {h}
    seen = set()
    stack = [tree.pairing[h]]
    leaves = set()
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        for y in tree.vertex_of(x):
            if y == x:
                continue
            if y in tree.pairing:
                if tree.pairing[y] not in seen:
                    stack.append(tree.pairing[y])
            else:
                leaves.add(y)
    return leaves


def region_touch_sets(tree):
    """For each vertex index, the set of regions touching it (path model)."""
    vi = _vertex_index(tree)
    leaf_vertex = {}
    for c in tree.vertices:
        for x in c:
            if x not in tree.pairing:
                leaf_vertex[x] = vi[c]
    L = tree.leaf_count
    touch = {i: set() for i in range(len(tree.vertices))}
    for j in range(L):
        for v in _vertex_path(tree, leaf_vertex[j], leaf_vertex[(j + 1) % L]):
            touch[v].add(j)
    return touch


# ---------------------------------------------------------------------------
# region sign rules
# ---------------------------------------------------------------------------

def _ascending_parity(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    pos = [0] * len(values)
    for rank, i in enumerate(order):
        pos[i] = rank
    return perm_parity(pos)


def tuple_cyclic_sign(values):
    """Sign sorting distinct integers into their cyclic (ascending) order.

    Rotating an odd-length tuple is even, so for odd tuples this is the
    cyclic sign; we use it only with odd total length.
    """
    return _ascending_parity(values)


def _flank_regions(tree, edge):
    vi = _vertex_index(tree)
    touch = region_touch_sets(tree)
    u, w = vi[tree.vertex_of(edge[0])], vi[tree.vertex_of(edge[1])]
    shared = touch[u] & touch[w]
    if len(shared) != 2:
        raise ConfigurationMismatch("edge must have exactly two flanking regions")
    return shared


def _off_region(tree, vertex_cycle, edge):
    """The region touching `edge` only at this trivalent endpoint."""
    if len(vertex_cycle) != 3:
        raise ConfigurationMismatch("off-region needs a trivalent vertex")
    regs = set(regions_touching(tree, vertex_cycle))
    rest = regs - _flank_regions(tree, edge)
    if len(rest) != 1:
        raise ConfigurationMismatch("vertex does not touch the edge as required")
    return rest.pop()


def _vertex_distances(tree, start_idx):
    adj = _adjacency(tree)
    dist = {start_idx: 0}
    queue = [start_idx]
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def lemma_region_sign(tree, edge_order, v0=None):
    """Predicted chain sign for a seed with one non-trivalent vertex.

    For a tree whose vertices are trivalent except one vertex v0, with
    2k internal edges collapsed in the given order, the sign of the
    chain is (-1)^k times the sign of the permutation putting
    (a_1..a_V, b_1..b_2k) into cyclic order, where the a_i are the
    regions around v0 and b_i is the region touching e_i only at its
    endpoint furthest from v0.  When every vertex is trivalent, v0 must
    be given explicitly.
    """
    if v0 is None:
        big = [c for c in tree.vertices if len(c) > 3]
        if len(big) != 1:
            raise ConfigurationMismatch("need exactly one non-trivalent vertex")
        v0 = big[0]
    else:
        v0 = tree.vertex_of(v0[0])
    if len(edge_order) % 2 != 0:
        raise ConfigurationMismatch("need an even number of edges")
    k = len(edge_order) // 2
    if set(edge_order) != set(tree.internal_edges()):
        raise ConfigurationMismatch("edge order must list all internal edges")
    vi = _vertex_index(tree)
    dist = _vertex_distances(tree, vi[v0])
    a = regions_touching(tree, v0)
    bs = []
    for e in edge_order:
        cu, cw = tree.vertex_of(e[0]), tree.vertex_of(e[1])
        far = cu if dist[vi[cu]] > dist[vi[cw]] else cw
        bs.append(_off_region(tree, far, e))
    return (-1) ** k * tuple_cyclic_sign(tuple(a) + tuple(bs))


def _is_cyclically_sorted(values):
    n = len(values)
    descents = sum(1 for i in range(n) if values[(i + 1) % n] < values[i])
    return descents == 1


def chain_region_sign(chain):
    """Predicted sign of a maximal chain of K^{2k} from its regions.

    a_1, a_3 flank the first collapsed edge and a_2, b_1 are the two
    regions touching it only at an endpoint, labelled so that
    (a_1, a_2, a_3, b_1) is in cyclic order; for i >= 2, b_i is the
    region touching e_i only at its endpoint furthest from e_1.  The
    chain sign is (-1)^k sgn(a_1, a_2, a_3, b_1, ..., b_2k).
    """
    seed = chain.trees[0]
    if any(len(c) != 3 for c in seed.vertices):
        raise ConfigurationMismatch("maximal-chain rule needs a trivalent seed")
    n = len(chain.edges)
    if n % 2 != 0:
        raise ConfigurationMismatch("region rule applies to even-dimensional cells")
    k = n // 2
    e1 = chain.edges[0]
    flank = sorted(_flank_regions(seed, e1))
    u, w = seed.vertex_of(e1[0]), seed.vertex_of(e1[1])
    off_u, off_w = _off_region(seed, u, e1), _off_region(seed, w, e1)
    a = None
    for cand_u, cand_w in ((off_u, off_w), (off_w, off_u)):
        for a1, a3 in ((flank[0], flank[1]), (flank[1], flank[0])):
            if _is_cyclically_sorted((a1, cand_u, a3, cand_w)):
                a = (a1, cand_u, a3)
                b1 = cand_w
                break
        if a is not None:
            break
    if a is None:
        raise ConfigurationMismatch("could not orient the regions around e_1")
    vi = _vertex_index(seed)
    du = _vertex_distances(seed, vi[u])
    dw = _vertex_distances(seed, vi[w])
    bs = [b1]
    for e in chain.edges[1:]:
        cu, cw = seed.vertex_of(e[0]), seed.vertex_of(e[1])
        d_cu = min(du[vi[cu]], dw[vi[cu]])
        d_cw = min(du[vi[cw]], dw[vi[cw]])
        far = cu if d_cu > d_cw else cw
        bs.append(_off_region(seed, far, e))
    return (-1) ** k * tuple_cyclic_sign(tuple(a) + tuple(bs))


# ---------------------------------------------------------------------------
# dual cells and the cellular complex
# ---------------------------------------------------------------------------

def dual_cell(n):
    """The signed sum of maximal chains of K^n, as {chain key: sign}."""
    out = {}
    for chain in maximal_chains(n):
        out[chain.key()] = out.get(chain.key(), 0) + chain.sign
    return out


def dual_cell_boundary_check(n):
    """Check d D(T) == (-1)^n sum of D(T') over codimension-1 faces.

    D(T') uses on T' the orientation induced from the designated
    orientation of the corolla along the collapse T' -> T.
    """
    chains = maximal_chains(n)
    lhs = {}
    for chain in chains:
        key = chain.key()
        for i in range(n + 1):
            face = key[:i] + key[i + 1:]
            s = chain.sign * (-1) ** i
            lhs[face] = lhs.get(face, 0) + s
    lhs = {k: v for k, v in lhs.items() if v}

    rhs = {}
    for chain in chains:
        # truncated chain ends at the codimension-1 face T'
        tprime = chain.trees[n - 1]
        _, s_last = collapse_tree_edge(tprime, 1, chain.edges[-1])
        # designated orientation of T' collapses to the +1 corolla
        induced_to_tprime = chain.sign * s_last  # sign of truncation vs +ref(T')
        o_prime = induced_to_tprime * s_last
        key = tuple(t.canonical().literal() for t in chain.trees[:n])
        s = (-1) ** n * o_prime
        rhs[key] = rhs.get(key, 0) + s
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs, rhs


def face_boundary_maps(n):
    """Cellular boundary matrices of K^n over the canonical face bases.

    Returns (faces, maps) where faces[k] lists canonical k-face literals
    and maps[k] is the matrix of d: C_k -> C_{k-1} as a dict
    {(row, col): coefficient}.
    """
    faces = [tuple(sorted(t.canonical().literal() for t in enumerate_faces(n, k)))
             for k in range(n + 1)]
    index = [{lit: i for i, lit in enumerate(level)} for level in faces]
    trees_by_level = [
        {t.canonical().literal(): t.canonical() for t in enumerate_faces(n, k)}
        for k in range(n + 1)]
    maps = [None]
    for k in range(1, n + 1):
        # entry[(T' row, T col)] of d: C_k -> C_{k-1}
        mat = {}
        for lit_prime, tprime in trees_by_level[k - 1].items():
            row = index[k - 1][lit_prime]
            for e in tprime.internal_edges():
                collapsed, s = collapse_tree_edge(tprime, 1, e)
                canon, s = canonical_oriented_tree(collapsed, s)
                col = index[k][canon.literal()]
                mat[(row, col)] = mat.get((row, col), 0) + s
        maps.append({k2: v for k2, v in mat.items() if v})
    return faces, maps
