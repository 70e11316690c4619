"""The associative graph complex: boundary operators on oriented ribbon
graph classes, vertex-pattern cocycles, graph enumeration, and the
forest complex over a base graph.

Chains are finitely supported maps from canonical oriented-class keys
to exact rationals.  A key names the isomorphism class with its
orientation normalized to +1 on the canonical representative; classes
admitting an orientation-reversing automorphism are identically zero
and never stored.
"""

import math
from fractions import Fraction
from itertools import permutations

from fatcomplex import ribbon
from fatcomplex.coefficients import normalize_partition
from fatcomplex.linalg import matrix_rank
from fatcomplex.ribbon import (
    GraphError,
    OrientedRibbonGraph,
    RibbonGraph,
    automorphisms,
    canonical_oriented,
    enumerate_expansions,
    graph_from_key,
    reference_word,
    single_collapse_morphisms,
    word_parity,
)


class GraphChain:
    """Finitely supported rational combination of oriented classes."""

    __slots__ = ("grading", "terms")

    def __init__(self, grading=None):
        self.grading = grading
        self.terms = {}

    def add(self, key, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return
        cur = self.terms.get(key, Fraction(0)) + coeff
        if cur:
            self.terms[key] = cur
        else:
            self.terms.pop(key, None)

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, GraphChain) and self.terms == other.terms)

    def __repr__(self):
        return "GraphChain(%d terms, grading=%r)" % (len(self.terms), self.grading)


def chain_of(og, coeff=1):
    """The chain <Gamma> for one oriented graph (zero if the class is)."""
    key, sign = canonical_oriented(og)
    chain = GraphChain(grading=og.graph.codimension)
    if sign is not None:
        chain.add(key, Fraction(coeff) * sign)
    return chain


def d_integral(og):
    """Boundary of <Gamma> in the integral subcomplex: one term per
    single-vertex expansion, with the orientation induced from Gamma."""
    _, sign = canonical_oriented(og)
    chain = GraphChain(grading=og.graph.codimension - 1)
    if sign is None:
        return chain
    for cycle in og.graph.vertices:
        if len(cycle) < 4:
            continue
        for expanded, _ in enumerate_expansions(og, cycle):
            key, s = canonical_oriented(expanded)
            if s is not None:
                chain.add(key, s)
    return chain


def d_chain(chain):
    out = GraphChain(grading=None if chain.grading is None else chain.grading - 1)
    for key, coeff in chain.items():
        sub = d_integral(OrientedRibbonGraph(graph_from_key(key), 1))
        for k2, c2 in sub.items():
            out.add(k2, coeff * c2)
    return out


def d_dual(og):
    """Boundary of the plain dual generator: coefficients are signed
    counts of left equivalence classes of one-edge collapses onto it."""
    base_key, base_sign = canonical_oriented(og)
    out = {}
    if base_sign is None:
        return out
    target = og.graph
    aut_target = len(automorphisms(target))
    for key, _ in d_integral(og).items():
        source = graph_from_key(key)
        net = 0
        for _, s in single_collapse_morphisms(source, target):
            net += s * og.sign
        ell = Fraction(net, aut_target)
        if ell:
            out[key] = ell
    return out


def hom_counts(source, target):
    """Signed and total counts of one-edge-collapse morphisms."""
    plus = minus = 0
    for _, s in single_collapse_morphisms(source, target):
        if s == 1:
            plus += 1
        else:
            minus += 1
    return plus, minus


# ---------------------------------------------------------------------------
# vertex-pattern cocycles
# ---------------------------------------------------------------------------

def _pattern_of(graph):
    """(positive pattern, #trivalent) of an odd-valent graph, else None."""
    if any(len(c) % 2 == 0 for c in graph.vertices):
        return None
    positive = sorted(((len(c) - 3) // 2 for c in graph.vertices if len(c) > 3),
                      reverse=True)
    trivalent = sum(1 for c in graph.vertices if len(c) == 3)
    return tuple(positive), trivalent


def eval_w_key(lam, key):
    """Value of the dual pattern cocycle on one canonical generator."""
    lam = normalize_partition(lam, allow_zero=True)
    zeros = sum(1 for p in lam if p == 0)
    positive = tuple(p for p in lam if p > 0)
    graph = graph_from_key(key)
    pat = _pattern_of(graph)
    if pat is None or pat[0] != positive:
        return Fraction(0)
    # canonical keys carry the natural orientation, so o = +1
    return Fraction(math.comb(pat[1], zeros))


def eval_w(lam, chain):
    total = Fraction(0)
    for key, coeff in chain.items():
        total += coeff * eval_w_key(lam, key)
    return total


def verify_cocycle(lam, max_half_edges):
    """Check that the pattern cocycle kills every boundary in range.

    Enumerates all oriented classes of codimension 2|lam|+1 within the
    half-edge bound and evaluates the cocycle on their boundaries.
    Returns a list of (key, value) with value == 0 expected.
    """
    lam = normalize_partition(lam, allow_zero=True)
    weight = sum(lam)
    codim = 2 * weight + 1
    report = []
    for g in enumerate_graphs(max_half_edges, codimension=codim):
        og = OrientedRibbonGraph(g, 1)
        key, sign = canonical_oriented(og)
        if sign is None:
            continue
        value = eval_w(lam, d_integral(og))
        report.append((key, value))
    return report


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _valence_multisets(total, smallest=3):
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1):
        for rest in _valence_multisets(total - first, first):
            yield (first,) + rest


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for sub in _matchings(rest):
            yield [(a, b)] + sub


def enumerate_graphs(max_half_edges, codimension=None, valences=None,
                     trivalent=False):
    """One canonical representative per isomorphism class.

    Generates by valence multiset: vertex cycles are fixed to blocks of
    consecutive labels (any ribbon graph can be relabeled that way) and
    all pairings are tried, deduplicating via the canonical key.
    """
    if max_half_edges < 4:
        raise GraphError("need at least 4 half-edges")
    found = {}
    for total in range(4, max_half_edges + 1, 2):
        for multiset in _valence_multisets(total):
            vals = tuple(sorted(multiset, reverse=True))
            if trivalent and any(v != 3 for v in vals):
                continue
            if valences is not None and vals != tuple(sorted(valences, reverse=True)):
                continue
            if codimension is not None and sum(v - 3 for v in vals) != codimension:
                continue
            cycles = []
            at = 1
            for v in vals:
                cycles.append(tuple(range(at, at + v)))
                at += v
            labels = list(range(1, total + 1))
            for pairing in _matchings(labels):
                try:
                    g = RibbonGraph(cycles, pairing)
                except GraphError:
                    continue
                key, _ = ribbon.canonical_form(g)
                if key not in found:
                    found[key] = graph_from_key(key)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# chain serialization
# ---------------------------------------------------------------------------

def chain_to_json(chain):
    import json

    from fatcomplex.coefficients import format_rational

    out = {}
    for key, coeff in chain.items():
        lit = ribbon.graph_to_literal(graph_from_key(key))
        out[json.dumps(lit, separators=(",", ":"))] = format_rational(coeff)
    return out


def chain_from_json(data):
    import json

    chain = GraphChain()
    for lit_text, coeff in data.items():
        g = ribbon.graph_from_literal(json.loads(lit_text))
        key, sign = canonical_oriented(OrientedRibbonGraph(g, 1))
        if sign is None:
            raise GraphError("orientation-reversing class in serialized chain")
        chain.add(key, Fraction(coeff) * sign)
    return chain


# ---------------------------------------------------------------------------
# the forest complex over a base graph
# ---------------------------------------------------------------------------

def _canonical_over(base_labels, og):
    """Canonical form of an object over the base: relabel only the
    half-edges not in the base, deterministically from the base anchor,
    and transport the orientation sign."""
    g = og.graph
    anchor = min(base_labels)
    relabel = ribbon._traversal_labeling(g, anchor)
    order = sorted((h for h in g.half_edges if h not in base_labels),
                   key=relabel.get)
    fresh = max(base_labels) + 1
    final = {h: h for h in base_labels}
    for h in order:
        final[h] = fresh
        fresh += 1
    cycles = ribbon._normalize_cycles([tuple(final[x] for x in c) for c in g.vertices])
    pairs = tuple(sorted((min(final[a], final[b]), max(final[a], final[b]))
                         for a, b in g.edges()))
    word = []
    for c in g.vertices:
        image = [final[x] for x in c]
        word.append(("v", min(image)))
        word.extend(image)
    sign = og.sign * word_parity(word, reference_word(cycles))
    return (cycles, pairs), sign


class ForestComplex:
    """The augmented chain complex of forested graphs over a base graph.

    Level k is spanned by the isomorphism classes over the base of
    oriented codimension-k graphs collapsing onto it; such objects are
    rigid, so each class is a free generator.
    """

    def __init__(self, base):
        self.base = base
        self.base_labels = set(base.half_edges)
        n = base.codimension
        key, _ = _canonical_over(self.base_labels, OrientedRibbonGraph(base, 1))
        self.levels = [None] * (n + 1)
        self.levels[n] = [key]
        self.matrices = [None] * (n + 1)
        for k in range(n, 0, -1):
            self._expand_level(k)

    def _expand_level(self, k):
        found = {}
        entries = {}
        for col, key in enumerate(self.levels[k]):
            g = graph_from_key(key)
            og = OrientedRibbonGraph(g, 1)
            for cycle in g.vertices:
                if len(cycle) < 4:
                    continue
                for expanded, _ in enumerate_expansions(og, cycle):
                    k2, s = _canonical_over(self.base_labels, expanded)
                    if k2 not in found:
                        found[k2] = len(found)
                    row = found[k2]
                    entries[(row, col)] = entries.get((row, col), 0) + s
        self.levels[k - 1] = [key for key, _ in sorted(found.items(), key=lambda kv: kv[1])]
        # reindex rows in sorted-key order for determinism
        ordered = sorted(range(len(self.levels[k - 1])),
                         key=lambda i: self.levels[k - 1][i])
        rank_of = {old: new for new, old in enumerate(ordered)}
        self.levels[k - 1] = [self.levels[k - 1][i] for i in ordered]
        self.matrices[k] = {(rank_of[r], c): v for (r, c), v in entries.items() if v}

    def ranks(self):
        return [len(level) for level in self.levels]

    def matrix_dense(self, k):
        rows = len(self.levels[k - 1])
        cols = len(self.levels[k])
        m = [[Fraction(0)] * cols for _ in range(rows)]
        for (r, c), v in self.matrices[k].items():
            m[r][c] = Fraction(v)
        return m

    def augmentation(self):
        """Signs of the trivalent generators (all are +-1)."""
        return [1 for _ in self.levels[0]]

    def d_squared_is_zero(self):
        n = self.base.codimension
        for k in range(2, n + 1):
            a = self.matrix_dense(k - 1)
            b = self.matrix_dense(k)
            for j in range(len(b[0]) if b else 0):
                col = [sum(a[i][t] * b[t][j] for t in range(len(b)))
                       for i in range(len(a))]
                if any(col):
                    return False
        return True

    def augmentation_kills_boundary(self):
        if self.base.codimension < 1:
            return True
        eps = self.augmentation()
        b = self.matrix_dense(1)
        for j in range(len(b[0]) if b else 0):
            if sum(eps[i] * b[i][j] for i in range(len(b))):
                return False
        return True

    def homology_is_trivial(self):
        """Augmented homology vanishes in all degrees 0..n by ranks."""
        n = self.base.codimension
        dims = self.ranks()
        ranks = [None] * (n + 1)
        for k in range(1, n + 1):
            ranks[k] = matrix_rank(self.matrix_dense(k))
        # degree 0: augmented kernel is the image of d_1
        eps_rank = 1 if dims[0] else 0
        ok = dims[0] - eps_rank == (ranks[1] if n >= 1 else 0)
        for k in range(1, n):
            ok = ok and dims[k] - ranks[k] == ranks[k + 1]
        if n >= 1:
            ok = ok and dims[n] - ranks[n] == 0
        return ok

    def expected_ranks(self):
        """Convolution of associahedron face counts over the big vertices."""
        from fatcomplex.trees import enumerate_faces

        out = [1]
        for cycle in self.base.vertices:
            m = len(cycle) - 3
            if m == 0:
                continue
            fv = [len(enumerate_faces(m, k)) for k in range(m + 1)]
            new = [0] * (len(out) + m)
            for i, a in enumerate(out):
                for j, b in enumerate(fv):
                    new[i + j] += a * b
            out = new
        return out


def forest_complex(base):
    return ForestComplex(base)


def dual_cell_simplices(base):
    """The dual cell of an oriented base graph, as morphism simplices.

    Yields (morphisms, sign) over every maximal chain of objects over
    the base: a trivalent object together with an ordering of its
    forest edges.  The sign compares the orientation induced from the
    natural orientation of the trivalent object with the +1 orientation
    of the base's reference ordering.
    """
    n = base.codimension
    fc = ForestComplex(base)
    base_labels = set(base.half_edges)
    for key in fc.levels[0]:
        top = graph_from_key(key)
        forest = [e for e in top.edges()
                  if e[0] not in base_labels and e[1] not in base_labels]
        for order in permutations(forest):
            morphisms = []
            current = top
            sign = 1
            for e in order:
                mor, s = ribbon.GraphMorphism.collapse(current, [e])
                morphisms.append(mor)
                current = mor.target
                sign *= s
            if current != base:
                raise GraphError("dual cell chain did not land on the base")
            yield morphisms, sign
