"""Finite free A-infinity superalgebras and their graph partition functions.

An algebra is a free Z/2-graded module with a finite family of
structure maps m_k (stored sparsely on basis tuples), and an even,
graded-symmetric, nondegenerate scalar product.  The partition function
of an oriented ribbon graph is the state sum over basis labelings of
half-edges: a structure-constant factor per vertex read clockwise, a
dual-pairing factor per edge, and two permutation signs fixed by the
reference ordering of vertices-and-half-edges.
"""

from fractions import Fraction
from itertools import product

from fatcomplex.coefficients import format_rational
from fatcomplex.graph_complex import (
    GraphChain,
    chain_of,
    d_integral,
    eval_w,
)
from fatcomplex.linalg import SingularMatrix, matrix_inverse
from fatcomplex.ribbon import (
    GraphError,
    OrientedRibbonGraph,
    graph_from_key,
    reference_word,
    word_parity,
)


class InvalidAlgebra(GraphError):
    pass


class ZeroX0(GraphError):
    pass


class AInfinityAlgebra:
    """Structure constants on basis tuples plus an even scalar product.

    `products[k][(i_1, ..., i_k)]` is the output of m_k on those basis
    elements, as a sparse {index: coefficient} map.  Absent arities are
    zero maps.  Strict validation enforces m_1 = 0, parity homogeneity
    of each m_k, and the scalar-product axioms; `strict=False` keeps
    only the scalar-product axioms, for deliberately broken examples.
    """

    def __init__(self, parities, pairing, products, strict=True):
        self.parities = tuple(int(p) % 2 for p in parities)
        self.rank = len(self.parities)
        self.pairing = tuple(tuple(Fraction(x) for x in row) for row in pairing)
        self.products = {}
        for k, table in products.items():
            k = int(k)
            clean = {}
            for args, out in table.items():
                args = tuple(int(a) for a in args)
                if len(args) != k:
                    raise InvalidAlgebra("arity mismatch in structure table")
                vec = {int(j): Fraction(c) for j, c in out.items() if Fraction(c)}
                if vec:
                    clean[args] = vec
            if clean:
                self.products[k] = clean
        self._validate_pairing()
        try:
            self.pairing_inverse = matrix_inverse([list(r) for r in self.pairing])
        except SingularMatrix:
            raise InvalidAlgebra("scalar product is degenerate")
        if strict:
            self._validate_structure()

    def _validate_pairing(self):
        n = self.rank
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise InvalidAlgebra("scalar product must be a rank x rank matrix")
        for i in range(n):
            for j in range(n):
                if (self.parities[i] + self.parities[j]) % 2 == 1:
                    if self.pairing[i][j]:
                        raise InvalidAlgebra("scalar product must be even")
                sym = (-1) ** self.parities[i] * self.pairing[j][i]
                if self.pairing[i][j] != sym:
                    raise InvalidAlgebra("scalar product must be graded symmetric")

    def _validate_structure(self):
        if 1 in self.products:
            raise InvalidAlgebra("m_1 must vanish")
        for k, table in self.products.items():
            for args, vec in table.items():
                want = (k + sum(self.parities[a] for a in args)) % 2
                for j in vec:
                    if self.parities[j] != want:
                        raise InvalidAlgebra(
                            "m_%d is not homogeneous of degree %d mod 2" % (k, k))

    def arities(self):
        return sorted(self.products)

    def m_basis(self, args):
        """m_k on a tuple of basis indices, as a sparse vector."""
        return self.products.get(len(args), {}).get(tuple(args), {})

    def m_vectors(self, vectors):
        """Multilinear extension of m_k to sparse vectors."""
        out = {}
        supports = [sorted(v) for v in vectors]
        for combo in product(*supports):
            coeff = Fraction(1)
            for v, i in zip(vectors, combo):
                coeff *= v[i]
            if not coeff:
                continue
            for j, c in self.m_basis(combo).items():
                out[j] = out.get(j, Fraction(0)) + coeff * c
        return {j: c for j, c in out.items() if c}

    def pair_vectors(self, u, v):
        total = Fraction(0)
        for i, a in u.items():
            for j, b in v.items():
                total += a * b * self.pairing[i][j]
        return total

    def dual_vector(self, j):
        """D applied to the j-th dual basis functional, as a vector."""
        return {i: self.pairing_inverse[i][j]
                for i in range(self.rank) if self.pairing_inverse[i][j]}

    def cyclicity_failures(self):
        """Basis tuples violating the cyclic-symmetry axiom."""
        bad = []
        for k, table in sorted(self.products.items()):
            for args in product(range(self.rank), repeat=k + 1):
                x0, rest = args[0], args[1:]
                lhs = Fraction(0)
                for j, c in self.m_basis(rest).items():
                    lhs += c * self.pairing[j][x0]
                rhs = Fraction(0)
                for j, c in self.m_basis(args[:-1]).items():
                    rhs += c * self.pairing[j][args[-1]]
                sign = (-1) ** (k + self.parities[x0] + k * self.parities[x0])
                if lhs != sign * rhs:
                    bad.append((k, args))
        return bad

    def change_basis(self, matrix):
        """Conjugate everything by an invertible parity-preserving matrix
        whose columns are the new basis vectors in the old one."""
        p = [[Fraction(x) for x in row] for row in matrix]
        n = self.rank
        pinv = matrix_inverse(p)
        for j in range(n):
            pars = {self.parities[i] for i in range(n) if p[i][j]}
            if len(pars) > 1:
                raise InvalidAlgebra("basis change must preserve parity")
        new_parities = [next(iter({self.parities[i] for i in range(n) if p[i][j]}))
                        if any(p[i][j] for i in range(n)) else 0
                        for j in range(n)]
        new_pairing = [[sum(p[i][a] * p[j][b] * self.pairing[i][j]
                            for i in range(n) for j in range(n))
                        for b in range(n)] for a in range(n)]
        new_products = {}
        for k in self.products:
            table = {}
            for args in product(range(n), repeat=k):
                vecs = [{i: p[i][a] for i in range(n) if p[i][a]} for a in args]
                out_old = self.m_vectors(vecs)
                if not out_old:
                    continue
                out_new = {}
                for i, c in out_old.items():
                    for j in range(n):
                        if pinv[j][i]:
                            out_new[j] = out_new.get(j, Fraction(0)) + pinv[j][i] * c
                out_new = {j: c for j, c in out_new.items() if c}
                if out_new:
                    table[args] = out_new
            if table:
                new_products[k] = table
        return AInfinityAlgebra(new_parities, new_pairing, new_products)

    def to_json(self):
        return {
            "parities": list(self.parities),
            "pairing": [[format_rational(x) for x in row] for row in self.pairing],
            "m": [{"k": k, "in": list(args),
                   "out": {str(j): format_rational(c) for j, c in sorted(vec.items())}}
                  for k in sorted(self.products)
                  for args, vec in sorted(self.products[k].items())],
        }

    @classmethod
    def from_json(cls, data, strict=True):
        products = {}
        for entry in data.get("m", []):
            k = int(entry["k"])
            args = tuple(int(a) for a in entry["in"])
            out = {int(j): Fraction(c) for j, c in entry["out"].items()}
            products.setdefault(k, {})[args] = out
        return cls(data["parities"], data["pairing"], products, strict=strict)


def one_dimensional_algebra(x, max_arity):
    """The rank-one even algebra with m_2k = multiplication by x[k-1]."""
    products = {}
    for k in range(2, max_arity + 1, 2):
        coeff = Fraction(x[k // 2 - 1]) if k // 2 - 1 < len(x) else Fraction(0)
        if coeff:
            products[k] = {(0,) * k: {0: coeff}}
    return AInfinityAlgebra([0], [[Fraction(1)]], products)


def verify_ainfinity(algebra, max_arity):
    """Check every A-infinity relation instance on basis tuples up to the
    given total arity; returns the offending (arity, tuple) pairs."""
    failures = []
    for k in range(1, max_arity + 1):
        for args in product(range(algebra.rank), repeat=k):
            total = {}
            for s in range(1, k + 1):
                for r in range(0, k - s + 1):
                    t = k - s - r
                    inner = algebra.m_basis(args[r:r + s])
                    if not inner:
                        continue
                    u = r + s * t + s * sum(algebra.parities[a] for a in args[:r])
                    sign = (-1) ** u
                    for mid, c_mid in inner.items():
                        outer_args = args[:r] + (mid,) + args[r + s:]
                        for j, c in algebra.m_basis(outer_args).items():
                            key = j
                            total[key] = total.get(key, Fraction(0)) + sign * c_mid * c
            if any(total.values()):
                failures.append((k, args))
    return failures


def contraction_identity_holds(algebra):
    """sum_i <x, b_i><y, D b_i*> == <x, y> on all basis pairs."""
    n = algebra.rank
    for x in range(n):
        for y in range(n):
            lhs = Fraction(0)
            for i in range(n):
                lhs += algebra.pairing[x][i] * algebra.pair_vectors(
                    {y: Fraction(1)}, algebra.dual_vector(i))
            if lhs != algebra.pairing[x][y]:
                return False
    return True


# ---------------------------------------------------------------------------
# the partition function
# ---------------------------------------------------------------------------

def partition_function(algebra, og, vertex_order=None, starts=None):
    """State sum over basis labelings of the half-edges of <Gamma>.

    `vertex_order` (a permutation of the vertex cycles) and `starts`
    (a chosen first half-edge per cycle) override the reference choices;
    the result is independent of them.
    """
    if not isinstance(algebra, AInfinityAlgebra):
        raise InvalidAlgebra("need an AInfinityAlgebra")
    g = og.graph
    cycles = list(g.vertices) if vertex_order is None else [tuple(c) for c in vertex_order]
    if sorted(tuple(sorted(c)) for c in cycles) != sorted(tuple(sorted(c)) for c in g.vertices):
        raise GraphError("vertex order must list the vertices of the graph")
    rotated = []
    for c in cycles:
        if starts is not None and tuple(sorted(c)) in starts:
            s = starts[tuple(sorted(c))]
        else:
            s = min(c)
        i = c.index(s)
        rotated.append(c[i:] + c[:i])

    word = []
    for c in rotated:
        word.append(("v", min(c)))
        word.extend(c)
    eps1 = og.sign * word_parity(reference_word(g.vertices), word)

    # the global clockwise-labelled sequence e_11 .. e_1n e_10 e_21 ..
    sequence = []
    for c in rotated:
        sequence.extend(reversed(c[1:]))
        sequence.append(c[0])

    edges = g.edges()
    half_edges = list(g.half_edges)
    pos = {h: i for i, h in enumerate(half_edges)}
    ginv = algebra.pairing_inverse

    total = Fraction(0)
    for state in product(range(algebra.rank), repeat=len(half_edges)):
        term = eps1
        for c in rotated:
            args = tuple(state[pos[h]] for h in reversed(c[1:]))
            out = algebra.m_basis(args)
            if not out:
                term = 0
                break
            x0 = state[pos[c[0]]]
            factor = Fraction(0)
            for j, coeff in out.items():
                factor += coeff * algebra.pairing[j][x0]
            if not factor:
                term = 0
                break
            term *= factor
        if not term:
            continue
        for a, b in edges:
            h, hbar = (a, b) if a < b else (b, a)
            factor = ginv[state[pos[h]]][state[pos[hbar]]]
            if not factor:
                term = 0
                break
            term *= factor
        if not term:
            continue
        odd_in_sequence = [h for h in sequence if algebra.parities[state[pos[h]]]]
        paired_order = []
        for a, b in edges:
            h, hbar = (a, b) if a < b else (b, a)
            if algebra.parities[state[pos[h]]]:
                paired_order.append(h)
            if algebra.parities[state[pos[hbar]]]:
                paired_order.append(hbar)
        if odd_in_sequence:
            eps2 = word_parity(odd_in_sequence, paired_order)
        else:
            eps2 = 1
        total += term * eps2
    return total


def partition_function_chain(algebra, chain):
    total = Fraction(0)
    for key, coeff in chain.items():
        og = OrientedRibbonGraph(graph_from_key(key), 1)
        total += coeff * partition_function(algebra, og)
    return total


def z_x(x, og):
    """The rank-one partition function: o(Gamma) times the product of
    x_{(valence-3)/2} over the vertices; zero on even-valent graphs."""
    g = og.graph
    if any(len(c) % 2 == 0 for c in g.vertices):
        return Fraction(0)
    value = Fraction(og.sign)
    for c in g.vertices:
        i = (len(c) - 3) // 2
        value *= Fraction(x[i]) if i < len(x) else Fraction(0)
    return value


def z_x_chain(x, chain):
    total = Fraction(0)
    for key, coeff in chain.items():
        total += coeff * z_x(x, OrientedRibbonGraph(graph_from_key(key), 1))
    return total


def _partitions_bounded(budget):
    """Partitions (any weight) with sum of (2 p + 1) over parts <= budget."""
    out = [()]
    def rec(prefix, largest, left):
        for p in range(largest, 0, -1):
            cost = 2 * p + 1
            if cost <= left:
                cur = prefix + (p,)
                out.append(cur)
                rec(cur, p, left - cost)
    rec((), (budget - 1) // 2 if budget >= 3 else 0, budget)
    return out


def zx_expansion_check(x, graphs):
    """Check Z_x == x_0^(-2 chi) sum_lambda y^lambda W_lambda* graph by
    graph; both sides are computed independently."""
    x = [Fraction(v) for v in x]
    if not x or x[0] == 0:
        raise ZeroX0("the expansion needs x_0 nonzero")
    report = []
    for g in graphs:
        og = OrientedRibbonGraph(g, 1)
        chain = chain_of(og)
        lhs = z_x_chain(x, chain)
        chi = g.euler_characteristic
        rhs = Fraction(0)
        for lam in _partitions_bounded(-2 * chi):
            r0 = -2 * chi - sum(2 * p + 1 for p in lam)
            if r0 < 0:
                continue
            y = x[0] ** r0
            ok = True
            for p in lam:
                if p < len(x):
                    y *= x[p]
                else:
                    ok = False
                    break
            if not ok:
                continue
            value = eval_w(lam, chain)
            if value:
                rhs += y * value
        report.append((g.literal(), lhs, rhs))
    return report


def check_partition_cocycle(algebra, graphs):
    """Z_A vanishes on the boundary of every corpus generator."""
    if not contraction_identity_holds(algebra):
        raise InvalidAlgebra("dual basis does not satisfy the contraction identity")
    report = []
    for g in graphs:
        og = OrientedRibbonGraph(g, 1)
        value = partition_function_chain(algebra, d_integral(og))
        report.append((g.literal(), value))
    return report
