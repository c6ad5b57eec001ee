"""Model builders and the named polynomial catalog.

Three families live here: Hori-Vafa polynomials for complete
intersections in projective space, Markov triples with their
elementary transforms, and the weighted-plane mutation step that moves
one slot of a Markov triple while transporting the polynomial model.
catalog() collects the fixed polynomials the test suite and CLI refer
to by name.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import intlinalg, laurent, mutation, polytope
from .errors import CoordinateSearchFailed, NotFano, NotMarkov, NotWeightedTriangle

_VAR_POOL = ("x", "y", "z", "t", "u", "v")


def variable_names(n):
    """Default variable names: x,y,z,t,u,v for small n, else x1..xn."""
    if n <= len(_VAR_POOL):
        return _VAR_POOL[:n]
    return tuple("x%d" % (i + 1) for i in range(n))


@dataclass(frozen=True)
class CompleteIntersectionSpec:
    """Intersection of hypersurfaces of the given degrees in projective
    space of dimension ambient_dim.  degrees may be empty (the space
    itself); each listed degree must be at least 2."""

    ambient_dim: int
    degrees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        N = self.ambient_dim
        if not isinstance(N, int) or N < 1:
            raise ValueError("ambient dimension must be a positive integer")
        for d in self.degrees:
            if d < 2:
                raise ValueError("each degree must be at least 2, got %d" % d)
        if N - len(self.degrees) < 1:
            raise ValueError("too many hypersurfaces for the ambient dimension")

    @property
    def dim(self):
        return self.ambient_dim - len(self.degrees)

    @property
    def index(self):
        """Degree of the residual hyperplane factor; positive iff Fano."""
        return self.ambient_dim + 1 - sum(self.degrees)


def hori_vafa(spec):
    """Torus-chart model for a Fano complete intersection.

    One block of d_j - 1 variables per hypersurface and index - 1 free
    variables; the product of (block sum + 1)^d_j is divided by the
    product of all variables and the free variables are added.  Raises
    NotFano when the index is not positive.
    """
    d0 = spec.index
    if d0 < 1:
        raise NotFano("index %d is not positive" % d0)
    n = spec.dim
    names = variable_names(n)
    f = laurent.one(names)
    pos = 0
    for d in spec.degrees:
        factor = laurent.one(names)
        for i in range(pos, pos + d - 1):
            factor = laurent.add(factor, laurent.variable(names, i))
        f = laurent.mul(f, laurent.pow(factor, d))
        pos += d - 1
    f = laurent.mul(f, laurent.monomial(names, tuple(-1 for _ in names)))
    for i in range(pos, n):
        f = laurent.add(f, laurent.variable(names, i))
    return f


@dataclass(frozen=True)
class MarkovTriple:
    """Sorted positive solution of a^2 + b^2 + c^2 = 3abc."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        vals = (self.a, self.b, self.c)
        for v in vals:
            if not isinstance(v, int) or v < 1:
                raise NotMarkov("entries must be positive integers, got %r" % (vals,))
        a, b, c = sorted(vals)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if a * a + b * b + c * c != 3 * a * b * c:
            raise NotMarkov("%r does not solve the Markov equation" % (vals,))

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def weights(self):
        """Squared entries: the fan-triangle weights attached to the triple."""
        return (self.a * self.a, self.b * self.b, self.c * self.c)


def markov_children(t):
    """Triples reachable from t by one elementary transform, minus t itself.

    The transform replaces one entry by three times the product of the
    other two minus that entry; the result is always another triple.
    """
    vals = t.as_tuple()
    out = set()
    for slot in range(3):
        others = [vals[i] for i in range(3) if i != slot]
        new = 3 * others[0] * others[1] - vals[slot]
        if new < 1:
            continue
        child = MarkovTriple(others[0], others[1], new)
        if child != t:
            out.add(child)
    return out


def markov_tree(depth):
    """All triples within the given number of elementary transforms of (1,1,1)."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = MarkovTriple(1, 1, 1)
    seen = {root}
    frontier = [root]
    for _ in range(depth):
        step = []
        for t in frontier:
            for child in markov_children(t):
                if child not in seen:
                    seen.add(child)
                    step.append(child)
        frontier = step
    return seen


def triangle_weights(P):
    """Positive primitive relation on the vertices of a lattice triangle.

    The triangle must be two-dimensional with exactly three primitive
    vertices and the origin strictly inside; returns the weight of each
    vertex in P.vertices order.
    """
    if P.dim_affine != 2 or len(P.vertices) != 3:
        raise NotWeightedTriangle("need a two-dimensional triangle, got %d vertices in dimension %d"
                                  % (len(P.vertices), P.dim_affine))
    if not polytope.is_primitive(P):
        raise NotWeightedTriangle("vertices are not primitive lattice vectors")
    v1, v2, v3 = P.vertices
    rows = [[int(v1[i]), int(v2[i]), int(v3[i])] for i in range(len(v1))]
    kernel = intlinalg.integer_kernel_basis(rows)
    if len(kernel) != 1:
        raise NotWeightedTriangle("vertices admit no one-dimensional relation")
    w = list(kernel[0])
    if any(x < 0 for x in w):
        w = [-x for x in w]
    if any(x <= 0 for x in w):
        raise NotWeightedTriangle("origin is not strictly inside the triangle")
    return tuple(w)


def _solve_linear_map(verts, targets):
    """Unimodular integer 2x2 matrix sending each vertex to its target, or None."""
    m00, m01 = verts[0][0], verts[1][0]
    m10, m11 = verts[0][1], verts[1][1]
    dM = m00 * m11 - m01 * m10
    if dM == 0:
        return None
    A = []
    for i in range(2):
        t0, t1 = targets[0][i], targets[1][i]
        r0 = Fraction(t0 * m11 - t1 * m10, dM)
        r1 = Fraction(t1 * m00 - t0 * m01, dM)
        if r0.denominator != 1 or r1.denominator != 1:
            return None
        A.append([int(r0), int(r1)])
    if abs(A[0][0] * A[1][1] - A[0][1] * A[1][0]) != 1:
        return None
    if tuple(intlinalg.mat_vec(A, verts[2])) != tuple(targets[2]):
        return None
    return A


def galkin_mutate(f, triple, slot):
    """One weighted-plane mutation step on a two-variable model.

    f must have a primitive triangle as Newton polytope whose vertex
    weights are the squares of the triple's entries.  The entry at the
    chosen slot is replaced by the elementary transform of the other
    two; returns (new polynomial, new triple).  The coordinate search
    picks the smallest admissible exponent d and the lexicographically
    least change-of-basis matrix.
    """
    if len(f.var_names) != 2:
        raise NotWeightedTriangle("need a polynomial in two variables, got %d" % len(f.var_names))
    if slot not in (0, 1, 2):
        raise ValueError("slot must be 0, 1, or 2")
    vals = triple.as_tuple()
    c = vals[slot]
    a, b = sorted(vals[i] for i in range(3) if i != slot)
    P = polytope.newton_polytope(f)
    weights = triangle_weights(P)
    if sorted(weights) != sorted(triple.weights()):
        raise NotWeightedTriangle("vertex weights %s do not match triple %s"
                                  % (sorted(weights), vals))
    d = None
    for cand in range(c, 2 * c):
        if (3 * a * cand - b) % c == 0:
            d = cand
            break
    if d is None:
        raise CoordinateSearchFailed("no admissible exponent for slot value %d" % c)
    m = 3 * a * b - c
    third_num = d * m - b * b
    if third_num % c != 0:
        raise CoordinateSearchFailed("third vertex target is not integral")
    weighted_targets = (
        (a * a, (d, c)),
        (b * b, (d - c, c)),
        (c * c, (-(third_num // c), -m)),
    )
    best = None
    for perm in permutations(range(3)):
        if any(weights[i] != weighted_targets[perm[i]][0] for i in range(3)):
            continue
        A = _solve_linear_map(P.vertices, [weighted_targets[perm[i]][1] for i in range(3)])
        if A is None:
            continue
        key = tuple(tuple(row) for row in A)
        if best is None or key < best:
            best = key
    if best is None:
        raise CoordinateSearchFailed("no unimodular map onto the target triangle")
    skewed = laurent.monomial_substitute(f, [list(row) for row in best])
    factor = laurent.add(laurent.variable(f.var_names, 0), laurent.one(f.var_names))
    g = mutation.apply_cluster(skewed, mutation.ClusterChange(1, 1, factor))
    new_triple = MarkovTriple(a, b, m)
    new_weights = triangle_weights(polytope.newton_polytope(g))
    if sorted(new_weights) != sorted(new_triple.weights()):
        raise CoordinateSearchFailed("mutation produced weights %s, expected %s"
                                     % (sorted(new_weights), sorted(new_triple.weights())))
    return g, new_triple


_CATALOG_SOURCES = (
    ("p2.f", "x + y + 1/(x*y)", ("x", "y")),
    ("quadric3.f0", "(x+1)^2/(x*y*z) + y + z", ("x", "y", "z")),
    ("quadric3.f1", "(x+1)/(x*y*z) + y*(x+1) + z", ("x", "y", "z")),
    ("cubic3.f0", "(x+y+1)^3/(x*y*z) + z", ("x", "y", "z")),
    ("cubic3.f1", "(x+y+1)^2/(x*y*z) + z*(x+y+1)", ("x", "y", "z")),
    ("cubic4.f00", "(x+y+1)^3/(x*y*z*t) + z + t", ("x", "y", "z", "t")),
    ("cubic4.f10", "(x+y+1)^2/(x*y*z*t) + z*(x+y+1) + t", ("x", "y", "z", "t")),
    ("cubic4.f11", "(x+y+1)/(x*y*z*t) + z*(x+y+1) + t*(x+y+1)", ("x", "y", "z", "t")),
    ("p3.f1", "x + y + z + 1/(x*y*z)", ("x", "y", "z")),
    ("p3.f2", "x + y/x + z/x + 1/(x*y) + 1/(x*z)", ("x", "y", "z")),
    ("p3.f3", "(x+1)^2/(x*y*z) + y/z + z", ("x", "y", "z")),
    ("p3.f1p", "z*(x+1) + y + 1/(x*y*z^2)", ("x", "y", "z")),
    ("p3.f1pp", "z*(x+1) + y/z + 1/(x*y*z)", ("x", "y", "z")),
    ("p112.f", "(x+1)^2*y/x + 1/y", ("x", "y")),
    ("p112.fp", "(x+1)*y/x + (x+1)/y", ("x", "y")),
    ("p114.f", "(x+1)^2*y^2/x + 1/y", ("x", "y")),
)


def catalog():
    """Named polynomials from the worked examples, parsed fresh per call.

    Keys are model.variant; the p3 entries f1p and f1pp are the two
    rewritten forms of f1 used as inputs of the cluster step.
    """
    return {name: laurent.parse(expr, names) for name, expr, names in _CATALOG_SOURCES}
