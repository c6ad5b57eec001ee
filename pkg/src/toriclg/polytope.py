"""Exact convex geometry for lattice and rational polytopes.

All arithmetic is over Fraction; there is no floating point anywhere.
Hulls are computed in affine coordinates, so lower-dimensional polytopes
get a faithful description: facet inequalities that cut the polytope out
of its affine hull, plus equalities that cut the affine hull out of the
ambient space.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

from . import intlinalg
from .errors import (
    ComplexityLimit,
    DimensionMismatch,
    DimensionTooLarge,
    EmptyInput,
    InvalidDimension,
    NotLattice,
    NotTwoDimensional,
    ZeroPolynomial,
)

MAX_AMBIENT_DIM = 6
LATTICE_POINT_CAP = 2_000_000
MAX_EDGE_SLOTS = 12


@dataclass(frozen=True)
class LatticePolytope:
    dim_ambient: int
    vertices: tuple
    facet_inequalities: tuple
    affine_equalities: tuple
    dim_affine: int

    def __repr__(self):
        return "LatticePolytope(%r)" % (list(self.vertices),)


@dataclass(frozen=True)
class RationalPolytope:
    dim_ambient: int
    vertices: tuple
    facet_inequalities: tuple
    affine_equalities: tuple
    dim_affine: int

    def __repr__(self):
        return "RationalPolytope(%r)" % (list(self.vertices),)


@dataclass(frozen=True)
class Face:
    dim: int
    vertex_indices: tuple
    vertices: tuple
    lattice_points: tuple


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [list(_vec_sub(p, base)) for p in points[1:]]
    return intlinalg.rank(rows)


def _kernel_frac(rows, n):
    """Basis of the right kernel of a list of length-n Fraction rows."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        basis.append(tuple(vec))
    return basis


def _hyperplane(coords, idxs, d):
    """Primitive integer normal and offset of the hyperplane through the
    given d affinely independent coordinate points, or None if degenerate."""
    base = coords[idxs[0]]
    rows = [_vec_sub(coords[i], base) for i in idxs[1:]]
    kernel = _kernel_frac(rows, d)
    if len(kernel) != 1:
        return None
    normal = intlinalg.rational_ray_to_primitive(kernel[0])
    return normal, _dot(normal, base)


def _affine_data(points):
    """Base point, independent difference basis, affine coordinates of all
    points, and the indices whose differences form the basis."""
    base = points[0]
    basis = []
    echelon = []
    basis_idx = []
    n = len(base)
    for idx, p in enumerate(points[1:], start=1):
        v = [Fraction(x) for x in _vec_sub(p, base)]
        residue = list(v)
        for row in echelon:
            lead = next(i for i, x in enumerate(row) if x != 0)
            if residue[lead] != 0:
                factor = residue[lead] / row[lead]
                residue = [a - factor * b for a, b in zip(residue, row)]
        if any(x != 0 for x in residue):
            basis.append(tuple(v))
            echelon.append(residue)
            basis_idx.append(idx)
    d = len(basis)
    coords = []
    for p in points:
        if d == 0:
            coords.append(())
            continue
        rhs = list(_vec_sub(p, base))
        solution = intlinalg.solve([[basis[j][i] for j in range(d)] for i in range(n)], rhs)
        coords.append(tuple(Fraction(x) for x in solution))
    return base, basis, coords, basis_idx


def _hull_1d(coords):
    values = [c[0] for c in coords]
    lo = min(values)
    hi = max(values)
    vertex_idx = [values.index(lo), values.index(hi)]
    facets = [((1,), hi), ((-1,), -lo)]
    return vertex_idx, facets


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(coords):
    order = sorted(range(len(coords)), key=lambda i: coords[i])
    lower = []
    for i in order:
        while len(lower) >= 2 and _cross(coords[lower[-2]], coords[lower[-1]], coords[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper = []
    for i in reversed(order):
        while len(upper) >= 2 and _cross(coords[upper[-2]], coords[upper[-1]], coords[i]) <= 0:
            upper.pop()
        upper.append(i)
    cycle = lower[:-1] + upper[:-1]
    facets = []
    for k in range(len(cycle)):
        a = coords[cycle[k]]
        b = coords[cycle[(k + 1) % len(cycle)]]
        direction = _vec_sub(b, a)
        normal = intlinalg.rational_ray_to_primitive((direction[1], -direction[0]))
        facets.append((normal, _dot(normal, a)))
    return cycle, facets


def _hull_incremental(coords, d, init_idx):
    """Beneath-beyond over Fractions; returns simplex facets
    (normal, offset, frozenset of point indices) triangulating the boundary."""
    centroid = tuple(sum(coords[i][k] for i in init_idx) / len(init_idx) for k in range(d))
    facets = []
    for omit in init_idx:
        rest = [i for i in init_idx if i != omit]
        plane = _hyperplane(coords, rest, d)
        if plane is None:
            raise ArithmeticError("degenerate initial simplex")
        normal, offset = plane
        if _dot(normal, coords[omit]) > offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        facets.append((normal, offset, frozenset(rest)))
    init_set = set(init_idx)
    for idx in range(len(coords)):
        if idx in init_set:
            continue
        p = coords[idx]
        # a point on a facet hyperplane counts as visible so it gets
        # stitched in and the triangulation stays consistent
        visible = [f for f in facets if _dot(f[0], p) >= f[1]]
        if not visible:
            continue
        ridge_count = {}
        for _n, _b, verts in visible:
            for ridge in combinations(sorted(verts), d - 1):
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        survivors = [f for f in facets if _dot(f[0], p) < f[1]]
        for ridge, count in ridge_count.items():
            if count != 1:
                continue
            plane = _hyperplane(coords, list(ridge) + [idx], d)
            if plane is None:
                raise ArithmeticError("degenerate horizon ridge")
            normal, offset = plane
            side = _dot(normal, centroid)
            if side == offset:
                raise ArithmeticError("reference point on new facet")
            if side > offset:
                normal = tuple(-x for x in normal)
                offset = -offset
            survivors.append((normal, offset, frozenset(ridge) | {idx}))
        facets = survivors
    return facets


def _simplicial_closed(facets, d):
    ridge_count = {}
    for _n, _b, verts in facets:
        for ridge in combinations(sorted(verts), d - 1):
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    return all(count == 2 for count in ridge_count.values())


def _hull_brute(coords, d):
    """Fallback: supporting hyperplanes found by exhaustive point subsets."""
    m = len(coords)
    found = {}
    for idxs in combinations(range(m), d):
        plane = _hyperplane(coords, list(idxs), d)
        if plane is None:
            continue
        normal, offset = plane
        values = [_dot(normal, p) for p in coords]
        if all(v <= offset for v in values):
            found[(normal, offset)] = True
        elif all(v >= offset for v in values):
            found[(tuple(-x for x in normal), -offset)] = True
    return [(n, b) for (n, b) in found]


def _hull_coords(coords, d, basis_idx):
    """Facet list [(normal, offset)] of the hull of full-rank affine coords."""
    if d == 0:
        return []
    if d == 1:
        return _hull_1d(coords)[1]
    if d == 2:
        return _hull_2d(coords)[1]
    init_idx = [0] + basis_idx
    try:
        simplices = _hull_incremental(coords, d, init_idx)
        ok = _simplicial_closed(simplices, d)
    except ArithmeticError:
        simplices = []
        ok = False
    facets = sorted({(n, b) for n, b, _verts in simplices})
    if ok:
        for p in coords:
            if any(_dot(n, p) > b for n, b in facets):
                ok = False
                break
    if ok:
        for n, b in facets:
            tight = [p for p in coords if _dot(n, p) == b]
            if _affine_rank(tight) != d - 1:
                ok = False
                break
    if not ok:
        facets = sorted(_hull_brute(coords, d))
    return facets


def _lift_facet(basis, hull_vertices, normal_aff):
    """Turn an affine-coordinate facet normal into an ambient inequality."""
    rows = [list(v) for v in basis]
    solution = intlinalg.solve(rows, list(normal_aff))
    normal = intlinalg.rational_ray_to_primitive(solution)
    offset = max(_dot(normal, v) for v in hull_vertices)
    return normal, offset


def _build(points, rational):
    seen = set()
    cleaned = []
    for p in points:
        key = tuple(Fraction(x) for x in p)
        if key not in seen:
            seen.add(key)
            cleaned.append(key)
    cleaned.sort()
    if not cleaned:
        raise EmptyInput("no points given")
    n = len(cleaned[0])
    if any(len(p) != n for p in cleaned):
        raise DimensionMismatch("points of mixed dimension")
    if n > MAX_AMBIENT_DIM:
        raise DimensionTooLarge("ambient dimension %d exceeds %d" % (n, MAX_AMBIENT_DIM))
    if n == 0:
        raise InvalidDimension("ambient dimension must be positive")
    base, basis, coords, basis_idx = _affine_data(cleaned)
    d = len(basis)
    facets_aff = _hull_coords(coords, d, basis_idx)

    # vertices: points where the tight facet normals span the full affine rank
    if d == 0:
        vertex_idx = [0]
    else:
        vertex_idx = []
        for i, c in enumerate(coords):
            tight = [n_aff for n_aff, b in facets_aff if _dot(n_aff, c) == b]
            if tight and intlinalg.rank([list(t) for t in tight]) == d:
                vertex_idx.append(i)

    if rational:
        verts = tuple(sorted(cleaned[i] for i in vertex_idx))
    else:
        verts = tuple(sorted(tuple(int(x) for x in cleaned[i]) for i in vertex_idx))

    facets = []
    for n_aff, b in facets_aff:
        normal, offset = _lift_facet(basis, verts, n_aff)
        if not rational:
            offset = int(offset)
        facets.append((normal, offset))
    facets = tuple(sorted(set(facets)))

    equalities = []
    if d < n:
        # empty basis gives the full standard kernel, cutting out the point
        for vec in _kernel_frac([list(v) for v in basis], n):
            normal = intlinalg.rational_ray_to_primitive(vec)
            lead = next(x for x in normal if x != 0)
            if lead < 0:
                normal = tuple(-x for x in normal)
            value = _dot(normal, base)
            if not rational:
                value = int(value)
            equalities.append((normal, value))
    equalities = tuple(sorted(equalities))

    cls = RationalPolytope if rational else LatticePolytope
    return cls(n, verts, facets, equalities, d)


def convex_hull(points):
    """Lattice polytope spanned by integer points; exact facet description."""
    pts = list(points)
    if not pts:
        raise EmptyInput("no points given")
    for p in pts:
        for x in p:
            if Fraction(x).denominator != 1:
                raise NotLattice("non-integer point %r" % (p,))
    return _build(pts, rational=False)


def rational_hull(points):
    """Rational polytope spanned by exact rational points."""
    pts = list(points)
    if not pts:
        raise EmptyInput("no points given")
    return _build(pts, rational=True)


def is_lattice(P):
    return all(Fraction(x).denominator == 1 for v in P.vertices for x in v)


def to_lattice(P):
    if not is_lattice(P):
        raise NotLattice("polytope has non-integer vertices")
    return convex_hull([tuple(int(x) for x in v) for v in P.vertices])


def newton_polytope(p):
    """Convex hull of the exponent vectors of a nonzero Laurent polynomial."""
    if not p.terms:
        raise ZeroPolynomial("zero polynomial has no Newton polytope")
    return convex_hull(list(p.terms))


def minkowski_sum(P, Q):
    """Pointwise sum polytope; hull of pairwise vertex sums."""
    if P.dim_ambient != Q.dim_ambient:
        raise DimensionMismatch("ambient dimensions differ")
    sums = [_vec_add(v, w) for v in P.vertices for w in Q.vertices]
    if isinstance(P, RationalPolytope) or isinstance(Q, RationalPolytope):
        return rational_hull(sums)
    return convex_hull(sums)


def translate(P, t):
    if len(t) != P.dim_ambient:
        raise DimensionMismatch("shift has wrong length")
    moved = [_vec_add(v, t) for v in P.vertices]
    if isinstance(P, RationalPolytope):
        return rational_hull(moved)
    if any(Fraction(x).denominator != 1 for x in t):
        return rational_hull(moved)
    return convex_hull([tuple(int(x) for x in v) for v in moved])


def contains(P, x):
    if len(x) != P.dim_ambient:
        raise DimensionMismatch("point has wrong length")
    for normal, value in P.affine_equalities:
        if _dot(normal, x) != value:
            return False
    return all(_dot(normal, x) <= offset for normal, offset in P.facet_inequalities)


def supporting_vertices(P, w):
    """Max of the linear functional w over P and the vertices attaining it."""
    values = [_dot(w, v) for v in P.vertices]
    top = max(values)
    return top, tuple(v for v, val in zip(P.vertices, values) if val == top)


def tight_normals(P, x):
    """Facet normals whose inequality is tight at x."""
    return [normal for normal, offset in P.facet_inequalities if _dot(normal, x) == offset]


def canonical_form(P):
    """Vertex tuple with the lex-smallest vertex moved to the origin;
    equal for two polytopes exactly when they are translates."""
    base = P.vertices[0]
    return tuple(sorted(_vec_sub(v, base) for v in P.vertices))


def lattice_points(P):
    """All integer points of P by bounding-box scan."""
    n = P.dim_ambient
    los = []
    his = []
    for k in range(n):
        values = [Fraction(v[k]) for v in P.vertices]
        los.append(math.ceil(min(values)))
        his.append(math.floor(max(values)))
    count = 1
    for lo, hi in zip(los, his):
        count *= max(0, hi - lo + 1)
        if count > LATTICE_POINT_CAP:
            raise ComplexityLimit("bounding box has more than %d candidates" % LATTICE_POINT_CAP)
    points = []
    for cand in product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        if contains(P, cand):
            points.append(cand)
    return points


@lru_cache(maxsize=None)
def _face_sets(P):
    """All nonempty faces as frozensets of vertex indices, mapped to their dims."""
    verts = P.vertices
    tights = [
        frozenset(i for i, v in enumerate(verts) if _dot(normal, v) == offset)
        for normal, offset in P.facet_inequalities
    ]
    everything = frozenset(range(len(verts)))
    closed = {everything}
    frontier = {everything}
    while frontier:
        fresh = set()
        for S in frontier:
            for T in tights:
                I = S & T
                if I and I not in closed:
                    fresh.add(I)
        closed |= fresh
        frontier = fresh
    return {S: _affine_rank([verts[i] for i in sorted(S)]) for S in closed}


def faces(P, d):
    """All faces of dimension d, the whole polytope included at d = dim."""
    if d < 0 or d > P.dim_affine:
        raise InvalidDimension("no faces of dimension %d" % d)
    try:
        ambient_points = lattice_points(P)
    except ComplexityLimit:
        ambient_points = None
    result = []
    for S, dim in sorted(_face_sets(P).items(), key=lambda kv: sorted(kv[0])):
        if dim != d:
            continue
        idxs = tuple(sorted(S))
        verts = tuple(P.vertices[i] for i in idxs)
        defining = [
            (normal, offset)
            for normal, offset in P.facet_inequalities
            if all(_dot(normal, v) == offset for v in verts)
        ]
        if ambient_points is None:
            pts = ()
        else:
            pts = tuple(
                p
                for p in ambient_points
                if all(_dot(normal, p) == offset for normal, offset in defining)
            )
        result.append(Face(dim, idxs, verts, pts))
    return result


def edges(P):
    return faces(P, 1)


def edge_lattice_length(e):
    """gcd of the coordinate differences of the edge endpoints."""
    if e.dim != 1 or len(e.vertices) != 2:
        raise InvalidDimension("not an edge")
    a, b = e.vertices
    diffs = _vec_sub(b, a)
    if any(Fraction(x).denominator != 1 for x in diffs):
        raise NotLattice("edge endpoints are not lattice points")
    g = 0
    for x in diffs:
        g = math.gcd(g, abs(int(x)))
    return g


def is_primitive(P):
    """True when every vertex is a primitive integer vector."""
    for v in P.vertices:
        g = 0
        for x in v:
            if Fraction(x).denominator != 1:
                return False
            g = math.gcd(g, abs(int(x)))
        if g != 1:
            return False
    return True


def _polygon_cycle(coords):
    """CCW vertex cycle of a full-rank 2D point set."""
    cycle, _facets = _hull_2d(coords)
    return [coords[i] for i in cycle]


def _angle_key_pairs(vectors):
    def cmp(u, v):
        hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
        hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
        if hu != hv:
            return hu - hv
        cr = u[0] * v[1] - u[1] * v[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return sorted(vectors, key=functools.cmp_to_key(cmp))


def _is_minimal_zero_sum(part):
    m = len(part)
    if m < 2:
        return False
    for size in range(1, m // 2 + 1):
        for idxs in combinations(range(m), size):
            total = [0, 0]
            for i in idxs:
                total[0] += part[i][0]
                total[1] += part[i][1]
            if total == [0, 0]:
                return False
    return True


def _partitions_into_minimal(slots):
    if not slots:
        yield ()
        return
    first = slots[0]
    rest = slots[1:]
    seen = set()
    for size in range(0, len(rest) + 1):
        for idxs in combinations(range(len(rest)), size):
            part = tuple(sorted((first,) + tuple(rest[i] for i in idxs)))
            if part in seen:
                continue
            sx = sum(v[0] for v in part)
            sy = sum(v[1] for v in part)
            if sx != 0 or sy != 0:
                continue
            if not _is_minimal_zero_sum(part):
                continue
            seen.add(part)
            taken = set(idxs)
            remaining = tuple(rest[i] for i in range(len(rest)) if i not in taken)
            for tail in _partitions_into_minimal(remaining):
                yield (part,) + tail


def _summand_from_part(part, basis2, ambient_dim):
    """Rebuild the convex summand with the given primitive edge multiset and
    return it in ambient coordinates, translated canonically."""
    ordered = _angle_key_pairs(list(part))
    path = [(0, 0)]
    for v in ordered:
        path.append((path[-1][0] + v[0], path[-1][1] + v[1]))
    ambient = []
    for y in set(path):
        point = tuple(y[0] * basis2[0][k] + y[1] * basis2[1][k] for k in range(ambient_dim))
        ambient.append(point)
    base = min(ambient)
    return convex_hull([_vec_sub(p, base) for p in ambient])


def polygon_minkowski_decompositions(P):
    """Every way to write the polygon as a Minkowski sum of irreducible
    lattice polygons and segments, up to translating the summands.

    Works by splitting the multiset of primitive edge vectors into minimal
    zero-sum parts; each part closes up into one summand.
    """
    if P.dim_affine not in (1, 2):
        raise NotTwoDimensional("expected a polygon or a segment")
    n = P.dim_ambient
    if P.dim_affine == 1:
        a, b = P.vertices
        direction = [int(x) for x in _vec_sub(b, a)]
        g = 0
        for x in direction:
            g = math.gcd(g, abs(x))
        unit = convex_hull([(0,) * n, tuple(x // g for x in direction)])
        return [tuple([unit] * g)]

    base = P.vertices[0]
    diffs = [_vec_sub(v, base) for v in P.vertices]
    basis2 = intlinalg.saturation_basis([list(v) for v in diffs])
    coords = []
    for v in P.vertices:
        rhs = list(_vec_sub(v, base))
        sol = intlinalg.solve([[basis2[j][i] for j in range(2)] for i in range(n)], rhs)
        coords.append((int(sol[0]), int(sol[1])))
    cycle = _polygon_cycle(coords)
    slots = []
    for k in range(len(cycle)):
        a = cycle[k]
        b = cycle[(k + 1) % len(cycle)]
        ex, ey = b[0] - a[0], b[1] - a[1]
        g = math.gcd(abs(ex), abs(ey))
        slots.extend([(ex // g, ey // g)] * g)
    if len(slots) > MAX_EDGE_SLOTS:
        raise ComplexityLimit("polygon has more than %d primitive edge slots" % MAX_EDGE_SLOTS)
    slots = tuple(sorted(slots))
    decompositions = set()
    for partition in _partitions_into_minimal(slots):
        summands = tuple(
            sorted(
                (_summand_from_part(part, basis2, n) for part in partition),
                key=lambda Q: Q.vertices,
            )
        )
        decompositions.add(summands)
    return [list(dec) for dec in sorted(decompositions, key=lambda ds: [Q.vertices for Q in ds])]


def _independent_spanning(vertices):
    """Indices i0, [i1..id] with affinely independent differences."""
    base = vertices[0]
    chosen = []
    echelon = []
    for idx in range(1, len(vertices)):
        v = [Fraction(x) for x in _vec_sub(vertices[idx], base)]
        residue = list(v)
        for row in echelon:
            lead = next(i for i, x in enumerate(row) if x != 0)
            if residue[lead] != 0:
                factor = residue[lead] / row[lead]
                residue = [a - factor * b for a, b in zip(residue, row)]
        if any(x != 0 for x in residue):
            chosen.append(idx)
            echelon.append(residue)
    return 0, chosen


def _equivalence_candidates_full(P_verts, Q_verts, n):
    """Yield (A, t) with A unimodular, A*P + t = Q, both vertex lists full-dim."""
    base_idx, span_idx = _independent_spanning(P_verts)
    v0 = P_verts[base_idx]
    V = [[P_verts[span_idx[j]][i] - v0[i] for j in range(n)] for i in range(n)]
    V_inv = intlinalg.matrix_inverse(V)
    Q_set = set(Q_verts)
    P_list = list(P_verts)
    for w0 in Q_verts:
        others = [w for w in Q_verts if w != w0]
        for images in permutations(others, n):
            W = [[images[j][i] - w0[i] for j in range(n)] for i in range(n)]
            A = intlinalg.mat_mul(W, V_inv)
            entries = [x for row in A for x in row]
            if any(Fraction(x).denominator != 1 for x in entries):
                continue
            A_int = [[int(x) for x in row] for row in A]
            if abs(intlinalg.det(A_int)) != 1:
                continue
            t = _vec_sub(w0, intlinalg.mat_vec(A_int, v0))
            if any(Fraction(x).denominator != 1 for x in t):
                continue
            t_int = tuple(int(x) for x in t)
            mapped = {tuple(a + b for a, b in zip(intlinalg.mat_vec(A_int, p), t_int)) for p in P_list}
            if mapped == Q_set:
                yield A_int, t_int


def lattice_equivalence_candidates(P, Q):
    """Yield every unimodular (A, t) with A*P + t = Q as vertex sets."""
    if P.dim_ambient != Q.dim_ambient:
        return
    if P.dim_affine != Q.dim_affine or len(P.vertices) != len(Q.vertices):
        return
    n = P.dim_ambient
    d = P.dim_affine
    if d == 0:
        t = _vec_sub(Q.vertices[0], P.vertices[0])
        if all(Fraction(x).denominator == 1 for x in t):
            yield intlinalg.identity(n), tuple(int(x) for x in t)
        return
    if d == n:
        yield from _equivalence_candidates_full(P.vertices, Q.vertices, n)
        return
    # lower-dimensional: solve in saturated coordinates, then lift
    p0 = P.vertices[0]
    q0 = Q.vertices[0]
    S_P = intlinalg.saturation_basis([list(_vec_sub(v, p0)) for v in P.vertices])
    S_Q = intlinalg.saturation_basis([list(_vec_sub(w, q0)) for w in Q.vertices])
    if len(S_P) != d or len(S_Q) != d:
        return

    def coords_in(basis, origin, verts):
        out = []
        for v in verts:
            sol = intlinalg.solve(
                [[basis[j][i] for j in range(d)] for i in range(n)], list(_vec_sub(v, origin))
            )
            if sol is None or any(Fraction(x).denominator != 1 for x in sol):
                return None
            out.append(tuple(int(x) for x in sol))
        return out

    coords_P = coords_in(S_P, p0, P.vertices)
    coords_Q = coords_in(S_Q, q0, Q.vertices)
    if coords_P is None or coords_Q is None:
        return
    T_P = intlinalg.unimodular_completion([tuple(v) for v in S_P])
    T_Q = intlinalg.unimodular_completion([tuple(v) for v in S_Q])
    T_P_inv = intlinalg.integer_inverse(T_P)
    Q_set = set(tuple(int(x) for x in w) for w in Q.vertices)
    for A_d, t_d in _equivalence_candidates_full(coords_P, coords_Q, d):
        block = [
            [A_d[i][j] if i < d and j < d else int(i == j) if i >= d and j >= d else 0 for j in range(n)]
            for i in range(n)
        ]
        A = intlinalg.mat_mul(intlinalg.mat_mul(T_Q, block), T_P_inv)
        shift_part = tuple(sum(S_Q[j][i] * t_d[j] for j in range(d)) for i in range(n))
        t = tuple(q0[i] + shift_part[i] - _dot(A[i], p0) for i in range(n))
        if any(Fraction(x).denominator != 1 for x in t):
            continue
        A_int = [[int(x) for x in row] for row in A]
        t_int = tuple(int(x) for x in t)
        mapped = {tuple(a + b for a, b in zip(intlinalg.mat_vec(A_int, v), t_int)) for v in P.vertices}
        if mapped == Q_set:
            yield A_int, t_int


def lattice_equivalent(P, Q):
    """First unimodular map with A*P + t = Q, or None."""
    for A, t in lattice_equivalence_candidates(P, Q):
        return A, t
    return None


def _entry_to_json(x):
    frac = Fraction(x)
    if frac.denominator == 1:
        return int(frac)
    return str(frac)


def polytope_to_json(P):
    return {
        "dim": P.dim_ambient,
        "vertices": [[_entry_to_json(x) for x in v] for v in P.vertices],
    }


def polytope_from_json(data):
    verts = [tuple(Fraction(x) for x in v) for v in data["vertices"]]
    if not verts:
        raise EmptyInput("no vertices in JSON polytope")
    if any(len(v) != data["dim"] for v in verts):
        raise DimensionMismatch("vertex length disagrees with dim")
    if all(x.denominator == 1 for v in verts for x in v):
        return convex_hull([tuple(int(x) for x in v) for v in verts])
    return rational_hull(verts)
