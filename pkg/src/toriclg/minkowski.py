"""Face restrictions, edge coefficient checks, and lattice Minkowski
presentations of Newton polytopes.

A presentation assigns to each edge and each two-dimensional proper face of
the Newton polytope a multiset of irreducible summand polytopes.  It is
accepted when, face by face, the summands add up to the face and the face's
sub-sum of the polynomial factors as a product of polynomials supported on
the summands with coefficient 1 at every summand vertex.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import laurent, polytope
from .errors import ComplexityLimit, FaceMismatch, ShapeMismatch

# faces of dimension 3 are never decomposed; on a four-dimensional Newton
# polytope only the 2-skeleton is checked and the result says so
PARTIAL_DIM = 4
MAX_PRESENTED_DIM = 2


@dataclass(frozen=True)
class MinkowskiPresentation:
    """Map from faces (keyed by their sorted vertex tuples) to summand lists.

    assignments holds (face_key, summands) pairs where each summand is a
    lattice polytope translated so its lexicographically least vertex sits
    at the origin.  partial marks that some faces were skipped; their keys
    are listed in skipped.
    """

    assignments: tuple
    partial: bool = False
    skipped: tuple = ()

    def __post_init__(self):
        fixed = []
        for key, summands in self.assignments:
            key = tuple(sorted(tuple(v) for v in key))
            summands = tuple(sorted(summands, key=lambda Q: Q.vertices))
            fixed.append((key, summands))
        object.__setattr__(self, "assignments", tuple(sorted(fixed)))
        object.__setattr__(
            self, "skipped", tuple(sorted(tuple(sorted(tuple(v) for v in key)) for key in self.skipped))
        )

    def summands_for(self, face_key):
        key = tuple(sorted(tuple(v) for v in face_key))
        for stored, summands in self.assignments:
            if stored == key:
                return summands
        raise KeyError(key)

    def face_keys(self):
        return tuple(key for key, _ in self.assignments)


def _face_key(face_vertices):
    return tuple(sorted(tuple(v) for v in face_vertices))


def _canonical_polytope(Q):
    """Translate so the lexicographically least vertex is the origin."""
    return polytope.convex_hull(list(polytope.canonical_form(Q)))


def face_restriction(f, face):
    """Sub-sum of the terms of f whose exponents lie on the given face of
    the Newton polytope.  The face must actually be a face of Delta_f."""
    P = polytope.newton_polytope(f)
    wanted = _face_key(face.vertices)
    if not any(_face_key(F.vertices) == wanted for F in polytope.faces(P, face.dim)):
        raise FaceMismatch("not a face of the Newton polytope")
    defining = [
        (normal, offset)
        for normal, offset in P.facet_inequalities
        if all(sum(a * b for a, b in zip(normal, v)) == offset for v in face.vertices)
    ]
    kept = {
        e: c
        for e, c in f.terms.items()
        if all(sum(a * b for a, b in zip(normal, e)) == offset for normal, offset in defining)
    }
    return laurent.LaurentPoly(f.var_names, kept)


def edge_binomials_ok(f):
    """Check that every edge of the Newton polytope carries binomial
    coefficients: at the i-th lattice point of an edge of lattice length n
    the coefficient must be C(n, i).  Returns (ok, violations)."""
    if not f.terms:
        raise ValueError("zero polynomial has no Newton polytope")
    P = polytope.newton_polytope(f)
    violations = []
    if P.dim_affine == 0:
        (e,) = f.terms
        if f.terms[e] != 1:
            violations.append({"edge": (tuple(e),), "point": tuple(e), "expected": 1, "found": f.terms[e]})
        return (not violations, tuple(violations))
    for edge in polytope.faces(P, 1):
        n = polytope.edge_lattice_length(edge)
        a, b = edge.vertices
        step = tuple((y - x) // n for x, y in zip(a, b))
        key = _face_key(edge.vertices)
        for i in range(n + 1):
            point = tuple(x + i * s for x, s in zip(a, step))
            found = laurent.coefficient_at(f, point)
            expected = math.comb(n, i)
            if found != expected:
                violations.append({"edge": key, "point": point, "expected": expected, "found": found})
    return (not violations, tuple(violations))


def _presented_faces(P):
    """Faces that a presentation must cover, plus the ones it may skip.

    Edges and two-dimensional proper faces are covered.  A segment Newton
    polytope presents itself.  In ambient affine dimension 4 the
    three-dimensional faces are skipped; higher dimensions are refused.
    """
    if P.dim_affine > PARTIAL_DIM:
        raise ComplexityLimit("no face search above affine dimension %d" % PARTIAL_DIM)
    if P.dim_affine == 0:
        return [], []
    if P.dim_affine == 1:
        return list(polytope.faces(P, 1)), []
    covered = list(polytope.faces(P, 1))
    if P.dim_affine > 2:
        covered.extend(polytope.faces(P, 2))
    skipped = polytope.faces(P, 3) if P.dim_affine == PARTIAL_DIM else []
    return covered, list(skipped)


def _summand_decompositions(hull):
    """Candidate irreducible-summand decompositions of an edge or polygon."""
    return polytope.polygon_minkowski_decompositions(hull)


def _is_irreducible(Q):
    if Q.dim_affine == 0:
        return False
    decs = polytope.polygon_minkowski_decompositions(Q)
    return len(decs) == 1 and len(decs[0]) == 1


def _match_factors(target, summands):
    """Factor target into polynomials supported on the summands' lattice
    points with coefficient 1 at summand vertices.

    target must have its lexicographically least Newton vertex at the
    origin.  Coefficients are recovered by repeatedly solving product
    coefficients that involve a single unknown; returns the factors or
    None, with None also covering the underdetermined case.
    """
    names = target.var_names
    points = [polytope.lattice_points(Q) for Q in summands]
    verts = [set(Q.vertices) for Q in summands]
    coeffs = [
        {tuple(p): (Fraction(1) if tuple(p) in verts[i] else None) for p in points[i]}
        for i in range(len(summands))
    ]
    by_total = {}
    for combo in itertools.product(*points):
        total = tuple(sum(xs) for xs in zip(*combo))
        by_total.setdefault(total, []).append(combo)
    # a target term the summand lattice points cannot reach is fatal
    for e in target.terms:
        if e not in by_total:
            return None
    unknown_count = sum(1 for layer in coeffs for c in layer.values() if c is None)
    while True:
        progress = False
        for total in sorted(by_total):
            wanted = laurent.coefficient_at(target, total)
            known_sum = Fraction(0)
            open_terms = []
            for combo in by_total[total]:
                slots = [(i, p) for i, p in enumerate(combo) if coeffs[i][p] is None]
                if not slots:
                    prod = Fraction(1)
                    for i, p in enumerate(combo):
                        prod *= coeffs[i][p]
                    known_sum += prod
                else:
                    open_terms.append((combo, slots))
            if not open_terms:
                if known_sum != wanted:
                    return None
                continue
            if len(open_terms) == 1 and len(open_terms[0][1]) == 1:
                combo, ((i_star, p_star),) = open_terms[0]
                cofactor = Fraction(1)
                for i, p in enumerate(combo):
                    if (i, p) != (i_star, p_star):
                        cofactor *= coeffs[i][p]
                if cofactor == 0:
                    continue
                coeffs[i_star][p_star] = (wanted - known_sum) / cofactor
                unknown_count -= 1
                progress = True
        if unknown_count == 0:
            break
        if not progress:
            return None
    for total in by_total:
        value = Fraction(0)
        for combo in by_total[total]:
            prod = Fraction(1)
            for i, p in enumerate(combo):
                prod *= coeffs[i][p]
            value += prod
        if value != laurent.coefficient_at(target, total):
            return None
    return [
        laurent.LaurentPoly(names, {p: c for p, c in layer.items() if c != 0})
        for layer in coeffs
    ]


def _shifted_restriction(f, face):
    """Face restriction translated so the least face vertex maps to 0."""
    g = face_restriction(f, face)
    m = min(face.vertices)
    shift = laurent.monomial(f.var_names, tuple(-x for x in m))
    return laurent.mul(g, shift)


def _check_face(f, face, summands):
    """(ok, detail) for one presented face against its summand list."""
    hull = polytope.convex_hull(list(face.vertices))
    if not summands:
        return False, "no summands assigned"
    canon = []
    for Q in summands:
        if Q.dim_ambient != hull.dim_ambient:
            return False, "summand lives in the wrong ambient dimension"
        canon.append(_canonical_polytope(Q))
    for Q in canon:
        if not _is_irreducible(Q):
            return False, "summand %s is not irreducible" % (Q.vertices,)
    total = canon[0]
    for Q in canon[1:]:
        total = polytope.minkowski_sum(total, Q)
    if polytope.canonical_form(total) != polytope.canonical_form(hull):
        return False, "summands do not add up to the face"
    target = _shifted_restriction(f, face)
    factors = _match_factors(target, canon)
    if factors is None:
        return False, "no factorization with unit vertex coefficients"
    return True, "product of %d factors matches" % len(canon)


def _restriction_compatible(pres, face_lookup):
    """Summands of a 2-face must cut down to a sum giving each of its edges."""
    for key, summands in pres.assignments:
        face = face_lookup[key]
        if face.dim != 2:
            continue
        hull = polytope.convex_hull(list(face.vertices))
        for edge in polytope.faces(hull, 1):
            normals = set(polytope.tight_normals(hull, edge.vertices[0]))
            normals &= set(polytope.tight_normals(hull, edge.vertices[1]))
            w = tuple(sum(xs) for xs in zip(*normals))
            pieces = []
            for Q in summands:
                _, tops = polytope.supporting_vertices(_canonical_polytope(Q), w)
                pieces.append(polytope.convex_hull(list(tops)))
            total = pieces[0]
            for piece in pieces[1:]:
                total = polytope.minkowski_sum(total, piece)
            if polytope.canonical_form(total) != polytope.canonical_form(polytope.convex_hull(list(edge.vertices))):
                return key, _face_key(edge.vertices)
    return None


def verify_presentation(f, pres):
    """Check a presentation face by face.  Returns (ok, report) where the
    report lists one entry per face, vertex coefficient checks included.
    The presentation must cover exactly the required faces."""
    if not f.terms:
        raise ValueError("zero polynomial has no Newton polytope")
    P = polytope.newton_polytope(f)
    covered, skippable = _presented_faces(P)
    required = {_face_key(F.vertices): F for F in covered}
    given = set(pres.face_keys())
    if given != set(required):
        raise ShapeMismatch("presentation faces do not match the Newton polytope")
    skippable_keys = {_face_key(F.vertices) for F in skippable}
    if set(pres.skipped) - skippable_keys:
        raise ShapeMismatch("skipped entries are not faces that may be skipped")
    if skippable_keys and set(pres.skipped) != skippable_keys:
        raise ShapeMismatch("three-dimensional faces must be listed as skipped")
    if skippable_keys and not pres.partial:
        raise ShapeMismatch("a presentation skipping faces must be marked partial")
    report = []
    ok = True
    for v_idx, vert in enumerate(P.vertices):
        c = laurent.coefficient_at(f, vert)
        good = c == 1
        ok = ok and good
        report.append(
            {
                "face": (tuple(vert),),
                "dim": 0,
                "status": "ok" if good else "failed",
                "detail": "vertex coefficient is %s" % c,
            }
        )
    for key in sorted(required):
        face = required[key]
        good, detail = _check_face(f, face, pres.summands_for(key))
        ok = ok and good
        report.append({"face": key, "dim": face.dim, "status": "ok" if good else "failed", "detail": detail})
    if ok:
        clash = _restriction_compatible(pres, required)
        if clash is not None:
            ok = False
            report.append(
                {
                    "face": clash[0],
                    "dim": 2,
                    "status": "failed",
                    "detail": "summands restrict badly to edge %s" % (clash[1],),
                }
            )
    for key in pres.skipped:
        report.append({"face": key, "dim": 3, "status": "skipped", "detail": "not decomposed"})
    return ok, tuple(report)


def find_presentation(f):
    """Search for a presentation witness, one face at a time.

    Edges admit only the split into unit segments, so an edge whose
    coefficients are not binomial kills the search immediately.  For each
    polygon face the candidate decompositions are tried in order until one
    supports a unit-vertex factorization.  Returns None when some face has
    no working decomposition."""
    if not f.terms:
        raise ValueError("zero polynomial has no Newton polytope")
    P = polytope.newton_polytope(f)
    for vert in P.vertices:
        if laurent.coefficient_at(f, vert) != 1:
            return None
    covered, skippable = _presented_faces(P)
    assignments = []
    for face in sorted(covered, key=lambda F: (F.dim, _face_key(F.vertices))):
        hull = polytope.convex_hull(list(face.vertices))
        chosen = None
        for candidate in _summand_decompositions(hull):
            good, _detail = _check_face(f, face, tuple(candidate))
            if good:
                chosen = tuple(candidate)
                break
        if chosen is None:
            return None
        assignments.append((_face_key(face.vertices), chosen))
    return MinkowskiPresentation(
        assignments=tuple(assignments),
        partial=bool(skippable),
        skipped=tuple(_face_key(F.vertices) for F in skippable),
    )


def presentation_to_json_dict(pres):
    return {
        "partial": pres.partial,
        "skipped": [[list(v) for v in key] for key in pres.skipped],
        "faces": [
            {
                "face": [list(v) for v in key],
                "summands": [[list(v) for v in Q.vertices] for Q in summands],
            }
            for key, summands in pres.assignments
        ],
    }


def presentation_from_json_dict(data):
    try:
        assignments = []
        for entry in data["faces"]:
            key = tuple(tuple(int(x) for x in v) for v in entry["face"])
            summands = tuple(
                polytope.convex_hull([tuple(int(x) for x in v) for v in Q]) for Q in entry["summands"]
            )
            assignments.append((key, summands))
        skipped = tuple(tuple(tuple(int(x) for x in v) for v in key) for key in data.get("skipped", ()))
        return MinkowskiPresentation(
            assignments=tuple(assignments), partial=bool(data.get("partial", False)), skipped=skipped
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch("malformed presentation data: %s" % exc)
