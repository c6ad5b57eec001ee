"""Cluster-type changes, monomial changes of variables, and equivalence
testing up to such monomial changes.

A cluster change rescales one variable by a power of a factor polynomial
in the remaining variables. Writing f as a sum of slices by the pivot
exponent k, the transformed polynomial is the sum of slice_k * factor^(-sign*k)
* pivot^k; divisions must be exact or the result is not Laurent.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg, laurent, polytope
from .errors import InvalidChange, NotDivisible, NotLaurent, NotUnimodular


@dataclass(frozen=True)
class ClusterChange:
    pivot: int
    sign: int
    factor: laurent.LaurentPoly

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidChange("sign must be +1 or -1")
        if not self.factor.terms:
            raise InvalidChange("factor must be nonzero")
        if 0 <= self.pivot < self.factor.nvars:
            if any(e[self.pivot] != 0 for e in self.factor.terms):
                raise InvalidChange("factor must not involve the pivot variable")


@dataclass(frozen=True)
class ToricChange:
    matrix: tuple
    shift: tuple
    scale: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidChange("matrix must be square")
        if abs(intlinalg.det([list(r) for r in rows])) != 1:
            raise NotUnimodular("matrix determinant must be +-1")
        shift = tuple(int(x) for x in (self.shift if self.shift is not None else (0,) * n))
        if len(shift) != n:
            raise InvalidChange("shift has wrong length")
        object.__setattr__(self, "shift", shift)
        scale = tuple(
            Fraction(x) for x in (self.scale if self.scale is not None else (1,) * n)
        )
        if len(scale) != n or any(s == 0 for s in scale):
            raise InvalidChange("scale needs one nonzero rational per variable")
        object.__setattr__(self, "scale", scale)


@dataclass(frozen=True)
class MutationTrace:
    start: laurent.LaurentPoly
    steps: tuple
    end: laurent.LaurentPoly


def identity_toric(n):
    return ToricChange(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n, (1,) * n)


def elementary_cluster(pivot, indices, var_names, sign=-1):
    """Cluster change whose factor is the sum of the listed variables plus 1."""
    if pivot in indices:
        raise InvalidChange("pivot cannot appear in the factor variables")
    if not 0 <= pivot < len(var_names):
        raise InvalidChange("pivot index out of range")
    factor = laurent.one(var_names)
    for i in indices:
        if not 0 <= i < len(var_names):
            raise InvalidChange("factor variable index out of range")
        factor = laurent.add(factor, laurent.variable(var_names, i))
    return ClusterChange(pivot, sign, factor)


def apply_cluster(f, change):
    """Transformed polynomial, or NotLaurent when a slice division is inexact."""
    n = f.nvars
    if not 0 <= change.pivot < n:
        raise InvalidChange("pivot index out of range for this polynomial")
    if change.factor.var_names != f.var_names:
        raise InvalidChange("factor is over different variables")
    pivot = change.pivot
    slices = {}
    for e, c in f.terms.items():
        k = e[pivot]
        stripped = e[:pivot] + (0,) + e[pivot + 1 :]
        slices.setdefault(k, {})[stripped] = c
    result = laurent.zero(f.var_names)
    for k, terms in sorted(slices.items()):
        part = laurent.LaurentPoly(f.var_names, terms)
        exponent = -change.sign * k
        if exponent >= 0:
            part = laurent.mul(part, laurent.pow(change.factor, exponent))
        else:
            try:
                part = laurent.exact_divide(part, laurent.pow(change.factor, -exponent))
            except NotDivisible as err:
                raise NotLaurent("cluster change leaves the Laurent ring: %s" % err) from err
        shift = tuple(k if i == pivot else 0 for i in range(n))
        result = laurent.add(result, laurent.mul(part, laurent.monomial(f.var_names, shift)))
    return result


def apply_toric(f, change):
    return laurent.monomial_substitute(
        f, [list(row) for row in change.matrix], change.shift, change.scale
    )


def apply_step(f, step):
    if isinstance(step, ClusterChange):
        return apply_cluster(f, step)
    if isinstance(step, ToricChange):
        return apply_toric(f, step)
    raise InvalidChange("unknown step type %r" % type(step).__name__)


def make_trace(start, steps):
    current = start
    for idx, step in enumerate(steps):
        try:
            current = apply_step(current, step)
        except NotLaurent as err:
            raise NotLaurent("step %d failed: %s" % (idx, err)) from err
    return MutationTrace(start, tuple(steps), current)


def replay(trace):
    """Recompute the end polynomial from the recorded start and steps."""
    current = trace.start
    for idx, step in enumerate(trace.steps):
        try:
            current = apply_step(current, step)
        except NotLaurent as err:
            raise NotLaurent("step %d failed: %s" % (idx, err)) from err
    return current


def replay_intermediates(trace):
    """Every stage of the replay, the start included."""
    stages = [trace.start]
    for idx, step in enumerate(trace.steps):
        try:
            stages.append(apply_step(stages[-1], step))
        except NotLaurent as err:
            raise NotLaurent("step %d failed: %s" % (idx, err)) from err
    return stages


def _solve_scales(f, g, A, t):
    """Per-variable scalings making exponent map e -> A e + t carry f onto g,
    or None. Solved multiplicatively through the Smith form of the support."""
    n = f.nvars
    image = {}
    for e, c in f.terms.items():
        target = tuple(sum(A[i][j] * e[j] for j in range(n)) + t[i] for i in range(n))
        image[target] = (e, c)
    if set(image) != set(g.terms):
        return None
    exponents = []
    ratios = []
    for target in sorted(image):
        e, c = image[target]
        exponents.append(list(e))
        ratios.append(g.terms[target] / c)
    m = len(exponents)
    D, U, V = intlinalg.smith_normal_form(exponents)
    transformed = []
    for i in range(m):
        value = Fraction(1)
        for j in range(m):
            if U[i][j]:
                value *= ratios[j] ** U[i][j]
        transformed.append(value)
    y = [Fraction(1)] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d != 0:
            root = intlinalg.nth_root_fraction(transformed[i], abs(d))
            if root is None:
                return None
            y[i] = root if d > 0 else Fraction(1) / root
        elif transformed[i] != 1:
            return None
    scales = tuple(
        _product(y[k] ** V[j][k] for k in range(n) if V[j][k]) for j in range(n)
    )
    for e, c in f.terms.items():
        target = tuple(sum(A[i][j] * e[j] for j in range(n)) + t[i] for i in range(n))
        value = c
        for j in range(n):
            if e[j]:
                value *= scales[j] ** e[j]
        if g.terms[target] != value:
            return None
    return scales


def _product(items):
    out = Fraction(1)
    for x in items:
        out *= x
    return out


def equivalent_up_to_toric(f, g):
    """Monomial change of variables carrying f onto g term by term, or None.

    Candidate exponent maps come from lattice equivalences of the Newton
    polytopes; the coefficient scalings are then solved exactly. Scalings
    are restricted to rationals.
    """
    if f.nvars != g.nvars:
        return None
    if f == g:
        return identity_toric(f.nvars)
    if not f.terms or not g.terms:
        return None
    P = polytope.newton_polytope(f)
    Q = polytope.newton_polytope(g)
    for A, t in polytope.lattice_equivalence_candidates(P, Q):
        scales = _solve_scales(f, g, A, t)
        if scales is not None:
            return ToricChange(tuple(tuple(row) for row in A), t, scales)
    return None


def steps_to_json(steps):
    out = []
    for step in steps:
        if isinstance(step, ClusterChange):
            out.append(
                {
                    "type": "cluster",
                    "pivot": step.pivot,
                    "sign": step.sign,
                    "factor": laurent.format(step.factor),
                }
            )
        elif isinstance(step, ToricChange):
            out.append(
                {
                    "type": "toric",
                    "A": [list(row) for row in step.matrix],
                    "shift": list(step.shift),
                    "scale": [str(s) for s in step.scale],
                }
            )
        else:
            raise InvalidChange("unknown step type %r" % type(step).__name__)
    return out


def steps_from_json(data, var_names):
    steps = []
    for entry in data:
        kind = entry.get("type")
        if kind == "cluster":
            factor = laurent.parse(entry["factor"], var_names)
            steps.append(ClusterChange(int(entry["pivot"]), int(entry["sign"]), factor))
        elif kind == "toric":
            matrix = tuple(tuple(int(x) for x in row) for row in entry["A"])
            shift = tuple(int(x) for x in entry.get("shift", (0,) * len(matrix)))
            scale = tuple(Fraction(s) for s in entry.get("scale", (1,) * len(matrix)))
            steps.append(ToricChange(matrix, shift, scale))
        else:
            raise InvalidChange("unknown step type %r" % kind)
    return steps
