"""Constant-term sequences of powers of a Laurent polynomial.

period_sequence is the fast path: it accumulates powers incrementally and
drops terms whose exponents are already too far out to be cancelled by the
remaining multiplications. period_oracle is the same quantity by full
expansion, kept as an independent check.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import laurent
from .errors import ZeroPolynomial


@dataclass(frozen=True)
class PeriodSequence:
    values: tuple
    source_id: str = field(default="", compare=False)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _check_nonzero(f):
    if not f.terms:
        raise ZeroPolynomial("period sequence needs a nonzero polynomial")


def period_sequence(f, N, source_id=""):
    """a_0..a_N with a_i the constant term of f^i.

    A term of the running power is kept only while each exponent entry can
    still be brought back to zero by the remaining factors: entry e_c is
    droppable once |e_c| exceeds (N - i) times the largest |s_c| over the
    support of f. Dropped terms cannot contribute to any later constant
    term, so the pruned and full computations agree.
    """
    _check_nonzero(f)
    if N < 0:
        raise ValueError("N must be nonnegative")
    n = f.nvars
    reach = [max(abs(s[c]) for s in f.terms) for c in range(n)]
    values = [Fraction(1)]
    power = {(0,) * n: Fraction(1)}
    for i in range(1, N + 1):
        produced = {}
        for e, c in power.items():
            for s, d in f.terms.items():
                key = tuple(a + b for a, b in zip(e, s))
                coeff = produced.get(key)
                if coeff is None:
                    produced[key] = c * d
                else:
                    coeff = coeff + c * d
                    if coeff:
                        produced[key] = coeff
                    else:
                        del produced[key]
        remaining = N - i
        power = {
            e: c
            for e, c in produced.items()
            if all(abs(e[k]) <= remaining * reach[k] for k in range(n))
        }
        values.append(produced.get((0,) * n, Fraction(0)))
    return PeriodSequence(tuple(values), source_id)


def period_oracle(f, N, source_id=""):
    """Same sequence by unpruned full expansion; test reference path."""
    _check_nonzero(f)
    if N < 0:
        raise ValueError("N must be nonnegative")
    values = [Fraction(1)]
    power = laurent.one(f.var_names)
    for _ in range(N):
        power = laurent.mul(power, f)
        values.append(laurent.constant_term(power))
    return PeriodSequence(tuple(values), source_id)


def periods_equal(f, g, N):
    """Exact equality of the two constant-term sequences up to order N."""
    return period_sequence(f, N).values == period_sequence(g, N).values
