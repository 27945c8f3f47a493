"""Truncated formal power series over exact rationals, real floats, or complex floats.

A series holds coefficients c_0..c_N of a power series cut after z^N.  All
values are immutable and every operation is a pure function, so series can be
shared and used concurrently without locks.  Arithmetic is only defined
between series of equal order and equal backend; the exact backend gives
bit-reproducible results.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

EXACT = "exact"
REAL = "real-float"
COMPLEX = "complex-float"
BACKENDS = (EXACT, REAL, COMPLEX)

DEFAULT_ORDER = 16
MAX_ORDER = 64


class SeriesError(ValueError):
    """Order/backend mismatch or a violated coefficient precondition."""


def parse_rational(text):
    """Parse 'p/q', integer, or decimal text into a Fraction."""
    return Fraction(str(text).strip())


def coerce_scalar(value, backend):
    """Coerce a number into the scalar type of the given backend.

    The exact backend refuses floats: converting them silently would hide
    rounding that already happened.
    """
    if backend == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return parse_rational(value)
        raise SeriesError(
            "exact backend cannot hold %s values" % type(value).__name__)
    if backend == REAL:
        if isinstance(value, complex):
            raise SeriesError("real-float backend cannot hold complex values")
        if isinstance(value, str):
            return float(parse_rational(value))
        return float(value)
    if backend == COMPLEX:
        if isinstance(value, str):
            return complex(parse_rational(value))
        return complex(value)
    raise SeriesError("unknown backend %r" % (backend,))


def scalar_to_json(value):
    """Render a coefficient for JSON: Fractions as 'p/q', complex as [re, im]."""
    if isinstance(value, Fraction):
        return "%d/%d" % (value.numerator, value.denominator)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def scalar_from_json(value):
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise SeriesError("boolean is not a series coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(re, im)
    return float(value)


# Raw coefficient-list kernels shared by the class methods and by the Newton
# iteration, which wants to work below the full order.

def _pad(c, prec):
    zero = c[0] * 0
    return list(c[:prec]) + [zero] * (prec - len(c))


def _list_mul(a, b, prec):
    zero = a[0] * 0
    out = [zero] * prec
    for i, ai in enumerate(a[:prec]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[:prec - i]):
            out[i + j] += ai * bj
    return out


def _list_recip(a, prec):
    if a[0] == 0:
        raise SeriesError("reciprocal requires a nonzero constant term")
    inv0 = 1 / a[0]
    out = [inv0]
    ap = _pad(a, prec)
    for n in range(1, prec):
        acc = a[0] * 0
        for k in range(1, n + 1):
            acc += ap[k] * out[n - k]
        out.append(-inv0 * acc)
    return out


def _list_compose(f, g, prec):
    if g[0] != 0:
        raise SeriesError("composition requires the inner constant term to vanish")
    fp = _pad(f, prec)
    out = [fp[prec - 1]] + [f[0] * 0] * (prec - 1)
    for k in range(prec - 2, -1, -1):
        out = _list_mul(out, g, prec)
        out[0] += fp[k]
    return out


class TruncatedSeries:
    """Immutable truncated power series with a fixed order and backend."""

    __slots__ = ("_coeffs", "_backend")

    def __init__(self, coeffs, backend=EXACT, order=None):
        if backend not in BACKENDS:
            raise SeriesError("unknown backend %r" % (backend,))
        values = [coerce_scalar(c, backend) for c in coeffs]
        if not values:
            raise SeriesError("a series needs at least the constant coefficient")
        if order is not None:
            if order < 0:
                raise SeriesError("order must be nonnegative")
            if len(values) > order + 1:
                raise SeriesError(
                    "%d coefficients exceed order %d" % (len(values), order))
            zero = coerce_scalar(0, backend)
            values.extend([zero] * (order + 1 - len(values)))
        self._coeffs = tuple(values)
        self._backend = backend

    @classmethod
    def zeros(cls, order, backend=EXACT):
        return cls([0], backend, order=order)

    @classmethod
    def constant(cls, value, order, backend=EXACT):
        return cls([value], backend, order=order)

    @classmethod
    def identity(cls, order, backend=EXACT):
        """The series z."""
        if order < 1:
            raise SeriesError("the identity series needs order >= 1")
        return cls([0, 1], backend, order=order)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def backend(self):
        return self._backend

    @property
    def order(self):
        return len(self._coeffs) - 1

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __repr__(self):
        return "TruncatedSeries(%r, backend=%r)" % (list(self._coeffs), self._backend)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._backend == other._backend and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._backend, self._coeffs))

    def _compat(self, other):
        if not isinstance(other, TruncatedSeries):
            raise SeriesError("expected a TruncatedSeries, got %s" % type(other).__name__)
        if self._backend != other._backend:
            raise SeriesError(
                "backend mismatch: %s vs %s" % (self._backend, other._backend))
        if self.order != other.order:
            raise SeriesError("order mismatch: %d vs %d" % (self.order, other.order))

    def __add__(self, other):
        self._compat(other)
        return self._raw([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other):
        self._compat(other)
        return self._raw([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self):
        return self._raw([-a for a in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._compat(other)
            return self._raw(_list_mul(self._coeffs, other._coeffs, self.order + 1))
        c = coerce_scalar(other, self._backend)
        return self._raw([c * a for a in self._coeffs])

    def __rmul__(self, other):
        return self.__mul__(other)

    def _raw(self, coeffs):
        out = object.__new__(TruncatedSeries)
        out._coeffs = tuple(coeffs)
        out._backend = self._backend
        return out

    def hadamard(self, other):
        """Componentwise product of coefficients."""
        self._compat(other)
        return self._raw([a * b for a, b in zip(self._coeffs, other._coeffs)])

    def derivative(self):
        """Formal derivative, re-padded with a trailing zero.

        The top coefficient of the result is the padding zero, not the true
        derivative coefficient; consumers must not rely on index N.
        """
        c = self._coeffs
        out = [(k + 1) * c[k + 1] for k in range(self.order)]
        out.append(c[0] * 0)
        return self._raw(out)

    def reciprocal(self):
        return self._raw(_list_recip(self._coeffs, self.order + 1))

    def exp(self):
        """Series exponential via the recursion f' = a'f.

        On the exact backend the constant term must vanish so that all output
        coefficients stay rational; float backends exponentiate it.
        """
        c = self._coeffs
        if self._backend == EXACT:
            if c[0] != 0:
                raise SeriesError(
                    "exact exp requires a vanishing constant term")
            e0 = Fraction(1)
        elif self._backend == REAL:
            e0 = math.exp(c[0])
        else:
            e0 = cmath.exp(c[0])
        out = [e0]
        for n in range(1, self.order + 1):
            acc = c[0] * 0
            for k in range(1, n + 1):
                acc += k * c[k] * out[n - k]
            out.append(acc / n)
        return self._raw(out)

    def log(self):
        """Series logarithm of a unit series (c_0 = 1), by integrating a'/a."""
        c = self._coeffs
        if c[0] != 1:
            raise SeriesError("log requires constant term 1")
        d = _list_mul([(k + 1) * c[k + 1] for k in range(self.order)] + [c[0] * 0],
                      _list_recip(c, self.order + 1), self.order + 1)
        out = [c[0] * 0]
        for n in range(1, self.order + 1):
            out.append(d[n - 1] / n)
        return self._raw(out)

    def compose(self, inner):
        """Coefficients of self(inner(z)); inner must have zero constant term."""
        self._compat(inner)
        return self._raw(_list_compose(self._coeffs, inner._coeffs, self.order + 1))

    def comp_inverse(self):
        """Compositional inverse by order-doubling Newton iteration.

        Needs c_0 = 0 and c_1 != 0.  See comp_inverse_recursive for the
        independent triangular-solve route.
        """
        c = self._coeffs
        if c[0] != 0:
            raise SeriesError("compositional inverse requires c_0 = 0")
        if self.order < 1 or c[1] == 0:
            raise SeriesError("compositional inverse requires c_1 != 0")
        n_target = self.order + 1
        zero = c[0] * 0
        f = list(c)
        fprime = [(k + 1) * f[k + 1] for k in range(self.order)] + [zero]
        g = [zero, 1 / f[1]]
        prec = 2
        while prec < n_target:
            prec = min(2 * prec, n_target)
            gp = _pad(g, prec)
            err = _list_compose(_pad(f, prec), gp, prec)
            err[1] -= 1
            slope = _list_compose(_pad(fprime, prec), gp, prec)
            corr = _list_mul(err, _list_recip(slope, prec), prec)
            g = [a - b for a, b in zip(gp, corr)]
        return self._raw(_pad(g, n_target))

    def truncated(self, order):
        """Drop coefficients beyond the given (smaller or equal) order."""
        if order > self.order:
            raise SeriesError("cannot truncate %d up to %d" % (self.order, order))
        return self._raw(self._coeffs[:order + 1])

    def padded(self, order):
        """Extend with zero coefficients; the caller asserts they really vanish."""
        if order < self.order:
            raise SeriesError("cannot pad %d down to %d" % (self.order, order))
        return self._raw(_pad(self._coeffs, order + 1))

    def to_backend(self, backend):
        if backend == self._backend:
            return self
        if self._backend == EXACT and backend == REAL:
            return TruncatedSeries([float(x) for x in self._coeffs], REAL)
        if self._backend in (EXACT, REAL) and backend == COMPLEX:
            return TruncatedSeries([complex(x) for x in self._coeffs], COMPLEX)
        raise SeriesError(
            "cannot convert %s series to %s" % (self._backend, backend))

    def to_json_dict(self):
        return {
            "order": self.order,
            "backend": self._backend,
            "coeffs": [scalar_to_json(c) for c in self._coeffs],
        }

    @classmethod
    def from_json_dict(cls, data):
        coeffs = [scalar_from_json(c) for c in data["coeffs"]]
        return cls(coeffs, data["backend"], order=data["order"])


def comp_inverse_recursive(series):
    """Compositional inverse by term-by-term triangular solve.

    Slow and independent of the Newton route; the two must agree exactly on
    the exact backend.
    """
    c = series.coeffs
    if c[0] != 0:
        raise SeriesError("compositional inverse requires c_0 = 0")
    if series.order < 1 or c[1] == 0:
        raise SeriesError("compositional inverse requires c_1 != 0")
    zero = c[0] * 0
    f = list(c)
    g = [zero, 1 / f[1]]
    for n in range(2, series.order + 1):
        gp = _pad(g, n + 1)
        val = _list_compose(_pad(f, n + 1), gp, n + 1)[n]
        g.append(-val / f[1])
    return TruncatedSeries(g, series.backend, order=series.order)
