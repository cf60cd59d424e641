"""Scalar plumbing shared by the exact and numeric code paths.

Exact scalars are sympy expressions, normally Gaussian rationals; numeric
scalars are Python ``complex`` values.
"""
from fractions import Fraction
from numbers import Number
from typing import Any, Union

import numpy as np
import sympy

from app.config.tolerance_config import EXACT_ZERO_DIGITS, EXACT_ZERO_TOL, NUMERIC_ZERO_TOL

Scalar = Union[sympy.Expr, complex]

ZERO = sympy.Integer(0)
ONE = sympy.Integer(1)


def is_numeric(x: Any) -> bool:
    return isinstance(x, (float, complex, np.floating, np.complexfloating))


def coerce(x: Any) -> Scalar:
    """Bring a user value into one of the two scalar representations."""
    if is_numeric(x):
        return complex(x)
    if isinstance(x, sympy.Basic):
        return x
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, (int, np.integer)):
        return sympy.Integer(int(x))
    return sympy.sympify(x, rational=True)


def clean(x: Scalar) -> Scalar:
    if isinstance(x, sympy.Basic):
        return sympy.expand(x)
    return x


def rationalize(x: Scalar) -> Scalar:
    """Expanded form with real denominators; radicals of complex numbers are split into real and imaginary parts."""
    if not isinstance(x, sympy.Basic):
        return x
    e = sympy.expand(sympy.radsimp(x))
    if is_gaussian_rational(e) or not e.is_number:
        return e
    return sympy.expand(sympy.radsimp(sympy.expand_complex(e)))


def is_zero(x: Scalar) -> bool:
    if not isinstance(x, sympy.Basic):
        return abs(x) < NUMERIC_ZERO_TOL
    if x.atoms(sympy.Float):
        return abs(complex(sympy.N(x))) < NUMERIC_ZERO_TOL
    e = rationalize(x)
    if e == 0:
        return True
    if is_gaussian_rational(e):
        return False
    if abs(complex(sympy.N(e, EXACT_ZERO_DIGITS))) > EXACT_ZERO_TOL:
        return False
    if sympy.simplify(e) == 0:
        return True
    return e.equals(0) is not False


def conj(x: Scalar) -> Scalar:
    if isinstance(x, sympy.Basic):
        return sympy.expand(sympy.conjugate(x))
    return x.conjugate()


def re(x: Scalar) -> Scalar:
    if isinstance(x, sympy.Basic):
        return sympy.expand(sympy.re(x))
    return complex(x.real, 0.0)


def im(x: Scalar) -> Scalar:
    if isinstance(x, sympy.Basic):
        return sympy.expand(sympy.im(x))
    return complex(x.imag, 0.0)


def is_real(x: Scalar) -> bool:
    return is_zero(im(x))


def is_gaussian_rational(x: Scalar) -> bool:
    if not isinstance(x, sympy.Basic):
        return False
    real, imag = sympy.expand(x).as_real_imag()
    return bool(real.is_Rational) and bool(imag.is_Rational)


def to_complex(x: Scalar) -> complex:
    if isinstance(x, sympy.Basic):
        return complex(sympy.N(x, 30))
    return complex(x)


def sign_of_real(x: Scalar) -> int:
    """Sign of a real scalar; 0 for zero."""
    if is_zero(x):
        return 0
    value = sympy.re(x) if isinstance(x, sympy.Basic) else x.real
    if isinstance(value, sympy.Basic):
        return 1 if bool(value > 0) else -1
    return 1 if value > 0 else -1


def encode(x: Scalar) -> Union[list, dict]:
    """JSON form: ``[re_num, re_den, im_num, im_den]`` for Gaussian rationals,
    ``{"expr": ...}`` for other exact values, ``[re, im]`` in numeric mode."""
    if not isinstance(x, sympy.Basic):
        x = complex(x)
        return [x.real, x.imag]
    if is_gaussian_rational(x):
        real, imag = sympy.expand(x).as_real_imag()
        real, imag = sympy.Rational(real), sympy.Rational(imag)
        return [int(real.p), int(real.q), int(imag.p), int(imag.q)]
    return {"expr": sympy.sstr(rationalize(x))}


def decode(value: Any) -> Scalar:
    if isinstance(value, dict):
        return sympy.sympify(value["expr"], rational=True)
    if isinstance(value, (list, tuple)):
        if len(value) == 4:
            p, q, r, s = value
            return sympy.Rational(int(p), int(q)) + sympy.I * sympy.Rational(int(r), int(s))
        if len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        raise ValueError(f"Scalar must have 2 (numeric) or 4 (exact) entries, got {len(value)}")
    if isinstance(value, Number) and not isinstance(value, bool):
        return coerce(value)
    if isinstance(value, str):
        return sympy.sympify(value, rational=True)
    raise ValueError(f"Cannot decode scalar from {value!r}")
