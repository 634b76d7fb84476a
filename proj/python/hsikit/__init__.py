"""Python access to the hsi calculators. Structured results come back as dicts."""

import json as _json

from . import _core
from ._core import HsiError, euler, h1_order

__all__ = [
    "HsiError",
    "compose",
    "euler",
    "fiber_intersection",
    "h1_order",
    "intersect",
    "kunneth",
    "lens",
    "lens_intersection",
    "normalize",
    "plumbing",
    "presentation_matrix",
    "qa",
    "s2s1",
    "smith",
]


def _enc(x):
    return x if isinstance(x, str) else _json.dumps(x)


def lens(p, q, cls=0):
    return _json.loads(_core.lens(p, q, cls))


def s2s1(cls=0):
    return _json.loads(_core.s2s1(cls))


def lens_intersection(p, q, eps0=1, eps1=1):
    return _json.loads(_core.lens_intersection(p, q, eps0, eps1))


def kunneth(a, b):
    return _json.loads(_core.kunneth(_enc(a), _enc(b)))


def smith(matrix):
    return _json.loads(_core.smith(matrix))


def presentation_matrix(family):
    return _core.presentation_matrix(_enc(family))


def plumbing(tree):
    return _json.loads(_core.plumbing(_enc(tree)))


def qa(certificate):
    return _json.loads(_core.qa(_enc(certificate)))


def normalize(word, moves=()):
    return _json.loads(_core.normalize(_enc(word), _enc(list(moves))))


def compose(first, second):
    return _json.loads(_core.compose(_enc(first), _enc(second)))


def intersect(first, second, samples=8, seed=1):
    return _json.loads(_core.intersect(_enc(first), _enc(second), samples, seed))


def fiber_intersection(y0, y1, lam=1.0):
    return _core.fiber_intersection(list(y0), list(y1), lam)
