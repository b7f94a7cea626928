"""Exact scaling limits of weighted model hypersurfaces.

Domains and orbits are given as inline key = value text, a file path, or a
built-in data name such as ``"e124"``. Every call returns the decoded JSON report.
"""

import json

from . import _core
from ._core import InputError, MathError, VerificationError, __version__, example_names, schema_version

__all__ = [
    "InputError",
    "MathError",
    "VerificationError",
    "classify",
    "example",
    "example_names",
    "multitype",
    "scale",
    "schema_version",
    "verify",
]


def multitype(domain, budget=10000, tol=1e-9, seed=0):
    return json.loads(_core.multitype(domain, budget, tol, seed))


def classify(domain, orbit):
    return json.loads(_core.classify(domain, orbit))


def scale(domain, orbit, tau="formula3", multipliers=(), shear="divergent", nu=None):
    return json.loads(_core.scale(domain, orbit, tau, [str(m) for m in multipliers], shear, nu))


def verify(suite, domain="", orbit="", nu=None):
    return json.loads(_core.verify(suite, domain, orbit, nu))


def example(name):
    return json.loads(_core.example(name))
