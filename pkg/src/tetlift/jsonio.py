"""JSON encoding of exact values, seeded random polynomials, report envelopes.

Rationals are written as strings (``"22/7"``) so nothing passes
through binary floating point; the sqrt(3) part sits in its own field.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Any

from .geometry import FACES
from .poly import Poly, monomials
from .scalar import Scalar, parse_rational
from .traces import SymTensorPoly, TraceTuple

__all__ = [
    "SCHEMA_VERSION",
    "scalar_to_json",
    "scalar_from_json",
    "poly_to_json",
    "poly_from_json",
    "traces_to_json",
    "traces_from_json",
    "tensor_to_json",
    "report",
    "random_polynomial",
    "sample_rng",
    "dumps",
]

SCHEMA_VERSION = 1


def _rat(q: Fraction) -> str:
    return str(q)


def scalar_to_json(c: Scalar) -> dict:
    return {"rat": _rat(c.rat), "sqrt3": _rat(c.irr)}


def scalar_from_json(obj: Any) -> Scalar:
    if isinstance(obj, dict):
        unknown = set(obj) - {"rat", "sqrt3"}
        if unknown:
            raise ValueError(f"unknown coefficient fields {sorted(unknown)}")
        return Scalar(parse_rational(obj.get("rat", "0")), parse_rational(obj.get("sqrt3", "0")))
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError(f"coefficient must be an integer or p/q string, got {obj!r}")
    return Scalar(parse_rational(obj))


def poly_to_json(p: Poly) -> dict:
    terms = [
        {"exp": list(e), "coeff": scalar_to_json(c)}
        for e, c in sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]))
    ]
    return {"vars": p.nvars, "terms": terms}


def poly_from_json(obj: dict) -> Poly:
    if not isinstance(obj, dict) or "vars" not in obj:
        raise ValueError("polynomial JSON needs a 'vars' field")
    n = obj["vars"]
    if n not in (1, 2, 3):
        raise ValueError(f"'vars' must be 1, 2 or 3, got {n!r}")
    terms = {}
    for t in obj.get("terms", []):
        exp = tuple(t["exp"])
        if len(exp) != n or any(not isinstance(a, int) or a < 0 for a in exp):
            raise ValueError(f"bad exponent {t['exp']!r}")
        c = scalar_from_json(t["coeff"])
        terms[exp] = terms.get(exp, Scalar(0)) + c
    return Poly(n, terms)


def traces_to_json(F: TraceTuple) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "k": F.k,
        "N": F.N,
        "faces": {str(i): [poly_to_json(p) for p in F.data[i]] for i in FACES},
    }


def traces_from_json(obj: dict) -> TraceTuple:
    try:
        k = int(obj["k"])
        faces = obj["faces"]
        data = {i: tuple(poly_from_json(p) for p in faces[str(i)]) for i in FACES}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed trace JSON: {exc}") from exc
    if "N" in obj:
        N = int(obj["N"])
    else:
        N = max([int(p.degree) for row in data.values() for p in row if p] or [0])
    return TraceTuple(k, N, data)


def tensor_to_json(t: SymTensorPoly) -> dict:
    return {
        "order": t.order,
        "entries": [{"index": list(key), "poly": poly_to_json(p)} for key, p in t.items()],
    }


def report(kind: str, body: dict) -> dict:
    """Wrap a report body with the schema version and its kind."""
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **body}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def sample_rng(seed: int, sample: int) -> random.Random:
    """Independent deterministic stream for one sample of a seeded run."""
    return random.Random(f"tetlift:{seed}:{sample}")


def random_polynomial(N: int, nvars: int = 3, seed: int | random.Random = 0, coeff_bound: int = 5) -> Poly:
    """Integer coefficients drawn uniformly from ``[-coeff_bound, coeff_bound]``
    for every monomial of degree at most ``N``; deterministic per seed."""
    if N < 0:
        raise ValueError("degree must be nonnegative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Poly(nvars, {e: rng.randint(-coeff_bound, coeff_bound) for e in monomials(nvars, N)})
