"""JSON encodings of every core type.

Exact scalars travel as strings so that round trips are lossless. Decoders are
lenient about scalars: ``{"re": .., "im": ..}``, a ``[re, im]`` pair, a plain
string such as ``"1/2-i"`` or an integer are all accepted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict

import numpy as np

from . import certify as C
from . import poly as P
from . import states as St
from . import weyl as W
from .parser import parse_element
from .scalars import GaussianRational, SymbolicScalar


def fraction_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj.strip())
    raise ValueError(f"not a rational: {obj!r}")


def scalar_to_json(c: GaussianRational) -> Dict[str, str]:
    return {"re": fraction_to_json(c.re), "im": fraction_to_json(c.im)}


def scalar_from_json(obj) -> GaussianRational:
    if isinstance(obj, GaussianRational):
        return obj
    if isinstance(obj, dict):
        return GaussianRational(fraction_from_json(obj["re"]), fraction_from_json(obj.get("im", 0)))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return GaussianRational(fraction_from_json(obj[0]), fraction_from_json(obj[1]))
    if isinstance(obj, str):
        return GaussianRational.parse(obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return GaussianRational(obj)
    raise ValueError(f"not a Gaussian rational: {obj!r}")


def symbolic_to_json(x: SymbolicScalar):
    return [{"epi": epi, "ek": ek, "c": scalar_to_json(c)} for (epi, ek), c in x.sorted_terms()]


def symbolic_from_json(obj) -> SymbolicScalar:
    return SymbolicScalar({(t["epi"], t["ek"]): scalar_from_json(t["c"]) for t in obj})


# elements ------------------------------------------------------------------------------


def element_to_json(x) -> Dict[str, Any]:
    if isinstance(x, W.WeylElement):
        return {
            "algebra": "weyl",
            "dim": x.dim,
            "terms": [
                {"k": list(m.k), "l": list(m.l), "c": scalar_to_json(c)} for m, c in x.sorted_terms()
            ],
        }
    if isinstance(x, P.PolyElement):
        return {
            "algebra": "poly",
            "n": x.n,
            "terms": [
                {"a": list(m.a), "b": list(m.b), "c": scalar_to_json(c)} for m, c in x.sorted_terms()
            ],
        }
    raise TypeError(f"not an algebra element: {x!r}")


def element_from_json(obj, algebra: str | None = None, dim: int | None = None):
    """Decode an element; a string is parsed with the expression grammar."""
    if isinstance(obj, str):
        return parse_element(obj, algebra, dim)
    if not isinstance(obj, dict) or "algebra" not in obj:
        raise ValueError("element JSON needs an 'algebra' field")
    if obj["algebra"] == "weyl":
        terms = [
            (W.WeylMonomial(tuple(t["k"]), tuple(t["l"])), scalar_from_json(t["c"])) for t in obj["terms"]
        ]
        return W.WeylElement(int(obj["dim"]), terms)
    if obj["algebra"] == "poly":
        terms = [
            (P.PolyMonomial(tuple(t["a"]), tuple(t["b"])), scalar_from_json(t["c"])) for t in obj["terms"]
        ]
        return P.PolyElement(int(obj["n"]), terms)
    raise ValueError(f"unknown algebra {obj['algebra']!r}")


def compressed_to_json(result: Dict[W.WeylMonomial, SymbolicScalar], dim: int):
    return {
        "dim": dim,
        "terms": [
            {"k": list(m.k), "l": list(m.l), "c": symbolic_to_json(c)}
            for m, c in sorted(result.items(), key=lambda kv: kv[0].sort_key())
        ],
    }


def compressed_from_json(obj):
    return {
        W.WeylMonomial(tuple(t["k"]), tuple(t["l"])): symbolic_from_json(t["c"]) for t in obj["terms"]
    }


def taylor_to_json(form: W.CentralTaylorForm):
    return {"mu": scalar_to_json(form.mu), "parts": [element_to_json(x) for x in form.parts]}


def taylor_from_json(obj) -> W.CentralTaylorForm:
    return W.CentralTaylorForm(scalar_from_json(obj["mu"]), tuple(element_from_json(x) for x in obj["parts"]))


# poly geometry ---------------------------------------------------------------------------


def signature_to_json(sig: P.Signature):
    return {"n": sig.n, "s": sig.s}


def signature_from_json(obj) -> P.Signature:
    return P.Signature(int(obj["n"]), int(obj["s"]))


def point_to_json(w):
    return [scalar_to_json(x) for x in (w.w if isinstance(w, P.ProjPoint) else w)]


def point_from_json(obj):
    if isinstance(obj, dict):
        obj = obj["w"]
    return tuple(scalar_from_json(x) for x in obj)


def projpoint_to_json(w: P.ProjPoint):
    return {"w": point_to_json(w)}


def projpoint_from_json(obj) -> P.ProjPoint:
    return P.ProjPoint(point_from_json(obj))


def hom_matrix_to_json(X: P.HomMatrix):
    return [[scalar_to_json(c) for c in row] for row in X.rows]


def hom_matrix_from_json(obj) -> P.HomMatrix:
    return P.HomMatrix.from_rows([[scalar_from_json(c) for c in row] for row in obj])


# states ---------------------------------------------------------------------------------


def _complex_pair(z: complex):
    return [float(z.real), float(z.imag)]


def state_to_json(omega) -> Dict[str, Any]:
    if isinstance(omega, St.PointEvaluation):
        return {"kind": "point", "w": point_to_json(omega.w)}
    if isinstance(omega, St.ReducedPointEvaluation):
        return {
            "kind": "reduced-point",
            "w": point_to_json(omega.w),
            "sig": signature_to_json(omega.sig),
            "mu": scalar_to_json(omega.mu),
        }
    if isinstance(omega, St.Mixture):
        return {"kind": "mixture", "entries": [[fraction_to_json(wt), state_to_json(st)] for wt, st in omega.entries]}
    if isinstance(omega, St.HermiteVectorState):
        coeffs = [[_complex_pair(z) for z in c] for c in omega.coeffs]
        return {
            "kind": "hermite",
            "coeffs": coeffs[0] if len(coeffs) == 1 else coeffs,
            "truncation": omega.truncation,
        }
    if isinstance(omega, St.AveragePullback):
        return {"kind": "average-pullback", "base": state_to_json(omega.base)}
    raise TypeError(f"unknown state kind: {omega!r}")


def state_from_json(obj):
    kind = obj.get("kind")
    if kind == "point":
        return St.PointEvaluation(point_from_json(obj["w"]))
    if kind == "reduced-point":
        return St.ReducedPointEvaluation(
            P.ProjPoint(point_from_json(obj["w"])), signature_from_json(obj["sig"]), scalar_from_json(obj["mu"])
        )
    if kind == "mixture":
        return St.Mixture(tuple((fraction_from_json(wt), state_from_json(st)) for wt, st in obj["entries"]))
    if kind == "hermite":
        coeffs = obj["coeffs"]
        per_coord = coeffs if coeffs and isinstance(coeffs[0][0], list) else [coeffs]
        arrays = tuple(np.array([complex(re, im) for re, im in c]) for c in per_coord)
        return St.HermiteVectorState(arrays, int(obj.get("truncation", St.DEFAULT_TRUNCATION)))
    if kind == "average-pullback":
        return St.AveragePullback(state_from_json(obj["base"]))
    raise ValueError(f"unknown state kind {kind!r}")


# certificates ------------------------------------------------------------------------------


def _index_to_json(s):
    return s if s == C.UNIT else int(s)


def certificate_to_json(cert) -> Dict[str, Any]:
    if isinstance(cert, C.QMCertificate):
        return {"kind": "qm", "terms": [{"a": element_to_json(a), "s": _index_to_json(s)} for a, s in cert.terms]}
    if isinstance(cert, C.POCertificate):
        return {"kind": "po", "terms": [{"a": element_to_json(a), "s": list(ms)} for a, ms in cert.terms]}
    if isinstance(cert, C.PositivstellensatzCertificate):
        return {
            "kind": "psatz",
            "m1": cert.m1,
            "eps": fraction_to_json(cert.eps),
            "m2": cert.m2,
            "g": element_to_json(cert.ideal_cofactor),
            "qm": certificate_to_json(cert.qm),
            "p": element_to_json(cert.p),
        }
    raise TypeError(f"unknown certificate: {cert!r}")


def certificate_from_json(obj, algebra: str | None = None, dim: int | None = None):
    """Decode a certificate; element fields may be element JSON or expression text."""
    el = lambda x: element_from_json(x, algebra, dim)  # noqa: E731
    kind = obj.get("kind")
    if kind == "qm":
        return C.QMCertificate(tuple((el(t["a"]), t["s"]) for t in obj["terms"]))
    if kind == "po":
        return C.POCertificate(tuple((el(t["a"]), tuple(t["s"])) for t in obj["terms"]))
    if kind == "psatz":
        return C.PositivstellensatzCertificate(
            m1=int(obj.get("m1", 0)),
            eps=fraction_from_json(obj.get("eps", 0)),
            m2=int(obj.get("m2", 0)),
            ideal_cofactor=el(obj["g"]),
            qm=certificate_from_json(obj["qm"], algebra, dim),
            p=el(obj.get("p", "1")),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")


def falsify_to_json(result) -> Dict[str, Any]:
    if isinstance(result, C.Counterexample):
        return {"verdict": "counterexample", "w": [_complex_pair(z) for z in result.w], "value": result.value}
    return {"verdict": "no-counterexample", "samples": result.samples}
