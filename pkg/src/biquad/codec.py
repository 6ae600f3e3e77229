"""JSON and text forms of fields, elements, and representations."""

from fractions import Fraction
import json

from .biquadratic import BiquadElem, BiquadField, classify_field, to_integral_coords
from .errors import DomainError
from .quadratic import QuadElem
from .sos import SosRep, sos_verify


def format_rational(q) -> str:
    """'p/q', or 'p' when q is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if not isinstance(text, str):
        raise DomainError(f"expected a rational as a string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad rational {text!r}") from None


def quad_to_json(q: QuadElem) -> dict:
    return {"d": q.d, "a": format_rational(q.a), "b": format_rational(q.b)}


def quad_from_json(obj: dict) -> QuadElem:
    try:
        return QuadElem(int(obj["d"]), parse_rational(obj["a"]), parse_rational(obj["b"]))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed quadratic element: {exc}") from None


def field_to_json(K: BiquadField) -> dict:
    return {"r1": K.r1, "r2": K.r2, "class_tag": K.class_tag.value}


def field_from_json(obj: dict) -> BiquadField:
    try:
        K = classify_field(int(obj["r1"]), int(obj["r2"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed field: {exc}") from None
    if (K.r1, K.r2) != (int(obj["r1"]), int(obj["r2"])):
        raise DomainError(f"field ({obj['r1']}, {obj['r2']}) is not in canonical form")
    tag = obj.get("class_tag")
    if tag is not None and tag != K.class_tag.value:
        raise DomainError(f"class tag {tag} does not match {K.class_tag.value}")
    return K


def elem_to_json(x: BiquadElem, with_field: bool = True) -> dict:
    """Power-basis coordinates, plus integral coordinates when x is integral."""
    result = {}
    if with_field:
        result["field"] = field_to_json(x.field)
    result["coords"] = [format_rational(c) for c in x.coords]
    integral, ok = to_integral_coords(x)
    if ok:
        result["integral_coords"] = [format_rational(c) for c in integral]
    return result


def elem_from_json(obj: dict, K: BiquadField | None = None) -> BiquadElem:
    try:
        if K is None:
            K = field_from_json(obj["field"])
        coords = [parse_rational(c) for c in obj["coords"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed element: {exc}") from None
    if len(coords) != 4:
        raise DomainError(f"expected 4 coordinates, got {len(coords)}")
    return BiquadElem(K, tuple(coords))


def rep_to_json(rep: SosRep) -> dict:
    return {
        "field": field_to_json(rep.field),
        "target": elem_to_json(rep.target, with_field=False),
        "squares": [elem_to_json(t, with_field=False) for t in rep.terms],
        "verified": sos_verify(rep),
    }


def rep_from_json(obj: dict) -> SosRep:
    if not isinstance(obj, dict):
        raise DomainError("representation must be a JSON object")
    try:
        K = field_from_json(obj["field"])
        target = elem_from_json(obj["target"], K)
        terms = [elem_from_json(t, K) for t in obj["squares"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed representation: {exc}") from None
    return SosRep(target, terms)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from None


def pretty(rep: SosRep, lhs: str | None = None) -> str:
    """'lhs = (t1)² + (t2)² + ...', with the target itself as the default left side."""
    left = str(rep.target) if lhs is None else lhs
    if not rep.terms:
        return f"{left} = 0"
    return f"{left} = " + " + ".join(f"({t})²" for t in rep.terms)
