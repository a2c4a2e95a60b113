"""JSON schemas and canonical serialization for the command-line surface.

Two rules keep the wire format trustworthy:

* Every integer is emitted as a decimal string.  The interesting numbers
  here (annihilators, group orders, bound-table entries) routinely exceed
  2^53, and a format in which some integers survive a JSON round trip
  through other tooling and some do not is worse than one uniform rule.
  Parsing accepts either form.
* Output is canonical: keys sorted, two-space indent, trailing newline.
  Identical inputs produce byte-identical reports, whatever thread count or
  dict insertion order produced them.

Floats are rejected outright -- nothing in this package is approximate in
the floating-point sense, so a float in a document is always a mistake.
"""

from __future__ import annotations

import enum
import json
import re
from typing import Any, Dict, List, Optional, Tuple

from .errors import DomainError, InvariantError
from .iterated_words import Observable
from .padic_series import (
    DEFAULT_PRECISION,
    Chart,
    DiskSeries,
    IsolationFailure,
    PadicNumber,
    PadicSeries,
    SeparationReport,
    ZeroDisk,
)

_INT_RE = re.compile(r"^[+-]?[0-9]+$")


# ---------------------------------------------------------------------------
# Scalar parsing
# ---------------------------------------------------------------------------


def parse_int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise DomainError(f"{path}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        if _INT_RE.match(value.strip()):
            return int(value.strip())
        raise DomainError(f"{path}: {value!r} is not a decimal integer")
    if isinstance(value, float):
        raise DomainError(
            f"{path}: floats are not accepted; write the integer as a string"
        )
    raise DomainError(f"{path}: expected an integer, got {type(value).__name__}")


def _require(doc: Any, key: str, path: str) -> Any:
    if not isinstance(doc, dict):
        raise DomainError(f"{path}: expected an object")
    if key not in doc:
        raise DomainError(f"{path}.{key}: missing required field")
    return doc[key]


def _optional(doc: Any, key: str, default: Any = None) -> Any:
    if isinstance(doc, dict) and key in doc:
        return doc[key]
    return default


# ---------------------------------------------------------------------------
# Coefficients and series
# ---------------------------------------------------------------------------


def coeff_from_json(obj: Any, p: int, prec: int, path: str) -> PadicNumber:
    """Accepts an integer (or decimal string) for an exact value at the
    ambient precision, or one of the explicit forms
    ``{"zero": true}``, ``{"zero_to": k}``, ``{"val": v, "unit": u, "prec": n}``.
    """
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return PadicNumber.from_int(p, parse_int(obj, path), prec)
    if isinstance(obj, dict):
        if obj.get("zero") is True:
            return PadicNumber.zero(p)
        if "zero_to" in obj:
            return PadicNumber.zero_to(p, parse_int(obj["zero_to"], f"{path}.zero_to"))
        if "unit" in obj or "val" in obj:
            val = parse_int(_require(obj, "val", path), f"{path}.val")
            unit = parse_int(_require(obj, "unit", path), f"{path}.unit")
            cprec = parse_int(_require(obj, "prec", path), f"{path}.prec")
            try:
                return PadicNumber.unit_form(p, val, unit, cprec)
            except DomainError as exc:
                raise DomainError(f"{path}: {exc}") from exc
    raise DomainError(
        f"{path}: expected an integer, a decimal string, or an object with "
        f'"zero"/"zero_to"/"val","unit","prec"'
    )


def coeff_to_json(x: PadicNumber) -> Dict[str, Any]:
    if x.is_exact_zero():
        return {"zero": True}
    if x.unit is None:
        return {"zero_to": x.val}
    return {"val": x.val, "unit": x.unit, "prec": x.prec}


def series_from_json(
    obj: Any, p: int, prec: int, path: str, require_bound: bool = False
) -> PadicSeries:
    coeffs_raw = _require(obj, "coeffs", path)
    if not isinstance(coeffs_raw, list) or not coeffs_raw:
        raise DomainError(f"{path}.coeffs: expected a nonempty array")
    coeffs = [
        coeff_from_json(c, p, prec, f"{path}.coeffs[{i}]")
        for i, c in enumerate(coeffs_raw)
    ]
    bound_raw = _optional(obj, "weierstrass_bound")
    if bound_raw is None:
        if require_bound:
            raise DomainError(
                f"{path}.weierstrass_bound: missing; zero isolation needs the "
                f"caller's guarantee of which indices govern the unit disk"
            )
        bound = None
    else:
        bound = parse_int(bound_raw, f"{path}.weierstrass_bound")
    trunc_raw = _optional(obj, "trunc")
    if trunc_raw is not None:
        trunc = parse_int(trunc_raw, f"{path}.trunc")
        if trunc != len(coeffs) - 1:
            raise DomainError(
                f"{path}.trunc: {trunc} disagrees with the {len(coeffs)} "
                f"supplied coefficients"
            )
    try:
        return PadicSeries(p, coeffs, bound)
    except DomainError as exc:
        raise DomainError(f"{path}: {exc}") from exc


def series_to_json(f: PadicSeries) -> Dict[str, Any]:
    return {
        "p": f.p,
        "trunc": f.trunc_degree,
        "weierstrass_bound": f.weierstrass_bound,
        "coeffs": [coeff_to_json(c) for c in f.coeffs],
    }


# ---------------------------------------------------------------------------
# Charts (zero-separation input)
# ---------------------------------------------------------------------------


def charts_from_json(doc: Any, path: str = "$") -> Tuple[List[Chart], int]:
    """Chart payload: ``{"charts": [{chart_id, p, disks: [...]}]}`` where each
    disk is ``{center_label, coeffs, trunc, weierstrass_bound}``.  ``p`` (and
    an optional default ``prec``) may be given once at the top level instead
    of per chart; all charts must agree on one prime."""
    if isinstance(doc, list):
        doc = {"charts": doc}
    top_p_raw = _optional(doc, "p")
    top_p = parse_int(top_p_raw, f"{path}.p") if top_p_raw is not None else None
    prec_raw = _optional(doc, "prec")
    prec = (
        parse_int(prec_raw, f"{path}.prec")
        if prec_raw is not None
        else DEFAULT_PRECISION
    )
    charts_raw = _require(doc, "charts", path)
    if not isinstance(charts_raw, list) or not charts_raw:
        raise DomainError(f"{path}.charts: expected a nonempty array")
    charts: List[Chart] = []
    p: Optional[int] = top_p
    for i, chart_obj in enumerate(charts_raw):
        cpath = f"{path}.charts[{i}]"
        chart_id = _require(chart_obj, "chart_id", cpath)
        if not isinstance(chart_id, str) or not chart_id:
            raise DomainError(f"{cpath}.chart_id: expected a nonempty string")
        chart_p_raw = _optional(chart_obj, "p")
        if chart_p_raw is None:
            if p is None:
                raise DomainError(f"{cpath}.p: missing required field")
            chart_p = p
        else:
            chart_p = parse_int(chart_p_raw, f"{cpath}.p")
            if p is not None and chart_p != p:
                raise DomainError(
                    f"{cpath}.p: {chart_p} disagrees with p={p} used elsewhere"
                )
            p = chart_p
        disks_raw = _require(chart_obj, "disks", cpath)
        if not isinstance(disks_raw, list) or not disks_raw:
            raise DomainError(f"{cpath}.disks: expected a nonempty array")
        disks = []
        for j, disk_obj in enumerate(disks_raw):
            dpath = f"{cpath}.disks[{j}]"
            label = _optional(disk_obj, "center_label", _optional(disk_obj, "label", str(j)))
            if not isinstance(label, str):
                raise DomainError(f"{dpath}.center_label: expected a string")
            series = series_from_json(
                disk_obj, chart_p, prec, dpath, require_bound=True
            )
            disks.append(DiskSeries(label=label, series=series))
        charts.append(Chart(chart_id=chart_id, disks=tuple(disks)))
    assert p is not None
    return charts, p


def _disk_to_json(d: ZeroDisk) -> Dict[str, Any]:
    return {
        "chart_id": d.chart_id,
        "center_digits": list(d.center_digits),
        "depth": d.depth,
        "zero_count": d.zero_count,
        "multiplicity_flag": d.multiplicity_flag,
    }


def _failure_to_json(x: IsolationFailure) -> Dict[str, Any]:
    return {
        "chart_id": x.chart_id,
        "center_digits": list(x.center_digits),
        "depth": x.depth,
        "reason": x.reason.value,
        "residual_count": x.residual_count,
    }


def separation_report_to_json(report: SeparationReport) -> Dict[str, Any]:
    return {
        "status": report.status.value,
        "modulus": report.modulus,
        "disks": [_disk_to_json(d) for d in report.disks],
        "failures": [_failure_to_json(x) for x in report.failures],
    }


# ---------------------------------------------------------------------------
# Form systems and observables (integration input)
# ---------------------------------------------------------------------------


def forms_from_json(doc: Any, path: str = "$") -> Tuple[List[PadicSeries], int, int]:
    """Returns (forms, p, prec).  Forms may be plain coefficient arrays or
    series objects."""
    p = parse_int(_require(doc, "p", path), f"{path}.p")
    prec_raw = _optional(doc, "prec")
    prec = (
        parse_int(prec_raw, f"{path}.prec")
        if prec_raw is not None
        else DEFAULT_PRECISION
    )
    forms_raw = _require(doc, "forms", path)
    if not isinstance(forms_raw, list) or not forms_raw:
        raise DomainError(f"{path}.forms: expected a nonempty array")
    forms = []
    for i, form_obj in enumerate(forms_raw):
        fpath = f"{path}.forms[{i}]"
        if isinstance(form_obj, list):
            form_obj = {"coeffs": form_obj}
        forms.append(series_from_json(form_obj, p, prec, fpath))
    return forms, p, prec


def observable_from_json(doc: Any, p: int, prec: int, path: str) -> Observable:
    if not isinstance(doc, list):
        raise DomainError(f"{path}: expected an array of word terms")
    terms = []
    for i, term_obj in enumerate(doc):
        tpath = f"{path}[{i}]"
        word_raw = _require(term_obj, "word", tpath)
        if not isinstance(word_raw, list):
            raise DomainError(f"{tpath}.word: expected an array of letters")
        word = tuple(
            parse_int(letter, f"{tpath}.word[{j}]")
            for j, letter in enumerate(word_raw)
        )
        coeff = coeff_from_json(
            _require(term_obj, "coeff", tpath), p, prec, f"{tpath}.coeff"
        )
        terms.append((word, coeff))
    try:
        return Observable.from_terms(p, terms, prec)
    except DomainError as exc:
        raise DomainError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Two-sided search fixtures
# ---------------------------------------------------------------------------


def descent_fixture_from_json(
    doc: Any, path: str = "$"
) -> Tuple[List[frozenset], List[frozenset]]:
    """Point labels are opaque; they are normalized to strings on parse."""

    def levels(key: str) -> List[frozenset]:
        raw = _require(doc, key, path)
        if not isinstance(raw, list) or not raw:
            raise DomainError(f"{path}.{key}: expected a nonempty array of levels")
        out = []
        for i, level in enumerate(raw):
            if not isinstance(level, list):
                raise DomainError(f"{path}.{key}[{i}]: expected an array")
            elems = set()
            for j, e in enumerate(level):
                if isinstance(e, bool) or not isinstance(e, (int, str)):
                    raise DomainError(
                        f"{path}.{key}[{i}][{j}]: point labels must be "
                        f"integers or strings"
                    )
                elems.add(str(e))
            out.append(frozenset(elems))
        return out

    return levels("lower"), levels("upper")


# ---------------------------------------------------------------------------
# Canonical emission
# ---------------------------------------------------------------------------


def canonicalize(obj: Any) -> Any:
    """Recursively prepare a document: ints become decimal strings, enums
    their values; floats are a hard error."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return canonicalize(obj.value)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        raise InvariantError(
            f"float {obj!r} reached the serializer; all arithmetic here is exact"
        )
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if not isinstance(k, str):
                raise InvariantError(f"non-string key {k!r} reached the serializer")
            out[k] = canonicalize(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(canonicalize(v) for v in obj)
    raise InvariantError(f"unserializable value {obj!r}")


def canonical_dumps(doc: Any) -> str:
    return json.dumps(canonicalize(doc), sort_keys=True, indent=2) + "\n"


def load_json_file(filename: str) -> Any:
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise DomainError(f"input file {filename!r} not found") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"{filename}: invalid JSON ({exc})") from exc
