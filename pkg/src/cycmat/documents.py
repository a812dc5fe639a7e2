"""Canonical JSON documents for matroids and orderings.

Documents carry exactly one representation; set lists hold 1-based element
indices.  Emission is canonical (sorted keys, two-space indent, trailing
newline) so equal documents are byte-equal and goldens can be compared
directly.
"""

from __future__ import annotations

import json
from typing import Any

from . import bitset
from .constructions import free_spike, truncate, uniform, wheel, whirl
from .core import GroundSet, MatroidOracle, oracle_from_circuits
from .transversal import BipartitePresentation, psi, transversal_matroid

SCHEMA_VERSION = 1

_REPRESENTATIONS = ("uniform", "psi", "circuits", "transversal", "construction", "truncate")
_CONSTRUCTION_KINDS = ("wheel", "whirl", "free_spike")


def doc_uniform(r: int, n: int) -> dict:
    return {"schema": SCHEMA_VERSION, "matroid": {"uniform": {"r": r, "n": n}}}


def doc_psi(n: int, s: int) -> dict:
    return {"schema": SCHEMA_VERSION, "matroid": {"psi": {"n": n, "s": s}}}


def doc_circuits(n: int, circuits: list[list[int]]) -> dict:
    canon = sorted(
        (sorted(set(c)) for c in circuits), key=lambda c: (len(c), c)
    )
    return {"schema": SCHEMA_VERSION, "matroid": {"circuits": {"n": n, "circuits": canon}}}


def doc_transversal(n: int, neighborhoods: list[list[int]]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "matroid": {
            "transversal": {"n": n, "neighborhoods": [sorted(set(nb)) for nb in neighborhoods]}
        },
    }


def doc_construction(kind: str, r: int) -> dict:
    if kind not in _CONSTRUCTION_KINDS:
        raise ValueError(f"unknown construction kind {kind!r}")
    return {"schema": SCHEMA_VERSION, "matroid": {"construction": {"kind": kind, "r": r}}}


def doc_truncate(inner: dict, i: int) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "matroid": {"truncate": {"inner": inner["matroid"], "i": i}},
    }


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(doc: dict) -> str:
    return canonical_json(doc)


def parse(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"document is not valid JSON: {exc}") from exc
    _validate(doc)
    return doc


def _validate(doc: Any) -> None:
    if not isinstance(doc, dict):
        raise ValueError("document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema')!r}")
    if set(doc) - {"schema", "labels", "matroid"}:
        raise ValueError("document carries unknown top-level fields")
    labels = doc.get("labels")
    if labels is not None:
        if (
            not isinstance(labels, list)
            or not all(isinstance(x, str) for x in labels)
            or len(set(labels)) != len(labels)
        ):
            raise ValueError("labels must be a list of distinct strings")
    _validate_matroid(doc.get("matroid"))


def _validate_matroid(body: Any) -> None:
    if not isinstance(body, dict):
        raise ValueError("matroid body must be a JSON object")
    keys = [k for k in body if k in _REPRESENTATIONS]
    if len(keys) != 1 or set(body) - set(_REPRESENTATIONS):
        raise ValueError("matroid body must carry exactly one known representation")
    kind = keys[0]
    payload = body[kind]
    if kind == "uniform":
        _expect_int_fields(payload, "r", "n")
    elif kind == "psi":
        _expect_int_fields(payload, "n", "s")
    elif kind == "circuits":
        _expect_int_fields(payload, "n")
        _expect_index_lists(payload.get("circuits"), payload["n"])
    elif kind == "transversal":
        _expect_int_fields(payload, "n")
        _expect_index_lists(payload.get("neighborhoods"), payload["n"])
    elif kind == "construction":
        if payload.get("kind") not in _CONSTRUCTION_KINDS:
            raise ValueError(f"unknown construction kind {payload.get('kind')!r}")
        _expect_int_fields(payload, "r")
    elif kind == "truncate":
        _expect_int_fields(payload, "i")
        _validate_matroid(payload.get("inner"))


def _expect_int_fields(payload: Any, *names: str) -> None:
    if not isinstance(payload, dict):
        raise ValueError("representation payload must be a JSON object")
    for name in names:
        if not isinstance(payload.get(name), int):
            raise ValueError(f"representation field {name!r} must be an integer")


def _expect_index_lists(value: Any, n: int) -> None:
    if not isinstance(value, list):
        raise ValueError("expected a list of index lists")
    for entry in value:
        if not isinstance(entry, list) or not all(
            isinstance(i, int) and 1 <= i <= n for i in entry
        ):
            raise ValueError("set lists must hold 1-based element indices within the ground set")


def to_oracle(doc: dict) -> MatroidOracle:
    oracle = _build(doc["matroid"])
    labels = doc.get("labels")
    if labels:
        if len(labels) != oracle.n:
            raise ValueError(
                f"document has {len(labels)} labels for {oracle.n} elements"
            )
        return MatroidOracle(
            GroundSet(oracle.n, tuple(labels)), oracle.indep, name=oracle.name
        )
    return oracle


def _build(body: dict) -> MatroidOracle:
    kind = next(k for k in body if k in _REPRESENTATIONS)
    payload = body[kind]
    if kind == "uniform":
        return uniform(payload["r"], payload["n"])
    if kind == "psi":
        return psi(payload["n"], payload["s"])
    if kind == "circuits":
        ground = GroundSet(payload["n"])
        return oracle_from_circuits(
            ground,
            [bitset.mask_of(c) for c in payload["circuits"]],
            name="document-circuits",
            validate=False,
        )
    if kind == "transversal":
        ground = GroundSet(payload["n"])
        pres = BipartitePresentation(
            ground, tuple(bitset.mask_of(nb) for nb in payload["neighborhoods"])
        )
        return transversal_matroid(pres)
    if kind == "construction":
        builder = {"wheel": wheel, "whirl": whirl}.get(payload["kind"])
        if builder is not None:
            return builder(payload["r"])
        oracle, _ = free_spike(payload["r"])
        return oracle
    if kind == "truncate":
        return truncate(_build(payload["inner"]), payload["i"])
    raise ValueError(f"unknown representation {kind!r}")


def parse_ordering(text: str, n: int) -> tuple[int, ...]:
    """An ordering file is a JSON array of 1-based indices, a permutation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"ordering is not valid JSON: {exc}") from exc
    if (
        not isinstance(data, list)
        or not all(isinstance(i, int) for i in data)
        or sorted(data) != list(range(1, n + 1))
    ):
        raise ValueError("ordering must be a JSON array forming a permutation of 1..n")
    return tuple(data)
