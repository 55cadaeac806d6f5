"""JSON encodings of every structure the command line reads or writes."""

import hashlib
import json
from typing import Any

import numpy as np

from .adapters import ChuSpace, InformationSystem, ObjectFreeCategory, Quiver
from .consequence import LogicalStructure
from .core import GENERAL, NORMAL, FiniteAmst
from .errors import ArgumentError
from .topology import FiniteTopology
from .ultra import SetFamily


def _require(doc: Any, *keys):
    if not isinstance(doc, dict):
        raise ArgumentError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ArgumentError(f"missing keys: {', '.join(missing)}")


def _index(labels, label, what):
    try:
        return list(labels).index(str(label))
    except ValueError:
        raise ArgumentError(f"unknown {what} {label!r}") from None


def _mask(labels, members, what) -> int:
    return sum(1 << _index(labels, m, what) for m in members)


def _members(labels, mask: int) -> list:
    return [labels[i] for i in range(len(labels)) if mask >> i & 1]


def amst_to_json(amst: FiniteAmst) -> dict:
    return {
        "sentences": list(amst.sentence_labels),
        "models": list(amst.model_labels),
        "kind": amst.kind,
        "matrix": amst.matrix.astype(int).tolist(),
    }


def amst_from_json(doc: dict) -> FiniteAmst:
    _require(doc, "sentences", "models", "matrix")
    kind = doc.get("kind", NORMAL)
    if kind not in (NORMAL, GENERAL):
        raise ArgumentError(f"unknown kind {kind!r}")
    matrix = np.array(doc["matrix"], dtype=int)
    if matrix.size and not np.isin(matrix, (0, 1)).all():
        raise ArgumentError("matrix entries must be 0 or 1")
    return FiniteAmst(tuple(doc["sentences"]), tuple(doc["models"]), kind, matrix.astype(bool))


def logic_to_json(ls: LogicalStructure) -> dict:
    return {"sentences": list(ls.sentence_labels), "turnstile": ls.turnstile.astype(int).tolist()}


def logic_from_json(doc: dict) -> LogicalStructure:
    _require(doc, "sentences", "turnstile")
    n = len(doc["sentences"])
    table = np.array(doc["turnstile"], dtype=int)
    if table.shape != (1 << n, n) and not (n == 0 and table.size == 0):
        raise ArgumentError(f"turnstile must be {1 << n} x {n}")
    return LogicalStructure(tuple(doc["sentences"]), table.astype(bool))


def topology_to_json(top: FiniteTopology) -> dict:
    return top.to_dict()


def topology_from_json(doc: dict) -> FiniteTopology:
    _require(doc, "ground_size", "opens")
    return FiniteTopology(int(doc["ground_size"]), frozenset(doc["opens"]))


def family_to_json(fam: SetFamily) -> dict:
    return fam.to_dict()


def family_from_json(doc: dict) -> SetFamily:
    _require(doc, "index_size", "members")
    return SetFamily(int(doc["index_size"]), frozenset(doc["members"]))


def sequence_to_json(seq, index_size: int) -> dict:
    return {"index_size": index_size, "entries": list(seq)}


def sequence_from_json(doc: dict) -> tuple:
    _require(doc, "index_size", "entries")
    entries = tuple(int(e) for e in doc["entries"])
    if len(entries) != int(doc["index_size"]):
        raise ArgumentError("entries must have one model per index")
    return entries


def info_to_json(info: InformationSystem) -> dict:
    t = info.tokens
    return {
        "tokens": list(t),
        "con": [_members(t, x) for x in sorted(info.con)],
        "entail": [[_members(t, x), t[a]] for x, a in sorted(info.entail)],
    }


def info_from_json(doc: dict) -> InformationSystem:
    _require(doc, "tokens", "con", "entail")
    t = [str(x) for x in doc["tokens"]]
    con = frozenset(_mask(t, x, "token") for x in doc["con"])
    entail = frozenset((_mask(t, x, "token"), _index(t, a, "token")) for x, a in doc["entail"])
    return InformationSystem(tuple(t), con, entail)


def chu_to_json(chu: ChuSpace) -> dict:
    return {
        "points": list(chu.points),
        "attributes": list(chu.attributes),
        "alphabet": list(chu.alphabet),
        "matrix": [[chu.alphabet[k] for k in row] for row in chu.r],
    }


def chu_from_json(doc: dict) -> ChuSpace:
    _require(doc, "points", "attributes", "alphabet", "matrix")
    k = [str(x) for x in doc["alphabet"]]
    r = tuple(tuple(_index(k, v, "alphabet letter") for v in row) for row in doc["matrix"])
    return ChuSpace(tuple(doc["points"]), tuple(doc["attributes"]), tuple(k), r)


def quiver_to_json(q: Quiver) -> dict:
    edges = [
        {"name": e, "source": q.vertices[s], "target": q.vertices[t]} for e, s, t in zip(q.edges, q.source, q.target)
    ]
    return {"vertices": list(q.vertices), "edges": edges}


def quiver_from_json(doc: dict) -> Quiver:
    _require(doc, "vertices", "edges")
    v = [str(x) for x in doc["vertices"]]
    for e in doc["edges"]:
        _require(e, "name", "source", "target")
    return Quiver(
        tuple(v),
        tuple(e["name"] for e in doc["edges"]),
        tuple(_index(v, e["source"], "vertex") for e in doc["edges"]),
        tuple(_index(v, e["target"], "vertex") for e in doc["edges"]),
    )


def category_to_json(c: ObjectFreeCategory) -> dict:
    m = c.morphisms
    return {"morphisms": list(m), "compose": [[None if v is None else m[v] for v in row] for row in c.compose]}


def category_from_json(doc: dict) -> ObjectFreeCategory:
    _require(doc, "morphisms", "compose")
    m = [str(x) for x in doc["morphisms"]]
    table = tuple(tuple(None if v is None else _index(m, v, "morphism") for v in row) for row in doc["compose"])
    return ObjectFreeCategory(tuple(m), table)


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, so equal documents give equal bytes."""
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ": "), indent=2)


def digest(doc: Any) -> str:
    """Short content hash of a JSON-able document."""
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]
