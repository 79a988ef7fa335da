"""JSON documents.  Vertices are 1-based in files, rationals are "p/q" strings."""
from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any, Mapping, Optional

from . import linalg
from .errors import SchemeError, ValidationError
from .paths import Arrow, LabeledQuiver, PathLinComb, QuiverPresentation, Representation, parse_lincomb
from .quiver_core import MarkedQuiverSetting, make_setting
from .stability import SemiInvariantScheme, scheme_layout


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, doc: Any) -> None:
    FsPath(path).write_text(dumps(doc), encoding="utf-8")


def _get(doc: Mapping, key: str, kind: str):
    if not isinstance(doc, Mapping):
        raise ValidationError(f"{kind} document must be a JSON object")
    try:
        return doc[key]
    except KeyError:
        raise ValidationError(f"{kind} document lacks {key!r}") from None


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(f"{what} must be an integer, got {x!r}")
    return x


# settings

def setting_to_doc(s: MarkedQuiverSetting) -> dict:
    k = s.k
    arrows = [[i + 1, j + 1, s.arrows[i][j]] for i in range(k) for j in range(k) if s.arrows[i][j]]
    loops = [[v + 1, s.plain[v], s.marked[v]] for v in range(k) if s.plain[v] or s.marked[v]]
    return {"k": k, "dims": list(s.alpha), "arrows": arrows, "loops": loops}


def setting_from_doc(doc: Mapping) -> MarkedQuiverSetting:
    dims = [_int(e, "dims entry") for e in _get(doc, "dims", "setting")]
    if "k" in doc and _int(doc["k"], "k") != len(dims):
        raise ValidationError("k does not match the length of dims")
    try:
        arrows = [(_int(i, "vertex") - 1, _int(j, "vertex") - 1, _int(n, "count"))
                  for i, j, n in doc.get("arrows", [])]
        loops = [(_int(v, "vertex") - 1, _int(p, "count"), _int(m, "count"))
                 for v, p, m in doc.get("loops", [])]
    except (TypeError, ValueError):
        raise ValidationError("arrows are [from, to, count] and loops [vertex, plain, marked]") from None
    if any(min(a[:2]) < 0 for a in arrows) or any(v < 0 for v, _, _ in loops):
        raise ValidationError("vertices are numbered from 1")
    return make_setting(dims, arrows, loops)


# labeled quivers and presentations

def quiver_to_doc(q: LabeledQuiver) -> dict:
    return {"dims": list(q.dims),
            "arrows": [{"name": a.name, "from": a.source + 1, "to": a.target + 1, "marked": a.marked}
                       for a in q.arrows]}


def is_quiver_doc(doc) -> bool:
    arrows = doc.get("arrows") if isinstance(doc, Mapping) else None
    return bool(arrows) and all(isinstance(a, Mapping) for a in arrows)


def quiver_from_doc(doc: Mapping) -> LabeledQuiver:
    """Named-arrow document, or a plain setting document (arrows auto-named)."""
    if not is_quiver_doc(doc):
        return LabeledQuiver.from_setting(setting_from_doc(doc))
    dims = [_int(e, "dims entry") for e in _get(doc, "dims", "quiver")]
    arrows = []
    for a in doc["arrows"]:
        arrows.append(Arrow(str(_get(a, "name", "arrow")), _int(_get(a, "from", "arrow"), "from") - 1,
                            _int(_get(a, "to", "arrow"), "to") - 1, bool(a.get("marked", False))))
    return LabeledQuiver(tuple(dims), tuple(arrows))


def relation_to_doc(r: PathLinComb, label: Optional[str] = None) -> dict:
    doc = {"from": r.source + 1, "to": r.target + 1, "rel": str(r)}
    if label is not None:
        doc["label"] = label
    return doc


def relations_from_doc(q: LabeledQuiver, docs) -> tuple[PathLinComb, ...]:
    out = []
    for d in docs or []:
        out.append(parse_lincomb(q, str(_get(d, "rel", "relation")),
                                 _int(_get(d, "from", "relation"), "from") - 1,
                                 _int(_get(d, "to", "relation"), "to") - 1))
    return tuple(out)


def presentation_to_doc(p: QuiverPresentation) -> dict:
    doc = quiver_to_doc(p.quiver)
    doc["relations"] = [relation_to_doc(r, lb) for r, lb in zip(p.relations, p.labels)]
    return doc


def presentation_from_doc(doc: Mapping) -> QuiverPresentation:
    q = quiver_from_doc(doc)
    rels_doc = doc.get("relations", [])
    rels = relations_from_doc(q, rels_doc)
    labels = tuple(str(d.get("label", "I")) for d in rels_doc)
    return QuiverPresentation(q, rels, labels)


# representations

def matrix_to_doc(m) -> list:
    return [[linalg.format_fraction(x) for x in row] for row in m]


def rep_to_doc(rep: Representation) -> dict:
    doc = quiver_to_doc(rep.quiver)
    doc["matrices"] = {name: matrix_to_doc(m) for name, m in rep.matrices.items()}
    if rep.relations:
        doc["relations"] = [relation_to_doc(r) for r in rep.relations]
    return doc


def rep_from_doc(doc: Mapping) -> Representation:
    q = quiver_from_doc(doc)
    mats = _get(doc, "matrices", "representation")
    if not isinstance(mats, Mapping):
        raise ValidationError("matrices must map arrow names to row lists")
    parsed = {}
    for name, rows in mats.items():
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValidationError(f"matrix for {name} must be a list of rows")
        parsed[name] = linalg.matrix(rows)
    return Representation(q, parsed, relations_from_doc(q, doc.get("relations")))


# semi-invariant schemes

def _entry_from_doc(q: LabeledQuiver, entry, source: int, target: int) -> PathLinComb:
    if isinstance(entry, str):
        return parse_lincomb(q, entry, source, target)
    if not isinstance(entry, list):
        raise ValidationError(f"scheme entries are strings or term lists, got {entry!r}")
    terms = []
    for t in entry:
        path = tuple(str(a) for a in _get(t, "path", "term"))
        terms.append((linalg.as_fraction(str(t.get("coef", "1"))), path))
    lc = PathLinComb(source, target, tuple(terms))
    lc.validate(q)
    return lc


def scheme_from_doc(doc: Mapping, quiver: Optional[LabeledQuiver] = None) -> SemiInvariantScheme:
    """``{theta, l, l_mid, blocks}``; a term is ``{coef, path}`` with the path in traversal order."""
    if "arrows" in doc:
        quiver = quiver_from_doc(doc)
    if quiver is None:
        raise ValidationError("scheme document needs a quiver (dims and arrows) or a companion document")
    theta = [_int(t, "theta entry") for t in _get(doc, "theta", "scheme")]
    l = _int(doc.get("l", 1), "l")
    l_mid = [_int(m, "l_mid entry") for m in doc.get("l_mid", [])]
    blocks = _get(doc, "blocks", "scheme")
    rows, cols = scheme_layout(quiver.k, theta, l, l_mid)
    if len(blocks) != len(rows) or any(len(line) != len(cols) for line in blocks):
        raise SchemeError(f"blocks must form a {len(rows)} x {len(cols)} grid")
    entries = tuple(tuple(_entry_from_doc(quiver, e, cols[c], rows[r]) for c, e in enumerate(line))
                    for r, line in enumerate(blocks))
    return SemiInvariantScheme(quiver, tuple(theta), entries, l, tuple(l_mid))


def scheme_to_doc(s: SemiInvariantScheme) -> dict:
    doc = quiver_to_doc(s.quiver)
    doc.update({
        "theta": list(s.theta),
        "l": s.l,
        "l_mid": list(s.l_mid),
        "blocks": [[[{"coef": linalg.format_fraction(c), "path": list(p)} for c, p in e.terms] for e in row]
                   for row in s.entries],
    })
    return doc
