"""Text and JSON file formats: ``.pres`` presentations, group and module documents, subgroup selectors."""

from __future__ import annotations

import json
import re
from typing import Any

from ..errors import DomainError, ParseError, UsageError
from ..fplin import is_prime
from ..fpgmod import FpGModule
from ..gscert import Presentation
from ..pgroups import FiniteGroup, Subgroup, build, frattini_p, normal_closure, subgroup_generated
from ..words import format_word, parse_word, split_top_level

FORMAT_VERSION = 1

_KEYWORDS = ("p", "gens", "rels")
_NAME = re.compile(r"[A-Za-z][0-9_]*$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_presentation(text: str) -> Presentation:
    """Parse the ``.pres`` text format.

    ::

        p 2
        gens x:2 y
        rels [x,y], x^4
             y^8          # continuation lines belong to the last ``rels``

    Relators on one line are separated by top-level commas.
    """
    p: int | None = None
    names: list[str] = []
    weights: dict[str, int] = {}
    rel_sources: list[tuple[int, int, str]] = []  # (line, column, text)
    gens_seen = False
    in_rels = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        head = stripped.split(None, 1)[0]
        rest = line[indent + len(head):]
        rest_col = indent + len(head) + 1  # 1-based column of rest[0]
        if head not in _KEYWORDS:
            if in_rels:
                rel_sources.append((lineno, indent + 1, stripped))
                continue
            raise ParseError(f"unknown directive {head!r}", lineno, indent + 1, _KEYWORDS)
        in_rels = head == "rels"
        if head == "p":
            if p is not None:
                raise ParseError("duplicate 'p' line", lineno, indent + 1)
            tok = rest.strip()
            if not re.fullmatch(r"\d+", tok) or not is_prime(int(tok)):
                col = rest_col + len(rest) - len(rest.lstrip())
                raise ParseError(f"expected a prime after 'p', got {tok!r}", lineno, col, ["prime"])
            p = int(tok)
        elif head == "gens":
            if gens_seen:
                raise ParseError("duplicate 'gens' line", lineno, indent + 1)
            gens_seen = True
            for m in re.finditer(r"\S+", rest):
                col = rest_col + m.start()
                name, _, w = m.group().partition(":")
                if not _NAME.match(name):
                    raise ParseError(f"invalid generator name {name!r}", lineno, col, ["name"])
                if name in weights:
                    raise ParseError(f"duplicate generator {name!r}", lineno, col)
                weight = 1
                if w:
                    if not re.fullmatch(r"-?\d+", w):
                        raise ParseError(f"invalid weight {w!r}", lineno, col + len(name) + 1, ["integer"])
                    weight = int(w)
                    if weight < 1:
                        raise ParseError(f"weight of {name!r} must be >= 1", lineno, col + len(name) + 1)
                names.append(name)
                weights[name] = weight
        else:
            if rest.strip():
                rel_sources.append((lineno, rest_col, rest))
    if p is None:
        raise ParseError("missing 'p <prime>' line", 1, 1, ["p"])
    if not gens_seen:
        raise ParseError("missing 'gens' line", 1, 1, ["gens"])
    relators = []
    for lineno, col, src in rel_sources:
        for off, piece in split_top_level(src):
            lead = col + off + len(piece) - len(piece.lstrip())
            if not piece.strip():
                raise ParseError("empty relator", lineno, lead, ["word"])
            w = parse_word(piece, names, line=lineno, column=col + off).reduced()
            if w.is_trivial():
                raise ParseError("relator is freely trivial", lineno, lead)
            relators.append(w)
    return Presentation.build(p, names, relators, weights)


def serialize_presentation(pres: Presentation) -> str:
    gens = " ".join(n if w == 1 else f"{n}:{w}" for n, w in zip(pres.alphabet.names, pres.default_weights.weights))
    lines = [f"p {pres.p}", f"gens {gens}"]
    for r in pres.relators:
        lines.append(f"rels {format_word(r)}")
    return "\n".join(lines) + "\n"


# groups

def parse_builtin(spec: str) -> FiniteGroup:
    """``name:param,param`` (e.g. ``dihedral:8``, ``free_cmea:2,2``)."""
    name, _, params = spec.partition(":")
    try:
        values = [int(x) for x in params.split(",")] if params else []
    except ValueError:
        raise UsageError(f"builtin parameters must be integers: {spec!r}") from None
    return build(name, values)


def group_to_json(G: FiniteGroup) -> dict:
    if G.origin:
        return {"format": FORMAT_VERSION, **G.origin}
    return {"format": FORMAT_VERSION, "label": G.label, "order": G.order, "table": G.table.tolist()}


def group_from_json(doc: Any) -> FiniteGroup:
    _check_format(doc, "group")
    if "builtin" in doc:
        return build(doc["builtin"], doc.get("params", []))
    if "table" not in doc:
        raise UsageError("group document needs 'builtin' or 'table'")
    G = FiniteGroup(doc["table"], doc.get("label", "G"))
    if "order" in doc and doc["order"] != G.order:
        raise UsageError(f"declared order {doc['order']} does not match table size {G.order}")
    return G


def _check_format(doc: Any, what: str):
    if not isinstance(doc, dict):
        raise UsageError(f"{what} document must be a JSON object")
    if doc.get("format") != FORMAT_VERSION:
        raise UsageError(f"{what} document must declare format {FORMAT_VERSION}")


# modules

def module_to_json(M: FpGModule) -> dict:
    return {
        "format": FORMAT_VERSION,
        "p": M.p,
        "group": group_to_json(M.group),
        "generators": list(M.generators),
        "dim": M.dim,
        "matrices": [m.to_lists() for m in M.matrices],
    }


def module_from_json(doc: Any) -> FpGModule:
    _check_format(doc, "module")
    try:
        G = group_from_json(doc["group"])
        return FpGModule(doc["p"], G, doc["generators"], doc["matrices"], doc.get("dim"))
    except KeyError as exc:
        raise UsageError(f"module document is missing {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from None


# subgroup selectors

def select_subgroup(G: FiniteGroup, selector: str) -> Subgroup:
    """Resolve a subgroup selector.

    ``whole``, ``trivial``, ``frattini``, ``center``, ``derived``, a stored
    name such as ``base``, ``cyclic<n>`` (the cyclic subgroup generated by the
    first element of order ``n``), or ``gen:i,j,...`` (subgroup generated by
    the listed element indices).
    """
    s = selector.strip()
    if s == "whole":
        return G.whole()
    if s == "trivial":
        return G.trivial()
    if s == "frattini":
        return frattini_p(G)
    if s == "center":
        return Subgroup(G, [z for z in range(G.order) if all(G.mul(z, g) == G.mul(g, z) for g in G.generators)])
    if s == "derived":
        return normal_closure(G, [G.commutator(a, b) for a in G.generators for b in G.generators])
    m = re.fullmatch(r"cyclic(\d+)", s)
    if m:
        n = int(m.group(1))
        for x in range(G.order):
            if G.element_orders[x] == n:
                return subgroup_generated(G, [x])
        raise DomainError(f"{G.label} has no element of order {n}")
    if s.startswith("gen:"):
        try:
            idx = [int(x) for x in s[4:].split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad element list in selector {selector!r}") from None
        if any(not 0 <= i < G.order for i in idx):
            raise UsageError(f"element index out of range in {selector!r}")
        return subgroup_generated(G, idx)
    if s in G.named:
        return G.named_subgroup(s)
    raise UsageError(f"unknown subgroup selector {selector!r}")


def subgroup_to_json(H: Subgroup) -> dict:
    return {"order": H.order, "index": H.index, "elements": list(H.elements)}
