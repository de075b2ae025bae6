"""JSON interchange formats and stable serialisation.

One format per artifact kind; all files are UTF-8 JSON.  Writers emit sorted
keys and two-space indentation so identical inputs always produce identical
bytes.  Identity composites are omitted on write (the validator restores
them), which roughly halves category files.
"""

from __future__ import annotations

import hashlib
import json
import os

from .core import FinCat, CategoryError, validate_category
from .functors import FinFunctor, validate_functor
from .groups import GroupTable, validate_group
from .indexed import IndexedCat, validate_indexed
from .theorem import WeakReversibilityWitness


class InputFormatError(CategoryError):
    pass


def stable_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


def category_to_json(C: FinCat) -> dict:
    composition = [
        {"first": f, "then": g, "equals": h}
        for (f, g), h in sorted(C.table.items())
        if not (C.is_identity(f) or C.is_identity(g))
    ]
    return {
        "objects": list(C.objects),
        "morphisms": [
            {"id": m, "src": C.src[m], "tgt": C.tgt[m]} for m in C.morphisms
        ],
        "identities": {x: C.identity[x] for x in C.objects},
        "composition": composition,
    }


def category_from_json(data: dict) -> FinCat:
    try:
        morphisms = [(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]]
        composition = {
            (entry["first"], entry["then"]): entry["equals"]
            for entry in data.get("composition", [])
        }
        return validate_category(
            data["objects"], morphisms, data["identities"], composition
        )
    except (KeyError, TypeError) as exc:
        raise InputFormatError("malformed category file: %r" % (exc,)) from exc


def functor_to_json(F: FinFunctor, inline: bool = True) -> dict:
    out = {
        "on_objects": dict(sorted(F.on_objects.items())),
        "on_morphisms": dict(sorted(F.on_morphisms.items())),
    }
    if inline:
        out["source"] = category_to_json(F.source)
        out["target"] = category_to_json(F.target)
    return out


def group_to_json(G: GroupTable) -> dict:
    els = list(G.elements)
    return {
        "elements": els,
        "mult": [[G.mul(a, b) for b in els] for a in els],
        "unit": G.unit,
    }


def group_from_json(data: dict) -> GroupTable:
    try:
        els = [str(e) for e in data["elements"]]
        mult = {}
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                mult[(a, b)] = str(data["mult"][i][j])
        return validate_group(els, mult, data.get("unit"))
    except (KeyError, TypeError, IndexError) as exc:
        raise InputFormatError("malformed group file: %r" % (exc,)) from exc


def indexed_to_json(M: IndexedCat) -> dict:
    for f in M.base.morphisms:
        if "|" in f:
            raise InputFormatError(
                "base morphism id %r contains '|', which the compositor "
                "key format reserves" % f
            )
    return {
        "base": category_to_json(M.base),
        "fibers": {x: category_to_json(M.fiber_at(x)) for x in M.base.objects},
        "arrows": {
            f: {
                "on_objects": dict(sorted(M.arrow_at(f).on_objects.items())),
                "on_morphisms": dict(sorted(M.arrow_at(f).on_morphisms.items())),
            }
            for f in M.base.morphisms
        },
        "compositors": {
            "%s|%s" % (f, g): dict(sorted(M.mu(f, g).components.items()))
            for (f, g) in sorted(M.compositors)
        },
        "unitors": {
            x: dict(sorted(M.eta(x).components.items())) for x in M.base.objects
        },
    }


class Loader:
    """Resolves by-path or inline references inside artifact files."""

    def __init__(self, root: str = "."):
        self.root = root

    def _resolve(self, ref, parser):
        if isinstance(ref, str):
            path = os.path.join(self.root, ref)
            with open(path, "r", encoding="utf-8") as fh:
                return parser(json.load(fh))
        if isinstance(ref, dict):
            return parser(ref)
        raise InputFormatError("expected a path or an inline object")

    def category(self, ref) -> FinCat:
        return self._resolve(ref, category_from_json)

    def group(self, ref) -> GroupTable:
        return self._resolve(ref, group_from_json)

    def functor(self, data: dict) -> FinFunctor:
        try:
            source = self.category(data["source"])
            target = self.category(data["target"])
            return validate_functor(
                source, target, data["on_objects"], data["on_morphisms"]
            )
        except KeyError as exc:
            raise InputFormatError("malformed functor file: %r" % (exc,)) from exc

    def indexed(self, data: dict) -> IndexedCat:
        try:
            base = self.category(data["base"])
            fibers = {x: self.category(ref) for x, ref in data["fibers"].items()}
            arrows = {}
            for f, tab in data["arrows"].items():
                if f not in base.src:
                    raise InputFormatError("arrow for unknown morphism %r" % f)
                src_fib = fibers[base.tgt[f]]
                tgt_fib = fibers[base.src[f]]
                arrows[f] = validate_functor(
                    src_fib, tgt_fib, tab["on_objects"], tab["on_morphisms"]
                )
            compositors = None
            if "compositors" in data:
                compositors = {}
                for key, comps in data["compositors"].items():
                    if key.count("|") != 1:
                        raise InputFormatError("bad compositor key %r" % key)
                    f, g = key.split("|")
                    compositors[(f, g)] = dict(comps)
            unitors = data.get("unitors")
            return validate_indexed(base, fibers, arrows, compositors, unitors)
        except KeyError as exc:
            raise InputFormatError("malformed indexed file: %r" % (exc,)) from exc

    def witness(self, M: IndexedCat, data: dict) -> WeakReversibilityWitness:
        try:
            pushforwards = {}
            for f, tab in data["pushforwards"].items():
                if f not in M.base.src:
                    raise InputFormatError("pushforward for unknown morphism %r" % f)
                x, y = M.base.src[f], M.base.tgt[f]
                pushforwards[f] = validate_functor(
                    M.fiber_at(x), M.fiber_at(y), tab["on_objects"], tab["on_morphisms"]
                )
            units = {f: dict(comps) for f, comps in data["units"].items()}
            return WeakReversibilityWitness(pushforwards, units)
        except KeyError as exc:
            raise InputFormatError("malformed witness file: %r" % (exc,)) from exc


def witness_to_json(w: WeakReversibilityWitness) -> dict:
    return {
        "pushforwards": {
            f: {
                "on_objects": dict(sorted(F.on_objects.items())),
                "on_morphisms": dict(sorted(F.on_morphisms.items())),
            }
            for f, F in sorted(w.pushforwards.items())
        },
        "units": {f: dict(sorted(c.items())) for f, c in sorted(w.units.items())},
    }
