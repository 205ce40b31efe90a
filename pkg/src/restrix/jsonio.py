"""JSON interchange for every wire type.

Tables use 0-based indices throughout.  A biunary algebra is
``{"size", "one", "mul", "star", "plus"}`` with an optional ``"inv"``;
a plain monoid omits the unary tables.  Munn trees store vertices as
reduced words in the apostrophe syntax (``"aba'"``).
"""

from __future__ import annotations

import json

from .core import FiniteBiunary, FiniteMonoid, FiniteSemilattice
from .errors import InputError
from .freerestr import FRPair
from .munn import MunnTree, format_word, parse_word, reduce_word
from .partialbij import PartialBijection
from .premorph import FinitePremorphism
from .presentations import PresentedExpansion


def dumps(data):
    """Canonical single-line JSON: sorted keys, no whitespace."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _expect(data, key, kind=None):
    if key not in data:
        raise InputError(f"missing field {key!r}")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return value


def algebra_to_json(S):
    data = {"size": S.size, "one": S.one, "mul": [list(r) for r in S.mul]}
    if isinstance(S, FiniteBiunary):
        data["star"] = list(S.star)
        data["plus"] = list(S.plus)
        if S.inv is not None:
            data["inv"] = list(S.inv)
    return data


def monoid_from_json(data):
    mul = _expect(data, "mul", list)
    one = _expect(data, "one", int)
    if "size" in data and data["size"] != len(mul):
        raise InputError("declared size does not match the table")
    return FiniteMonoid(mul, one)


def biunary_from_json(data):
    mul = _expect(data, "mul", list)
    one = _expect(data, "one", int)
    if "size" in data and data["size"] != len(mul):
        raise InputError("declared size does not match the table")
    star = _expect(data, "star", list)
    plus = _expect(data, "plus", list)
    return FiniteBiunary(mul, star, plus, one, inv=data.get("inv"))


def algebra_from_json(data):
    """Biunary if star/plus present, else a plain monoid."""
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "star" in data or "plus" in data:
        return biunary_from_json(data)
    return monoid_from_json(data)


def semilattice_to_json(Y: FiniteSemilattice):
    return {"size": Y.size, "top": Y.top, "meet": [list(r) for r in Y.meet]}


def semilattice_from_json(data):
    return FiniteSemilattice(_expect(data, "meet", list), _expect(data, "top", int))


def tree_to_json(t: MunnTree):
    return {
        "alphabet": "".join(t.alphabet),
        "vertices": [format_word(v) for v in t.sorted_vertices()],
        "end": format_word(t.end),
    }


def tree_from_json(data):
    vertices = _expect(data, "vertices", list)
    end = _expect(data, "end", str)
    alphabet = data.get("alphabet")
    if alphabet is None:
        letters = set()
        for v in vertices:
            letters.update(c for c, _ in parse_word(v))
        alphabet = "".join(sorted(letters)) or "a"
    parsed = [reduce_word(parse_word(v)) for v in vertices]
    return MunnTree(tuple(alphabet), frozenset(parsed), reduce_word(parse_word(end)))


def frpair_to_json(p: FRPair):
    return {"E": tree_to_json(p.E), "m": p.m}


def frpair_from_json(data):
    return FRPair(tree_from_json(_expect(data, "E", dict)), _expect(data, "m", str))


def premorphism_to_json(phi: FinitePremorphism):
    return {
        "source": algebra_to_json(phi.source),
        "Y": semilattice_to_json(phi.lattice),
        "map": [
            {"dom": [x for x, _ in f.pairs], "val": [y for _, y in f.pairs]}
            for f in phi.maps
        ],
    }


def premorphism_from_json(data):
    source = monoid_from_json(_expect(data, "source", dict))
    Y = semilattice_from_json(_expect(data, "Y", dict))
    maps = []
    for entry in _expect(data, "map", list):
        dom = _expect(entry, "dom", list)
        val = _expect(entry, "val", list)
        if len(dom) != len(val):
            raise InputError("dom and val must have equal length")
        maps.append(PartialBijection(Y.size, tuple(zip(dom, val))))
    return FinitePremorphism(source, Y, tuple(maps))


def term_to_json(term):
    op = term[0]
    if op == "one":
        return ["one"]
    if op == "gen":
        return ["gen", term[1]]
    if op in ("star", "plus", "inv"):
        return [op, term_to_json(term[1])]
    if op == "mul":
        return ["mul", term_to_json(term[1]), term_to_json(term[2])]
    raise InputError(f"unknown operation {op!r}")


def term_from_json(data):
    if not (isinstance(data, list) and data and isinstance(data[0], str)):
        raise InputError(f"bad relation term {data!r}")
    op = data[0]
    if op == "one":
        return ("one",)
    if op == "gen":
        if len(data) != 2 or not isinstance(data[1], int):
            raise InputError(f"bad generator term {data!r}")
        return ("gen", data[1])
    if op in ("star", "plus", "inv"):
        if len(data) != 2:
            raise InputError(f"bad unary term {data!r}")
        return (op, term_from_json(data[1]))
    if op == "mul":
        if len(data) != 3:
            raise InputError(f"bad product term {data!r}")
        return ("mul", term_from_json(data[1]), term_from_json(data[2]))
    raise InputError(f"unknown operation {op!r}")


def presentation_from_json(data, default_bound=6):
    monoid = monoid_from_json(_expect(data, "monoid", dict))
    extra = []
    for entry in data.get("extra", ()):
        extra.append(
            (
                _expect(entry, "m", int),
                term_from_json(_expect(entry, "e", list)),
                term_from_json(_expect(entry, "f", list)),
            )
        )
    return PresentedExpansion(
        monoid,
        data.get("relations", "pm"),
        data.get("signature", "restriction"),
        tuple(extra),
        data.get("bound", default_bound),
    )


def presentation_to_json(pres: PresentedExpansion):
    return {
        "monoid": algebra_to_json(pres.monoid),
        "relations": pres.relations,
        "signature": pres.signature,
        "extra": [
            {"m": m, "e": term_to_json(e), "f": term_to_json(f)}
            for m, e, f in pres.extra
        ],
        "bound": pres.bound,
    }
