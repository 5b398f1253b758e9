"""Named groups: built-in constructors and the bundled catalog.

Names understood by :func:`build`: ``1``, ``C<n>``, ``D<2n>`` (dihedral of
order 2n), ``S<n>``, ``A<n>``, ``Q8``, ``V4`` and direct products of those
joined with ``x`` (``C2xC4``).  User groups come from JSON records
``{"name", "degree", "generators"}`` and are merged over the catalog.
"""
from __future__ import annotations

import json
import re
import threading
from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .grp import Group, direct_product, from_permutations

_user: dict[str, dict] = {}
_built: dict[str, Group] = {}
_lock = threading.RLock()


def _cycle(n: int) -> list[int]:
    return [(i + 1) % n for i in range(n)]


def _reflection(n: int) -> list[int]:
    return [(-i) % n for i in range(n)]


def _transposition(n: int, a: int, b: int) -> list[int]:
    p = list(range(n))
    p[a], p[b] = b, a
    return p


def _three_cycle(n: int, a: int, b: int, c: int) -> list[int]:
    p = list(range(n))
    p[a], p[b], p[c] = b, c, a
    return p


def _atom(name: str) -> Group:
    if name in _user:
        rec = _user[name]
        return from_permutations(rec["degree"], rec["generators"], name=name)
    if name in ("1", "C1"):
        return from_permutations(1, [], name="1")
    if name == "V4":
        return from_permutations(4, [[1, 0, 3, 2], [2, 3, 0, 1]], name="V4")
    if name == "Q8":
        # left regular representation of the quaternion group
        i = [2, 3, 1, 0, 6, 7, 5, 4]
        j = [4, 5, 7, 6, 1, 0, 2, 3]
        return from_permutations(8, [i, j], name="Q8")
    m = re.fullmatch(r"([CDSA])(\d+)", name)
    if not m:
        raise ValidationError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ValidationError(f"unknown group name {name!r}")
    if kind == "C":
        return from_permutations(n, [_cycle(n)] if n > 1 else [], name=name if n > 1 else "1")
    if kind == "D":
        if n % 2:
            raise ValidationError(f"dihedral groups have even order: {name!r}")
        k = n // 2
        if k == 1:
            return from_permutations(2, [[1, 0]], name=name)
        if k == 2:
            return from_permutations(4, [[1, 0, 3, 2], [2, 3, 0, 1]], name=name)
        return from_permutations(k, [_cycle(k), _reflection(k)], name=name)
    if kind == "S":
        if n == 1:
            return from_permutations(1, [], name=name)
        gens = [_cycle(n), _transposition(n, 0, 1)] if n > 2 else [[1, 0]]
        return from_permutations(n, gens, name=name)
    # alternating
    if n < 3:
        return from_permutations(max(n, 1), [], name=name)
    return from_permutations(n, [_three_cycle(n, 0, 1, k) for k in range(2, n)], name=name)


def build(name: str) -> Group:
    """The group with the given name (memoised: equal names give the same object)."""
    name = name.strip()
    with _lock:
        got = _built.get(name)
        if got is None:
            got = _built[name] = _construct(name)
    return got


def _construct(name: str) -> Group:
    if name in _user:
        return _atom(name)
    parts = name.split("x")
    if len(parts) == 1:
        return _atom(name)
    G = _atom(parts[0])
    for p in parts[1:]:
        G = direct_product(G, _atom(p), name=None).group
    G.name = name
    return G


def load_group_file(path: str | Path) -> list[str]:
    """Register user groups from a JSON file; returns their names in file order."""
    data = json.loads(Path(path).read_text())
    records = data["groups"] if isinstance(data, dict) else data
    names = []
    for rec in records:
        if not {"name", "degree", "generators"} <= set(rec):
            raise ValidationError("group records need name, degree and generators")
        from_permutations(int(rec["degree"]), rec["generators"], name=rec["name"])  # validates
        _user[rec["name"]] = {"degree": int(rec["degree"]), "generators": rec["generators"]}
        names.append(rec["name"])
    with _lock:
        for n in names:
            _built.pop(n, None)
    return names


def builtin_names() -> list[str]:
    text = resources.files("green_ideals").joinpath("data/catalog.json").read_text()
    return json.loads(text)["groups"]


def catalog(max_order: int | None = None, extra: list[str] | None = None) -> list[Group]:
    """Catalog groups (built-ins then user groups), sorted by order, stable."""
    names = builtin_names() + [n for n in (extra or list(_user)) if n not in builtin_names()]
    groups = [build(n) for n in names]
    if max_order is not None:
        groups = [g for g in groups if g.order <= max_order]
    return sorted(groups, key=lambda g: g.order)


def identify(G: Group, candidates: list[Group] | None = None) -> str | None:
    """Name of an isomorphic catalog group, if any."""
    from .grp import are_isomorphic

    for H in candidates if candidates is not None else catalog(G.order):
        if H.order == G.order and are_isomorphic(G, H) is not None:
            return H.name
    return None


def dedupe(names: list[str]) -> list[str]:
    """Append ``_1, _2, ...`` to names that occur more than once."""
    counts: dict[str, int] = {}
    for n in names:
        counts[n] = counts.get(n, 0) + 1
    seen: dict[str, int] = {}
    out = []
    for n in names:
        if counts[n] == 1:
            out.append(n)
        else:
            seen[n] = seen.get(n, 0) + 1
            out.append(f"{n}_{seen[n]}")
    return out


def subgroup_class_labels(G: Group) -> list[str]:
    """One label per subgroup class: an isomorphic catalog name, made unique."""
    def compute():
        names = []
        for c in range(len(G.subgroup_classes())):
            H = G.class_rep(c)
            if H.order == 1:
                names.append("1")
            elif H.order == G.order:
                names.append(G.name)
            else:
                sub = G.subgroup_group(H)[0]
                names.append(identify(sub) or f"H{H.order}")
        return dedupe(names)

    return G._memo("class_labels", compute)
