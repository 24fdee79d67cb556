"""Named arrangements and plinth presets.

Base entries are small rational arrangements.  Every derived entry is
obtained by running the chain construction on a base entry and choosing a
root of its closure polynomial, so no algebraic coordinates are stored here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .combinat import Arrangement, LineCombinatorics, compute_combinatorics
from .nfield import QQ
from .plinth import Plinth
from .splitpoly import SplitCertificate, split


class UnknownName(KeyError):
    pass


class BadParams(ValueError):
    pass


@dataclass
class Preset:
    support: tuple                   # line labels
    pivots: tuple                    # tuples of line labels naming each pivot
    base: tuple | None = None        # pinned parameter base (B0, B1)

    def plinth(self, c: LineCombinatorics) -> Plinth:
        return Plinth.from_labels(c, self.support, self.pivots)


@dataclass
class CatalogEntry:
    name: str
    params: tuple
    arrangement: Arrangement
    presets: dict = field(default_factory=dict)
    profile: dict = field(default_factory=dict)      # expected multiplicity profile
    notes: str = ""

    @property
    def lattice(self) -> LineCombinatorics:
        return compute_combinatorics(self.arrangement)

    def plinth(self, preset: str) -> Plinth:
        return self.presets[preset].plinth(self.lattice)

    def profile_matches(self) -> bool:
        return self.lattice.multiplicity_profile() == self.profile

    @property
    def title(self) -> str:
        return self.name if not self.params else f"{self.name}({','.join(map(str, self.params))})"


def _lines(*rows):
    return [[QQ.coerce(x) for x in r] for r in rows]


_BASE5 = _lines((0, 0, 1), (1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -1))

# Rybnikov base: L6, L7 pass through [1:RYB_SLOPE:0] on L1 and are otherwise
# generic with respect to L4, L5.  The witness was found by a small search and
# is validated by the polygon checks of both second-step roots.
RYB_SLOPE = 2
RYB_OFFSETS = (2, 3)

MACLANE = Preset(("L1", "L2", "L4"), (("L3", "L4"), ("L3", "L5"), ("L2", "L5")),
                 ((1, 0, 0), (0, -1, 0)))
FALK_STURMFELS = Preset(("L1", "L2", "L5"), (("L3", "L4"), ("L1", "L6"), ("L2", "L4", "L6")),
                        ((1, 0, 0), (0, 1, 0)))
NAZIR_YOSHINAGA = Preset(("L1", "L2", "L4"), (("L3", "L4"), ("L1", "L6"), ("L2", "L5")),
                         ((1, 0, 0), (0, 1, 0)))
QUADRILATERAL = Preset(("L2", "L4", "L3", "L5"),
                       (("L3", "L7"), ("L1", "L6", "L7"), ("L2", "L4", "L6"), ("L3", "L4")),
                       ((0, 1, 0), (0, 0, 1)))
RYB_PSI1 = Preset(MACLANE.support, MACLANE.pivots, MACLANE.base)
RYB_PSI2 = Preset(("L1", "L2", "L6"), (("L3", "L6"), ("L3", "L7"), ("L2", "L7")))

FIG1_RIGID = Preset(("L1", "L2", "L5"), (("L2", "L6"), ("L3", "L6"), ("L3", "L5")))
FIG1_LOOSE = Preset(("L1", "L2", "L5"), (("L4", "L6"), ("L3", "L6"), ("L3", "L5")))

# support, pivots of each row of the MacLane plinth table
TABLE1 = (
    ((1, 2, 4), ((3, 4, 6), (1, 6, 8), (2, 5, 8))),
    ((1, 2, 4), ((4, 7, 8), (1, 6, 8), (2, 6, 7))),
    ((1, 2, 4), ((4, 7, 8), (1, 7), (2, 5, 8))),
    ((1, 2, 5), ((5, 6), (1, 6, 8), (2, 4))),
    ((1, 2, 5), ((3, 5, 7), (1, 6, 8), (2, 6, 7))),
    ((1, 2, 5), ((5, 6), (1, 7), (2, 6, 7))),
)


def table1_preset(k: int) -> Preset:
    if not 1 <= k <= len(TABLE1):
        raise BadParams(f"table row must be in 1..{len(TABLE1)}")
    S, P = TABLE1[k - 1]
    return Preset(tuple(f"L{s}" for s in S), tuple(tuple(f"L{x}" for x in p) for p in P))


def _base_entry(name: str) -> CatalogEntry:
    if name == "base5":
        return CatalogEntry("base5", (), Arrangement(_BASE5), {"maclane": MACLANE}, {2: 4, 3: 2},
                            "two triple points on L1")
    if name == "base6":
        return CatalogEntry("base6", (), Arrangement(_BASE5 + _lines((1, -1, 0))),
                            {"falk_sturmfels": FALK_STURMFELS, "nazir_yoshinaga": NAZIR_YOSHINAGA},
                            {2: 3, 3: 4})
    if name == "base7quad":
        return CatalogEntry("base7quad", (), Arrangement(_BASE5 + _lines((1, -1, 0), (1, -1, 1))),
                            {"quadrilateral": QUADRILATERAL}, {2: 3, 3: 6})
    if name == "fig1":
        rows = _lines((1, 0, 0), (1, 0, -1), (1, 0, -2), (1, 0, -3), (0, 1, 0), (1, -1, 0))
        return CatalogEntry("fig1", (), Arrangement(rows), {"rigid": FIG1_RIGID, "loose": FIG1_LOOSE},
                            {2: 6, 3: 1, 4: 1}, "quadruple point at infinity, triple point at the origin")
    if name == "base7ryb":
        s = RYB_SLOPE
        rows = _lines((s, -1, RYB_OFFSETS[0]), (s, -1, RYB_OFFSETS[1]))
        return CatalogEntry("base7ryb", (), Arrangement(_BASE5 + rows),
                            {"psi1": RYB_PSI1, "psi2": RYB_PSI2}, {2: 12, 3: 3},
                            f"L6, L7 through [1:{s}:0] with offsets {RYB_OFFSETS}")
    raise UnknownName(name)


def _root_index(i) -> int:
    if i not in (1, 2):
        raise BadParams(f"root index must be 1 or 2, got {i!r}")
    return i - 1


def _new_labels(n, r):
    return [f"L{n + k + 1}" for k in range(r)]


def _pick(cert: SplitCertificate, i: int, order=None) -> Arrangement:
    if not cert.arrangements:
        raise BadParams(f"construction gave verdict {cert.verdict}")
    a = cert.arrangements[_root_index(i)]
    if order is None:
        return a
    n = len(cert.base_arrangement)
    # reorder the new lines, keeping labels L(n+1).. in place
    idx = list(range(n)) + [n + k for k in order]
    return Arrangement([a.lines[k] for k in idx], a.labels, a.tower)


@lru_cache(maxsize=None)
def split_preset(base: str, preset: str) -> SplitCertificate:
    """Split certificate of a named preset on a base entry."""
    e = _base_entry(base)
    pr = e.presets[preset]
    a = e.arrangement
    return split(a, pr.plinth(e.lattice), pr.base, labels=_new_labels(len(a), len(pr.support)))


@lru_cache(maxsize=None)
def _maclane(i: int) -> Arrangement:
    return _pick(split_preset("base5", "maclane"), i)


@lru_cache(maxsize=None)
def _ryb_step(i: int) -> Arrangement:
    return _pick(split_preset("base7ryb", "psi1"), i)


@lru_cache(maxsize=None)
def second_split(name: str, i: int, k: int | None = None) -> SplitCertificate:
    """Second-step split on ``maclane(i)`` (plinth table row ``k``) or on ``rybnikov_step(i)``."""
    if name == "ml_table1":
        a, pr = _maclane(i), table1_preset(k)
    elif name == "rybnikov":
        a, pr = _ryb_step(i), RYB_PSI2
    else:
        raise UnknownName(name)
    c = compute_combinatorics(a)
    return split(a, pr.plinth(c), pr.base, lattice=c, labels=_new_labels(len(a), len(pr.support)))


_ARITY = {"fig1": 0, "base5": 0, "base6": 0, "base7quad": 0, "base7ryb": 0, "maclane": 1,
          "falk_sturmfels": 1, "nazir_yoshinaga": 1, "quadrilateral": 1, "rybnikov_step": 1,
          "rybnikov": 2, "ml_table1": 3}

NAMES = tuple(_ARITY)


def parse_name(text: str, params=()) -> tuple[str, tuple]:
    """Accept ``maclane(1)``-style strings or a bare name plus parameters."""
    m = re.fullmatch(r"\s*([a-z0-9_]+)\s*(?:\((.*)\))?\s*", text)
    if not m:
        raise UnknownName(text)
    name = m.group(1)
    inner = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
    return name, inner + tuple(int(x) for x in params)


def build(name: str, *params) -> CatalogEntry:
    name, params = parse_name(name, params)
    if name not in _ARITY:
        raise UnknownName(name)
    if len(params) != _ARITY[name]:
        raise BadParams(f"{name} takes {_ARITY[name]} parameter(s), got {len(params)}")
    if _ARITY[name] == 0:
        return _base_entry(name)
    if name == "maclane":
        i, = params
        table = {f"table1_{k}": table1_preset(k) for k in range(1, len(TABLE1) + 1)}
        return CatalogEntry(name, params, _maclane(i), table, {2: 4, 3: 8})
    if name in ("falk_sturmfels", "nazir_yoshinaga"):
        i, = params
        a = _pick(split_preset("base6", name), i)
        prof = {2: 6, 3: 8, 4: 1} if name == "falk_sturmfels" else {2: 6, 3: 10}
        return CatalogEntry(name, params, a, {}, prof)
    if name == "quadrilateral":
        i, = params
        return CatalogEntry(name, params, _pick(split_preset("base7quad", "quadrilateral"), i),
                            {}, {2: 13, 3: 10, 4: 2})
    if name == "rybnikov_step":
        i, = params
        return CatalogEntry(name, params, _ryb_step(i), {"psi2": RYB_PSI2}, RYB_STEP_PROFILE)
    if name == "rybnikov":
        i, j = params
        a = _pick(second_split("rybnikov", _root_index(i) + 1), j)
        return CatalogEntry(name, params, a, {}, RYB_PROFILE)
    k, i, j = params
    if not 1 <= k <= len(TABLE1):
        raise BadParams(f"table row must be in 1..{len(TABLE1)}")
    a = _pick(second_split("ml_table1", _root_index(i) + 1, k), j)
    return CatalogEntry(name, params, a, {}, TABLE1_PROFILES[k - 1])


RYB_STEP_PROFILE = {2: 18, 3: 9}
RYB_PROFILE = {2: 33, 3: 15}
TABLE1_PROFILES = ({2: 13, 3: 8, 4: 3}, {2: 13, 3: 8, 4: 3}, {2: 13, 3: 10, 4: 2},
                   {2: 13, 3: 12, 4: 1}, {2: 13, 3: 8, 4: 3}, {2: 13, 3: 12, 4: 1})


def all_entries() -> list[CatalogEntry]:
    out = [build(n) for n in ("fig1", "base5", "base6", "base7quad", "base7ryb")]
    for n in ("maclane", "falk_sturmfels", "nazir_yoshinaga", "quadrilateral", "rybnikov_step"):
        out += [build(n, i) for i in (1, 2)]
    out += [build("rybnikov", i, j) for i in (1, 2) for j in (1, 2)]
    out += [build("ml_table1", k, i, j) for k in range(1, 7) for i in (1, 2) for j in (1, 2)]
    return out
