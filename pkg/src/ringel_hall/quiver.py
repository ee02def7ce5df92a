"""Quivers, dimension vectors, Euler forms and the quadruple set.

Vertex ids are strings. Dimension vectors are stored densely in the order of
``Quiver.vertices`` so that inner loops can work on plain integer tuples.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence


class DimVector(tuple):
    """Nonnegative integer vector indexed by the vertices of a quiver.

    Addition and subtraction are componentwise (``+`` does not concatenate).
    Subtraction that would produce a negative entry raises ``ValueError``.
    """

    def __new__(cls, counts: Iterable[int] = ()):
        vals = tuple(int(c) for c in counts)
        if any(c < 0 for c in vals):
            raise ValueError(f"dimension vector has a negative entry: {vals}")
        return super().__new__(cls, vals)

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("dimension vectors of different length")
        return DimVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise ValueError("dimension vectors of different length")
        diff = [a - b for a, b in zip(self, other)]
        if any(d < 0 for d in diff):
            raise ValueError(f"cannot subtract {tuple(other)} from {tuple(self)}")
        return DimVector(diff)

    def __le__(self, other):
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self):
        return f"DimVector({list(self)})"

    @property
    def total(self) -> int:
        return sum(self)

    @classmethod
    def zero(cls, n: int) -> "DimVector":
        return cls([0] * n)

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        """Parse the CLI form ``"1,0,2"``."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(t) for t in text.split(","))


@dataclass(frozen=True)
class Quiver:
    """A finite quiver. Multiple arrows and loops are allowed.

    ``arrows`` holds ``(source, target)`` vertex-id pairs; ``src`` / ``tgt``
    give the same data as dense vertex indices.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...]

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        arrows = tuple((str(s), str(t)) for s, t in self.arrows)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        if len(set(verts)) != len(verts):
            raise ValueError(f"duplicate vertex ids in {verts}")
        known = set(verts)
        for s, t in arrows:
            if s not in known or t not in known:
                raise ValueError(f"arrow ({s}, {t}) uses an unknown vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self.vertices.index(str(vertex))
        except ValueError:
            raise KeyError(f"unknown vertex {vertex!r}") from None

    @cached_property
    def src(self) -> tuple[int, ...]:
        return tuple(self.index(s) for s, _ in self.arrows)

    @cached_property
    def tgt(self) -> tuple[int, ...]:
        return tuple(self.index(t) for _, t in self.arrows)

    def has_loop(self, vertex: str) -> bool:
        v = str(vertex)
        return any(s == v and t == v for s, t in self.arrows)

    def dim(self, counts) -> DimVector:
        """Build a dimension vector from a sequence (vertex order) or a mapping."""
        if isinstance(counts, dict):
            counts = {str(k): c for k, c in counts.items()}
            extra = set(counts) - set(self.vertices)
            if extra:
                raise KeyError(f"unknown vertices {sorted(extra)}")
            return DimVector(counts.get(v, 0) for v in self.vertices)
        d = DimVector(counts)
        if len(d) != self.n:
            raise ValueError(f"dimension vector {tuple(d)} has {len(d)} entries, quiver has {self.n} vertices")
        return d

    def simple(self, vertex: str) -> DimVector:
        i = self.index(vertex)
        return DimVector(1 if j == i else 0 for j in range(self.n))

    def zero(self) -> DimVector:
        return DimVector.zero(self.n)

    def arrow_space_dim(self, v: Sequence[int], w: Sequence[int]) -> int:
        """``sum_h v_{s(h)} w_{t(h)}``: dimension of the arrow-wise Hom space."""
        self._check(v)
        self._check(w)
        return sum(v[s] * w[t] for s, t in zip(self.src, self.tgt))

    def _check(self, v: Sequence[int]):
        if len(v) != self.n:
            raise ValueError(f"dimension vector {tuple(v)} does not match the {self.n} vertices of the quiver")

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"src": s, "tgt": t} for s, t in self.arrows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        return cls(
            tuple(data["vertices"]),
            tuple((a["src"], a["tgt"]) for a in data["arrows"]),
        )

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def euler_form(Q: Quiver, v: Sequence[int], w: Sequence[int]) -> int:
    Q._check(v)
    Q._check(w)
    return sum(a * b for a, b in zip(v, w)) - Q.arrow_space_dim(v, w)


def symmetric_euler_form(Q: Quiver, v: Sequence[int], w: Sequence[int]) -> int:
    return euler_form(Q, v, w) + euler_form(Q, w, v)


class Quadruple(NamedTuple):
    a1: DimVector
    a2: DimVector
    b1: DimVector
    b2: DimVector


def enumerate_quadruples(alpha, beta, alphap, betap) -> list[Quadruple]:
    """All ``(a1, a2, b1, b2)`` with a1+a2=alpha, b1+b2=beta, a1+b1=alphap, a2+b2=betap.

    The quadruple is determined by ``a1``; it ranges over the box
    ``0 <= a1 <= min(alpha, alphap)`` subject to the remaining parts being
    nonnegative. Output is in lexicographic order of ``a1``.
    """
    alpha, beta, alphap, betap = map(DimVector, (alpha, beta, alphap, betap))
    if not (len(alpha) == len(beta) == len(alphap) == len(betap)):
        raise ValueError("dimension vectors of different length")
    if alpha + beta != alphap + betap:
        raise ValueError(f"alpha+beta = {tuple(alpha + beta)} differs from alpha'+beta' = {tuple(alphap + betap)}")
    ranges = [range(min(a, ap) + 1) for a, ap in zip(alpha, alphap)]
    out = []
    for a1 in itertools.product(*ranges):
        a1 = DimVector(a1)
        a2 = alpha - a1
        b1 = alphap - a1
        b2 = betap - a2 if a2 <= betap else None
        if b2 is None:
            continue
        out.append(Quadruple(a1, a2, b1, b2))
    return out


def splittings(gamma: Sequence[int]) -> Iterator[tuple[DimVector, DimVector]]:
    """All ``(alpha, beta)`` with ``alpha + beta = gamma``, in lex order of ``alpha``."""
    for a in itertools.product(*(range(g + 1) for g in gamma)):
        a = DimVector(a)
        yield a, DimVector(gamma) - a


def dims_up_to(n_vertices: int, bound: int) -> list[DimVector]:
    """Every dimension vector with total at most ``bound``, ordered by total then lex."""
    out = [DimVector(d) for d in itertools.product(range(bound + 1), repeat=n_vertices) if sum(d) <= bound]
    return sorted(out, key=lambda d: (sum(d), tuple(d)))


PRESETS = {
    "a2": (("1", "2"), (("1", "2"),)),
    "a3": (("1", "2", "3"), (("1", "2"), ("2", "3"))),
    "kronecker": (("1", "2"), (("1", "2"), ("1", "2"))),
    "jordan": (("1",), (("1", "1"),)),
    # subspace orientation: three outer vertices map into the central one
    "d4": (("1", "2", "3", "4"), (("1", "4"), ("2", "4"), ("3", "4"))),
}


def preset_quiver(name: str) -> Quiver:
    try:
        verts, arrows = PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown preset quiver {name!r}; choose from {sorted(PRESETS)}") from None
    return Quiver(verts, arrows)
