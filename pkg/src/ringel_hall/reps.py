"""Representation spaces E_V(F_q), their G_V-orbits, Hom/Ext and Hall numbers.

A point of E_V is a tuple of matrices, one per arrow, of shape
``dim[target] x dim[source]``. Points are numbered by reading all matrix
entries (arrow order, row-major) as base-q digits with the first entry most
significant, so numeric order on indices is lexicographic order on points.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .gf import GaloisField, enumerate_graded_subspaces, field_make, inverse, nullspace_dim
from .quiver import DimVector, Quiver, euler_form, splittings

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 7
_CHUNK = 1 << 18


class BudgetExceeded(RuntimeError):
    pass


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** k for k in range(n))


def group_order(dim: Sequence[int], q: int) -> int:
    """Order of ``prod_i GL_{dim_i}(F_q)``."""
    return prod(gl_order(n, q) for n in dim)


def arrow_shapes(Q: Quiver, dim: Sequence[int]) -> list[tuple[int, int]]:
    return [(dim[t], dim[s]) for s, t in zip(Q.src, Q.tgt)]


def point_count_exponent(Q: Quiver, dim: Sequence[int]) -> int:
    return Q.arrow_space_dim(dim, dim)


@dataclass(frozen=True, eq=False)
class Rep:
    """A representation: one matrix per arrow, entries in GF(q)."""

    quiver: Quiver
    q: int
    dim: DimVector
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "dim", DimVector(self.dim))
        mats = tuple(np.asarray(m, dtype=np.int64).reshape(shape)
                     for m, shape in zip(self.mats, arrow_shapes(self.quiver, self.dim)))
        if len(mats) != len(self.quiver.arrows):
            raise ValueError("need one matrix per arrow")
        for m in mats:
            if m.size and (m.min() < 0 or m.max() >= self.q):
                raise ValueError("matrix entry outside GF(q)")
            m.setflags(write=False)
        object.__setattr__(self, "mats", mats)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for m in self.mats for v in m.ravel())

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.quiver == other.quiver and self.q == other.q
                and self.dim == other.dim and self.key == other.key)

    def __hash__(self):
        return hash((self.q, self.dim, self.key))

    @classmethod
    def from_key(cls, Q: Quiver, q: int, dim, key: Sequence[int]) -> "Rep":
        mats, pos = [], 0
        for r, c in arrow_shapes(Q, dim):
            mats.append(np.array(key[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        return cls(Q, q, dim, tuple(mats))

    @classmethod
    def zero(cls, Q: Quiver, q: int, dim) -> "Rep":
        return cls(Q, q, dim, tuple(np.zeros(s, dtype=np.int64) for s in arrow_shapes(Q, dim)))

    def act(self, g: Sequence[np.ndarray]) -> "Rep":
        """``(g.x)_h = g_t x_h g_s^{-1}`` for ``g`` a tuple of invertible matrices."""
        F = field_make(self.q)
        ginv = [inverse(F, gi) for gi in g]
        mats = tuple(F.matmul(F.matmul(g[t], m), ginv[s])
                     for m, s, t in zip(self.mats, self.quiver.src, self.quiver.tgt))
        return Rep(self.quiver, self.q, self.dim, mats)


@dataclass
class IsoClass:
    id: int
    rep: Rep
    orbit: int
    aut: int


@dataclass(eq=False)
class IsoClassTable:
    """All G_V(F_q)-orbits on E_V(F_q) for one dimension vector.

    ``labels`` maps point index -> class id; it is rebuilt on demand when a
    table comes from JSON without it.
    """

    quiver: Quiver
    q: int
    dim: DimVector
    classes: list[IsoClass]
    labels: np.ndarray | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, cid: int) -> IsoClass:
        return self.classes[cid]

    @property
    def n_coords(self) -> int:
        return point_count_exponent(self.quiver, self.dim)

    @property
    def n_points(self) -> int:
        return self.q ** self.n_coords

    def encode(self, key: Sequence[int]) -> int:
        idx = 0
        for v in key:
            idx = idx * self.q + int(v)
        return idx

    def index_of(self, x: Rep) -> int:
        if x.quiver != self.quiver or x.q != self.q or x.dim != self.dim:
            raise ValueError(f"representation of dim {tuple(x.dim)} over GF({x.q}) does not belong to "
                             f"the table for dim {tuple(self.dim)} over GF({self.q})")
        return self.encode(x.key)

    def validate(self) -> None:
        """Check the orbit-sum and orbit-stabilizer invariants."""
        total = sum(c.orbit for c in self.classes)
        if total != self.n_points:
            raise ValueError(f"orbit sizes sum to {total}, expected {self.n_points}")
        G = group_order(self.dim, self.q)
        for c in self.classes:
            if c.aut * c.orbit != G:
                raise ValueError(f"class {c.id}: aut {c.aut} * orbit {c.orbit} != |G| = {G}")

    def to_json(self) -> dict:
        return {
            "format": 1,
            "quiver": self.quiver.to_json(),
            "q": self.q,
            "dim": list(self.dim),
            "classes": [
                {"id": c.id, "rep": [m.tolist() for m in c.rep.mats], "orbit": c.orbit, "aut": c.aut}
                for c in self.classes
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IsoClassTable":
        if data.get("format") != 1:
            raise ValueError(f"unsupported table format {data.get('format')!r}")
        Q = Quiver.from_json(data["quiver"])
        q, dim = int(data["q"]), DimVector(data["dim"])
        classes = []
        for i, c in enumerate(data["classes"]):
            if c["id"] != i:
                raise ValueError("class ids must be 0..n-1 in order")
            rep = Rep(Q, q, dim, tuple(np.array(m, dtype=np.int64) for m in c["rep"]))
            classes.append(IsoClass(i, rep, int(c["orbit"]), int(c["aut"])))
        return cls(Q, q, dim, classes)


# orbit computation ---------------------------------------------------------

def _generators(F: GaloisField, dim: Sequence[int]) -> list[list[np.ndarray]]:
    """Generators of prod_i GL_{dim_i}(F_q), one vertex at a time.

    Transvections ``I + t E_ab`` with ``t`` running over an additive basis of
    GF(q) over its prime field generate SL_n; one ``diag(w, 1, ..., 1)`` with
    ``w`` primitive completes GL_n.
    """
    gens = []
    for i, n in enumerate(dim):
        if n == 0:
            continue
        mats = []
        for a in range(n):
            for b in range(n):
                if a != b:
                    for t in F.additive_basis:
                        g = np.eye(n, dtype=np.int64)
                        g[a, b] = t
                        mats.append(g)
        if F.q > 2:
            d = np.eye(n, dtype=np.int64)
            d[0, 0] = F.primitive
            mats.append(d)
        for g in mats:
            full = [np.eye(m, dtype=np.int64) for m in dim]
            full[i] = g
            gens.append(full)
    return gens


def _action_matrix(F: GaloisField, Q: Quiver, dim, g) -> np.ndarray:
    """Matrix of the linear map x -> g.x on the flattened coordinates of E_V."""
    N = point_count_exponent(Q, dim)
    cols = []
    for j in range(N):
        key = [0] * N
        key[j] = 1
        cols.append(Rep.from_key(Q, F.q, dim, key).act(g).key)
    return np.array(cols, dtype=np.int64).T


def _digits(idx: np.ndarray, q: int, N: int) -> np.ndarray:
    out = np.empty((idx.size, N), dtype=np.int64)
    rem = idx.copy()
    for k in range(N - 1, -1, -1):
        out[:, k] = rem % q
        rem //= q
    return out


def build_iso_table(Q: Quiver, q: int, dim, budget: int = DEFAULT_BUDGET) -> IsoClassTable:
    """Partition E_V(F_q) into G_V-orbits.

    Each generator acts as a permutation of the point indices; orbits are the
    connected components of the union of those permutation graphs. Class ids
    follow the lexicographically smallest point in each orbit, which is also
    the stored representative.
    """
    F = field_make(q)
    dim = Q.dim(dim)
    N = point_count_exponent(Q, dim)
    size = q ** N
    if size > budget:
        raise BudgetExceeded(f"|E_V| = {q}^{N} = {size} exceeds the enumeration budget {budget}")
    G = group_order(dim, q)
    gens = _generators(F, dim)
    if N == 0 or not gens:
        labels = np.arange(size, dtype=np.int64)
    else:
        weights = q ** np.arange(N - 1, -1, -1, dtype=np.int64)
        rows, cols = [], []
        for g in gens:
            T = _action_matrix(F, Q, dim, g)
            for start in range(0, size, _CHUNK):
                idx = np.arange(start, min(size, start + _CHUNK), dtype=np.int64)
                X = _digits(idx, q, N)
                Y = F.matmul(X, T.T)
                rows.append(idx)
                cols.append(Y @ weights)
        r, c = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(size, size)).tocsr()
        _, labels = connected_components(graph, directed=True, connection="weak")
    # renumber components by their smallest point index
    n_comp = int(labels.max()) + 1
    mins = np.full(n_comp, size, dtype=np.int64)
    np.minimum.at(mins, labels, np.arange(size, dtype=np.int64))
    order = np.argsort(mins)
    relabel = np.empty(n_comp, dtype=np.int64)
    relabel[order] = np.arange(n_comp)
    labels = relabel[labels].astype(np.int32)
    sizes = np.bincount(labels, minlength=n_comp)
    classes = []
    for cid, comp in enumerate(order):
        idx = int(mins[comp])
        key = _digits(np.array([idx]), q, N)[0] if N else []
        orbit = int(sizes[cid])
        if G % orbit:
            raise AssertionError(f"orbit size {orbit} does not divide |G| = {G}")
        classes.append(IsoClass(cid, Rep.from_key(Q, q, dim, key), orbit, G // orbit))
    table = IsoClassTable(Q, q, dim, classes, labels)
    table.validate()
    return table


def classify(table: IsoClassTable, x: Rep) -> int:
    if table.labels is None:
        rebuilt = build_iso_table(table.quiver, table.q, table.dim, budget=max(DEFAULT_BUDGET, table.n_points))
        table.labels = rebuilt.labels
    return int(table.labels[table.index_of(x)])


# Hom and Ext ---------------------------------------------------------------

def _check_pair(M: Rep, N: Rep):
    if M.quiver != N.quiver or M.q != N.q:
        raise ValueError("representations over different quivers or fields")


def _intertwiner_system(M: Rep, N: Rep, order: str = "arrow") -> np.ndarray:
    """Coefficient matrix of ``f_t x_h - y_h f_s = 0`` over all arrows.

    Unknowns are the entries of ``f_i : M_i -> N_i``. ``order`` picks the
    layout: ``"arrow"`` stacks equations arrow by arrow with unknowns in vertex
    order, row-major; ``"vertex"`` groups equations by target vertex and
    lists unknowns in reverse vertex order, column-major.
    """
    Q, F = M.quiver, field_make(M.q)
    m, n = M.dim, N.dim
    verts = list(range(Q.n)) if order == "arrow" else list(reversed(range(Q.n)))
    offsets, pos = {}, 0
    for i in verts:
        offsets[i] = pos
        pos += n[i] * m[i]
    n_unknowns = pos

    def var(i, r, c):
        if order == "arrow":
            return offsets[i] + r * m[i] + c
        return offsets[i] + c * n[i] + r

    arrows = list(range(len(Q.arrows)))
    if order == "vertex":
        arrows.sort(key=lambda h: (Q.tgt[h], h))
    rows = []
    for h in arrows:
        s, t = Q.src[h], Q.tgt[h]
        x, y = M.mats[h], N.mats[h]
        for r in range(n[t]):
            for c in range(m[s]):
                row = np.zeros(n_unknowns, dtype=np.int64)
                # (f_t x)[r, c] = sum_k f_t[r, k] x[k, c]
                for k in range(m[t]):
                    j = var(t, r, k)
                    row[j] = F.add(int(row[j]), int(x[k, c]))
                # -(y f_s)[r, c] = -sum_k y[r, k] f_s[k, c]
                for k in range(n[s]):
                    j = var(s, k, c)
                    row[j] = F.sub(int(row[j]), int(y[r, k]))
                rows.append(row)
    if not rows:
        return np.zeros((0, n_unknowns), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def hom_dim(M: Rep, N: Rep, order: str = "arrow") -> int:
    """dim over F_q of Hom(M, N)."""
    _check_pair(M, N)
    return nullspace_dim(field_make(M.q), _intertwiner_system(M, N, order))


def ext1_dim(M: Rep, N: Rep) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N> (path algebras are hereditary)."""
    _check_pair(M, N)
    h = hom_dim(M, N)
    e = h - euler_form(M.quiver, M.dim, N.dim)
    if e < 0:
        raise AssertionError(f"negative Ext dimension {e}; Hom computation is inconsistent")
    return e


# sub/quotient splitting ----------------------------------------------------

_basis_cache: dict = {}
_basis_lock = threading.Lock()


def _adapted_basis(F: GaloisField, n: int, W: np.ndarray):
    """Basis change for ``F^n = complement + W``.

    Columns of ``P`` are the unit vectors at non-pivot positions (ascending)
    followed by the rows of the RREF matrix ``W``. Returns ``(P, P^{-1})``.
    """
    ck = (F.q, n, W.shape[0], W.tobytes())
    hit = _basis_cache.get(ck)
    if hit is not None:
        return hit
    pivots = [int(np.nonzero(row)[0][0]) for row in W]
    comp = [j for j in range(n) if j not in pivots]
    P = np.zeros((n, n), dtype=np.int64)
    for col, j in enumerate(comp):
        P[j, col] = 1
    for col, row in enumerate(W, start=len(comp)):
        P[:, col] = row
    out = (P, inverse(F, P))
    with _basis_lock:
        _basis_cache[ck] = out
    return out


def split_along(x: Rep, W) -> tuple[Rep, Rep] | None:
    """Return ``(quotient, sub)`` if the graded subspace ``W`` is x-stable, else None."""
    Q, F = x.quiver, field_make(x.q)
    bases = [_adapted_basis(F, n, Wi) for n, Wi in zip(x.dim, W)]
    sub_dim = DimVector(Wi.shape[0] for Wi in W)
    quo_dim = x.dim - sub_dim
    quo_mats, sub_mats = [], []
    for m, s, t in zip(x.mats, Q.src, Q.tgt):
        y = F.matmul(F.matmul(bases[t][1], m), bases[s][0])
        qt, qs = quo_dim[t], quo_dim[s]
        if np.any(y[:qt, qs:]):
            return None
        quo_mats.append(y[:qt, :qs])
        sub_mats.append(y[qt:, qs:])
    return Rep(Q, x.q, quo_dim, tuple(quo_mats)), Rep(Q, x.q, sub_dim, tuple(sub_mats))


def assemble(quo: Rep, sub: Rep, ys: Sequence[np.ndarray]) -> Rep:
    """Block representation ``[[x', 0], [y, x'']]`` with ``sub`` on the trailing coordinates."""
    Q = quo.quiver
    dim = quo.dim + sub.dim
    mats = []
    for h, (s, t) in enumerate(zip(Q.src, Q.tgt)):
        top = np.concatenate([quo.mats[h], np.zeros((quo.dim[t], sub.dim[s]), dtype=np.int64)], axis=1)
        bot = np.concatenate([np.asarray(ys[h], dtype=np.int64).reshape(sub.dim[t], quo.dim[s]), sub.mats[h]], axis=1)
        mats.append(np.concatenate([top, bot], axis=0))
    return Rep(Q, quo.q, dim, tuple(mats))


def sub_quotient_counts(x: Rep, table_quo: IsoClassTable, table_sub: IsoClassTable) -> Counter:
    """Count x-stable graded subspaces W of dimension ``table_sub.dim``, bucketed
    by ``(class of x/W, class of W)``."""
    F = field_make(x.q)
    counts: Counter = Counter()
    for W in enumerate_graded_subspaces(F, x.dim, table_sub.dim):
        parts = split_along(x, W)
        if parts is not None:
            counts[(classify(table_quo, parts[0]), classify(table_sub, parts[1]))] += 1
    return counts


def hall_number(table_gamma: IsoClassTable, gamma: int, alpha: int, beta: int,
                table_alpha: IsoClassTable, table_beta: IsoClassTable) -> int:
    """Number of submodules B of M_gamma with M_gamma/B in class alpha and B in class beta."""
    if table_alpha.dim + table_beta.dim != table_gamma.dim:
        raise ValueError(f"dim alpha + dim beta = {tuple(table_alpha.dim + table_beta.dim)} "
                         f"!= dim gamma = {tuple(table_gamma.dim)}")
    x = table_gamma[gamma].rep
    return sub_quotient_counts(x, table_alpha, table_beta)[(alpha, beta)]


# memoized tables -----------------------------------------------------------

ClassKey = tuple  # (DimVector, class id)


class TableStore:
    """Lazily built iso-class tables and derived data for one quiver and q.

    Builds are serialized per dimension vector; an optional on-disk cache
    (see ``ringel_hall.cache``) is consulted first.
    """

    def __init__(self, Q: Quiver, q: int, budget: int = DEFAULT_BUDGET, cache=None):
        self.quiver, self.q, self.budget, self.cache = Q, int(q), budget, cache
        self.field = field_make(self.q)
        self._tables: dict[DimVector, IsoClassTable] = {}
        self._filtrations: dict[ClassKey, dict] = {}
        self._hom: dict = {}
        # basis products / coproducts, filled by ringel_hall.hall
        self.products: dict = {}
        self.coproducts: dict = {}
        # extension-fiber class counts, filled by ringel_hall.functors
        self.fibers: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def _lock_for(self, key):
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())

    def table(self, dim) -> IsoClassTable:
        dim = self.quiver.dim(dim)
        t = self._tables.get(dim)
        if t is not None:
            return t
        with self._lock_for(("table", dim)):
            t = self._tables.get(dim)
            if t is None:
                t = self.cache.load_or_build(self.quiver, self.q, dim, self.budget) if self.cache else \
                    build_iso_table(self.quiver, self.q, dim, self.budget)
                self._tables[dim] = t
        return t

    def rep(self, key: ClassKey) -> Rep:
        dim, cid = key
        return self.table(dim)[cid].rep

    def aut(self, key: ClassKey) -> int:
        dim, cid = key
        return self.table(dim)[cid].aut

    def classes(self, dim) -> list[ClassKey]:
        dim = self.quiver.dim(dim)
        return [(dim, c.id) for c in self.table(dim).classes]

    def classify(self, x: Rep) -> ClassKey:
        return (x.dim, classify(self.table(x.dim), x))

    @property
    def empty(self) -> ClassKey:
        return (self.quiver.zero(), 0)

    def filtrations(self, key: ClassKey) -> dict:
        """``{(alpha_key, beta_key): g^gamma_{alpha beta}}`` over every splitting of dim gamma."""
        hit = self._filtrations.get(key)
        if hit is not None:
            return hit
        dim, cid = key
        x = self.rep(key)
        out = {}
        for a, b in splittings(dim):
            counts = sub_quotient_counts(x, self.table(a), self.table(b))
            for (ia, ib), n in sorted(counts.items()):
                out[((a, ia), (b, ib))] = n
        self._filtrations[key] = out
        return out

    def hall_number(self, gamma: ClassKey, alpha: ClassKey, beta: ClassKey) -> int:
        if alpha[0] + beta[0] != gamma[0]:
            raise ValueError("dim alpha + dim beta != dim gamma")
        return self.filtrations(gamma).get((alpha, beta), 0)

    def hom_dim(self, a: ClassKey, b: ClassKey) -> int:
        k = (a, b)
        if k not in self._hom:
            self._hom[k] = hom_dim(self.rep(a), self.rep(b))
        return self._hom[k]

    def ext1_dim(self, a: ClassKey, b: ClassKey) -> int:
        e = self.hom_dim(a, b) - euler_form(self.quiver, a[0], b[0])
        if e < 0:
            raise AssertionError("negative Ext dimension")
        return e
