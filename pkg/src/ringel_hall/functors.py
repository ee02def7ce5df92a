"""Induction and restriction on invariant functions, and the shift bookkeeping
behind the restriction-of-induction decomposition.

A ``ClassFunction`` is a function on a product ``E_{d_1} x ... x E_{d_k}``
that is invariant under the product of the groups, stored on iso-class
tuples. ``v_unit`` is the scalar standing in for the grading shift; the
twists below are its integer powers.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .quiver import DimVector, Quadruple, Quiver, dims_up_to, enumerate_quadruples, euler_form, splittings, \
    symmetric_euler_form
from .reps import TableStore, assemble
from .scalar import SqrtQScalar


@dataclass
class ClassFunction:
    store: TableStore
    dims: tuple[DimVector, ...]
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = tuple(DimVector(d) for d in self.dims)
        self.values = {tuple(k): v for k, v in self.values.items() if v}

    def __call__(self, *classes: int) -> SqrtQScalar:
        return self.values.get(tuple(classes), SqrtQScalar(0, 0, self.store.q))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.dims != self.dims:
            raise ValueError("adding class functions on different spaces")
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out[k] + v if k in out else v
        return ClassFunction(self.store, self.dims, out)

    def scale(self, c) -> "ClassFunction":
        return ClassFunction(self.store, self.dims, {k: v * c for k, v in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and self.dims == other.dims and self.values == other.values

    def __repr__(self):
        return f"ClassFunction(dims={[list(d) for d in self.dims]}, values={self.values})"

    @classmethod
    def delta(cls, store: TableStore, *keys) -> "ClassFunction":
        """Indicator of a tuple of classes, each key ``(dim, class id)``."""
        dims = tuple(store.quiver.dim(k[0]) for k in keys)
        return cls(store, dims, {tuple(k[1] for k in keys): SqrtQScalar(1, 0, store.q)})

    @classmethod
    def zero(cls, store: TableStore, dims) -> "ClassFunction":
        return cls(store, tuple(dims), {})


def tensor(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    out = {}
    for kf, vf in f.values.items():
        for kg, vg in g.values.items():
            out[kf + kg] = vf * vg
    return ClassFunction(f.store, f.dims + g.dims, out)


def permute(f: ClassFunction, order: Sequence[int]) -> ClassFunction:
    """Reorder factors: factor ``j`` of the result is factor ``order[j]`` of ``f``."""
    dims = tuple(f.dims[i] for i in order)
    return ClassFunction(f.store, dims, {tuple(k[i] for i in order): v for k, v in f.values.items()})


def swap_middle(f: ClassFunction) -> ClassFunction:
    """``(x1, x2, x3, x4) -> (x1, x3, x2, x4)`` on a four-factor function."""
    if len(f.dims) != 4:
        raise ValueError("swap_middle needs a four-factor function")
    return permute(f, (0, 2, 1, 3))


def ind_shift(Q: Quiver, sub_quo: DimVector, sub: DimVector) -> int:
    """``d1 - d2 = sum_h v'_{s(h)} v''_{t(h)} + sum_i v'_i v''_i``."""
    return Q.arrow_space_dim(sub_quo, sub) + sum(a * b for a, b in zip(sub_quo, sub))


def ind_fn(f: ClassFunction, pos: int, v_unit: SqrtQScalar) -> ClassFunction:
    """Induce factors ``pos`` (quotient, dim v') and ``pos + 1`` (sub, dim v'')
    into a single factor of dim v = v' + v''.

    ``(ind f)(x) = v_unit^(d1 - d2) * sum_W f(x/W, x|_W)`` over x-stable graded
    W of dim v''.
    """
    store = f.store
    d1, d2 = f.dims[pos], f.dims[pos + 1]
    nu = d1 + d2
    twist = v_unit ** ind_shift(store.quiver, d1, d2)
    # index f by its (pos, pos+1) entries
    by_pair: dict = {}
    for k, v in f.values.items():
        by_pair.setdefault((k[pos], k[pos + 1]), []).append((k[:pos], k[pos + 2:], v))
    out: dict = {}
    for c in store.classes(nu):
        for (a, b), n in store.filtrations(c).items():
            if a[0] != d1 or b[0] != d2:
                continue
            for head, tail, v in by_pair.get((a[1], b[1]), ()):
                key = head + (c[1],) + tail
                term = v * n
                out[key] = out[key] + term if key in out else term
    dims = f.dims[:pos] + (nu,) + f.dims[pos + 2:]
    return ClassFunction(store, dims, {k: v * twist for k, v in out.items()})


def _fiber_counts(store: TableStore, quo: tuple, sub: tuple) -> Counter:
    """For class representatives x' (dim v') and x'' (dim v''), count the
    extension data y by the class of the assembled ``[[x', 0], [y, x'']]``."""
    memo = store.fibers
    key = (quo, sub)
    hit = memo.get(key)
    if hit is not None:
        return hit
    Q, q = store.quiver, store.q
    xq, xs = store.rep(quo), store.rep(sub)
    shapes = [(sub[0][t], quo[0][s]) for s, t in zip(Q.src, Q.tgt)]
    n_entries = sum(r * c for r, c in shapes)
    counts: Counter = Counter()
    for flat in itertools.product(range(q), repeat=n_entries):
        ys, pos = [], 0
        for r, c in shapes:
            ys.append(np.array(flat[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        x = assemble(xq, xs, ys)
        counts[store.classify(x)[1]] += 1
    assert sum(counts.values()) == q ** n_entries
    memo[key] = counts
    return counts


def res_fn(f: ClassFunction, pos: int, quo_dim, sub_dim, v_unit: SqrtQScalar) -> ClassFunction:
    """Restrict factor ``pos`` (dim v) to ``E_{v'} x E_{v''}``.

    ``(res f)(x', x'') = v_unit^(-<v', v''>) * sum_y f([[x', 0], [y, x'']])``
    with y running over the whole fiber ``(+)_h Hom(V'_{s(h)}, V''_{t(h)})``.
    """
    store = f.store
    Q = store.quiver
    quo_dim, sub_dim = Q.dim(quo_dim), Q.dim(sub_dim)
    if quo_dim + sub_dim != f.dims[pos]:
        raise ValueError(f"{tuple(quo_dim)} + {tuple(sub_dim)} != {tuple(f.dims[pos])}")
    twist = v_unit ** (-euler_form(Q, quo_dim, sub_dim))
    by_class: dict = {}
    for k, v in f.values.items():
        by_class.setdefault(k[pos], []).append((k[:pos], k[pos + 1:], v))
    out: dict = {}
    if by_class:
        for xq in store.classes(quo_dim):
            for xs in store.classes(sub_dim):
                for c, n in _fiber_counts(store, xq, xs).items():
                    for head, tail, v in by_class.get(c, ()):
                        key = head + (xq[1], xs[1]) + tail
                        term = v * n
                        out[key] = out[key] + term if key in out else term
    dims = f.dims[:pos] + (quo_dim, sub_dim) + f.dims[pos + 1:]
    return ClassFunction(store, dims, {k: v * twist for k, v in out.items()})


# shift constants -----------------------------------------------------------

@dataclass(frozen=True)
class LambdaShifts:
    quad: Quadruple
    N: int
    L: int
    K: int


@dataclass(frozen=True)
class ShiftConstants:
    M: int
    per_lambda: tuple[LambdaShifts, ...]


def _dot(u, w) -> int:
    return sum(a * b for a, b in zip(u, w))


def shift_constants(Q: Quiver, alpha, beta, alphap, betap, literal_n_term: bool = False) -> ShiftConstants:
    """The integer shifts M and, for each quadruple, N, L and K.

    ``literal_n_term`` swaps the vertex term ``a2_i b2_i`` of N for
    ``a2_i a2_i``; it exists only to show that this variant breaks
    ``M - 2K = N - (a2, b1)``.
    """
    alpha, beta, alphap, betap = (Q.dim(d) for d in (alpha, beta, alphap, betap))
    arr = Q.arrow_space_dim
    M = arr(alpha, beta) + _dot(alpha, beta) - euler_form(Q, alphap, betap)
    rows = []
    for lam in enumerate_quadruples(alpha, beta, alphap, betap):
        a1, a2, b1, b2 = lam
        L = arr(a1, a2) + arr(a1, b2) + arr(b1, b2) + _dot(a2, b1)
        K = L - (arr(a1, a2) + arr(b1, b2))
        last = _dot(a2, a2) if literal_n_term else _dot(a2, b2)
        N = (-euler_form(Q, a1, a2) - euler_form(Q, b1, b2)
             + arr(a1, b1) + arr(a2, b2) + _dot(a1, b1) + last)
        rows.append(LambdaShifts(lam, N, L, K))
    return ShiftConstants(M, tuple(rows))


def verify_shift_identity(Q: Quiver, alpha, beta, alphap, betap, literal_n_term: bool = False) -> bool:
    sc = shift_constants(Q, alpha, beta, alphap, betap, literal_n_term)
    return all(sc.M - 2 * r.K == r.N - symmetric_euler_form(Q, r.quad.a2, r.quad.b1) for r in sc.per_lambda)


def _arrow_matrix(Q: Quiver) -> np.ndarray:
    A = np.zeros((Q.n, Q.n), dtype=np.int64)
    for s, t in zip(Q.src, Q.tgt):
        A[s, t] += 1
    return A


def shift_identity_residuals(Q: Quiver, alpha, beta, alphap, betap, literal_n_term: bool = False) -> np.ndarray:
    """``M - 2K - N + (a2, b1)`` for every quadruple at once, vectorized.

    Same arithmetic as ``shift_constants``; all entries are zero exactly
    when the identity holds. Rows follow the lexicographic order of ``a1``.
    """
    alpha, beta, alphap, betap = (np.array(Q.dim(d), dtype=np.int64) for d in (alpha, beta, alphap, betap))
    if not np.array_equal(alpha + beta, alphap + betap):
        raise ValueError("alpha + beta != alpha' + beta'")
    lo = np.maximum(0, alpha - betap)
    hi = np.minimum(alpha, alphap)
    if np.any(lo > hi):
        return np.zeros(0, dtype=np.int64)
    axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
    a1 = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, Q.n)
    a2, b1 = alpha - a1, alphap - a1
    b2 = beta - b1
    A = _arrow_matrix(Q)

    def arr(u, w):  # sum_h u_{s(h)} w_{t(h)}, row-wise
        return ((u @ A) * w).sum(axis=-1)

    def dot(u, w):
        return (u * w).sum(axis=-1)

    def euler(u, w):
        return dot(u, w) - arr(u, w)

    M = int(alpha @ A @ beta + alpha @ beta - (alphap @ betap - alphap @ A @ betap))
    L = arr(a1, a2) + arr(a1, b2) + arr(b1, b2) + dot(a2, b1)
    K = L - (arr(a1, a2) + arr(b1, b2))
    last = dot(a2, a2) if literal_n_term else dot(a2, b2)
    N = -euler(a1, a2) - euler(b1, b2) + arr(a1, b1) + arr(a2, b2) + dot(a1, b1) + last
    sym = euler(a2, b1) + euler(b1, a2)
    return M - 2 * K - N + sym


def random_instance(Q: Quiver, rng: random.Random, max_entry: int = 20):
    """A random ``(alpha, beta, alpha', beta')`` with alpha + beta = alpha' + beta',
    all four with entries at most ``max_entry``."""
    alpha = [rng.randint(0, max_entry) for _ in range(Q.n)]
    beta = [rng.randint(0, max_entry) for _ in range(Q.n)]
    gamma = [a + b for a, b in zip(alpha, beta)]
    alphap = [rng.randint(max(0, g - max_entry), min(g, max_entry)) for g in gamma]
    betap = [g - a for g, a in zip(gamma, alphap)]
    return Q.dim(alpha), Q.dim(beta), Q.dim(alphap), Q.dim(betap)


def fuzz_shift_identity(Q: Quiver, samples: int, seed: int, max_entry: int = 20,
                        literal_n_term: bool = False) -> tuple[int, int]:
    """Return ``(passed, total)`` over seeded random instances."""
    rng = random.Random(seed)
    passed = 0
    for _ in range(samples):
        inst = random_instance(Q, rng, max_entry)
        passed += not shift_identity_residuals(Q, *inst, literal_n_term=literal_n_term).any()
    return passed, samples


# the decomposition, at the level of functions ------------------------------

def theorem_sides(store: TableStore, A, B, alphap, betap, v_unit: SqrtQScalar):
    """Both sides as class functions on ``E_{alpha'} x E_{beta'}``.

    Left: ``res^gamma_{alpha',beta'} ind^gamma_{alpha,beta} (delta_A (x) delta_B)``.
    Right: sum over quadruples of ``v_unit^(-(a2, b1))`` times
    ``(ind (x) ind) swap_middle (res delta_A (x) res delta_B)``.
    """
    Q = store.quiver
    alphap, betap = Q.dim(alphap), Q.dim(betap)
    alpha, beta = Q.dim(A[0]), Q.dim(B[0])
    if alpha + beta != alphap + betap:
        raise ValueError(f"dim A + dim B = {tuple(alpha + beta)} != alpha' + beta' = {tuple(alphap + betap)}")
    dA, dB = ClassFunction.delta(store, A), ClassFunction.delta(store, B)
    lhs = res_fn(ind_fn(tensor(dA, dB), 0, v_unit), 0, alphap, betap, v_unit)
    rhs = ClassFunction.zero(store, (alphap, betap))
    for a1, a2, b1, b2 in enumerate_quadruples(alpha, beta, alphap, betap):
        rA = res_fn(dA, 0, a1, a2, v_unit)
        rB = res_fn(dB, 0, b1, b2, v_unit)
        g = swap_middle(tensor(rA, rB))
        g = ind_fn(ind_fn(g, 0, v_unit), 1, v_unit)
        rhs = rhs + g.scale(v_unit ** (-symmetric_euler_form(Q, a2, b1)))
    return lhs, rhs


@dataclass
class TheoremResult:
    A: tuple
    B: tuple
    alphap: DimVector
    betap: DimVector
    equal: bool
    lhs: ClassFunction
    rhs: ClassFunction


def verify_main_theorem(store: TableStore, A, B, alphap, betap, v_unit: SqrtQScalar) -> TheoremResult:
    lhs, rhs = theorem_sides(store, A, B, alphap, betap, v_unit)
    return TheoremResult(A, B, store.quiver.dim(alphap), store.quiver.dim(betap), lhs == rhs, lhs, rhs)


def candidate_units(q: int) -> list[tuple[str, SqrtQScalar]]:
    r = SqrtQScalar.sqrt_q(q)
    return [("+sqrt(q)", r), ("-sqrt(q)", -r), ("+1/sqrt(q)", r.inverse()), ("-1/sqrt(q)", -r.inverse())]


def theorem_instances(store: TableStore, bound: int, degenerate_only: bool = False) -> Iterable[tuple]:
    """Every ``(A, B, alpha', beta')`` with total dimension at most ``bound``.

    ``degenerate_only`` keeps the instances where A or B is the zero class and
    ``(alpha', beta') = (alpha, beta)``.
    """
    for gamma in dims_up_to(store.quiver.n, bound):
        for alpha, beta in splittings(gamma):
            for alphap, betap in splittings(gamma):
                if degenerate_only and not ((alpha.total == 0 or beta.total == 0)
                                            and alphap == alpha and betap == beta):
                    continue
                for A in store.classes(alpha):
                    for B in store.classes(beta):
                        yield A, B, alphap, betap


class AmbiguousUnit(RuntimeError):
    def __init__(self, message, survivors):
        super().__init__(message)
        self.survivors = survivors


def surviving_units(stores: Sequence[TableStore], bounds: Sequence[int],
                    degenerate_only: bool = False) -> list[str]:
    """Names of the candidate units for which every instance passes.

    Candidates are compared by name so that one answer covers all q.
    """
    alive = [name for name, _ in candidate_units(2)]
    for store, bound in zip(stores, bounds):
        units = dict(candidate_units(store.q))
        for inst in theorem_instances(store, bound, degenerate_only):
            alive = [n for n in alive if verify_main_theorem(store, *inst, units[n]).equal]
            if not alive:
                return alive
    return alive


def determine_v_unit(stores: Sequence[TableStore], bounds: Sequence[int],
                     degenerate_only: bool = False) -> str:
    """The unique candidate unit passing every instance; raises ``AmbiguousUnit`` otherwise."""
    alive = surviving_units(stores, bounds, degenerate_only)
    if len(alive) != 1:
        raise AmbiguousUnit(f"{len(alive)} candidate units survive: {alive}", alive)
    return alive[0]


def unit_value(name: str, q: int) -> SqrtQScalar:
    units = dict(candidate_units(q))
    try:
        return units[name]
    except KeyError:
        raise ValueError(f"unknown unit {name!r}; choose from {sorted(units)}") from None
