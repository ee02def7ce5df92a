"""The twisted Hall algebra H_q(Q) with exact Q(sqrt q) coefficients.

Basis elements ``u_alpha`` are keyed by ``(dim, class id)``. The unit is the
class of the zero representation, ``store.empty``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .quiver import euler_form, symmetric_euler_form
from .reps import ClassKey, TableStore
from .scalar import SqrtQScalar


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if c}


def _sort_key(k):
    if isinstance(k, tuple):
        return tuple(_sort_key(x) for x in k)
    return k


class HallElement:
    """Finitely supported combination of basis elements ``u_alpha``."""

    __slots__ = ("store", "terms")

    def __init__(self, store: TableStore, terms: dict | None = None):
        self.store = store
        self.terms = _clean(terms or {})

    @classmethod
    def basis(cls, store: TableStore, key: ClassKey) -> "HallElement":
        dim, cid = key
        dim = store.quiver.dim(dim)
        if not 0 <= cid < len(store.table(dim)):
            raise KeyError(f"no class {cid} in dimension {tuple(dim)}")
        return cls(store, {(dim, cid): SqrtQScalar(1, 0, store.q)})

    @classmethod
    def unit(cls, store: TableStore) -> "HallElement":
        return cls.basis(store, store.empty)

    def _new(self, terms):
        return HallElement(self.store, terms)

    def __add__(self, other: "HallElement"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElement":
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return hall_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int):
        out = HallElement.unit(self.store)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, key: ClassKey) -> SqrtQScalar:
        dim, cid = key
        return self.terms.get((self.store.quiver.dim(dim), cid), SqrtQScalar(0, 0, self.store.q))

    def __repr__(self):
        inner = " + ".join(f"({c})*u[{list(k[0])}#{k[1]}]" for k, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])))
        return f"HallElement({inner or '0'})"

    def to_json(self) -> list[dict]:
        return [{"dim": list(k[0]), "class": k[1], **c.to_json()}
                for k, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))]

    @classmethod
    def from_json(cls, store: TableStore, data: Iterable[dict]) -> "HallElement":
        terms = {}
        for t in data:
            key = (store.quiver.dim(t["dim"]), int(t["class"]))
            terms[key] = SqrtQScalar(Fraction(t["a"]), Fraction(t["b"]), store.q)
        return cls(store, terms)


class TensorElement:
    """Finitely supported combination of ``u_alpha (x) u_beta``."""

    __slots__ = ("store", "terms")

    def __init__(self, store: TableStore, terms: dict | None = None):
        self.store = store
        self.terms = _clean(terms or {})

    @classmethod
    def basis(cls, store: TableStore, a: ClassKey, b: ClassKey) -> "TensorElement":
        return cls(store, {(a, b): SqrtQScalar(1, 0, store.q)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.store, out)

    def __neg__(self):
        return TensorElement(self.store, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorElement(self.store, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, a: ClassKey, b: ClassKey) -> SqrtQScalar:
        return self.terms.get((a, b), SqrtQScalar(0, 0, self.store.q))

    def __repr__(self):
        inner = " + ".join(f"({c})*u[{list(a[0])}#{a[1]}](x)u[{list(b[0])}#{b[1]}]"
                           for (a, b), c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])))
        return f"TensorElement({inner or '0'})"


# products ------------------------------------------------------------------

def _basis_product(store: TableStore, a: ClassKey, b: ClassKey) -> dict:
    cache = store.products
    hit = cache.get((a, b))
    if hit is not None:
        return hit
    gamma_dim = a[0] + b[0]
    twist = SqrtQScalar.v_power(store.q, euler_form(store.quiver, a[0], b[0]))
    out = {}
    for g in store.classes(gamma_dim):
        n = store.hall_number(g, a, b)
        if n:
            out[g] = twist * n
    cache[(a, b)] = out
    return out


def hall_multiply(x: HallElement, y: HallElement) -> HallElement:
    """Bilinear extension of ``u_a * u_b = v^<a,b> sum_c g^c_{ab} u_c``."""
    if x.store is not y.store:
        raise ValueError("elements live over different table stores")
    out: dict = {}
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            c = ca * cb
            for kg, coeff in _basis_product(x.store, ka, kb).items():
                term = c * coeff
                out[kg] = out[kg] + term if kg in out else term
    return HallElement(x.store, out)


def _basis_coproduct(store: TableStore, g: ClassKey) -> dict:
    cache = store.coproducts
    hit = cache.get(g)
    if hit is not None:
        return hit
    out = {}
    a_g = store.aut(g)
    for (a, b), n in store.filtrations(g).items():
        coeff = Fraction(store.aut(a) * store.aut(b) * n, a_g)
        out[(a, b)] = SqrtQScalar.v_power(store.q, euler_form(store.quiver, a[0], b[0])) * coeff
    cache[g] = out
    return out


def hall_comultiply(x: HallElement) -> TensorElement:
    """Green's coproduct ``D(u_c) = sum v^<a,b> a_a a_b / a_c g^c_{ab} u_a (x) u_b``."""
    out: dict = {}
    for kg, cg in x.terms.items():
        for pair, coeff in _basis_coproduct(x.store, kg).items():
            term = cg * coeff
            out[pair] = out[pair] + term if pair in out else term
    return TensorElement(x.store, out)


def twisted_tensor_multiply(s: TensorElement, t: TensorElement, sign: int) -> TensorElement:
    """``(u_a (x) u_b)(u_c (x) u_d) = v^(sign (b, c)) (u_a*u_c) (x) (u_b*u_d)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    store = s.store
    Q, q = store.quiver, store.q
    out: dict = {}
    for (a, b), c1 in s.terms.items():
        for (c, d), c2 in t.terms.items():
            twist = SqrtQScalar.v_power(q, sign * symmetric_euler_form(Q, b[0], c[0]))
            scale = c1 * c2 * twist
            left = _basis_product(store, a, c)
            right = _basis_product(store, b, d)
            for ka, la in left.items():
                for kb, rb in right.items():
                    term = scale * la * rb
                    out[(ka, kb)] = out[(ka, kb)] + term if (ka, kb) in out else term
    return TensorElement(store, out)


def tensor_apply(t: TensorElement, left=None, right=None) -> "TensorElement | dict":
    """Apply ``D`` to one factor of a tensor, producing a triple-tensor dict.

    ``left=True`` gives ``(D (x) id) t``; ``right=True`` gives ``(id (x) D) t``.
    Keys of the returned dict are ``(a, b, c)``.
    """
    store = t.store
    out: dict = {}
    for (a, b), c in t.terms.items():
        if left:
            for (a1, a2), co in _basis_coproduct(store, a).items():
                k = (a1, a2, b)
                out[k] = out[k] + c * co if k in out else c * co
        else:
            for (b1, b2), co in _basis_coproduct(store, b).items():
                k = (a, b1, b2)
                out[k] = out[k] + c * co if k in out else c * co
    return _clean(out)


# quantum integers and Serre relations --------------------------------------

def quantum_integer(m: int, q: int) -> SqrtQScalar:
    """``[m]_v = (v^m - v^-m) / (v - v^-1)`` at ``v = sqrt(q)``."""
    v = SqrtQScalar.sqrt_q(q)
    if m == 0:
        return SqrtQScalar(0, 0, q)
    return (v ** m - v ** (-m)) / (v - v ** (-1))


def gaussian_binomial(n: int, k: int, q: int) -> SqrtQScalar:
    """Symmetric Gaussian binomial ``[n choose k]_v`` at ``v = sqrt(q)``."""
    if k < 0 or n < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    out = SqrtQScalar(1, 0, q)
    for i in range(k):
        out = out * quantum_integer(n - i, q) / quantum_integer(i + 1, q)
    return out


def simple_key(store: TableStore, vertex) -> ClassKey:
    dim = store.quiver.simple(vertex)
    if len(store.table(dim)) != 1:
        raise ValueError(f"vertex {vertex} carries a loop; the simple class is not unique")
    return (dim, 0)


def serre_defect(store: TableStore, i, j) -> HallElement:
    """``sum_p (-1)^p [n choose p] u_i^p u_j u_i^(n-p)`` with ``n = 1 - (e_i, e_j)``.

    Ringel's theorem says this is zero.
    """
    Q = store.quiver
    i, j = str(i), str(j)
    if i == j:
        raise ValueError("the Serre relation needs two distinct vertices")
    for v in (i, j):
        if Q.has_loop(v):
            raise ValueError(f"vertex {v} has a loop; Serre relations apply only to loop-free vertices")
    a_ij = symmetric_euler_form(Q, Q.simple(i), Q.simple(j))
    n = 1 - a_ij
    ui = HallElement.basis(store, simple_key(store, i))
    uj = HallElement.basis(store, simple_key(store, j))
    total = HallElement(store)
    for p in range(n + 1):
        coeff = gaussian_binomial(n, p, store.q) * (-1) ** p
        total = total + ((ui ** p) * uj * (ui ** (n - p))).scale(coeff)
    return total
