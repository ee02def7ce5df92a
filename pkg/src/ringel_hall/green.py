"""Exact checks of Green's formula and of the twisted bialgebra property."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .hall import HallElement, TensorElement, hall_comultiply, hall_multiply, twisted_tensor_multiply
from .quiver import DimVector, dims_up_to, enumerate_quadruples, splittings
from .reps import ClassKey, TableStore


def _check_dims(a: ClassKey, b: ClassKey, ap: ClassKey, bp: ClassKey):
    if a[0] + b[0] != ap[0] + bp[0]:
        raise ValueError(f"dim a + dim b = {tuple(a[0] + b[0])} != dim a' + dim b' = {tuple(ap[0] + bp[0])}")


def green_lhs(store: TableStore, a: ClassKey, b: ClassKey, ap: ClassKey, bp: ClassKey) -> Fraction:
    """``a_a a_b a_a' a_b' sum_c g^c_{ab} g^c_{a'b'} / a_c``."""
    _check_dims(a, b, ap, bp)
    total = Fraction(0)
    for c in store.classes(a[0] + b[0]):
        g1 = store.hall_number(c, a, b)
        if g1:
            g2 = store.hall_number(c, ap, bp)
            if g2:
                total += Fraction(g1 * g2, store.aut(c))
    out = total * store.aut(a) * store.aut(b) * store.aut(ap) * store.aut(bp)
    assert out >= 0
    return out


def _by_dim(filtrations: dict) -> dict:
    grouped: dict = {}
    for (x, y), n in filtrations.items():
        grouped.setdefault((x[0], y[0]), []).append((x, y, n))
    return grouped


def green_rhs(store: TableStore, a: ClassKey, b: ClassKey, ap: ClassKey, bp: ClassKey) -> Fraction:
    """Sum over quadruples ``(a1, a2, b1, b2)`` of
    ``q^(ext - hom)(a1, b2) g^a_{a1 a2} g^b_{b1 b2} g^a'_{a1 b1} g^b'_{a2 b2} a_a1 a_a2 a_b1 a_b2``."""
    _check_dims(a, b, ap, bp)
    q = store.q
    fa, fb = _by_dim(store.filtrations(a)), _by_dim(store.filtrations(b))
    total = Fraction(0)
    for lam in enumerate_quadruples(a[0], b[0], ap[0], bp[0]):
        a_parts = fa.get((lam.a1, lam.a2), [])
        b_parts = fb.get((lam.b1, lam.b2), [])
        for a1, a2, ga in a_parts:
            for b1, b2, gb in b_parts:
                g3 = store.hall_number(ap, a1, b1)
                if not g3:
                    continue
                g4 = store.hall_number(bp, a2, b2)
                if not g4:
                    continue
                exponent = store.ext1_dim(a1, b2) - store.hom_dim(a1, b2)
                weight = Fraction(q) ** exponent
                total += (weight * ga * gb * g3 * g4
                          * store.aut(a1) * store.aut(a2) * store.aut(b1) * store.aut(b2))
    assert total >= 0
    return total


@dataclass
class GreenInstance:
    a: ClassKey
    b: ClassKey
    ap: ClassKey
    bp: ClassKey
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _fmt_key(k: ClassKey) -> str:
    return f"{','.join(map(str, k[0]))}#{k[1]}"


@dataclass
class GreenReport:
    quiver: object
    q: int
    bound: int
    instances: list[GreenInstance] = field(default_factory=list)

    @property
    def all_equal(self) -> bool:
        return all(i.equal for i in self.instances)

    def to_tsv(self) -> str:
        lines = ["alpha\tbeta\talpha'\tbeta'\tlhs\trhs\tequal"]
        for i in self.instances:
            lines.append("\t".join([_fmt_key(i.a), _fmt_key(i.b), _fmt_key(i.ap), _fmt_key(i.bp),
                                    str(i.lhs), str(i.rhs), str(i.equal).lower()]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "q": self.q,
            "bound": self.bound,
            "all_equal": self.all_equal,
            "instances": [
                {"alpha": _fmt_key(i.a), "beta": _fmt_key(i.b), "alphap": _fmt_key(i.ap),
                 "betap": _fmt_key(i.bp), "lhs": str(i.lhs), "rhs": str(i.rhs), "equal": i.equal}
                for i in self.instances
            ],
        }


def green_instances(store: TableStore, bound: int) -> Iterator[tuple]:
    """Every ``(a, b, a', b')`` with dim a + dim b = dim a' + dim b' of total <= bound."""
    for gamma in dims_up_to(store.quiver.n, bound):
        pairs = [(x, y) for d1, d2 in splittings(gamma)
                 for x in store.classes(d1) for y in store.classes(d2)]
        for a, b in pairs:
            for ap, bp in pairs:
                yield a, b, ap, bp


def sweep_green(store: TableStore, bound: int) -> GreenReport:
    report = GreenReport(store.quiver, store.q, bound)
    for a, b, ap, bp in green_instances(store, bound):
        report.instances.append(GreenInstance(a, b, ap, bp, green_lhs(store, a, b, ap, bp),
                                              green_rhs(store, a, b, ap, bp)))
    return report


# bialgebra -----------------------------------------------------------------

def bialgebra_defect(store: TableStore, x: ClassKey, y: ClassKey, sign: int) -> TensorElement:
    """``D(u_x * u_y) - D(u_x) . D(u_y)`` with the twisted tensor product of the given sign."""
    ux, uy = HallElement.basis(store, x), HallElement.basis(store, y)
    lhs = hall_comultiply(hall_multiply(ux, uy))
    rhs = twisted_tensor_multiply(hall_comultiply(ux), hall_comultiply(uy), sign)
    return lhs - rhs


def basis_pairs(store: TableStore, bound: int) -> Iterator[tuple[ClassKey, ClassKey]]:
    dims = dims_up_to(store.quiver.n, bound)
    for d1 in dims:
        for d2 in dims:
            if sum(d1) + sum(d2) <= bound:
                for x in store.classes(d1):
                    for y in store.classes(d2):
                        yield x, y


def surviving_twist_signs(store: TableStore, bound: int) -> list[int]:
    """Signs for which the bialgebra defect vanishes on every basis pair within ``bound``."""
    alive = [1, -1]
    for x, y in basis_pairs(store, bound):
        alive = [s for s in alive if not bialgebra_defect(store, x, y, s)]
        if not alive:
            break
    return alive


class NoUniqueConvention(RuntimeError):
    def __init__(self, message, survivors):
        super().__init__(message)
        self.survivors = survivors


def determine_twist_sign(stores: list[TableStore], bound: int) -> int:
    """The unique sign making D multiplicative across all given stores."""
    alive = {1, -1}
    for store in stores:
        alive &= set(surviving_twist_signs(store, bound))
    if len(alive) != 1:
        raise NoUniqueConvention(f"twist signs surviving the sweep: {sorted(alive)}", sorted(alive))
    return alive.pop()


def report_json(report: GreenReport, **extra) -> str:
    data = report.to_json()
    data.update(extra)
    return json.dumps(data, indent=1, sort_keys=True)
