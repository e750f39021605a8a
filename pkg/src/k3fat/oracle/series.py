"""Truncated bivariate power series over F_p and implicit-function solving.

A series is stored as a sparse map (i, j) -> coefficient of s^i t^j with
i + j <= order; all products are truncated at that total degree.  The
implicit solve lifts z = phi(s, t) with f(p1 + s, p2 + t, phi) = 0 through
Newton iteration, doubling the valid order each step, which needs the
z-partial of f to be a unit at the expansion point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .field import inverse_mod


class ChartSingularError(ValueError):
    """The local chart is singular: the solved-coordinate partial vanishes."""


@dataclass(frozen=True)
class Series2:
    """Truncated bivariate power series over F_p."""

    p: int
    order: int
    coeffs: Tuple[Tuple[Tuple[int, int], int], ...]

    @staticmethod
    def from_dict(p: int, order: int, data: Mapping[Tuple[int, int], int]) -> "Series2":
        items = tuple(sorted(
            ((ij, c % p) for ij, c in data.items() if ij[0] + ij[1] <= order and c % p),
        ))
        return Series2(p, order, items)

    @staticmethod
    def constant(p: int, order: int, value: int) -> "Series2":
        return Series2.from_dict(p, order, {(0, 0): value})

    @staticmethod
    def linear(p: int, order: int, const: int, cs: int, ct: int) -> "Series2":
        return Series2.from_dict(p, order, {(0, 0): const, (1, 0): cs, (0, 1): ct})

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.coeffs)

    def coefficient(self, i: int, j: int) -> int:
        return dict(self.coeffs).get((i, j), 0)

    def truncate(self, order: int) -> "Series2":
        if order >= self.order:
            return Series2(self.p, order, self.coeffs)
        return Series2.from_dict(self.p, order, dict(self.coeffs))

    def __add__(self, other: "Series2") -> "Series2":
        out = dict(self.coeffs)
        for ij, c in other.coeffs:
            out[ij] = (out.get(ij, 0) + c) % self.p
        return Series2.from_dict(self.p, min(self.order, other.order), out)

    def __sub__(self, other: "Series2") -> "Series2":
        out = dict(self.coeffs)
        for ij, c in other.coeffs:
            out[ij] = (out.get(ij, 0) - c) % self.p
        return Series2.from_dict(self.p, min(self.order, other.order), out)

    def __mul__(self, other: "Series2") -> "Series2":
        order = min(self.order, other.order)
        p = self.p
        out: Dict[Tuple[int, int], int] = {}
        for (i1, j1), c1 in self.coeffs:
            for (i2, j2), c2 in other.coeffs:
                i, j = i1 + i2, j1 + j2
                if i + j <= order:
                    key = (i, j)
                    out[key] = (out.get(key, 0) + c1 * c2) % p
        return Series2.from_dict(p, order, out)

    def scale(self, factor: int) -> "Series2":
        return Series2.from_dict(self.p, self.order,
                                 {ij: c * factor for ij, c in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def inverse(self) -> "Series2":
        """Multiplicative inverse; requires a unit constant term."""
        c0 = self.coefficient(0, 0)
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv = Series2.constant(self.p, self.order, inverse_mod(c0, self.p))
        two = Series2.constant(self.p, self.order, 2)
        prec = 1
        while prec <= self.order:
            prec *= 2
            inv = inv * (two - self * inv)
        return inv

    def pow(self, e: int) -> "Series2":
        result = Series2.constant(self.p, self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def power_table(series: Series2, max_exp: int) -> list:
    """[series^0, ..., series^max_exp], each truncated at series.order."""
    table = [Series2.constant(series.p, series.order, 1)]
    for _ in range(max_exp):
        table.append(table[-1] * series)
    return table


def eval_poly3(
    coeffs: Mapping[Tuple[int, int, int], int],
    s1: Series2,
    s2: Series2,
    s3: Series2,
) -> Series2:
    """Evaluate a trivariate polynomial at three series arguments."""
    max1 = max((e[0] for e in coeffs), default=0)
    max2 = max((e[1] for e in coeffs), default=0)
    max3 = max((e[2] for e in coeffs), default=0)
    t1 = power_table(s1, max1)
    t2 = power_table(s2, max2)
    t3 = power_table(s3, max3)
    acc = Series2.constant(s1.p, s1.order, 0)
    for (e1, e2, e3), c in coeffs.items():
        if c % s1.p:
            acc = acc + (t1[e1] * t2[e2] * t3[e3]).scale(c)
    return acc


def partial_z(coeffs: Mapping[Tuple[int, int, int], int], p: int) -> Dict[Tuple[int, int, int], int]:
    """Formal partial derivative in the third variable."""
    out: Dict[Tuple[int, int, int], int] = {}
    for (e1, e2, e3), c in coeffs.items():
        if e3 > 0:
            out[(e1, e2, e3 - 1)] = (out.get((e1, e2, e3 - 1), 0) + e3 * c) % p
    return out


def eval_poly3_scalar(
    coeffs: Mapping[Tuple[int, int, int], int], x1: int, x2: int, x3: int, p: int
) -> int:
    acc = 0
    for (e1, e2, e3), c in coeffs.items():
        acc = (acc + c * pow(x1, e1, p) * pow(x2, e2, p) * pow(x3, e3, p)) % p
    return acc


def solve_implicit(
    coeffs: Mapping[Tuple[int, int, int], int],
    p1: int,
    p2: int,
    p3: int,
    order: int,
    p: int,
) -> Series2:
    """Series phi with f(p1 + s, p2 + t, phi) = 0 mod total degree > order,
    phi(0, 0) = p3, for a trivariate polynomial f vanishing at (p1, p2, p3)
    whose third-variable partial is nonzero there.

    Newton iteration phi <- phi - f(phi)/f_z(phi), run at doubling precision.
    """
    fz = partial_z(coeffs, p)
    if eval_poly3_scalar(fz, p1, p2, p3, p) == 0:
        raise ChartSingularError("z-partial vanishes at the expansion point")
    if eval_poly3_scalar(coeffs, p1, p2, p3, p) != 0:
        raise ValueError("the polynomial does not vanish at the expansion point")

    phi = Series2.constant(p, 0, p3)
    prec = 0
    while prec < order:
        prec = min(2 * prec + 1, order)
        phi = Series2.from_dict(p, prec, phi.as_dict())
        u = Series2.linear(p, prec, p1, 1, 0)
        v = Series2.linear(p, prec, p2, 0, 1)
        f_val = eval_poly3(coeffs, u, v, phi)
        fz_val = eval_poly3(fz, u, v, phi)
        phi = phi - f_val * fz_val.inverse()

    # Sanity: residual must vanish through the requested order.
    u = Series2.linear(p, order, p1, 1, 0)
    v = Series2.linear(p, order, p2, 0, 1)
    if not eval_poly3(coeffs, u, v, phi).is_zero():
        raise ArithmeticError("implicit solve did not converge to the requested order")
    return phi
