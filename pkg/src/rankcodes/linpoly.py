"""Linearized polynomials f(x) = sum_p f_p x^(q^p) over GF(q^n).

These are the GF(q)-linear maps of the extension field; the decoder's
error-span polynomial lives here.  Coefficients are stored low-to-high
with the trailing coefficient nonzero (the zero polynomial stores none).
"""

from __future__ import annotations

from .field import FieldTower
from .qlinalg import nullspace_q


class LinearizedPoly:
    def __init__(self, tower: FieldTower, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.tower = tower
        self.coeffs = tuple(coeffs)

    @classmethod
    def identity(cls, tower: FieldTower) -> "LinearizedPoly":
        return cls(tower, (1,))

    @classmethod
    def zero(cls, tower: FieldTower) -> "LinearizedPoly":
        return cls(tower, ())

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def q_degree(self) -> int:
        """Index of the highest nonzero coefficient; -1 for the zero map."""
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        t = self.tower
        acc = 0
        for p, c in enumerate(self.coeffs):
            if c:
                acc = t.add(acc, t.mul(c, t.frobenius(x, p)))
        return acc

    def add(self, other: "LinearizedPoly") -> "LinearizedPoly":
        t = self.tower
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = t.add(out[i], c)
        return LinearizedPoly(t, out)

    def scale(self, c: int) -> "LinearizedPoly":
        t = self.tower
        return LinearizedPoly(t, (t.mul(c, v) for v in self.coeffs))

    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        """Symbolic composition, so evaluate(compose(f,g), x) = f(g(x))."""
        t = self.tower
        if self.is_zero or other.is_zero:
            return LinearizedPoly.zero(t)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, fi in enumerate(self.coeffs):
            if fi:
                for j, gj in enumerate(other.coeffs):
                    if gj:
                        out[i + j] = t.add(out[i + j], t.mul(fi, t.frobenius(gj, i)))
        return LinearizedPoly(t, out)

    def root_space_basis(self):
        """q-ary basis of the kernel {x : f(x) = 0}; size <= q_degree."""
        if self.is_zero:
            raise ValueError("zero polynomial vanishes everywhere")
        t = self.tower
        n, q = t.n, t.q
        cols = [t.digits(self.evaluate(q**j)) for j in range(n)]
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        return [t.from_digits(v) for v in nullspace_q(matrix, q)]

    def __eq__(self, other):
        return (isinstance(other, LinearizedPoly)
                and self.tower == other.tower and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.tower, self.coeffs))

    def __repr__(self):
        return f"LinearizedPoly({self.coeffs})"


def min_subspace_poly(tower: FieldTower, elements) -> LinearizedPoly:
    """Monic linearized polynomial of minimal q-degree vanishing on the
    GF(q)-span of `elements` (a test oracle for the decoder's span step).

    Built iteratively: adjoin one value v at a time via
    sigma' = sigma^(q) - sigma(v)^(q-1) * sigma; values already in the
    kernel are skipped, so dependent inputs are fine.
    """
    sigma = LinearizedPoly.identity(tower)
    for v in elements:
        w = sigma.evaluate(v)
        if w == 0:
            continue
        shifted = LinearizedPoly(tower, (0,) + tuple(tower.frobenius(c, 1) for c in sigma.coeffs))
        sigma = shifted.add(sigma.scale(tower.neg(tower.pow(w, tower.q - 1))))
    return sigma
