"""Gabidulin maximum-rank-distance codes.

A code of length L <= n and dimension k over GF(q^n) is defined by a
generator vector g (rows of the generator matrix are the Frobenius powers
g, g^[1], ..., g^[k-1]) or a parity vector h (rows h, h^[1], ..., h^[d-2]
with d = L - k + 1).  Decoding is bounded-rank-distance syndrome decoding
through the error-span polynomial.
"""

from __future__ import annotations

import itertools

from .field import FieldTower
from .linpoly import LinearizedPoly
from .qlinalg import CoordinateSolver, ext_nullspace, ext_solve, rank_of_vector

_ENUM_GUARD = 1 << 20


class DecodingFailure(Exception):
    """No codeword within the guaranteed decoding radius."""


def moore_matrix(tower: FieldTower, vector, rows: int):
    """Matrix whose row i is the componentwise Frobenius power [i] of vector."""
    if rows < 1:
        raise ValueError("a Moore matrix needs at least one row")
    return [[tower.frobenius(x, i) for x in vector] for i in range(rows)]


def dual_vector(tower: FieldTower, g, k: int):
    """Parity vector h of the code with generator vector g and dimension k.

    h is the unique (up to scalar) solution of sum_i g_i^[mu] h_i = 0 for
    mu = -(L-k-1), ..., k-1; it is canonicalized so its first nonzero
    component is 1.
    """
    g = tuple(g)
    length = len(g)
    if rank_of_vector(tower, g) != length:
        raise ValueError("generator vector components are linearly dependent")
    if not 1 <= k <= length - 1:
        raise ValueError(f"dimension {k} outside 1..{length - 1}")
    rows = [[tower.frobenius(gi, mu) for gi in g]
            for mu in range(-(length - k - 1), k)]
    basis = ext_nullspace(tower, rows)
    if len(basis) != 1:
        raise ValueError("dual system is degenerate")  # pragma: no cover
    h = basis[0]
    lead = next(x for x in h if x)
    scale = tower.inv(lead)
    h = tuple(tower.mul(scale, x) for x in h)
    if rank_of_vector(tower, h) != length:
        raise ValueError("dual vector is rank deficient")  # pragma: no cover
    return h


def default_generator(tower: FieldTower):
    """Canonical generator vector: the Frobenius orbit of the smallest
    normal element, falling back to the polynomial basis."""
    for cand in range(1, tower.order):
        orbit = tuple(tower.frobenius(cand, i) for i in range(tower.n))
        if rank_of_vector(tower, orbit) == tower.n:
            return orbit
    return tower.basis  # pragma: no cover


class GabidulinCode:
    """[L, k, d = L-k+1] maximum-rank-distance code over GF(q^n), L <= n.

    Built from a generator vector (the parity vector is derived), from a
    parity vector (decode-only), or from both (checked for consistency).
    """

    def __init__(self, tower: FieldTower, k: int, g=None, h=None):
        if g is None and h is None:
            raise ValueError("need a generator vector, a parity vector, or both")
        length = len(g) if g is not None else len(h)
        if not 1 <= k <= length - 1:
            raise ValueError(f"dimension {k} outside 1..{length - 1}")
        if length > tower.n:
            raise ValueError("code length exceeds the extension degree")
        self.tower = tower
        self.length = length
        self.k = k
        self.d = length - k + 1
        self.capability = (self.d - 1) // 2
        if g is not None:
            g = tuple(g)
            if len(g) != length or rank_of_vector(tower, g) != length:
                raise ValueError("generator vector must have full q-ary rank")
        if h is None:
            h = dual_vector(tower, g, k)
        else:
            h = tuple(h)
            if len(h) != length or rank_of_vector(tower, h) != length:
                raise ValueError("parity vector must have full q-ary rank")
        self.g = g
        self.h = h
        self._gen_rows = moore_matrix(tower, g, k) if g is not None else None
        self._par_rows = moore_matrix(tower, h, self.d - 1)
        self._h_solver = CoordinateSolver(tower.q, [tower.digits(x) for x in h])
        if g is not None:
            self._check_orthogonal()

    @classmethod
    def from_generator(cls, tower, g, k):
        return cls(tower, k, g=g)

    @classmethod
    def from_parity(cls, tower, h, k):
        return cls(tower, k, h=h)

    def _check_orthogonal(self):
        t = self.tower
        for grow in self._gen_rows:
            for hrow in self._par_rows:
                acc = 0
                for a, b in zip(grow, hrow):
                    acc = t.add(acc, t.mul(a, b))
                if acc:
                    raise ValueError("generator and parity vectors are not dual")

    @property
    def generator_matrix(self):
        if self._gen_rows is None:
            raise ValueError("code was built from a parity vector only")
        return [list(r) for r in self._gen_rows]

    @property
    def parity_matrix(self):
        return [list(r) for r in self._par_rows]

    def encode(self, message):
        if self._gen_rows is None:
            raise ValueError("encoding needs a generator vector")
        message = tuple(message)
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k = {self.k}")
        t = self.tower
        out = []
        for j in range(self.length):
            acc = 0
            for i, x in enumerate(message):
                if x:
                    acc = t.add(acc, t.mul(x, self._gen_rows[i][j]))
            out.append(acc)
        return tuple(out)

    def syndromes(self, word):
        word = tuple(word)
        if len(word) != self.length:
            raise ValueError(f"word length {len(word)} != {self.length}")
        t = self.tower
        out = []
        for hrow in self._par_rows:
            acc = 0
            for y, hv in zip(word, hrow):
                if y:
                    acc = t.add(acc, t.mul(y, hv))
            out.append(acc)
        return tuple(out)

    def is_codeword(self, word) -> bool:
        return not any(self.syndromes(word))

    def parity_coordinates(self, x: int):
        """q-ary coordinates of x over the parity basis (h_1, ..., h_L),
        or None when x lies outside their span (possible only for L < n)."""
        return self._h_solver.solve(self.tower.digits(x))

    def _key_equation(self, synd, t_try):
        """Error-span polynomial of q-degree t_try (monic) satisfying the
        syndrome recursion, or None when the system is inconsistent."""
        t = self.tower
        rows = []
        rhs = []
        for l in range(t_try, self.d - 1):
            rows.append([t.frobenius(synd[l - p], p) for p in range(t_try)])
            rhs.append(t.neg(t.frobenius(synd[l - t_try], t_try)))
        sol = ext_solve(t, rows, rhs)
        if sol is None:
            return None
        return LinearizedPoly(t, tuple(sol[0]) + (1,))

    def decode(self, received):
        """Return (codeword, error) with rank(error) <= capability.

        Raises DecodingFailure when no codeword lies within the decoding
        radius; never returns a word with nonzero syndromes.
        """
        y = tuple(received)
        synd = self.syndromes(y)
        if not any(synd):
            return y, (0,) * self.length
        t = self.tower
        for t_try in range(1, self.capability + 1):
            sigma = self._key_equation(synd, t_try)
            if sigma is None:
                continue
            values = sigma.root_space_basis()
            if len(values) != t_try:
                continue
            # Solve sum_j values_j^[-l] x_j = synd_l^[-l]; x_j is the h-expansion
            # of the error locator combination for value j.
            rows = [[t.frobenius(v, -l) for v in values] for l in range(self.d - 1)]
            rhs = [t.frobenius(synd[l], -l) for l in range(self.d - 1)]
            sol = ext_solve(t, rows, rhs)
            if sol is None:
                continue
            locators = []
            for xj in sol[0]:
                coords = self.parity_coordinates(xj)
                if coords is None:
                    break
                locators.append(coords)
            if len(locators) != t_try:
                continue
            error = []
            for i in range(self.length):
                acc = 0
                for j in range(t_try):
                    c = locators[j][i]
                    if c:
                        acc = t.add(acc, t.mul(c, values[j]))
                error.append(acc)
            codeword = tuple(t.sub(yi, ei) for yi, ei in zip(y, error))
            if any(self.syndromes(codeword)):
                continue
            return codeword, tuple(error)
        raise DecodingFailure(
            f"no codeword within rank distance {self.capability}")

    # -- exhaustive oracles (tiny codes only) --------------------------------

    def messages(self):
        if self._gen_rows is None:
            raise ValueError("enumeration needs a generator vector")
        if self.tower.order**self.k > _ENUM_GUARD:
            raise ValueError("code is too large to enumerate")
        return itertools.product(range(self.tower.order), repeat=self.k)

    def codewords(self):
        """All codewords, by brute-force encoding (guarded)."""
        for message in self.messages():
            yield self.encode(message)

    def exhaustive_min_distance(self) -> int:
        """Minimum nonzero rank over the whole code, by enumeration."""
        best = None
        for c in self.codewords():
            if any(c):
                r = rank_of_vector(self.tower, c)
                if best is None or r < best:
                    best = r
        if best is None:
            raise ValueError("code has no nonzero codeword")  # pragma: no cover
        return best

    def __repr__(self):
        return (f"GabidulinCode(q={self.tower.q}, n={self.tower.n}, "
                f"length={self.length}, k={self.k}, d={self.d})")
