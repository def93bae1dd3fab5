"""Subspace subcodes of a Gabidulin code.

For an m-dimensional GF(q)-subspace V of GF(q^n), the subcode keeps the
codewords whose components all lie in V.  It is additive, not linear, and
is carried bijectively onto a shorter [m, m-d+1, d] "parent" code by a
rank-preserving coordinate transfer; en/decoding run through the parent.
"""

from __future__ import annotations

from .field import FieldTower
from .gabidulin import DecodingFailure, GabidulinCode, dual_vector
from .qlinalg import CoordinateSolver, rank_of_vector

_ENUM_GUARD = 1 << 20


class TrivialSubcodeError(Exception):
    """The subspace dimension is below the minimum distance, so the
    subcode contains only the zero word."""


class SubspaceBasis:
    """Ordered basis (beta_1, ..., beta_m) of a subspace of GF(q^n)."""

    def __init__(self, tower: FieldTower, elements):
        elements = tuple(int(b) for b in elements)
        if rank_of_vector(tower, elements) != len(elements):
            raise ValueError("basis elements are linearly dependent over GF(q)")
        self.tower = tower
        self.elements = elements
        self.m = len(elements)
        self._solver = CoordinateSolver(
            tower.q, [tower.digits(b) for b in elements])

    def coords(self, x: int):
        """q-ary coordinates of x over the basis, or None if x is outside."""
        return self._solver.solve(self.tower.digits(x))

    def contains(self, x: int) -> bool:
        return self.coords(x) is not None

    def element(self, coords) -> int:
        return self.tower.contract(coords, self.elements)

    def decompose(self, vector):
        """The unique m x len(vector) q-ary matrix U with vector = basis * U."""
        cols = []
        for i, x in enumerate(vector):
            u = self.coords(x)
            if u is None:
                raise ValueError(f"component {i} lies outside the subspace")
            cols.append(u)
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.m)]

    def recompose(self, u_matrix):
        """Vector basis * U for an m x L coefficient matrix U."""
        t = self.tower
        length = len(u_matrix[0]) if u_matrix else 0
        out = []
        for j in range(length):
            acc = 0
            for i in range(self.m):
                c = u_matrix[i][j]
                if c:
                    acc = t.add(acc, t.mul(c, self.elements[i]))
            out.append(acc)
        return tuple(out)

    def span(self):
        """All q^m subspace elements (tiny subspaces only)."""
        if self.tower.q**self.m > _ENUM_GUARD:
            raise ValueError("subspace too large to enumerate")
        out = []
        for idx in range(self.tower.q**self.m):
            coords = []
            v = idx
            for _ in range(self.m):
                coords.append(v % self.tower.q)
                v //= self.tower.q
            out.append(self.element(coords))
        return out

    def __repr__(self):
        return f"SubspaceBasis(m={self.m}, elements={self.elements})"


class SubspaceSubcode:
    """The subcode of `code` over the subspace spanned by `basis`.

    When m >= d the parent [m, m-d+1, d] code is materialized on the
    vector beta^[n-d+2], whose Moore rows reproduce the parent parity
    rows in reverse order; the ambient decoder is reused on it verbatim.
    For m < d the subcode is just the zero word and has no parent.
    """

    def __init__(self, code: GabidulinCode, basis: SubspaceBasis):
        if code.length != code.tower.n:
            raise ValueError("subspace subcodes need a full-length ambient code")
        self.code = code
        self.basis = basis
        self.tower = code.tower
        self.d = code.d
        m, d, n = basis.m, code.d, code.tower.n
        if m >= d:
            parent_h = tuple(self.tower.frobenius(b, n - d + 2)
                             for b in basis.elements)
            parent_g = dual_vector(self.tower, parent_h, d - 1)
            self.parent = GabidulinCode(self.tower, m - d + 1,
                                        g=parent_g, h=parent_h)
        else:
            self.parent = None

    @property
    def is_trivial(self) -> bool:
        return self.parent is None

    @property
    def cardinality(self) -> int:
        if self.is_trivial:
            return 1
        return self.tower.order ** (self.basis.m - self.d + 1)

    def parent_parity_rows(self):
        """Rows beta^[n], beta^[n-1], ..., beta^[n-d+2] defining the parent."""
        t, n = self.tower, self.tower.n
        return [[t.frobenius(b, n - i) for b in self.basis.elements]
                for i in range(self.d - 1)]

    # -- the rank-preserving transfer map ------------------------------------

    def to_parent(self, vector):
        """Transfer a vector with components in V onto GF(q^n)^m: with
        vector = basis * U this is h * U^t.  Preserves q-ary rank."""
        u = self.basis.decompose(vector)
        t = self.tower
        return tuple(t.contract(row, self.code.h) for row in u)

    def from_parent(self, vector):
        """Inverse transfer: expand each component over the parity basis h
        to recover U, then return basis * U."""
        if len(vector) != self.basis.m:
            raise ValueError(f"expected length {self.basis.m}")
        u = [self.code.parity_coordinates(x) for x in vector]
        return self.basis.recompose(u)

    # -- coding ---------------------------------------------------------------

    def encode(self, message):
        """Encode in the parent code, then transfer into the subcode."""
        if self.is_trivial:
            raise TrivialSubcodeError(
                f"m = {self.basis.m} < d = {self.d}: only the zero word")
        return self.from_parent(self.parent.encode(message))

    def decode(self, received, route: str = "parent"):
        """Decode a received word with components in V.

        route="parent" maps through the transfer and decodes in the parent
        code; route="ambient" decodes in the full-length code directly.
        Both return the same (codeword, error) whenever the error rank is
        within capability.
        """
        if route not in ("parent", "ambient"):
            raise ValueError(f"unknown decoding route {route!r}")
        received = tuple(received)
        if route == "ambient":
            self.basis.decompose(received)  # enforce the V^n precondition
            codeword, error = self.code.decode(received)
            if not all(self.basis.contains(x) for x in codeword):
                raise DecodingFailure("nearest codeword leaves the subspace")
            return codeword, error
        if self.is_trivial:
            raise TrivialSubcodeError("trivial subcode has no parent decoder")
        folded = self.to_parent(received)
        pc, pe = self.parent.decode(folded)
        return self.from_parent(pc), self.from_parent(pe)

    # -- enumeration ------------------------------------------------------------

    def codewords(self):
        """All subcode words, constructively: encode every parent message
        and transfer (guarded by the subcode cardinality)."""
        if self.is_trivial:
            return [(0,) * self.code.length]
        if self.cardinality > _ENUM_GUARD:
            raise ValueError("subcode is too large to enumerate")
        return [self.encode(msg) for msg in self.parent.messages()]

    def codewords_brute_force(self):
        """Independent oracle: filter every ambient codeword for
        componentwise membership in V (guarded by the ambient code size)."""
        out = []
        for c in self.code.codewords():
            if all(self.basis.contains(x) for x in c):
                out.append(c)
        return out

    def __repr__(self):
        return f"SubspaceSubcode(m={self.basis.m}, code={self.code!r})"
