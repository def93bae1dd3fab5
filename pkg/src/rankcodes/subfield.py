"""Subfield subcodes (codewords with components in GF(q^s), s | n).

The subfield is realized inside GF(q^n) as the fixed field of the s-th
Frobenius power, with a canonical polynomial basis.  The parity-check
matrix of the subfield subcode factors as blockdiag(A, ..., A) * S where
A is the Moore matrix of the subfield basis and S is an invertible q-ary
matrix, unique once A, the subfield basis, and the extension basis are
fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import FieldTower
from .gabidulin import GabidulinCode, moore_matrix
from .qlinalg import (CoordinateSolver, mat_inv_q, mat_mul_q, nullspace_q,
                      rank_of_vector, solve_q)

_ENUM_GUARD = 1 << 20


class SubfieldEmbedding:
    """GF(q^s) sitting inside GF(q^n) as the fixed field of x -> x^[s].

    Carries a canonical polynomial basis (1, theta, ..., theta^(s-1)) of
    the subfield over GF(q) and a basis (1, alpha, ..., alpha^(n/s - 1))
    of the big field over the subfield, plus the coordinate maps for both.
    """

    def __init__(self, tower: FieldTower, s: int, ext_basis=None):
        if s < 1 or tower.n % s != 0:
            raise ValueError(f"subfield degree {s} does not divide n = {tower.n}")
        self.tower = tower
        self.s = s
        self.blocks = tower.n // s
        q, n = tower.q, tower.n

        # kernel of the GF(q)-linear map x -> x^[s] - x
        cols = [tower.digits(tower.sub(tower.frobenius(q**j, s), q**j))
                for j in range(n)]
        fixed = [[cols[j][i] for j in range(n)] for i in range(n)]
        kernel = nullspace_q(fixed, q)
        if len(kernel) != s:  # pragma: no cover
            raise RuntimeError("fixed field has unexpected dimension")
        members = sorted(self._span_int(kernel))
        if len(members) > _ENUM_GUARD:
            raise ValueError("subfield too large to enumerate")
        self.elements = tuple(members)

        theta = next(x for x in self.elements if x and rank_of_vector(
            tower, tuple(tower.pow(x, i) for i in range(s))) == s)
        self.generator = theta
        self.poly_basis = tuple(tower.pow(theta, i) for i in range(s))
        self._sub_solver = CoordinateSolver(
            q, [tower.digits(a) for a in self.poly_basis])

        if ext_basis is None:
            alpha = q if n > 1 else 1
            ext_basis = tuple(tower.pow(alpha, r) for r in range(self.blocks))
        else:
            ext_basis = tuple(ext_basis)
            if len(ext_basis) != self.blocks:
                raise ValueError(f"extension basis needs {self.blocks} elements")
        self.ext_basis = ext_basis
        # combined q-ary basis a_e * gamma_r, block-major in r
        combined = [tower.digits(tower.mul(a, g))
                    for g in ext_basis for a in self.poly_basis]
        self._full_solver = CoordinateSolver(q, combined)

    def _span_int(self, kernel_rows):
        t = self.tower
        out = {0}
        for row in kernel_rows:
            v = t.from_digits(row)
            out |= {t.add(x, t.mul(c, v)) for x in out for c in range(1, t.q)}
        return out

    def contains(self, x: int) -> bool:
        return self.tower.frobenius(x, self.s) == x

    def subfield_coords(self, x: int):
        """GF(q) coordinates of a subfield element over the polynomial
        basis, or None when x is not in the subfield."""
        return self._sub_solver.solve(self.tower.digits(x))

    def ext_coords(self, x: int):
        """Subfield coordinates of any x over the extension basis."""
        digits = self._full_solver.solve(self.tower.digits(x))
        t, s = self.tower, self.s
        return tuple(t.contract(digits[r * s:(r + 1) * s], self.poly_basis)
                     for r in range(self.blocks))

    def contract_ext(self, coords) -> int:
        t = self.tower
        acc = 0
        for c, g in zip(coords, self.ext_basis):
            if c:
                acc = t.add(acc, t.mul(c, g))
        return acc

    def __repr__(self):
        return f"SubfieldEmbedding(q={self.tower.q}, n={self.tower.n}, s={self.s})"


def expand_parity(code: GabidulinCode, emb: SubfieldEmbedding):
    """The (n/s) x n subfield matrix whose column j holds the coordinates
    of h_j over the extension basis; contracting a column restores h_j."""
    cols = [emb.ext_coords(x) for x in code.h]
    return [[cols[j][r] for j in range(code.length)] for r in range(emb.blocks)]


def _qary_expansion(emb: SubfieldEmbedding, rows):
    """Blow up a subfield matrix s-fold rowwise: each entry becomes its
    GF(q) coordinate column over the subfield polynomial basis."""
    out = []
    for row in rows:
        coords = []
        for x in row:
            c = emb.subfield_coords(x)
            if c is None:
                raise ValueError("entry is not a subfield element")  # pragma: no cover
            coords.append(c)
        for e in range(emb.s):
            out.append([c[e] for c in coords])
    return out


@dataclass
class SubfieldFactorization:
    """Parity factorization blockdiag(block, ..., block) * transform of the
    subfield subcode, together with the basis choices it is relative to."""
    s: int
    subfield_basis: tuple
    ext_basis: tuple
    block: list           # (d-1) x s Moore matrix of the subfield basis
    transform: list       # n x n invertible q-ary matrix
    parity: list = field(repr=False)  # ((d-1) n/s) x n over the subfield
    embedding: SubfieldEmbedding = field(repr=False)


def block_diagonal(block, copies: int, zero=0):
    rows = len(block)
    cols = len(block[0]) if block else 0
    out = []
    for b in range(copies):
        for r in range(rows):
            row = [zero] * (cols * copies)
            row[b * cols:(b + 1) * cols] = block[r]
            out.append(row)
    return out


def compute_factorization(code: GabidulinCode, s: int,
                          embedding: SubfieldEmbedding = None) -> SubfieldFactorization:
    """Construct the unique q-ary transform S for the fixed canonical
    choices, so blockdiag(A,...,A) * S annihilates exactly the subfield
    subcode among subfield vectors.

    Requires s | n and d - 2 < s.  The construction expands the parity
    vector over the extension basis, views the result as an invertible
    n x n q-ary matrix, and composes with the expansion of the target
    block-diagonal shape.
    """
    tower = code.tower
    if code.length != tower.n:
        raise ValueError("subfield factorization needs a full-length code")
    emb = embedding if embedding is not None else SubfieldEmbedding(tower, s)
    if emb.s != s:
        raise ValueError("embedding degree disagrees with s")
    if code.d - 2 >= s:
        raise ValueError(f"need d - 2 < s (d = {code.d}, s = {s})")

    h_rows = expand_parity(code, emb)
    m_h = _qary_expansion(emb, h_rows)
    target = block_diagonal([list(emb.poly_basis)], emb.blocks)
    t_exp = _qary_expansion(emb, target)
    transform = mat_mul_q(mat_inv_q(t_exp, tower.q), m_h, tower.q)

    block = moore_matrix(tower, emb.poly_basis, code.d - 1)
    big = block_diagonal(block, emb.blocks)
    parity = []
    for row in big:
        out_row = []
        for c in range(tower.n):
            acc = 0
            for j, w in enumerate(row):
                if w and transform[j][c]:
                    acc = tower.add(acc, tower.mul(transform[j][c], w))
            out_row.append(acc)
        parity.append(out_row)
    return SubfieldFactorization(s, emb.poly_basis, emb.ext_basis,
                                 block, transform, parity, emb)


def verify_uniqueness(code: GabidulinCode, factz: SubfieldFactorization):
    """Check that the q-ary system blockdiag(A,...,A) * X = parity has the
    single solution X = transform.

    Returns (True, None) on success, else (False, description); a distinct
    solution would contradict the uniqueness theorem and must fail loudly.
    """
    emb = factz.embedding
    tower = code.tower
    big = block_diagonal(factz.block, emb.blocks)
    coeff = _qary_expansion(emb, big)
    for c in range(tower.n):
        rhs_col = [row[c] for row in factz.parity]
        rhs = []
        for x in rhs_col:
            rhs.extend(emb.subfield_coords(x))
        sol = solve_q(coeff, rhs, tower.q)
        if sol is None:
            return False, f"column {c}: system inconsistent"
        x_col, null = sol
        if null:
            return False, f"column {c}: solution space has dimension {len(null)}"
        expect = [factz.transform[j][c] for j in range(tower.n)]
        if x_col != expect:
            return False, f"column {c}: distinct solution found"
    return True, None


def annihilates(tower: FieldTower, parity_rows, word) -> bool:
    for row in parity_rows:
        acc = 0
        for w, x in zip(row, word):
            if w and x:
                acc = tower.add(acc, tower.mul(w, x))
        if acc:
            return False
    return True


def subfield_success_probability(code: GabidulinCode, s: int, t: int,
                                 form: str = "exact"):
    """Probability of decoding t errors in the subfield subcode: the
    direct-sum formula with n/s parts of dimension s."""
    from .directsum import success_probability

    tower = code.tower
    if s < 1 or tower.n % s != 0:
        raise ValueError(f"subfield degree {s} does not divide n = {tower.n}")
    return success_probability(tower.q, [s] * (tower.n // s),
                               code.capability, t, form=form)
