"""Arithmetic for the field tower GF(q) inside GF(q^n).

Elements of GF(q^n) are plain Python ints: the base-q encoding of the
coefficient vector over the polynomial basis (1, alpha, ..., alpha^(n-1)),
so x == sum(digit_i * q**i).  Elements of GF(q) are ints in [0, q).

A FieldTower is immutable after construction; every operation is a pure
function of its arguments, so towers can be shared freely across threads.
The only mutable state is the `mul_count` statistics counter.
"""

from __future__ import annotations

# Fixed table of default moduli, coefficients low-to-high, all monic.
# The q=2 entries are the classic primitive trinomials/pentanomials; the
# odd-q entries follow the usual Conway choices.  Every entry is re-checked
# for irreducibility at construction time.
_DEFAULT_MODULI = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}

# Above this field size no discrete-log tables are built and arithmetic
# falls back to polynomial multiplication with modular reduction.
_TABLE_LIMIT = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over GF(q); coefficient tuples are low-to-high

def _ptrim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _pmul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _ptrim(out)


def _pmod(a, f, q):
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % q
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % q
    return _ptrim(a[:df])


def _psub(a, b, q):
    m = max(len(a), len(b))
    a = tuple(a) + (0,) * (m - len(a))
    b = tuple(b) + (0,) * (m - len(b))
    return _ptrim(tuple((x - y) % q for x, y in zip(a, b)))


def _pdivmod(a, b, q):
    """Quotient and remainder of a by the nonzero polynomial b."""
    b = _ptrim(b)
    a = list(_ptrim(a))
    db = len(b) - 1
    binv = pow(b[-1], q - 2, q)
    quo = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * binv % q
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % q
    return _ptrim(quo), _ptrim(a)


def _pgcd(a, b, q):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b, q)[1]
    return a


def _ppowmod(a, e, f, q):
    """a**e modulo the monic polynomial f, by square and multiply."""
    result = (1,)
    base = _pmod(a, f, q)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, q), f, q)
        base = _pmod(_pmul(base, base, q), f, q)
        e >>= 1
    return result


def is_irreducible(modulus, q: int) -> bool:
    """Irreducibility test for a monic polynomial over GF(q).

    Uses the Frobenius criterion: x^(q^n) = x mod f together with
    gcd(x^(q^(n/p)) - x, f) = 1 for every prime p dividing n.
    """
    f = _ptrim(modulus)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    need = {n // p for p in _prime_factors(n)}
    h = x
    for j in range(1, n + 1):
        h = _ppowmod(h, q, f, q)
        if j in need and len(_pgcd(_psub(h, x, q), f, q)) > 1:
            return False
    return h == x


def find_irreducible(q: int, n: int):
    """Smallest monic irreducible polynomial of degree n over GF(q)
    in the base-q integer order of its low coefficients."""
    for low in range(q**n):
        digits = []
        v = low
        for _ in range(n):
            digits.append(v % q)
            v //= q
        cand = tuple(digits) + (1,)
        if is_irreducible(cand, q):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {n} over GF({q})")


class FieldTower:
    """The pair GF(q) < GF(q^n) with a fixed modulus and expansion basis.

    Parameters
    ----------
    q : prime order of the base field (prime powers are out of scope here)
    n : extension degree, 1 <= n <= 64
    modulus : optional monic degree-n irreducible over GF(q), coefficients
        low-to-high; defaults to a fixed table entry or, failing that, the
        smallest irreducible polynomial in canonical order.
    basis : optional n-tuple of GF(q^n) elements of full q-ary rank used by
        expand/contract; defaults to the polynomial basis.
    """

    def __init__(self, q: int, n: int, modulus=None, basis=None):
        if not is_prime(q):
            raise ValueError(f"base field order {q} is not prime")
        if not 1 <= n <= 64:
            raise ValueError(f"extension degree {n} outside supported range 1..64")
        self.q = q
        self.n = n
        self.order = q**n
        if modulus is None:
            modulus = _DEFAULT_MODULI.get((q, n)) or find_irreducible(q, n)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(modulus, q):
            raise ValueError("modulus is reducible over GF(q)")
        self.modulus = modulus
        self._mod_int = self._encode(modulus)
        self.mul_count = 0

        self._exp = None
        self._log = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

        self._basis_inv_cache = {}
        if basis is None:
            basis = tuple(q**i for i in range(n))  # expand is digit extraction
        else:
            basis = tuple(int(b) for b in basis)
            if len(basis) != n:
                raise ValueError("basis must have n elements")
            self._basis_inv_cache[basis] = self._invert_basis(basis)
        self.basis = basis

    # -- encoding ----------------------------------------------------------

    def digits(self, x: int):
        """Base-q digit tuple of x over the polynomial basis, length n."""
        if self.q == 2:
            return tuple((x >> i) & 1 for i in range(self.n))
        out = []
        for _ in range(self.n):
            out.append(x % self.q)
            x //= self.q
        return tuple(out)

    def from_digits(self, digits) -> int:
        v = 0
        for d in reversed(tuple(digits)):
            v = v * self.q + d % self.q
        return v

    def _encode(self, coeffs) -> int:
        v = 0
        for d in reversed(tuple(coeffs)):
            v = v * self.q + d % self.q
        return v

    def elements(self):
        """All field elements in canonical integer order (tiny fields only)."""
        return range(self.order)

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    # -- ring operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q, v, shift = self.q, 0, 1
        for _ in range(self.n):
            v += ((a + b) % q) * shift
            a //= q
            b //= q
            shift *= q
        return v

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        q, v, shift = self.q, 0, 1
        for _ in range(self.n):
            v += (-a % q) * shift
            a //= q
            shift *= q
        return v

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial product with modular reduction, no tables."""
        if a == 0 or b == 0:
            return 0
        if self.q == 2:
            r = 0
            top = 1 << self.n
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= self._mod_int
            return r
        prod = _pmul(self.digits(a), self.digits(b), self.q)
        return self.from_digits(_pmod(prod, self.modulus, self.q) + (0,) * self.n)

    def mul(self, a: int, b: int) -> int:
        self.mul_count += 1
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q^n)")
        self.mul_count += 1
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        # extended Euclid on polynomials: maintain s with s*a = r (mod modulus)
        q = self.q
        r0, r1 = self.modulus, _ptrim(self.digits(a))
        s0, s1 = (), (1,)
        while r1:
            quo, rem = _pdivmod(r0, r1, q)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1, q), q)
        c_inv = pow(r0[0], q - 2, q)
        return self.from_digits(tuple(x * c_inv % q for x in s0) + (0,) * self.n)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._exp is not None:
            self.mul_count += 1
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, x: int, i: int) -> int:
        """x raised to q^[i], with [i] read modulo n (so [-1] means q^(n-1))."""
        i %= self.n
        if i == 0 or x == 0 or x == 1:
            return x
        if self._exp is not None:
            self.mul_count += 1
            return self._exp[(self._log[x] * pow(self.q, i, self.order - 1)) % (self.order - 1)]
        return self.pow(x, self.q**i)

    # -- expansion over a basis ---------------------------------------------

    def expand(self, x: int, basis=None):
        """q-ary coordinate column of x over `basis` (default: tower basis)."""
        if basis is None:
            basis = self.basis
        if self._is_polynomial_basis(basis):
            return self.digits(x)
        inv = self._basis_inverse(tuple(basis))
        d = self.digits(x)
        q = self.q
        return tuple(sum(row[j] * d[j] for j in range(self.n)) % q for row in inv)

    def contract(self, coords, basis=None) -> int:
        if basis is None:
            basis = self.basis
        acc = 0
        for c, b in zip(coords, basis):
            c %= self.q
            if c:
                acc = self.add(acc, self.mul(c, b))
        return acc

    def _is_polynomial_basis(self, basis) -> bool:
        return all(b == self.q**i for i, b in enumerate(basis))

    def _basis_inverse(self, basis):
        cached = self._basis_inv_cache.get(basis)
        if cached is not None:
            return cached
        inv = self._invert_basis(basis)
        self._basis_inv_cache[basis] = inv
        return inv

    def _invert_basis(self, basis):
        """Inverse of the n x n digit matrix whose columns expand the basis."""
        n, q = self.n, self.q
        rows = [list(self.digits(b)) for b in basis]  # row i = digits of basis[i]
        # transpose: column j of M is digits(basis[j])
        m = [[rows[j][i] for j in range(n)] for i in range(n)]
        aug = [m[i] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        r = 0
        for col in range(n):
            piv = next((i for i in range(r, n) if aug[i][col]), None)
            if piv is None:
                raise ValueError("basis is rank deficient over GF(q)")
            aug[r], aug[piv] = aug[piv], aug[r]
            pinv = pow(aug[r][col], q - 2, q)
            aug[r] = [v * pinv % q for v in aug[r]]
            for i in range(n):
                if i != r and aug[i][col]:
                    c = aug[i][col]
                    aug[i] = [(a - c * b) % q for a, b in zip(aug[i], aug[r])]
            r += 1
        return [row[n:] for row in aug]

    # -- discrete-log tables --------------------------------------------------

    def _build_tables(self):
        size = self.order - 1
        if size == 1:  # GF(2): trivial multiplicative group
            self._exp = [1, 1]
            self._log = [0, 0]
            self.generator = 1
            return
        for gen in range(2, self.order):
            exp = [0] * (2 * size)
            exp[0] = 1
            x = 1
            ok = True
            for i in range(1, size):
                x = self._mul_raw(x, gen)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if not ok or self._mul_raw(x, gen) != 1:
                continue
            for i in range(size):
                exp[size + i] = exp[i]
            log = [0] * self.order
            for i in range(size):
                log[exp[i]] = i
            self._exp = exp
            self._log = log
            self.generator = gen
            return
        raise RuntimeError("no multiplicative generator found")  # pragma: no cover

    def __repr__(self):
        return f"FieldTower(q={self.q}, n={self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and (self.q, self.n, self.modulus, self.basis)
            == (other.q, other.n, other.modulus, other.basis)
        )

    def __hash__(self):
        return hash((self.q, self.n, self.modulus, self.basis))
