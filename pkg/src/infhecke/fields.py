"""Exact arithmetic over small prime fields, their extensions, and dense linear algebra.

Elements of both field flavours are plain Python ints, so matrices are
lists of lists of ints and all arithmetic goes through the field object.
For ``PrimeField`` the int is the residue itself; for ``ExtField`` it is an
opaque code (discrete-log based) and must never be interpreted as a number.
"""

from __future__ import annotations

import random


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldError(ValueError):
    pass


class PrimeField:
    """F_p for an odd prime p.  Elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p <= 2 or not is_prime(p):
            raise FieldError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.order = p
        self.degree = 1
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F_{self.p}"

    def key(self):
        return ("prime", self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, n: int):
        if n < 0:
            return self.inv(self.pow_(a, -n))
        return pow(a, n, self.p)

    def from_int(self, n: int):
        return n % self.p

    def coeffs(self, a):
        """Coefficient vector over F_p (length = extension degree)."""
        return (a % self.p,)

    def pth_root(self, a):
        return a % self.p  # Frobenius is the identity on F_p

    def elements(self):
        return range(self.p)

    def random_element(self, rng: random.Random):
        return rng.randrange(self.p)


# ---------------------------------------------------------------------------
# univariate polynomials (coefficients in any field, lowest degree first)
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial; trailing coefficient nonzero unless zero."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        while coeffs and coeffs[-1] == field.zero:
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs \
            and self.field.key() == other.field.key()

    def __hash__(self):
        return hash((self.field.key(), self.coeffs))

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UniPoly(F, out)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return UniPoly(F, [])
        return UniPoly(F, [F.mul(c, a) for a in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UniPoly(F, out)

    def shift(self, k: int):
        """Multiply by the k-th power of the variable."""
        if self.is_zero():
            return self
        return UniPoly(self.field, (self.field.zero,) * k + self.coeffs)

    def divmod(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [F.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = F.inv(other.leading())
        d = other.degree()
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == F.zero:
                continue
            factor = F.mul(c, inv_lead)
            q[i - d] = factor
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = F.sub(rem[i - d + j], F.mul(factor, b))
        return UniPoly(F, q), UniPoly(F, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def evaluate(self, v):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, v), c)
        return acc

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __repr__(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c != 0)


def uni_x(field, c0=None, c1=None):
    """Convenience: the polynomial c0 + c1*T (defaults to T)."""
    if c0 is None and c1 is None:
        return UniPoly(field, [field.zero, field.one])
    return UniPoly(field, [c0 if c0 is not None else field.zero,
                           c1 if c1 is not None else field.zero])


def is_irreducible_by_trial_division(modulus: UniPoly) -> bool:
    """Trial division against all monic polynomials of degree <= deg/2.

    Only intended for small degrees (<= 7 in this package).
    """
    F = modulus.field
    d = modulus.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    p = F.p
    for deg in range(1, d // 2 + 1):
        for idx in range(p ** deg):
            coeffs = []
            t = idx
            for _ in range(deg):
                coeffs.append(F.from_int(t % p))
                t //= p
            coeffs.append(F.one)
            div = UniPoly(F, coeffs)
            if (modulus % div).is_zero():
                return False
    return True


def find_irreducible(field: PrimeField, degree: int) -> UniPoly:
    """Smallest (in coefficient enumeration order) monic irreducible of given degree."""
    p = field.p
    for idx in range(p ** degree):
        coeffs = []
        t = idx
        for _ in range(degree):
            coeffs.append(t % p)
            t //= p
        coeffs.append(1)
        cand = UniPoly.from_ints(field, coeffs)
        if is_irreducible_by_trial_division(cand):
            return cand
    raise FieldError(f"no irreducible of degree {degree} found (impossible)")


# ---------------------------------------------------------------------------
# extension fields F_p[T]/(m(T)) via Zech logarithms
# ---------------------------------------------------------------------------

def _factorize(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtField:
    """F_p[T]/(m(T)) for a monic irreducible m.

    Nonzero elements are stored as 1 + log_g, zero as 0, where g is a fixed
    multiplicative generator.  Construction cost and table size are O(p^deg),
    fine for the desk-scale fields used here (q <= 5^5).
    """

    def __init__(self, base: PrimeField, modulus: UniPoly):
        if modulus.field.key() != base.key():
            raise FieldError("modulus must be defined over the base field")
        d = modulus.degree()
        if d < 2:
            raise FieldError("extension degree must be >= 2")
        if modulus.leading() != base.one:
            raise FieldError("modulus must be monic")
        if d <= 7 and not is_irreducible_by_trial_division(modulus):
            raise FieldError(f"modulus {modulus!r} is reducible over F_{base.p}")
        self.base = base
        self.p = base.p
        self.modulus = modulus
        self.degree = d
        q = base.p ** d
        self.order = q
        self.zero = 0
        self._build_tables()
        self.one = self._code_of_index(1)

    def key(self):
        return ("ext", self.p, self.modulus.coeffs)

    def __repr__(self):
        return f"F_{self.p}^{self.degree}"

    # during construction, elements are base-p packed coefficient indices
    def _idx_mul_T(self, idx: int) -> int:
        p, d = self.p, self.degree
        digits = []
        for _ in range(d):
            digits.append(idx % p)
            idx //= p
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            for i, m in enumerate(self.modulus.coeffs[:-1]):
                digits[i] = (digits[i] - top * m) % p
        out = 0
        for dig in reversed(digits):
            out = out * p + dig
        return out

    def _idx_mul(self, a: int, b: int) -> int:
        p, d = self.p, self.degree
        out = 0
        apow = a
        for _ in range(d):
            dig = b % p
            b //= p
            if dig:
                # out += dig * apow, coefficient-wise
                o, ap, acc, mul = out, apow, 0, 1
                for _ in range(d):
                    acc += ((o % p + dig * (ap % p)) % p) * mul
                    o //= p
                    ap //= p
                    mul *= p
                out = acc
            apow = self._idx_mul_T(apow)
        return out

    def _build_tables(self):
        q = self.order
        qm1 = q - 1
        prime_factors = _factorize(qm1)
        gen = None
        for cand in range(self.p, q):
            ok = True
            for ell in prime_factors:
                acc = 1
                e = qm1 // ell
                b = cand
                while e:
                    if e & 1:
                        acc = self._idx_mul(acc, b)
                    b = self._idx_mul(b, b)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:
            raise FieldError("no multiplicative generator found; modulus reducible?")
        exp_idx = [0] * qm1
        log_of_idx = [0] * q
        cur = 1
        for k in range(qm1):
            exp_idx[k] = cur
            log_of_idx[cur] = k
            cur = self._idx_mul(cur, gen)
        zech = [0] * qm1
        for k in range(qm1):
            e = exp_idx[k]
            # add 1 in the lowest base-p digit of the packed index
            s = e - (self.p - 1) if e % self.p == self.p - 1 else e + 1
            zech[k] = -1 if s == 0 else log_of_idx[s] + 1  # store code, -1 means sum is zero
        self._exp_idx = exp_idx
        self._log_of_idx = log_of_idx
        self._zech = zech
        self._qm1 = qm1
        # embedding of the base field
        emb = [0] * self.p
        for a in range(1, self.p):
            emb[a] = log_of_idx[a] + 1
        self._emb = emb
        self.lam = self._code_of_index(self.p)  # class of T

    def _code_of_index(self, idx: int) -> int:
        return 0 if idx == 0 else self._log_of_idx[idx] + 1

    def _index_of_code(self, code: int) -> int:
        return 0 if code == 0 else self._exp_idx[code - 1]

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = a - 1, b - 1
        dlog = (lb - la) % self._qm1
        z = self._zech[dlog]
        if z == -1:
            return 0
        return (la + z - 1) % self._qm1 + 1

    def neg(self, a):
        if a == 0:
            return 0
        if self.p == 2:
            return a
        half = self._qm1 // 2  # log of -1
        return (a - 1 + half) % self._qm1 + 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a - 1 + b - 1) % self._qm1 + 1

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (-(a - 1)) % self._qm1 + 1

    def pow_(self, a, n: int):
        if a == 0:
            if n == 0:
                return self.one
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return ((a - 1) * n) % self._qm1 + 1

    def from_int(self, n: int):
        return self._emb[n % self.p]

    def from_base(self, a):
        return self._emb[a % self.p]

    def from_coeffs(self, coeffs):
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.p + (c % self.p)
        return self._code_of_index(idx)

    def coeffs(self, a):
        idx = self._index_of_code(a)
        out = []
        for _ in range(self.degree):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def frobenius(self, a):
        return self.pow_(a, self.p)

    def pth_root(self, a):
        return self.pow_(a, self.p ** (self.degree - 1))

    def elements(self):
        return range(self.order)

    def random_element(self, rng: random.Random):
        return rng.randrange(self.order)


class ArtinSchreierError(FieldError):
    pass


def artin_schreier_ext(field: PrimeField, c):
    """Return (K, lam) with K = F_p[T]/(T^p - T - c) and lam the class of T.

    lam satisfies lam^p - lam = c exactly.  For c = 0 the polynomial splits
    over F_p, so callers should work in the base field directly.
    """
    c = c % field.p
    if c == 0:
        raise ArtinSchreierError(
            "c = 0: T^p - T splits over F_p; use the base field with lambda in F_p")
    coeffs = [(-c) % field.p, (field.p - 1)] + [0] * (field.p - 2) + [1]
    modulus = UniPoly.from_ints(field, coeffs)
    ext = ExtField(field, modulus)
    return ext, ext.lam


# ---------------------------------------------------------------------------
# dense linear algebra over a field (rows are lists of ints)
# ---------------------------------------------------------------------------

def mat_identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]

def mat_zero(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]

def mat_add(field, A, B):
    return [[field.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

def mat_sub(field, A, B):
    return [[field.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

def mat_scale(field, c, A):
    return [[field.mul(c, a) for a in row] for row in A]

def mat_mul(field, A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    Bt = list(zip(*B))
    out = []
    mul, addf, zero = field.mul, field.add, field.zero
    for row in A:
        orow = []
        for col in Bt:
            acc = zero
            for a, b in zip(row, col):
                if a and b:
                    acc = addf(acc, mul(a, b))
            orow.append(acc)
        out.append(orow)
    return out

def mat_vec(field, A, v):
    mul, addf, zero = field.mul, field.add, field.zero
    out = []
    for row in A:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = addf(acc, mul(a, b))
        out.append(acc)
    return out

def mat_pow(field, A, n):
    out = mat_identity(field, len(A))
    B = A
    while n:
        if n & 1:
            out = mat_mul(field, out, B)
        B = mat_mul(field, B, B)
        n >>= 1
    return out

def mat_eq(A, B):
    return A == B

def commutator_mat(field, A, B):
    return mat_sub(field, mat_mul(field, A, B), mat_mul(field, B, A))


def rref(field, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != field.zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, a) for a in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != field.zero:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(field, rows):
    return len(rref(field, rows)[1])


def solve_linear(field, A, b):
    """One solution of A x = b, or None if inconsistent."""
    if len(A) != len(b):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def nullspace(field, A):
    """Basis of the right kernel of A."""
    if not A:
        return []
    ncols = len(A[0])
    red, pivots = rref(field, A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def min_poly_of_matrix(field, M):
    """Minimal polynomial of a square matrix, via Krylov chains with lcm."""
    n = len(M)
    acc = UniPoly(field, [field.one])
    covered = []  # echelon rows spanning the space already annihilated
    cov_piv = []
    for start in range(n):
        v = [field.zero] * n
        v[start] = field.one
        w = _reduce_against(field, v, covered, cov_piv)
        if all(a == field.zero for a in w):
            continue
        # Krylov chain from e_start; stop at the first linear dependence
        chain = [v]
        ech_rows, ech_pivs = [], []
        _insert_echelon(field, v, ech_rows, ech_pivs)
        cur = v
        while True:
            cur = mat_vec(field, M, cur)
            if _insert_echelon(field, cur, ech_rows, ech_pivs) is None:
                rel = solve_linear(field, [list(col) for col in zip(*chain)], cur)
                mono = UniPoly(field, [field.neg(c) for c in rel] + [field.one])
                break
            chain.append(cur)
        g = acc.gcd(mono)
        acc = (acc * mono).divmod(g)[0]
        for vec in chain:
            _insert_echelon(field, vec, covered, cov_piv)
        if len(cov_piv) == n:
            break
    return acc.monic()


def _reduce_against(field, v, rows, pivs):
    w = list(v)
    for row, pc in zip(rows, pivs):
        if w[pc] != field.zero:
            f = w[pc]
            w = [field.sub(a, field.mul(f, b)) for a, b in zip(w, row)]
    return w


def _insert_echelon(field, v, rows, pivs):
    """Reduce v against the echelon rows; insert if independent.  Returns pivot or None."""
    w = _reduce_against(field, v, rows, pivs)
    for c, a in enumerate(w):
        if a != field.zero:
            inv = field.inv(a)
            w = [field.mul(inv, b) for b in w]
            rows.append(w)
            pivs.append(c)
            return c
    return None


def poly_roots(field, poly: UniPoly):
    """All roots in the field, by exhaustive evaluation (desk-scale fields only)."""
    return [v for v in field.elements() if poly.evaluate(v) == field.zero]
