"""The commutative side: F_p[C] for the Casimir element C, the recursion
operators F and G, the triangular inverse of F, and the central element t.

F and G are the linear endomorphisms of F_p[C] determined by F(1) = G(1) = 0 and

    F(C^{n+1}) = 2 C^n + (C - 1) F(C^n) - 2 G(C^n)
    G(C^{n+1}) = -3 C^n + (C + 3) G(C^n) - 2 C F(C^n)

They encode commutators with x:  [w(C), x] = (F(w) h + G(w)) x + 2 e F(w) y.
"""

from __future__ import annotations

from .engine import Element, PbwAlgebra, centrality_witness
from .fields import PrimeField, UniPoly


class DegreeError(ValueError):
    pass


class CentralityError(AssertionError):
    pass


class CasimirRing:
    """F_p[C] together with cached tables of F(C^n), G(C^n)."""

    def __init__(self, field: PrimeField):
        self.field = field
        one = UniPoly(field, [field.one])
        zero = UniPoly(field, [])
        self._f_tab = [zero]
        self._g_tab = [zero]
        self._pow = [one]

    def poly(self, ints) -> UniPoly:
        return UniPoly.from_ints(self.field, ints)

    def _grow(self, n: int):
        F = self.field
        two = F.from_int(2)
        var = UniPoly(F, [F.zero, F.one])
        while len(self._f_tab) <= n:
            k = len(self._f_tab) - 1
            fk, gk = self._f_tab[k], self._g_tab[k]
            ck = self._pow_c(k)
            fn = ck.scale(two) + (var - UniPoly(F, [F.one])) * fk - gk.scale(two)
            gn = ck.scale(F.from_int(-3)) + (var + UniPoly(F, [F.from_int(3)])) * gk \
                - (var * fk).scale(two)
            self._f_tab.append(fn)
            self._g_tab.append(gn)

    def _pow_c(self, n: int) -> UniPoly:
        var = UniPoly(self.field, [self.field.zero, self.field.one])
        while len(self._pow) <= n:
            self._pow.append(self._pow[-1] * var)
        return self._pow[n]

    def fg_apply(self, w: UniPoly):
        """(F(w), G(w)) for w in F_p[C]; linear, with F(1) = G(1) = 0."""
        F = self.field
        self._grow(w.degree() if not w.is_zero() else 0)
        fo = UniPoly(F, [])
        go = UniPoly(F, [])
        for i, c in enumerate(w.coeffs):
            if c == F.zero:
                continue
            fo = fo + self._f_tab[i].scale(c)
            go = go + self._g_tab[i].scale(c)
        return fo, go

    def f_inverse(self, w: UniPoly) -> UniPoly:
        """The unique preimage of w under F with zero constant term.

        Defined for deg w <= p - 2: the triangular system has diagonal entries
        2n for 1 <= n <= p - 1, all invertible mod p.  Larger degrees would
        need the vanishing leading coefficient 2p mod p, which is why the
        construction of t requires deg z < p - 1.
        """
        F = self.field
        p = F.p
        if w.degree() >= p - 1:
            raise DegreeError(
                f"f_inverse needs deg <= {p - 2}: the triangular solve uses the "
                f"invertibility of the leading coefficients 2n mod {p} for n <= {p - 1}")
        self._grow(w.degree() + 1 if not w.is_zero() else 1)
        rem = w
        out = [F.zero] * (w.degree() + 2 if not w.is_zero() else 1)
        while not rem.is_zero():
            d = rem.degree()
            n = d + 1  # F(C^n) has degree n - 1 and leading coefficient 2n
            lead = self._f_tab[n].coeffs[d]
            c = F.mul(rem.leading(), F.inv(lead))
            out[n] = c
            rem = rem - self._f_tab[n].scale(c)
        return UniPoly(F, out)


def omega(ring: CasimirRing, z: UniPoly) -> UniPoly:
    """The correction polynomial -F^{-1}(z) + z/2 + F^{-1}(G(z))/2.

    The kernel of F is the constants; both inverse images are normalized to
    zero constant term, which shifts t by a central constant only.
    """
    F = ring.field
    half = F.inv(F.from_int(2))
    _, gz = ring.fg_apply(z)
    a = ring.f_inverse(z)
    b = ring.f_inverse(gz)
    return (z + b).scale(half) - a


def build_tz(alg: PbwAlgebra) -> Element:
    """The weight-zero central element of filtration degree 2:

        t = e y^2 + h x y - f x^2 - (1/2) h z(C) - omega_z(C)

    Centrality is checked against all five generators; failure raises, since
    it would indicate the recursion and the rewriting engine disagree.
    """
    F = alg.field
    p = F.p
    ring = CasimirRing(PrimeField(p)) if not isinstance(alg.field, PrimeField) else CasimirRing(alg.field)
    base = ring.field
    z = UniPoly(base, tuple(_to_base(alg, c) for c in alg.z))
    if z.degree() >= p - 1:
        raise DegreeError(f"t is only defined for deg z < {p - 1}")
    w = omega(ring, z)
    half = F.inv(F.from_int(2))
    t = alg.monomial(e=1, y=2) + alg.monomial(h=1, x=1, y=1) - alg.monomial(f=1, x=2)
    t = t - alg.multiply(alg.gen("h"), alg.z_element()).scale(half)
    t = t - alg.casimir_poly(w.coeffs)
    wit = centrality_witness(t)
    if wit is not None:
        raise CentralityError(
            f"constructed t fails to commute with {wit[0]}: [t,{wit[0]}] = {wit[1]}")
    return t


def _to_base(alg, c):
    co = alg.field.coeffs(c)
    if any(v for v in co[1:]):
        raise ValueError("deformation coefficients must lie in the prime field")
    return co[0]


def check_bracket_formula(alg: PbwAlgebra, w: UniPoly):
    """Compare [w(C), x] with (F(w) h + G(w)) x + 2 e F(w) y in the engine.

    Returns (True, None) on equality, else (False, difference).
    """
    ring = CasimirRing(PrimeField(alg.field.p))
    fw, gw = ring.fg_apply(w)
    lhs = alg.commutator(alg.casimir_poly(w.coeffs), alg.gen("x"))
    fw_el = alg.casimir_poly(fw.coeffs)
    gw_el = alg.casimir_poly(gw.coeffs)
    rhs = alg.multiply(alg.multiply(fw_el, alg.gen("h")) + gw_el, alg.gen("x")) \
        + alg.multiply(alg.multiply(alg.gen("e"), fw_el), alg.gen("y")).scale(alg.field.from_int(2))
    diff = lhs - rhs
    if diff.is_zero():
        return True, None
    return False, diff


def casimir_power_commutator_constant(alg: PbwAlgebra, n: int):
    """The constant c' with [C, x^n] = n [C, x] x^{n-1} + c' x^n (z = 0 only).

    Returns (c', residual); the residual is zero exactly when the identity has
    this shape, which holds in the undeformed algebra.
    """
    if alg.z:
        raise ValueError("the x^n commutation constant is only well-formed at z = 0")
    cas = alg.casimir()
    lhs = alg.commutator(cas, alg.monomial(x=n))
    rhs = alg.multiply(alg.commutator(cas, alg.gen("x")), alg.monomial(x=n - 1)).scale(
        alg.field.from_int(n))
    diff = lhs - rhs
    xn = tuple(n if g == "x" else 0 for g in alg.order)
    c = diff.terms.get(xn, alg.field.zero)
    residual = diff - alg.monomial(x=n).scale(c)
    return c, residual
