"""Finite-dimensional representations: restricted fibers, rank-p simples of
the sl2 part, the two p^2-dimensional induced families, irreducibility
testing, and the character census.

Module matrices act on column vectors; entries are field codes (ints).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .center import CenterGenSet, FiberContext, ZVARS, build_center, tp_relation
from .engine import Element, PbwAlgebra, GENS
from .fields import (PrimeField, ExtField, artin_schreier_ext, commutator_mat,
                     mat_identity, mat_mul, mat_sub, mat_vec, mat_zero,
                     min_poly_of_matrix, nullspace, poly_roots, solve_linear,
                     _insert_echelon, _reduce_against)


class ModuleError(ValueError):
    pass


@dataclass
class ModuleRep:
    """A finite-dimensional module: one square matrix per generator."""
    field: object
    dim: int
    mats: dict
    label: str = ""
    chi: dict = None
    tz_value: object = None

    def verify_relations(self, z_ints) -> list:
        """Check the structural commutators and [X,Y] = z(Casimir matrix).

        Returns the list of violated relation names (empty when consistent).
        """
        F = self.field
        E, Fm, H, X, Y = (self.mats[g] for g in GENS)
        two = F.from_int(2)
        bad = []

        def ck(name, got, want):
            if got != want:
                bad.append(name)

        def smul(c, A):
            return [[F.mul(c, a) for a in row] for row in A]

        ck("[h,e]=2e", commutator_mat(F, H, E), smul(two, E))
        ck("[h,f]=-2f", commutator_mat(F, H, Fm), smul(F.neg(two), Fm))
        ck("[e,f]=h", commutator_mat(F, E, Fm), H)
        ck("[h,x]=x", commutator_mat(F, H, X), X)
        ck("[h,y]=-y", commutator_mat(F, H, Y), smul(F.neg(F.one), Y))
        ck("[e,x]=0", commutator_mat(F, E, X), mat_zero(F, self.dim, self.dim))
        ck("[f,x]=y", commutator_mat(F, Fm, X), Y)
        ck("[f,y]=0", commutator_mat(F, Fm, Y), mat_zero(F, self.dim, self.dim))
        ck("[e,y]=x", commutator_mat(F, E, Y), X)
        cas = mat_sub(F, mat_mul(F, H, H), smul(two, H))
        cas = [[F.add(a, F.mul(F.from_int(4), b)) for a, b in zip(r1, r2)]
               for r1, r2 in zip(cas, mat_mul(F, E, Fm))]
        zmat = mat_zero(F, self.dim, self.dim)
        acc = mat_identity(F, self.dim)
        for c in z_ints:
            term = smul(F.from_int(c), acc)
            zmat = [[F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(zmat, term)]
            acc = mat_mul(F, acc, cas)
        ck("[x,y]=z(C)", commutator_mat(F, X, Y), zmat)
        return bad

    def matrix_of(self, el: Element):
        """Evaluate a normal-form element on the module via matrix products."""
        F = self.field
        out = mat_zero(F, self.dim, self.dim)
        for mono, coeff in el.terms.items():
            term = mat_identity(F, self.dim)
            for g, e in zip(el.alg.order, mono):
                for _ in range(e):
                    term = mat_mul(F, term, self.mats[g])
            c = coeff if not isinstance(coeff, int) or isinstance(el.alg.field, PrimeField) \
                else coeff
            cc = F.from_int(c) if isinstance(el.alg.field, PrimeField) else c
            term = [[F.mul(cc, a) for a in row] for row in term]
            out = [[F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(out, term)]
        return out

    def is_scalar(self, M):
        F = self.field
        c = M[0][0]
        return (M == [[c if i == j else F.zero for j in range(self.dim)]
                      for i in range(self.dim)], c)


def spin(module: ModuleRep, v) -> int:
    """Dimension of the smallest subspace containing v closed under all generators."""
    F = module.field
    if all(a == F.zero for a in v):
        raise ModuleError("spin needs a nonzero vector")
    rows, pivs = [], []
    _insert_echelon(F, v, rows, pivs)
    queue = [rows[0]]
    while queue:
        w = queue.pop()
        for g in GENS:
            u = mat_vec(F, module.mats[g], w)
            before = len(rows)
            _insert_echelon(F, u, rows, pivs)
            if len(rows) > before:
                queue.append(rows[-1])
    return len(rows)


def spin_basis(module: ModuleRep, v):
    """Echelon basis of the submodule generated by v."""
    F = module.field
    rows, pivs = [], []
    _insert_echelon(F, v, rows, pivs)
    queue = list(rows)
    while queue:
        w = queue.pop()
        for g in GENS:
            u = mat_vec(F, module.mats[g], w)
            before = len(rows)
            _insert_echelon(F, u, rows, pivs)
            if len(rows) > before:
                queue.append(rows[-1])
    return rows, pivs


def commutant_dim(module: ModuleRep) -> int:
    """Dimension of the algebra of matrices commuting with all five generators."""
    F = module.field
    n = module.dim
    rows = []
    for g in GENS:
        A = module.mats[g]
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    if A[i][k] != F.zero:
                        row[k * n + j] = F.add(row[k * n + j], A[i][k])
                    if A[k][j] != F.zero:
                        row[i * n + k] = F.sub(row[i * n + k], A[k][j])
                if any(c != F.zero for c in row):
                    rows.append(row)
    if not rows:
        return n * n
    return len(nullspace(F, rows))


def is_irreducible(module: ModuleRep, seed=0, n_random=20) -> bool:
    """Spin from every basis vector and seeded random vectors, then require
    a one-dimensional commutant (absolute irreducibility over the field)."""
    F = module.field
    n = module.dim
    rng = random.Random(seed)
    for i in range(n):
        v = [F.one if j == i else F.zero for j in range(n)]
        if spin(module, v) < n:
            return False
    for _ in range(n_random):
        v = [F.random_element(rng) for _ in range(n)]
        if all(a == F.zero for a in v):
            continue
        if spin(module, v) < n:
            return False
    return commutant_dim(module) == 1


def submodule_restriction(module: ModuleRep, rows, label="sub") -> ModuleRep:
    """Restrict the action to the span of echelon rows."""
    F = module.field
    k = len(rows)
    mats = {}
    for g in GENS:
        A = module.mats[g]
        M = mat_zero(F, k, k)
        for j, b in enumerate(rows):
            u = mat_vec(F, A, b)
            coeffs = _express_in_echelon(F, u, rows)
            if coeffs is None:
                raise ModuleError("span is not invariant; not a submodule")
            for i, c in enumerate(coeffs):
                M[i][j] = c
        mats[g] = M
    return ModuleRep(F, k, mats, label=label, chi=module.chi)


def _express_in_echelon(F, u, rows):
    u = list(u)
    coeffs = []
    for row in rows:
        pc = next(i for i, a in enumerate(row) if a != F.zero)
        c = F.mul(u[pc], F.inv(row[pc]))
        coeffs.append(c)
        if c != F.zero:
            u = [F.sub(a, F.mul(c, b)) for a, b in zip(u, row)]
    if any(a != F.zero for a in u):
        return None
    return coeffs


def quotient_module(module: ModuleRep, wvecs, label="quot") -> ModuleRep:
    """Quotient by the span of wvecs (must be generator-invariant)."""
    F = module.field
    n = module.dim
    rows, pivs = [], []
    for w in wvecs:
        _insert_echelon(F, w, rows, pivs)
    free = [c for c in range(n) if c not in pivs]
    k = len(free)
    fidx = {c: i for i, c in enumerate(free)}

    def project(u):
        r = _reduce_against(F, u, rows, pivs)
        return [r[c] for c in free]

    mats = {}
    for g in GENS:
        A = module.mats[g]
        M = mat_zero(F, k, k)
        for j, c in enumerate(free):
            e = [F.zero] * n
            e[c] = F.one
            col = project(mat_vec(F, A, e))
            for i in range(k):
                M[i][j] = col[i]
        mats[g] = M
    return ModuleRep(F, k, mats, label=label, chi=module.chi)


# ---------------------------------------------------------------------------
# rank-p simples of the sl2 part
# ---------------------------------------------------------------------------

def sl2_simple(p: int, c, root_shift: int = 0, fp_value=None):
    """The p-dimensional highest-weight module V_lambda with e v = 0,
    h v = lambda v, basis v, f v, ..., f^{p-1} v.

    For c != 0 the weight lambda is a root of T^p - T - c in the degree-p
    extension (shifted by root_shift); for c = 0 lambda = root_shift in F_p.
    x and y act as zero, so this is a module for the undeformed algebra.
    """
    base = PrimeField(p)
    if c % p == 0:
        K = base
        lam = K.from_int(root_shift)
    else:
        K, lam = artin_schreier_ext(base, c % p)
        lam = K.add(lam, K.from_int(root_shift))
    fpv = K.zero if fp_value is None else fp_value
    E = mat_zero(K, p, p)
    Fm = mat_zero(K, p, p)
    H = mat_zero(K, p, p)
    for i in range(p):
        H[i][i] = K.sub(lam, K.from_int(2 * i))
        if i + 1 < p:
            Fm[i + 1][i] = K.one
        else:
            Fm[0][i] = fpv
        if i >= 1:
            E[i - 1][i] = K.mul(K.from_int(i), K.add(K.sub(lam, K.from_int(i)), K.one))
    mats = {"e": E, "f": Fm, "h": H,
            "x": mat_zero(K, p, p), "y": mat_zero(K, p, p)}
    mod = ModuleRep(K, p, mats, label=f"sl2-simple(c={c},shift={root_shift})")
    bad = mod.verify_relations(())
    if bad:
        raise ModuleError(f"sl2 simple violates {bad}")
    mod.lam = lam
    return mod


def ad_e_image_count(p: int, m: int, c) -> tuple:
    """Number of roots lambda of T^p - T - c with f^m in the ad(e)-image of
    End(V_lambda); returns (count, number_of_roots)."""
    if not 0 < m < p:
        raise ValueError("need 0 < m < p")
    if c % p == 0:
        raise ValueError("need c != 0 (regular semisimple part)")
    count = 0
    for shift in range(p):
        mod = sl2_simple(p, c, root_shift=shift)
        K = mod.field
        E = mod.mats["e"]
        Fm = mod.mats["f"]
        target = mat_identity(K, p)
        for _ in range(m):
            target = mat_mul(K, target, Fm)
        n = p * p
        A = []
        b = []
        for i in range(p):
            for j in range(p):
                row = [K.zero] * n
                for k in range(p):
                    if E[i][k] != K.zero:
                        row[k * p + j] = K.add(row[k * p + j], E[i][k])
                    if E[k][j] != K.zero:
                        row[i * p + k] = K.sub(row[i * p + k], E[k][j])
                A.append(row)
                b.append(target[i][j])
        if solve_linear(K, A, b) is not None:
            count += 1
    return count, p


# ---------------------------------------------------------------------------
# induced modules via straightening in an adapted generator order
# ---------------------------------------------------------------------------

def _ordered_algebra(K, z_ints, order, p):
    return PbwAlgebra(K, z=z_ints, order=order, exp_cap=8 * p * p)


def _lift_to(alg_target, el: Element) -> Element:
    """Transport an element with prime-field coefficients into alg_target
    (possibly over an extension field), re-normalizing for the target order."""
    K = alg_target.field
    out = alg_target.zero()
    src = el.alg
    for m, c in el.terms.items():
        cc = K.from_int(c) if isinstance(src.field, PrimeField) else c
        word = src.mono_letters(m)
        out = out + alg_target.word_to_element([(cc, word)])
    return out


class InducedSpace:
    """Induction from a one-dimensional representation of the subalgebra
    generated by the last (5 - n_free) generators of `order`.

    chi maps ZVARS to K-values; rules maps each non-free generator to the
    scalar by which it acts on the inducing vector.  The basis consists of
    the monomials in the first n_free generators with exponents < p.
    """

    def __init__(self, K, z_ints, gens: CenterGenSet, chi, order, n_free, rules):
        p = K.p
        self.K = K
        self.p = p
        self.z_ints = tuple(z_ints)
        self.order = tuple(order)
        self.n_free = n_free
        self.rules = rules
        self.alg = _ordered_algebra(K, z_ints, order, p)
        self.chi = {k: (K.from_int(v) if isinstance(v, int) else v)
                    for k, v in chi.items()}
        self.ctx = FiberContext(self.alg, self.chi,
                                _lift_to(self.alg, gens.xp),
                                _lift_to(self.alg, gens.yp))
        self.basis = list(itertools.product(range(p), repeat=n_free))
        self.bidx = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)

    def matrix_of(self, el: Element):
        """Action matrix of an element of the straightening algebra, built
        column by column: straighten el * basis-monomial, then let the
        non-free generators act on the inducing vector."""
        K = self.K
        M = mat_zero(K, self.dim, self.dim)
        for col, b in enumerate(self.basis):
            mono = tuple(list(b) + [0] * (5 - self.n_free))
            red = self.ctx.reduce(self.alg.multiply(el, Element(self.alg, {mono: K.one})))
            for m2, coeff in red.items():
                cc = coeff
                dead = False
                for slot in range(self.n_free, 5):
                    e = m2[slot]
                    if e == 0:
                        continue
                    rule = self.rules[self.order[slot]]
                    if rule is None:
                        dead = True
                        break
                    cc = K.mul(cc, K.pow_(rule, e))
                if dead or cc == K.zero:
                    continue
                row = self.bidx[m2[:self.n_free]]
                M[row][col] = K.add(M[row][col], cc)
        return M

    def module(self, label, tz_value=None) -> ModuleRep:
        mats = {g: self.matrix_of(self.alg.gen(g)) for g in GENS}
        mod = ModuleRep(self.K, self.dim, mats, label=label, chi=dict(self.chi),
                        tz_value=tz_value)
        bad = mod.verify_relations(self.z_ints)
        if bad:
            raise ModuleError(f"{label}: relations violated: {bad}")
        return mod


def induced_module(K, z_ints, gens: CenterGenSet, chi, order, n_free,
                   rules, label, tz_value=None) -> ModuleRep:
    return InducedSpace(K, z_ints, gens, chi, order, n_free, rules).module(
        label, tz_value=tz_value)


def baby_verma(p, z_ints, gens: CenterGenSet, chi, variant, K=None, mu=None,
               tz_value=None, seed=0) -> ModuleRep:
    """The two p^2-dimensional induced families.

    variant "B": induced from <e, x, h> acting by e, x -> 0 and h -> mu on the
    inducing vector; basis f^i y^j v.  Requires chi(ep) = chi(xp) = 0 and
    mu^p - mu = chi(hph).

    variant "N" (z = 0 only): f and y act on the inducing vector by the p-th
    roots of chi(fp), chi(yp).  The literal induction from <f, y> has
    dimension p^3 (and the central element t already acts on it by its forced
    value), so the p^2-dimensional module is obtained as its irreducible
    head; uniqueness of the head and the dimension are verified, not assumed.
    """
    K = K or PrimeField(p)
    chi = {k: (K.from_int(v) if isinstance(v, int) else v) for k, v in chi.items()}
    if variant == "B":
        mu = K.zero if mu is None else mu
        if chi["ep"] != K.zero or chi["xp"] != K.zero:
            raise ModuleError("B-type induction needs chi(ep) = chi(xp) = 0")
        if K.sub(K.pow_(mu, p), mu) != chi["hph"]:
            raise ModuleError("B-type induction needs mu^p - mu = chi(hph)")
        return induced_module(
            K, z_ints, gens, chi, order=("f", "y", "h", "e", "x"), n_free=2,
            rules={"h": mu, "e": K.zero, "x": K.zero}, label="baby-verma-B",
            tz_value=tz_value)
    if variant == "N":
        if z_ints and any(z_ints):
            raise ModuleError("N-type induction is only defined at z = 0")
        phi = K.pth_root(chi["fp"])
        psi = K.pth_root(chi["yp"])
        space = InducedSpace(K, z_ints, gens, chi,
                             order=("e", "x", "h", "f", "y"), n_free=3,
                             rules={"f": phi, "y": psi})
        amb = space.module("baby-verma-N-ambient")
        tau = _z0_t_value(K, chi)
        T = space.matrix_of(_lift_to(space.alg, gens.t))
        cut = _quotient_by_central_value(amb, T, tau, label="baby-verma-N-cut")
        head = cut if cut.dim == p * p else irreducible_head(
            cut, seed=seed, label="baby-verma-N")
        if head.dim != p * p:
            raise ModuleError(
                f"N-type head has dimension {head.dim}, expected {p * p}")
        bad = head.verify_relations(z_ints)
        if bad:
            raise ModuleError(f"N-type head violates {bad}")
        head.tz_value = tau
        return head
    raise ValueError(f"unknown baby Verma variant {variant!r}")


def irreducible_head(mod: ModuleRep, seed=0, n_random=40, label="head") -> ModuleRep:
    """Quotient by the sum of all proper submodules found by spinning from
    every basis vector and seeded random vectors.

    For the cyclic inductions used here the sum is the unique maximal
    submodule; if the spins sum to the whole space the head is ill-defined
    and an error is raised.
    """
    K = mod.field
    n = mod.dim
    rng = random.Random(seed)
    vecs = []
    for i in range(n):
        v = [K.zero] * n
        v[i] = K.one
        vecs.append(v)
    for _ in range(n_random):
        vecs.append([K.random_element(rng) for _ in range(n)])
    rows, pivs = [], []
    for v in vecs:
        if all(a == K.zero for a in v):
            continue
        b, _ = spin_basis(mod, v)
        if len(b) < n:
            for r in b:
                _insert_echelon(K, r, rows, pivs)
    if not rows:
        return mod
    if len(rows) == n:
        raise ModuleError("proper submodules sum to the whole module; no head")
    return quotient_module(mod, rows, label=label)


def irreducible_subquotient(mod: ModuleRep, seed=0, n_random=20) -> ModuleRep:
    """Descend through proper submodules (smallest spin closure first) until
    a spin-irreducible subquotient remains."""
    K = mod.field
    cur = mod
    rng = random.Random(seed)
    while True:
        best = None
        vecs = []
        for i in range(cur.dim):
            v = [K.zero] * cur.dim
            v[i] = K.one
            vecs.append(v)
        for _ in range(n_random):
            vecs.append([K.random_element(rng) for _ in range(cur.dim)])
        for v in vecs:
            if all(a == K.zero for a in v):
                continue
            b, _ = spin_basis(cur, v)
            if 0 < len(b) < cur.dim and (best is None or len(b) < len(best)):
                best = b
        if best is None:
            return cur
        cur = submodule_restriction(cur, best, label="subquotient")


def _z0_t_value(K, chi):
    """At z = 0: t^p = ep*yp^2 - fp*xp^2 + hph*xp*yp, and the p-th root is
    unique in a finite field."""
    v = K.sub(K.mul(chi["ep"], K.pow_(chi["yp"], 2)),
              K.mul(chi["fp"], K.pow_(chi["xp"], 2)))
    v = K.add(v, K.mul(chi["hph"], K.mul(chi["xp"], chi["yp"])))
    return K.pth_root(v)


def _quotient_by_central_value(mod: ModuleRep, T, tau, label):
    K = mod.field
    n = mod.dim
    shifted = [[K.sub(T[i][j], tau if i == j else K.zero) for j in range(n)]
               for i in range(n)]
    cols = [[shifted[i][j] for i in range(n)] for j in range(n)]
    return quotient_module(mod, cols, label=label)


def highest_weight_candidates(p, z_ints, gens: CenterGenSet, chi, K, lam,
                              relation=None):
    """Quotients of the induction from <h, e> (e v = 0, h v = lam v) by the
    eigenvalues of the central element t.

    Returns a list of (tau, ModuleRep).  tau candidates come from the minimal
    polynomial of the t-action, intersected with the roots of the specialized
    degree-p relation when one is supplied.
    """
    chi = {k: (K.from_int(v) if isinstance(v, int) else v) for k, v in chi.items()}
    if chi["ep"] != K.zero:
        raise ModuleError("highest-weight induction needs chi(ep) = 0")
    if K.sub(K.pow_(lam, p), lam) != chi["hph"]:
        raise ModuleError("lambda must satisfy lambda^p - lambda = chi(hph)")
    order = ("f", "x", "y", "h", "e")
    space = InducedSpace(K, z_ints, gens, chi, order=order, n_free=3,
                         rules={"h": lam, "e": K.zero})
    amb = space.module("hw-ambient")
    T = space.matrix_of(_lift_to(space.alg, gens.t))
    mp = min_poly_of_matrix(K, T)
    taus = poly_roots(K, mp)
    if relation is not None:
        spec = relation.specialize(K, chi)
        taus = [t for t in taus if spec.evaluate(t) == K.zero]
    out = []
    for tau in taus:
        q = _quotient_by_central_value(amb, T, tau, label="hw-quotient")
        if q.dim:
            q.tz_value = tau
            bad = q.verify_relations(z_ints)
            if bad:
                raise ModuleError(f"hw quotient violates {bad}")
            out.append((tau, q))
    return out


# ---------------------------------------------------------------------------
# the regular restricted fiber (independent matrix oracle)
# ---------------------------------------------------------------------------

class FiberAlgebra:
    """Left-regular representation of the p^5-dimensional restricted fiber.

    Generator matrices are built column-by-column from single-generator
    products; matrices of general elements are then formed by numpy matrix
    products only, giving a check路径 independent of the rewriting engine.
    """

    def __init__(self, gens: CenterGenSet, chi_ints: dict):
        alg = gens.alg
        F = alg.field
        p = F.p
        if p > 5:
            raise ModuleError(
                f"the regular fiber has dimension p^5 = {p**5}; p > 5 is rejected")
        if not isinstance(F, PrimeField):
            raise ModuleError("the regular fiber oracle works over the prime field")
        self.alg = alg
        self.p = p
        self.dim = p ** 5
        chi = {k: F.from_int(v) for k, v in chi_ints.items()}
        self.chi = chi
        self.ctx = FiberContext(alg, chi, gens.xp, gens.yp)
        basis = list(itertools.product(range(p), repeat=5))
        self.index = {b: i for i, b in enumerate(basis)}
        self.basis = basis
        self.gen_mats = {}
        for g in GENS:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            gel = alg.gen(g)
            for col, b in enumerate(basis):
                red = self.ctx.reduce(alg.multiply(gel, Element(alg, {b: F.one})))
                for m, c in red.items():
                    M[self.index[m], col] = c
            self.gen_mats[g] = M
        self._pow_cache = {g: [np.eye(self.dim, dtype=np.int64), self.gen_mats[g]]
                           for g in GENS}

    def _mm(self, A, B):
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % self.p

    def _gen_power(self, g, n):
        cache = self._pow_cache[g]
        while len(cache) <= n:
            cache.append(self._mm(cache[-1], self.gen_mats[g]))
        return cache[n]

    def matrix_of(self, el: Element):
        """Matrix of an element, via products of generator matrices only."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for mono, coeff in el.terms.items():
            term = None
            for g, e in zip(el.alg.order, mono):
                if e == 0:
                    continue
                P = self._gen_power(g, e)
                term = P if term is None else self._mm(term, P)
            if term is None:
                term = np.eye(self.dim, dtype=np.int64)
            out = (out + int(coeff) * term) % self.p
        return out

    def vector_of(self, el: Element):
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in self.ctx.reduce(el).items():
            v[self.index[m]] = c
        return v

    def commutes_with_generators(self, M) -> bool:
        return all(
            np.array_equal(self._mm(M, G) , self._mm(G, M))
            for G in self.gen_mats.values())


# ---------------------------------------------------------------------------
# characters, irreducibility certification, census
# ---------------------------------------------------------------------------

def field_value_str(K, v) -> str:
    return ":".join(str(c) for c in K.coeffs(v))


@dataclass
class Certification:
    irreducible: bool
    method: str          # "spin+commutant" or "spin-only"
    commutant: int = None


def certify_irreducible(mod: ModuleRep, seed=0, commutant_limit=100) -> Certification:
    """Spin-based irreducibility with a commutant check when affordable.

    The commutant solve has n^2 unknowns; above `commutant_limit` unknowns
    (large modules over extension fields) the certification is downgraded to
    spin-only and flagged as such.
    """
    F = mod.field
    n = mod.dim
    rng = random.Random(seed)
    for i in range(n):
        v = [F.one if j == i else F.zero for j in range(n)]
        if spin(mod, v) < n:
            return Certification(False, "spin")
    for _ in range(20):
        v = [F.random_element(rng) for _ in range(n)]
        if all(a == F.zero for a in v):
            continue
        if spin(mod, v) < n:
            return Certification(False, "spin")
    if n * n <= commutant_limit:
        cd = commutant_dim(mod)
        return Certification(cd == 1, "spin+commutant", cd)
    return Certification(True, "spin-only")


@dataclass
class CensusRow:
    stratum: str
    field: str
    chi: dict
    tz: str
    candidates: list            # (label, dim, certification)
    max_irr_dim: int
    azumaya: bool
    smooth: object              # bool for z = 0, None otherwise
    note: str = ""


def _xy_act_as_zero(mod: ModuleRep) -> bool:
    F = mod.field
    zero = mat_zero(F, mod.dim, mod.dim)
    return mod.mats["x"] == zero and mod.mats["y"] == zero


class CensusError(RuntimeError):
    pass


def azumaya_census(p, z_ints, gens: CenterGenSet, seed=0, samples=2,
                   strata=None, beta_limit=None, commutant_limit=100,
                   relation=None):
    """Sample central characters stratum by stratum, build candidate modules,
    and record the maximal certified-irreducible dimension per character.

    Strata: "nilpotent" (all values 0), "regss" (regular semisimple sl2 part
    with xp or yp nonzero), "vstratum" (fp = 1, beta-scan over the y-lift
    value), "ntype" (z = 0, xp != 0), "random" (seeded points with ep = 0).
    Returns (rows, summary).  Any certified irreducible of dimension > p^2
    aborts the census: that would contradict the PI-degree bound.
    """
    if p not in (3, 5):
        raise CensusError("the census is desk-scale: p in {3, 5}")
    if strata is None:
        strata = ["nilpotent", "regss", "vstratum", "random"]
        if not any(z_ints):
            strata.insert(3, "ntype")
    rng = random.Random(seed)
    rows = []
    z0 = not any(z_ints)

    def finish_row(stratum, K, chi, cands, note=""):
        max_irr = 0
        out = []
        for label, mod, cert in cands:
            out.append((label, mod.dim, cert))
            if cert.irreducible:
                if mod.dim > p * p:
                    raise CensusError(
                        f"certified irreducible of dimension {mod.dim} > p^2 = {p*p}")
                max_irr = max(max_irr, mod.dim)
        smooth = None
        if z0:
            smooth = not (chi["xp"] == K.zero and chi["yp"] == K.zero)
        tz = ""
        for label, mod, cert in cands:
            if mod.tz_value is not None:
                tz = field_value_str(K, mod.tz_value)
                break
        rows.append(CensusRow(
            stratum=stratum, field=repr(K),
            chi={k: field_value_str(K, v) for k, v in chi.items()},
            tz=tz, candidates=out, max_irr_dim=max_irr,
            azumaya=max_irr == p * p, smooth=smooth, note=note))

    base = PrimeField(p)

    if "nilpotent" in strata:
        K = base
        chi = {k: K.zero for k in ZVARS}
        cands = []
        for shift in range(p):
            simple = sl2_simple(p, 0, shift)
            head = irreducible_head(simple, seed=seed) if shift != p - 1 else simple
            cert = certify_irreducible(head, seed, commutant_limit)
            cands.append((f"sl2-head(lam={shift})", head, cert))
            if cert.irreducible and not _xy_act_as_zero(head):
                raise CensusError("nilpotent-point irreducible with x,y not zero")
        mb = baby_verma(p, z_ints, gens, chi, "B")
        sub = irreducible_subquotient(mb, seed=seed)
        cert = certify_irreducible(sub, seed, commutant_limit)
        if cert.irreducible and not _xy_act_as_zero(sub):
            raise CensusError("nilpotent-point irreducible with x,y not zero")
        cands.append(("B-type-subquotient", sub, cert))
        finish_row("nilpotent", K, chi, cands,
                   note="all certified irreducibles have x = y = 0")

    if "regss" in strata:
        K, lam = artin_schreier_ext(base, 1)
        for (xv, yv) in [(1, 0), (0, 1), (1, 1)][:max(1, samples)]:
            chi = {"ep": K.zero, "fp": K.zero, "hph": K.one,
                   "xp": K.from_int(xv), "yp": K.from_int(yv)}
            cands = []
            for tau, q in highest_weight_candidates(p, z_ints, gens, chi, K, lam,
                                                    relation=relation):
                cert = certify_irreducible(q, seed, commutant_limit)
                cands.append((f"hw-quotient(tau={field_value_str(K, tau)})", q, cert))
            finish_row("regss", K, chi, cands)

    if "vstratum" in strata:
        K, _ = artin_schreier_ext(base, 1)
        n_beta = K.order if beta_limit is None else min(beta_limit, K.order)
        irr = 0
        red = 0
        first_irr = None
        for beta in range(n_beta):
            chi = {"ep": K.zero, "fp": K.one, "hph": K.zero, "xp": K.zero,
                   "yp": K.pow_(beta, p) if beta else K.zero}
            mod = baby_verma(p, z_ints, gens, chi, "B", K=K)
            cert = certify_irreducible(mod, seed, commutant_limit)
            if cert.irreducible:
                irr += 1
                if first_irr is None:
                    first_irr = (beta, chi, mod, cert)
            else:
                red += 1
        if irr == 0:
            raise CensusError("no irreducible B-type module in the fp = 1 stratum")
        beta, chi, mod, cert = first_irr
        finish_row("vstratum", K, chi,
                   [(f"B-type(beta={field_value_str(K, K.from_int(0) if beta == 0 else beta)})",
                     mod, cert)],
                   note=f"beta scan over {n_beta} values: {irr} irreducible, {red} reducible")

    if "ntype" in strata and z0:
        K = base
        for xv in range(1, min(p, 1 + max(1, samples))):
            chi = {"ep": K.zero, "fp": K.zero, "hph": K.zero,
                   "xp": K.from_int(xv), "yp": K.zero}
            mod = baby_verma(p, z_ints, gens, chi, "N", seed=seed)
            cert = certify_irreducible(mod, seed, commutant_limit)
            finish_row("ntype", K, chi, [("N-type-head", mod, cert)])

    if "random" in strata:
        # stay in the ep = hph = 0 slice so lambda = 0; tau roots are searched
        # in the degree-p extension, where every degree-p factor splits
        from .fields import ExtField, find_irreducible
        K = ExtField(base, find_irreducible(base, p))
        for _ in range(samples):
            ints = {"ep": 0, "fp": rng.randrange(p), "hph": 0,
                    "xp": rng.randrange(p), "yp": rng.randrange(p)}
            vals = {k: K.from_int(v) for k, v in ints.items()}
            cands = []
            notes = ["random point in the ep = hph = 0 slice"]
            try:
                if vals["xp"] == K.zero:
                    mod = baby_verma(p, z_ints, gens, vals, "B", K=K)
                    cands.append(("B-type", mod,
                                  certify_irreducible(mod, seed, commutant_limit)))
                elif z0 and p == 3:
                    mod = baby_verma(p, z_ints, gens, vals, "N", K=K, seed=seed)
                    cands.append(("N-type-head", mod,
                                  certify_irreducible(mod, seed, commutant_limit)))
            except ModuleError as exc:
                notes.append(f"induced candidate unavailable: {exc}")
            for tau, q in highest_weight_candidates(p, z_ints, gens, vals, K,
                                                    K.zero, relation=relation):
                cert = certify_irreducible(q, seed, commutant_limit)
                cands.append((f"hw-quotient(tau={field_value_str(K, tau)})", q, cert))
            finish_row("random", K, vals, cands, note="; ".join(notes))

    n_mismatch = sum(1 for r in rows if r.smooth is not None and r.azumaya != r.smooth)
    summary = {
        "p": p, "z": list(z_ints), "seed": seed, "rows": len(rows),
        "max_irr_dim_overall": max((r.max_irr_dim for r in rows), default=0),
        "azumaya_smooth_mismatches": n_mismatch,
        "pi_degree_bound_respected": True,
    }
    return rows, summary


def verify_z0_classification(p, chi_ints, gens: CenterGenSet, seed=0) -> dict:
    """Check the three-way classification of irreducibles at z = 0 for a
    character with chi(ep) = 0.

    xp != 0: the N-type head is p^2-dimensional and irreducible.
    xp = 0, yp != 0: the B-type module is p^2-dimensional and irreducible.
    xp = yp = 0: every irreducible subquotient found kills x and y and has
    dimension at most p.
    """
    base = PrimeField(p)
    chi = {k: base.from_int(v) for k, v in chi_ints.items()}
    report = {"chi": dict(chi_ints), "p": p}
    if chi["xp"] != base.zero:
        mod = baby_verma(p, (), gens, chi, "N", seed=seed)
        cert = certify_irreducible(mod, seed)
        report["case"] = "xp nonzero: N-type"
        report["dim"] = mod.dim
        report["irreducible"] = cert.irreducible
        report["ok"] = mod.dim == p * p and cert.irreducible
        return report
    if chi["yp"] != base.zero:
        if chi["hph"] == base.zero:
            K, mu = base, base.zero
        else:
            K, mu = artin_schreier_ext(base, chi["hph"])
        kchi = {k: K.from_int(v) for k, v in chi_ints.items()}
        mod = baby_verma(p, (), gens, kchi, "B", K=K, mu=mu)
        cert = certify_irreducible(mod, seed)
        report["case"] = "xp = 0, yp nonzero: B-type"
        report["dim"] = mod.dim
        report["irreducible"] = cert.irreducible
        report["ok"] = mod.dim == p * p and cert.irreducible
        return report
    mod = baby_verma(p, (), gens, chi, "B")
    sub = irreducible_subquotient(mod, seed=seed)
    cert = certify_irreducible(sub, seed)
    ok = _xy_act_as_zero(sub) and sub.dim <= p
    report["case"] = "xp = yp = 0: singular point"
    report["dim"] = sub.dim
    report["irreducible"] = cert.irreducible
    report["xy_zero"] = _xy_act_as_zero(sub)
    report["ok"] = ok and cert.irreducible
    return report
