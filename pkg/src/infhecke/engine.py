"""Noncommutative PBW engine for the deformed algebras on generators e, f, h, x, y.

Elements are linear combinations of ordered monomials e^a f^b h^c x^d y^g
(in a configurable generator order).  The defining commutators are

    [h,e] = 2e   [h,f] = -2f   [e,f] = h
    [h,x] = x    [h,y] = -y    [e,x] = 0   [f,x] = y   [f,y] = 0   [e,y] = x
    [x,y] = z(C)          with C = h^2 + 4ef - 2h

where z is a polynomial deformation parameter.  Rewriting to normal form
terminates: every swap either keeps the x,y-degree and removes an inversion
(with strictly shorter correction words), or strictly lowers the x,y-degree
via the [x,y] rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

GENS = ("e", "f", "h", "x", "y")

# structural commutators [a, b] for the fixed pairs; values are generator -> coeff
_BRACKETS = {
    ("h", "e"): {"e": 2},
    ("h", "f"): {"f": -2},
    ("e", "f"): {"h": 1},
    ("h", "x"): {"x": 1},
    ("h", "y"): {"y": -1},
    ("e", "x"): {},
    ("f", "x"): {"y": 1},
    ("f", "y"): {},
    ("e", "y"): {"x": 1},
}


class AmbientMismatch(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class Element:
    """A normal-form element: dict monomial-tuple -> nonzero field element."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        z = alg.field.zero
        self.terms = {m: c for m, c in terms.items() if c != z}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg.key == other.alg.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg.key, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self.alg.coerce(other)
        F = self.alg.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return Element(self.alg, out)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        other = self.alg.coerce(other)
        F = self.alg.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.sub(out.get(m, F.zero), c)
        return Element(self.alg, out)

    def __rsub__(self, other):
        return self.alg.coerce(other) - self

    def __neg__(self):
        F = self.alg.field
        return Element(self.alg, {m: F.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.alg.field.from_int(other))
        return self.alg.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(self.alg.field.from_int(other))
        return self.alg.multiply(self.alg.coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.one()
        for _ in range(n):
            out = self.alg.multiply(out, self)
        return out

    def scale(self, c):
        F = self.alg.field
        if c == F.zero:
            return Element(self.alg, {})
        return Element(self.alg, {m: F.mul(c, v) for m, v in self.terms.items()})

    # -- gradings ----------------------------------------------------------
    def filtration_degree(self) -> int:
        """Total x,y-degree; -1 for the zero element."""
        if not self.terms:
            return -1
        ix, iy = self.alg.pos["x"], self.alg.pos["y"]
        return max(m[ix] + m[iy] for m in self.terms)

    def weight_decomposition(self):
        """Split into ad-h weight components, keyed by the integer weight."""
        alg = self.alg
        pe, pf, px, py = (alg.pos[g] for g in ("e", "f", "x", "y"))
        out = {}
        for m, c in self.terms.items():
            w = 2 * m[pe] - 2 * m[pf] + m[px] - m[py]
            out.setdefault(w, {})[m] = c
        return {w: Element(alg, t) for w, t in sorted(out.items())}

    def top_part(self):
        """Terms of maximal x,y-degree."""
        d = self.filtration_degree()
        ix, iy = self.alg.pos["x"], self.alg.pos["y"]
        return Element(self.alg, {m: c for m, c in self.terms.items()
                                  if m[ix] + m[iy] == d})

    def reinterpret(self, target) -> "Element":
        """Move to another algebra with the same order and field (e.g. other z)."""
        if target.order != self.alg.order or target.field.key() != self.alg.field.key():
            raise AmbientMismatch("reinterpret requires identical order and field")
        return Element(target, dict(self.terms))

    def convert(self, target) -> "Element":
        """Re-express in another generator order (same field and deformation)."""
        if target.field.key() != self.alg.field.key() or target.z != self.alg.z:
            raise AmbientMismatch("convert requires identical field and deformation")
        out = target.zero()
        for m, c in self.terms.items():
            word = self.alg.mono_letters(m)
            out = out + target.word_to_element([(c, word)])
        return out

    def __str__(self):
        return self.alg.format_element(self)

    __repr__ = __str__


@dataclass
class ConfluenceReport:
    samples: int
    seed: int
    divergences: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.divergences


class PbwAlgebra:
    """The rewriting context: prime field (or extension), deformation z, order."""

    def __init__(self, field, z=(), order=GENS, exp_cap=None):
        order = tuple(order)
        if sorted(order) != sorted(GENS):
            raise ValueError(f"order must be a permutation of {GENS}")
        self.field = field
        zc = tuple(field.from_int(c) if isinstance(c, int) else c for c in z)
        while zc and zc[-1] == field.zero:
            zc = zc[:-1]
        self.z = zc
        self.order = order
        self.pos = {g: i for i, g in enumerate(order)}
        self.nslots = len(order)
        self.exp_cap = exp_cap if exp_cap is not None else 4 * field.p
        self.key = (field.key(), self.z, order)
        self._gm_cache = {}
        self._tails = {}
        self._casimir_pows = None
        self._z_nc = None

    def __repr__(self):
        zs = ",".join(str(c) for c in self.z) if self.z else "0"
        return f"H(p={self.field.p}, z=[{zs}], order={''.join(self.order)})"

    # -- constructors -------------------------------------------------------
    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {(0,) * self.nslots: self.field.one})

    def scalar(self, c):
        if isinstance(c, int):
            c = self.field.from_int(c)
        return Element(self, {(0,) * self.nslots: c})

    def gen(self, name):
        m = [0] * self.nslots
        m[self.pos[name]] = 1
        return Element(self, {tuple(m): self.field.one})

    def monomial(self, **exps):
        m = [0] * self.nslots
        for g, e in exps.items():
            m[self.pos[g]] = e
        return Element(self, {tuple(m): self.field.one})

    def coerce(self, v):
        if isinstance(v, Element):
            if v.alg.key != self.key:
                raise AmbientMismatch(f"element of {v.alg!r} used in {self!r}")
            return v
        if isinstance(v, int):
            return self.scalar(v)
        raise TypeError(f"cannot coerce {type(v).__name__} into {self!r}")

    def mono_letters(self, m):
        out = []
        for i, g in enumerate(self.order):
            out.extend([g] * m[i])
        return out

    # -- rewrite tails -------------------------------------------------------
    def _bracket(self, a: str, b: str) -> Element:
        """Normal form of [a, b] for generators a, b."""
        if a == b:
            return self.zero()
        if (a, b) in _BRACKETS:
            tbl = _BRACKETS[(a, b)]
            sign = 1
        elif (b, a) in _BRACKETS:
            tbl = _BRACKETS[(b, a)]
            sign = -1
        elif (a, b) == ("x", "y"):
            return self.z_element()
        else:  # (a, b) == ("y", "x")
            return -self.z_element()
        acc = self.zero()
        for g, c in tbl.items():
            acc = acc + self.gen(g).scale(self.field.from_int(sign * c))
        return acc

    def _tail(self, gi: int, gj: int) -> dict:
        """Terms of [order[gi], order[gj]] as a dict (the rewrite correction)."""
        key = (gi, gj)
        t = self._tails.get(key)
        if t is None:
            t = self._bracket(self.order[gi], self.order[gj]).terms
            self._tails[key] = t
        return t

    # -- the recursive normal-form multiplier --------------------------------
    def gen_times_mono(self, gi: int, m: tuple) -> dict:
        """Normal form of generator(slot gi) * monomial, as a term dict."""
        cache = self._gm_cache
        key = (gi, m)
        hit = cache.get(key)
        if hit is not None:
            return hit
        # leftmost letter of m
        j = 0
        while j < self.nslots and m[j] == 0:
            j += 1
        if j >= gi or j == self.nslots:
            mm = list(m)
            mm[gi] += 1
            if mm[gi] > self.exp_cap:
                raise ExponentOverflow(
                    f"exponent of {self.order[gi]} exceeded cap {self.exp_cap}")
            out = {tuple(mm): self.field.one}
            cache[key] = out
            return out
        # m = u * m' with u strictly left of g in the order: swap and correct
        mp = list(m)
        mp[j] -= 1
        mp = tuple(mp)
        F = self.field
        out = {}
        # u * (g * m')
        for q, c in self.gen_times_mono(gi, mp).items():
            for r, c2 in self.gen_times_mono(j, q).items():
                v = F.mul(c, c2)
                out[r] = F.add(out.get(r, F.zero), v)
        # [g, u] * m'
        for tmono, tc in self._tail(gi, j).items():
            for r, c2 in self.mono_times_mono(tmono, mp).items():
                v = F.mul(tc, c2)
                out[r] = F.add(out.get(r, F.zero), v)
        out = {r: c for r, c in out.items() if c != F.zero}
        cache[key] = out
        return out

    def mono_times_mono(self, m1: tuple, m2: tuple) -> dict:
        """Normal form of the product of two ordered monomials."""
        F = self.field
        acc = {m2: F.one}
        # peel letters of m1 from the right
        for i in range(self.nslots - 1, -1, -1):
            for _ in range(m1[i]):
                nxt = {}
                for q, c in acc.items():
                    for r, c2 in self.gen_times_mono(i, q).items():
                        v = F.mul(c, c2)
                        nxt[r] = F.add(nxt.get(r, F.zero), v)
                acc = {r: c for r, c in nxt.items() if c != F.zero}
        return acc

    def multiply(self, a: Element, b: Element) -> Element:
        a = self.coerce(a)
        b = self.coerce(b)
        F = self.field
        out = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c = F.mul(c1, c2)
                for r, c3 in self.mono_times_mono(m1, m2).items():
                    v = F.mul(c, c3)
                    out[r] = F.add(out.get(r, F.zero), v)
        return Element(self, out)

    def commutator(self, a, b) -> Element:
        a, b = self.coerce(a), self.coerce(b)
        return self.multiply(a, b) - self.multiply(b, a)

    def ad_pow(self, g, n: int, a) -> Element:
        """(ad g)^n applied to a; g may be a generator name or an element."""
        if isinstance(g, str):
            g = self.gen(g)
        out = self.coerce(a)
        for _ in range(n):
            out = self.commutator(g, out)
        return out

    # -- Casimir -------------------------------------------------------------
    def casimir(self) -> Element:
        return self.casimir_power(1)

    def casimir_power(self, n: int) -> Element:
        if self._casimir_pows is None:
            h, e, f = self.gen("h"), self.gen("e"), self.gen("f")
            cas = self.multiply(h, h) + self.multiply(e, f).scale(self.field.from_int(4)) \
                - h.scale(self.field.from_int(2))
            self._casimir_pows = [self.one(), cas]
        pows = self._casimir_pows
        while len(pows) <= n:
            pows.append(self.multiply(pows[-1], pows[1]))
        return pows[n]

    def z_element(self) -> Element:
        """z evaluated at the Casimir element, in normal form."""
        if self._z_nc is None:
            acc = self.zero()
            for i, c in enumerate(self.z):
                acc = acc + self.casimir_power(i).scale(c)
            self._z_nc = acc
        return self._z_nc

    def casimir_poly(self, coeffs) -> Element:
        """Evaluate a coefficient sequence (low degree first) at the Casimir element."""
        acc = self.zero()
        for i, c in enumerate(coeffs):
            if isinstance(c, int):
                c = self.field.from_int(c)
            acc = acc + self.casimir_power(i).scale(c)
        return acc

    # -- anti-involution ------------------------------------------------------
    _J_MAP = {"e": ("f", -1), "f": ("e", -1), "h": ("h", 1), "x": ("y", 1), "y": ("x", 1)}

    def antiinvolution(self, a: Element) -> Element:
        """The order-reversing symmetry j: x<->y, h->h, e->-f, f->-e."""
        a = self.coerce(a)
        F = self.field
        out = self.zero()
        for m, c in a.terms.items():
            acc = {(0,) * self.nslots: c}
            sign = 1
            # j reverses products, so fold the original letters left to right,
            # left-multiplying by each image
            for g in self.mono_letters(m):
                img, s = self._J_MAP[g]
                sign *= s
                gi = self.pos[img]
                nxt = {}
                for q, cc in acc.items():
                    for r, c2 in self.gen_times_mono(gi, q).items():
                        v = F.mul(cc, c2)
                        nxt[r] = F.add(nxt.get(r, F.zero), v)
                acc = nxt
            piece = Element(self, acc)
            if sign < 0:
                piece = -piece
            out = out + piece
        return out

    # -- word rewriting (independent reduction strategies) ---------------------
    def word_to_element(self, word_terms, strategy="left") -> Element:
        """Normal form of a formal sum of words.

        word_terms: iterable of (coefficient, [generator names]).
        strategy "left" resolves the leftmost inversion first, "right" the
        rightmost; both must agree (the PBW property makes rewriting confluent).
        """
        F = self.field
        pos = self.pos
        out = {}
        stack = [(tuple(w), c if not isinstance(c, int) else F.from_int(c))
                 for c, w in word_terms]
        while stack:
            word, coeff = stack.pop()
            if coeff == F.zero:
                continue
            idx = self._find_inversion(word, strategy)
            if idx is None:
                m = [0] * self.nslots
                for g in word:
                    m[pos[g]] += 1
                    if m[pos[g]] > self.exp_cap:
                        raise ExponentOverflow(f"exponent cap {self.exp_cap} exceeded")
                m = tuple(m)
                out[m] = F.add(out.get(m, F.zero), coeff)
                continue
            a, b = word[idx], word[idx + 1]
            swapped = word[:idx] + (b, a) + word[idx + 2:]
            stack.append((swapped, coeff))
            for tmono, tc in self._tail(pos[a], pos[b]).items():
                tw = tuple(self.mono_letters(tmono))
                stack.append((word[:idx] + tw + word[idx + 2:], F.mul(coeff, tc)))
        return Element(self, out)

    def _find_inversion(self, word, strategy):
        pos = self.pos
        rng = range(len(word) - 1)
        if strategy == "right":
            rng = reversed(rng)
        elif strategy != "left":
            raise ValueError(f"unknown strategy {strategy!r}")
        for i in rng:
            if pos[word[i]] > pos[word[i + 1]]:
                return i
        return None

    def normal_form(self, word_terms, strategy="left") -> Element:
        return self.word_to_element(word_terms, strategy=strategy)

    def confluence_check(self, n_samples: int, seed: int, max_len: int = 7) -> ConfluenceReport:
        """Reduce random words with both strategies and the recursive multiplier."""
        rng = random.Random(seed)
        report = ConfluenceReport(samples=n_samples, seed=seed)
        for _ in range(n_samples):
            n = rng.randrange(1, max_len + 1)
            word = [GENS[rng.randrange(5)] for _ in range(n)]
            coeff = self.field.from_int(rng.randrange(1, self.field.p))
            left = self.word_to_element([(coeff, word)], strategy="left")
            right = self.word_to_element([(coeff, word)], strategy="right")
            prod = self.scalar(coeff)
            for g in word:
                prod = self.multiply(prod, self.gen(g))
            if not (left == right == prod):
                report.divergences.append("".join(word))
        return report

    def random_element(self, rng: random.Random, n_terms=3, max_exp=2) -> Element:
        out = {}
        F = self.field
        for _ in range(n_terms):
            m = tuple(rng.randrange(max_exp + 1) for _ in range(self.nslots))
            out[m] = F.from_int(rng.randrange(1, F.p))
        return Element(self, out)

    # -- parsing / printing ----------------------------------------------------
    def parse(self, text: str) -> Element:
        """Parse the textual element syntax, e.g. ``3*e^2*f*x^4 - x*y + D``.

        ``D`` denotes the Casimir element.  Coefficients are integers.
        """
        tokens = _tokenize(text)
        out = self.zero()
        i = 0
        sign = 1
        first = True
        while i < len(tokens):
            tok = tokens[i]
            if tok in ("+", "-"):
                sign = 1 if tok == "+" else -1
                i += 1
                if i >= len(tokens):
                    raise ValueError("dangling sign in element expression")
            elif not first:
                raise ValueError(f"expected '+' or '-' before {tok!r}")
            term, i = self._parse_term(tokens, i)
            out = out + (term if sign > 0 else -term)
            sign = 1
            first = False
        return out

    def _parse_term(self, tokens, i):
        acc = self.one()
        expect_factor = True
        while i < len(tokens) and (expect_factor or tokens[i] == "*"):
            if tokens[i] == "*":
                i += 1
                expect_factor = True
                continue
            tok = tokens[i]
            if tok.isdigit():
                acc = acc.scale(self.field.from_int(int(tok)))
                i += 1
            elif tok in GENS or tok == "D":
                base = self.casimir() if tok == "D" else self.gen(tok)
                exp = 1
                if i + 2 < len(tokens) + 1 and i + 1 < len(tokens) and tokens[i + 1] == "^":
                    if i + 2 >= len(tokens) or not tokens[i + 2].isdigit():
                        raise ValueError("'^' must be followed by an integer")
                    exp = int(tokens[i + 2])
                    i += 3
                else:
                    i += 1
                acc = self.multiply(acc, base ** exp)
            else:
                raise ValueError(f"unexpected token {tok!r}")
            expect_factor = False
        if expect_factor:
            raise ValueError("empty term in element expression")
        return acc, i

    def format_element(self, a: Element) -> str:
        if not a.terms:
            return "0"
        ix = {g: self.pos[g] for g in GENS}
        items = sorted(a.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]))
        parts = []
        for m, c in items:
            factors = []
            for g in self.order:
                e = m[self.pos[g]]
                if e == 1:
                    factors.append(g)
                elif e > 1:
                    factors.append(f"{g}^{e}")
            cs = self._format_coeff(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        return " + ".join(parts)

    def _format_coeff(self, c):
        co = self.field.coeffs(c)
        if len(co) == 1:
            return str(co[0])
        return "[" + ":".join(str(v) for v in co) + "]"


def centrality_witness(a: Element):
    """First generator whose commutator with a is nonzero, with the commutator.

    Returns None when a commutes with all five generators (hence is central,
    since they generate the algebra).
    """
    alg = a.alg
    for g in GENS:
        c = alg.commutator(a, alg.gen(g))
        if not c.is_zero():
            return g, c
    return None


def _tokenize(text: str):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif ch in "efhxyD":
            out.append(ch)
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in element expression")
    return out
