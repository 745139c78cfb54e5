"""Exact scalar arithmetic for the quantum sphere.

Every constant that appears in the differential geometry of the standard
quantum sphere lies in the field

    K = Q(s)[r] / (r^2 - s^2 - s^{-2}),

where ``s`` is a formal square root of the deformation parameter ``q`` and
``r`` is a square root of the q-integer ``[2]_q = q + q^{-1}``.  Working in
K keeps half-integer powers of q and the frame normalisation ``[2]_q^{1/2}``
exact, so every identity in the package is decided by arithmetic rather
than by numerics.

A scalar is stored as ``(pe + pr * r) / den`` with ``pe``, ``pr`` Laurent
polynomials in ``s`` and ``den`` an ordinary polynomial in ``s`` (lowest
exponent 0, leading coefficient 1, no common factor with the numerators).
That canonical form makes equality a tuple comparison and lets scalars be
dictionary keys.

The q -> 1 limit is taken by substituting s = 1 into the reduced form,
never by differentiating: q-integers are Laurent polynomials once reduced,
so ``[n]_q`` at q = 1 is literally the integer n.  Values with a nonzero
r-part pick up an exact multiple of sqrt(2) at q = 1 and are returned as a
pair of rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

try:  # gmpy2 is optional; mpq halves the runtime of the heavy suites
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)

# ---------------------------------------------------------------------------
# Laurent polynomials in s as {exponent: rational} dicts (zero coeffs absent)
# ---------------------------------------------------------------------------


def _padd(p1, p2):
    out = dict(p1)
    for e, c in p2.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pmul(p1, p2):
    if not p1 or not p2:
        return {}
    if len(p1) == 1:
        (e1, c1), = p1.items()
        return {e1 + e: c1 * c for e, c in p2.items()}
    if len(p2) == 1:
        (e2, c2), = p2.items()
        return {e + e2: c * c2 for e, c in p1.items()}
    out = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            e = e1 + e2
            v = out.get(e)
            if v is None:
                out[e] = c1 * c2
            else:
                v = v + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
    return out


def _pshift(p, k):
    if k == 0:
        return p
    return {e + k: c for e, c in p.items()}


def _pscale(p, f):
    return {e: c * f for e, c in p.items()}


def _to_dense(p):
    """Laurent dict with min exponent 0 -> dense coefficient list."""
    n = max(p) + 1
    out = [_ZERO] * n
    for e, c in p.items():
        out[e] = c
    return out


def _from_dense(lst):
    return {e: c for e, c in enumerate(lst) if c}


def _dense_divmod(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[dn]
    quot = [_ZERO] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if not c:
            continue
        f = c / lead
        quot[i - dn] = f
        for j, dc in enumerate(den):
            num[i - dn + j] = num[i - dn + j] - f * dc
    while num and not num[-1]:
        num.pop()
    return quot, num


def _int_dense(p):
    """Laurent dict (min exp 0 after the caller's shift) -> primitive dense
    integer list.  Clearing the rational denominators and the content only
    changes the gcd by a unit, which is all the reduction cares about."""
    lcm = 1
    for c in p.values():
        d = c.denominator
        lcm = lcm // gcd(lcm, d) * d
    out = [0] * (max(p) + 1)
    for e, c in p.items():
        out[e] = int(c * lcm)
    g = 0
    for v in out:
        g = gcd(g, v)
        if g == 1:
            return out
    return [v // g for v in out]


def _int_prem(a, b):
    """Pseudo-remainder of dense integer polys, content-stripped."""
    db = len(b) - 1
    if db == 0:
        return []
    r = list(a)
    lb = b[-1]
    while len(r) - 1 >= db:
        if r[-1] == 0:
            r.pop()
            continue
        f = r[-1]
        if lb != 1:
            r = [lb * c for c in r]
        off = len(r) - 1 - db
        for j in range(db):
            r[off + j] -= f * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    g = 0
    for v in r:
        g = gcd(g, v)
        if g == 1:
            return r
    return [v // g for v in r] if g else r


def _poly_gcd(p1, p2):
    """gcd of two Laurent dicts, returned as a monic polynomial dict
    (min exp 0).  s is a unit in the Laurent ring, so each input is first
    shifted down to an honest polynomial.

    Runs a primitive remainder sequence over the integers; fractions only
    reappear at the end to make the answer monic.
    """
    if not p1:
        p1, p2 = p2, p1
    if not p1:
        return _PONE
    a = _int_dense(_pshift(p1, -min(p1)))
    if not p2:
        b = []
    else:
        b = _int_dense(_pshift(p2, -min(p2)))
    if len(a) == 1 or len(b) == 1:
        return _PONE
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_prem(a, b)
    if len(a) == 1:
        return _PONE
    lead = _Q(a[-1])
    return {e: _Q(c) / lead for e, c in enumerate(a) if c}


def _pdiv_exact(p, g):
    """Divide Laurent dict p by polynomial dict g (must divide exactly)."""
    if g == {0: _ONE}:
        return p
    if not p:
        return {}
    shift = min(p)
    quot, rem = _dense_divmod(_to_dense(_pshift(p, -shift)), _to_dense(g))
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return _pshift(_from_dense(quot), shift)


# ---------------------------------------------------------------------------
# the field K
# ---------------------------------------------------------------------------

# r^2 = s^2 + s^{-2}
_RSQ = {2: _ONE, -2: _ONE}
_PONE = {0: _ONE}


class Scalar:
    """An element (pe + pr*r)/den of K = Q(s)[r]/(r^2 - s^2 - s^{-2}).

    Arithmetic keeps the raw numerator/denominator dicts and defers the
    gcd reduction until a canonical form is actually needed (equality,
    hashing, limits, display).  The intermediate scalars of a big tensor
    computation vastly outnumber the surviving ones, so reducing lazily
    is worth an order of magnitude on the curvature pipeline.
    """

    __slots__ = ("pe", "pr", "den", "_key", "_reduced")

    def __init__(self, pe, pr=None, den=None, _normal=False):
        if pr is None:
            pr = {}
        if den is None:
            den = _PONE
        elif not den:
            raise ZeroDivisionError("zero denominator in scalar")
        if not pe and not pr:
            den = _PONE
            _normal = True
        self.pe = pe
        self.pr = pr
        self.den = den
        self._key = None
        self._reduced = _normal
        # Reduction is deferred while the denominator stays small (a
        # monomial, or a binomial like q - q^-1 or q^2 + q^-2, which is
        # where nearly all the gcd time used to go).  Once a product of
        # such denominators piles up we cancel right away, otherwise
        # denominators grow multiplicatively through long chains of
        # arithmetic and the final reduction becomes hopeless.
        if not _normal and len(den) > 2:
            self._reduce()

    def _reduce(self) -> "Scalar":
        if not self._reduced:
            self.pe, self.pr, self.den = _normalise(self.pe, self.pr, self.den)
            self._reduced = True
        return self

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(x) -> "Scalar":
        c = _Q(x)
        if not c:
            return ZERO
        return Scalar({0: c}, {}, _PONE, _normal=True)

    @staticmethod
    def s_power(k: int) -> "Scalar":
        """s^k, i.e. q^(k/2)."""
        return Scalar({k: _ONE}, {}, _PONE, _normal=True)

    @staticmethod
    def q_power(k: int) -> "Scalar":
        return Scalar({2 * k: _ONE}, {}, _PONE, _normal=True)

    @staticmethod
    def root_two_q() -> "Scalar":
        """r = [2]_q^{1/2}."""
        return Scalar({}, {0: _ONE}, _PONE, _normal=True)

    @staticmethod
    def qnumber(two_x: int) -> "Scalar":
        """The q-number [x]_q = (q^{-x} - q^x)/(q^{-1} - q) for x = two_x/2.

        Integer x gives the familiar Laurent polynomial
        q^{-(x-1)} + q^{-(x-3)} + ... + q^{x-1}; half-integer x stays a
        rational function of s.
        """
        if two_x == 0:
            return ZERO
        num = {-two_x: _ONE, two_x: -_ONE}
        den = {-2: _ONE, 2: -_ONE}
        return Scalar(num, {}, den)

    # -- canonical key, equality, hashing -----------------------------------

    def _freeze(self):
        key = self._key
        if key is None:
            self._reduce()
            key = (
                tuple(sorted(self.pe.items())),
                tuple(sorted(self.pr.items())),
                tuple(sorted(self.den.items())),
            )
            self._key = key
        return key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._freeze() == other._freeze()

    def __hash__(self):
        return hash(self._freeze())

    def __bool__(self):
        return bool(self.pe) or bool(self.pr)

    def is_zero(self) -> bool:
        return not self

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        if self.den == other.den:
            return Scalar(_padd(self.pe, other.pe), _padd(self.pr, other.pr),
                          self.den)
        pe = _padd(_pmul(self.pe, other.den), _pmul(other.pe, self.den))
        pr = _padd(_pmul(self.pr, other.den), _pmul(other.pr, self.den))
        return Scalar(pe, pr, _pmul(self.den, other.den))

    def __neg__(self):
        return Scalar(_pneg(self.pe), _pneg(self.pr), self.den,
                      _normal=self._reduced)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self or not other:
            return ZERO
        pe = _padd(_pmul(self.pe, other.pe),
                   _pmul(_RSQ, _pmul(self.pr, other.pr)))
        pr = _padd(_pmul(self.pe, other.pr), _pmul(self.pr, other.pe))
        return Scalar(pe, pr, _pmul(self.den, other.den))

    def scale_s(self, k: int) -> "Scalar":
        """Fast multiplication by s^k."""
        if not self:
            return self
        return Scalar(_pshift(self.pe, k), _pshift(self.pr, k), self.den,
                      _normal=self._reduced)

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        # 1/((pe + pr r)/den) = den (pe - pr r) / (pe^2 - pr^2 (s^2+s^-2))
        norm = _padd(_pmul(self.pe, self.pe),
                     _pneg(_pmul(_RSQ, _pmul(self.pr, self.pr))))
        pe = _pmul(self.den, self.pe)
        pr = _pneg(_pmul(self.den, self.pr))
        return Scalar(pe, pr, norm)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation ---------------------------------------------------------

    def eval_float(self, q: float) -> float:
        """Numerical value at a given q > 0."""
        s = q ** 0.5
        r = (q + 1.0 / q) ** 0.5
        pe = sum(float(c) * s ** e for e, c in self.pe.items())
        pr = sum(float(c) * s ** e for e, c in self.pr.items())
        den = sum(float(c) * s ** e for e, c in self.den.items())
        return (pe + pr * r) / den

    def eval_rational(self, q) -> Fraction:
        """Exact value at a rational q, when the scalar lies in Q(q).

        Raises ValueError if the scalar genuinely involves s = q^{1/2} or
        r = [2]_q^{1/2}, or if the denominator vanishes at q.
        """
        self._reduce()
        q = Fraction(q)
        if self.pr:
            raise ValueError("scalar has a [2]_q^{1/2} part; not rational in q")
        if any(e % 2 for e in self.pe) or any(e % 2 for e in self.den):
            raise ValueError("scalar has half-integer q powers; not rational in q")
        num = sum(Fraction(c) * q ** (e // 2) for e, c in self.pe.items())
        den = sum(Fraction(c) * q ** (e // 2) for e, c in self.den.items())
        if den == 0:
            raise ValueError("denominator vanishes at q = %s" % q)
        return Fraction(num) / den

    def limit_q_one(self):
        """Exact q -> 1 limit by substituting s = 1 into the reduced form.

        Returns (u, v) with value u + v*sqrt(2) as exact rationals.  The
        substitution is legal because scalars are kept gcd-reduced; a pole
        at q = 1 surfaces as a vanishing denominator and raises.
        """
        self._reduce()
        den = sum(self.den.values(), _ZERO)
        if not den:
            raise ZeroDivisionError("pole at q = 1")
        u = sum(self.pe.values(), _ZERO) / den
        v = sum(self.pr.values(), _ZERO) / den
        return Fraction(u), Fraction(v)

    # -- display ------------------------------------------------------------

    def _poly_str(self, p):
        if not p:
            return "0"
        parts = []
        for e in sorted(p):
            c = p[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append("s^%d" % e)
            elif c == -1:
                parts.append("-s^%d" % e)
            else:
                parts.append("%s*s^%d" % (c, e))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        self._reduce()
        if not self:
            return "0"
        num = self._poly_str(self.pe)
        if self.pr:
            rpart = "(%s)*r" % self._poly_str(self.pr)
            num = rpart if not self.pe else "%s + %s" % (num, rpart)
        if self.den == _PONE:
            return num
        return "(%s)/(%s)" % (num, self._poly_str(self.den))


def _normalise(pe, pr, den):
    if not den:
        raise ZeroDivisionError("zero denominator in scalar")
    if not pe and not pr:
        return {}, {}, _PONE
    # pull the denominator's s-power into the numerators
    dshift = min(den)
    if dshift:
        den = _pshift(den, -dshift)
        pe = _pshift(pe, -dshift)
        pr = _pshift(pr, -dshift)
    if len(den) == 1:
        # monomial denominator: nothing to cancel beyond the constant
        c = den[0]
        if c != 1:
            inv = _ONE / c
            pe = _pscale(pe, inv)
            pr = _pscale(pr, inv)
        return pe, pr, _PONE
    if den != _PONE:
        g = _poly_gcd(pe if pe else pr, den)
        if pr and pe and g != _PONE:
            g = _poly_gcd(g, pr)  # gcd of all three
        if g != _PONE:
            pe = _pdiv_exact(pe, g)
            pr = _pdiv_exact(pr, g)
            den = _pdiv_exact(den, g)
            shift = min(den)
            if shift:
                den = _pshift(den, -shift)
                pe = _pshift(pe, -shift)
                pr = _pshift(pr, -shift)
        lead = den[max(den)]
        if lead != 1:
            inv = _ONE / lead
            pe = _pscale(pe, inv)
            pr = _pscale(pr, inv)
            den = _pscale(den, inv)
    return pe, pr, den


ZERO = Scalar({}, {}, _PONE, _normal=True)
ONE = Scalar({0: _ONE}, {}, _PONE, _normal=True)
ROOT_TWO_Q = Scalar.root_two_q()


def rational(x) -> Scalar:
    return Scalar.from_rational(x)


def s_pow(k: int) -> Scalar:
    return Scalar.s_power(k)


def q_pow(k: int) -> Scalar:
    return Scalar.q_power(k)


def qnum(two_x: int) -> Scalar:
    return Scalar.qnumber(two_x)
