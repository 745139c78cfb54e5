"""The quantum group coordinate algebra and the quantum sphere inside it.

Elements of O(SU_q(2)) are kept in Poincare-Birkhoff-Witt normal form: every
element is a K-linear combination of monomials

    a^i b^j c^k        or        d^i b^j c^k   (i >= 1),

using the defining relations

    ab = q ba,  ac = q ca,  bd = q db,  cd = q dc,  bc = cb,
    ad = 1 + q bc,  da = 1 + q^{-1} bc,

and the star structure a* = d, b* = -q c, c* = -q^{-1} b, d* = a.  Reduction
to normal form happens inside monomial multiplication, so equality of
elements is literal equality of coefficient dictionaries.

The circle action grades the algebra: deg(a) = deg(c) = -1 and
deg(b) = deg(d) = +1 (twice the right spin weight).  The degree-0 subalgebra
is the coordinate algebra of the quantum sphere, generated by

    A = -q^{-1} b c,   B = -q^{-1} a b,   B* = c d.

The twisted derivations del_e, del_f (raising/lowering the column index of
matrix elements) and the group-like del_k implement the Dirac calculus:

    del_e(xy) = del_e(x) del_k(y) + del_k^{-1}(x) del_e(y),

and similarly for del_f.  On the generators: del_e sends a -> b, c -> d and
kills b, d; del_f sends b -> a, d -> c and kills a, c; del_k scales a
degree-n element by q^{n/2}.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import ONE, ROOT_TWO_Q, ZERO, Scalar, q_pow, qnum, rational, s_pow

# monomial: (branch, i, j, k); branch 0 = a^i b^j c^k, branch 1 = d^i b^j c^k
MONO_ID = (0, 0, 0, 0)

_M_A = (0, 1, 0, 0)
_M_B = (0, 0, 1, 0)
_M_C = (0, 0, 0, 1)
_M_D = (1, 1, 0, 0)


def mono_length(m) -> int:
    return m[1] + m[2] + m[3]


def mono_degree(m) -> int:
    t, i, j, k = m
    return (i if t else -i) + j - k


# ---------------------------------------------------------------------------
# normal-form monomial products
# ---------------------------------------------------------------------------

_ad_cache = {}
_da_cache = {}
_mul_cache = {}


def _ad_pow(i, m):
    """a^i d^m as ((monomial, s-exponent), ...) using ad = 1 + q bc."""
    key = (i, m)
    out = _ad_cache.get(key)
    if out is not None:
        return out
    if i == 0:
        out = (((1, m, 0, 0) if m else MONO_ID, 0),)
    elif m == 0:
        out = (((0, i, 0, 0), 0),)
    else:
        prev = _ad_pow(i - 1, m - 1)
        acc = []
        for (t, p, j, k), e in prev:
            acc.append(((t, p, j, k), e))
            acc.append(((t, p, j + 1, k + 1), e + 4 * m - 2))
        out = tuple(acc)
    _ad_cache[key] = out
    return out


def _da_pow(i, m):
    """d^i a^m as ((monomial, s-exponent), ...) using da = 1 + q^{-1} bc."""
    key = (i, m)
    out = _da_cache.get(key)
    if out is not None:
        return out
    if i == 0:
        out = (((0, m, 0, 0), 0),)
    elif m == 0:
        out = (((1, i, 0, 0), 0),)
    else:
        prev = _da_pow(i - 1, m - 1)
        acc = []
        for (t, p, j, k), e in prev:
            acc.append(((t, p, j, k), e))
            acc.append(((t, p, j + 1, k + 1), e - (4 * m - 2)))
        out = tuple(acc)
    _da_cache[key] = out
    return out


def mono_mul(m1, m2):
    """Product of two normal-form monomials: ((monomial, s-exponent), ...)."""
    key = (m1, m2)
    out = _mul_cache.get(key)
    if out is not None:
        return out
    t1, i1, j1, k1 = m1
    t2, i2, j2, k2 = m2
    if i2 == 0:
        out = (((t1, i1, j1 + j2, k1 + k2), 0),)
    else:
        bc1 = j1 + k1
        sexp = 2 * i2 * bc1 if t2 else -2 * i2 * bc1
        if i1 == 0:
            out = (((t2, i2, j1 + j2, k1 + k2), sexp),)
        elif t1 == t2:
            out = (((t1, i1 + i2, j1 + j2, k1 + k2), sexp),)
        else:
            cross = _ad_pow(i1, i2) if t1 == 0 else _da_pow(i1, i2)
            out = tuple(((t, p, j + j1 + j2, k + k1 + k2), e + sexp)
                        for (t, p, j, k), e in cross)
    _mul_cache[key] = out
    return out


def mono_star(m):
    """Star of a monomial: (monomial, sign, s-exponent)."""
    t, i, j, k = m
    if t == 0:
        return (1, i, k, j) if i else (0, 0, k, j), (-1) ** (j + k), \
            2 * (j - k) + 2 * i * (j + k)
    return (0, i, k, j), (-1) ** (j + k), 2 * (j - k) - 2 * i * (j + k)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class Element:
    """A K-linear combination of normal-form monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def from_mono(m, coeff=ONE) -> "Element":
        if coeff.is_zero():
            return Element()
        return Element({m: coeff})

    @staticmethod
    def scalar(c: Scalar) -> "Element":
        return Element.from_mono(MONO_ID, c)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Element(out)

    def __neg__(self):
        return Element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, e in mono_mul(m1, m2):
                    c = c12.scale_s(e)
                    v = out.get(m)
                    if v is None:
                        out[m] = c
                    else:
                        v = v + c
                        if v:
                            out[m] = v
                        else:
                            del out[m]
        return Element(out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "Element":
        if c.is_zero():
            return Element()
        return Element({m: c * v for m, v in self.terms.items()})

    def scale_s(self, e: int) -> "Element":
        if e == 0:
            return self
        return Element({m: v.scale_s(e) for m, v in self.terms.items()})

    def star(self) -> "Element":
        out = {}
        for m, c in self.terms.items():
            sm, sign, e = mono_star(m)
            v = c.scale_s(e)
            if sign < 0:
                v = -v
            prev = out.get(sm)
            out[sm] = v if prev is None else prev + v
        return Element({m: c for m, c in out.items() if c})

    # -- grading ------------------------------------------------------------

    def degrees(self):
        return {mono_degree(m) for m in self.terms}

    def degree(self):
        """The circle-action degree, or None for 0 or mixed elements."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def degree_part(self, n: int) -> "Element":
        return Element({m: c for m, c in self.terms.items()
                        if mono_degree(m) == n})

    def max_length(self) -> int:
        return max((mono_length(m) for m in self.terms), default=0)

    # -- display ------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (mono_length(m), m)):
            c = self.terms[m]
            word = mono_str(m)
            cs = repr(c)
            if word == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-%s" % word)
            else:
                parts.append("(%s)*%s" % (cs, word))
        return " + ".join(parts).replace("+ -", "- ")


def mono_str(m) -> str:
    t, i, j, k = m
    parts = []
    for letter, p in (("d" if t else "a", i), ("b", j), ("c", k)):
        if p == 1:
            parts.append(letter)
        elif p > 1:
            parts.append("%s^%d" % (letter, p))
    return "*".join(parts) if parts else "1"


ZERO_EL = Element()
ONE_EL = Element.from_mono(MONO_ID)

GEN_A = Element.from_mono(_M_A)
GEN_B = Element.from_mono(_M_B)
GEN_C = Element.from_mono(_M_C)
GEN_D = Element.from_mono(_M_D)

# sphere generators: A = -q^{-1} bc, B = -q^{-1} ab, B* = cd
SPHERE_A = Element.from_mono((0, 0, 1, 1), -q_pow(-1))
SPHERE_B = Element.from_mono((0, 1, 1, 0), -q_pow(-1))
SPHERE_BSTAR = GEN_C * GEN_D

_LETTER = {"a": GEN_A, "b": GEN_B, "c": GEN_C, "d": GEN_D}


# ---------------------------------------------------------------------------
# twisted derivations
# ---------------------------------------------------------------------------

# del_e: a -> b, c -> d; del_f: b -> a, d -> c
_DE_LETTER = {_M_A: _M_B, _M_C: _M_D}
_DF_LETTER = {_M_B: _M_A, _M_D: _M_C}

_LETTER_DEG = {_M_A: -1, _M_B: 1, _M_C: -1, _M_D: 1}

_de_cache = {MONO_ID: {}}
_df_cache = {MONO_ID: {}}


def _mono_split(m):
    """Strip the leftmost letter: (letter monomial, remainder monomial)."""
    t, i, j, k = m
    if i:
        if t == 0:
            return _M_A, (0, i - 1, j, k)
        return _M_D, (1, i - 1, j, k) if i > 1 else (0, 0, j, k)
    if j:
        return _M_B, (0, 0, j - 1, k)
    return _M_C, (0, 0, 0, k - 1)


def _mono_del(m, letter_map, cache):
    out = cache.get(m)
    if out is not None:
        return out
    letter, rest = _mono_split(m)
    ldeg = _LETTER_DEG[letter]
    out = {}
    hit = letter_map.get(letter)
    if hit is not None:
        rdeg = mono_degree(rest)
        for mm, e in mono_mul(hit, rest):
            c = s_pow(e + rdeg)
            prev = out.get(mm)
            out[mm] = c if prev is None else prev + c
    for mm, c in _mono_del(rest, letter_map, cache).items():
        for mmm, e in mono_mul(letter, mm):
            v = c.scale_s(e - ldeg)
            prev = out.get(mmm)
            if prev is None:
                out[mmm] = v
            else:
                prev = prev + v
                if prev:
                    out[mmm] = prev
                else:
                    del out[mmm]
    out = {mm: c for mm, c in out.items() if c}
    cache[m] = out
    return out


def _apply_del(x: Element, letter_map, cache) -> Element:
    out = {}
    for m, c in x.terms.items():
        for mm, d in _mono_del(m, letter_map, cache).items():
            v = c * d
            prev = out.get(mm)
            if prev is None:
                out[mm] = v
            else:
                prev = prev + v
                if prev:
                    out[mm] = prev
                else:
                    del out[mm]
    return Element(out)


def del_e(x: Element) -> Element:
    """Raising derivation: the upper-right entry of the Dirac commutator."""
    return _apply_del(x, _DE_LETTER, _de_cache)


def del_f(x: Element) -> Element:
    """Lowering derivation: the lower-left entry of the Dirac commutator."""
    return _apply_del(x, _DF_LETTER, _df_cache)


def del_k(x: Element, power: int = 1) -> Element:
    """Group-like twist: scales the degree-n part by q^{power*n/2}."""
    out = {}
    for m, c in x.terms.items():
        out[m] = c.scale_s(power * mono_degree(m))
    return Element(out)


# ---------------------------------------------------------------------------
# matrix elements of the two smallest corepresentations
# ---------------------------------------------------------------------------


def spin_half(i2: int, j2: int) -> Element:
    """Matrix element of the defining corepresentation; indices are doubled,
    so (i2, j2) ranges over {-1, +1}^2 and spin_half(-1, -1) = a."""
    table = {(-1, -1): GEN_A, (-1, 1): GEN_B, (1, -1): GEN_C, (1, 1): GEN_D}
    return table[(i2, j2)]


_spin_one_cache = {}


def spin_one(m: int, j: int) -> Element:
    """Matrix element t(m, j) of the vector corepresentation, m, j in
    {-1, 0, 1}.

    The middle column is fixed by the sphere generators together with
    orthogonality of the corepresentation matrix (the j = 0, m = 0 entry
    carries a constant term, pinned by Haar-orthogonality to the identity);
    the j = +-1 columns are [2]_q^{-1/2} del_{e/f} of the middle one.
    """
    key = (m, j)
    out = _spin_one_cache.get(key)
    if out is None:
        rinv = ROOT_TWO_Q.inverse()
        if j == 0:
            if m == -1:
                out = (GEN_A * GEN_B).scale(ROOT_TWO_Q.scale_s(-1))
            elif m == 0:
                out = ONE_EL + (GEN_B * GEN_C).scale(qnum(4))
            else:
                out = (GEN_C * GEN_D).scale(ROOT_TWO_Q.scale_s(-1))
        elif j == 1:
            out = del_e(spin_one(m, 0)).scale(rinv)
        else:
            out = del_f(spin_one(m, 0)).scale(rinv)
        _spin_one_cache[key] = out
    return out


def matrix_element(l, i, j) -> Element:
    """Matrix element t^l_{ij} for the stored corepresentations l = 1/2, 1.

    Indices may be ints, floats or Fractions; they must satisfy |i|, |j| <= l
    with l - i and l - j integral.
    """
    try:
        two_l = Fraction(l) * 2
        two_i = Fraction(i) * 2
        two_j = Fraction(j) * 2
    except (TypeError, ValueError):
        raise ValueError("bad matrix element index (%r, %r, %r)" % (l, i, j))
    if two_l.denominator != 1 or two_i.denominator != 1 or two_j.denominator != 1:
        raise ValueError("indices must be half-integers: (%r, %r, %r)" % (l, i, j))
    two_l, two_i, two_j = int(two_l), int(two_i), int(two_j)
    if abs(two_i) > two_l or abs(two_j) > two_l:
        raise ValueError("index out of range for l=%r: (%r, %r)" % (l, i, j))
    if (two_l - two_i) % 2 or (two_l - two_j) % 2:
        raise ValueError("indices must differ from l by integers: (%r, %r, %r)" % (l, i, j))
    if two_l == 1:
        return spin_half(two_i, two_j)
    if two_l == 2:
        return spin_one(two_i // 2, two_j // 2)
    raise ValueError("only l = 1/2 and l = 1 are stored, got l=%r" % (l,))


def podles_relations_check():
    """Verify the sphere relations exactly; returns (id, statement, ok, witness)."""
    checks = [
        ("podles-BA", "B A = q^2 A B", SPHERE_B * SPHERE_A - (SPHERE_A * SPHERE_B).scale(q_pow(2))),
        ("podles-ABs", "A B* = q^2 B* A", SPHERE_A * SPHERE_BSTAR - (SPHERE_BSTAR * SPHERE_A).scale(q_pow(2))),
        ("podles-BsB", "B* B = A - A^2", SPHERE_BSTAR * SPHERE_B - (SPHERE_A - SPHERE_A * SPHERE_A)),
        ("podles-BBs", "B B* = q^2 A - q^4 A^2",
         SPHERE_B * SPHERE_BSTAR - (SPHERE_A.scale(q_pow(2)) - (SPHERE_A * SPHERE_A).scale(q_pow(4)))),
    ]
    return [(cid, stmt, diff.is_zero(), repr(diff)) for cid, stmt, diff in checks]


# ---------------------------------------------------------------------------
# monomial enumeration (for solvers and the spectral backend)
# ---------------------------------------------------------------------------


def pbw_monomials(max_length: int, degree: int | None = None):
    """All normal-form monomials of length <= max_length, optionally
    restricted to one circle-action degree, in a deterministic order."""
    out = []
    for n in range(max_length + 1):
        for i in range(n + 1):
            for j in range(n - i + 1):
                k = n - i - j
                m = (0, i, j, k)
                if degree is None or mono_degree(m) == degree:
                    out.append(m)
                if i:
                    m = (1, i, j, k)
                    if degree is None or mono_degree(m) == degree:
                        out.append(m)
    return out


# ---------------------------------------------------------------------------
# a small parser for words in the generators
# ---------------------------------------------------------------------------

_NAMED = {
    "a": lambda: GEN_A, "b": lambda: GEN_B, "c": lambda: GEN_C,
    "d": lambda: GEN_D, "A": lambda: SPHERE_A, "B": lambda: SPHERE_B,
    "Bstar": lambda: SPHERE_BSTAR, "Bs": lambda: SPHERE_BSTAR,
}


def _tokenise(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^(),":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            word = text[i:j]
            if word in ("q", "s", "r", "t") or word in _NAMED:
                tokens.append(word)
            else:
                # juxtaposed single letters, e.g. "ab^2c"
                for letter in word:
                    if letter not in _NAMED:
                        raise ValueError("unknown name %r in %r" % (word, text))
                    tokens.append(letter)
            i = j
        else:
            raise ValueError("bad character %r in %r" % (ch, text))
    return tokens


def parse(text: str) -> Element:
    """Parse expressions like ``'a*b^2 - q^-1*c*d'`` or ``'r*A*Bstar'``.

    Understood atoms: the letters a, b, c, d, the sphere generators
    A, B, Bstar, rationals, and the scalars q, s, r, each with an optional
    integer exponent.
    """
    tokens = _tokenise(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        tok = peek()
        pos[0] += 1
        return tok

    def parse_exponent():
        if peek() != "^":
            return 1
        take()
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        tok = take()
        if tok is None or not tok.isdigit():
            raise ValueError("expected integer exponent in %r" % text)
        return sign * int(tok)

    def parse_index():
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        tok = take()
        if tok is None or not tok[0].isdigit():
            raise ValueError("expected index in %r" % text)
        return sign * Fraction(tok)

    def parse_atom():
        tok = take()
        if tok == "(":
            inner = parse_sum()
            if take() != ")":
                raise ValueError("unbalanced parentheses in %r" % text)
            base = inner
        elif tok == "t":
            if take() != "(":
                raise ValueError("expected '(' after t in %r" % text)
            l = parse_index()
            if take() != ",":
                raise ValueError("expected ',' in matrix element in %r" % text)
            mi = parse_index()
            if take() != ",":
                raise ValueError("expected ',' in matrix element in %r" % text)
            mj = parse_index()
            if take() != ")":
                raise ValueError("unbalanced parentheses in %r" % text)
            base = matrix_element(l, mi, mj)
        elif tok == "q":
            return Element.scalar(q_pow(parse_exponent()))
        elif tok == "s":
            return Element.scalar(s_pow(parse_exponent()))
        elif tok == "r":
            return Element.scalar(ROOT_TWO_Q ** parse_exponent())
        elif tok in _NAMED:
            base = _NAMED[tok]()
        elif tok is not None and tok[0].isdigit():
            return Element.scalar(rational(tok) ** parse_exponent())
        else:
            raise ValueError("unexpected token %r in %r" % (tok, text))
        exp = parse_exponent()
        if exp < 0:
            raise ValueError("negative powers of algebra elements in %r" % text)
        out = ONE_EL
        for _ in range(exp):
            out = out * base
        return out

    def parse_product():
        out = parse_atom()
        while peek() is not None and peek() not in ("+", "-", ")"):
            if peek() == "*":
                take()
            out = out * parse_atom()
        return out

    def parse_sum():
        negate = False
        if peek() in ("+", "-"):
            negate = take() == "-"
        out = parse_product()
        if negate:
            out = -out
        while peek() in ("+", "-"):
            sign = take()
            term = parse_product()
            out = out - term if sign == "-" else out + term
        return out

    result = parse_sum()
    if pos[0] != len(tokens):
        raise ValueError("trailing input in %r" % text)
    return result
