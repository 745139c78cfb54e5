"""Tensor powers of the one-form bimodule and the quantum metric.

A k-tensor (k = 2, 3, 4) is a formal sum of simple tensors of one-forms,
stored as a list of k-tuples.  Equality over the sphere algebra B is not
decidable term-by-term, so every tensor also carries a canonical coefficient
array indexed by frame multi-indices:

    coeff(T)[i_1 ... i_k] = <w_{i_1} (x) ... (x) w_{i_k}, T>

computed with nested right inner products.  Because the three-element frame
reconstructs every off-diagonal matrix, the array is a complete invariant:
two term lists represent the same tensor over B exactly when their arrays
agree, and the reconstruction

    T = sum w_{i_1} (x) ... (x) w_{i_k} . coeff(T)[i_1 ... i_k]

re-expresses any tensor through at most 3^k simple terms.  Term lists that
grow past a threshold are re-expressed automatically.

The module also provides the inner products on tensor powers (right ones
nest from the first leg, left ones from the last), the adjoint dag_T which
reverses legs, the multiplication map m onto diagonal 2x2 matrices, the
bidegree decomposition of two-tensors, and the metric two-tensor

    G = sum_j w_j (x) dag(w_j),        e^beta = <G, G> = q^2 + q^{-2}.

The normalised metric Z = e^{-beta/2} G involves a square root that the
coefficient field does not contain, so Z is kept as a base tensor together
with the square of its scale; pairing Z with itself multiplies by the exact
square.
"""

from __future__ import annotations


from .algebra import Element, ONE_EL, ZERO_EL
from .coeff import ONE, Scalar, q_pow, rational
from .forms import OneForm, ZERO_FORM, frame, ip_left, ip_right

COMPRESS_THRESHOLD = 64

_MINUS_ONE = rational(-1)


class Tensor:
    """A formal sum of simple k-fold tensors of one-forms, k in {2, 3, 4}."""

    __slots__ = ("k", "terms", "_coeffs")

    def __init__(self, k: int, terms=()):
        if k not in (2, 3, 4):
            raise ValueError("only 2-, 3- and 4-tensors are supported")
        self.k = k
        kept = []
        for term in terms:
            if len(term) != k:
                raise ValueError("term has %d legs, expected %d"
                                 % (len(term), k))
            if not any(leg.is_zero() for leg in term):
                kept.append(tuple(term))
        self.terms = kept
        self._coeffs = None

    # -- canonical coefficients ---------------------------------------------

    def coeffs(self):
        """Frame coefficient array as a dict multi-index -> Element,
        holding only the nonzero entries.

        Walks the legs once per term, sharing the partial pairing across
        all frame indices with a common prefix; this matters for the
        four-tensors of the curvature pipeline.
        """
        if self._coeffs is None:
            ws = frame()
            out = {}
            for term in self.terms:
                states = {}
                for i, w in enumerate(ws):
                    x = ip_right(w, term[0])
                    if not x.is_zero():
                        states[(i,)] = x
                for pos in range(1, self.k):
                    nxt = {}
                    for prefix, x in states.items():
                        moved = x * term[pos]
                        if moved.is_zero():
                            continue
                        for i, w in enumerate(ws):
                            y = ip_right(w, moved)
                            if not y.is_zero():
                                nxt[prefix + (i,)] = y
                    states = nxt
                for idx, x in states.items():
                    acc = out.get(idx)
                    out[idx] = x if acc is None else acc + x
            self._coeffs = {i: x for i, x in out.items() if not x.is_zero()}
        return self._coeffs

    def _reconstruction_terms(self):
        ws = frame()
        terms = []
        for idx, c in sorted(self.coeffs().items()):
            legs = [ws[i] for i in idx]
            legs[-1] = legs[-1] * c
            terms.append(tuple(legs))
        return terms

    def canonical(self) -> "Tensor":
        """Re-express through the frame; at most 3^k simple terms."""
        out = Tensor(self.k, self._reconstruction_terms())
        out._coeffs = self.coeffs()
        return out

    def is_zero(self) -> bool:
        return not self.coeffs()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.k == other.k and self.coeffs() == other.coeffs()

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.k != other.k:
            raise ValueError("cannot add tensors of different rank")
        out = Tensor(self.k, self.terms + other.terms)
        if len(out.terms) > COMPRESS_THRESHOLD:
            out = out.canonical()
        return out

    def __neg__(self):
        return self.scale(_MINUS_ONE)

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "Tensor":
        return Tensor(self.k,
                      [(term[0].scale(c),) + term[1:] for term in self.terms])

    def __mul__(self, other):
        """Right action of the algebra on the last leg, or scaling."""
        if isinstance(other, Element):
            return Tensor(self.k,
                          [term[:-1] + (term[-1] * other,)
                           for term in self.terms])
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        """Left action of the algebra on the first leg, or scaling."""
        if isinstance(other, Element):
            return Tensor(self.k,
                          [(other * term[0],) + term[1:]
                           for term in self.terms])
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    # -- involution ----------------------------------------------------------

    def dag(self) -> "Tensor":
        """Reverse the legs and dag each one."""
        return Tensor(self.k,
                      [tuple(leg.dag() for leg in reversed(term))
                       for term in self.terms])

    def __repr__(self):
        return "Tensor(k=%d, %d terms)" % (self.k, len(self.terms))


def tensor(*legs) -> Tensor:
    """A single simple tensor from its one-form legs."""
    return Tensor(len(legs), [legs])


def dag_T(t: Tensor) -> Tensor:
    return t.dag()


# ---------------------------------------------------------------------------
# inner products on tensor powers
# ---------------------------------------------------------------------------


def _ip_right_simple(sterm, tterm) -> Element:
    # <r1 (x) rest, t1 (x) rest'> = <rest, (<r1,t1>.t2) (x) ...>
    x = ip_right(sterm[0], tterm[0])
    for pos in range(1, len(sterm)):
        if x.is_zero():
            return ZERO_EL
        x = ip_right(sterm[pos], x * tterm[pos])
    return x


def _ip_left_simple(sterm, tterm) -> Element:
    # {}_B<rest (x) rk, rest' (x) tk> nests from the last leg:
    # {}_B<r1 (x) y, t1 (x) z> = {}_B<r1 . {}_B<y, z>, t1>
    x = ip_left(sterm[-1], tterm[-1])
    for pos in range(len(sterm) - 2, -1, -1):
        if x.is_zero():
            return ZERO_EL
        x = ip_left(sterm[pos] * x, tterm[pos])
    return x


def ip_T(s: Tensor, t: Tensor) -> Element:
    """Right inner product of two k-tensors, nested from the first leg."""
    if s.k != t.k:
        raise ValueError("rank mismatch in inner product")
    acc = ZERO_EL
    for sterm in s.terms:
        for tterm in t.terms:
            acc = acc + _ip_right_simple(sterm, tterm)
    return acc


def ip_left_T(s: Tensor, t: Tensor) -> Element:
    """Left inner product of two k-tensors, nested from the last leg."""
    if s.k != t.k:
        raise ValueError("rank mismatch in inner product")
    acc = ZERO_EL
    for sterm in s.terms:
        for tterm in t.terms:
            acc = acc + _ip_left_simple(sterm, tterm)
    return acc


def ip_T2(s: Tensor, t: Tensor) -> Element:
    if s.k != 2 or t.k != 2:
        raise ValueError("ip_T2 needs two-tensors")
    return ip_T(s, t)


def ip_left_T2(s: Tensor, t: Tensor) -> Element:
    if s.k != 2 or t.k != 2:
        raise ValueError("ip_left_T2 needs two-tensors")
    return ip_left_T(s, t)


def contract_left(r: Tensor, g: Tensor) -> Tensor:
    """{}_B<R, g> for a four-tensor R: pair the last two legs of R against
    the two-tensor g with the left inner product, leaving a two-tensor."""
    if r.k != 4 or g.k != 2:
        raise ValueError("contract_left pairs a four-tensor with a two-tensor")
    terms = []
    for a, b, c, d in r.terms:
        z = ip_left_T(Tensor(2, [(c, d)]), g)
        if not z.is_zero():
            terms.append((a, b * z))
    return Tensor(2, terms)


# ---------------------------------------------------------------------------
# multiplication map and diagonal matrices
# ---------------------------------------------------------------------------


class Diag:
    """A diagonal 2x2 matrix over the quantum group algebra."""

    __slots__ = ("top", "bot")

    def __init__(self, top: Element = ZERO_EL, bot: Element = ZERO_EL):
        self.top = top
        self.bot = bot

    def is_zero(self) -> bool:
        return self.top.is_zero() and self.bot.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Diag):
            return NotImplemented
        return self.top == other.top and self.bot == other.bot

    def __add__(self, other):
        return Diag(self.top + other.top, self.bot + other.bot)

    def __neg__(self):
        return Diag(-self.top, -self.bot)

    def __sub__(self, other):
        return Diag(self.top - other.top, self.bot - other.bot)

    def __mul__(self, other):
        if isinstance(other, Diag):
            return Diag(self.top * other.top, self.bot * other.bot)
        if isinstance(other, OneForm):
            return OneForm(self.top * other.plus, self.bot * other.minus)
        if isinstance(other, Element):
            return Diag(self.top * other, self.bot * other)
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, OneForm):
            return OneForm(other.plus * self.bot, other.minus * self.top)
        if isinstance(other, Element):
            return Diag(other * self.top, other * self.bot)
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "Diag":
        return Diag(self.top.scale(c), self.bot.scale(c))

    def star(self) -> "Diag":
        return Diag(self.top.star(), self.bot.star())

    def trace(self) -> Element:
        return self.top + self.bot

    def __repr__(self):
        return "Diag(top=%r, bot=%r)" % (self.top, self.bot)


def diag_scalars(top: Scalar, bot: Scalar) -> Diag:
    return Diag(ONE_EL.scale(top), ONE_EL.scale(bot))


def mul_map(t: Tensor) -> Diag:
    """The multiplication map m on two-tensors: the matrix product of the
    two legs, which is diagonal."""
    if t.k != 2:
        raise ValueError("mul_map is defined on two-tensors")
    top = ZERO_EL
    bot = ZERO_EL
    for rho, eta in t.terms:
        top = top + rho.plus * eta.minus
        bot = bot + rho.minus * eta.plus
    return Diag(top, bot)


# ---------------------------------------------------------------------------
# bidegree decomposition
# ---------------------------------------------------------------------------


_COMPONENT = {
    "+": lambda w: OneForm(plus=w.plus),
    "-": lambda w: OneForm(minus=w.minus),
}


def select(t: Tensor, pattern: str) -> Tensor:
    """Keep one matrix corner per leg: pattern is a string of '+'/'-'."""
    if len(pattern) != t.k:
        raise ValueError("pattern length must match tensor rank")
    pickers = [_COMPONENT[ch] for ch in pattern]
    return Tensor(t.k,
                  [tuple(pick(leg) for pick, leg in zip(pickers, term))
                   for term in t.terms])


class BidegreeParts:
    """The four corner components of a two-tensor; they sum back to it."""

    __slots__ = ("mm", "pp", "pm", "mp")

    def __init__(self, mm, pp, pm, mp):
        self.mm = mm
        self.pp = pp
        self.pm = pm
        self.mp = mp


def bidegree(t: Tensor) -> BidegreeParts:
    if t.k != 2:
        raise ValueError("bidegree splits two-tensors")
    return BidegreeParts(mm=select(t, "--"), pp=select(t, "++"),
                         pm=select(t, "+-"), mp=select(t, "-+"))


def map_legs(t: Tensor, pos: int, f2) -> Tensor:
    """Apply a bimodule map of two-tensors to legs (pos, pos+1) of a
    k-tensor, leaving the other legs alone."""
    if pos < 0 or pos + 1 >= t.k:
        raise ValueError("leg position out of range")
    terms = []
    for term in t.terms:
        image = f2(Tensor(2, [(term[pos], term[pos + 1])]))
        for pair in image.terms:
            terms.append(term[:pos] + pair + term[pos + 2:])
    out = Tensor(t.k, terms)
    if len(out.terms) > COMPRESS_THRESHOLD:
        out = out.canonical()
    return out


# ---------------------------------------------------------------------------
# the metric
# ---------------------------------------------------------------------------

_metric_cache = None


def metric() -> Tensor:
    """G = sum_j w_j (x) dag(w_j)."""
    global _metric_cache
    if _metric_cache is None:
        _metric_cache = Tensor(2, [(w, w.dag()) for w in frame()])
    return _metric_cache


def as_scalar(x: Element) -> Scalar:
    """The coefficient of a scalar multiple of 1; raises otherwise."""
    if x.is_zero():
        return Scalar.from_rational(0)
    from .algebra import MONO_ID
    if set(x.terms) != {MONO_ID}:
        raise ValueError("element is not a scalar: %r" % (x,))
    return x.terms[MONO_ID]


def e_beta() -> Scalar:
    """e^beta = <G, G> = q^2 + q^{-2}."""
    return as_scalar(ip_T2(metric(), metric()))


class ScaledTensor:
    """A tensor multiplied by the square root of an exact scalar.

    Stands in for elements like Z = e^{-beta/2} G whose scale lives outside
    the coefficient field; only pairings in which the roots combine to the
    stored square are allowed.
    """

    __slots__ = ("base", "scale_sq")

    def __init__(self, base: Tensor, scale_sq: Scalar):
        self.base = base
        self.scale_sq = scale_sq

    def ip_with(self, other: "ScaledTensor") -> Element:
        if self.scale_sq != other.scale_sq:
            raise ValueError("scales do not pair to an exact square")
        return ip_T(self.base, other.base).scale(self.scale_sq)

    def mul_map(self) -> "ScaledDiag":
        return ScaledDiag(mul_map(self.base), self.scale_sq)

    def __repr__(self):
        return "ScaledTensor(base=%r, scale_sq=%r)" % (self.base, self.scale_sq)


class ScaledDiag:
    """A diagonal matrix times the square root of an exact scalar."""

    __slots__ = ("base", "scale_sq")

    def __init__(self, base: Diag, scale_sq: Scalar):
        self.base = base
        self.scale_sq = scale_sq

    def __repr__(self):
        return "ScaledDiag(base=%r, scale_sq=%r)" % (self.base, self.scale_sq)


def metric_data():
    """(e^beta, G, Z, z): the scalar <G,G>, the metric, its normalisation
    Z = e^{-beta/2} G, and z = m(Z)."""
    eb = e_beta()
    g = metric()
    z_tensor = ScaledTensor(g, eb.inverse())
    return eb, g, z_tensor, z_tensor.mul_map()


# ---------------------------------------------------------------------------
# the metric's two halves (building blocks for the braiding and the volume
# form): G = q . t_pm + q^{-1} . t_mp
# ---------------------------------------------------------------------------

_t_pm_cache = None
_t_mp_cache = None


def t_pm() -> Tensor:
    """sum_j t(2-j,-1)* E12 (x) t(2-j,-1) E21."""
    global _t_pm_cache
    if _t_pm_cache is None:
        from .algebra import spin_one
        terms = []
        for m in (1, 0, -1):
            el = spin_one(m, -1)
            terms.append((OneForm(plus=el.star()), OneForm(minus=el)))
        _t_pm_cache = Tensor(2, terms)
    return _t_pm_cache


def t_mp() -> Tensor:
    """sum_j t(2-j,1)* E21 (x) t(2-j,1) E12."""
    global _t_mp_cache
    if _t_mp_cache is None:
        from .algebra import spin_one
        terms = []
        for m in (1, 0, -1):
            el = spin_one(m, 1)
            terms.append((OneForm(minus=el.star()), OneForm(plus=el)))
        _t_mp_cache = Tensor(2, terms)
    return _t_mp_cache


# ---------------------------------------------------------------------------
# JSON export of canonical coefficients (for golden tests)
# ---------------------------------------------------------------------------


def coeff_json(t: Tensor):
    """Canonical coefficient array as a JSON-ready dict; entries render
    through the parseable Element repr."""
    return {
        "rank": t.k,
        "coeff": {",".join(str(i + 1) for i in idx): repr(c)
                  for idx, c in sorted(t.coeffs().items())},
    }
