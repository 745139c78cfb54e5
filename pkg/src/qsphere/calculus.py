"""Two-form structure: junk projection, volume form, exterior derivative,
braiding.

All two-tensors split as junk plus a rank-one piece spanned by the volume
form C.  C is constructed, following Wagner, from the modular-twisted Chern
character of the charge-one projector

    ch = -2 sum q^{-2 k_0} (p_{k_0 k_1} - 1/2 delta) dee(p_{k_1 k_2}) (x) dee(p_{k_2 k_0}),

then made orthogonal to the metric: C = ch - e^{-beta} G <G, ch>.  The
squared length alpha = <C, C> = 4 q^{-2} / (q^2 + q^{-2}) is validated at
construction time.  The projection onto junk is the rank-one complement

    Psi(T) = T - alpha^{-1} C <C, T>,

and an independent realisation (corner selectors plus the Z-line) is
provided for cross-checking.  The exterior derivative of a one-form a.dee(b)
is the closed form (q/2) C (q^{-1} del_e(a) del_f(b) - q del_f(a) del_e(b)),
certified elsewhere against (1 - Psi)(dee(a) (x) dee(b)).

The braiding sigma scales the (-,-) and (+,+) corners by q^2 and q^{-2} and
swaps the mixed corners through frame insertions; it fixes G, acts affinely
on C, and intertwines the two Grassmann connections.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Element, ONE_EL, del_e, del_f, spin_half, spin_one
from .coeff import Scalar, q_pow, rational
from .forms import OneForm, dee
from .tensors import (
    ScaledTensor, Tensor, as_scalar, bidegree, e_beta, ip_T2, metric,
    select, tensor,
)

_HALF = rational(Fraction(1, 2))


def projector_entry(k: int, h: int) -> Element:
    """Entry (k, h) of the charge-one projector: column (d, b) times its
    adjoint row."""
    col = (spin_half(1, 1), spin_half(-1, 1))
    return col[k] * col[h].star()


_chern_cache = None


def chern2() -> Tensor:
    """The represented twisted Chern character of the charge-one projector,
    as a two-tensor."""
    global _chern_cache
    if _chern_cache is None:
        half = _HALF
        acc = Tensor(2, [])
        for k0 in (0, 1):
            weight = q_pow(-2 * k0) * rational(-2)
            for k1 in (0, 1):
                front = projector_entry(k0, k1)
                if k0 == k1:
                    front = front - ONE_EL.scale(half)
                for k2 in (0, 1):
                    leg1 = front * dee(projector_entry(k1, k2))
                    leg2 = dee(projector_entry(k2, k0))
                    acc = acc + tensor(leg1.scale(weight), leg2)
        _chern_cache = acc.canonical()
    return _chern_cache


class JunkData:
    """The volume form C, its squared length alpha, the metric G and its
    normalisation Z, together with the junk projection Psi."""

    __slots__ = ("C", "alpha", "G", "Z", "_alpha_inv", "_eb_inv")

    def __init__(self):
        g = metric()
        eb = e_beta()
        ch = chern2()
        pairing = ip_T2(g, ch)
        c = (ch - (g * pairing).scale(eb.inverse())).canonical()
        alpha = as_scalar(ip_T2(c, c))
        expected = rational(4) * q_pow(-2) * eb.inverse()
        if alpha != expected:
            raise ArithmeticError(
                "volume form has the wrong length: <C,C> = %r" % (alpha,))
        if not ip_T2(c, g).is_zero():
            raise ArithmeticError("volume form is not orthogonal to the metric")
        self.C = c
        self.alpha = alpha
        self.G = g
        self.Z = ScaledTensor(g, eb.inverse())
        self._alpha_inv = alpha.inverse()
        self._eb_inv = eb.inverse()

    def psi(self, t: Tensor) -> Tensor:
        """Projection onto the junk submodule: T - alpha^{-1} C <C, T>."""
        return t - (self.C * ip_T2(self.C, t)).scale(self._alpha_inv)

    def complement(self, t: Tensor) -> Tensor:
        """(1 - Psi)(T) = alpha^{-1} C <C, T>, the genuine two-form part."""
        return (self.C * ip_T2(self.C, t)).scale(self._alpha_inv)


_junk_cache = None


def volume_form() -> JunkData:
    global _junk_cache
    if _junk_cache is None:
        _junk_cache = JunkData()
    return _junk_cache


def psi_decomposed(t: Tensor) -> Tensor:
    """The junk projection as corner selectors plus the Z-line,
    P_X + P_Y + |Z><Z|; must agree with JunkData.psi everywhere."""
    g = metric()
    z_part = (g * ip_T2(g, t)).scale(e_beta().inverse())
    return select(t, "--") + select(t, "++") + z_part


# ---------------------------------------------------------------------------
# exterior derivative
# ---------------------------------------------------------------------------


def ext_d(a: Element, b: Element) -> Tensor:
    """d(a[D,b]) as a two-tensor: (q/2) C (q^{-1} del_e(a) del_f(b)
    - q del_f(a) del_e(b))."""
    z = (del_e(a) * del_f(b)).scale(q_pow(-1)) - \
        (del_f(a) * del_e(b)).scale(q_pow(1))
    return (volume_form().C * z).scale(q_pow(1) * _HALF)


def ext_d_via_junk(a: Element, b: Element) -> Tensor:
    """The definition route for the same derivative:
    (1 - Psi)(dee(a) (x) dee(b))."""
    return volume_form().complement(tensor(dee(a), dee(b)))


# ---------------------------------------------------------------------------
# braiding
# ---------------------------------------------------------------------------


def _check_proper(t: Tensor):
    for term in t.terms:
        for leg in term:
            if not leg.is_proper():
                raise ValueError("braiding needs genuine one-form legs")


def _swap_terms(part: Tensor, js: tuple, make):
    terms = []
    for rho, eta in part.terms:
        for u in js:
            terms.append(make(u, rho, eta))
    return Tensor(2, terms)


def sigma(t: Tensor) -> Tensor:
    """The braiding on two-tensors: q^2 on the (-,-) corner, q^{-2} on the
    (+,+) corner, and frame-mediated swaps of the mixed corners."""
    _check_proper(t)
    parts = bidegree(t)
    ups = tuple(spin_one(m, 1) for m in (1, 0, -1))
    downs = tuple(spin_one(m, -1) for m in (1, 0, -1))
    swapped_pm = _swap_terms(
        parts.pm, ups,
        lambda u, rho, eta: (OneForm(minus=u.star()),
                             OneForm(plus=u * (rho.plus * eta.minus))))
    swapped_mp = _swap_terms(
        parts.mp, downs,
        lambda v, rho, eta: (OneForm(plus=v.star()),
                             OneForm(minus=v * (rho.minus * eta.plus))))
    out = parts.mm.scale(q_pow(2)) + parts.pp.scale(q_pow(-2)) + \
        swapped_pm.scale(q_pow(-2)) + swapped_mp.scale(q_pow(2))
    return out.canonical() if len(out.terms) > 27 else out


def sigma_inv(t: Tensor) -> Tensor:
    """Inverse braiding: q^{-2} on (-,-), q^2 on (+,+), and the same swaps
    on the mixed corners (the braiding squares to the identity there)."""
    _check_proper(t)
    parts = bidegree(t)
    ups = tuple(spin_one(m, 1) for m in (1, 0, -1))
    downs = tuple(spin_one(m, -1) for m in (1, 0, -1))
    swapped_pm = _swap_terms(
        parts.pm, ups,
        lambda u, rho, eta: (OneForm(minus=u.star()),
                             OneForm(plus=u * (rho.plus * eta.minus))))
    swapped_mp = _swap_terms(
        parts.mp, downs,
        lambda v, rho, eta: (OneForm(plus=v.star()),
                             OneForm(minus=v * (rho.minus * eta.plus))))
    out = parts.mm.scale(q_pow(-2)) + parts.pp.scale(q_pow(2)) + \
        swapped_pm.scale(q_pow(-2)) + swapped_mp.scale(q_pow(2))
    return out.canonical() if len(out.terms) > 27 else out
