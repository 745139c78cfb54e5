"""One-forms over the quantum sphere as off-diagonal matrices.

A one-form is represented by the matrix

    [[0,     plus ],
     [minus, 0    ]]

with entries in O(SU_q(2)), acting on the spinor bundle by left
multiplication.  Differentials of functions on the sphere are commutators
with the Dirac operator,

    dee(x) = [D, x] = [[0, q^{-1/2} del_e(x)], [q^{1/2} del_f(x), 0]],

and elements of the genuine one-form bimodule have plus part of circle
degree +2 and minus part of degree -2.  The adjoint swaps the corners,
dag(w) = (minus*, plus*).

The bimodule carries two inner products with values in the sphere algebra:

    ip_right(x, y) = q minus_x* minus_y + q^{-1} plus_x* plus_y
    ip_left(x, y)  = q plus_x plus_y*  + q^{-1} minus_x minus_y*

(right-linear and left-linear respectively), normalised so that the
three-element frame built from the vector corepresentation satisfies

    rho = sum_j frame()[j] * ip_right(frame()[j], rho)

for every off-diagonal matrix rho.
"""

from __future__ import annotations

from .algebra import Element, ONE_EL, ZERO_EL, del_e, del_f, spin_one
from .coeff import ROOT_TWO_Q, Scalar, q_pow


class OneForm:
    """An off-diagonal 2x2 matrix over the quantum group algebra."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus: Element = ZERO_EL, minus: Element = ZERO_EL):
        self.plus = plus
        self.minus = minus

    def is_zero(self) -> bool:
        return self.plus.is_zero() and self.minus.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __add__(self, other):
        return OneForm(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self):
        return OneForm(-self.plus, -self.minus)

    def __sub__(self, other):
        return OneForm(self.plus - other.plus, self.minus - other.minus)

    def __mul__(self, other):
        """Right action of the algebra, or scaling by a coefficient."""
        if isinstance(other, Element):
            return OneForm(self.plus * other, self.minus * other)
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        """Left action of the algebra."""
        if isinstance(other, Element):
            return OneForm(other * self.plus, other * self.minus)
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "OneForm":
        return OneForm(self.plus.scale(c), self.minus.scale(c))

    def dag(self) -> "OneForm":
        return OneForm(self.minus.star(), self.plus.star())

    def is_proper(self) -> bool:
        """True when the corner degrees are those of a genuine one-form."""
        return self.plus.degrees() <= {2} and self.minus.degrees() <= {-2}

    def __repr__(self):
        return "OneForm(plus=%r, minus=%r)" % (self.plus, self.minus)


ZERO_FORM = OneForm()
E12 = OneForm(plus=ONE_EL)
E21 = OneForm(minus=ONE_EL)


def dee(x: Element) -> OneForm:
    """The Dirac commutator [D, x] as a one-form.

    Only defined on the sphere algebra, i.e. on elements of circle degree 0;
    anything else raises.
    """
    if x.degrees() - {0}:
        raise ValueError("dee needs a degree-0 element, got degrees %s"
                         % sorted(x.degrees()))
    return OneForm(del_e(x).scale_s(-1), del_f(x).scale_s(1))


def ip_right(x: OneForm, y: OneForm) -> Element:
    """Right inner product <x, y>: conjugate-linear in x, B-linear in y."""
    return (x.minus.star() * y.minus).scale(q_pow(1)) + \
        (x.plus.star() * y.plus).scale(q_pow(-1))


def ip_left(x: OneForm, y: OneForm) -> Element:
    """Left inner product <x, y>: B-linear in x, conjugate-linear in y."""
    return (x.plus * y.plus.star()).scale(q_pow(1)) + \
        (x.minus * y.minus.star()).scale(q_pow(-1))


_frame = None


def frame():
    """The three-element right-module frame built from the vector
    corepresentation: w_j = q^{j-2} [2]_q^{-1/2} dee(t(j-2, 0))."""
    global _frame
    if _frame is None:
        rinv = ROOT_TWO_Q.inverse()
        _frame = tuple(
            dee(spin_one(j - 2, 0)).scale(q_pow(j - 2) * rinv)
            for j in (1, 2, 3))
    return _frame


def frame_expand_right(rho: OneForm) -> OneForm:
    """sum_j w_j <w_j, rho>; equals rho on every off-diagonal matrix."""
    out = ZERO_FORM
    for w in frame():
        out = out + w * ip_right(w, rho)
    return out


def frame_expand_left(rho: OneForm) -> OneForm:
    """sum_j <rho, w_j^dag> w_j^dag; equals rho on every off-diagonal
    matrix."""
    out = ZERO_FORM
    for w in frame():
        wd = w.dag()
        out = out + ip_left(rho, wd) * wd
    return out


def frame_check(rho: OneForm) -> bool:
    """Both frame identities at once: rho = sum_j w_j <w_j, rho> and
    rho = sum_j <rho, w_j^dag> w_j^dag."""
    return frame_expand_right(rho) == rho and frame_expand_left(rho) == rho


def g_bilinear(w: OneForm, rho: OneForm) -> Element:
    """The bilinear pairing induced by the metric two-tensor,
    g(w (x) rho) = -<dag(w), rho>."""
    return -ip_right(w.dag(), rho)
