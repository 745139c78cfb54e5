"""Numeric spectra of D, D^2 and the laplacian on total-spin blocks.

The chiral summands are filtered by monomial length: the degree +1
normal-form monomials of length at most 2l span the first blocks of S+,
and the orthogonal complement of the length 2l-2 subspace inside the
length 2l subspace (with respect to the Haar inner product
<x, y> = h({}_B<x, y>)) is the total-spin-l block.  Blocks are therefore
generated by products of the algebra generators, and each is closed under
D, D^2 and the laplacian; no corepresentation theory enters, the closure
shows up numerically as vanishing off-block matrix entries and is
asserted.

For a chosen numeric 0 < q0 <= 1 the Gram matrix of the monomial spinors
is assembled from exact Haar values evaluated at q0 and orthonormalised in
filtration order by a Cholesky factor, so the change of basis is
triangular and respects the filtration.  Operator matrices are computed
symbolically (the derivations never raise monomial length), evaluated, and
conjugated into the orthonormal basis.

Eigenvalues of D on the block of total spin l come out as +-[l+1/2]_{q0},
each with multiplicity 2l+1; this value is derived from the action of the
derivations, not quoted.  The laplacian spectrum is nonnegative, which is
the numeric face of its positivity.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .algebra import Element, mono_length, pbw_monomials
from .haar import haar
from .spinor import Spinor, dirac, ip_spin_left, laplacian

_OPERATORS = ("D", "D2", "lap")

_COUPLING_TOL = 1e-9


def _op_apply(name: str, psi: Spinor) -> Spinor:
    if name == "D":
        return dirac(psi)
    if name == "D2":
        return dirac(dirac(psi))
    if name == "lap":
        return laplacian(psi)
    raise ValueError("unknown operator %r; pick one of %r" % (name, _OPERATORS))


def _half_integer(l) -> Fraction:
    fl = Fraction(l).limit_denominator(4)
    if fl != Fraction(l) or fl.denominator != 2 or fl < 0:
        raise ValueError("total spin must be a positive half odd integer: %r" % (l,))
    return fl


def qnum_float(two_x: int, q0: float) -> float:
    """[x]_{q0} for doubled argument, matching the symbolic convention."""
    if q0 == 1.0:
        return two_x / 2.0
    return (q0 ** (two_x / 2.0) - q0 ** (-two_x / 2.0)) / (q0 - 1.0 / q0)


class SpinBlock:
    """One total-spin block of the spinor space at a numeric parameter.

    Holds the monomial spinor basis of the full filtered space up to
    length 2l, the Gram data, and the orthonormal-basis matrix of the
    chosen operator restricted to the top block.
    """

    def __init__(self, l, q0: float, operator: str = "D"):
        self.l = _half_integer(l)
        if not 0.0 < q0 <= 1.0:
            raise ValueError("q0 must lie in (0, 1]: %r" % (q0,))
        if self.l > Fraction(11, 2):
            raise ValueError("blocks above l = 11/2 are out of desk scale")
        self.q0 = q0
        self.operator = operator
        if operator not in _OPERATORS:
            raise ValueError("unknown operator %r; pick one of %r"
                             % (operator, _OPERATORS))
        self._build()

    def _build(self):
        n = int(2 * self.l)
        plus = [m for m in pbw_monomials(n, 1)]
        minus = [m for m in pbw_monomials(n, -1)]
        plus.sort(key=mono_length)
        minus.sort(key=mono_length)

        basis = [Spinor(plus=Element.from_mono(m)) for m in plus] \
            + [Spinor(minus=Element.from_mono(m)) for m in minus]
        self.basis = basis
        m_count = len(basis)

        # top-block positions: monomials of length exactly 2l, per sector
        top = [i for i, mono in enumerate(plus) if mono_length(mono) == n]
        top += [len(plus) + i for i, mono in enumerate(minus)
                if mono_length(mono) == n]
        if len(top) != 2 * (n + 1):
            raise ArithmeticError(
                "block dimension %d does not match 2(2l+1) = %d"
                % (len(top), 2 * (n + 1)))
        self.block_index = top

        gram = np.empty((m_count, m_count))
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                gram[i, j] = haar(ip_spin_left(x, y)).eval_float(self.q0)
        self.gram = gram
        try:
            chol = np.linalg.cholesky(gram)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError(
                "Gram matrix is singular at q0=%r, l=%s" % (self.q0, self.l)
            ) from exc

        index_p = {mono: i for i, mono in enumerate(plus)}
        index_m = {mono: len(plus) + i for i, mono in enumerate(minus)}
        coords = np.zeros((m_count, m_count))
        for j, psi in enumerate(basis):
            out = _op_apply(self.operator, psi)
            for mono, c in out.plus.terms.items():
                coords[index_p[mono], j] = c.eval_float(self.q0)
            for mono, c in out.minus.terms.items():
                coords[index_m[mono], j] = c.eval_float(self.q0)

        # triangular change to the orthonormal basis: columns of inv(chol)^H
        # stay inside the filtration, so the top block is the orthocomplement
        w = np.linalg.inv(chol).conj().T
        on = np.linalg.inv(w) @ coords @ w

        outside = [i for i in range(m_count) if i not in top]
        if outside:
            coupling = np.abs(on[np.ix_(outside, top)]).max()
            if coupling > _COUPLING_TOL:
                raise ArithmeticError(
                    "operator %s does not preserve the l=%s block "
                    "(coupling %.2e)" % (self.operator, self.l, coupling))
        self.op_matrix = on[np.ix_(top, top)]

    def eigenvalues(self):
        vals = np.linalg.eigvals(self.op_matrix)
        if np.abs(vals.imag).max() > 1e-8:
            raise ArithmeticError("block spectrum is not real")
        return sorted(float(v) for v in vals.real)


def spectrum(l_max, q0: float, operator: str = "D"):
    """Per-block eigenvalue lists for l = 1/2, 3/2, ..., l_max.

    Returns a list of dicts {l, q, operator, eigenvalues}, ready for JSON.
    """
    lm = _half_integer(l_max)
    out = []
    l = Fraction(1, 2)
    while l <= lm:
        block = SpinBlock(l, q0, operator)
        out.append({
            "l": float(l),
            "q": q0,
            "operator": operator,
            "eigenvalues": block.eigenvalues(),
        })
        l += 1
    return out


def spectra_json(results, indent: int = 2) -> str:
    return json.dumps(results, indent=indent)


def spectra_table(results) -> str:
    """Plain-text table, one block per row."""
    lines = ["%-5s %-6s %-4s %s" % ("l", "q", "op", "eigenvalues")]
    for row in results:
        vals = ", ".join("%.6f" % v for v in row["eigenvalues"])
        lines.append("%-5s %-6s %-4s [%s]"
                     % (row["l"], row["q"], row["operator"], vals))
    return "\n".join(lines)
