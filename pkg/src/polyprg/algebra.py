"""Resultants, content, the s_a / r_b substitutions and Hypothesis (H)."""

from __future__ import annotations

from typing import Sequence

from .errors import (
    ArityMismatch,
    BothConstant,
    DescriptorMismatch,
    DivisionByZero,
    NonMultilinearSubstituent,
    ZeroPolynomial,
)
from .fields import Field, FieldElem
from .poly import MultiPoly, UniPoly, grlex_key


# --- coefficient rings ------------------------------------------------------

class FieldRing:
    """A field viewed as a ring for fraction-free elimination."""

    def __init__(self, field: Field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def exact_div(self, a, b):
        return self.field.div(a, b)

    def is_zero(self, a):
        return self.field.is_zero(a)


class PolyRing:
    """The ring F[t] with elements as :class:`UniPoly`."""

    def __init__(self, field: Field):
        self.field = field
        self.zero = UniPoly(field, [])
        self.one = UniPoly(field, [field.one])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if not r.is_zero():
            raise ArithmeticError("inexact division in F[t]")
        return q

    def is_zero(self, a):
        return a.is_zero()


def sylvester(f_coeffs: Sequence, g_coeffs: Sequence, zero=0) -> list[list]:
    """Sylvester matrix laid out column-wise.

    Columns 0..d2-1 hold the coefficients a_0..a_{d1} of f shifted down by the
    column index; columns d2..d1+d2-1 hold b_0..b_{d2} of g likewise.
    Coefficient lists are ascending and must have nonzero last entries.
    """
    d1, d2 = len(f_coeffs) - 1, len(g_coeffs) - 1
    if d1 < 0 or d2 < 0:
        raise ZeroPolynomial("Sylvester matrix of a zero polynomial")
    if d1 + d2 < 1:
        raise BothConstant("both polynomials are constant")
    size = d1 + d2
    M = [[zero] * size for _ in range(size)]
    for j in range(d2):
        for i, a in enumerate(f_coeffs):
            M[i + j][j] = a
    for j in range(d1):
        for i, b in enumerate(g_coeffs):
            M[i + j][d2 + j] = b
    return M


def bareiss_det(M: list[list], ring) -> object:
    """Determinant by fraction-free Bareiss elimination over an integral domain."""
    n = len(M)
    if n == 0:
        return ring.one
    A = [list(row) for row in M]
    sign = False
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(A[k][k]):
            for r in range(k + 1, n):
                if not ring.is_zero(A[r][k]):
                    A[k], A[r] = A[r], A[k]
                    sign = not sign
                    break
            else:
                return ring.zero
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(A[i][j], pivot), ring.mul(A[i][k], A[k][j]))
                A[i][j] = ring.exact_div(num, prev)
            A[i][k] = ring.zero
        prev = pivot
    det = A[n - 1][n - 1]
    return ring.neg(det) if sign else det


def resultant(f: UniPoly, g: UniPoly) -> FieldElem:
    """Res(f, g) = det Syl(f, g) over the coefficient field."""
    if f.field != g.field:
        raise DescriptorMismatch(f"{f.field} vs {g.field}")
    F = f.field
    if f.is_zero() or g.is_zero():
        return FieldElem(F, F.zero)
    M = sylvester(f.coeffs, g.coeffs, F.zero)
    return FieldElem(F, bareiss_det(M, FieldRing(F)))


def resultant_over_poly_ring(f_coeffs: Sequence[UniPoly], g_coeffs: Sequence[UniPoly]) -> UniPoly:
    """Resultant of two polynomials whose coefficients lie in F[t]."""
    f_coeffs = _strip(list(f_coeffs))
    g_coeffs = _strip(list(g_coeffs))
    field = (f_coeffs or g_coeffs)[0].field
    ring = PolyRing(field)
    if not f_coeffs or not g_coeffs:
        return ring.zero
    M = sylvester(f_coeffs, g_coeffs, ring.zero)
    return bareiss_det(M, ring)


def _strip(cs):
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


# --- multivariate gcd and content -----------------------------------------

def normalize_monic(f: MultiPoly) -> MultiPoly:
    """Scale so the grlex-leading coefficient is 1."""
    if f.is_zero():
        return f
    _, c = f.leading()
    return f.scale(f.field.inv(c))


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """a / b, assuming b divides a (multivariate division by leading terms)."""
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    F = a.field
    lead_e, lead_c = b.leading()
    inv = F.inv(lead_c)
    quotient = {}
    rem = a
    while not rem.is_zero():
        e, c = rem.leading()
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if any(s < 0 for s in shift):
            raise ArithmeticError("polynomial is not divisible")
        q = F.mul(c, inv)
        quotient[shift] = q
        rem = rem - MultiPoly._raw(F, a.nvars, {shift: q}) * b
    return MultiPoly._raw(F, a.nvars, quotient)


def _prem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    """Pseudo-remainder of a by b as polynomials in variable v."""
    db = b.deg_in(v)
    lc_b = b.coefficients_in(v)[db]
    r = a
    while not r.is_zero() and r.deg_in(v) >= db:
        dr = r.deg_in(v)
        lc_r = r.coefficients_in(v)[dr]
        r = r * lc_b - lc_r * MultiPoly.var(a.field, a.nvars, v, dr - db) * b
    return r


def mpoly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized monic under graded-lex."""
    if a.is_zero():
        return normalize_monic(b)
    if b.is_zero():
        return normalize_monic(a)
    used = sorted(set(a.variables()) | set(b.variables()))
    one = MultiPoly.constant(a.field, a.nvars, a.field.one)
    if not used:
        return one
    v = used[-1]
    ca, cb = content(a, v), content(b, v)
    c = mpoly_gcd(ca, cb)
    pa, pb = exact_divide(a, ca), exact_divide(b, cb)
    if pa.deg_in(v) < pb.deg_in(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _prem(pa, pb, v)
        pa, pb = pb, (r if r.is_zero() else exact_divide(r, content(r, v)))
    g = exact_divide(pa, content(pa, v))
    return normalize_monic(c * g)


def content(f: MultiPoly, main_var: int) -> MultiPoly:
    """gcd of the coefficients of f viewed as a polynomial in ``main_var``."""
    if f.is_zero():
        raise ZeroPolynomial("content of the zero polynomial")
    g = MultiPoly.zero(f.field, f.nvars)
    for coeff in f.coefficients_in(main_var).values():
        g = mpoly_gcd(g, coeff)
        if g.is_constant():
            break
    return normalize_monic(g)


def is_primitive(f: MultiPoly, main_var: int) -> bool:
    return content(f, main_var).is_constant()


# --- substitutions ------------------------------------------------------------

def substitute_sa(f: MultiPoly, a: Sequence) -> MultiPoly:
    """s_a: x_i -> x_i + a_i * y with y the last variable."""
    n = f.nvars - 1
    if len(a) != n:
        raise ArityMismatch(f"shift vector of length {len(a)} for {n} x-variables")
    F = f.field
    gens = MultiPoly.gens(F, f.nvars)
    y = gens[-1]
    subs = [gens[i] + y.scale(F.coerce(a[i])) for i in range(n)] + [y]
    return f.compose(subs)


def substitute_rb(f: MultiPoly, b: Sequence[MultiPoly]) -> MultiPoly:
    """r_b: f(b_1(w) x, ..., b_n(w) x, y) in variables (x, y, w_1..w_l)."""
    n = f.nvars - 1
    if len(b) != n:
        raise ArityMismatch(f"{len(b)} substituents for {n} x-variables")
    if not b:
        raise ArityMismatch("need at least one substituent")
    ell = b[0].nvars
    for bi in b:
        if bi.nvars != ell:
            raise ArityMismatch("substituents in different numbers of variables")
        if not bi.is_multilinear():
            raise NonMultilinearSubstituent(f"{bi} is not multilinear")
    F = f.field
    m = 2 + ell
    x = MultiPoly.var(F, m, 0)
    y = MultiPoly.var(F, m, 1)
    lifted = [bi.embed(m, [2 + j for j in range(ell)]) for bi in b]
    return f.compose([bi * x for bi in lifted] + [y])


def restrict(f: MultiPoly, a: Sequence, b: Sequence[MultiPoly]) -> MultiPoly:
    """F = f(b_1(w) x + a_1 y, ..., b_n(w) x + a_n y, y) = r_b(s_a(f))."""
    return substitute_rb(substitute_sa(f, a), b)


# --- Hypothesis (H) -----------------------------------------------------------

def check_hypothesis_H(f: MultiPoly, t_index: int | None = None) -> bool:
    """Hypothesis (H): f monic in y with deg_y f = deg f, and
    Res(f(0, y), df/dy(0, y)) != 0.

    y is the last variable other than ``t_index``.  When ``t_index`` is
    given, f is read as an element of F[t][x, y]: degrees ignore t and the
    resultant is taken over F[t].
    """
    if f.is_constant():
        raise ValueError("Hypothesis (H) is defined for non-constant polynomials")
    skip = () if t_index is None else (t_index,)
    others = [i for i in range(f.nvars) if i not in skip]
    y = others[-1]
    xs = others[:-1]
    D = f.degree(skip)
    if D < 1 or f.deg_in(y) != D:
        return False
    top = f.coefficients_in(y)[D]
    if top != MultiPoly.constant(f.field, f.nvars, f.field.one):
        return False
    f0 = f
    for i in xs:
        f0 = f0.specialize(i, f.field.zero)
    df0 = f0.derivative(y)
    if t_index is None:
        res = resultant(f0.to_unipoly(y), df0.to_unipoly(y))
        return not res.is_zero()
    fc = _ring_coeffs(f0, y, t_index)
    gc = _ring_coeffs(df0, y, t_index)
    if not gc:
        return False
    return not resultant_over_poly_ring(fc, gc).is_zero()


def _ring_coeffs(f: MultiPoly, y: int, t: int) -> list[UniPoly]:
    parts = f.coefficients_in(y)
    if not parts:
        return []
    top = max(parts)
    return [parts[j].to_unipoly(t) if j in parts else UniPoly(f.field, []) for j in range(top + 1)]


__all__ = [
    "FieldRing",
    "PolyRing",
    "sylvester",
    "bareiss_det",
    "resultant",
    "resultant_over_poly_ring",
    "normalize_monic",
    "exact_divide",
    "mpoly_gcd",
    "content",
    "is_primitive",
    "substitute_sa",
    "substitute_rb",
    "restrict",
    "check_hypothesis_H",
    "grlex_key",
]
