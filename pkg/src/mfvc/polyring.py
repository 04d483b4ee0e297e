"""Exact bivariate polynomial arithmetic over Q, Groebner normal forms, and
enumeration of graded pieces of quotient rings.

Monomials are plain (u, v) exponent tuples, polynomials are dicts mapping
monomials to nonzero Fractions.  The monomial order is degree-reverse-
lexicographic with x > y, fixed globally; for two variables this is the
order on the keys (u+v, -v).

Dimensions over Q equal dimensions over C for everything in this package,
since all ideals and differentials have integer coefficients.
"""

from fractions import Fraction

from .grading import GradingGroup, GroupElement


# ---------------------------------------------------------------------------
# monomial helpers


def mono_key(m):
    """Sort key realizing degrevlex with x > y."""
    return (m[0] + m[1], -m[1])


def mono_mul(a, b):
    return (a[0] + b[0], a[1] + b[1])


def mono_divides(a, b):
    return a[0] <= b[0] and a[1] <= b[1]


def mono_div(a, b):
    return (a[0] - b[0], a[1] - b[1])


def mono_lcm(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]))


def mono_str(m):
    u, v = m
    if u == 0 and v == 0:
        return "1"
    parts = []
    if u:
        parts.append("x" if u == 1 else f"x^{u}")
    if v:
        parts.append("y" if v == 1 else f"y^{v}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Bivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def monomial(cls, u, v, coeff=1):
        return cls({(u, v): Fraction(coeff)})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): Fraction(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = Poly.__new__(Poly)
        out.terms = res
        return out

    def __sub__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        out = Poly.__new__(Poly)
        out.terms = res
        return out

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            out = Poly.__new__(Poly)
            out.terms = {m: c * other for m, c in self.terms.items()}
            return out
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1])
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    del res[m]
        out = Poly.__new__(Poly)
        out.terms = res
        return out

    __rmul__ = __mul__

    def mul_mono(self, mono, coeff=1):
        out = Poly.__new__(Poly)
        out.terms = {(m[0] + mono[0], m[1] + mono[1]): c * coeff for m, c in self.terms.items()}
        return out

    def lead(self):
        """(monomial, coeff) of the leading term."""
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead()
        return self * (Fraction(1) / c)

    def degree_in(self, group):
        """The common L-degree of all terms, or None if inhomogeneous."""
        deg = None
        for (u, v) in self.terms:
            d = group.monomial_degree(u, v)
            if deg is None:
                deg = d
            elif deg != d:
                return None
        return deg

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=mono_key, reverse=True):
            c = self.terms[m]
            s = mono_str(m)
            if c == 1 and m != (0, 0):
                parts.append(s)
            elif c == -1 and m != (0, 0):
                parts.append(f"-{s}")
            elif m == (0, 0):
                parts.append(str(c))
            else:
                parts.append(f"{c}*{s}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def poly_x(n=1):
    return Poly.monomial(n, 0)


def poly_y(n=1):
    return Poly.monomial(0, n)


def family_w(family, p, q):
    """The invertible polynomial w for the family."""
    if family == "loop":
        return Poly({(p, 1): 1, (1, q): 1})
    if family == "chain":
        return Poly({(p, 1): 1, (0, q): 1})
    if family == "bp":
        return Poly({(p, 0): 1, (0, q): 1})
    raise ValueError(family)


def family_factor(family, p, q):
    """The extra factor f with w = xyf (loop), w = yf (chain); for bp there
    is no such factor and None is returned."""
    if family == "loop":
        return Poly({(p - 1, 0): 1, (0, q - 1): 1})
    if family == "chain":
        return Poly({(p, 0): 1, (0, q - 1): 1})
    if family == "bp":
        return None
    raise ValueError(family)


# ---------------------------------------------------------------------------
# division and Buchberger


def normal_form(f, basis):
    """Remainder of f on division by the list of polynomials (fixed order)."""
    result = {}
    work = dict(f.terms)
    leads = [(g.lead(), g) for g in basis if g]
    while work:
        m = max(work, key=mono_key)
        c = work.pop(m)
        for (lm, lc), g in leads:
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                factor = c / lc
                for gm, gc in g.terms.items():
                    mm = mono_mul(gm, shift)
                    if mm == m:
                        continue
                    s = work.get(mm, 0) - factor * gc
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            result[m] = c
    out = Poly.__new__(Poly)
    out.terms = result
    return out


def s_poly(f, g):
    (mf, cf) = f.lead()
    (mg, cg) = g.lead()
    l = mono_lcm(mf, mg)
    return f.mul_mono(mono_div(l, mf), Fraction(1) / cf) - g.mul_mono(mono_div(l, mg), Fraction(1) / cg)


def groebner(generators):
    """Reduced Groebner basis (Buchberger with the coprime-lcm criterion).

    Termination is guaranteed in two variables; the result is the unique
    reduced basis for the fixed degrevlex order, sorted by leading monomial.
    """
    basis = [g.monic() for g in generators if g]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        mi, _ = basis[i].lead()
        mj, _ = basis[j].lead()
        if mono_lcm(mi, mj) == mono_mul(mi, mj):
            continue  # coprime leading terms: s-poly reduces to zero
        r = normal_form(s_poly(basis[i], basis[j]), basis)
        if r:
            basis.append(r.monic())
            k = len(basis) - 1
            pairs.extend((k, t) for t in range(k))
    # minimalize: drop elements whose lead is divisible by another lead
    minimal = []
    for g in sorted(basis, key=lambda g: mono_key(g.lead()[0])):
        lm = g.lead()[0]
        if not any(mono_divides(h.lead()[0], lm) for h in minimal):
            minimal.append(g)
    # autoreduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: mono_key(g.lead()[0]))
    return reduced


# ---------------------------------------------------------------------------
# quotient rings and graded pieces


def monomials_of_exact_degree(group, d):
    """All monomials of S with L-degree exactly d (finite by positivity of
    the weight homomorphism)."""
    w = d.weight()
    if w < 0:
        return []
    wx, wy = group.x.weight(), group.y.weight()
    out = []
    for u in range(w // wx + 1):
        rem = w - u * wx
        if rem % wy:
            continue
        v = rem // wy
        if group.monomial_degree(u, v) == d:
            out.append((u, v))
    return out


class QuotientRing:
    """S/I together with an L-shift, I given by explicit generators.

    The degree-d piece of R(shift)/I is spanned by the standard monomials
    (those outside the leading-term staircase) of exact L-degree d + shift.
    Generators are expected to be L-homogeneous so that pieces make sense.
    """

    def __init__(self, group: GradingGroup, generators, shift: GroupElement = None, label=""):
        self.group = group
        self.generators = [g for g in generators if g]
        for g in self.generators:
            if g.degree_in(group) is None:
                raise ValueError(f"ideal generator {g} is not L-homogeneous")
        self.shift = shift if shift is not None else group.zero
        self.label = label
        self.gb = groebner(self.generators)
        self.lead_terms = [g.lead()[0] for g in self.gb]
        self._nf_cache = {}
        self._std_cache = {}

    def is_unit_ideal(self):
        return any(lt == (0, 0) for lt in self.lead_terms)

    def is_finite_dimensional(self):
        """True when the staircase is bounded (pure powers of x and y lead)."""
        has_x = any(v == 0 for (u, v) in self.lead_terms)
        has_y = any(u == 0 for (u, v) in self.lead_terms)
        return has_x and has_y

    def staircase_bound(self):
        """(bx, by) with every standard monomial having u < bx, v < by;
        None when infinite-dimensional."""
        if not self.is_finite_dimensional():
            return None
        bx = min(u for (u, v) in self.lead_terms if v == 0)
        by = min(v for (u, v) in self.lead_terms if u == 0)
        return bx, by

    def is_standard(self, mono):
        return not any(mono_divides(lt, mono) for lt in self.lead_terms)

    def nf_mono(self, mono):
        cached = self._nf_cache.get(mono)
        if cached is None:
            cached = normal_form(Poly.monomial(*mono), self.gb)
            self._nf_cache[mono] = cached
        return cached

    def nf(self, poly):
        out = Poly()
        for m, c in poly.terms.items():
            out = out + self.nf_mono(m) * c
        return out

    # -- piece enumeration ---------------------------------------------------

    def monomials_of_exact_degree(self, d: GroupElement):
        return monomials_of_exact_degree(self.group, d)

    def standard_monomials_exact(self, d: GroupElement):
        """Standard monomials of exact degree d: a basis of (S/I)_d."""
        key = d.vec
        cached = self._std_cache.get(key)
        if cached is None:
            cached = [m for m in self.monomials_of_exact_degree(d) if self.is_standard(m)]
            cached.sort(key=mono_key)
            self._std_cache[key] = cached
        return cached

    def piece_exact(self, d: GroupElement):
        """Basis of the degree-d piece of R(shift)/I (monomials)."""
        return self.standard_monomials_exact(d + self.shift)

    def graded_piece_basis(self, delta, bound=None):
        """Monomial basis of the piece of R(shift)/I in class [delta] of L/Zc.

        delta is a GroupElement used as the exact representative l of the
        class.  Returns [(monomial, m)] where the monomial has exact degree
        l + shift + m*c.  Requires a finite staircase, or an explicit
        exponent bound for the enumeration.
        """
        g = self.group
        if not isinstance(delta, GroupElement):
            raise TypeError("delta must be a GroupElement representative")
        l = delta
        box = self.staircase_bound()
        if box is None:
            if bound is None:
                raise ValueError("infinite-dimensional piece: supply an exponent bound")
            box = (bound + 1, bound + 1)
        target = (l + self.shift).mod_c()
        out = []
        base = l + self.shift
        for u in range(box[0]):
            for v in range(box[1]):
                if not self.is_standard((u, v)):
                    continue
                if g.reduce_mod_c_vec((u, v, 0)) != target:
                    continue
                m = g.decompose_mod_c(g.monomial_degree(u, v), base)
                if m is None:
                    # degree differs from base by a torsion element; cannot
                    # happen when classes mod c agree and c has infinite order
                    raise ArithmeticError("class matched but no c-power decomposition")
                out.append(((u, v), m))
        out.sort(key=lambda t: mono_key(t[0]))
        return out


def brute_force_piece_dim(group, generators, shift, delta_rep, bound):
    """Independent oracle for graded piece dimensions.

    Enumerates every monomial with exponents <= bound in the class of
    delta_rep (mod c), collects all multiples m*g of the ideal generators
    lying in the same class with exponents <= bound, and row-reduces to
    count surviving monomials.  No Groebner machinery is used.
    """
    import warnings

    from ._linalg import rank as mat_rank

    max_gen_exp = max(
        (max(u, v) for g in generators if g for (u, v) in g.terms), default=0
    )
    if bound < max_gen_exp:
        warnings.warn(
            f"bound {bound} does not enclose the ideal staircase "
            f"(generator exponent {max_gen_exp}); the count may be too large",
            stacklevel=2,
        )
    target = (delta_rep + shift).mod_c()
    monos = [
        (u, v)
        for u in range(bound + 1)
        for v in range(bound + 1)
        if group.reduce_mod_c_vec((u, v, 0)) == target
    ]
    if not monos:
        return 0
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for gpoly in generators:
        if not gpoly:
            continue
        gdeg = gpoly.degree_in(group)
        if gdeg is None:
            raise ValueError("oracle needs homogeneous generators")
        maxu = max(u for (u, v) in gpoly.terms)
        maxv = max(v for (u, v) in gpoly.terms)
        for su in range(bound - maxu + 1):
            for sv in range(bound - maxv + 1):
                shifted = {(su + u, sv + v): c for (u, v), c in gpoly.terms.items()}
                if any(m not in index for m in shifted):
                    continue
                first = next(iter(shifted))
                if group.reduce_mod_c_vec((first[0], first[1], 0)) != target:
                    continue
                row = [Fraction(0)] * len(monos)
                for m, c in shifted.items():
                    row[index[m]] = Fraction(c)
                rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - mat_rank(rows)
