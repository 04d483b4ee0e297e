"""Exact arithmetic in the maximal grading group of an invertible curve polynomial.

The group L is generated by xv, yv, cv (the degrees of x, y and of the
polynomial w) subject to two relations depending on the family:

    loop :  p*xv + yv = cv,   xv + q*yv = cv
    chain:  p*xv + yv = cv,   q*yv = cv
    bp   :  p*xv      = cv,   q*yv = cv

Elements are integer 3-vectors over (xv, yv, cv); equality is coset equality
modulo the relation lattice.  Canonical forms come from the Hermite normal
form of the lattice, structure (invariant factors) from the Smith normal
form.  Everything is plain python integers, so all of it is exact.
"""

FAMILIES = ("loop", "chain", "bp")


def _relation_rows(family, p, q):
    if family == "loop":
        return [[p, 1, -1], [1, q, -1]]
    if family == "chain":
        return [[p, 1, -1], [0, q, -1]]
    if family == "bp":
        return [[p, 0, -1], [0, q, -1]]
    raise ValueError(f"unknown family {family!r}")


def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix: echelon rows with positive pivots,
    entries above each pivot reduced into [0, pivot)."""
    mat = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    result = []
    col = 0
    while mat and col < ncols:
        pivots = [r for r in mat if r[col] != 0]
        if not pivots:
            col += 1
            continue
        # Euclidean elimination in this column.
        while True:
            pivots = [r for r in mat if r[col] != 0]
            if len(pivots) <= 1:
                break
            pivots.sort(key=lambda r: abs(r[col]))
            small = pivots[0]
            for r in pivots[1:]:
                f = r[col] // small[col]
                for j in range(ncols):
                    r[j] -= f * small[j]
            mat = [r for r in mat if any(r)]
        pivots = [r for r in mat if r[col] != 0]
        if pivots:
            piv = pivots[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            result.append(piv)
            mat = [r for r in mat if r is not pivots[0] and any(r)]
        col += 1
    # Reduce above-pivot entries for a canonical echelon.
    for i in range(len(result) - 1, -1, -1):
        piv_col = next(j for j, a in enumerate(result[i]) if a != 0)
        for k in range(i):
            f = result[k][piv_col] // result[i][piv_col]
            if f:
                result[k] = [a - f * b for a, b in zip(result[k], result[i])]
    return result


def smith_normal_form(rows):
    """Smith normal form with transforms: returns (D, U, V) with U*A*V = D,
    U and V unimodular, D diagonal with d1 | d2 | ...  Small matrices only."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, f):  # row_i -= f*row_j
        A[i] = [a - f * b for a, b in zip(A[i], A[j])]
        U[i] = [a - f * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, f):  # col_i -= f*col_j
        for r in A:
            r[i] -= f * r[j]
        for r in V:
            r[i] -= f * r[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        # Find a nonzero pivot in the remaining block.
        pos = [(i, j) for i in range(t, m) for j in range(t, n) if A[i][j] != 0]
        if not pos:
            break
        i0, j0 = min(pos, key=lambda ij: abs(A[ij[0]][ij[1]]))
        swap_rows(t, i0)
        swap_cols(t, j0)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    f = A[i][t] // A[t][t]
                    row_op(i, t, f)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    f = A[t][j] // A[t][t]
                    col_op(j, t, f)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # Divisibility: pivot must divide the rest of the block.
        for i in range(t + 1, m):
            bad = next((j for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is not None:
                row_op(t, i, -1)
                t -= 1
                break
        t += 1
    for i in range(min(m, n)):
        if A[i][i] < 0:
            A[i] = [-a for a in A[i]]
            U[i] = [-a for a in U[i]]
    D = A
    return D, U, V


class GroupElement:
    """Element of a GradingGroup, stored in canonical coset form."""

    __slots__ = ("group", "vec")

    def __init__(self, group, vec):
        self.group = group
        self.vec = group.reduce_vec(vec)

    def __add__(self, other):
        assert self.group is other.group
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other):
        assert self.group is other.group
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.vec))

    def __rmul__(self, n):
        return GroupElement(self.group, tuple(n * a for a in self.vec))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.group is other.group and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def is_zero(self):
        return all(a == 0 for a in self.vec)

    def weight(self):
        return self.group.weight(self.vec)

    def mod_c(self):
        return self.group.reduce_mod_c_vec(self.vec)

    def __repr__(self):
        return f"L{self.vec}"


class GradingGroup:
    """The maximal grading group L for one family, plus its quotient L/Z*cv."""

    def __init__(self, family, p, q):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if p < 2 or q < 2:
            raise ValueError("p and q must both be at least 2")
        self.family = family
        self.p = p
        self.q = q
        self.relations = _relation_rows(family, p, q)
        self._hnf = hermite_normal_form(self.relations)
        self._hnf_pivots = [next(j for j, a in enumerate(r) if a) for r in self._hnf]
        self._hnf_mod_c = hermite_normal_form(self.relations + [[0, 0, 1]])
        self._hnf_mod_c_pivots = [next(j for j, a in enumerate(r) if a) for r in self._hnf_mod_c]

        D, U, V = smith_normal_form(self.relations)
        self._snf = (D, U, V)
        diag = [D[i][i] for i in range(min(len(D), 3)) if D[i][i] != 0]
        if len(diag) != 2:
            raise ValueError("relation lattice is expected to have rank 2")
        self.torsion = tuple(d for d in diag if d > 1)
        self.free_rank = 3 - len(diag)
        # Coordinates y = v*V split L into Z/d1 + Z/d2 + Z (free part last).
        self._diag = diag
        wx = self._free_coord((1, 0, 0))
        self._weight_sign = 1 if wx > 0 else -1
        if self.weight((1, 0, 0)) <= 0 or self.weight((0, 1, 0)) <= 0:
            raise ValueError("monomial degrees must have positive free part")

        Dq, _, _ = smith_normal_form(self.relations + [[0, 0, 1]])
        dq = [Dq[i][i] for i in range(3)]
        if any(d == 0 for d in dq):
            raise ValueError("L/Zc is expected to be finite")
        self.order_mod_c = abs(dq[0] * dq[1] * dq[2])
        self.torsion_mod_c = tuple(abs(d) for d in dq if abs(d) > 1)

        self.x = GroupElement(self, (1, 0, 0))
        self.y = GroupElement(self, (0, 1, 0))
        self.c = GroupElement(self, (0, 0, 1))
        self.zero = GroupElement(self, (0, 0, 0))
        if not self.has_infinite_order(self.c):
            raise ValueError("cv is expected to have infinite order in L")

    # -- raw vector helpers ------------------------------------------------

    def _coords(self, vec):
        V = self._snf[2]
        return tuple(sum(vec[i] * V[i][j] for i in range(3)) for j in range(3))

    def _free_coord(self, vec):
        return self._coords(vec)[2]

    def weight(self, vec):
        """Homomorphism L -> Z, positive on xv and yv; bounds monomial degrees."""
        return self._weight_sign * self._free_coord(vec)

    def reduce_vec(self, vec):
        v = list(vec)
        for row, piv in zip(self._hnf, self._hnf_pivots):
            f = v[piv] // row[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def reduce_mod_c_vec(self, vec):
        v = list(vec)
        for row, piv in zip(self._hnf_mod_c, self._hnf_mod_c_pivots):
            f = v[piv] // row[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    # -- public api ---------------------------------------------------------

    def element(self, a, b, c=0):
        """The element a*xv + b*yv + c*cv."""
        return GroupElement(self, (a, b, c))

    def monomial_degree(self, u, v):
        return GroupElement(self, (u, v, 0))

    def reduce(self, e):
        """Canonical form (idempotent; elements already store it)."""
        return GroupElement(self, e.vec)

    def has_infinite_order(self, e):
        if e.is_zero():
            return False
        # Free part is the last SNF coordinate; torsion elements have it zero.
        return self._coords(e.vec)[2] != 0

    def decompose_mod_c(self, d, l):
        """Find the integer m with d = m*cv + l in L, or None if there is none.

        Uniqueness relies on cv having infinite order, which holds for all
        three families (asserted at construction)."""
        diff = d - l
        yd = self._coords(diff.vec)
        yc = self._coords((0, 0, 1))
        if yc[2] == 0:
            raise ArithmeticError("cv is torsion; decomposition not unique")
        if yd[2] % yc[2] != 0:
            return None
        m = yd[2] // yc[2]
        if (m * self.c + l) == d:
            return m
        return None

    def invariants(self):
        """(free rank, torsion factors) of L and of L/Z*cv."""
        return {
            "L": {"free_rank": self.free_rank, "torsion": list(self.torsion)},
            "L_mod_c": {"order": self.order_mod_c, "torsion": list(self.torsion_mod_c)},
        }

    def __repr__(self):
        return f"GradingGroup({self.family}, p={self.p}, q={self.q})"


def make_grading_group(family, p, q):
    return GradingGroup(family, p, q)
