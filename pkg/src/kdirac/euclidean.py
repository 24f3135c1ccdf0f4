"""The k-Dirac system on n x k matrix space: symbol tableau, monogenic
solution slices, the explicit basis orderings that witness involutivity for
k = 2, the initial-data extension solver, and the second-order restriction
identity.

Variable and coordinate conventions, fixed once for reproducibility:

* the matrix entries x_{alpha i} are enumerated alpha-major / i-minor, and the
  same index ``(alpha-1)*k + (i-1)`` serves as the V*-coordinate of the
  covector dual to x_{alpha i};
* for k = 2 the affine chart t_1..t_{2n} mixes the last matrix row through
  (t_{2n-3} +- t_{2n-2}); initial data for the extension solver lives in
  t_1..t_{2n-3}.
"""

from functools import lru_cache
from math import comb

from .clifford import CliffordRep, build_spinor_rep
from .linalg import GaussRational, SubspaceBasis, ZERO, rank_rows, solve_rows
from .polynomials import (
    DiffOp,
    SpinorPoly,
    VariableSet,
    apply_op,
    basis_polynomials,
    monomial_basis,
    solution_dim,
    solution_space,
)
from .tableau import InvariantViolation, OrderedBasis, Tableau

HALF = GaussRational("1/2")


class EuclideanSystem:
    """The k first-order slot operators sum_alpha gamma_alpha d/dx_{alpha i}."""

    def __init__(self, rep: CliffordRep):
        self.rep = rep
        self.params = rep.params
        n, k = rep.params.n, rep.params.k
        self.vars = VariableSet.of(
            [f"x_{a}_{i}" for a in range(1, n + 1) for i in range(1, k + 1)]
        )
        one = {(0,) * (n * k): GaussRational(1)}
        self.ops = [
            DiffOp(self.vars, rep.s, [(one, a * k + i, rep.gamma[a]) for a in range(n)])
            for i in range(k)
        ]
        self._tableau = None
        self._spaces = {}

    @property
    def n(self):
        return self.params.n

    @property
    def k(self):
        return self.params.k

    @property
    def s(self):
        return self.params.s

    def var_index(self, alpha: int, i: int) -> int:
        """0-based variable/coordinate index of x_{alpha i} (1-based labels)."""
        if not (1 <= alpha <= self.n and 1 <= i <= self.k):
            raise ValueError("matrix entry labels out of range")
        return (alpha - 1) * self.k + (i - 1)

    def tableau(self) -> Tableau:
        """Symbol tableau: the linear solutions, as a subspace of V* (x) Sp.

        The degree-1 monomial enumeration coincides with the V*-coordinate
        order, so the solution-space basis reads directly as a tableau basis.
        """
        if self._tableau is None:
            basis = self.monogenic_space(1)
            self._tableau = Tableau(self.n * self.k, self.s, basis)
        return self._tableau

    def monogenic_space(self, degree: int) -> SubspaceBasis:
        if degree not in self._spaces:
            self._spaces[degree] = solution_space(self.ops, self.vars, self.s, degree)
        return self._spaces[degree]

    def monogenic_dim(self, degree: int) -> int:
        if degree in self._spaces:
            return self._spaces[degree].dim
        return solution_dim(self.ops, self.vars, self.s, degree)

    def monogenic_polynomials(self, degree: int):
        return basis_polynomials(
            self.vars, self.s, degree, self.monogenic_space(degree)
        )


def build_euclidean(n: int, k: int) -> EuclideanSystem:
    """Build the system and check the symbol-kernel dimension k s (n-1)."""
    sys = EuclideanSystem(build_spinor_rep(n, k))
    expected = k * sys.s * (n - 1)
    got = sys.tableau().dim
    if got != expected:
        raise InvariantViolation(f"symbol tableau dimension {got} != {expected}")
    return sys


# ---------------------------------------------------------------------------
# basis orderings
# ---------------------------------------------------------------------------


def level0_ordering(sys: EuclideanSystem) -> OrderedBasis:
    """Covector order with all alpha < n slots first and the alpha = n column
    block last; in the alpha-major convention this is the identity."""
    return OrderedBasis.identity(sys.n * sys.k, label="paper")


def level1_ordering(sys: EuclideanSystem) -> OrderedBasis:
    """The hand-picked chart ordering for k = 2 (label "paper").

    Built from the t-chart: leading covectors t_1..t_{2n-3} carry the initial
    data; the trailing three mix the last matrix row.
    """
    if sys.k != 2:
        raise ValueError("the built-in level-1 ordering exists only for k = 2")
    n = sys.n
    rows = [None] * (2 * n)
    one = GaussRational(1)

    def unit(vidx):
        row = [0] * (2 * n)
        row[vidx] = one
        return row

    for r in range(1, n - 1):
        rows[2 * r - 2] = unit(2 * (r - 1))  # u_{2r-1} = e1 (x) eps_r
    for r in range(1, n - 2):
        rows[2 * r - 1] = unit(2 * (r - 1) + 1)  # u_{2r} = e2 (x) eps_r
    rows[2 * n - 5] = unit(2 * (n - 2) + 1)  # e2 (x) eps_{n-1}
    plus = [0] * (2 * n)
    plus[2 * (n - 1)] = one
    plus[2 * (n - 1) + 1] = one
    rows[2 * n - 4] = plus  # (e1+e2) (x) eps_n
    minus = [0] * (2 * n)
    minus[2 * (n - 1)] = one
    minus[2 * (n - 1) + 1] = GaussRational(-1)
    rows[2 * n - 3] = minus  # (e1-e2) (x) eps_n
    rows[2 * n - 2] = unit(2 * (n - 3) + 1)  # e2 (x) eps_{n-2}
    rows[2 * n - 1] = unit(2 * (n - 2))  # e1 (x) eps_{n-1}
    return OrderedBasis.from_rows(rows, label="paper")


def paper_ordering(sys: EuclideanSystem, level: int) -> OrderedBasis:
    if level == 0:
        return level0_ordering(sys)
    if level == 1:
        return level1_ordering(sys)
    raise ValueError("built-in orderings exist for levels 0 and 1 only")


# ---------------------------------------------------------------------------
# closed forms and component split of the quadratic slice
# ---------------------------------------------------------------------------


def quadratic_dim_formula(n: int, k: int, s: int) -> int:
    return s * comb(k * (n - 1) + 1, 2) - s * comb(k, 2)


def cubic_dim_formula(n: int, s: int) -> int:
    """k = 2 only: s C(2n,3) - 2 s (n-1)."""
    return s * comb(2 * n, 3) - 2 * s * (n - 1)


def initial_dim_formula(n: int, r: int) -> int:
    """Degree-r solution count for k = 2 from free initial data: spinors of
    degree r and r-1 in the 2n-3 leading chart variables."""
    if r < 2:
        raise ValueError("the initial-data count applies for degree r >= 2")
    s = 1 << (n // 2)
    v = 2 * n - 4
    return s * (comb(r + v, v) + comb(r - 1 + v, v))


def quadratic_component_dims(sys: EuclideanSystem):
    """Split the quadratic slice into its symmetric-symmetric and
    skew-skew components inside S^2(E (x) F) (x) Sp.

    Projects the prolongation basis onto both summands and returns the two
    ranks; their sum must reproduce the full dimension.
    """
    from .tableau import prolong

    k = sys.k
    p = prolong(sys.tableau())
    raw = p.raw
    dim_V = sys.n * k
    s = sys.s
    def partner(coord):
        pair, w = divmod(coord, s)
        c1, c2 = divmod(pair, dim_V)
        a1, i1 = divmod(c1, k)
        a2, i2 = divmod(c2, k)
        return ((a1 * k + i2) * dim_V + (a2 * k + i1)) * s + w

    sym_vecs, skew_vecs = [], []
    for vec in raw.vectors:
        sym, skew = {}, {}
        seen = set()
        for coord in vec:
            for cc in (coord, partner(coord)):
                if cc in seen:
                    continue
                seen.add(cc)
                val = vec.get(cc, ZERO)
                pv = vec.get(partner(cc), ZERO)
                sv = (val + pv) * HALF
                kv = (val - pv) * HALF
                if sv:
                    sym[cc] = sv
                if kv:
                    skew[cc] = kv
        if sym:
            sym_vecs.append(sym)
        if skew:
            skew_vecs.append(skew)
    sym_dim = rank_rows(sym_vecs)
    skew_dim = rank_rows(skew_vecs)
    if sym_dim + skew_dim != p.dim:
        raise InvariantViolation("component split does not add up")
    return sym_dim, skew_dim


# ---------------------------------------------------------------------------
# the k = 2 chart, extension from initial data
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _chart_data(n: int):
    """Variable set t_1..t_{2n} and the expansion of each d/dx_{alpha i} in
    chart derivatives: (alpha, i) -> ((t-index, coefficient), ...)."""
    vars = VariableSet.of([f"t{j}" for j in range(1, 2 * n + 1)])
    table = {}
    for r in range(1, n - 1):
        table[(r, 1)] = ((2 * r - 2, GaussRational(1)),)
    for r in range(1, n - 2):
        table[(r, 2)] = ((2 * r - 1, GaussRational(1)),)
    table[(n - 2, 2)] = ((2 * n - 2, GaussRational(1)),)
    table[(n - 1, 2)] = ((2 * n - 5, GaussRational(1)),)
    table[(n - 1, 1)] = ((2 * n - 1, GaussRational(1)),)
    table[(n, 1)] = ((2 * n - 4, HALF), (2 * n - 3, HALF))
    table[(n, 2)] = ((2 * n - 4, HALF), (2 * n - 3, -HALF))
    return vars, table


def chart_vars(n: int) -> VariableSet:
    return _chart_data(n)[0]


def chart_ops(sys: EuclideanSystem):
    """The two slot operators rewritten in the chart variables (k = 2)."""
    if sys.k != 2:
        raise ValueError("the chart exists only for k = 2")
    vars, table = _chart_data(sys.n)
    one = {(0,) * (2 * sys.n): GaussRational(1)}
    ops = []
    for i in (1, 2):
        # chart coefficients folded into the matrices, coefficient polys stay 1
        terms = [
            (one, tidx, sys.rep.gamma[a - 1].scaled(coeff))
            for a in range(1, sys.n + 1)
            for tidx, coeff in table[(a, i)]
        ]
        ops.append(DiffOp(vars, sys.s, terms))
    return ops


def _homogeneous_degree(p: SpinorPoly):
    degs = p.weighted_degrees()
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous")
    return degs.pop() if degs else None


def extend_from_initial_data(
    sys: EuclideanSystem, g1: SpinorPoly, g2: SpinorPoly
) -> SpinorPoly:
    """Unique monogenic extension of chart initial data (k = 2).

    ``g1`` (degree r >= 2) and ``g2`` (degree r-1) may only use the leading
    chart variables t_1..t_{2n-3}. The result is g1 + t_{2n-2} g2 + g where g
    collects every remaining degree-r monomial class (at least quadratic in
    the trailing three chart variables, or linear in t_{2n-1} or t_{2n});
    restricting a solution to the leading variables recovers g1 and its
    t_{2n-2}-linear part recovers g2. Solvability and uniqueness are
    guaranteed by the theory, so their failure raises InvariantViolation.
    """
    if sys.k != 2:
        raise ValueError("initial-data extension applies to k = 2 only")
    n = sys.n
    vars = chart_vars(n)
    s = sys.s
    for g in (g1, g2):
        if g.vars != vars or g.spinor_dim != s:
            raise ValueError("initial data must live on the chart variables")
    trailing = (2 * n - 3, 2 * n - 2, 2 * n - 1)
    for g in (g1, g2):
        for (exps, _mu) in g.coeffs:
            if any(exps[t] for t in trailing):
                raise ValueError("initial data may use only t_1..t_{2n-3}")
    d1 = _homogeneous_degree(g1)
    d2 = _homogeneous_degree(g2)
    if d1 is None and d2 is None:
        return SpinorPoly.zero(vars, s)
    r = d1 if d1 is not None else d2 + 1
    if r < 2:
        raise ValueError("initial data must have degree at least 2")
    if d1 not in (None, r) or d2 not in (None, r - 1):
        raise ValueError("initial data degrees must be r and r-1")

    lift = {tuple(1 if i == 2 * n - 3 else 0 for i in range(2 * n)): GaussRational(1)}
    from .polynomials import scalar_multiply

    base = g1 + scalar_multiply(lift, g2)
    ops = chart_ops(sys)

    def is_data_monomial(e):
        tdeg = sum(e[t] for t in trailing)
        return tdeg == 0 or (tdeg == 1 and e[2 * n - 3] == 1)

    unknown = [e for e in monomial_basis(vars, r) if not is_data_monomial(e)]
    col_of = {e: idx for idx, e in enumerate(unknown)}
    ncols = len(unknown) * s

    row_of = {}
    rows = []
    rhs = {}

    def row_id(slot, exps, nu):
        key = (slot, exps, nu)
        idx = row_of.get(key)
        if idx is None:
            idx = len(rows)
            row_of[key] = idx
            rows.append({})
        return idx

    for slot, op in enumerate(ops):
        for exps in unknown:
            m_idx = col_of[exps]
            for mu in range(s):
                unit = SpinorPoly.monomial(vars, s, exps, mu)
                image = apply_op(op, unit)
                for (t_exps, nu), val in image.coeffs.items():
                    rows[row_id(slot, t_exps, nu)][m_idx * s + mu] = val
        image = apply_op(op, base)
        for (t_exps, nu), val in image.coeffs.items():
            rhs[row_id(slot, t_exps, nu)] = -val

    solutions, rank = solve_rows(rows, ncols, [rhs])
    if solutions[0] is None:
        raise InvariantViolation("initial data admits no monogenic extension")
    if rank != ncols:
        raise InvariantViolation("monogenic extension is not unique")
    g_coeffs = {}
    for col, val in solutions[0].items():
        m_idx, mu = divmod(col, s)
        g_coeffs[(unknown[m_idx], mu)] = val
    result = base + SpinorPoly(vars, s, g_coeffs)
    for op in ops:
        if not apply_op(op, result).is_zero():
            raise InvariantViolation("extension fails to be monogenic")
    return result


# ---------------------------------------------------------------------------
# restriction identity
# ---------------------------------------------------------------------------


def restriction_commutator_check(sys: EuclideanSystem, psi: SpinorPoly) -> bool:
    """Restrict a monogenic spinor to the hyperplane x_{1 i} = 0 and test the
    second-order commutator identity of the truncated slot operators."""
    if psi.vars != sys.vars or psi.spinor_dim != sys.s:
        raise ValueError("polynomial does not live on this system")
    for op in sys.ops:
        if not apply_op(op, psi).is_zero():
            raise ValueError("input spinor is not monogenic")
    n, k = sys.n, sys.k
    restricted = psi.substitute_zero([sys.var_index(1, i) for i in range(1, k + 1)])
    one = {(0,) * (n * k): GaussRational(1)}
    truncated = [
        DiffOp(
            sys.vars,
            sys.s,
            [(one, sys.var_index(a, i), sys.rep.gamma[a - 1]) for a in range(2, n + 1)],
        )
        for i in range(1, k + 1)
    ]
    for i in range(k):
        for j in range(i + 1, k):
            forward = apply_op(truncated[i], apply_op(truncated[j], restricted))
            backward = apply_op(truncated[j], apply_op(truncated[i], restricted))
            if forward != backward:
                return False
    return True
