"""Generic tableau machinery: prolongation, Cartan characters, Cartan's test,
ordering search and the torsion target space.

A tableau is a subspace A of V* (x) W, stored over coordinates with the
V*-index major and the W-index minor. Its first prolongation is the set of
symmetric 2-tensors whose contractions against every covector slot stay in A;
computationally that is the kernel of one sparse constraint matrix whose rows
are indexed by (unordered covector pair, W-coordinate).

The Cartan filtration A_k intersects A with the span of the trailing vectors
of an ordered basis of V*; because the stored bases are reduced echelon forms,
each filtration dimension is read off the pivot distribution after one change
of coordinates. Characters are the filtration increments and the test compares
dim A^(1) with s_1 + 2 s_2 + ... + n s_n.
"""

import random as _random
from dataclasses import dataclass
from math import comb

from .linalg import (
    ExactMatrix,
    GaussRational,
    SubspaceBasis,
    ZERO,
    inverse,
    kernel_rows,
    rank_rows,
    rref_rows,
)


class InvariantViolation(RuntimeError):
    """A relation the underlying theory guarantees failed to hold."""


class Tableau:
    """Subspace of V* (x) W with dim_V * dim_W ambient coordinates."""

    def __init__(self, dim_V: int, dim_W: int, basis: SubspaceBasis):
        if basis.ambient_dim != dim_V * dim_W:
            raise ValueError("basis ambient dimension must be dim_V * dim_W")
        self.dim_V = dim_V
        self.dim_W = dim_W
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.dim

    @classmethod
    def full(cls, dim_V: int, dim_W: int) -> "Tableau":
        from .linalg import ONE

        vecs = [{c: ONE} for c in range(dim_V * dim_W)]
        return cls(dim_V, dim_W, SubspaceBasis.from_vectors(dim_V * dim_W, vecs))

    @classmethod
    def zero(cls, dim_V: int, dim_W: int) -> "Tableau":
        return cls(dim_V, dim_W, SubspaceBasis.from_vectors(dim_V * dim_W, []))

    def __repr__(self):
        return f"Tableau(dim {self.dim} in V*{self.dim_V} (x) W{self.dim_W})"


class OrderedBasis:
    """Ordered basis u^1..u^n of V*, rows of ``change`` in old coordinates."""

    def __init__(self, change: ExactMatrix, label: str = "given"):
        if change.rows != change.cols:
            raise ValueError("change of basis must be square")
        self.change = change
        self.label = label
        self._inverse = None

    @classmethod
    def identity(cls, dim_V: int, label: str = "given") -> "OrderedBasis":
        return cls(ExactMatrix.identity(dim_V), label)

    @classmethod
    def from_rows(cls, rows, label: str) -> "OrderedBasis":
        return cls(ExactMatrix.from_rows(rows), label)

    @classmethod
    def permutation(cls, order, label: str) -> "OrderedBasis":
        n = len(order)
        if sorted(order) != list(range(n)):
            raise ValueError("not a permutation")
        from .linalg import ONE

        return cls(ExactMatrix(n, n, {(i, j): ONE for i, j in enumerate(order)}), label)

    def inverse_rows(self):
        if self._inverse is None:
            try:
                inv = inverse(self.change)
            except ValueError:
                raise ValueError(f"ordering '{self.label}' is singular") from None
            self._inverse = inv.row_dicts()
        return self._inverse


@dataclass(frozen=True)
class CartanReport:
    dim_tableau: int
    filtration_dims: tuple
    characters: tuple
    rhs_cartan_test: int
    dim_prolongation: int
    involutive: bool
    ordering_label: str


# ---------------------------------------------------------------------------
# prolongation
# ---------------------------------------------------------------------------


def _prolongation_rows(t: Tableau):
    """Constraint rows for coefficients c[(slot, basis index)] of elements of
    V* (x) A: row (i<j, w) demands the (i,j,w) and (j,i,w) tensor entries
    agree. Columns are slot-major: col = i * dim(A) + p."""
    a = t.dim
    rows = {}
    for p, vec in enumerate(t.basis.vectors):
        for coord, val in vec.items():
            j, w = divmod(coord, t.dim_W)
            for i in range(j):
                row = rows.setdefault((i, j, w), {})
                col = i * a + p
                cur = row.get(col, ZERO) + val
                if cur:
                    row[col] = cur
                elif col in row:
                    del row[col]
            for l in range(j + 1, t.dim_V):
                row = rows.setdefault((j, l, w), {})
                col = l * a + p
                cur = row.get(col, ZERO) - val
                if cur:
                    row[col] = cur
                elif col in row:
                    del row[col]
    return list(rows.values())


class Prolongation:
    """Result of prolonging a tableau.

    ``lifted`` presents the prolongation as a tableau inside V* (x) A, ready
    for the next round of the test; ``raw`` expands the same space into
    symmetric tensors inside V* (x) V* (x) W (computed on first access).
    """

    def __init__(self, source: Tableau, coefficients: SubspaceBasis):
        self.source = source
        self.lifted = Tableau(source.dim_V, source.dim, coefficients)
        self._raw = None

    @property
    def dim(self) -> int:
        return self.lifted.dim

    @property
    def raw(self) -> SubspaceBasis:
        if self._raw is None:
            src = self.source
            a = src.dim
            ambient = src.dim_V * src.dim_V * src.dim_W
            vecs = []
            for c in self.lifted.basis.vectors:
                x = {}
                for col, lam in c.items():
                    i, p = divmod(col, a)
                    base = i * src.dim_V
                    for coord, val in src.basis.vectors[p].items():
                        j, w = divmod(coord, src.dim_W)
                        key = (base + j) * src.dim_W + w
                        cur = x.get(key, ZERO) + lam * val
                        if cur:
                            x[key] = cur
                        elif key in x:
                            del x[key]
                vecs.append(x)
            self._raw = SubspaceBasis.from_vectors(ambient, vecs)
        return self._raw


def prolong(t: Tableau) -> Prolongation:
    """First prolongation of a tableau (canonical coefficient basis)."""
    coeffs = kernel_rows(_prolongation_rows(t), t.dim_V * t.dim)
    return Prolongation(t, coeffs)


def prolongation_dim(t: Tableau) -> int:
    """dim A^(1) without materialising a basis (rank computation only)."""
    return t.dim_V * t.dim - rank_rows(_prolongation_rows(t))


def h02_dim(t: Tableau) -> int:
    """Dimension of Lambda^2 V* (x) W modulo the skew image of V* (x) A.

    The skew-symmetrisation of V* (x) A has the same coefficient matrix as the
    prolongation constraints, so one rank computation serves both.
    """
    total = comb(t.dim_V, 2) * t.dim_W
    return total - rank_rows(_prolongation_rows(t))


# ---------------------------------------------------------------------------
# filtration, characters, Cartan's test
# ---------------------------------------------------------------------------


def _transformed_rows(t: Tableau, ob: OrderedBasis):
    """Tableau basis re-expressed in the ordered-basis coordinates."""
    if ob.change.rows != t.dim_V:
        raise ValueError("ordering size must match dim V*")
    inv = ob.inverse_rows()
    out = []
    for vec in t.basis.vectors:
        x = {}
        for coord, val in vec.items():
            j, w = divmod(coord, t.dim_W)
            for i, q in inv[j].items():
                key = i * t.dim_W + w
                cur = x.get(key, ZERO) + q * val
                if cur:
                    x[key] = cur
                elif key in x:
                    del x[key]
        out.append(x)
    return out


def filtration_dims(t: Tableau, ob: OrderedBasis) -> list:
    """dim A_k for k = 1..dim_V, where A_k keeps only the trailing covectors.

    With the basis in reduced echelon form, dim A_k counts the pivots lying in
    the trailing coordinate block.
    """
    pivots, _ = rref_rows(_transformed_rows(t, ob))
    dims = []
    for k in range(1, t.dim_V + 1):
        cutoff = k * t.dim_W
        dims.append(sum(1 for p in pivots if p >= cutoff))
    if dims and dims[-1] != 0:
        raise InvariantViolation("A_n must vanish")
    return dims


def cartan_test(t: Tableau, ob: OrderedBasis = None, dim_prolongation_hint=None) -> CartanReport:
    """Run Cartan's test for the tableau under the given ordering.

    ``dim_prolongation_hint`` may carry a prolongation dimension computed by
    an equivalent route (for the symbol tableaux of homogeneous systems, the
    next solution space); when absent the generic prolongation is used. The
    test inequality is asserted, never assumed.
    """
    if ob is None:
        ob = OrderedBasis.identity(t.dim_V)
    filt = filtration_dims(t, ob)
    prev = t.dim
    characters = []
    for d in filt:
        characters.append(prev - d)
        prev = d
    rhs = sum(k * s for k, s in enumerate(characters, start=1))
    dim_p = dim_prolongation_hint if dim_prolongation_hint is not None else prolongation_dim(t)
    if dim_p > rhs:
        raise InvariantViolation(
            f"Cartan bound violated: dim A^(1) = {dim_p} > {rhs} = rhs"
        )
    return CartanReport(
        dim_tableau=t.dim,
        filtration_dims=tuple(filt),
        characters=tuple(characters),
        rhs_cartan_test=rhs,
        dim_prolongation=dim_p,
        involutive=(dim_p == rhs),
        ordering_label=ob.label,
    )


# ---------------------------------------------------------------------------
# ordering search
# ---------------------------------------------------------------------------


def _reduce_vector(vec: dict, *pivot_maps):
    """Reduce a vector against reduced rows keyed by pivot column. Returns the
    normalised remainder (pivot value 1) and its pivot, or (None, None)."""
    vec = dict(vec)
    while vec:
        lead = min(vec)
        row = None
        for pm in pivot_maps:
            row = pm.get(lead)
            if row is not None:
                break
        if row is None:
            coeff = vec[lead]
            return {c: v / coeff for c, v in vec.items()}, lead
        coeff = vec[lead]
        for c, v in row.items():
            cur = vec.get(c, ZERO) - coeff * v
            if cur:
                vec[c] = cur
            elif c in vec:
                del vec[c]
    return None, None


def _greedy_ordering(t: Tableau) -> OrderedBasis:
    """Build the ordered basis backwards along the trailing flag.

    Candidates are the coordinate covectors plus all pairwise sums and
    differences. Each step picks the candidate whose W-block adds the most
    new rank on top of the tableau, which minimises the next trailing
    filtration dimension; ties go to the earliest candidate. The ordering is
    fully determined by the tableau, hence reproducible.
    """
    n, w = t.dim_V, t.dim_W
    one = GaussRational(1)
    candidates = [{i: one} for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            candidates.append({i: one, j: one})
            candidates.append({i: one, j: GaussRational(-1)})
    state = dict(zip(t.basis.pivots, t.basis.vectors))
    vstate = {}
    chosen_back = []
    for _ in range(n):
        best, best_count, best_rows, best_vrow = None, -1, None, None
        for cand in candidates:
            vred, vlead = _reduce_vector(cand, vstate)
            if vred is None:
                continue
            added = {}
            count = 0
            for ww in range(w):
                block = {slot * w + ww: val for slot, val in cand.items()}
                red, lead = _reduce_vector(block, state, added)
                if red is not None:
                    added[lead] = red
                    count += 1
            if count > best_count:
                best, best_count, best_rows = cand, count, added
                best_vrow = (vlead, vred)
        state.update(best_rows)
        vstate[best_vrow[0]] = best_vrow[1]
        chosen_back.append(best)
    rows = []
    for cand in reversed(chosen_back):
        row = [0] * n
        for c, v in cand.items():
            row[c] = v
        rows.append(row)
    return OrderedBasis.from_rows(rows, "greedy")


def search_ordering(t: Tableau, strategy: str, seed: int = None) -> OrderedBasis:
    """Produce an ordered basis of V* for the Cartan filtration.

    ``given``: the identity ordering. ``greedy``: deterministic search over
    coordinate covectors and their pairwise combinations, maximising each
    successive character. ``random``: reproducible invertible matrix with
    small integer entries drawn from the seeded generator.
    """
    if strategy == "given":
        return OrderedBasis.identity(t.dim_V)
    if strategy == "greedy":
        return _greedy_ordering(t)
    if strategy == "random":
        if seed is None:
            raise ValueError("random ordering needs a seed")
        rng = _random.Random(seed)
        n = t.dim_V
        while True:
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            as_vecs = [
                {c: GaussRational(v) for c, v in enumerate(row) if v} for row in rows
            ]
            if rank_rows(as_vecs) == n:
                return OrderedBasis.from_rows(rows, f"random:{seed}")
    raise ValueError(f"unknown ordering strategy {strategy!r}")
