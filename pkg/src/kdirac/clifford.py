"""Complex spinor representation of the Clifford algebra of Euclidean R^n.

The n generators act on a spinor space of dimension s = 2^floor(n/2) and obey
g_a g_b + g_b g_a = -2 delta_ab. They are produced by the standard recursive
tensor construction from 2x2 blocks: a Hermitian anticommuting family is built
first and multiplied by i, which makes every generator square to minus the
identity while keeping all entries in {0, +1, -1, +i, -i}. Each generator is
therefore a signed permutation matrix, which the symbol assembly downstream
relies on for sparsity.

For even n the construction also yields the chirality operator whose +1/-1
eigenspaces are the two half-spinor summands, each of dimension s/2.
"""

from dataclasses import dataclass

from .linalg import ExactMatrix, GaussRational, IMAG, ONE, ZERO

_PAULI_X = ExactMatrix.from_rows([[0, 1], [1, 0]])
_PAULI_Y = ExactMatrix.from_rows([[0, GaussRational(0, -1)], [GaussRational(0, 1), 0]])
_PAULI_Z = ExactMatrix.from_rows([[1, 0], [0, -1]])
_ID2 = ExactMatrix.identity(2)


@dataclass(frozen=True)
class RepParams:
    """Size bookkeeping for a spinor representation: n >= 3 generators acting
    on spinors of dimension s = 2^m with m = floor(n/2); k >= 2 is the number
    of operator slots of the system the representation will serve."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def s(self) -> int:
        return 1 << self.m


def _kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    entries = {}
    for (ra, ca), va in a.entries.items():
        for (rb, cb), vb in b.entries.items():
            entries[(ra * b.rows + rb, ca * b.cols + cb)] = va * vb
    return ExactMatrix(a.rows * b.rows, a.cols * b.cols, entries)


def _kron_chain(blocks) -> ExactMatrix:
    out = blocks[0]
    for blk in blocks[1:]:
        out = _kron(out, blk)
    return out


class CliffordRep:
    """Generators of the Clifford action on the spinor space.

    ``gamma[alpha]`` (0-based list) is the matrix of the alpha-th generator;
    ``chirality`` is present exactly when n is even.
    """

    def __init__(self, params: RepParams, gamma, chirality):
        self.params = params
        self.gamma = gamma
        self.chirality = chirality
        # column maps (mu -> [(nu, value)]) used by the symbol builders
        self._gamma_cols = [g.column_maps() for g in gamma]

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def s(self) -> int:
        return self.params.s

    def gamma_cols(self, alpha0: int):
        """Column map of the (0-based) alpha-th generator."""
        return self._gamma_cols[alpha0]

    def verify(self) -> None:
        """Check the defining relation and, for even n, the chirality split."""
        n, s = self.n, self.s
        minus_two_id = ExactMatrix.identity(s).scaled(GaussRational(-2))
        for a in range(n):
            for b in range(a, n):
                anti = self.gamma[a].matmul(self.gamma[b]) + self.gamma[b].matmul(
                    self.gamma[a]
                )
                expected = minus_two_id if a == b else ExactMatrix(s, s)
                if anti != expected:
                    raise AssertionError(f"Clifford relation fails at ({a}, {b})")
        if self.chirality is not None:
            if self.chirality.matmul(self.chirality) != ExactMatrix.identity(s):
                raise AssertionError("chirality must square to the identity")
            plus = sum(1 for i in range(s) if self.chirality.entry(i, i) == ONE)
            if plus * 2 != s:
                raise AssertionError("half-spinor spaces must have equal dimension")
            for g in self.gamma:
                prod = self.chirality.matmul(g) + g.matmul(self.chirality)
                if not prod.is_zero():
                    raise AssertionError("chirality must anticommute with generators")

    def chirality_eigenspace_dims(self):
        """Dimensions of the +1 and -1 chirality eigenspaces (even n only)."""
        if self.chirality is None:
            raise ValueError("chirality exists only for even n")
        s = self.s
        plus = sum(1 for i in range(s) if self.chirality.entry(i, i) == ONE)
        return plus, s - plus


def build_spinor_rep(n: int, k: int = 2) -> CliffordRep:
    """Deterministically construct the spinor representation for R^n.

    All generator entries lie in {0, +-1, +-i}; the defining relation is
    verified before the representation is returned.
    """
    params = RepParams(n, k)
    m = params.m
    hermitian = []
    for a in range(m):
        pre = [_PAULI_Z] * a
        post = [_ID2] * (m - a - 1)
        hermitian.append(_kron_chain(pre + [_PAULI_X] + post))
        hermitian.append(_kron_chain(pre + [_PAULI_Y] + post))
    if n % 2 == 1:
        hermitian.append(_kron_chain([_PAULI_Z] * m))
    gamma = [g.scaled(IMAG) for g in hermitian[:n]]
    chirality = _kron_chain([_PAULI_Z] * m) if n % 2 == 0 else None
    rep = CliffordRep(params, gamma, chirality)
    rep.verify()
    return rep


def clifford_apply(rep: CliffordRep, alpha: int, v):
    """Apply the alpha-th generator (1-based, as in the x_{alpha i} labels) to
    a spinor given as a length-s sequence."""
    if not 1 <= alpha <= rep.n:
        raise ValueError(f"generator index {alpha} outside 1..{rep.n}")
    if len(v) != rep.s:
        raise ValueError("spinor has wrong length")
    out = [ZERO] * rep.s
    for mu, entries in enumerate(rep.gamma_cols(alpha - 1)):
        x = v[mu]
        if not x:
            continue
        for nu, val in entries:
            out[nu] = out[nu] + val * x
    return out
