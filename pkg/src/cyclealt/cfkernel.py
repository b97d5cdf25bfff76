"""Stieltjes and Jacobi continued fractions over exact polynomial coefficients.

Conventions: ``SFractionSpec.alphas[i]`` is alpha_{i+1}; ``JFractionSpec.gammas[i]``
is gamma_i and ``JFractionSpec.betas[i]`` is beta_{i+1}.  All expansions run
the lattice-path recurrences on a triangle of entries, so only exact ring
operations are ever used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .polyring import MultiPoly, RatFunc, VarRegistry

Scalar = Union[MultiPoly, RatFunc]

__all__ = [
    "DepthError",
    "NotRegular",
    "SFractionSpec",
    "JFractionSpec",
    "TriMatrix",
    "j_series",
    "s_series",
    "jr_matrix",
    "jr_matrix_weighted",
    "sr_matrices",
    "contract",
    "series_to_j",
    "series_to_s",
]


class DepthError(ValueError):
    """The coefficient sequences are too short for the requested depth."""


class NotRegular(ArithmeticError):
    """A zero pivot was met while later series data still demands more levels."""

    def __init__(self, k: int):
        super().__init__(f"pivot at level {k} vanishes but the series does not terminate")
        self.k = k


@dataclass(frozen=True)
class SFractionSpec:
    alphas: tuple

    def __init__(self, alphas: Sequence):
        object.__setattr__(self, "alphas", tuple(alphas))

    @classmethod
    def from_function(cls, alpha: Callable[[int], Scalar], length: int) -> "SFractionSpec":
        """Build (alpha(1), ..., alpha(length))."""
        return cls([alpha(i) for i in range(1, length + 1)])

    def alpha(self, i: int) -> Scalar:
        return self.alphas[i - 1]

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class JFractionSpec:
    gammas: tuple
    betas: tuple

    def __init__(self, gammas: Sequence, betas: Sequence):
        object.__setattr__(self, "gammas", tuple(gammas))
        object.__setattr__(self, "betas", tuple(betas))

    @classmethod
    def from_functions(
        cls,
        gamma: Callable[[int], Scalar],
        beta: Callable[[int], Scalar],
        length: int,
    ) -> "JFractionSpec":
        """gamma(0..length-1) and beta(1..length)."""
        return cls([gamma(i) for i in range(length)], [beta(i) for i in range(1, length + 1)])

    def gamma(self, i: int) -> Scalar:
        return self.gammas[i]

    def beta(self, i: int) -> Scalar:
        return self.betas[i - 1]


@dataclass(frozen=True)
class TriMatrix:
    rows: tuple
    kind: str

    def __init__(self, rows: Sequence[Sequence[Scalar]], kind: str):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "kind", kind)

    def __getitem__(self, nk: tuple[int, int]) -> Scalar:
        n, k = nk
        row = self.rows[n]
        if k > n or k < 0:
            return _zero_like(row[0])
        return row[k]

    @property
    def size(self) -> int:
        return len(self.rows)

    def column(self, k: int) -> list[Scalar]:
        return [self[n, k] for n in range(k, self.size)]

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "rows": [[e.to_json_obj() for e in row] for row in self.rows]}


def _zero_like(x: Scalar) -> Scalar:
    return x * 0


def _one_like(x: Scalar) -> Scalar:
    return x * 0 + 1


def _registry_of(seq: Sequence[Scalar]) -> VarRegistry:
    for x in seq:
        return x.registry
    raise DepthError("cannot infer a registry from an empty sequence")


def _need(seq: Sequence, count: int, what: str) -> None:
    if len(seq) < count:
        raise DepthError(f"{what}: need {count} coefficients, got {len(seq)}")


# -- expansions ------------------------------------------------------------


def _motzkin_triangle(
    gammas: Sequence[Scalar],
    betas: Sequence[Scalar],
    rises: Sequence[Scalar] | None,
    n_rows: int,
    full: bool,
    one: Scalar,
) -> list[list[Scalar]]:
    """Rows 0..n_rows of J_{n,k}; with ``full=False`` only entries needed for column 0."""
    zero = one * 0
    rows = [[one]]
    for n in range(n_rows):
        prev = rows[-1]
        kmax = n + 1 if full else min(n + 1, n_rows - n - 1)
        row = []
        for k in range(kmax + 1):
            v = zero
            if k >= 1 and k - 1 < len(prev):
                v = prev[k - 1] if rises is None else rises[k - 1] * prev[k - 1]
            if k < len(prev):
                g = gammas[k]
                if g:
                    v = v + g * prev[k]
            if k + 1 < len(prev):
                v = v + betas[k] * prev[k + 1]
            row.append(v)
        rows.append(row)
    return rows


def _pad(rows: list[list[Scalar]], zero: Scalar) -> list[list[Scalar]]:
    return [row + [zero] * (n + 1 - len(row)) for n, row in enumerate(rows)]


def j_series(spec: JFractionSpec, N: int) -> list[Scalar]:
    """Coefficients J_0..J_N of the J-fraction power series."""
    _need(spec.gammas, (N + 1) // 2, "gammas")
    _need(spec.betas, N // 2, "betas")
    one = _one_like(spec.gammas[0]) if spec.gammas else _one_like(spec.betas[0]) if spec.betas else None
    if one is None:
        if N == 0:
            raise DepthError("cannot infer a registry; pass at least one coefficient")
        raise DepthError("empty spec")
    gam = list(spec.gammas) + [one * 0] * (N + 1)
    bet = list(spec.betas) + [one * 0] * (N + 1)
    rows = _motzkin_triangle(gam, bet, None, N, False, one)
    return [row[0] for row in rows]


def s_series(spec: SFractionSpec, N: int) -> list[Scalar]:
    """Coefficients S_0..S_N of the S-fraction power series (uses alpha_1..alpha_N)."""
    _need(spec.alphas, max(N, 1), "alphas")
    one = _one_like(spec.alphas[0])
    zero = one * 0
    alph = list(spec.alphas) + [zero] * (N + 2)
    # Dyck paths of length 2N: a Motzkin triangle on 2N steps with no level steps
    rows = _motzkin_triangle([zero] * (2 * N + 2), alph, None, 2 * N, False, one)
    return [rows[2 * n][0] for n in range(N + 1)]


def jr_matrix(spec: JFractionSpec, N: int) -> TriMatrix:
    """Rows 0..N of the Jacobi-Rogers triangle J_{n,k}."""
    if N == 0:
        one = _one_like(spec.gammas[0]) if spec.gammas else _one_like(spec.betas[0]) if spec.betas else 1
        return TriMatrix([[one]], "JR")
    _need(spec.gammas, N, "gammas")
    _need(spec.betas, N - 1, "betas")
    one = _one_like(spec.gammas[0])
    bet = list(spec.betas) + [one * 0] * 2
    rows = _motzkin_triangle(list(spec.gammas) + [one * 0], bet, None, N, True, one)
    return TriMatrix(_pad(rows, one * 0), "JR")


def jr_matrix_weighted(
    a: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar], N: int
) -> TriMatrix:
    """Rise-weighted triangle: rises from height i carry a[i], falls from i carry b[i-1], levels c[i]."""
    if N == 0:
        return TriMatrix([[_one_like(_first(a, b, c))]], "JR_weighted")
    _need(a, N, "a")
    _need(b, N - 1, "b")
    _need(c, N, "c")
    one = _one_like(_first(a, b, c))
    rows = _motzkin_triangle(list(c) + [one * 0], list(b) + [one * 0] * 2, list(a), N, True, one)
    return TriMatrix(_pad(rows, one * 0), "JR_weighted")


def _first(*seqs: Sequence[Scalar]) -> Scalar:
    for s in seqs:
        if s:
            return s[0]
    raise DepthError("empty coefficient sequences")


def sr_matrices(spec: SFractionSpec, N: int) -> tuple[TriMatrix, TriMatrix]:
    """Rows 0..N of S_{n,k} and S'_{n,k} (uses alpha_1..alpha_{2N})."""
    _need(spec.alphas, max(2 * N, 1), "alphas")
    one = _one_like(spec.alphas[0])
    zero = one * 0
    alph = list(spec.alphas) + [zero] * 2
    S = [[one]]
    Sp = []
    for n in range(N + 1):
        cur = S[n]
        # S'_{n,k} = S_{n,k} + alpha_{2k+2} S_{n,k+1}
        sp_row = []
        for k in range(n + 1):
            v = cur[k]
            if k + 1 <= n:
                v = v + alph[2 * k + 1] * cur[k + 1]
            sp_row.append(v)
        Sp.append(sp_row)
        if n == N:
            break
        # S_{n+1,k} = S'_{n,k-1} + alpha_{2k+1} S'_{n,k}
        nxt = []
        for k in range(n + 2):
            v = sp_row[k - 1] if k >= 1 else zero
            if k <= n:
                v = v + alph[2 * k] * sp_row[k]
            nxt.append(v)
        S.append(nxt)
    return TriMatrix(S, "SR_first"), TriMatrix(Sp, "SR_second")


def contract(spec: SFractionSpec, parity: str = "even", depth: int | None = None) -> JFractionSpec:
    """Equivalent J-fraction of an S-fraction.

    ``even`` gives the J-fraction of the same series; ``odd`` gives the one
    for the series underlying S'_{n,0}.
    """
    a = spec.alphas
    m = len(a)

    def al(i: int) -> Scalar:
        return a[i - 1]

    if parity == "even":
        levels = (m + 1) // 2 if depth is None else depth
        _need(a, 2 * levels - 1, "alphas")
        gammas = [al(1)] + [al(2 * n) + al(2 * n + 1) for n in range(1, levels) if 2 * n + 1 <= m]
        betas = [al(2 * n - 1) * al(2 * n) for n in range(1, levels + 1) if 2 * n <= m]
    elif parity == "odd":
        levels = m // 2 if depth is None else depth
        _need(a, 2 * levels, "alphas")
        gammas = [al(2 * n + 1) + al(2 * n + 2) for n in range(levels) if 2 * n + 2 <= m]
        betas = [al(2 * n) * al(2 * n + 1) for n in range(1, levels + 1) if 2 * n + 1 <= m]
    else:
        raise ValueError("parity must be 'even' or 'odd'")
    return JFractionSpec(gammas, betas)


# -- extraction ------------------------------------------------------------


def _as_rat(x: Scalar, reg: VarRegistry) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MultiPoly):
        return RatFunc(x)
    return RatFunc(reg.const(int(x)))


def series_to_j(series: Sequence[Scalar], depth: int | None = None) -> JFractionSpec:
    """J-fraction coefficients of a power series with constant term 1.

    Coefficient t^{2k+1} determines gamma_k and t^{2k} determines beta_k.  The
    lower-triangular table J_{n,k} is rebuilt column by column from column 0,
    dividing by each new beta.  A vanishing beta ends the fraction (returned
    spec is shorter) provided the remaining data is consistent with that.
    """
    reg = _registry_of([x for x in series if isinstance(x, (MultiPoly, RatFunc))])
    m = [_as_rat(x, reg) for x in series]
    if not m or m[0] != 1:
        raise ValueError("series must start with constant term 1")
    N = len(m) - 1
    n_gam = (N + 1) // 2 if depth is None else min(depth, (N + 1) // 2)
    n_bet = N // 2 if depth is None else min(depth, N // 2)
    one = RatFunc(reg.one())
    zero = one * 0
    gammas: list[RatFunc] = []
    betas: list[RatFunc] = []
    prev: list[RatFunc] = [zero] * (N + 1)  # column k-1, indexed by row
    col = m[:]  # column k
    k = 0
    while True:
        if k >= n_gam:
            break
        g = col[k + 1] - prev[k]
        gammas.append(g)
        if k + 1 > n_bet:
            break
        # column k is known on rows k..N-k; residual[n] = beta_{k+1} J_{n,k+1}
        residual = {n: col[n + 1] - prev[n] - g * col[n] for n in range(k + 1, N - k)}
        b = residual[k + 1]
        if b.is_zero():
            if any(not r.is_zero() for r in residual.values()):
                raise NotRegular(k + 1)
            break
        betas.append(b)
        nxt = [zero] * (N + 1)
        nxt[k + 1] = one
        for n in range(k + 2, N - k):
            nxt[n] = residual[n] / b
        prev, col = col, nxt
        k += 1
    return JFractionSpec(gammas, betas)


def series_to_s(series: Sequence[Scalar], depth: int | None = None) -> SFractionSpec:
    """S-fraction coefficients alpha_1.. of a power series with constant term 1.

    Works by J-extraction of the even series sum S_n t^{2n}: its level weights
    vanish and its fall weights are the alphas.
    """
    reg = _registry_of([x for x in series if isinstance(x, (MultiPoly, RatFunc))])
    zero = RatFunc(reg.zero())
    spread: list[Scalar] = []
    for i, x in enumerate(series):
        if i:
            spread.append(zero)
        spread.append(x)
    spec = series_to_j(spread, None if depth is None else depth)
    alphas = list(spec.betas)
    if depth is not None:
        alphas = alphas[:depth]
    return SFractionSpec(alphas)
