"""The sequence F_0 = 0, F_1 = 1, F_n = a F_{n-1} + b F_{n-2} over F_q[x].

Besides streaming, exact and matrix-power evaluation, this module holds the
brute-force oracle for the rank, period and beta modulo M.  The oracle
checks every index in order; for speed it advances the pair state as an
F_p-linear map, a whole block of consecutive indices per numpy matmul.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .algebra import Poly, gcd
from .errors import BNotCoprime, DegreeCapExceeded, ScanBoundExceeded, SpecMismatch
from .quotient import Residue, ResidueRing, companion, mat2_pow

DEFAULT_DEGREE_CAP = 20000
_BLOCK = 1024


@dataclass(frozen=True)
class SeqParams:
    """The pair (a, b) with b != 0, plus the cached dichotomies on them."""

    a: Poly
    b: Poly

    def __post_init__(self):
        if self.a.spec != self.b.spec:
            raise SpecMismatch("a and b must share a field")
        if not self.b:
            raise ValueError("b must be nonzero")

    @property
    def spec(self):
        return self.a.spec

    @cached_property
    def delta(self) -> Poly:
        return self.a * self.a + self.b * 4

    @cached_property
    def delta_is_zero(self) -> bool:
        return not self.delta

    @cached_property
    def ratio(self) -> int | None:
        """Code of the constant a^2/b when it lies in F_q, else None."""
        quo, rem = divmod(self.a * self.a, self.b)
        if rem or quo.deg > 0:
            return None
        return quo.lead

    @property
    def ratio_in_Fq(self) -> bool:
        return self.ratio is not None

    @cached_property
    def constants_only(self) -> bool:
        return self.a.deg <= 0 and self.b.deg <= 0

    def coprime_to(self, M: Poly) -> bool:
        return gcd(self.b, M).is_one()

    def require_coprime(self, M: Poly) -> None:
        if not self.coprime_to(M):
            raise BNotCoprime(f"gcd(b, M) != 1 for b = {self.b}, M = {M}")


def fib_stream(params: SeqParams, M: Poly) -> Iterator[Residue]:
    """Yield F_0, F_1, F_2, ... reduced mod M, forever."""
    ring = ResidueRing(M)
    mod = ring.modulus
    a, b = params.a % mod, params.b % mod
    prev, cur = Poly.zero(params.spec), Poly.one(params.spec) % mod
    while True:
        yield Residue(ring, prev)
        prev, cur = cur, (a * cur + b * prev) % mod


def fib_exact(params: SeqParams, n: int, cap: int = DEFAULT_DEGREE_CAP) -> Poly:
    """The exact polynomial F_n, refusing when its degree could exceed ``cap``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    step = max(params.a.deg if params.a else 0, math.ceil(params.b.deg / 2))
    if max(n - 1, 0) * step > cap:
        raise DegreeCapExceeded(f"F_{n} may reach degree {(n - 1) * step} > cap {cap}")
    a, b = params.a, params.b
    prev, cur = Poly.zero(params.spec), Poly.one(params.spec)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, a * cur + b * prev
    return cur


def fib_pair_at(params: SeqParams, n: int, M: Poly) -> tuple[Residue, Residue]:
    """(F_n, F_{n+1}) mod M from the matrix power U^n."""
    ring = ResidueRing(M)
    if n == 0:
        return ring.zero(), ring.one()
    Un = mat2_pow(companion(params.a, params.b, ring), n)
    return Un.m01, Un.m11


@dataclass(frozen=True)
class OracleReport:
    alpha: int
    pi: int
    beta: int
    s: Residue


# -- brute force -------------------------------------------------------------


def _to_coords(f: Poly, D: int) -> list[int]:
    spec = f.spec
    out = []
    for i in range(D):
        v = f.c[i] if i < len(f.c) else 0
        out.extend((v // spec.p**j) % spec.p for j in range(spec.l))
    return out


def _from_coords(vec, spec, D: int) -> Poly:
    l, p = spec.l, spec.p
    codes = []
    for i in range(D):
        codes.append(sum(int(vec[i * l + j]) * p**j for j in range(l)))
    return Poly(spec, codes)


def _mult_matrix(m: Poly, M: Poly) -> np.ndarray:
    spec = m.spec
    D = M.deg
    cols = []
    for i in range(D):
        for j in range(spec.l):
            basis = Poly.monomial(spec, i, spec.p**j)
            cols.append(_to_coords(m * basis % M, D))
    return np.array(cols, dtype=np.float64).T


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.mod(A @ B, p)


def _matpow_mod(A: np.ndarray, n: int, p: int) -> np.ndarray:
    result = np.eye(A.shape[0])
    while n:
        if n & 1:
            result = _matmul_mod(result, A, p)
        n >>= 1
        if n:
            A = _matmul_mod(A, A, p)
    return result


def _scan_blocks(params: SeqParams, M: Poly, bound: int):
    spec = params.spec
    p, D = spec.p, M.deg
    N = D * spec.l
    A = np.zeros((2 * N, 2 * N))
    A[:N, N:] = np.eye(N)
    A[N:, :N] = _mult_matrix(params.b % M, M)
    A[N:, N:] = _mult_matrix(params.a % M, M)
    one = np.array(_to_coords(Poly.one(spec), D), dtype=np.float64)

    block = int(min(_BLOCK, bound + 1))
    S = np.zeros((2 * N, block))
    S[N, 0] = 1.0  # (F_0, F_1) = (0, 1)
    k, Ak = 1, A
    while k < block:
        w = min(k, block - k)
        S[:, k : k + w] = _matmul_mod(Ak, S[:, :w], p)
        k += w
        if k < block:
            Ak = _matmul_mod(Ak, Ak, p)
    G = _matpow_mod(A, block, p)

    alpha = s_vec = None
    base = 0
    while base <= bound:
        idx = np.flatnonzero(~S[:N].any(axis=0))
        if base == 0:
            idx = idx[idx > 0]
        if idx.size:
            if alpha is None:
                alpha = base + int(idx[0])
                s_vec = S[N:, idx[0]].copy()
            hit = idx[(S[N:, idx] == one[:, None]).all(axis=0)]
            if hit.size:
                return alpha, base + int(hit[0]), _from_coords(s_vec, spec, D)
        S = _matmul_mod(G, S, p)
        base += block
    raise ScanBoundExceeded(f"no period found below {bound}")


def _scan_stream(params: SeqParams, M: Poly, bound: int):
    alpha = s = None
    prev = None
    for n, r in enumerate(fib_stream(params, M)):
        if n > bound + 1:
            break
        if prev is not None and n >= 2 and prev.is_zero():
            m = n - 1
            if alpha is None:
                alpha, s = m, r.rep
            if r.is_one():
                return alpha, m, s
        prev = r
    raise ScanBoundExceeded(f"no period found below {bound}")


def _blocks_exact(params: SeqParams, M: Poly) -> bool:
    # float64 matmul is exact while every dot product stays below 2^53
    spec = params.spec
    dim = 2 * M.deg * spec.l
    return dim * (spec.p - 1) ** 2 < 2**52


def oracle(params: SeqParams, M: Poly, method: str = "auto") -> OracleReport:
    """Rank, period and beta mod M by scanning indices 1, 2, 3, ... in order.

    ``method`` is ``"blocks"`` (numpy, default when exact), ``"stream"``
    (pure Python, one index at a time) or ``"auto"``.
    """
    if M.deg < 1:
        raise ValueError("oracle needs deg M >= 1")
    params.require_coprime(M)
    M = M.monic()
    bound = params.spec.q ** (2 * M.deg)
    if method == "auto":
        method = "blocks" if _blocks_exact(params, M) else "stream"
    if method == "blocks":
        alpha, pi, s = _scan_blocks(params, M, bound)
    elif method == "stream":
        alpha, pi, s = _scan_stream(params, M, bound)
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    return OracleReport(alpha, pi, pi // alpha, ResidueRing(M)(s))
