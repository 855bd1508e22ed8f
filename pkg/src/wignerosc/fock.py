"""Canonical quantization as a truncated boson Fock-space matrix model.

When the canonical commutation relations are imposed, the mode
operators become ordinary boson ladder operators and the Hamiltonian
is hbar/2 * sum_j sqrt(mu_j) {a_j^+, a_j^-}. This module realizes the
n-mode ladder algebra as dense matrices with a per-mode occupation
cutoff K, verifies the ladder identities [H, a_j^+-] = +-hbar sqrt(mu_j)
a_j^+- as matrix identities, rebuilds the position and momentum
observables of the original chain, and exposes the closed-form Fock
spectrum hbar (E_0 + sum_j k_j sqrt(mu_j)).

Truncation corrupts exactly the top rung of each mode, so every
identity is asserted only between "interior" states (all occupations
at most K - 2).

Real-matrix convention: a_j^+- and hence position operators are real;
momentum operators are purely imaginary, p = i * W with W real
antisymmetric. Commutator identities involving i are therefore checked
as identities between real matrices (the i factors cancel; signs are
noted where each identity is formed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import groupby, product

import numpy as np

from .errors import ResourceLimitError
from .levels import SpectrumLine, merge_lines
from .osp_spectrum import GZPattern
from .spectral import InteractionModel, ModeFrequencies, SpectralDecomposition

__all__ = [
    "FockBasisState",
    "TruncatedOperatorSet",
    "CompatibilityReport",
    "ReconstructedObservables",
    "build_fock_operators",
    "verify_compatibility",
    "fock_spectrum",
    "gz_to_fock",
    "reconstruct_observables",
]

_STATE_LIMIT = 10 ** 6


@dataclass(frozen=True, order=True)
class FockBasisState:
    """Occupation-number state |k_1, ..., k_n> with per-mode cutoff K (all k_j < K)."""

    occupations: tuple[int, ...]
    cutoff: int

    def __post_init__(self) -> None:
        occ = tuple(int(k) for k in self.occupations)
        object.__setattr__(self, "occupations", occ)
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")
        if any(k < 0 or k >= self.cutoff for k in occ):
            raise ValueError("occupations must lie in [0, cutoff)")

    @property
    def index(self) -> int:
        """Mixed-radix state index, first mode most significant."""
        idx = 0
        for k in self.occupations:
            idx = idx * self.cutoff + k
        return idx


@dataclass(frozen=True)
class TruncatedOperatorSet:
    """Dense matrices for the n-mode ladder algebra at per-mode cutoff K.

    ``a_minus[j]`` is the transpose of ``a_plus[j]`` (real entries), the
    Hamiltonian ``h`` is symmetric, and ``interior`` flags the states on
    which the algebra is exact (all occupations <= K - 2).
    """

    n: int
    cutoff: int
    hbar: float
    sqrt_mu: np.ndarray
    a_plus: tuple[np.ndarray, ...]
    a_minus: tuple[np.ndarray, ...]
    h: np.ndarray
    interior: np.ndarray
    occupations: np.ndarray  # state-index -> occupation vector

    @property
    def dim(self) -> int:
        return self.h.shape[0]

    @property
    def interior_dim(self) -> int:
        return int(self.interior.sum())


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    a = np.zeros((cutoff, cutoff))
    for k in range(1, cutoff):
        a[k - 1, k] = np.sqrt(k)
    return a


def build_fock_operators(n: int, freqs: ModeFrequencies, cutoff: int,
                         hbar: float = 1.0) -> TruncatedOperatorSet:
    """Assemble ladder matrices and the Hamiltonian h = sum_j hbar sqrt(mu_j)/2 {a_j^+, a_j^-}.

    The anticommutator is evaluated through the number operator,
    {a^+, a^-} = 2 a^+ a^- + 1, which is exact on every matrix element
    between truncated basis states; multiplying the truncated factors
    directly would instead zero the a^- a^+ term on the top rung and
    corrupt the highest diagonal entries. Refuses cutoff**n beyond one
    million states (desk-scale guard).
    """
    if freqs.n != n:
        raise ValueError("mode count disagrees with n")
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    if cutoff ** n > _STATE_LIMIT:
        raise ResourceLimitError(
            f"cutoff**n = {cutoff ** n} exceeds the {_STATE_LIMIT}-state guard")

    lower = _single_mode_lowering(cutoff)
    a_minus = []
    for j in range(n):
        op = np.kron(np.kron(np.eye(cutoff ** j), lower), np.eye(cutoff ** (n - j - 1)))
        a_minus.append(op)
    a_plus = [op.T.copy() for op in a_minus]

    dim = cutoff ** n
    h = np.zeros((dim, dim))
    eye = np.eye(dim)
    for j in range(n):
        h += hbar * freqs.sqrt_mu[j] * (a_plus[j] @ a_minus[j] + 0.5 * eye)

    occupations = np.array(list(product(range(cutoff), repeat=n)), dtype=int)
    interior = np.all(occupations <= cutoff - 2, axis=1)
    return TruncatedOperatorSet(n=n, cutoff=cutoff, hbar=hbar,
                                sqrt_mu=np.array(freqs.sqrt_mu),
                                a_plus=tuple(a_plus), a_minus=tuple(a_minus),
                                h=h, interior=interior, occupations=occupations)


def _interior_max(matrix: np.ndarray, mask: np.ndarray) -> float:
    sub = matrix[np.ix_(mask, mask)]
    return float(np.abs(sub).max()) if sub.size else 0.0


@dataclass(frozen=True)
class CompatibilityReport:
    """Interior residuals of the ladder identities [h, a_j^+-] -+ hbar sqrt(mu_j) a_j^+-."""

    cutoff: int
    interior_dim: int
    raising_residuals: tuple[float, ...]
    lowering_residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.raising_residuals + self.lowering_residuals)

    def to_json(self) -> str:
        identities = []
        for j, res in enumerate(self.raising_residuals):
            identities.append({"identity": "ladder_commutator", "mode": j + 1,
                               "sign": "+", "residual": res})
        for j, res in enumerate(self.lowering_residuals):
            identities.append({"identity": "ladder_commutator", "mode": j + 1,
                               "sign": "-", "residual": res})
        return json.dumps({"cutoff": self.cutoff, "interior_dimension": self.interior_dim,
                           "identities": identities}, indent=2) + "\n"


def verify_compatibility(ops: TruncatedOperatorSet) -> CompatibilityReport:
    """Measure the ladder identities on interior states; thresholds are the caller's."""
    plus, minus = [], []
    for j in range(ops.n):
        shift = ops.hbar * ops.sqrt_mu[j]
        rp = ops.h @ ops.a_plus[j] - ops.a_plus[j] @ ops.h - shift * ops.a_plus[j]
        rm = ops.h @ ops.a_minus[j] - ops.a_minus[j] @ ops.h + shift * ops.a_minus[j]
        plus.append(_interior_max(rp, ops.interior))
        minus.append(_interior_max(rm, ops.interior))
    return CompatibilityReport(cutoff=ops.cutoff, interior_dim=ops.interior_dim,
                               raising_residuals=tuple(plus),
                               lowering_residuals=tuple(minus))


def fock_spectrum(n: int, freqs: ModeFrequencies, hbar: float = 1.0,
                  k_total_max: int = 3) -> list[SpectrumLine]:
    """Levels hbar (E_0 + sum_j k_j sqrt(mu_j)) over occupations with sum k_j <= k_total_max.

    E_0 = (1/2) sum_j sqrt(mu_j). Multiplicities are exact: occupation
    vectors are grouped by their total occupation per distinct mode
    frequency, so coinciding frequencies (e.g. zero coupling) merge
    without any floating comparison. With hbar = 1 the energies match
    the units-of-hbar convention of the algebraic spectra.
    """
    if freqs.n != n:
        raise ValueError("mode count disagrees with n")
    if k_total_max < 0:
        raise ValueError("k_total_max must be non-negative")
    # modes sharing a frequency are interchangeable; record index groups
    groups = [[i for i, _ in grp]
              for _, grp in groupby(enumerate(freqs.mu), key=lambda t: t[1])]
    e0 = 0.5 * float(freqs.sqrt_mu.sum())

    classes: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    for occ in _occupations_up_to(n, k_total_max):
        key = tuple(sum(occ[i] for i in grp) for grp in groups)
        count, rep = classes.get(key, (0, occ))
        classes[key] = (count + 1, rep)

    raw = []
    for count, rep in classes.values():
        energy = hbar * (e0 + float(np.dot(rep, freqs.sqrt_mu)))
        raw.append((energy, count, rep))
    return merge_lines(raw, merge_tol=0.0)


def _occupations_up_to(n: int, total_max: int):
    """Occupation vectors with sum <= total_max, lexicographic order."""
    def gen(slots: int, budget: int):
        if slots == 0:
            yield ()
            return
        for first in range(budget + 1):
            for rest in gen(slots - 1, budget - first):
                yield (first,) + rest
    return gen(n, total_max)


def gz_to_fock(pattern: GZPattern) -> FockBasisState:
    """Occupation state matching a single-column pattern: k_j = m_j - m_{j-1}.

    Only patterns of the p = 1 shape (one value per row, all other
    entries zero) correspond to Fock states; anything else is rejected.
    """
    n = pattern.n
    for j in range(2, n + 1):
        if any(x != 0 for x in pattern.row(j)[1:]):
            raise ValueError("pattern is not single-column (p = 1 shape)")
    m = [pattern.row(j)[0] for j in range(1, n + 1)]
    occ = tuple(m[j] - (m[j - 1] if j else 0) for j in range(n))
    return FockBasisState(occupations=occ, cutoff=max(occ, default=0) + 1)


@dataclass(frozen=True)
class ReconstructedObservables:
    """Position and momentum matrices of the original chain, with identity residuals.

    ``q[r]`` is real symmetric; the momentum operator is i * w[r] with
    ``w[r]`` real antisymmetric. Residuals are interior-restricted
    max-norms of:

    * position identity  [h, q_r] - (hbar/m) w_r          (from [H, q_r] = -(i hbar/m) p_r,
      substituting p_r = i w_r: the i factors cancel, the sign flips),
    * momentum identity  [h, w_r] - hbar m sum_s A_rs q_s (from [H, p_r] = i hbar m sum A q),
    * pairing            [q_r, w_s] - hbar delta_rs I     (from [q_r, p_s] = i hbar delta).
    """

    q: tuple[np.ndarray, ...]
    w: tuple[np.ndarray, ...]
    position_cc_residuals: tuple[float, ...]
    momentum_cc_residuals: tuple[float, ...]
    pairing_residual: float
    max_q_asymmetry: float
    max_w_symmetry: float


def reconstruct_observables(decomp: SpectralDecomposition, ops: TruncatedOperatorSet,
                            model: InteractionModel) -> ReconstructedObservables:
    """Invert the mode-operator definition and map back through the eigenvector matrix.

    Normal-mode operators: Q_j = sqrt(hbar/(2 m sqrt(mu_j))) (a_j^+ + a_j^-) and
    P_j = i sqrt(hbar m sqrt(mu_j)/2) (a_j^+ - a_j^-); original-chain operators
    are q = U Q and p = U P. Raises if the operator set was built for
    different mode frequencies than (decomp, model) imply.
    """
    n = model.n
    if decomp.n != n or ops.n != n:
        raise ValueError("decomposition, operators and model sizes disagree")
    expected = np.sqrt(model.omega ** 2 + model.c * decomp.lambdas)
    if float(np.abs(expected - ops.sqrt_mu).max()) > 1e-12 * (1.0 + float(expected.max())):
        raise ValueError("operator set was built for different mode frequencies")

    hbar, mass = ops.hbar, model.mass
    q_modes = [np.sqrt(hbar / (2.0 * mass * ops.sqrt_mu[j])) * (ops.a_plus[j] + ops.a_minus[j])
               for j in range(n)]
    w_modes = [np.sqrt(hbar * mass * ops.sqrt_mu[j] / 2.0) * (ops.a_plus[j] - ops.a_minus[j])
               for j in range(n)]
    u = decomp.u
    q = tuple(sum(u[r, j] * q_modes[j] for j in range(n)) for r in range(n))
    w = tuple(sum(u[r, j] * w_modes[j] for j in range(n)) for r in range(n))

    a_matrix = model.omega ** 2 * np.eye(n) + model.c * (u @ np.diag(decomp.lambdas) @ u.T)
    mask = ops.interior
    h = ops.h

    pos_res, mom_res = [], []
    pairing = 0.0
    for r in range(n):
        pos = h @ q[r] - q[r] @ h - (hbar / mass) * w[r]
        pos_res.append(_interior_max(pos, mask))
        forced = hbar * mass * sum(a_matrix[r, s] * q[s] for s in range(n))
        mom = h @ w[r] - w[r] @ h - forced
        mom_res.append(_interior_max(mom, mask))
        for s in range(n):
            pair = q[r] @ w[s] - w[s] @ q[r]
            if r == s:
                pair = pair - hbar * np.eye(ops.dim)
            pairing = max(pairing, _interior_max(pair, mask))

    return ReconstructedObservables(
        q=q, w=w,
        position_cc_residuals=tuple(pos_res),
        momentum_cc_residuals=tuple(mom_res),
        pairing_residual=pairing,
        max_q_asymmetry=max(float(np.abs(m - m.T).max()) for m in q),
        max_w_symmetry=max(float(np.abs(m + m.T).max()) for m in w),
    )
