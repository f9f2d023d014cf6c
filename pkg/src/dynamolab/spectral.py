"""Dense eigensolves, conjugate-pair classification, and Jordan-chain probing.

The assembled dynamo matrix is real, so its spectrum is closed under complex
conjugation; J-symmetry sharpens that statement to "real or conjugate pairs".
This module computes spectra with a standard dense nonsymmetric solver,
classifies each eigenvalue as real or as one partner of a conjugate pair, and
provides a diagnostic probe for Jordan-Keldysh chains (eigenvector plus
associated vector) near two-fold degeneracies.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import ClassificationError, ShapeError, SolverError
from .operator import DynamoMatrix

REAL_TAG = -1


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by (Re desc, Im desc), optional eigenvectors, pair tags.

    pair_index[i] is REAL_TAG (-1) for a real eigenvalue and the index of the
    conjugate partner otherwise; None until classify_pairs has run.
    """

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    pair_index: Optional[np.ndarray]
    pair_tol: Optional[float]

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    def labels(self) -> list[str]:
        if self.pair_index is None:
            raise ClassificationError("spectrum has not been classified yet")
        return ["Real" if k == REAL_TAG else "Pair" for k in self.pair_index]

    def leading(self, count: int) -> np.ndarray:
        return self.eigenvalues[:count]


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DynamoMatrix):
        return m.matrix
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


_RESIDUAL_BOUND = 1e-8


def eigen(m, want_vectors: bool = False) -> Spectrum:
    """Full spectrum of a dynamo matrix (or any square array), deterministically sorted.

    With want_vectors the columns of ``eigenvectors`` match the sorted
    eigenvalues and are verified against the residual contract
    ||M v - lambda v|| <= 1e-8 ||M|| ||v||.
    """
    a = _as_matrix(m)
    try:
        if want_vectors:
            vals, vecs = scipy.linalg.eig(a)
        else:
            vals = scipy.linalg.eigvals(a)
            vecs = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise SolverError(f"dense eigensolver did not converge: {exc}") from exc
    order = np.lexsort((-vals.imag, -vals.real))
    vals = vals[order]
    vals.setflags(write=False)
    if vecs is not None:
        vecs = vecs[:, order]
        vecs.setflags(write=False)
        norm_m = np.linalg.norm(a, np.inf)
        resid = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
        bound = _RESIDUAL_BOUND * norm_m * np.linalg.norm(vecs, axis=0)
        worst = int(np.argmax(resid - bound))
        if resid[worst] > bound[worst]:
            raise SolverError(
                f"eigenpair residual contract violated: ||Mv-lv||={resid[worst]:.3e} "
                f"> {bound[worst]:.3e} at eigenvalue {vals[worst]!r}"
            )
    return Spectrum(eigenvalues=vals, eigenvectors=vecs, pair_index=None, pair_tol=None)


def classify_pairs(spec: Spectrum, pair_tol: float) -> Spectrum:
    """Tag each eigenvalue Real or as one half of a conjugate pair.

    Greedy nearest-conjugate matching with ties broken by smallest index; an
    eigenvalue with |Im| > pair_tol and no partner within pair_tol raises
    ClassificationError (impossible for exactly real matrices unless the
    tolerance is misconfigured).
    """
    if pair_tol <= 0:
        raise ClassificationError(f"pair_tol must be positive, got {pair_tol}")
    vals = spec.eigenvalues
    n = vals.shape[0]
    tags = np.full(n, REAL_TAG, dtype=int)
    unmatched = [i for i in range(n) if abs(vals[i].imag) > pair_tol]
    open_set = set(unmatched)
    for i in unmatched:
        if i not in open_set:
            continue
        open_set.discard(i)
        best = None
        best_d = np.inf
        for j in sorted(open_set):
            d = abs(vals[i] - np.conj(vals[j]))
            if d < best_d - 0.0:
                best_d = d
                best = j
        if best is None or best_d > pair_tol:
            raise ClassificationError(
                f"unpaired complex eigenvalue {vals[i]!r} "
                f"(nearest conjugate distance {best_d:.3e}, pair_tol {pair_tol:.3e})"
            )
        open_set.discard(best)
        tags[i] = best
        tags[best] = i
    return replace(spec, pair_index=tags, pair_tol=pair_tol)


@dataclass(frozen=True)
class JordanProbe:
    """Diagnostic record for a candidate Jordan-Keldysh chain at lambda0.

    chain_residual near zero means an associated vector chi with
    (M - lambda0) chi = psi exists to working precision; near one means the
    eigenvector is isolated (no chain).  No verdict is attached: thresholds
    belong to the caller.
    """

    lambda0: complex
    eigvec_residual: float
    chain_residual: float
    chain_vector: np.ndarray


_JORDAN_RCOND = 1e-8


def jordan_probe(m, lambda0: complex, psi: np.ndarray, rcond: float = _JORDAN_RCOND) -> JordanProbe:
    """Solve (M - lambda0) chi = psi by rank-revealing least squares.

    Singular directions below rcond * sigma_max are projected out, so chi is
    the minimum-norm solution restricted to the numerically well-posed
    subspace; residuals are reported relative to ||psi||.
    """
    a = _as_matrix(m).astype(complex)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (a.shape[0],):
        raise ShapeError(f"psi must have length {a.shape[0]}, got shape {psi.shape}")
    norm_psi = np.linalg.norm(psi)
    if norm_psi == 0:
        raise ShapeError("psi must be nonzero")
    shifted = a - lambda0 * np.eye(a.shape[0])
    eig_res = float(np.linalg.norm(shifted @ psi) / norm_psi)
    u, s, vh = np.linalg.svd(shifted)
    keep = s > rcond * (s[0] if s[0] > 0 else 1.0)
    coeff = (u.conj().T @ psi)[keep] / s[keep]
    chi = vh.conj().T[:, keep] @ coeff
    chain_res = float(np.linalg.norm(shifted @ chi - psi) / norm_psi)
    return JordanProbe(
        lambda0=complex(lambda0),
        eigvec_residual=eig_res,
        chain_residual=chain_res,
        chain_vector=chi,
    )
