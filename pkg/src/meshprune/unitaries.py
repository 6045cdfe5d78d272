"""Dense complex unitary utilities.

Haar-random sampling, unitarity checks, and the fidelity / cost metrics
between an operator and a defective (pruned or noisy) version of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngSeed:
    """Address of a reproducible random stream.

    The same (base_seed, stream_index) pair always yields a bit-identical
    stream, independent of when or where it is drawn, so ensembles can be
    generated in any order (or in parallel) without losing reproducibility.
    """

    base_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if self.base_seed < 0 or self.stream_index < 0:
            raise ValueError("seed components must be non-negative integers")

    def stream(self, index: int) -> "RngSeed":
        """Child seed for stream `index` under the same base seed."""
        return RngSeed(self.base_seed, index)

    def generator(self) -> np.random.Generator:
        # SeedSequence hashes the (base, stream) pair into independent state.
        ss = np.random.SeedSequence([int(self.base_seed), int(self.stream_index)])
        return np.random.default_rng(ss)


def as_seed(seed) -> RngSeed:
    """Coerce an int or RngSeed into an RngSeed."""
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))


def haar_random_unitary(n: int, seed) -> np.ndarray:
    """Draw an n x n unitary from the Haar measure on U(n).

    A complex Gaussian matrix is orthonormalized by QR, then the columns are
    rescaled so the triangular factor has a positive real diagonal; without
    that phase correction the QR sign convention biases the distribution.

    Args:
        n: matrix dimension, >= 1.
        seed: RngSeed or int.

    Returns:
        (n, n) complex128 array with unitarity_error <= 1e-12.
    """
    if n < 1:
        raise ValueError(f"matrix dimension must be >= 1, got {n}")
    rng = as_seed(seed).generator()
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def unitarity_error(u: np.ndarray) -> float:
    """Frobenius norm of U^dag U - I; zero iff U is exactly unitary."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    n = u.shape[0]
    return float(np.linalg.norm(u.conj().T @ u - np.eye(n)))


def fidelity(u_defective: np.ndarray, u_original: np.ndarray) -> float:
    """Normalized trace overlap between an operator and its defective version.

        F = 2 Re Tr[U_D^dag U_O] / (N + Tr[U_D^dag U_D])

    F = 1 iff U_D equals U_O; F <= 1 always when U_O is unitary (the
    denominator bounds the numerator because the elementwise squared
    distance between the matrices is non-negative). U_D may be nonunitary.
    """
    u_d, u_o = _check_pair(u_defective, u_original)
    n = u_o.shape[0]
    num = 2.0 * float(np.real(np.vdot(u_d, u_o)))
    den = n + float(np.real(np.vdot(u_d, u_d)))
    return num / den


def cost_j(u_defective: np.ndarray, u_original: np.ndarray) -> float:
    """Mean squared elementwise distance, (1/N^2) sum |U_O - U_D|^2."""
    u_d, u_o = _check_pair(u_defective, u_original)
    n = u_o.shape[0]
    return float(np.sum(np.abs(u_o - u_d) ** 2)) / n**2


def _check_pair(u_d, u_o):
    u_d = np.asarray(u_d, dtype=np.complex128)
    u_o = np.asarray(u_o, dtype=np.complex128)
    if u_o.ndim != 2 or u_o.shape[0] != u_o.shape[1]:
        raise ValueError(f"expected square matrices, got shape {u_o.shape}")
    if u_d.shape != u_o.shape:
        raise ValueError(f"dimension mismatch: {u_d.shape} vs {u_o.shape}")
    return u_d, u_o


# --- JSON wire format ------------------------------------------------------
#
# Matrices serialize as {"n": int, "re": [[...]], "im": [[...]]} with floats
# printed at 17 significant digits so a double round-trips exactly.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_rows(a: np.ndarray) -> str:
    rows = ("[" + ", ".join(_fmt(x) for x in row) + "]" for row in a)
    return "[" + ", ".join(rows) + "]"


def matrix_to_json(u: np.ndarray) -> str:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    return '{"n": %d, "re": %s, "im": %s}' % (
        u.shape[0],
        _fmt_rows(u.real),
        _fmt_rows(u.imag),
    )


def matrix_from_json(text: str) -> np.ndarray:
    obj = json.loads(text)
    n = int(obj["n"])
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj["im"], dtype=np.float64)
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError("matrix JSON has inconsistent dimensions")
    return re + 1j * im
