"""Two-component Cartan spinors and their correspondence with orthonormal triads.

A spinor is stored as a complex array of shape ``(..., 2)`` holding
``(phi1, phi2)``.  A triad is a real array of shape ``(..., 3, 3)`` whose rows
are the vectors ``a``, ``b``, ``c``.  Every function accepts a leading batch
dimension.
"""

import numpy as np

from .errors import DegenerateSpinorError, InvalidTriadError

# Cartan's symmetric (not Hermitian) sigma triple; sigma2 = i * identity.
SIGMA = np.array(
    [
        [[1.0, 0.0], [0.0, -1.0]],
        [[1.0j, 0.0], [0.0, 1.0j]],
        [[0.0, -1.0], [-1.0, 0.0]],
    ],
    dtype=complex,
)

TRIAD_TOL = 1e-9


def as_spinor(phi):
    phi = np.asarray(phi, dtype=complex)
    if phi.shape[-1:] != (2,):
        raise ValueError(f"spinor must have trailing dimension 2, got shape {phi.shape}")
    if not np.all(np.isfinite(phi)):
        raise ValueError("spinor components must be finite")
    return phi


def mate(phi):
    """Return the mate ``(-conj(phi2), conj(phi1))``."""
    phi = as_spinor(phi)
    out = np.empty_like(phi)
    out[..., 0] = -np.conj(phi[..., 1])
    out[..., 1] = np.conj(phi[..., 0])
    return out


def norm(phi):
    """``|phi1|^2 + |phi2|^2``; equals the common length of the triad vectors."""
    phi = as_spinor(phi)
    return np.sum(phi.real**2 + phi.imag**2, axis=-1)


def sigma_bilinear(psi, phi):
    """The complex 3-vector ``psi^t sigma phi`` (no complex conjugation)."""
    return np.einsum("...i,kij,...j->...k", as_spinor(psi), SIGMA, as_spinor(phi))


def spinor_to_triad(phi):
    """Map a spinor to its triad ``(a, b, c)``.

    ``a + ib = phi^t sigma phi`` and ``c = -mate(phi)^t sigma phi``, written out
    componentwise.  The vectors are mutually orthogonal with common length
    ``norm(phi)`` and positive orientation.
    """
    phi = as_spinor(phi)
    if np.any(norm(phi) == 0.0):
        raise DegenerateSpinorError("degenerate spinor: zero spinor has no triad")
    p1, p2 = phi[..., 0], phi[..., 1]
    w = np.stack([p1**2 - p2**2, 1j * (p1**2 + p2**2), -2.0 * p1 * p2], axis=-1)
    c = np.stack(
        [
            (p1 * np.conj(p2) + np.conj(p1) * p2).real,
            (1j * (np.conj(p2) * p1 - np.conj(p1) * p2)).real,
            np.abs(p1) ** 2 - np.abs(p2) ** 2,
        ],
        axis=-1,
    )
    return np.stack([w.real, w.imag, c], axis=-2)


def triad_defect(triad):
    """Largest deviation of a triad from orthonormality, per batch element."""
    triad = np.asarray(triad, dtype=float)
    gram = triad @ np.swapaxes(triad, -1, -2)
    return np.max(np.abs(gram - np.eye(3)), axis=(-2, -1))


def check_triad(triad, tol=TRIAD_TOL):
    triad = np.asarray(triad, dtype=float)
    if triad.shape[-2:] != (3, 3):
        raise InvalidTriadError(f"invalid triad: expected shape (..., 3, 3), got {triad.shape}")
    if not np.all(np.isfinite(triad)):
        raise InvalidTriadError("invalid triad: non-finite components")
    if np.any(triad_defect(triad) > tol):
        raise InvalidTriadError("invalid triad: vectors are not orthonormal")
    if np.any(np.linalg.det(triad) <= 0.0):
        raise InvalidTriadError("invalid triad: negatively oriented")
    return triad


def _canonical_sign(phi):
    """Flip each spinor so its first non-negligible real coordinate is positive.

    Coordinates are inspected in the order Re(phi1), Im(phi1), Re(phi2), Im(phi2).
    """
    coords = np.stack([phi[..., 0].real, phi[..., 0].imag, phi[..., 1].real, phi[..., 1].imag], -1)
    significant = np.abs(coords) > 1e-12
    first = np.argmax(significant, axis=-1)
    lead = np.take_along_axis(coords, first[..., None], axis=-1)[..., 0]
    sign = np.where(lead < 0.0, -1.0, 1.0)
    return phi * sign[..., None]


def triad_to_spinor(triad, tol=TRIAD_TOL):
    """Recover the two spinors ``(phi, -phi)`` that map to a unit triad.

    ``phi`` is the canonical representative (see ``_canonical_sign``).
    """
    triad = check_triad(triad, tol)
    w = triad[..., 0, :] + 1j * triad[..., 1, :]
    sq1 = (w[..., 0] - 1j * w[..., 1]) / 2.0
    sq2 = (-w[..., 0] - 1j * w[..., 1]) / 2.0
    prod = -w[..., 2] / 2.0
    # take the root of the larger square and get the other from the product
    first_big = np.abs(sq1) >= np.abs(sq2)
    big = np.sqrt(np.where(first_big, sq1, sq2))
    small = prod / big
    p1 = np.where(first_big, big, small)
    p2 = np.where(first_big, small, big)
    phi = _canonical_sign(np.stack([p1, p2], axis=-1))
    return phi, -phi
