"""Twisted group algebras over C and their Wedderburn block structure.

The algebra A = C[G] with multiplication g1.g2 = c(g1,g2) g1g2 is semisimple;
this module computes its trace form, pairing vector, center, primitive
central idempotents, block dimensions, projective characters, the involution
g* = c(g,g^-1) g^-1 for sign-valued cocycles, and the symmetric/skew/dual
indicator of every block.

Cocycle scalars enter exactly (roots of unity) and are embedded into complex
doubles late.  Tolerances: 1e-8 for idempotent and eigenvalue clustering,
1e-6 for integer rounding of block dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .cocycles import TwoCocycle
from .groups import FiniteGroup

CLUSTER_TOL = 1e-8
ROUND_TOL = 1e-6


class AlgebraError(ValueError):
    """Numerical failure or unsupported algebra operation."""


@dataclass(frozen=True, eq=False)
class PairingVector:
    """The element of A (x) A dual to the trace form, one term per group element.

    Term g carries coefficient coeff[g] on g (x) g^-1.
    """

    coeffs: np.ndarray

    def terms(self, G: FiniteGroup):
        for g in range(G.order):
            yield g, int(G.inverse[g]), self.coeffs[g]


class TwistedGroupAlgebra:
    """C[G] with multiplication deformed by a normalized 2-cocycle.

    Elements are plain complex coefficient vectors of length #G, indexed by
    group element; immutable tables make instances safe to share.
    """

    def __init__(self, group: FiniteGroup, cocycle: TwoCocycle):
        if cocycle.group != group:
            raise AlgebraError("cocycle is defined on a different group")
        self.group = group
        self.cocycle = cocycle
        self.dim = group.order
        self.omega = cocycle.complex_table  # read-only complex embedding

    def __repr__(self):
        return f"TwistedGroupAlgebra({self.group.name}, {self.cocycle.name or 'cocycle'})"

    def unit(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[0] = 1.0
        return e

    def basis_vector(self, g: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[g] = 1.0
        return e

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if len(a) != self.dim or len(b) != self.dim:
            raise AlgebraError("element size does not match the algebra")
        cay, omega = self.group.cayley, self.omega
        out = np.zeros(self.dim, dtype=complex)
        for i in range(self.dim):
            ai = a[i]
            if ai != 0:
                out[cay[i]] += (ai * omega[i]) * b
        return out

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of x -> a.x in the group basis."""
        cay, omega = self.group.cayley, self.omega
        n = self.dim
        L = np.zeros((n, n), dtype=complex)
        cols = np.arange(n)
        for i in range(n):
            if a[i] != 0:
                L[cay[i], cols] += a[i] * omega[i]
        return L

    def right_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of x -> x.a in the group basis."""
        cay, omega = self.group.cayley, self.omega
        n = self.dim
        R = np.zeros((n, n), dtype=complex)
        for j in range(n):
            if a[j] != 0:
                R[cay[:, j], np.arange(n)] += a[j] * omega[:, j]
        return R

    def trace(self, a: np.ndarray) -> complex:
        """Trace of left multiplication by a: #G times the identity coefficient."""
        return self.dim * a[0]

    def trace_form(self, a: np.ndarray, b: np.ndarray) -> complex:
        return self.trace(self.multiply(a, b))

    def pairing_vector(self) -> PairingVector:
        """v = (1/#G) sum_g c(g, g^-1)^-1 g (x) g^-1, characterized by
        T(ab) = sum_i T(a v1_i) T(b v2_i)."""
        inv = self.group.inverse
        coeffs = np.conj(self.omega[np.arange(self.dim), inv]) / self.dim
        return PairingVector(coeffs)

    @cached_property
    def star_matrix(self) -> np.ndarray:
        """Matrix of the involution g -> c(g, g^-1) g^-1 (sign-valued cocycles only)."""
        if not self.cocycle.is_sign_valued:
            raise AlgebraError("the involution needs a cocycle with values in {+1,-1}")
        n, inv = self.dim, self.group.inverse
        S = np.zeros((n, n), dtype=complex)
        S[inv, np.arange(n)] = self.omega[np.arange(n), inv]
        return S

    def star(self, a: np.ndarray) -> np.ndarray:
        return self.star_matrix @ a

    def structure_constants(self) -> np.ndarray:
        """Dense C[i,j,k] with e_i e_j = sum_k C[i,j,k] e_k (for cross-checks)."""
        n = self.dim
        C = np.zeros((n, n, n), dtype=complex)
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        C[i, j, self.group.cayley] = self.omega
        return C

    def center_basis(self) -> np.ndarray:
        """Orthonormal rows spanning {z : z.g = g.z for all g}.

        Solved as the null space of the stacked commutation system; singular
        values falling inside the ambiguity band (1e-8, 1e-6) abort, since the
        center dimension would then depend on the cutoff.
        """
        n = self.dim
        rows = []
        for g in range(n):
            e = self.basis_vector(g)
            rows.append(self.left_matrix(e) - self.right_matrix(e))
        mat = np.vstack(rows)
        _, sigma, vh = np.linalg.svd(mat)
        sigma = np.concatenate([sigma, np.zeros(n - len(sigma))])
        in_band = (sigma > CLUSTER_TOL) & (sigma < ROUND_TOL)
        if in_band.any():
            raise AlgebraError(
                f"center rank is ambiguous: singular values {sigma[in_band]} fall "
                "between 1e-8 and 1e-6; tolerance review required")
        null = vh[sigma <= CLUSTER_TOL].conj()   # null space is V, not V^H
        if len(null) == 0:
            raise AlgebraError("empty center: algebra data is corrupt")
        return null


@dataclass(frozen=True, eq=False)
class Block:
    """One matrix block of the Wedderburn decomposition."""

    idempotent: np.ndarray    # primitive central idempotent e in A
    dim: int                  # d with the block isomorphic to Mat_d(C)
    character: np.ndarray     # chi(g) = tr(g on the simple module), length #G
    ideal_basis: np.ndarray   # orthonormal columns spanning A.e, shape (#G, d^2)
    fs: int | None = None     # +1 symmetric, -1 skew, 0 dual pair, None unset


@dataclass(frozen=True, eq=False)
class WedderburnDecomposition:
    """Splitting of a twisted group algebra into matrix blocks."""

    algebra: TwistedGroupAlgebra
    blocks: tuple
    seed: int
    diagnostics: dict

    @property
    def dims(self) -> tuple:
        return tuple(b.dim for b in self.blocks)

    @property
    def fs_list(self) -> tuple:
        return tuple(b.fs for b in self.blocks)

    def block_count(self) -> int:
        return len(self.blocks)


def wedderburn_decompose(A: TwistedGroupAlgebra, seed: int = 0, max_retries: int = 5) -> WedderburnDecomposition:
    """Split A into matrix blocks via eigenprojections of a generic central element.

    A random real combination of the center basis is diagonalized in its left
    action on the center; each eigenvector spans one primitive central
    idempotent.  Eigenvalue collisions trigger a retry with fresh randomness.
    """
    n = A.dim
    Z = A.center_basis()
    r = len(Z)
    rng = np.random.default_rng(seed)
    last_err = None
    for _ in range(max_retries):
        t = rng.standard_normal(r)
        z = t @ Z
        # left action of z restricted to the center, in center coordinates
        images = np.array([A.multiply(z, Z[j]) for j in range(r)])
        coords = images @ Z.conj().T
        resid = np.abs(images - coords @ Z).max()
        if resid > 1e-7:
            raise AlgebraError(f"center is not closed under multiplication (residual {resid:.2e})")
        evals, evecs = np.linalg.eig(coords.T)
        gaps = np.abs(evals[:, None] - evals[None, :])[~np.eye(r, dtype=bool)]
        if r > 1 and gaps.min() < 1e-6 * max(1.0, np.abs(evals).max()):
            last_err = AlgebraError("eigenvalue collision in the generic central element")
            continue
        try:
            blocks = [_block_from_eigenvector(A, evecs[:, k] @ Z) for k in range(r)]
        except AlgebraError as err:
            last_err = err
            continue
        _validate_blocks(A, blocks)
        blocks.sort(key=lambda b: (b.dim,
                                   tuple(np.round(b.character.real, 6)),
                                   tuple(np.round(b.character.imag, 6))))
        diagnostics = {
            "idempotency_residual": max(
                float(np.abs(A.multiply(b.idempotent, b.idempotent) - b.idempotent).max())
                for b in blocks),
            "dim_rounding_residual": max(
                float(abs(np.sqrt((A.trace(b.idempotent)).real) - b.dim)) for b in blocks),
        }
        return WedderburnDecomposition(A, tuple(blocks), seed, diagnostics)
    raise AlgebraError(f"decomposition failed after {max_retries} attempts: {last_err}")


def _block_from_eigenvector(A: TwistedGroupAlgebra, u: np.ndarray) -> Block:
    # u spans C.e for a primitive central idempotent e; fix the scale from u^2
    usq = A.multiply(u, u)
    k = int(np.argmax(np.abs(u)))
    alpha = usq[k] / u[k]
    if abs(alpha) < 1e-12:
        raise AlgebraError("nilpotent eigenvector; generic element was degenerate")
    e = u / alpha
    if np.abs(A.multiply(e, e) - e).max() > CLUSTER_TOL:
        raise AlgebraError("eigenprojection did not yield an idempotent")
    t = A.trace(e)
    if abs(t.imag) > ROUND_TOL:
        raise AlgebraError(f"non-real trace {t} on an idempotent")
    d = np.sqrt(max(t.real, 0.0))
    if abs(d - round(d)) > ROUND_TOL or round(d) < 1:
        raise AlgebraError(f"block dimension {d} is not a positive integer within 1e-6")
    d = int(round(d))
    basis = _ideal_basis(A, e, d)
    char = _ideal_character(A, basis, d)
    if abs(char[0] - d) > 1e-6:
        raise AlgebraError("character does not evaluate to the dimension at the identity")
    return Block(e, d, char, basis)


def _ideal_basis(A: TwistedGroupAlgebra, e: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal basis of the ideal A.e via the column space of right
    multiplication by e; its rank d^2 is known in advance and cross-checked."""
    R = A.right_matrix(e)
    u, sigma, _ = np.linalg.svd(R)
    rank = int(np.sum(sigma > CLUSTER_TOL))
    if rank != d * d:
        raise AlgebraError(
            f"ideal basis is ill-conditioned: rank {rank} at cutoff 1e-8, expected {d * d}")
    return u[:, :rank]


def _ideal_character(A: TwistedGroupAlgebra, basis: np.ndarray, d: int) -> np.ndarray:
    """chi(g) = tr(left multiplication by g on A.e) / d."""
    n = A.dim
    P = basis @ basis.conj().T      # orthogonal projection onto the ideal
    cay, omega = A.group.cayley, A.omega
    rows = np.arange(n)
    char = np.empty(n, dtype=complex)
    for g in range(n):
        char[g] = np.sum(omega[g] * P[rows, cay[g]]) / d
    return char


def _validate_blocks(A: TwistedGroupAlgebra, blocks: list) -> None:
    n = A.dim
    if sum(b.dim * b.dim for b in blocks) != n:
        raise AlgebraError("block dimensions do not satisfy sum d^2 = #G")
    total = np.sum([b.idempotent for b in blocks], axis=0)
    if np.abs(total - A.unit()).max() > 1e-7:
        raise AlgebraError("idempotents do not sum to the unit")
    for i, bi in enumerate(blocks):
        for bj in blocks[i + 1:]:
            if np.abs(A.multiply(bi.idempotent, bj.idempotent)).max() > 1e-7:
                raise AlgebraError("idempotents are not orthogonal")


def block_character(A: TwistedGroupAlgebra, dec: WedderburnDecomposition, block: int, g: int) -> complex:
    """Character value chi_block(g), as computed from the left ideal."""
    return complex(dec.blocks[block].character[g])


def fs_indicators(dec: WedderburnDecomposition) -> WedderburnDecomposition:
    """Fill the symmetric/skew/dual indicator of every block.

    The involution either permutes two blocks (both get 0) or restricts to a
    d x d matrix block, where the dimension of the fixed subspace decides
    between +1 (d(d+1)/2, symmetric form) and -1 (d(d-1)/2, skew form).
    """
    A = dec.algebra
    S = A.star_matrix
    blocks = list(dec.blocks)
    images = []
    for b in blocks:
        es = S @ b.idempotent
        dists = [float(np.abs(es - other.idempotent).max()) for other in blocks]
        mate = int(np.argmin(dists))
        if dists[mate] > CLUSTER_TOL:
            raise AlgebraError("involution image of an idempotent matches no block")
        images.append(mate)
    out = []
    for k, b in enumerate(blocks):
        if images[k] != k:
            if images[images[k]] != k:
                raise AlgebraError("involution does not pair blocks consistently")
            out.append(replace(b, fs=0))
            continue
        B = b.ideal_basis
        M = B.conj().T @ S @ B
        if np.abs(M @ M - np.eye(M.shape[0])).max() > 1e-6:
            raise AlgebraError("restricted involution is not an involution; decomposition error")
        fixed = (M.shape[0] + np.trace(M).real) / 2
        d = b.dim
        if abs(fixed - d * (d + 1) // 2) < 1e-6:
            out.append(replace(b, fs=+1))
        elif abs(fixed - d * (d - 1) // 2) < 1e-6:
            out.append(replace(b, fs=-1))
        else:
            raise AlgebraError(
                f"fixed subspace dimension {fixed} matches neither d(d+1)/2 nor d(d-1)/2; "
                "decomposition error")
    return WedderburnDecomposition(A, tuple(out), dec.seed, dict(dec.diagnostics))


def decomposition_to_json(dec: WedderburnDecomposition) -> dict:
    return {
        "group": dec.algebra.group.name,
        "cocycle": dec.algebra.cocycle.name,
        "seed": dec.seed,
        "blocks": [
            {
                "dim": b.dim,
                "fs": b.fs,
                "character": [[float(z.real), float(z.imag)] for z in b.character],
            }
            for b in dec.blocks
        ],
        "residuals": dec.diagnostics,
    }
