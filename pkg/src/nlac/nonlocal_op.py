"""Discrete nonlocal diffusion operator (L u)(x) = (J*1) u(x) - (J conv u)(x).

On the unique-node periodic grid the operator is a block-circulant matrix
with circulant blocks, so the 2D DFT diagonalizes it exactly: its eigenvalue
at mode k is ``mass - symbol[k]``.  Both the forward application and the
shifted solves used by the implicit time steppers are therefore a single
FFT round trip, with no iteration and no splitting error.

The dense representation is kept available for small grids as a brute-force
cross-check, and a conjugate-gradient solve driven by the FFT matvec provides
an independent route to the same shifted systems.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import irfft2, rfft2
from scipy.sparse.linalg import LinearOperator, cg

from .grid import Grid2D
from .kernel import KernelTable

__all__ = ["NonlocalOperator"]

_DENSE_MAX_N = 32


class NonlocalOperator:
    """FFT-diagonalized nonlocal diffusion operator on a periodic grid.

    The operator is linear, self-adjoint, and positive semidefinite; it
    annihilates constants (eigenvalue exactly zero at the mean mode).  Its
    dense form has nonnegative diagonal, nonpositive off-diagonal entries,
    and zero row sums, which is what gives the resolvent (a*I + L)^-1 an
    infinity-norm bound of 1/a for every a > 0.
    """

    def __init__(self, kernel: KernelTable, grid: Grid2D):
        if kernel.samples.shape != (grid.N, grid.N):
            raise ValueError(
                f"kernel table shape {kernel.samples.shape} does not match grid N={grid.N}"
            )
        eigenvalues = kernel.mass - kernel.symbol
        tol = 1e-12 * max(1.0, abs(kernel.mass))
        if abs(eigenvalues[0, 0]) > tol:
            raise ValueError(
                f"zero mode eigenvalue {eigenvalues[0, 0]:.3e} is not zero; "
                "kernel mass and spectrum are inconsistent"
            )
        if eigenvalues.min() < -tol:
            raise ValueError(
                f"negative eigenvalue {eigenvalues.min():.3e}; kernel does not "
                "induce a positive semidefinite operator"
            )
        self.kernel = kernel
        self.grid = grid
        self.eigenvalues = eigenvalues
        # real-input transforms only need the non-redundant half spectrum
        self._lam_half = np.ascontiguousarray(eigenvalues[:, : grid.N // 2 + 1])

    def _check(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        n = self.grid.N
        if u.shape != (n, n):
            raise ValueError(f"field shape {u.shape} does not match grid ({n}, {n})")
        return u

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Evaluate L u = mass*u - h^2 (J conv u) through the spectrum."""
        u = self._check(u)
        n = self.grid.N
        return irfft2(rfft2(u) * self._lam_half, s=(n, n))

    def solve_shifted(self, a: float, eps2: float, rhs: np.ndarray) -> np.ndarray:
        """Solve (a*I + eps2*L) w = rhs exactly in the DFT basis.

        Requires a > 0 and eps2 >= 0, which makes every modal divisor
        a + eps2*lambda_k at least a.
        """
        if not a > 0.0:
            raise ValueError(f"shift a must be positive, got {a}")
        if eps2 < 0.0:
            raise ValueError(f"eps2 must be nonnegative, got {eps2}")
        rhs = self._check(rhs)
        n = self.grid.N
        return irfft2(rfft2(rhs) / (a + eps2 * self._lam_half), s=(n, n))

    def solve_shifted_cg(
        self,
        a: float,
        eps2: float,
        rhs: np.ndarray,
        rtol: float = 1e-12,
        maxiter: int = 500,
    ) -> np.ndarray:
        """Conjugate-gradient solve of the same shifted system.

        Exists purely as a cross-validation route for the direct spectral
        solve; the matvec is the FFT apply, so agreement of the two answers
        exercises independent linear algebra.
        """
        if not a > 0.0:
            raise ValueError(f"shift a must be positive, got {a}")
        rhs = self._check(rhs)
        n = self.grid.N

        def matvec(x: np.ndarray) -> np.ndarray:
            x = x.reshape(n, n)
            return (a * x + eps2 * self.apply(x)).ravel()

        lin = LinearOperator((n * n, n * n), matvec=matvec, dtype=float)
        w, info = cg(lin, rhs.ravel(), rtol=rtol, atol=0.0, maxiter=maxiter)
        if info != 0:
            raise RuntimeError(f"conjugate gradient did not converge (info={info})")
        return w.reshape(n, n)

    def dense_matrix(self) -> np.ndarray:
        """Assemble the N^2 x N^2 matrix of the operator (small grids only).

        Row (i, j), column (k, l) holds -h^2 * J[(i-k) mod N, (j-l) mod N],
        plus mass on the diagonal.
        """
        n = self.grid.N
        if n > _DENSE_MAX_N:
            raise ValueError(f"dense assembly limited to N <= {_DENSE_MAX_N}, got N={n}")
        idx = np.arange(n)
        d = (idx[:, None] - idx[None, :]) % n
        block = self.kernel.samples[d[:, None, :, None], d[None, :, None, :]]
        mat = -self.grid.h ** 2 * block.reshape(n * n, n * n)
        mat[np.diag_indices(n * n)] += self.kernel.mass
        return mat
