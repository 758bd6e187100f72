'''Exact linear algebra over F_p and F_{p^k}.

Dense work goes through `galois` field arrays; the large sparse
systems produced by Hom computations are solved with sympy's
sparse domain matrices over GF(p).
'''
from functools import lru_cache
from math import ceil, log

import galois
import numpy as np

from sympy.polys.domains import GF as SympyGF
from sympy.polys.matrices import DomainMatrix


@lru_cache(maxsize=None)
def field(p, k=1):
    return galois.GF(p ** k)


def extension_degree(p, min_order):
    '''Smallest k with p^k >= min_order.'''
    return max(1, ceil(log(min_order) / log(p) - 1e-9))


def rank(mat):
    if mat.size == 0:
        return 0
    return int(np.linalg.matrix_rank(mat))


def row_basis(mat):
    '''Row-reduced basis of the row space, zero rows dropped.'''
    GF = type(mat)
    if mat.shape[0] == 0:
        return GF.Zeros((0, mat.shape[1]))
    return mat.row_space()


def left_null_space(mat):
    '''Rows y with y @ mat == 0.'''
    GF = type(mat)
    rows, cols = mat.shape
    if rows == 0:
        return GF.Zeros((0, 0))
    if cols == 0:
        return GF.Identity(rows)
    return mat.left_null_space()


def right_null_space(mat):
    '''Columns y with mat @ y == 0, returned as an (n, r) array.'''
    GF = type(mat)
    rows, cols = mat.shape
    if cols == 0:
        return GF.Zeros((0, 0))
    if rows == 0:
        return GF.Identity(cols)
    return mat.null_space().T


def expand_to_prime_field(mat):
    '''Replace every F_q entry by its coordinates over F_p (columns grow k-fold).'''
    GF = type(mat)
    if GF.degree == 1:
        return mat
    prime = field(GF.characteristic)
    vec = mat.vector()
    return prime(np.asarray(vec).reshape(mat.shape[0], -1))


def kron(a, b):
    '''Kronecker product; on stacked bases it spans the tensor product of the row spaces.'''
    GF = type(a)
    d1, m = a.shape
    d2, n = b.shape
    if not d1 or not d2:
        return GF.Zeros((0, m * n))
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(d1 * d2, m * n)


def matrix_power(mat, exponent):
    GF = type(mat)
    result = GF.Identity(mat.shape[0])
    base = mat.copy()
    while exponent:
        if exponent & 1:
            result = result @ base
        exponent >>= 1
        if exponent:
            base = base @ base
    return result


def fitting_idempotent(mat):
    '''Projection onto im(mat^n) along ker(mat^n) for v -> v @ mat.

    This is the Fitting idempotent of `mat`: a polynomial in it without
    constant term, so it lies in any algebra containing `mat`.
    '''
    GF = type(mat)
    n = mat.shape[0]
    power = matrix_power(mat, n)
    image = row_basis(power)
    kernel = left_null_space(power)
    if image.shape[0] == 0:
        return GF.Zeros((n, n))
    if kernel.shape[0] == 0:
        return GF.Identity(n)
    frame = np.vstack([kernel, image])
    diag = GF.Zeros((n, n))
    for i in range(kernel.shape[0], n):
        diag[i, i] = 1
    return np.linalg.inv(frame) @ diag @ frame


def sparse_nullspace(rows, ncols, p):
    '''Null space of a sparse system over GF(p).

    `rows` is a list of {column: int} dicts, one per equation. Returns a
    galois array whose rows span {x : A x = 0}.
    '''
    GFp = field(p)
    if ncols == 0:
        return GFp.Zeros((0, 0))
    K = SympyGF(p)
    sdm = {}
    for i, row in enumerate(rows):
        entries = {j: K(v % p) for j, v in row.items() if v % p}
        if entries:
            sdm[len(sdm)] = entries
    if not sdm:
        return GFp.Identity(ncols)
    mat = DomainMatrix(sdm, (len(sdm), ncols), K)
    null = mat.nullspace()
    dense = [[int(K.to_int(a)) % p for a in row] for row in null.to_list()]
    if not dense:
        return GFp.Zeros((0, ncols))
    return GFp(np.array(dense, dtype=int))


def pivot_columns(mat):
    '''Pivot columns of the reduced row echelon form.'''
    reduced = mat.row_reduce()
    pivots = []
    for row in reduced:
        nz = np.nonzero(row)[0]
        if nz.size:
            pivots.append(int(nz[0]))
    return pivots


def _restricted(e, b):
    '''Matrix of v -> v @ b on the row space of e, in the reduced basis of that space.'''
    frame = row_basis(e)
    pivots = pivot_columns(frame)
    return (frame @ b)[:, pivots]


def _split_once(e, basis, rng, iterations):
    GF = type(e)
    k = rank(e)
    if k <= 1:
        return None
    for _ in range(iterations):
        coeffs = GF(rng.integers(0, GF.order, len(basis)))
        b = e @ sum((c * m for c, m in zip(coeffs, basis)), GF.Zeros(e.shape)) @ e
        poly = _restricted(e, b).characteristic_poly()
        roots, mults = poly.roots(multiplicity=True)
        if len(roots) == 1 and int(mults[0]) == k:
            continue
        if not len(roots):
            continue
        lam = roots[0]
        f = fitting_idempotent(b - lam * e)
        if 0 < rank(f) < k:
            return [f, e - f]
    return None


def primitive_idempotents(basis, rng, iterations=64):
    '''Split the identity of the algebra spanned by `basis` into primitive idempotents.

    An idempotent e is kept once `iterations` random elements of eAe all act
    on e's image as a scalar plus a nilpotent.
    '''
    GF = type(basis[0])
    pending = [GF.Identity(basis[0].shape[0])]
    done = []
    while pending:
        e = pending.pop()
        parts = _split_once(e, basis, rng, iterations)
        if parts is None:
            done.append(e)
        else:
            pending.extend(parts)
    return done
