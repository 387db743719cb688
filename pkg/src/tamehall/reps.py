"""Finite-dimensional quiver representations over a small finite field.

Matrices act on column vectors: the matrix of an arrow s -> t has shape
(dim at t, dim at s).  Subspaces are handed around as reduced row-echelon
row bases, matching the conventions of the linear-algebra layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleEnumerationError,
    InternalInconsistencyError,
    InvalidInputError,
)
from .gf import Field, enumerate_subspaces, gaussian_binomial, in_rowspace, kernel_basis, quotient_map, rank, rref
from .quiver import Quiver, admissible_sink_order, euler_form


@dataclass(eq=False)
class Rep:
    quiver: Quiver
    field: Field
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        Q, F = self.quiver, self.field
        if len(self.dims) != Q.n or any(d < 0 for d in self.dims):
            raise InvalidInputError("dimension vector does not fit the quiver")
        if len(self.mats) != len(Q.arrows):
            raise InvalidInputError("need one matrix per arrow")
        mats = []
        for a, (s, t) in enumerate(Q.arrows):
            A = np.asarray(self.mats[a], dtype=np.int64)
            if A.shape != (self.dims[t], self.dims[s]):
                raise InvalidInputError(
                    f"matrix {a} has shape {A.shape}, expected ({self.dims[t]}, {self.dims[s]})")
            if A.size and (A.min() < 0 or A.max() >= F.q):
                raise InvalidInputError(f"matrix {a} has entries outside GF({F.q})")
            mats.append(A)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0


def reps_equal(M: Rep, N: Rep) -> bool:
    """Structural equality: same quiver, field, dims and matrices."""
    return (M.quiver == N.quiver and M.field == N.field and M.dims == N.dims
            and all(np.array_equal(a, b) for a, b in zip(M.mats, N.mats)))


def zero_rep(Q: Quiver, F: Field) -> Rep:
    dims = (0,) * Q.n
    return Rep(Q, F, dims, tuple(F.zeros(0, 0) for _ in Q.arrows))


def simple_rep(Q: Quiver, F: Field, i: int) -> Rep:
    dims = tuple(1 if j == i else 0 for j in range(Q.n))
    return Rep(Q, F, dims, tuple(F.zeros(dims[t], dims[s]) for s, t in Q.arrows))


def direct_sum(M: Rep, N: Rep) -> Rep:
    if M.quiver != N.quiver or M.field != N.field:
        raise InvalidInputError("summands live over different quivers or fields")
    Q, F = M.quiver, M.field
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        blk = F.zeros(dims[t], dims[s])
        blk[:M.dims[t], :M.dims[s]] = M.mats[a]
        blk[M.dims[t]:, M.dims[s]:] = N.mats[a]
        mats.append(blk)
    return Rep(Q, F, dims, tuple(mats))


# -- projectives and injectives ----------------------------------------


def _paths_from(Q: Quiver, i: int) -> list[tuple[tuple[int, ...], int]]:
    """All paths starting at i as (arrow index sequence, end vertex),
    sorted by length then sequence."""
    done = [((), i)]
    frontier = [((), i)]
    while frontier:
        nxt = []
        for p, v in frontier:
            for a in Q.outgoing(v):
                nxt.append((p + (a,), Q.arrows[a][1]))
        nxt.sort()
        done.extend(nxt)
        frontier = nxt
    return done


def _paths_to(Q: Quiver, i: int) -> list[tuple[tuple[int, ...], int]]:
    """All paths ending at i as (arrow index sequence, start vertex)."""
    done = [((), i)]
    frontier = [((), i)]
    while frontier:
        nxt = []
        for p, v in frontier:
            for a in Q.incoming(v):
                nxt.append(((a,) + p, Q.arrows[a][0]))
        nxt.sort()
        done.extend(nxt)
        frontier = nxt
    return done


def projective_rep(Q: Quiver, F: Field, i: int) -> Rep:
    """Indecomposable projective with top the simple at i; basis given by
    the paths starting at i."""
    paths = _paths_from(Q, i)
    basis = {j: [p for p, e in paths if e == j] for j in range(Q.n)}
    index = {j: {p: k for k, p in enumerate(basis[j])} for j in range(Q.n)}
    dims = tuple(len(basis[j]) for j in range(Q.n))
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        A = F.zeros(dims[t], dims[s])
        for p in basis[s]:
            A[index[t][p + (a,)], index[s][p]] = 1
        mats.append(A)
    return Rep(Q, F, dims, tuple(mats))


def injective_rep(Q: Quiver, F: Field, i: int) -> Rep:
    """Indecomposable injective with socle the simple at i; basis at j given
    by the paths from j to i."""
    paths = _paths_to(Q, i)
    basis = {j: [p for p, st in paths if st == j] for j in range(Q.n)}
    index = {j: {p: k for k, p in enumerate(basis[j])} for j in range(Q.n)}
    dims = tuple(len(basis[j]) for j in range(Q.n))
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        A = F.zeros(dims[t], dims[s])
        for u in basis[s]:
            if u and u[0] == a:
                A[index[t][u[1:]], index[s][u]] = 1
        mats.append(A)
    return Rep(Q, F, dims, tuple(mats))


# -- Hom and Ext -------------------------------------------------------


def _hom_system(M: Rep, N: Rep) -> tuple[np.ndarray, list[int]]:
    """Coefficient matrix of the commuting equations N_a X_s = X_t M_a in
    the unknowns vec(X_j) (row-major), plus unknown offsets per vertex."""
    Q, F = M.quiver, M.field
    offs = []
    tot = 0
    for j in range(Q.n):
        offs.append(tot)
        tot += N.dims[j] * M.dims[j]
    eq_rows = sum(N.dims[t] * M.dims[s] for s, t in Q.arrows)
    A = F.zeros(eq_rows, tot)
    base = 0
    for a, (s, t) in enumerate(Q.arrows):
        n_t, n_s = N.dims[t], N.dims[s]
        m_t, m_s = M.dims[t], M.dims[s]
        rows = n_t * m_s
        if rows:
            if n_s and m_s:
                blk = np.zeros((n_t, m_s, n_s, m_s), dtype=np.int64)
                idx = np.arange(m_s)
                blk[:, idx, :, idx] = N.mats[a][None, :, :]
                A[base:base + rows, offs[s]:offs[s] + n_s * m_s] = blk.reshape(rows, n_s * m_s)
            if n_t and m_t:
                blk = np.zeros((n_t, m_s, n_t, m_t), dtype=np.int64)
                idx = np.arange(n_t)
                blk[idx, :, idx, :] = F.neg(M.mats[a]).T[None, :, :]
                A[base:base + rows, offs[t]:offs[t] + n_t * m_t] = blk.reshape(rows, n_t * m_t)
        base += rows
    return A, offs


def _unvec(M: Rep, N: Rep, offs: list[int], vec: np.ndarray) -> tuple[np.ndarray, ...]:
    out = []
    for j in range(M.quiver.n):
        n_j, m_j = N.dims[j], M.dims[j]
        out.append(vec[offs[j]:offs[j] + n_j * m_j].reshape(n_j, m_j))
    return tuple(out)


def hom_basis(M: Rep, N: Rep) -> list[tuple[np.ndarray, ...]]:
    """Basis of Hom(M, N) as tuples of per-vertex matrices."""
    if M.quiver != N.quiver or M.field != N.field:
        raise InvalidInputError("Hom needs a common quiver and field")
    A, offs = _hom_system(M, N)
    ker = kernel_basis(M.field, A)
    return [_unvec(M, N, offs, row) for row in ker]


def hom_dim(M: Rep, N: Rep) -> int:
    if M.quiver != N.quiver or M.field != N.field:
        raise InvalidInputError("Hom needs a common quiver and field")
    A, _ = _hom_system(M, N)
    return A.shape[1] - rank(M.field, A)


def ext1_dim(M: Rep, N: Rep) -> int:
    d = hom_dim(M, N) - euler_form(M.quiver, M.dims, N.dims)
    if d < 0:
        raise InternalInconsistencyError("negative first extension dimension")
    return d


def end_dim(M: Rep) -> int:
    return hom_dim(M, M)


def is_brick(M: Rep) -> bool:
    return end_dim(M) == 1


def hom_combination(F: Field, basis: list[tuple[np.ndarray, ...]],
                    coeffs) -> tuple[np.ndarray, ...]:
    """Linear combination of Hom-basis elements with the given labels."""
    if not basis:
        raise InvalidInputError("empty basis")
    nverts = len(basis[0])
    out = []
    for j in range(nverts):
        acc = np.zeros_like(basis[0][j])
        for c, phi in zip(coeffs, basis):
            if c:
                acc = F.add(acc, F.mul(np.int64(c), phi[j]))
        out.append(acc)
    return tuple(out)


def is_injective_morphism(F: Field, M: Rep, phi: tuple[np.ndarray, ...]) -> bool:
    return all(rank(F, phi[j]) == M.dims[j] for j in range(M.quiver.n))


def morphism_image(F: Field, phi: tuple[np.ndarray, ...]) -> tuple[np.ndarray, ...]:
    """Per-vertex column spaces as reduced row bases."""
    out = []
    for mat in phi:
        R, piv = rref(F, mat.T.copy())
        out.append(R[:len(piv)])
    return tuple(out)


@dataclass
class ExtSpace:
    """First extension group of N by M: classes of cocycle tuples f_a with
    f_a mapping the space of N at the source to the space of M at the
    target of each arrow a."""
    dim: int
    cocycles: list[tuple[np.ndarray, ...]]


def ext_space(N: Rep, M: Rep) -> ExtSpace:
    """Extensions 0 -> M -> E -> N -> 0, with explicit representatives for
    a basis of the classes."""
    if M.quiver != N.quiver or M.field != N.field:
        raise InvalidInputError("Ext needs a common quiver and field")
    Q, F = M.quiver, M.field
    c0 = sum(M.dims[j] * N.dims[j] for j in range(Q.n))
    aoffs = []
    c1 = 0
    for s, t in Q.arrows:
        aoffs.append(c1)
        c1 += M.dims[t] * N.dims[s]
    # differential C0 -> C1, columns = vec(phi_j), rows = vec(f_a)
    D = F.zeros(c1, c0)
    voffs = []
    tot = 0
    for j in range(Q.n):
        voffs.append(tot)
        tot += M.dims[j] * N.dims[j]
    for a, (s, t) in enumerate(Q.arrows):
        m_t, n_s = M.dims[t], N.dims[s]
        rows = m_t * n_s
        if not rows:
            continue
        # (M_a phi_s)[r, c]: coefficient of phi_s[k, c] is M_a[r, k]
        if M.dims[s]:
            blk = np.zeros((m_t, n_s, M.dims[s], n_s), dtype=np.int64)
            idx = np.arange(n_s)
            blk[:, idx, :, idx] = M.mats[a][None, :, :]
            D[aoffs[a]:aoffs[a] + rows, voffs[s]:voffs[s] + M.dims[s] * n_s] = \
                blk.reshape(rows, M.dims[s] * n_s)
        # -(phi_t N_a)[r, c]: coefficient of phi_t[r, k] is -N_a[k, c]
        if N.dims[t]:
            blk = np.zeros((m_t, n_s, m_t, N.dims[t]), dtype=np.int64)
            idx = np.arange(m_t)
            blk[idx, :, idx, :] = F.neg(N.mats[a]).T[None, :, :]
            D[aoffs[a]:aoffs[a] + rows, voffs[t]:voffs[t] + m_t * N.dims[t]] = \
                blk.reshape(rows, m_t * N.dims[t])
    image, piv = rref(F, D.T.copy())
    image = image[:len(piv)]
    dim = c1 - len(piv)
    pivset = set(piv)
    cocycles = []
    for col in range(c1):
        if col not in pivset:
            vec = F.zeros(c1)
            vec[col] = 1
            fa = []
            for a, (s, t) in enumerate(Q.arrows):
                m_t, n_s = M.dims[t], N.dims[s]
                fa.append(vec[aoffs[a]:aoffs[a] + m_t * n_s].reshape(m_t, n_s))
            cocycles.append(tuple(fa))
    if len(cocycles) != dim:
        raise InternalInconsistencyError("extension basis size mismatch")
    return ExtSpace(dim=dim, cocycles=cocycles)


def middle_term(M: Rep, N: Rep, cocycle: tuple[np.ndarray, ...]) -> Rep:
    """Extension of N by M along a cocycle: block upper-triangular rep with
    M in the top-left corner."""
    Q, F = M.quiver, M.field
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        blk = F.zeros(dims[t], dims[s])
        blk[:M.dims[t], :M.dims[s]] = M.mats[a]
        blk[:M.dims[t], M.dims[s]:] = cocycle[a]
        blk[M.dims[t]:, M.dims[s]:] = N.mats[a]
        mats.append(blk)
    return Rep(Q, F, dims, tuple(mats))


# -- subrepresentations ------------------------------------------------


def is_subrep(M: Rep, spaces) -> bool:
    """spaces: per-vertex reduced row bases inside M."""
    F = M.field
    for a, (s, t) in enumerate(M.quiver.arrows):
        U_s, U_t = spaces[s], spaces[t]
        if U_s.shape[0] == 0:
            continue
        images = F.matmul(M.mats[a], U_s.T).T
        if not in_rowspace(F, U_t, images):
            return False
    return True


def sub_rep(M: Rep, spaces) -> Rep:
    """Subrepresentation on the given row bases, in those bases."""
    Q, F = M.quiver, M.field
    dims = tuple(int(U.shape[0]) for U in spaces)
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        U_s, U_t = spaces[s], spaces[t]
        images = F.matmul(M.mats[a], U_s.T)          # columns in the big space
        if U_t.shape[0]:
            _, piv = rref(F, U_t.copy())
            coords = images[list(piv), :]
            # verify the coordinates reproduce the images
            if not np.array_equal(F.matmul(U_t.T, coords), images):
                raise InvalidInputError("not a subrepresentation")
            mats.append(coords)
        else:
            if images.size and images.any():
                raise InvalidInputError("not a subrepresentation")
            mats.append(F.zeros(0, dims[s]))
    return Rep(Q, F, dims, tuple(mats))


@dataclass
class SubrepWitness:
    """A subrepresentation with its ambient, bases, and quotient in hand."""
    ambient: Rep
    spaces: tuple[np.ndarray, ...]
    sub: Rep
    quotient: Rep

    @property
    def dims(self) -> tuple[int, ...]:
        return self.sub.dims


def subrep_witness(M: Rep, spaces) -> SubrepWitness:
    spaces = tuple(np.asarray(U, dtype=np.int64) for U in spaces)
    return SubrepWitness(M, spaces, sub_rep(M, spaces), quotient_rep(M, spaces))


def quotient_rep(M: Rep, spaces) -> Rep:
    """Quotient of M by the subrepresentation on the given row bases."""
    Q, F = M.quiver, M.field
    projs, secs = [], []
    for j in range(Q.n):
        pj, sj = quotient_map(F, spaces[j], M.dims[j])
        projs.append(pj)
        secs.append(sj)
    dims = tuple(p.shape[0] for p in projs)
    mats = []
    for a, (s, t) in enumerate(Q.arrows):
        mats.append(F.matmul(F.matmul(projs[t], M.mats[a]), secs[s]))
    return Rep(Q, F, dims, tuple(mats))


def subrep_count_budget(M: Rep) -> int:
    total = 1
    for d in M.dims:
        total *= sum(gaussian_binomial(d, k, M.field.q) for k in range(d + 1))
    return total


def enumerate_subreps(M: Rep, budget: int = 2_000_000, dims=None):
    """Yield every subrepresentation of M as a tuple of per-vertex reduced
    row bases.  With `dims`, restrict to that dimension vector.

    Vertices are filled in following an admissible sink order, so arrow
    constraints always point at already-chosen spaces.
    """
    Q, F = M.quiver, M.field
    if dims is not None and (len(dims) != Q.n or any(d < 0 or d > M.dims[j] for j, d in enumerate(dims))):
        return
    est = 1
    for j, d in enumerate(M.dims):
        if dims is None:
            est *= sum(gaussian_binomial(d, k, F.q) for k in range(d + 1))
        else:
            est *= gaussian_binomial(d, dims[j], F.q)
    if est > budget:
        raise InfeasibleEnumerationError(
            f"subrepresentation scan of size about {est}", needed=est, budget=budget)
    order = admissible_sink_order(Q)
    chosen: dict[int, np.ndarray] = {}

    def options(v):
        n_v = M.dims[v]
        ds = range(n_v + 1) if dims is None else [dims[v]]
        for d in ds:
            for U in enumerate_subspaces(F, n_v, d, budget=budget):
                ok = True
                for a in Q.outgoing(v):
                    t = Q.arrows[a][1]
                    if U.shape[0]:
                        images = F.matmul(M.mats[a], U.T).T
                        if not in_rowspace(F, chosen[t], images):
                            ok = False
                            break
                if ok:
                    yield U

    def walk(k):
        if k == len(order):
            yield tuple(chosen[j] for j in range(Q.n))
            return
        v = order[k]
        for U in options(v):
            chosen[v] = U
            yield from walk(k + 1)
        chosen.pop(v, None)

    yield from walk(0)


# -- isomorphism testing -----------------------------------------------


def is_isomorphic(M: Rep, N: Rep, budget: int = 2_000_000) -> bool:
    """Exact isomorphism test: scan normalized coefficient vectors of
    Hom(M, N) for one that is invertible at every vertex."""
    if M.quiver != N.quiver or M.field != N.field:
        return False
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    F = M.field
    basis = hom_basis(M, N)
    h = len(basis)
    if h == 0:
        return False
    if hom_dim(N, M) != h:
        return False
    classes = (F.q ** h - 1) // (F.q - 1)
    if classes > budget:
        raise InfeasibleEnumerationError(
            f"isomorphism scan over about {classes} classes", needed=classes, budget=budget)
    nz = [j for j in range(M.quiver.n) if M.dims[j]]
    for lead in range(h):
        for tail in itertools.product(range(F.q), repeat=h - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            phi = hom_combination(F, basis, coeffs)
            if all(rank(F, phi[j]) == M.dims[j] for j in nz):
                return True
    return False
