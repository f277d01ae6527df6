"""Shared test utilities: strategies, oracles and small generators."""

from __future__ import annotations

import random
from fractions import Fraction as Q

from hypothesis import strategies as st

from ado.envelope import monomials_up_to
from ado.linalg import Matrix, Subspace, block_diag, kernel, solve, unit_vector


def rationals(max_num: int = 4, max_den: int = 3) -> st.SearchStrategy[Q]:
    return st.builds(
        Q,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def matrices(nrows: int, ncols: int) -> st.SearchStrategy[Matrix]:
    return st.lists(
        st.lists(rationals(), min_size=ncols, max_size=ncols),
        min_size=nrows,
        max_size=nrows,
    ).map(lambda rows: Matrix(rows, ncols=ncols))


def square_matrices(max_n: int = 4) -> st.SearchStrategy[Matrix]:
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: matrices(n, n)
    )


def seeded_matrix(rng: random.Random, nrows: int, ncols: int, span: int = 3) -> Matrix:
    return Matrix(
        [
            [Q(rng.randint(-span, span), rng.randint(1, 2)) for _ in range(ncols)]
            for _ in range(nrows)
        ],
        ncols=ncols,
    )


def change_of_basis(g, t: Matrix):
    """Rewrite an algebra in the basis given by the columns of t."""
    from ado.lie import LieAlgebra

    t_inv = invert(t)
    assert t_inv is not None
    dim = g.dim
    table = [
        [t_inv.apply(g.bracket(t.column(a), t.column(b))) for b in range(dim)]
        for a in range(dim)
    ]
    return LieAlgebra(table)


def transport_subspace(s, t_inv: Matrix):
    """Coordinates of a subspace after the change of basis with inverse t_inv."""
    from ado.linalg import Subspace

    return Subspace.from_vectors(
        t_inv.nrows, [t_inv.apply(v) for v in s.vectors()]
    )


def sl2_semidirect_plane():
    """sl2 acting on its standard plane: basis (h, e, f, a, b)."""
    from ado.lie import LieAlgebra

    return LieAlgebra.from_sparse(
        5,
        {
            (0, 1): {1: 2},
            (0, 2): {2: -2},
            (1, 2): {0: 1},
            (0, 3): {3: 1},
            (0, 4): {4: -1},
            (1, 4): {3: 1},
            (2, 3): {4: 1},
        },
    )


def sl2_plus_solv2():
    """Direct sum of sl2 and the nonabelian two-dimensional algebra."""
    from ado.lie import LieAlgebra

    return LieAlgebra.from_sparse(
        5,
        {
            (0, 1): {1: 2},
            (0, 2): {2: -2},
            (1, 2): {0: 1},
            (3, 4): {4: 1},
        },
    )


def sl2_plus_sl2_semidirect_plane():
    """One inert sl2 summand next to one acting on a plane."""
    from ado.lie import LieAlgebra

    return LieAlgebra.from_sparse(
        8,
        {
            (0, 1): {1: 2},
            (0, 2): {2: -2},
            (1, 2): {0: 1},
            (3, 4): {4: 2},
            (3, 5): {5: -2},
            (4, 5): {3: 1},
            (3, 6): {6: 1},
            (3, 7): {7: -1},
            (4, 7): {6: 1},
            (5, 6): {7: 1},
        },
    )


def invert(m: Matrix) -> Matrix | None:
    """Inverse by columnwise solving, or None for a singular matrix."""
    if not m.is_square():
        return None
    cols = []
    for j in range(m.ncols):
        x = solve(m, unit_vector(m.nrows, j))
        if x is None:
            return None
        cols.append(x)
    candidate = Matrix.from_columns(cols, nrows=m.nrows)
    if m * candidate != Matrix.identity(m.nrows):
        return None
    return candidate


def semisimple_from_eigenvalues(d: Matrix, eigenvalues) -> Matrix:
    """Oracle: sum of eigenvalue times projector onto its root space.

    The root space of lam is the kernel of (d - lam I)^n.  The caller
    supplies the full rational spectrum; the root spaces must fill the
    whole space or this raises.
    """
    n = d.nrows
    ident = Matrix.identity(n)
    columns = []
    diag_values = []
    for lam in eigenvalues:
        shifted = d - ident.scale(Q(lam))
        root_space = kernel(shifted.power(n))
        for v in root_space.vectors():
            columns.append(v)
            diag_values.append(Q(lam))
    if len(columns) != n:
        raise ValueError("root spaces do not fill the whole space")
    u = Matrix.from_columns(columns, nrows=n)
    u_inv = invert(u)
    assert u_inv is not None
    diag = Matrix([[diag_values[i] if i == j else Q(0) for j in range(n)] for i in range(n)])
    return u * diag * u_inv


def jordan_block(lam: Q, size: int) -> Matrix:
    rows = []
    for i in range(size):
        row = [Q(0)] * size
        row[i] = Q(lam)
        if i + 1 < size:
            row[i + 1] = Q(1)
        rows.append(row)
    return Matrix(rows, ncols=size)


def conjugated_jordan(rng: random.Random, n: int) -> tuple[Matrix, Matrix, list[Q]]:
    """Random matrix with known Jordan structure.

    Returns (d, expected_semisimple, eigenvalues): a conjugate of a
    Jordan matrix built from small rational eigenvalues, the conjugate
    of its diagonal part, and the eigenvalue list.
    """
    pool = [Q(-2), Q(-1), Q(0), Q(1), Q(2), Q(1, 2)]
    blocks = []
    diag_blocks = []
    eigenvalues = []
    remaining = n
    while remaining:
        size = rng.randint(1, min(3, remaining))
        lam = rng.choice(pool)
        blocks.append(jordan_block(lam, size))
        diag_blocks.append(Matrix.identity(size).scale(lam))
        if lam not in eigenvalues:
            eigenvalues.append(lam)
        remaining -= size
    j = block_diag(blocks)
    s_j = block_diag(diag_blocks)
    lower = Matrix(
        [
            [Q(1) if i == j2 else (Q(rng.randint(-2, 2)) if i > j2 else Q(0)) for j2 in range(n)]
            for i in range(n)
        ]
    )
    upper = Matrix(
        [
            [Q(1) if i == j2 else (Q(rng.randint(-2, 2)) if i < j2 else Q(0)) for j2 in range(n)]
            for i in range(n)
        ]
    )
    t = lower * upper
    t_inv = invert(t)
    assert t_inv is not None
    return t * j * t_inv, t * s_j * t_inv, eigenvalues

def oracle_straighten(algebra, word):
    """Independent rewriting: recursively straighten the tail, then
    bubble the head letter into each resulting monomial."""
    r = algebra.dim
    if not word:
        return {(0,) * r: Q(1)}
    tail = oracle_straighten(algebra, word[1:])
    head = word[0]
    out = {}
    for mono, coeff in tail.items():
        for key, value in _oracle_insert(algebra, head, mono).items():
            out[key] = out.get(key, Q(0)) + coeff * value
    return {k: v for k, v in out.items() if v}


def _oracle_insert(algebra, letter, mono):
    support = [j for j, a in enumerate(mono) if a]
    if not support or letter <= support[0]:
        bumped = list(mono)
        bumped[letter] += 1
        return {tuple(bumped): Q(1)}
    first = support[0]
    shrunk = list(mono)
    shrunk[first] -= 1
    shrunk = tuple(shrunk)
    # letter * first = first * letter + [letter, first]
    out = {}
    swapped = _oracle_insert(algebra, letter, shrunk)
    for mono2, coeff in swapped.items():
        for key, value in _oracle_insert(algebra, first, mono2).items():
            out[key] = out.get(key, Q(0)) + coeff * value
    for k, c in enumerate(algebra.table[letter][first]):
        if c:
            for key, value in _oracle_insert(algebra, k, shrunk).items():
                out[key] = out.get(key, Q(0)) + c * value
    return {k: v for k, v in out.items() if v}


def _value_key(element):
    return tuple(sorted(element.items()))


def oracle_low_ideal(algebra, truncation):
    """Span of the low-degree parts of all straightened long words."""
    r = algebra.dim
    k = algebra.nilpotency_index()
    bound = truncation * max(1, k - 1)
    values = {}
    for i in range(r):
        element = {tuple(1 if j == i else 0 for j in range(r)): Q(1)}
        values[_value_key(element)] = element
    collected = []
    level = values
    for length in range(2, bound + 1):
        nxt = {}
        for element in level.values():
            for i in range(r):
                grown = {}
                for mono, coeff in element.items():
                    for key, value in _oracle_insert(algebra, i, mono).items():
                        grown[key] = grown.get(key, Q(0)) + coeff * value
                grown = {kk: vv for kk, vv in grown.items() if vv}
                nxt[_value_key(grown)] = grown
        level = nxt
        if length > truncation:
            collected.extend(level.values())
    low_monos = monomials_up_to(r, truncation)
    low_index = {mono: i for i, mono in enumerate(low_monos)}
    rows = []
    for element in collected:
        vec = [Q(0)] * len(low_monos)
        keep = False
        for mono, coeff in element.items():
            if sum(mono) <= truncation:
                vec[low_index[mono]] = coeff
                keep = True
        if keep:
            rows.append(tuple(vec))
    return Subspace.from_vectors(len(low_monos), rows)


def package_low_ideal_in_oracle_coords(built):
    mod = built.module
    low_monos = monomials_up_to(mod.algebra.dim, mod.truncation)
    low_index = {mono: i for i, mono in enumerate(low_monos)}
    rows = []
    for row in mod.low_ideal.basis.rows:
        vec = [Q(0)] * len(low_monos)
        for idx, coeff in enumerate(row):
            if coeff:
                vec[low_index[mod.monomials[idx]]] = coeff
        rows.append(tuple(vec))
    return Subspace.from_vectors(len(low_monos), rows)
