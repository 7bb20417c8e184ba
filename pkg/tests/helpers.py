"""Small constructors shared by the tests."""

from __future__ import annotations

from consim.exactmat import CMatrix, GaussianRational, place_blocks


def m(rows):
    """Shorthand: CMatrix from nested Python numbers (``1j`` allowed)."""
    return CMatrix.from_rows(rows)


def z(re, im=0):
    return GaussianRational(re, im)


def grid(sizes, cells):
    """Block matrix from a square grid of block sizes and ``{(r, c): block}`` (0-based)."""
    offs = [sum(sizes[:k]) for k in range(len(sizes))]
    n = sum(sizes)
    return place_blocks(n, n, [(offs[r], offs[c], B) for (r, c), B in cells.items()])


def displayed_example(rng, q=2, q2=1):
    """Named parameters for ``J_4(0_q) (+) J_2(0_q2)`` with the hand-drawn ``S`` and ``S#``.

    Returns ``(params, S, S_weyr)`` where ``S`` and ``S_weyr`` are assembled
    cell by cell from the drawings, independently of the template code.
    """
    from consim.commutant import CommutantParams, random_matrix

    def r(a, b):
        return random_matrix(rng, a, b)

    C, C1, C2, C3 = (r(q, q) for _ in range(4))
    D, D1 = r(q, q2), r(q, q2)
    E, E1 = r(q2, q), r(q2, q)
    F, F1 = r(q2, q2), r(q2, q2)
    params = CommutantParams({(1, 1): (C, C1, C2, C3), (1, 2): (D, D1), (2, 1): (E, E1), (2, 2): (F, F1)})
    b = lambda X: X.conj()  # noqa: E731
    # substrips in original order: 1,1 2,1 3,1 4,1 1,2 2,2
    S = grid(
        [q, q, q, q, q2, q2],
        {
            (0, 0): C, (0, 1): C1, (0, 2): C2, (0, 3): C3, (0, 4): D, (0, 5): D1,
            (1, 1): b(C), (1, 2): b(C1), (1, 3): b(C2), (1, 5): b(D),
            (2, 2): C, (2, 3): C1,
            (3, 3): b(C),
            (4, 2): E, (4, 3): E1, (4, 4): F, (4, 5): F1,
            (5, 3): b(E), (5, 5): b(F),
        },
    )
    # substrips in rearranged order: 1,1 1,2 2,1 2,2 3,1 4,1
    S_weyr = grid(
        [q, q2, q, q2, q, q],
        {
            (0, 0): C, (0, 1): D, (0, 2): C1, (0, 3): D1, (0, 4): C2, (0, 5): C3,
            (1, 1): F, (1, 3): F1, (1, 4): E, (1, 5): E1,
            (2, 2): b(C), (2, 3): b(D), (2, 4): b(C1), (2, 5): b(C2),
            (3, 3): b(F), (3, 5): b(E),
            (4, 4): C, (4, 5): C1,
            (5, 5): b(C),
        },
    )
    return params, S, S_weyr
