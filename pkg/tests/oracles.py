"""Independent reference routines for the tests; deliberately share no code with the package."""

import itertools


def rank_mod(rows, q):
    rows = [[x % q for x in r] for r in rows]
    r = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = pow(rows[r][c], q - 2, q)
        rows[r] = [x * iv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def brute_minrank(n, arcs, q=2):
    """Minimum rank over every representing matrix, no pruning."""
    arcs = sorted(arcs)
    best = n
    for diag in itertools.product(range(1, q), repeat=n):
        for vals in itertools.product(range(q), repeat=len(arcs)):
            M = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
            for (u, v), x in zip(arcs, vals):
                M[u][v] = x
            best = min(best, rank_mod(M, q))
    return best


def brute_alpha(n, edges):
    """Largest vertex subset with no edge inside (edges as unordered pairs)."""
    es = {frozenset(e) for e in edges}
    for size in range(n, 0, -1):
        for sub in itertools.combinations(range(n), size):
            if not any(frozenset(p) in es for p in itertools.combinations(sub, 2)):
                return size
    return 0
