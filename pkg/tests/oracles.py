"""Independent reference implementations used only by the tests.

Nothing here imports the package; every routine is the most direct
(and slowest) formulation available.
"""
from fractions import Fraction
from itertools import permutations
from math import factorial


def naive_compose(p, q):
    # tuples of 1-based images, (p q)(x) = p(q(x))
    return tuple(p[q[i] - 1] for i in range(len(p)))


def naive_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def naive_commutator(s, t):
    return naive_compose(naive_compose(naive_compose(s, t), naive_inverse(s)), naive_inverse(t))


def naive_cycle_type(p):
    seen, lens = set(), []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        k, x = 0, start
        while x not in seen:
            seen.add(x)
            x = p[x - 1]
            k += 1
        lens.append(k)
    return tuple(sorted(lens, reverse=True))


def naive_partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in naive_partitions(n - first, first):
            yield (first,) + rest


def cells(lam):
    return {(r, c) for r, row in enumerate(lam) for c in range(row)}


def shape_of(cellset):
    rows = {}
    for r, _ in cellset:
        rows[r] = rows.get(r, 0) + 1
    return tuple(rows[r] for r in sorted(rows))


def is_shape(cellset):
    for r, c in cellset:
        if r and (r - 1, c) not in cellset:
            return False
        if c and (r, c - 1) not in cellset:
            return False
    return True


def _connected(cs):
    cs = set(cs)
    if not cs:
        return False
    stack = [next(iter(cs))]
    seen = set(stack)
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cs and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cs)


def brute_strips(lam, size):
    """All (child, height) with lam/child a border strip of the given size,
    by trying every subset of removable rim cells."""
    from itertools import combinations

    full = cells(lam)
    # rim: cells with no cell diagonally below-right
    rim = [x for x in full if (x[0] + 1, x[1] + 1) not in full]
    out = []
    for combo in combinations(rim, size):
        rest = full - set(combo)
        if not is_shape(rest) or not _connected(combo):
            continue
        rows = {r for r, _ in combo}
        out.append((shape_of(rest), len(rows) - 1))
    return sorted(out)


def bst_character(lam, mu):
    """Murnaghan-Nakayama by explicit strip enumeration, removing mu's parts
    in the given order."""
    lam = tuple(x for x in lam if x)
    if not mu:
        return 1 if not lam else 0
    total = 0
    for child, h in brute_strips(lam, mu[0]):
        total += (-1) ** h * bst_character(child, mu[1:])
    return total


def hook_dimension(lam):
    n = sum(lam)
    conj = [sum(1 for x in lam if x > c) for c in range(lam[0])] if lam else []
    prod = 1
    for r, row in enumerate(lam):
        for c in range(row):
            prod *= row - c + conj[c] - r - 1
    return factorial(n) // prod


def enumerate_commutators(n, sigma_class=None):
    """Exact class distribution and vertex-count law of [s,t] by full
    enumeration; sigma restricted to a cycle type if given."""
    perms = list(permutations(range(1, n + 1)))
    sigmas = [s for s in perms if sigma_class is None or naive_cycle_type(s) == tuple(sigma_class)]
    classes, verts = {}, {}
    total = len(sigmas) * len(perms)
    for s in sigmas:
        for t in perms:
            ct = naive_cycle_type(naive_commutator(s, t))
            classes[ct] = classes.get(ct, 0) + 1
            verts[len(ct)] = verts.get(len(ct), 0) + 1
    return (
        {k: Fraction(v, total) for k, v in classes.items()},
        {k: Fraction(v, total) for k, v in verts.items()},
    )
