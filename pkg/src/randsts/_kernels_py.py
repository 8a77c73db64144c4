"""Pure-Python per-pair surface statistics; reference for the compiled kernel."""


def _find(parent, x):
    r = x
    while parent[r] != r:
        r = parent[r]
    while parent[x] != r:
        parent[x], x = r, parent[x]
    return r


def analyze_pair(sigma, tau):
    """(commutator cycle lengths, descending; components; holonomy code; cylinders).

    Inputs are 0-based image sequences. Holonomy code: 0 = H, 1 = V, 2 = U.
    """
    s = [int(v) for v in sigma]
    t = [int(v) for v in tau]
    n = len(s)
    if len(t) != n:
        raise ValueError("degree mismatch")
    sinv = [0] * n
    tinv = [0] * n
    for x in range(n):
        sinv[s[x]] = x
        tinv[t[x]] = x
    c = [s[t[sinv[tinv[x]]]] for x in range(n)]

    seen = [False] * n
    lengths = []
    fcount = 0
    torus = True
    for x in range(n):
        if seen[x]:
            continue
        k = 0
        y = x
        while not seen[y]:
            seen[y] = True
            y = c[y]
            k += 1
        lengths.append(k)
        if k == 1:
            fcount += 1
            if s[x] != x or t[x] != x:
                torus = False
    lengths.sort(reverse=True)

    parent = list(range(n))
    comps = n
    for x in range(n):
        for y in (s[x], t[x]):
            a = _find(parent, x)
            b = _find(parent, y)
            if a != b:
                parent[b] = a
                comps -= 1

    if fcount == 0 or torus:
        hol = 0
    elif n > 2 * fcount:
        hol = 1
    else:
        hol = 2

    band = [-1] * n
    nb = 0
    for x in range(n):
        if band[x] >= 0:
            continue
        y = x
        while band[y] < 0:
            band[y] = nb
            y = s[y]
        nb += 1
    notflat = [False] * nb
    for x in range(n):
        if c[t[x]] != t[x]:
            notflat[band[x]] = True
    parent = list(range(nb))
    cyl = nb
    for x in range(n):
        a = band[x]
        if not notflat[a]:
            a = _find(parent, a)
            b = _find(parent, band[t[x]])
            if a != b:
                parent[b] = a
                cyl -= 1
    return lengths, comps, hol, cyl
