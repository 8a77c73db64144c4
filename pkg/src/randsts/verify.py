"""Invariant suites behind ``randsts verify``.

Each suite yields ``Check(name, ok, detail)`` results; nothing raises on a
failed check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .characters import character_table, dimension, two_row_dimension
from .exactdist import (
    HR,
    Standard,
    brute_force_model,
    commutator_class_distribution,
    l2_discrepancy,
    tail_bound,
    tv_distance,
    tv_upper_bound,
    uniform_an_distribution,
    uniform_class_gap,
    vertex_count_pgf,
)
from .partitions import all_partitions, class_size, largest_classes
from .permcore import parse_cycles
from .surface import analyze

SUITES = ("figure1", "orthogonality", "oracle", "bounds")
DEFAULT_MAX_N = {"figure1": 0, "orthogonality": 8, "oracle": 5, "bounds": 8}

FIGURE1_SIGMA = "(1,2)(3,4,5)(6,7)(8,9)"
FIGURE1_TAU = "(1)(2,3)(4)(5,6,8)(7,9)"


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def figure1():
    rep = analyze(parse_cycles(FIGURE1_SIGMA, 9), parse_cycles(FIGURE1_TAU, 9))
    expect = {
        "commutator": (str(rep.commutator), "(1,4)(2,7,3)(5,6)"),
        "vertex_count": (rep.vertex_count, 5),
        "genus": (rep.genus, 3),
        "stratum": (str(rep.stratum), "2.1.1"),
        "marked_points": (rep.stratum.marked_points, 2),
        "connected": (rep.connected, True),
        "cylinders": (
            [c.squares for c in rep.cylinders],
            [(1, 2), (3, 4, 5), (6, 7, 8, 9)],
        ),
        "cylinder_heights": ([c.height for c in rep.cylinders], [1, 1, 2]),
        "holonomy": (rep.holonomy.value, "V"),
    }
    for key, (got, want) in expect.items():
        yield Check(f"figure1 {key}", got == want, f"got {got!r}, want {want!r}")


def orthogonality(max_n: int):
    for n in range(1, max_n + 1):
        table = character_table(n)
        parts = list(all_partitions(n))
        sizes = {mu: class_size(mu) for mu in parts}
        fact = factorial(n)
        bad = []
        for i, a in enumerate(parts):
            for b in parts[i:]:
                s = sum(sizes[mu] * table[mu][a] * table[mu][b] for mu in parts)
                if s != (fact if a == b else 0):
                    bad.append((a, b))
        yield Check(f"first orthogonality n={n}", not bad, f"failing pairs: {bad[:3]}")
        bad = [mu for mu in parts if sum(v * v for v in table[mu].values()) * sizes[mu] != fact]
        yield Check(f"column norms n={n}", not bad, f"failing classes: {bad[:3]}")
        ident = (1,) * n
        bad = [lam for lam in parts if table[ident][lam] != dimension(lam)]
        yield Check(f"identity column = dimensions n={n}", not bad, f"failing: {bad[:3]}")
        bad = [lam for lam in parts if table[(n,)][lam] not in (-1, 0, 1)]
        yield Check(f"n-cycle values in {{-1,0,1}} n={n}", not bad, f"failing: {bad[:3]}")
        bad = [k for k in range(1, n // 2 + 1) if dimension((n - k, k)) != two_row_dimension(n, k)]
        yield Check(f"two-row dimension formula n={n}", not bad, f"failing k: {bad}")


def oracle(max_n: int):
    for n in range(1, max_n + 1):
        models = [HR(mu) for mu in all_partitions(n)] + [Standard()]
        for model in models:
            bf = brute_force_model(model, n)
            cd = commutator_class_distribution(model, n)
            pgf = vertex_count_pgf(model, n)
            ok = bf.class_dist.probs == cd.probs and bf.vertex_pgf == pgf
            yield Check(f"oracle {model.tag} n={n}", ok, "character formulas differ from enumeration")


def bounds(max_n: int):
    for n in range(2, max_n + 1):
        unif = uniform_an_distribution(n)
        for mu in all_partitions(n):
            dist = commutator_class_distribution(mu)
            tv = tv_distance(dist, unif)
            if n >= 5:
                rhs = tv_upper_bound(mu)
                yield Check(f"TV^2 bound mu={mu}", tv * tv <= rhs, f"TV^2={tv * tv} > {rhs}")
            l2 = l2_discrepancy(mu)
            yield Check(f"4 TV^2 <= l2 mu={mu}", 4 * tv * tv <= l2, f"4TV^2={4 * tv * tv}, l2={l2}")
            pgf = vertex_count_pgf(mu)
            bad = [t for t in range(1, n + 2) if pgf.tail(t) > tail_bound(mu, t)]
            yield Check(f"tail bound mu={mu}", not bad, f"violated at t={bad}")
    for n in range(7, 13):
        top = [mu for mu, _ in largest_classes(n, 3)]
        want = [(n - 1, 1), (n,), (n - 3, 2, 1)]
        yield Check(f"three largest classes n={n}", top == want, f"got {top}")
        gap = uniform_class_gap(n)
        floor = Fraction(n - 6, n * (n - 3))
        yield Check(f"uniform A_n class gap n={n}", gap >= floor, f"gap {gap} < {floor}")


def run_suite(name: str, max_n: int | None = None):
    if name == "figure1":
        return list(figure1())
    if max_n is None:
        max_n = DEFAULT_MAX_N[name]
    return list({"orthogonality": orthogonality, "oracle": oracle, "bounds": bounds}[name](max_n))
