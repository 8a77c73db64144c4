"""Exact distributions of the commutator [sigma, tau] under the standard and
horizontally restricted (HR) models, plus finite-n bounds and a brute-force
enumeration oracle.

Everything is exact ``Fraction`` arithmetic. The per-element probability of
the commutator landing on ``g`` is

    P_mu(g) = (1/n!) * sum_lambda chi^lambda(mu)^2 * chi^lambda(g) / dim(lambda)

and the vertex-count generating function specializes Schur functions to
content products. The standard model is the class-size-weighted mixture of the
HR models.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence, Union

from .characters import character_table, dimension
from .partitions import (
    all_partitions,
    class_size,
    hooks_and_contents,
    is_even_class,
    partition,
)

__all__ = [
    "FeasibilityError",
    "MAX_EXACT_N",
    "BRUTE_FORCE_PAIR_BUDGET",
    "HR",
    "Standard",
    "ClassDist",
    "PGFPoly",
    "StratumDeviation",
    "BruteForceResult",
    "p_value",
    "commutator_class_distribution",
    "vertex_count_pgf",
    "tv_distance",
    "uniform_an_distribution",
    "uniform_an_cycle_pgf",
    "tv_upper_bound",
    "tail_bound",
    "l2_discrepancy",
    "stratum_class_deviation",
    "uniform_class_gap",
    "brute_force_model",
    "dist_moments",
    "content_polynomial",
]

MAX_EXACT_N = 30
BRUTE_FORCE_PAIR_BUDGET = 5 * 10**8


class FeasibilityError(RuntimeError):
    """A configured size gate was exceeded; ``gate`` names it."""

    def __init__(self, gate: str, message: str):
        self.gate = gate
        super().__init__(f"{gate}: {message}")


@dataclass(frozen=True)
class HR:
    """Horizontally restricted model: sigma uniform in the class of ``mu``."""

    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", partition(sorted(self.mu, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.mu)

    @property
    def tag(self) -> str:
        return "hr(" + ".".join(map(str, self.mu)) + ")"


@dataclass(frozen=True)
class Standard:
    """Standard model: (sigma, tau) uniform in S_n x S_n."""

    tag = "standard"


Model = Union[HR, Standard]


@dataclass(frozen=True)
class ClassDist:
    """Probability mass of each S_n-class inside A_n."""

    n: int
    probs: dict  # partition -> Fraction (mass of the whole class)
    model: str = ""

    def per_element(self, g_class) -> Fraction:
        g_class = tuple(g_class)
        return self.probs.get(g_class, Fraction(0)) / class_size(g_class)

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def items(self):
        return self.probs.items()


@dataclass(frozen=True)
class PGFPoly:
    """coefficients[x] = Pr(count = x)."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def prob(self, x: int) -> Fraction:
        if 0 <= x < len(self.coefficients):
            return self.coefficients[x]
        return Fraction(0)

    def tail(self, t: int) -> Fraction:
        """Pr(count >= t), by suffix sum."""
        return sum(self.coefficients[max(t, 0):], Fraction(0))

    def __call__(self, q) -> Fraction:
        return sum((c * Fraction(q) ** x for x, c in enumerate(self.coefficients)), Fraction(0))

    def mean(self) -> Fraction:
        return dist_moments(self, [0, 1])

    def variance(self) -> Fraction:
        m = self.mean()
        return dist_moments(self, [0, 0, 1]) - m * m


@dataclass(frozen=True)
class StratumDeviation:
    deviations: dict  # even class -> |P(class) - U(class)|
    certified: bool  # every deviation^2 <= (|K_max|/|A_n|) * l2_discrepancy


@dataclass(frozen=True)
class BruteForceResult:
    model: str
    n: int
    pairs: int
    class_dist: ClassDist
    vertex_pgf: PGFPoly
    connected: Fraction
    holonomy: dict = field(default_factory=dict)  # 'H' / 'V' / 'U' -> Fraction


def _gate(n: int):
    if n > MAX_EXACT_N:
        raise FeasibilityError(
            "MAX_EXACT_N", f"exact character pipelines support n <= {MAX_EXACT_N}, got n={n}"
        )


def _model_n(model: Model, n: int | None) -> int:
    if isinstance(model, HR):
        if n is not None and n != model.n:
            raise ValueError(f"size mismatch: |mu|={model.n}, n={n}")
        return model.n
    if n is None or n < 1:
        raise ValueError("the standard model needs n >= 1")
    return n


def _as_model(model_or_mu) -> Model:
    if isinstance(model_or_mu, (HR, Standard)):
        return model_or_mu
    return HR(tuple(model_or_mu))


@lru_cache(maxsize=256)
def _weights(model: Model, n: int) -> dict:
    """lambda -> E[chi^lambda(sigma)^2] under the model's sigma distribution."""
    _gate(n)
    table = character_table(n)
    if isinstance(model, HR):
        col = table[model.mu]
        return {lam: v * v for lam, v in col.items()}
    fact = factorial(n)
    acc = Counter()
    for mu, col in table.items():
        k = class_size(mu)
        for lam, v in col.items():
            acc[lam] += k * v * v
    return {lam: Fraction(acc[lam], fact) for lam in table[(1,) * n]}


def _per_element(model: Model, n: int, g_class: tuple) -> Fraction:
    if not is_even_class(g_class):
        return Fraction(0)
    col = character_table(n)[g_class]
    w = _weights(model, n)
    total = sum((Fraction(wt * col[lam], dimension(lam)) for lam, wt in w.items()), Fraction(0))
    return total / factorial(n)


def p_value(mu: Sequence[int], g_class: Sequence[int]) -> Fraction:
    """Probability that the HR(mu) commutator equals one fixed element of class g_class."""
    model = HR(tuple(mu))
    g_class = partition(sorted(g_class, reverse=True))
    if sum(g_class) != model.n:
        raise ValueError(f"size mismatch: |mu|={model.n}, |g|={sum(g_class)}")
    return _per_element(model, model.n, g_class)


def commutator_class_distribution(model, n: int | None = None) -> ClassDist:
    model = _as_model(model)
    n = _model_n(model, n)
    _gate(n)
    probs = {}
    for g in all_partitions(n):
        if is_even_class(g):
            probs[g] = class_size(g) * _per_element(model, n, g)
    return ClassDist(n, probs, model.tag)


@lru_cache(maxsize=None)
def content_polynomial(lam: tuple) -> tuple:
    """Integer coefficients of prod_{cells} (q + content), lowest degree first."""
    poly = [1]
    for _, _, _, c in hooks_and_contents(lam).cells():
        new = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            new[i + 1] += a
            new[i] += a * c
        poly = new
    return tuple(poly)


def vertex_count_pgf(model, n: int | None = None) -> PGFPoly:
    """Distribution of the number of commutator cycles (surface vertices)."""
    model = _as_model(model)
    n = _model_n(model, n)
    _gate(n)
    coeffs = [Fraction(0)] * (n + 1)
    for lam, wt in _weights(model, n).items():
        if wt:
            for x, a in enumerate(content_polynomial(lam)):
                if a:
                    coeffs[x] += wt * a
    fact = factorial(n)
    return PGFPoly(tuple(c / fact for c in coeffs))


def tv_distance(a: ClassDist, b: ClassDist) -> Fraction:
    if a.n != b.n:
        raise ValueError(f"n mismatch: {a.n} != {b.n}")
    keys = set(a.probs) | set(b.probs)
    zero = Fraction(0)
    return sum((abs(a.probs.get(k, zero) - b.probs.get(k, zero)) for k in keys), zero) / 2


def uniform_an_distribution(n: int) -> ClassDist:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return ClassDist(1, {(1,): Fraction(1)}, "uniform_A1")
    fact = factorial(n)
    probs = {
        g: Fraction(2 * class_size(g), fact) for g in all_partitions(n) if is_even_class(g)
    }
    return ClassDist(n, probs, f"uniform_A{n}")


def uniform_an_cycle_pgf(n: int) -> PGFPoly:
    """Cycle count of a uniform element of A_n, from unsigned Stirling numbers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    stirling = [1]  # coefficients of q(q+1)...(q+j-1)
    for j in range(n):
        new = [0] * (len(stirling) + 1)
        for i, a in enumerate(stirling):
            new[i + 1] += a
            new[i] += a * j
        stirling = new
    if n == 1:
        return PGFPoly((Fraction(0), Fraction(1)))
    fact = factorial(n)
    return PGFPoly(
        tuple(Fraction(2 * s, fact) if (n - k) % 2 == 0 else Fraction(0) for k, s in enumerate(stirling))
    )


def tv_upper_bound(mu: Sequence[int], *, enforce_gate: bool = True) -> Fraction:
    """(1/4) sum over lambda not in {(n), (1^n)} of chi^lambda(mu)^4 / dim(lambda)^2.

    Bounds the squared total-variation distance to uniform on A_n for n >= 5.
    """
    mu = HR(tuple(mu)).mu
    n = sum(mu)
    if enforce_gate and n < 5:
        raise ValueError("the bound is established for n >= 5")
    _gate(n)
    col = character_table(n)[mu]
    trivial, sign = (n,), (1,) * n
    total = Fraction(0)
    for lam, v in col.items():
        if lam in (trivial, sign) or not v:
            continue
        total += Fraction(v**4, dimension(lam) ** 2)
    return total / 4


def tail_bound(mu: Sequence[int], t: int) -> Fraction:
    """Upper bound on Pr(vertex count >= t): the generating function at q=2
    divided by 2^t. Only shapes with at most two rows contribute."""
    if t < 1:
        raise ValueError("t must be at least 1")
    mu = HR(tuple(mu)).mu
    n = sum(mu)
    _gate(n)
    col = character_table(n)[mu]
    total = 0
    for k in range(n // 2 + 1):
        lam = partition((n - k, k))
        prod2 = 1
        for _, _, _, c in hooks_and_contents(lam).cells():
            prod2 *= 2 + c
        total += col[lam] ** 2 * prod2
    return Fraction(total, 2**t * factorial(n))


def l2_discrepancy(model, n: int | None = None) -> Fraction:
    """|A_n| * sum over g in A_n of (P(g) - U(g))^2, computed classwise."""
    model = _as_model(model)
    n = _model_n(model, n)
    if n < 2:
        raise ValueError("n must be at least 2")
    dist = commutator_class_distribution(model, n)
    fact = factorial(n)
    u = Fraction(2, fact)
    s = sum(
        (class_size(g) * (dist.per_element(g) - u) ** 2 for g in dist.probs), Fraction(0)
    )
    return Fraction(fact, 2) * s


def stratum_class_deviation(model, n: int | None = None) -> StratumDeviation:
    """|Pr(class) - uniform class mass| for each even class, with a certificate
    that every deviation obeys the classwise Cauchy–Schwarz bound."""
    model = _as_model(model)
    n = _model_n(model, n)
    if n < 2:
        raise ValueError("n must be at least 2")
    dist = commutator_class_distribution(model, n)
    unif = uniform_an_distribution(n)
    dev = {g: abs(dist.probs[g] - unif.probs[g]) for g in unif.probs}
    l2 = l2_discrepancy(model, n)
    k_max = max(class_size(g) for g in unif.probs)
    ratio = Fraction(2 * k_max, factorial(n))
    certified = all(d * d <= ratio * l2 for d in dev.values())
    return StratumDeviation(dev, certified)


def uniform_class_gap(n: int) -> Fraction:
    """Uniform-A_n mass of the largest even class minus that of the next one."""
    masses = sorted(uniform_an_distribution(n).probs.values(), reverse=True)
    if len(masses) < 2:
        raise ValueError("need at least two even classes")
    return masses[0] - masses[1]


def dist_moments(dist: PGFPoly, poly_coeffs: Sequence) -> Fraction:
    """E[p(X)] for p(x) = sum_j poly_coeffs[j] * x^j."""
    coeffs = [Fraction(c) for c in poly_coeffs]
    total = Fraction(0)
    for x, pr in enumerate(dist.coefficients):
        if pr:
            total += pr * sum((c * x**j for j, c in enumerate(coeffs)), Fraction(0))
    return total


def _cycle_type_and_fixmask(img: tuple):
    n = len(img)
    seen = [False] * n
    lengths = []
    fix = 0
    for s in range(n):
        if seen[s]:
            continue
        k = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = img[x]
            k += 1
        lengths.append(k)
        if k == 1:
            fix |= 1 << s
    lengths.sort(reverse=True)
    return tuple(lengths), fix


def brute_force_model(model, n: int | None = None) -> BruteForceResult:
    """Enumerate every pair of the model and tally the commutator class, the
    vertex count, connectedness and the three-valued holonomy class."""
    model = _as_model(model)
    n = _model_n(model, n)
    perms = list(itertools.permutations(range(n)))
    info = {p: _cycle_type_and_fixmask(p) for p in perms}
    if isinstance(model, HR):
        xs = [p for p in perms if info[p][0] == model.mu]
    else:
        xs = perms
    pairs = len(xs) * len(perms)
    if pairs > BRUTE_FORCE_PAIR_BUDGET:
        raise FeasibilityError(
            "BRUTE_FORCE_PAIR_BUDGET",
            f"{pairs} pairs exceed the budget of {BRUTE_FORCE_PAIR_BUDGET}; use sampling instead",
        )
    inv = {}
    for p in perms:
        q = [0] * n
        for i, x in enumerate(p):
            q[x] = i
        inv[p] = tuple(q)

    rng_n = range(n)
    class_counts = Counter()
    connected = 0
    hol = Counter()
    for s in xs:
        sinv = inv[s]
        fs = info[s][1]
        # sigma-cycle labels seed the component union-find
        label = [0] * n
        for i in rng_n:
            label[i] = -1
        k = 0
        for i in rng_n:
            if label[i] < 0:
                x = i
                while label[x] < 0:
                    label[x] = k
                    x = s[x]
                k += 1
        for t in perms:
            tinv = inv[t]
            c = tuple([s[t[sinv[tinv[x]]]] for x in rng_n])
            ctype, fc = info[c]
            class_counts[ctype] += 1

            parent = list(range(k))
            comps = k
            for x in rng_n:
                a = label[x]
                while parent[a] != a:
                    a = parent[a]
                b = label[t[x]]
                while parent[b] != b:
                    b = parent[b]
                if a != b:
                    parent[b] = a
                    comps -= 1
            if comps == 1:
                connected += 1

            if fc == 0 or fc & ~(fs & info[t][1]) == 0:
                hol["H"] += 1
            elif n > 2 * bin(fc).count("1"):
                hol["V"] += 1
            else:
                hol["U"] += 1

    probs = {g: Fraction(class_counts.get(g, 0), pairs) for g in all_partitions(n) if is_even_class(g)}
    vcounts = [0] * (n + 1)
    for g, cnt in class_counts.items():
        vcounts[len(g)] += cnt
    pgf = PGFPoly(tuple(Fraction(v, pairs) for v in vcounts))
    return BruteForceResult(
        model=model.tag,
        n=n,
        pairs=pairs,
        class_dist=ClassDist(n, probs, model.tag),
        vertex_pgf=pgf,
        connected=Fraction(connected, pairs),
        holonomy={key: Fraction(hol.get(key, 0), pairs) for key in "HVU"},
    )
