"""Even lattices, discriminant forms, and the verification oracle.

A Gram matrix K of an even lattice L determines the discriminant group
A_L = Z^m / K Z^m of order |det K| together with the quadratic form
q2(w) = w^T K^{-1} w mod 2 on dual-coset representatives w.  The metric group
(A_L, q2/2 mod 1) is the abelian anyon model the lattice realizes, with twists
theta = e^{pi i q2} and central charge = signature(K) mod 8.

`verify_realization` is the oracle used throughout: it re-derives evenness,
determinant, exact inertia, and the discriminant form of a candidate Gram
matrix and matches the form against a target metric group by explicit
isometry search.

Explicit even positive-definite families provided here:

* `cartan_a(n)` / `cartan_d(n)` / `e6`..`e8`: the simply-laced root lattices,
* `k_e(r)` (rank 3, r even) and `k_o(r)` (rank 7, r odd) with cyclic
  discriminant Z_{2^r} in the D family,
* `k_double_prime(p, r, s)`: the rank-(p'+1) construction for cyclic odd
  p = 1 mod 4 models, built from an auxiliary prime p' = 3 mod 4 with
  prescribed quadratic characters and a square root t of 2 p^r mod p'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    determinant,
    has_even_diagonal,
    inertia,
    is_symmetric,
    smith_normal_form,
    solve_columns,
)
from .metric_groups import (
    MetricGroup,
    central_charge_gauss,
    is_isomorphic,
)
from .numtheory import is_prime, jacobi_symbol, sqrt_mod_prime_power

__all__ = [
    "Lattice",
    "DiscriminantData",
    "discriminant_form",
    "lattice_metric_group",
    "CheckResult",
    "RealizationReport",
    "verify_realization",
    "cartan_a",
    "cartan_d",
    "e6_gram",
    "e7_gram",
    "e8_gram",
    "k_e",
    "k_o",
    "k_double_prime",
]


@dataclass(frozen=True)
class Lattice:
    """An integral lattice: Gram matrix, optionally an exact rational basis
    inside an ambient quadratic space (used by gluing and complements)."""

    gram: list[list[int]]
    basis: list[list[Fraction]] | None = None
    ambient_gram: list[list[int]] | None = None

    def __post_init__(self):
        if not is_symmetric(self.gram):
            raise ValueError("Gram matrix must be symmetric")
        if self.basis is not None:
            if self.ambient_gram is None:
                raise ValueError("a basis needs an ambient Gram matrix")
            recomputed = _gram_of_rows(self.basis, self.ambient_gram)
            if recomputed != [[Fraction(x) for x in row] for row in self.gram]:
                raise ValueError("basis and ambient Gram do not reproduce the Gram matrix")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return has_even_diagonal(self.gram)

    def determinant(self) -> int:
        return determinant(self.gram)


def _gram_of_rows(rows, ambient):
    """rows * ambient * rows^T, computed over integers after clearing the
    common denominator."""
    from math import lcm

    den = lcm(1, *(Fraction(x).denominator for row in rows for x in row))
    int_rows = [[int(Fraction(x) * den) for x in row] for row in rows]
    tmp = []
    for r in int_rows:
        tmp.append([sum(x * amb_row[j] for x, amb_row in zip(r, ambient) if x) for j in range(len(ambient))])
    out = []
    for t in tmp:
        out.append([Fraction(sum(x * y for x, y in zip(s, t) if x), den * den) for s in int_rows])
    return out


@dataclass(frozen=True)
class DiscriminantData:
    """Cokernel invariants, dual-coset generator representatives, and the
    values of q2 (mod 2) and the pairing b (mod 1) on those generators."""

    invariant_factors: tuple[int, ...]
    generator_reps: tuple[tuple[int, ...], ...]
    q2_gen: tuple[Fraction, ...]
    bil_gen: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for n in self.invariant_factors:
            out *= n
        return out

    def metric_group(self) -> MetricGroup:
        return MetricGroup(
            self.invariant_factors,
            tuple(q / 2 for q in self.q2_gen),
            self.bil_gen,
        )

    def q2_of(self, coeffs) -> Fraction:
        """q2 of the class sum_j coeffs[j] * generator_j, mod 2."""
        total = Fraction(0)
        k = len(self.invariant_factors)
        for i in range(k):
            if coeffs[i]:
                total += coeffs[i] * coeffs[i] * self.q2_gen[i]
                for j in range(i + 1, k):
                    if coeffs[j]:
                        total += 2 * coeffs[i] * coeffs[j] * self.bil_gen[i][j]
        return total % 2


def _mod2(x: Fraction) -> Fraction:
    return x % 2


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def discriminant_form(gram: list[list[int]]) -> DiscriminantData:
    """Extract A_L = Z^m / K Z^m with q2 on generators, via Smith normal form.

    Requires an even symmetric Gram matrix with nonzero determinant.  The
    generator representative for the j-th invariant factor is column j of
    U^{-1}, where U K V = S.
    """
    if not is_symmetric(gram):
        raise ValueError("Gram matrix must be symmetric")
    if not has_even_diagonal(gram):
        raise ValueError("Gram matrix must be even (all diagonal entries even)")
    m = len(gram)
    det = determinant(gram)
    if det == 0:
        raise ValueError("Gram matrix is singular")
    snf = smith_normal_form(gram)
    gens: list[tuple[int, ...]] = []
    factors: list[int] = []
    for j in range(m):
        s = snf.s[j][j]
        if s > 1:
            factors.append(s)
            gens.append(tuple(snf.u_inv[i][j] for i in range(m)))
    if not gens:
        return DiscriminantData((), (), (), ())
    sols = solve_columns(gram, [list(w) for w in gens])
    q2 = tuple(
        _mod2(sum(wi * zi for wi, zi in zip(w, z)))
        for w, z in zip(gens, sols)
    )
    bil = tuple(
        tuple(_mod1(sum(wi * zi for wi, zi in zip(w, sols[j]))) for j in range(len(gens)))
        for w in gens
    )
    return DiscriminantData(tuple(factors), tuple(gens), q2, bil)


def lattice_metric_group(gram: list[list[int]]) -> MetricGroup:
    """The anyon model (A_L, q2/2 mod 1) attached to an even Gram matrix."""
    return discriminant_form(gram).metric_group()


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class RealizationReport:
    checks: tuple[CheckResult, ...]
    signature: int | None = None
    witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        for c in self.checks:
            yield f"[{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}"


def verify_realization(gram: list[list[int]], target: MetricGroup, iso_budget: int = 4096) -> RealizationReport:
    """Full oracle: does this Gram matrix realize the target anyon model?

    Checks evenness, |det| = |A|, nondegeneracy and exact inertia, the
    signature = central charge congruence mod 8, and finally an explicit
    isometry between the discriminant form and the target.
    """
    checks: list[CheckResult] = []
    if not is_symmetric(gram):
        return RealizationReport((CheckResult("symmetric", False, "matrix is not symmetric"),))
    even = has_even_diagonal(gram)
    checks.append(CheckResult("even", even, f"diagonal {[gram[i][i] for i in range(len(gram))]}"))
    det = determinant(gram)
    checks.append(CheckResult("nondegenerate", det != 0, f"det = {det}"))
    if not even or det == 0:
        return RealizationReport(tuple(checks))
    size_ok = abs(det) == target.size
    checks.append(CheckResult("determinant", size_ok, f"|det| = {abs(det)}, |A| = {target.size}"))
    n_plus, n_minus, n_zero = inertia(gram)
    sig = n_plus - n_minus
    checks.append(
        CheckResult("inertia", n_zero == 0, f"(n+, n-, n0) = ({n_plus}, {n_minus}, {n_zero})")
    )
    charge = central_charge_gauss(target)
    sig_ok = (sig - charge) % 8 == 0
    checks.append(
        CheckResult("signature_mod_8", sig_ok, f"signature {sig} vs central charge {charge} (mod 8)")
    )
    if not size_ok:
        return RealizationReport(tuple(checks), signature=sig)
    disc = discriminant_form(gram)
    witness = is_isomorphic(disc.metric_group(), target, budget=iso_budget)
    checks.append(
        CheckResult(
            "discriminant_form",
            witness is not None,
            f"invariants {disc.invariant_factors}, q2(gens) = {[str(q) for q in disc.q2_gen]}"
            + (f", witness {witness}" if witness else ", no isometry"),
        )
    )
    return RealizationReport(tuple(checks), signature=sig, witness=witness)


# ---------------------------------------------------------------------------
# explicit positive-definite families


def cartan_a(n: int) -> Lattice:
    """Cartan matrix of A_n = su(n+1): tridiagonal (2, -1), determinant n+1."""
    if n < 1:
        raise ValueError(f"cartan_a requires n >= 1, got {n}")
    gram = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
    return Lattice(gram)


def cartan_d(n: int) -> Lattice:
    """Cartan matrix of D_n (n >= 3): a fork at the end of an A_{n-1} chain."""
    if n < 3:
        raise ValueError(f"cartan_d requires n >= 3, got {n}")
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = 2
    for i in range(n - 2):
        gram[i][i + 1] = gram[i + 1][i] = -1
    gram[n - 3][n - 1] = gram[n - 1][n - 3] = -1
    return Lattice(gram)


def _from_dynkin(edges, n):
    gram = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return Lattice(gram)


def e6_gram() -> Lattice:
    return _from_dynkin([(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)], 6)


def e7_gram() -> Lattice:
    return _from_dynkin([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)], 7)


def e8_gram() -> Lattice:
    return _from_dynkin([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)], 8)


def k_e(r: int) -> Lattice:
    """Rank-3 even positive-definite lattice with discriminant Z_{2^r} in the
    D family; defined for even r >= 2 (the corner (2^r + 2)/3 is integral
    exactly then)."""
    if r < 2 or r % 2:
        raise ValueError(f"k_e requires even r >= 2, got {r}")
    corner = (2**r + 2) // 3
    gram = [[corner, 0, 1], [0, 2, -1], [1, -1, 2]]
    _assert_posdef_even(gram, 2**r, "k_e")
    return Lattice(gram)


def k_o(r: int) -> Lattice:
    """Rank-7 companion of k_e for odd r >= 3, corner (2^r + 4)/3."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"k_o requires odd r >= 3, got {r}")
    corner = (2**r + 4) // 3
    gram = [
        [corner, 0, 1, 0, 0, 0, -1],
        [0, 2, -1, 0, 0, 0, 0],
        [1, -1, 2, -1, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, -1, 2, 0],
        [-1, 0, 0, -1, 0, 0, 2],
    ]
    _assert_posdef_even(gram, 2**r, "k_o")
    return Lattice(gram)


def _assert_posdef_even(gram, det_target, name):
    if not has_even_diagonal(gram):
        raise ValueError(f"{name}: diagonal not even")
    n_plus, n_minus, n_zero = inertia(gram)
    if n_minus or n_zero:
        raise ValueError(f"{name}: not positive definite, inertia ({n_plus}, {n_minus}, {n_zero})")
    det = determinant(gram)
    if abs(det) != det_target:
        raise ValueError(f"{name}: |det| = {abs(det)}, expected {det_target}")


def k_double_prime(p: int, r: int, s: int, pprime_bound: int = 100000) -> tuple[Lattice, int, int]:
    """Even positive-definite lattice with discriminant Z_{p^r}, p = 1 mod 4.

    Searches the smallest prime p' = 3 mod 4 with (2 p^r / p') = 1 and
    (2 p' / p) = s, takes the smallest t with t^2 = 2 p^r mod p', and builds
    the rank-(p'+1) matrix: a Cartan A_{p'-1} core, a heavy corner
    (p' p^r + 1)/2 tied to the last coordinate by p^r, and a unit hook at
    position p' - t.  Returns (lattice, p', t).
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"p must be a prime = 1 mod 4, got {p}")
    if s not in (1, -1):
        raise ValueError(f"s must be +-1, got {s}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    n = p**r
    pprime = None
    candidate = 3
    while candidate <= pprime_bound:
        if (
            candidate % 4 == 3
            and is_prime(candidate)
            and candidate != p
            and jacobi_symbol(2 * n % candidate, candidate) == 1
            and jacobi_symbol(2 * candidate % p, p) == s
        ):
            pprime = candidate
            break
        candidate += 2
    if pprime is None:
        raise ValueError(f"no auxiliary prime below {pprime_bound} for (p, r, s) = ({p}, {r}, {s})")
    t = min(sqrt_mod_prime_power(2 * n % pprime, pprime, 1))
    c = pprime + 1
    gram = [[0] * c for _ in range(c)]
    gram[0][0] = (pprime * n + 1) // 2
    gram[0][c - 1] = gram[c - 1][0] = n
    for i in range(1, c - 1):
        gram[i][i] = 2
        if i + 1 < c - 1:
            gram[i][i + 1] = gram[i + 1][i] = -1
    hook = pprime - t
    gram[hook][c - 1] = gram[c - 1][hook] = 1
    gram[c - 1][c - 1] = (2 * n + t * (pprime - t)) // pprime
    _assert_posdef_even(gram, n, "k_double_prime")
    factors = smith_normal_form(gram).invariant_factors()
    if factors != [n]:
        raise ValueError(f"k_double_prime: cokernel {factors} is not Z_{n}")
    return Lattice(gram), pprime, t
