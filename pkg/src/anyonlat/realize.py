"""Routing: pick a K-matrix construction for a prime family instance.

Default route is the continued-fraction synthesis (small, possibly
indefinite); the positive-definite route assembles root lattices, the
rank-(p'+1) construction, the rank-3/7 D-family lattices, eight-copy
complements, and the E/F gluings:

  family, condition         positive-definite lattice
  A_{p^r}, p = 1 mod 4      K''(p^r, p'+1, +1)
  A_{p^r}, p = 3 mod 4      complement of the Cartan A_{p^r - 1} lattice
  B_{p^r}, p = 1 mod 4      K''(p^r, p'+1, -1)
  B_{p^r}, p = 3 mod 4      Cartan A_{p^r - 1}
  A_{2^r}                   (2^r)
  B_{2^r}                   complement of (2^r)
  D_{2^r}                   k_e(r) / k_o(r)
  C_{2^r}                   complement of k_e(r) / k_o(r)
  E_{2^r}, F_{2^r}          block gluing over a B- resp. C-family input

The four instances the expansion cannot serve (A_3, B_2, B_4, C_4) fall
through to the positive-definite route automatically.
"""

from __future__ import annotations

from .gluing import build_ef_positive, conjugate_realization
from .lattices import Lattice, cartan_a, k_double_prime, k_e, k_o
from .metric_groups import PrimeFamilySpec
from .wall import SpecialCaseRouted, choose_c_for_family, direct_ef_k, k_from_wall

__all__ = ["kmatrix_for", "positive_definite_realization"]


def positive_definite_realization(spec: PrimeFamilySpec) -> Lattice:
    """An even positive-definite Gram matrix realizing the family instance."""
    fam, p, r = spec.family, spec.p, spec.r
    if fam == "E" or fam == "F":
        return build_ef_positive(fam, r)
    if p != 2:
        if p % 4 == 1:
            lattice, _, _ = k_double_prime(p, r, 1 if fam == "A" else -1)
            return lattice
        root = cartan_a(p**r - 1)
        return root if fam == "B" else conjugate_realization(root)
    if fam == "A":
        return Lattice([[2**r]])
    if fam == "B":
        return conjugate_realization([[2**r]])
    d_side = k_e(r) if r % 2 == 0 else k_o(r)
    return d_side if fam == "D" else conjugate_realization(d_side)


def kmatrix_for(spec: PrimeFamilySpec, positive_definite: bool = False) -> tuple[list[list[int]], str]:
    """(gram, route description) for one prime family instance."""
    if positive_definite:
        return positive_definite_realization(spec).gram, "positive-definite table"
    if spec.family in "EF":
        return direct_ef_k(spec.family, spec.r), "direct rank-2/4 form"
    try:
        n = choose_c_for_family(spec)
    except SpecialCaseRouted as routed:
        return positive_definite_realization(spec).gram, f"special case: {routed.route}"
    return k_from_wall(n, spec.p**spec.r), f"continued fraction, n = {n}"
