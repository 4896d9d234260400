"""Command-line surface.

Subcommands:
  model      SPEC                    group data, q table, central charges, |Aut|
  kmatrix    SPEC [--positive-definite]   synthesize and self-verify a K-matrix
  verify     FILE --target SPEC      run the full realization oracle
  complement FILE                    glue 8 copies, emit the complement Gram
  weights    FILE                    conformal weights h_a and extremality score

Model specs name prime families with `*`-products: B[3], A[5^3], E[4]*A[2].
Matrix files are either JSON ({"gram": [[...]], "target": "...", "comment":
"..."}) or plain whitespace-separated integer rows; the format is
auto-detected on load.  All rationals print as p/q in lowest terms, q-values
reduced into [0, 1).  Exit codes: 0 pass, 1 verification failure, 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .gluing import conjugate_realization
from .lattices import (
    discriminant_form,
    verify_realization,
)
from .linalg import inertia, is_symmetric
from .metric_groups import (
    GAUSS_BUDGET_DEFAULT,
    BudgetExceededError,
    MetricGroup,
    PrimeFamilySpec,
    build_prime,
    central_charge_closed,
    central_charge_gauss,
    conjugate,
    direct_sum,
    trivial_group,
)
from .realize import kmatrix_for
from .symmetry import aut_bruteforce, aut_order_closed
from .weights import coset_minima, extremality_score

__all__ = ["main", "parse_spec", "parse_spec_factors", "load_matrix_file", "dump_matrix_file"]


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# model spec grammar


def parse_spec_factors(text: str) -> list[PrimeFamilySpec]:
    """`FAMILY[p^r]` factors joined by `*`, e.g. "B[3]*E[4]" or "A[5^3]"."""
    from .numtheory import prime_power_split

    factors = []
    for pos, chunk in enumerate(text.split("*")):
        part = chunk.strip()
        if not part:
            raise UsageError(f"empty factor at position {pos} in {text!r}")
        if len(part) < 4 or part[0] not in "ABCDEF" or part[1] != "[" or part[-1] != "]":
            raise UsageError(f"cannot parse factor {part!r} (expected FAMILY[p^r])")
        family = part[0]
        body = part[2:-1]
        try:
            if "^" in body:
                p_text, r_text = body.split("^", 1)
                p, r = int(p_text), int(r_text)
                if p ** r <= 0:
                    raise ValueError
            else:
                p, r = prime_power_split(int(body))
        except ValueError as exc:
            raise UsageError(f"bad prime power {body!r} in factor {part!r}: {exc}") from exc
        try:
            factors.append(PrimeFamilySpec(family, p, r))
        except ValueError as exc:
            raise UsageError(f"invalid factor {part!r}: {exc}") from exc
    return factors


def parse_spec(text: str) -> MetricGroup:
    """The metric group named by a spec string (direct sums folded)."""
    group = trivial_group()
    for spec in parse_spec_factors(text):
        group = direct_sum(group, build_prime(spec))
    return group


# ---------------------------------------------------------------------------
# matrix files


def load_matrix_file(path: str) -> tuple[list[list[int]], str | None, str | None]:
    """(gram, target spec or None, comment or None); JSON or plain rows."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    gram = None
    target = comment = None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError:
        payload = None
    if payload is not None:
        if not isinstance(payload, dict) or "gram" not in payload:
            raise UsageError(f"{path}: JSON matrix files need a 'gram' field")
        gram = payload["gram"]
        target = payload.get("target")
        comment = payload.get("comment")
    else:
        rows = [line.split() for line in text.splitlines() if line.strip()]
        try:
            gram = [[int(x) for x in row] for row in rows]
        except ValueError as exc:
            raise UsageError(f"{path}: not JSON and not whitespace-separated integers") from exc
    if not gram or any(len(row) != len(gram) for row in gram):
        raise UsageError(f"{path}: matrix must be square and nonempty")
    gram = [[int(x) for x in row] for row in gram]
    if not is_symmetric(gram):
        raise UsageError(f"{path}: matrix must be symmetric")
    return gram, target, comment


def dump_matrix_file(gram, target: str | None = None, comment: str | None = None, fmt: str = "structured") -> str:
    if fmt == "plain":
        return "\n".join(" ".join(str(x) for x in row) for row in gram) + "\n"
    payload = {"gram": gram}
    if target is not None:
        payload["target"] = target
    if comment is not None:
        payload["comment"] = comment
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write_out(path: str | None, content: str) -> None:
    if path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_model(args) -> int:
    started = time.perf_counter()
    factors = parse_spec_factors(args.spec)
    group = parse_spec(args.spec)
    print(f"model {args.spec}")
    print(f"invariant factors: {list(group.orders)}  (|A| = {group.size})")
    closed = sum(central_charge_closed(f) for f in factors) % 8
    # The Gauss sum scales far beyond the enumeration budget; never shrink it.
    gauss = central_charge_gauss(group, budget=max(args.budget, GAUSS_BUDGET_DEFAULT))
    print(f"central charge: closed form {closed}, Gauss sum {gauss}")
    if closed != gauss:
        print("MISMATCH between closed form and Gauss sum")
        return 1
    if group.size <= 64:
        print("q values:")
        for x in sorted(group.q_values()):
            print(f"  {x} -> {_frac(group.q(x))}")
    for f in factors:
        order, name = aut_order_closed(f)
        label = f" ({name})" if name else ""
        print(f"|Aut {f.label()}| = {order}{label}  [closed form]")
    if group.size <= args.budget:
        aut = aut_bruteforce(group, budget=args.budget)
        label = f" ({aut.structure_name})" if aut.structure_name else ""
        print(f"|Aut| = {aut.order}{label}  [brute force]")
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0


def _cmd_kmatrix(args) -> int:
    started = time.perf_counter()
    factors = parse_spec_factors(args.spec)
    blocks = []
    routes = []
    for f in factors:
        gram, route = kmatrix_for(f, positive_definite=args.positive_definite)
        blocks.append(gram)
        routes.append(f"{f.label()}: {route} (rank {len(gram)})")
    size = sum(len(b) for b in blocks)
    gram = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                gram[offset + i][offset + j] = x
        offset += len(b)
    target = parse_spec(args.spec)
    report = verify_realization(gram, target, iso_budget=args.budget)
    for line in report.lines():
        print(line)
    for route in routes:
        print(route)
    if not report.passed:
        print("verdict: FAIL")
        return 1
    _write_out(args.out, dump_matrix_file(gram, target=args.spec, fmt=args.format))
    if args.out:
        print(f"wrote {args.out}")
    print("verdict: pass")
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    started = time.perf_counter()
    gram, embedded_target, _ = load_matrix_file(args.file)
    spec_text = args.target or embedded_target
    if spec_text is None:
        raise UsageError("no --target given and the file embeds none")
    target = parse_spec(spec_text)
    report = verify_realization(gram, target, iso_budget=args.budget)
    for line in report.lines():
        print(line)
    print(f"verdict: {'pass' if report.passed else 'FAIL'} ({args.file} vs {spec_text})")
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_complement(args) -> int:
    started = time.perf_counter()
    gram, embedded_target, _ = load_matrix_file(args.file)
    comp = conjugate_realization(gram)
    print(f"complement rank {comp.rank}, |det| {abs(comp.determinant())}")
    disc_in = discriminant_form(gram)
    if disc_in.order <= args.budget:
        target = conjugate(disc_in.metric_group())
        report = verify_realization(comp.gram, target, iso_budget=args.budget)
        for line in report.lines():
            print(line)
        verdict = report.passed
    else:
        verdict = comp.is_even and abs(comp.determinant()) == disc_in.order
        print(f"[{'pass' if verdict else 'FAIL'}] structural checks only (budget)")
    out_target = None
    if embedded_target:
        try:
            factors = parse_spec_factors(embedded_target)
        except UsageError:
            factors = None
        if factors:
            out_target = "*".join(_conjugate_label(f) for f in factors)
    _write_out(args.out, dump_matrix_file(comp.gram, target=out_target, fmt=args.format))
    if args.out:
        print(f"wrote {args.out}")
    print(f"verdict: {'pass' if verdict else 'FAIL'}")
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0 if verdict else 1


def _conjugate_label(spec: PrimeFamilySpec) -> str:
    """Family label of the conjugate model.

    E and F are self-conjugate; at p = 2 conjugation swaps A/B and C/D; at odd
    p it swaps A/B exactly when -1 is a non-residue (p = 3 mod 4), since
    negating q multiplies the defining character by (-1/p).
    """
    fam = spec.family
    if fam in "EF" or (fam in "AB" and spec.p % 4 == 1):
        return spec.label()
    swap = {"A": "B", "B": "A", "C": "D", "D": "C"}
    return PrimeFamilySpec(swap[fam], spec.p, spec.r).label()


def _cmd_weights(args) -> int:
    started = time.perf_counter()
    gram, _, _ = load_matrix_file(args.file)
    minima = coset_minima(gram, budget=args.budget)
    disc = discriminant_form(gram)
    n_plus, n_minus, n_zero = inertia(gram)
    print(f"rank {len(gram)}, |A| = {len(minima)}, invariant factors {list(disc.invariant_factors)}")
    print(f"signature: {n_plus - n_minus}")
    for coeffs in sorted(minima):
        print(f"  h{list(coeffs)} = {_frac(minima[coeffs])}")
    nonzero = sorted(v for v in minima.values() if v)
    if nonzero:
        print(f"min nonzero h = {_frac(nonzero[0])}")
    print(f"extremality score = {_frac(extremality_score(gram, budget=args.budget))}")
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonlat",
        description="Exact construction and verification of abelian anyon models and their K-matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--budget", type=int, default=4096, help="enumeration budget (group order)")

    p_model = sub.add_parser("model", help="describe a model: q table, central charges, symmetries")
    p_model.add_argument("spec")
    add_common(p_model)

    p_km = sub.add_parser("kmatrix", help="synthesize a K-matrix for a model spec")
    p_km.add_argument("spec")
    p_km.add_argument("--positive-definite", action="store_true")
    p_km.add_argument("--out", default=None)
    p_km.add_argument("--format", choices=("structured", "plain"), default="structured")
    add_common(p_km)

    p_ver = sub.add_parser("verify", help="verify a Gram matrix file against a model spec")
    p_ver.add_argument("file")
    p_ver.add_argument("--target", default=None)
    add_common(p_ver)

    p_comp = sub.add_parser("complement", help="glue 8 copies and emit the conjugate realization")
    p_comp.add_argument("file")
    p_comp.add_argument("--out", default=None)
    p_comp.add_argument("--format", choices=("structured", "plain"), default="structured")
    add_common(p_comp)

    p_w = sub.add_parser("weights", help="conformal weights and extremality score")
    p_w.add_argument("file")
    add_common(p_w)

    return parser


_HANDLERS = {
    "model": _cmd_model,
    "kmatrix": _cmd_kmatrix,
    "verify": _cmd_verify,
    "complement": _cmd_complement,
    "weights": _cmd_weights,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except (UsageError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
