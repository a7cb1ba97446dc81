"""Closed-form predictions for each family and their verification.

Every closed form here is a claim under test: brute-force enumeration is
always the ground truth, and verify() compares the two, reporting concrete
counterexamples for any difference. Claims for the ojzr family are
informational (their derivations assume block length below the gap, which
not every valid instance satisfies); all other families' claims must match.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction

from .bitstring import BitString
from .errors import ValidationError
from .landscape import _check_cap, enumerate_landscape
from .problems import (
    FAMILY_NAMES,
    ObjectiveVector,
    ProblemInstance,
    index_evaluator,
    validate,
)

ExactRational = Fraction

DEFAULT_GRID_SIZES = (6, 8, 10, 12, 14)


def _half(n: int) -> int:
    return n >> 1


def _prefix_index(n: int, ones: int) -> int:
    """Index of the string with `ones` leading ones then zeroes."""
    return ((1 << ones) - 1) << (n - ones)


def _block_profile(n: int, l: int, index: int) -> list[int]:
    """Ones count per block, left to right."""
    b = n // l
    mask = (1 << l) - 1
    return [((index >> (n - (j + 1) * l)) & mask).bit_count() for j in range(b)]


def _completed_indices(n: int, l: int) -> list[int]:
    """All strings whose blocks are each all-ones or all-zeroes."""
    b = n // l
    mask = (1 << l) - 1
    out = []
    for pattern in range(1 << b):
        index = 0
        for j in range(b):
            if (pattern >> j) & 1:
                index |= mask << (n - (j + 1) * l)
        out.append(index)
    return out


def _ojzr_divisible(inst: ProblemInstance) -> bool:
    return (inst.n - inst.k) % inst.l == 0


def _oracle_ps_indices(inst: ProblemInstance) -> set[int]:
    n, k, l = inst.n, inst.k, inst.l
    family = inst.family
    if family == "omm":
        return set(range(1 << n))
    if family in ("lotz", "omtz"):
        return {_prefix_index(n, i) for i in range(n + 1)}
    if family == "ojzj":
        keep = {0, (1 << n) - 1}
        return keep | {i for i in range(1 << n) if k <= i.bit_count() <= n - k}
    if family == "cocz":
        half = _half(n)
        head = ((1 << half) - 1) << half
        return {head | low for low in range(1 << half)}
    if family in ("orzr", "omzr"):
        return set(_completed_indices(n, l))
    if family == "omzj":
        return {0} | {i for i in range(1 << n) if i.bit_count() >= k}
    if family == "lozj":
        return {0} | {_prefix_index(n, i) for i in range(k, n + 1)}
    if family == "lozr":
        return {_prefix_index(n, i * l) for i in range(n // l + 1)}
    if family == "ojzr":
        budget = n - k
        keep = {(1 << n) - 1}
        if _ojzr_divisible(inst):
            keep |= {i for i in _completed_indices(n, l) if i.bit_count() <= budget}
        else:
            keep |= {i for i in _completed_indices(n, l) if i.bit_count() < budget}
            p = k // l
            keep |= {
                i
                for i in range(1 << n)
                if i.bit_count() == budget
                and sum(1 for ones in _block_profile(n, l, i) if ones == 0) == p
            }
        return keep
    raise ValidationError(f"no oracle for family {family!r}")


def _oracle_lo_indices(inst: ProblemInstance) -> set[int]:
    n, k, l = inst.n, inst.k, inst.l
    family = inst.family
    if family in ("omm", "lotz", "ojzj", "cocz", "omtz", "omzj", "omzr"):
        return set()
    if family == "orzr":
        out = set()
        for i in range(1 << n):
            open_blocks = [
                ones for ones in _block_profile(n, l, i) if 0 < ones < l
            ]
            if open_blocks and all(2 <= ones <= l - 2 for ones in open_blocks):
                out.add(i)
        return out
    if family == "lozj":
        mask = (1 << n) - 1
        out = set()
        for i in range(1 << n):
            if n - i.bit_count() != n - k:
                continue
            flipped = i ^ mask
            lead = n if flipped == 0 else n - flipped.bit_length()
            if lead < k:
                out.add(i)
        return out
    if family == "lozr":
        mask = (1 << n) - 1
        b = n // l
        candidates = set()
        for i in range(1 << n):
            flipped = i ^ mask
            lead = n if flipped == 0 else n - flipped.bit_length()
            if lead % l or lead == n:
                continue
            profile = _block_profile(n, l, i)
            head = lead // l
            if profile[head] != 0:
                continue
            if all(profile[j] != 1 for j in range(head + 1, b)):
                candidates.add(i)
        return candidates - _oracle_ps_indices(inst)
    if family == "ojzr":
        budget = n - k
        p = k // l
        return {
            i
            for i in range(1 << n)
            if i.bit_count() == budget
            and sum(1 for ones in _block_profile(n, l, i) if ones == 0) < p
        }
    raise ValidationError(f"no oracle for family {family!r}")


def oracle_pareto_set(inst: ProblemInstance, cap: int | None = None) -> tuple[BitString, ...]:
    """Closed-form Pareto set, materialized in ascending index order."""
    _check_cap(inst.n, cap)
    return tuple(BitString(inst.n, i) for i in sorted(_oracle_ps_indices(inst)))


def oracle_local_optima(inst: ProblemInstance, cap: int | None = None) -> tuple[BitString, ...]:
    """Closed-form non-global Pareto local optima, ascending index order."""
    _check_cap(inst.n, cap)
    return tuple(BitString(inst.n, i) for i in sorted(_oracle_lo_indices(inst)))


def oracle_front(inst: ProblemInstance, cap: int | None = None) -> tuple[ObjectiveVector, ...]:
    """Objective vectors of the closed-form Pareto set, deduplicated and sorted."""
    _check_cap(inst.n, cap)
    ev = index_evaluator(inst)
    return tuple(sorted({ev(i) for i in _oracle_ps_indices(inst)}))


def claimed_front_tuples(inst: ProblemInstance) -> tuple[ObjectiveVector, ...]:
    """The front exactly as its printed formula states it, for cross-checks.

    These are kept literal even where they disagree with oracle_front (the
    ojzr family prints a truncated index range and an unshifted special
    point); verify() surfaces any such difference.
    """
    n, k, l = inst.n, inst.k, inst.l
    family = inst.family
    if family in ("omm", "lotz", "omtz"):
        front = {(i, n - i) for i in range(n + 1)}
    elif family == "ojzj":
        front = {(k, n + k), (n + k, k)}
        front |= {(k + s, n + k - s) for s in range(k, n - k + 1)}
    elif family == "cocz":
        half = _half(n)
        front = {(half + j, n - j) for j in range(half + 1)}
    elif family in ("orzr", "omzr", "lozr"):
        b = n // l
        front = {(i * l, (b - i) * l) for i in range(b + 1)}
    elif family in ("omzj", "lozj"):
        front = {(0, n + k)} | {(i, n + k - i) for i in range(k, n + 1)}
    elif family == "ojzr":
        p = k // l
        front = {(n + k, 0)} | {(i * l + k, n - i * l) for i in range(p + 1)}
        if not _ojzr_divisible(inst):
            front |= {(n - k, p * l)}
    else:
        raise ValidationError(f"no claimed front for family {family!r}")
    return tuple(sorted(front))


def ratio_ojzj(n: int, k: int) -> Fraction:
    """Exact Pareto-set share of the search space for the ojzj family."""
    _check_ratio_params(n, k)
    if not (1 <= k and 2 * k < n):
        raise ValidationError(f"ratio_ojzj needs 1 <= k < n/2, got n={n} k={k}")
    inner = sum(math.comb(n, s) for s in range(n - k + 1, n))
    return Fraction((1 << n) - 2 * inner, 1 << n)


def _check_ratio_params(n: int, *params: int) -> None:
    for value in (n, *params):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"ratio parameters must be ints, got {value!r}")
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")


def ojzj_threshold_k(n: int) -> int:
    """Largest gap for which the ojzj Pareto share is guaranteed >= 1/2:
    floor(n/2 - sqrt(n ln(4) / 2)), with the floor certified exact.

    Computed in 60-digit decimal arithmetic with an interval pad; if the two
    interval ends floored differently the value would be numerically
    ambiguous and an error is raised instead of guessing.
    """
    _check_ratio_params(n)
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(n) / 2 - (Decimal(n) * Decimal(4).ln() / 2).sqrt()
        pad = Decimal(10) ** -45
        lo = (value - pad).to_integral_value(rounding=ROUND_FLOOR)
        hi = (value + pad).to_integral_value(rounding=ROUND_FLOOR)
    if lo != hi:
        raise ValidationError(f"threshold floor numerically ambiguous for n={n}")
    return int(lo)


def ojzj_asymptote(n: int) -> float:
    """Limiting Pareto share at the widest interesting gap, by parity of n."""
    _check_ratio_params(n)
    factor = 3.0 if n % 2 == 0 else 4.0
    return factor * math.sqrt(2.0) / math.sqrt(math.pi * n)


def ratio_ojzr(n: int, k: int, l: int) -> Fraction:
    """Exact value of the printed ojzr Pareto-share formula.

    Preconditions follow the formula's stated domain: 1 < k < floor(n/2),
    l divides n with at least two blocks, and n - k is not a multiple of l.
    The formula counts the closed-form Pareto set, which only matches
    enumeration when l < k; verify() reports the difference elsewhere.
    """
    _check_ratio_params(n, k, l)
    if not 1 < k < n // 2:
        raise ValidationError(f"ratio_ojzr needs 1 < k < floor(n/2), got n={n} k={k}")
    if l < 1 or n % l or n // l < 2:
        raise ValidationError(f"ratio_ojzr needs l dividing n with n/l > 1, got n={n} l={l}")
    if (n - k) % l == 0:
        raise ValidationError(
            f"ratio_ojzr needs n - k not divisible by l, got n={n} k={k} l={l}"
        )
    b = n // l
    p = k // l
    ceil_kl = -(-k // l)
    count = 1 + sum(math.comb(b, i) for i in range(ceil_kl, b + 1))
    count += math.comb(b, p) * math.comb(n - p * l, n - k)
    return Fraction(count, 1 << n)


def ojzr_bound(n: int, l: int) -> tuple[Fraction, int]:
    """The bound 2^(-1 + n(1/l - 1/2)) as (squared value, doubled exponent).

    The exponent -1 + n(1/l - 1/2) need not be an integer, but its double is
    once l divides n, so comparisons against the bound square both sides.
    """
    _check_ratio_params(n, l)
    if l < 1 or n % l:
        raise ValidationError(f"bound needs l dividing n, got n={n} l={l}")
    doubled = -2 + (n // l) * (2 - l)
    squared = Fraction(1 << doubled, 1) if doubled >= 0 else Fraction(1, 1 << -doubled)
    return squared, doubled


def ojzr_within_bound(n: int, k: int, l: int) -> bool:
    """Exact check of ratio_ojzr(n,k,l) <= 2^(-1 + n(1/l - 1/2)); needs l > 2."""
    if l <= 2:
        raise ValidationError(f"the bound applies for l > 2, got l={l}")
    ratio = ratio_ojzr(n, k, l)
    squared, _ = ojzr_bound(n, l)
    return ratio * ratio <= squared


def reference_front(inst: ProblemInstance, cap: int | None = None) -> tuple[ObjectiveVector, ...]:
    """The true Pareto front used as a hitting target by the search loops.

    For the ten families whose closed forms are verified, the printed front
    is exact and needs no enumeration, so targets work beyond the cap. The
    ojzr closed form is unreliable, so its front is enumerated.
    """
    if inst.family == "ojzr":
        return tuple(v for v, _ in enumerate_landscape(inst, cap).front_counts)
    return claimed_front_tuples(inst)


@dataclass(frozen=True)
class ClaimResult:
    name: str
    must_match: bool
    matched: bool
    detail: str
    counterexamples: tuple[str, ...]


@dataclass(frozen=True)
class VerificationReport:
    instance: ProblemInstance
    claims: tuple[ClaimResult, ...]
    notes: tuple[str, ...]

    @property
    def must_match_ok(self) -> bool:
        return all(c.matched for c in self.claims if c.must_match)


def _set_claim(
    name: str,
    must_match: bool,
    claimed: set,
    actual: set,
    describe,
    limit: int,
) -> ClaimResult:
    extra = sorted(claimed - actual)
    missing = sorted(actual - claimed)
    examples = [f"claimed but wrong: {describe(v)}" for v in extra[:limit]]
    examples += [f"missing from claim: {describe(v)}" for v in missing[:limit]]
    detail = f"claimed={len(claimed)} actual={len(actual)}"
    return ClaimResult(
        name=name,
        must_match=must_match,
        matched=not extra and not missing,
        detail=detail,
        counterexamples=tuple(examples),
    )


def verify(
    inst: ProblemInstance, cap: int | None = None, max_counterexamples: int = 5
) -> VerificationReport:
    """Compare every closed-form claim for the instance against enumeration."""
    report = enumerate_landscape(inst, cap)
    ev = index_evaluator(inst)
    n = inst.n
    must = inst.family != "ojzr"
    limit = max_counterexamples

    def show(i: int) -> str:
        return f"{BitString(n, i)} -> {ev(i)}"

    claims = [
        _set_claim(
            "pareto_set",
            must,
            _oracle_ps_indices(inst),
            set(report.pareto_set_indices),
            show,
            limit,
        ),
        _set_claim(
            "local_optima",
            must,
            _oracle_lo_indices(inst),
            set(report.local_optima_indices),
            show,
            limit,
        ),
        _set_claim(
            "claimed_front",
            must,
            set(claimed_front_tuples(inst)),
            set(oracle_front(inst, cap)),
            str,
            limit,
        ),
    ]

    if inst.family == "ojzj":
        formula = ratio_ojzj(n, inst.k)
        claims.append(
            ClaimResult(
                "ratio_formula",
                True,
                formula == report.ratio,
                f"formula={formula} enumerated={report.ratio}",
                (),
            )
        )
        threshold = ojzj_threshold_k(n)
        guaranteed = inst.k <= threshold
        claims.append(
            ClaimResult(
                "ratio_threshold",
                True,
                (not guaranteed) or report.ratio >= Fraction(1, 2),
                f"threshold_k={threshold} k={inst.k} ratio={report.ratio}",
                (),
            )
        )
    if inst.family == "ojzr":
        try:
            formula = ratio_ojzr(n, inst.k, inst.l)
        except ValidationError:
            formula = None
        if formula is not None:
            claims.append(
                ClaimResult(
                    "ratio_formula",
                    False,
                    formula == report.ratio,
                    f"formula={formula} enumerated={report.ratio}",
                    (),
                )
            )

    notes = []
    if inst.family in ("ojzj", "omzj", "lozj", "ojzr"):
        notes.append(
            "jump objectives are shifted: value is k plus the bit count outside the valley"
        )
    return VerificationReport(inst, tuple(claims), tuple(notes))


def grid_instances(
    families: tuple[str, ...] | None = None,
    n_values: tuple[int, ...] = DEFAULT_GRID_SIZES,
) -> list[ProblemInstance]:
    """Every valid instance of the requested families on the size grid:
    all valid gaps k, and all block lengths dividing n with two or more
    blocks."""
    wanted = FAMILY_NAMES if families is None else tuple(families)
    for name in wanted:
        if name not in FAMILY_NAMES:
            raise ValidationError(f"unknown family {name!r}")
    out = []
    for name in FAMILY_NAMES:
        if name not in wanted:
            continue
        for n in n_values:
            divisors = [l for l in range(1, n // 2 + 1) if n % l == 0]
            if name in ("omm", "lotz", "omtz"):
                out.append(validate(name, n))
            elif name == "cocz":
                if n % 2 == 0:
                    out.append(validate(name, n))
            elif name == "ojzj":
                out.extend(validate(name, n, k=k) for k in range(1, (n + 1) // 2) if 2 * k < n)
            elif name in ("omzj", "lozj"):
                out.extend(validate(name, n, k=k) for k in range(2, (n + 1) // 2) if 2 * k < n)
            elif name in ("orzr", "omzr", "lozr"):
                out.extend(validate(name, n, l=l) for l in divisors)
            elif name == "ojzr":
                out.extend(
                    validate(name, n, k=k, l=l)
                    for k in range(2, n // 2 + 1)
                    for l in divisors
                )
    return out


def render_verification(report: VerificationReport) -> str:
    """Stable plain-text rendering of one instance's verification."""
    lines = [report.instance.descriptor]
    for claim in report.claims:
        status = "match" if claim.matched else "MISMATCH"
        kind = "must-match" if claim.must_match else "informational"
        lines.append(f"  {claim.name}: {status} ({kind}) {claim.detail}")
        lines.extend(f"    - {example}" for example in claim.counterexamples)
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"
