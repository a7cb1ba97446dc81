"""Bi-objective problem families, instance validation, and evaluation.

Each family composes two scalar objectives into a maximized pair. Instances
are value objects; a compact text descriptor ("ojzr:n=12,k=5,l=3") names an
instance uniquely and round-trips through parse_descriptor/descriptor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitstring import MAX_LENGTH, BitString
from .errors import DescriptorError, ValidationError

ObjectiveVector = tuple[int, int]


@dataclass(frozen=True, slots=True)
class ProblemInstance:
    family: str
    n: int
    k: int | None = None
    l: int | None = None

    @property
    def descriptor(self) -> str:
        parts = [f"{self.family}:n={self.n}"]
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.l is not None:
            parts.append(f"l={self.l}")
        return parts[0] + ("," + ",".join(parts[1:]) if parts[1:] else "")


@dataclass(frozen=True, slots=True)
class FamilyInfo:
    name: str
    objectives: tuple[str, str]
    params: tuple[str, ...]
    constraints: str


_CATALOG = (
    FamilyInfo("omm", ("ones", "zeroes"), (), "1 <= n <= 63"),
    FamilyInfo("lotz", ("leading ones", "trailing zeroes"), (), "1 <= n <= 63"),
    FamilyInfo("ojzj", ("one-jump", "zero-jump"), ("k",), "1 <= k < n/2"),
    FamilyInfo(
        "cocz", ("ones", "ones in first half plus zeroes in second half"), (), "n even"
    ),
    FamilyInfo(
        "orzr", ("all-ones blocks", "all-zeroes blocks"), ("l",), "l divides n, n/l > 1"
    ),
    FamilyInfo("omtz", ("ones", "trailing zeroes"), (), "1 <= n <= 63"),
    FamilyInfo("omzj", ("ones", "zero-jump"), ("k",), "1 < k < n/2"),
    FamilyInfo("omzr", ("ones", "all-zeroes blocks"), ("l",), "l divides n, n/l > 1"),
    FamilyInfo("lozj", ("leading ones", "zero-jump"), ("k",), "1 < k < n/2"),
    FamilyInfo(
        "lozr", ("leading ones", "all-zeroes blocks"), ("l",), "l divides n, n/l > 1"
    ),
    FamilyInfo(
        "ojzr",
        ("one-jump", "all-zeroes blocks"),
        ("k", "l"),
        "1 < k <= floor(n/2), l divides n, n/l > 1",
    ),
)

_BY_NAME = {info.name: info for info in _CATALOG}

FAMILY_NAMES = tuple(info.name for info in _CATALOG)


def family_catalog() -> tuple[FamilyInfo, ...]:
    """All supported families with their parameter requirements."""
    return _CATALOG


def _fail(family: str, n: int, k: int | None, l: int | None, reason: str) -> None:
    given = f"n={n}" + (f", k={k}" if k is not None else "") + (
        f", l={l}" if l is not None else ""
    )
    raise ValidationError(f"{family}: {reason} (got {given})")


def validate(family: str, n: int, k: int | None = None, l: int | None = None) -> ProblemInstance:
    """Check all family constraints and return the instance, or raise ValidationError."""
    name = family.lower()
    info = _BY_NAME.get(name)
    if info is None:
        raise ValidationError(
            f"unknown family {family!r}; valid: {', '.join(FAMILY_NAMES)}"
        )
    for label, value in (("n", n), ("k", k), ("l", l)):
        if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
            _fail(name, n, k, l, f"{label} must be an integer")
    if not 1 <= n <= MAX_LENGTH:
        _fail(name, n, k, l, f"n must be in [1, {MAX_LENGTH}]")
    if ("k" in info.params) != (k is not None):
        verb = "requires" if "k" in info.params else "does not take"
        _fail(name, n, k, l, f"{verb} parameter k")
    if ("l" in info.params) != (l is not None):
        verb = "requires" if "l" in info.params else "does not take"
        _fail(name, n, k, l, f"{verb} parameter l")

    if name == "cocz" and n % 2:
        _fail(name, n, k, l, "n must be even")
    if name == "ojzj" and not (1 <= k and 2 * k < n):
        _fail(name, n, k, l, "requires 1 <= k < n/2")
    if name in ("omzj", "lozj") and not (1 < k and 2 * k < n):
        _fail(name, n, k, l, "requires 1 < k < n/2")
    if name == "ojzr" and not (1 < k and 2 * k <= n):
        _fail(name, n, k, l, "requires 1 < k <= floor(n/2)")
    if name in ("orzr", "omzr", "lozr", "ojzr"):
        if l < 1 or n % l:
            _fail(name, n, k, l, "l must be a positive divisor of n")
        if n // l < 2:
            _fail(name, n, k, l, "needs at least two blocks (n/l > 1)")
    return ProblemInstance(name, n, k, l)


def parse_descriptor(text: str) -> ProblemInstance:
    """Parse "family:n=..,k=..,l=.." (family and keys case-insensitive)."""
    head, sep, tail = text.partition(":")
    if not sep or not head:
        raise DescriptorError(f"descriptor must look like 'family:n=..', got {text!r}")
    params: dict[str, int] = {}
    for item in tail.split(","):
        key, eq, value = item.partition("=")
        key = key.strip().lower()
        if not eq or key not in ("n", "k", "l"):
            raise DescriptorError(f"bad descriptor parameter {item!r} in {text!r}")
        if key in params:
            raise DescriptorError(f"duplicate parameter {key!r} in {text!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise DescriptorError(f"parameter {key!r} needs an integer, got {value!r}") from None
    if "n" not in params:
        raise DescriptorError(f"descriptor must set n, got {text!r}")
    return validate(head.strip().lower(), params["n"], params.get("k"), params.get("l"))


def _royal_block_counter(n: int, l: int, want_ones: bool):
    count = n // l
    mask = (1 << l) - 1
    full = mask if want_ones else 0
    shifts = tuple(n - (j + 1) * l for j in range(count))

    def value(i: int) -> int:
        return l * sum(1 for s in shifts if (i >> s) & mask == full)

    return value


@lru_cache(maxsize=128)
def index_evaluator(inst: ProblemInstance):
    """Closure mapping a raw index in [0, 2^n) to the instance's objective pair.

    This is the hot path for exhaustive enumeration and the evolutionary
    loops; it must agree with evaluate() everywhere (tests pin that).
    """
    n, k, l = inst.n, inst.k, inst.l
    mask = (1 << n) - 1

    def lead(i: int) -> int:
        f = i ^ mask
        return n if f == 0 else n - f.bit_length()

    def trail(i: int) -> int:
        return n if i == 0 else (i & -i).bit_length() - 1

    def jump_up(i: int) -> int:
        s = i.bit_count()
        return k + s if (s <= n - k or s == n) else n - s

    def jump_down(i: int) -> int:
        z = n - i.bit_count()
        return k + z if (z <= n - k or z == n) else n - z

    family = inst.family
    if family == "omm":
        return lambda i: (i.bit_count(), n - i.bit_count())
    if family == "lotz":
        return lambda i: (lead(i), trail(i))
    if family == "ojzj":
        return lambda i: (jump_up(i), jump_down(i))
    if family == "cocz":
        half = n // 2
        half_mask = (1 << half) - 1

        def mix(i: int) -> int:
            return (i >> half).bit_count() + (half - (i & half_mask).bit_count())

        return lambda i: (i.bit_count(), mix(i))
    if family == "omtz":
        return lambda i: (i.bit_count(), trail(i))
    if family == "omzj":
        return lambda i: (i.bit_count(), jump_down(i))
    if family == "lozj":
        return lambda i: (lead(i), jump_down(i))

    zero_blocks = _royal_block_counter(n, l, False)
    if family == "orzr":
        one_blocks = _royal_block_counter(n, l, True)
        return lambda i: (one_blocks(i), zero_blocks(i))
    if family == "omzr":
        return lambda i: (i.bit_count(), zero_blocks(i))
    if family == "lozr":
        return lambda i: (lead(i), zero_blocks(i))
    if family == "ojzr":
        return lambda i: (jump_up(i), zero_blocks(i))
    raise ValidationError(f"unknown family {family!r}")


def evaluate(inst: ProblemInstance, x: BitString) -> ObjectiveVector:
    """Objective pair of x under the instance's two objectives."""
    if x.n != inst.n:
        raise ValidationError(
            f"string length {x.n} does not match instance n={inst.n}"
        )
    return index_evaluator(inst)(x.index)
