"""The two-party Bell scenario as a spacetime game, and CHSH locality checks.

Correlation values live in Q(sqrt 2) so that the quantum singlet table can be
compared against the local bound without floating point.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .generate import random_permutation_payoffs
from .model import DecisionPoint, Outcome, Position, SpacetimeGame

ALICE_SETTINGS = ("a1", "a2")
BOB_SETTINGS = ("b1", "b2")
SETTING_PAIRS = tuple(itertools.product(ALICE_SETTINGS, BOB_SETTINGS))
SIGNS = ("-1", "+1")
PLAYERS = ("Alice", "Bob", "Carol", "David")
DEFAULT_SEED = 0

# Output point activated by each setting.
CAROL_POINT = {"a1": "Ca", "a2": "Cb"}
DAVID_POINT = {"b1": "Da", "b2": "Db"}


class BadPayoffTable(ValueError):
    pass


class MissingSettingPair(ValueError):
    pass


@total_ordering
class Surd:
    """Exact number ``rational + coeff * sqrt(2)``."""

    __slots__ = ("rational", "coeff")

    def __init__(self, rational=0, coeff=0):
        self.rational = Fraction(rational)
        self.coeff = Fraction(coeff)

    @classmethod
    def of(cls, value) -> Surd:
        return value if isinstance(value, Surd) else cls(value)

    def __add__(self, other):
        other = Surd.of(other)
        return Surd(self.rational + other.rational, self.coeff + other.coeff)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rational, -self.coeff)

    def __sub__(self, other):
        return self + (-Surd.of(other))

    def __rsub__(self, other):
        return Surd.of(other) - self

    def __mul__(self, other):
        other = Surd.of(other)
        return Surd(
            self.rational * other.rational + 2 * self.coeff * other.coeff,
            self.rational * other.coeff + self.coeff * other.rational,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        """Sign of r + c*sqrt2, decided by comparing r^2 with 2c^2 when the parts disagree."""
        r, c = self.rational, self.coeff
        sr, sc = (r > 0) - (r < 0), (c > 0) - (c < 0)
        if sr == sc or sc == 0:
            return sr
        if sr == 0:
            return sc
        # Opposite signs: whichever part has the larger square wins.
        diff = r * r - 2 * c * c
        return sr if diff > 0 else (sc if diff < 0 else 0)

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.rational, self.coeff)) if self.coeff else hash(self.rational)

    def __float__(self):
        return float(self.rational) + float(self.coeff) * 2**0.5

    def __repr__(self):
        if not self.coeff:
            return f"Surd({self.rational})"
        return f"Surd({self.rational} + {self.coeff}*sqrt2)"

    def __str__(self):
        if not self.coeff:
            return str(self.rational)
        root = "sqrt2" if self.coeff == 1 else f"{self.coeff}*sqrt2"
        return root if not self.rational else f"{self.rational} + {root}"


HALF_ROOT2 = Surd(0, Fraction(1, 2))


@dataclass(frozen=True)
class CorrelationTable:
    """E(x, y) for Alice setting x and Bob setting y."""

    e11: Surd
    e12: Surd
    e21: Surd
    e22: Surd

    def __post_init__(self):
        for name in ("e11", "e12", "e21", "e22"):
            value = Surd.of(getattr(self, name))
            if not (-1 <= value <= 1):
                raise ValueError(f"correlation {name}={value} outside [-1, 1]")
            object.__setattr__(self, name, value)

    @classmethod
    def from_map(cls, table: Mapping[tuple[str, str], object]) -> CorrelationTable:
        return cls(*(table[pair] for pair in SETTING_PAIRS))

    def __getitem__(self, pair: tuple[str, str]) -> Surd:
        return self.values[SETTING_PAIRS.index(pair)]

    @property
    def values(self) -> tuple[Surd, Surd, Surd, Surd]:
        return (self.e11, self.e12, self.e21, self.e22)


def chsh_variants(c: CorrelationTable) -> list[Surd]:
    """The eight CHSH combinations: one negated term, and the negations of those."""
    terms = c.values
    variants = []
    for negated in range(4):
        s = sum((-t if k == negated else t for k, t in enumerate(terms)), Surd())
        variants.extend((s, -s))
    return variants


def chsh(c: CorrelationTable) -> Surd:
    return max(chsh_variants(c))


def is_local(c: CorrelationTable) -> bool:
    """Membership in the local polytope; the CHSH facets are complete for two settings and two outcomes."""
    return chsh(c) <= 2


@dataclass(frozen=True)
class LocalDeterministicModel:
    carol: Mapping[str, int]
    david: Mapping[str, int]

    def table(self) -> CorrelationTable:
        return CorrelationTable.from_map({(x, y): self.carol[x] * self.david[y] for x, y in SETTING_PAIRS})

    def runs(self) -> list[tuple[str, str, int, int]]:
        return [(x, y, self.carol[x], self.david[y]) for x, y in SETTING_PAIRS]


def deterministic_models() -> list[LocalDeterministicModel]:
    models = []
    for c in itertools.product((-1, 1), repeat=2):
        for d in itertools.product((-1, 1), repeat=2):
            models.append(LocalDeterministicModel(dict(zip(ALICE_SETTINGS, c)), dict(zip(BOB_SETTINGS, d))))
    return models


@dataclass(frozen=True)
class ScanResult:
    maximum: Surd
    maximizers: tuple[LocalDeterministicModel, ...]


def local_deterministic_scan() -> ScanResult:
    scored = [(chsh(m.table()), m) for m in deterministic_models()]
    top = max(s for s, _ in scored)
    return ScanResult(top, tuple(m for s, m in scored if s == top))


def mixture(weighted: Iterable[tuple[Fraction, CorrelationTable]]) -> CorrelationTable:
    """Convex combination of correlation tables."""
    weighted = list(weighted)
    total = sum(Fraction(w) for w, _ in weighted)
    if total != 1 or any(w < 0 for w, _ in weighted):
        raise ValueError("weights must be non-negative and sum to 1")
    return CorrelationTable(
        *(sum((Fraction(w) * t.values[k] for w, t in weighted), Surd()) for k in range(4))
    )


def empirical_correlations(runs: Iterable[tuple[str, str, int, int]]) -> CorrelationTable:
    """Per setting pair, the mean product of Carol's and David's outcomes."""
    sums = {pair: 0 for pair in SETTING_PAIRS}
    counts = {pair: 0 for pair in SETTING_PAIRS}
    for x, y, c, d in runs:
        if c not in (-1, 1) or d not in (-1, 1):
            raise ValueError(f"outcomes must be -1 or +1, got {c}, {d}")
        sums[(x, y)] += c * d
        counts[(x, y)] += 1
    missing = [pair for pair in SETTING_PAIRS if not counts[pair]]
    if missing:
        raise MissingSettingPair(", ".join(f"({x}, {y})" for x, y in missing))
    return CorrelationTable.from_map({pair: Fraction(sums[pair], counts[pair]) for pair in SETTING_PAIRS})


def bell_structure() -> tuple[DecisionPoint, ...]:
    return (
        DecisionPoint("A", "Alice", ALICE_SETTINGS, position=Position(0, -10)),
        DecisionPoint("B", "Bob", BOB_SETTINGS, position=Position(0, 10)),
        DecisionPoint("Ca", "Carol", SIGNS, (("A", "a1"),), Position(2, -11)),
        DecisionPoint("Cb", "Carol", SIGNS, (("A", "a2"),), Position(2, -9)),
        DecisionPoint("Da", "David", SIGNS, (("B", "b1"),), Position(2, 9)),
        DecisionPoint("Db", "David", SIGNS, (("B", "b2"),), Position(2, 11)),
    )


def bell_outcomes() -> list[Outcome]:
    found = []
    for x, y, c, d in itertools.product(ALICE_SETTINGS, BOB_SETTINGS, SIGNS, SIGNS):
        found.append(Outcome({"A": x, "B": y, CAROL_POINT[x]: c, DAVID_POINT[y]: d}))
    return sorted(found)


def build_bell_game(payoffs: Mapping | None = None, seed: int = DEFAULT_SEED) -> SpacetimeGame:
    """Alice and Bob pick settings; Carol and David answer ±1 at the point their setting activates.

    Without ``payoffs`` each player gets an independent permutation of
    1..16 drawn from ``seed``.
    """
    outcomes = bell_outcomes()
    if payoffs is None:
        table = random_permutation_payoffs(outcomes, len(PLAYERS), random.Random(seed))
    else:
        table = {}
        for key, values in payoffs.items():
            if isinstance(key, str):
                key = Outcome.parse(key)
            table[Outcome(key)] = tuple(values)
        if set(table) != set(outcomes):
            missing = len(set(outcomes) - set(table))
            extra = len(set(table) - set(outcomes))
            raise BadPayoffTable(f"need the 16 Bell outcomes: {missing} missing, {extra} unexpected")
        if any(len(v) != len(PLAYERS) for v in table.values()):
            raise BadPayoffTable("each outcome needs 4 payoffs")
    return SpacetimeGame(PLAYERS, bell_structure(), table)


def project_profile(profile: Mapping[str, str]) -> LocalDeterministicModel:
    """Read Carol's and David's answers per setting off a total strategy profile."""
    return LocalDeterministicModel(
        {x: int(profile[CAROL_POINT[x]]) for x in ALICE_SETTINGS},
        {y: int(profile[DAVID_POINT[y]]) for y in BOB_SETTINGS},
    )


def parse_correlation(token: str) -> Surd:
    """Parse a rational such as ``-1/2`` or the tokens ``rt2/2`` / ``-rt2/2``."""
    token = token.strip()
    if token in ("rt2/2", "+rt2/2"):
        return HALF_ROOT2
    if token == "-rt2/2":
        return -HALF_ROOT2
    return Surd(Fraction(token))


def _row(x, y, c, d):
    return Outcome({"A": x, "B": y, CAROL_POINT[x]: c, DAVID_POINT[y]: d})


def forward_induction_payoffs() -> dict[Outcome, tuple[int, int, int, int]]:
    """Payoff table whose transparent solution walks through four elimination rounds.

    Maximins: Alice 6 then 10, Bob 2, 3, 9, Carol 7 then 10, David 12; the
    survivor pays (14, 16, 11, 12). Each column is a permutation of 1..16.
    """
    rows = {
        ("a1", "b1", "+1", "+1"): (14, 16, 11, 12),
        ("a1", "b1", "-1", "-1"): (16, 9, 8, 2),
        ("a1", "b1", "+1", "-1"): (15, 12, 10, 5),
        ("a1", "b1", "-1", "+1"): (13, 2, 12, 3),
        ("a1", "b2", "-1", "+1"): (6, 1, 16, 16),
        ("a1", "b2", "+1", "+1"): (10, 3, 7, 4),
        ("a1", "b2", "+1", "-1"): (11, 4, 9, 6),
        ("a1", "b2", "-1", "-1"): (12, 5, 6, 7),
        ("a2", "b1", "-1", "-1"): (1, 6, 1, 1),
        ("a2", "b1", "-1", "+1"): (2, 7, 2, 8),
        ("a2", "b1", "+1", "-1"): (3, 8, 3, 9),
        ("a2", "b1", "+1", "+1"): (7, 10, 13, 10),
        ("a2", "b2", "-1", "-1"): (4, 11, 4, 11),
        ("a2", "b2", "-1", "+1"): (8, 13, 14, 13),
        ("a2", "b2", "+1", "-1"): (5, 14, 5, 14),
        ("a2", "b2", "+1", "+1"): (9, 15, 15, 15),
    }
    return {_row(*k): v for k, v in rows.items()}
