"""
Counterexample search over small digraph pairs.

Pairs are built from *local configurations*. Loops are forced in both ``A``
and ``B``. For every unordered pair ``{u, v}`` (``u < v``) the four bits
``(a_uv, b_uv, a_vu, b_vu)`` are chosen among the combinations allowed by the
hypothesis mode:

- ``identity``: ``A & B^T == I`` forbids ``a_uv & b_vu`` and ``a_vu & b_uv``,
  leaving 9 configurations;
- ``subset``: additionally ``A <= B``, leaving 6;
- ``tournament``: the identity constraint plus ``A | B^T == V x V``, leaving 4.

An exhaustive run visits the full product. A random run draws each unordered
pair's configuration independently and uniformly with a seeded generator.
Both split their work into fixed chunks, so the report, including its
fingerprint, does not depend on how many worker processes run the chunks.
"""

from __future__ import annotations

import hashlib
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterator, Optional

from loguru import logger
from tqdm import tqdm

from snc_lab.blowup import BlowupMap, blow_up_pair
from snc_lab.pair_properties import (
    DigraphPair,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    product_inequality_report,
)
from snc_lab.relation import Relation, iter_bits
from snc_lab.utils.data import PairDocument
from snc_lab.utils.errors import PreconditionError, SNCLabError
from snc_lab.utils.rationals import format_rational, parse_rational
from snc_lab.utils.simplex import solve_standard_form

EXHAUSTIVE = "exhaustive"
RANDOM = "random"
RANDOM_BLOCK = 1000
DEFAULT_EXHAUSTIVE_BOUND = 4


class HypothesisMode(str, Enum):
    IDENTITY = "identity"
    SUBSET = "subset"
    TOURNAMENT = "tournament"


def local_configurations(mode: HypothesisMode) -> tuple[tuple[int, int, int, int], ...]:
    """Allowed ``(a_uv, b_uv, a_vu, b_vu)`` bit patterns for one unordered pair."""
    mode = HypothesisMode(mode)
    configs = []
    for a_uv, b_uv, a_vu, b_vu in product((0, 1), repeat=4):
        if (a_uv and b_vu) or (a_vu and b_uv):
            continue
        if mode == HypothesisMode.SUBSET and ((a_uv and not b_uv) or (a_vu and not b_vu)):
            continue
        if mode == HypothesisMode.TOURNAMENT and not ((a_uv or b_vu) and (a_vu or b_uv)):
            continue
        configs.append((a_uv, b_uv, a_vu, b_vu))
    return tuple(configs)


def expected_pair_count(n: int, mode: HypothesisMode) -> int:
    return len(local_configurations(mode)) ** (n * (n - 1) // 2)


def exhaustive_bound() -> int:
    raw = os.environ.get("SNC_LAB_EXHAUSTIVE_BOUND")
    if raw is None:
        return DEFAULT_EXHAUSTIVE_BOUND
    try:
        return int(raw)
    except ValueError:
        logger.warning(
            f"Invalid SNC_LAB_EXHAUSTIVE_BOUND '{raw}'. Using default {DEFAULT_EXHAUSTIVE_BOUND}."
        )
        return DEFAULT_EXHAUSTIVE_BOUND


def _build_rows(
    n: int,
    pairs: list[tuple[int, int]],
    configs: tuple[tuple[int, int, int, int], ...],
    choice: tuple[int, ...],
) -> tuple[list[int], list[int]]:
    a = [1 << v for v in range(n)]
    b = list(a)
    for (u, v), index in zip(pairs, choice):
        a_uv, b_uv, a_vu, b_vu = configs[index]
        if a_uv:
            a[u] |= 1 << v
        if b_uv:
            b[u] |= 1 << v
        if a_vu:
            a[v] |= 1 << u
        if b_vu:
            b[v] |= 1 << u
    return a, b


def _pair_from_rows(n: int, a: list[int], b: list[int]) -> DigraphPair:
    return DigraphPair(Relation(n, tuple(a)), Relation(n, tuple(b)))


def _unweighted_holds(a: list[int], b: list[int], variant: Variant) -> bool:
    """Integer fast path of the unweighted check: does any vertex satisfy it?"""
    for v in range(len(a)):
        c = 0
        for w in iter_bits(a[v]):
            c |= b[w]
        if variant == Variant.UNION:
            for w in iter_bits(b[v]):
                c |= a[w]
        if c.bit_count() >= a[v].bit_count() + b[v].bit_count() - 1:
            return True
    return False


def sample_pair(rng: random.Random, n: int, mode: HypothesisMode = HypothesisMode.IDENTITY) -> DigraphPair:
    """One uniform draw from the local-configuration product."""
    configs = local_configurations(mode)
    pairs = list(combinations(range(n), 2))
    choice = tuple(rng.randrange(len(configs)) for _ in pairs)
    return _pair_from_rows(n, *_build_rows(n, pairs, configs, choice))


def _iter_choices(k: int, m: int, first: Optional[int]) -> Iterator[tuple[int, ...]]:
    if first is None:
        yield from product(range(k), repeat=m)
        return
    for rest in product(range(k), repeat=m - 1):
        yield (first,) + rest


def enumerate_pairs(
    n: int,
    mode: HypothesisMode = HypothesisMode.IDENTITY,
    visitor: Optional[Callable[[DigraphPair], None]] = None,
    bound: Optional[int] = None,
) -> int:
    """Visit every pair on ``n`` vertices allowed by ``mode`` exactly once.

    Returns the number of pairs visited, ``k ** (n(n-1)/2)`` for ``k``
    local configurations.

    Raises:
        PreconditionError: ``n`` is below 1 or above the exhaustive bound.
    """
    bound = exhaustive_bound() if bound is None else bound
    if n < 1:
        raise PreconditionError(f"Enumeration needs n >= 1, got {n}.")
    if n > bound:
        raise PreconditionError(
            f"n = {n} exceeds the exhaustive bound {bound}; raise it explicitly to go further."
        )
    configs = local_configurations(mode)
    pairs = list(combinations(range(n), 2))
    count = 0
    for choice in product(range(len(configs)), repeat=len(pairs)):
        if visitor is not None:
            visitor(_pair_from_rows(n, *_build_rows(n, pairs, configs, choice)))
        count += 1
    logger.debug(f"Enumerated {count} pairs on {n} vertices ({HypothesisMode(mode).value}).")
    return count


# --- weight oracle ---


@dataclass(frozen=True)
class OracleResult:
    t_star: Fraction
    weights: WeightVector

    @property
    def violates(self) -> bool:
        return self.t_star > 0


def weight_oracle(pair: DigraphPair, variant: Variant = Variant.UNION) -> OracleResult:
    """Exact LP: maximise ``t`` over probability vectors ``w`` subject to

        w(A(v)) + w(B(v)) - w(v) - w(C(v)) >= t   for every v.

    ``t* > 0`` means ``w`` breaks the weighted inequality at every vertex.
    """
    if not check_identity_hypothesis(pair):
        raise PreconditionError("The weight oracle requires A & B^T == I.")
    n = pair.n
    c = pair.combined(variant)

    # Variables: w_0..w_{n-1}, t_plus, t_minus, then one surplus s_v per vertex.
    num_vars = 2 * n + 2
    a_eq = [[Fraction(1)] * n + [Fraction(0)] * (n + 2)]
    b_eq = [Fraction(1)]
    for v in range(n):
        row = [Fraction(0)] * num_vars
        for u in iter_bits(pair.a.rows[v]):
            row[u] += 1
        for u in iter_bits(pair.b.rows[v]):
            row[u] += 1
        row[v] -= 1
        for u in iter_bits(c.rows[v]):
            row[u] -= 1
        row[n] = Fraction(-1)
        row[n + 1] = Fraction(1)
        row[n + 2 + v] = Fraction(-1)
        a_eq.append(row)
        b_eq.append(Fraction(0))
    cost = [Fraction(0)] * num_vars
    cost[n] = Fraction(-1)
    cost[n + 1] = Fraction(1)

    result = solve_standard_form(a_eq, b_eq, cost)
    if not result.is_optimal:
        logger.error(f"Weight oracle LP on {pair} ended with status '{result.status}'.")
        raise SNCLabError(f"weight oracle LP ended with status '{result.status}'")
    t_star = result.x[n] - result.x[n + 1]
    logger.trace(f"Weight oracle on {pair} ({variant.value}): t* = {t_star}")
    return OracleResult(t_star=t_star, weights=WeightVector(result.x[:n]))


def find_violating_weights(pair: DigraphPair, variant: Variant = Variant.UNION) -> Optional[WeightVector]:
    """Weights violating the inequality at every vertex, or None if ``t* <= 0``."""
    result = weight_oracle(pair, variant)
    if not result.violates:
        return None
    report = product_inequality_report(pair, result.weights, variant)
    if report.holds:
        raise SNCLabError(
            f"oracle weights {result.weights.to_strings()} do not re-verify: "
            f"vertices {[v + 1 for v in report.satisfying_vertices]} satisfy the inequality"
        )
    return result.weights


# --- campaigns ---


@dataclass(frozen=True)
class Counterexample:
    """A pair (and weights, for weighted finds) failing the inequality at every vertex."""

    pair: DigraphPair
    variant: Variant
    weights: Optional[WeightVector] = None
    t_star: Optional[Fraction] = None

    @property
    def kind(self) -> str:
        return "unweighted" if self.weights is None else "weighted"

    def reverify(self) -> bool:
        return not product_inequality_report(self.pair, self.weights, self.variant).holds

    def blown_up(self) -> tuple[DigraphPair, BlowupMap]:
        """Unweighted blow-up of a weighted find.

        Zero-weight vertices are deleted first (that can only shrink
        ``C(v)``), then the weights are scaled to integers.

        Raises:
            SNCLabError: some vertex of the blow-up satisfies the unweighted
                inequality.
        """
        if self.weights is None:
            return self.pair, BlowupMap((1,) * self.pair.n)
        support = self.weights.support
        pair = self.pair.induced(support)
        weights = self.weights.restricted(support)
        scale = math.lcm(*(w.denominator for w in weights))
        blown, mapping = blow_up_pair(pair, weights.scaled(scale).as_integers())
        report = product_inequality_report(blown, None, self.variant)
        if report.holds:
            raise SNCLabError(
                f"blow-up of {self.pair} on {mapping.total} vertices does not re-verify: "
                f"copies {[c + 1 for c in report.satisfying_vertices[:10]]} satisfy the inequality"
            )
        logger.debug(f"Blow-up of {self.pair} re-verified on {mapping.total} vertices.")
        return blown, mapping

    def to_document(self) -> PairDocument:
        document = PairDocument.from_pair(self.pair, self.weights)
        document.extra["variant"] = self.variant.value
        if self.t_star is not None:
            document.extra["t_star"] = format_rational(self.t_star)
        return document

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.to_document().to_dict()}


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{name} must be an integer, got '{raw}'.") from None


@dataclass
class SearchConfig:
    n: int
    hypothesis: HypothesisMode = HypothesisMode.IDENTITY
    variant: Variant = Variant.UNION
    mode: str = EXHAUSTIVE
    seed: int = 0
    iterations: int = 1000
    workers: Optional[int] = None
    use_oracle: bool = False
    bound: Optional[int] = None
    keep: Optional[int] = None
    progress: bool = False

    def __post_init__(self):
        self.hypothesis = HypothesisMode(self.hypothesis)
        self.variant = Variant(self.variant)
        if self.variant == Variant.WSNP:
            raise PreconditionError("Search runs on pair variants 'ab' or 'union' only.")
        if self.workers is None:
            self.workers = _env_int("SNC_LAB_WORKERS", 1)
        if self.keep is None:
            self.keep = _env_int("SNC_LAB_KEEP", 20)
        if self.bound is None:
            self.bound = exhaustive_bound()
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise PreconditionError(f"Unknown search mode '{self.mode}'.")
        if self.n < 1:
            raise PreconditionError(f"Search needs n >= 1, got {self.n}.")
        if self.mode == EXHAUSTIVE and self.n > self.bound:
            raise PreconditionError(
                f"Exhaustive search on n = {self.n} exceeds the bound {self.bound}."
            )
        if self.workers < 1:
            raise PreconditionError(f"Parallelism width must be at least 1, got {self.workers}.")
        if self.keep < 0:
            raise PreconditionError(f"Number of kept counterexamples must be non-negative, got {self.keep}.")
        if self.iterations < 0:
            raise PreconditionError(f"Iteration count must be non-negative, got {self.iterations}.")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "hypothesis": self.hypothesis.value,
            "variant": self.variant.value,
            "mode": self.mode,
            "seed": self.seed if self.mode == RANDOM else None,
            "iterations": self.iterations if self.mode == RANDOM else None,
            "workers": self.workers,
            "oracle": self.use_oracle,
        }


@dataclass
class SearchReport:
    config: SearchConfig
    examined: int
    found: int
    counterexamples: list[Counterexample] = field(default_factory=list)
    wall_time: float = 0.0
    fingerprint: str = ""

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "examined": self.examined,
            "found": self.found,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "wall_time_seconds": round(self.wall_time, 3),
            "fingerprint": self.fingerprint,
        }


@dataclass
class _Partial:
    examined: int = 0
    found: int = 0
    kept: list = field(default_factory=list)  # (choice, weight strings or None, t* string or None)
    digest: str = ""


def _examine(
    n: int,
    pairs: list[tuple[int, int]],
    configs: tuple,
    choices: Iterator[tuple[int, ...]],
    variant: Variant,
    use_oracle: bool,
    keep: int,
) -> _Partial:
    partial = _Partial()
    hasher = hashlib.sha256()
    for choice in choices:
        hasher.update(bytes(choice))
        partial.examined += 1
        a, b = _build_rows(n, pairs, configs, choice)
        if not _unweighted_holds(a, b, variant):
            partial.found += 1
            if len(partial.kept) < keep:
                partial.kept.append((choice, None, None))
            continue
        if use_oracle:
            result = weight_oracle(_pair_from_rows(n, a, b), variant)
            if result.violates:
                partial.found += 1
                if len(partial.kept) < keep:
                    partial.kept.append(
                        (choice, result.weights.to_strings(), format_rational(result.t_star))
                    )
    partial.digest = hasher.hexdigest()
    return partial


def _exhaustive_chunk(args: tuple) -> _Partial:
    n, mode, variant, first, use_oracle, keep = args
    configs = local_configurations(mode)
    pairs = list(combinations(range(n), 2))
    return _examine(
        n, pairs, configs, _iter_choices(len(configs), len(pairs), first), variant, use_oracle, keep
    )


def _random_chunk(args: tuple) -> _Partial:
    n, mode, variant, seed, block, size, use_oracle, keep = args
    configs = local_configurations(mode)
    pairs = list(combinations(range(n), 2))
    rng = random.Random(f"{seed}-{block}")
    choices = (tuple(rng.randrange(len(configs)) for _ in pairs) for _ in range(size))
    return _examine(n, pairs, configs, choices, variant, use_oracle, keep)


def _run_chunks(func: Callable, chunks: list[tuple], config: SearchConfig) -> list[_Partial]:
    desc = f"{config.mode} n={config.n}"
    if config.workers == 1 or len(chunks) == 1:
        return [func(c) for c in tqdm(chunks, desc=desc, disable=not config.progress)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(
            tqdm(pool.map(func, chunks), total=len(chunks), desc=desc, disable=not config.progress)
        )


def _merge(config: SearchConfig, partials: list[_Partial], started: float) -> SearchReport:
    configs = local_configurations(config.hypothesis)
    pairs = list(combinations(range(config.n), 2))
    fingerprint = hashlib.sha256(f"{config.n}:{config.hypothesis.value}:".encode())
    counterexamples = []
    for partial in partials:
        fingerprint.update(bytes.fromhex(partial.digest))
        for choice, weights, t_star in partial.kept:
            if len(counterexamples) >= config.keep:
                break
            pair = _pair_from_rows(config.n, *_build_rows(config.n, pairs, configs, choice))
            found = Counterexample(
                pair=pair,
                variant=config.variant,
                weights=(
                    WeightVector(tuple(parse_rational(w) for w in weights))
                    if weights is not None
                    else None
                ),
                t_star=parse_rational(t_star) if t_star is not None else None,
            )
            if not found.reverify():
                raise SNCLabError(
                    f"search reported a {found.kind} counterexample that does not re-verify: "
                    f"{found.to_document().to_json()}"
                )
            if found.weights is not None:
                found.blown_up()
            counterexamples.append(found)

    report = SearchReport(
        config=config,
        examined=sum(p.examined for p in partials),
        found=sum(p.found for p in partials),
        counterexamples=counterexamples,
        wall_time=time.perf_counter() - started,
        fingerprint=fingerprint.hexdigest(),
    )
    if report.found:
        logger.warning(
            f"{config.mode} search on n={config.n} ({config.variant.value}) found {report.found} counterexamples."
        )
    logger.info(
        f"{config.mode} search on n={config.n} examined {report.examined} pairs in {report.wall_time:.2f}s."
    )
    return report


def exhaustive_search(config: SearchConfig) -> SearchReport:
    """Check every pair on ``config.n`` vertices allowed by the hypothesis mode."""
    if config.mode != EXHAUSTIVE:
        raise PreconditionError("exhaustive_search needs a config with mode 'exhaustive'.")
    started = time.perf_counter()
    k = len(local_configurations(config.hypothesis))
    m = config.n * (config.n - 1) // 2
    firsts = [None] if m == 0 else list(range(k))
    chunks = [
        (config.n, config.hypothesis, config.variant, first, config.use_oracle, config.keep)
        for first in firsts
    ]
    return _merge(config, _run_chunks(_exhaustive_chunk, chunks, config), started)


def random_search(config: SearchConfig) -> SearchReport:
    """Sample ``config.iterations`` pairs with the seeded generator and check each one."""
    if config.mode != RANDOM:
        raise PreconditionError("random_search needs a config with mode 'random'.")
    started = time.perf_counter()
    chunks = []
    for block, start in enumerate(range(0, config.iterations, RANDOM_BLOCK)):
        size = min(RANDOM_BLOCK, config.iterations - start)
        chunks.append(
            (
                config.n,
                config.hypothesis,
                config.variant,
                config.seed,
                block,
                size,
                config.use_oracle,
                config.keep,
            )
        )
    return _merge(config, _run_chunks(_random_chunk, chunks, config), started)


def run_search(config: SearchConfig) -> SearchReport:
    if config.mode == EXHAUSTIVE:
        return exhaustive_search(config)
    return random_search(config)
