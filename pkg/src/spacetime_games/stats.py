"""Existence and social-utility statistics over batches of random games."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from fractions import Fraction

from .gameio import format_rational
from .generate import derive_seed, gen_random
from .model import SpacetimeGame
from .nash import nash_resolutions
from .transparent import pareto_optimal, pte


@dataclass(frozen=True)
class StatsRow:
    gameId: int
    seed: int
    nodeCount: int
    actionArity: int
    outcomeCount: int
    nashCount: int
    nashExists: bool
    pteExists: bool
    pteParetoOptimal: bool
    nashMaxSocialUtility: Fraction | None
    pteSocialUtility: Fraction | None


HEADER = tuple(f.name for f in fields(StatsRow))


@dataclass(frozen=True)
class GeneratorParams:
    node_count: int = 4
    max_actions: int = 2
    player_count: int = 2
    edge_density: float = 0.3


def stats_row(g: SpacetimeGame, game_id: int, seed: int) -> StatsRow:
    nash = nash_resolutions(g)
    solved = pte(g)
    found = solved.found
    return StatsRow(
        gameId=game_id,
        seed=seed,
        nodeCount=len(g.points),
        actionArity=max(len(p.actions) for p in g.points),
        outcomeCount=len(g.outcomes),
        nashCount=len(nash),
        nashExists=bool(nash),
        pteExists=found,
        pteParetoOptimal=found and pareto_optimal(g, solved.outcome),
        nashMaxSocialUtility=max((sum(r.payoff) for r in nash), default=None),
        pteSocialUtility=sum(solved.payoff) if found else None,
    )


def _row_for(args: tuple[int, int, GeneratorParams]) -> StatsRow:
    index, seed, params = args
    game_seed = derive_seed(seed, index)
    g = gen_random(params.node_count, params.max_actions, params.player_count, params.edge_density, game_seed)
    return stats_row(g, index, game_seed)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def rows_to_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(_cell(v) for v in astuple(row))
    return buffer.getvalue()


def stats_rows(count: int, params: GeneratorParams = GeneratorParams(), seed: int = 0, workers: int = 1) -> list[StatsRow]:
    if count < 1:
        raise ValueError("count must be at least 1")
    jobs = [(i, seed, params) for i in range(count)]
    if workers <= 1:
        return [_row_for(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row_for, jobs, chunksize=max(1, count // (workers * 8))))


def stats_run(count: int, params: GeneratorParams = GeneratorParams(), seed: int = 0, workers: int = 1) -> str:
    """CSV with one row per generated game; identical for any worker count."""
    return rows_to_csv(stats_rows(count, params, seed, workers))
