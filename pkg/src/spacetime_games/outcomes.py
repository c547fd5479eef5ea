"""Outcome enumeration and forward play of strategy profiles.

A strategy profile is any mapping from information-set id to action. Every
decision point forms exactly one information set (see ``convert``), so
profiles are keyed by point id.
"""

from __future__ import annotations

from collections.abc import Mapping

from .model import Outcome, SpacetimeGame


class UnknownPoint(KeyError):
    pass


def is_active(g: SpacetimeGame, assigned: Mapping[str, str], point_id: str) -> bool:
    """A point is active when every contingency edge into it is satisfied."""
    if point_id not in g.point_map:
        raise UnknownPoint(point_id)
    return all(assigned.get(e.parent) == e.action for e in g.point(point_id).parents)


def enumerate_outcomes(g: SpacetimeGame) -> tuple[Outcome, ...]:
    """All partial assignments meeting the root and contingency constraints, sorted by key."""
    cached = g.__dict__.get("_outcomes")
    if cached is not None:
        return cached
    order = g.topological_order
    found: list[Outcome] = []

    def extend(i: int, assigned: dict[str, str]) -> None:
        if i == len(order):
            found.append(Outcome(assigned))
            return
        pid = order[i]
        if not is_active(g, assigned, pid):
            extend(i + 1, assigned)
            return
        for action in g.point(pid).actions:
            assigned[pid] = action
            extend(i + 1, assigned)
        del assigned[pid]

    extend(0, {})
    result = tuple(sorted(found))
    g.__dict__["_outcomes"] = result
    return result


def is_consistent_assignment(g: SpacetimeGame, z: Mapping[str, str]) -> bool:
    """Check a candidate partial assignment directly against both activation constraints."""
    for pid in z:
        if pid not in g.point_map:
            raise UnknownPoint(pid)
    for p in g.points:
        if p.id in z and z[p.id] not in p.actions:
            return False
        should_be_assigned = all(z.get(e.parent) == e.action for e in p.parents)
        if should_be_assigned != (p.id in z):
            return False
    return True


def induced_outcome(g: SpacetimeGame, profile: Mapping[str, str]) -> Outcome:
    """Play a total profile forward down the DAG; unreached points stay undefined."""
    assigned: dict[str, str] = {}
    for pid in g.topological_order:
        if is_active(g, assigned, pid):
            assigned[pid] = profile[pid]
    return Outcome(assigned)


def profile_key(profile: Mapping[str, str]) -> str:
    return ",".join(f"{k}={profile[k]}" for k in sorted(profile))
