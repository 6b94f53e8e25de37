"""Randomized theorem campaigns with replayable counterexample scenarios.

Each theorem knows how to sample a random instance from a trial seed, how to
evaluate itself on an instance, and how to express the instance as a scenario
file.  A campaign that finds a violation serializes the instance so the exact
failing data can be re-checked standalone with `check --theorem X --in file`.

Per-trial seeds are base seed + trial index, so reports are deterministic and
order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .formats import Scenario, serialize_scenario
from .linalg import Subspace
from .maslov import (
    LagrangianTriple,
    dim_sum_parity,
    form_annihilator,
    maslov_form,
    maslov_index,
    parity_prediction,
)
from .sampling import random_lagrangian_pair, random_subspace_pair, random_triple
from .symplectic import SymplecticSpace


@dataclass(frozen=True)
class CheckOutcome:
    holds: bool
    details: dict


@dataclass(frozen=True)
class Failure:
    trial: int
    seed: int
    scenario_text: str
    details: dict


@dataclass(frozen=True)
class CampaignResult:
    theorem: str
    trials: int
    checked: int
    failure: Failure | None

    @property
    def holds(self) -> bool:
        return self.failure is None


def _triple_scenario(space: SymplecticSpace, l1: Subspace, l2: Subspace, l3: Subspace) -> Scenario:
    return Scenario(space, {"L1": l1, "L2": l2, "L3": l3}, (("L1", "L2", "L3"),))


def _pair_scenario(space: SymplecticSpace, a: Subspace, b: Subspace) -> Scenario:
    return Scenario(space, {"A": a, "B": b}, ())


def evaluate_parity(space: SymplecticSpace, l1: Subspace, l2: Subspace, l3: Subspace) -> CheckOutcome:
    """Index parity equals the dimension formula, in both stated forms."""
    triple = LagrangianTriple(space, l1, l2, l3)
    index = maslov_index(triple)
    predicted = parity_prediction(triple)
    pairs = ((l1, l2), (l1, l3), (l2, l3))
    by_intersections = (l1.dim + sum(a.intersect(b).dim for a, b in pairs)) % 2
    by_sums = (l1.dim + sum((a + b).dim for a, b in pairs)) % 2
    holds = index % 2 == predicted == by_intersections == by_sums
    return CheckOutcome(
        holds,
        {
            "maslov_index": index,
            "parity_prediction": predicted,
            "parity_by_intersections": by_intersections,
            "parity_by_sums": by_sums,
        },
    )


def evaluate_dim_sum(space: SymplecticSpace, l1: Subspace, l2: Subspace, l3: Subspace) -> CheckOutcome:
    triple = LagrangianTriple(space, l1, l2, l3)
    p, q = dim_sum_parity(triple)
    return CheckOutcome(p == q, {"sum_parity": p, "intersection_parity": q})


def evaluate_annihilator(
    space: SymplecticSpace, l1: Subspace, l2: Subspace, l3: Subspace
) -> CheckOutcome:
    """The radical of the Maslov form equals (l1^l3) + (l2^l3)."""
    triple = LagrangianTriple(space, l1, l2, l3)
    radical = form_annihilator(triple)
    expected = l1.intersect(l3) + l2.intersect(l3)
    return CheckOutcome(
        radical == expected,
        {"radical_dim": radical.dim, "expected_dim": expected.dim},
    )


def evaluate_symmetry(
    space: SymplecticSpace, l1: Subspace, l2: Subspace, l3: Subspace
) -> CheckOutcome:
    triple = LagrangianTriple(space, l1, l2, l3)
    gram = maslov_form(triple).gram
    return CheckOutcome(gram.is_symmetric(), {"domain_dim": gram.rows})


def evaluate_pair_dims(space: SymplecticSpace, a: Subspace, b: Subspace) -> CheckOutcome:
    """Lagrangians have equal dimension, and dim(sum) = dim(intersection) mod 2."""
    if not (space.is_lagrangian(a) and space.is_lagrangian(b)):
        return CheckOutcome(True, {"skipped": "pair is not Lagrangian"})
    same_dim = a.dim == b.dim
    congruent = ((a + b).dim - a.intersect(b).dim) % 2 == 0
    return CheckOutcome(
        same_dim and congruent,
        {"dim_a": a.dim, "dim_b": b.dim, "sum_dim": (a + b).dim, "meet_dim": a.intersect(b).dim},
    )


def evaluate_ann_identities(space: SymplecticSpace, a: Subspace, b: Subspace) -> CheckOutcome:
    """Ann(A+B) = Ann(A)^Ann(B) always; Ann(A^B) = Ann(A)+Ann(B) when both
    subspaces contain the radical (the unrestricted identity fails for
    degenerate forms)."""
    ann_a, ann_b = space.annihilator(a), space.annihilator(b)
    eq1 = space.annihilator(a + b) == ann_a.intersect(ann_b)
    radical = space.radical()
    applicable = a.contains_subspace(radical) and b.contains_subspace(radical)
    eq2 = space.annihilator(a.intersect(b)) == ann_a + ann_b if applicable else None
    holds = eq1 and (eq2 is not False)
    return CheckOutcome(
        holds,
        {"sum_identity": eq1, "intersection_identity": eq2, "radical_contained": applicable},
    )


@dataclass(frozen=True)
class TheoremCheck:
    ident: str
    arity: str  # "triple" or "pair"
    sample: Callable[[int, int], tuple]
    evaluate: Callable[..., CheckOutcome]

    def scenario(self, *instance) -> Scenario:
        if self.arity == "triple":
            return _triple_scenario(*instance)
        return _pair_scenario(*instance)


def _sample_triple(seed: int, genus_max: int) -> tuple:
    t = random_triple(seed, genus_max)
    return (t.space, t.l1, t.l2, t.l3)


def _sample_lagrangian_pair(seed: int, genus_max: int) -> tuple:
    return random_lagrangian_pair(seed, genus_max)


def _sample_subspace_pair(seed: int, genus_max: int) -> tuple:
    # alternate unrestricted and radical-containing pairs so both halves of
    # the identity get exercised
    return random_subspace_pair(seed, genus_max, contain_radical=bool(seed % 2))


THEOREMS: dict[str, TheoremCheck] = {
    "parity": TheoremCheck("parity", "triple", _sample_triple, evaluate_parity),
    "dim-sum": TheoremCheck("dim-sum", "triple", _sample_triple, evaluate_dim_sum),
    "annihilator": TheoremCheck("annihilator", "triple", _sample_triple, evaluate_annihilator),
    "pair-dims": TheoremCheck("pair-dims", "pair", _sample_lagrangian_pair, evaluate_pair_dims),
    "ann-identities": TheoremCheck(
        "ann-identities", "pair", _sample_subspace_pair, evaluate_ann_identities
    ),
}


def run_campaign(theorem_id: str, trials: int, seed: int, genus_max: int) -> CampaignResult:
    """Evaluate the theorem on `trials` random instances; stop at a violation.

    Internal post-check assertions are treated as violations too, so a false
    statement surfaces as a counterexample rather than a crash.
    """
    theorem = THEOREMS[theorem_id]
    failure = None
    checked = 0
    for trial in range(trials):
        trial_seed = seed + trial
        instance = theorem.sample(trial_seed, genus_max)
        try:
            outcome = theorem.evaluate(*instance)
        except AssertionError as exc:
            outcome = CheckOutcome(False, {"post_check": str(exc) or "internal post-check failed"})
        checked += 1
        if not outcome.holds:
            failure = Failure(
                trial, trial_seed, serialize_scenario(theorem.scenario(*instance)), outcome.details
            )
            break
    return CampaignResult(theorem_id, trials, checked, failure)


def evaluate_scenario(theorem_id: str, scenario: Scenario) -> list[tuple[str, CheckOutcome]]:
    """Evaluate the theorem on the data in a scenario file.

    Triple theorems run on each triple query; pair theorems run on every
    unordered pair of named subspaces, in name order.
    """
    theorem = THEOREMS[theorem_id]
    results: list[tuple[str, CheckOutcome]] = []
    if theorem.arity == "triple":
        for names in scenario.queries:
            subs = tuple(scenario.named_subspaces[n] for n in names)
            try:
                outcome = theorem.evaluate(scenario.space, *subs)
            except AssertionError as exc:
                outcome = CheckOutcome(False, {"post_check": str(exc) or "post-check failed"})
            results.append((" ".join(names), outcome))
    else:
        names = sorted(scenario.named_subspaces)
        for i, first in enumerate(names):
            for second in names[i + 1 :]:
                if theorem.ident == "pair-dims":
                    space = scenario.space
                    a, b = scenario.named_subspaces[first], scenario.named_subspaces[second]
                    if not (space.is_lagrangian(a) and space.is_lagrangian(b)):
                        continue
                try:
                    outcome = theorem.evaluate(
                        scenario.space,
                        scenario.named_subspaces[first],
                        scenario.named_subspaces[second],
                    )
                except AssertionError as exc:
                    outcome = CheckOutcome(False, {"post_check": str(exc) or "post-check failed"})
                results.append((f"{first} {second}", outcome))
    return results


def check_scenario_triples(scenario: Scenario) -> None:
    """Raise InvalidTripleError early if a query's subspaces are not Lagrangian."""
    for names in scenario.queries:
        LagrangianTriple(scenario.space, *(scenario.named_subspaces[n] for n in names))
