import logging
import random

from src.forest.trees import LEAF
from src.forest.trees import Caret
from src.forest.trees import Forest
from src.forest.trees import Tree
from src.forest.trees import caret_positions
from src.groups.action import Dyadic
from src.groups.action import eval_pl
from src.groups.action import pl_equal
from src.groups.element import VElement
from src.groups.element import cancel_caret
from src.groups.element import reduce_element
from src.groups.element import refine
from src.groups.families import random_element
from src.oracles.lemmas import OracleReport
from src.oracles.lemmas import record_violation

logger = logging.getLogger(__name__)

GRID_EXPONENT = 10


def _random_tree(rng: random.Random, depth: int) -> Tree:
    if depth == 0 or rng.random() < 0.5:
        return LEAF
    return Caret(_random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def random_unreduced(rng: random.Random, g: VElement, depth: int = 2) -> VElement:
    """A representative of g with random trees hung under its domain leaves."""
    return refine(g, Forest(tuple(_random_tree(rng, depth) for _ in range(g.leaf_count))))


def speculative_cancellations(g: VElement) -> list[VElement]:
    """Elements obtained by collapsing a domain caret together with a range caret that receives its two leaves.

    On a reduced element every such collapse flips the leaf order, so each candidate acts differently from g.
    """
    range_carets = caret_positions(g.range)
    candidates = []
    for i in caret_positions(g.domain):
        low = min(g.bijection(i), g.bijection(i + 1))
        if abs(g.bijection(i) - g.bijection(i + 1)) == 1 and low in range_carets:
            candidates.append(cancel_caret(g, i, low))
    return candidates


def check_reduction_soundness(samples: int = 500, seed: int = 42, max_length: int = 6) -> OracleReport:
    """Reduction of random unreduced pairs is order independent, keeps the PL action and cannot be pushed further."""
    rng = random.Random(seed)
    report = OracleReport(check="reduction-soundness", bound=max_length, instances=0, violations=0)
    grid = [Dyadic(k, GRID_EXPONENT) for k in range(2**GRID_EXPONENT)]
    for _ in range(samples):
        g = random_element(rng, rng.randint(0, max_length))
        raw = random_unreduced(rng, g)
        report.instances += 1

        canonical = reduce_element(raw)
        if reduce_element(raw, rng) != canonical or canonical != g:
            record_violation(report, f"{raw} reduced to {canonical} and not uniquely to {g}")
            continue
        if any(eval_pl(raw, x) != eval_pl(canonical, x) for x in grid):
            record_violation(report, f"{raw} and {canonical} act differently on the dyadic grid")
            continue
        for candidate in speculative_cancellations(canonical):
            if pl_equal(candidate, canonical):
                record_violation(report, f"{canonical} collapses further to {candidate}")
    logger.info(f"Reduction soundness: {report.instances} samples, {report.violations} violations.")
    return report
