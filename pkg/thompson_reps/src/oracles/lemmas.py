import logging
import pydantic
import typing

from src.config import Bounds
from src.config import load_bounds
from src.forest.trees import enumerate_forests
from src.forest.trees import enumerate_trees
from src.forest.words import path_words
from src.groups.element import VElement
from src.groups.families import enumerate_elements
from src.groups.symmetric import Perm
from src.groups.symmetric import permute_trees
from src.representations.haagerup import phi_terms

logger = logging.getLogger(__name__)


class OracleReport(pydantic.BaseModel):
    check: str
    bound: int
    instances: int
    violations: int
    examples: list[str] = pydantic.Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def record_violation(report: OracleReport, example: str):
    report.violations += 1
    if len(report.examples) < 5:
        report.examples.append(example)


def check_word_injectivity(bound: typing.Optional[int] = None, bounds: typing.Optional[Bounds] = None) -> OracleReport:
    """Distinct trees with the same leaf count have distinct path words, and the words of a tree are distinct.

    Words are also compared as sorted multisets, so no tree's words are a rearrangement of another's.
    """
    bounds = bounds or load_bounds()
    bound = bound or bounds.oracle_bound
    report = OracleReport(check="word-injectivity", bound=bound, instances=0, violations=0)
    for n in range(1, bound + 1):
        seen: dict[tuple[str, ...], typing.Any] = {}
        for tree in enumerate_trees(n, bounds):
            report.instances += 1
            words = path_words(tree)
            if len(set(words)) != len(words):
                record_violation(report, f"repeated word in {tree}")
            key = tuple(sorted(words))
            if key in seen:
                record_violation(report, f"{tree} and {seen[key]} share the words {key}")
            seen[key] = tree
    logger.info(f"Word injectivity: {report.instances} trees, {report.violations} violations.")
    return report


def check_cyclic_forest_lemma(
    bound: typing.Optional[int] = None, bounds: typing.Optional[Bounds] = None
) -> OracleReport:
    """If two forests' leaf words differ by a rotation, the forests have the same roots and the rotation moves trees.

    For f != g with P(f)_k == P(g)_(k + c), the root counts agree and g is f with its trees cyclically rotated.
    """
    bounds = bounds or load_bounds()
    bound = bound or bounds.oracle_bound
    report = OracleReport(check="cyclic-forest", bound=bound, instances=0, violations=0)
    for m in range(1, bound + 1):
        by_words = {}
        forests = list(enumerate_forests(m, bounds))
        for forest in forests:
            by_words.setdefault(path_words(forest), []).append(forest)
        for forest in forests:
            report.instances += 1
            words = path_words(forest)
            for shift in range(m):
                rotated = words[shift:] + words[:shift]
                for other in by_words.get(rotated, []):
                    if other.root_count != forest.root_count:
                        record_violation(report, f"{forest} ~ {other}: root counts differ")
                        continue
                    if not any(
                        permute_trees(forest, Perm.rotation(forest.root_count, c)) == other
                        for c in range(forest.root_count)
                    ):
                        record_violation(report, f"{forest} ~ {other}: not a rotation of trees")
    logger.info(f"Cyclic forest lemma: {report.instances} forests, {report.violations} violations.")
    return report


def check_term_parity(
    sample: typing.Optional[typing.Iterable[VElement]] = None,
    max_leaves: int = 5,
    bounds: typing.Optional[Bounds] = None,
) -> OracleReport:
    """Every nonzero term of phi_alpha pairs prefixes with equal numbers of internal leaves, so beta cancels."""
    bounds = bounds or load_bounds()
    if sample is None:
        sample = (g for n in range(1, max_leaves + 1) for g in enumerate_elements(n, bounds=bounds))
    report = OracleReport(check="term-parity", bound=max_leaves, instances=0, violations=0)
    elements = 0
    for g in sample:
        elements += 1
        for term in phi_terms(g.range, g.domain, g.bijection):
            report.instances += 1
            if term.range_prefix.m != term.domain_prefix.m:
                message = f"{g}: m(range) = {term.range_prefix.m}, m(domain) = {term.domain_prefix.m}"
                record_violation(report, message)
    logger.info(f"Term parity: {report.instances} terms over {elements} elements, {report.violations} violations.")
    return report
