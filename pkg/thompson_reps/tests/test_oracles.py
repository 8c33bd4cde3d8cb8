import random

from src.forest.trees import CARET
from src.forest.trees import Caret
from src.groups.element import VElement
from src.groups.element import reduce_element
from src.groups.families import builtin_element
from src.groups.families import random_element
from src.groups.symmetric import Perm
from src.oracles.lemmas import OracleReport
from src.oracles.lemmas import check_cyclic_forest_lemma
from src.oracles.lemmas import check_term_parity
from src.oracles.lemmas import check_word_injectivity
from src.oracles.lemmas import record_violation
from src.oracles.reduction import check_reduction_soundness
from src.oracles.reduction import random_unreduced
from src.oracles.reduction import speculative_cancellations


def test_word_injectivity():
    report = check_word_injectivity(8)
    assert report.passed
    assert report.instances == 1 + 1 + 2 + 5 + 14 + 42 + 132 + 429


def test_cyclic_forest_lemma():
    report = check_cyclic_forest_lemma(6)
    assert report.passed, report.examples
    assert report.instances == 1 + 2 + 5 + 14 + 42 + 132


def test_term_parity_exhaustive():
    report = check_term_parity(max_leaves=5)
    assert report.passed, report.examples
    assert report.instances > 0


def test_term_parity_on_a_sample():
    rng = random.Random(3)
    report = check_term_parity(sample=[random_element(rng, 6) for _ in range(25)])
    assert report.passed


def test_reduction_soundness():
    report = check_reduction_soundness(samples=500, seed=42)
    assert report.passed, report.examples
    assert report.instances == 500


def test_reduction_soundness_is_deterministic():
    first = check_reduction_soundness(samples=20, seed=9)
    second = check_reduction_soundness(samples=20, seed=9)
    assert first == second


def test_unreduced_representatives_reduce_back():
    rng = random.Random(1)
    g = builtin_element("pi0")
    raw = random_unreduced(rng, g, depth=3)
    assert raw.leaf_count >= g.leaf_count
    assert reduce_element(raw) == g


def test_speculative_cancellation_on_unreduced_pair():
    # The swap written over a caret on each side: its leaves 1, 2 land on range leaves 3, 4.
    unreduced = VElement(Caret(CARET, CARET), Caret(CARET, CARET), Perm.of([3, 4, 1, 2]))
    assert speculative_cancellations(unreduced)
    assert speculative_cancellations(builtin_element("rot2")) == [VElement.identity()]


def test_record_violation_keeps_few_examples():
    report = OracleReport(check="demo", bound=1, instances=10, violations=0)
    for k in range(8):
        record_violation(report, f"example {k}")
    assert report.violations == 8
    assert len(report.examples) == 5
    assert not report.passed
