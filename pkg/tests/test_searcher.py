import pytest

from circhad.blockform import block_decompose, cancellation_holds, even_count, is_symmetric_even
from circhad.matchchase import counterexample
from circhad.searcher import (
    ALL_PRUNES,
    SearchConfig,
    all_block_sequences,
    enumerate_block_sequences,
    rowsum_prune_applicable,
    search,
)
from circhad.seqcore import SignSequence, is_circulant_hadamard

from helpers import all_sign_texts, dense_hadamard_ok


class TestConfig:
    def test_order_validation(self):
        for bad in (0, -4, 3, 6, 10):
            with pytest.raises(ValueError):
                SearchConfig(order=bad)

    def test_worker_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(order=4, workers=0)

    def test_prune_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(order=4, prunes=frozenset({"magic"}))

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(order=4, budget_seconds=-1.0)


class TestRowSumPrune:
    def test_non_squares_rejected(self):
        assert rowsum_prune_applicable(8)
        assert rowsum_prune_applicable(12)
        assert rowsum_prune_applicable(24)

    def test_squares_proceed(self):
        assert not rowsum_prune_applicable(4)
        assert not rowsum_prune_applicable(16)
        assert not rowsum_prune_applicable(36)

    def test_requires_multiple_of_four(self):
        with pytest.raises(ValueError):
            rowsum_prune_applicable(9)
        with pytest.raises(ValueError):
            rowsum_prune_applicable(0)


class TestSearchResults:
    def test_order_four_census_matches_dense_oracle(self):
        report = search(SearchConfig(order=4))
        expected = sorted(t for t in all_sign_texts(4) if dense_hadamard_ok(t))
        assert list(report.solutions) == expected
        assert len(report.solutions) == 8
        assert not report.incomplete

    def test_known_rotations_present(self):
        report = search(SearchConfig(order=4))
        for text in ("-+++", "+-++", "++-+", "+++-", "+---", "-+--", "--+-", "---+"):
            assert text in report.solutions

    def test_solutions_verify_and_are_sorted(self):
        report = search(SearchConfig(order=4))
        assert all(is_circulant_hadamard(SignSequence.from_text(t)) for t in report.solutions)
        assert list(report.solutions) == sorted(report.solutions)

    def test_empty_orders(self):
        for order in (8, 12):
            assert search(SearchConfig(order=order)).solutions == ()

    def test_prune_soundness_small_orders(self):
        for order in (4, 8, 12):
            pruned = search(SearchConfig(order=order))
            naive = search(SearchConfig(order=order, prunes=frozenset()))
            assert pruned.solutions == naive.solutions

    def test_single_prune_selections_agree(self):
        for prunes in (frozenset({"row-sum"}), frozenset({"prefix-paf"})):
            report = search(SearchConfig(order=4, prunes=prunes))
            assert len(report.solutions) == 8

    def test_rowsum_rejects_whole_non_square_order(self):
        report = search(SearchConfig(order=8))
        assert report.sequences_examined == 0
        assert report.prune_cuts["row-sum"] == 1

    def test_parallel_determinism(self):
        reports = [search(SearchConfig(order=16, workers=w)) for w in (1, 2, 8)]
        first = reports[0].canonical_json()
        assert all(r.canonical_json() == first for r in reports[1:])

    def test_workers_and_elapsed_excluded_from_canonical_form(self):
        report = search(SearchConfig(order=4, workers=3))
        doc = report.canonical_dict()
        assert "workers" not in doc
        assert "elapsed_seconds" not in doc
        assert report.to_dict()["workers"] == 3

    def test_canonicalization(self):
        report = search(SearchConfig(order=4, canonicalize=True))
        assert report.canonical_classes == ("+++-",)
        assert search(SearchConfig(order=4)).canonical_classes is None

    def test_order_four_solutions_obey_even_count_law(self):
        report = search(SearchConfig(order=4))
        for text in report.solutions:
            bs = block_decompose(SignSequence.from_text(text))
            assert even_count(bs) == 1


class TestBudgetAndLedger:
    def test_zero_budget_is_incomplete(self):
        report = search(SearchConfig(order=16, budget_seconds=0.0))
        assert report.incomplete

    def test_ledger_resume_reproduces_report(self, tmp_path):
        ledger = tmp_path / "shards.ledger"
        first = search(SearchConfig(order=16, ledger_path=ledger))
        recorded = ledger.read_text()
        second = search(SearchConfig(order=16, ledger_path=ledger))
        assert first.canonical_json() == second.canonical_json()
        assert ledger.read_text() == recorded

    def test_ledger_records_hits(self, tmp_path):
        ledger = tmp_path / "hits.ledger"
        report = search(SearchConfig(order=4, ledger_path=ledger))
        body = ledger.read_text()
        hits = [ln for ln in body.splitlines() if " hit " in ln]
        # four found directly; the other four solutions are their negations
        assert len(hits) == 4
        assert len(report.solutions) == 8

    def test_ledger_config_mismatch_refused(self, tmp_path):
        ledger = tmp_path / "shards.ledger"
        search(SearchConfig(order=16, ledger_path=ledger))
        with pytest.raises(ValueError):
            search(SearchConfig(order=16, prunes=frozenset(), ledger_path=ledger))


class TestBlockEnumeration:
    def test_exactly_n_even_count_n1(self):
        out = list(enumerate_block_sequences(1))
        assert len(out) == 8
        assert all(even_count(bs) == 1 for bs in out)

    def test_count_n2(self):
        # C(4,2) placements * 2 even values * 2 odd values per slot
        assert sum(1 for _ in enumerate_block_sequences(2)) == 6 * 2 * 2 * 2 * 2

    def test_lexicographic_order(self):
        texts = [bs.text for bs in enumerate_block_sequences(1)]
        assert texts == sorted(texts)

    def test_cancellation_filter_is_vacuous_at_n1(self):
        filtered = list(enumerate_block_sequences(1, predicate=cancellation_holds))
        assert len(filtered) == 8

    def test_counterexample_reachable_at_n3(self):
        def has_unsymmetric_even(bs):
            return any(not is_symmetric_even(bs, i) for i in bs.even_indices())

        wanted = counterexample().blocks
        assert any(
            bs == wanted for bs in enumerate_block_sequences(3, predicate=has_unsymmetric_even)
        )

    def test_range_validation(self):
        for bad in (0, 7, -1):
            with pytest.raises(ValueError):
                list(enumerate_block_sequences(bad))

    def test_all_block_sequences(self):
        out = list(all_block_sequences(2))
        assert len(out) == 16
        texts = [bs.text for bs in out]
        assert texts == sorted(texts)
        with pytest.raises(ValueError):
            list(all_block_sequences(3))


def test_default_prunes_are_both():
    assert SearchConfig(order=4).prunes == ALL_PRUNES
