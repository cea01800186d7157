"""Tests for the counting index and its boundary-pair tables."""
import numpy as np
import pytest

from cluster_tables import consecutive_distances, count_tau, integer_cube_root
from errors import BadTau, EmptyPattern
from indexes.count import CountIndex, build_count_index, count, exists
from oracle import oracle_pairs, oracle_query
from tests.helpers import query, random_corpus
from text_core import build_text_index
from workload import random_text, sample_queries


class TestHelpers:
    """Test tau selection and distance extraction."""

    def test_integer_cube_root(self):
        """Exact floors around perfect cubes."""
        assert [integer_cube_root(v) for v in (0, 1, 7, 8, 26, 27, 1000, 1001)] == [0, 1, 1, 2, 2, 3, 10, 10]

    def test_count_tau(self):
        """size // tau equals the cube root; small sizes keep tau = size."""
        assert count_tau(4) == 4
        assert count_tau(1) == 2
        assert count_tau(1000) == 100
        assert 4096 // count_tau(4096) == 16

    def test_consecutive_distances(self):
        """Distances of consecutive pairs between sorted lists."""
        first = np.array([0, 2, 4, 6], dtype=np.int64)
        second = np.array([8], dtype=np.int64)
        assert consecutive_distances(first, second).tolist() == [2]
        assert consecutive_distances(first, first).tolist() == [2, 2, 2]
        assert consecutive_distances(first, np.array([], dtype=np.int64)).tolist() == []


class TestTables:
    """Test the prefix-count tables against direct enumeration."""

    def test_abab_row(self):
        """Boundary pair (ab, b): both pairs have distance 1."""
        index = CountIndex(build_text_index(b"abab"), tau=2)
        tree = index.text_index.tree
        u = index.text_index.locus(b"ab").node
        v = index.text_index.locus(b"b").node
        assert index.counter.partition.is_boundary[u] and index.counter.partition.is_boundary[v]
        row = index.counter.table(u, v)
        assert row[0] == 0
        assert row[1] == 2
        assert tree.string(u) == b"ab"

    def test_tables_match_oracle(self):
        """Every boundary pair and every cap-bounded distance."""
        for text in random_corpus(seed=41, count=15, max_n=150):
            for tau in (3, None):
                if tau is not None and tau > len(text):
                    continue
                index = CountIndex(build_text_index(text), tau=tau)
                counter = index.counter
                tree = index.text_index.tree
                assert np.all(counter.tables[:, :, 0] == 0)
                inner = [u for u in counter.partition.boundary if u != tree.root]
                for u in inner:
                    for v in inner:
                        distances = [p.distance for p in oracle_pairs(text, tree.string(u), tree.string(v))]
                        capped = [d for d in distances if d <= counter.cap]
                        expected = np.cumsum(np.bincount(np.asarray(capped, dtype=np.int64), minlength=counter.cap + 1))
                        row = counter.table(u, v)
                        assert row.tolist() == expected.tolist()
                        assert np.all(np.diff(row) >= 0)


class TestQueries:
    """Test Count and Exists."""

    def test_examples(self, abab, batman):
        """Documented answers."""
        assert count(CountIndex(abab), query(b"ab", b"b", 0, 1)) == 2
        index = CountIndex(batman)
        assert count(index, query(b"NA", b"BA", 0, 1)) == 0
        assert count(index, query(b"NA", b"BA", 2, 2)) == 1
        index = CountIndex(abab)
        assert exists(index, query(b"ab", b"b", 0, 4)) is True
        assert exists(index, query(b"ab", b"b", 2, 4)) is False

    def test_empty_ranges(self, batman):
        """alpha > beta, beta = 0 and absent patterns give nothing."""
        index = CountIndex(batman)
        assert index.count(query(b"NA", b"BA", 5, 3)) == 0
        assert index.count(query(b"NA", b"BA", 0, 0)) == 0
        assert index.count(query(b"XY", b"BA", 0, 14)) == 0
        assert not index.exists(query(b"NA", b"ZZ", 0, 14))

    def test_same_pattern(self, batman):
        """P1 = P2 counts adjacent occurrences."""
        index = CountIndex(batman)
        assert index.count(query(b"NA", b"NA", 0, 14)) == 3
        assert index.count(query(b"A", b"A", 2, 2)) == 4

    def test_empty_pattern(self, abab):
        """Empty patterns are rejected."""
        with pytest.raises(EmptyPattern):
            CountIndex(abab).count(query(b"", b"b", 0, 1))

    def test_bad_tau(self, abab):
        """tau outside [1, n] is rejected; tau = 1 runs as 2."""
        with pytest.raises(BadTau):
            CountIndex(abab, tau=0)
        with pytest.raises(BadTau):
            CountIndex(abab, tau=5)
        assert CountIndex(abab, tau=1).tau == 2

    def test_report_completion(self, batman):
        """Report through the count index lists the pairs in order."""
        result = CountIndex(batman).report(query(b"NA", b"NA", 0, 14))
        assert result.render() == "0,2 2,4 4,6"

    def test_matches_oracle(self):
        """Count, Exists and Report agree with the oracle on random workloads."""
        rng = np.random.default_rng(43)
        for text in random_corpus(seed=44, count=40, max_n=400):
            taus = [None, max(1, len(text) // 8)]
            if len(text) <= 40:
                taus.append(2)
            for tau in taus:
                index = CountIndex(build_text_index(text), tau=tau)
                for line in sample_queries(text, 25, rng):
                    expected = oracle_query(text, line.p1, line.p2, line.alpha, line.beta)
                    q = line.to_query()
                    assert index.count(q) == expected.count
                    assert index.exists(q) == expected.exists
                    assert index.report(q).pairs == expected.pairs


class TestCost:
    """Test the range-query budget of a count query."""

    def test_calls_bounded_by_tau(self):
        """At most 32 * tau range queries per count."""
        rng = np.random.default_rng(45)
        text = random_text(3000, 2, rng)
        index = build_count_index(text)
        for line in sample_queries(text, 60, rng, modes=("count",)):
            index.reset_calls()
            index.count(line.to_query())
            assert index.ors_calls() <= 32 * index.tau

    def test_table_space_linear(self):
        """With the default tau, table entries stay within 64 n."""
        rng = np.random.default_rng(46)
        n = 4096
        index = build_count_index(random_text(n, 2, rng))
        assert index.stats()["table_entries"] <= 64 * n
