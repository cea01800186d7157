"""Tests for the one-sided [0, beta] index."""
import math

import numpy as np

from indexes.count import CountIndex
from indexes.zero_beta import ZbIndex, build_zb_index, count_zb, exists_zb, report_zb
from oracle import oracle_pairs, oracle_query
from tests.helpers import query, random_corpus
from text_core import build_text_index
from workload import fit_exponent, random_text, sample_queries, sample_tight_exists


class TestMinDist:
    """Test the minimum-distance table."""

    def test_abab(self, abab):
        """Boundary pair (ab, b) is one apart."""
        index = ZbIndex(abab)
        u = abab.locus(b"ab").node
        v = abab.locus(b"b").node
        assert index.layer.min_dist(u, v) == 1

    def test_self_pairs(self, abab):
        """Adjacent occurrences of one string and the reversed pair."""
        index = ZbIndex(abab)
        u = abab.locus(b"b").node
        v = abab.locus(b"ab").node
        assert index.layer.min_dist(v, v) == 2
        assert index.layer.min_dist(u, v) == 1
        assert index.layer.min_dist(u, u) == 2

    def test_no_pair_is_infinite(self):
        """No b follows an a in bbaa."""
        idx = build_text_index(b"bbaa")
        index = ZbIndex(idx)
        a = idx.locus(b"a").node
        b = idx.locus(b"b").node
        assert index.layer.min_dist(a, b) == math.inf
        assert index.layer.min_dist(b, a) == 1

    def test_matches_oracle(self):
        """Every boundary pair holds the brute-force minimum."""
        for text in random_corpus(seed=61, count=20, max_n=200):
            index = ZbIndex(build_text_index(text))
            layer = index.layer
            tree = index.text_index.tree
            inner = [u for u in layer.partition.boundary if u != tree.root]
            for u in inner:
                for v in inner:
                    distances = [p.distance for p in oracle_pairs(text, tree.string(u), tree.string(v))]
                    expected = min(distances) if distances else math.inf
                    assert layer.min_dist(u, v) == expected

    def test_consistent_with_count_tables(self):
        """MinDist is the first nonzero entry of the prefix-count row."""
        for text in random_corpus(seed=62, count=10, max_n=150):
            tau = max(2, math.isqrt(len(text)))
            if tau > len(text):
                continue
            idx = build_text_index(text)
            zb = ZbIndex(idx, tau=tau).layer
            counter = CountIndex(idx, tau=tau).counter
            assert zb.partition.boundary == counter.partition.boundary
            for u in counter.partition.boundary:
                for v in counter.partition.boundary:
                    row = counter.table(u, v)
                    if row[-1] > 0:
                        assert zb.min_dist(u, v) == int(np.argmax(row > 0))
                    else:
                        assert zb.min_dist(u, v) > counter.cap


class TestQueries:
    """Test exists_zb, count_zb and report_zb."""

    def test_examples(self, abab, batman):
        """Documented answers."""
        index = build_zb_index(b"abab")
        assert exists_zb(index, b"ab", b"b", 1) is True
        assert exists_zb(index, b"ab", b"b", 0) is False
        assert report_zb(index, b"ab", b"b", 4).render() == "0,1 2,3"
        assert count_zb(index, b"ab", b"b", 4) == 2
        index = ZbIndex(batman)
        assert exists_zb(index, b"NA", b"BA", 1) is False
        assert report_zb(index, b"NA", b"BA", 14).render() == "6,8"
        assert count_zb(index, b"NA", b"BA", 14) == 1
        assert report_zb(index, b"NA", b"QQ", 14).pairs == []

    def test_alpha_filtering(self, batman):
        """Queries with alpha above one are answered by filtering the report."""
        index = ZbIndex(batman, cutoff=2)
        assert index.count(query(b"A", b"A", 3, 14)) == 1
        assert index.exists(query(b"A", b"A", 4, 14)) is False
        assert index.report(query(b"N", b"M", 5, 5)).render() == "6,11"

    def test_matches_oracle(self):
        """One-sided and two-sided queries agree with the oracle across cutoffs."""
        rng = np.random.default_rng(63)
        for text in random_corpus(seed=64, count=20, max_n=200):
            idx = build_text_index(text)
            for cutoff in (2, 64):
                index = ZbIndex(idx, cutoff=cutoff)
                for line in sample_queries(text, 20, rng):
                    beta_only = oracle_query(text, line.p1, line.p2, 0, line.beta)
                    assert index.exists_zb(line.p1, line.p2, line.beta) == beta_only.exists
                    assert index.report_zb(line.p1, line.p2, line.beta).pairs == beta_only.pairs
                    expected = oracle_query(text, line.p1, line.p2, line.alpha, line.beta)
                    assert index.count(line.to_query()) == expected.count
                    assert index.exists(line.to_query()) == expected.exists


class TestCost:
    """Test the range-query budget of one-sided queries."""

    def test_exists_budget(self):
        """exists_zb issues at most 32 sqrt(n) range queries."""
        rng = np.random.default_rng(65)
        n = 2000
        text = random_text(n, 2, rng)
        index = ZbIndex(build_text_index(text))
        for line in sample_queries(text, 50, rng):
            index.reset_calls()
            index.exists_zb(line.p1, line.p2, line.beta)
            assert index.ors_calls() <= 32 * math.sqrt(n)

    def test_report_budget(self):
        """report_zb stays within 64 (occ + sqrt(n occ)) (log2 n + 1)."""
        rng = np.random.default_rng(66)
        n = 1500
        text = random_text(n, 4, rng)
        index = ZbIndex(build_text_index(text))
        for line in sample_queries(text, 30, rng):
            index.reset_calls()
            occ = index.count_zb(line.p1, line.p2, line.beta)
            budget = 64 * (occ + math.sqrt(n * max(occ, 1))) * (math.log2(n) + 1)
            assert index.ors_calls() <= budget

    def test_tight_exists_exponent(self):
        """Ruling out every candidate costs about sqrt(n) range queries per line."""
        rng = np.random.default_rng(67)
        sizes = [256, 1024, 4096]
        means = []
        for n in sizes:
            text = random_text(n, 4, rng)
            index = ZbIndex(build_text_index(text))
            lines = sample_tight_exists(text, 40, rng)
            assert len(lines) == 40
            costs = []
            for line in lines:
                index.reset_calls()
                assert index.exists(line.to_query()) is False
                costs.append(index.ors_calls())
                assert costs[-1] <= 32 * math.sqrt(n)
            means.append(sum(costs) / len(costs))
        assert all(mean > 0 for mean in means)
        assert 0.3 <= fit_exponent(sizes, means) <= 0.75

    def test_stats(self, batman):
        """Stats expose tau and the table size."""
        stats = ZbIndex(batman).stats()
        assert stats["tau"] == 3
        assert stats["table_entries"] == stats["boundary_nodes"] ** 2
