"""Tests for the induced decomposition and the reporting index."""
import math

import numpy as np

from decomposition import LEFT, RIGHT, build_decomposition
from indexes.report import ReportIndex, build_report_index, report
from oracle import oracle_query
from tests.helpers import query, random_corpus
from text_core import build_text_index
from workload import random_text, sample_queries


class TestDecomposition:
    """Test the induced suffix tree decomposition."""

    def test_batman_split(self, batman):
        """The root over 0..14 splits into 0..7 and 8..14."""
        decomposition = build_decomposition(batman)
        root = decomposition.root
        assert root.interval == (0, 14)
        left, right = root.children
        assert left.interval == (0, 7)
        assert right.interval == (8, 14)
        assert sorted(left.tree.leaves) == list(range(0, 8))
        assert sorted(right.tree.leaves) == list(range(8, 15))
        assert decomposition.level_count == math.ceil(math.log2(15))

    def test_cropped_suffix_array(self, batman):
        """Each cropped array is the global suffix array filtered to the window."""
        for node in build_decomposition(batman).trees:
            a, b = node.interval
            assert node.cropped.tolist() == [p for p in batman.sa_list if a <= p <= b]
            assert node.tree.leaves == node.cropped.tolist()

    def test_two_positions(self):
        """A single-symbol text has a root over two positions and no children."""
        decomposition = build_decomposition(build_text_index(b"a"))
        assert decomposition.root.children == [None, None]
        assert decomposition.root.tree.leaf_count == 2

    def test_induced_tree_shape(self):
        """Induced nodes are exactly the leaves and their LCAs with global ranges."""
        idx = build_text_index(b"mississippi")
        for node in build_decomposition(idx).trees:
            tree = node.tree
            for v in range(tree.node_count):
                if not tree.is_leaf(v):
                    assert len(tree.children[v]) >= 2
                positions = tree.leaf_positions(v)
                ranks = sorted(idx.isa_list[p] for p in positions)
                assert (tree.glo[v], tree.ghi[v]) == (ranks[0], ranks[-1])
                s = tree.string(v)
                assert all(idx.padded[p:].startswith(s) for p in positions)

    def test_successor_pointers(self, batman):
        """Roots induce roots; successors extend the node's string."""
        decomposition = build_decomposition(batman)
        root = decomposition.root
        for side in (LEFT, RIGHT):
            assert root.successor_locus(root.tree.root, side) == root.children[side].tree.root
        for node in decomposition.trees:
            for side in (LEFT, RIGHT):
                child = node.children[side]
                if child is None:
                    continue
                a, b = child.interval
                for v in range(node.tree.node_count):
                    inside = [p for p in node.tree.leaf_positions(v) if a <= p <= b]
                    target = node.successor_locus(v, side)
                    if not inside:
                        assert target is None
                        continue
                    assert sorted(child.tree.leaf_positions(target)) == sorted(inside)
                    assert child.tree.string(target).startswith(node.tree.string(v))

    def test_node_bound(self):
        """Total induced nodes stay within 4 n (log2 n + 1)."""
        rng = np.random.default_rng(51)
        idx = build_text_index(random_text(256, 4, rng))
        decomposition = build_decomposition(idx)
        assert decomposition.total_nodes <= 4 * 256 * 9

    def test_levels_partition_positions(self, batman):
        """Each level's windows are disjoint."""
        for level in build_decomposition(batman).levels():
            covered = [p for node in level for p in range(node.interval[0], node.interval[1] + 1)]
            assert len(covered) == len(set(covered))


class TestReport:
    """Test Report on the decomposition."""

    def test_examples(self, abab, batman):
        """Documented answers."""
        assert report(ReportIndex(abab), query(b"ab", b"b", 0, 4)).render() == "0,1 2,3"
        assert report(ReportIndex(batman), query(b"NA", b"BA", 0, 14)).render() == "6,8"
        assert report(ReportIndex(batman), query(b"NA", b"BA", 3, 14)).pairs == []

    def test_layered_examples(self, batman):
        """Same answers with every tree above two positions carrying a layer."""
        index = ReportIndex(batman, cutoff=2)
        assert index.decomposition.root.layer is not None
        assert index.report(query(b"NA", b"BA", 0, 14)).render() == "6,8"
        assert index.report(query(b"NA", b"NA", 0, 14)).render() == "0,2 2,4 4,6"
        assert index.count(query(b"A", b"A", 2, 2)) == 4
        assert index.exists(query(b"N", b"M", 0, 14))

    def test_matches_oracle(self):
        """Report, Count and Exists agree with the oracle across cutoffs."""
        rng = np.random.default_rng(53)
        for text in random_corpus(seed=54, count=20, max_n=200):
            idx = build_text_index(text)
            for cutoff in (2, 8, 64):
                index = ReportIndex(idx, cutoff=cutoff)
                for line in sample_queries(text, 20, rng):
                    expected = oracle_query(text, line.p1, line.p2, line.alpha, line.beta)
                    q = line.to_query()
                    assert index.report(q).pairs == expected.pairs
                    assert index.count(q) == expected.count
                    assert index.exists(q) == expected.exists

    def test_visits_bounded_by_occ(self):
        """Trees that pass the existence test are bounded by 2 occ (log2 n + 1)."""
        rng = np.random.default_rng(55)
        text = random_text(600, 2, rng)
        index = ReportIndex(build_text_index(text), cutoff=4)
        bound_factor = 2 * (math.log2(600) + 1)
        for line in sample_queries(text, 40, rng, modes=("report",)):
            occ = index.report(line.to_query()).count
            assert index.visits <= bound_factor * occ

    def test_call_budget(self):
        """Range queries per report stay within 64 n^(2/3) occ^(1/3) (log2 n + 1)."""
        rng = np.random.default_rng(57)
        n = 1500
        text = random_text(n, 4, rng)
        index = build_report_index(text)
        for line in sample_queries(text, 30, rng, modes=("report",)):
            index.reset_calls()
            occ = index.report(line.to_query()).count
            budget = 64 * n ** (2 / 3) * max(occ, 1) ** (1 / 3) * (math.log2(n) + 1)
            assert index.ors_calls() <= budget

    def test_stats(self, batman):
        """Stats expose decomposition shape."""
        stats = ReportIndex(batman).stats()
        assert stats["kind"] == "report"
        assert stats["n"] == 14
        assert stats["levels"] == 4
        assert stats["trees"] >= 3
