import math

import pytest

from conftest import brute_tally
from latticewalks import (
    BUILTIN_NAMES,
    builtin,
    chain_finite,
    enumerate_walks,
    expand,
    finite_chain_trace,
    oracle_bound,
)


def make(name, pbc=None):
    return builtin(name, pbc)


def test_chain_length_two():
    tally = enumerate_walks(make("chain-nn"), 2)
    assert dict(tally.counts) == {(2,): 2}


def test_triangular_total_matches_printed_cubic_term():
    tally = enumerate_walks(make("triangular"), 3)
    assert tally.total == 12  # 2 * 3!


def test_honeycomb_total_matches_printed_quadratic_term():
    tally = enumerate_walks(make("honeycomb"), 2)
    assert tally.total == 6  # 3 * 2!


def test_zero_length_walks():
    assert enumerate_walks(make("chain-nn"), 0).counts == {(0,): 1}
    assert enumerate_walks(make("honeycomb"), 0).counts == {(0,): 2}


@pytest.mark.parametrize("name", ["chain-nn", "chain-nnn", "triangular", "bcc", "honeycomb", "diamond"])
def test_matches_brute_force(name):
    spec = make(name)
    top = {"chain-nn": 6, "chain-nnn": 6, "triangular": 5, "bcc": 4, "honeycomb": 6, "diamond": 6}
    for n in range(top[name] + 1):
        assert dict(enumerate_walks(spec, n).counts) == brute_tally(name, n)


def test_ring_matches_brute_force():
    for lam in (3, 4, 5):
        spec = make("chain-nn-finite", lam)
        for n in range(7):
            assert dict(enumerate_walks(spec, n).counts) == brute_tally("chain-nn", n, ring=lam)


def test_ring_reduces_to_infinite_chain_when_large():
    free = make("chain-nn")
    for lam in (7, 9, 12):
        ring = make("chain-nn-finite", lam)
        for n in range(lam):
            assert enumerate_walks(ring, n).counts == enumerate_walks(free, n).counts


def test_bipartite_counts_even():
    for name in ("honeycomb", "diamond"):
        spec = make(name)
        for n in range(0, 7, 2):
            tally = enumerate_walks(spec, n)
            assert tally.sublattice_doubled
            assert all(v % 2 == 0 for v in tally.counts.values())
            assert all(n % 2 == 0 for (n,) in tally.counts)
    assert not enumerate_walks(make("bcc"), 2).sublattice_doubled


def test_total_equals_merged_label_count():
    spec = make("chain-nnn")
    table = expand("chain-nnn", 8)
    for n in range(9):
        tally = enumerate_walks(spec, n)
        merged = sum(c for idx, c in table.items() if sum(idx) == n)
        assert tally.total == merged * math.factorial(n)


def test_bounds_guard():
    assert oracle_bound(1) == 12 and oracle_bound(2) == 10 and oracle_bound(3) == 8
    with pytest.raises(ValueError):
        enumerate_walks(make("bcc"), 9)
    with pytest.raises(ValueError):
        enumerate_walks(make("chain-nn"), -1)
    # the cap is a guard, not a hard limit
    assert enumerate_walks(make("bcc"), 10, bound=10).total > 0
    with pytest.raises(ValueError):
        enumerate_walks(make("chain-nn"), 13)


def test_finite_chain_trace_examples():
    assert finite_chain_trace(4, 2) == 2
    assert finite_chain_trace(3, 3) == 2
    assert finite_chain_trace(6, 6) == 22
    assert finite_chain_trace(5, 0) == 1
    with pytest.raises(ValueError):
        finite_chain_trace(2, 4)
    with pytest.raises(ValueError):
        finite_chain_trace(5, -1)


def test_trace_agrees_with_series_and_dp():
    for lam in range(3, 13):
        table = chain_finite(lam, 12)
        spec = make("chain-nn-finite", lam)
        for n in range(13):
            per_site = finite_chain_trace(lam, n)
            assert per_site == table.coefficient((n,)) * math.factorial(n)
            assert per_site == enumerate_walks(spec, n).total


def test_tally_json_document():
    tally = enumerate_walks(make("chain-nnn"), 4)
    doc = tally.to_json_dict()
    assert doc["lattice"] == "chain-nnn"
    assert doc["length"] == 4
    assert int(doc["total"]) == tally.total
    indices = [tuple(e["index"]) for e in doc["counts"]]
    assert indices == sorted(indices)
