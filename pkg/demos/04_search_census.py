"""Exhaustive search over sign sequences, with and without prunes.

Order 4 has exactly eight circulant Hadamard rows (one orbit under
rotation and negation).  Every other desk-scale order comes back empty,
which is the expected picture: no circulant Hadamard matrix of order
above 4 is known, and none is believed to exist.
"""

from circhad import SearchConfig, search

report = search(SearchConfig(order=4, canonicalize=True))
print("order 4 solutions:")
for text in report.solutions:
    print("  ", text)
print("canonical classes:", list(report.canonical_classes))
print()

# non-square orders fall to the row-sum argument without any enumeration
for order in (8, 12, 20, 24):
    r = search(SearchConfig(order=order))
    print(f"order {order:2}: {len(r.solutions)} solutions, "
          f"{r.sequences_examined} sequences examined, cuts {r.prune_cuts}")
print()

# order 16 is a square, so the search actually runs; prunes only cut work
pruned = search(SearchConfig(order=16))
naive = search(SearchConfig(order=16, prunes=frozenset()))
print(f"order 16 pruned: examined {pruned.sequences_examined}, cuts {pruned.prune_cuts}")
print(f"order 16 naive:  examined {naive.sequences_examined}")
print("same solutions either way:", pruned.solutions == naive.solutions == ())
print()

# worker count changes scheduling, never the report
reports = [search(SearchConfig(order=16, workers=w)) for w in (1, 2, 8)]
print("reports bit-identical for 1, 2, 8 workers:",
      len({r.canonical_json() for r in reports}) == 1)
