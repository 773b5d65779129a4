"""Matchings between even block pairs, and the obligation chase.

When the even-pair products cancel at a lag, every +2J product can be
paired off against a -2J product.  The chase follows such pairings: from
an obligation (a, b), look up the pair matched with it, say (l, m), and
demand a matching for (a, m) next.  One might hope the walk always runs
out of matchings; the bundled counterexample shows it can simply cycle.
"""

from circhad import (
    BlockSequence,
    IndexPair,
    chase,
    counterexample,
    find_book,
    find_matching,
    render_matching_lines,
    validate_matching,
)


def show_trace(trace):
    for k, step in enumerate(trace.steps, start=1):
        if step.matched is None:
            print(f"  step {k}: obligation {step.obligation} has no matched pair")
            continue
        a = step.obligation.first
        m = step.matched.second
        line = f"  step {k}: obligation {step.obligation} matched by {step.matched}"
        if m == a:
            line += f" -> next would be ({a},{a})"
        else:
            line += f" -> next ({a},{m})"
        print(line)
    if trace.repeat is not None:
        print(f"  obligation {trace.repeat} was already visited")
    print(f"  outcome: {trace.outcome}")


bs, book, start = counterexample()
print("blocks:", bs.text)
print("even blocks:", bs.even_indices(), "(none symmetric)")
print("matchings:")
for line in render_matching_lines(book):
    print("  ", line)
for m in book.matchings():
    print(f"valid at lag {m.lag}:", validate_matching(bs, m).ok)
print(f"chase from {start}:")
show_trace(chase(bs, book, start))
print()

# a chase that really does run out of matchings
stuck = BlockSequence.from_text("++,++,--,+-,+-,+-")
stuck_book = find_book(stuck)
print("blocks:", stuck.text)
print("matchings found:", render_matching_lines(stuck_book))
print("chase from (0,1):")
show_trace(chase(stuck, stuck_book, IndexPair(0, 1)))
print()

# and one that degenerates: the next obligation would be (0,0)
degen = BlockSequence.from_text("++,+-,++,+-,--,+-")
degen_book = find_book(degen)
print("blocks:", degen.text)
print("matchings found:", render_matching_lines(degen_book))
print("chase from (0,2):")
show_trace(chase(degen, degen_book, IndexPair(0, 2)))
print()

# matchings are found greedily and may be partial
print("maximal matching at lag 2 for the first block row above:")
m = find_matching(bs, 2)
print("  pairs:", [(str(p), str(q)) for p, q in m.pairs])
print("  the pair (4,0) stays unmatched: its product has the same sign as (0,2)")
