"""The 2-block view of a circulant of order 4n.

Pairing row r with row r+2n (and likewise for columns) reorders the
matrix into 2x2 cells [[a,b],[b,a]], each determined by one index d:
a = h[d], b = h[d+2n].  A cell is even when its entries agree.  Two facts
drive everything downstream:

* if the half-lag autocorrelation vanishes, exactly n of the 2n blocks
  are even;
* for any surviving row, the products of even block pairs at each lag
  must cancel to the zero matrix.
"""

import random

from circhad import (
    BlockSequence,
    SignSequence,
    block_decompose,
    cancellation_residual,
    even_count,
    paf,
)

h = SignSequence.from_text("-+++")
bs = block_decompose(h)
print("sequence:", h.text)
print("blocks:  ", bs.text)
print("parities:", " ".join(str(b.parity) for b in bs))
print("even count:", even_count(bs), "of", len(bs))
print()

# the even-count law, checked empirically: condition on paf(h, L/2) = 0
rng = random.Random(5)
print("even-count law on random length-16 sequences with paf(h,8) = 0:")
shown = 0
while shown < 5:
    text = "".join(rng.choice("+-") for _ in range(16))
    s = SignSequence.from_text(text)
    if paf(s, 8) != 0:
        continue
    d = block_decompose(s)
    print(f"  {text}  even blocks: {even_count(d)} (n = 4)")
    shown += 1
print()

# cancellation residuals: the sum of even-pair products per lag
demo = BlockSequence.from_text("++,+-,--,+-,--,+-")
print("blocks:", demo.text)
for u in range(1, len(demo)):
    r = cancellation_residual(demo, u)
    flag = "zero" if r.is_zero else "NONZERO"
    print(f"  lag {u}: [[{r.diag},{r.offdiag}],[{r.offdiag},{r.diag}]]  {flag}")
print("a free block sequence need not cancel; rows of an actual circulant")
print("Hadamard matrix always would")
