"""Survey of the factorization identity over all pure braids with few letters.

For each item we compare nabla_L with nabla_K * Gamma (band closure K),
and also with (1+u)^k Gamma where k collects the linking numbers of
equally oriented strands.  The second comparison is a diagnostic.
"""
import sys
from collections import Counter

from mubar import StringLinkDiagram, verify_factorization
from mubar.cli import corpus_words

letters = int(sys.argv[1]) if len(sys.argv) > 1 else 4
tally = Counter()
examples = {}
for b in corpus_words(3, letters):
    r = verify_factorization(StringLinkDiagram.from_braid(b), 7)
    key = (b.strands, r.passed, r.unit_gamma_matches)
    tally[key] += 1
    examples.setdefault(key, (b, r))

print(f"pure braids on 2 and 3 strands with at most {letters} letters, through z^6")
print("strands  identity  unit-Gamma  count  example")
for key in sorted(tally):
    b, r = examples[key]
    print(f"{key[0]:>7}  {str(key[1]):>8}  {str(key[2]):>10}  {tally[key]:>5}  {b}"
          f"  nabla_L={r.nabla_l} nabla_K={r.nabla_k} k={r.unit}")
