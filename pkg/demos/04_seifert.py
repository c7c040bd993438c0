"""Conway polynomials from Seifert matrices, checked against the skein oracle."""
from mubar import Braid, conway_from_seifert, conway_skein
from mubar.diagrams import braid_closure
from mubar.factor import potential, SeifertMatrix

cases = {
    "unknot": ([], Braid(1, ())),
    "trefoil": ([[-1, 1], [0, -1]], Braid(2, (1, 1, 1))),
    "figure eight": ([[1, 1], [0, -1]], Braid(3, (1, -2, 1, -2))),
}
for name, (a, b) in cases.items():
    print(f"{name:13s} potential {potential(SeifertMatrix.of(a))!r:28s}"
          f" Seifert {conway_from_seifert(a)!s:10s} skein {conway_skein(braid_closure(b))}")
