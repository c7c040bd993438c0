"""The two-strand string link sigma_1^2, followed from diagram to Conway polynomial.

Run with ``python demos/01_hopf_string_link.py``.
"""
from mubar import (Braid, StringLinkDiagram, close_knot, close_link, conway_skein, gamma,
                   mu_table, nilpotent_longitudes, verify_factorization)
from mubar.factor import lambda_matrix, rational_form

b = Braid(2, (1, 1))
d = StringLinkDiagram.from_braid(b)
print("braid:", b, " orientations (odd up, even down):", d.orientations)

# Longitudes read off the Wirtinger presentation, exact modulo F_9
lw = nilpotent_longitudes(d.wirtinger(), 9)
print("longitudes:", [str(w) for w in lw])

mu = mu_table(lw, 9)
print("mu-bar with all indices 1:")
for r in range(7):
    key = (1,) * (r + 2)
    print(f"  mu{key} = {mu[key]}")

lam = lambda_matrix(mu)[0][0]
print("lambda_11(u) =", lam, " i.e.", rational_form(lam))

g = gamma(mu)
print("Gamma(z) =", g.gamma)
print("nabla of the link closure:", conway_skein(close_link(d)))
print("nabla of the band closure:", conway_skein(close_knot(d)))
print("identity holds through z^8:", verify_factorization(d, 9).passed)
