"""Borromean rings as the closure of (sigma_1 sigma_2^-1)^3.

All linking numbers vanish, so the first nonzero mu-bar invariants have
length three and the Conway polynomial starts at z^4 with coefficient
det(a_ij).
"""
from mubar import (Braid, LinkingData, StringLinkDiagram, close_link, conway_skein, gamma,
                   gamma_checks, lowest_coefficient, multi_lowest, mu_table, nilpotent_longitudes)
from mubar.factor import a_matrix

d = StringLinkDiagram.from_braid(Braid(3, (1, -2, 1, -2, 1, -2)))
lw = nilpotent_longitudes(d.wirtinger(), 7)
lk = LinkingData.from_longitudes(lw)
mu = mu_table(lw, 7)
print("linking matrix:", lk.to_json())
print("length-3 invariants:", {k: v for k, v in mu.entries.items() if len(k) == 3 and v})

print("a_ij =", a_matrix(mu, 3), " det =", lowest_coefficient(mu, 3))
print("multivariable lowest term:", multi_lowest(mu, 3))

g = gamma(mu)
print("Gamma(z) =", g.gamma)
print("checks:", gamma_checks(g, lk).to_json())
print("nabla(L) =", conway_skein(close_link(d)))
