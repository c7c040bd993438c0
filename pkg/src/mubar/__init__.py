"""Milnor mu-bar invariants of string links and the Conway factorization.

The package is split into

* ``words``: free-group words, braids, Artin action, Wirtinger presentations;
* ``series``: truncated power series, Magnus expansion, Conway polynomials;
* ``milnor``: mu-bar tables, Fox calculus, the ``c`` matrices;
* ``factor``: ``Gamma``/``Phi`` series, lowest coefficients, Seifert data;
* ``diagrams``: diagrams, closures, the skein oracle and the factorization check;
* ``cli``: the ``mubar`` command.
"""
from .diagrams import (LinkDiagram, StringLinkDiagram, VerificationReport, close_knot,
                       close_link, conway_skein, verify_factorization)
from .factor import (SCHEMA, conway_from_seifert, gamma, gamma_checks, linking_unit_exponent,
                     lowest_coefficient, multi_lowest, phi_multi, phi_u)
from .milnor import (LinkingData, MuTable, c_matrix_from_fox, c_matrix_from_mu, chat_matrix,
                     mu_table)
from .series import ConwayPoly, USeries, ZSeries, conway_from_laurent, magnus_expand
from .words import Braid, Word, longitudes_from_braid, nilpotent_longitudes

__version__ = "0.1.0"

__all__ = [
    "Braid", "ConwayPoly", "LinkDiagram", "LinkingData", "MuTable", "SCHEMA",
    "StringLinkDiagram", "USeries", "VerificationReport", "Word", "ZSeries",
    "c_matrix_from_fox", "c_matrix_from_mu", "chat_matrix", "close_knot", "close_link",
    "conway_from_laurent", "conway_from_seifert", "conway_skein", "gamma", "gamma_checks",
    "linking_unit_exponent", "longitudes_from_braid", "lowest_coefficient", "magnus_expand",
    "mu_table", "multi_lowest", "nilpotent_longitudes", "phi_multi", "phi_u",
    "verify_factorization",
]
