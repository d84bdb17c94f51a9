"""
Large ratios: the W family
==========================

At s = 100, t = 1 the 6 x 6 maximum comes from two patterns.
"""
from fractions import Fraction

import numpy as np

import bohemian as bh
from bohemian import oracles as O
from bohemian.search import enumerate_polynomials

rec = bh.search_max(bh.SearchSpec(6, 100, bh.Binary(Fraction(1))))
print(rec.max_abs, rec.count)
for p in rec.patterns():
    print(bh.format_matrix(bh.realize_matrix(p, 100)))

# both are named constructions
print(bh.family_pattern("W", 6).code, bh.family_pattern("Wprime", 6).code)

# the determinant as a polynomial in x = s/t, coefficients lowest first
print(bh.det_polynomial(bh.family_pattern("W", 6)))
print(bh.path_coefficients(bh.family_pattern("W", 6)))

# beyond (4/5) n^2 the closed form holds; the template restricts the search for n >= 7
for n in (7, 8, 9):
    s = O.large_ratio_threshold(n) + 1
    tpl = bh.build_template(n)
    rec = bh.search_max(bh.SearchSpec(n, s, bh.Binary(Fraction(1)), template=tpl))
    print(n, len(tpl.free), rec.max_abs == bh.max_case_iii(n, s, 1))

# coefficient growth along template fills at n = 9
_, co = enumerate_polynomials(9, bh.build_template(9))
c = np.abs(co[:, ::-1])
print(c.shape, c.max(axis=0))
print(O.pathway_scan(9))

# the five inequalities at x = n: the last one is where the literal form breaks
for n in range(4, 10):
    print(n, ["T" if h else "F" for h in O.regime_inequalities(n, n).holds])
