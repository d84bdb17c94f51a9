"""
Small ratios: s <= t and just above
===================================

Exhaustive search against the closed forms when the subdiagonal is small.
"""
from fractions import Fraction

import bohemian as bh
from bohemian import constructions as C

# With entries in {0, 1} and s = 1 the maxima are Fibonacci numbers
for n in range(1, 8):
    rec = bh.search_max(bh.SearchSpec(n, 1, bh.Binary(Fraction(1))))
    print(n, rec.max_abs, bh.max_case_i(n, 1, 1))

# entries in {0, 1, 2}
print([bh.search_max(bh.SearchSpec(n, 1, bh.Range(2))).max_abs for n in range(1, 6)])

# at s = t four patterns tie at n = 4; U and its row/column swaps
rec = bh.search_max(bh.SearchSpec(4, 1, bh.Binary(Fraction(1))))
print(rec.count, rec.maximizers)
for fam in ("U", "Ur", "Uc", "Urc"):
    print(fam, bh.family_pattern(fam, 4).code)

# a little above s = t only the both-swapped U survives
x = Fraction(101, 100)
for n in (4, 5, 6):
    rec = bh.search_max(bh.SearchSpec(n, x, bh.Binary(Fraction(1))))
    print(n, rec.max_abs == abs(C.det_urc(n, x, 1)), rec.max_abs == abs(C.det_u(n, x, 1)))

# a negative subdiagonal has the product form t (t - s)^(n-1)
print(bh.search_max(bh.SearchSpec(4, -2, bh.Binary(Fraction(3)))).max_abs, bh.max_negative_s(4, -2, 3))
